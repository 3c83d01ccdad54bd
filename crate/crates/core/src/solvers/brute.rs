use alloc::vec;
use alloc::vec::Vec;

use super::{Method, SolveResult, Stats};
use crate::error::{Error, Result};
use crate::instance::{aggregate, count_accepting, sum_may_overflow, Instance, RuleAssignment};

/// `ell^t`, or `None` when it does not fit in a `u64`.
pub fn assignment_count(inst: &Instance) -> Option<u64> {
    let mut total: u64 = 1;
    for _ in 0..inst.t {
        total = total.checked_mul(inst.ell as u64)?;
    }
    Some(total)
}

/// The assignment with lexicographic rank `index` (layer 0 most significant).
pub fn assignment_at(inst: &Instance, mut index: u64) -> Vec<usize> {
    let ell = inst.ell as u64;
    let mut layers = vec![0; inst.t];
    for slot in layers.iter_mut().rev() {
        *slot = (index % ell) as usize;
        index /= ell;
    }
    layers
}

/// Outcome of scanning a contiguous slice of the lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RangeScan {
    pub examined: u64,
    /// Tensor entries inspected.
    pub reads: u64,
    /// Rank and layers of the first feasible assignment in the slice.
    pub witness: Option<(u64, Vec<usize>)>,
    /// The scan gave up early because `stop` returned true.
    pub stopped: bool,
}

/// Whether at least `alpha` voters accept, deciding as soon as the count is
/// reached or can no longer be reached. Adds the entries read to `reads`.
fn meets_quota(inst: &Instance, layers: &[usize], reads: &mut u64) -> Result<bool> {
    let mut accepted = 0;
    for i in 0..inst.n {
        if accepted >= inst.alpha {
            break;
        }
        if accepted + (inst.n - i) < inst.alpha {
            return Ok(false);
        }
        *reads += inst.t as u64;
        if aggregate(inst, layers, i)? >= inst.d {
            accepted += 1;
        }
    }
    Ok(accepted >= inst.alpha)
}

/// Scans ranks `lo..hi` in order and stops at the first feasible assignment.
///
/// Voters are evaluated only until the quota is decided, unless some sum
/// could overflow, in which case every voter is evaluated so the overflow
/// is always reported.
///
/// `stop(rank)` is polled periodically; returning true abandons the slice.
/// Parallel drivers use it to cancel slices that lie after an already found
/// witness.
pub fn scan_range(inst: &Instance, lo: u64, hi: u64, stop: &dyn Fn(u64) -> bool) -> Result<RangeScan> {
    inst.check()?;
    let exhaustive = sum_may_overflow(inst);
    let mut layers = assignment_at(inst, lo);
    let mut examined = 0;
    let mut reads = 0;
    let mut rank = lo;
    while rank < hi {
        if rank & 0xfff == 0 && stop(rank) {
            return Ok(RangeScan {
                examined,
                reads,
                witness: None,
                stopped: true,
            });
        }
        examined += 1;
        let feasible = if exhaustive {
            reads += (inst.n * inst.t) as u64;
            count_accepting(inst, &layers)? >= inst.alpha
        } else {
            meets_quota(inst, &layers, &mut reads)?
        };
        if feasible {
            return Ok(RangeScan {
                examined,
                reads,
                witness: Some((rank, layers)),
                stopped: false,
            });
        }
        // odometer increment, last layer fastest
        for slot in layers.iter_mut().rev() {
            *slot += 1;
            if *slot < inst.ell {
                break;
            }
            *slot = 0;
        }
        rank += 1;
    }
    Ok(RangeScan {
        examined,
        reads,
        witness: None,
        stopped: false,
    })
}

/// Enumerates all `ell^t` assignments in lexicographic order and returns the
/// first feasible one.
pub fn solve_brute(inst: &Instance, max_assignments: u64) -> Result<SolveResult> {
    inst.check()?;
    let total = assignment_count(inst).ok_or_else(|| {
        Error::budget("max_assignments", max_assignments, "more than 2^64 (ell^t)")
    })?;
    if total > max_assignments {
        return Err(Error::budget("max_assignments", max_assignments, total));
    }
    let scan = scan_range(inst, 0, total, &|_| false)?;
    let stats = Stats {
        assignments: scan.examined,
        reads: scan.reads,
        ..Stats::default()
    };
    Ok(SolveResult::new(
        Method::Brute,
        scan.witness.map(|(_, layers)| RuleAssignment(layers)),
        stats,
    ))
}
