//! Multi-threaded brute force and the solve entry point used by the CLI.
//!
//! The rank space `0..ell^t` is cut into chunks handed out in increasing
//! order. A worker abandons its chunk once a witness with a smaller rank is
//! known, and never abandons ranks below the best witness, so the result is
//! the lexicographically first witness whatever the thread count.

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use mecsr_core::instance::sum_may_overflow;
use mecsr_core::solvers::{
    assignment_count, choose_method, scan_range, solve_brute, solve_with, Budgets, Method,
    SolveResult, Stats, Strategy,
};
use mecsr_core::{Error, Instance, Result, RuleAssignment};

/// Below this many assignments threads are not worth starting.
const PARALLEL_MIN: u64 = 1 << 14;
const MIN_CHUNK: u64 = 1 << 12;

/// Brute force over `threads` workers. Witness and counters are identical to
/// [`solve_brute`]: only chunks that start at or before the witness rank
/// are counted, and those were scanned exactly as a single thread would.
///
/// Instances where a sum could overflow are scanned on one thread so the
/// first error in rank order is the one reported.
pub fn solve_brute_parallel(inst: &Instance, max_assignments: u64, threads: usize) -> Result<SolveResult> {
    inst.check()?;
    let total = assignment_count(inst).ok_or_else(|| {
        Error::Resource(format!(
            "max_assignments exceeded (limit {max_assignments}, required more than 2^64 (ell^t))"
        ))
    })?;
    if threads <= 1 || total < PARALLEL_MIN || sum_may_overflow(inst) {
        return solve_brute(inst, max_assignments);
    }
    if total > max_assignments {
        return Err(Error::Resource(format!(
            "max_assignments exceeded (limit {max_assignments}, required {total})"
        )));
    }
    let chunk = (total / (threads as u64 * 16)).max(MIN_CHUNK);
    let next = AtomicU64::new(0);
    let best = AtomicU64::new(u64::MAX);
    let found: Mutex<Option<(u64, Vec<usize>)>> = Mutex::new(None);
    let failure: Mutex<Option<Error>> = Mutex::new(None);
    // (chunk start, assignments examined, entries read) per finished chunk
    let work: Mutex<Vec<(u64, u64, u64)>> = Mutex::new(Vec::new());

    std::thread::scope(|s| {
        for _ in 0..threads {
            s.spawn(|| loop {
                let lo = next.fetch_add(1, Ordering::Relaxed).saturating_mul(chunk);
                if lo >= total || lo > best.load(Ordering::Acquire) {
                    break;
                }
                let hi = lo.saturating_add(chunk).min(total);
                let stop = |rank: u64| rank > best.load(Ordering::Acquire);
                match scan_range(inst, lo, hi, &stop) {
                    Ok(scan) => {
                        if !scan.stopped {
                            work.lock().unwrap().push((lo, scan.examined, scan.reads));
                        }
                        if let Some((rank, layers)) = scan.witness {
                            best.fetch_min(rank, Ordering::AcqRel);
                            let mut slot = found.lock().unwrap();
                            if slot.as_ref().is_none_or(|(r, _)| rank < *r) {
                                *slot = Some((rank, layers));
                            }
                        }
                    }
                    Err(e) => {
                        failure.lock().unwrap().get_or_insert(e);
                        best.store(0, Ordering::Release);
                        break;
                    }
                }
            });
        }
    });

    if let Some(e) = failure.into_inner().unwrap() {
        return Err(e);
    }
    let found = found.into_inner().unwrap();
    let cutoff = found.as_ref().map_or(u64::MAX, |(rank, _)| *rank);
    let (examined, reads) = work
        .into_inner()
        .unwrap()
        .into_iter()
        .filter(|&(lo, _, _)| lo <= cutoff)
        .fold((0, 0), |(e, r), (_, de, dr)| (e + de, r + dr));
    Ok(SolveResult {
        feasible: found.is_some(),
        assignment: found.map(|(_, layers)| RuleAssignment(layers)),
        stats: Stats {
            assignments: examined,
            reads,
            ..Stats::default()
        },
        method: Method::Brute,
    })
}

/// Solves with `strategy`, spreading brute force over `threads` workers and
/// filling in the wall time.
pub fn solve(inst: &Instance, strategy: Strategy, budgets: &Budgets, threads: usize) -> Result<SolveResult> {
    let start = Instant::now();
    let method = match strategy {
        Strategy::Auto => choose_method(inst, budgets)?,
        Strategy::Fixed(m) => m,
    };
    let mut result = match method {
        Method::Brute => solve_brute_parallel(inst, budgets.max_assignments, threads)?,
        other => solve_with(inst, other, budgets)?,
    };
    result.stats.elapsed_ns = u64::try_from(start.elapsed().as_nanos()).unwrap_or(u64::MAX);
    Ok(result)
}
