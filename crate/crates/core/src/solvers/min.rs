//! Min-model procedures. Under the min model a voter accepts only if every
//! layer reaches `d` on its own, so once the set of accepting voters is
//! fixed the layers decouple and each can be decided independently.

use alloc::format;
use alloc::vec::Vec;

use super::subsets::SubsetsByPopcount;
use super::{Method, SolveResult, Stats};
use crate::error::{Error, Result};
use crate::instance::{Instance, Model, RuleAssignment};

/// For every layer, the lowest rule giving every voter in `voters` at least
/// `d`; `None` as soon as some layer has no such rule.
fn unanimous_layers(inst: &Instance, voters: &[usize], reads: &mut u64) -> Option<Vec<usize>> {
    let mut layers = Vec::with_capacity(inst.t);
    for j in 0..inst.t {
        let rule = (0..inst.ell).find(|&k| {
            voters.iter().all(|&i| {
                *reads += 1;
                inst.get(i, j, k) >= inst.d
            })
        })?;
        layers.push(rule);
    }
    Some(layers)
}

/// `O(n * t * ell)` decision for the min model when every voter must accept.
pub fn solve_min_unanimous(inst: &Instance) -> Result<SolveResult> {
    inst.check()?;
    if inst.model != Model::Min || inst.alpha != inst.n {
        return Err(Error::usage(format!(
            "min_unanimous requires the min model with alpha = n (got {} model, alpha={}, n={})",
            inst.model, inst.alpha, inst.n
        )));
    }
    let voters: Vec<usize> = (0..inst.n).collect();
    let mut stats = Stats {
        subsets: 1,
        ..Stats::default()
    };
    let found = unanimous_layers(inst, &voters, &mut stats.reads);
    Ok(SolveResult::new(
        Method::MinUnanimous,
        found.map(RuleAssignment),
        stats,
    ))
}

/// `O(2^n * n * t * ell)` decision for the min model: tries candidate sets
/// of accepting voters, largest first, with the unanimous per-layer check.
pub fn solve_min_subsets(inst: &Instance, max_n: usize) -> Result<SolveResult> {
    inst.check()?;
    if inst.model != Model::Min {
        return Err(Error::usage(format!(
            "min_subsets requires the min model, got {}",
            inst.model
        )));
    }
    let cap = max_n.min(63);
    if inst.n > cap {
        return Err(Error::budget("min_subsets_max_n", cap, inst.n));
    }
    let mut stats = Stats::default();
    let mut voters = Vec::with_capacity(inst.n);
    for mask in SubsetsByPopcount::new(inst.n, inst.alpha) {
        stats.subsets += 1;
        voters.clear();
        voters.extend((0..inst.n).filter(|&i| mask & (1 << i) != 0));
        if let Some(layers) = unanimous_layers(inst, &voters, &mut stats.reads) {
            return Ok(SolveResult::new(
                Method::MinSubsets,
                Some(RuleAssignment(layers)),
                stats,
            ));
        }
    }
    Ok(SolveResult::new(Method::MinSubsets, None, stats))
}
