//! Rule-type subset search for the max model and the 0/1 sum model.
//!
//! Two rules have the same type at a layer when they satisfy exactly the
//! same voters there, so at most `2^n` types per layer matter no matter how
//! many rules there are. For every candidate set `V'` of accepting voters
//! (`|V'| >= alpha`) we pick one type per layer, subject to
//!
//! 1. exactly one type per layer, and
//! 2. every voter in `V'` is covered by at least `need` chosen types, where
//!    `need = d` for the 0/1 sum model and `need = 1` for the max model.
//!
//! These are the binary variables `x[layer][type]` and the two constraint
//! families of the integer program; the search below is an exact
//! depth-first enumeration of them that prunes a branch once some voter in
//! `V'` cannot reach `need` even if every remaining layer covered it.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::subsets::SubsetsByPopcount;
use super::{Method, SolveResult, Stats};
use crate::error::{Error, Result};
use crate::instance::{Instance, Model, RuleAssignment};
use crate::voterset::VoterSet;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleType {
    pub layer: usize,
    /// Voters satisfied at `layer` by every rule of this type.
    pub mask: VoterSet,
    /// Lowest rule index of the type.
    pub representative_rule: usize,
    /// All rules of the type, ascending.
    pub members: Vec<usize>,
}

/// Whether rule `k` counts as satisfying voter `i` at layer `j`: entry `>= 1`
/// for the (0/1) sum model, entry `>= d` otherwise.
fn satisfies(inst: &Instance, i: usize, j: usize, k: usize) -> bool {
    let s = inst.get(i, j, k);
    match inst.model {
        Model::Sum => s >= 1,
        Model::Max | Model::Min => s >= inst.d,
    }
}

/// Partitions the rules at `layer` by satisfied-voter set, ordered by
/// representative.
///
/// # Panics
///
/// If `layer >= inst.t`.
pub fn rule_types(inst: &Instance, layer: usize) -> Vec<RuleType> {
    assert!(layer < inst.t, "layer {layer} out of range (t={})", inst.t);
    let mut types: Vec<RuleType> = Vec::new();
    for k in 0..inst.ell {
        let mut mask = VoterSet::empty(inst.n);
        for i in (0..inst.n).filter(|&i| satisfies(inst, i, layer, k)) {
            mask.insert(i);
        }
        match types.iter_mut().find(|rt| rt.mask == mask) {
            Some(rt) => rt.members.push(k),
            None => types.push(RuleType {
                layer,
                mask,
                representative_rule: k,
                members: vec![k],
            }),
        }
    }
    types
}

struct Search<'a> {
    /// `(mask, representative)` per type, per layer.
    types: &'a [Vec<(u64, usize)>],
    /// `reach[j][i]`: layers `>= j` having some type that covers voter `i`.
    reach: &'a [Vec<u64>],
    need: u64,
    n: usize,
    nodes: u64,
}

impl Search<'_> {
    fn run(&mut self, target: u64, layer: usize, counts: &mut [u64], chosen: &mut Vec<usize>) -> bool {
        let voters = (0..self.n).filter(|&i| target & (1 << i) != 0);
        let mut done = true;
        for i in voters {
            if counts[i] + self.reach[layer][i] < self.need {
                return false;
            }
            done &= counts[i] >= self.need;
        }
        if done {
            // any completion works; take the first type of each remaining layer
            chosen.extend(self.types[layer..].iter().map(|ts| ts[0].1));
            return true;
        }
        for &(mask, rep) in &self.types[layer] {
            self.nodes += 1;
            for i in (0..self.n).filter(|&i| mask & target & (1 << i) != 0) {
                counts[i] += 1;
            }
            chosen.push(rep);
            if self.run(target, layer + 1, counts, chosen) {
                return true;
            }
            chosen.pop();
            for i in (0..self.n).filter(|&i| mask & target & (1 << i) != 0) {
                counts[i] -= 1;
            }
        }
        false
    }
}

pub fn solve_subset_fpt(inst: &Instance, max_n: usize) -> Result<SolveResult> {
    inst.check()?;
    let need = match inst.model {
        Model::Max => 1,
        Model::Sum if inst.is_binary() => inst.d,
        Model::Sum => {
            return Err(Error::usage(
                "subset_fpt needs a 0/1 tensor under the sum model; use brute for general values",
            ))
        }
        Model::Min => {
            return Err(Error::usage(format!(
                "subset_fpt handles the sum and max models, got {}",
                inst.model
            )))
        }
    };
    let cap = max_n.min(63);
    if inst.n > cap {
        return Err(Error::budget("subset_fpt_max_n", cap, inst.n));
    }

    let mut stats = Stats::default();
    let types: Vec<Vec<(u64, usize)>> = (0..inst.t)
        .map(|j| {
            rule_types(inst, j)
                .into_iter()
                .map(|rt| (rt.mask.as_u64().unwrap_or(0), rt.representative_rule))
                .collect()
        })
        .collect();
    stats.rule_types = types.iter().map(|ts| ts.len() as u64).sum();
    stats.reads = (inst.n * inst.t * inst.ell) as u64;

    let mut reach = vec![vec![0u64; inst.n]; inst.t + 1];
    for j in (0..inst.t).rev() {
        let union = types[j].iter().fold(0u64, |u, &(m, _)| u | m);
        let (head, tail) = reach.split_at_mut(j + 1);
        for (i, (r, below)) in head[j].iter_mut().zip(&tail[0]).enumerate() {
            *r = below + u64::from(union & (1 << i) != 0);
        }
    }

    let mut search = Search {
        types: &types,
        reach: &reach,
        need,
        n: inst.n,
        nodes: 0,
    };
    let mut counts = vec![0u64; inst.n];
    let mut chosen = Vec::with_capacity(inst.t);
    let mut witness = None;
    for target in SubsetsByPopcount::new(inst.n, inst.alpha) {
        stats.subsets += 1;
        counts.iter_mut().for_each(|c| *c = 0);
        chosen.clear();
        if search.run(target, 0, &mut counts, &mut chosen) {
            witness = Some(RuleAssignment(chosen));
            break;
        }
    }
    stats.assignments = search.nodes;
    Ok(SolveResult::new(Method::SubsetFpt, witness, stats))
}
