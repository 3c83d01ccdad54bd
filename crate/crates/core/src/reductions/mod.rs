//! Instance generators from classic hard problems, and extraction of source
//! solutions from feasible rule assignments.
//!
//! | reduction                  | source              | model | n        | t    | ell | d        | alpha |
//! |----------------------------|---------------------|-------|----------|------|-----|----------|-------|
//! | `dominating-set`           | graph, k            | sum   | \|V\|    | k    | \|V\| | 1      | n     |
//! | `dominating-set-two-rules` | graph, k            | sum   | \|V\|+1  | 2\|V\| | 2 | \|V\|    | n     |
//! | `set-packing`              | triples, k          | sum   | max(m,3k)| k    | #triples | 1   | 3k    |
//! | `partition`                | values              | sum   | 2        | #values | 2 | total/2 | 2     |
//! | `3sat`                     | 3-CNF               | max   | #clauses | #vars | 2  | 1        | n     |
//! | `multicolor-clique`        | coloured graph, k   | min   | q*k      | k    | q   | 1        | k     |

use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::instance::{evaluate, Instance, Model, RuleAssignment, SUM_LIMIT};
use crate::oracles;

mod source;

pub use source::{Cnf3, ColoredGraph, Extraction, Graph, SourceInstance, TripleSystem, ValueMultiset};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ReductionKind {
    DominatingSet,
    DominatingSetTwoRules,
    SetPacking,
    Partition,
    ThreeSat,
    MulticolorClique,
}

impl ReductionKind {
    pub const ALL: [ReductionKind; 6] = [
        ReductionKind::DominatingSet,
        ReductionKind::DominatingSetTwoRules,
        ReductionKind::SetPacking,
        ReductionKind::Partition,
        ReductionKind::ThreeSat,
        ReductionKind::MulticolorClique,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ReductionKind::DominatingSet => "dominating-set",
            ReductionKind::DominatingSetTwoRules => "dominating-set-two-rules",
            ReductionKind::SetPacking => "set-packing",
            ReductionKind::Partition => "partition",
            ReductionKind::ThreeSat => "3sat",
            ReductionKind::MulticolorClique => "multicolor-clique",
        }
    }

    /// Whether the generator takes the size parameter `k`.
    pub fn takes_k(self) -> bool {
        !matches!(self, ReductionKind::Partition | ReductionKind::ThreeSat)
    }
}

impl fmt::Display for ReductionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl core::str::FromStr for ReductionKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ReductionKind::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| Error::usage(format!("unknown reduction {s:?}")))
    }
}

/// Generator parameters beyond the source instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Params {
    pub k: Option<usize>,
    /// Build partition instances with an odd total instead of refusing.
    pub force: bool,
}

fn check_k(k: usize, max: usize, what: &str) -> Result<()> {
    if k == 0 || k > max {
        return Err(Error::usage(format!("k={k} out of range 1..={max} ({what})")));
    }
    Ok(())
}

/// Dominating set of size `<= k` to the sum model: one voter and one rule
/// per vertex, `k` identical layers, rule `r` satisfies voter `i` iff
/// `i` is in `N[r]`.
pub fn from_dominating_set(g: &Graph, k: usize) -> Result<Instance> {
    g.validate()?;
    check_k(k, g.n, "number of vertices")?;
    let adj = g.adjacency();
    Instance::from_fn(g.n, k, g.n, Model::Sum, 1, g.n, |i, _, r| {
        u64::from(Graph::in_closed_neighbourhood(&adj, g.n, i, r))
    })
}

/// Dominating set to the sum model with two rules, built literally from the
/// layer-by-layer table: for vertex layers `j < |V|` rule 0 gives voter `i`
/// one point iff `i` is in `N[v_j]` and rule 1 gives the extra voter one
/// point; the next `|V| - 1` layers are filler (the extra voter scores there
/// only in the first `k`); the last layer is all zeros.
pub fn from_dominating_set_two_rules(g: &Graph, k: usize) -> Result<Instance> {
    g.validate()?;
    check_k(k, g.n, "number of vertices")?;
    let m = g.n;
    let adj = g.adjacency();
    Instance::from_fn(m + 1, 2 * m, 2, Model::Sum, m as u64, m + 1, |i, j, r| {
        let extra = i == m;
        if j == 2 * m - 1 {
            0
        } else if j < m {
            match (extra, r) {
                (false, 0) => u64::from(Graph::in_closed_neighbourhood(&adj, m, i, j)),
                (false, _) => 0,
                (true, r) => u64::from(r == 1),
            }
        } else if !extra {
            1
        } else {
            u64::from(j < m + k)
        }
    })
}

/// 3-set packing of size `k` to the sum model: one voter per element, one
/// rule per triple, `k` identical layers, `alpha = 3k`. When `3k` exceeds
/// the universe, never-satisfied padding voters keep `alpha <= n`.
pub fn from_set_packing(ts: &TripleSystem, k: usize) -> Result<Instance> {
    ts.validate()?;
    check_k(k, ts.triples.len(), "number of triples")?;
    let n = ts.m.max(3 * k);
    Instance::from_fn(n, k, ts.triples.len(), Model::Sum, 1, 3 * k, |i, _, r| {
        u64::from(ts.triples[r].contains(&i))
    })
}

/// Partition to the two-voter sum model: layer `j` gives `s_j` to voter 0
/// under rule 0 and to voter 1 under rule 1, `d = total / 2`.
///
/// An odd total is refused unless `force`, in which case `d` is rounded up
/// and the instance is infeasible.
pub fn from_partition(vals: &ValueMultiset, force: bool) -> Result<Instance> {
    if vals.values.is_empty() {
        return Err(Error::usage("partition needs at least one value"));
    }
    let total = vals
        .values
        .iter()
        .try_fold(0u64, |acc, &v| acc.checked_add(v))
        .filter(|&t| t <= SUM_LIMIT)
        .ok_or_else(|| Error::Arithmetic("partition total exceeds 2^62".into()))?;
    if total == 0 {
        return Err(Error::usage("partition total must be positive"));
    }
    if total % 2 == 1 && !force {
        return Err(Error::Refused(format!(
            "total {total} is odd, so no equal split exists (use force to build anyway)"
        )));
    }
    let d = total.div_ceil(2);
    Instance::from_fn(2, vals.values.len(), 2, Model::Sum, d, 2, |i, j, r| {
        if i == r {
            vals.values[j]
        } else {
            0
        }
    })
}

/// 3-SAT to the max model with two rules: one voter per clause, one layer
/// per variable; rule 0 (true) satisfies clause `i` at layer `j` iff `x_j`
/// occurs positively, rule 1 (false) iff it occurs negated.
pub fn from_3sat(f: &Cnf3) -> Result<Instance> {
    f.validate()?;
    if f.clauses.is_empty() || f.vars == 0 {
        return Err(Error::usage("3-CNF needs at least one clause and one variable"));
    }
    Instance::from_fn(f.clauses.len(), f.vars, 2, Model::Max, 1, f.clauses.len(), |i, j, r| {
        let var = (j + 1) as i64;
        let wanted = if r == 0 { var } else { -var };
        u64::from(f.clauses[i].contains(&wanted))
    })
}

/// Voter index of the `pos`-th vertex of colour `color`, 0-based.
pub fn clique_voter_index(q: usize, color: usize, pos: usize) -> usize {
    q * color + pos
}

/// Multicolour clique to the min model: a voter per vertex, a layer per
/// colour, a rule per within-colour index; rule `r` at layer `j` satisfies
/// the voter of `v` iff `v` is in `N[u]` for the `r`-th vertex `u` of
/// colour `j`.
pub fn from_multicolor_clique(g: &ColoredGraph, k: usize) -> Result<Instance> {
    g.validate()?;
    if k != g.k || k == 0 {
        return Err(Error::usage(format!(
            "k={k} must equal the colour count {} and be positive",
            g.k
        )));
    }
    g.check_balanced()?;
    if g.q == 0 {
        return Err(Error::usage("q must be positive"));
    }
    let classes: Vec<Vec<usize>> = (0..k).map(|c| g.class(c)).collect();
    let adj = g.graph.adjacency();
    let n = g.graph.n;
    let q = g.q;
    Instance::from_fn(q * k, k, q, Model::Min, 1, k, |voter, j, r| {
        let v = classes[voter / q][voter % q];
        u64::from(Graph::in_closed_neighbourhood(&adj, n, v, classes[j][r]))
    })
}

fn need_k(params: Params) -> Result<usize> {
    params
        .k
        .ok_or_else(|| Error::usage("this reduction needs the parameter k"))
}

/// Runs the generator `kind` on `source`.
pub fn reduce(kind: ReductionKind, source: &SourceInstance, params: Params) -> Result<Instance> {
    use ReductionKind as R;
    use SourceInstance as S;
    match (kind, source) {
        (R::DominatingSet, S::Graph(g)) => from_dominating_set(g, need_k(params)?),
        (R::DominatingSetTwoRules, S::Graph(g)) => {
            from_dominating_set_two_rules(g, need_k(params)?)
        }
        (R::SetPacking, S::Triples(ts)) => from_set_packing(ts, need_k(params)?),
        (R::Partition, S::Values(v)) => from_partition(v, params.force),
        (R::ThreeSat, S::Cnf3(f)) => from_3sat(f),
        (R::MulticolorClique, S::ColoredGraph(g)) => {
            from_multicolor_clique(g, params.k.unwrap_or(g.k))
        }
        (kind, _) => Err(Error::usage(format!(
            "reduction {kind} does not accept this kind of source instance"
        ))),
    }
}

/// Answers the source problem with the matching oracle.
pub fn oracle(kind: ReductionKind, source: &SourceInstance, params: Params) -> Result<oracles::OracleVerdict> {
    use ReductionKind as R;
    use SourceInstance as S;
    match (kind, source) {
        (R::DominatingSet | R::DominatingSetTwoRules, S::Graph(g)) => {
            oracles::dominating_set(g, need_k(params)?)
        }
        (R::SetPacking, S::Triples(ts)) => oracles::set_packing(ts, need_k(params)?),
        (R::Partition, S::Values(v)) => oracles::partition(v),
        (R::ThreeSat, S::Cnf3(f)) => oracles::sat3(f),
        (R::MulticolorClique, S::ColoredGraph(g)) => {
            oracles::multicolor_clique(g, params.k.unwrap_or(g.k))
        }
        (kind, _) => Err(Error::usage(format!(
            "reduction {kind} does not accept this kind of source instance"
        ))),
    }
}

fn verified(ok: bool, check: &str, witness: &RuleAssignment, out: Extraction) -> Result<Extraction> {
    if ok {
        Ok(out)
    } else {
        Err(Error::Consistency {
            check: format!("{check} rejected {out:?}"),
            witness: witness.0.clone(),
        })
    }
}

/// Maps a feasible assignment of `reduce(kind, source, params)` back to a
/// source solution and confirms it with the oracle checker.
pub fn extract(
    kind: ReductionKind,
    source: &SourceInstance,
    params: Params,
    inst: &Instance,
    witness: &RuleAssignment,
) -> Result<Extraction> {
    use ReductionKind as R;
    use SourceInstance as S;
    if !evaluate(inst, witness)?.feasible {
        return Err(Error::usage("extract needs a feasible witness"));
    }
    let layers = witness.layers();
    match (kind, source) {
        (R::DominatingSet, S::Graph(g)) => {
            let mut set = layers.to_vec();
            set.sort_unstable();
            set.dedup();
            let k = need_k(params)?;
            let ok = oracles::check_dominating_set(g, &set, k);
            verified(ok, "dominating set checker", witness, Extraction::VertexSet(set))
        }
        (R::DominatingSetTwoRules, S::Graph(g)) => {
            let set: Vec<usize> = (0..g.n).filter(|&j| layers[j] == 0).collect();
            let k = need_k(params)?;
            let ok = oracles::check_dominating_set(g, &set, k);
            verified(ok, "dominating set checker", witness, Extraction::VertexSet(set))
        }
        (R::SetPacking, S::Triples(ts)) => {
            let mut chosen = layers.to_vec();
            chosen.sort_unstable();
            chosen.dedup();
            let ok = oracles::check_packing(ts, &chosen, need_k(params)?);
            verified(ok, "packing checker", witness, Extraction::Packing(chosen))
        }
        (R::Partition, S::Values(v)) => {
            let first: Vec<usize> = (0..layers.len()).filter(|&j| layers[j] == 0).collect();
            let second: Vec<usize> = (0..layers.len()).filter(|&j| layers[j] != 0).collect();
            let ok = oracles::check_partition(v, &first, &second);
            verified(ok, "partition checker", witness, Extraction::Bipartition { first, second })
        }
        (R::ThreeSat, S::Cnf3(f)) => {
            let truth: Vec<bool> = layers.iter().map(|&r| r == 0).collect();
            let ok = oracles::check_satisfies(f, &truth);
            verified(ok, "clause checker", witness, Extraction::Truth(truth))
        }
        (R::MulticolorClique, S::ColoredGraph(g)) => {
            let vertices: Vec<usize> = layers
                .iter()
                .enumerate()
                .map(|(c, &r)| g.class(c)[r])
                .collect();
            let ok = oracles::check_multicolor_clique(g, &vertices);
            verified(ok, "clique checker", witness, Extraction::Clique(vertices))
        }
        (kind, _) => Err(Error::usage(format!(
            "reduction {kind} does not accept this kind of source instance"
        ))),
    }
}
