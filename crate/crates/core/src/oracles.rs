//! Naive exact solvers and solution checkers for the source problems.
//!
//! Nothing here is shared with [`crate::solvers`]: these exist to certify the
//! reductions and specialised solvers, so agreement between the two sides is
//! evidence rather than tautology. Each search returns a witness only after
//! it passes the matching `check_*` function, which re-derives the property
//! directly from the problem definition.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::reductions::{Cnf3, ColoredGraph, Extraction, Graph, TripleSystem, ValueMultiset};

pub const DOMINATING_SET_MAX_VERTICES: usize = 20;
pub const SET_PACKING_MAX_TRIPLES: usize = 20;
pub const PARTITION_MAX_VALUES: usize = 30;
pub const SAT_MAX_VARIABLES: usize = 24;
pub const CLIQUE_MAX_TUPLES: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleVerdict {
    pub solvable: bool,
    pub witness: Option<Extraction>,
}

impl OracleVerdict {
    fn unsolvable() -> Self {
        OracleVerdict {
            solvable: false,
            witness: None,
        }
    }

    fn solved(witness: Extraction) -> Self {
        OracleVerdict {
            solvable: true,
            witness: Some(witness),
        }
    }
}

fn certified(ok: bool, check: &str, witness: Extraction) -> Result<OracleVerdict> {
    if ok {
        Ok(OracleVerdict::solved(witness))
    } else {
        Err(Error::Consistency {
            check: alloc::format!("{check} rejected oracle witness {witness:?}"),
            witness: Vec::new(),
        })
    }
}

fn cap(name: &str, limit: impl core::fmt::Display, required: impl core::fmt::Display) -> Error {
    Error::budget(name, limit, required)
}

/// Calls `visit` on every `size`-subset of `0..n` in lexicographic order
/// until it returns true.
fn combinations(n: usize, size: usize, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    fn rec(start: usize, n: usize, size: usize, acc: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if acc.len() == size {
            return visit(acc);
        }
        for x in start..n {
            if n - x < size - acc.len() {
                break;
            }
            acc.push(x);
            if rec(x + 1, n, size, acc, visit) {
                return true;
            }
            acc.pop();
        }
        false
    }
    rec(0, n, size, &mut Vec::with_capacity(size), visit)
}

// ---------------------------------------------------------------- checkers

/// `set` has at most `k` distinct vertices and every vertex is in it or
/// adjacent to one of its members.
pub fn check_dominating_set(g: &Graph, set: &[usize], k: usize) -> bool {
    let mut members: Vec<usize> = set.to_vec();
    members.sort_unstable();
    members.dedup();
    if members.len() > k || members.iter().any(|&v| v >= g.n) {
        return false;
    }
    (0..g.n).all(|v| {
        members.contains(&v)
            || g
                .edges
                .iter()
                .any(|&(a, b)| (a == v && members.contains(&b)) || (b == v && members.contains(&a)))
    })
}

/// `chosen` names exactly `k` distinct triples that are pairwise disjoint.
pub fn check_packing(ts: &TripleSystem, chosen: &[usize], k: usize) -> bool {
    if chosen.len() != k || chosen.iter().any(|&s| s >= ts.triples.len()) {
        return false;
    }
    let mut elements: Vec<usize> = chosen.iter().flat_map(|&s| ts.triples[s]).collect();
    let total = elements.len();
    elements.sort_unstable();
    elements.dedup();
    elements.len() == total
}

/// `first` and `second` split the element indices and have equal sums.
pub fn check_partition(vals: &ValueMultiset, first: &[usize], second: &[usize]) -> bool {
    let mut all: Vec<usize> = first.iter().chain(second).copied().collect();
    all.sort_unstable();
    if all != (0..vals.values.len()).collect::<Vec<_>>() {
        return false;
    }
    let sum = |ix: &[usize]| ix.iter().map(|&i| u128::from(vals.values[i])).sum::<u128>();
    sum(first) == sum(second)
}

/// Every clause has a literal made true by `truth`.
pub fn check_satisfies(f: &Cnf3, truth: &[bool]) -> bool {
    truth.len() == f.vars
        && f.clauses.iter().all(|clause| {
            clause.iter().any(|&lit| {
                let value = truth[(lit.unsigned_abs() - 1) as usize];
                if lit > 0 {
                    value
                } else {
                    !value
                }
            })
        })
}

/// `vertices[c]` has colour `c` for every colour and all pairs are adjacent.
pub fn check_multicolor_clique(g: &ColoredGraph, vertices: &[usize]) -> bool {
    if vertices.len() != g.k {
        return false;
    }
    let colored = vertices
        .iter()
        .enumerate()
        .all(|(c, &v)| v < g.graph.n && g.color[v] == c);
    colored
        && (0..vertices.len()).all(|a| {
            (a + 1..vertices.len()).all(|b| {
                let (u, v) = (vertices[a], vertices[b]);
                g.graph
                    .edges
                    .iter()
                    .any(|&e| e == (u, v) || e == (v, u))
            })
        })
}

// ---------------------------------------------------------------- searches

/// Smallest, then lexicographically first, dominating set of size `<= k`.
pub fn dominating_set(g: &Graph, k: usize) -> Result<OracleVerdict> {
    g.validate()?;
    if g.n > DOMINATING_SET_MAX_VERTICES {
        return Err(cap("dominating_set vertex cap", DOMINATING_SET_MAX_VERTICES, g.n));
    }
    let mut closed = vec![0u32; g.n];
    for (v, mask) in closed.iter_mut().enumerate() {
        *mask |= 1 << v;
    }
    for &(u, v) in &g.edges {
        closed[u] |= 1 << v;
        closed[v] |= 1 << u;
    }
    let everyone: u32 = if g.n == 0 { 0 } else { u32::MAX >> (32 - g.n) };
    for size in 0..=k.min(g.n) {
        let mut found = None;
        combinations(g.n, size, &mut |set| {
            let covered = set.iter().fold(0u32, |m, &v| m | closed[v]);
            if covered == everyone {
                found = Some(set.to_vec());
            }
            found.is_some()
        });
        if let Some(set) = found {
            let ok = check_dominating_set(g, &set, k);
            return certified(ok, "dominating set checker", Extraction::VertexSet(set));
        }
    }
    Ok(OracleVerdict::unsolvable())
}

/// First `k`-subset of pairwise disjoint triples, if any.
pub fn set_packing(ts: &TripleSystem, k: usize) -> Result<OracleVerdict> {
    ts.validate()?;
    if ts.triples.len() > SET_PACKING_MAX_TRIPLES {
        return Err(cap("set_packing triple cap", SET_PACKING_MAX_TRIPLES, ts.triples.len()));
    }
    if k > ts.triples.len() {
        return Ok(OracleVerdict::unsolvable());
    }
    let mut used = vec![false; ts.m];
    let mut found = None;
    combinations(ts.triples.len(), k, &mut |chosen| {
        used.iter_mut().for_each(|u| *u = false);
        let disjoint = chosen.iter().flat_map(|&s| ts.triples[s]).all(|x| {
            let fresh = !used[x];
            used[x] = true;
            fresh
        });
        if disjoint {
            found = Some(chosen.to_vec());
        }
        found.is_some()
    });
    match found {
        Some(chosen) => {
            let ok = check_packing(ts, &chosen, k);
            certified(ok, "packing checker", Extraction::Packing(chosen))
        }
        None => Ok(OracleVerdict::unsolvable()),
    }
}

/// Meet-in-the-middle subset-sum search for half the total.
pub fn partition(vals: &ValueMultiset) -> Result<OracleVerdict> {
    let len = vals.values.len();
    if len > PARTITION_MAX_VALUES {
        return Err(cap("partition value cap", PARTITION_MAX_VALUES, len));
    }
    let total: u128 = vals.values.iter().map(|&v| u128::from(v)).sum();
    if total % 2 == 1 {
        return Ok(OracleVerdict::unsolvable());
    }
    let target = total / 2;
    let half = len / 2;
    let sums = |lo: usize, hi: usize| -> Vec<(u128, u32)> {
        (0u32..1 << (hi - lo))
            .map(|mask| {
                let s = (lo..hi)
                    .filter(|&i| mask & (1 << (i - lo)) != 0)
                    .map(|i| u128::from(vals.values[i]))
                    .sum();
                (s, mask)
            })
            .collect()
    };
    let left = sums(0, half);
    let mut right = sums(half, len);
    right.sort_unstable();
    for &(ls, lmask) in &left {
        if ls > target {
            continue;
        }
        let want = target - ls;
        let pos = right.partition_point(|&(s, _)| s < want);
        if let Some(&(rs, rmask)) = right.get(pos) {
            if rs == want {
                let in_first = |i: usize| {
                    if i < half {
                        lmask & (1 << i) != 0
                    } else {
                        rmask & (1 << (i - half)) != 0
                    }
                };
                let first: Vec<usize> = (0..len).filter(|&i| in_first(i)).collect();
                let second: Vec<usize> = (0..len).filter(|&i| !in_first(i)).collect();
                let ok = check_partition(vals, &first, &second);
                return certified(ok, "partition checker", Extraction::Bipartition { first, second });
            }
        }
    }
    Ok(OracleVerdict::unsolvable())
}

/// Truth-table scan; `x_1` is the most significant position and false
/// precedes true, so the first hit is the lexicographically first model.
pub fn sat3(f: &Cnf3) -> Result<OracleVerdict> {
    f.validate()?;
    if f.vars > SAT_MAX_VARIABLES {
        return Err(cap("sat3 variable cap", SAT_MAX_VARIABLES, f.vars));
    }
    let mut truth = vec![false; f.vars];
    for code in 0u64..1 << f.vars {
        for (j, value) in truth.iter_mut().enumerate() {
            *value = code >> (f.vars - 1 - j) & 1 == 1;
        }
        let all = f.clauses.iter().all(|clause| {
            clause.iter().any(|&lit| {
                let v = truth[(lit.unsigned_abs() - 1) as usize];
                (lit > 0) == v
            })
        });
        if all {
            let ok = check_satisfies(f, &truth);
            return certified(ok, "clause checker", Extraction::Truth(truth));
        }
    }
    Ok(OracleVerdict::unsolvable())
}

/// Enumerates one vertex per colour (`q^k` tuples) and tests pairwise
/// adjacency.
pub fn multicolor_clique(g: &ColoredGraph, k: usize) -> Result<OracleVerdict> {
    g.validate()?;
    if k != g.k {
        return Err(Error::usage(alloc::format!(
            "clique size {k} differs from the colour count {}",
            g.k
        )));
    }
    let classes: Vec<Vec<usize>> = (0..g.k).map(|c| g.class(c)).collect();
    let tuples = classes
        .iter()
        .try_fold(1u64, |acc, c| acc.checked_mul(c.len() as u64))
        .unwrap_or(u64::MAX);
    if tuples > CLIQUE_MAX_TUPLES {
        return Err(cap("multicolor_clique tuple cap", CLIQUE_MAX_TUPLES, tuples));
    }
    if classes.iter().any(Vec::is_empty) {
        return Ok(OracleVerdict::unsolvable());
    }
    let adj = g.graph.adjacency();
    let n = g.graph.n;
    let mut pick = vec![0usize; g.k];
    loop {
        let vertices: Vec<usize> = pick.iter().enumerate().map(|(c, &p)| classes[c][p]).collect();
        let clique = (0..g.k).all(|a| (a + 1..g.k).all(|b| adj[vertices[a] * n + vertices[b]]));
        if clique {
            let ok = check_multicolor_clique(g, &vertices);
            return certified(ok, "clique checker", Extraction::Clique(vertices));
        }
        let mut c = g.k;
        loop {
            if c == 0 {
                return Ok(OracleVerdict::unsolvable());
            }
            c -= 1;
            pick[c] += 1;
            if pick[c] < classes[c].len() {
                break;
            }
            pick[c] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn witness_set(v: &OracleVerdict) -> Vec<usize> {
        match &v.witness {
            Some(Extraction::VertexSet(s)) => s.clone(),
            other => panic!("unexpected witness {other:?}"),
        }
    }

    #[test]
    fn dominating_set_examples() {
        let k3 = dominating_set(&Graph::complete(3), 1).unwrap();
        assert!(k3.solvable);
        assert_eq!(witness_set(&k3), vec![0]);

        assert!(!dominating_set(&Graph::cycle(5), 1).unwrap().solvable);
        let c5 = dominating_set(&Graph::cycle(5), 2).unwrap();
        assert!(check_dominating_set(&Graph::cycle(5), &witness_set(&c5), 2));

        let empty = dominating_set(&Graph::edgeless(3), 3).unwrap();
        assert_eq!(witness_set(&empty), vec![0, 1, 2]);
        assert!(!dominating_set(&Graph::edgeless(3), 2).unwrap().solvable);
    }

    #[test]
    fn dominating_set_cap() {
        assert!(matches!(
            dominating_set(&Graph::edgeless(21), 1),
            Err(Error::Resource(_))
        ));
    }

    #[test]
    fn packing_examples() {
        let disjoint = TripleSystem::new(6, vec![[0, 1, 2], [3, 4, 5]]).unwrap();
        assert_eq!(
            set_packing(&disjoint, 2).unwrap().witness,
            Some(Extraction::Packing(vec![0, 1]))
        );
        let overlap = TripleSystem::new(5, vec![[0, 1, 2], [2, 3, 4]]).unwrap();
        assert!(!set_packing(&overlap, 2).unwrap().solvable);
        assert!(set_packing(&overlap, 1).unwrap().solvable);
        assert_eq!(
            set_packing(&overlap, 0).unwrap().witness,
            Some(Extraction::Packing(vec![]))
        );
    }

    #[test]
    fn packing_over_a_large_universe() {
        let ts = TripleSystem::new(200, vec![[0, 1, 2], [128, 129, 130]]).unwrap();
        assert!(set_packing(&ts, 2).unwrap().solvable);
    }

    #[test]
    fn partition_examples() {
        let v = ValueMultiset { values: vec![1, 1, 2] };
        let verdict = partition(&v).unwrap();
        match verdict.witness {
            Some(Extraction::Bipartition { first, second }) => assert!(check_partition(&v, &first, &second)),
            other => panic!("{other:?}"),
        }
        assert!(!partition(&ValueMultiset { values: vec![1, 3] }).unwrap().solvable);
        assert!(!partition(&ValueMultiset { values: vec![1, 2] }).unwrap().solvable);
        assert_eq!(
            partition(&ValueMultiset { values: vec![] }).unwrap().witness,
            Some(Extraction::Bipartition {
                first: vec![],
                second: vec![]
            })
        );
    }

    #[test]
    fn sat_examples() {
        let unit = Cnf3::new(1, vec![[1, 1, 1]]).unwrap();
        assert_eq!(sat3(&unit).unwrap().witness, Some(Extraction::Truth(vec![true])));
        let contradiction = Cnf3::new(1, vec![[1, 1, 1], [-1, -1, -1]]).unwrap();
        assert!(!sat3(&contradiction).unwrap().solvable);
        let f = Cnf3::new(3, vec![[1, 2, 3], [-1, 2, -3]]).unwrap();
        // first model in order: x1=F, x2=F, x3=T
        assert_eq!(
            sat3(&f).unwrap().witness,
            Some(Extraction::Truth(vec![false, false, true]))
        );
    }

    fn bipartite_colored(edges: Vec<(usize, usize)>) -> ColoredGraph {
        ColoredGraph::new(Graph::new(4, edges).unwrap(), 2, 2, vec![0, 0, 1, 1]).unwrap()
    }

    #[test]
    fn clique_examples() {
        let full = bipartite_colored(vec![(0, 2), (0, 3), (1, 2), (1, 3)]);
        let verdict = multicolor_clique(&full, 2).unwrap();
        assert_eq!(verdict.witness, Some(Extraction::Clique(vec![0, 2])));
        assert!(!multicolor_clique(&bipartite_colored(vec![]), 2).unwrap().solvable);
        assert!(multicolor_clique(&full, 3).is_err());
    }

    #[test]
    fn checkers_reject_bad_witnesses() {
        assert!(!check_dominating_set(&Graph::cycle(5), &[0], 1));
        assert!(!check_dominating_set(&Graph::complete(3), &[0, 1], 1));
        let ts = TripleSystem::new(5, vec![[0, 1, 2], [2, 3, 4]]).unwrap();
        assert!(!check_packing(&ts, &[0, 1], 2));
        assert!(!check_packing(&ts, &[0, 0], 2));
        let v = ValueMultiset { values: vec![1, 1, 2] };
        assert!(!check_partition(&v, &[0], &[1, 2]));
        assert!(!check_partition(&v, &[2], &[0]));
        let f = Cnf3::new(1, vec![[1, 1, 1]]).unwrap();
        assert!(!check_satisfies(&f, &[false]));
        let g = bipartite_colored(vec![(0, 2)]);
        assert!(check_multicolor_clique(&g, &[0, 2]));
        assert!(!check_multicolor_clique(&g, &[1, 2]));
        assert!(!check_multicolor_clique(&g, &[2, 0]));
    }
}
