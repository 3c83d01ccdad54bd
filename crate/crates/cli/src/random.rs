//! Seeded random instances and source problems. The same seed always gives
//! the same object on every platform.

use mecsr_core::reductions::{Cnf3, ColoredGraph, Graph, TripleSystem};
use mecsr_core::{Instance, Model, Result};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type SeededRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Parameters of [`instance`]; tensor cells are uniform in `lo..=hi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InstanceShape {
    pub n: usize,
    pub t: usize,
    pub ell: usize,
    pub model: Model,
    pub d: u64,
    pub alpha: usize,
    pub lo: u64,
    pub hi: u64,
}

/// Draws every cell in voter, layer, rule order.
pub fn instance(rng: &mut SeededRng, s: &InstanceShape) -> Result<Instance> {
    if s.lo > s.hi {
        return Err(mecsr_core::Error::Usage(format!(
            "empty value range [{}, {}]",
            s.lo, s.hi
        )));
    }
    Instance::from_fn(s.n, s.t, s.ell, s.model, s.d, s.alpha, |_, _, _| {
        rng.gen_range(s.lo..=s.hi)
    })
}

/// `G(n, p)` graph.
pub fn graph(rng: &mut SeededRng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph { n, edges }
}

/// `count` triples of distinct elements from `0..m` (`m >= 3`).
pub fn triples(rng: &mut SeededRng, m: usize, count: usize) -> TripleSystem {
    let universe: Vec<usize> = (0..m).collect();
    let triples = (0..count)
        .map(|_| {
            let mut pick: Vec<usize> = universe.choose_multiple(rng, 3).copied().collect();
            pick.sort_unstable();
            [pick[0], pick[1], pick[2]]
        })
        .collect();
    TripleSystem { m, triples }
}

/// Random 3-CNF; literals are independent, so clauses may repeat variables.
pub fn cnf(rng: &mut SeededRng, vars: usize, clauses: usize) -> Cnf3 {
    let clauses = (0..clauses)
        .map(|_| {
            [0; 3].map(|_| {
                let v = rng.gen_range(1..=vars) as i64;
                if rng.gen_bool(0.5) {
                    v
                } else {
                    -v
                }
            })
        })
        .collect();
    Cnf3 { vars, clauses }
}

/// `k` colour classes of `q` vertices (vertex `v` has colour `v / q`), each
/// inter-colour edge present with probability `p`.
pub fn colored_graph(rng: &mut SeededRng, k: usize, q: usize, p: f64) -> ColoredGraph {
    let n = k * q;
    let color: Vec<usize> = (0..n).map(|v| v / q).collect();
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if color[u] != color[v] && rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    ColoredGraph {
        graph: Graph { n, edges },
        k,
        q,
        color,
    }
}
