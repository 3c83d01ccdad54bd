//! The five source problems the generators reduce from.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Simple undirected graph on vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        let g = Graph { n, edges };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        let mut seen = vec![false; self.n * self.n];
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            if u >= self.n || v >= self.n {
                return Err(Error::usage(format!(
                    "edge {e} ({u},{v}) references a vertex outside 0..{}",
                    self.n
                )));
            }
            if u == v {
                return Err(Error::usage(format!("edge {e} is a self-loop on {u}")));
            }
            if seen[u * self.n + v] {
                return Err(Error::usage(format!("edge {e} ({u},{v}) is duplicated")));
            }
            seen[u * self.n + v] = true;
            seen[v * self.n + u] = true;
        }
        Ok(())
    }

    /// Row-major adjacency matrix without the diagonal.
    pub fn adjacency(&self) -> Vec<bool> {
        let mut adj = vec![false; self.n * self.n];
        for &(u, v) in &self.edges {
            adj[u * self.n + v] = true;
            adj[v * self.n + u] = true;
        }
        adj
    }

    /// Whether `u` lies in the closed neighbourhood `N[v]`.
    pub fn in_closed_neighbourhood(adj: &[bool], n: usize, u: usize, v: usize) -> bool {
        u == v || adj[u * n + v]
    }

    pub fn complete(n: usize) -> Graph {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        Graph { n, edges }
    }

    pub fn cycle(n: usize) -> Graph {
        let edges = (0..n).map(|u| (u, (u + 1) % n)).collect();
        Graph { n, edges }
    }

    pub fn edgeless(n: usize) -> Graph {
        Graph { n, edges: Vec::new() }
    }
}

/// Graph whose vertices carry one of `k` colours, `q` vertices per colour,
/// with no edge inside a colour class.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ColoredGraph {
    pub graph: Graph,
    pub k: usize,
    pub q: usize,
    pub color: Vec<usize>,
}

impl ColoredGraph {
    pub fn new(graph: Graph, k: usize, q: usize, color: Vec<usize>) -> Result<Self> {
        let g = ColoredGraph { graph, k, q, color };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        self.graph.validate()?;
        if self.color.len() != self.graph.n {
            return Err(Error::usage(format!(
                "color map has {} entries for {} vertices",
                self.color.len(),
                self.graph.n
            )));
        }
        if let Some((v, &c)) = self.color.iter().enumerate().find(|(_, &c)| c >= self.k) {
            return Err(Error::usage(format!("vertex {v} has color {c}, k={}", self.k)));
        }
        if let Some(&(u, v)) = self
            .graph
            .edges
            .iter()
            .find(|&&(u, v)| self.color[u] == self.color[v])
        {
            return Err(Error::usage(format!(
                "edge ({u},{v}) joins two vertices of color {}",
                self.color[u]
            )));
        }
        Ok(())
    }

    /// Vertices of colour `c`, ascending. Position in this list is the
    /// within-colour index.
    pub fn class(&self, c: usize) -> Vec<usize> {
        (0..self.graph.n).filter(|&v| self.color[v] == c).collect()
    }

    /// Checks that every colour class has exactly `q` vertices.
    pub fn check_balanced(&self) -> Result<()> {
        for c in 0..self.k {
            let size = self.class(c).len();
            if size != self.q {
                return Err(Error::usage(format!(
                    "color {c} has {size} vertices, expected q={}",
                    self.q
                )));
            }
        }
        Ok(())
    }
}

/// 3-CNF over variables `1..=vars`; literal `v` is `x_v`, `-v` is its
/// negation. Literals may repeat inside a clause.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cnf3 {
    pub vars: usize,
    pub clauses: Vec<[i64; 3]>,
}

impl Cnf3 {
    pub fn new(vars: usize, clauses: Vec<[i64; 3]>) -> Result<Self> {
        let f = Cnf3 { vars, clauses };
        f.validate()?;
        Ok(f)
    }

    pub fn validate(&self) -> Result<()> {
        for (c, clause) in self.clauses.iter().enumerate() {
            for &lit in clause {
                if lit == 0 || lit.unsigned_abs() > self.vars as u64 {
                    return Err(Error::usage(format!(
                        "clause {c} has literal {lit}, variables are 1..={}",
                        self.vars
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Triples over the universe `0..m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TripleSystem {
    pub m: usize,
    pub triples: Vec<[usize; 3]>,
}

impl TripleSystem {
    pub fn new(m: usize, triples: Vec<[usize; 3]>) -> Result<Self> {
        let ts = TripleSystem { m, triples };
        ts.validate()?;
        Ok(ts)
    }

    pub fn validate(&self) -> Result<()> {
        for (s, &[a, b, c]) in self.triples.iter().enumerate() {
            if a >= self.m || b >= self.m || c >= self.m {
                return Err(Error::usage(format!(
                    "triple {s} has an element outside 0..{}",
                    self.m
                )));
            }
            if a == b || b == c || a == c {
                return Err(Error::usage(format!("triple {s} repeats an element")));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ValueMultiset {
    pub values: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SourceInstance {
    Graph(Graph),
    ColoredGraph(ColoredGraph),
    Cnf3(Cnf3),
    Triples(TripleSystem),
    Values(ValueMultiset),
}

impl SourceInstance {
    pub fn validate(&self) -> Result<()> {
        match self {
            SourceInstance::Graph(g) => g.validate(),
            SourceInstance::ColoredGraph(g) => g.validate(),
            SourceInstance::Cnf3(f) => f.validate(),
            SourceInstance::Triples(ts) => ts.validate(),
            SourceInstance::Values(_) => Ok(()),
        }
    }
}

/// A solution of a source problem.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Extraction {
    /// Dominating set, ascending vertex ids.
    VertexSet(Vec<usize>),
    /// Multicolour clique, one vertex per colour in colour order.
    Clique(Vec<usize>),
    /// Element indices of the two halves.
    Bipartition { first: Vec<usize>, second: Vec<usize> },
    /// `truth[v - 1]` is the value of `x_v`.
    Truth(Vec<bool>),
    /// Indices of pairwise disjoint triples.
    Packing(Vec<usize>),
}
