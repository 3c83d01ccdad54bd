//! JSON file formats. Writers are canonical: compact, keys in declaration
//! order, one trailing newline, so equal values give equal bytes.

use std::fs;
use std::path::Path;

use mecsr_core::reductions::{
    Cnf3, ColoredGraph, Extraction, Graph, ReductionKind, SourceInstance, TripleSystem,
    ValueMultiset,
};
use mecsr_core::scoring::{Profile, RuleSpec};
use mecsr_core::solvers::SolveResult;
use mecsr_core::{Instance, Model, Violation};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

/// Serializes `value` as compact JSON followed by a newline.
pub fn to_canonical<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("in-memory JSON serialization");
    s.push('\n');
    s
}

/// Parses JSON text; errors carry the line and column of the problem.
pub fn parse<T: DeserializeOwned>(text: &str, what: &str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|e| {
        CliError::parse(format!(
            "{what}: line {}, column {}: {e}",
            e.line(),
            e.column()
        ))
    })
}

pub fn read_file(path: &Path) -> Result<Vec<u8>, CliError> {
    fs::read(path).map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))
}

pub fn read_text(path: &Path) -> Result<String, CliError> {
    String::from_utf8(read_file(path)?)
        .map_err(|e| CliError::parse(format!("{}: not UTF-8: {e}", path.display())))
}

pub fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::usage(format!("cannot write {}: {e}", path.display())))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelRepr {
    Sum,
    Max,
    Min,
}

impl From<Model> for ModelRepr {
    fn from(m: Model) -> Self {
        match m {
            Model::Sum => ModelRepr::Sum,
            Model::Max => ModelRepr::Max,
            Model::Min => ModelRepr::Min,
        }
    }
}

impl From<ModelRepr> for Model {
    fn from(m: ModelRepr) -> Self {
        match m {
            ModelRepr::Sum => Model::Sum,
            ModelRepr::Max => Model::Max,
            ModelRepr::Min => Model::Min,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub n: usize,
    pub t: usize,
    pub ell: usize,
    pub model: ModelRepr,
    pub d: u64,
    pub alpha: usize,
    pub sat: Vec<Vec<Vec<u64>>>,
}

impl From<&Instance> for InstanceFile {
    fn from(inst: &Instance) -> Self {
        let sat = (0..inst.n)
            .map(|i| (0..inst.t).map(|j| inst.row(i, j).to_vec()).collect())
            .collect();
        InstanceFile {
            n: inst.n,
            t: inst.t,
            ell: inst.ell,
            model: inst.model.into(),
            d: inst.d,
            alpha: inst.alpha,
            sat,
        }
    }
}

impl InstanceFile {
    /// Shape problems of the nested tensor, outermost first.
    pub fn ragged(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        if self.sat.len() != self.n {
            out.push(Violation::RaggedTensor {
                index: vec![],
                expected: self.n,
                found: self.sat.len(),
            });
        }
        for (i, layers) in self.sat.iter().enumerate() {
            if layers.len() != self.t {
                out.push(Violation::RaggedTensor {
                    index: vec![i],
                    expected: self.t,
                    found: layers.len(),
                });
            }
            for (j, rules) in layers.iter().enumerate() {
                if rules.len() != self.ell {
                    out.push(Violation::RaggedTensor {
                        index: vec![i, j],
                        expected: self.ell,
                        found: rules.len(),
                    });
                }
            }
        }
        out
    }

    pub fn into_instance(self) -> Result<Instance, CliError> {
        let ragged = self.ragged();
        if !ragged.is_empty() {
            let msg: Vec<String> = ragged.iter().map(|v| v.to_string()).collect();
            return Err(CliError::usage(format!("invalid instance: {}", msg.join("; "))));
        }
        let sat = self.sat.into_iter().flatten().flatten().collect();
        Ok(Instance::new(
            self.n,
            self.t,
            self.ell,
            sat,
            self.model.into(),
            self.d,
            self.alpha,
        )?)
    }
}

pub fn instance_to_json(inst: &Instance) -> String {
    to_canonical(&InstanceFile::from(inst))
}

pub fn instance_from_json(text: &str) -> Result<Instance, CliError> {
    parse::<InstanceFile>(text, "instance")?.into_instance()
}

pub fn read_instance(path: &Path) -> Result<Instance, CliError> {
    let text = read_text(path)?;
    parse::<InstanceFile>(&text, &path.display().to_string())?.into_instance()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct StatsFile {
    pub assignments: u64,
    pub subsets: u64,
    pub rule_types: u64,
    pub elapsed_ns: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SolveResultFile {
    pub feasible: bool,
    pub assignment: Option<Vec<usize>>,
    pub method: &'static str,
    pub stats: StatsFile,
}

impl From<&SolveResult> for SolveResultFile {
    fn from(r: &SolveResult) -> Self {
        SolveResultFile {
            feasible: r.feasible,
            assignment: r.assignment.as_ref().map(|a| a.0.clone()),
            method: r.method.as_str(),
            stats: StatsFile {
                assignments: r.stats.assignments,
                subsets: r.stats.subsets,
                rule_types: r.stats.rule_types,
                elapsed_ns: r.stats.elapsed_ns,
            },
        }
    }
}

pub fn solve_result_to_json(r: &SolveResult) -> String {
    to_canonical(&SolveResultFile::from(r))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphFile {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ColoredGraphFile {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    pub k: usize,
    pub q: usize,
    pub color: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CnfFile {
    pub vars: usize,
    pub clauses: Vec<[i64; 3]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TriplesFile {
    pub m: usize,
    pub triples: Vec<[usize; 3]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ValuesFile {
    pub values: Vec<u64>,
}

fn pairs(edges: &[(usize, usize)]) -> Vec<[usize; 2]> {
    edges.iter().map(|&(u, v)| [u, v]).collect()
}

fn tuples(edges: Vec<[usize; 2]>) -> Vec<(usize, usize)> {
    edges.into_iter().map(|[u, v]| (u, v)).collect()
}

/// Canonical JSON of a source instance, in the format its reductions read.
pub fn source_to_json(src: &SourceInstance) -> String {
    match src {
        SourceInstance::Graph(g) => to_canonical(&GraphFile {
            n: g.n,
            edges: pairs(&g.edges),
        }),
        SourceInstance::ColoredGraph(g) => to_canonical(&ColoredGraphFile {
            n: g.graph.n,
            edges: pairs(&g.graph.edges),
            k: g.k,
            q: g.q,
            color: g.color.clone(),
        }),
        SourceInstance::Cnf3(f) => to_canonical(&CnfFile {
            vars: f.vars,
            clauses: f.clauses.clone(),
        }),
        SourceInstance::Triples(ts) => to_canonical(&TriplesFile {
            m: ts.m,
            triples: ts.triples.clone(),
        }),
        SourceInstance::Values(v) => to_canonical(&ValuesFile {
            values: v.values.clone(),
        }),
    }
}

/// Parses the source format that reduction `kind` consumes.
pub fn source_from_json(kind: ReductionKind, text: &str, what: &str) -> Result<SourceInstance, CliError> {
    use ReductionKind as R;
    Ok(match kind {
        R::DominatingSet | R::DominatingSetTwoRules => {
            let f: GraphFile = parse(text, what)?;
            SourceInstance::Graph(Graph::new(f.n, tuples(f.edges))?)
        }
        R::MulticolorClique => {
            let f: ColoredGraphFile = parse(text, what)?;
            let g = Graph::new(f.n, tuples(f.edges))?;
            SourceInstance::ColoredGraph(ColoredGraph::new(g, f.k, f.q, f.color)?)
        }
        R::ThreeSat => {
            let f: CnfFile = parse(text, what)?;
            SourceInstance::Cnf3(Cnf3::new(f.vars, f.clauses)?)
        }
        R::SetPacking => {
            let f: TriplesFile = parse(text, what)?;
            SourceInstance::Triples(TripleSystem::new(f.m, f.triples)?)
        }
        R::Partition => {
            let f: ValuesFile = parse(text, what)?;
            SourceInstance::Values(ValueMultiset { values: f.values })
        }
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum RuleFile {
    Borda,
    Plurality,
    Veto,
    Kapproval { k: usize },
}

impl From<&RuleFile> for RuleSpec {
    fn from(r: &RuleFile) -> Self {
        match *r {
            RuleFile::Borda => RuleSpec::Borda,
            RuleFile::Plurality => RuleSpec::Plurality,
            RuleFile::Veto => RuleSpec::Veto,
            RuleFile::Kapproval { k } => RuleSpec::KApproval(k),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProfileFile {
    pub m: usize,
    pub p: usize,
    pub rankings: Vec<Vec<Vec<usize>>>,
    pub rules: Vec<RuleFile>,
}

impl ProfileFile {
    pub fn split(self) -> (Profile, Vec<RuleSpec>) {
        let rules = self.rules.iter().map(RuleSpec::from).collect();
        let profile = Profile {
            m: self.m,
            p: self.p,
            rankings: self.rankings,
        };
        (profile, rules)
    }
}

/// Serialized form of an [`Extraction`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ExtractionFile {
    VertexSet { vertices: Vec<usize> },
    Clique { vertices: Vec<usize> },
    Bipartition { first: Vec<usize>, second: Vec<usize> },
    Truth { values: Vec<bool> },
    Packing { triples: Vec<usize> },
}

impl From<&Extraction> for ExtractionFile {
    fn from(e: &Extraction) -> Self {
        match e {
            Extraction::VertexSet(v) => ExtractionFile::VertexSet { vertices: v.clone() },
            Extraction::Clique(v) => ExtractionFile::Clique { vertices: v.clone() },
            Extraction::Bipartition { first, second } => ExtractionFile::Bipartition {
                first: first.clone(),
                second: second.clone(),
            },
            Extraction::Truth(t) => ExtractionFile::Truth { values: t.clone() },
            Extraction::Packing(p) => ExtractionFile::Packing { triples: p.clone() },
        }
    }
}
