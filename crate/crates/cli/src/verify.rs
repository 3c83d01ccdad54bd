//! Oracle-versus-solver comparison for one reduced instance.

use mecsr_core::reductions::{extract, oracle, reduce, Params, ReductionKind, SourceInstance};
use mecsr_core::solvers::{Budgets, Strategy};
use mecsr_core::{evaluate, Instance, Result};
use serde::Serialize;

use crate::formats::ExtractionFile;
use crate::parallel::solve;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyDetails {
    pub reduction: &'static str,
    pub k: Option<usize>,
    pub oracle_solvable: bool,
    pub solver_feasible: bool,
    pub method: &'static str,
    pub assignment: Option<Vec<usize>>,
    /// Whether the solver's assignment re-evaluates as feasible.
    pub witness_feasible: Option<bool>,
    pub extraction: Option<ExtractionFile>,
    pub extraction_error: Option<String>,
    pub oracle_witness: Option<ExtractionFile>,
    /// Set when a disagreement was accepted as a logged discrepancy.
    pub diagnostic: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub agree: bool,
    pub details: VerifyDetails,
}

/// Solves `inst` (which must be `reduce(kind, source, params)`), runs the
/// oracle, and extracts a source solution from any feasible witness.
pub fn verify_instance(
    kind: ReductionKind,
    source: &SourceInstance,
    params: Params,
    inst: &Instance,
    strategy: Strategy,
    budgets: &Budgets,
    threads: usize,
) -> Result<VerifyReport> {
    let verdict = oracle(kind, source, params)?;
    let solved = solve(inst, strategy, budgets, threads)?;
    let mut details = VerifyDetails {
        reduction: kind.name(),
        k: params.k,
        oracle_solvable: verdict.solvable,
        solver_feasible: solved.feasible,
        method: solved.method.as_str(),
        assignment: solved.assignment.as_ref().map(|a| a.0.clone()),
        witness_feasible: None,
        extraction: None,
        extraction_error: None,
        oracle_witness: verdict.witness.as_ref().map(ExtractionFile::from),
        diagnostic: false,
    };
    let mut agree = verdict.solvable == solved.feasible;
    if let Some(a) = &solved.assignment {
        let sound = evaluate(inst, a)?.feasible;
        details.witness_feasible = Some(sound);
        agree &= sound;
        match extract(kind, source, params, inst, a) {
            Ok(e) => details.extraction = Some(ExtractionFile::from(&e)),
            Err(e) => {
                details.extraction_error = Some(e.to_string());
                agree = false;
            }
        }
    }
    Ok(VerifyReport { agree, details })
}

/// [`verify_instance`] on a freshly generated instance.
pub fn verify_source(
    kind: ReductionKind,
    source: &SourceInstance,
    params: Params,
    strategy: Strategy,
    budgets: &Budgets,
    threads: usize,
) -> Result<VerifyReport> {
    let inst = reduce(kind, source, params)?;
    verify_instance(kind, source, params, &inst, strategy, budgets, threads)
}

#[cfg(test)]
mod tests {
    use super::*;
    use mecsr_core::reductions::Graph;

    fn run(g: Graph, k: usize) -> VerifyReport {
        verify_source(
            ReductionKind::DominatingSet,
            &SourceInstance::Graph(g),
            Params { k: Some(k), force: false },
            Strategy::Auto,
            &Budgets::default(),
            1,
        )
        .unwrap()
    }

    #[test]
    fn triangle_with_one_vertex() {
        let r = run(Graph::complete(3), 1);
        assert!(r.agree);
        assert!(r.details.oracle_solvable && r.details.solver_feasible);
        assert!(r.details.extraction.is_some());
    }

    #[test]
    fn five_cycle_with_one_vertex() {
        let r = run(Graph::cycle(5), 1);
        assert!(r.agree);
        assert!(!r.details.oracle_solvable && !r.details.solver_feasible);
    }
}
