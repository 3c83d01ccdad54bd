//! Parameter sweeps. Each grid cell becomes one JSON row with the median
//! wall time over the repeats and the work counters, or a skip marker when
//! the cell cannot be built or solved within budgets.

use std::str::FromStr;

use mecsr_core::solvers::{Budgets, Strategy};
use mecsr_core::{Instance, Model};
use serde::Serialize;

use crate::error::CliError;
use crate::parallel::solve;
use crate::random::{self, InstanceShape};

/// Comma-separated values and inclusive ranges, e.g. `1..4,8`. The empty
/// string is the empty grid.
pub fn parse_grid(spec: &str) -> Result<Vec<usize>, CliError> {
    let mut out = Vec::new();
    for part in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let bad = || CliError::usage(format!("bad grid element {part:?}"));
        match part.split_once("..") {
            Some((a, b)) => {
                let a: usize = a.trim().parse().map_err(|_| bad())?;
                let b: usize = b.trim().trim_start_matches('=').parse().map_err(|_| bad())?;
                out.extend(a..=b);
            }
            None => out.push(part.parse().map_err(|_| bad())?),
        }
    }
    Ok(out)
}

/// How tensors are filled.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// Uniform cells in the configured value range.
    Random,
    /// All zeros: infeasible whenever `d >= 1` and `alpha >= 1`.
    Zero,
    /// Every cell is `d` except that the last voter gets 0 from all but the
    /// last rule, so the unanimous min-model check reads every cell.
    MinWorst,
}

impl FromStr for Family {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "random" => Ok(Family::Random),
            "zero" => Ok(Family::Zero),
            "min-worst" => Ok(Family::MinWorst),
            _ => Err(CliError::usage(format!(
                "unknown family {s:?} (random, zero, min-worst)"
            ))),
        }
    }
}

impl Family {
    pub fn as_str(self) -> &'static str {
        match self {
            Family::Random => "random",
            Family::Zero => "zero",
            Family::MinWorst => "min-worst",
        }
    }
}

/// Quota per cell: a fixed value or all voters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quota {
    All,
    Fixed(usize),
}

impl FromStr for Quota {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        if s == "n" {
            return Ok(Quota::All);
        }
        s.parse()
            .map(Quota::Fixed)
            .map_err(|_| CliError::usage(format!("alpha must be an integer or \"n\", got {s:?}")))
    }
}

#[derive(Debug, Clone)]
pub struct BenchSpec {
    pub ns: Vec<usize>,
    pub ts: Vec<usize>,
    pub ells: Vec<usize>,
    pub model: Model,
    pub family: Family,
    pub strategy: Strategy,
    pub d: u64,
    pub alpha: Quota,
    pub lo: u64,
    pub hi: u64,
    pub repeats: usize,
    pub seed: u64,
    pub budgets: Budgets,
    pub threads: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BenchRow {
    pub n: usize,
    pub t: usize,
    pub ell: usize,
    pub model: &'static str,
    pub family: &'static str,
    pub d: u64,
    pub alpha: usize,
    pub method: Option<&'static str>,
    pub feasible: Option<bool>,
    pub repeats: usize,
    pub median_ns: Option<u64>,
    pub assignments: Option<u64>,
    pub subsets: Option<u64>,
    pub rule_types: Option<u64>,
    pub reads: Option<u64>,
    pub skipped: Option<String>,
}

fn build(spec: &BenchSpec, rng: &mut random::SeededRng, n: usize, t: usize, ell: usize, alpha: usize) -> mecsr_core::Result<Instance> {
    let d = spec.d;
    match spec.family {
        Family::Random => random::instance(
            rng,
            &InstanceShape {
                n,
                t,
                ell,
                model: spec.model,
                d,
                alpha,
                lo: spec.lo,
                hi: spec.hi,
            },
        ),
        Family::Zero => Instance::from_fn(n, t, ell, spec.model, d, alpha, |_, _, _| 0),
        Family::MinWorst => Instance::from_fn(n, t, ell, spec.model, d, alpha, |i, _, k| {
            if i + 1 < n || k + 1 == ell {
                d
            } else {
                0
            }
        }),
    }
}

fn median(mut xs: Vec<u64>) -> u64 {
    xs.sort_unstable();
    xs[xs.len() / 2]
}

pub fn run_bench(spec: &BenchSpec) -> Vec<BenchRow> {
    let mut rng = random::rng(spec.seed);
    let mut rows = Vec::new();
    for &n in &spec.ns {
        for &t in &spec.ts {
            for &ell in &spec.ells {
                let alpha = match spec.alpha {
                    Quota::All => n,
                    Quota::Fixed(a) => a,
                };
                let mut row = BenchRow {
                    n,
                    t,
                    ell,
                    model: spec.model.as_str(),
                    family: spec.family.as_str(),
                    d: spec.d,
                    alpha,
                    method: None,
                    feasible: None,
                    repeats: 0,
                    median_ns: None,
                    assignments: None,
                    subsets: None,
                    rule_types: None,
                    reads: None,
                    skipped: None,
                };
                let outcome = build(spec, &mut rng, n, t, ell, alpha).and_then(|inst| {
                    let mut times = Vec::with_capacity(spec.repeats);
                    let mut last = None;
                    for _ in 0..spec.repeats.max(1) {
                        let r = solve(&inst, spec.strategy, &spec.budgets, spec.threads)?;
                        times.push(r.stats.elapsed_ns);
                        last = Some(r);
                    }
                    Ok((times, last.expect("at least one repeat")))
                });
                match outcome {
                    Ok((times, r)) => {
                        row.method = Some(r.method.as_str());
                        row.feasible = Some(r.feasible);
                        row.repeats = times.len();
                        row.median_ns = Some(median(times));
                        row.assignments = Some(r.stats.assignments);
                        row.subsets = Some(r.stats.subsets);
                        row.rule_types = Some(r.stats.rule_types);
                        row.reads = Some(r.stats.reads);
                    }
                    Err(e) => row.skipped = Some(e.to_string()),
                }
                rows.push(row);
            }
        }
    }
    rows
}

#[cfg(test)]
mod tests {
    use super::*;
    use mecsr_core::solvers::Method;

    fn spec(ns: &str, ts: &str, ells: &str) -> BenchSpec {
        BenchSpec {
            ns: parse_grid(ns).unwrap(),
            ts: parse_grid(ts).unwrap(),
            ells: parse_grid(ells).unwrap(),
            model: Model::Sum,
            family: Family::Zero,
            strategy: Strategy::Fixed(Method::Brute),
            d: 1,
            alpha: Quota::Fixed(1),
            lo: 0,
            hi: 3,
            repeats: 1,
            seed: 0,
            budgets: Budgets::default(),
            threads: 1,
        }
    }

    #[test]
    fn grid_syntax() {
        assert_eq!(parse_grid("1..4").unwrap(), vec![1, 2, 3, 4]);
        assert_eq!(parse_grid("2, 5..6,9").unwrap(), vec![2, 5, 6, 9]);
        assert_eq!(parse_grid("").unwrap(), Vec::<usize>::new());
        assert_eq!(parse_grid("4..3").unwrap(), Vec::<usize>::new());
        assert!(parse_grid("a..3").is_err());
    }

    #[test]
    fn brute_counts_double_with_t() {
        let rows = run_bench(&spec("1", "1..8", "2"));
        let counts: Vec<u64> = rows.iter().map(|r| r.assignments.unwrap()).collect();
        assert_eq!(counts, (1..=8).map(|t| 1u64 << t).collect::<Vec<_>>());
    }

    #[test]
    fn empty_grid_gives_no_rows() {
        assert!(run_bench(&spec("", "1..3", "2")).is_empty());
    }

    #[test]
    fn over_budget_cells_are_skipped() {
        let mut s = spec("1", "30", "2");
        s.budgets.max_assignments = 1000;
        let rows = run_bench(&s);
        assert_eq!(rows.len(), 1);
        assert!(rows[0].skipped.as_deref().unwrap().contains("max_assignments"));
        assert_eq!(rows[0].assignments, None);
    }

    #[test]
    fn min_worst_reads_every_cell() {
        let mut s = spec("1..3", "1..3", "1..3");
        s.model = Model::Min;
        s.family = Family::MinWorst;
        s.alpha = Quota::All;
        s.strategy = Strategy::Fixed(Method::MinUnanimous);
        for row in run_bench(&s) {
            assert_eq!(row.reads, Some((row.n * row.t * row.ell) as u64));
            assert_eq!(row.feasible, Some(true));
        }
    }
}
