//! Exact decision procedures.
//!
//! All solvers return the same [`SolveResult`] shape. When an instance is
//! feasible the returned assignment always re-evaluates as feasible; which
//! witness is returned is fixed by each solver's enumeration order, so equal
//! instances give equal witnesses.

use alloc::format;
use alloc::string::String;
use core::fmt;

use crate::error::{Error, Result};
use crate::instance::{Instance, Model, RuleAssignment};

mod brute;
mod fpt;
mod min;
mod subsets;

pub use brute::{assignment_at, assignment_count, scan_range, solve_brute, RangeScan};
pub use fpt::{rule_types, solve_subset_fpt, RuleType};
pub use min::{solve_min_subsets, solve_min_unanimous};
pub use subsets::SubsetsByPopcount;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Brute,
    MinUnanimous,
    MinSubsets,
    SubsetFpt,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Brute => "brute",
            Method::MinUnanimous => "min_unanimous",
            Method::MinSubsets => "min_subsets",
            Method::SubsetFpt => "subset_fpt",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Strategy {
    #[default]
    Auto,
    Fixed(Method),
}

impl core::str::FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "auto" => Strategy::Auto,
            "brute" => Strategy::Fixed(Method::Brute),
            "min_unanimous" => Strategy::Fixed(Method::MinUnanimous),
            "min_subsets" => Strategy::Fixed(Method::MinSubsets),
            "subset_fpt" => Strategy::Fixed(Method::SubsetFpt),
            other => return Err(Error::usage(format!("unknown strategy {other:?}"))),
        })
    }
}

/// Work limits. Exceeding one is a [`Error::Resource`], never a truncated
/// search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budgets {
    /// Upper bound on `ell^t` for brute force.
    pub max_assignments: u64,
    /// Largest `n` accepted by the min-model subset enumeration.
    pub min_subsets_max_n: usize,
    /// Largest `n` accepted by the rule-type subset search.
    pub subset_fpt_max_n: usize,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            max_assignments: 100_000_000,
            min_subsets_max_n: 24,
            subset_fpt_max_n: 20,
        }
    }
}

/// Work counters. `reads` counts tensor entries inspected and is reported
/// by the benchmark harness only.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Stats {
    pub assignments: u64,
    pub subsets: u64,
    pub rule_types: u64,
    pub reads: u64,
    pub elapsed_ns: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub feasible: bool,
    pub assignment: Option<RuleAssignment>,
    pub stats: Stats,
    pub method: Method,
}

impl SolveResult {
    pub(crate) fn new(method: Method, assignment: Option<RuleAssignment>, stats: Stats) -> Self {
        SolveResult {
            feasible: assignment.is_some(),
            assignment,
            stats,
            method,
        }
    }
}

/// Estimated work of the subset-based solvers: `2^n * n * t * ell`.
fn subset_cost(inst: &Instance) -> Option<u64> {
    let pow = 1u64.checked_shl(u32::try_from(inst.n).ok()?)?;
    pow.checked_mul(inst.n as u64)?
        .checked_mul(inst.t as u64)?
        .checked_mul(inst.ell as u64)
}

/// Whether `method`'s preconditions hold for `inst`, ignoring budgets.
pub fn applicable(inst: &Instance, method: Method) -> bool {
    match method {
        Method::Brute => true,
        Method::MinUnanimous => inst.model == Model::Min && inst.alpha == inst.n,
        Method::MinSubsets => inst.model == Model::Min,
        Method::SubsetFpt => match inst.model {
            Model::Max => true,
            Model::Sum => inst.is_binary(),
            Model::Min => false,
        },
    }
}

fn within_budget(inst: &Instance, method: Method, budgets: &Budgets) -> bool {
    match method {
        Method::Brute => assignment_count(inst).is_some_and(|c| c <= budgets.max_assignments),
        Method::MinUnanimous => true,
        Method::MinSubsets => inst.n <= budgets.min_subsets_max_n,
        Method::SubsetFpt => inst.n <= budgets.subset_fpt_max_n,
    }
}

/// Picks the method `solve` would use under [`Strategy::Auto`].
///
/// Min with `alpha = n` is always polynomial. Otherwise the subset method
/// for the model (min_subsets for Min, subset_fpt for Max and 0/1 Sum) is
/// preferred when `2^n * n * t * ell < ell^t`, else brute force; if the
/// preferred method is over budget the other one is tried.
pub fn choose_method(inst: &Instance, budgets: &Budgets) -> Result<Method> {
    inst.check()?;
    if applicable(inst, Method::MinUnanimous) {
        return Ok(Method::MinUnanimous);
    }
    let subset_method = match inst.model {
        Model::Min => Some(Method::MinSubsets),
        _ if applicable(inst, Method::SubsetFpt) => Some(Method::SubsetFpt),
        _ => None,
    };
    let candidates = match subset_method {
        Some(sub) => {
            let subset_cheaper = match (subset_cost(inst), assignment_count(inst)) {
                (Some(s), Some(b)) => s < b,
                (Some(_), None) => true,
                (None, _) => false,
            };
            if subset_cheaper {
                [Some(sub), Some(Method::Brute)]
            } else {
                [Some(Method::Brute), Some(sub)]
            }
        }
        None => [Some(Method::Brute), None],
    };
    candidates
        .into_iter()
        .flatten()
        .find(|&m| within_budget(inst, m, budgets))
        .ok_or_else(|| {
            Error::Resource(format!(
                "no applicable method within budgets: max_assignments={} (ell^t={}), \
                 min_subsets_max_n={}, subset_fpt_max_n={} (n={})",
                budgets.max_assignments,
                assignment_count(inst).map_or_else(|| String::from("overflow"), |c| format!("{c}")),
                budgets.min_subsets_max_n,
                budgets.subset_fpt_max_n,
                inst.n
            ))
        })
}

pub fn solve_with(inst: &Instance, method: Method, budgets: &Budgets) -> Result<SolveResult> {
    match method {
        Method::Brute => solve_brute(inst, budgets.max_assignments),
        Method::MinUnanimous => solve_min_unanimous(inst),
        Method::MinSubsets => solve_min_subsets(inst, budgets.min_subsets_max_n),
        Method::SubsetFpt => solve_subset_fpt(inst, budgets.subset_fpt_max_n),
    }
}

pub fn solve(inst: &Instance, strategy: Strategy, budgets: &Budgets) -> Result<SolveResult> {
    let method = match strategy {
        Strategy::Auto => choose_method(inst, budgets)?,
        Strategy::Fixed(m) => m,
    };
    solve_with(inst, method, budgets)
}
