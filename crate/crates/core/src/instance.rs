//! The election-control instance and the three aggregation models.
//!
//! Indices are 0-based throughout: voter `i`, layer `j`, rule `k`. The
//! satisfaction tensor is stored flat in voter-major order, so
//! `sat[(i * t + j) * ell + k]` is the satisfaction of voter `i`'s vote at
//! layer `j` when rule `k` governs that layer.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// Largest sum-model aggregate accepted before evaluation reports overflow.
pub const SUM_LIMIT: u64 = 1 << 62;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Model {
    Sum,
    Max,
    Min,
}

impl Model {
    pub const ALL: [Model; 3] = [Model::Sum, Model::Max, Model::Min];

    pub fn as_str(self) -> &'static str {
        match self {
            Model::Sum => "sum",
            Model::Max => "max",
            Model::Min => "min",
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl core::str::FromStr for Model {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sum" => Ok(Model::Sum),
            "max" => Ok(Model::Max),
            "min" => Ok(Model::Min),
            other => Err(Error::usage(format!("unknown model {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Instance {
    pub n: usize,
    pub t: usize,
    pub ell: usize,
    /// Flat `n * t * ell` tensor, see the module docs for the layout.
    pub sat: Vec<u64>,
    pub model: Model,
    pub d: u64,
    pub alpha: usize,
}

/// One instance invariant that does not hold.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    ZeroDimension { field: &'static str },
    TensorShape { expected: usize, found: usize },
    /// A nested tensor row (as read from a file) has the wrong length.
    RaggedTensor {
        index: Vec<usize>,
        expected: usize,
        found: usize,
    },
    QuotaExceedsVoters { alpha: usize, n: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::ZeroDimension { field } => write!(f, "{field}: must be at least 1"),
            Violation::TensorShape { expected, found } => {
                write!(f, "sat: expected {expected} entries (n*t*ell), found {found}")
            }
            Violation::RaggedTensor {
                index,
                expected,
                found,
            } => {
                f.write_str("sat")?;
                for i in index {
                    write!(f, "[{i}]")?;
                }
                write!(f, ": expected {expected} entries, found {found}")
            }
            Violation::QuotaExceedsVoters { alpha, n } => {
                write!(f, "alpha: {alpha} exceeds voter count n={n}")
            }
        }
    }
}

impl Instance {
    /// Builds and validates an instance.
    pub fn new(
        n: usize,
        t: usize,
        ell: usize,
        sat: Vec<u64>,
        model: Model,
        d: u64,
        alpha: usize,
    ) -> Result<Self> {
        let inst = Instance {
            n,
            t,
            ell,
            sat,
            model,
            d,
            alpha,
        };
        inst.check()?;
        Ok(inst)
    }

    /// Builds a validated instance whose tensor entries come from `f(i, j, k)`.
    pub fn from_fn(
        n: usize,
        t: usize,
        ell: usize,
        model: Model,
        d: u64,
        alpha: usize,
        mut f: impl FnMut(usize, usize, usize) -> u64,
    ) -> Result<Self> {
        let mut sat = Vec::with_capacity(n * t * ell);
        for i in 0..n {
            for j in 0..t {
                for k in 0..ell {
                    sat.push(f(i, j, k));
                }
            }
        }
        Instance::new(n, t, ell, sat, model, d, alpha)
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize) -> u64 {
        self.sat[(i * self.t + j) * self.ell + k]
    }

    /// The `ell` entries of voter `i` at layer `j`.
    #[inline]
    pub fn row(&self, i: usize, j: usize) -> &[u64] {
        let start = (i * self.t + j) * self.ell;
        &self.sat[start..start + self.ell]
    }

    /// Lists every violated invariant; never fails.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for (field, v) in [("n", self.n), ("t", self.t), ("ell", self.ell)] {
            if v == 0 {
                out.push(Violation::ZeroDimension { field });
            }
        }
        let expected = self.n.saturating_mul(self.t).saturating_mul(self.ell);
        if self.sat.len() != expected {
            out.push(Violation::TensorShape {
                expected,
                found: self.sat.len(),
            });
        }
        if self.alpha > self.n {
            out.push(Violation::QuotaExceedsVoters {
                alpha: self.alpha,
                n: self.n,
            });
        }
        out
    }

    /// [`validate`](Self::validate) folded into a usage error.
    pub fn check(&self) -> Result<()> {
        let violations = self.validate();
        if violations.is_empty() {
            return Ok(());
        }
        let msg: Vec<String> = violations.iter().map(|v| format!("{v}")).collect();
        Err(Error::Usage(format!("invalid instance: {}", msg.join("; "))))
    }

    /// True when every tensor entry is 0 or 1.
    pub fn is_binary(&self) -> bool {
        self.sat.iter().all(|&s| s <= 1)
    }

    pub fn with_model(&self, model: Model) -> Instance {
        Instance {
            model,
            ..self.clone()
        }
    }
}

/// A rule index per layer. Rules may repeat across layers.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RuleAssignment(pub Vec<usize>);

impl RuleAssignment {
    pub fn layers(&self) -> &[usize] {
        &self.0
    }

    pub fn check(&self, inst: &Instance) -> Result<()> {
        if self.0.len() != inst.t {
            return Err(Error::usage(format!(
                "assignment has {} layers, instance has t={}",
                self.0.len(),
                inst.t
            )));
        }
        if let Some((j, &k)) = self.0.iter().enumerate().find(|(_, &k)| k >= inst.ell) {
            return Err(Error::usage(format!(
                "layer {j} assigned rule {k}, instance has ell={}",
                inst.ell
            )));
        }
        Ok(())
    }
}

impl From<Vec<usize>> for RuleAssignment {
    fn from(v: Vec<usize>) -> Self {
        RuleAssignment(v)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvalReport {
    pub voter_sat: Vec<u64>,
    pub accepted: Vec<bool>,
    pub satisfied_count: usize,
    pub feasible: bool,
}

/// Aggregate satisfaction of one voter, assuming `layers` is already checked.
pub(crate) fn aggregate(inst: &Instance, layers: &[usize], i: usize) -> Result<u64> {
    let values = layers.iter().enumerate().map(|(j, &k)| inst.get(i, j, k));
    match inst.model {
        Model::Sum => {
            let mut acc: u128 = 0;
            for v in values {
                acc += u128::from(v);
                if acc > u128::from(SUM_LIMIT) {
                    return Err(Error::Arithmetic(format!(
                        "sum-model satisfaction of voter {i} exceeds 2^62"
                    )));
                }
            }
            Ok(acc as u64)
        }
        Model::Max => Ok(values.max().unwrap_or(0)),
        Model::Min => Ok(values.min().unwrap_or(0)),
    }
}

/// Whether some rule assignment could push a sum-model aggregate over
/// [`SUM_LIMIT`]. Always false for the max and min models.
pub fn sum_may_overflow(inst: &Instance) -> bool {
    inst.model == Model::Sum
        && (0..inst.n).any(|i| {
            let worst: u128 = (0..inst.t)
                .map(|j| u128::from(inst.row(i, j).iter().copied().max().unwrap_or(0)))
                .sum();
            worst > u128::from(SUM_LIMIT)
        })
}

/// Number of voters reaching `d` under `layers`, assuming it is already checked.
pub(crate) fn count_accepting(inst: &Instance, layers: &[usize]) -> Result<usize> {
    let mut count = 0;
    for i in 0..inst.n {
        if aggregate(inst, layers, i)? >= inst.d {
            count += 1;
        }
    }
    Ok(count)
}

pub fn evaluate_voter(inst: &Instance, a: &RuleAssignment, i: usize) -> Result<u64> {
    if i >= inst.n {
        return Err(Error::usage(format!("voter {i} out of range (n={})", inst.n)));
    }
    inst.check()?;
    a.check(inst)?;
    aggregate(inst, &a.0, i)
}

pub fn evaluate(inst: &Instance, a: &RuleAssignment) -> Result<EvalReport> {
    inst.check()?;
    a.check(inst)?;
    let voter_sat = (0..inst.n)
        .map(|i| aggregate(inst, &a.0, i))
        .collect::<Result<Vec<_>>>()?;
    let accepted: Vec<bool> = voter_sat.iter().map(|&s| s >= inst.d).collect();
    let satisfied_count = accepted.iter().filter(|&&b| b).count();
    Ok(EvalReport {
        feasible: satisfied_count >= inst.alpha,
        voter_sat,
        accepted,
        satisfied_count,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn rows(model: Model, values: &[u64]) -> Instance {
        // one voter, one rule, one layer per value
        Instance::new(1, values.len(), 1, values.to_vec(), model, 1, 1).unwrap()
    }

    #[test]
    fn sum_of_chosen_rules() {
        let inst = Instance::new(1, 2, 2, vec![3, 9, 9, 4], Model::Sum, 1, 1).unwrap();
        assert_eq!(evaluate_voter(&inst, &vec![0, 1].into(), 0).unwrap(), 7);
    }

    #[test]
    fn max_and_min_of_rows() {
        let a: RuleAssignment = vec![0, 0, 0].into();
        assert_eq!(evaluate_voter(&rows(Model::Max, &[0, 5, 2]), &a, 0).unwrap(), 5);
        assert_eq!(evaluate_voter(&rows(Model::Min, &[0, 5, 2]), &a, 0).unwrap(), 0);
    }

    #[test]
    fn single_cell_instance() {
        for alpha in 0..=1 {
            let inst = Instance::new(1, 1, 1, vec![4], Model::Sum, 4, alpha).unwrap();
            assert!(evaluate(&inst, &vec![0].into()).unwrap().feasible);
        }
    }

    #[test]
    fn empty_quota_is_feasible() {
        let inst = Instance::new(2, 1, 2, vec![0; 4], Model::Min, 5, 0).unwrap();
        let report = evaluate(&inst, &vec![1].into()).unwrap();
        assert_eq!(report.satisfied_count, 0);
        assert!(report.feasible);
    }

    #[test]
    fn partition_tensor_hand_evaluated() {
        // values {1,1,2}: voter 0 collects s_j under rule 0, voter 1 under rule 1
        let s = [1u64, 1, 2];
        let inst = Instance::from_fn(2, 3, 2, Model::Sum, 2, 2, |i, j, k| {
            if i == k {
                s[j]
            } else {
                0
            }
        })
        .unwrap();
        let report = evaluate(&inst, &vec![0, 1, 0].into()).unwrap();
        assert_eq!(report.voter_sat, vec![3, 1]);
        assert_eq!(report.accepted, vec![true, false]);
        assert!(!report.feasible);
    }

    #[test]
    fn validate_reports_each_violation() {
        let good = Instance::new(2, 2, 2, vec![0; 8], Model::Sum, 1, 2).unwrap();
        assert!(good.validate().is_empty());

        let mut short = good.clone();
        short.sat.pop();
        assert_eq!(
            short.validate(),
            vec![Violation::TensorShape {
                expected: 8,
                found: 7
            }]
        );

        let mut quota = good.clone();
        quota.alpha = 3;
        assert_eq!(
            quota.validate(),
            vec![Violation::QuotaExceedsVoters { alpha: 3, n: 2 }]
        );

        let mut empty = good;
        empty.n = 0;
        empty.sat.clear();
        empty.alpha = 0;
        assert_eq!(empty.validate(), vec![Violation::ZeroDimension { field: "n" }]);
    }

    #[test]
    fn out_of_range_inputs_are_usage_errors() {
        let inst = Instance::new(1, 2, 2, vec![0; 4], Model::Sum, 1, 1).unwrap();
        assert!(matches!(
            evaluate_voter(&inst, &vec![0, 0].into(), 1),
            Err(Error::Usage(_))
        ));
        assert!(matches!(
            evaluate(&inst, &vec![0, 2].into()),
            Err(Error::Usage(_))
        ));
        assert!(matches!(evaluate(&inst, &vec![0].into()), Err(Error::Usage(_))));
    }

    #[test]
    fn sum_overflow_is_reported() {
        let big = SUM_LIMIT;
        let inst = Instance::new(1, 2, 1, vec![big, 1], Model::Sum, 1, 1).unwrap();
        assert!(matches!(
            evaluate(&inst, &vec![0, 0].into()),
            Err(Error::Arithmetic(_))
        ));
        let fits = Instance::new(1, 2, 1, vec![big - 1, 1], Model::Sum, 1, 1).unwrap();
        assert_eq!(evaluate_voter(&fits, &vec![0, 0].into(), 0).unwrap(), big);
    }
}
