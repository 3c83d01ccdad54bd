//! Satisfaction tensors from ranked ballots, and the threshold transform
//! that reduces max-model instances to 0/1 tensors with `d = 1`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::instance::{Instance, Model};

/// Positional scoring rule evaluated for the distinguished candidate.
///
/// `KApproval` is an extension beyond Borda, plurality and veto.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RuleSpec {
    Borda,
    Plurality,
    Veto,
    KApproval(usize),
}

/// Strict rankings: `rankings[i][j]` is voter `i`'s order at layer `j`,
/// most preferred first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Profile {
    pub m: usize,
    pub p: usize,
    pub rankings: Vec<Vec<Vec<usize>>>,
}

impl Profile {
    pub fn n(&self) -> usize {
        self.rankings.len()
    }

    pub fn t(&self) -> usize {
        self.rankings.first().map_or(0, Vec::len)
    }

    pub fn validate(&self) -> Result<()> {
        if self.p >= self.m {
            return Err(Error::usage(format!(
                "distinguished candidate {} out of range (m={})",
                self.p, self.m
            )));
        }
        let t = self.t();
        if self.rankings.is_empty() || t == 0 {
            return Err(Error::usage("profile needs at least one voter and one layer"));
        }
        for (i, voter) in self.rankings.iter().enumerate() {
            if voter.len() != t {
                return Err(Error::usage(format!(
                    "voter {i} has {} layers, expected {t}",
                    voter.len()
                )));
            }
            for (j, ranking) in voter.iter().enumerate() {
                check_permutation(ranking, self.m)
                    .map_err(|e| Error::usage(format!("rankings[{i}][{j}]: {e}")))?;
            }
        }
        Ok(())
    }
}

fn check_permutation(ranking: &[usize], m: usize) -> Result<()> {
    if ranking.len() != m {
        return Err(Error::usage(format!(
            "ranking has {} entries, expected {m}",
            ranking.len()
        )));
    }
    let mut seen = vec![false; m];
    for &c in ranking {
        if c >= m || seen[c] {
            return Err(Error::usage(format!("ranking is not a permutation of 0..{m}")));
        }
        seen[c] = true;
    }
    Ok(())
}

/// Score of candidate `c` in `ranking` under `rule`.
pub fn score(rule: RuleSpec, ranking: &[usize], c: usize) -> Result<u64> {
    let m = ranking.len();
    check_permutation(ranking, m)?;
    if let RuleSpec::KApproval(k) = rule {
        if k == 0 || k > m {
            return Err(Error::usage(format!("k-approval needs 1 <= k <= m, got k={k}")));
        }
    }
    let rank = ranking
        .iter()
        .position(|&x| x == c)
        .ok_or_else(|| Error::usage(format!("candidate {c} out of range (m={m})")))?;
    Ok(match rule {
        RuleSpec::Borda => (m - 1 - rank) as u64,
        RuleSpec::Plurality => u64::from(rank == 0),
        RuleSpec::Veto => u64::from(rank != m - 1),
        RuleSpec::KApproval(k) => u64::from(rank < k),
    })
}

/// Satisfaction tensor with explicit dimensions, flat in the same layout as
/// [`Instance::sat`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tensor {
    pub n: usize,
    pub t: usize,
    pub ell: usize,
    pub values: Vec<u64>,
}

impl Tensor {
    pub fn get(&self, i: usize, j: usize, k: usize) -> u64 {
        self.values[(i * self.t + j) * self.ell + k]
    }

    pub fn into_instance(self, model: Model, d: u64, alpha: usize) -> Result<Instance> {
        Instance::new(self.n, self.t, self.ell, self.values, model, d, alpha)
    }
}

/// `tensor[i][j][k] = score(rules[k], rankings[i][j], p)`.
pub fn build_tensor(profile: &Profile, rules: &[RuleSpec]) -> Result<Tensor> {
    if rules.is_empty() {
        return Err(Error::usage("at least one rule is required"));
    }
    profile.validate()?;
    let (n, t, ell) = (profile.n(), profile.t(), rules.len());
    let mut values = Vec::with_capacity(n * t * ell);
    for voter in &profile.rankings {
        for ranking in voter {
            for &rule in rules {
                values.push(score(rule, ranking, profile.p)?);
            }
        }
    }
    Ok(Tensor { n, t, ell, values })
}

/// Maps every entry to `1` if it reaches `d`, else `0`, and resets the
/// threshold to 1. Only meaningful for the max model, where a voter accepts
/// exactly when some layer alone reaches `d`.
pub fn dichotomize(inst: &Instance, d: u64) -> Result<Instance> {
    if inst.model != Model::Max {
        return Err(Error::usage(format!(
            "dichotomize requires the max model, got {}",
            inst.model
        )));
    }
    inst.check()?;
    Ok(Instance {
        sat: inst.sat.iter().map(|&s| u64::from(s >= d)).collect(),
        d: 1,
        ..inst.clone()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const RANKING: [usize; 4] = [2, 0, 3, 1];

    #[test]
    fn borda_is_reversed_position() {
        assert_eq!(score(RuleSpec::Borda, &RANKING, 0).unwrap(), 2);
        assert_eq!(score(RuleSpec::Borda, &RANKING, 2).unwrap(), 3);
        assert_eq!(score(RuleSpec::Borda, &RANKING, 1).unwrap(), 0);
    }

    #[test]
    fn plurality_and_veto() {
        assert_eq!(score(RuleSpec::Plurality, &RANKING, 2).unwrap(), 1);
        assert_eq!(score(RuleSpec::Plurality, &RANKING, 0).unwrap(), 0);
        assert_eq!(score(RuleSpec::Veto, &RANKING, 1).unwrap(), 0);
        for c in [0, 2, 3] {
            assert_eq!(score(RuleSpec::Veto, &RANKING, c).unwrap(), 1);
        }
    }

    #[test]
    fn k_approval_cutoff() {
        assert_eq!(score(RuleSpec::KApproval(2), &RANKING, 0).unwrap(), 1);
        assert_eq!(score(RuleSpec::KApproval(2), &RANKING, 3).unwrap(), 0);
        assert!(score(RuleSpec::KApproval(0), &RANKING, 0).is_err());
        assert!(score(RuleSpec::KApproval(5), &RANKING, 0).is_err());
    }

    #[test]
    fn invalid_rankings_rejected() {
        assert!(score(RuleSpec::Borda, &[0, 0, 1], 0).is_err());
        assert!(score(RuleSpec::Borda, &[0, 3, 1], 0).is_err());
        assert!(score(RuleSpec::Borda, &[0, 1, 2], 3).is_err());
    }

    #[test]
    fn last_ranked_candidate_scores_zero() {
        let profile = Profile {
            m: 3,
            p: 2,
            rankings: vec![vec![vec![0, 1, 2]]],
        };
        let tensor = build_tensor(&profile, &[RuleSpec::Borda, RuleSpec::Plurality]).unwrap();
        assert_eq!((tensor.n, tensor.t, tensor.ell), (1, 1, 2));
        assert_eq!(tensor.values, vec![0, 0]);
    }

    #[test]
    fn first_ranked_everywhere_gives_max_borda() {
        let profile = Profile {
            m: 3,
            p: 1,
            rankings: vec![vec![vec![1, 0, 2], vec![1, 2, 0]]; 2],
        };
        let tensor = build_tensor(&profile, &[RuleSpec::Borda]).unwrap();
        assert_eq!(tensor.values, vec![2; 4]);
    }

    #[test]
    fn empty_rules_rejected() {
        let profile = Profile {
            m: 2,
            p: 0,
            rankings: vec![vec![vec![0, 1]]],
        };
        assert!(matches!(build_tensor(&profile, &[]), Err(Error::Usage(_))));
    }

    #[test]
    fn dichotomize_thresholds() {
        let inst = Instance::new(1, 3, 1, vec![0, 3, 7], Model::Max, 3, 1).unwrap();
        let out = dichotomize(&inst, 3).unwrap();
        assert_eq!(out.sat, vec![0, 1, 1]);
        assert_eq!(out.d, 1);
        assert_eq!((out.n, out.t, out.ell, out.alpha), (1, 3, 1, 1));

        let binary = Instance::new(1, 3, 1, vec![0, 1, 1], Model::Max, 1, 1).unwrap();
        assert_eq!(dichotomize(&binary, 1).unwrap(), binary);
        assert!(dichotomize(&binary.with_model(Model::Sum), 1).is_err());
    }

    fn permutation(m: usize) -> impl Strategy<Value = Vec<usize>> {
        Just((0..m).collect::<Vec<_>>()).prop_shuffle()
    }

    proptest! {
        #[test]
        fn scores_bounded_and_borda_is_a_permutation(
            ranking in (1usize..7).prop_flat_map(permutation),
            k in 1usize..7,
        ) {
            let m = ranking.len();
            let k = k.min(m);
            let mut borda: Vec<u64> = Vec::new();
            for c in 0..m {
                for rule in [RuleSpec::Borda, RuleSpec::Plurality, RuleSpec::Veto, RuleSpec::KApproval(k)] {
                    let s = score(rule, &ranking, c).unwrap();
                    prop_assert!(s <= (m - 1).max(1) as u64);
                }
                borda.push(score(RuleSpec::Borda, &ranking, c).unwrap());
            }
            borda.sort_unstable();
            prop_assert_eq!(borda, (0..m as u64).collect::<Vec<_>>());
        }

        #[test]
        fn dichotomize_is_idempotent(
            sat in proptest::collection::vec(0u64..8, 12),
            d in 0u64..9,
        ) {
            let inst = Instance::new(2, 3, 2, sat, Model::Max, d, 1).unwrap();
            let once = dichotomize(&inst, d).unwrap();
            prop_assert_eq!(dichotomize(&once, 1).unwrap(), once);
        }
    }
}
