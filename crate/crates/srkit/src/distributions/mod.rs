//! Weight distributions of codes: by sum-rank, by rank list and by support.
//!
//! Brute-force counts come from one codeword sweep; the MacWilliams
//! transforms and the closed forms for MSRD codes live in the submodules.

mod macwilliams;
mod omega;

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::ambient::{Profile, SubspaceTuple};
use crate::code::sweep::Sweep;
use crate::code::LinearCode;
use crate::error::{Error, Result};
use crate::exec::Limits;
use crate::matq::{Mat, Subspace};

pub use macwilliams::{binomial_moment_check, binomial_moments_hold, macwilliams_ranklist, macwilliams_support};
pub use omega::{
    comparison_scan, conjecture_scan, exclusion_report, f_ell, f_polynomial, msrd_support_distribution, omega,
    omega_hat, omega_hat_scan, omega_scan, omega_tilde, tilde_u, ComparisonCase, ConjectureCase, ConjectureReport,
    ExclusionReport, OmegaVerdict, ScanMode,
};

/// `W_r` for `r = 0..=N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SumRankDistribution {
    pub counts: Vec<BigUint>,
}

/// `W_u` keyed by rank vectors; only nonzero entries are stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct RankListDistribution {
    pub counts: BTreeMap<Vec<usize>, BigUint>,
}

/// `W_U` keyed by canonical subspace tuples; only nonzero entries are stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SupportDistribution {
    pub counts: BTreeMap<SubspaceTuple, BigUint>,
}

/// All three distributions of one code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Distributions {
    pub sum_rank: SumRankDistribution,
    pub rank_list: RankListDistribution,
    pub support: SupportDistribution,
}

impl SumRankDistribution {
    pub fn total(&self) -> BigUint {
        self.counts.iter().sum()
    }

    pub fn get(&self, r: usize) -> BigUint {
        self.counts.get(r).cloned().unwrap_or_default()
    }
}

impl RankListDistribution {
    pub fn total(&self) -> BigUint {
        self.counts.values().sum()
    }

    pub fn get(&self, u: &[usize]) -> BigUint {
        self.counts.get(u).cloned().unwrap_or_default()
    }

    /// Marginal by `|u|`, indices `0..=big_n`.
    pub fn sum_rank(&self, big_n: usize) -> SumRankDistribution {
        let mut counts = vec![BigUint::zero(); big_n + 1];
        for (u, w) in &self.counts {
            counts[u.iter().sum::<usize>()] += w;
        }
        SumRankDistribution { counts }
    }
}

impl SupportDistribution {
    pub fn total(&self) -> BigUint {
        self.counts.values().sum()
    }

    pub fn get(&self, u: &SubspaceTuple) -> BigUint {
        self.counts.get(u).cloned().unwrap_or_default()
    }

    /// Groups by dimension vector.
    pub fn rank_list(&self) -> RankListDistribution {
        let mut counts: BTreeMap<Vec<usize>, BigUint> = BTreeMap::new();
        for (u, w) in &self.counts {
            *counts.entry(u.dim_vector()).or_default() += w;
        }
        RankListDistribution { counts }
    }

    /// `|C(U)| = Σ_{V ≤ U} W_V`.
    pub fn shortened_size(&self, u: &SubspaceTuple, profile: &Profile) -> BigUint {
        let f = profile.field();
        self.counts.iter().filter(|(v, _)| v.leq(u, f)).map(|(_, w)| w).sum()
    }

    /// Checks that the counts sum to `cardinality` with exactly one zero word.
    pub(crate) fn check_complete(&self, cardinality: &BigUint, profile: &Profile) -> Result<()> {
        let zero = SubspaceTuple::zero(profile);
        if self.get(&zero) != BigUint::one() {
            return Err(Error::IncompleteDistribution("W at the zero tuple must be 1".into()));
        }
        if &self.total() != cardinality {
            return Err(Error::IncompleteDistribution(format!(
                "counts sum to {}, expected {cardinality}",
                self.total()
            )));
        }
        for u in self.counts.keys() {
            u.check(profile)
                .map_err(|_| Error::IncompleteDistribution("key outside the lattice".into()))?;
        }
        Ok(())
    }
}

#[derive(Default)]
struct SupportAcc {
    map: HashMap<SubspaceTuple, u64>,
    overflow: bool,
}

/// Support tuple of a flattened codeword.
fn flat_support(profile: &Profile, v: &[crate::field::Elem]) -> SubspaceTuple {
    let f = profile.field();
    let parts: Vec<Subspace> = profile
        .blocks()
        .iter()
        .enumerate()
        .map(|(i, &(n, m))| {
            let o = profile.offset(i);
            Mat::from_vec(n, m, v[o..o + n * m].to_vec()).colspace(f)
        })
        .collect();
    SubspaceTuple::new(parts)
}

/// Exact support distribution from a full sweep.
pub fn support_distribution(code: &LinearCode, limits: &Limits) -> Result<SupportDistribution> {
    let sweep = Sweep::new(code, limits)?;
    let profile = code.profile();
    let max_keys = limits.max_keys;
    let acc = sweep.run(
        limits,
        SupportAcc::default,
        |acc: &mut SupportAcc, v| {
            if acc.overflow {
                return;
            }
            *acc.map.entry(flat_support(profile, v)).or_insert(0) += 1;
            if acc.map.len() > max_keys {
                acc.overflow = true;
            }
        },
        |mut a, b| {
            if a.overflow || b.overflow {
                a.overflow = true;
                return a;
            }
            for (k, w) in b.map {
                *a.map.entry(k).or_insert(0) += w;
            }
            a.overflow = a.map.len() > max_keys;
            a
        },
    );
    if acc.overflow {
        return Err(Error::TooLarge {
            what: "support distribution keys",
            size: format!(">{max_keys}"),
            limit: max_keys.to_string(),
        });
    }
    Ok(SupportDistribution {
        counts: acc.map.into_iter().map(|(k, w)| (k, BigUint::from(w))).collect(),
    })
}

/// Rank-list distribution from a full sweep.
pub fn rank_list_distribution(code: &LinearCode, limits: &Limits) -> Result<RankListDistribution> {
    let sweep = Sweep::new(code, limits)?;
    let profile = code.profile();
    let f = profile.field();
    let map = sweep.run(
        limits,
        HashMap::<Vec<usize>, u64>::new,
        |acc, v| {
            let ranks: Vec<usize> = profile
                .blocks()
                .iter()
                .enumerate()
                .map(|(i, &(n, m))| {
                    let o = profile.offset(i);
                    Mat::from_vec(n, m, v[o..o + n * m].to_vec()).rank(f)
                })
                .collect();
            *acc.entry(ranks).or_insert(0) += 1;
        },
        |mut a, b| {
            for (k, w) in b {
                *a.entry(k).or_insert(0) += w;
            }
            a
        },
    );
    Ok(RankListDistribution {
        counts: map.into_iter().map(|(k, w)| (k, BigUint::from(w))).collect(),
    })
}

/// Sum-rank distribution from a full sweep.
pub fn sum_rank_distribution(code: &LinearCode, limits: &Limits) -> Result<SumRankDistribution> {
    Ok(SumRankDistribution {
        counts: code
            .weight_distribution(limits)?
            .into_iter()
            .map(BigUint::from)
            .collect(),
    })
}

/// All three distributions from one sweep.
pub fn brute_distributions(code: &LinearCode, limits: &Limits) -> Result<Distributions> {
    let support = support_distribution(code, limits)?;
    let rank_list = support.rank_list();
    let sum_rank = rank_list.sum_rank(code.profile().big_n());
    Ok(Distributions {
        sum_rank,
        rank_list,
        support,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ambient::MatrixTuple;
    use crate::exec::Exec;
    use crate::field::Field;
    use rand::SeedableRng;

    fn gf2() -> Field {
        Field::prime(2).unwrap()
    }

    #[test]
    fn zero_code() {
        let p = Profile::parse(&gf2(), "2x2,1x3").unwrap();
        let d = brute_distributions(&LinearCode::zero(&p), &Limits::default()).unwrap();
        assert_eq!(d.sum_rank.counts[0], BigUint::one());
        assert_eq!(d.sum_rank.total(), BigUint::one());
        assert_eq!(d.support.counts.len(), 1);
    }

    #[test]
    fn single_rank_two_word() {
        let p = Profile::parse(&gf2(), "2x2,2x2").unwrap();
        let g = MatrixTuple::new(vec![Mat::identity(2), Mat::zeros(2, 2)]);
        let code = LinearCode::new(&p, &[g]).unwrap();
        let d = brute_distributions(&code, &Limits::default()).unwrap();
        assert_eq!(d.sum_rank.counts, [1u32, 0, 1, 0, 0].map(BigUint::from).to_vec());
    }

    #[test]
    fn marginals_agree_with_direct_sweeps() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for (q, text) in [(2u64, "2x3,2x2,1x2"), (3, "2x2,1x2"), (4, "1x2,1x1")] {
            let f = Field::with_order(q).unwrap();
            let p = Profile::parse(&f, text).unwrap();
            for k in 0..=3.min(p.dim()) {
                let code = LinearCode::random(&p, k, &mut rng);
                for exec in [Exec::Parallel, Exec::Sequential] {
                    let lim = Limits::default().with_exec(exec);
                    let d = brute_distributions(&code, &lim).unwrap();
                    assert_eq!(d.sum_rank, sum_rank_distribution(&code, &lim).unwrap());
                    assert_eq!(d.rank_list, rank_list_distribution(&code, &lim).unwrap());
                    assert_eq!(d.support.total(), code.cardinality());
                }
            }
        }
    }

    #[test]
    fn shortened_sizes_match_shortening() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let p = Profile::parse(&gf2(), "2x2,2x3").unwrap();
        let code = LinearCode::random(&p, 3, &mut rng);
        let d = support_distribution(&code, &Limits::default()).unwrap();
        for u in crate::ambient::enumerate_lattice(&p, &[1, 1], &Limits::default()).unwrap() {
            assert_eq!(d.shortened_size(&u, &p), code.shorten(&u).unwrap().cardinality());
        }
    }

    #[test]
    fn key_guard() {
        let p = Profile::parse(&gf2(), "2x2,2x2").unwrap();
        let code = LinearCode::full(&p);
        let lim = Limits {
            max_keys: 3,
            ..Limits::default()
        };
        assert!(matches!(support_distribution(&code, &lim), Err(Error::TooLarge { .. })));
    }
}
