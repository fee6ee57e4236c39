//! MacWilliams transforms for the support and rank-list distributions, and
//! the binomial-moment identities.
//!
//! Both transforms factor over blocks: for fixed `H` (or `h`) the inner sum
//! over `v ≤ u` is a product of one-block sums, which are tabulated once.

use std::collections::{BTreeMap, HashMap};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{rank_list_distribution, RankListDistribution, SupportDistribution};
use crate::ambient::{dim_vectors, Profile, SubspaceTuple};
use crate::code::LinearCode;
use crate::error::{Error, Result};
use crate::exec::{fold_range, Limits};
use crate::matq::{enumerate_subspaces, gaussian_binomial, q_power, Subspace};

fn gb(n: usize, k: usize, q: u64) -> BigInt {
    BigInt::from(gaussian_binomial(n as u64, k as u64, q))
}

/// `(-1)^k q^{k(k-1)/2}`.
fn mobius_factor(k: usize, q: u64) -> BigInt {
    let v = BigInt::from(q_power(q, (k * k.saturating_sub(1) / 2) as u64));
    if k % 2 == 1 {
        -v
    } else {
        v
    }
}

/// `Σ_{v ≤ u} q^{m v} (-1)^{u-v} q^{C(u-v,2)} [dint, v]_q`.
fn support_kernel(u: usize, dint: usize, m: usize, q: u64) -> BigInt {
    (0..=u.min(dint))
        .map(|v| BigInt::from(q_power(q, (m * v) as u64)) * mobius_factor(u - v, q) * gb(dint, v, q))
        .sum()
}

/// `Σ_{v ≤ u} q^{m v} (-1)^{u-v} q^{C(u-v,2)} [n-h, v]_q [n-v, u-v]_q`.
fn ranklist_kernel(n: usize, m: usize, h: usize, u: usize, q: u64) -> BigInt {
    (0..=u)
        .map(|v| {
            BigInt::from(q_power(q, (m * v) as u64)) * mobius_factor(u - v, q) * gb(n - h, v, q) * gb(n - v, u - v, q)
        })
        .sum()
}

/// Exact division of a transformed count by `|C|`.
fn finish(total: BigInt, card: &BigInt) -> Result<BigUint> {
    let (quo, rem) = total.div_rem(card);
    if !rem.is_zero() || quo.sign() == Sign::Minus {
        return Err(Error::IncompleteDistribution(
            "transform is not a nonnegative integer; the input is not a code distribution".into(),
        ));
    }
    Ok(quo.to_biguint().expect("nonnegative"))
}

/// Support distribution of `C^⊥` from that of `C`.
pub fn macwilliams_support(
    dist: &SupportDistribution,
    cardinality: &BigUint,
    profile: &Profile,
    limits: &Limits,
) -> Result<SupportDistribution> {
    dist.check_complete(cardinality, profile)?;
    let f = profile.field();
    let q = profile.q();
    let t = profile.t();

    // Every subspace of every block.
    let mut lattice_size = BigUint::one();
    for &(n, _) in profile.blocks() {
        lattice_size *= (0..=n)
            .map(|k| gaussian_binomial(n as u64, k as u64, q))
            .sum::<BigUint>();
    }
    limits.check_subspaces(&lattice_size)?;
    let mut all: Vec<Vec<Subspace>> = Vec::with_capacity(t);
    for &(n, _) in profile.blocks() {
        let mut list = Vec::new();
        for k in 0..=n {
            list.extend(enumerate_subspaces(n, k, f, limits)?);
        }
        all.push(list);
    }

    // Distinct H_i per block, and the kernel table g[i][h][u].
    let mut h_index: Vec<HashMap<Subspace, usize>> = vec![HashMap::new(); t];
    let mut keys: Vec<(Vec<usize>, BigInt)> = Vec::with_capacity(dist.counts.len());
    for (h, w) in &dist.counts {
        let idx = h
            .parts()
            .iter()
            .enumerate()
            .map(|(i, part)| {
                let next = h_index[i].len();
                *h_index[i].entry(part.clone()).or_insert(next)
            })
            .collect();
        keys.push((idx, BigInt::from(w.clone())));
    }
    let mut table: Vec<Vec<Vec<BigInt>>> = Vec::with_capacity(t);
    for i in 0..t {
        let m = profile.m(i);
        let mut hs: Vec<(&Subspace, usize)> = h_index[i].iter().map(|(s, &j)| (s, j)).collect();
        hs.sort_by_key(|x| x.1);
        let mut memo: HashMap<(usize, usize), BigInt> = HashMap::new();
        let rows = hs
            .iter()
            .map(|(h, _)| {
                let perp = h.orthogonal_complement(f);
                all[i]
                    .iter()
                    .map(|u| {
                        let dint = perp.intersect(u, f).expect("same ambient").dim();
                        memo.entry((u.dim(), dint))
                            .or_insert_with(|| support_kernel(u.dim(), dint, m, q))
                            .clone()
                    })
                    .collect()
            })
            .collect();
        table.push(rows);
    }

    let sizes: Vec<u64> = all.iter().map(|l| l.len() as u64).collect();
    let total: u64 = sizes.iter().product();
    let card = BigInt::from(cardinality.clone());
    let decode = |mut idx: u64| -> Vec<usize> {
        let mut out = vec![0; t];
        for i in (0..t).rev() {
            out[i] = (idx % sizes[i]) as usize;
            idx /= sizes[i];
        }
        out
    };
    let found = fold_range(
        0..total,
        limits.exec,
        || Ok(Vec::new()),
        |acc: Result<Vec<(u64, BigUint)>>, idx| {
            let mut acc = acc?;
            let us = decode(idx);
            let sum: BigInt = keys
                .iter()
                .map(|(hs, w)| {
                    hs.iter()
                        .enumerate()
                        .fold(w.clone(), |p, (i, &h)| p * &table[i][h][us[i]])
                })
                .sum();
            let w = finish(sum, &card)?;
            if !w.is_zero() {
                acc.push((idx, w));
            }
            Ok(acc)
        },
        |a, b| {
            let mut a = a?;
            a.extend(b?);
            Ok(a)
        },
    )?;
    let counts: BTreeMap<SubspaceTuple, BigUint> = found
        .into_iter()
        .map(|(idx, w)| {
            let us = decode(idx);
            let parts = us.iter().enumerate().map(|(i, &u)| all[i][u].clone()).collect();
            (SubspaceTuple::new(parts), w)
        })
        .collect();
    Ok(SupportDistribution { counts })
}

fn check_ranklist(dist: &RankListDistribution, cardinality: &BigUint, profile: &Profile) -> Result<()> {
    let zero = vec![0; profile.t()];
    if dist.get(&zero) != BigUint::one() {
        return Err(Error::IncompleteDistribution("W at the zero vector must be 1".into()));
    }
    if &dist.total() != cardinality {
        return Err(Error::IncompleteDistribution(format!(
            "counts sum to {}, expected {cardinality}",
            dist.total()
        )));
    }
    let ns = profile.ns();
    if dist
        .counts
        .keys()
        .any(|h| h.len() != ns.len() || h.iter().zip(&ns).any(|(a, b)| a > b))
    {
        return Err(Error::IncompleteDistribution("rank vector outside the profile".into()));
    }
    Ok(())
}

/// Rank-list distribution of `C^⊥` from that of `C`.
pub fn macwilliams_ranklist(
    dist: &RankListDistribution,
    cardinality: &BigUint,
    profile: &Profile,
) -> Result<RankListDistribution> {
    check_ranklist(dist, cardinality, profile)?;
    let q = profile.q();
    let blocks = profile.blocks();
    // k[i][h][u]
    let table: Vec<Vec<Vec<BigInt>>> = blocks
        .iter()
        .map(|&(n, m)| {
            (0..=n)
                .map(|h| (0..=n).map(|u| ranklist_kernel(n, m, h, u, q)).collect())
                .collect()
        })
        .collect();
    let card = BigInt::from(cardinality.clone());
    let mut counts = BTreeMap::new();
    for total in 0..=profile.big_n() {
        for u in dim_vectors(&profile.ns(), total) {
            let sum: BigInt = dist
                .counts
                .iter()
                .map(|(h, w)| {
                    h.iter()
                        .enumerate()
                        .fold(BigInt::from(w.clone()), |p, (i, &hi)| p * &table[i][hi][u[i]])
                })
                .sum();
            let w = finish(sum, &card)?;
            if !w.is_zero() {
                counts.insert(u, w);
            }
        }
    }
    Ok(RankListDistribution { counts })
}

/// Checks the binomial-moment identity for every `u ≤ (n_1, ..., n_t)`.
pub fn binomial_moments_hold(
    code_dist: &RankListDistribution,
    dual_dist: &RankListDistribution,
    cardinality: &BigUint,
    profile: &Profile,
) -> bool {
    let q = profile.q();
    let blocks = profile.blocks();
    let ns = profile.ns();
    (0..=profile.big_n())
        .flat_map(|total| dim_vectors(&ns, total))
        .all(|u| {
            let lhs: BigUint = code_dist
                .counts
                .iter()
                .filter(|(h, _)| h.iter().zip(&u).all(|(a, b)| a <= b))
                .map(|(h, w)| {
                    blocks.iter().enumerate().fold(w.clone(), |p, (i, &(n, _))| {
                        p * gaussian_binomial((n - h[i]) as u64, (u[i] - h[i]) as u64, q)
                    })
                })
                .sum();
            let rhs: BigUint = dual_dist
                .counts
                .iter()
                .map(|(h, w)| {
                    blocks.iter().enumerate().fold(w.clone(), |p, (i, &(n, _))| {
                        p * gaussian_binomial((n - h[i]) as u64, u[i] as u64, q)
                    })
                })
                .sum();
            let exp: usize = blocks.iter().zip(&u).map(|(&(n, m), &ui)| m * (n - ui)).sum();
            lhs * q_power(q, exp as u64) == cardinality * rhs
        })
}

/// Computes the rank-list distributions of `C` and `C^⊥` by enumeration
/// and checks the binomial moments.
pub fn binomial_moment_check(code: &LinearCode, limits: &Limits) -> Result<bool> {
    let dual = code.dual();
    let a = rank_list_distribution(code, limits)?;
    let b = rank_list_distribution(&dual, limits)?;
    Ok(binomial_moments_hold(&a, &b, &code.cardinality(), code.profile()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ambient::MatrixTuple;
    use crate::distributions::support_distribution;
    use crate::field::Field;
    use crate::matq::Mat;
    use rand::{Rng, SeedableRng};

    fn random_small_code(rng: &mut impl Rng) -> LinearCode {
        let q = [2u64, 2, 3, 4][rng.gen_range(0..4)];
        let f = Field::with_order(q).unwrap();
        let texts: &[&str] = if q == 2 {
            &["2x2,2x2", "2x3,1x2", "1x2,1x1,1x1", "3x3", "2x2,1x2,1x1"]
        } else {
            &["2x2,1x1", "1x2,1x2", "1x1,1x1,1x1", "2x2"]
        };
        let p = Profile::parse(&f, texts[rng.gen_range(0..texts.len())]).unwrap();
        let max_k = if q == 2 { 5 } else { 3 };
        let k = rng.gen_range(0..=p.dim().min(max_k));
        LinearCode::random(&p, k, rng)
    }

    #[test]
    fn transforms_match_brute_force_on_random_codes() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2024);
        let lim = Limits::default();
        for _ in 0..100 {
            let code = random_small_code(&mut rng);
            let p = code.profile();
            let dual = code.dual();
            let sc = support_distribution(&code, &lim).unwrap();
            let sd = support_distribution(&dual, &lim).unwrap();
            let card = code.cardinality();
            let ms = macwilliams_support(&sc, &card, p, &lim).unwrap();
            assert_eq!(ms, sd, "support transform on {}", p.to_text());
            let mr = macwilliams_ranklist(&sc.rank_list(), &card, p).unwrap();
            assert_eq!(mr, sd.rank_list());
            assert_eq!(ms.rank_list(), mr);
            assert!(binomial_moments_hold(&sc.rank_list(), &sd.rank_list(), &card, p));
            // Applying the transform to the dual returns the original.
            let back = macwilliams_support(&sd, &dual.cardinality(), p, &lim).unwrap();
            assert_eq!(back, sc);
        }
    }

    #[test]
    fn full_space_dual_is_zero() {
        let f = Field::prime(3).unwrap();
        let p = Profile::parse(&f, "2x2,1x2").unwrap();
        let code = LinearCode::full(&p);
        let lim = Limits::default();
        let sc = support_distribution(&code, &lim).unwrap();
        let ms = macwilliams_support(&sc, &code.cardinality(), &p, &lim).unwrap();
        assert_eq!(ms.counts.len(), 1);
        assert_eq!(ms.get(&SubspaceTuple::zero(&p)), BigUint::one());
    }

    #[test]
    fn zero_code_dual_has_full_rank_counts() {
        let f = Field::prime(2).unwrap();
        let p = Profile::parse(&f, "2x3,2x2,1x2").unwrap();
        let mut rl = RankListDistribution::default();
        rl.counts.insert(vec![0, 0, 0], BigUint::one());
        let out = macwilliams_ranklist(&rl, &BigUint::one(), &p).unwrap();
        for (u, w) in &out.counts {
            let expected: BigUint = p
                .blocks()
                .iter()
                .zip(u)
                .map(|(&(n, m), &s)| crate::ambient::rank_count(n, m, s, 2))
                .product();
            assert_eq!(w, &expected);
        }
        assert_eq!(out.total(), p.cardinality());
    }

    #[test]
    fn sum_rank_has_no_macwilliams_identity() {
        let f = Field::prime(2).unwrap();
        let p = Profile::parse(&f, "2x2,2x2").unwrap();
        let e11 = Mat::from_vec(2, 2, vec![1, 0, 0, 0]);
        let c1 = LinearCode::new(&p, &[MatrixTuple::new(vec![Mat::identity(2), Mat::zeros(2, 2)])]).unwrap();
        let c2 = LinearCode::new(&p, &[MatrixTuple::new(vec![e11.clone(), e11])]).unwrap();
        let lim = Limits::default();
        let w = |c: &LinearCode| c.weight_distribution(&lim).unwrap();
        assert_eq!(w(&c1), w(&c2));
        assert_eq!(w(&c1.dual())[1], 12);
        assert_eq!(w(&c2.dual())[1], 10);
    }

    #[test]
    fn binomial_moments_on_codes() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let q = if rng.gen_bool(0.5) { 2 } else { 3 };
            let f = Field::prime(q).unwrap();
            let p = Profile::parse(&f, if q == 2 { "2x2,1x3,1x1" } else { "2x2,1x1" }).unwrap();
            let k = rng.gen_range(0..=4.min(p.dim()));
            let code = LinearCode::random(&p, k, &mut rng);
            assert!(binomial_moment_check(&code, &Limits::default()).unwrap());
        }
    }

    #[test]
    fn hamming_binomial_moments() {
        // All blocks 1x1: compare with Σ_i W_i C(t-i, ν) = |C|/q^ν Σ_i W⊥_i C(t-i, t-ν).
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(8);
        let f = Field::prime(3).unwrap();
        let t = 5;
        let p = Profile::uniform(&f, 1, 1, t).unwrap();
        let code = LinearCode::random(&p, 2, &mut rng);
        let lim = Limits::default();
        let w: Vec<u64> = code.weight_distribution(&lim).unwrap();
        let wd: Vec<u64> = code.dual().weight_distribution(&lim).unwrap();
        let c = |n: usize, k: usize| -> u64 {
            if k > n {
                0
            } else {
                (0..k).fold(1u64, |a, i| a * (n - i) as u64 / (i + 1) as u64)
            }
        };
        for nu in 0..=t {
            let lhs: u64 = (0..=t - nu).map(|i| w[i] * c(t - i, nu)).sum();
            let rhs: u64 = (0..=nu).map(|i| wd[i] * c(t - i, t - nu)).sum();
            assert_eq!(lhs * 3u64.pow(nu as u32), 9 * rhs);
        }
        assert!(binomial_moment_check(&code, &lim).unwrap());
    }

    #[test]
    fn incomplete_input_rejected() {
        let f = Field::prime(2).unwrap();
        let p = Profile::parse(&f, "2x2").unwrap();
        let mut d = SupportDistribution::default();
        d.counts.insert(SubspaceTuple::zero(&p), BigUint::one());
        assert!(matches!(
            macwilliams_support(&d, &BigUint::from(2u32), &p, &Limits::default()),
            Err(Error::IncompleteDistribution(_))
        ));
    }
}
