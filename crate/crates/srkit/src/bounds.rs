//! Upper bounds on the cardinality of sum-rank metric codes, and the
//! existence guarantee of the sphere-covering argument.
//!
//! Everything is exact. A bound is `None` where its hypothesis fails.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::ambient::{sphere_volume, Profile};
use crate::code::{singleton_decomposition, singleton_exponent};
use crate::error::{Error, Result};
use crate::matq::q_power;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BoundName {
    Singleton,
    InducedSingleton,
    InducedHamming,
    InducedPlotkin,
    InducedElias,
    SpherePacking,
    ProjectiveSpherePacking,
    TotalDistance,
}

impl BoundName {
    pub const ALL: [BoundName; 8] = [
        BoundName::Singleton,
        BoundName::InducedSingleton,
        BoundName::InducedHamming,
        BoundName::InducedPlotkin,
        BoundName::InducedElias,
        BoundName::SpherePacking,
        BoundName::ProjectiveSpherePacking,
        BoundName::TotalDistance,
    ];

    pub fn label(self) -> &'static str {
        match self {
            BoundName::Singleton => "Singleton",
            BoundName::InducedSingleton => "Induced Singleton",
            BoundName::InducedHamming => "Induced Hamming",
            BoundName::InducedPlotkin => "Induced Plotkin",
            BoundName::InducedElias => "Induced Elias",
            BoundName::SpherePacking => "Sphere-Packing",
            BoundName::ProjectiveSpherePacking => "Projective Sphere-Packing",
            BoundName::TotalDistance => "Total-Distance",
        }
    }

    /// Short machine name used in CSV and JSON output.
    pub fn key(self) -> &'static str {
        match self {
            BoundName::Singleton => "singleton",
            BoundName::InducedSingleton => "induced_singleton",
            BoundName::InducedHamming => "induced_hamming",
            BoundName::InducedPlotkin => "induced_plotkin",
            BoundName::InducedElias => "induced_elias",
            BoundName::SpherePacking => "sphere_packing",
            BoundName::ProjectiveSpherePacking => "projective_sphere_packing",
            BoundName::TotalDistance => "total_distance",
        }
    }
}

impl fmt::Display for BoundName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundEntry {
    pub name: BoundName,
    pub value: Option<BigUint>,
    /// Largest `k` with `q^k <= value`.
    pub linear: Option<u64>,
    pub note: Option<String>,
}

#[derive(Clone, Debug)]
pub struct BoundReport {
    pub profile: Profile,
    pub d: usize,
    pub entries: Vec<BoundEntry>,
    /// Bounds attaining the minimum applicable value.
    pub best: Vec<BoundName>,
}

impl BoundReport {
    pub fn get(&self, name: BoundName) -> Option<&BigUint> {
        self.entries
            .iter()
            .find(|e| e.name == name)
            .and_then(|e| e.value.as_ref())
    }

    pub fn entry(&self, name: BoundName) -> &BoundEntry {
        self.entries
            .iter()
            .find(|e| e.name == name)
            .expect("all bounds present")
    }
}

/// Largest `k` with `q^k <= value`.
pub fn linear_version(value: &BigUint, q: u64) -> u64 {
    let q = BigUint::from(q);
    let mut k = 0;
    let mut acc = q.clone();
    while &acc <= value {
        acc *= &q;
        k += 1;
    }
    k
}

fn check_d(profile: &Profile, d: usize) -> Result<()> {
    if d == 0 || d > profile.big_n() {
        return Err(Error::BadDistance {
            d,
            max: profile.big_n(),
        });
    }
    Ok(())
}

fn binom(n: usize, k: usize) -> BigUint {
    let mut out = BigUint::one();
    for i in 0..k {
        out = out * (n - i) / (i + 1);
    }
    out
}

/// Hamming ball volume in `F_Q^N`.
fn hamming_volume(n: usize, qq: &BigUint, r: usize) -> BigUint {
    (0..=r.min(n))
        .map(|i| binom(n, i) * num_traits::pow::pow(qq - 1u32, i))
        .sum()
}

/// Singleton bound with its decomposition `(value, j, delta)`.
pub fn singleton_bound(profile: &Profile, d: usize) -> Result<(BigUint, usize, usize)> {
    let (j, delta, exp) = singleton_exponent(profile, d)?;
    Ok((q_power(profile.q(), exp as u64), j, delta))
}

/// The four Hamming-metric bounds over `F_{q^m}`, `m = max m_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedBounds {
    pub singleton: BigUint,
    pub hamming: BigUint,
    pub plotkin: Option<BigUint>,
    /// Minimum over admissible `w`, with the minimizing `w`.
    pub elias: Option<(BigUint, usize)>,
}

pub fn induced_bounds(profile: &Profile, d: usize) -> Result<InducedBounds> {
    check_d(profile, d)?;
    let n = profile.big_n();
    let qq = q_power(profile.q(), profile.max_m() as u64);
    let qn = num_traits::pow::pow(qq.clone(), n);
    let singleton = num_traits::pow::pow(qq.clone(), n - d + 1);
    let hamming = &qn / hamming_volume(n, &qq, (d - 1) / 2);
    let qd = &qq * d;
    let q1n = (&qq - 1u32) * n;
    let plotkin = (qd > q1n).then(|| (&qq * d) / (&qq * d - &q1n));

    let qi = BigInt::from(qq.clone());
    let q1 = &qi - 1;
    let (ni, di) = (BigInt::from(n), BigInt::from(d));
    let numerator = &ni * &di * &q1 * BigInt::from(qn.clone());
    let mut elias: Option<(BigUint, usize)> = None;
    let mut w = 0usize;
    // Running ball volume: term_w = C(n, w) (Q-1)^w.
    let q1u = &qq - 1u32;
    let mut term = BigUint::from(1u32);
    let mut volume = BigUint::from(1u32);
    loop {
        let wi = BigInt::from(w);
        if &wi * &qi > &ni * &q1 {
            break;
        }
        if w > 0 {
            if w > n {
                break;
            }
            term = term * (n - w + 1) * &q1u / w;
            volume += &term;
        }
        let den: BigInt = &qi * &wi * &wi - BigInt::from(2) * &ni * &wi * &q1 + &q1 * &ni * &di;
        if den.is_positive() {
            let vw = BigInt::from(volume.clone());
            let val: BigInt = &numerator / (den * vw);
            let val = val.to_biguint().expect("positive");
            if elias.as_ref().is_none_or(|(b, _)| &val < b) {
                elias = Some((val, w));
            }
        }
        w += 1;
    }
    Ok(InducedBounds {
        singleton,
        hamming,
        plotkin,
        elias,
    })
}

/// `⌊|Π| / V_r(Π)⌋` with `r = ⌊(d-1)/2⌋`.
pub fn sphere_packing_bound(profile: &Profile, d: usize) -> Result<BigUint> {
    check_d(profile, d)?;
    Ok(profile.cardinality() / sphere_volume(profile, (d - 1) / 2))
}

/// Projective sphere-packing bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectiveSpherePacking {
    pub value: BigUint,
    /// Number of leading blocks removed (0-based index of the cut block).
    pub ell: usize,
    /// Rows removed from the cut block.
    pub delta: usize,
    /// The reduced profile `Π'`.
    pub reduced: Vec<(usize, usize)>,
}

/// Writes `d - 3 = Σ_{i<ell} n_i + delta` with `0 <= delta < n_ell`, removes
/// those rows and evaluates `⌊|Π'| / V_1(Π')⌋`.
pub fn projective_sphere_packing_bound(profile: &Profile, d: usize) -> Result<ProjectiveSpherePacking> {
    check_d(profile, d)?;
    if d < 3 {
        return Err(Error::DecompositionUnavailable(d));
    }
    let (ell, delta) = singleton_decomposition(profile, d - 2)?;
    let mut reduced = vec![(profile.n(ell) - delta, profile.m(ell))];
    reduced.extend_from_slice(&profile.blocks()[ell + 1..]);
    let sub = profile.with_blocks(&reduced)?;
    Ok(ProjectiveSpherePacking {
        value: sub.cardinality() / sphere_volume(&sub, 1),
        ell,
        delta,
        reduced,
    })
}

/// `⌊(d-N+t)/(d-N+Q)⌋` when `d > N - Q`.
pub fn total_distance_bound(profile: &Profile, d: usize) -> Result<Option<BigUint>> {
    check_d(profile, d)?;
    let n = BigInt::from(profile.big_n());
    let di = BigInt::from(d);
    let qs = profile.q_sum();
    let den = BigRational::from_integer(&di - &n) + qs;
    if !den.is_positive() {
        return Ok(None);
    }
    let num = BigRational::from_integer(&di - &n + BigInt::from(profile.t()));
    let v = (num / den).floor().to_integer();
    Ok(Some(v.to_biguint().unwrap_or_default()))
}

/// `⌊(N-d) q^m (|C|-1) / (|C| - q^m)⌋`, an upper bound on the block count.
pub fn block_count_bound(big_n: usize, d: usize, q: u64, m: usize, cardinality: &BigUint) -> Result<BigUint> {
    if d > big_n {
        return Err(Error::BadDistance { d, max: big_n });
    }
    let qm = q_power(q, m as u64);
    if cardinality <= &qm {
        return Err(Error::HypothesisFailed(format!("needs |C| > q^m = {qm}")));
    }
    Ok(BigUint::from(big_n - d) * &qm * (cardinality - 1u32) / (cardinality - &qm))
}

/// Smallest `k` with `q^k >= ⌈|Π| / V_{d-1}(Π)⌉`: some linear code of
/// dimension `k` and distance at least `d` exists.
pub fn sphere_covering_dimension(profile: &Profile, d: usize) -> Result<u64> {
    check_d(profile, d)?;
    let target = Integer::div_ceil(&profile.cardinality(), &sphere_volume(profile, d - 1));
    let q = BigUint::from(profile.q());
    let mut k = 0;
    let mut acc = BigUint::one();
    while acc < target {
        acc *= &q;
        k += 1;
    }
    Ok(k)
}

/// Necessary block-count conditions for MSRD codes with all blocks `n×m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MsrdBlockCount {
    /// The sharper bound.
    pub first: BigUint,
    /// `⌊(d-3)/n⌋ + 1 + ⌊q^m(q-1)/(q^n-1)⌋`.
    pub relaxed: BigUint,
    /// For `n = m` and `d <= n + 2`: `q + 1`, or `q` when `n >= 2`.
    pub square: Option<BigUint>,
}

pub fn msrd_block_count_bound(n: usize, m: usize, q: u64, d: usize) -> Result<MsrdBlockCount> {
    if n == 0 || n > m {
        return Err(Error::BadBlock { n, m });
    }
    if d < 3 {
        return Err(Error::BadDistance { d, max: usize::MAX });
    }
    let ell = (d - 3) / n;
    let qn = q_power(q, n as u64);
    let qm = q_power(q, m as u64);
    let q1 = BigUint::from(q - 1);
    let low = q_power(q, (n * ell + n + 3 - d) as u64);
    let first = BigUint::from(ell) + (&qn - low + &q1 * (&qm + 1u32)) / (&qn - 1u32);
    let relaxed = BigUint::from(ell) + 1u32 + (&qm * &q1) / (&qn - 1u32);
    let square = (n == m && d <= n + 2).then(|| if n >= 2 { BigUint::from(q) } else { BigUint::from(q + 1) });
    Ok(MsrdBlockCount { first, relaxed, square })
}

/// Every bound at distance `d`, with linear versions and the best set.
pub fn bound_report(profile: &Profile, d: usize) -> Result<BoundReport> {
    check_d(profile, d)?;
    let q = profile.q();
    let (singleton, j, delta) = singleton_bound(profile, d)?;
    let induced = induced_bounds(profile, d)?;
    let psp = projective_sphere_packing_bound(profile, d).ok();
    let values: Vec<(BoundName, Option<BigUint>, Option<String>)> = vec![
        (
            BoundName::Singleton,
            Some(singleton),
            Some(format!("j={}, delta={delta}", j + 1)),
        ),
        (BoundName::InducedSingleton, Some(induced.singleton), None),
        (BoundName::InducedHamming, Some(induced.hamming), None),
        (BoundName::InducedPlotkin, induced.plotkin, None),
        (
            BoundName::InducedElias,
            induced.elias.as_ref().map(|e| e.0.clone()),
            induced
                .elias
                .as_ref()
                .map(|e| format!("minimum over w, attained at w={}", e.1)),
        ),
        (BoundName::SpherePacking, Some(sphere_packing_bound(profile, d)?), None),
        (
            BoundName::ProjectiveSpherePacking,
            psp.as_ref().map(|p| p.value.clone()),
            psp.as_ref().map(|p| {
                if p.delta == 0 {
                    format!("ell={}, delta=0 (boundary case)", p.ell)
                } else {
                    format!("ell={}, delta={}", p.ell, p.delta)
                }
            }),
        ),
        (BoundName::TotalDistance, total_distance_bound(profile, d)?, None),
    ];
    let min = values.iter().filter_map(|v| v.1.as_ref()).min().cloned();
    let best = values
        .iter()
        .filter(|v| v.1.is_some() && v.1 == min)
        .map(|v| v.0)
        .collect();
    let entries = values
        .into_iter()
        .map(|(name, value, note)| BoundEntry {
            name,
            linear: value.as_ref().map(|v| linear_version(v, q)),
            value,
            note,
        })
        .collect();
    Ok(BoundReport {
        profile: profile.clone(),
        d,
        entries,
        best,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    fn table1() -> Profile {
        Profile::parse(&Field::prime(2).unwrap(), "2x2,1x2x7,1x1x5").unwrap()
    }

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn singleton_cases() {
        let p = table1();
        assert_eq!(singleton_bound(&p, 9).unwrap(), (big(128), 7, 0));
        assert_eq!(singleton_bound(&p, 8).unwrap().0, big(512));
        assert_eq!(singleton_bound(&p, 1).unwrap().0, p.cardinality());
        let eq = Profile::uniform(&Field::prime(3).unwrap(), 2, 3, 4).unwrap();
        for d in 1..=8 {
            assert_eq!(
                singleton_bound(&eq, d).unwrap().0,
                induced_bounds(&eq, d).unwrap().singleton
            );
        }
    }

    #[test]
    fn induced_cases() {
        let p = table1();
        let b = induced_bounds(&p, 11).unwrap();
        assert_eq!(b.singleton, big(256));
        assert_eq!(b.plotkin, Some(big(22)));
        assert_eq!(b.elias.unwrap().0, big(43));
        let b = induced_bounds(&p, 1).unwrap();
        assert_eq!(b.singleton, q_power(2, 2 * 14));
        let p17 = Profile::uniform(&Field::prime(2).unwrap(), 2, 2, 17).unwrap();
        let b = induced_bounds(&p17, 32).unwrap();
        assert_eq!((b.plotkin, b.elias.map(|e| e.0)), (Some(big(4)), Some(big(10))));
    }

    #[test]
    fn packing_and_total_distance() {
        let p = table1();
        assert_eq!(sphere_packing_bound(&p, 11).unwrap(), big(50));
        assert_eq!(sphere_packing_bound(&p, 1).unwrap(), p.cardinality());
        assert_eq!(projective_sphere_packing_bound(&p, 8).unwrap().value, big(455));
        assert_eq!(projective_sphere_packing_bound(&p, 11).unwrap().value, big(14));
        assert_eq!(
            projective_sphere_packing_bound(&p, 2),
            Err(Error::DecompositionUnavailable(2))
        );
        assert_eq!(total_distance_bound(&p, 11).unwrap(), Some(big(6)));
        assert_eq!(total_distance_bound(&p, 8).unwrap(), None);
        let p4 = Profile::uniform(&Field::prime(2).unwrap(), 2, 2, 4).unwrap();
        assert_eq!(sphere_packing_bound(&p4, 5).unwrap(), big(119));
        let p6 = Profile::uniform(&Field::prime(2).unwrap(), 2, 2, 6).unwrap();
        assert_eq!(projective_sphere_packing_bound(&p6, 8).unwrap().value, big(528));
        assert!(matches!(sphere_packing_bound(&p, 15), Err(Error::BadDistance { .. })));
    }

    #[test]
    fn block_counts() {
        assert_eq!(block_count_bound(4, 2, 2, 2, &big(16)).unwrap(), big(10));
        assert_eq!(block_count_bound(4, 4, 2, 2, &big(16)).unwrap(), big(0));
        assert!(block_count_bound(4, 2, 2, 2, &big(4)).is_err());
        let mut prev = None;
        for c in [5u64, 8, 16, 64, 1024, 1 << 20] {
            let v = block_count_bound(10, 3, 2, 2, &big(c)).unwrap();
            if let Some(p) = prev {
                assert!(v <= p);
            }
            prev = Some(v);
        }
        assert_eq!(msrd_block_count_bound(2, 2, 2, 4).unwrap().first, big(2));
        let r = msrd_block_count_bound(2, 2, 3, 3).unwrap();
        assert_eq!((r.first, r.relaxed, r.square), (big(2), big(3), Some(big(3))));
        for q in [2u64, 3, 4, 5] {
            for d in 3..8 {
                let r = msrd_block_count_bound(1, 1, q, d).unwrap();
                assert_eq!(r.first, big(q + d as u64 - 2));
            }
        }
    }

    #[test]
    fn covering() {
        let f = Field::prime(2).unwrap();
        let p = Profile::parse(&f, "2x2").unwrap();
        assert_eq!(sphere_covering_dimension(&p, 1).unwrap(), 4);
        assert_eq!(sphere_covering_dimension(&p, 2).unwrap(), 1);
        assert!(sphere_covering_dimension(&p, 3).is_err());
    }

    #[test]
    fn linear_versions() {
        assert_eq!(linear_version(&big(7), 2), 2);
        assert_eq!(linear_version(&big(8), 2), 3);
        assert_eq!(linear_version(&big(1), 3), 0);
    }

    #[test]
    fn report_best() {
        let p = table1();
        let r = bound_report(&p, 9).unwrap();
        assert_eq!(r.best, vec![BoundName::Singleton]);
        let r = bound_report(&p, 11).unwrap();
        assert_eq!(r.best, vec![BoundName::TotalDistance]);
    }
}
