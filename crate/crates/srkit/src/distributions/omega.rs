//! Closed-form support distribution of MSRD codes with equal column sizes
//! and the non-existence tests built on it.
//!
//! All counts here depend only on a dimension vector `u`. They are computed
//! from the generating polynomial `Σ_ℓ f_ℓ(u) x^ℓ`, which factors over the
//! blocks.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::ambient::{dim_vectors, Profile};
use crate::error::{Error, Result};
use crate::exec::{find_first, Exec};
use crate::matq::{gaussian_binomial, q_power};

/// Coefficients of `Π_i Σ_{v ≤ u_i} (-1)^{u_i-v} q^{C(u_i-v,2)} [u_i, v]_q x^v`;
/// entry `ℓ` is `f_ℓ(u)`.
pub fn f_polynomial(u: &[usize], q: u64) -> Vec<BigInt> {
    let mut acc = vec![BigInt::from(1)];
    for &ui in u {
        let factor: Vec<BigInt> = (0..=ui)
            .map(|v| {
                let k = ui - v;
                let mag = BigInt::from(q_power(q, (k * k.saturating_sub(1) / 2) as u64))
                    * BigInt::from(gaussian_binomial(ui as u64, v as u64, q));
                if k % 2 == 1 {
                    -mag
                } else {
                    mag
                }
            })
            .collect();
        let mut next = vec![BigInt::zero(); acc.len() + ui];
        for (a, x) in acc.iter().enumerate() {
            for (b, y) in factor.iter().enumerate() {
                next[a + b] += x * y;
            }
        }
        acc = next;
    }
    acc
}

/// `f_ℓ(u)`; zero for `ℓ > |u|`.
pub fn f_ell(u: &[usize], ell: usize, q: u64) -> BigInt {
    f_polynomial(u, q).get(ell).cloned().unwrap_or_default()
}

/// `Σ_{ℓ=d}^{|u|} (q^{m(ℓ-d+1)} - 1) f_ℓ(u)`.
fn omega_raw(u: &[usize], m: usize, q: u64, d: usize) -> BigInt {
    f_polynomial(u, q)
        .iter()
        .enumerate()
        .skip(d)
        .map(|(ell, f)| (BigInt::from(q_power(q, (m * (ell - d + 1)) as u64)) - 1) * f)
        .sum()
}

fn check_shape(shape: &[usize], m: usize, q: u64, d: usize) -> Result<usize> {
    if shape.is_empty() || shape.iter().any(|&n| n == 0 || n > m) {
        return Err(Error::BadParameters(format!(
            "shape {shape:?} needs 1 <= n_i <= m = {m}"
        )));
    }
    if q < 2 {
        return Err(Error::BadParameters(format!("q = {q}")));
    }
    let big_n: usize = shape.iter().sum();
    if d == 0 || d > big_n {
        return Err(Error::BadDistance { d, max: big_n });
    }
    Ok(big_n)
}

fn check_u(shape: &[usize], u: &[usize]) -> Result<()> {
    if u.len() != shape.len() || u.iter().zip(shape).any(|(a, b)| a > b) {
        return Err(Error::BadParameters(format!("{u:?} is not below {shape:?}")));
    }
    Ok(())
}

/// `ω(u)` for blocks `n_i × m` and distance `d`.
pub fn omega(shape: &[usize], m: usize, q: u64, d: usize, u: &[usize]) -> Result<BigInt> {
    check_shape(shape, m, q, d)?;
    check_u(shape, u)?;
    Ok(omega_raw(u, m, q, d))
}

/// `ω̂(u)`, the same sum started at the dual distance `N - d + 2`.
pub fn omega_hat(shape: &[usize], m: usize, q: u64, d: usize, u: &[usize]) -> Result<BigInt> {
    let big_n = check_shape(shape, m, q, d)?;
    check_u(shape, u)?;
    Ok(omega_raw(u, m, q, big_n - d + 2))
}

/// `W_U` of an MSRD code in `profile` with distance `d`, for `dim U = u`.
pub fn msrd_support_distribution(profile: &Profile, d: usize, u: &[usize]) -> Result<BigInt> {
    let m = profile.equal_m().ok_or(Error::UnequalColumnSizes)?;
    let shape = profile.ns();
    check_shape(&shape, m, profile.q(), d)?;
    check_u(&shape, u)?;
    if u.iter().all(|&x| x == 0) {
        return Ok(BigInt::from(1));
    }
    Ok(omega_raw(u, m, profile.q(), d))
}

/// The front-loaded vector `(n_1, ..., n_s, δ, 0, ...)` of weight `total`,
/// or `None` when `total` exceeds `Σ n_i`.
pub fn tilde_u(shape: &[usize], total: usize) -> Option<Vec<usize>> {
    let mut left = total;
    let out: Vec<usize> = shape
        .iter()
        .map(|&n| {
            let v = n.min(left);
            left -= v;
            v
        })
        .collect();
    (left == 0).then_some(out)
}

fn sorted_desc(shape: &[usize]) -> Vec<usize> {
    let mut s = shape.to_vec();
    s.sort_unstable_by(|a, b| b.cmp(a));
    s
}

/// `(ũ, ω(ũ))` with `|ũ| = d + 1` on the nonincreasing rearrangement of
/// `shape`; `None` when `d + 1 > N`.
pub fn omega_tilde(shape: &[usize], m: usize, q: u64, d: usize) -> Result<Option<(Vec<usize>, BigInt)>> {
    check_shape(shape, m, q, d)?;
    let s = sorted_desc(shape);
    Ok(tilde_u(&s, d + 1).map(|u| {
        let w = omega_raw(&u, m, q, d);
        (u, w)
    }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScanMode {
    /// Every `u` with `|u| > d`.
    Full,
    /// Only `ũ`.
    Fast,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OmegaVerdict {
    /// Some `ω(u) < 0`; no MSRD code exists.
    Excluded {
        witness: Vec<usize>,
        value: BigInt,
    },
    Inconclusive,
}

impl OmegaVerdict {
    pub fn is_excluded(&self) -> bool {
        matches!(self, OmegaVerdict::Excluded { .. })
    }
}

/// Scans `u` by weight from `d + 1` upwards; within a weight, by
/// lexicographic order of the reversed vector, so `ũ` comes first. Returns
/// the first negative value. Coordinates refer to the nonincreasing
/// rearrangement of `shape`.
pub fn omega_scan(shape: &[usize], m: usize, q: u64, d: usize, mode: ScanMode, exec: Exec) -> Result<OmegaVerdict> {
    let big_n = check_shape(shape, m, q, d)?;
    let s = sorted_desc(shape);
    if mode == ScanMode::Fast {
        return Ok(match omega_tilde(&s, m, q, d)? {
            Some((u, w)) if w.is_negative() => OmegaVerdict::Excluded { witness: u, value: w },
            _ => OmegaVerdict::Inconclusive,
        });
    }
    let rev: Vec<usize> = s.iter().rev().copied().collect();
    for total in d + 1..=big_n {
        let candidates: Vec<Vec<usize>> = dim_vectors(&rev, total)
            .into_iter()
            .map(|mut v| {
                v.reverse();
                v
            })
            .collect();
        let hit = find_first(&candidates, exec, |u| {
            let w = omega_raw(u, m, q, d);
            w.is_negative().then_some(w)
        });
        if let Some((i, w)) = hit {
            return Ok(OmegaVerdict::Excluded {
                witness: candidates[i].clone(),
                value: w,
            });
        }
    }
    Ok(OmegaVerdict::Inconclusive)
}

/// The dual test: `ω̂` scanned like [`omega_scan`] (so `ṽ` has weight `N - d + 3`).
pub fn omega_hat_scan(shape: &[usize], m: usize, q: u64, d: usize, mode: ScanMode, exec: Exec) -> Result<OmegaVerdict> {
    let big_n = check_shape(shape, m, q, d)?;
    if d < 2 {
        // Dual distance beyond N: the sum is empty.
        return Ok(OmegaVerdict::Inconclusive);
    }
    omega_scan(shape, m, q, big_n - d + 2, mode, exec)
}

/// Both criteria, both modes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExclusionReport {
    /// Nonincreasing shape used for all witnesses.
    pub shape: Vec<usize>,
    pub m: usize,
    pub q: u64,
    pub d: usize,
    pub omega_full: OmegaVerdict,
    pub omega_fast: OmegaVerdict,
    /// `(ũ, ω(ũ))`, when `d < N`.
    pub omega_tilde: Option<(Vec<usize>, BigInt)>,
    pub omega_hat_full: OmegaVerdict,
    pub omega_hat_fast: OmegaVerdict,
}

impl ExclusionReport {
    pub fn excluded(&self) -> bool {
        self.omega_full.is_excluded() || self.omega_hat_full.is_excluded()
    }
}

pub fn exclusion_report(shape: &[usize], m: usize, q: u64, d: usize, exec: Exec) -> Result<ExclusionReport> {
    check_shape(shape, m, q, d)?;
    Ok(ExclusionReport {
        shape: sorted_desc(shape),
        m,
        q,
        d,
        omega_full: omega_scan(shape, m, q, d, ScanMode::Full, exec)?,
        omega_fast: omega_scan(shape, m, q, d, ScanMode::Fast, exec)?,
        omega_tilde: omega_tilde(shape, m, q, d)?,
        omega_hat_full: omega_hat_scan(shape, m, q, d, ScanMode::Full, exec)?,
        omega_hat_fast: omega_hat_scan(shape, m, q, d, ScanMode::Fast, exec)?,
    })
}

/// Nonincreasing shapes with `t` parts in `1..=max_n`.
fn shapes(t: usize, max_n: usize) -> Vec<Vec<usize>> {
    fn rec(t: usize, top: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == t {
            out.push(cur.clone());
            return;
        }
        for n in (1..=top).rev() {
            cur.push(n);
            rec(t, n, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(t, max_n, &mut Vec::new(), &mut out);
    out
}

/// A parameter set where the fast test passes but the full scan excludes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjectureCase {
    pub q: u64,
    pub m: usize,
    pub shape: Vec<usize>,
    pub d: usize,
    pub witness: Vec<usize>,
    pub value: BigInt,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConjectureReport {
    pub cases: usize,
    pub excluded_full: usize,
    pub excluded_fast: usize,
    pub counterexamples: Vec<ConjectureCase>,
}

/// Compares the single test at `ũ` with the full scan for every
/// `q ∈ qs`, `m ≤ max_m`, `t ≤ max_t`, `n_i ≤ min(max_n, m)`, `1 ≤ d < N`.
/// An empirical check only.
pub fn conjecture_scan(qs: &[u64], max_m: usize, max_t: usize, max_n: usize, exec: Exec) -> Result<ConjectureReport> {
    let mut report = ConjectureReport::default();
    for &q in qs {
        for m in 1..=max_m {
            for t in 1..=max_t {
                for shape in shapes(t, max_n.min(m)) {
                    let big_n: usize = shape.iter().sum();
                    for d in 1..big_n {
                        report.cases += 1;
                        let full = omega_scan(&shape, m, q, d, ScanMode::Full, exec)?;
                        let fast = omega_scan(&shape, m, q, d, ScanMode::Fast, exec)?;
                        report.excluded_full += full.is_excluded() as usize;
                        report.excluded_fast += fast.is_excluded() as usize;
                        if let (OmegaVerdict::Excluded { witness, value }, false) = (full, fast.is_excluded()) {
                            report.counterexamples.push(ConjectureCase {
                                q,
                                m,
                                shape: shape.clone(),
                                d,
                                witness,
                                value,
                            });
                        }
                    }
                }
            }
        }
    }
    Ok(report)
}

/// A parameter set on which exactly one of `ω`, `ω̂` excludes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComparisonCase {
    pub q: u64,
    pub m: usize,
    pub shape: Vec<usize>,
    pub d: usize,
    pub omega: OmegaVerdict,
    pub omega_hat: OmegaVerdict,
}

/// Full scans of both criteria over `q ∈ qs`, `m ≤ max_m`, `2 ≤ t ≤ max_t`,
/// `n_i ≤ m`, `2 ≤ d < N`; keeps the disagreeing cases.
pub fn comparison_scan(qs: &[u64], max_m: usize, max_t: usize, exec: Exec) -> Result<Vec<ComparisonCase>> {
    let mut out = Vec::new();
    for &q in qs {
        for m in 1..=max_m {
            for t in 2..=max_t {
                for shape in shapes(t, m) {
                    let big_n: usize = shape.iter().sum();
                    for d in 2..big_n {
                        let a = omega_scan(&shape, m, q, d, ScanMode::Full, exec)?;
                        let b = omega_hat_scan(&shape, m, q, d, ScanMode::Full, exec)?;
                        if a.is_excluded() != b.is_excluded() {
                            out.push(ComparisonCase {
                                q,
                                m,
                                shape: shape.clone(),
                                d,
                                omega: a,
                                omega_hat: b,
                            });
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// `q^{2m} - 1 - (q^m - 1)/(q - 1) (Σ q^{u_i} - t)`.
#[cfg(test)]
fn omega_tilde_closed(u: &[usize], m: usize, q: u64) -> BigInt {
    use num_bigint::BigUint;
    let s: BigUint = u.iter().map(|&x| q_power(q, x as u64)).sum::<BigUint>() - BigUint::from(u.len());
    let qm = BigInt::from(q_power(q, m as u64));
    &qm * &qm - 1 - (&qm - 1) * BigInt::from(s) / BigInt::from(q - 1)
}
