//! Rate bounds as the number of blocks grows.
//!
//! This is the only floating-point part of the crate. Exact inputs (rank
//! counts, the average rank weight) are computed with big integers first and
//! converted at the last step.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::ambient::rank_count;
use crate::error::{Error, Result};
use crate::matq::q_power;

/// `h_Q(x)` on `[0, 1 - 1/Q]`.
pub fn hilbert_entropy(x: f64, qq: f64) -> Result<f64> {
    if qq < 2.0 {
        return Err(Error::DomainError(format!("Q = {qq}")));
    }
    let top = 1.0 - 1.0 / qq;
    if !(0.0..=top + 1e-15).contains(&x) {
        return Err(Error::DomainError(format!("x = {x} outside [0, {top}]")));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    let ln_q = qq.ln();
    Ok((x * (qq - 1.0).ln() - x * x.ln() - (1.0 - x) * (1.0 - x).ln()) / ln_q)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum InducedKind {
    Singleton,
    Hamming,
    Plotkin,
    Elias,
}

/// Hamming-metric asymptotic bounds over `F_{q^m}`.
pub fn asymptotic_induced(eta: f64, q: u64, m: usize, which: InducedKind) -> Result<f64> {
    check_eta(eta)?;
    let qq = (q as f64).powi(m as i32);
    let r = 1.0 - 1.0 / qq;
    match which {
        InducedKind::Singleton => Ok(1.0 - eta),
        InducedKind::Plotkin => Ok(if eta <= r { 1.0 - eta / r } else { 0.0 }),
        InducedKind::Hamming => {
            if eta == 0.0 {
                Ok(1.0)
            } else if eta < r {
                Ok(1.0 - hilbert_entropy(eta / 2.0, qq)?)
            } else {
                Err(Error::DomainError(format!("Hamming bound needs eta < {r}")))
            }
        }
        InducedKind::Elias => {
            if eta == 0.0 {
                Ok(1.0)
            } else if eta < r {
                Ok(1.0 - hilbert_entropy(r - (r * (r - eta)).sqrt(), qq)?)
            } else {
                Err(Error::DomainError(format!("Elias bound needs eta < {r}")))
            }
        }
    }
}

fn check_eta(eta: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&eta) {
        return Err(Error::DomainError(format!("eta = {eta} outside [0, 1]")));
    }
    Ok(())
}

/// Block sequences: a finite head of `(n_i, m_i)` followed by a tail with
/// constant `m̂` and row counts cycling through `tail_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scenario {
    q: u64,
    head: Vec<(usize, usize)>,
    m_hat: usize,
    tail_n: Vec<usize>,
}

impl Scenario {
    pub fn new(q: u64, head: Vec<(usize, usize)>, m_hat: usize, tail_n: Vec<usize>) -> Result<Scenario> {
        if q < 2 {
            return Err(Error::BadParameters(format!("q = {q}")));
        }
        if m_hat == 0 || tail_n.is_empty() || tail_n.iter().any(|&n| n == 0 || n > m_hat) {
            return Err(Error::BadParameters("tail needs 1 <= n <= m_hat".into()));
        }
        let mut prev = usize::MAX;
        for &(n, m) in &head {
            if n == 0 || n > m || m > prev || m < m_hat {
                return Err(Error::BadParameters(
                    "head blocks need 1 <= n <= m with m non-increasing and >= m_hat".into(),
                ));
            }
            prev = m;
        }
        Ok(Scenario { q, head, m_hat, tail_n })
    }

    /// Every block `n × m`.
    pub fn uniform(q: u64, n: usize, m: usize) -> Result<Scenario> {
        Scenario::new(q, Vec::new(), m, vec![n])
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn m_hat(&self) -> usize {
        self.m_hat
    }

    /// Largest `m_i`.
    pub fn m_max(&self) -> usize {
        self.head.first().map_or(self.m_hat, |b| b.1)
    }

    pub fn n_upper(&self) -> usize {
        *self.tail_n.iter().max().expect("nonempty")
    }

    pub fn n_lower(&self) -> usize {
        *self.tail_n.iter().min().expect("nonempty")
    }

    /// `n̂` when the tail row count is constant.
    pub fn n_hat(&self) -> Option<usize> {
        (self.n_upper() == self.n_lower()).then(|| self.n_upper())
    }

    /// `(n, m)` when every block has the same shape.
    pub fn uniform_shape(&self) -> Option<(usize, usize)> {
        let n = self.n_hat()?;
        self.head
            .iter()
            .all(|&b| b == (n, self.m_hat))
            .then_some((n, self.m_hat))
    }
}

pub fn asymptotic_singleton(eta: f64) -> Result<f64> {
    check_eta(eta)?;
    Ok(1.0 - eta)
}

pub fn asymptotic_projective_sphere_packing(eta: f64) -> Result<f64> {
    asymptotic_singleton(eta)
}

/// `1 - η (1 - 1/(n* q^m̂))^{-1}` below the threshold, zero above it.
pub fn asymptotic_total_distance(eta: f64, scenario: &Scenario) -> Result<f64> {
    check_eta(eta)?;
    let c = 1.0 / (scenario.n_upper() as f64 * (scenario.q as f64).powi(scenario.m_hat as i32));
    Ok(if eta > 1.0 - c { 0.0 } else { 1.0 - eta / (1.0 - c) })
}

/// How the minimum over `z ∈ (0, 1]` is found.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub enum EntropyMethod {
    /// Ternary search on `ln z ∈ [-40, 0]` (the objective is convex there).
    #[default]
    Ternary,
    /// Minimum over `z = k·step`, `k = 1..=1/step`.
    Grid(f64),
}

fn big_ln(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits < 1000 {
        return x.to_f64().expect("finite").ln();
    }
    let shift = bits - 64;
    (x >> shift).to_f64().expect("finite").ln() + shift as f64 * std::f64::consts::LN_2
}

fn ratio_f64(num: &BigUint, den: &BigUint) -> f64 {
    let shift = den.bits().saturating_sub(60);
    let n = (num >> shift).to_f64().unwrap_or(f64::INFINITY);
    let d = (den >> shift).to_f64().unwrap_or(f64::INFINITY);
    n / d
}

/// The average rank of an `n × m` matrix, exactly.
pub fn average_rank_exact(n: usize, m: usize, q: u64) -> BigRational {
    let total: BigUint = (0..=n).map(|i| rank_count(n, m, i, q) * i).sum();
    BigRational::new(total.into(), q_power(q, (n * m) as u64).into())
}

/// `ε`, the average rank weight.
pub fn average_rank(n: usize, m: usize, q: u64) -> f64 {
    let total: BigUint = (0..=n).map(|i| rank_count(n, m, i, q) * i).sum();
    ratio_f64(&total, &q_power(q, (n * m) as u64))
}

/// The sum-rank entropy `H(ρ)` for blocks `n × m` over `F_q`.
pub struct Entropy {
    ln_counts: Vec<f64>,
    scale: f64,
    epsilon: f64,
}

impl Entropy {
    pub fn new(n: usize, m: usize, q: u64) -> Result<Entropy> {
        if n == 0 || n > m || q < 2 {
            return Err(Error::BadParameters(format!("block {n}x{m} over q = {q}")));
        }
        Ok(Entropy {
            ln_counts: (0..=n).map(|i| big_ln(&rank_count(n, m, i, q))).collect(),
            scale: (n * m) as f64 * (q as f64).ln(),
            epsilon: average_rank(n, m, q),
        })
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    /// `log_{|π|}(f(z)/z^ρ)` as a function of `ln z`.
    pub fn objective(&self, rho: f64, lz: f64) -> f64 {
        let terms: Vec<f64> = self
            .ln_counts
            .iter()
            .enumerate()
            .map(|(i, &c)| c + i as f64 * lz)
            .collect();
        let top = terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let lse = top + terms.iter().map(|t| (t - top).exp()).sum::<f64>().ln();
        (lse - rho * lz) / self.scale
    }

    pub fn value(&self, rho: f64, method: EntropyMethod) -> Result<f64> {
        if rho < 0.0 || rho > self.epsilon + 1e-12 {
            return Err(Error::DomainError(format!("rho = {rho} outside [0, {}]", self.epsilon)));
        }
        match method {
            EntropyMethod::Ternary => {
                let (mut lo, mut hi) = (-40.0f64, 0.0f64);
                for _ in 0..200 {
                    if hi - lo < 1e-12 {
                        break;
                    }
                    let a = lo + (hi - lo) / 3.0;
                    let b = hi - (hi - lo) / 3.0;
                    if self.objective(rho, a) < self.objective(rho, b) {
                        hi = b;
                    } else {
                        lo = a;
                    }
                }
                Ok(self.objective(rho, (lo + hi) / 2.0))
            }
            EntropyMethod::Grid(step) => {
                if !(step > 0.0 && step <= 1.0) {
                    return Err(Error::DomainError(format!("grid step {step}")));
                }
                let k_max = (1.0 / step).round() as u64;
                Ok((1..=k_max)
                    .map(|k| self.objective(rho, (k as f64 * step).ln()))
                    .fold(f64::INFINITY, f64::min))
            }
        }
    }

    /// `1 - H(ηn/2)`, the sphere-packing upper bound.
    pub fn sphere_packing(&self, eta: f64, n: usize, method: EntropyMethod) -> Result<f64> {
        check_eta(eta)?;
        Ok(1.0 - self.value(eta * n as f64 / 2.0, method)?)
    }

    /// `1 - H(ηn)`, the sphere-covering lower bound.
    pub fn sphere_covering(&self, eta: f64, n: usize, method: EntropyMethod) -> Result<f64> {
        check_eta(eta)?;
        Ok(1.0 - self.value(eta * n as f64, method)?)
    }
}

/// `H(ρ)` for blocks `n × m`.
pub fn sumrank_entropy(rho: f64, n: usize, m: usize, q: u64, method: EntropyMethod) -> Result<f64> {
    Entropy::new(n, m, q)?.value(rho, method)
}

/// `(1 - H(ηn/2), 1 - H(ηn))` for `η ∈ (0, ε/n]`.
pub fn asymptotic_sphere_pack_cover(eta: f64, n: usize, m: usize, q: u64, method: EntropyMethod) -> Result<(f64, f64)> {
    let e = Entropy::new(n, m, q)?;
    if !(eta > 0.0 && eta <= e.epsilon() / n as f64 + 1e-12) {
        return Err(Error::DomainError(format!(
            "eta = {eta} outside (0, {}]",
            e.epsilon() / n as f64
        )));
    }
    Ok((e.sphere_packing(eta, n, method)?, e.sphere_covering(eta, n, method)?))
}

/// Curves that can be emitted as series.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AsymptoticBound {
    Singleton,
    ProjectiveSpherePacking,
    TotalDistance,
    SpherePacking,
    SphereCovering,
    InducedSingleton,
    InducedHamming,
    InducedPlotkin,
    InducedElias,
}

impl AsymptoticBound {
    pub const ALL: [AsymptoticBound; 9] = [
        AsymptoticBound::Singleton,
        AsymptoticBound::ProjectiveSpherePacking,
        AsymptoticBound::TotalDistance,
        AsymptoticBound::SpherePacking,
        AsymptoticBound::SphereCovering,
        AsymptoticBound::InducedSingleton,
        AsymptoticBound::InducedHamming,
        AsymptoticBound::InducedPlotkin,
        AsymptoticBound::InducedElias,
    ];

    pub fn key(self) -> &'static str {
        match self {
            AsymptoticBound::Singleton => "singleton",
            AsymptoticBound::ProjectiveSpherePacking => "projective_sphere_packing",
            AsymptoticBound::TotalDistance => "total_distance",
            AsymptoticBound::SpherePacking => "sphere_packing",
            AsymptoticBound::SphereCovering => "sphere_covering",
            AsymptoticBound::InducedSingleton => "induced_singleton",
            AsymptoticBound::InducedHamming => "induced_hamming",
            AsymptoticBound::InducedPlotkin => "induced_plotkin",
            AsymptoticBound::InducedElias => "induced_elias",
        }
    }
}

impl fmt::Display for AsymptoticBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.key())
    }
}

impl FromStr for AsymptoticBound {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        AsymptoticBound::ALL
            .into_iter()
            .find(|b| b.key() == s.trim())
            .ok_or_else(|| Error::BadParameters(format!("unknown bound '{s}'")))
    }
}

/// Evaluates one curve; `Ok(None)` outside its domain.
pub fn evaluate(
    bound: AsymptoticBound,
    eta: f64,
    scenario: &Scenario,
    entropy: Option<&Entropy>,
    method: EntropyMethod,
) -> Result<Option<f64>> {
    check_eta(eta)?;
    let induced = |k| asymptotic_induced(eta, scenario.q, scenario.m_max(), k).ok();
    Ok(match bound {
        AsymptoticBound::Singleton => Some(asymptotic_singleton(eta)?),
        AsymptoticBound::ProjectiveSpherePacking => Some(asymptotic_projective_sphere_packing(eta)?),
        AsymptoticBound::TotalDistance => Some(asymptotic_total_distance(eta, scenario)?),
        AsymptoticBound::SpherePacking | AsymptoticBound::SphereCovering => {
            let (n, _) = scenario
                .uniform_shape()
                .ok_or_else(|| Error::HypothesisFailed("sphere bounds need every block of the same shape".into()))?;
            let e = entropy.ok_or_else(|| Error::BadParameters("missing entropy table".into()))?;
            if eta == 0.0 || eta > e.epsilon() / n as f64 + 1e-12 {
                None
            } else if bound == AsymptoticBound::SpherePacking {
                Some(e.sphere_packing(eta, n, method)?)
            } else {
                Some(e.sphere_covering(eta, n, method)?)
            }
        }
        AsymptoticBound::InducedSingleton => induced(InducedKind::Singleton),
        AsymptoticBound::InducedHamming => induced(InducedKind::Hamming),
        AsymptoticBound::InducedPlotkin => induced(InducedKind::Plotkin),
        AsymptoticBound::InducedElias => induced(InducedKind::Elias),
    })
}

/// `start, start + step, ...` up to `stop` (inclusive within rounding).
pub fn eta_grid(start: f64, stop: f64, step: f64) -> Result<Vec<f64>> {
    if step.is_nan() || step <= 0.0 || start < 0.0 || stop > 1.0 || start > stop {
        return Err(Error::DomainError(format!("grid {start}:{stop}:{step}")));
    }
    let count = ((stop - start) / step + 1e-9).floor() as usize;
    Ok((0..=count).map(|k| start + k as f64 * step).collect())
}

/// CSV with header `eta,bound,value`; rows bound by bound in the given
/// order, then by `η`. Points outside a curve's domain are omitted.
pub fn emit_series(
    scenario: &Scenario,
    bounds: &[AsymptoticBound],
    grid: &[f64],
    method: EntropyMethod,
) -> Result<String> {
    let entropy = match scenario.uniform_shape() {
        Some((n, m)) => Some(Entropy::new(n, m, scenario.q)?),
        None => None,
    };
    let mut out = String::from("eta,bound,value\n");
    for &b in bounds {
        for &eta in grid {
            if let Some(v) = evaluate(b, eta, scenario, entropy.as_ref(), method)? {
                out.push_str(&format!("{eta:.10},{},{v:.10}\n", b.key()));
            }
        }
    }
    Ok(out)
}

/// The `η` where the total-distance curve drops below the sphere-packing
/// curve, by bisection on `[lo, hi]`. Requires a uniform scenario.
pub fn crossover(scenario: &Scenario, lo: f64, hi: f64, method: EntropyMethod) -> Result<f64> {
    let (n, m) = scenario
        .uniform_shape()
        .ok_or_else(|| Error::HypothesisFailed("crossover needs a uniform scenario".into()))?;
    let e = Entropy::new(n, m, scenario.q)?;
    let gap =
        |eta: f64| -> Result<f64> { Ok(asymptotic_total_distance(eta, scenario)? - e.sphere_packing(eta, n, method)?) };
    let (mut a, mut b) = (lo, hi);
    let (ga, gb) = (gap(a)?, gap(b)?);
    if ga.is_zero() {
        return Ok(a);
    }
    if ga.signum() == gb.signum() {
        return Err(Error::DomainError(format!("no sign change on [{lo}, {hi}]")));
    }
    for _ in 0..100 {
        let mid = (a + b) / 2.0;
        if gap(mid)?.signum() == ga.signum() {
            a = mid;
        } else {
            b = mid;
        }
    }
    Ok((a + b) / 2.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn entropy_basics() {
        assert_eq!(hilbert_entropy(0.0, 4.0).unwrap(), 0.0);
        assert!((hilbert_entropy(0.5, 2.0).unwrap() - 1.0).abs() < 1e-15);
        let mut prev = 0.0;
        for k in 1..75 {
            let v = hilbert_entropy(k as f64 / 100.0, 4.0).unwrap();
            assert!(v > prev);
            prev = v;
        }
        assert!(hilbert_entropy(0.9, 4.0).is_err());
    }

    #[test]
    fn induced_curves() {
        assert_eq!(asymptotic_induced(0.3, 2, 2, InducedKind::Singleton).unwrap(), 0.7);
        assert!(asymptotic_induced(0.75, 2, 2, InducedKind::Plotkin).unwrap().abs() < 1e-15);
        assert_eq!(asymptotic_induced(0.9, 2, 2, InducedKind::Plotkin).unwrap(), 0.0);
        assert!((asymptotic_induced(1e-9, 2, 2, InducedKind::Elias).unwrap() - 1.0).abs() < 1e-6);
        assert!(asymptotic_induced(0.8, 2, 2, InducedKind::Elias).is_err());
        assert!(asymptotic_induced(1.5, 2, 2, InducedKind::Singleton).is_err());
    }

    #[test]
    fn total_distance_points() {
        let s = Scenario::uniform(2, 2, 4).unwrap();
        assert!((asymptotic_total_distance(0.5, &s).unwrap() - 15.0 / 31.0).abs() < 1e-15);
        assert_eq!(asymptotic_total_distance(0.0, &s).unwrap(), 1.0);
        assert_eq!(asymptotic_total_distance(0.99, &s).unwrap(), 0.0);
        let mixed = Scenario::new(2, vec![(3, 6), (2, 5)], 4, vec![1, 2]).unwrap();
        assert_eq!(mixed.n_upper(), 2);
        assert_eq!(mixed.m_max(), 6);
        assert!(mixed.uniform_shape().is_none());
        for k in 0..=100 {
            let eta = k as f64 / 100.0;
            let td = asymptotic_total_distance(eta, &mixed).unwrap();
            assert!(td <= asymptotic_singleton(eta).unwrap() + 1e-15);
            assert!((0.0..=1.0).contains(&td));
        }
    }

    #[test]
    fn entropy_values() {
        let e = Entropy::new(2, 4, 2).unwrap();
        assert!((e.sphere_packing(0.1, 2, EntropyMethod::Ternary).unwrap() - 0.8725241256).abs() < 1e-6);
        let e4 = Entropy::new(4, 4, 2).unwrap();
        let g = EntropyMethod::Grid(1e-4);
        assert!((e4.sphere_covering(0.02, 4, g).unwrap() - 0.9356936247).abs() < 1e-6);
        assert!(e.value(0.0, EntropyMethod::Ternary).unwrap() < 1e-6);
        assert!(e.value(e.epsilon() + 0.1, EntropyMethod::Ternary).is_err());
        // Convexity in ln z.
        for rho in [0.2, 0.8, 1.5] {
            for k in 0..400 {
                let x = -40.0 + k as f64 * 0.1;
                let h = 0.1;
                let d2 = e.objective(rho, x - h) - 2.0 * e.objective(rho, x) + e.objective(rho, x + h);
                assert!(d2 >= -1e-9);
            }
        }
        let (up, low) = asymptotic_sphere_pack_cover(0.3, 2, 4, 2, EntropyMethod::Ternary).unwrap();
        assert!((up - 0.6816928074).abs() < 1e-6 && (low - 0.4541717806).abs() < 1e-6);
    }

    #[test]
    fn epsilon_exact_matches_float() {
        let exact = average_rank_exact(2, 4, 2);
        let approx = exact.numer().to_f64().unwrap() / exact.denom().to_f64().unwrap();
        assert!((approx - average_rank(2, 4, 2)).abs() < 1e-15);
        assert!((average_rank(2, 4, 2) / 2.0 - 0.908).abs() < 1e-3);
    }

    #[test]
    fn series_and_crossovers() {
        let s = Scenario::uniform(2, 2, 4).unwrap();
        let csv = emit_series(&s, &[], &[0.0, 0.5], EntropyMethod::Ternary).unwrap();
        assert_eq!(csv, "eta,bound,value\n");
        let csv = emit_series(
            &s,
            &[AsymptoticBound::TotalDistance, AsymptoticBound::SpherePacking],
            &eta_grid(0.0, 1.0, 0.25).unwrap(),
            EntropyMethod::Ternary,
        )
        .unwrap();
        assert!(csv.contains("0.5000000000,total_distance,0.4838709677"));
        assert!(!csv.contains("0.0000000000,sphere_packing"));
        let x1 = crossover(&s, 0.2, 0.6, EntropyMethod::Ternary).unwrap();
        assert!((x1 - 0.345).abs() < 0.01, "{x1}");
        let s4 = Scenario::uniform(2, 4, 4).unwrap();
        let x2 = crossover(&s4, 0.4, 0.75, EntropyMethod::Ternary).unwrap();
        assert!((x2 - 0.635).abs() < 0.01, "{x2}");
        let mixed = Scenario::new(2, vec![(3, 6)], 4, vec![2]).unwrap();
        assert!(emit_series(
            &mixed,
            &[AsymptoticBound::SpherePacking],
            &[0.1],
            EntropyMethod::Ternary
        )
        .is_err());
    }
}
