//! Explicit optimal codes: MRD and MDS primitives, the MSRD families for
//! distances 2, N and N-1, the codes padded with `1×1` blocks, and the
//! lifting of a Hamming-metric code through rank-metric codes.
//!
//! Every builder returns a [`LinearCode`]; [`certify`] checks the claimed
//! distance by enumeration when the code is small enough.

use std::collections::BTreeSet;

use num_bigint::BigUint;

use crate::ambient::{MatrixTuple, Profile};
use crate::code::{LinearCode, MsrdWitness};
use crate::error::{Error, Result};
use crate::exec::Limits;
use crate::field::{Elem, Field, Tower};
use crate::matq::{q_power, Mat};

/// Codes with `q^k` at most this are certified by enumeration.
pub const CERTIFY_LIMIT: u64 = 1 << 20;

/// How a construction's distance was established.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// Exhaustive distance computation.
    Enumerated(MsrdWitness),
    /// Too large to enumerate; the construction's own argument gives `d_lower`.
    Structural { d_lower: usize, reason: String },
}

impl Certificate {
    pub fn is_structural(&self) -> bool {
        matches!(self, Certificate::Structural { .. })
    }
}

/// Runs `msrd_check` when `q^k <= CERTIFY_LIMIT`, otherwise records the
/// structural lower bound `expected_d`.
pub fn certify(code: &LinearCode, expected_d: usize, reason: &str, limits: &Limits) -> Result<Certificate> {
    let size = code.cardinality();
    if size <= BigUint::from(CERTIFY_LIMIT) {
        Ok(Certificate::Enumerated(code.msrd_check(limits)?))
    } else {
        Ok(Certificate::Structural {
            d_lower: expected_d,
            reason: reason.to_string(),
        })
    }
}

/// `F_q`-basis of a Gabidulin code in `F_q^{n×m}` with rank distance `d`.
/// `d = n + 1` gives the empty basis.
fn mrd_basis(base: &Field, n: usize, m: usize, d: usize) -> Result<Vec<Mat>> {
    if n == 0 || n > m || d == 0 || d > n + 1 {
        return Err(Error::BadParameters(format!("no [{n}x{m};{d}] MRD code")));
    }
    let k = n + 1 - d;
    if k == 0 {
        return Ok(Vec::new());
    }
    let tower = Tower::new(base, m as u32)?;
    let top = tower.top();
    let q = base.q() as u64;
    let beta = tower.beta();
    let points: Vec<Elem> = (0..n).map(|j| top.pow(beta, j as u64)).collect();
    // g^{q^i} for each point and each i < k.
    let frob: Vec<Vec<Elem>> = points
        .iter()
        .map(|&g| {
            let mut out = Vec::with_capacity(k);
            let mut x = g;
            for _ in 0..k {
                out.push(x);
                x = top.pow(x, q);
            }
            out
        })
        .collect();
    let mut basis = Vec::with_capacity(k * m);
    for i in 0..k {
        for l in 0..m {
            let coeff = top.pow(beta, l as u64);
            let rows: Vec<Vec<Elem>> = frob.iter().map(|fg| tower.coords(top.mul(coeff, fg[i]))).collect();
            basis.push(Mat::from_rows(&rows));
        }
    }
    Ok(basis)
}

/// A Gabidulin code in `F_q^{n×m}`: evaluation of `q`-linearized
/// polynomials of `q`-degree below `n - d + 1` at `β^0, ..., β^{n-1}`.
pub fn gabidulin_mrd(base: &Field, n: usize, m: usize, d: usize) -> Result<LinearCode> {
    if d == 0 || d > n {
        return Err(Error::BadParameters(format!("MRD distance {d} outside 1..={n}")));
    }
    let profile = Profile::new(base, &[(n, m)])?;
    let basis = mrd_basis(base, n, m, d)?;
    let gens: Vec<MatrixTuple> = basis.into_iter().map(|a| MatrixTuple::new(vec![a])).collect();
    LinearCode::new(&profile, &gens)
}

/// Generator of an MDS code over `field` with the given length and Hamming
/// distance: the identity for distance 1, otherwise a Vandermonde matrix on
/// the points `1, 2, ..., q-1` (as element codes), then `0`, then `∞`.
pub fn rs_mds(field: &Field, length: usize, distance: usize) -> Result<Mat> {
    let q = field.q() as u64;
    if length as u64 > q + 1 {
        return Err(Error::LengthTooLong { length, max: q + 1 });
    }
    if length == 0 || distance == 0 || distance > length {
        return Err(Error::BadParameters(format!(
            "MDS distance {distance} for length {length}"
        )));
    }
    let k = length + 1 - distance;
    if distance == 1 {
        return Ok(Mat::identity(length));
    }
    let mut g = Mat::zeros(k, length);
    for c in 0..length {
        if c as u64 == q {
            g.set(k - 1, c, 1);
            continue;
        }
        let point = if (c as u64) < q - 1 { c as Elem + 1 } else { 0 };
        let mut x = 1;
        for r in 0..k {
            g.set(r, c, x);
            x = field.mul(x, point);
        }
    }
    Ok(g)
}

/// `F_q`-basis of the row space of `g` over `GF(q^h)`: the rows scaled by
/// `β^0, ..., β^{h-1}`.
pub fn expand_generator(tower: &Tower, g: &Mat) -> Vec<Vec<Elem>> {
    let top = tower.top();
    let mut out = Vec::with_capacity(g.rows() * tower.m() as usize);
    for r in 0..g.rows() {
        for l in 0..tower.m() {
            let s = top.pow(tower.beta(), l as u64);
            out.push(g.row(r).iter().map(|&x| top.mul(s, x)).collect());
        }
    }
    out
}

/// The image of an MDS code in `F_{q^m}^t` inside `t` blocks `1×m`.
pub fn construct_mds_lift(base: &Field, m: usize, t: usize, d: usize) -> Result<LinearCode> {
    let q = base.q() as u64;
    if t == 0 || m == 0 || d == 0 || d > t {
        return Err(Error::BadParameters(format!("need 1 <= d <= t, got d={d}, t={t}")));
    }
    if BigUint::from(t) > q_power(q, m as u64) + 1u32 {
        return Err(Error::BadParameters(format!("t = {t} exceeds q^m + 1")));
    }
    let tower = Tower::new(base, m as u32)?;
    let g = rs_mds(tower.top(), t, d)?;
    let profile = Profile::uniform(base, 1, m, t)?;
    let rows = expand_generator(&tower, &g)
        .into_iter()
        .map(|v| v.iter().flat_map(|&x| tower.coords(x)).collect())
        .collect();
    LinearCode::from_rows(&profile, rows)
}

fn pad_rows(a: &Mat, rows: usize) -> Mat {
    let mut out = Mat::zeros(rows, a.cols());
    for r in 0..a.rows() {
        for c in 0..a.cols() {
            out.set(r, c, a.get(r, c));
        }
    }
    out
}

fn unit(rows: usize, cols: usize, r: usize, c: usize) -> Mat {
    let mut e = Mat::zeros(rows, cols);
    e.set(r, c, 1);
    e
}

/// A distance-2 MSRD code together with the dual in its closed form.
#[derive(Clone, Debug)]
pub struct DistanceTwo {
    pub code: LinearCode,
    /// `{(B, ψ_2(B), ...)}` for `B` in the dual MRD code; equal-`m` profiles only.
    pub displayed_dual: Option<LinearCode>,
}

/// Equal-`m` case: one MRD code of distance 2 in the tallest block absorbs
/// the other blocks.
fn d2_equal(profile: &Profile) -> Result<DistanceTwo> {
    let f = profile.field();
    let m = profile.m(0);
    let t = profile.t();
    let lead = (0..t)
        .max_by_key(|&i| (profile.n(i), std::cmp::Reverse(i)))
        .expect("t >= 1");
    let n1 = profile.n(lead);
    let zero = |i: usize| Mat::zeros(profile.n(i), m);
    let mut gens = Vec::new();
    for a in mrd_basis(f, n1, m, 2)? {
        let mut blocks: Vec<Mat> = (0..t).map(zero).collect();
        blocks[lead] = a;
        gens.push(MatrixTuple::new(blocks));
    }
    for i in (0..t).filter(|&i| i != lead) {
        for r in 0..profile.n(i) {
            for c in 0..m {
                let e = unit(profile.n(i), m, r, c);
                let mut blocks: Vec<Mat> = (0..t).map(zero).collect();
                blocks[lead] = pad_rows(&e, n1).scale(f.neg(1), f);
                blocks[i] = e;
                gens.push(MatrixTuple::new(blocks));
            }
        }
    }
    let code = LinearCode::new(profile, &gens)?;

    let hat = gabidulin_or_zero(f, n1, m)?;
    let hat_dual = hat.dual();
    let dual_gens: Vec<MatrixTuple> = hat_dual
        .basis()
        .into_iter()
        .map(|b| {
            let b = &b.blocks()[0];
            MatrixTuple::new(
                (0..t)
                    .map(|i| b.select_rows(&(0..profile.n(i)).collect::<Vec<_>>()))
                    .collect(),
            )
        })
        .collect();
    let displayed_dual = LinearCode::new(profile, &dual_gens)?;
    Ok(DistanceTwo {
        code,
        displayed_dual: Some(displayed_dual),
    })
}

/// The distance-2 MRD code in `F_q^{n×m}`, or the zero code when `n = 1`.
fn gabidulin_or_zero(f: &Field, n: usize, m: usize) -> Result<LinearCode> {
    let profile = Profile::new(f, &[(n, m)])?;
    let gens: Vec<MatrixTuple> = mrd_basis(f, n, m, 2)?
        .into_iter()
        .map(|a| MatrixTuple::new(vec![a]))
        .collect();
    LinearCode::new(&profile, &gens)
}

/// MSRD code of sum-rank distance 2 in any profile. Unequal column counts
/// are handled by widening every block to `m_1` columns and keeping the
/// codewords whose extra columns vanish.
pub fn construct_d2(profile: &Profile) -> Result<DistanceTwo> {
    if profile.equal_m().is_some() {
        return d2_equal(profile);
    }
    let f = profile.field();
    let m1 = profile.max_m();
    let wide_blocks: Vec<(usize, usize)> = profile.blocks().iter().map(|&(n, _)| (n, m1)).collect();
    let wide = Profile::new(f, &wide_blocks)?;
    let hat = d2_equal(&wide)?.code;
    let g = hat.generator_matrix();
    // Columns of the wide ambient space that must vanish, and the ones kept.
    let mut extra = Vec::new();
    let mut kept = Vec::new();
    for (i, &(n, m)) in profile.blocks().iter().enumerate() {
        let o = wide.offset(i);
        for r in 0..n {
            for c in 0..m1 {
                let idx = o + r * m1 + c;
                if c < m {
                    kept.push(idx);
                } else {
                    extra.push(idx);
                }
            }
        }
    }
    // Coefficient vectors x with x·G zero on the extra columns: the right
    // kernel of the transpose of those columns.
    let tau = g.select_columns(&extra).transpose();
    let kernel = tau.nullspace(f);
    let rows = (0..kernel.dim())
        .map(|r| {
            let word = hat.encode(kernel.basis().row(r)).flatten();
            kept.iter().map(|&i| word[i]).collect()
        })
        .collect();
    Ok(DistanceTwo {
        code: LinearCode::from_rows(profile, rows)?,
        displayed_dual: None,
    })
}

/// Per-block MRD bases of full rank distance `n_i` (dimension `m_i` each).
fn full_rank_bases(profile: &Profile) -> Result<Vec<Vec<Mat>>> {
    profile
        .blocks()
        .iter()
        .map(|&(n, m)| mrd_basis(profile.field(), n, m, n))
        .collect()
}

/// MSRD code of sum-rank distance `N` and dimension `m_t`.
pub fn construct_dn(profile: &Profile) -> Result<LinearCode> {
    let bases = full_rank_bases(profile)?;
    let mt = profile.m(profile.t() - 1);
    let gens: Vec<MatrixTuple> = (0..mt)
        .map(|l| MatrixTuple::new(bases.iter().map(|b| b[l].clone()).collect()))
        .collect();
    LinearCode::new(profile, &gens)
}

/// MSRD code of sum-rank distance `N - α` and dimension `(α+1) m_t`, under
/// `n_t >= α + 1` and `(α+1) m_t <= m_{t-1}`. For `α >= 2` this follows the
/// recipe extended from `α = 1`; the result is still certified by
/// [`certify`] when small.
pub fn construct_dn_minus_alpha(profile: &Profile, alpha: usize) -> Result<LinearCode> {
    let t = profile.t();
    let (nt, mt) = profile.blocks()[t - 1];
    if nt < alpha + 1 {
        return Err(Error::HypothesisFailed(format!("n_t = {nt} < α + 1 = {}", alpha + 1)));
    }
    if t >= 2 && (alpha + 1) * mt > profile.m(t - 2) {
        return Err(Error::HypothesisFailed(format!(
            "(α+1) m_t = {} exceeds m_(t-1) = {}",
            (alpha + 1) * mt,
            profile.m(t - 2)
        )));
    }
    let f = profile.field();
    let mut bases: Vec<Vec<Mat>> = profile.blocks()[..t - 1]
        .iter()
        .map(|&(n, m)| mrd_basis(f, n, m, n))
        .collect::<Result<_>>()?;
    bases.push(mrd_basis(f, nt, mt, nt - alpha)?);
    let gens: Vec<MatrixTuple> = (0..(alpha + 1) * mt)
        .map(|l| MatrixTuple::new(bases.iter().map(|b| b[l].clone()).collect()))
        .collect();
    LinearCode::new(profile, &gens)
}

/// MSRD code of sum-rank distance `N - 1`.
pub fn construct_dn_minus(profile: &Profile) -> Result<LinearCode> {
    construct_dn_minus_alpha(profile, 1)
}

/// Checks inner blocks for the `1×1`-padded families and returns `m_{t_1}`.
fn check_inner(inner: &[(usize, usize)]) -> Result<usize> {
    if inner.is_empty() {
        return Err(Error::BadParameters("at least one inner block is required".into()));
    }
    if inner.windows(2).any(|w| w[0].1 < w[1].1) {
        return Err(Error::HypothesisFailed(
            "inner column counts must be non-increasing".into(),
        ));
    }
    if let Some(&(n, m)) = inner.iter().find(|&&(n, m)| n == 0 || n > m) {
        return Err(Error::BadBlock { n, m });
    }
    Ok(inner.last().expect("nonempty").1)
}

/// Default `k × len` MDS generator over a prime-power field with `k <= len`.
fn small_mds(field: &Field, k: usize, len: usize) -> Result<Mat> {
    if len == k {
        return Ok(Mat::identity(k));
    }
    if len == k + 1 {
        let mut g = Mat::zeros(k, len);
        for r in 0..k {
            g.set(r, r, 1);
            g.set(r, k, 1);
        }
        return Ok(g);
    }
    rs_mds(field, len, len - k + 1).map_err(|e| match e {
        Error::LengthTooLong { length, max } => Error::HypothesisFailed(format!(
            "no default MDS code of length {length} over GF({}) (max {max})",
            field.q()
        )),
        e => e,
    })
}

/// Inner MRD blocks followed by `t_2` blocks `1×1` carrying the columns of an
/// MDS generator `G` (`m_{t_1} × t_2`). Without `G`, the identity, the
/// single-parity code or a Vandermonde code is used as the length allows.
pub fn construct_msrd111(base: &Field, inner: &[(usize, usize)], t2: usize, g: Option<&Mat>) -> Result<LinearCode> {
    let mt1 = check_inner(inner)?;
    if t2 < mt1 {
        return Err(Error::HypothesisFailed(format!("t_2 = {t2} < m_(t_1) = {mt1}")));
    }
    let g = match g {
        Some(g) => {
            if g.rows() != mt1 || g.cols() != t2 {
                return Err(Error::BadParameters(format!(
                    "G must be {mt1}x{t2}, got {}x{}",
                    g.rows(),
                    g.cols()
                )));
            }
            g.check_field(base)?;
            g.clone()
        }
        None => small_mds(base, mt1, t2)?,
    };
    let bases: Vec<Vec<Mat>> = inner
        .iter()
        .map(|&(n, m)| mrd_basis(base, n, m, n))
        .collect::<Result<_>>()?;
    let mut shapes = inner.to_vec();
    shapes.extend(std::iter::repeat_n((1, 1), t2));
    let profile = Profile::new(base, &shapes)?;
    let gens: Vec<MatrixTuple> = (0..mt1)
        .map(|i| {
            let mut blocks: Vec<Mat> = bases.iter().map(|b| b[i].clone()).collect();
            blocks.extend((0..t2).map(|c| Mat::from_vec(1, 1, vec![g.get(i, c)])));
            MatrixTuple::new(blocks)
        })
        .collect();
    LinearCode::new(&profile, &gens)
}

/// Like [`construct_msrd111`] with `m_{t_1} = m̂ a`: the tail is `t_2` blocks
/// `1×m̂` carrying an MDS code over `GF(q^m̂)` of distance `t_2 - a + 1`.
pub fn construct_combine(base: &Field, inner: &[(usize, usize)], t2: usize, m_hat: usize) -> Result<LinearCode> {
    let mt1 = check_inner(inner)?;
    if m_hat == 0 || mt1 % m_hat != 0 {
        return Err(Error::HypothesisFailed(format!(
            "m̂ = {m_hat} does not divide m_(t_1) = {mt1}"
        )));
    }
    let a = mt1 / m_hat;
    if a > t2 {
        return Err(Error::HypothesisFailed(format!("a = {a} exceeds t_2 = {t2}")));
    }
    let tower = Tower::new(base, m_hat as u32)?;
    let g = rs_mds(tower.top(), t2, t2 - a + 1).map_err(|e| match e {
        Error::LengthTooLong { length, max } => {
            Error::HypothesisFailed(format!("t_2 = {length} exceeds q^m̂ + 1 = {max}"))
        }
        e => e,
    })?;
    let tail = expand_generator(&tower, &g);
    let bases: Vec<Vec<Mat>> = inner
        .iter()
        .map(|&(n, m)| mrd_basis(base, n, m, n))
        .collect::<Result<_>>()?;
    let mut shapes = inner.to_vec();
    shapes.extend(std::iter::repeat_n((1, m_hat), t2));
    let profile = Profile::new(base, &shapes)?;
    let gens: Vec<MatrixTuple> = (0..mt1)
        .map(|i| {
            let mut blocks: Vec<Mat> = bases.iter().map(|b| b[i].clone()).collect();
            blocks.extend(tail[i].iter().map(|&x| Mat::from_vec(1, m_hat, tower.coords(x))));
            MatrixTuple::new(blocks)
        })
        .collect();
    LinearCode::new(&profile, &gens)
}

/// MSRD code of distance `s + 2` and dimension `m + 1` in `s + 1` blocks
/// `1×m` followed by `m + 1` blocks `1×1`; needs `m >= 2` and
/// `1 <= s <= m + m(m-1)/2 + 1`. The sums `A_α + A_β` of unit vectors are
/// taken over 2-subsets in lexicographic order.
pub fn construct_msrd111_ext(base: &Field, m: usize, s: usize) -> Result<LinearCode> {
    if m < 2 {
        return Err(Error::HypothesisFailed("needs m >= 2".into()));
    }
    let cap = m + m * (m - 1) / 2 + 1;
    if s == 0 || s > cap {
        return Err(Error::HypothesisFailed(format!("s = {s} outside 1..={cap}")));
    }
    let a = |j: usize| unit(1, m, 0, j);
    let mut pair_sums = Vec::new();
    for x in 0..m {
        for y in x + 1..m {
            let mut b = a(x);
            b.set(0, y, 1);
            pair_sums.push(b);
        }
    }
    // A_1..A_m, then B_1 twice, then B_2, B_3, ...; cut to length s.
    let mut seq: Vec<Mat> = (0..m).map(a).collect();
    seq.push(pair_sums[0].clone());
    seq.extend(pair_sums.iter().cloned());
    seq.truncate(s);

    let one = |v: Elem| Mat::from_vec(1, 1, vec![v]);
    let mut shapes = vec![(1, m); s + 1];
    shapes.extend(std::iter::repeat_n((1, 1), m + 1));
    let profile = Profile::new(base, &shapes)?;
    let mut gens = Vec::with_capacity(m + 1);
    for j in 0..m {
        let mut blocks = vec![a(0)];
        blocks.extend(std::iter::repeat_n(a(j), s));
        blocks.extend((0..m).map(|i| one((i == j) as Elem)));
        blocks.push(one(0));
        gens.push(MatrixTuple::new(blocks));
    }
    let mut last = vec![a(1)];
    last.extend(seq);
    last.extend((0..m).map(|_| one(0)));
    last.push(one(1));
    gens.push(MatrixTuple::new(last));
    LinearCode::new(&profile, &gens)
}

/// `min Σ_{i ∈ I} δ_i` over `|I| = Δ`: the `Δ` smallest entries.
pub fn lifting_distance_bound(deltas: &[usize], hamming_distance: usize) -> usize {
    let mut d = deltas.to_vec();
    d.sort_unstable();
    d.iter().take(hamming_distance).sum()
}

/// The set of nonzero Hamming weights in the `F_q`-span of `gens` (vectors
/// over the top field of `tower`), by enumeration.
pub fn hamming_weights(tower: &Tower, gens: &[Vec<Elem>], limits: &Limits) -> Result<BTreeSet<usize>> {
    let top = tower.top();
    let q = tower.base().q() as u64;
    let k = gens.len();
    let len = gens.first().map_or(0, Vec::len);
    limits.check_codewords(&q_power(q, k as u64))?;
    let coeffs: Vec<Elem> = (0..q as Elem).map(|c| tower.embed(c)).collect();
    let mut weights = BTreeSet::new();
    let mut word = vec![0; len];
    for idx in 1..q.pow(k as u32) {
        word.iter_mut().for_each(|x| *x = 0);
        let mut rest = idx;
        for g in gens {
            let c = coeffs[(rest % q) as usize];
            rest /= q;
            if c != 0 {
                for (w, &x) in word.iter_mut().zip(g) {
                    *w = top.add(*w, top.mul(c, x));
                }
            }
        }
        let wt = word.iter().filter(|&&x| x != 0).count();
        if wt > 0 {
            weights.insert(wt);
        }
    }
    Ok(weights)
}

/// Minimum Hamming distance of the `F_q`-span of `gens`, by enumeration.
pub fn hamming_distance(tower: &Tower, gens: &[Vec<Elem>], limits: &Limits) -> Result<usize> {
    hamming_weights(tower, gens, limits)?
        .first()
        .copied()
        .ok_or(Error::TrivialCode)
}

/// Generator of the simplex code of dimension `r` over `field`: one column
/// per projective point, normalized with leading nonzero entry 1, in
/// increasing order of the remaining coordinates.
pub fn simplex_generator(field: &Field, r: usize) -> Mat {
    let q = field.q() as usize;
    let mut cols: Vec<Vec<Elem>> = Vec::new();
    for lead in 0..r {
        let free = r - lead - 1;
        let count = q.pow(free as u32);
        for idx in 0..count {
            let mut col = vec![0; r];
            col[lead] = 1;
            let mut rest = idx;
            for pos in (lead + 1..r).rev() {
                col[pos] = (rest % q) as Elem;
                rest /= q;
            }
            cols.push(col);
        }
    }
    let mut g = Mat::zeros(r, cols.len());
    for (c, col) in cols.iter().enumerate() {
        for (row, &v) in col.iter().enumerate() {
            g.set(row, c, v);
        }
    }
    g
}

/// Lifts an `F_q`-linear code `H ≤ GF(q^h)^t` (given by `F_q`-generators)
/// through MRD codes of rank distances `δ_i`: coordinate `i` is mapped into
/// block `i` by `α ↦ Σ_l coords(α)_l A_{i,l}`. Its sum-rank distance is at
/// least [`lifting_distance_bound`] of the Hamming distance of `H`.
pub fn construct_lifting(
    profile: &Profile,
    deltas: &[usize],
    tower: &Tower,
    h_gens: &[Vec<Elem>],
) -> Result<LinearCode> {
    let t = profile.t();
    let h = tower.m() as usize;
    if tower.base() != profile.field() {
        return Err(Error::MixedFields);
    }
    if deltas.len() != t {
        return Err(Error::HypothesisFailed(format!(
            "{} deltas for {t} blocks",
            deltas.len()
        )));
    }
    for (i, (&(n, m), &dl)) in profile.blocks().iter().zip(deltas).enumerate() {
        if dl == 0 || dl > n {
            return Err(Error::HypothesisFailed(format!("δ_{i} = {dl} outside 1..={n}")));
        }
        if h > m * (n - dl + 1) {
            return Err(Error::HypothesisFailed(format!(
                "h = {h} exceeds dim of the [{n}x{m};{dl}] MRD code"
            )));
        }
    }
    if h_gens.is_empty() || h_gens.iter().all(|g| g.iter().all(|&x| x == 0)) {
        return Err(Error::HypothesisFailed("H must be nonzero".into()));
    }
    if h_gens.iter().any(|g| g.len() != t) {
        return Err(Error::HypothesisFailed(format!("H must have length {t}")));
    }
    let f = profile.field();
    let bases: Vec<Vec<Mat>> = profile
        .blocks()
        .iter()
        .zip(deltas)
        .map(|(&(n, m), &dl)| mrd_basis(f, n, m, dl))
        .collect::<Result<_>>()?;
    let phi = |i: usize, alpha: Elem| -> Mat {
        let (n, m) = profile.blocks()[i];
        let mut acc = Mat::zeros(n, m);
        for (l, c) in tower.coords(alpha).into_iter().enumerate() {
            if c != 0 {
                acc = acc.add(&bases[i][l].scale(c, f), f).expect("same shape");
            }
        }
        acc
    };
    let gens: Vec<MatrixTuple> = h_gens
        .iter()
        .map(|g| MatrixTuple::new(g.iter().enumerate().map(|(i, &x)| phi(i, x)).collect()))
        .collect();
    LinearCode::new(profile, &gens)
}

/// The simplex lift: `H` is the `r`-dimensional simplex code over
/// `GF(q^m)`, every block is `n×m` with `δ_i = n`.
#[derive(Clone, Debug)]
pub struct SimplexLift {
    pub code: LinearCode,
    pub t: usize,
    /// Hamming distance of the simplex code, `q^{m(r-1)}`.
    pub hamming_distance: usize,
    /// `n Δ`; every nonzero codeword has exactly this weight because simplex
    /// codewords have constant weight and full-rank MRD images.
    pub srk: usize,
    tower: Tower,
    h_gens: Vec<Vec<Elem>>,
}

impl SimplexLift {
    /// Certifies `srk` without touching the lifted code: enumerates the
    /// Hamming weights of `H` over `GF(q^m)` and checks they all equal `Δ`.
    /// Each nonzero coordinate lands in an MRD code of full rank distance
    /// `n`, so every nonzero codeword has sum-rank weight exactly `n Δ`.
    pub fn structural_certificate(&self, limits: &Limits) -> Result<Certificate> {
        let weights = hamming_weights(&self.tower, &self.h_gens, limits)?;
        if weights.len() != 1 || weights.first() != Some(&self.hamming_distance) {
            return Err(Error::HypothesisFailed(format!(
                "H is not constant weight {}: {weights:?}",
                self.hamming_distance
            )));
        }
        Ok(Certificate::Structural {
            d_lower: self.srk,
            reason: format!(
                "all nonzero words of H have Hamming weight {}; full-rank MRD images give srk = {}",
                self.hamming_distance, self.srk
            ),
        })
    }
}

pub fn simplex_lift(base: &Field, m: usize, n: usize, r: usize) -> Result<SimplexLift> {
    if r == 0 || n == 0 || n > m {
        return Err(Error::BadParameters("simplex lift needs r >= 1 and 1 <= n <= m".into()));
    }
    let tower = Tower::new(base, m as u32)?;
    let g = simplex_generator(tower.top(), r);
    let t = g.cols();
    let profile = Profile::uniform(base, n, m, t)?;
    let h_gens = expand_generator(&tower, &g);
    let code = construct_lifting(&profile, &vec![n; t], &tower, &h_gens)?;
    let qm = (base.q() as usize).pow(m as u32);
    let delta = qm.pow(r as u32 - 1);
    Ok(SimplexLift {
        code,
        t,
        hamming_distance: delta,
        srk: n * delta,
        tower,
        h_gens,
    })
}
