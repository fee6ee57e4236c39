//! The ambient space `Π_q(n_1×m_1 | ... | n_t×m_t)`.

mod lattice;

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::matq::{gaussian_binomial, q_power, Mat, Subspace};

pub use lattice::{dim_vectors, enumerate_lattice, enumerate_lattice_rank, Lattice};

/// Block shapes with blocks sorted by non-increasing column count.
#[derive(Clone, Debug)]
pub struct Profile {
    field: Field,
    blocks: Vec<(usize, usize)>,
    /// `perm[i]` is the user's index of normalized block `i`.
    perm: Vec<usize>,
    offsets: Vec<usize>,
}

impl PartialEq for Profile {
    fn eq(&self, other: &Profile) -> bool {
        self.field == other.field && self.blocks == other.blocks
    }
}

impl Eq for Profile {}

/// Parses `2x2,1x2x7,1x1x5` into a block list in the order given.
pub fn parse_blocks(text: &str) -> Result<Vec<(usize, usize)>> {
    let bad = |m: String| Error::Parse { line: 1, msg: m };
    let mut out = Vec::new();
    for item in text.split(',') {
        let item = item.trim();
        let parts: Vec<&str> = item.split('x').collect();
        let nums: Vec<usize> = parts
            .iter()
            .map(|s| s.trim().parse::<usize>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| bad(format!("bad block '{item}'")))?;
        match nums[..] {
            [n, m] => out.push((n, m)),
            [n, m, r] => out.extend(std::iter::repeat_n((n, m), r)),
            _ => return Err(bad(format!("bad block '{item}'"))),
        }
    }
    Ok(out)
}

/// Formats a block list, grouping consecutive repeats.
pub fn format_blocks(blocks: &[(usize, usize)]) -> String {
    let mut parts = Vec::new();
    let mut i = 0;
    while i < blocks.len() {
        let mut j = i;
        while j < blocks.len() && blocks[j] == blocks[i] {
            j += 1;
        }
        let (n, m) = blocks[i];
        if j - i == 1 {
            parts.push(format!("{n}x{m}"));
        } else {
            parts.push(format!("{n}x{m}x{}", j - i));
        }
        i = j;
    }
    parts.join(",")
}

/// Number of `n×m` matrices over GF(q) of rank `s`.
pub fn rank_count(n: usize, m: usize, s: usize, q: u64) -> BigUint {
    if s > n.min(m) {
        return BigUint::zero();
    }
    let qm = q_power(q, m as u64);
    let mut out = gaussian_binomial(n as u64, s as u64, q);
    for j in 0..s {
        out *= &qm - q_power(q, j as u64);
    }
    out
}

impl Profile {
    /// Validates and normalizes `raw` by a stable sort on descending `m`.
    pub fn new(field: &Field, raw: &[(usize, usize)]) -> Result<Profile> {
        if raw.is_empty() {
            return Err(Error::ProfileMismatch("a profile needs at least one block".into()));
        }
        if let Some(&(n, m)) = raw.iter().find(|&&(n, m)| n == 0 || m == 0 || n > m) {
            return Err(Error::BadBlock { n, m });
        }
        let mut perm: Vec<usize> = (0..raw.len()).collect();
        perm.sort_by_key(|&i| std::cmp::Reverse(raw[i].1));
        let blocks: Vec<(usize, usize)> = perm.iter().map(|&i| raw[i]).collect();
        let mut offsets = Vec::with_capacity(blocks.len() + 1);
        let mut acc = 0;
        for &(n, m) in &blocks {
            offsets.push(acc);
            acc += n * m;
        }
        offsets.push(acc);
        Ok(Profile {
            field: field.clone(),
            blocks,
            perm,
            offsets,
        })
    }

    pub fn parse(field: &Field, text: &str) -> Result<Profile> {
        Profile::new(field, &parse_blocks(text)?)
    }

    /// `t` blocks of shape `n×m`.
    pub fn uniform(field: &Field, n: usize, m: usize, t: usize) -> Result<Profile> {
        Profile::new(field, &vec![(n, m); t])
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn q(&self) -> u64 {
        self.field.q() as u64
    }

    pub fn blocks(&self) -> &[(usize, usize)] {
        &self.blocks
    }

    pub fn n(&self, i: usize) -> usize {
        self.blocks[i].0
    }

    pub fn m(&self, i: usize) -> usize {
        self.blocks[i].1
    }

    pub fn ns(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.0).collect()
    }

    /// Normalized index to user index.
    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    /// Blocks in the order the user gave them.
    pub fn original_blocks(&self) -> Vec<(usize, usize)> {
        let mut out = vec![(0, 0); self.t()];
        for (i, &p) in self.perm.iter().enumerate() {
            out[p] = self.blocks[i];
        }
        out
    }

    /// Offset of block `i` in the flattened vector.
    pub fn offset(&self, i: usize) -> usize {
        self.offsets[i]
    }

    pub fn t(&self) -> usize {
        self.blocks.len()
    }

    /// `N = Σ n_i`.
    pub fn big_n(&self) -> usize {
        self.blocks.iter().map(|b| b.0).sum()
    }

    /// `M = Σ m_i`.
    pub fn big_m(&self) -> usize {
        self.blocks.iter().map(|b| b.1).sum()
    }

    /// `Σ n_i m_i`, the dimension over GF(q).
    pub fn dim(&self) -> usize {
        self.offsets[self.t()]
    }

    pub fn max_m(&self) -> usize {
        self.blocks[0].1
    }

    /// The common `m` when all blocks have equal column count.
    pub fn equal_m(&self) -> Option<usize> {
        let m = self.blocks[0].1;
        self.blocks.iter().all(|b| b.1 == m).then_some(m)
    }

    /// `Q = Σ q^{-m_i}`.
    pub fn q_sum(&self) -> BigRational {
        let q = self.q();
        self.blocks
            .iter()
            .map(|&(_, m)| BigRational::new(BigInt::one(), BigInt::from(q_power(q, m as u64))))
            .fold(BigRational::zero(), |a, b| a + b)
    }

    /// `|Π| = q^{dim}`.
    pub fn cardinality(&self) -> BigUint {
        q_power(self.q(), self.dim() as u64)
    }

    /// Same field and blocks, with blocks given in the final order (must be non-increasing in `m`).
    pub fn with_blocks(&self, blocks: &[(usize, usize)]) -> Result<Profile> {
        Profile::new(&self.field, blocks)
    }

    /// The normalized profile with block order text.
    pub fn to_text(&self) -> String {
        format_blocks(&self.blocks)
    }

    /// The user-order profile text.
    pub fn original_text(&self) -> String {
        format_blocks(&self.original_blocks())
    }

    /// Number of tuples of sum-rank weight at most `r`.
    pub fn sphere_volume(&self, r: usize) -> BigUint {
        sphere_volume(self, r)
    }

    /// Counts of tuples by sum-rank weight, indices `0..=N`.
    pub fn weight_counts(&self) -> Vec<BigUint> {
        let q = self.q();
        let mut poly = vec![BigUint::one()];
        for &(n, m) in &self.blocks {
            let a: Vec<BigUint> = (0..=n).map(|s| rank_count(n, m, s, q)).collect();
            let mut next = vec![BigUint::zero(); poly.len() + n];
            for (i, x) in poly.iter().enumerate() {
                for (s, y) in a.iter().enumerate() {
                    next[i + s] += x * y;
                }
            }
            poly = next;
        }
        poly
    }

    pub(crate) fn check_tuple(&self, x: &MatrixTuple) -> Result<()> {
        if x.blocks.len() != self.t()
            || x.blocks
                .iter()
                .zip(&self.blocks)
                .any(|(b, &(n, m))| b.rows() != n || b.cols() != m)
        {
            return Err(Error::ProfileMismatch(format!(
                "tuple shape does not match {}",
                self.to_text()
            )));
        }
        Ok(())
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// `V_r(Π)`: the number of tuples with sum-rank weight at most `r`.
pub fn sphere_volume(profile: &Profile, r: usize) -> BigUint {
    profile.weight_counts().iter().take(r + 1).sum()
}

/// An element `(X_1, ..., X_t)` of the ambient space.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MatrixTuple {
    blocks: Vec<Mat>,
}

impl MatrixTuple {
    pub fn new(blocks: Vec<Mat>) -> MatrixTuple {
        MatrixTuple { blocks }
    }

    pub fn zero(profile: &Profile) -> MatrixTuple {
        MatrixTuple {
            blocks: profile.blocks.iter().map(|&(n, m)| Mat::zeros(n, m)).collect(),
        }
    }

    /// Rebuilds a tuple from its block-major, row-major flattening.
    pub fn from_flat(profile: &Profile, flat: &[Elem]) -> Result<MatrixTuple> {
        if flat.len() != profile.dim() {
            return Err(Error::AmbientMismatch(flat.len(), profile.dim()));
        }
        let blocks = profile
            .blocks
            .iter()
            .enumerate()
            .map(|(i, &(n, m))| {
                let o = profile.offset(i);
                Mat::from_vec(n, m, flat[o..o + n * m].to_vec())
            })
            .collect();
        Ok(MatrixTuple { blocks })
    }

    pub fn random<R: Rng + ?Sized>(profile: &Profile, rng: &mut R) -> MatrixTuple {
        let q = profile.field.q();
        let flat: Vec<Elem> = (0..profile.dim()).map(|_| rng.gen_range(0..q)).collect();
        MatrixTuple::from_flat(profile, &flat).expect("length matches")
    }

    pub fn blocks(&self) -> &[Mat] {
        &self.blocks
    }

    pub fn into_blocks(self) -> Vec<Mat> {
        self.blocks
    }

    pub fn flatten(&self) -> Vec<Elem> {
        self.blocks.iter().flat_map(|b| b.data().iter().copied()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(|b| b.is_zero())
    }

    pub fn add(&self, other: &MatrixTuple, f: &Field) -> Result<MatrixTuple> {
        if self.blocks.len() != other.blocks.len() {
            return Err(Error::ProfileMismatch("different block counts".into()));
        }
        let blocks = self
            .blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| a.add(b, f))
            .collect::<Result<_>>()?;
        Ok(MatrixTuple { blocks })
    }

    pub fn scale(&self, s: Elem, f: &Field) -> MatrixTuple {
        MatrixTuple {
            blocks: self.blocks.iter().map(|b| b.scale(s, f)).collect(),
        }
    }

    pub fn rank_list(&self, f: &Field) -> Vec<usize> {
        self.blocks.iter().map(|b| b.rank(f)).collect()
    }

    /// `srk(X) = Σ rk(X_i)`.
    pub fn srk(&self, f: &Field) -> usize {
        self.rank_list(f).iter().sum()
    }

    /// `(colsp X_1, ..., colsp X_t)`.
    pub fn support(&self, f: &Field) -> SubspaceTuple {
        SubspaceTuple {
            parts: self.blocks.iter().map(|b| b.colspace(f)).collect(),
        }
    }

    /// `Σ Tr(X_i Y_iᵀ)`.
    pub fn trace_product(&self, other: &MatrixTuple, f: &Field) -> Result<Elem> {
        if self.blocks.len() != other.blocks.len()
            || self
                .blocks
                .iter()
                .zip(&other.blocks)
                .any(|(a, b)| (a.rows(), a.cols()) != (b.rows(), b.cols()))
        {
            return Err(Error::ProfileMismatch("tuples have different shapes".into()));
        }
        Ok(self
            .flatten()
            .iter()
            .zip(other.flatten())
            .fold(0, |acc, (&a, b)| f.add(acc, f.mul(a, b))))
    }

    /// The `N×M` block-diagonal matrix `diag(X_1, ..., X_t)`.
    pub fn blockdiag_embed(&self) -> Mat {
        let rows: usize = self.blocks.iter().map(|b| b.rows()).sum();
        let cols: usize = self.blocks.iter().map(|b| b.cols()).sum();
        let mut out = Mat::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in &self.blocks {
            for r in 0..b.rows() {
                for c in 0..b.cols() {
                    out.set(r0 + r, c0 + c, b.get(r, c));
                }
            }
            r0 += b.rows();
            c0 += b.cols();
        }
        out
    }
}

/// An element `(U_1, ..., U_t)` of the product lattice, `U_i ≤ F_q^{n_i}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct SubspaceTuple {
    parts: Vec<Subspace>,
}

impl SubspaceTuple {
    pub fn new(parts: Vec<Subspace>) -> SubspaceTuple {
        SubspaceTuple { parts }
    }

    pub fn zero(profile: &Profile) -> SubspaceTuple {
        SubspaceTuple {
            parts: profile.blocks.iter().map(|&(n, _)| Subspace::zero(n)).collect(),
        }
    }

    pub fn full(profile: &Profile) -> SubspaceTuple {
        SubspaceTuple {
            parts: profile.blocks.iter().map(|&(n, _)| Subspace::full(n)).collect(),
        }
    }

    pub fn parts(&self) -> &[Subspace] {
        &self.parts
    }

    /// `rk_L(U) = Σ dim U_i`.
    pub fn rank_l(&self) -> usize {
        self.parts.iter().map(|p| p.dim()).sum()
    }

    pub fn dim_vector(&self) -> Vec<usize> {
        self.parts.iter().map(|p| p.dim()).collect()
    }

    /// Whether `self ≤ other` componentwise.
    pub fn leq(&self, other: &SubspaceTuple, f: &Field) -> bool {
        self.parts.len() == other.parts.len() && self.parts.iter().zip(&other.parts).all(|(u, v)| v.contains(u, f))
    }

    pub fn orthogonal_complement(&self, f: &Field) -> SubspaceTuple {
        SubspaceTuple {
            parts: self.parts.iter().map(|p| p.orthogonal_complement(f)).collect(),
        }
    }

    pub(crate) fn check(&self, profile: &Profile) -> Result<()> {
        if self.parts.len() != profile.t()
            || self
                .parts
                .iter()
                .zip(profile.blocks())
                .any(|(u, &(n, _))| u.ambient_dim() != n)
        {
            return Err(Error::ProfileMismatch("subspace tuple shape".into()));
        }
        Ok(())
    }
}

/// The Möbius function of the product lattice.
pub fn mobius(u: &SubspaceTuple, v: &SubspaceTuple, f: &Field) -> Result<BigInt> {
    if !u.leq(v, f) {
        return Err(Error::NotComparable);
    }
    let q = f.q() as u64;
    let mut out = BigInt::one();
    for (a, b) in u.parts.iter().zip(&v.parts) {
        let d = (b.dim() - a.dim()) as u64;
        out *= BigInt::from(q_power(q, d * d.saturating_sub(1) / 2));
        if d % 2 == 1 {
            out = -out;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exec::Limits;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn gf(q: u64) -> Field {
        Field::with_order(q).unwrap()
    }

    #[test]
    fn normalization() {
        let f = gf(2);
        let p = Profile::new(&f, &[(1, 1), (2, 2)]).unwrap();
        assert_eq!(p.blocks(), &[(2, 2), (1, 1)]);
        assert_eq!(p.perm(), &[1, 0]);
        assert_eq!(p.original_blocks(), vec![(1, 1), (2, 2)]);
        let p = Profile::parse(&f, "2x2,1x2x7,1x1x5").unwrap();
        assert_eq!((p.t(), p.big_n()), (13, 14));
        assert_eq!(p.q_sum(), BigRational::new(9.into(), 2.into()));
        assert_eq!(p.to_text(), "2x2,1x2x7,1x1x5");
        assert_eq!(Profile::new(&f, &[(1, 0)]).unwrap_err(), Error::BadBlock { n: 1, m: 0 });
        assert!(Profile::new(&f, &[(3, 2)]).is_err());
    }

    #[test]
    fn weights() {
        let f = gf(2);
        let p = Profile::parse(&f, "2x2,2x2").unwrap();
        let x = MatrixTuple::new(vec![Mat::identity(2), Mat::identity(2)]);
        assert_eq!(x.srk(&f), 4);
        assert_eq!(MatrixTuple::zero(&p).srk(&f), 0);
        assert_eq!(MatrixTuple::zero(&p).support(&f), SubspaceTuple::zero(&p));
        assert_eq!(x.support(&f), SubspaceTuple::full(&p));
    }

    #[test]
    fn trace_product_examples() {
        let f = gf(2);
        let p = Profile::parse(&f, "2x2").unwrap();
        let x = MatrixTuple::new(vec![Mat::identity(2)]);
        assert_eq!(x.trace_product(&x, &f).unwrap(), 0);
        assert_eq!(x.trace_product(&MatrixTuple::zero(&p), &f).unwrap(), 0);
        let y = MatrixTuple::new(vec![Mat::identity(1)]);
        assert!(x.trace_product(&y, &f).is_err());
    }

    #[test]
    fn embed_identity() {
        let x = MatrixTuple::new(vec![Mat::identity(1), Mat::identity(1)]);
        assert_eq!(x.blockdiag_embed(), Mat::identity(2));
    }

    #[test]
    fn sphere_volumes() {
        let f = gf(2);
        let p = Profile::parse(&f, "2x2").unwrap();
        assert_eq!(sphere_volume(&p, 0), BigUint::one());
        assert_eq!(sphere_volume(&p, 1), BigUint::from(10u32));
        let p = Profile::parse(&f, "2x2,2x2,1x2,1x2").unwrap();
        assert_eq!(sphere_volume(&p, 1), BigUint::from(25u32));
    }

    fn brute_volumes(p: &Profile) -> Vec<u64> {
        let f = p.field();
        let q = f.q() as u64;
        let total = q.pow(p.dim() as u32);
        let mut counts = vec![0u64; p.big_n() + 1];
        for idx in 0..total {
            let mut x = idx;
            let flat: Vec<Elem> = (0..p.dim())
                .map(|_| {
                    let d = (x % q) as Elem;
                    x /= q;
                    d
                })
                .collect();
            counts[MatrixTuple::from_flat(p, &flat).unwrap().srk(f)] += 1;
        }
        counts
    }

    #[test]
    fn sphere_volume_matches_brute_force() {
        let f = gf(2);
        for text in ["2x2", "1x2,1x1", "2x2,1x2", "2x3", "1x3,1x2,1x1", "2x2,2x2,1x2"] {
            let p = Profile::parse(&f, text).unwrap();
            let counts = brute_volumes(&p);
            let mut acc = 0;
            for (r, c) in counts.iter().enumerate() {
                acc += c;
                assert_eq!(sphere_volume(&p, r), BigUint::from(acc), "{text} r={r}");
            }
        }
        let f = gf(3);
        let p = Profile::parse(&f, "2x2,1x2").unwrap();
        let counts = brute_volumes(&p);
        assert_eq!(counts.iter().sum::<u64>(), 729);
        assert_eq!(
            p.weight_counts(),
            counts.iter().map(|&c| BigUint::from(c)).collect::<Vec<_>>()
        );
    }

    #[test]
    fn mobius_properties() {
        let f = gf(2);
        let p = Profile::parse(&f, "2x2").unwrap();
        let lim = Limits::default();
        let all: Vec<SubspaceTuple> = (0..=2)
            .flat_map(|r| enumerate_lattice_rank(&p, r, &lim).unwrap())
            .collect();
        assert_eq!(all.len(), 5);
        for v in &all {
            assert_eq!(mobius(v, v, &f).unwrap(), BigInt::one());
            if v.rank_l() == 0 {
                continue;
            }
            let s: BigInt = all
                .iter()
                .filter(|u| u.leq(v, &f))
                .map(|u| mobius(u, v, &f).unwrap())
                .sum();
            assert_eq!(s, BigInt::zero());
        }
        let z = SubspaceTuple::zero(&p);
        let line = all.iter().find(|u| u.rank_l() == 1).unwrap();
        assert_eq!(mobius(&z, line, &f).unwrap(), BigInt::from(-1));
        assert_eq!(mobius(line, &z, &f), Err(Error::NotComparable));
    }

    #[test]
    fn random_tuples_are_consistent() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for (q, text) in [(2, "2x2,1x2,1x1"), (3, "2x3,2x2"), (4, "2x2,1x1")] {
            let f = gf(q);
            let p = Profile::parse(&f, text).unwrap();
            for _ in 0..500 {
                let x = MatrixTuple::random(&p, &mut rng);
                let y = MatrixTuple::random(&p, &mut rng);
                let z = MatrixTuple::random(&p, &mut rng);
                assert_eq!(x.support(&f).rank_l(), x.srk(&f));
                assert_eq!(x.blockdiag_embed().rank(&f), x.srk(&f));
                assert_eq!(x.trace_product(&y, &f).unwrap(), y.trace_product(&x, &f).unwrap());
                let psi = x.blockdiag_embed().mul(&y.blockdiag_embed().transpose(), &f).unwrap();
                let tr = (0..psi.rows()).fold(0, |a, i| f.add(a, psi.get(i, i)));
                assert_eq!(tr, x.trace_product(&y, &f).unwrap());
                let neg = |t: &MatrixTuple| t.scale(f.neg(1), &f);
                let dxy = x.add(&neg(&y), &f).unwrap().srk(&f);
                let dyz = y.add(&neg(&z), &f).unwrap().srk(&f);
                let dxz = x.add(&neg(&z), &f).unwrap().srk(&f);
                assert!(dxz <= dxy + dyz);
                assert_eq!(dxy == 0, x == y);
            }
        }
    }

    proptest! {
        #[test]
        fn flatten_round_trip(data in proptest::collection::vec(0u32..3, 12)) {
            let f = gf(3);
            let p = Profile::parse(&f, "1x2,2x3,2x2").unwrap();
            let x = MatrixTuple::from_flat(&p, &data).unwrap();
            prop_assert_eq!(x.flatten(), data);
            prop_assert!(p.check_tuple(&x).is_ok());
        }
    }
}
