use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::Mat;
use crate::error::{Error, Result};
use crate::exec::Limits;
use crate::field::{Elem, Field};

/// A subspace of `F_q^n`, stored by its RREF basis without zero rows.
///
/// The representation is canonical, so equality and hashing are those of
/// the subspace itself.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Subspace {
    n: usize,
    basis: Mat,
}

impl Subspace {
    pub fn zero(n: usize) -> Subspace {
        Subspace {
            n,
            basis: Mat::zeros(0, n),
        }
    }

    pub fn full(n: usize) -> Subspace {
        Subspace {
            n,
            basis: Mat::identity(n),
        }
    }

    /// The row space of `gens`.
    pub fn from_generators(gens: &Mat, f: &Field) -> Subspace {
        let n = gens.cols();
        let r = gens.rref(f);
        let keep: Vec<usize> = (0..r.rank).collect();
        Subspace {
            n,
            basis: r.matrix.select_rows(&keep),
        }
    }

    pub fn from_vectors(n: usize, vectors: &[Vec<Elem>], f: &Field) -> Subspace {
        if vectors.is_empty() {
            return Subspace::zero(n);
        }
        Subspace::from_generators(&Mat::from_rows(vectors), f)
    }

    /// Wraps a matrix already in RREF with no zero rows.
    pub(crate) fn from_rref_unchecked(n: usize, basis: Mat) -> Subspace {
        debug_assert_eq!(basis.cols(), n);
        Subspace { n, basis }
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &Mat {
        &self.basis
    }

    pub fn pivots(&self) -> Vec<usize> {
        (0..self.dim())
            .map(|r| {
                self.basis
                    .row(r)
                    .iter()
                    .position(|&x| x != 0)
                    .expect("basis rows are nonzero")
            })
            .collect()
    }

    fn check(&self, other: &Subspace) -> Result<()> {
        if self.n != other.n {
            return Err(Error::AmbientMismatch(self.n, other.n));
        }
        Ok(())
    }

    /// Reduces `v` against the basis; the result is zero iff `v` lies in the space.
    pub fn reduce(&self, v: &[Elem], f: &Field) -> Vec<Elem> {
        let mut v = v.to_vec();
        for (r, p) in self.pivots().into_iter().enumerate() {
            let c = v[p];
            if c == 0 {
                continue;
            }
            let neg = f.neg(c);
            for (x, &b) in v.iter_mut().zip(self.basis.row(r)) {
                *x = f.add(*x, f.mul(neg, b));
            }
        }
        v
    }

    pub fn contains_vector(&self, v: &[Elem], f: &Field) -> bool {
        v.len() == self.n && self.reduce(v, f).iter().all(|&x| x == 0)
    }

    /// Whether `other ⊆ self`.
    pub fn contains(&self, other: &Subspace, f: &Field) -> bool {
        self.n == other.n
            && other.dim() <= self.dim()
            && (0..other.dim()).all(|r| self.contains_vector(other.basis.row(r), f))
    }

    pub fn sum(&self, other: &Subspace, f: &Field) -> Result<Subspace> {
        self.check(other)?;
        let stacked = self.basis.stack(&other.basis)?;
        Ok(Subspace::from_generators(&stacked, f))
    }

    pub fn intersect(&self, other: &Subspace, f: &Field) -> Result<Subspace> {
        self.check(other)?;
        let perp = self.orthogonal_complement(f).sum(&other.orthogonal_complement(f), f)?;
        Ok(perp.orthogonal_complement(f))
    }

    /// The orthogonal space under the standard bilinear form.
    pub fn orthogonal_complement(&self, f: &Field) -> Subspace {
        if self.dim() == 0 {
            return Subspace::full(self.n);
        }
        self.basis.nullspace(f)
    }
}

/// `q^e` as a big natural.
pub fn q_power(q: u64, e: u64) -> BigUint {
    num_traits::pow::pow(BigUint::from(q), e as usize)
}

/// Number of `k`-dimensional subspaces of `F_q^n`; zero when `k > n`.
pub fn gaussian_binomial(n: u64, k: u64, q: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..k {
        num *= q_power(q, n - i) - 1u32;
        den *= q_power(q, i + 1) - 1u32;
    }
    num / den
}

/// All `k`-dimensional subspaces of `F_q^n`.
///
/// Subspaces are generated pattern by pattern: pivot column sets in
/// lexicographic order, and within a pattern the free entries (row-major)
/// run as an odometer with the last entry fastest.
pub fn enumerate_subspaces(n: usize, k: usize, f: &Field, limits: &Limits) -> Result<Subspaces> {
    let count = gaussian_binomial(n as u64, k as u64, f.q() as u64);
    limits.check_subspaces(&count)?;
    Ok(Subspaces::new(n, k, f.clone()))
}

/// Iterator returned by [`enumerate_subspaces`].
#[derive(Clone)]
pub struct Subspaces {
    field: Field,
    n: usize,
    k: usize,
    pivots: Vec<usize>,
    free: Vec<(usize, usize)>,
    digits: Vec<Elem>,
    done: bool,
}

impl Subspaces {
    fn new(n: usize, k: usize, field: Field) -> Subspaces {
        let mut it = Subspaces {
            field,
            n,
            k,
            pivots: (0..k).collect(),
            free: Vec::new(),
            digits: Vec::new(),
            done: k > n,
        };
        if !it.done {
            it.reset_pattern();
        }
        it
    }

    fn reset_pattern(&mut self) {
        self.free.clear();
        for (r, &p) in self.pivots.iter().enumerate() {
            for c in p + 1..self.n {
                if !self.pivots.contains(&c) {
                    self.free.push((r, c));
                }
            }
        }
        self.digits = vec![0; self.free.len()];
    }

    fn next_pattern(&mut self) -> bool {
        let (n, k) = (self.n, self.k);
        let Some(i) = (0..k).rev().find(|&i| self.pivots[i] < n - k + i) else {
            return false;
        };
        self.pivots[i] += 1;
        for j in i + 1..k {
            self.pivots[j] = self.pivots[j - 1] + 1;
        }
        self.reset_pattern();
        true
    }

    fn advance(&mut self) {
        let q = self.field.q();
        for d in self.digits.iter_mut().rev() {
            *d += 1;
            if *d < q {
                return;
            }
            *d = 0;
        }
        if !self.next_pattern() {
            self.done = true;
        }
    }
}

impl Iterator for Subspaces {
    type Item = Subspace;

    fn next(&mut self) -> Option<Subspace> {
        if self.done {
            return None;
        }
        let mut basis = Mat::zeros(self.k, self.n);
        for (r, &p) in self.pivots.iter().enumerate() {
            basis.set(r, p, 1);
        }
        for (&(r, c), &v) in self.free.iter().zip(&self.digits) {
            basis.set(r, c, v);
        }
        self.advance();
        Some(Subspace::from_rref_unchecked(self.n, basis))
    }
}
