//! F_q-linear sum-rank metric codes.
//!
//! A code keeps the generators it was built from (dependent ones dropped)
//! as flattened rows: blocks in normalized order, each block row-major.

mod msrd;
mod src_io;
pub(crate) mod sweep;

use num_bigint::BigUint;
use rand::Rng;

use crate::ambient::{MatrixTuple, Profile, SubspaceTuple};
use crate::error::{Error, Result};
use crate::exec::Limits;
use crate::field::{Elem, Field};
use crate::matq::{q_power, Mat, Subspace};

pub use msrd::{singleton_decomposition, singleton_exponent, Derived, MsrdWitness, Position, SystematicForm};
pub use src_io::{parse_src, read_src, write_src};

use sweep::{Ranker, Sweep};

#[derive(Clone, Debug)]
pub struct LinearCode {
    profile: Profile,
    gens: Vec<Vec<Elem>>,
}

impl PartialEq for LinearCode {
    /// Equality as subspaces of the same ambient space.
    fn eq(&self, other: &LinearCode) -> bool {
        self.profile == other.profile && self.row_space() == other.row_space()
    }
}

impl Eq for LinearCode {}

impl LinearCode {
    /// The span of `generators`; dependent generators are skipped.
    pub fn new(profile: &Profile, generators: &[MatrixTuple]) -> Result<LinearCode> {
        let rows = generators
            .iter()
            .map(|g| {
                profile.check_tuple(g)?;
                for b in g.blocks() {
                    b.check_field(profile.field())?;
                }
                Ok(g.flatten())
            })
            .collect::<Result<Vec<_>>>()?;
        LinearCode::from_rows(profile, rows)
    }

    /// The span of flattened vectors.
    pub fn from_rows(profile: &Profile, rows: Vec<Vec<Elem>>) -> Result<LinearCode> {
        let f = profile.field();
        let mut gens: Vec<Vec<Elem>> = Vec::new();
        let mut span = Subspace::zero(profile.dim());
        for r in rows {
            if r.len() != profile.dim() {
                return Err(Error::AmbientMismatch(r.len(), profile.dim()));
            }
            if r.iter().any(|&x| x >= f.q()) {
                return Err(Error::MixedFields);
            }
            if !span.contains_vector(&r, f) {
                span = span.sum(&Subspace::from_vectors(profile.dim(), std::slice::from_ref(&r), f), f)?;
                gens.push(r);
            }
        }
        Ok(LinearCode {
            profile: profile.clone(),
            gens,
        })
    }

    pub fn zero(profile: &Profile) -> LinearCode {
        LinearCode {
            profile: profile.clone(),
            gens: Vec::new(),
        }
    }

    /// The whole ambient space.
    pub fn full(profile: &Profile) -> LinearCode {
        let n = profile.dim();
        LinearCode {
            profile: profile.clone(),
            gens: (0..n)
                .map(|i| {
                    let mut v = vec![0; n];
                    v[i] = 1;
                    v
                })
                .collect(),
        }
    }

    /// A uniformly drawn `k`-dimensional code (`k` capped at `dim Π`).
    pub fn random<R: Rng + ?Sized>(profile: &Profile, k: usize, rng: &mut R) -> LinearCode {
        let f = profile.field();
        let n = profile.dim();
        let k = k.min(n);
        let mut span = Subspace::zero(n);
        let mut gens = Vec::new();
        while gens.len() < k {
            let v: Vec<Elem> = (0..n).map(|_| rng.gen_range(0..f.q())).collect();
            if !span.contains_vector(&v, f) {
                span = span
                    .sum(&Subspace::from_vectors(n, std::slice::from_ref(&v), f), f)
                    .expect("same ambient");
                gens.push(v);
            }
        }
        LinearCode {
            profile: profile.clone(),
            gens,
        }
    }

    pub fn profile(&self) -> &Profile {
        &self.profile
    }

    pub fn field(&self) -> &Field {
        self.profile.field()
    }

    /// Dimension over GF(q).
    pub fn dim(&self) -> usize {
        self.gens.len()
    }

    /// `|C| = q^k`.
    pub fn cardinality(&self) -> BigUint {
        q_power(self.profile.q(), self.dim() as u64)
    }

    pub(crate) fn flat_generators(&self) -> &[Vec<Elem>] {
        &self.gens
    }

    pub fn basis(&self) -> Vec<MatrixTuple> {
        self.gens
            .iter()
            .map(|g| MatrixTuple::from_flat(&self.profile, g).expect("stored with profile length"))
            .collect()
    }

    /// The `k × dim Π` generator matrix.
    pub fn generator_matrix(&self) -> Mat {
        Mat::from_vec(self.dim(), self.profile.dim(), self.gens.concat())
    }

    pub fn row_space(&self) -> Subspace {
        if self.gens.is_empty() {
            return Subspace::zero(self.profile.dim());
        }
        self.generator_matrix().rowspace(self.field())
    }

    pub fn contains(&self, x: &MatrixTuple) -> bool {
        self.profile.check_tuple(x).is_ok() && self.row_space().contains_vector(&x.flatten(), self.field())
    }

    /// `Σ c_i g_i`.
    pub fn encode(&self, coeffs: &[Elem]) -> MatrixTuple {
        let f = self.field();
        let mut v = vec![0; self.profile.dim()];
        for (&c, g) in coeffs.iter().zip(&self.gens) {
            if c == 0 {
                continue;
            }
            for (a, &b) in v.iter_mut().zip(g) {
                *a = f.add(*a, f.mul(c, b));
            }
        }
        MatrixTuple::from_flat(&self.profile, &v).expect("profile length")
    }

    /// All codewords, coefficient vectors in lexicographic order (first coefficient slowest).
    pub fn codewords(&self, limits: &Limits) -> Result<Codewords<'_>> {
        limits.check_codewords(&self.cardinality())?;
        Ok(Codewords {
            code: self,
            coeffs: vec![0; self.dim()],
            done: false,
        })
    }

    /// Minimum sum-rank weight of a nonzero codeword.
    pub fn minimum_distance(&self, limits: &Limits) -> Result<usize> {
        if self.dim() == 0 {
            return Err(Error::TrivialCode);
        }
        let sweep = Sweep::new(self, limits)?;
        let n = self.profile.big_n();
        let ranker = Ranker::new(&self.profile);
        let (_, best) = sweep.run(
            limits,
            || (ranker.clone(), n + 1),
            |(r, best), v| {
                if v.iter().any(|&x| x != 0) {
                    let w = r.srk_bounded(v, *best);
                    if w < *best {
                        *best = w;
                    }
                }
            },
            |a, b| if a.1 <= b.1 { a } else { b },
        );
        Ok(best)
    }

    /// Counts of codewords by sum-rank weight, indices `0..=N`.
    pub fn weight_distribution(&self, limits: &Limits) -> Result<Vec<u64>> {
        let sweep = Sweep::new(self, limits)?;
        let n = self.profile.big_n();
        let ranker = Ranker::new(&self.profile);
        let (_, counts) = sweep.run(
            limits,
            || (ranker.clone(), vec![0u64; n + 1]),
            |(r, counts), v| counts[r.srk(v)] += 1,
            |mut a, b| {
                for (x, y) in a.1.iter_mut().zip(b.1) {
                    *x += y;
                }
                a
            },
        );
        Ok(counts)
    }

    /// `C^⊥` under the trace product.
    pub fn dual(&self) -> LinearCode {
        let n = self.profile.dim();
        let kernel = if self.gens.is_empty() {
            Subspace::full(n)
        } else {
            self.generator_matrix().nullspace(self.field())
        };
        let b = kernel.basis();
        LinearCode {
            profile: self.profile.clone(),
            gens: (0..b.rows()).map(|r| b.row(r).to_vec()).collect(),
        }
    }

    /// `C(U) = {X ∈ C : σ(X) ⊆ U}`.
    pub fn shorten(&self, u: &SubspaceTuple) -> Result<LinearCode> {
        u.check(&self.profile)?;
        let f = self.field();
        let k = self.dim();
        // One column of constraints per (block, h ∈ basis of U_i^⊥, column b).
        let mut cons: Vec<Vec<Elem>> = Vec::new();
        for (i, part) in u.parts().iter().enumerate() {
            let (n, m) = self.profile.blocks()[i];
            let o = self.profile.offset(i);
            let perp = part.orthogonal_complement(f);
            for hr in 0..perp.dim() {
                let h = perp.basis().row(hr);
                for b in 0..m {
                    let col: Vec<Elem> = self
                        .gens
                        .iter()
                        .map(|g| (0..n).fold(0, |acc, a| f.add(acc, f.mul(h[a], g[o + a * m + b]))))
                        .collect();
                    if col.iter().any(|&x| x != 0) {
                        cons.push(col);
                    }
                }
            }
        }
        if cons.is_empty() || k == 0 {
            return Ok(self.clone());
        }
        // Coefficient vectors c with Σ_j c_j col_j = 0 for every constraint column.
        let a = Mat::from_rows(&cons);
        let kernel = a.nullspace(f);
        let rows = (0..kernel.dim())
            .map(|r| self.encode(kernel.basis().row(r)).flatten())
            .collect();
        LinearCode::from_rows(&self.profile, rows)
    }

    /// Checks `|C(U)| · q^{Σ m_i (n_i - u_i)} = |C| · |C^⊥(U^⊥)|` with both
    /// shortenings counted by enumeration.
    pub fn duality_shorten_check(&self, u: &SubspaceTuple, limits: &Limits) -> Result<bool> {
        u.check(&self.profile)?;
        let f = self.field();
        let count = |code: &LinearCode, target: &SubspaceTuple| -> Result<u64> {
            let mut c = 0;
            for x in code.codewords(limits)? {
                if x.support(f).leq(target, f) {
                    c += 1;
                }
            }
            Ok(c)
        };
        let dual = self.dual();
        let lhs_count = count(self, u)?;
        let rhs_count = count(&dual, &u.orthogonal_complement(f))?;
        let exp: usize = self
            .profile
            .blocks()
            .iter()
            .zip(u.dim_vector())
            .map(|(&(n, m), ui)| m * (n - ui))
            .sum();
        let q = self.profile.q();
        Ok(BigUint::from(lhs_count) * q_power(q, exp as u64) == self.cardinality() * rhs_count)
    }

    /// Replaces the profile by an equal one (used after block reorderings).
    pub(crate) fn with_rows(profile: &Profile, gens: Vec<Vec<Elem>>) -> LinearCode {
        LinearCode {
            profile: profile.clone(),
            gens,
        }
    }
}

/// Iterator returned by [`LinearCode::codewords`].
pub struct Codewords<'a> {
    code: &'a LinearCode,
    coeffs: Vec<Elem>,
    done: bool,
}

impl Iterator for Codewords<'_> {
    type Item = MatrixTuple;

    fn next(&mut self) -> Option<MatrixTuple> {
        if self.done {
            return None;
        }
        let x = self.code.encode(&self.coeffs);
        let q = self.code.field().q();
        self.done = true;
        for c in self.coeffs.iter_mut().rev() {
            *c += 1;
            if *c < q {
                self.done = false;
                break;
            }
            *c = 0;
        }
        Some(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ambient::enumerate_lattice;
    use crate::exec::Exec;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn gf(q: u64) -> Field {
        Field::with_order(q).unwrap()
    }

    #[test]
    fn duplicates_collapse() {
        let f = gf(2);
        let p = Profile::parse(&f, "2x2,1x1").unwrap();
        let x = MatrixTuple::new(vec![Mat::identity(2), Mat::identity(1)]);
        let c = LinearCode::new(&p, &[x.clone(), x.clone(), x.scale(1, &f)]).unwrap();
        assert_eq!(c.dim(), 1);
        let bad = MatrixTuple::new(vec![Mat::identity(2)]);
        assert!(matches!(LinearCode::new(&p, &[bad]), Err(Error::ProfileMismatch(_))));
    }

    #[test]
    fn codeword_stream() {
        let f = gf(3);
        let p = Profile::parse(&f, "2x2,1x2").unwrap();
        let lim = Limits::default();
        assert_eq!(LinearCode::zero(&p).codewords(&lim).unwrap().count(), 1);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let c = LinearCode::random(&p, 3, &mut rng);
        let words: Vec<_> = c.codewords(&lim).unwrap().collect();
        assert_eq!(words.len(), 27);
        assert!(words[0].is_zero());
        assert_eq!(words[1], c.encode(&[0, 0, 1]));
        assert_eq!(LinearCode::zero(&p).minimum_distance(&lim), Err(Error::TrivialCode));
        let tight = Limits::default().with_max_codewords(10);
        assert!(matches!(c.codewords(&tight), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn dual_dimensions() {
        let f = gf(2);
        let p = Profile::parse(&f, "2x2,2x2").unwrap();
        let x = MatrixTuple::new(vec![Mat::identity(2), Mat::zeros(2, 2)]);
        let c = LinearCode::new(&p, &[x]).unwrap();
        assert_eq!(c.dual().dim(), 7);
        assert_eq!(LinearCode::zero(&p).dual(), LinearCode::full(&p));
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for q in [2, 3, 4] {
            let f = gf(q);
            let p = Profile::parse(&f, "2x3,1x2,1x1").unwrap();
            for _ in 0..20 {
                let k = rng.gen_range(0..=p.dim());
                let c = LinearCode::random(&p, k, &mut rng);
                let d = c.dual();
                assert_eq!(c.dim() + d.dim(), p.dim());
                assert_eq!(d.dual(), c);
                for x in c.basis() {
                    for y in d.basis() {
                        assert_eq!(x.trace_product(&y, &f).unwrap(), 0);
                    }
                }
            }
        }
    }

    #[test]
    fn distance_is_independent_of_execution_mode() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for q in [2, 3, 4] {
            let f = gf(q);
            let p = Profile::parse(&f, "2x2,2x2,1x2").unwrap();
            for k in 1..5 {
                let c = LinearCode::random(&p, k, &mut rng);
                let a = c.minimum_distance(&Limits::default()).unwrap();
                let b = c.minimum_distance(&Limits::sequential()).unwrap();
                let brute = c
                    .codewords(&Limits::default())
                    .unwrap()
                    .filter(|x| !x.is_zero())
                    .map(|x| x.srk(&f))
                    .min()
                    .unwrap();
                assert_eq!((a, b), (brute, brute));
                let w1 = c
                    .weight_distribution(&Limits::default().with_exec(Exec::Parallel))
                    .unwrap();
                let w2 = c.weight_distribution(&Limits::sequential()).unwrap();
                assert_eq!(w1, w2);
                assert_eq!(w1.iter().sum::<u64>(), q.pow(k as u32));
            }
        }
    }

    #[test]
    fn shortening_matches_filter() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let lim = Limits::default();
        for q in [2, 3] {
            let f = gf(q);
            let p = Profile::parse(&f, "2x2,1x2,1x1").unwrap();
            for _ in 0..50 {
                let k = rng.gen_range(1..=5);
                let c = LinearCode::random(&p, k, &mut rng);
                let dims: Vec<usize> = p.ns().iter().map(|&n| rng.gen_range(0..=n)).collect();
                let all: Vec<SubspaceTuple> = enumerate_lattice(&p, &dims, &lim).unwrap().collect();
                let u = &all[rng.gen_range(0..all.len())];
                let short = c.shorten(u).unwrap();
                let brute = c.codewords(&lim).unwrap().filter(|x| x.support(&f).leq(u, &f)).count();
                assert_eq!(BigUint::from(brute), short.cardinality());
                assert!(c.duality_shorten_check(u, &lim).unwrap());
            }
            let c = LinearCode::random(&p, 3, &mut rng);
            assert_eq!(c.shorten(&SubspaceTuple::full(&p)).unwrap(), c);
            assert_eq!(c.shorten(&SubspaceTuple::zero(&p)).unwrap().dim(), 0);
        }
    }

    #[test]
    fn ambient_shortening_is_orthogonal() {
        // Π(U^⊥) = Π(U)^⊥
        let f = gf(2);
        let p = Profile::parse(&f, "2x2,1x2").unwrap();
        let lim = Limits::default();
        let full = LinearCode::full(&p);
        for u in enumerate_lattice(&p, &[1, 1], &lim).unwrap() {
            let a = full.shorten(&u.orthogonal_complement(&f)).unwrap();
            let b = full.shorten(&u).unwrap().dual();
            assert_eq!(a, b);
            let exp: usize = p.blocks().iter().zip(u.dim_vector()).map(|(&(_, m), d)| m * d).sum();
            assert_eq!(full.shorten(&u).unwrap().dim(), exp);
        }
    }
}
