//! MSRD certification, the tail/head systematic form, and the row/column
//! shortening and row puncturing that preserve the MSRD property.
//!
//! Block indices are 0-based and refer to the normalized profile.

use num_bigint::BigUint;

use super::LinearCode;
use crate::ambient::{MatrixTuple, Profile};
use crate::error::{Error, Result};
use crate::exec::Limits;
use crate::field::Field;
use crate::matq::{q_power, Mat};

/// Outcome of [`LinearCode::msrd_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MsrdWitness {
    pub is_msrd: bool,
    pub dim: usize,
    /// Minimum distance; `None` for the zero code.
    pub d: Option<usize>,
    /// Block index with `d - 1 = Σ_{i<j} n_i + delta`.
    pub j: usize,
    pub delta: usize,
    pub singleton_exponent: usize,
    pub singleton_value: BigUint,
}

/// A coordinate `(block, row, col)` of the ambient space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Position {
    pub block: usize,
    pub row: usize,
    pub col: usize,
}

/// Basis of an MSRD code that is the identity on its tail positions.
#[derive(Clone, Debug)]
pub struct SystematicForm {
    /// Row `i` of the basis has a one at `tail[i]` and zeros on the rest of the tail.
    pub basis: Vec<MatrixTuple>,
    pub tail: Vec<Position>,
    pub head: Vec<Position>,
    pub witness: MsrdWitness,
}

/// A code produced by an MSRD-preserving operation.
#[derive(Clone, Debug)]
pub struct Derived {
    pub code: LinearCode,
    pub expected_d: usize,
    /// `None` when certification exceeds the enumeration guard.
    pub witness: Option<MsrdWitness>,
}

/// `(j, delta)` with `d - 1 = Σ_{i<j} n_i + delta` and `0 <= delta < n_j`.
pub fn singleton_decomposition(profile: &Profile, d: usize) -> Result<(usize, usize)> {
    let big_n = profile.big_n();
    if d == 0 || d > big_n {
        return Err(Error::BadDistance { d, max: big_n });
    }
    let mut rest = d - 1;
    for (j, &(n, _)) in profile.blocks().iter().enumerate() {
        if rest < n {
            return Ok((j, rest));
        }
        rest -= n;
    }
    unreachable!("d <= N")
}

/// Exponent of the Singleton bound: `Σ_{i>=j} m_i n_i - m_j delta`.
pub fn singleton_exponent(profile: &Profile, d: usize) -> Result<(usize, usize, usize)> {
    let (j, delta) = singleton_decomposition(profile, d)?;
    let tail: usize = profile.blocks()[j..].iter().map(|&(n, m)| n * m).sum();
    Ok((j, delta, tail - profile.m(j) * delta))
}

fn tail_positions(profile: &Profile, j: usize, delta: usize) -> Vec<Position> {
    let mut out = Vec::new();
    for (block, &(n, m)) in profile.blocks().iter().enumerate().skip(j) {
        let rows = if block == j { n - delta } else { n };
        for row in 0..rows {
            for col in 0..m {
                out.push(Position { block, row, col });
            }
        }
    }
    out
}

fn flat_index(profile: &Profile, p: Position) -> usize {
    profile.offset(p.block) + p.row * profile.m(p.block) + p.col
}

/// Builds a code from per-generator block lists in the given block order,
/// renormalizing the profile.
fn from_blocks(field: &Field, shapes: &[(usize, usize)], rows: Vec<Vec<Mat>>) -> Result<LinearCode> {
    let profile = Profile::new(field, shapes)?;
    let gens: Vec<MatrixTuple> = rows
        .into_iter()
        .map(|blocks| MatrixTuple::new(profile.perm().iter().map(|&i| blocks[i].clone()).collect()))
        .collect();
    LinearCode::new(&profile, &gens)
}

impl LinearCode {
    /// Computes the distance and compares `|C|` with the Singleton bound.
    pub fn msrd_check(&self, limits: &Limits) -> Result<MsrdWitness> {
        if self.dim() == 0 {
            return Ok(MsrdWitness {
                is_msrd: true,
                dim: 0,
                d: None,
                j: 0,
                delta: 0,
                singleton_exponent: 0,
                singleton_value: BigUint::from(1u32),
            });
        }
        let d = self.minimum_distance(limits)?;
        let (j, delta, exp) = singleton_exponent(self.profile(), d)?;
        Ok(MsrdWitness {
            is_msrd: exp == self.dim(),
            dim: self.dim(),
            d: Some(d),
            j,
            delta,
            singleton_exponent: exp,
            singleton_value: q_power(self.profile().q(), exp as u64),
        })
    }

    /// The same code with blocks listed in `order` (`order[i]` is the current
    /// index of new block `i`). Column counts must stay non-increasing.
    pub fn with_block_order(&self, order: &[usize]) -> Result<LinearCode> {
        let t = self.profile().t();
        let mut seen = vec![false; t];
        if order.len() != t || order.iter().any(|&i| i >= t || std::mem::replace(&mut seen[i], true)) {
            return Err(Error::BadParameters(format!(
                "{order:?} is not a permutation of 0..{t}"
            )));
        }
        let shapes: Vec<(usize, usize)> = order.iter().map(|&i| self.profile().blocks()[i]).collect();
        if shapes.windows(2).any(|w| w[0].1 < w[1].1) {
            return Err(Error::BadParameters(
                "block reordering must keep column counts non-increasing".into(),
            ));
        }
        let profile = Profile::new(self.field(), &shapes)?;
        let gens = self
            .basis()
            .into_iter()
            .map(|x| {
                let b = x.into_blocks();
                MatrixTuple::new(order.iter().map(|&i| b[i].clone()).collect()).flatten()
            })
            .collect();
        Ok(LinearCode::with_rows(&profile, gens))
    }

    /// The basis that is the identity on `tail(C)`.
    pub fn systematic_form(&self, limits: &Limits) -> Result<SystematicForm> {
        if self.dim() == 0 {
            return Err(Error::TrivialCode);
        }
        let witness = self.msrd_check(limits)?;
        if !witness.is_msrd {
            return Err(Error::NotMsrd);
        }
        let profile = self.profile();
        let tail = tail_positions(profile, witness.j, witness.delta);
        let tail_idx: Vec<usize> = tail.iter().map(|&p| flat_index(profile, p)).collect();
        let mut is_tail = vec![false; profile.dim()];
        for &i in &tail_idx {
            is_tail[i] = true;
        }
        let head_idx: Vec<usize> = (0..profile.dim()).filter(|&i| !is_tail[i]).collect();
        let order: Vec<usize> = tail_idx.iter().chain(&head_idx).copied().collect();
        let g = self.generator_matrix().select_columns(&order);
        let r = g.rref(self.field());
        if r.pivots != (0..self.dim()).collect::<Vec<_>>() {
            return Err(Error::NotMsrd);
        }
        let mut basis = Vec::with_capacity(self.dim());
        for row in 0..self.dim() {
            let mut flat = vec![0; profile.dim()];
            for (c, &pos) in order.iter().enumerate() {
                flat[pos] = r.matrix.get(row, c);
            }
            basis.push(MatrixTuple::from_flat(profile, &flat)?);
        }
        let head = head_idx
            .iter()
            .map(|&i| {
                let block = (0..profile.t()).rfind(|&b| profile.offset(b) <= i).unwrap();
                let within = i - profile.offset(block);
                Position {
                    block,
                    row: within / profile.m(block),
                    col: within % profile.m(block),
                }
            })
            .collect();
        Ok(SystematicForm {
            basis,
            tail,
            head,
            witness,
        })
    }

    fn certify(code: LinearCode, expected_d: usize, limits: &Limits) -> Result<Derived> {
        let witness = match code.msrd_check(limits) {
            Ok(w) => Some(w),
            Err(Error::TooLarge { .. }) => None,
            Err(e) => return Err(e),
        };
        Ok(Derived {
            code,
            expected_d,
            witness,
        })
    }

    /// Drops the tail basis rows of row `row` (default 0) in block `s >= j`
    /// and deletes that row.
    pub fn msrd_shorten_row(&self, s: usize, row: Option<usize>, limits: &Limits) -> Result<Derived> {
        let sys = self.systematic_form(limits)?;
        let (j, delta) = (sys.witness.j, sys.witness.delta);
        let t = self.profile().t();
        if s < j || s >= t {
            return Err(Error::IndexOutOfTheoremRange {
                index: s,
                range: format!("{j}..={}", t - 1),
            });
        }
        let tail_rows = if s == j {
            self.profile().n(s) - delta
        } else {
            self.profile().n(s)
        };
        let a = row.unwrap_or(0);
        if a >= tail_rows {
            return Err(Error::IndexOutOfTheoremRange {
                index: a,
                range: format!("rows 0..{tail_rows} of block {s}"),
            });
        }
        let mut shapes = self.profile().blocks().to_vec();
        shapes[s].0 -= 1;
        let keep_block = shapes[s].0 > 0;
        let rows: Vec<Vec<Mat>> = sys
            .basis
            .iter()
            .zip(&sys.tail)
            .filter(|(_, p)| !(p.block == s && p.row == a))
            .map(|(x, _)| {
                let mut blocks = x.blocks().to_vec();
                let (n, _) = self.profile().blocks()[s];
                let keep: Vec<usize> = (0..n).filter(|&r| r != a).collect();
                blocks[s] = blocks[s].select_rows(&keep);
                if !keep_block {
                    blocks.remove(s);
                }
                blocks
            })
            .collect();
        if !keep_block {
            shapes.remove(s);
        }
        let code = from_blocks(self.field(), &shapes, rows)?;
        Self::certify(code, sys.witness.d.unwrap(), limits)
    }

    /// Drops the tail basis rows of column `col` (default 0) in block
    /// `s >= j + 1` and deletes that column. A block left with more rows than
    /// columns is transposed.
    pub fn msrd_shorten_col(&self, s: usize, col: Option<usize>, limits: &Limits) -> Result<Derived> {
        let sys = self.systematic_form(limits)?;
        let j = sys.witness.j;
        let t = self.profile().t();
        if s <= j || s >= t {
            return Err(Error::IndexOutOfTheoremRange {
                index: s,
                range: format!("{}..={}", j + 1, t - 1),
            });
        }
        let (n, m) = self.profile().blocks()[s];
        let b = col.unwrap_or(0);
        if b >= m {
            return Err(Error::IndexOutOfTheoremRange {
                index: b,
                range: format!("columns 0..{m} of block {s}"),
            });
        }
        let mut shapes = self.profile().blocks().to_vec();
        let drop_block = m == 1;
        let transpose = !drop_block && n > m - 1;
        shapes[s] = if transpose { (m - 1, n) } else { (n, m - 1) };
        let keep_cols: Vec<usize> = (0..m).filter(|&c| c != b).collect();
        let rows: Vec<Vec<Mat>> = sys
            .basis
            .iter()
            .zip(&sys.tail)
            .filter(|(_, p)| !(p.block == s && p.col == b))
            .map(|(x, _)| {
                let mut blocks = x.blocks().to_vec();
                let reduced = blocks[s].select_columns(&keep_cols);
                if drop_block {
                    blocks.remove(s);
                } else {
                    blocks[s] = if transpose { reduced.transpose() } else { reduced };
                }
                blocks
            })
            .collect();
        if drop_block {
            shapes.remove(s);
        }
        let code = from_blocks(self.field(), &shapes, rows)?;
        Self::certify(code, sys.witness.d.unwrap(), limits)
    }

    /// Deletes the last row of block `s` (`s <= j` if `delta > 0`, `s < j` otherwise).
    pub fn msrd_puncture_row(&self, s: usize, limits: &Limits) -> Result<Derived> {
        if self.dim() == 0 {
            return Err(Error::TrivialCode);
        }
        let w = self.msrd_check(limits)?;
        if !w.is_msrd {
            return Err(Error::NotMsrd);
        }
        let d = w.d.unwrap();
        if d < 2 {
            return Err(Error::HypothesisFailed("puncturing needs distance at least 2".into()));
        }
        let limit = if w.delta > 0 { w.j + 1 } else { w.j };
        if s >= limit {
            return Err(Error::IndexOutOfTheoremRange {
                index: s,
                range: if limit == 0 {
                    "empty".into()
                } else {
                    format!("0..={}", limit - 1)
                },
            });
        }
        let mut shapes = self.profile().blocks().to_vec();
        shapes[s].0 -= 1;
        let keep_block = shapes[s].0 > 0;
        let rows: Vec<Vec<Mat>> = self
            .basis()
            .into_iter()
            .map(|x| {
                let mut blocks = x.into_blocks();
                let n = blocks[s].rows();
                blocks[s] = blocks[s].select_rows(&(0..n - 1).collect::<Vec<_>>());
                if !keep_block {
                    blocks.remove(s);
                }
                blocks
            })
            .collect();
        if !keep_block {
            shapes.remove(s);
        }
        let code = from_blocks(self.field(), &shapes, rows)?;
        Self::certify(code, d - 1, limits)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(q: u64) -> Field {
        Field::with_order(q).unwrap()
    }

    #[test]
    fn decomposition() {
        let f = gf(2);
        let p = Profile::parse(&f, "2x2,1x2x7,1x1x5").unwrap();
        assert_eq!(singleton_decomposition(&p, 1).unwrap(), (0, 0));
        assert_eq!(singleton_decomposition(&p, 2).unwrap(), (0, 1));
        assert_eq!(singleton_decomposition(&p, 9).unwrap(), (7, 0));
        assert_eq!(singleton_exponent(&p, 9).unwrap().2, 7);
        assert_eq!(singleton_exponent(&p, 8).unwrap().2, 9);
        assert!(singleton_decomposition(&p, 15).is_err());
    }

    #[test]
    fn repetition_code_tail_is_last_block() {
        let f = gf(2);
        let p = Profile::parse(&f, "2x2,2x2,2x2").unwrap();
        // {(B, B, B)} with B in an MRD code of rank distance 2: d = N = 6.
        let mrd = [Mat::identity(2), Mat::from_vec(2, 2, vec![0, 1, 1, 1])];
        let gens: Vec<MatrixTuple> = mrd
            .iter()
            .map(|b| MatrixTuple::new(vec![b.clone(), b.clone(), b.clone()]))
            .collect();
        let c = LinearCode::new(&p, &gens).unwrap();
        let lim = Limits::default();
        let w = c.msrd_check(&lim).unwrap();
        assert!(w.is_msrd);
        assert_eq!((w.d, w.j, w.delta), (Some(6), 2, 1));
        let sys = c.systematic_form(&lim).unwrap();
        assert_eq!(
            sys.tail,
            vec![
                Position {
                    block: 2,
                    row: 0,
                    col: 0
                },
                Position {
                    block: 2,
                    row: 0,
                    col: 1
                }
            ]
        );
        assert_eq!(sys.head.len(), 10);
        for (x, p) in sys.basis.iter().zip(&sys.tail) {
            for q in &sys.tail {
                let v = x.blocks()[q.block].get(q.row, q.col);
                assert_eq!(v, u32::from(p == q));
            }
        }
    }

    #[test]
    fn zero_code_counts_as_msrd() {
        let f = gf(3);
        let p = Profile::parse(&f, "2x2").unwrap();
        let w = LinearCode::zero(&p).msrd_check(&Limits::default()).unwrap();
        assert!(w.is_msrd);
        assert_eq!(w.d, None);
    }

    #[test]
    fn reorder_requires_non_increasing_columns() {
        let f = gf(2);
        let p = Profile::parse(&f, "2x2,1x2,1x1").unwrap();
        let c = LinearCode::full(&p);
        assert!(c.with_block_order(&[1, 0, 2]).is_ok());
        assert!(c.with_block_order(&[2, 0, 1]).is_err());
        assert!(c.with_block_order(&[0, 0, 1]).is_err());
    }
}
