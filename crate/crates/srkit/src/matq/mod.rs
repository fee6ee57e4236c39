//! Dense matrices over GF(q).
//!
//! Matrices hold element codes only; every operation that needs arithmetic
//! takes the field explicitly.

mod subspace;

use std::fmt;

use crate::error::{parse_err, Error, Result};
use crate::field::{Elem, Field};

pub use subspace::{enumerate_subspaces, gaussian_binomial, q_power, Subspace, Subspaces};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

/// Result of row reduction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: Mat,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Mat {
        Mat {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Mat {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Builds a matrix from row-major data.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<Elem>) -> Mat {
        assert_eq!(data.len(), rows * cols, "data length must be rows*cols");
        Mat { rows, cols, data }
    }

    pub fn from_rows(rows: &[Vec<Elem>]) -> Mat {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Mat {
            rows: rows.len(),
            cols,
            data: rows.concat(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[Elem] {
        &self.data
    }

    pub fn into_data(self) -> Vec<Elem> {
        self.data
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Elem {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Elem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Elem> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    /// Checks every entry is a valid code for `field`.
    pub fn check_field(&self, field: &Field) -> Result<()> {
        if self.data.iter().any(|&x| x >= field.q()) {
            return Err(Error::MixedFields);
        }
        Ok(())
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c);
            }
        }
        t
    }

    pub fn add(&self, other: &Mat, f: &Field) -> Result<Mat> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::AmbientMismatch(self.data.len(), other.data.len()));
        }
        Ok(Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect(),
        })
    }

    pub fn scale(&self, s: Elem, f: &Field) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| f.mul(s, a)).collect(),
        }
    }

    pub fn mul(&self, other: &Mat, f: &Field) -> Result<Mat> {
        if self.cols != other.rows {
            return Err(Error::AmbientMismatch(self.cols, other.rows));
        }
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = f.add(out.get(i, j), f.mul(a, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    /// Stacks `other` below `self`.
    pub fn stack(&self, other: &Mat) -> Result<Mat> {
        if self.rows > 0 && other.rows > 0 && self.cols != other.cols {
            return Err(Error::AmbientMismatch(self.cols, other.cols));
        }
        let cols = if self.rows > 0 { self.cols } else { other.cols };
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Mat {
            rows: self.rows + other.rows,
            cols,
            data,
        })
    }

    pub fn select_columns(&self, cols: &[usize]) -> Mat {
        let mut out = Mat::zeros(self.rows, cols.len());
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                out.set(r, j, self.get(r, c));
            }
        }
        out
    }

    pub fn select_rows(&self, rows: &[usize]) -> Mat {
        let mut data = Vec::with_capacity(rows.len() * self.cols);
        for &r in rows {
            data.extend_from_slice(self.row(r));
        }
        Mat {
            rows: rows.len(),
            cols: self.cols,
            data,
        }
    }

    /// Reduced row-echelon form. Zero rows are kept at the bottom.
    pub fn rref(&self, f: &Field) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            m.swap_rows(p, r);
            let inv = f.inv(m.get(r, c)).expect("pivot is nonzero");
            if inv != 1 {
                for j in c..m.cols {
                    let v = f.mul(m.get(r, j), inv);
                    m.set(r, j, v);
                }
            }
            for i in 0..m.rows {
                let factor = m.get(i, c);
                if i == r || factor == 0 {
                    continue;
                }
                let neg = f.neg(factor);
                for j in c..m.cols {
                    let v = f.add(m.get(i, j), f.mul(neg, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref {
            matrix: m,
            rank: r,
            pivots,
        }
    }

    pub fn rank(&self, f: &Field) -> usize {
        self.rref(f).rank
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Span of the rows, in `F^cols`.
    pub fn rowspace(&self, f: &Field) -> Subspace {
        Subspace::from_generators(self, f)
    }

    /// Span of the columns, in `F^rows`.
    pub fn colspace(&self, f: &Field) -> Subspace {
        Subspace::from_generators(&self.transpose(), f)
    }

    /// Right kernel `{x : M x = 0}` in `F^cols`.
    pub fn nullspace(&self, f: &Field) -> Subspace {
        let Rref {
            matrix, rank, pivots, ..
        } = self.rref(f);
        let n = self.cols;
        let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Mat::zeros(free.len(), n);
        for (row, &fc) in free.iter().enumerate() {
            basis.set(row, fc, 1);
            for i in 0..rank {
                basis.set(row, pivots[i], f.neg(matrix.get(i, fc)));
            }
        }
        Subspace::from_generators(&basis, f)
    }

    /// Parses `1 0;0 1`: rows split on `;`, entries on whitespace.
    pub fn parse(text: &str, f: &Field) -> Result<Mat> {
        Mat::parse_at(text, f, 1)
    }

    pub(crate) fn parse_at(text: &str, f: &Field, line: usize) -> Result<Mat> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(Mat::zeros(0, 0));
        }
        let mut rows = Vec::new();
        for part in text.split(';') {
            let row: Vec<Elem> = part
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<Elem>()
                        .map_err(|_| parse_err(line, format!("bad entry '{tok}'")))
                })
                .collect::<Result<_>>()?;
            if let Some(&bad) = row.iter().find(|&&x| x >= f.q()) {
                return Err(parse_err(line, format!("entry {bad} is not in GF({})", f.q())));
            }
            rows.push(row);
        }
        let cols = rows[0].len();
        if cols == 0 || rows.iter().any(|r| r.len() != cols) {
            return Err(parse_err(line, "rows have different lengths"));
        }
        Ok(Mat::from_rows(&rows))
    }
}

impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            if r > 0 {
                f.write_str(";")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(q: u64) -> Field {
        Field::with_order(q).unwrap()
    }

    #[test]
    fn rref_examples() {
        let f = gf(2);
        let r = Mat::identity(2).rref(&f);
        assert_eq!((r.matrix, r.rank), (Mat::identity(2), 2));
        let r = Mat::zeros(2, 3).rref(&f);
        assert_eq!(r.rank, 0);
        assert!(r.matrix.is_zero());
        let r = Mat::parse("1 1;1 1", &f).unwrap().rref(&f);
        assert_eq!(r.matrix, Mat::parse("1 1;0 0", &f).unwrap());
        assert_eq!((r.rank, r.pivots), (1, vec![0]));
    }

    #[test]
    fn colspace_examples() {
        let f = gf(2);
        assert_eq!(Mat::identity(3).colspace(&f), Subspace::full(3));
        assert_eq!(Mat::zeros(3, 2).colspace(&f), Subspace::zero(3));
        let s = Mat::parse("1 0;1 0", &f).unwrap().colspace(&f);
        assert_eq!(s.dim(), 1);
        assert_eq!(s.basis(), &Mat::parse("1 1", &f).unwrap());
    }

    #[test]
    fn nullspace_kills_rows() {
        let f = gf(3);
        let m = Mat::parse("1 2 0 1;0 1 1 2", &f).unwrap();
        let k = m.nullspace(&f);
        assert_eq!(k.dim(), 2);
        let prod = m.mul(&k.basis().transpose(), &f).unwrap();
        assert!(prod.is_zero());
    }

    #[test]
    fn parse_and_print() {
        let f = gf(5);
        let m = Mat::parse("1 4 0;3 2 1", &f).unwrap();
        assert_eq!(m.to_string(), "1 4 0;3 2 1");
        assert!(Mat::parse("1 5", &f).is_err());
        assert!(Mat::parse("1 2;3", &f).is_err());
    }

    #[test]
    fn multiplication() {
        let f = gf(4);
        let a = Mat::parse("1 2;3 1", &f).unwrap();
        assert_eq!(a.mul(&Mat::identity(2), &f).unwrap(), a);
        assert!(a.mul(&Mat::zeros(3, 1), &f).is_err());
    }
}
