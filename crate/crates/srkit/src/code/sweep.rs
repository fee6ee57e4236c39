//! Exhaustive codeword sweeps.
//!
//! The code is viewed as an F_p-space with basis `x^j g` (`g` a generator,
//! `j < k` where `q = p^k`). Codewords are visited in modular p-ary Gray
//! order: step `s` adds basis vector `w_r`, `r` the number of trailing zero
//! base-p digits of `s`. Each step costs one vector addition. The top digits
//! of the step counter split the sweep into independent shards.

use crate::ambient::Profile;
use crate::error::Result;
use crate::exec::{fold_range, Limits};
use crate::field::{Elem, Field};

use super::LinearCode;

/// Per-block rank evaluation on flattened tuples.
#[derive(Clone)]
pub(crate) struct Ranker {
    field: Field,
    blocks: Vec<(usize, usize, usize)>,
    binary: bool,
    masks: Vec<u64>,
    scratch: Vec<Elem>,
}

impl Ranker {
    pub(crate) fn new(profile: &Profile) -> Ranker {
        let blocks: Vec<(usize, usize, usize)> = profile
            .blocks()
            .iter()
            .enumerate()
            .map(|(i, &(n, m))| (n, m, profile.offset(i)))
            .collect();
        let max_n = blocks.iter().map(|b| b.0).max().unwrap_or(0);
        let max_len = blocks.iter().map(|b| b.0 * b.1).max().unwrap_or(0);
        Ranker {
            field: profile.field().clone(),
            binary: profile.q() == 2 && profile.max_m() <= 64,
            blocks,
            masks: vec![0; max_n],
            scratch: vec![0; max_len],
        }
    }

    pub(crate) fn block_rank(&mut self, flat: &[Elem], i: usize) -> usize {
        let (n, m, o) = self.blocks[i];
        let x = &flat[o..o + n * m];
        if self.binary {
            let masks = &mut self.masks[..n];
            for (r, mask) in masks.iter_mut().enumerate() {
                *mask = x[r * m..(r + 1) * m]
                    .iter()
                    .enumerate()
                    .fold(0u64, |acc, (c, &v)| acc | ((v as u64) << c));
            }
            return gf2_rank(masks);
        }
        let a = &mut self.scratch[..n * m];
        a.copy_from_slice(x);
        generic_rank(a, n, m, &self.field)
    }

    pub(crate) fn srk(&mut self, flat: &[Elem]) -> usize {
        (0..self.blocks.len()).map(|i| self.block_rank(flat, i)).sum()
    }

    /// The sum-rank weight, or any value `>= bound` once that is certain.
    pub(crate) fn srk_bounded(&mut self, flat: &[Elem], bound: usize) -> usize {
        let mut acc = 0;
        for i in 0..self.blocks.len() {
            acc += self.block_rank(flat, i);
            if acc >= bound {
                return acc;
            }
        }
        acc
    }
}

fn gf2_rank(rows: &mut [u64]) -> usize {
    let mut rank = 0;
    for i in 0..rows.len() {
        let pivot = rows[i];
        if pivot == 0 {
            continue;
        }
        rank += 1;
        let low = pivot & pivot.wrapping_neg();
        for r in rows[i + 1..].iter_mut() {
            if *r & low != 0 {
                *r ^= pivot;
            }
        }
    }
    rank
}

fn generic_rank(a: &mut [Elem], n: usize, m: usize, f: &Field) -> usize {
    let mut rank = 0;
    for c in 0..m {
        if rank == n {
            break;
        }
        let Some(p) = (rank..n).find(|&r| a[r * m + c] != 0) else {
            continue;
        };
        if p != rank {
            for j in c..m {
                a.swap(p * m + j, rank * m + j);
            }
        }
        let inv = f.inv(a[rank * m + c]).expect("nonzero pivot");
        for r in rank + 1..n {
            let v = a[r * m + c];
            if v == 0 {
                continue;
            }
            let factor = f.neg(f.mul(v, inv));
            for j in c..m {
                a[r * m + j] = f.add(a[r * m + j], f.mul(factor, a[rank * m + j]));
            }
        }
        rank += 1;
    }
    rank
}

/// Prepared F_p-basis and shard layout for a code.
pub(crate) struct Sweep {
    dim: usize,
    field: Field,
    p: u64,
    /// F_p basis vectors, flattened.
    basis: Vec<Vec<Elem>>,
    shard_digits: u32,
    inner_digits: u32,
}

impl Sweep {
    pub(crate) fn new(code: &LinearCode, limits: &Limits) -> Result<Sweep> {
        limits.check_codewords(&code.cardinality())?;
        let f = code.field().clone();
        let p = f.p();
        let x = if f.k() == 1 { 1 } else { p };
        let mut basis = Vec::new();
        for g in code.flat_generators() {
            let mut cur = g.clone();
            for _ in 0..f.k() {
                basis.push(cur.clone());
                cur = cur.iter().map(|&v| f.mul(v, x)).collect();
            }
        }
        let digits = basis.len() as u32;
        let mut shard_digits = 0;
        if limits.exec.is_parallel() {
            while shard_digits < digits && (p as u64).pow(shard_digits) < 256 {
                shard_digits += 1;
            }
        }
        Ok(Sweep {
            dim: code.profile().dim(),
            field: f,
            p: p as u64,
            basis,
            shard_digits,
            inner_digits: digits - shard_digits,
        })
    }

    /// Gray codeword at counter value `s`.
    fn start_vector(&self, s: u64) -> Vec<Elem> {
        let f = &self.field;
        let mut v = vec![0; self.dim];
        let digits = self.basis.len();
        let digit = |s: u64, i: usize| {
            if i >= digits {
                0
            } else {
                (s / self.p.pow(i as u32)) % self.p
            }
        };
        for (i, w) in self.basis.iter().enumerate() {
            let g = (digit(s, i) + self.p - digit(s, i + 1)) % self.p;
            if g == 0 {
                continue;
            }
            for (a, &b) in v.iter_mut().zip(w) {
                *a = f.add(*a, f.mul(g as Elem, b));
            }
        }
        v
    }

    /// Visits every codeword once; `visit` sees the flattened tuple.
    pub(crate) fn run<A, I, V, M>(&self, limits: &Limits, init: I, visit: V, merge: M) -> A
    where
        A: Send,
        I: Fn() -> A + Sync + Send,
        V: Fn(&mut A, &[Elem]) + Sync + Send,
        M: Fn(A, A) -> A + Sync + Send,
    {
        let shards = self.p.pow(self.shard_digits);
        let inner = self.p.pow(self.inner_digits);
        let f = &self.field;
        fold_range(
            0..shards,
            limits.exec,
            &init,
            |mut acc, shard| {
                let s0 = shard * inner;
                let mut v = self.start_vector(s0);
                visit(&mut acc, &v);
                for s in s0 + 1..s0 + inner {
                    let mut r = 0;
                    let mut t = s;
                    while t % self.p == 0 {
                        t /= self.p;
                        r += 1;
                    }
                    let w = &self.basis[r];
                    if self.p == 2 {
                        for (a, &b) in v.iter_mut().zip(w) {
                            *a ^= b;
                        }
                    } else {
                        for (a, &b) in v.iter_mut().zip(w) {
                            *a = f.add(*a, b);
                        }
                    }
                    visit(&mut acc, &v);
                }
                acc
            },
            merge,
        )
    }
}
