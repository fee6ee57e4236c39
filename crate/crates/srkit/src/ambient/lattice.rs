use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::{Profile, SubspaceTuple};
use crate::error::{Error, Result};
use crate::exec::Limits;
use crate::matq::{enumerate_subspaces, gaussian_binomial, Subspace};

/// All `u` with `0 ≤ u_i ≤ ns[i]` and `Σ u_i = total`, in lexicographic order.
pub fn dim_vectors(ns: &[usize], total: usize) -> Vec<Vec<usize>> {
    fn rec(ns: &[usize], left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == ns.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let rest: usize = ns[cur.len() + 1..].iter().sum();
        let lo = left.saturating_sub(rest);
        for u in lo..=ns[cur.len()].min(left) {
            cur.push(u);
            rec(ns, left - u, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(ns, total, &mut Vec::new(), &mut out);
    out
}

/// Iterator over subspace tuples with a fixed dimension vector.
///
/// The last block varies fastest; each block runs through
/// [`enumerate_subspaces`] order.
#[derive(Clone)]
pub struct Lattice {
    lists: Vec<Arc<Vec<Subspace>>>,
    idx: Vec<usize>,
    done: bool,
}

impl Iterator for Lattice {
    type Item = SubspaceTuple;

    fn next(&mut self) -> Option<SubspaceTuple> {
        if self.done {
            return None;
        }
        let parts = self.lists.iter().zip(&self.idx).map(|(l, &i)| l[i].clone()).collect();
        self.done = true;
        for b in (0..self.idx.len()).rev() {
            self.idx[b] += 1;
            if self.idx[b] < self.lists[b].len() {
                self.done = false;
                break;
            }
            self.idx[b] = 0;
        }
        Some(SubspaceTuple::new(parts))
    }
}

struct Cache<'a> {
    profile: &'a Profile,
    limits: &'a Limits,
    lists: HashMap<(usize, usize), Arc<Vec<Subspace>>>,
}

impl Cache<'_> {
    fn list(&mut self, n: usize, k: usize) -> Result<Arc<Vec<Subspace>>> {
        if let Some(l) = self.lists.get(&(n, k)) {
            return Ok(l.clone());
        }
        let l: Arc<Vec<Subspace>> = Arc::new(enumerate_subspaces(n, k, self.profile.field(), self.limits)?.collect());
        self.lists.insert((n, k), l.clone());
        Ok(l)
    }

    fn lattice(&mut self, dims: &[usize]) -> Result<Lattice> {
        let lists = self
            .profile
            .blocks()
            .iter()
            .zip(dims)
            .map(|(&(n, _), &k)| self.list(n, k))
            .collect::<Result<Vec<_>>>()?;
        let done = lists.iter().any(|l| l.is_empty());
        Ok(Lattice {
            idx: vec![0; lists.len()],
            lists,
            done,
        })
    }
}

fn lattice_count(profile: &Profile, dims: &[usize]) -> BigUint {
    profile
        .blocks()
        .iter()
        .zip(dims)
        .map(|(&(n, _), &k)| gaussian_binomial(n as u64, k as u64, profile.q()))
        .fold(BigUint::one(), |a, b| a * b)
}

/// All `U` in the lattice with `dim U = dims`.
pub fn enumerate_lattice(profile: &Profile, dims: &[usize], limits: &Limits) -> Result<Lattice> {
    if dims.len() != profile.t() {
        return Err(Error::ProfileMismatch(format!(
            "dimension vector has {} entries for {} blocks",
            dims.len(),
            profile.t()
        )));
    }
    limits.check_subspaces(&lattice_count(profile, dims))?;
    Cache {
        profile,
        limits,
        lists: HashMap::new(),
    }
    .lattice(dims)
}

/// All `U` in the lattice with `rk_L(U) = r`, grouped by dimension vector in lexicographic order.
pub fn enumerate_lattice_rank(
    profile: &Profile,
    r: usize,
    limits: &Limits,
) -> Result<std::iter::Flatten<std::vec::IntoIter<Lattice>>> {
    let vectors = dim_vectors(&profile.ns(), r);
    let total = vectors
        .iter()
        .map(|u| lattice_count(profile, u))
        .fold(BigUint::zero(), |a, b| a + b);
    limits.check_subspaces(&total)?;
    let mut cache = Cache {
        profile,
        limits,
        lists: HashMap::new(),
    };
    let lattices = vectors.iter().map(|u| cache.lattice(u)).collect::<Result<Vec<_>>>()?;
    Ok(lattices.into_iter().flatten())
}
