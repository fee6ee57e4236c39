//! Execution policy and enumeration guards.
//!
//! Every exhaustive sweep in the crate goes through [`fold_range`], which
//! runs on the rayon pool when the `parallel` feature is enabled and the
//! caller asks for [`Exec::Parallel`], and on the current thread otherwise.
//! Results never depend on the choice.

use std::ops::Range;

use num_bigint::BigUint;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Exec {
    #[default]
    Parallel,
    Sequential,
}

impl Exec {
    /// True when work will actually be spread over threads.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }
}

/// Guards for exhaustive enumeration.
#[derive(Debug, Clone)]
pub struct Limits {
    /// Largest code cardinality `q^k` that may be swept.
    pub max_codewords: u128,
    /// Largest Gaussian binomial for a single subspace enumeration.
    pub max_subspaces: u128,
    /// Largest number of distinct support keys kept in memory.
    pub max_keys: usize,
    pub exec: Exec,
}

pub const DEFAULT_MAX_CODEWORDS: u128 = 1 << 24;
pub const DEFAULT_MAX_SUBSPACES: u128 = 1 << 28;
pub const DEFAULT_MAX_KEYS: usize = 10_000_000;

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_codewords: DEFAULT_MAX_CODEWORDS,
            max_subspaces: DEFAULT_MAX_SUBSPACES,
            max_keys: DEFAULT_MAX_KEYS,
            exec: Exec::default(),
        }
    }
}

impl Limits {
    pub fn sequential() -> Self {
        Limits {
            exec: Exec::Sequential,
            ..Limits::default()
        }
    }

    pub fn with_exec(mut self, exec: Exec) -> Self {
        self.exec = exec;
        self
    }

    pub fn with_max_codewords(mut self, max: u128) -> Self {
        self.max_codewords = max;
        self
    }

    pub(crate) fn check_codewords(&self, size: &BigUint) -> Result<()> {
        if *size > BigUint::from(self.max_codewords) {
            return Err(Error::TooLarge {
                what: "codeword enumeration",
                size: size.to_string(),
                limit: self.max_codewords.to_string(),
            });
        }
        Ok(())
    }

    pub(crate) fn check_subspaces(&self, size: &BigUint) -> Result<()> {
        if *size > BigUint::from(self.max_subspaces) {
            return Err(Error::TooLarge {
                what: "subspace enumeration",
                size: size.to_string(),
                limit: self.max_subspaces.to_string(),
            });
        }
        Ok(())
    }
}

/// Folds `range` into per-worker accumulators and merges them.
pub(crate) fn fold_range<A, I, F, M>(range: Range<u64>, exec: Exec, init: I, fold: F, merge: M) -> A
where
    A: Send,
    I: Fn() -> A + Sync + Send,
    F: Fn(A, u64) -> A + Sync + Send,
    M: Fn(A, A) -> A + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec == Exec::Parallel {
        use rayon::prelude::*;
        return range.into_par_iter().fold(&init, &fold).reduce(&init, &merge);
    }
    let _ = (&merge, exec);
    range.fold(init(), fold)
}

/// First index (in slice order) whose item satisfies `pred`, with the mapped value.
pub(crate) fn find_first<T, R, F>(items: &[T], exec: Exec, f: F) -> Option<(usize, R)>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> Option<R> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec == Exec::Parallel {
        use rayon::prelude::*;
        return items
            .par_iter()
            .enumerate()
            .filter_map(|(i, x)| f(x).map(|r| (i, r)))
            .find_first(|_| true);
    }
    let _ = exec;
    items.iter().enumerate().find_map(|(i, x)| f(x).map(|r| (i, r)))
}
