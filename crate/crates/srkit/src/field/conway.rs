//! Default moduli: Conway polynomials computed from their defining
//! properties, and smallest irreducibles beyond the Conway range.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use super::poly::{self, Poly};

fn cache() -> &'static Mutex<HashMap<(u32, u32), Poly>> {
    static CACHE: OnceLock<Mutex<HashMap<(u32, u32), Poly>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn smallest_primitive_root(p: u32) -> u32 {
    if p == 2 {
        return 1;
    }
    let factors = poly::prime_factors(p as u64 - 1);
    (2..p)
        .find(|&g| {
            factors.iter().all(|&r| {
                let mut acc = 1u64;
                let mut b = g as u64;
                let mut e = (p as u64 - 1) / r;
                while e > 0 {
                    if e & 1 == 1 {
                        acc = acc * b % p as u64;
                    }
                    b = b * b % p as u64;
                    e >>= 1;
                }
                acc != 1
            })
        })
        .expect("every prime has a primitive root")
}

/// Conway polynomial `C_{p,n}`, low degree first.
///
/// Candidates are visited in the standard Conway order: writing the monic
/// polynomial as `x^n - a_{n-1} x^{n-1} + a_{n-2} x^{n-2} - ...`, the digit
/// string `(a_{n-1}, ..., a_0)` is compared lexicographically.
pub(crate) fn conway(p: u32, n: u32) -> Poly {
    if let Some(f) = cache().lock().unwrap().get(&(p, n)) {
        return f.clone();
    }
    let f = if n == 1 {
        let g = smallest_primitive_root(p);
        vec![(p - g) % p, 1]
    } else {
        search_conway(p, n)
    };
    cache().lock().unwrap().insert((p, n), f.clone());
    f
}

fn candidate(p: u32, n: u32, mut idx: u64, alternate: bool) -> Poly {
    let mut f = vec![0u32; n as usize + 1];
    f[n as usize] = 1;
    // idx digits, most significant first, are a_{n-1}, ..., a_0.
    for i in 0..n as usize {
        let a = (idx % p as u64) as u32;
        idx /= p as u64;
        let negate = alternate && (n as usize - i) % 2 == 1;
        f[i] = if negate { (p - a) % p } else { a };
    }
    f
}

fn search_conway(p: u32, n: u32) -> Poly {
    let total = (p as u64).pow(n);
    let divisors: Vec<u32> = (1..n).filter(|d| n.is_multiple_of(*d)).collect();
    let subs: Vec<(u32, Poly)> = divisors.iter().map(|&d| (d, conway(p, d))).collect();
    let order = total - 1;
    for idx in 0..total {
        let f = candidate(p, n, idx, true);
        if f[0] == 0 || !poly::is_irreducible(&f, p) || !poly::x_is_primitive(&f, p) {
            continue;
        }
        let compatible = subs.iter().all(|(d, g)| {
            let e = order / ((p as u64).pow(*d) - 1);
            let y = poly::pow_mod(&[0, 1], e, &f, p);
            poly::compose_mod(g, &y, &f, p).is_empty()
        });
        if compatible {
            return f;
        }
    }
    unreachable!("Conway polynomials exist for every (p, n)")
}

/// Lexicographically smallest monic irreducible of degree `n`,
/// digits `(c_{n-1}, ..., c_0)` compared most significant first.
pub(crate) fn smallest_irreducible(p: u32, n: u32) -> Poly {
    let total = (p as u64).pow(n);
    (0..total)
        .map(|idx| candidate(p, n, idx, false))
        .find(|f| poly::is_irreducible(f, p))
        .expect("irreducibles exist in every degree")
}
