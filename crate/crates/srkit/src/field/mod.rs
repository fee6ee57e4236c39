//! Finite fields GF(p^k).
//!
//! An element is stored as the base-p integer of its coefficient vector in
//! the polynomial basis `1, x, ..., x^{k-1}`, so `c_0 + c_1 p + ...`. This
//! code is what files and command lines show.

mod conway;
mod poly;
mod tower;

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

pub use tower::Tower;

/// An element code in `0..q`.
pub type Elem = u32;

/// Largest supported field order.
pub const MAX_ORDER: u64 = 1 << 20;
/// Conway moduli and log tables are used up to this order.
pub const TABLE_ORDER: u64 = 1 << 16;
const ADD_TABLE_ORDER: u32 = 256;

#[derive(Clone)]
pub struct Field {
    inner: Arc<Inner>,
}

struct Inner {
    p: u32,
    k: u32,
    q: u32,
    /// Monic modulus, low degree first.
    modulus: Vec<u32>,
    generator: Option<Elem>,
    exp: Vec<Elem>,
    log: Vec<u32>,
    add: Vec<Elem>,
    neg: Vec<Elem>,
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits a prime power into `(p, k)`.
pub fn prime_power(q: u64) -> Result<(u32, u32)> {
    if q < 2 {
        return Err(Error::NotPrimePower(q));
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d)).unwrap();
    let mut k = 0;
    let mut r = q;
    while r.is_multiple_of(p) {
        r /= p;
        k += 1;
    }
    if r != 1 {
        return Err(Error::NotPrimePower(q));
    }
    Ok((p as u32, k))
}

impl Field {
    /// GF(p^k). `modulus` lists `c_k, ..., c_0` (highest degree first) and
    /// defaults to `x` for prime fields, the Conway polynomial for
    /// `p^k <= 2^16` and the smallest irreducible beyond.
    pub fn new(p: u32, k: u32, modulus: Option<&[u32]>) -> Result<Field> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if k == 0 {
            return Err(Error::DegreeMismatch {
                expected: 0,
                detail: "extension degree must be at least 1".into(),
            });
        }
        let order = (p as u64).checked_pow(k).unwrap_or(u64::MAX);
        if order > MAX_ORDER {
            return Err(Error::FieldTooLarge(order));
        }
        let modulus = match modulus {
            Some(m) => {
                if m.len() != k as usize + 1 {
                    return Err(Error::DegreeMismatch {
                        expected: k,
                        detail: format!("{} coefficients given", m.len()),
                    });
                }
                if m[0] != 1 {
                    return Err(Error::DegreeMismatch {
                        expected: k,
                        detail: "leading coefficient must be 1".into(),
                    });
                }
                if let Some(&c) = m.iter().find(|&&c| c >= p) {
                    return Err(Error::DegreeMismatch {
                        expected: k,
                        detail: format!("coefficient {c} is not reduced mod {p}"),
                    });
                }
                let low: Vec<u32> = m.iter().rev().copied().collect();
                if !poly::is_irreducible(&low, p) {
                    return Err(Error::ReducibleModulus(p));
                }
                low
            }
            None if k == 1 => vec![0, 1],
            None if order <= TABLE_ORDER => conway::conway(p, k),
            None => conway::smallest_irreducible(p, k),
        };
        Ok(Field::build(p, k, order as u32, modulus))
    }

    /// The prime field GF(p).
    pub fn prime(p: u32) -> Result<Field> {
        Field::new(p, 1, None)
    }

    /// GF(q) with the default modulus.
    pub fn with_order(q: u64) -> Result<Field> {
        let (p, k) = prime_power(q)?;
        Field::new(p, k, None)
    }

    fn build(p: u32, k: u32, q: u32, modulus: Vec<u32>) -> Field {
        let mut inner = Inner {
            p,
            k,
            q,
            modulus,
            generator: None,
            exp: Vec::new(),
            log: Vec::new(),
            add: Vec::new(),
            neg: Vec::new(),
        };
        if p != 2 && q <= ADD_TABLE_ORDER {
            let mut add = vec![0; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    add[(a * q + b) as usize] = inner.add_digits(a, b);
                }
            }
            inner.add = add;
            inner.neg = (0..q).map(|a| inner.neg_digits(a)).collect();
        }
        if q as u64 <= TABLE_ORDER {
            let g = inner.find_generator();
            let n = (q - 1) as usize;
            let mut exp = vec![0; 2 * n];
            let mut log = vec![0; q as usize];
            let mut cur = 1;
            for i in 0..n {
                exp[i] = cur;
                exp[i + n] = cur;
                log[cur as usize] = i as u32;
                cur = inner.mul_school(cur, g);
            }
            inner.exp = exp;
            inner.log = log;
            inner.generator = Some(g);
        }
        Field { inner: Arc::new(inner) }
    }

    pub fn p(&self) -> u32 {
        self.inner.p
    }

    pub fn k(&self) -> u32 {
        self.inner.k
    }

    pub fn q(&self) -> u32 {
        self.inner.q
    }

    /// Modulus coefficients `c_k, ..., c_0`.
    pub fn modulus(&self) -> Vec<u32> {
        self.inner.modulus.iter().rev().copied().collect()
    }

    pub fn is_prime_field(&self) -> bool {
        self.inner.k == 1
    }

    /// All element codes in increasing order.
    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.inner.q
    }

    /// A generator of the multiplicative group.
    pub fn primitive_element(&self) -> Elem {
        match self.inner.generator {
            Some(g) => g,
            None => self.inner.find_generator(),
        }
    }

    /// Coefficients `c_0, ..., c_{k-1}` of an element.
    pub fn coeffs(&self, a: Elem) -> Vec<u32> {
        let p = self.inner.p;
        let mut a = a;
        (0..self.inner.k)
            .map(|_| {
                let c = a % p;
                a /= p;
                c
            })
            .collect()
    }

    pub fn from_coeffs(&self, c: &[u32]) -> Elem {
        c.iter()
            .rev()
            .fold(0, |acc, &ci| acc * self.inner.p + ci % self.inner.p)
    }

    /// Reduces an integer into the prime subfield.
    pub fn from_int(&self, n: i64) -> Elem {
        n.rem_euclid(self.inner.p as i64) as Elem
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let f = &*self.inner;
        if f.p == 2 {
            a ^ b
        } else if !f.add.is_empty() {
            f.add[(a * f.q + b) as usize]
        } else {
            f.add_digits(a, b)
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        let f = &*self.inner;
        if f.p == 2 {
            a
        } else if !f.neg.is_empty() {
            f.neg[a as usize]
        } else {
            f.neg_digits(a)
        }
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        let f = &*self.inner;
        if a == 0 || b == 0 {
            return 0;
        }
        if f.exp.is_empty() {
            return f.mul_school(a, b);
        }
        f.exp[(f.log[a as usize] + f.log[b as usize]) as usize]
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        let f = &*self.inner;
        if f.exp.is_empty() {
            return Ok(self.pow(a, f.q as u64 - 2));
        }
        let n = f.q - 1;
        Ok(f.exp[((n - f.log[a as usize]) % n) as usize])
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let f = &*self.inner;
        let n = (f.q - 1) as u64;
        if !f.exp.is_empty() {
            let idx = (f.log[a as usize] as u64 * (e % n)) % n;
            return f.exp[idx as usize];
        }
        let mut result = 1;
        let mut base = a;
        let mut e = e % n;
        if e == 0 {
            return 1;
        }
        while e > 0 {
            if e & 1 == 1 {
                result = f.mul_school(result, base);
            }
            base = f.mul_school(base, base);
            e >>= 1;
        }
        result
    }

    /// `a^(p^i)`.
    pub fn frobenius(&self, a: Elem, i: u32) -> Elem {
        let mut r = a;
        for _ in 0..(i % self.inner.k) {
            r = self.pow(r, self.inner.p as u64);
        }
        r
    }

    /// Parses the text form `q=p^k;mod=c_k,...,c_0`.
    pub fn parse(text: &str) -> Result<Field> {
        let bad = |m: &str| Error::Parse {
            line: 1,
            msg: format!("field spec: {m}"),
        };
        let (left, right) = text.trim().split_once(';').ok_or_else(|| bad("missing ';'"))?;
        let pk = left.trim().strip_prefix("q=").ok_or_else(|| bad("expected q="))?;
        let (p, k) = pk.split_once('^').ok_or_else(|| bad("expected p^k"))?;
        let p: u32 = p.parse().map_err(|_| bad("bad p"))?;
        let k: u32 = k.parse().map_err(|_| bad("bad k"))?;
        let coeffs = right.trim().strip_prefix("mod=").ok_or_else(|| bad("expected mod="))?;
        let coeffs = parse_coeff_list(coeffs).ok_or_else(|| bad("bad modulus"))?;
        Field::new(p, k, Some(&coeffs))
    }

    /// `c_k,...,c_0` as used in text forms.
    pub fn modulus_text(&self) -> String {
        self.modulus()
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

pub(crate) fn parse_coeff_list(s: &str) -> Option<Vec<u32>> {
    s.split(',').map(|c| c.trim().parse().ok()).collect()
}

impl Inner {
    fn add_digits(&self, mut a: Elem, mut b: Elem) -> Elem {
        let p = self.p;
        let mut out = 0;
        let mut w = 1;
        while a > 0 || b > 0 {
            out += ((a % p + b % p) % p) * w;
            w *= p;
            a /= p;
            b /= p;
        }
        out
    }

    fn neg_digits(&self, mut a: Elem) -> Elem {
        let p = self.p;
        let mut out = 0;
        let mut w = 1;
        while a > 0 {
            out += ((p - a % p) % p) * w;
            w *= p;
            a /= p;
        }
        out
    }

    fn mul_school(&self, a: Elem, b: Elem) -> Elem {
        let p = self.p as u64;
        let k = self.k as usize;
        let digits = |mut x: Elem| {
            let mut d = vec![0u64; k];
            for di in d.iter_mut() {
                *di = x as u64 % p;
                x /= self.p;
            }
            d
        };
        let (da, db) = (digits(a), digits(b));
        let mut prod = vec![0u64; 2 * k - 1];
        for i in 0..k {
            if da[i] == 0 {
                continue;
            }
            for j in 0..k {
                prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
            }
        }
        for deg in (k..2 * k - 1).rev() {
            let c = prod[deg];
            if c == 0 {
                continue;
            }
            prod[deg] = 0;
            for i in 0..k {
                let s = c * self.modulus[i] as u64 % p;
                prod[deg - k + i] = (prod[deg - k + i] + p - s) % p;
            }
        }
        prod[..k].iter().rev().fold(0u64, |acc, &c| acc * p + c) as Elem
    }

    fn find_generator(&self) -> Elem {
        if self.q == 2 {
            return 1;
        }
        let n = (self.q - 1) as u64;
        let factors = poly::prime_factors(n);
        let pow = |a: Elem, mut e: u64| {
            let mut r = 1;
            let mut b = a;
            while e > 0 {
                if e & 1 == 1 {
                    r = self.mul_school(r, b);
                }
                b = self.mul_school(b, b);
                e >>= 1;
            }
            r
        };
        (2..self.q)
            .find(|&g| factors.iter().all(|&r| pow(g, n / r) != 1))
            .expect("multiplicative group is cyclic")
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Field) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.p == other.inner.p
                && self.inner.k == other.inner.k
                && self.inner.modulus == other.inner.modulus)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q={}^{};mod={}", self.inner.p, self.inner.k, self.modulus_text())
    }
}
