//! Dense polynomials over a prime field, coefficients stored low degree first.

pub(crate) type Poly = Vec<u32>;

fn mulmod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

fn inv_mod(a: u32, p: u32) -> u32 {
    let mut r = 1u32;
    let mut b = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, b, p);
        }
        b = mulmod(b, b, p);
        e >>= 1;
    }
    r
}

pub(crate) fn trim(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub(crate) fn sub(a: &[u32], b: &[u32], p: u32) -> Poly {
    let n = a.len().max(b.len());
    let mut out = vec![0; n];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *o = (x + p - y) % p;
    }
    trim(out)
}

pub(crate) fn rem(a: &[u32], f: &[u32], p: u32) -> Poly {
    let mut r = trim(a.to_vec());
    let f = trim(f.to_vec());
    let df = f.len() - 1;
    let lead_inv = inv_mod(f[df], p);
    while r.len() > df {
        let top = r.len() - 1;
        let c = mulmod(r[top], lead_inv, p);
        if c != 0 {
            let shift = top - df;
            for (i, &fi) in f.iter().enumerate() {
                let s = mulmod(c, fi, p);
                r[shift + i] = (r[shift + i] + p - s) % p;
            }
        }
        r.pop();
        r = trim(r);
    }
    r
}

pub(crate) fn mul_mod(a: &[u32], b: &[u32], f: &[u32], p: u32) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    let out: Poly = out.into_iter().map(|v| v as u32).collect();
    rem(&out, f, p)
}

pub(crate) fn pow_mod(base: &[u32], mut e: u64, f: &[u32], p: u32) -> Poly {
    let mut result = vec![1];
    let mut b = rem(base, f, p);
    while e > 0 {
        if e & 1 == 1 {
            result = mul_mod(&result, &b, f, p);
        }
        b = mul_mod(&b, &b, f, p);
        e >>= 1;
    }
    rem(&result, f, p)
}

pub(crate) fn gcd(a: &[u32], b: &[u32], p: u32) -> Poly {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

/// Ben-Or irreducibility test for a polynomial of degree at least one.
pub(crate) fn is_irreducible(f: &[u32], p: u32) -> bool {
    let f = trim(f.to_vec());
    let n = f.len() - 1;
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    if f[0] == 0 {
        return false;
    }
    let x = vec![0, 1];
    let mut h = x.clone();
    for _ in 0..n / 2 {
        h = pow_mod(&h, p as u64, &f, p);
        let g = gcd(&f, &sub(&h, &x, p), p);
        if g.len() > 1 {
            return false;
        }
    }
    true
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Whether `x` generates the multiplicative group of GF(p)[x]/(f), f irreducible.
pub(crate) fn x_is_primitive(f: &[u32], p: u32) -> bool {
    let n = (f.len() - 1) as u32;
    let order = (p as u64).pow(n) - 1;
    let x = vec![0, 1];
    prime_factors(order)
        .into_iter()
        .all(|r| pow_mod(&x, order / r, f, p) != vec![1])
}

/// Evaluates `g` at the residue `y` modulo `f`.
pub(crate) fn compose_mod(g: &[u32], y: &[u32], f: &[u32], p: u32) -> Poly {
    let mut acc: Poly = Vec::new();
    for &c in g.iter().rev() {
        acc = mul_mod(&acc, y, f, p);
        let mut with_c = acc.clone();
        if with_c.is_empty() {
            with_c.push(0);
        }
        with_c[0] = (with_c[0] + c) % p;
        acc = rem(&with_c, f, p);
    }
    acc
}
