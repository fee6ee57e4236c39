//! Extension towers GF(q) ⊆ GF(q^m).

use super::{Elem, Field};
use crate::error::{Error, Result};

/// GF(q^m) over GF(q) with the ordered basis `β^0, ..., β^{m-1}`.
///
/// The top field is GF(p^{km}) with its default modulus, `β` is the class
/// of `x` there, and GF(q) sits inside through a root of the base modulus.
#[derive(Clone, Debug)]
pub struct Tower {
    base: Field,
    top: Field,
    m: u32,
    /// Image of the base generator `x`.
    root: Elem,
    beta: Elem,
    /// Inverse of the km×km GF(p) matrix whose column `j*k + i` is `root^i β^j`.
    inverse: Vec<u32>,
}

impl Tower {
    pub fn new(base: &Field, m: u32) -> Result<Tower> {
        if m == 0 {
            return Err(Error::IncompatibleTower("extension degree must be at least 1".into()));
        }
        let (p, k) = (base.p(), base.k());
        let top = Field::new(p, k * m, None)?;
        let root = if k == 1 {
            0
        } else {
            let modulus = base.modulus();
            top.elements()
                .find(|&r| {
                    let v = modulus.iter().fold(0, |acc, &c| top.add(top.mul(acc, r), c));
                    v == 0
                })
                .ok_or_else(|| Error::IncompatibleTower("base modulus has no root".into()))?
        };
        let beta = if k * m == 1 { 1 } else { p };
        let mut tower = Tower {
            base: base.clone(),
            top,
            m,
            root,
            beta,
            inverse: Vec::new(),
        };
        let km = (k * m) as usize;
        let mut a = vec![0u32; km * km];
        let mut bj = 1;
        for j in 0..m as usize {
            let mut ri = bj;
            for i in 0..k as usize {
                let c = tower.top.coeffs(ri);
                for (row, &v) in c.iter().enumerate() {
                    a[row * km + j * k as usize + i] = v;
                }
                ri = tower.top.mul(ri, root);
            }
            bj = tower.top.mul(bj, beta);
        }
        tower.inverse = invert_mod_p(&a, km, p).ok_or_else(|| Error::IncompatibleTower("basis is singular".into()))?;
        Ok(tower)
    }

    pub fn base(&self) -> &Field {
        &self.base
    }

    pub fn top(&self) -> &Field {
        &self.top
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// The generator `β` of the ordered basis.
    pub fn beta(&self) -> Elem {
        self.beta
    }

    /// The image of a base element in the top field.
    pub fn embed(&self, a: Elem) -> Elem {
        if self.base.k() == 1 {
            return a;
        }
        let mut acc = 0;
        let mut power = 1;
        for c in self.base.coeffs(a) {
            acc = self.top.add(acc, self.top.mul(c, power));
            power = self.top.mul(power, self.root);
        }
        acc
    }

    /// Coordinates over GF(q) in the basis `β^0, ..., β^{m-1}`.
    pub fn coords(&self, a: Elem) -> Vec<Elem> {
        let (p, k) = (self.base.p() as u64, self.base.k() as usize);
        let km = k * self.m as usize;
        let v = self.top.coeffs(a);
        let lambda: Vec<u32> = (0..km)
            .map(|r| {
                let row = &self.inverse[r * km..(r + 1) * km];
                (row.iter().zip(&v).map(|(&x, &y)| x as u64 * y as u64).sum::<u64>() % p) as u32
            })
            .collect();
        (0..self.m as usize)
            .map(|j| self.base.from_coeffs(&lambda[j * k..(j + 1) * k]))
            .collect()
    }

    /// Inverse of [`Tower::coords`].
    pub fn uncoords(&self, c: &[Elem]) -> Result<Elem> {
        if c.len() != self.m as usize {
            return Err(Error::IncompatibleTower(format!(
                "expected {} coordinates, got {}",
                self.m,
                c.len()
            )));
        }
        if let Some(&bad) = c.iter().find(|&&x| x >= self.base.q()) {
            return Err(Error::IncompatibleTower(format!(
                "coordinate {bad} is not in GF({})",
                self.base.q()
            )));
        }
        let mut acc = 0;
        let mut bj = 1;
        for &cj in c {
            acc = self.top.add(acc, self.top.mul(self.embed(cj), bj));
            bj = self.top.mul(bj, self.beta);
        }
        Ok(acc)
    }
}

fn invert_mod_p(a: &[u32], n: usize, p: u32) -> Option<Vec<u32>> {
    let p64 = p as u64;
    let inv = |x: u32| -> u32 {
        let (mut r, mut b, mut e) = (1u64, x as u64, p64 - 2);
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p64;
            }
            b = b * b % p64;
            e >>= 1;
        }
        r as u32
    };
    let w = 2 * n;
    let mut m = vec![0u32; n * w];
    for r in 0..n {
        m[r * w..r * w + n].copy_from_slice(&a[r * n..(r + 1) * n]);
        m[r * w + n + r] = 1;
    }
    for col in 0..n {
        let piv = (col..n).find(|&r| m[r * w + col] != 0)?;
        if piv != col {
            for c in 0..w {
                m.swap(piv * w + c, col * w + c);
            }
        }
        let s = inv(m[col * w + col]) as u64;
        for c in 0..w {
            m[col * w + c] = (m[col * w + c] as u64 * s % p64) as u32;
        }
        for r in 0..n {
            let f = m[r * w + col] as u64;
            if r == col || f == 0 {
                continue;
            }
            for c in 0..w {
                let sub = f * m[col * w + c] as u64 % p64;
                m[r * w + c] = ((m[r * w + c] as u64 + p64 - sub) % p64) as u32;
            }
        }
    }
    Some((0..n).flat_map(|r| m[r * w + n..(r + 1) * w].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn round_trip(base: Field, m: u32) {
        let t = Tower::new(&base, m).unwrap();
        let top = t.top().clone();
        let mut rng = ChaCha8Rng::seed_from_u64(base.q() as u64 * 31 + m as u64);
        assert_eq!(t.coords(0), vec![0; m as usize]);
        let mut e1 = vec![0; m as usize];
        e1[0] = 1;
        assert_eq!(t.coords(1), e1);
        for _ in 0..100 {
            let a = rng.gen_range(0..top.q());
            let b = rng.gen_range(0..top.q());
            assert_eq!(t.uncoords(&t.coords(a)).unwrap(), a);
            let l = rng.gen_range(0..base.q());
            let lhs = t.coords(top.add(top.mul(t.embed(l), a), b));
            let rhs: Vec<Elem> = t
                .coords(a)
                .iter()
                .zip(t.coords(b))
                .map(|(&x, y)| base.add(base.mul(l, x), y))
                .collect();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn towers_round_trip() {
        round_trip(Field::prime(2).unwrap(), 4);
        round_trip(Field::prime(3).unwrap(), 3);
        round_trip(Field::new(2, 2, None).unwrap(), 2);
        round_trip(Field::new(2, 2, None).unwrap(), 3);
        round_trip(Field::new(3, 2, None).unwrap(), 2);
        round_trip(Field::prime(5).unwrap(), 1);
    }

    #[test]
    fn embedding_is_a_homomorphism() {
        let base = Field::new(2, 4, None).unwrap();
        let t = Tower::new(&base, 2).unwrap();
        for a in base.elements() {
            for b in base.elements() {
                assert_eq!(t.embed(base.mul(a, b)), t.top().mul(t.embed(a), t.embed(b)));
                assert_eq!(t.embed(base.add(a, b)), t.top().add(t.embed(a), t.embed(b)));
            }
        }
    }

    #[test]
    fn bad_coordinates() {
        let t = Tower::new(&Field::prime(2).unwrap(), 3).unwrap();
        assert!(matches!(t.uncoords(&[1, 0]), Err(Error::IncompatibleTower(_))));
        assert!(matches!(t.uncoords(&[2, 0, 0]), Err(Error::IncompatibleTower(_))));
    }
}
