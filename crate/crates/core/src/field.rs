//! Table-driven arithmetic in GF(p^m).
//!
//! Elements are encoded as integers `0..q`, the base-`p` digits being the
//! polynomial coefficients (digit `i` is the coefficient of `x^i`). The modulus
//! is the monic irreducible polynomial of degree `m` with the smallest encoding
//! of its lower coefficients, and the primitive element is the smallest generator
//! of the multiplicative group.

use crate::error::{FrError, Result};

/// Largest field order supported by the arithmetic tables.
pub const MAX_ORDER: u64 = 1024;

#[derive(Debug, Clone)]
pub struct FiniteField {
    p: u32,
    m: u32,
    q: u32,
    modulus: Vec<u32>,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
    primitive: u32,
}

impl FiniteField {
    pub fn new(p: u64, m: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(FrError::NotPrime(p));
        }
        if m == 0 {
            return Err(FrError::PreconditionFailed("field degree must be positive".into()));
        }
        let q = p.checked_pow(m).filter(|&q| q <= MAX_ORDER).ok_or(FrError::FieldTooLarge(p.saturating_pow(m)))?;
        let (p, q) = (p as u32, q as u32);
        let modulus = smallest_irreducible(p, m);
        let digits = |x: u32| -> Vec<u32> { (0..m).map(|i| x / p.pow(i) % p).collect() };
        let encode = |d: &[u32]| -> u32 { d.iter().rev().fold(0, |acc, &c| acc * p + c) };
        let qs = q as usize;
        let mut add = vec![0; qs * qs];
        let mut mul = vec![0; qs * qs];
        for a in 0..q {
            let da = digits(a);
            for b in 0..q {
                let db = digits(b);
                let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[(a * q + b) as usize] = encode(&s);
                mul[(a * q + b) as usize] = encode(&poly_mulmod(&da, &db, &modulus, p));
            }
        }
        let mut neg = vec![0; qs];
        let mut inv = vec![0; qs];
        for a in 0..q {
            for b in 0..q {
                if add[(a * q + b) as usize] == 0 {
                    neg[a as usize] = b;
                }
                if mul[(a * q + b) as usize] == 1 {
                    inv[a as usize] = b;
                }
            }
        }
        let mut field = FiniteField { p, m, q, modulus, add, mul, neg, inv, primitive: 0 };
        field.primitive = (1..q).find(|&g| field.order_of(g) == q - 1).expect("multiplicative group is cyclic");
        Ok(field)
    }

    /// Field of prime-power order `q`.
    pub fn of_order(q: u64) -> Result<Self> {
        let (p, m) = prime_power(q).ok_or(FrError::NotPrimePower(q))?;
        Self::new(p, m)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    /// Coefficients of the modulus, constant term first, leading 1 included.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn primitive(&self) -> u32 {
        self.primitive
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[(a * self.q + b) as usize]
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg[b as usize])
    }

    pub fn neg(&self, a: u32) -> u32 {
        self.neg[a as usize]
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[(a * self.q + b) as usize]
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: u32) -> Option<u32> {
        (a != 0).then(|| self.inv[a as usize])
    }

    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        let (mut base, mut acc) = (a, 1);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    fn order_of(&self, g: u32) -> u32 {
        let mut x = g;
        let mut k = 1;
        while x != 1 {
            x = self.mul(x, g);
            k += 1;
            if k > self.q {
                return 0;
            }
        }
        k
    }

    /// Nonzero squares, in increasing encoding.
    pub fn nonzero_squares(&self) -> Vec<u32> {
        let mut v: Vec<u32> = (1..self.q).map(|x| self.mul(x, x)).collect();
        v.sort_unstable();
        v.dedup();
        v
    }
}

pub fn is_prime(n: u64) -> bool {
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

/// Decompose `q = p^m` with `p` prime.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let (mut r, mut m) = (q, 0);
    while r % p == 0 {
        r /= p;
        m += 1;
    }
    (r == 1).then_some((p, m))
}

fn poly_mulmod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let m = modulus.len() - 1;
    let mut prod = vec![0u32; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    for deg in (m..prod.len()).rev() {
        let c = prod[deg];
        if c != 0 {
            for (k, &mk) in modulus.iter().enumerate() {
                let idx = deg - m + k;
                prod[idx] = (prod[idx] + p * p - c * mk % p) % p;
            }
        }
    }
    prod.truncate(m);
    prod.resize(m, 0);
    prod
}

fn smallest_irreducible(p: u32, m: u32) -> Vec<u32> {
    if m == 1 {
        return vec![0, 1];
    }
    let count = p.pow(m);
    (0..count)
        .map(|low| {
            let mut f: Vec<u32> = (0..m).map(|i| low / p.pow(i) % p).collect();
            f.push(1);
            f
        })
        .find(|f| is_irreducible(f, p))
        .expect("irreducible polynomials exist in every degree")
}

fn is_irreducible(f: &[u32], p: u32) -> bool {
    let m = f.len() - 1;
    for deg in 1..=m / 2 {
        for low in 0..p.pow(deg as u32) {
            let mut g: Vec<u32> = (0..deg).map(|i| low / p.pow(i as u32) % p).collect();
            g.push(1);
            if poly_rem(f, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn poly_rem(f: &[u32], g: &[u32], p: u32) -> Vec<u32> {
    let mut r = f.to_vec();
    let dg = g.len() - 1;
    for deg in (dg..r.len()).rev() {
        let c = r[deg];
        if c != 0 {
            for (k, &gk) in g.iter().enumerate() {
                let idx = deg - dg + k;
                r[idx] = (r[idx] + p * p - c * gk % p) % p;
            }
        }
    }
    r.truncate(dg);
    r
}

/// Number of `delta`-dimensional subspaces of an `m`-dimensional space over GF(q).
pub fn gaussian_coefficient(m: u32, delta: u32, q: u64) -> u128 {
    if delta > m {
        return 0;
    }
    let q = q as u128;
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..delta {
        num *= q.pow(m - i) - 1;
        den *= q.pow(i + 1) - 1;
    }
    num / den
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf4_tables() {
        let f = FiniteField::new(2, 2).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 1]);
        assert_eq!(f.mul(2, 2), 3);
        assert_eq!(f.mul(2, 3), 1);
        assert_eq!(f.primitive(), 2);
    }

    #[test]
    fn gf8_and_gf9_moduli() {
        assert_eq!(FiniteField::new(2, 3).unwrap().modulus(), &[1, 1, 0, 1]);
        let f9 = FiniteField::new(3, 2).unwrap();
        assert_eq!(f9.modulus(), &[1, 0, 1]);
        assert_eq!(f9.order_of(f9.primitive()), 8);
    }

    #[test]
    fn gf256_matches_aes_modulus() {
        let f = FiniteField::new(2, 8).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 0, 1, 1, 0, 0, 0, 1]);
        assert_eq!(f.mul(0x57, 0x83), 0xc1);
    }

    #[test]
    fn prime_fields() {
        let f = FiniteField::new(7, 1).unwrap();
        assert_eq!(f.primitive(), 3);
        assert_eq!(f.nonzero_squares(), vec![1, 2, 4]);
        assert_eq!(f.inv(3), Some(5));
        assert_eq!(f.inv(0), None);
    }

    #[test]
    fn rejects_bad_orders() {
        assert_eq!(FiniteField::new(6, 1).unwrap_err(), FrError::NotPrime(6));
        assert_eq!(FiniteField::of_order(12).unwrap_err(), FrError::NotPrimePower(12));
        assert_eq!(prime_power(27), Some((3, 3)));
    }

    #[test]
    fn gaussian_coefficients() {
        assert_eq!(gaussian_coefficient(3, 2, 3), 13);
        assert_eq!(gaussian_coefficient(3, 1, 2), 7);
        assert_eq!(gaussian_coefficient(4, 2, 2), 35);
        assert_eq!(gaussian_coefficient(2, 3, 2), 0);
    }
}
