//! Integer and residue helpers shared by the modules.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

#[inline]
pub fn add_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 + b as u128) % m as u128) as u64
}

#[inline]
pub fn sub_mod(a: u64, b: u64, m: u64) -> u64 {
    add_mod(a, m - b % m, m)
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let g = (a as i128).extended_gcd(&(m as i128));
    if g.gcd != 1 {
        return None;
    }
    Some(g.x.rem_euclid(m as i128) as u64)
}

/// Signed integer reduced into `[0, m)`.
pub fn residue_i64(a: i64, m: u64) -> u64 {
    (a as i128).rem_euclid(m as i128) as u64
}

pub fn residue_big(a: &BigInt, m: u64) -> u64 {
    a.mod_floor(&BigInt::from(m)).to_u64().expect("residue fits")
}

pub fn is_prime(n: u64) -> bool {
    num_prime::nt_funcs::is_prime64(n)
}

pub fn require_prime(n: u64) -> Result<()> {
    if is_prime(n) {
        Ok(())
    } else {
        Err(Error::NotPrime { n })
    }
}

pub fn require_odd_prime(p: u64) -> Result<()> {
    if p == 2 || !is_prime(p) {
        return Err(Error::InvalidP { p });
    }
    Ok(())
}

/// Prime factorization of a positive integer.
pub fn factorize(n: u64) -> BTreeMap<u64, u32> {
    assert!(n > 0);
    num_prime::nt_funcs::factorize64(n)
        .into_iter()
        .map(|(q, e)| (q, e as u32))
        .collect()
}

/// Prime factorization of `|n|` for a nonzero big integer.
pub fn factorize_big(n: &BigInt) -> Result<BTreeMap<u64, u32>> {
    assert!(!n.is_zero());
    let abs = n.abs().to_u128().ok_or(Error::DiscriminantTooLarge)?;
    let mut out = BTreeMap::new();
    for (q, e) in num_prime::nt_funcs::factorize128(abs) {
        let q = u64::try_from(q).map_err(|_| Error::DiscriminantTooLarge)?;
        out.insert(q, e as u32);
    }
    Ok(out)
}

/// `ord_ell(n)` for nonzero `n`.
pub fn valuation_big(n: &BigInt, ell: u64) -> u32 {
    assert!(!n.is_zero());
    let ell = BigInt::from(ell);
    let mut n = n.clone();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&ell);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

pub fn valuation_u64(mut n: u64, ell: u64) -> u32 {
    assert!(n > 0);
    let mut v = 0;
    while n.is_multiple_of(ell) {
        n /= ell;
        v += 1;
    }
    v
}

/// Multiplicative order of `a` modulo the prime `p` (`a` coprime to `p`).
pub fn multiplicative_order(a: u64, p: u64) -> u32 {
    let a = a % p;
    assert!(a != 0);
    let mut x = a;
    let mut k = 1;
    while x != 1 {
        x = mul_mod(x, a, p);
        k += 1;
    }
    k
}

/// Euler's criterion: is the nonzero residue `a` a square mod the odd prime `ell`?
pub fn is_square_mod(a: u64, ell: u64) -> bool {
    let a = a % ell;
    a != 0 && pow_mod(a, (ell - 1) / 2, ell) == 1
}

/// Dense polynomial over `F_ell`, little-endian, with no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyFp {
    coeffs: Vec<u64>,
    modulus: u64,
}

impl PolyFp {
    pub fn new(mut coeffs: Vec<u64>, modulus: u64) -> Self {
        for c in coeffs.iter_mut() {
            *c %= modulus;
        }
        let mut p = PolyFp { coeffs, modulus };
        p.trim();
        p
    }

    pub fn from_i64(coeffs: &[i64], modulus: u64) -> Self {
        Self::new(coeffs.iter().map(|&c| residue_i64(c, modulus)).collect(), modulus)
    }

    pub fn from_big(coeffs: &[BigInt], modulus: u64) -> Self {
        Self::new(coeffs.iter().map(|c| residue_big(c, modulus)).collect(), modulus)
    }

    pub fn zero(modulus: u64) -> Self {
        PolyFp { coeffs: Vec::new(), modulus }
    }

    pub fn constant(c: u64, modulus: u64) -> Self {
        Self::new(vec![c], modulus)
    }

    pub fn x(modulus: u64) -> Self {
        Self::new(vec![0, 1], modulus)
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn lead(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn add(&self, other: &Self) -> Self {
        let m = self.modulus;
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(
            (0..n).map(|i| add_mod(self.coeff(i), other.coeff(i), m)).collect(),
            m,
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        let m = self.modulus;
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(
            (0..n).map(|i| sub_mod(self.coeff(i), other.coeff(i), m)).collect(),
            m,
        )
    }

    pub fn scale(&self, c: u64) -> Self {
        let m = self.modulus;
        Self::new(self.coeffs.iter().map(|&a| mul_mod(a, c, m)).collect(), m)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.modulus);
        }
        let m = self.modulus;
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = add_mod(out[i + j], mul_mod(a, b, m), m);
            }
        }
        Self::new(out, m)
    }

    /// Quotient and remainder. The divisor's leading coefficient must be a unit.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let m = self.modulus;
        let dd = divisor.degree().expect("division by zero polynomial");
        let inv = inv_mod(divisor.lead(), m).expect("leading coefficient is not a unit");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(m), self.clone());
        }
        let mut quot = vec![0u64; rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let c = mul_mod(rem[k], inv, m);
            if c == 0 {
                continue;
            }
            quot[k - dd] = c;
            for (i, &d) in divisor.coeffs.iter().enumerate() {
                let idx = k - dd + i;
                rem[idx] = sub_mod(rem[idx], mul_mod(c, d, m), m);
            }
        }
        rem.truncate(dd);
        (Self::new(quot, m), Self::new(rem, m))
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.div_rem(divisor).1
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = inv_mod(self.lead(), self.modulus).expect("unit leading coefficient");
        self.scale(inv)
    }

    /// Monic gcd (field modulus only).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        let m = self.modulus;
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| mul_mod(c, i as u64 % m, m))
                .collect(),
            m,
        )
    }

    pub fn eval(&self, x: u64) -> u64 {
        let m = self.modulus;
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| add_mod(mul_mod(acc, x, m), c, m))
    }

    /// `self^e mod modulus_poly`.
    pub fn pow_mod(&self, mut e: u64, modulus_poly: &Self) -> Self {
        let mut acc = Self::constant(1, self.modulus).rem(modulus_poly);
        let mut base = self.rem(modulus_poly);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(modulus_poly);
            }
            base = base.mul(&base).rem(modulus_poly);
            e >>= 1;
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders_and_residues() {
        assert_eq!(multiplicative_order(17, 3), 2);
        assert_eq!(multiplicative_order(19, 3), 1);
        assert_eq!(multiplicative_order(2, 7), 3);
        assert_eq!(inv_mod(3, 7), Some(5));
        assert_eq!(inv_mod(6, 9), None);
        assert!(is_square_mod(2, 7));
        assert!(!is_square_mod(3, 7));
    }

    #[test]
    fn factorization() {
        let f = factorize(24);
        assert_eq!(f.into_iter().collect::<Vec<_>>(), vec![(2, 3), (3, 1)]);
        let d = factorize_big(&BigInt::from(-83521)).unwrap();
        assert_eq!(d.into_iter().collect::<Vec<_>>(), vec![(17, 4)]);
        assert_eq!(valuation_big(&BigInt::from(-83521), 17), 4);
    }

    #[test]
    fn poly_gcd_and_powmod() {
        let m = 7;
        // (x-1)(x-2) and (x-2)(x-3)
        let a = PolyFp::from_i64(&[2, -3, 1], m);
        let b = PolyFp::from_i64(&[6, -5, 1], m);
        assert_eq!(a.gcd(&b), PolyFp::from_i64(&[-2, 1], m));
        // x^7 = x mod (x^2 - 3) over F_7? x^7 = x * (x^2)^3 = 27 x = 6x
        let md = PolyFp::from_i64(&[-3, 0, 1], m);
        let x7 = PolyFp::x(m).pow_mod(7, &md);
        assert_eq!(x7, PolyFp::from_i64(&[0, 6], m));
    }
}
