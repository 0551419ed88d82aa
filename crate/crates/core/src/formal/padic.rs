//! `Z/p^N` and the totally ramified ring `O_K / p^N` for `K = Q_p(zeta_p)`.

use num_bigint::BigInt;

use crate::arith::{self, residue_big};
use crate::error::{Error, Result};

/// Room for `pi^i`, `i < p - 1`, with `p <= 5`.
pub const MAX_DEG: usize = 4;

/// Integers modulo `p^N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Zpn {
    pub p: u64,
    pub n: u32,
    pub modulus: u64,
}

impl Zpn {
    pub fn new(p: u64, n: u32) -> Result<Self> {
        let max = max_digits(p);
        if n == 0 || n > max {
            return Err(Error::PrecisionOverflow { requested: n as usize, max: max as usize });
        }
        Ok(Zpn { p, n, modulus: p.pow(n) })
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        arith::add_mod(a, b, self.modulus)
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        arith::sub_mod(a, b, self.modulus)
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        arith::mul_mod(a, b, self.modulus)
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.modulus - a
        }
    }

    pub fn from_i64(&self, a: i64) -> u64 {
        arith::residue_i64(a, self.modulus)
    }

    pub fn from_big(&self, a: &BigInt) -> u64 {
        residue_big(a, self.modulus)
    }

    /// Inverse of a unit.
    pub fn inv(&self, a: u64) -> u64 {
        arith::inv_mod(a, self.modulus).expect("not a p-adic unit")
    }

    /// `v_p(a)`, with `None` for zero (valuation at least `N`).
    pub fn val(&self, a: u64) -> Option<u32> {
        if a == 0 {
            None
        } else {
            Some(arith::valuation_u64(a, self.p))
        }
    }

    pub fn pow(&self, a: u64, e: u64) -> u64 {
        arith::pow_mod(a, e, self.modulus)
    }

    /// Reduce modulo `p^k` for `k <= N`.
    pub fn reduce_to(&self, a: u64, k: u32) -> u64 {
        a % self.p.pow(k.min(self.n))
    }

    /// Same ring with fewer digits.
    pub fn with_digits(&self, n: u32) -> Result<Self> {
        Zpn::new(self.p, n)
    }
}

/// Largest `N` with `p^N` fitting in a `u64`.
pub fn max_digits(p: u64) -> u32 {
    u64::MAX.ilog(p)
}

/// An element `sum a_i pi^i` of `O_K / p^N`, `pi = zeta_p - 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct KElem(pub [u64; MAX_DEG]);

/// Arithmetic in `O_K / p^N`, `K = Q_p(zeta_p)`, on the basis `1, pi, ..., pi^{p-2}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KRing {
    pub z: Zpn,
    /// `d = p - 1 = [K : Q_p]`.
    pub d: usize,
    /// `pi^d = sum red[k] pi^k`.
    red: [u64; MAX_DEG],
    /// The unit `w` with `pi^d = -p w`.
    w: KElem,
    w_inv: KElem,
}

impl KRing {
    pub fn new(p: u64, n: u32) -> Result<Self> {
        if !(p == 3 || p == 5) {
            return Err(Error::UnsupportedP { p, supported: "3, 5".into() });
        }
        let z = Zpn::new(p, n)?;
        let d = (p - 1) as usize;
        let mut red = [0u64; MAX_DEG];
        let mut w = KElem::default();
        for k in 1..p {
            let c = binom(p, k);
            red[(k - 1) as usize] = z.neg(z.from_i64(c as i64));
            w.0[(k - 1) as usize] = z.from_i64((c / p) as i64);
        }
        let mut ring = KRing { z, d, red, w, w_inv: KElem::default() };
        ring.w_inv = ring.inv(&w)?;
        Ok(ring)
    }

    pub fn p(&self) -> u64 {
        self.z.p
    }

    pub fn digits(&self) -> u32 {
        self.z.n
    }

    pub fn zero(&self) -> KElem {
        KElem::default()
    }

    pub fn one(&self) -> KElem {
        self.constant(1)
    }

    pub fn constant(&self, a: u64) -> KElem {
        let mut e = KElem::default();
        e.0[0] = a % self.z.modulus;
        e
    }

    pub fn from_i64(&self, a: i64) -> KElem {
        self.constant(self.z.from_i64(a))
    }

    pub fn pi(&self) -> KElem {
        let mut e = KElem::default();
        e.0[1] = 1;
        e
    }

    /// `zeta_p = 1 + pi`.
    pub fn zeta(&self) -> KElem {
        self.add(&self.one(), &self.pi())
    }

    pub fn w(&self) -> KElem {
        self.w
    }

    pub fn w_inv(&self) -> KElem {
        self.w_inv
    }

    pub fn is_zero(&self, a: &KElem) -> bool {
        a.0.iter().all(|&c| c == 0)
    }

    pub fn add(&self, a: &KElem, b: &KElem) -> KElem {
        let mut out = KElem::default();
        for i in 0..self.d {
            out.0[i] = self.z.add(a.0[i], b.0[i]);
        }
        out
    }

    pub fn sub(&self, a: &KElem, b: &KElem) -> KElem {
        let mut out = KElem::default();
        for i in 0..self.d {
            out.0[i] = self.z.sub(a.0[i], b.0[i]);
        }
        out
    }

    pub fn neg(&self, a: &KElem) -> KElem {
        self.sub(&self.zero(), a)
    }

    pub fn scale(&self, a: &KElem, c: u64) -> KElem {
        let mut out = KElem::default();
        for i in 0..self.d {
            out.0[i] = self.z.mul(a.0[i], c);
        }
        out
    }

    pub fn mul(&self, a: &KElem, b: &KElem) -> KElem {
        let d = self.d;
        let m = self.z.modulus as u128;
        let mut prod = [0u128; 2 * MAX_DEG];
        for i in 0..d {
            if a.0[i] == 0 {
                continue;
            }
            for j in 0..d {
                prod[i + j] = (prod[i + j] + a.0[i] as u128 * b.0[j] as u128) % m;
            }
        }
        for k in (d..2 * d - 1).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for i in 0..d {
                prod[k - d + i] = (prod[k - d + i] + c * self.red[i] as u128) % m;
            }
        }
        let mut out = KElem::default();
        for (o, &c) in out.0.iter_mut().zip(&prod[..d]) {
            *o = c as u64;
        }
        out
    }

    pub fn pow(&self, a: &KElem, mut e: u64) -> KElem {
        let mut acc = self.one();
        let mut base = *a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// `v_K(a)` in units where `v_K(pi) = 1`; `None` for zero.
    pub fn val(&self, a: &KElem) -> Option<u32> {
        (0..self.d)
            .filter_map(|i| self.z.val(a.0[i]).map(|v| v * self.d as u32 + i as u32))
            .min()
    }

    /// Every element is known modulo `pi^{(p-1)N}`.
    pub fn val_cap(&self) -> u32 {
        self.d as u32 * self.z.n
    }

    /// Image of the leading coefficient in the residue field `F_p`.
    pub fn lead(&self, a: &KElem) -> Option<u64> {
        let v = self.val(a)?;
        let i = v as usize % self.d;
        let e = v / self.d as u32;
        let p = self.p();
        // a_i pi^i = (a_i / p^e) p^e pi^i and p = -pi^d w^{-1} with w = 1 mod pi
        let unit = (a.0[i] / p.pow(e)) % p;
        Some(if e % 2 == 1 { (p - unit) % p } else { unit })
    }

    /// Inverse of a unit by Newton iteration.
    pub fn inv(&self, a: &KElem) -> Result<KElem> {
        if a.0[0].is_multiple_of(self.p()) {
            return Err(Error::PrecisionTooLow { detail: "inverting a non-unit".into() });
        }
        let two = self.constant(2);
        let mut x = self.constant(self.z.inv(a.0[0]));
        loop {
            let next = self.mul(&x, &self.sub(&two, &self.mul(a, &x)));
            if next == x {
                return Ok(x);
            }
            x = next;
        }
    }

    /// Exact division by `pi`; one `p`-adic digit is lost, so the result is
    /// only meaningful modulo `p^{N-1}`.
    pub fn div_pi(&self, a: &KElem) -> Result<KElem> {
        let p = self.p();
        if !a.0[0].is_multiple_of(p) {
            return Err(Error::PrecisionTooLow { detail: "division by pi of a unit".into() });
        }
        let mut shifted = KElem::default();
        for i in 1..self.d {
            shifted.0[i - 1] = a.0[i];
        }
        // a_0 / pi = (a_0 / p) * (p / pi) and p / pi = -pi^{d-1} w^{-1}
        let mut pd1 = KElem::default();
        pd1.0[self.d - 1] = 1;
        let p_over_pi = self.neg(&self.mul(&pd1, &self.w_inv));
        let tail = self.scale(&p_over_pi, a.0[0] / p);
        Ok(self.add(&shifted, &tail))
    }

    pub fn div_pi_pow(&self, a: &KElem, k: u32) -> Result<KElem> {
        (0..k).try_fold(*a, |acc, _| self.div_pi(&acc))
    }

    /// Canonical representative modulo `pi^t`.
    pub fn reduce_mod_pi_pow(&self, a: &KElem, t: u32) -> KElem {
        let mut out = KElem::default();
        for i in 0..self.d {
            let t_i = t.saturating_sub(i as u32);
            let k = t_i.div_ceil(self.d as u32);
            out.0[i] = self.z.reduce_to(a.0[i], k);
        }
        out
    }

    /// Same element in a ring with fewer digits.
    pub fn truncate_into(&self, a: &KElem, target: &KRing) -> KElem {
        let mut out = KElem::default();
        for i in 0..self.d {
            out.0[i] = a.0[i] % target.z.modulus;
        }
        out
    }
}

pub fn binom(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}
