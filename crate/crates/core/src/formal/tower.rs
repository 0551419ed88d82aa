//! Explicit arithmetic in the totally ramified degree-`p` extension
//! `L = K(m^{1/p})` of `K = Q_p(zeta_p)`.
//!
//! `L` is presented as `K(theta)` with `theta^p = sum r_i theta^i`, and its
//! ring of integers by the basis `e_j = theta^j / pi^{d_j}`, whose
//! valuations are pairwise distinct modulo `p`. That makes
//! `v_L(sum c_j e_j) = min_j (p v_K(c_j) + v_L(e_j))` exact.
//!
//! * `p | m`: with `m = p^s d`, `theta = Pi` is an Eisenstein generator with
//!   `Pi^p = c`, `v_K(c) = 1`, `sigma(Pi) = zeta^b Pi`, and `e_j = Pi^j`.
//! * `p` does not divide `m` and `m^{p-1} != 1 mod p^2`: `theta = z = y - 1`
//!   with `y^p = m^{p-1}`, `sigma(y) = zeta^{-1} y`, and `e_j = z^j / pi^{j-1}`.

use super::padic::{binom, KElem, KRing, MAX_DEG};
use super::series::FgRing;
use crate::arith;
use crate::cyclo;
use crate::error::{Error, Result};

/// Largest supported `p`.
pub const MAX_P: usize = 5;

/// Coordinates on the integral basis `e_0, ..., e_{p-1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct LElem(pub [KElem; MAX_P]);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TowerKind {
    /// `p | m`; `s = v_p(m)`, `b = -1/s mod p`.
    PDividesM { s: u32, b: u32 },
    /// `p` does not divide `m` and the jump is 1.
    JumpOne,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RamificationData {
    /// Highest ramification jump `v_L(sigma(pi_L) - pi_L) - 1`.
    pub t: u32,
    /// Different exponent `(t + 1)(p - 1)`.
    pub m_diff: u32,
}

#[derive(Clone, Debug)]
pub struct Tower {
    pub k: KRing,
    pub p: u64,
    pub m: u64,
    pub kind: TowerKind,
    basis_val: [u32; MAX_P],
    /// `e_i e_j`, indexed `i * p + j`.
    table: Vec<LElem>,
    /// `sigma(e_j)`.
    sigma: [LElem; MAX_P],
    uniformiser_index: usize,
}

/// Minimum coefficient precision accepted by `build`.
pub const MIN_DIGITS: u32 = 8;

impl Tower {
    /// Builds the tower for `L_m` over `K` with coefficients modulo `p^digits`.
    pub fn build(p: u64, m: u64, digits: u32) -> Result<Self> {
        if !(p == 3 || p == 5) {
            return Err(Error::UnsupportedP { p, supported: "3, 5".into() });
        }
        if digits < MIN_DIGITS {
            return Err(Error::PrecisionTooLow { detail: format!("tower needs at least {MIN_DIGITS} digits") });
        }
        let (m, _) = cyclo::normalize_m(m, p)?;
        let pu = p as usize;
        let extra = 2 * p as u32 + 2;
        let kw = KRing::new(p, digits + extra)?;
        let k = KRing::new(p, digits)?;
        let zeta = kw.zeta();

        // relation theta^p = sum r_i theta^i, divisors d_j, sigma(theta)
        let mut r = vec![kw.zero(); pu];
        let mut sig_theta = vec![kw.zero(); pu];
        let (kind, d, basis_val, uniformiser_index);
        if m % p == 0 {
            let s = arith::valuation_u64(m, p);
            let dd = m / p.pow(s);
            let s_inv = arith::inv_mod(s as u64 % p, p).expect("s < p");
            let b = ((p - s_inv) % p) as u32;
            let sb = s as u64 * b as u64;
            let mut c = kw.mul(&kw.pow(&kw.w_inv(), sb), &kw.pow(&kw.from_i64(dd as i64), b as u64));
            c = kw.mul(&c, &kw.pi());
            if sb % 2 == 1 {
                c = kw.neg(&c);
            }
            r[0] = c;
            sig_theta[1] = kw.pow(&zeta, b as u64);
            kind = TowerKind::PDividesM { s, b };
            d = vec![0u32; pu];
            let mut bv = [0u32; MAX_P];
            for (j, v) in bv.iter_mut().enumerate().take(pu) {
                *v = j as u32;
            }
            basis_val = bv;
            uniformiser_index = 1;
        } else {
            let p2 = p * p;
            if arith::pow_mod(m % p2, p - 1, p2) == 1 {
                return Err(Error::NotTotallyRamified {
                    detail: format!("m^{} = 1 mod {p2}, so the place above {p} is unramified", p - 1),
                });
            }
            let a = kw.pow(&kw.from_i64((m % kw.z.modulus) as i64), p - 1);
            r[0] = kw.sub(&a, &kw.one());
            for (i, ri) in r.iter_mut().enumerate().skip(1) {
                *ri = kw.from_i64(-(binom(p, i as u64) as i64));
            }
            // sigma(z) = zeta^{p-1} (1 + z) - 1
            let zi = kw.pow(&zeta, p - 1);
            sig_theta[0] = kw.sub(&zi, &kw.one());
            sig_theta[1] = zi;
            kind = TowerKind::JumpOne;
            d = (0..pu).map(|j| (j as u32).saturating_sub(1)).collect();
            let mut bv = [0u32; MAX_P];
            for (j, v) in bv.iter_mut().enumerate().take(pu).skip(1) {
                *v = (pu - j) as u32;
            }
            basis_val = bv;
            uniformiser_index = pu - 1;
        }

        let poly = ThetaPoly { k: &kw, r: &r, p: pu };
        let convert = |g: &[KElem], div: u32| -> Result<LElem> {
            let mut out = LElem::default();
            for kk in 0..pu {
                let shifted = if d[kk] >= div {
                    kw.mul(&g[kk], &kw.pow(&kw.pi(), (d[kk] - div) as u64))
                } else {
                    kw.div_pi_pow(&g[kk], div - d[kk])?
                };
                out.0[kk] = kw.truncate_into(&shifted, &k);
            }
            Ok(out)
        };

        let mut table = Vec::with_capacity(pu * pu);
        for i in 0..pu {
            for j in 0..pu {
                let g = poly.theta_pow(i + j);
                table.push(convert(&g, d[i] + d[j])?);
            }
        }
        let mut sigma = [LElem::default(); MAX_P];
        let mut pw = poly.one();
        for (j, slot) in sigma.iter_mut().enumerate().take(pu) {
            if j > 0 {
                pw = poly.mul(&pw, &sig_theta);
            }
            *slot = convert(&pw, d[j])?;
        }
        Ok(Tower { k, p, m, kind, basis_val, table, sigma, uniformiser_index })
    }

    pub fn degree(&self) -> usize {
        self.p as usize
    }

    pub fn zero(&self) -> LElem {
        LElem::default()
    }

    pub fn one(&self) -> LElem {
        self.from_k(&self.k.one())
    }

    pub fn from_k(&self, a: &KElem) -> LElem {
        let mut out = LElem::default();
        out.0[0] = *a;
        out
    }

    pub fn basis(&self, j: usize) -> LElem {
        let mut out = LElem::default();
        out.0[j] = self.k.one();
        out
    }

    pub fn basis_valuation(&self, j: usize) -> u32 {
        self.basis_val[j]
    }

    /// A uniformiser of `L`.
    pub fn uniformiser(&self) -> LElem {
        self.basis(self.uniformiser_index)
    }

    pub fn add(&self, a: &LElem, b: &LElem) -> LElem {
        let mut out = LElem::default();
        for j in 0..self.degree() {
            out.0[j] = self.k.add(&a.0[j], &b.0[j]);
        }
        out
    }

    pub fn sub(&self, a: &LElem, b: &LElem) -> LElem {
        let mut out = LElem::default();
        for j in 0..self.degree() {
            out.0[j] = self.k.sub(&a.0[j], &b.0[j]);
        }
        out
    }

    pub fn scale_k(&self, a: &LElem, c: &KElem) -> LElem {
        let mut out = LElem::default();
        for j in 0..self.degree() {
            out.0[j] = self.k.mul(&a.0[j], c);
        }
        out
    }

    pub fn mul(&self, a: &LElem, b: &LElem) -> LElem {
        let pu = self.degree();
        let mut out = LElem::default();
        for i in 0..pu {
            if self.k.is_zero(&a.0[i]) {
                continue;
            }
            for j in 0..pu {
                if self.k.is_zero(&b.0[j]) {
                    continue;
                }
                let x = self.k.mul(&a.0[i], &b.0[j]);
                let row = &self.table[i * pu + j];
                for kk in 0..pu {
                    if !self.k.is_zero(&row.0[kk]) {
                        out.0[kk] = self.k.add(&out.0[kk], &self.k.mul(&x, &row.0[kk]));
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, a: &LElem, mut e: u64) -> LElem {
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

    /// `v_L` with `v_L(pi_L) = 1`; `None` when every coordinate vanishes.
    pub fn val(&self, a: &LElem) -> Option<u32> {
        (0..self.degree())
            .filter_map(|j| self.k.val(&a.0[j]).map(|v| self.p as u32 * v + self.basis_val[j]))
            .min()
    }

    /// Valuations at or above this are beyond the working precision.
    pub fn val_cap(&self) -> u32 {
        self.p as u32 * self.k.val_cap()
    }

    pub fn sigma(&self, a: &LElem) -> LElem {
        let mut out = LElem::default();
        for j in 0..self.degree() {
            if !self.k.is_zero(&a.0[j]) {
                out = self.add(&out, &self.scale_k(&self.sigma[j], &a.0[j]));
            }
        }
        out
    }

    pub fn sigma_pow(&self, a: &LElem, k: usize) -> LElem {
        (0..k).fold(*a, |acc, _| self.sigma(&acc))
    }

    /// Whether the element lies in `K` up to `v_L >= target`.
    pub fn in_k(&self, a: &LElem, target: u32) -> bool {
        (1..self.degree()).all(|j| {
            self.k
                .val(&a.0[j])
                .is_none_or(|v| self.p as u32 * v + self.basis_val[j] >= target)
        })
    }

    /// `Tr_{L/K}(a)`.
    pub fn trace(&self, a: &LElem) -> Result<KElem> {
        let mut acc = self.zero();
        let mut cur = *a;
        for _ in 0..self.degree() {
            acc = self.add(&acc, &cur);
            cur = self.sigma(&cur);
        }
        if !self.in_k(&acc, self.val_cap()) {
            return Err(Error::PrecisionTooLow { detail: "trace left K".into() });
        }
        Ok(acc.0[0])
    }

    /// `N_{L/K}(a)` as the product of the conjugates.
    pub fn norm(&self, a: &LElem) -> Result<KElem> {
        let mut acc = *a;
        let mut cur = *a;
        for _ in 1..self.degree() {
            cur = self.sigma(&cur);
            acc = self.mul(&acc, &cur);
        }
        if !self.in_k(&acc, self.val_cap()) {
            return Err(Error::PrecisionTooLow { detail: "norm left K".into() });
        }
        Ok(acc.0[0])
    }

    pub fn ramification(&self) -> Result<RamificationData> {
        let pl = self.uniformiser();
        let diff = self.sub(&self.sigma(&pl), &pl);
        let v = self
            .val(&diff)
            .ok_or_else(|| Error::PrecisionTooLow { detail: "sigma fixes the uniformiser".into() })?;
        let t = v - 1;
        Ok(RamificationData { t, m_diff: (t + 1) * (self.p as u32 - 1) })
    }

    /// `v_L(prod_{k=1}^{p-1} (pi_L - sigma^k pi_L))`, the different exponent,
    /// computed without reference to the jump.
    pub fn different_exponent(&self) -> Result<u32> {
        let pl = self.uniformiser();
        let mut acc = self.one();
        let mut conj = pl;
        for _ in 1..self.degree() {
            conj = self.sigma(&conj);
            acc = self.mul(&acc, &self.sub(&pl, &conj));
        }
        self.val(&acc)
            .ok_or_else(|| Error::PrecisionTooLow { detail: "different beyond precision".into() })
    }

    /// `r(n) = min_j v_K(Tr(pi_L^n e_j))` for `n = 0..=n_max`, the exponent
    /// of the ideal `Tr(m_L^n)`.
    pub fn trace_exponents(&self, n_max: u32) -> Result<Vec<u32>> {
        let pl = self.uniformiser();
        let mut pw = self.one();
        let mut out = Vec::new();
        for _ in 0..=n_max {
            let mut best: Option<u32> = None;
            for j in 0..self.degree() {
                let x = self.mul(&pw, &self.basis(j));
                if let Some(v) = self.k.val(&self.trace(&x)?) {
                    best = Some(best.map_or(v, |b| b.min(v)));
                }
            }
            let r = best.ok_or_else(|| Error::PrecisionTooLow { detail: "every trace vanished".into() })?;
            if r >= self.k.val_cap() {
                return Err(Error::PrecisionTooLow { detail: "trace valuation at the precision cap".into() });
            }
            out.push(r);
            pw = self.mul(&pw, &pl);
        }
        Ok(out)
    }
}

/// Polynomials in `theta` of degree `< p`, reduced by the defining relation.
struct ThetaPoly<'a> {
    k: &'a KRing,
    r: &'a [KElem],
    p: usize,
}

impl ThetaPoly<'_> {
    fn one(&self) -> Vec<KElem> {
        let mut v = vec![self.k.zero(); self.p];
        v[0] = self.k.one();
        v
    }

    fn mul(&self, a: &[KElem], b: &[KElem]) -> Vec<KElem> {
        let p = self.p;
        let mut prod = vec![self.k.zero(); 2 * p - 1];
        for i in 0..p {
            for j in 0..p {
                prod[i + j] = self.k.add(&prod[i + j], &self.k.mul(&a[i], &b[j]));
            }
        }
        self.reduce(prod)
    }

    fn reduce(&self, mut prod: Vec<KElem>) -> Vec<KElem> {
        let p = self.p;
        for deg in (p..prod.len()).rev() {
            let c = prod[deg];
            if self.k.is_zero(&c) {
                continue;
            }
            prod[deg] = self.k.zero();
            for i in 0..p {
                prod[deg - p + i] = self.k.add(&prod[deg - p + i], &self.k.mul(&c, &self.r[i]));
            }
        }
        prod.truncate(p);
        prod
    }

    fn theta_pow(&self, n: usize) -> Vec<KElem> {
        let mut v = vec![self.k.zero(); n.max(self.p - 1) + 1];
        v[n] = self.k.one();
        self.reduce(v)
    }
}

/// `L` as a ring for evaluating formal group laws, with `v_L` as valuation.
impl FgRing for Tower {
    type Elem = LElem;

    fn zero(&self) -> LElem {
        LElem::default()
    }

    fn add(&self, a: &LElem, b: &LElem) -> LElem {
        Tower::add(self, a, b)
    }

    fn mul(&self, a: &LElem, b: &LElem) -> LElem {
        Tower::mul(self, a, b)
    }

    fn scale(&self, a: &LElem, c: u64) -> LElem {
        let mut out = LElem::default();
        for j in 0..self.degree() {
            out.0[j] = self.k.scale(&a.0[j], c);
        }
        out
    }

    fn val(&self, a: &LElem) -> Option<u32> {
        Tower::val(self, a)
    }
}

/// `K` as a ring for evaluating formal group laws, with `v_K` as valuation.
impl FgRing for KRing {
    type Elem = KElem;

    fn zero(&self) -> KElem {
        KElem::default()
    }

    fn add(&self, a: &KElem, b: &KElem) -> KElem {
        KRing::add(self, a, b)
    }

    fn mul(&self, a: &KElem, b: &KElem) -> KElem {
        KRing::mul(self, a, b)
    }

    fn scale(&self, a: &KElem, c: u64) -> KElem {
        KRing::scale(self, a, c)
    }

    fn val(&self, a: &KElem) -> Option<u32> {
        KRing::val(self, a)
    }
}

const _: () = assert!(MAX_DEG + 1 == MAX_P);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wild_towers_have_jump_p() {
        for (p, m) in [(3u64, 3u64), (3, 6), (3, 9), (5, 5), (5, 10), (5, 50)] {
            let t = Tower::build(p, m, 10).unwrap();
            let r = t.ramification().unwrap();
            assert_eq!(r.t, p as u32, "p = {p}, m = {m}");
            assert_eq!(t.different_exponent().unwrap(), r.m_diff);
        }
    }

    #[test]
    fn jump_one_towers() {
        for (p, m) in [(3u64, 2u64), (3, 5), (5, 2), (5, 3)] {
            let t = Tower::build(p, m, 10).unwrap();
            let r = t.ramification().unwrap();
            assert_eq!(r.t, 1, "p = {p}, m = {m}");
            assert_eq!(t.different_exponent().unwrap(), r.m_diff);
        }
        assert!(matches!(Tower::build(3, 10, 10), Err(Error::NotTotallyRamified { .. })));
    }

    #[test]
    fn sigma_has_order_p() {
        let t = Tower::build(3, 6, 10).unwrap();
        let x = t.add(&t.uniformiser(), &t.basis(2));
        assert_eq!(t.sigma_pow(&x, 3), x);
        assert_ne!(t.sigma(&x), x);
    }

    #[test]
    fn uniformiser_power_is_generator() {
        // Pi^p = c with v_K(c) = 1
        let t = Tower::build(3, 3, 10).unwrap();
        let c = t.pow(&t.uniformiser(), 3);
        assert!(t.in_k(&c, t.val_cap()));
        assert_eq!(t.k.val(&c.0[0]), Some(1));
        assert_eq!(t.val(&c), Some(3));
    }

    #[test]
    fn rejects_unsupported() {
        assert!(matches!(Tower::build(7, 7, 10), Err(Error::UnsupportedP { .. })));
        assert!(matches!(Tower::build(3, 3, 4), Err(Error::PrecisionTooLow { .. })));
        assert!(matches!(Tower::build(3, 27, 10), Err(Error::DegenerateExtension { .. })));
    }
}
