//! One-parameter formal group laws over `Z/p^N`.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use super::padic::Zpn;
use super::series::{Bi, BiRing, FgRing, Multi, MultiRing, Uni, UniRing};
use crate::curve::CurveQ;
use crate::error::{Error, Result};

/// Default cap on the total-degree truncation.
pub const DEFAULT_MAX_PREC: usize = 60;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FgKind {
    /// The formal group of a Weierstrass model, stored by its `a`-invariants.
    Curve([BigInt; 5]),
    /// `X + Y + XY`.
    Multiplicative,
    /// `X + Y`.
    Additive,
}

/// A formal group law `F(X, Y)` truncated at total degree `prec`.
#[derive(Clone, Debug)]
pub struct FgSeries {
    pub kind: FgKind,
    pub z: Zpn,
    pub prec: usize,
    pub coeffs: Bi,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Height {
    Finite(u32),
    /// `[p]` vanishes modulo `p`, as for the additive group.
    Infinite,
}

impl FgSeries {
    pub fn of_curve(e: &CurveQ, p: u64, digits: u32, prec: usize) -> Result<Self> {
        Self::of_curve_bounded(e, p, digits, prec, DEFAULT_MAX_PREC)
    }

    pub fn of_curve_bounded(e: &CurveQ, p: u64, digits: u32, prec: usize, max_prec: usize) -> Result<Self> {
        if !e.is_good_at(p) {
            return Err(Error::BadAtP { p });
        }
        check_prec(prec, max_prec)?;
        let a = [e.a1.clone(), e.a2.clone(), e.a3.clone(), e.a4.clone(), e.a6.clone()];
        let z = Zpn::new(p, digits)?;
        let coeffs = weierstrass_law(&a, z, prec);
        let f = FgSeries { kind: FgKind::Curve(a), z, prec, coeffs };
        debug_assert!(f.check_axioms().is_ok());
        Ok(f)
    }

    pub fn multiplicative(p: u64, digits: u32, prec: usize) -> Result<Self> {
        let z = Zpn::new(p, digits)?;
        let r = BiRing { z, prec };
        let coeffs = r.add(&r.add(&r.x(), &r.y()), &r.mul(&r.x(), &r.y()));
        Ok(FgSeries { kind: FgKind::Multiplicative, z, prec, coeffs })
    }

    pub fn additive(p: u64, digits: u32, prec: usize) -> Result<Self> {
        let z = Zpn::new(p, digits)?;
        let r = BiRing { z, prec };
        let coeffs = r.add(&r.x(), &r.y());
        Ok(FgSeries { kind: FgKind::Additive, z, prec, coeffs })
    }

    /// The same law at another precision.
    pub fn rebuild(&self, digits: u32, prec: usize) -> Result<Self> {
        let p = self.z.p;
        match &self.kind {
            FgKind::Curve(a) => {
                let z = Zpn::new(p, digits)?;
                Ok(FgSeries { kind: self.kind.clone(), z, prec, coeffs: weierstrass_law(a, z, prec) })
            }
            FgKind::Multiplicative => Self::multiplicative(p, digits, prec),
            FgKind::Additive => Self::additive(p, digits, prec),
        }
    }

    pub fn p(&self) -> u64 {
        self.z.p
    }

    pub fn coeff(&self, i: usize, j: usize) -> u64 {
        self.coeffs.get(i, j)
    }

    /// Signed representative of a coefficient, for display and tests.
    pub fn coeff_signed(&self, i: usize, j: usize) -> i64 {
        let c = self.coeff(i, j);
        if c > self.z.modulus / 2 {
            c as i64 - self.z.modulus as i64
        } else {
            c as i64
        }
    }

    /// `F(a, b)` in `ring`, dropping every term whose valuation bound reaches
    /// `target`. Fails if the truncation at `prec` could hide such a term.
    pub fn eval<R: FgRing>(&self, ring: &R, a: &R::Elem, b: &R::Elem, target: u32) -> Result<R::Elem> {
        let (va, vb) = match (ring.val(a), ring.val(b)) {
            (None, _) => return Ok(b.clone()),
            (_, None) => return Ok(a.clone()),
            (Some(x), Some(y)) => (x, y),
        };
        if va == 0 || vb == 0 {
            return Err(Error::PrecisionTooLow { detail: "formal group argument is not topologically nilpotent".into() });
        }
        if (self.prec as u64) * (va.min(vb) as u64) < target as u64 {
            return Err(Error::PrecisionTooLow {
                detail: format!("series precision {} too small for target {target}", self.prec),
            });
        }
        let powers = |x: &R::Elem, count: usize| {
            let mut out: Vec<R::Elem> = Vec::with_capacity(count);
            for k in 0..count {
                let next = if k == 0 { x.clone() } else { ring.mul(&out[k - 1], x) };
                out.push(next);
            }
            out
        };
        // apow[i - 1] = a^i, bpow[j - 1] = b^j
        let imax = (target.div_ceil(va) as usize).min(self.prec);
        let jmax = (target.div_ceil(vb) as usize).min(self.prec);
        let apow = powers(a, imax);
        let bpow = powers(b, jmax);
        let mut acc = ring.zero();
        for i in 0..imax {
            let mut inner = ring.zero();
            for j in 1..jmax {
                if i as u32 * va + j as u32 * vb >= target || i + j >= self.prec {
                    break;
                }
                let c = self.coeff(i, j);
                if c != 0 {
                    inner = ring.add(&inner, &ring.scale(&bpow[j - 1], c));
                }
            }
            if i == 0 {
                acc = ring.add(&acc, &inner);
                continue;
            }
            let ai = &apow[i - 1];
            if ring.val(&inner).is_some() {
                acc = ring.add(&acc, &ring.mul(ai, &inner));
            }
            let c = self.coeff(i, 0);
            if c != 0 {
                acc = ring.add(&acc, &ring.scale(ai, c));
            }
        }
        Ok(acc)
    }

    /// `[n](X)` as a univariate series, by repeated addition.
    pub fn multiply_by(&self, n: u64) -> Uni {
        let u = UniRing { z: self.z, prec: self.prec };
        let t = u.t();
        let mut acc = t.clone();
        for _ in 1..n {
            acc = self.compose_uni(&u, &acc, &t);
        }
        acc
    }

    /// `[p](X)`.
    pub fn multiplication_by_p(&self) -> Uni {
        self.multiply_by(self.z.p)
    }

    /// `F(f(t), g(t))` exactly to the series precision.
    fn compose_uni(&self, u: &UniRing, f: &Uni, g: &Uni) -> Uni {
        self.eval(u, f, g, self.prec as u32).expect("series arguments have positive order")
    }

    /// Largest `h` with `[p](X) = g(X^{p^h}) mod p`.
    pub fn height(&self) -> Result<Height> {
        if self.kind == FgKind::Additive {
            return Ok(Height::Infinite);
        }
        let p = self.z.p;
        let mp = self.multiplication_by_p();
        match mp.0.iter().position(|&c| c % p != 0) {
            Some(k) => Ok(Height::Finite(crate::arith::valuation_u64(k as u64, p))),
            None if self.prec <= (p * p) as usize => {
                Err(Error::InconclusivePrecision { prec: self.prec, needed: (p * p) as usize })
            }
            None => Ok(Height::Infinite),
        }
    }

    /// Checks `F(X,0) = X`, `F(0,Y) = Y`, symmetry, and associativity. The
    /// last is verified on all trivariate terms of low degree and on several
    /// one-parameter specialisations to full precision.
    pub fn check_axioms(&self) -> std::result::Result<(), String> {
        let z = self.z;
        for k in 0..self.prec {
            let expect = u64::from(k == 1);
            if self.coeff(k, 0) != expect || self.coeff(0, k) != expect {
                return Err(format!("identity axiom fails in degree {k}"));
            }
        }
        for (i, j, c) in self.coeffs.terms() {
            if self.coeff(j, i) != c {
                return Err(format!("not symmetric at X^{i} Y^{j}"));
            }
        }
        let low = self.prec.min(10);
        let r = MultiRing { z, nvars: 3, prec: low, cap: None };
        let (x, y, w) = (r.var(0), r.var(1), r.var(2));
        let lhs = self.eval(&r, &x, &self.eval(&r, &y, &w, low as u32).unwrap(), low as u32).unwrap();
        let rhs = self.eval(&r, &self.eval(&r, &x, &y, low as u32).unwrap(), &w, low as u32).unwrap();
        if lhs != rhs {
            return Err("associativity fails in low degree".into());
        }
        let u = UniRing { z, prec: self.prec };
        let samples: [(u64, u64, u64); 3] = [(1, 2, 3), (5, 7, 11), (2, 13, 29)];
        for (a, b, c) in samples {
            let (fa, fb, fc) = (u.monomial(1, a), u.monomial(1, b), u.monomial(1, c));
            let l = self.compose_uni(&u, &fa, &self.compose_uni(&u, &fb, &fc));
            let rr = self.compose_uni(&u, &self.compose_uni(&u, &fa, &fb), &fc);
            if l != rr {
                return Err(format!("associativity fails on the line ({a}, {b}, {c}) t"));
            }
        }
        Ok(())
    }

    /// `F_n(X_1, ..., X_n)`, built as `F(F_{n-1}, X_n)`, split into its linear
    /// part, the diagonal `(X_1 ... X_n)^i` and the remaining cyclic orbits.
    pub fn symmetric_norm_series(&self, n: usize, prec: usize, cap: Option<u32>) -> Result<NormSeriesDecomposition> {
        check_prec(prec, self.prec.max(prec))?;
        if prec > self.prec {
            return Err(Error::PrecisionOverflow { requested: prec, max: self.prec });
        }
        let r = MultiRing { z: self.z, nvars: n, prec, cap };
        let mut acc = r.var(0);
        for k in 1..n {
            acc = self.eval(&r, &acc, &r.var(k), prec as u32)?;
        }
        Ok(NormSeriesDecomposition::from_series(&acc, n, prec, self.z))
    }
}

fn check_prec(prec: usize, max: usize) -> Result<()> {
    if prec > max {
        return Err(Error::PrecisionOverflow { requested: prec, max });
    }
    if prec < 2 {
        return Err(Error::PrecisionTooLow { detail: "series precision must be at least 2".into() });
    }
    Ok(())
}

/// The Weierstrass formal group law from the chord construction in the
/// parameter `z = -x/y`: the third root of the cubic cut out by the line
/// `w = lambda z + nu` is read off the sum of the roots.
fn weierstrass_law(a: &[BigInt; 5], z: Zpn, prec: usize) -> Bi {
    let [a1, a2, a3, a4, a6] = a.clone().map(|c| z.from_big(&c));
    // w(z) to degree prec
    let u = UniRing { z, prec: prec + 1 };
    let t = u.t();
    let t2 = u.mul(&t, &t);
    let t3 = u.mul(&t2, &t);
    let mut w = t3.clone();
    loop {
        let w2 = u.mul(&w, &w);
        let w3 = u.mul(&w2, &w);
        let mut next = t3.clone();
        next = u.add(&next, &u.scale(&u.mul(&t, &w), a1));
        next = u.add(&next, &u.scale(&u.mul(&t2, &w), a2));
        next = u.add(&next, &u.scale(&w2, a3));
        next = u.add(&next, &u.scale(&u.mul(&t, &w2), a4));
        next = u.add(&next, &u.scale(&w3, a6));
        if next == w {
            break;
        }
        w = next;
    }
    let r = BiRing { z, prec };
    let (x, y) = (r.x(), r.y());
    // lambda = sum_n w_n (X^n - Y^n)/(X - Y)
    let mut lambda = r.zero();
    for (n, &c) in w.0.iter().enumerate() {
        if c == 0 {
            continue;
        }
        for k in 0..n {
            let (i, j) = (k, n - 1 - k);
            if i + j < prec {
                let cur = lambda.get(i, j);
                lambda.set(i, j, z.add(cur, c));
            }
        }
    }
    let w_bi = Uni(w.0[..prec].to_vec());
    let wx = r.from_uni_x(&w_bi);
    let nu = r.sub(&wx, &r.mul(&lambda, &x));
    let l2 = r.mul(&lambda, &lambda);
    let l3 = r.mul(&l2, &lambda);
    let ln = r.mul(&lambda, &nu);
    let l2n = r.mul(&l2, &nu);
    let mut num = r.scale(&lambda, a1);
    num = r.add(&num, &r.scale(&l2, a3));
    num = r.add(&num, &r.scale(&nu, a2));
    num = r.add(&num, &r.scale(&ln, z.mul(2, a4)));
    num = r.add(&num, &r.scale(&l2n, z.mul(3, a6)));
    let mut den = r.constant(1);
    den = r.add(&den, &r.scale(&lambda, a2));
    den = r.add(&den, &r.scale(&l2, a4));
    den = r.add(&den, &r.scale(&l3, a6));
    let z3 = r.neg(&r.add(&r.mul(&num, &r.inv(&den)), &r.add(&x, &y)));
    // inverse i(z) = -z / (1 - a1 z - a3 w(z))
    let w3 = r.compose_uni(&w_bi, &z3);
    let mut d = r.constant(1);
    d = r.sub(&d, &r.scale(&z3, a1));
    d = r.sub(&d, &r.scale(&w3, a3));
    r.neg(&r.mul(&z3, &r.inv(&d)))
}

/// `F_n` sorted into the pieces that matter for norms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormSeriesDecomposition {
    pub n: usize,
    pub prec: usize,
    /// Coefficient of each `X_k`; equal to 1 for a group law.
    pub trace_coeff: u64,
    /// `(i, a_i)` for the terms `a_i (X_1 ... X_n)^i`.
    pub diagonal: Vec<(u32, u64)>,
    /// Remaining terms of degree at least two, one representative per orbit
    /// under cyclic shifts of the variables.
    pub tail: Vec<(Vec<u32>, u64)>,
    /// The coefficients are constant on orbits of the full symmetric group.
    pub symmetric: bool,
    z: Zpn,
}

impl NormSeriesDecomposition {
    fn from_series(s: &Multi, n: usize, prec: usize, z: Zpn) -> Self {
        let mut unit = vec![0u32; n];
        unit[0] = 1;
        let trace_coeff = s.get(&unit).copied().unwrap_or(0);
        let mut diagonal = Vec::new();
        let mut tail = BTreeMap::new();
        let mut symmetric = true;
        for (e, &c) in s {
            let mut sorted = e.clone();
            sorted.sort_unstable();
            if s.get(&sorted).copied().unwrap_or(0) != c {
                symmetric = false;
            }
            let deg: u32 = e.iter().sum();
            if deg == 1 {
                continue;
            }
            if e.iter().all(|&x| x == e[0]) {
                diagonal.push((e[0], c));
                continue;
            }
            let rep = (0..n).map(|k| rotate(e, k)).min().unwrap();
            tail.entry(rep).or_insert(c);
        }
        NormSeriesDecomposition { n, prec, trace_coeff, diagonal, tail: tail.into_iter().collect(), symmetric, z }
    }

    /// `a_i`, zero if absent.
    pub fn a(&self, i: u32) -> u64 {
        self.diagonal.iter().find(|(k, _)| *k == i).map_or(0, |(_, c)| *c)
    }

    /// `v_p(a_i)`, or `None` when `a_i = 0` to the working precision.
    pub fn val_a(&self, i: u32) -> Option<u32> {
        self.z.val(self.a(i))
    }

    /// Largest `i` whose diagonal monomial fits under the truncation.
    pub fn max_diagonal_index(&self) -> u32 {
        ((self.prec - 1) / self.n) as u32
    }
}

fn rotate(e: &[u32], k: usize) -> Vec<u32> {
    let n = e.len();
    (0..n).map(|i| e[(i + k) % n]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e17a1() -> CurveQ {
        CurveQ::from_i64([1, -1, 1, -1, -14]).unwrap()
    }

    #[test]
    fn low_degree_terms() {
        let f = FgSeries::of_curve(&e17a1(), 3, 10, 8).unwrap();
        // X + Y - a1 XY - a2 (X^2 Y + X Y^2) - ...
        assert_eq!(f.coeff_signed(1, 1), -1);
        assert_eq!(f.coeff_signed(2, 1), 1);
        assert_eq!(f.coeff_signed(1, 2), 1);
        // -(2 a3 X^3 Y - (a1 a2 - 3 a3) X^2 Y^2 + 2 a3 X Y^3)
        assert_eq!(f.coeff_signed(3, 1), -2);
        assert_eq!(f.coeff_signed(2, 2), -4);
        f.check_axioms().unwrap();
    }

    #[test]
    fn closed_forms() {
        let m = FgSeries::multiplicative(3, 8, 12).unwrap();
        m.check_axioms().unwrap();
        assert_eq!(m.height().unwrap(), Height::Finite(1));
        let a = FgSeries::additive(3, 8, 12).unwrap();
        a.check_axioms().unwrap();
        assert_eq!(a.height().unwrap(), Height::Infinite);
    }

    #[test]
    fn heights_of_17a1() {
        let f = FgSeries::of_curve(&e17a1(), 3, 6, 12).unwrap();
        assert_eq!(f.height().unwrap(), Height::Finite(2));
        let g = FgSeries::of_curve(&e17a1(), 5, 6, 12).unwrap();
        assert_eq!(g.height().unwrap(), Height::Finite(1));
        let short = FgSeries::of_curve(&e17a1(), 3, 6, 9).unwrap();
        assert!(matches!(short.height(), Err(Error::InconclusivePrecision { .. })));
    }

    #[test]
    fn norm_series_base_case() {
        let f = FgSeries::of_curve(&e17a1(), 3, 6, 10).unwrap();
        let d = f.symmetric_norm_series(2, 10, None).unwrap();
        assert!(d.symmetric);
        assert_eq!(d.a(1), f.coeff(1, 1));
        assert_eq!(d.a(3), f.coeff(3, 3));
    }
}
