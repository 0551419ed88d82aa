//! Rational elliptic curves: invariants, reduction types, Frobenius traces
//! and the dimension of `E(F_q)[p]`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::RwLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{self, residue_big, PolyFp};
use crate::divpoly::DivisionPolynomials;
use crate::error::{Error, Result};

/// Default bound on `ell` for point enumeration.
pub const ENUMERATION_BOUND: u64 = 1_000_000;

/// Primes `p` for which `torsion_dimension` is certified.
pub const TORSION_PRIMES: &[u64] = &[3, 5, 7];

/// An integral Weierstrass model, assumed globally minimal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveQ {
    pub a1: BigInt,
    pub a2: BigInt,
    pub a3: BigInt,
    pub a4: BigInt,
    pub a6: BigInt,
    pub b2: BigInt,
    pub b4: BigInt,
    pub b6: BigInt,
    pub b8: BigInt,
    pub c4: BigInt,
    pub c6: BigInt,
    pub disc: BigInt,
    /// `j = j_num / j_den` in lowest terms with `j_den > 0`.
    pub j_num: BigInt,
    pub j_den: BigInt,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReductionKind {
    Good,
    SplitMult,
    NonsplitMult,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PReduction {
    Ordinary,
    Supersingular,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ReductionType {
    pub kind: ReductionKind,
    /// Filled in only at places above `p`.
    pub sub: Option<PReduction>,
    /// `ord_ell(j)`, or `None` when `j = 0`.
    pub ord_j: Option<i64>,
}

impl ReductionType {
    pub fn is_multiplicative(&self) -> bool {
        self.kind != ReductionKind::Good
    }

    /// Tamagawa number `-ord(j)` for multiplicative reduction.
    pub fn c_v(&self) -> Option<u64> {
        match (self.kind, self.ord_j) {
            (ReductionKind::Good, _) => None,
            (_, Some(o)) if o < 0 => Some((-o) as u64),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusData {
    pub ell: u64,
    pub a_ell: i64,
}

impl FrobeniusData {
    /// `s_f = alpha^f + beta^f` for the Frobenius eigenvalues.
    pub fn s(&self, f: u32) -> BigInt {
        let a = BigInt::from(self.a_ell);
        let ell = BigInt::from(self.ell);
        let (mut prev, mut cur) = (BigInt::from(2), a.clone());
        if f == 0 {
            return prev;
        }
        for _ in 1..f {
            let next = &a * &cur - &ell * &prev;
            prev = cur;
            cur = next;
        }
        cur
    }

    pub fn q(&self, f: u32) -> BigInt {
        num_traits::pow(BigInt::from(self.ell), f as usize)
    }

    /// `#E(F_{ell^f})`.
    pub fn point_count(&self, f: u32) -> BigInt {
        self.q(f) + 1 - self.s(f)
    }
}

/// Multiplicativity of each bad prime together with the two global flags.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypothesisReport {
    pub bad_primes: BTreeMap<u64, bool>,
    pub semistable: bool,
    pub good_at_p: bool,
}

impl CurveQ {
    pub fn new(a: [BigInt; 5]) -> Result<Self> {
        let [a1, a2, a3, a4, a6] = a;
        let b2: BigInt = &a1 * &a1 + 4 * &a2;
        let b4: BigInt = 2 * &a4 + &a1 * &a3;
        let b6: BigInt = &a3 * &a3 + 4 * &a6;
        let b8: BigInt = &a1 * &a1 * &a6 + 4 * &a2 * &a6 - &a1 * &a3 * &a4 + &a2 * &a3 * &a3 - &a4 * &a4;
        let c4: BigInt = &b2 * &b2 - 24 * &b4;
        let c6: BigInt = 36 * &b2 * &b4 - &b2 * &b2 * &b2 - 216 * &b6;
        let disc: BigInt = 9 * &b2 * &b4 * &b6 - &b2 * &b2 * &b8 - 8 * &b4 * &b4 * &b4 - 27 * &b6 * &b6;
        if disc.is_zero() {
            return Err(Error::SingularModel);
        }
        let num: BigInt = &c4 * &c4 * &c4;
        let g = num.gcd(&disc);
        let (mut j_num, mut j_den) = (num / &g, &disc / &g);
        if j_den.is_negative() {
            j_num = -j_num;
            j_den = -j_den;
        }
        Ok(CurveQ { a1, a2, a3, a4, a6, b2, b4, b6, b8, c4, c6, disc, j_num, j_den })
    }

    pub fn from_i64(a: [i64; 5]) -> Result<Self> {
        Self::new(a.map(BigInt::from))
    }

    pub fn a_invariants(&self) -> [&BigInt; 5] {
        [&self.a1, &self.a2, &self.a3, &self.a4, &self.a6]
    }

    /// `ord_ell(j)`, `None` for `j = 0`.
    pub fn ord_j(&self, ell: u64) -> Option<i64> {
        if self.j_num.is_zero() {
            return None;
        }
        Some(arith::valuation_big(&self.j_num, ell) as i64 - arith::valuation_big(&self.j_den, ell) as i64)
    }

    pub fn is_good_at(&self, ell: u64) -> bool {
        residue_big(&self.disc, ell) != 0
    }

    pub fn bad_primes(&self) -> Result<Vec<u64>> {
        Ok(arith::factorize_big(&self.disc)?.into_keys().collect())
    }

    /// Radical of the discriminant, i.e. the conductor when semistable.
    pub fn conductor_if_semistable(&self) -> Result<BigInt> {
        self.check_semistable()?;
        Ok(self.bad_primes()?.into_iter().map(BigInt::from).product())
    }

    fn is_multiplicative_at(&self, ell: u64) -> bool {
        residue_big(&self.c4, ell) != 0
    }

    fn check_semistable(&self) -> Result<BTreeMap<u64, bool>> {
        let mut out = BTreeMap::new();
        for ell in self.bad_primes()? {
            let mult = self.is_multiplicative_at(ell);
            if !mult {
                return Err(Error::NotSemistable { ell });
            }
            out.insert(ell, mult);
        }
        Ok(out)
    }

    /// Validates semistability and good reduction at `p`.
    pub fn check_hypotheses(&self, p: u64) -> Result<HypothesisReport> {
        arith::require_odd_prime(p)?;
        let bad_primes = self.check_semistable()?;
        if bad_primes.contains_key(&p) {
            return Err(Error::BadAtP { p });
        }
        Ok(HypothesisReport { bad_primes, semistable: true, good_at_p: true })
    }

    /// Reduction type over a place of residue degree `f` above `ell`.
    pub fn reduction_at(&self, ell: u64, f: u32) -> Result<ReductionType> {
        let ord_j = self.ord_j(ell);
        if self.is_good_at(ell) {
            return Ok(ReductionType { kind: ReductionKind::Good, sub: None, ord_j });
        }
        if !self.is_multiplicative_at(ell) {
            return Err(Error::AdditiveReduction { ell });
        }
        let kind = if f.is_multiple_of(2) || self.split_over_qell(ell) {
            ReductionKind::SplitMult
        } else {
            ReductionKind::NonsplitMult
        };
        Ok(ReductionType { kind, sub: None, ord_j })
    }

    /// Are the tangents at the node of the reduction mod `ell` rational?
    /// Caller guarantees multiplicative reduction.
    pub fn split_over_qell(&self, ell: u64) -> bool {
        if ell == 2 {
            return self.split_at_two();
        }
        let b = self.two_torsion_poly(ell);
        let g = b.gcd(&b.derivative());
        debug_assert_eq!(g.degree(), Some(1), "node expected");
        let x0 = (ell - g.coeff(0)) % ell;
        let t = arith::add_mod(arith::mul_mod(12 % ell, x0, ell), residue_big(&self.b2, ell), ell);
        arith::is_square_mod(t, ell)
    }

    fn split_at_two(&self) -> bool {
        let [a1, a2, a3, a4, a6] = self.a_invariants().map(|c| residue_big(c, 2));
        for x0 in 0..2u64 {
            for y0 in 0..2u64 {
                let f = (y0 * y0 + a1 * x0 * y0 + a3 * y0 + x0 * x0 * x0 + a2 * x0 * x0 + a4 * x0 + a6) % 2;
                let fx = (a1 * y0 + x0 * x0 + a4) % 2;
                let fy = (a1 * x0 + a3) % 2;
                if f == 0 && fx == 0 && fy == 0 {
                    // tangent cone T^2 + a1 T - (3 x0 + a2)
                    let c = (x0 + a2) % 2;
                    return (0..2u64).any(|t| (t * t + a1 * t + c) % 2 == 0);
                }
            }
        }
        unreachable!("multiplicative reduction has a singular point")
    }

    /// `4x^3 + b2 x^2 + 2 b4 x + b6` over `F_ell`.
    pub fn two_torsion_poly(&self, ell: u64) -> PolyFp {
        PolyFp::from_big(
            &[self.b6.clone(), 2 * &self.b4, self.b2.clone(), BigInt::from(4)],
            ell,
        )
    }

    pub fn ordinary_or_supersingular(&self, p: u64) -> Result<PReduction> {
        if !self.is_good_at(p) {
            return Err(Error::BadAtP { p });
        }
        let frob = self.trace_of_frobenius(p)?;
        Ok(if frob.a_ell.rem_euclid(p as i64) == 0 {
            PReduction::Supersingular
        } else {
            PReduction::Ordinary
        })
    }

    pub fn trace_of_frobenius(&self, ell: u64) -> Result<FrobeniusData> {
        self.trace_of_frobenius_bounded(ell, ENUMERATION_BOUND)
    }

    pub fn trace_of_frobenius_bounded(&self, ell: u64, bound: u64) -> Result<FrobeniusData> {
        arith::require_prime(ell)?;
        if !self.is_good_at(ell) {
            return Err(Error::BadReduction { ell });
        }
        if ell > bound {
            return Err(Error::EnumerationBoundExceeded { ell, bound });
        }
        let a_ell = if ell == 2 { self.trace_at_two() } else { self.trace_odd(ell) };
        assert!(
            (a_ell as i128) * (a_ell as i128) <= 4 * ell as i128,
            "Hasse bound violated at {ell}"
        );
        Ok(FrobeniusData { ell, a_ell })
    }

    fn trace_odd(&self, ell: u64) -> i64 {
        let mut chi = vec![-1i8; ell as usize];
        chi[0] = 0;
        for y in 1..=(ell - 1) / 2 {
            chi[arith::mul_mod(y, y, ell) as usize] = 1;
        }
        let b = self.two_torsion_poly(ell);
        let sum: i64 = (0..ell).map(|x| chi[b.eval(x) as usize] as i64).sum();
        -sum
    }

    fn trace_at_two(&self) -> i64 {
        let [a1, a2, a3, a4, a6] = self.a_invariants().map(|c| residue_big(c, 2));
        let mut count = 1i64;
        for x in 0..2u64 {
            for y in 0..2u64 {
                let lhs = y * y + a1 * x * y + a3 * y;
                let rhs = x * x * x + a2 * x * x + a4 * x + a6;
                if (lhs + rhs) % 2 == 0 {
                    count += 1;
                }
            }
        }
        3 - count
    }

    /// `dim_{F_p} E(F_{ell^f})[p]` for a good prime `ell != p`.
    pub fn torsion_dimension(&self, ell: u64, f: u32, p: u64) -> Result<u32> {
        let frob = self.trace_of_frobenius(ell)?;
        self.torsion_dimension_from(&frob, f, p)
    }

    pub fn torsion_dimension_from(&self, frob: &FrobeniusData, f: u32, p: u64) -> Result<u32> {
        if !TORSION_PRIMES.contains(&p) {
            return Err(Error::UnsupportedP { p, supported: "3, 5, 7".into() });
        }
        let ell = frob.ell;
        if ell == p {
            return Err(Error::InvalidP { p });
        }
        let a = arith::residue_i64(frob.a_ell, p);
        let l = ell % p;
        let disc = arith::sub_mod(arith::mul_mod(a, a, p), arith::mul_mod(4, l, p), p);
        if disc == 0 {
            let c = arith::mul_mod(a, arith::inv_mod(2, p).unwrap(), p);
            if self.frobenius_is_scalar(ell, p, c) {
                return Ok(if arith::pow_mod(c, f as u64, p) == 1 { 2 } else { 0 });
            }
        }
        let chi = PolyFp::new(vec![l, (p - a) % p, 1], p);
        let xf = PolyFp::x(p).pow_mod(f as u64, &chi);
        let g = xf.sub(&PolyFp::constant(1, p)).gcd(&chi);
        Ok(g.degree().unwrap() as u32)
    }

    /// Does `x^ell = x([c]P)` hold on all of `E[p]`, i.e. modulo `psi_p`?
    fn frobenius_is_scalar(&self, ell: u64, p: u64, c: u64) -> bool {
        let mut dp = DivisionPolynomials::new(self, ell);
        let psi_p = dp.f(p as usize);
        let lhs = PolyFp::x(ell).pow_mod(ell, &psi_p).mul(&dp.psi_squared(c as usize));
        lhs.sub(&dp.phi(c as usize)).rem(&psi_p).is_zero()
    }
}

impl fmt::Display for CurveQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{},{},{},{}]", self.a1, self.a2, self.a3, self.a4, self.a6)
    }
}

/// Memo table for Frobenius traces of one curve. Writers insert under the
/// lock and readers see either nothing or the final value.
#[derive(Debug, Default)]
pub struct FrobeniusCache {
    table: RwLock<HashMap<u64, i64>>,
}

impl FrobeniusCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, curve: &CurveQ, ell: u64) -> Result<FrobeniusData> {
        if let Some(&a_ell) = self.table.read().unwrap().get(&ell) {
            return Ok(FrobeniusData { ell, a_ell });
        }
        let data = curve.trace_of_frobenius(ell)?;
        let mut table = self.table.write().unwrap();
        let a_ell = *table.entry(ell).or_insert(data.a_ell);
        Ok(FrobeniusData { ell, a_ell })
    }

    pub fn len(&self) -> usize {
        self.table.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Sanity identities between the invariants.
pub fn invariants_consistent(e: &CurveQ) -> bool {
    let lhs = &e.c4 * &e.c4 * &e.c4 - &e.c6 * &e.c6;
    let ok1 = lhs == BigInt::from(1728) * &e.disc;
    let ok2 = BigInt::from(4) * &e.b8 == &e.b2 * &e.b6 - &e.b4 * &e.b4;
    let ok3 = &e.j_num * &e.disc == &e.c4 * &e.c4 * &e.c4 * &e.j_den;
    let ok4 = e.j_num.gcd(&e.j_den).is_one() || e.j_num.is_zero() && e.j_den.is_one();
    ok1 && ok2 && ok3 && ok4
}
