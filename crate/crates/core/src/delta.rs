//! Local terms `delta_v` of the Selmer formula, one function per row of the
//! decision table.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::arith::{self, residue_big};
use crate::curve::{CurveQ, ReductionType};
use crate::cyclo::{BehaviorKind, PlaceK, SplitBehavior};
use crate::error::{Error, Result};

/// Which cell of the table produced a value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Reason {
    Zero,
    SplitPlace,
    GoodInert,
    GoodRamifiedTorsion,
    SplitMultTameSymbol,
    SplitMultInertTamagawa,
    NonsplitMult,
    OrdinaryAnomalousRamified,
    OrdinaryAnomalousRamifiedJumpOne,
    OrdinaryNotAnomalous,
    OrdinaryUnramified,
    SupersingularPDividesM,
    SupersingularPCoprimeM,
    SupersingularUnramified,
    GeneralSupersingularBounds,
    GeneralSupersingularJumpOne,
}

impl Reason {
    /// Cells whose value is only known to lie in an interval.
    pub fn is_interval(self) -> bool {
        matches!(
            self,
            Reason::OrdinaryAnomalousRamified
                | Reason::OrdinaryAnomalousRamifiedJumpOne
                | Reason::GeneralSupersingularBounds
        )
    }
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// `lo <= delta_v <= hi`, tagged with the cell that fired.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LocalDelta {
    pub lo: u32,
    pub hi: u32,
    pub reason: Reason,
}

impl LocalDelta {
    pub fn exact(value: u32, reason: Reason) -> Self {
        LocalDelta { lo: value, hi: value, reason }
    }

    pub fn zero(reason: Reason) -> Self {
        Self::exact(0, reason)
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Place {
    Finite(PlaceK),
    Archimedean,
}

/// One place of `K` with its reduction, behaviour and local term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaContribution {
    pub place: Place,
    pub reduction: Option<ReductionType>,
    pub behavior: SplitBehavior,
    pub lo: u32,
    pub hi: u32,
    pub reason: Reason,
}

impl DeltaContribution {
    pub fn finite(place: PlaceK, reduction: ReductionType, behavior: SplitBehavior, d: LocalDelta) -> Self {
        DeltaContribution {
            place: Place::Finite(place),
            reduction: Some(reduction),
            behavior,
            lo: d.lo,
            hi: d.hi,
            reason: d.reason,
        }
    }

    /// Complex places contribute nothing since `p` is odd.
    pub fn archimedean() -> Self {
        DeltaContribution {
            place: Place::Archimedean,
            reduction: None,
            behavior: SplitBehavior::SPLIT,
            lo: 0,
            hi: 0,
            reason: Reason::Zero,
        }
    }
}

/// The data `n, a, b, s, d` with `j = ell^{-n} a/b` and `m = ell^s d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitSymbolInput {
    pub ell: u64,
    pub n: u32,
    pub a: BigInt,
    pub b: BigInt,
    pub s: u32,
    pub d: u64,
}

impl UnitSymbolInput {
    /// Reads `n, a, b` off `j(E)` and `s, d` off `m`. Requires `ord_ell(j) < 0`.
    pub fn from_curve(e: &CurveQ, ell: u64, m: u64) -> Result<Self> {
        if e.j_num.is_zero() || residue_big(&e.j_den, ell) != 0 {
            return Err(Error::BadReduction { ell });
        }
        let n = arith::valuation_big(&e.j_den, ell);
        let b = &e.j_den / num_traits::pow(BigInt::from(ell), n as usize);
        let s = arith::valuation_u64(m, ell);
        let d = m / ell.pow(s);
        Ok(UnitSymbolInput { ell, n, a: e.j_num.clone(), b, s, d })
    }

    /// `u = d^n (a/b)^s mod ell`.
    pub fn unit(&self) -> Result<u64> {
        let ell = self.ell;
        let b = residue_big(&self.b, ell);
        let b_inv = arith::inv_mod(b, ell).ok_or(Error::DivisionByEll { ell })?;
        let ab = arith::mul_mod(residue_big(&self.a, ell), b_inv, ell);
        Ok(arith::mul_mod(
            arith::pow_mod(self.d % ell, self.n as u64, ell),
            arith::pow_mod(ab, self.s as u64, ell),
            ell,
        ))
    }
}

/// Is `u^{(q_v - 1)/p} = 1` in `k_v` for the residue `u` of an integer?
pub fn tame_symbol_trivial(u: u64, v: &PlaceK, p: u64) -> bool {
    arith::pow_mod(u, v.reduced_exponent(p), v.ell) == 1
}

pub fn compute_unit_symbol(inp: &UnitSymbolInput, v: &PlaceK, p: u64) -> Result<bool> {
    Ok(tame_symbol_trivial(inp.unit()?, v, p))
}

pub fn delta_good_away_from_p(dimtors: u32, behavior: SplitBehavior) -> LocalDelta {
    match behavior.kind {
        BehaviorKind::Ramified => LocalDelta::exact(dimtors, Reason::GoodRamifiedTorsion),
        BehaviorKind::Inert => LocalDelta::zero(Reason::GoodInert),
        BehaviorKind::Split => LocalDelta::zero(Reason::SplitPlace),
    }
}

pub fn delta_split_mult(
    inp: &UnitSymbolInput,
    c_v: u64,
    behavior: SplitBehavior,
    v: &PlaceK,
    p: u64,
) -> Result<LocalDelta> {
    Ok(match behavior.kind {
        BehaviorKind::Ramified => {
            let norm = compute_unit_symbol(inp, v, p)?;
            LocalDelta::exact(norm as u32, Reason::SplitMultTameSymbol)
        }
        BehaviorKind::Inert => LocalDelta::exact(c_v.is_multiple_of(p) as u32, Reason::SplitMultInertTamagawa),
        BehaviorKind::Split => LocalDelta::zero(Reason::SplitPlace),
    })
}

pub fn delta_nonsplit_mult(behavior: SplitBehavior) -> LocalDelta {
    match behavior.kind {
        BehaviorKind::Split => LocalDelta::zero(Reason::SplitPlace),
        _ => LocalDelta::zero(Reason::NonsplitMult),
    }
}

pub fn delta_ordinary_at_p(anomalous: bool, behavior: SplitBehavior) -> LocalDelta {
    if !behavior.is_ramified() {
        return LocalDelta::zero(Reason::OrdinaryUnramified);
    }
    if !anomalous {
        return LocalDelta::zero(Reason::OrdinaryNotAnomalous);
    }
    let reason = if behavior.t == Some(1) {
        Reason::OrdinaryAnomalousRamifiedJumpOne
    } else {
        Reason::OrdinaryAnomalousRamified
    };
    LocalDelta { lo: 1, hi: 2, reason }
}

/// Supersingular place above `p` in the family `L_m`.
pub fn delta_supersingular_lm(p: u64, m: u64, behavior: SplitBehavior) -> LocalDelta {
    if m.is_multiple_of(p) {
        LocalDelta::exact((p - 2) as u32, Reason::SupersingularPDividesM)
    } else if behavior.is_ramified() {
        LocalDelta::zero(Reason::SupersingularPCoprimeM)
    } else {
        LocalDelta::zero(Reason::SupersingularUnramified)
    }
}

/// Bounds for a supersingular place of a general cyclic degree-`p` extension
/// with jump `t_w`, residue degree `f_v` and local degree `deg`.
pub fn delta_supersingular_general(t_w: u32, f_v: u32, deg: u32) -> Result<LocalDelta> {
    match t_w {
        0 => Err(Error::InvalidJump { t: t_w }),
        1 => Ok(LocalDelta::zero(Reason::GeneralSupersingularJumpOne)),
        _ => Ok(LocalDelta {
            lo: f_v,
            hi: (f_v * (t_w - 1)).min(deg + 2),
            reason: Reason::GeneralSupersingularBounds,
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::place_over;

    #[test]
    fn table_cells() {
        assert_eq!(delta_good_away_from_p(1, SplitBehavior::TAME).lo, 1);
        assert_eq!(delta_good_away_from_p(2, SplitBehavior::INERT).hi, 0);
        assert_eq!(delta_good_away_from_p(0, SplitBehavior::TAME).hi, 0);
        for b in [SplitBehavior::TAME, SplitBehavior::INERT, SplitBehavior::SPLIT] {
            assert_eq!(delta_nonsplit_mult(b).hi, 0);
        }
        let d = delta_ordinary_at_p(true, SplitBehavior::wild(3));
        assert_eq!((d.lo, d.hi, d.reason), (1, 2, Reason::OrdinaryAnomalousRamified));
        assert_eq!(delta_ordinary_at_p(false, SplitBehavior::wild(3)).hi, 0);
        assert_eq!(delta_ordinary_at_p(true, SplitBehavior::INERT).hi, 0);
        assert_eq!(
            delta_ordinary_at_p(true, SplitBehavior::wild(1)).reason,
            Reason::OrdinaryAnomalousRamifiedJumpOne
        );
    }

    #[test]
    fn supersingular_cells() {
        assert_eq!(delta_supersingular_lm(3, 6, SplitBehavior::wild(3)).lo, 1);
        assert_eq!(delta_supersingular_lm(5, 10, SplitBehavior::wild(5)).lo, 3);
        assert_eq!(delta_supersingular_lm(3, 2, SplitBehavior::wild(1)).hi, 0);
        assert_eq!(delta_supersingular_general(1, 3, 4).unwrap().hi, 0);
        let d = delta_supersingular_general(2, 1, 2).unwrap();
        assert_eq!((d.lo, d.hi), (1, 1));
        let d = delta_supersingular_general(2, 2, 2).unwrap();
        assert_eq!((d.lo, d.hi), (2, 2));
        assert_eq!(delta_supersingular_general(0, 1, 2), Err(Error::InvalidJump { t: 0 }));
    }

    #[test]
    fn unit_symbol_17a1() {
        let e = CurveQ::from_i64([1, -1, 1, -1, -14]).unwrap();
        let v = place_over(17, 3);
        for m in [17u64, 34, 51, 17 * 5] {
            let inp = UnitSymbolInput::from_curve(&e, 17, m).unwrap();
            assert_eq!(inp.n, 4);
            assert!(compute_unit_symbol(&inp, &v, 3).unwrap());
            let d = delta_split_mult(&inp, 4, SplitBehavior::TAME, &v, 3).unwrap();
            assert_eq!(d.lo, 1);
        }
        let inp = UnitSymbolInput::from_curve(&e, 17, 2).unwrap();
        assert_eq!(delta_split_mult(&inp, 4, SplitBehavior::INERT, &v, 3).unwrap().hi, 0);
    }

    #[test]
    fn division_by_ell() {
        let inp = UnitSymbolInput {
            ell: 7,
            n: 1,
            a: BigInt::from(1),
            b: BigInt::from(14),
            s: 1,
            d: 2,
        };
        assert_eq!(inp.unit(), Err(Error::DivisionByEll { ell: 7 }));
    }
}
