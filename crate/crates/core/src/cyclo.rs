//! Places of `K = Q(zeta_p)` and their behaviour in `L_m = K(m^{1/p})`.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::arith;
use crate::error::{Error, Result};

/// A place `v` of `K` above the rational prime `ell`; `g` counts its conjugates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PlaceK {
    pub ell: u64,
    pub e_v: u32,
    pub f_v: u32,
    pub g: u32,
    pub q_v: BigUint,
}

pub fn place_over(ell: u64, p: u64) -> PlaceK {
    if ell == p {
        return PlaceK { ell, e_v: (p - 1) as u32, f_v: 1, g: 1, q_v: BigUint::from(p) };
    }
    let f_v = arith::multiplicative_order(ell, p);
    let g = ((p - 1) / f_v as u64) as u32;
    PlaceK { ell, e_v: 1, f_v, g, q_v: num_traits::pow(BigUint::from(ell), f_v as usize) }
}

impl PlaceK {
    /// `((q_v - 1)/p) mod (ell - 1)`; enough for exponentiating prime-field residues.
    pub fn reduced_exponent(&self, p: u64) -> u64 {
        let e = (&self.q_v - 1u32) / p;
        (e % (self.ell - 1)).to_u64().unwrap()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BehaviorKind {
    Split,
    Inert,
    Ramified,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SplitBehavior {
    pub kind: BehaviorKind,
    /// Highest ramification jump, present only for ramified places above `p`.
    pub t: Option<u32>,
}

impl SplitBehavior {
    pub const SPLIT: Self = SplitBehavior { kind: BehaviorKind::Split, t: None };
    pub const INERT: Self = SplitBehavior { kind: BehaviorKind::Inert, t: None };
    pub const TAME: Self = SplitBehavior { kind: BehaviorKind::Ramified, t: None };

    pub fn wild(t: u32) -> Self {
        SplitBehavior { kind: BehaviorKind::Ramified, t: Some(t) }
    }

    pub fn is_ramified(&self) -> bool {
        self.kind == BehaviorKind::Ramified
    }
}

/// Exponents of `p`-th powers stripped from `m`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct NormalizationReport {
    pub original: u64,
    pub removed: BTreeMap<u64, u32>,
}

/// Removes every `p`-th power factor from `m`.
pub fn normalize_m(m: u64, p: u64) -> Result<(u64, NormalizationReport)> {
    if m < 2 {
        return Err(Error::InvalidM { m });
    }
    let mut out = 1u64;
    let mut removed = BTreeMap::new();
    for (q, e) in arith::factorize(m) {
        let keep = e % p as u32;
        if e >= p as u32 {
            removed.insert(q, e - keep);
        }
        out *= q.pow(keep);
    }
    if out == 1 {
        return Err(Error::DegenerateExtension { m });
    }
    Ok((out, NormalizationReport { original: m, removed }))
}

pub fn is_normalized(m: u64, p: u64) -> bool {
    m >= 2 && arith::factorize(m).values().all(|&e| (e as u64) < p)
}

/// Behaviour of `v` in `L_m`. The jump above `p` is `p` when `p | m` (the
/// Kummer generator has valuation prime to `p`) and `1` when `m^{p-1}` is
/// not `1 mod p^2`; otherwise the place is unramified and splits.
pub fn behavior_in_lm(v: &PlaceK, m: u64, p: u64) -> Result<SplitBehavior> {
    if !is_normalized(m, p) {
        return Err(Error::NotNormalized { m });
    }
    let ell = v.ell;
    if ell == p {
        if m.is_multiple_of(p) {
            return Ok(SplitBehavior::wild(p as u32));
        }
        let p2 = p * p;
        return Ok(if arith::pow_mod(m % p2, p - 1, p2) != 1 {
            SplitBehavior::wild(1)
        } else {
            SplitBehavior::SPLIT
        });
    }
    if m.is_multiple_of(ell) {
        return Ok(SplitBehavior::TAME);
    }
    let e = v.reduced_exponent(p);
    Ok(if arith::pow_mod(m % ell, e, ell) == 1 {
        SplitBehavior::SPLIT
    } else {
        SplitBehavior::INERT
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn places() {
        let v = place_over(17, 3);
        assert_eq!((v.e_v, v.f_v, v.g), (1, 2, 1));
        assert_eq!(v.q_v, BigUint::from(289u32));
        let w = place_over(3, 3);
        assert_eq!((w.e_v, w.f_v, w.g), (2, 1, 1));
        let u = place_over(31, 5);
        assert_eq!((u.f_v, u.g), (1, 4));
        let x = place_over(2, 7);
        assert_eq!((x.f_v, x.g), (3, 2));
    }

    #[test]
    fn normalization() {
        assert_eq!(normalize_m(24, 3).unwrap().0, 3);
        assert_eq!(normalize_m(7, 3).unwrap().0, 7);
        assert_eq!(normalize_m(27, 3), Err(Error::DegenerateExtension { m: 27 }));
        assert_eq!(normalize_m(1, 3), Err(Error::InvalidM { m: 1 }));
        let (m, rep) = normalize_m(2 * 2 * 2 * 2 * 5, 3).unwrap();
        assert_eq!(m, 10);
        assert_eq!(rep.removed.get(&2), Some(&3));
    }

    #[test]
    fn behaviours() {
        let p = 3;
        let v17 = place_over(17, p);
        assert_eq!(behavior_in_lm(&v17, 34, p).unwrap(), SplitBehavior::TAME);
        let v3 = place_over(3, p);
        assert_eq!(behavior_in_lm(&v3, 6, p).unwrap(), SplitBehavior::wild(3));
        // 10^2 = 100 = 1 mod 9: unramified
        assert_eq!(behavior_in_lm(&v3, 10, p).unwrap(), SplitBehavior::SPLIT);
        assert_eq!(behavior_in_lm(&v3, 2, p).unwrap(), SplitBehavior::wild(1));
        assert_eq!(behavior_in_lm(&v3, 8, p), Err(Error::NotNormalized { m: 8 }));
    }
}
