//! Summing the local terms into `dim Sel_p(E/L_m)^G` and scanning over `m`.

use std::fmt;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith;
use crate::curve::{CurveQ, FrobeniusCache, PReduction, ReductionKind};
use crate::cyclo::{self, BehaviorKind, PlaceK, SplitBehavior};
use crate::delta::{self, DeltaContribution, LocalDelta, Place, Reason, UnitSymbolInput};
use crate::error::{Error, Result};

/// Largest number of `m` values a single scan may cover.
pub const SCAN_LIMIT: u64 = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Trivial,
    Nontrivial,
    Undetermined,
}

impl Verdict {
    pub fn from_totals(lo: u32, hi: u32) -> Self {
        if hi == 0 {
            Verdict::Trivial
        } else if lo > 0 {
            Verdict::Nontrivial
        } else {
            Verdict::Undetermined
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Trivial => "trivial",
            Verdict::Nontrivial => "nontrivial",
            Verdict::Undetermined => "undetermined",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hypotheses {
    pub semistable: bool,
    pub good_at_p: bool,
    /// Asserted by the caller, never checked.
    pub selmer_trivial_over_k: bool,
}

impl Hypotheses {
    pub fn all_hold(&self) -> bool {
        self.semistable && self.good_at_p && self.selmer_trivial_over_k
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelmerReport {
    pub curve: String,
    pub p: u64,
    /// `m` after stripping `p`-th powers.
    pub m: u64,
    pub hypotheses: Hypotheses,
    pub contributions: Vec<DeltaContribution>,
    pub total_lo: u32,
    pub total_hi: u32,
    pub verdict: Verdict,
}

impl SelmerReport {
    fn assemble(curve: String, p: u64, m: u64, hypotheses: Hypotheses, contributions: Vec<DeltaContribution>) -> Self {
        let total_lo = contributions.iter().map(|c| c.lo).sum();
        let total_hi = contributions.iter().map(|c| c.hi).sum();
        SelmerReport {
            curve,
            p,
            m,
            hypotheses,
            contributions,
            total_lo,
            total_hi,
            verdict: Verdict::from_totals(total_lo, total_hi),
        }
    }

    /// Finite contributions only.
    pub fn finite(&self) -> impl Iterator<Item = (&PlaceK, &DeltaContribution)> {
        self.contributions.iter().filter_map(|c| match &c.place {
            Place::Finite(v) => Some((v, c)),
            Place::Archimedean => None,
        })
    }

    /// Contribution of one place above `ell`, if `ell` was examined.
    pub fn at(&self, ell: u64) -> Option<&DeltaContribution> {
        self.finite().find(|(v, _)| v.ell == ell).map(|(_, c)| c)
    }

    pub fn to_json_model(&self) -> ReportJson {
        ReportJson {
            curve: self.curve.clone(),
            p: self.p,
            m: self.m,
            hypotheses: self.hypotheses,
            contributions: self.contributions.iter().map(ContributionJson::from).collect(),
            total: Total { lo: self.total_lo, hi: self.total_hi },
            verdict: self.verdict,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_model()).expect("report serializes")
    }
}

/// Serialized form of a report; field order is the wire order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportJson {
    pub curve: String,
    pub p: u64,
    pub m: u64,
    pub hypotheses: Hypotheses,
    pub contributions: Vec<ContributionJson>,
    pub total: Total,
    pub verdict: Verdict,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Total {
    pub lo: u32,
    pub hi: u32,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ContributionJson {
    pub ell: Option<u64>,
    pub f_v: Option<u32>,
    pub q_v: Option<serde_json::Number>,
    pub reduction: String,
    pub behavior: String,
    pub lo: u32,
    pub hi: u32,
    pub reason: Reason,
}

impl From<&DeltaContribution> for ContributionJson {
    fn from(c: &DeltaContribution) -> Self {
        let (ell, f_v, q_v) = match &c.place {
            Place::Finite(v) => (
                Some(v.ell),
                Some(v.f_v),
                Some(v.q_v.to_string().parse().expect("integer literal")),
            ),
            Place::Archimedean => (None, None, None),
        };
        ContributionJson {
            ell,
            f_v,
            q_v,
            reduction: reduction_label(c).to_string(),
            behavior: behavior_label(c.behavior.kind).to_string(),
            lo: c.lo,
            hi: c.hi,
            reason: c.reason,
        }
    }
}

pub fn reduction_label(c: &DeltaContribution) -> &'static str {
    match (&c.place, c.reduction) {
        (Place::Archimedean, _) => "archimedean",
        (_, Some(r)) => match (r.kind, r.sub) {
            (ReductionKind::Good, Some(PReduction::Ordinary)) => "good_ordinary",
            (ReductionKind::Good, Some(PReduction::Supersingular)) => "good_supersingular",
            (ReductionKind::Good, None) => "good",
            (ReductionKind::SplitMult, _) => "split_mult",
            (ReductionKind::NonsplitMult, _) => "nonsplit_mult",
        },
        (_, None) => "unknown",
    }
}

pub fn behavior_label(kind: BehaviorKind) -> &'static str {
    match kind {
        BehaviorKind::Split => "split",
        BehaviorKind::Inert => "inert",
        BehaviorKind::Ramified => "ramified",
    }
}

/// Places of `K` above the primes dividing `m`, `p` and the bad primes,
/// with their behaviour in `L_m`. `m` must already be normalized.
pub fn contributing_places(e: &CurveQ, p: u64, m: u64) -> Result<Vec<(PlaceK, SplitBehavior)>> {
    let mut primes: Vec<u64> = arith::factorize(m).into_keys().collect();
    primes.push(p);
    primes.extend(e.bad_primes()?);
    primes.sort_unstable();
    primes.dedup();
    primes
        .into_iter()
        .map(|ell| {
            let v = cyclo::place_over(ell, p);
            let b = cyclo::behavior_in_lm(&v, m, p)?;
            Ok((v, b))
        })
        .collect()
}

/// Local term at one place, given its behaviour.
pub fn local_delta(
    e: &CurveQ,
    p: u64,
    m: u64,
    v: &PlaceK,
    behavior: SplitBehavior,
    cache: &FrobeniusCache,
) -> Result<(crate::curve::ReductionType, LocalDelta)> {
    let mut red = e.reduction_at(v.ell, v.f_v)?;
    let d = if v.ell == p {
        let sub = e.ordinary_or_supersingular(p)?;
        red.sub = Some(sub);
        match sub {
            PReduction::Supersingular => delta::delta_supersingular_lm(p, m, behavior),
            PReduction::Ordinary => {
                let count = cache.get(e, p)?.point_count(1);
                let anomalous = arith::residue_big(&count, p) == 0;
                delta::delta_ordinary_at_p(anomalous, behavior)
            }
        }
    } else {
        match red.kind {
            ReductionKind::Good => {
                let dim = if behavior.is_ramified() {
                    torsion_dim(e, v, p, cache)?
                } else {
                    0
                };
                delta::delta_good_away_from_p(dim, behavior)
            }
            ReductionKind::SplitMult => {
                let inp = UnitSymbolInput::from_curve(e, v.ell, m)?;
                let c_v = red.c_v().expect("multiplicative reduction has c_v");
                delta::delta_split_mult(&inp, c_v, behavior, v, p)?
            }
            ReductionKind::NonsplitMult => delta::delta_nonsplit_mult(behavior),
        }
    };
    Ok((red, d))
}

fn torsion_dim(e: &CurveQ, v: &PlaceK, p: u64, cache: &FrobeniusCache) -> Result<u32> {
    let frob = cache.get(e, v.ell)?;
    if arith::residue_big(&frob.point_count(v.f_v), p) != 0 {
        return Ok(0);
    }
    e.torsion_dimension_from(&frob, v.f_v, p)
}

pub fn selmer_dimension(e: &CurveQ, p: u64, m: u64, assert_selmer_trivial: bool) -> Result<SelmerReport> {
    selmer_dimension_cached(e, p, m, assert_selmer_trivial, &FrobeniusCache::new())
}

pub fn selmer_dimension_cached(
    e: &CurveQ,
    p: u64,
    m: u64,
    assert_selmer_trivial: bool,
    cache: &FrobeniusCache,
) -> Result<SelmerReport> {
    let hyp = e.check_hypotheses(p)?;
    let (m, _) = cyclo::normalize_m(m, p)?;
    let mut contributions = Vec::new();
    for (v, behavior) in contributing_places(e, p, m)? {
        let (red, d) = local_delta(e, p, m, &v, behavior, cache)?;
        for _ in 0..v.g {
            contributions.push(DeltaContribution::finite(v.clone(), red, behavior, d));
        }
    }
    for _ in 0..(p - 1) / 2 {
        contributions.push(DeltaContribution::archimedean());
    }
    let hypotheses = Hypotheses {
        semistable: hyp.semistable,
        good_at_p: hyp.good_at_p,
        selmer_trivial_over_k: assert_selmer_trivial,
    };
    Ok(SelmerReport::assemble(e.to_string(), p, m, hypotheses, contributions))
}

/// Reports for every `p`-th-power-free `m` in `lo..=hi` accepted by `keep`, in
/// increasing order of `m`.
pub fn scan_m<F>(
    e: &CurveQ,
    p: u64,
    lo: u64,
    hi: u64,
    assert_selmer_trivial: bool,
    keep: F,
) -> Result<Vec<(u64, SelmerReport)>>
where
    F: Fn(&SelmerReport) -> bool + Sync,
{
    if hi < lo {
        return Ok(Vec::new());
    }
    let len = hi - lo + 1;
    if len > SCAN_LIMIT {
        return Err(Error::RangeTooLarge { len, limit: SCAN_LIMIT });
    }
    e.check_hypotheses(p)?;
    let cache = FrobeniusCache::new();
    let rows: Vec<Option<(u64, SelmerReport)>> = (lo.max(2)..=hi)
        .into_par_iter()
        .map(|m| {
            if !cyclo::is_normalized(m, p) {
                return Ok(None);
            }
            let r = selmer_dimension_cached(e, p, m, assert_selmer_trivial, &cache)?;
            Ok(keep(&r).then_some((m, r)))
        })
        .collect::<Result<_>>()?;
    Ok(rows.into_iter().flatten().collect())
}

/// `dim E(F_q)[p]` is nonzero at the places above `ell`.
pub fn is_anomalous_at(e: &CurveQ, ell: u64, p: u64) -> Result<bool> {
    let v = cyclo::place_over(ell, p);
    let count: BigInt = e.trace_of_frobenius(ell)?.point_count(v.f_v);
    Ok(arith::residue_big(&count, p) == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e17a1() -> CurveQ {
        CurveQ::from_i64([1, -1, 1, -1, -14]).unwrap()
    }

    #[test]
    fn places_for_17a1() {
        let e = e17a1();
        let ells: Vec<u64> = contributing_places(&e, 3, 2).unwrap().into_iter().map(|(v, _)| v.ell).collect();
        assert_eq!(ells, vec![2, 3, 17]);
        let ells: Vec<u64> = contributing_places(&e, 3, 187).unwrap().into_iter().map(|(v, _)| v.ell).collect();
        assert_eq!(ells, vec![3, 11, 17]);
    }

    #[test]
    fn growth_when_17_divides_m() {
        let r = selmer_dimension(&e17a1(), 3, 34, true).unwrap();
        assert_eq!(r.verdict, Verdict::Nontrivial);
        assert_eq!(r.at(17).unwrap().lo, 1);
        assert_eq!(r.at(17).unwrap().reason, Reason::SplitMultTameSymbol);
    }

    #[test]
    fn supersingular_at_three() {
        let r = selmer_dimension(&e17a1(), 3, 3, true).unwrap();
        let c = r.at(3).unwrap();
        assert_eq!((c.lo, c.reason), (1, Reason::SupersingularPDividesM));
    }

    #[test]
    fn trivial_case() {
        let r = selmer_dimension(&e17a1(), 3, 2, true).unwrap();
        assert_eq!(r.verdict, Verdict::Trivial);
        assert_eq!(r.contributions.len(), 4);
    }

    #[test]
    fn json_round_trip() {
        let r = selmer_dimension(&e17a1(), 5, 187, true).unwrap();
        let s = r.to_json();
        let back: ReportJson = serde_json::from_str(&s).unwrap();
        assert_eq!(serde_json::to_string(&back).unwrap(), s);
        assert!(s.starts_with("{\"curve\":"));
    }

    #[test]
    fn empty_and_oversized_ranges() {
        let e = e17a1();
        assert!(scan_m(&e, 3, 2, 1, true, |_| true).unwrap().is_empty());
        assert!(matches!(
            scan_m(&e, 3, 2, 200_002, true, |_| true),
            Err(Error::RangeTooLarge { .. })
        ));
    }
}
