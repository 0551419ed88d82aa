//! The norm cokernel `F(m_K) / N_F(F(m_L))` for a formal group `F` over
//! `K = Q_p(zeta_p)` and the tower `L = K(m^{1/p})`, computed by brute force
//! in the finite quotient `F(m_K) / F(m_K^T)`.

use std::collections::VecDeque;

use super::group::{FgSeries, NormSeriesDecomposition, DEFAULT_MAX_PREC};
use super::padic::{KElem, KRing};
use super::tower::{LElem, Tower};
use crate::arith;
use crate::error::{Error, Result};

/// Default coefficient precision `N`.
pub const DEFAULT_DIGITS: u32 = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CokernelConfig {
    pub digits: u32,
    /// Filtration truncation; `t + p + 2` when absent.
    pub truncation: Option<u32>,
    /// Largest series precision the computation may request.
    pub max_prec: usize,
}

impl Default for CokernelConfig {
    fn default() -> Self {
        CokernelConfig { digits: DEFAULT_DIGITS, truncation: None, max_prec: 2 * DEFAULT_MAX_PREC }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CokernelResult {
    pub dim: u32,
    /// Ramification jump of the tower.
    pub t: u32,
    pub truncation: u32,
    pub digits: u32,
    /// Filtration levels `v < T` met by the norm image.
    pub image_levels: Vec<u32>,
}

/// `F(m_K) / F(m_K^T)` with elements kept reduced modulo `pi^T`.
struct Quotient<'a> {
    f: &'a FgSeries,
    k: &'a KRing,
    t: u32,
}

impl Quotient<'_> {
    fn add(&self, a: &KElem, b: &KElem) -> Result<KElem> {
        let s = self.f.eval(self.k, a, b, self.t)?;
        Ok(self.k.reduce_mod_pi_pow(&s, self.t))
    }

    /// `[1]a, ..., [p-1]a`.
    fn multiples(&self, a: &KElem) -> Result<Vec<KElem>> {
        let mut out = vec![*a];
        for _ in 2..self.k.p() {
            let next = self.add(out.last().expect("nonempty"), a)?;
            out.push(next);
        }
        Ok(out)
    }

    /// Level of a nonzero class.
    fn level(&self, a: &KElem) -> Option<u32> {
        self.k.val(a).filter(|&v| v < self.t)
    }
}

/// `N_F(x) = F(x, sigma x, ..., sigma^{p-1} x)` to `v_L >= target`.
pub fn norm_f(f: &FgSeries, tower: &Tower, x: &LElem, target: u32) -> Result<KElem> {
    let mut acc = *x;
    let mut cur = *x;
    for _ in 1..tower.degree() {
        cur = tower.sigma(&cur);
        acc = f.eval(tower, &acc, &cur, target)?;
    }
    if !tower.in_k(&acc, target) {
        return Err(Error::PrecisionTooLow { detail: "formal norm left K".into() });
    }
    Ok(acc.0[0])
}

/// `dim_{F_p} F(m_K) / <N_F(F(m_L)), F(m_K^T)>`.
///
/// The image is generated by the norms of `pi_L^n`, `1 <= n < pT`, since
/// those elements generate `F(m_L)` modulo `F(m_L^{pT})`, whose norm lies in
/// `F(m_K^T)`. It is saturated by echelon reduction on the filtration levels:
/// each new pivot also feeds `[p]` of itself back into the queue.
pub fn norm_cokernel_dimension(f: &FgSeries, tower: &Tower, truncation: u32) -> Result<CokernelResult> {
    let p = tower.p;
    if f.p() != p || f.z.n != tower.k.digits() {
        return Err(Error::PrecisionTooLow { detail: "formal group and tower disagree on p or digits".into() });
    }
    let ram = tower.ramification()?;
    if truncation < ram.t + p as u32 {
        return Err(Error::PrecisionTooLow {
            detail: format!("truncation {truncation} is below t + p = {}", ram.t + p as u32),
        });
    }
    if truncation >= tower.k.val_cap() {
        return Err(Error::PrecisionTooLow {
            detail: format!("truncation {truncation} needs more than {} digits", tower.k.digits()),
        });
    }
    let q = Quotient { f, k: &tower.k, t: truncation };
    let target = p as u32 * truncation;
    let pl = tower.uniformiser();

    let mut queue = VecDeque::new();
    let mut pw = pl;
    for _ in 1..target {
        let n = norm_f(f, tower, &pw, target)?;
        queue.push_back(tower.k.reduce_mod_pi_pow(&n, truncation));
        pw = tower.mul(&pw, &pl);
    }

    let mut pivots: Vec<Option<Vec<KElem>>> = vec![None; truncation as usize];
    while let Some(mut g) = queue.pop_front() {
        while let Some(v) = q.level(&g) {
            match &pivots[v as usize] {
                Some(mults) => {
                    let lg = tower.k.lead(&g).expect("nonzero");
                    let lp = tower.k.lead(&mults[0]).expect("nonzero");
                    let c = arith::mul_mod(lg, arith::inv_mod(lp, p).expect("unit"), p);
                    g = q.add(&g, &mults[(p - c - 1) as usize])?;
                }
                None => {
                    let mults = q.multiples(&g)?;
                    queue.push_back(q.add(&mults[mults.len() - 1], &g)?);
                    pivots[v as usize] = Some(mults);
                    break;
                }
            }
        }
    }
    let image_levels: Vec<u32> =
        pivots.iter().enumerate().filter(|(_, s)| s.is_some()).map(|(v, _)| v as u32).collect();
    Ok(CokernelResult {
        dim: truncation - 1 - image_levels.len() as u32,
        t: ram.t,
        truncation,
        digits: tower.k.digits(),
        image_levels,
    })
}

/// The cokernel of `F` in the tower for `m`, computed at `(N, T)` and again
/// at `(N + 2, T + 2)`; a disagreement is reported as `TruncationTooSmall`.
pub fn stable_norm_cokernel(f: &FgSeries, m: u64, cfg: &CokernelConfig) -> Result<CokernelResult> {
    let p = f.p();
    let run = |digits: u32, truncation: Option<u32>| -> Result<CokernelResult> {
        let tower = Tower::build(p, m, digits)?;
        let t = tower.ramification()?.t;
        let truncation = truncation.unwrap_or(t + p as u32 + 2);
        let prec = (p as usize) * truncation as usize;
        if prec > cfg.max_prec {
            return Err(Error::PrecisionOverflow { requested: prec, max: cfg.max_prec });
        }
        let g = f.rebuild(digits, prec)?;
        norm_cokernel_dimension(&g, &tower, truncation)
    };
    let low = run(cfg.digits, cfg.truncation)?;
    let high = run(cfg.digits + 2, Some(low.truncation + 2))?;
    if low.dim != high.dim {
        return Err(Error::TruncationTooSmall { low: low.dim, high: high.dim });
    }
    Ok(low)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TraceIdealRow {
    pub n: u32,
    /// Computed exponent of `Tr(m_L^n)`.
    pub r: u32,
    /// `floor((m_diff + n) / p)` for the tower's own different exponent.
    pub expected: u32,
}

impl TraceIdealRow {
    pub fn holds(&self) -> bool {
        self.r == self.expected
    }
}

pub fn trace_ideal_check(tower: &Tower, n_max: u32) -> Result<Vec<TraceIdealRow>> {
    let m_diff = tower.different_exponent()?;
    let p = tower.p as u32;
    Ok(tower
        .trace_exponents(n_max)?
        .into_iter()
        .zip(0..)
        .map(|(r, n)| TraceIdealRow { n, r, expected: (m_diff + n) / p })
        .collect())
}

/// Valuation of `N_F(x) - Tr(x) - sum a_i N(x)^i` in `K`, next to the
/// exponent of `Tr(x^2 O_L)` that should bound it from below. `None` means
/// the difference vanished to the compared precision.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CongruenceDefect {
    pub val: Option<u32>,
    pub bound: u32,
}

impl CongruenceDefect {
    pub fn holds(&self) -> bool {
        self.val.is_none_or(|v| v >= self.bound)
    }
}

/// Compares the formal norm with its diagonal expansion `dec` (the
/// decomposition of `F_p`) at a nonzero `x` in `m_L`.
pub fn norm_congruence_defect(
    f: &FgSeries,
    dec: &NormSeriesDecomposition,
    tower: &Tower,
    x: &LElem,
) -> Result<CongruenceDefect> {
    let k = &tower.k;
    let p = tower.p as u32;
    let vx = tower
        .val(x)
        .filter(|&v| v > 0)
        .ok_or_else(|| Error::PrecisionTooLow { detail: "sample is zero or not in m_L".into() })?;
    let bound = (tower.different_exponent()? + 2 * vx) / p;
    if dec.n != p as usize || (dec.prec as u32) < p * bound {
        return Err(Error::PrecisionTooLow { detail: "norm series truncated below the bound".into() });
    }
    let nf = norm_f(f, tower, x, p * bound)?;
    let tr = tower.trace(x)?;
    let nx = tower.norm(x)?;
    let mut rhs = tr;
    let mut pw = k.one();
    for i in 1..=dec.max_diagonal_index() {
        pw = k.mul(&pw, &nx);
        let a = dec.a(i);
        if a != 0 {
            rhs = k.add(&rhs, &k.scale(&pw, a));
        }
    }
    let diff = k.reduce_mod_pi_pow(&k.sub(&nf, &rhs), bound);
    Ok(CongruenceDefect { val: k.val(&diff), bound })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::CurveQ;

    fn e17a1() -> CurveQ {
        CurveQ::from_i64([1, -1, 1, -1, -14]).unwrap()
    }

    #[test]
    fn jump_one_norm_is_surjective() {
        let f = FgSeries::of_curve(&e17a1(), 3, 10, 18).unwrap();
        let tower = Tower::build(3, 2, 10).unwrap();
        let r = norm_cokernel_dimension(&f, &tower, 6).unwrap();
        assert_eq!(r.t, 1);
        assert_eq!(r.dim, 0);
    }

    #[test]
    fn rejects_short_truncation() {
        let f = FgSeries::of_curve(&e17a1(), 3, 10, 18).unwrap();
        let tower = Tower::build(3, 3, 10).unwrap();
        assert!(matches!(norm_cokernel_dimension(&f, &tower, 4), Err(Error::PrecisionTooLow { .. })));
    }

    #[test]
    fn multiplicative_group_wild_tower() {
        // local class field theory: K^x / N(L^x) has order p and the units
        // carry all of it for a totally ramified L
        let f = FgSeries::multiplicative(3, 10, 24).unwrap();
        let tower = Tower::build(3, 3, 10).unwrap();
        let r = norm_cokernel_dimension(&f, &tower, 8).unwrap();
        assert_eq!(r.dim, 1);
    }
}
