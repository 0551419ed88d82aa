//! The `verify` suite: formal-group and tower checks with computed values.

use std::fmt;

use selmer_core::cyclo::{behavior_in_lm, normalize_m, place_over};
use selmer_core::delta::delta_supersingular_lm;
use selmer_core::formal::{
    stable_norm_cokernel, trace_ideal_check, CokernelConfig, FgSeries, Height, Tower,
};
use selmer_core::{CurveQ, Error, PReduction};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// The computation ran out of precision; never counted as a pass.
    Precision,
    Info,
    Skip,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Precision => "PREC",
            Status::Info => "INFO",
            Status::Skip => "SKIP",
        })
    }
}

#[derive(Clone, Debug)]
pub struct Check {
    pub name: &'static str,
    pub status: Status,
    pub detail: String,
}

impl Check {
    fn new(name: &'static str, pass: bool, detail: String) -> Self {
        Check { name, status: if pass { Status::Pass } else { Status::Fail }, detail }
    }

    fn from_error(name: &'static str, err: &Error) -> Self {
        let status = if err.is_precision_failure() { Status::Precision } else { Status::Fail };
        Check { name, status, detail: err.to_string() }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}  {}: {}", self.status, self.name, self.detail)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Settings {
    pub p: u64,
    pub m: u64,
    pub digits: u32,
}

/// Rejects `p` outside the lab's range before any work is done.
pub fn check_p(p: u64) -> Result<(), Error> {
    if !(p == 3 || p == 5) {
        return Err(Error::UnsupportedP { p, supported: "3, 5".into() });
    }
    Ok(())
}

pub fn tower_checks(s: Settings) -> Result<Vec<Check>, Error> {
    check_p(s.p)?;
    let (m, _) = normalize_m(s.m, s.p)?;
    let mut out = Vec::new();
    let tower = match Tower::build(s.p, m, s.digits) {
        Ok(t) => t,
        Err(Error::NotTotallyRamified { detail }) => {
            out.push(Check { name: "tower", status: Status::Skip, detail });
            return Ok(out);
        }
        Err(e) => return Err(e),
    };
    let expected_t = behavior_in_lm(&place_over(s.p, s.p), m, s.p)?.t;
    out.push(match (tower.ramification(), tower.different_exponent()) {
        (Ok(r), Ok(d)) => Check::new(
            "ramification",
            Some(r.t) == expected_t && d == r.m_diff,
            format!("t = {}, (t+1)(p-1) = {}, different exponent {d}, place table t = {expected_t:?}", r.t, r.m_diff),
        ),
        (Err(e), _) | (_, Err(e)) => Check::from_error("ramification", &e),
    });
    let n_max = 3 * s.p as u32;
    out.push(match trace_ideal_check(&tower, n_max) {
        Ok(rows) => {
            let r: Vec<String> = rows.iter().map(|x| x.r.to_string()).collect();
            let e: Vec<String> = rows.iter().map(|x| x.expected.to_string()).collect();
            Check::new(
                "trace ideals",
                rows.iter().all(|x| x.holds()),
                format!("n = 0..{n_max}: r = {}; floor((m_diff + n)/p) = {}", r.join(","), e.join(",")),
            )
        }
        Err(e) => Check::from_error("trace ideals", &e),
    });
    Ok(out)
}

pub fn curve_checks(e: &CurveQ, s: Settings) -> Result<Vec<Check>, Error> {
    check_p(s.p)?;
    let p = s.p;
    let (m, _) = normalize_m(s.m, p)?;
    let reduction = e.ordinary_or_supersingular(p)?;
    let mut out = Vec::new();

    let prec = (p * p) as usize + 1;
    let f = FgSeries::of_curve(e, p, s.digits, prec)?;
    out.push(match f.check_axioms() {
        Ok(()) => Check::new("group law", true, format!("identity, symmetry, associativity to degree {prec}")),
        Err(msg) => Check::new("group law", false, msg),
    });

    let expected_h = match reduction {
        PReduction::Ordinary => 1,
        PReduction::Supersingular => 2,
    };
    let height = f.height();
    out.push(match &height {
        Ok(h) => Check::new("height", *h == Height::Finite(expected_h), format!("{h:?}, Frobenius says {expected_h}")),
        Err(err) => Check::from_error("height", err),
    });

    out.push(diagonal_pattern(&f, expected_h));
    out.extend(tower_checks(Settings { m, ..s })?);

    let behavior = behavior_in_lm(&place_over(p, p), m, p)?;
    let cfg = CokernelConfig { digits: s.digits, ..CokernelConfig::default() };
    out.push(match stable_norm_cokernel(&f, m, &cfg) {
        Ok(r) => {
            let detail = format!("dim {} at N = {}, T = {} (stable at N+2, T+2), t = {}", r.dim, r.digits, r.truncation, r.t);
            match reduction {
                PReduction::Supersingular if r.t == 1 => Check::new("norm cokernel", r.dim == 0, detail + "; t = 1 forces 0"),
                PReduction::Supersingular => {
                    let cell = delta_supersingular_lm(p, m, behavior);
                    Check::new(
                        "norm cokernel",
                        cell.lo <= r.dim && r.dim <= cell.hi,
                        format!("{detail}; table cell {} ({})", cell.lo, cell.reason),
                    )
                }
                PReduction::Ordinary => Check { name: "norm cokernel", status: Status::Info, detail },
            }
        }
        Err(Error::NotTotallyRamified { detail }) => Check { name: "norm cokernel", status: Status::Skip, detail },
        Err(err) => Check::from_error("norm cokernel", &err),
    });
    Ok(out)
}

/// `v(a_i) >= 1` below `i = p^{h-1}` and `v(a_{p^{h-1}}) = 0` for height `h`.
fn diagonal_pattern(f: &FgSeries, h: u32) -> Check {
    let p = f.p();
    let key = p.pow(h - 1) as u32;
    let prec = p as usize * key as usize + 1;
    if p as usize * prec > 64 {
        return Check {
            name: "norm series",
            status: Status::Skip,
            detail: format!("F_{p} to degree {prec} is beyond the desk budget"),
        };
    }
    let g = match f.rebuild(f.z.n, prec) {
        Ok(g) => g,
        Err(e) => return Check::from_error("norm series", &e),
    };
    match g.symmetric_norm_series(p as usize, prec, None) {
        Ok(d) => {
            let vals: Vec<(u32, Option<u32>)> = (1..=key).map(|i| (i, d.val_a(i))).collect();
            let ok = vals.iter().all(|&(i, v)| if i == key { v == Some(0) } else { v.is_none_or(|v| v >= 1) });
            Check::new("norm series", ok, format!("v(a_i) for i = 1..{key}: {vals:?}"))
        }
        Err(e) => Check::from_error("norm series", &e),
    }
}

/// `0` when everything passed, `3` when the only problems were precision,
/// `1` otherwise.
pub fn exit_status(checks: &[Check]) -> u8 {
    if checks.iter().any(|c| c.status == Status::Fail) {
        1
    } else if checks.iter().any(|c| c.status == Status::Precision) {
        3
    } else {
        0
    }
}
