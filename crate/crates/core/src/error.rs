use thiserror::Error;

/// Everything that can go wrong in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("singular Weierstrass model (discriminant is zero)")]
    SingularModel,

    #[error("curve is not semistable: additive reduction at {ell}")]
    NotSemistable { ell: u64 },

    #[error("curve has bad reduction at p = {p}")]
    BadAtP { p: u64 },

    #[error("additive reduction at {ell}")]
    AdditiveReduction { ell: u64 },

    #[error("bad reduction at {ell}; a good prime is required")]
    BadReduction { ell: u64 },

    #[error("{ell} exceeds the point-enumeration bound {bound}")]
    EnumerationBoundExceeded { ell: u64, bound: u64 },

    #[error("p = {p} is not supported here (supported: {supported})")]
    UnsupportedP { p: u64, supported: String },

    #[error("{n} is not a prime")]
    NotPrime { n: u64 },

    #[error("p must be an odd prime, got {p}")]
    InvalidP { p: u64 },

    #[error("m = {m} is a perfect p-th power; L_m = K is not a degree-p extension")]
    DegenerateExtension { m: u64 },

    #[error("m = {m} still has a p-th power factor; normalize it first")]
    NotNormalized { m: u64 },

    #[error("denominator divisible by {ell}")]
    DivisionByEll { ell: u64 },

    #[error("ramification jump must be at least 1, got {t}")]
    InvalidJump { t: u32 },

    #[error("range of {len} values exceeds the limit {limit}")]
    RangeTooLarge { len: u64, limit: u64 },

    #[error("m must be at least 2, got {m}")]
    InvalidM { m: u64 },

    #[error("discriminant is too large to factor")]
    DiscriminantTooLarge,

    #[error("requested series precision {requested} exceeds the configured maximum {max}")]
    PrecisionOverflow { requested: usize, max: usize },

    #[error("series precision {prec} cannot certify the height (need more than {needed})")]
    InconclusivePrecision { prec: usize, needed: usize },

    #[error("p-adic precision too low: {detail}")]
    PrecisionTooLow { detail: String },

    #[error("cokernel changed from {low} to {high} when the truncation was enlarged")]
    TruncationTooSmall { low: u32, high: u32 },

    #[error("extension is not totally ramified at p: {detail}")]
    NotTotallyRamified { detail: String },
}

impl Error {
    /// Failures of the standing hypotheses on the curve, as opposed to bad
    /// input or numerical trouble.
    pub fn is_hypothesis_failure(&self) -> bool {
        matches!(
            self,
            Error::NotSemistable { .. } | Error::BadAtP { .. } | Error::AdditiveReduction { .. }
        )
    }

    pub fn is_precision_failure(&self) -> bool {
        matches!(
            self,
            Error::PrecisionTooLow { .. }
                | Error::TruncationTooSmall { .. }
                | Error::InconclusivePrecision { .. }
                | Error::PrecisionOverflow { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
