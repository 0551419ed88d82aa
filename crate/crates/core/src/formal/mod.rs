//! Formal groups over `Q_p(zeta_p)` and the Kummer tower above it.

pub mod cokernel;
pub mod group;
pub mod padic;
pub mod series;
pub mod tower;

pub use cokernel::{
    norm_cokernel_dimension, norm_congruence_defect, norm_f, stable_norm_cokernel, trace_ideal_check,
    CokernelConfig, CokernelResult, CongruenceDefect, TraceIdealRow,
};
pub use group::{FgKind, FgSeries, Height, NormSeriesDecomposition};
pub use padic::{KElem, KRing, Zpn};
pub use tower::{LElem, RamificationData, Tower, TowerKind};
