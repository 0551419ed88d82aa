//! Galois-invariant `p`-Selmer dimensions of semistable rational elliptic
//! curves in the Kummer extensions `L_m = Q(zeta_p, m^{1/p})`, together with
//! a formal-group laboratory that checks the local norm computations by
//! brute force.

pub mod arith;
pub mod curve;
pub mod cyclo;
pub mod delta;
pub mod divpoly;
pub mod error;
pub mod formal;
pub mod selmer;

pub use curve::{CurveQ, FrobeniusCache, FrobeniusData, PReduction, ReductionKind, ReductionType};
pub use cyclo::{BehaviorKind, PlaceK, SplitBehavior};
pub use delta::{DeltaContribution, LocalDelta, Place, Reason, UnitSymbolInput};
pub use error::{Error, Result};
pub use formal::{CokernelResult, FgSeries, Height, RamificationData, Tower};
pub use selmer::{scan_m, selmer_dimension, Hypotheses, ReportJson, SelmerReport, Verdict};
