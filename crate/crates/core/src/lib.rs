//! Exact lattice-cone engine for prime-index Brauer log pairs on local
//! arithmetic surfaces.
//!
//! Everything is integer or rational arithmetic. Items that carry rationals
//! are generic over [`Scalar`]; the aliases below pick arbitrary precision.

pub mod brauer;
pub mod fan;
pub mod hjstring;
pub mod lattice;
pub mod mmp;
pub mod scalar;

pub use scalar::Scalar;

/// Arbitrary-precision rational, the default scalar.
pub type Rat = num_rational::BigRational;
/// Machine-word rational for hot loops over small configurations.
pub type Rat64 = num_rational::Ratio<i64>;

pub type Functional = lattice::RationalFunctional<Rat>;
pub type Verdict = mmp::Verdict<Rat>;
pub type Intersections = mmp::Intersections<Rat>;
pub type ContractionStep = mmp::ContractionStep<Rat>;
pub type ScreenReport = mmp::ScreenReport<Rat>;

pub use brauer::{Ambient, BranchGerm, Cover, ForkData, ForkKind, LocalConfig};
pub use fan::{BlowupWord, FanRep};
pub use hjstring::{FractionPair, HJString};
pub use lattice::{Cone, LatticeVector, TorsionHomomorphism, TorsionValue};
pub use mmp::{ChainCurve, ChainSurface, CurveRam, Germ};
