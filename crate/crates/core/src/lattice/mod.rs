//! Integer lattice geometry in the plane: vectors, simplicial cones, and the
//! two functionals through which discrepancy and ramification are read off.

mod cone;
mod enumerate;
mod functional;
mod torsion;
mod vector;

pub use cone::{normal_form, Cone, NormalForm, Unimodular};
pub use enumerate::enumerate_primitive;
pub use functional::RationalFunctional;
pub use torsion::{
    exclusion_set, set_exclusion_set, TorsionHomomorphism, TorsionValue,
};
pub use vector::{cross, LatticeVector};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("vector {0} is not in the closed cone")]
    NotInCone(LatticeVector),
    #[error("functional is not positive on both rays; the region is unbounded")]
    UnboundedRegion,
    #[error("cone rays {0} and {1} are parallel")]
    DegenerateCone(LatticeVector, LatticeVector),
    #[error("ray {0} is not primitive")]
    NonPrimitive(LatticeVector),
    #[error("torsion denominator must be positive, got {0}")]
    BadDenominator(i64),
    #[error("denominator {den} is not prime to excluded residue characteristic {prime}")]
    ExcludedCharacteristic { den: i64, prime: u64 },
    #[error("exclusion set already configured")]
    ExclusionAlreadySet,
}
