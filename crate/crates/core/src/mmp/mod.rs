//! Decisions and transformations: terminality, twisted blowups, contraction
//! of chains, factorization, terminal models and the regular-centre screen.

mod castelnuovo;
mod chain;
mod classify;
mod linalg;
mod model;
mod screen;

pub use castelnuovo::{beta_blowup, extract_ray, resolution_chain, zariski_factorize, BetaBlowup, SingularPoint};
pub use chain::{ChainCurve, ChainSurface, ContractionStep, CurveRam, Germ, Intersections};
pub use classify::{classify, fan_terminality, structural_case, FanCheck, Verdict};
pub use model::{terminal_model, TerminalModel};
pub use screen::{
    log_discrepancy_bound, screen_regular_center, tangent_blowup_bound, triple_point_bound,
    Bound, ScreenReport, ScreenVerdict,
};

use thiserror::Error;

use crate::brauer::BrauerError;
use crate::fan::FanError;
use crate::hjstring::HjError;
use crate::lattice::{Cone, LatticeError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MmpError {
    #[error(transparent)]
    Validation(#[from] BrauerError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Fan(#[from] FanError),
    #[error(transparent)]
    String(#[from] HjError),
    #[error("input is not terminal: {0}")]
    NotTerminalInput(String),
    #[error("no curve labelled {0}")]
    UnknownCurve(String),
    #[error("curve {0} is already contracted")]
    CurveContracted(String),
    #[error("intersection matrix is singular")]
    SingularIntersectionMatrix,
    #[error("contracting {curve} leaves a non-terminal state: {reason}")]
    NonTerminalState { curve: String, reason: String },
    #[error("{0} has K.E >= 0 or E^2 >= 0 and cannot be contracted")]
    NotContractible(String),
    #[error("no contractible curve among {remaining:?}")]
    StuckState { remaining: Vec<String> },
    #[error("unsupported configuration: {0}")]
    UnsupportedConfig(String),
    #[error("invalid chain: {0}")]
    InvalidChain(String),
    #[error("subcone {0:?} of the terminal model is not terminal")]
    SubconeNotTerminal(Cone),
}
