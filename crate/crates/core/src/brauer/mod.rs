//! Local data of a prime-index Brauer log pair: branches through the closed
//! point, their indices and covers, and the torsion homomorphism recording
//! how the class ramifies on every exceptional curve.

mod fork;

pub use fork::{fork_reduce, ForkConstraint, ForkData, ForkKind, ForkReduction};

use num_integer::Integer;
use thiserror::Error;

use crate::hjstring::{FractionPair, HjError};
use crate::lattice::{
    exclusion_set, Cone, LatticeError, LatticeVector, RationalFunctional, TorsionHomomorphism,
    TorsionValue,
};
use crate::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BrauerError {
    #[error("index {0} is not prime")]
    NotPrime(i64),
    #[error("ramification index e={e}, g={g} does not divide p={p}")]
    IndexNotDividingP { e: i64, g: i64, p: i64 },
    #[error("index {value} is not prime to excluded residue characteristic {prime}")]
    ExcludedIndex { value: i64, prime: u64 },
    #[error("at most two branches fit on a cone, got {0}")]
    TooManyBranches(usize),
    #[error("branch ray {0} is not a boundary ray of the ambient cone")]
    BranchOffRay(LatticeVector),
    #[error("two branches sit on ray {0}")]
    DuplicateRay(LatticeVector),
    #[error("inconsistent ramification: {0}")]
    InconsistentRamification(String),
    #[error("a branch carries secondary ramification")]
    SecondaryRamPresent,
    #[error("prime {0} is not supported here")]
    UnsupportedPrime(i64),
    #[error("tangential data needs a regular ambient and d >= 1")]
    BadTangency,
    #[error("invalid fork data: {0}")]
    InvalidFork(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    String(#[from] HjError),
}

/// The cyclic cover of a branch curve attached to the ramification of the class.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Cover {
    /// Unramified over the closed point, given by a class of order `e`.
    Unramified(TorsionValue),
    /// Ramified; the local secondary values at the closed point.
    Ramified(Vec<TorsionValue>),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BranchGerm {
    pub ray: LatticeVector,
    pub e: i64,
    pub g: i64,
    pub cover: Cover,
}

impl BranchGerm {
    pub fn unramified(ray: LatticeVector, e: i64, g: i64, zeta: TorsionValue) -> Self {
        Self { ray, e, g, cover: Cover::Unramified(zeta) }
    }

    pub fn ramified(ray: LatticeVector, e: i64, g: i64, local_values: Vec<TorsionValue>) -> Self {
        Self { ray, e, g, cover: Cover::Ramified(local_values) }
    }

    /// A branch carrying only the multiplier `g`.
    pub fn pure_g(ray: LatticeVector, g: i64) -> Self {
        Self::unramified(ray, 1, g, TorsionValue::ZERO)
    }

    /// Localized index `n = e g`.
    pub fn n(&self) -> i64 {
        self.e * self.g
    }

    pub fn has_secondary(&self) -> bool {
        matches!(&self.cover, Cover::Ramified(vals) if vals.iter().any(|t| !t.is_zero()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Ambient {
    Regular,
    /// Cyclic quotient singularity with cone `(0,1), (m,-k)`.
    Hj(FractionPair),
}

impl Ambient {
    pub fn cone(&self) -> Cone {
        match self {
            Ambient::Regular => Cone::standard(),
            Ambient::Hj(fp) => Cone { u: LatticeVector::E2, w: LatticeVector::new(fp.m(), -fp.k()) },
        }
    }

    /// Ambient of the normal form `(m, k)`; determinant one is regular.
    pub fn from_normal_form(m: i64, k: i64) -> Result<Self, HjError> {
        if m == 1 {
            Ok(Ambient::Regular)
        } else {
            Ok(Ambient::Hj(FractionPair::new(m, k)?))
        }
    }
}

/// Hensel-local Brauer log pair of prime index.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LocalConfig {
    pub p: i64,
    pub ambient: Ambient,
    pub branches: Vec<BranchGerm>,
    pub zbar: TorsionHomomorphism,
    pub tangency_d: Option<i64>,
    pub fork: Option<ForkData>,
}

impl LocalConfig {
    pub fn regular(p: i64) -> Self {
        Self {
            p,
            ambient: Ambient::Regular,
            branches: Vec::new(),
            zbar: TorsionHomomorphism::ZERO,
            tangency_d: None,
            fork: None,
        }
    }

    pub fn hj(p: i64, m: i64, k: i64) -> Result<Self, HjError> {
        Ok(Self { ambient: Ambient::Hj(FractionPair::new(m, k)?), ..Self::regular(p) })
    }

    pub fn with_branch(mut self, b: BranchGerm) -> Self {
        self.branches.push(b);
        self
    }

    /// A fork configuration; the ambient field is not consulted for forks.
    pub fn fork(p: i64, fork: ForkData) -> Self {
        Self { fork: Some(fork), ..Self::regular(p) }
    }

    pub fn with_zbar(mut self, e1: TorsionValue, e2: TorsionValue) -> Self {
        self.zbar = TorsionHomomorphism::new(e1, e2);
        self
    }

    /// The seed cone: the ambient cone, or the reduced cone of a fork.
    pub fn cone(&self) -> Cone {
        match &self.fork {
            Some(f) => f.reduced_cone(),
            None => self.ambient.cone(),
        }
    }

    pub fn branch_on(&self, ray: LatticeVector) -> Option<&BranchGerm> {
        self.branches.iter().find(|b| b.ray == ray)
    }

    /// Localized index of the curve on a boundary ray; one when absent.
    pub fn n_on(&self, ray: LatticeVector) -> i64 {
        self.branch_on(ray).map_or(1, BranchGerm::n)
    }

    pub fn has_secondary(&self) -> bool {
        self.branches.iter().any(BranchGerm::has_secondary)
    }

    pub(crate) fn has_ramified_cover(&self) -> bool {
        self.branches.iter().any(|b| matches!(b.cover, Cover::Ramified(_)))
    }

    pub fn validate(&self) -> Result<(), BrauerError> {
        if !is_prime(self.p) {
            return Err(BrauerError::NotPrime(self.p));
        }
        if self.branches.len() > 2 {
            return Err(BrauerError::TooManyBranches(self.branches.len()));
        }
        for b in &self.branches {
            self.validate_indices(b)?;
        }
        if let Some(d) = self.tangency_d {
            if d < 1 || self.ambient != Ambient::Regular || self.fork.is_some() {
                return Err(BrauerError::BadTangency);
            }
        }
        self.validate_secondary_cancellation()?;
        if let Some(fork) = &self.fork {
            return fork::validate(self, fork);
        }
        let cone = self.cone();
        self.validate_rays(&[cone.u, cone.w])?;
        if self.has_secondary() {
            return Ok(());
        }
        for ray in [cone.u, cone.w] {
            let z = self.zbar.eval(ray);
            match self.branch_on(ray) {
                None if !z.is_zero() => {
                    return Err(BrauerError::InconsistentRamification(format!(
                        "zbar{ray} = {z} but no ramified branch sits on {ray}"
                    )))
                }
                Some(b) => check_branch_value(b, z)?,
                None => {}
            }
        }
        self.validate_zbar_orders()
    }

    fn validate_indices(&self, b: &BranchGerm) -> Result<(), BrauerError> {
        let p = self.p;
        let bad = b.e < 1 || b.g < 1 || p % b.e != 0 || p % b.g != 0 || p % b.n() != 0;
        if bad {
            return Err(BrauerError::IndexNotDividingP { e: b.e, g: b.g, p });
        }
        for &prime in exclusion_set() {
            for value in [b.e, b.g] {
                if value.unsigned_abs().gcd(&prime) != 1 {
                    return Err(BrauerError::ExcludedIndex { value, prime });
                }
            }
        }
        if let Cover::Unramified(zeta) = &b.cover {
            if zeta.order() != b.e {
                return Err(BrauerError::InconsistentRamification(format!(
                    "cover class {zeta} has order {} but e = {}",
                    zeta.order(),
                    b.e
                )));
            }
        }
        Ok(())
    }

    pub(crate) fn validate_rays(&self, rays: &[LatticeVector]) -> Result<(), BrauerError> {
        for (i, b) in self.branches.iter().enumerate() {
            if !rays.contains(&b.ray) {
                return Err(BrauerError::BranchOffRay(b.ray));
            }
            if self.branches[..i].iter().any(|o| o.ray == b.ray) {
                return Err(BrauerError::DuplicateRay(b.ray));
            }
        }
        Ok(())
    }

    /// Secondary values at the closed point must cancel.
    fn validate_secondary_cancellation(&self) -> Result<(), BrauerError> {
        let total: TorsionValue = self
            .branches
            .iter()
            .filter_map(|b| match &b.cover {
                Cover::Ramified(vals) => Some(vals.iter().copied().sum::<TorsionValue>()),
                Cover::Unramified(_) => None,
            })
            .sum();
        if !total.is_zero() {
            return Err(BrauerError::InconsistentRamification(format!(
                "secondary values at the closed point sum to {total}, not 0"
            )));
        }
        Ok(())
    }

    pub(crate) fn validate_zbar_orders(&self) -> Result<(), BrauerError> {
        for z in [self.zbar.value_e1, self.zbar.value_e2] {
            if self.p % z.order() != 0 {
                return Err(BrauerError::InconsistentRamification(format!(
                    "zbar value {z} has order not dividing p = {}",
                    self.p
                )));
            }
        }
        Ok(())
    }
}

pub(crate) fn check_branch_value(b: &BranchGerm, z: TorsionValue) -> Result<(), BrauerError> {
    let ok = match &b.cover {
        Cover::Unramified(zeta) => *zeta == z,
        Cover::Ramified(_) => z.order() == b.e,
    };
    if ok {
        Ok(())
    } else {
        Err(BrauerError::InconsistentRamification(format!(
            "zbar{} = {z} does not match the branch (e = {})",
            b.ray, b.e
        )))
    }
}

pub fn is_prime(n: i64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// `b = a + 1 - 1/n`.
pub fn b_from_a<F: Scalar>(a: F, n: i64) -> F {
    a + F::one() - F::recip_int(n)
}

/// Ramification on the exceptional curve of a blowup: the sum of the branch
/// classes weighted by their multiplicities at the centre.
pub fn blowup_ram(rams: &[(Cover, i64)]) -> Result<TorsionValue, BrauerError> {
    rams.iter()
        .map(|(cover, mult)| match cover {
            Cover::Unramified(zeta) => Ok(*mult * *zeta),
            Cover::Ramified(_) => Err(BrauerError::SecondaryRamPresent),
        })
        .sum()
}

/// delta-discrepancy functional: `1/n` on each boundary ray.
pub fn delta_functional<F: Scalar>(cfg: &LocalConfig) -> Result<RationalFunctional<F>, BrauerError> {
    let cone = cfg.cone();
    let (nu, nw) = match &cfg.fork {
        Some(f) => f.boundary_indices(cfg),
        None => (Some(cfg.n_on(cone.u)), cfg.n_on(cone.w)),
    };
    let vu = nu.map_or_else(F::zero, F::recip_int);
    Ok(RationalFunctional::new(cone, vu, F::recip_int(nw)))
}

/// The validated ramification homomorphism.
pub fn ram_hom(cfg: &LocalConfig) -> Result<TorsionHomomorphism, BrauerError> {
    if cfg.has_ramified_cover() {
        return Err(BrauerError::SecondaryRamPresent);
    }
    cfg.validate()?;
    Ok(cfg.zbar)
}
