//! Forked dual graphs (types B, C, D) reduced to a single chain.
//!
//! For C and D the fork node keeps its position with weight lowered by one,
//! and a dummy curve `E_0` with zero delta and zero ramification is attached.
//! For B the chain is unfolded into a palindrome around the centre curve.
//! Seed coordinates of the reduced chain are used throughout: `E_0` sits on
//! `(0,1)`, the fork node on `(1,0)`.

use super::{check_branch_value, BranchGerm, BrauerError, Cover, LocalConfig};
use crate::fan::{seed_endpoint, seed_images};
use crate::hjstring::HJString;
use crate::lattice::{Cone, LatticeVector, TorsionHomomorphism, TorsionValue};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ForkKind {
    B,
    C,
    D,
}

/// `chain_weights` runs from the fork (or the double edge) outwards to the
/// curve meeting the end branch. Type B also records the weight of the
/// centre curve on the far side of the double edge.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ForkData {
    pub kind: ForkKind,
    pub chain_weights: Vec<i64>,
    pub center_weight: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ForkConstraint {
    /// Ramification forced on a curve outside the reduced chain.
    Forced { curve: &'static str, value: TorsionValue },
    /// Curves at these image positions of the unfolded chain must agree.
    Mirror { left: usize, right: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForkReduction {
    pub string: HJString,
    pub cone: Cone,
    pub zbar: TorsionHomomorphism,
    pub constraints: Vec<ForkConstraint>,
}

impl ForkData {
    pub fn new(kind: ForkKind, chain_weights: Vec<i64>) -> Self {
        Self { kind, chain_weights, center_weight: None }
    }

    pub fn type_b(chain_weights: Vec<i64>, center_weight: i64) -> Self {
        Self { kind: ForkKind::B, chain_weights, center_weight: Some(center_weight) }
    }

    pub fn reduced_weights(&self) -> Vec<i64> {
        match self.kind {
            ForkKind::C | ForkKind::D => {
                let mut w = self.chain_weights.clone();
                if let Some(first) = w.first_mut() {
                    *first -= 1;
                }
                w
            }
            ForkKind::B => {
                let mut w: Vec<i64> = self.chain_weights.iter().rev().copied().collect();
                w.push(self.center_weight.unwrap_or(0));
                w.extend(self.chain_weights.iter().copied());
                w
            }
        }
    }

    /// Ray carrying the end branch.
    pub fn end_ray(&self) -> LatticeVector {
        seed_endpoint(&self.reduced_weights())
    }

    pub fn reduced_cone(&self) -> Cone {
        Cone { u: LatticeVector::E2, w: self.end_ray() }
    }

    /// Boundary indices for the delta functional; `None` means delta vanishes
    /// there, as on the dummy curve of types C and D.
    pub(crate) fn boundary_indices(&self, cfg: &LocalConfig) -> (Option<i64>, i64) {
        let n = cfg.n_on(self.end_ray());
        match self.kind {
            ForkKind::C | ForkKind::D => (None, n),
            ForkKind::B => (Some(n), n),
        }
    }

    fn validate_shape(&self) -> Result<(), BrauerError> {
        let bad = |msg: &str| Err(BrauerError::InvalidFork(msg.to_string()));
        if self.chain_weights.is_empty() {
            return bad("empty chain");
        }
        if self.chain_weights.iter().any(|&m| m < 2) {
            return bad("exceptional weights must be at least 2");
        }
        match (self.kind, self.center_weight) {
            (ForkKind::B, Some(m0)) if m0 >= 2 => Ok(()),
            (ForkKind::B, _) => bad("type B needs a centre weight of at least 2"),
            (_, Some(_)) => bad("only type B has a centre weight"),
            (_, None) => Ok(()),
        }
    }
}

pub(crate) fn validate(cfg: &LocalConfig, fork: &ForkData) -> Result<(), BrauerError> {
    fork.validate_shape()?;
    if cfg.has_ramified_cover() {
        return Err(BrauerError::SecondaryRamPresent);
    }
    let end = fork.end_ray();
    cfg.validate_rays(&[end])?;
    cfg.validate_zbar_orders()?;
    let z_end = cfg.zbar.eval(end);
    match cfg.branch_on(end) {
        Some(b) => check_branch_value(b, z_end)?,
        None if !z_end.is_zero() => {
            return Err(BrauerError::InconsistentRamification(format!(
                "zbar{end} = {z_end} but no branch sits on the end ray"
            )))
        }
        None => {}
    }
    match fork.kind {
        ForkKind::C | ForkKind::D => {
            let z0 = cfg.zbar.eval(LatticeVector::E2);
            if !z0.is_zero() {
                return Err(BrauerError::InconsistentRamification(format!(
                    "the dummy curve must be unramified, zbar(0,1) = {z0}"
                )));
            }
        }
        ForkKind::B => {
            for (left, right) in mirror_pairs(fork) {
                let images = seed_images(&fork.reduced_weights());
                let (zl, zr) = (cfg.zbar.eval(images[left]), cfg.zbar.eval(images[right]));
                if zl != zr {
                    return Err(BrauerError::InconsistentRamification(format!(
                        "unfolded curves {left} and {right} carry {zl} and {zr}"
                    )));
                }
            }
        }
    }
    Ok(())
}

fn mirror_pairs(fork: &ForkData) -> Vec<(usize, usize)> {
    let last = fork.reduced_weights().len() + 1;
    (0..=last / 2).map(|j| (j, last - j)).filter(|(l, r)| l < r).collect()
}

/// Reduces a forked configuration to a chain plus the relations the fork imposes.
pub fn fork_reduce(cfg: &LocalConfig) -> Result<ForkReduction, BrauerError> {
    let fork = cfg
        .fork
        .as_ref()
        .ok_or_else(|| BrauerError::InvalidFork("configuration has no fork".into()))?;
    if cfg.p == 2 {
        return Err(BrauerError::UnsupportedPrime(2));
    }
    cfg.validate()?;
    let string = HJString::new(fork.reduced_weights())?;
    let zeta1 = cfg.zbar.eval(LatticeVector::E1);
    let constraints = match fork.kind {
        ForkKind::D => {
            // Odd order, so halving is multiplication by (order + 1) / 2.
            let half = ((zeta1.order() + 1) / 2) * zeta1;
            vec![
                ForkConstraint::Forced { curve: "E_b", value: half },
                ForkConstraint::Forced { curve: "E_c", value: half },
            ]
        }
        ForkKind::C => vec![ForkConstraint::Forced { curve: "E_b", value: zeta1 }],
        ForkKind::B => mirror_pairs(fork)
            .into_iter()
            .map(|(left, right)| ForkConstraint::Mirror { left, right })
            .collect(),
    };
    Ok(ForkReduction { string, cone: fork.reduced_cone(), zbar: cfg.zbar, constraints })
}

impl BranchGerm {
    /// Convenience for fork fixtures: the end branch of a fork.
    pub fn on_fork_end(fork: &ForkData, e: i64, g: i64, zeta: TorsionValue) -> Self {
        Self { ray: fork.end_ray(), e, g, cover: Cover::Unramified(zeta) }
    }
}
