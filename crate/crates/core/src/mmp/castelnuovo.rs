use std::collections::BTreeSet;

use super::chain::{ChainCurve, ChainSurface, ContractionStep, CurveRam, Germ};
use super::classify::{classify, Verdict};
use super::MmpError;
use crate::brauer::{Ambient, BranchGerm, LocalConfig};
use crate::fan::seed_images;
use crate::hjstring::{cone_weights, HJString};
use crate::lattice::{Cone, LatticeVector};
use crate::Scalar;

/// A singular point of the twisted blowup and the curves resolving it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingularPoint {
    pub curves: Vec<String>,
    pub cone: Cone,
    pub weights: HJString,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BetaBlowup {
    pub chain: ChainSurface,
    /// Image of the single surviving exceptional curve.
    pub target: LatticeVector,
    pub exceptional: String,
    pub singularities: Vec<SingularPoint>,
}

fn target_ray(cfg: &LocalConfig, case: u8) -> LatticeVector {
    let p = cfg.p;
    match (case, cfg.ambient) {
        (2, _) => {
            let on_e1 = cfg.branch_on(LatticeVector::E1).is_some_and(|b| b.e == p);
            if on_e1 {
                LatticeVector::new(p, 1)
            } else {
                LatticeVector::new(1, p)
            }
        }
        (4, Ambient::Hj(fp)) if fp.k() == 1 => LatticeVector::E1,
        (4, Ambient::Hj(fp)) => LatticeVector::new(p, 1 - fp.k()),
        _ => LatticeVector::new(1, 1),
    }
}

fn germ_for(cfg: &LocalConfig, ray: LatticeVector, label: &str) -> Option<Germ> {
    let b: &BranchGerm = cfg.branch_on(ray)?;
    let ram = if b.has_secondary() { CurveRam::Secondary } else { CurveRam::Etale(cfg.zbar.eval(ray)) };
    Some(Germ { label: label.to_string(), e: b.e, g: b.g, ram })
}

/// Minimal resolution of the configuration refined until every ray in `rays`
/// is the image of a curve. Nothing is contracted. Returns the chain and the
/// images of `E_0 .. E_{r+1}`, boundary rays included.
pub fn resolution_chain(cfg: &LocalConfig, rays: &[LatticeVector]) -> Result<(ChainSurface, Vec<LatticeVector>), MmpError> {
    cfg.validate()?;
    if cfg.fork.is_some() {
        return Err(MmpError::UnsupportedConfig("forked configuration".into()));
    }
    let cone = cfg.cone();
    if let Some(&outside) = rays.iter().find(|&&v| !v.is_primitive() || !cone.contains_open(v)) {
        return Err(MmpError::Lattice(crate::lattice::LatticeError::NotInCone(outside)));
    }
    let mut string = cone_weights(&cone);
    let mut images = seed_images(string.weights());
    debug_assert_eq!(*images.last().expect("two images"), cone.w);
    for &target in rays {
        while !images.contains(&target) {
            let node = (0..images.len() - 1)
                .find(|&i| Cone { u: images[i], w: images[i + 1] }.contains_open(target))
                .expect("target lies inside the seed cone");
            string = string.blowup_at(node)?;
            let mediant = images[node].mediant(&images[node + 1]);
            images.insert(node + 1, mediant);
        }
    }

    let secondary = cfg.has_secondary();
    let curves: Vec<ChainCurve> = images[1..images.len() - 1]
        .iter()
        .zip(string.weights())
        .enumerate()
        .map(|(i, (&v, &m))| {
            let label = format!("E{}", i + 1);
            if secondary {
                ChainCurve { label, self_intersection: -m, n: cfg.p, ram: CurveRam::Secondary }
            } else {
                ChainCurve::etale(&label, -m, cfg.zbar.eval(v))
            }
        })
        .collect();
    let chain = ChainSurface::new(cfg.p, curves, germ_for(cfg, cone.u, "C0"), germ_for(cfg, cone.w, "C1"))?;
    Ok((chain, images))
}

/// Extracts the single curve with image `ray`: every other curve of the
/// refined resolution is contracted. Fails unless the result is terminal and
/// the curve can be contracted back.
pub fn extract_ray<F: Scalar>(cfg: &LocalConfig, ray: LatticeVector) -> Result<BetaBlowup, MmpError> {
    let (mut chain, images) = resolution_chain(cfg, &[ray])?;
    let inner = &images[1..images.len() - 1];
    let t_idx = inner.iter().position(|&v| v == ray).expect("target inserted");
    let exceptional = chain.curves[t_idx].label.clone();
    chain.contracted = (0..inner.len()).filter(|&i| i != t_idx).collect::<BTreeSet<_>>();

    let singularities = chain
        .components()
        .into_iter()
        .map(|run| {
            let sub = Cone { u: images[run.start], w: images[run.end + 1] };
            SingularPoint {
                curves: run.clone().map(|i| chain.curves[i].label.clone()).collect(),
                cone: sub,
                weights: cone_weights(&sub),
            }
        })
        .collect();
    chain
        .check_terminal::<F>()
        .map_err(|reason| MmpError::NonTerminalState { curve: exceptional.clone(), reason })?;
    if !chain.contractible::<F>(&exceptional) {
        return Err(MmpError::NotContractible(exceptional));
    }
    Ok(BetaBlowup { chain, target: ray, exceptional, singularities })
}

/// The unique single-curve extraction over the closed point that stays
/// terminal, presented as the minimal resolution refined until the new curve
/// appears, with every other curve contracted.
pub fn beta_blowup<F: Scalar>(cfg: &LocalConfig) -> Result<BetaBlowup, MmpError> {
    let case = match classify::<F>(cfg)? {
        Verdict::Terminal { case } => case,
        other => return Err(MmpError::NotTerminalInput(format!("{other:?}"))),
    };
    extract_ray::<F>(cfg, target_ray(cfg, case))
}

/// Contracts the surviving curves one at a time, always the lowest-index
/// contractible one, checking terminality after every step.
pub fn zariski_factorize<F: Scalar>(chain: &ChainSurface) -> Result<Vec<ContractionStep<F>>, MmpError> {
    chain.validate()?;
    chain
        .check_terminal::<F>()
        .map_err(|reason| MmpError::NonTerminalState { curve: "(input)".into(), reason })?;
    let mut state = chain.clone();
    let mut steps = Vec::new();
    loop {
        let remaining = state.remaining();
        if remaining.is_empty() {
            return Ok(steps);
        }
        let next = remaining
            .iter()
            .map(|&i| state.curves[i].label.clone())
            .find(|label| state.contractible::<F>(label));
        let Some(label) = next else {
            let remaining = remaining.iter().map(|&i| state.curves[i].label.clone()).collect();
            return Err(MmpError::StuckState { remaining });
        };
        let (after, step) = state.contract::<F>(&label)?;
        steps.push(step);
        state = after;
    }
}
