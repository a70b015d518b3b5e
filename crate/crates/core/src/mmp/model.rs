use super::classify::{classify, violators, Verdict};
use super::MmpError;
use crate::brauer::{delta_functional, Ambient, BranchGerm, LocalConfig};
use crate::hjstring::{cone_weights, HJString};
use crate::lattice::{normal_form, Cone, LatticeVector};
use crate::Scalar;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TerminalModel {
    /// Rays of the extracted curves, ordered from the first boundary ray.
    pub extracted: Vec<LatticeVector>,
    /// Minimal-resolution weights of each subcone; empty for regular points.
    pub singularities: Vec<HJString>,
    /// Each subcone as a configuration in its own normal form.
    pub pieces: Vec<LocalConfig>,
}

/// Extracts every exceptional curve with non-positive b-discrepancy.
pub fn terminal_model<F: Scalar>(cfg: &LocalConfig) -> Result<TerminalModel, MmpError> {
    cfg.validate()?;
    if cfg.fork.is_some() || cfg.tangency_d.is_some() {
        return Err(MmpError::UnsupportedConfig("forked or tangential configuration".into()));
    }
    if cfg.p == 2 {
        return Err(MmpError::UnsupportedConfig("p = 2".into()));
    }
    let cone = cfg.cone();
    let delta = delta_functional::<F>(cfg)?;
    let mut extracted: Vec<LatticeVector> = violators(&delta, &cfg.zbar, cfg.has_secondary(), cfg.p)?
        .into_iter()
        .map(|(v, _, _)| v)
        .collect();
    if extracted.is_empty() {
        return Ok(TerminalModel {
            extracted,
            singularities: vec![cone_weights(&cone)],
            pieces: vec![cfg.clone()],
        });
    }
    if cfg.has_secondary() {
        return Err(MmpError::UnsupportedConfig("extraction under secondary ramification".into()));
    }
    extracted.sort_by(|&x, &y| cone.angular_cmp(x, y));

    let mut rays = vec![cone.u];
    rays.extend(&extracted);
    rays.push(cone.w);
    let mut singularities = Vec::new();
    let mut pieces = Vec::new();
    for pair in rays.windows(2) {
        let sub = Cone::new(pair[0], pair[1])?;
        let piece = sub_config(cfg, &sub)?;
        match classify::<F>(&piece)? {
            Verdict::Terminal { .. } => {}
            _ if cfg.p <= 5 => {
                return Err(MmpError::UnsupportedConfig(format!("piece {sub:?} outside the proven cases")))
            }
            _ => return Err(MmpError::SubconeNotTerminal(sub)),
        }
        singularities.push(cone_weights(&sub));
        pieces.push(piece);
    }
    Ok(TerminalModel { extracted, singularities, pieces })
}

/// The configuration seen at the point of a subcone, moved to normal form.
fn sub_config(cfg: &LocalConfig, sub: &Cone) -> Result<LocalConfig, MmpError> {
    let nf = normal_form(sub);
    let ambient = Ambient::from_normal_form(nf.m, nf.k)?;
    let mut branches = Vec::new();
    for ray in [sub.u, sub.w] {
        let moved = nf.transform.apply(ray);
        if let Some(b) = cfg.branch_on(ray) {
            branches.push(BranchGerm { ray: moved, ..b.clone() });
        } else {
            let z = cfg.zbar.eval(ray);
            if !z.is_zero() {
                branches.push(BranchGerm::unramified(moved, z.order(), 1, z));
            }
        }
    }
    Ok(LocalConfig {
        p: cfg.p,
        ambient,
        branches,
        zbar: cfg.zbar.pushforward(&nf.transform),
        tangency_d: None,
        fork: None,
    })
}
