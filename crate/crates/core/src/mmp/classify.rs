use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;

use super::MmpError;
use crate::brauer::{delta_functional, fork_reduce, Ambient, BranchGerm, ForkKind, LocalConfig};
use crate::fan::seed_images;
use crate::lattice::{enumerate_primitive, LatticeVector, RationalFunctional, TorsionHomomorphism};
use crate::Scalar;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict<F> {
    Terminal { case: u8 },
    NotTerminal { witness: LatticeVector, b_value: F },
    Unsupported { reason: String },
}

impl<F> Verdict<F> {
    pub fn is_terminal(&self) -> bool {
        matches!(self, Verdict::Terminal { .. })
    }
}

/// Outcome of the exact scan over all exceptional curves of the cone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FanCheck<F> {
    Terminal,
    Violation { witness: LatticeVector, delta: F, b_value: F },
}

/// b-discrepancy of the curve with image `v`.
pub(crate) fn b_at<F: Scalar>(
    delta: &RationalFunctional<F>,
    zbar: &TorsionHomomorphism,
    secondary: bool,
    p: i64,
    v: LatticeVector,
) -> (F, F) {
    let d = delta.eval_linear(v);
    // With cancelling secondary ramification every exceptional is ramified of order p.
    let n = if secondary { p } else { zbar.eval(v).order() };
    let b = d.clone() - F::recip_int(n);
    (d, b)
}

/// Every primitive `v` of the open cone with non-positive b-discrepancy.
/// Both failure criteria need delta at most one, which bounds the scan.
pub(crate) fn violators<F: Scalar>(
    delta: &RationalFunctional<F>,
    zbar: &TorsionHomomorphism,
    secondary: bool,
    p: i64,
) -> Result<Vec<(LatticeVector, F, F)>, MmpError> {
    let candidates = enumerate_primitive(&delta.cone, delta, &F::one())?;
    Ok(candidates
        .into_iter()
        .map(|v| {
            let (d, b) = b_at(delta, zbar, secondary, p, v);
            (v, d, b)
        })
        .filter(|(_, _, b)| !b.is_positive())
        .collect())
}

/// Smallest delta first; ties go to the vector nearest the `(1,0)` axis.
fn witness_order<F: Scalar>(x: &(LatticeVector, F, F), y: &(LatticeVector, F, F)) -> Ordering {
    x.1.cmp(&y.1)
        .then(x.0.b.abs().cmp(&y.0.b.abs()))
        .then(x.0.a.cmp(&y.0.a))
}

pub(crate) fn scan<F: Scalar>(
    delta: &RationalFunctional<F>,
    zbar: &TorsionHomomorphism,
    secondary: bool,
    p: i64,
) -> Result<FanCheck<F>, MmpError> {
    let worst = violators(delta, zbar, secondary, p)?.into_iter().min_by(witness_order);
    Ok(match worst {
        None => FanCheck::Terminal,
        Some((witness, delta, b_value)) => FanCheck::Violation { witness, delta, b_value },
    })
}

/// Same answer as [`scan`], found by walking the mediant tree over the seed
/// chain `images` in increasing delta and stopping at the first violator.
/// Children have strictly larger delta than their parents, so the heap pops
/// curves in witness order and the search never materializes the triangle.
pub(crate) fn lazy_scan<F: Scalar>(
    images: &[LatticeVector],
    delta: &RationalFunctional<F>,
    zbar: &TorsionHomomorphism,
    secondary: bool,
    p: i64,
) -> FanCheck<F> {
    type Node<F> = Reverse<(F, i64, i64, LatticeVector, Option<(LatticeVector, LatticeVector)>)>;
    let node = |v: LatticeVector, parents| -> Node<F> { Reverse((delta.eval_linear(v), v.b.abs(), v.a, v, parents)) };
    let mut heap: BinaryHeap<Node<F>> = BinaryHeap::new();
    for pair in images.windows(2) {
        heap.push(node(pair[0].mediant(&pair[1]), Some((pair[0], pair[1]))));
    }
    if images.len() > 2 {
        for &v in &images[1..images.len() - 1] {
            heap.push(node(v, None));
        }
    }
    while let Some(Reverse((d, _, _, v, parents))) = heap.pop() {
        if d > F::one() {
            break;
        }
        let (_, b_value) = b_at(delta, zbar, secondary, p, v);
        if !b_value.is_positive() {
            return FanCheck::Violation { witness: v, delta: d, b_value };
        }
        if let Some((l, r)) = parents {
            heap.push(node(l.mediant(&v), Some((l, v))));
            heap.push(node(v.mediant(&r), Some((v, r))));
        }
    }
    FanCheck::Terminal
}

/// Exact terminality test by the fan calculus, valid for every prime.
pub fn fan_terminality<F: Scalar>(cfg: &LocalConfig) -> Result<FanCheck<F>, MmpError> {
    cfg.validate()?;
    if cfg.fork.as_ref().is_some_and(|f| f.kind != ForkKind::B) {
        return Err(MmpError::UnsupportedConfig("types C and D have no positive delta on (0,1)".into()));
    }
    let delta = delta_functional::<F>(cfg)?;
    scan(&delta, &cfg.zbar, cfg.has_secondary(), cfg.p)
}

/// Which of the four terminal shapes the data has, ignoring the scan.
pub fn structural_case(cfg: &LocalConfig) -> Option<u8> {
    if cfg.fork.is_some() || cfg.tangency_d.is_some() {
        return None;
    }
    let p = cfg.p;
    let active: Vec<&BranchGerm> = cfg.branches.iter().filter(|b| b.n() > 1).collect();
    let count = |pred: &dyn Fn(&BranchGerm) -> bool| active.iter().filter(|b| pred(b)).count();
    let pure_g = count(&|b| b.e == 1 && b.g == p);
    let beta_p = count(&|b| b.e == p && b.g == 1);
    match cfg.ambient {
        Ambient::Regular if cfg.has_secondary() => (beta_p == 2 && active.len() == 2).then_some(3),
        Ambient::Regular if cfg.zbar.is_zero() => (pure_g == active.len() && pure_g <= 1).then_some(1),
        Ambient::Regular => (beta_p == 1 && pure_g + 1 == active.len()).then_some(2),
        Ambient::Hj(fp) => {
            let ok = fp.m() == p
                && !cfg.has_secondary()
                && !cfg.zbar.is_zero()
                && pure_g == active.len()
                && pure_g <= 1;
            ok.then_some(4)
        }
    }
}

/// Decides terminality of a prime-index configuration.
pub fn classify<F: Scalar>(cfg: &LocalConfig) -> Result<Verdict<F>, MmpError> {
    cfg.validate()?;
    let unsupported = |reason: String| Ok(Verdict::Unsupported { reason });
    if cfg.p == 2 {
        return unsupported("p = 2 is outside the classification".into());
    }
    if cfg.fork.is_some() {
        return classify_fork(cfg);
    }
    if let Some(d) = cfg.tangency_d {
        return unsupported(format!("tangential branches (d = {d}); use the regular-centre screen"));
    }
    let case = structural_case(cfg);
    let fan = fan_terminality::<F>(cfg)?;
    if cfg.p > 5 {
        return match (fan, case) {
            (FanCheck::Violation { witness, b_value, .. }, _) => Ok(Verdict::NotTerminal { witness, b_value }),
            (FanCheck::Terminal, Some(case)) => Ok(Verdict::Terminal { case }),
            (FanCheck::Terminal, None) => unsupported("terminal by scan but matches no known case".into()),
        };
    }
    match (fan, case) {
        (FanCheck::Terminal, Some(case)) => Ok(Verdict::Terminal { case }),
        (FanCheck::Terminal, None) => unsupported(format!("p = {} outside the proven cases", cfg.p)),
        (FanCheck::Violation { witness, b_value, .. }, _) => unsupported(format!(
            "p = {} outside the proven cases; {witness} has b = {b_value}",
            cfg.p
        )),
    }
}

fn classify_fork<F: Scalar>(cfg: &LocalConfig) -> Result<Verdict<F>, MmpError> {
    let red = fork_reduce(cfg)?;
    let fork = cfg.fork.as_ref().expect("fork present");
    let delta = delta_functional::<F>(cfg)?;
    match fork.kind {
        ForkKind::C | ForkKind::D => {
            let witness = LatticeVector::E1;
            let (_, b_value) = b_at(&delta, &red.zbar, false, cfg.p, witness);
            if b_value.is_positive() {
                Ok(Verdict::Unsupported { reason: format!("fork node has b = {b_value} > 0") })
            } else {
                Ok(Verdict::NotTerminal { witness, b_value })
            }
        }
        ForkKind::B => match lazy_scan(&seed_images(red.string.weights()), &delta, &red.zbar, false, cfg.p) {
            FanCheck::Violation { witness, b_value, .. } => Ok(Verdict::NotTerminal { witness, b_value }),
            FanCheck::Terminal => Ok(Verdict::Unsupported {
                reason: "unfolded chain passes the scan despite the mirror constraint".into(),
            }),
        },
    }
}
