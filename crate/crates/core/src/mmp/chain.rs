use std::collections::BTreeSet;
use std::ops::Range;

use super::classify::{scan, FanCheck};
use super::linalg::solve;
use super::MmpError;
use crate::brauer::is_prime;
use crate::fan::seed_images;
use crate::hjstring::{cone_weights, HJString};
use crate::lattice::{Cone, LatticeVector, RationalFunctional, TorsionHomomorphism, TorsionValue};
use crate::Scalar;

/// Ramification of the class along a curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CurveRam {
    /// The cover is unramified and given by this class.
    Etale(TorsionValue),
    /// The cover itself ramifies; the class has order `p` along the curve.
    Secondary,
}

impl CurveRam {
    fn zeta(&self) -> Option<TorsionValue> {
        match self {
            CurveRam::Etale(z) => Some(*z),
            CurveRam::Secondary => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ChainCurve {
    pub label: String,
    pub self_intersection: i64,
    pub n: i64,
    pub ram: CurveRam,
}

impl ChainCurve {
    pub fn etale(label: &str, self_intersection: i64, zeta: TorsionValue) -> Self {
        Self { label: label.into(), self_intersection, n: zeta.order(), ram: CurveRam::Etale(zeta) }
    }

    pub fn weight(&self) -> i64 {
        -self.self_intersection
    }
}

/// Non-exceptional curve meeting an end of the chain.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Germ {
    pub label: String,
    pub e: i64,
    pub g: i64,
    pub ram: CurveRam,
}

impl Germ {
    pub fn n(&self) -> i64 {
        self.e * self.g
    }
}

/// A chain of rational curves `E_1 - ... - E_r`, possibly with germs at both
/// ends, some of whose curves have been contracted.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ChainSurface {
    pub p: i64,
    pub curves: Vec<ChainCurve>,
    pub left: Option<Germ>,
    pub right: Option<Germ>,
    pub contracted: BTreeSet<usize>,
}

/// Intersection data of a surviving curve on the partially contracted surface.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Intersections<F> {
    pub k_dot_e: F,
    pub e_sq: F,
    /// b-values of the contracted curves, in chain order.
    pub b_values: Vec<(String, F)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContractionStep<F> {
    pub curve: String,
    pub k_dot_e: F,
    pub e_sq: F,
    /// Minimal-resolution weights of the point the curve's component becomes;
    /// `None` for a regular point.
    pub singularity: Option<HJString>,
}

/// What sits at a position of the chain extended by its two ends.
struct Slot {
    n: i64,
    ram: CurveRam,
}

impl ChainSurface {
    pub fn new(p: i64, curves: Vec<ChainCurve>, left: Option<Germ>, right: Option<Germ>) -> Result<Self, MmpError> {
        let chain = Self { p, curves, left, right, contracted: BTreeSet::new() };
        chain.validate()?;
        Ok(chain)
    }

    pub fn validate(&self) -> Result<(), MmpError> {
        let bad = |msg: String| Err(MmpError::InvalidChain(msg));
        if !is_prime(self.p) {
            return bad(format!("index {} is not prime", self.p));
        }
        let mut seen = BTreeSet::new();
        for c in &self.curves {
            if !seen.insert(c.label.as_str()) {
                return bad(format!("duplicate label {}", c.label));
            }
            if c.self_intersection >= 0 {
                return bad(format!("{} has self-intersection {}", c.label, c.self_intersection));
            }
            let expected = c.ram.zeta().map_or(self.p, |z| z.order());
            if c.n != expected || self.p % c.n != 0 {
                return bad(format!("{} has n = {} but its ramification has order {expected}", c.label, c.n));
            }
        }
        for g in self.left.iter().chain(&self.right) {
            if g.e < 1 || g.g < 1 || self.p % g.n() != 0 {
                return bad(format!("germ {} has indices e = {}, g = {}", g.label, g.e, g.g));
            }
            if let CurveRam::Etale(z) = g.ram {
                if z.order() != g.e {
                    return bad(format!("germ {} has class {z} of order other than e = {}", g.label, g.e));
                }
            }
        }
        if let Some(&i) = self.contracted.iter().find(|&&i| i >= self.curves.len()) {
            return bad(format!("contracted index {i} out of range"));
        }
        for i in 0..self.curves.len() {
            let (prev, next) = (self.slot(i as isize - 1).ram, self.slot(i as isize + 1).ram);
            if let (Some(a), Some(b), Some(c)) = (prev.zeta(), self.curves[i].ram.zeta(), next.zeta()) {
                let obstruction = a - self.curves[i].weight() * b + c;
                if !obstruction.is_zero() {
                    return bad(format!("secondary obstruction {obstruction} on {}", self.curves[i].label));
                }
            }
        }
        Ok(())
    }

    pub fn index_of(&self, label: &str) -> Result<usize, MmpError> {
        self.curves
            .iter()
            .position(|c| c.label == label)
            .ok_or_else(|| MmpError::UnknownCurve(label.to_string()))
    }

    pub fn weights(&self) -> Vec<i64> {
        self.curves.iter().map(ChainCurve::weight).collect()
    }

    /// Curves not yet contracted, by index.
    pub fn remaining(&self) -> Vec<usize> {
        (0..self.curves.len()).filter(|i| !self.contracted.contains(i)).collect()
    }

    /// Position `-1` is the left end, `r` the right end; a missing germ is an
    /// unramified curve.
    fn slot(&self, i: isize) -> Slot {
        let r = self.curves.len() as isize;
        let germ = |g: &Option<Germ>| match g {
            Some(g) => Slot { n: g.n(), ram: g.ram },
            None => Slot { n: 1, ram: CurveRam::Etale(TorsionValue::ZERO) },
        };
        if i < 0 {
            germ(&self.left)
        } else if i >= r {
            germ(&self.right)
        } else {
            let c = &self.curves[i as usize];
            Slot { n: c.n, ram: c.ram }
        }
    }

    fn intersection(&self, i: usize, j: usize) -> i64 {
        match i.abs_diff(j) {
            0 => self.curves[i].self_intersection,
            1 => 1,
            _ => 0,
        }
    }

    /// Maximal runs of contracted curves.
    pub fn components(&self) -> Vec<Range<usize>> {
        let mut out: Vec<Range<usize>> = Vec::new();
        for &i in &self.contracted {
            match out.last_mut() {
                Some(run) if run.end == i => run.end = i + 1,
                _ => out.push(i..i + 1),
            }
        }
        out
    }

    /// `K.E` on the full resolution, boundary included.
    pub fn k_dot_e_tilde<F: Scalar>(&self, i: usize) -> F {
        let m = self.curves[i].weight();
        let n = self.curves[i].n;
        let coeff = |n: i64| F::one() - F::recip_int(n);
        let adjacent = coeff(self.slot(i as isize - 1).n) + coeff(self.slot(i as isize + 1).n);
        F::int(m - 2) - coeff(n) * F::int(m) + adjacent
    }

    fn matrix<F: Scalar>(&self, run: &Range<usize>) -> Vec<Vec<F>> {
        run.clone().map(|i| run.clone().map(|j| F::int(self.intersection(i, j))).collect()).collect()
    }

    /// b-values of one contracted component: `(sum b_j E_j).E_i = K.E_i`.
    pub fn component_b_values<F: Scalar>(&self, run: &Range<usize>) -> Result<Vec<F>, MmpError> {
        let rhs = run.clone().map(|i| self.k_dot_e_tilde::<F>(i)).collect();
        solve(self.matrix(run), rhs).ok_or(MmpError::SingularIntersectionMatrix)
    }

    pub fn partial_intersections<F: Scalar>(&self, curve: &str) -> Result<Intersections<F>, MmpError> {
        let idx = self.index_of(curve)?;
        if self.contracted.contains(&idx) {
            return Err(MmpError::CurveContracted(curve.to_string()));
        }
        let mut k = self.k_dot_e_tilde::<F>(idx);
        let mut e_sq = F::int(self.curves[idx].self_intersection);
        let mut b_values = Vec::new();
        for run in self.components() {
            let b = self.component_b_values::<F>(&run)?;
            let meets: Vec<F> = run.clone().map(|j| F::int(self.intersection(j, idx))).collect();
            let rhs = meets.iter().map(|x| -x.clone()).collect();
            let c = solve(self.matrix(&run), rhs).ok_or(MmpError::SingularIntersectionMatrix)?;
            for (j, meet) in meets.iter().enumerate() {
                k = k - b[j].clone() * meet.clone();
                e_sq = e_sq + c[j].clone() * meet.clone();
            }
            b_values.extend(run.clone().zip(b).map(|(j, b)| (self.curves[j].label.clone(), b)));
        }
        Ok(Intersections { k_dot_e: k, e_sq, b_values })
    }

    pub fn contractible<F: Scalar>(&self, curve: &str) -> bool {
        self.partial_intersections::<F>(curve)
            .is_ok_and(|x| x.k_dot_e.is_negative() && x.e_sq.is_negative())
    }

    pub fn contract_unchecked(&self, idx: usize) -> Self {
        let mut next = self.clone();
        next.contracted.insert(idx);
        next
    }

    /// Contracts one curve and checks that the result is still terminal.
    pub fn contract<F: Scalar>(&self, curve: &str) -> Result<(Self, ContractionStep<F>), MmpError> {
        let idx = self.index_of(curve)?;
        let x = self.partial_intersections::<F>(curve)?;
        let next = self.contract_unchecked(idx);
        let run = next
            .components()
            .into_iter()
            .find(|r| r.contains(&idx))
            .expect("contracted curve lies in a component");
        next.check_point::<F>(&run).map_err(|reason| MmpError::NonTerminalState {
            curve: curve.to_string(),
            reason,
        })?;
        let weights = cone_weights(&next.point_cone(&run)?);
        let singularity = (!weights.is_empty()).then_some(weights);
        Ok((next, ContractionStep { curve: curve.to_string(), k_dot_e: x.k_dot_e, e_sq: x.e_sq, singularity }))
    }

    /// Cone of the point a run of curves contracts to, in seed coordinates of
    /// the run: the left neighbour on `(0,1)`, the first curve on `(1,0)`.
    fn point_cone(&self, run: &Range<usize>) -> Result<Cone, MmpError> {
        let weights: Vec<i64> = run.clone().map(|i| self.curves[i].weight()).collect();
        let end = *seed_images(&weights).last().expect("seed has two images");
        if end.a <= 0 {
            return Err(MmpError::InvalidChain("contracted component is not negative definite".into()));
        }
        Ok(Cone { u: LatticeVector::E2, w: end })
    }

    /// Checks the point a run contracts to; an empty run is the node between
    /// two surviving neighbours. The error is a human-readable reason.
    fn check_point<F: Scalar>(&self, run: &Range<usize>) -> Result<(), String> {
        let cone = self.point_cone(run).map_err(|e| e.to_string())?;
        if !run.is_empty() {
            let b = self.component_b_values::<F>(run).map_err(|e| e.to_string())?;
            for (j, bj) in run.clone().zip(b) {
                if !bj.is_positive() {
                    return Err(format!("{} has b = {bj}", self.curves[j].label));
                }
            }
        }
        let left = self.slot(run.start as isize - 1);
        let right = self.slot(run.end as isize);
        let first = self.slot(run.start as isize);
        let mut involved = vec![left.ram, right.ram];
        involved.extend(run.clone().map(|i| self.curves[i].ram));
        let secondary = involved.contains(&CurveRam::Secondary);
        let zero = TorsionValue::ZERO;
        let zbar = TorsionHomomorphism::new(
            first.ram.zeta().unwrap_or(zero),
            left.ram.zeta().unwrap_or(zero),
        );
        let delta = RationalFunctional::new(cone, F::recip_int(left.n), F::recip_int(right.n));
        match scan(&delta, &zbar, secondary, self.p).map_err(|e| e.to_string())? {
            FanCheck::Terminal => Ok(()),
            FanCheck::Violation { witness, b_value, .. } => Err(format!(
                "exceptional curve {witness} over the point of {} has b = {b_value}",
                self.describe(run)
            )),
        }
    }

    fn describe(&self, run: &Range<usize>) -> String {
        if run.is_empty() {
            let name = |i: isize| match i {
                i if i < 0 => self.left.as_ref().map_or("boundary".to_string(), |g| g.label.clone()),
                i if i as usize >= self.curves.len() => {
                    self.right.as_ref().map_or("boundary".to_string(), |g| g.label.clone())
                }
                i => self.curves[i as usize].label.clone(),
            };
            format!("{} and {}", name(run.start as isize - 1), name(run.start as isize))
        } else {
            let labels: Vec<&str> = run.clone().map(|i| self.curves[i].label.as_str()).collect();
            labels.join("+")
        }
    }

    /// Every singular point and every node of the surface is terminal.
    pub fn check_terminal<F: Scalar>(&self) -> Result<(), String> {
        for run in self.components() {
            self.check_point::<F>(&run)?;
        }
        let r = self.curves.len();
        for i in 0..=r {
            let left_free = i == 0 || !self.contracted.contains(&(i - 1));
            let right_free = i == r || !self.contracted.contains(&i);
            if left_free && right_free && r > 0 {
                self.check_point::<F>(&(i..i))?;
            }
        }
        Ok(())
    }
}
