use num_integer::Integer;

use super::{Cone, LatticeError, LatticeVector, RationalFunctional};
use crate::Scalar;

/// Primitive vectors of the open cone with functional value at most `bound`,
/// ordered by value and then lexicographically.
///
/// The region is the triangle with corners `0`, `(bound/f(u)) u` and
/// `(bound/f(w)) w`. Each column `a` of its bounding box is cut down to an
/// exact range of `b` before scanning.
pub fn enumerate_primitive<F: Scalar>(
    cone: &Cone,
    f: &RationalFunctional<F>,
    bound: &F,
) -> Result<Vec<LatticeVector>, LatticeError> {
    if !f.value_u.is_positive() || !f.value_w.is_positive() {
        return Err(LatticeError::UnboundedRegion);
    }
    if !bound.is_positive() {
        return Ok(Vec::new());
    }
    let su = bound.clone() / f.value_u.clone();
    let sw = bound.clone() / f.value_w.clone();
    let corner = |s: &F, r: i64| s.clone() * F::int(r);
    let xs = [F::zero(), corner(&su, cone.u.a), corner(&sw, cone.w.a)];
    let a_lo = xs.iter().min().expect("nonempty").floor_i64();
    let a_hi = xs.iter().max().expect("nonempty").ceil_i64();

    let s = cone.cross().signum();
    let slope = f.eval_linear(LatticeVector::E2);
    let mut hits: Vec<(F, LatticeVector)> = Vec::new();
    for a in a_lo..=a_hi {
        let mut range = BRange::all();
        // s*cross(v, w) = s*(a*w.b - b*w.a) > 0 and s*cross(u, v) = s*(u.a*b - u.b*a) > 0.
        range.strict(s * a * cone.w.b, -s * cone.w.a);
        range.strict(-s * a * cone.u.b, s * cone.u.a);
        // f(a, b) = f(a, 0) + b*f(0, 1) <= bound.
        range.at_most(bound.clone() - f.eval_linear(LatticeVector::new(a, 0)), slope.clone());
        let Some((lo, hi)) = range.finite() else { continue };
        // Every b in range already lies in the open cone below the bound.
        let mut value = f.eval_linear(LatticeVector::new(a, lo));
        for b in lo..=hi {
            if a.gcd(&b) == 1 {
                hits.push((value.clone(), LatticeVector::new(a, b)));
            }
            value = value + slope.clone();
        }
    }
    hits.sort();
    Ok(hits.into_iter().map(|(_, v)| v).collect())
}

/// Integer interval for `b`, possibly empty or unbounded.
struct BRange {
    lo: Option<i64>,
    hi: Option<i64>,
    empty: bool,
}

impl BRange {
    fn all() -> Self {
        Self { lo: None, hi: None, empty: false }
    }

    fn raise(&mut self, lo: i64) {
        self.lo = Some(self.lo.map_or(lo, |x| x.max(lo)));
    }

    fn lower(&mut self, hi: i64) {
        self.hi = Some(self.hi.map_or(hi, |x| x.min(hi)));
    }

    /// `c0 + c1*b > 0` over the integers.
    fn strict(&mut self, c0: i64, c1: i64) {
        match c1.signum() {
            0 => self.empty |= c0 <= 0,
            1 => self.raise(Integer::div_floor(&-c0, &c1) + 1),
            _ => self.lower(Integer::div_ceil(&c0, &-c1) - 1),
        }
    }

    /// `c1*b <= c0` with rational coefficients.
    fn at_most<F: Scalar>(&mut self, c0: F, c1: F) {
        if c1.is_zero() {
            self.empty |= c0.is_negative();
        } else if c1.is_positive() {
            self.lower((c0 / c1).floor_i64());
        } else {
            self.raise((c0 / c1).ceil_i64());
        }
    }

    fn finite(&self) -> Option<(i64, i64)> {
        match (self.empty, self.lo, self.hi) {
            (false, Some(lo), Some(hi)) if lo <= hi => Some((lo, hi)),
            _ => None,
        }
    }
}
