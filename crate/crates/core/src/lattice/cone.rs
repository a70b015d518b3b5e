use num_integer::Integer;

use super::{cross, LatticeError, LatticeVector};
use crate::Scalar;

/// Simplicial cone spanned by two primitive, non-parallel rays.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Cone {
    pub u: LatticeVector,
    pub w: LatticeVector,
}

impl Cone {
    pub fn new(u: LatticeVector, w: LatticeVector) -> Result<Self, LatticeError> {
        for r in [u, w] {
            if !r.is_primitive() {
                return Err(LatticeError::NonPrimitive(r));
            }
        }
        if cross(u, w) == 0 {
            return Err(LatticeError::DegenerateCone(u, w));
        }
        Ok(Self { u, w })
    }

    /// The cone of a regular point, `(0,1)` and `(1,0)`.
    pub fn standard() -> Self {
        Self { u: LatticeVector::E2, w: LatticeVector::E1 }
    }

    pub fn cross(&self) -> i64 {
        cross(self.u, self.w)
    }

    /// Index of the sublattice generated by the rays.
    pub fn det(&self) -> i64 {
        self.cross().abs()
    }

    /// Coordinates `(alpha, beta)` with `v = alpha*u + beta*w`.
    pub fn coords<F: Scalar>(&self, v: LatticeVector) -> (F, F) {
        let c = self.cross();
        (F::ratio(cross(v, self.w), c), F::ratio(cross(self.u, v), c))
    }

    fn signed_coords(&self, v: LatticeVector) -> (i64, i64) {
        let s = self.cross().signum();
        (s * cross(v, self.w), s * cross(self.u, v))
    }

    pub fn contains_open(&self, v: LatticeVector) -> bool {
        let (x, y) = self.signed_coords(v);
        x > 0 && y > 0
    }

    pub fn contains_closed(&self, v: LatticeVector) -> bool {
        let (x, y) = self.signed_coords(v);
        x >= 0 && y >= 0
    }

    /// Orders vectors of the closed cone from `u` towards `w`.
    pub fn angular_cmp(&self, x: LatticeVector, y: LatticeVector) -> std::cmp::Ordering {
        let s = self.cross().signum();
        0.cmp(&(s * cross(x, y)))
    }
}

/// Integer 2x2 matrix of determinant +1 or -1, acting on column vectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Unimodular {
    pub rows: [[i64; 2]; 2],
}

impl Unimodular {
    pub const IDENTITY: Self = Self { rows: [[1, 0], [0, 1]] };

    pub fn new(rows: [[i64; 2]; 2]) -> Option<Self> {
        let m = Self { rows };
        matches!(m.det(), 1 | -1).then_some(m)
    }

    pub fn det(&self) -> i64 {
        let r = self.rows;
        r[0][0] * r[1][1] - r[0][1] * r[1][0]
    }

    pub fn apply(&self, v: LatticeVector) -> LatticeVector {
        let r = self.rows;
        LatticeVector::new(r[0][0] * v.a + r[0][1] * v.b, r[1][0] * v.a + r[1][1] * v.b)
    }

    pub fn inverse(&self) -> Self {
        let r = self.rows;
        let d = self.det();
        Self { rows: [[d * r[1][1], -d * r[0][1]], [-d * r[1][0], d * r[0][0]]] }
    }

    /// `self` after `first`.
    pub fn compose(&self, first: &Self) -> Self {
        let (a, b) = (self.rows, first.rows);
        let mut out = [[0; 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        Self { rows: out }
    }
}

/// A cone moved to `u = (0,1)`, `w = (m,-k)` with `0 <= k < m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NormalForm {
    pub transform: Unimodular,
    pub m: i64,
    pub k: i64,
}

pub fn normal_form(cone: &Cone) -> NormalForm {
    let (u, w) = (cone.u, cone.w);
    let g = u.a.extended_gcd(&u.b);
    debug_assert_eq!(g.gcd, 1);
    let mut t = Unimodular { rows: [[u.b, -u.a], [g.x, g.y]] };
    let mut w1 = t.apply(w);
    if w1.a < 0 {
        t = Unimodular { rows: [[-1, 0], [0, 1]] }.compose(&t);
        w1 = t.apply(w);
    }
    let m = w1.a;
    let k = (-w1.b).rem_euclid(m);
    let s = (-k - w1.b) / m;
    t = Unimodular { rows: [[1, 0], [s, 1]] }.compose(&t);
    debug_assert_eq!(t.apply(u), LatticeVector::E2);
    debug_assert_eq!(t.apply(w), LatticeVector::new(m, -k));
    NormalForm { transform: t, m, k }
}
