use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct LatticeVector {
    pub a: i64,
    pub b: i64,
}

impl LatticeVector {
    pub const ZERO: Self = Self { a: 0, b: 0 };
    pub const E1: Self = Self { a: 1, b: 0 };
    pub const E2: Self = Self { a: 0, b: 1 };

    pub const fn new(a: i64, b: i64) -> Self {
        Self { a, b }
    }

    pub fn is_primitive(&self) -> bool {
        *self != Self::ZERO && self.a.gcd(&self.b) == 1
    }

    /// Stern-Brocot mediant; the image of the exceptional curve of a nodal blowup.
    pub fn mediant(&self, other: &Self) -> Self {
        *self + *other
    }
}

/// `u.a * w.b - u.b * w.a`.
pub fn cross(u: LatticeVector, w: LatticeVector) -> i64 {
    u.a * w.b - u.b * w.a
}

impl Add for LatticeVector {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.a + o.a, self.b + o.b)
    }
}

impl Sub for LatticeVector {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.a - o.a, self.b - o.b)
    }
}

impl Neg for LatticeVector {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.a, -self.b)
    }
}

impl Mul<LatticeVector> for i64 {
    type Output = LatticeVector;
    fn mul(self, v: LatticeVector) -> LatticeVector {
        LatticeVector::new(self * v.a, self * v.b)
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

impl From<(i64, i64)> for LatticeVector {
    fn from((a, b): (i64, i64)) -> Self {
        Self::new(a, b)
    }
}
