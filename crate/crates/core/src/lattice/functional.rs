use super::{Cone, LatticeError, LatticeVector};
use crate::Scalar;

/// Linear functional on a cone, fixed by its values on the two rays.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalFunctional<F> {
    pub value_u: F,
    pub value_w: F,
    pub cone: Cone,
}

impl<F: Scalar> RationalFunctional<F> {
    pub fn new(cone: Cone, value_u: F, value_w: F) -> Self {
        Self { value_u, value_w, cone }
    }

    /// Value at a vector of the closed cone.
    pub fn eval(&self, v: LatticeVector) -> Result<F, LatticeError> {
        if !self.cone.contains_closed(v) {
            return Err(LatticeError::NotInCone(v));
        }
        Ok(self.eval_linear(v))
    }

    /// The linear extension, defined on all of Z^2.
    pub fn eval_linear(&self, v: LatticeVector) -> F {
        let (x, y) = self.cone.coords::<F>(v);
        x * self.value_u.clone() + y * self.value_w.clone()
    }
}
