use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{Num, Signed, ToPrimitive};

/// Exact ordered field used for discrepancy values.
///
/// Floats are deliberately not implementors: every comparison in this crate
/// is a sign test that must be exact.
pub trait Scalar: Clone + Debug + Display + Ord + Num + Signed + Send + Sync + 'static {
    /// `num / den`; panics when `den == 0`.
    fn ratio(num: i64, den: i64) -> Self;

    fn int(n: i64) -> Self {
        Self::ratio(n, 1)
    }

    fn recip_int(n: i64) -> Self {
        Self::ratio(1, n)
    }

    /// Largest integer not above `self`.
    fn floor_i64(&self) -> i64;

    /// Smallest integer not below `self`.
    fn ceil_i64(&self) -> i64 {
        -((-self.clone()).floor_i64())
    }
}

macro_rules! impl_scalar_ratio {
    ($($t:ty),*) => {$(
        impl Scalar for Ratio<$t> {
            fn ratio(num: i64, den: i64) -> Self {
                Ratio::new(<$t>::from(num), <$t>::from(den))
            }

            fn floor_i64(&self) -> i64 {
                self.floor().to_integer().to_i64().expect("floor out of i64 range")
            }
        }
    )*};
}

impl_scalar_ratio!(i64, i128);

impl Scalar for BigRational {
    fn ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn floor_i64(&self) -> i64 {
        self.floor().to_integer().to_i64().expect("floor out of i64 range")
    }
}
