use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;

use num_integer::Integer;

use super::{LatticeError, LatticeVector};

static EXCLUSION: OnceLock<Vec<u64>> = OnceLock::new();

/// Installs the residue-characteristic exclusion set for this process.
/// May be called at most once; before that the set is empty.
pub fn set_exclusion_set(primes: Vec<u64>) -> Result<(), LatticeError> {
    EXCLUSION.set(primes).map_err(|_| LatticeError::ExclusionAlreadySet)
}

pub fn exclusion_set() -> &'static [u64] {
    EXCLUSION.get().map(Vec::as_slice).unwrap_or(&[])
}

/// Element of Q/Z, stored as `num/den` with `0 <= num < den` in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TorsionValue {
    num: i64,
    den: i64,
}

impl TorsionValue {
    pub const ZERO: Self = Self { num: 0, den: 1 };

    /// Checked against the process-wide exclusion set.
    pub fn new(num: i64, den: i64) -> Result<Self, LatticeError> {
        Self::new_checked(num, den, exclusion_set())
    }

    pub fn new_checked(num: i64, den: i64, excluded: &[u64]) -> Result<Self, LatticeError> {
        if den <= 0 {
            return Err(LatticeError::BadDenominator(den));
        }
        let t = Self::reduce(num, den);
        for &prime in excluded {
            if t.den.unsigned_abs().gcd(&prime) != 1 {
                return Err(LatticeError::ExcludedCharacteristic { den: t.den, prime });
            }
        }
        Ok(t)
    }

    fn reduce(num: i64, den: i64) -> Self {
        let num = num.rem_euclid(den);
        let g = num.gcd(&den);
        Self { num: num / g, den: den / g }
    }

    pub fn num(&self) -> i64 {
        self.num
    }

    pub fn den(&self) -> i64 {
        self.den
    }

    /// Additive order in Q/Z.
    pub fn order(&self) -> i64 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }
}

impl Default for TorsionValue {
    fn default() -> Self {
        Self::ZERO
    }
}

// Sums and multiples only shrink denominators to divisors of an lcm of
// already-admitted ones, so they skip the exclusion check.
impl Add for TorsionValue {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let l = self.den.lcm(&o.den);
        Self::reduce(self.num * (l / self.den) + o.num * (l / o.den), l)
    }
}

impl Neg for TorsionValue {
    type Output = Self;
    fn neg(self) -> Self {
        Self::reduce(-self.num, self.den)
    }
}

impl Sub for TorsionValue {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl Mul<TorsionValue> for i64 {
    type Output = TorsionValue;
    fn mul(self, t: TorsionValue) -> TorsionValue {
        TorsionValue::reduce((self % t.den) * t.num, t.den)
    }
}

impl std::iter::Sum for TorsionValue {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::ZERO, Add::add)
    }
}

impl fmt::Display for TorsionValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.num == 0 {
            write!(f, "0")
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// Homomorphism Z^2 -> Q/Z given on the standard basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct TorsionHomomorphism {
    pub value_e1: TorsionValue,
    pub value_e2: TorsionValue,
}

impl TorsionHomomorphism {
    pub const ZERO: Self = Self { value_e1: TorsionValue::ZERO, value_e2: TorsionValue::ZERO };

    pub fn new(value_e1: TorsionValue, value_e2: TorsionValue) -> Self {
        Self { value_e1, value_e2 }
    }

    pub fn eval(&self, v: LatticeVector) -> TorsionValue {
        v.a * self.value_e1 + v.b * self.value_e2
    }

    pub fn is_zero(&self) -> bool {
        self.value_e1.is_zero() && self.value_e2.is_zero()
    }

    /// The homomorphism `x -> self(t^-1 x)`, i.e. `self` read in coordinates moved by `t`.
    pub fn pushforward(&self, t: &super::Unimodular) -> Self {
        let inv = t.inverse();
        Self::new(self.eval(inv.apply(LatticeVector::E1)), self.eval(inv.apply(LatticeVector::E2)))
    }
}
