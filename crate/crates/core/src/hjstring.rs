//! Weighted chains of rational curves and their continued fractions.

use std::fmt;

use num_integer::Integer;
use thiserror::Error;

use crate::lattice::{normal_form, Cone};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HjError {
    #[error("node or position {index} out of range for a string of length {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("curve {0} cannot be blown down: it is not a (-1)-curve or a neighbour is one")]
    NotContractible(usize),
    #[error("string has a weight below 2")]
    NotStrict,
    #[error("weights must be positive")]
    NonPositiveWeight,
    #[error("({m},{k}) is not a coprime pair with 0 < k < m")]
    BadFraction { m: i64, k: i64 },
}

/// Weights `m_1..m_r` of a chain `E_1 - ... - E_r`, `m_i = -E_i^2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct HJString {
    weights: Vec<i64>,
    strict: bool,
}

impl HJString {
    pub fn new(weights: Vec<i64>) -> Result<Self, HjError> {
        if weights.iter().any(|&m| m < 1) {
            return Err(HjError::NonPositiveWeight);
        }
        Ok(Self { weights, strict: false })
    }

    pub fn strict(weights: Vec<i64>) -> Result<Self, HjError> {
        if weights.iter().any(|&m| m < 2) {
            return Err(HjError::NotStrict);
        }
        Ok(Self { weights, strict: true })
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn is_strict(&self) -> bool {
        self.strict
    }

    pub fn all_at_least_two(&self) -> bool {
        self.weights.iter().all(|&m| m >= 2)
    }

    pub fn determinant(&self) -> i64 {
        determinant(&self.weights)
    }

    /// Blows up node `i`, the point between `E_i` and `E_{i+1}`. Nodes `0` and
    /// `r` sit at the ends, where only one neighbour exists.
    pub fn blowup_at(&self, i: usize) -> Result<Self, HjError> {
        let r = self.weights.len();
        if i > r {
            return Err(HjError::IndexOutOfRange { index: i, len: r });
        }
        let mut w = self.weights.clone();
        if i > 0 {
            w[i - 1] += 1;
        }
        if i < r {
            w[i] += 1;
        }
        w.insert(i, 1);
        Ok(Self { weights: w, strict: false })
    }

    /// Blows down the (-1)-curve at 1-based position `i`.
    pub fn contract_minus_one(&self, i: usize) -> Result<Self, HjError> {
        let r = self.weights.len();
        if i == 0 || i > r {
            return Err(HjError::IndexOutOfRange { index: i, len: r });
        }
        let pos = i - 1;
        let neighbours: Vec<usize> = [pos.checked_sub(1), (pos + 1 < r).then_some(pos + 1)]
            .into_iter()
            .flatten()
            .collect();
        if self.weights[pos] != 1 || neighbours.iter().any(|&j| self.weights[j] < 2) {
            return Err(HjError::NotContractible(i));
        }
        let mut w = self.weights.clone();
        for j in neighbours {
            w[j] -= 1;
        }
        w.remove(pos);
        Ok(Self { weights: w, strict: false })
    }
}

impl fmt::Display for HJString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.weights.iter().map(i64::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// Tridiagonal determinant, `d_i = m_i d_{i-1} - d_{i-2}` from `d_0 = 1, d_{-1} = 0`.
pub fn determinant(weights: &[i64]) -> i64 {
    let (mut prev, mut cur) = (0i64, 1i64);
    for &m in weights {
        (prev, cur) = (cur, m * cur - prev);
    }
    cur
}

/// Pair `(m, k)` with `m/k = m_1 - 1/(m_2 - ...)`.
///
/// `(1, 0)` is admitted and stands for a regular point with the empty string.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FractionPair {
    m: i64,
    k: i64,
}

impl FractionPair {
    pub const REGULAR: Self = Self { m: 1, k: 0 };

    pub fn new(m: i64, k: i64) -> Result<Self, HjError> {
        let ok = (m, k) == (1, 0) || (0 < k && k < m && m.gcd(&k) == 1);
        if ok {
            Ok(Self { m, k })
        } else {
            Err(HjError::BadFraction { m, k })
        }
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    pub fn k(&self) -> i64 {
        self.k
    }
}

impl fmt::Display for FractionPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.m, self.k)
    }
}

pub fn weights_from_fraction(p: FractionPair) -> HJString {
    let (mut m, mut k) = (p.m, p.k);
    let mut weights = Vec::new();
    while k != 0 {
        let a = Integer::div_ceil(&m, &k);
        weights.push(a);
        (m, k) = (k, a * k - m);
    }
    HJString { weights, strict: true }
}

pub fn fraction_from_weights(s: &HJString) -> Result<FractionPair, HjError> {
    if !s.all_at_least_two() {
        return Err(HjError::NotStrict);
    }
    match s.weights.split_first() {
        None => Ok(FractionPair::REGULAR),
        Some((_, tail)) => Ok(FractionPair { m: determinant(&s.weights), k: determinant(tail) }),
    }
}

/// Minimal-resolution weights of the cyclic quotient singularity of a cone.
pub fn cone_weights(c: &Cone) -> HJString {
    let nf = normal_form(c);
    weights_from_fraction(FractionPair { m: nf.m, k: nf.k })
}
