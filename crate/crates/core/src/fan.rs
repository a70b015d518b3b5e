//! Fan representations: the surjection from the free group on the curves of
//! a chain onto Z^2 that kills every relation `E_{i-1} - m_i E_i + E_{i+1}`.

use num_integer::Integer;
use thiserror::Error;

use crate::hjstring::{FractionPair, HJString, HjError};
use crate::lattice::{cross, LatticeVector, RationalFunctional};
use crate::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FanError {
    #[error("chain endpoint {got} disagrees with the declared {expected}")]
    InconsistentData { got: LatticeVector, expected: LatticeVector },
    #[error(transparent)]
    String(#[from] HjError),
}

/// Node indices applied in order; node `i` lies between `E_i` and `E_{i+1}`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BlowupWord(pub Vec<usize>);

/// Images of `E_0, ..., E_{r+1}` together with the string `E_1..E_r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FanRep {
    images: Vec<LatticeVector>,
    string: HJString,
}

/// `E_0 -> (0,1)`, `E_1 -> (1,0)`, then `E_{i+1} = m_i E_i - E_{i-1}`.
pub fn seed_images(weights: &[i64]) -> Vec<LatticeVector> {
    let mut images = vec![LatticeVector::E2, LatticeVector::E1];
    for (i, &m) in weights.iter().enumerate() {
        images.push(m * images[i + 1] - images[i]);
    }
    images
}

/// `(det(m_1..m_r), -det(m_2..m_r))`, the last image of the seed.
pub fn seed_endpoint(weights: &[i64]) -> LatticeVector {
    *seed_images(weights).last().expect("seed has two images")
}

pub fn seed_rep(s: &HJString, last: FractionPair) -> Result<FanRep, FanError> {
    let images = seed_images(s.weights());
    let got = *images.last().expect("seed has two images");
    let expected = LatticeVector::new(last.m(), -last.k());
    if got != expected {
        return Err(FanError::InconsistentData { got, expected });
    }
    Ok(FanRep { images, string: s.clone() })
}

pub fn extend_blowup(rep: &FanRep, word: &BlowupWord) -> Result<FanRep, FanError> {
    let mut out = rep.clone();
    for &node in &word.0 {
        out.string = out.string.blowup_at(node)?;
        let mediant = out.images[node].mediant(&out.images[node + 1]);
        out.images.insert(node + 1, mediant);
    }
    Ok(out)
}

pub fn verify_kernel(rep: &FanRep) -> bool {
    rep.relations_hold() && rep.is_surjective()
}

impl FanRep {
    /// An arbitrary assignment; use [`verify_kernel`] to test it.
    pub fn from_parts(images: Vec<LatticeVector>, string: HJString) -> Option<Self> {
        (images.len() == string.len() + 2).then_some(Self { images, string })
    }

    pub fn images(&self) -> &[LatticeVector] {
        &self.images
    }

    pub fn string(&self) -> &HJString {
        &self.string
    }

    pub fn relations_hold(&self) -> bool {
        self.string.weights().iter().enumerate().all(|(i, &m)| {
            self.images[i] - m * self.images[i + 1] + self.images[i + 2] == LatticeVector::ZERO
        })
    }

    /// The gcd of all 2x2 minors is one.
    pub fn is_surjective(&self) -> bool {
        let mut g = 0i64;
        for (i, &x) in self.images.iter().enumerate() {
            for &y in &self.images[i + 1..] {
                g = g.gcd(&cross(x, y));
                if g == 1 {
                    return true;
                }
            }
        }
        false
    }

    /// Values of a functional at every curve, `E_0` through `E_{r+1}`.
    pub fn evaluate<F: Scalar>(&self, f: &RationalFunctional<F>) -> Vec<F> {
        self.images.iter().map(|&v| f.eval_linear(v)).collect()
    }
}
