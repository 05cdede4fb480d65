use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;

/// A weight of a compact torus, stored in the doubled lattice.
///
/// The true weight is `coords / 2`, so half-integral weights (half-spin
/// weights, `rho`, `rho_n`) are ordinary integer vectors here. Ordering is
/// lexicographic on the doubled coordinates.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weight(Vec<i64>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    /// Builds a weight from coordinates already in the doubled lattice.
    pub fn from_doubled(coords: Vec<i64>) -> Self {
        Weight(coords)
    }

    /// Builds a weight from integral true coordinates.
    pub fn from_true(coords: &[i64]) -> Self {
        Weight(coords.iter().map(|c| 2 * c).collect())
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    /// Doubled coordinates.
    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// True when the weight lies in the undoubled lattice.
    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|c| c % 2 == 0)
    }

    /// Exact half in the doubled lattice, if every coordinate is even.
    pub fn half(&self) -> Option<Weight> {
        if self.is_integral() {
            Some(Weight(self.0.iter().map(|c| c / 2).collect()))
        } else {
            None
        }
    }

    pub fn scale(&self, k: i64) -> Weight {
        Weight(self.0.iter().map(|c| c * k).collect())
    }

    /// True coordinates as exact rationals.
    pub fn true_coords(&self) -> Vec<BigRational> {
        self.0
            .iter()
            .map(|&c| BigRational::new(BigInt::from(c), BigInt::from(2)))
            .collect()
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "W{:?}", self.0)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            if c % 2 == 0 {
                write!(f, "{}", c / 2)?;
            } else {
                write!(f, "{}/2", c)?;
            }
        }
        f.write_str(")")
    }
}

impl<'a> Add<&'a Weight> for &'a Weight {
    type Output = Weight;

    fn add(self, rhs: &'a Weight) -> Weight {
        debug_assert_eq!(self.rank(), rhs.rank());
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl<'a> Sub<&'a Weight> for &'a Weight {
    type Output = Weight;

    fn sub(self, rhs: &'a Weight) -> Weight {
        debug_assert_eq!(self.rank(), rhs.rank());
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Weight {
    type Output = Weight;

    fn neg(self) -> Weight {
        Weight(self.0.iter().map(|c| -c).collect())
    }
}

impl Neg for Weight {
    type Output = Weight;

    fn neg(self) -> Weight {
        -&self
    }
}

/// A point `t = exp(i theta)` of the torus, used for floating evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct TorusPoint {
    pub angles: Vec<f64>,
}

impl TorusPoint {
    pub fn new(angles: Vec<f64>) -> Self {
        debug_assert!(angles.iter().all(|a| a.is_finite()));
        TorusPoint { angles }
    }

    pub fn identity(rank: usize) -> Self {
        TorusPoint { angles: vec![0.0; rank] }
    }

    pub fn rank(&self) -> usize {
        self.angles.len()
    }

    /// The phase `(lambda . theta) / 2` of a doubled weight.
    pub fn phase(&self, w: &Weight) -> f64 {
        w.coords()
            .iter()
            .zip(&self.angles)
            .map(|(&c, a)| c as f64 * a)
            .sum::<f64>()
            / 2.0
    }
}
