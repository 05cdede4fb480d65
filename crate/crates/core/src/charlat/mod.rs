//! Weights and virtual characters of a compact torus, Weyl groups generated
//! by compact-root reflections, and the Weyl character formula.
//!
//! All weights live in the doubled lattice (see [`Weight`]); multiplicities
//! are arbitrary precision integers and the invariant form is an exact
//! rational Gram matrix.

mod character;
mod datum;
mod weight;

pub use character::VirtualCharacter;
pub use datum::{CartanDatum, IntMatrix, RawDatum, RootClass, WeylElement, DEFAULT_WEYL_BOUND};
pub use weight::{TorusPoint, Weight};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CharError {
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },
    #[error("exterior powers need an effective character")]
    NegativeMultiplicity,
    #[error("Weyl group exceeds {bound} elements")]
    GroupTooLarge { bound: usize },
    #[error("weight {0} is not dominant")]
    NotDominant(String),
    #[error("datum has non-compact roots")]
    NotCompactDatum,
    #[error("character is not divisible by the binomial")]
    NotDivisible,
    #[error("bad classification: {0}")]
    BadClassification(String),
    #[error("Gram matrix is not square and symmetric")]
    GramNotSymmetric,
    #[error("Gram matrix is not positive definite on the compact roots")]
    GramNotPositive,
    #[error("reflection in {0} is not integral on the weight lattice")]
    NonIntegralReflection(String),
    #[error("generator does not permute the roots (image of {0})")]
    RootSetNotInvariant(String),
}

/// Enumerates the Weyl group of a raw datum under an explicit size bound.
pub fn weyl_enumerate(raw: RawDatum, bound: usize) -> Result<Vec<WeylElement>, CharError> {
    Ok(CartanDatum::with_bound(raw, bound)?.weyl().to_vec())
}
