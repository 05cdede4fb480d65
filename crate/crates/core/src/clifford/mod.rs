//! Clifford algebra of a polarized even-dimensional quadratic space, the
//! spin module `Lambda* V-`, half-spin characters and the lattice-level
//! spinoriality and orientation tests.
//!
//! Conventions: `q(e_i, f_j) = -delta_ij`, `v^2 = -q(v)`, hence
//! `uv + vu = -2 q(u, v)`. Blades are bitmasks with `e`'s before `f`'s.

mod algebra;
mod characters;
mod spin;

pub use algebra::{
    clifford_inverse, clifford_mul, clifford_mul_with, conjugation_action, unit_vector, Blade, CliffordElement,
    PolarizedSpace, Versor, MAX_M,
};
pub use characters::{
    determinant_is_trivial, epsilon_character, epsilon_check, half_spin_characters, half_spin_difference,
    orientation_check, paired_character, spin_square_check, spinoriality_check, EpsilonReport, SpinSquareReport,
    SpinorialityReport,
};
pub use spin::{spin_action, SpinVector};

use thiserror::Error;

use crate::charlat::CharError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliffordError {
    #[error("element does not live in the space with m = {m}")]
    SpaceMismatch { m: usize },
    #[error("unsupported polarized dimension m = {0}")]
    BadDimension(usize),
    #[error("element is not invertible")]
    NotInvertible,
    #[error("conjugate is not a vector")]
    NotVector,
    #[error("datum is not a compact Cartan datum")]
    NotCompactCartan,
    #[error("sum of the weights is not divisible by two")]
    OddWeightSum,
    #[error(transparent)]
    Char(#[from] CharError),
}
