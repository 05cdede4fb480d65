//! Euler-Poincare indices, discrete-series numerators and expansions on a
//! compact Cartan, elliptic orbital-integral evaluators, split-Cartan
//! normalizations and the Dirac square check on `sl(2)` models.

mod dirac;
mod discrete;
mod index;
mod orbital;

pub use dirac::{dirac_square_check, sl2_model, DiracModel, DiracReport, QMatrix};
pub use discrete::{
    discrete_expansion, discrete_expansion_batch, ep_number_discrete, ep_number_discrete_batch, expansion_source,
    numerator, orthonormality_pairing, theta_evaluate, DiscreteExpansion, RegularCharacter,
};
pub use index::{
    build_cartan_datum, build_compact, delta_characters, ep_index, ep_index_half, ep_index_torus, ep_index_with_p, DeltaCharacters,
};
pub use orbital::{
    casimir_shift, hc_constant, orbital_general_formula, orbital_regular, orbital_regular_highest, pseudo_orbital,
    weyl_det_factor, HcInputs, SplitCartanDatum, SplitRoot,
};

use thiserror::Error;

use crate::charlat::CharError;
use crate::clifford::CliffordError;

/// Below this modulus a floating denominator counts as zero.
pub const SINGULAR_THRESHOLD: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EpError {
    #[error("datum has real or complex roots")]
    NotCompactCartan,
    #[error("p_minus is not a subcharacter of p")]
    NotSubcharacter,
    #[error("element is singular for this datum")]
    SingularElement,
    #[error("coefficient is not an integer")]
    NonIntegralCoefficient,
    #[error("weight {0} has a nontrivial Weyl stabilizer")]
    NotRegular(String),
    #[error("character is not Weyl invariant")]
    NotWeylInvariant,
    #[error("constant must be nonzero")]
    ZeroConstant,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("bad input: {0}")]
    BadInput(String),
    #[error(transparent)]
    Char(#[from] CharError),
    #[error(transparent)]
    Clifford(#[from] CliffordError),
}
