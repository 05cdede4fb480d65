use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;

use super::{delta_characters, EpError, SINGULAR_THRESHOLD};
use crate::charlat::{CartanDatum, CharError, TorusPoint, VirtualCharacter, Weight};
use crate::exec::{self, Strategy};

/// A weight with trivial stabilizer in the Weyl group of its datum: the
/// parameter of a discrete series representation.
#[derive(Debug, Clone)]
pub struct RegularCharacter<'d> {
    weight: Weight,
    datum: &'d CartanDatum,
}

impl<'d> RegularCharacter<'d> {
    pub fn new(datum: &'d CartanDatum, weight: Weight) -> Result<Self, EpError> {
        if weight.rank() != datum.rank() {
            return Err(CharError::RankMismatch { left: datum.rank(), right: weight.rank() }.into());
        }
        if !datum.is_regular(&weight) {
            return Err(EpError::NotRegular(weight.to_string()));
        }
        Ok(RegularCharacter { weight, datum })
    }

    pub fn weight(&self) -> &Weight {
        &self.weight
    }

    pub fn datum(&self) -> &'d CartanDatum {
        self.datum
    }
}

/// `N = sum over w of sign(w) e^{w t}`.
pub fn numerator(that: &RegularCharacter<'_>) -> VirtualCharacter {
    that.datum.alternating_sum(&that.weight)
}

/// `N(t) / '∆(t)`.
pub fn theta_evaluate(that: &RegularCharacter<'_>, t: &TorusPoint) -> Result<Complex64, EpError> {
    let delta = delta_characters(that.datum)?.delta_full.evaluate(t)?;
    if delta.norm() < SINGULAR_THRESHOLD {
        return Err(EpError::SingularElement);
    }
    Ok(numerator(that).evaluate(t)? / delta)
}

/// `(1/|W|) CT(N_a * dual(N_b))`.
pub fn orthonormality_pairing(a: &RegularCharacter<'_>, b: &RegularCharacter<'_>) -> BigRational {
    let na = numerator(a);
    let nb = numerator(b);
    let mut ct = BigInt::zero();
    for (w, m) in nb.terms() {
        ct += m * na.mult(w);
    }
    BigRational::new(ct, BigInt::from(a.datum.weyl_order()))
}

/// `g = tau * e^{rho_K} * '∆`, Weyl anti-invariant when `tau` is invariant.
pub fn expansion_source(d: &CartanDatum, tau: &VirtualCharacter) -> Result<VirtualCharacter, EpError> {
    if tau.rank() != d.rank() {
        return Err(CharError::RankMismatch { left: d.rank(), right: tau.rank() }.into());
    }
    let delta = delta_characters(d)?.delta_full;
    Ok(tau.tensor(&delta)?.shift(d.rho_k()))
}

/// The Fourier coefficient of `g` against `N_that`.
pub fn ep_number_discrete(tau: &VirtualCharacter, that: &RegularCharacter<'_>) -> Result<BigInt, EpError> {
    if !tau.is_effective() {
        return Err(CharError::NegativeMultiplicity.into());
    }
    let g = expansion_source(that.datum, tau)?;
    let n = numerator(that);
    let mut ct = BigInt::zero();
    for (w, m) in n.terms() {
        ct += m * g.mult(w);
    }
    let order = BigInt::from(that.datum.weyl_order());
    if !(&ct % &order).is_zero() {
        return Err(EpError::NonIntegralCoefficient);
    }
    Ok(ct / order)
}

pub fn ep_number_discrete_batch(
    d: &CartanDatum,
    tau: &VirtualCharacter,
    weights: &[Weight],
    strategy: Strategy,
) -> Vec<Result<BigInt, EpError>> {
    exec::map_slice(strategy, weights, |w| {
        let that = RegularCharacter::new(d, w.clone())?;
        ep_number_discrete(tau, &that)
    })
}

/// `g = sum c(t) N_t + remainder`, with `t` running over the orbit
/// representatives of the regular weights in the support of `g`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteExpansion {
    pub coeffs: BTreeMap<Weight, BigInt>,
    /// Part of `g` on weights with nontrivial stabilizer.
    pub remainder: VirtualCharacter,
}

impl DiscreteExpansion {
    pub fn reconstruct(&self, d: &CartanDatum) -> VirtualCharacter {
        let mut out = self.remainder.clone();
        for (w, c) in &self.coeffs {
            out = &out + &d.alternating_sum(w).scale(c);
        }
        out
    }
}

fn is_invariant(d: &CartanDatum, tau: &VirtualCharacter) -> bool {
    d.weyl().iter().all(|e| e.is_identity() || tau.map_weights(|w| e.apply(w)) == *tau)
}

pub fn discrete_expansion(d: &CartanDatum, tau: &VirtualCharacter) -> Result<DiscreteExpansion, EpError> {
    if !tau.is_effective() {
        return Err(CharError::NegativeMultiplicity.into());
    }
    if tau.rank() != d.rank() {
        return Err(CharError::RankMismatch { left: d.rank(), right: tau.rank() }.into());
    }
    if !is_invariant(d, tau) {
        return Err(EpError::NotWeylInvariant);
    }
    let g = expansion_source(d, tau)?;
    let mut coeffs = BTreeMap::new();
    let mut remainder = VirtualCharacter::zero(d.rank());
    for (w, m) in g.terms() {
        if !d.is_regular(w) {
            remainder = &remainder + &VirtualCharacter::monomial(w.clone(), m.clone());
        } else if d.orbit_representative(w) == *w {
            coeffs.insert(w.clone(), m.clone());
        }
    }
    let out = DiscreteExpansion { coeffs, remainder };
    if out.reconstruct(d) != g {
        return Err(EpError::NotWeylInvariant);
    }
    Ok(out)
}

pub fn discrete_expansion_batch(
    d: &CartanDatum,
    taus: &[VirtualCharacter],
    strategy: Strategy,
) -> Vec<Result<DiscreteExpansion, EpError>> {
    exec::map_slice(strategy, taus, |tau| discrete_expansion(d, tau))
}
