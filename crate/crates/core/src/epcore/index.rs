use num_bigint::BigInt;
use num_rational::BigRational;

use super::EpError;
use crate::charlat::{CartanDatum, CharError, RawDatum, RootClass, VirtualCharacter, Weight};

/// Validates a raw datum. With `compact_cartan` set, real and complex roots
/// are rejected.
pub fn build_cartan_datum(raw: RawDatum, compact_cartan: bool) -> Result<CartanDatum, EpError> {
    if compact_cartan {
        if let Some((r, c)) = raw.roots.iter().find(|(_, c)| !c.is_imaginary()) {
            return Err(CharError::BadClassification(format!("root {} is tagged {}", r, c.as_str())).into());
        }
    }
    Ok(CartanDatum::new(raw)?)
}

/// The datum of `K`: compact roots only, same torus and form.
pub fn build_compact(d: &CartanDatum) -> Result<CartanDatum, EpError> {
    let raw = RawDatum {
        name: format!("{}/K", d.name()),
        rank: d.rank(),
        roots: d.compact_positive_roots().map(|r| (r.clone(), RootClass::Compact)).collect(),
        gram: d.gram().to_vec(),
        extra_generators: Vec::new(),
    };
    Ok(CartanDatum::new(raw)?)
}

#[derive(Debug, Clone, PartialEq)]
pub struct DeltaCharacters {
    /// `prod over compact positive a of (1 - e^{-a})`
    pub delta_c: VirtualCharacter,
    /// `prod over noncompact positive a of (1 - e^{-a})`
    pub delta_n: VirtualCharacter,
    pub delta_full: VirtualCharacter,
}

fn denominator<'a>(rank: usize, roots: impl Iterator<Item = &'a Weight>) -> VirtualCharacter {
    let one = VirtualCharacter::trivial(rank);
    roots.fold(one.clone(), |acc, a| &acc * &(&one - &VirtualCharacter::monomial(-a, 1)))
}

pub fn delta_characters(d: &CartanDatum) -> Result<DeltaCharacters, EpError> {
    if !d.is_compact_cartan() {
        return Err(EpError::NotCompactCartan);
    }
    let delta_c = denominator(d.rank(), d.compact_positive_roots());
    let delta_n = denominator(d.rank(), d.noncompact_positive_roots());
    let delta_full = delta_c.tensor(&delta_n)?;
    Ok(DeltaCharacters { delta_c, delta_n, delta_full })
}

fn integral(q: BigRational) -> Result<BigInt, EpError> {
    if q.is_integer() {
        Ok(q.to_integer())
    } else {
        Err(EpError::NonIntegralCoefficient)
    }
}

fn check_pair(d: &CartanDatum, tau: &VirtualCharacter, sigma: &VirtualCharacter) -> Result<(), EpError> {
    if !d.is_compact_cartan() {
        return Err(EpError::NotCompactCartan);
    }
    for c in [tau, sigma] {
        if c.rank() != d.rank() {
            return Err(CharError::RankMismatch { left: d.rank(), right: c.rank() }.into());
        }
        if !c.is_effective() {
            return Err(CharError::NegativeMultiplicity.into());
        }
    }
    Ok(())
}

fn k_invariants(d: &CartanDatum, x: &VirtualCharacter) -> Result<BigInt, EpError> {
    integral(d.inner_k(x, &VirtualCharacter::trivial(d.rank()))?)
}

/// `sum_p (-1)^p dim (sigma (x) Lambda^p p (x) tau^)^K`.
pub fn ep_index(d: &CartanDatum, tau: &VirtualCharacter, sigma: &VirtualCharacter) -> Result<BigInt, EpError> {
    ep_index_with_p(d, d.p_char(), tau, sigma)
}

/// [`ep_index`] with an explicit effective `K`-character in place of `p`,
/// e.g. `p` plus trivial summands coming from a split center.
pub fn ep_index_with_p(
    d: &CartanDatum,
    p: &VirtualCharacter,
    tau: &VirtualCharacter,
    sigma: &VirtualCharacter,
) -> Result<BigInt, EpError> {
    check_pair(d, tau, sigma)?;
    if p.rank() != d.rank() {
        return Err(CharError::RankMismatch { left: d.rank(), right: p.rank() }.into());
    }
    let x = sigma.tensor(&p.lambda_alternating()?)?.tensor(&tau.dual())?;
    k_invariants(d, &x)
}

/// The same index as a plain constant term, valid when `K` is the torus.
pub fn ep_index_torus(d: &CartanDatum, tau: &VirtualCharacter, sigma: &VirtualCharacter) -> Result<BigInt, EpError> {
    check_pair(d, tau, sigma)?;
    if d.compact_positive_roots().next().is_some() {
        return Err(EpError::BadInput("K is not a torus".into()));
    }
    let x = sigma.tensor(&d.p_char().lambda_alternating()?)?.tensor(&tau.dual())?;
    Ok(x.constant_term())
}

/// Index against `Lambda* p_-` for a `K`-stable half `p_minus` of `p`.
pub fn ep_index_half(
    d: &CartanDatum,
    p_minus: &VirtualCharacter,
    tau: &VirtualCharacter,
    sigma: &VirtualCharacter,
) -> Result<BigInt, EpError> {
    check_pair(d, tau, sigma)?;
    if p_minus.rank() != d.rank() || !p_minus.is_effective() || !p_minus.is_subcharacter_of(d.p_char()) {
        return Err(EpError::NotSubcharacter);
    }
    let x = sigma.tensor(&p_minus.lambda_alternating()?)?.tensor(&tau.dual())?;
    k_invariants(d, &x)
}

