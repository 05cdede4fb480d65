use num_bigint::BigInt;
use num_traits::One;

use super::CliffordError;
use crate::charlat::{CartanDatum, VirtualCharacter, Weight};

fn check_weights(rank: usize, mu: &[Weight]) -> Result<(), CliffordError> {
    if let Some(w) = mu.iter().find(|w| w.rank() != rank) {
        return Err(CliffordError::Char(crate::charlat::CharError::RankMismatch { left: rank, right: w.rank() }));
    }
    let mut total = Weight::zero(rank);
    for w in mu {
        total = &total + w;
    }
    if total.half().is_none() {
        return Err(CliffordError::OddWeightSum);
    }
    Ok(())
}

/// `(ch S+, ch S-)` from the weights `1/2 (+-mu_1 +- ... +- mu_m)`, even
/// numbers of minus signs going to `S+`.
pub fn half_spin_characters(rank: usize, mu: &[Weight]) -> Result<(VirtualCharacter, VirtualCharacter), CliffordError> {
    check_weights(rank, mu)?;
    let m = mu.len();
    let mut plus = VirtualCharacter::zero(rank);
    let mut minus = VirtualCharacter::zero(rank);
    for signs in 0u64..(1u64 << m) {
        let mut acc = Weight::zero(rank);
        for (i, w) in mu.iter().enumerate() {
            acc = if signs >> i & 1 == 1 { &acc - w } else { &acc + w };
        }
        let half = acc.half().expect("parity checked above");
        if signs.count_ones() % 2 == 0 {
            plus.add_term(half, BigInt::one());
        } else {
            minus.add_term(half, BigInt::one());
        }
    }
    Ok((plus, minus))
}

/// `chS+ - chS-`.
pub fn half_spin_difference(rank: usize, mu: &[Weight]) -> Result<VirtualCharacter, CliffordError> {
    let (p, n) = half_spin_characters(rank, mu)?;
    Ok(&p - &n)
}

/// The one-dimensional twist `eps = 1/2 (mu_1 + ... + mu_m)`.
pub fn epsilon_character(rank: usize, mu: &[Weight]) -> Result<Weight, CliffordError> {
    check_weights(rank, mu)?;
    let mut total = Weight::zero(rank);
    for w in mu {
        total = &total + w;
    }
    Ok(total.half().expect("parity checked above"))
}

/// `sum_i e^{mu_i} + e^{-mu_i}`.
pub fn paired_character(rank: usize, mu: &[Weight]) -> VirtualCharacter {
    let mut out = VirtualCharacter::zero(rank);
    for w in mu {
        out.add_term(w.clone(), BigInt::one());
        out.add_term(-w, BigInt::one());
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpinSquareReport {
    /// `(chS+ - chS-)^2`
    pub lhs: VirtualCharacter,
    /// `Lambda_{-1}` of the paired character
    pub rhs: VirtualCharacter,
    /// `+1` or `-1` when `lhs = sign * rhs`, `0` when neither holds.
    pub sign: i8,
    /// `lhs = (-1)^m rhs`
    pub equal: bool,
}

pub fn spin_square_check(rank: usize, mu: &[Weight]) -> Result<SpinSquareReport, CliffordError> {
    let diff = half_spin_difference(rank, mu)?;
    let lhs = diff.tensor(&diff)?;
    let rhs = paired_character(rank, mu).lambda_alternating()?;
    let sign = if lhs == rhs {
        1
    } else if lhs == -&rhs {
        -1
    } else {
        0
    };
    let expected = if mu.len() % 2 == 0 { rhs.clone() } else { -&rhs };
    let equal = lhs == expected;
    Ok(SpinSquareReport { lhs, rhs, sign, equal })
}

#[derive(Debug, Clone, PartialEq)]
pub struct EpsilonReport {
    pub epsilon: Weight,
    /// `chS+ * e^eps`
    pub plus_twisted: VirtualCharacter,
    /// `chS- * e^eps`
    pub minus_twisted: VirtualCharacter,
    /// `Lambda^even V+`
    pub even_side: VirtualCharacter,
    /// `Lambda^odd V+`
    pub odd_side: VirtualCharacter,
    /// `S+` pairs with `Lambda^odd` (expected iff `m` is odd).
    pub flipped: bool,
    /// The twisted half-spin characters match exterior powers with the
    /// expected parity rule.
    pub parity_matched: bool,
}

pub fn epsilon_check(rank: usize, mu: &[Weight]) -> Result<EpsilonReport, CliffordError> {
    let (plus, minus) = half_spin_characters(rank, mu)?;
    let epsilon = epsilon_character(rank, mu)?;
    let plus_twisted = plus.shift(&epsilon);
    let minus_twisted = minus.shift(&epsilon);
    let mut v_plus = VirtualCharacter::zero(rank);
    for w in mu {
        v_plus.add_term(w.clone(), BigInt::one());
    }
    let mut even_side = VirtualCharacter::zero(rank);
    let mut odd_side = VirtualCharacter::zero(rank);
    for (p, l) in v_plus.lambda_all()?.into_iter().enumerate() {
        if p % 2 == 0 {
            even_side = &even_side + &l;
        } else {
            odd_side = &odd_side + &l;
        }
    }
    let straight = plus_twisted == even_side && minus_twisted == odd_side;
    let crossed = plus_twisted == odd_side && minus_twisted == even_side;
    let flipped = crossed && !straight;
    let m_odd = mu.len() % 2 == 1;
    let parity_matched = if m_odd { crossed } else { straight };
    Ok(EpsilonReport { epsilon, plus_twisted, minus_twisted, even_side, odd_side, flipped, parity_matched })
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpinorialityReport {
    /// `rho_n`, half the sum of the noncompact positive roots.
    pub epsilon: Weight,
    /// The torus action on `p` lifts to `Spin(p)` without a double cover.
    pub lifts: bool,
}

pub fn spinoriality_check(d: &CartanDatum) -> Result<SpinorialityReport, CliffordError> {
    if !d.is_compact_cartan() {
        return Err(CliffordError::NotCompactCartan);
    }
    let epsilon = d.rho_n().clone();
    let lifts = epsilon.is_integral();
    Ok(SpinorialityReport { epsilon, lifts })
}

/// The top exterior power of an effective character is trivial.
pub fn determinant_is_trivial(p: &VirtualCharacter) -> Result<bool, CliffordError> {
    if !p.is_effective() {
        return Err(CliffordError::Char(crate::charlat::CharError::NegativeMultiplicity));
    }
    let top: usize = p.terms().map(|(_, m)| m.magnitude().try_into().unwrap_or(usize::MAX)).sum();
    Ok(p.lambda(top)? == VirtualCharacter::trivial(p.rank()))
}

pub fn orientation_check(d: &CartanDatum) -> Result<bool, CliffordError> {
    if !d.is_compact_cartan() {
        return Err(CliffordError::NotCompactCartan);
    }
    determinant_is_trivial(d.p_char())
}
