use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{CliffordElement, CliffordError, PolarizedSpace};

/// An element of the spin module `S = Lambda* V-`, as rational combinations
/// of subsets of `{f_1..f_m}` (bit `i` is `f_{i+1}`, wedge in ascending order).
#[derive(Clone, PartialEq, Eq, Default)]
pub struct SpinVector {
    terms: BTreeMap<u64, BigRational>,
}

impl SpinVector {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The vacuum `1 in Lambda^0 V-`.
    pub fn vacuum() -> Self {
        Self::basis(0)
    }

    pub fn basis(subset: u64) -> Self {
        let mut out = Self::zero();
        out.add_term(subset, BigRational::one());
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (&u64, &BigRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, subset: u64) -> BigRational {
        self.terms.get(&subset).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, s: u64, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(s).or_insert_with(BigRational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&s);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (s, c) in &other.terms {
            out.add_term(*s, c.clone());
        }
        out
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        let mut out = Self::zero();
        for (s, c) in &self.terms {
            out.add_term(*s, c * k);
        }
        out
    }

    /// Lies in `S+ = Lambda^even V-`.
    pub fn is_even(&self) -> bool {
        self.terms.keys().all(|s| s.count_ones() % 2 == 0)
    }

    /// Lies in `S- = Lambda^odd V-`.
    pub fn is_odd(&self) -> bool {
        self.terms.keys().all(|s| s.count_ones() % 2 == 1)
    }
}

impl fmt::Debug for SpinVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (s, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{}*{{{:b}}}", c, s)?;
        }
        Ok(())
    }
}

/// Action of a single generator on a basis subset.
///
/// `f_i` wedges on the left. `e_i` kills subsets without `f_i` and removes
/// `f_i` from `f_i ^ s'` with coefficient `-2 q(e_i, f_i) = 2`, so that
/// `e_i f_i + f_i e_i` acts as the scalar `2` required by `uv + vu = -2 q(u, v)`.
fn act_generator(sp: &PolarizedSpace, slot: usize, subset: u64) -> Option<(u64, i64)> {
    let m = sp.m();
    let (i, is_f) = if slot < m { (slot, false) } else { (slot - m, true) };
    let bit = 1u64 << i;
    let below = (subset & (bit - 1)).count_ones();
    let sign = if below % 2 == 0 { 1 } else { -1 };
    if is_f {
        if subset & bit != 0 {
            None
        } else {
            Some((subset | bit, sign))
        }
    } else if subset & bit == 0 {
        None
    } else {
        Some((subset & !bit, 2 * sign))
    }
}

/// Clifford action on the spin module, extended from generators by
/// composition over each blade and by linearity.
pub fn spin_action(sp: &PolarizedSpace, v: &CliffordElement, s: &SpinVector) -> Result<SpinVector, CliffordError> {
    if v.span_bits() as usize > sp.dim() {
        return Err(CliffordError::SpaceMismatch { m: sp.m() });
    }
    if s.terms.keys().any(|&x| x >> sp.m() != 0) {
        return Err(CliffordError::SpaceMismatch { m: sp.m() });
    }
    let mut out = SpinVector::zero();
    for (blade, c) in v.terms() {
        let slots: Vec<usize> = (0..sp.dim()).filter(|k| blade >> k & 1 == 1).collect();
        for (subset, sc) in &s.terms {
            // blade = g_1 g_2 ... g_k acts as g_1(g_2(...(g_k s)))
            let mut cur = Some((*subset, 1i64));
            for &slot in slots.iter().rev() {
                cur = cur.and_then(|(x, sign)| act_generator(sp, slot, x).map(|(y, s2)| (y, sign * s2)));
                if cur.is_none() {
                    break;
                }
            }
            if let Some((x, sign)) = cur {
                out.add_term(x, c * sc * BigRational::from_integer(BigInt::from(sign)));
            }
        }
    }
    Ok(out)
}
