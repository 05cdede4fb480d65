use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{CharError, TorusPoint, Weight};
use crate::exec::{self, Strategy};

/// A virtual character of a compact torus: a finitely supported integer
/// combination of weights. Zero multiplicities are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VirtualCharacter {
    rank: usize,
    terms: BTreeMap<Weight, BigInt>,
}

impl VirtualCharacter {
    /// The zero character.
    pub fn zero(rank: usize) -> Self {
        VirtualCharacter { rank, terms: BTreeMap::new() }
    }

    /// The trivial character `e^0`.
    pub fn trivial(rank: usize) -> Self {
        Self::monomial(Weight::zero(rank), 1)
    }

    pub fn monomial(w: Weight, mult: impl Into<BigInt>) -> Self {
        let mut out = Self::zero(w.rank());
        out.add_term(w, mult.into());
        out
    }

    /// Collects `(weight, multiplicity)` pairs, summing repeats.
    pub fn from_terms<I, M>(rank: usize, terms: I) -> Result<Self, CharError>
    where
        I: IntoIterator<Item = (Weight, M)>,
        M: Into<BigInt>,
    {
        let mut out = Self::zero(rank);
        for (w, m) in terms {
            if w.rank() != rank {
                return Err(CharError::RankMismatch { left: rank, right: w.rank() });
            }
            out.add_term(w, m.into());
        }
        Ok(out)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of weights in the support.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Support and multiplicities in lexicographic weight order.
    pub fn terms(&self) -> impl Iterator<Item = (&Weight, &BigInt)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &Weight> {
        self.terms.keys()
    }

    pub fn mult(&self, w: &Weight) -> BigInt {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub(crate) fn add_term(&mut self, w: Weight, m: BigInt) {
        debug_assert_eq!(w.rank(), self.rank);
        if m.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(w) {
            Entry::Vacant(v) => {
                v.insert(m);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += m;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_rank(&self, other: &Self) -> Result<(), CharError> {
        if self.rank != other.rank {
            Err(CharError::RankMismatch { left: self.rank, right: other.rank })
        } else {
            Ok(())
        }
    }

    /// `ca * a + cb * b`.
    pub fn linear(a: &Self, b: &Self, ca: impl Into<BigInt>, cb: impl Into<BigInt>) -> Result<Self, CharError> {
        a.check_rank(b)?;
        let (ca, cb) = (ca.into(), cb.into());
        let mut out = Self::zero(a.rank);
        if !ca.is_zero() {
            for (w, m) in &a.terms {
                out.add_term(w.clone(), m * &ca);
            }
        }
        if !cb.is_zero() {
            for (w, m) in &b.terms {
                out.add_term(w.clone(), m * &cb);
            }
        }
        Ok(out)
    }

    pub fn tensor(&self, other: &Self) -> Result<Self, CharError> {
        self.tensor_with(other, Strategy::default())
    }

    /// Convolution of supports. The parallel path splits the left factor
    /// into chunks, accumulates each into a hash map and merges.
    pub fn tensor_with(&self, other: &Self, strategy: Strategy) -> Result<Self, CharError> {
        self.check_rank(other)?;
        let (big, small) = if self.len() >= other.len() { (self, other) } else { (other, self) };
        if small.is_empty() {
            return Ok(Self::zero(self.rank));
        }
        let left: Vec<(&Weight, &BigInt)> = big.terms.iter().collect();
        let work = left.len() * small.len();
        let strategy = if work < exec::PAR_THRESHOLD * 16 { Strategy::Sequential } else { strategy };
        let chunk = (left.len() / (4 * rayon_threads())).max(8);
        let acc = exec::fold_chunks(
            strategy,
            &left,
            chunk,
            |part| {
                let mut acc: HashMap<Weight, BigInt> = HashMap::with_capacity(part.len() * small.len());
                for (wa, ma) in part {
                    for (wb, mb) in &small.terms {
                        *acc.entry(*wa + wb).or_default() += *ma * mb;
                    }
                }
                acc
            },
            |mut a, b| {
                for (w, m) in b {
                    *a.entry(w).or_default() += m;
                }
                a
            },
        )
        .unwrap_or_default();
        let terms = acc.into_iter().filter(|(_, m)| !m.is_zero()).collect();
        Ok(VirtualCharacter { rank: self.rank, terms })
    }

    /// Negates every support weight.
    pub fn dual(&self) -> Self {
        let terms = self.terms.iter().map(|(w, m)| (-w, m.clone())).collect();
        VirtualCharacter { rank: self.rank, terms }
    }

    /// Multiplies by the monomial `e^shift`.
    pub fn shift(&self, shift: &Weight) -> Self {
        debug_assert_eq!(shift.rank(), self.rank);
        let terms = self.terms.iter().map(|(w, m)| (w + shift, m.clone())).collect();
        VirtualCharacter { rank: self.rank, terms }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero(self.rank);
        }
        let terms = self.terms.iter().map(|(w, m)| (w.clone(), m * k)).collect();
        VirtualCharacter { rank: self.rank, terms }
    }

    /// Applies a map on weights (a Weyl element, say). Colliding images add.
    pub fn map_weights(&self, f: impl Fn(&Weight) -> Weight) -> Self {
        let mut out = Self::zero(self.rank);
        for (w, m) in &self.terms {
            out.add_term(f(w), m.clone());
        }
        out
    }

    /// Multiplicity of the zero weight.
    pub fn constant_term(&self) -> BigInt {
        self.mult(&Weight::zero(self.rank))
    }

    /// Virtual dimension, the sum of multiplicities.
    pub fn dim(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn is_effective(&self) -> bool {
        self.terms.values().all(|m| !m.is_negative())
    }

    /// True when every weight of `self` occurs in `other` with at least the
    /// same multiplicity.
    pub fn is_subcharacter_of(&self, other: &Self) -> bool {
        self.rank == other.rank && self.terms.iter().all(|(w, m)| m <= &other.mult(w))
    }

    pub fn evaluate(&self, t: &TorusPoint) -> Result<Complex64, CharError> {
        if t.rank() != self.rank {
            return Err(CharError::RankMismatch { left: self.rank, right: t.rank() });
        }
        Ok(self
            .terms
            .iter()
            .map(|(w, m)| Complex64::from_polar(1.0, t.phase(w)) * m.to_f64().unwrap_or(f64::NAN))
            .sum())
    }

    /// `Lambda^p` of an effective character.
    pub fn lambda(&self, p: usize) -> Result<Self, CharError> {
        Ok(self.lambda_upto(p)?.pop().expect("degree 0 always present"))
    }

    /// All exterior powers `Lambda^0 .. Lambda^n`, `n` the dimension.
    pub fn lambda_all(&self) -> Result<Vec<Self>, CharError> {
        let n = self.dim().to_usize().ok_or(CharError::NegativeMultiplicity)?;
        self.lambda_upto(n)
    }

    /// Expands `prod_lambda (1 + t e^lambda)^{m_lambda}` up to `t^p`.
    fn lambda_upto(&self, p: usize) -> Result<Vec<Self>, CharError> {
        if !self.is_effective() {
            return Err(CharError::NegativeMultiplicity);
        }
        let mut poly = vec![Self::trivial(self.rank)];
        poly.resize(p + 1, Self::zero(self.rank));
        for (w, m) in &self.terms {
            let m = m.to_usize().ok_or(CharError::NegativeMultiplicity)?;
            // (1 + t e^w)^m = sum_k C(m,k) t^k e^{k w}
            let factor: Vec<Self> = (0..=m.min(p))
                .map(|k| Self::monomial(w.scale(k as i64), binomial(m, k)))
                .collect();
            let mut next = vec![Self::zero(self.rank); p + 1];
            for (i, a) in poly.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (k, f) in factor.iter().enumerate() {
                    if i + k > p {
                        break;
                    }
                    next[i + k] = &next[i + k] + &(a * f);
                }
            }
            poly = next;
        }
        Ok(poly)
    }

    /// `sum_p (-1)^p Lambda^p = prod_lambda (1 - e^lambda)^{m_lambda}`.
    pub fn lambda_alternating(&self) -> Result<Self, CharError> {
        if !self.is_effective() {
            return Err(CharError::NegativeMultiplicity);
        }
        let mut acc = Self::trivial(self.rank);
        for (w, m) in &self.terms {
            let m = m.to_usize().ok_or(CharError::NegativeMultiplicity)?;
            let mut factor = Self::zero(self.rank);
            for k in 0..=m {
                let sign = if k % 2 == 0 { BigInt::one() } else { -BigInt::one() };
                factor.add_term(w.scale(k as i64), sign * binomial(m, k));
            }
            acc = acc.tensor(&factor)?;
            if acc.is_zero() {
                break;
            }
        }
        Ok(acc)
    }

    /// Exact quotient by `e^delta - 1`, `delta != 0`.
    ///
    /// Along each line `mu + k delta` the quotient coefficients are negated
    /// partial sums of the dividend; a nonzero total on any line means the
    /// division is not exact.
    pub fn divide_by_binomial(&self, delta: &Weight) -> Result<Self, CharError> {
        let axis = delta.coords().iter().position(|&c| c != 0).ok_or(CharError::NotDivisible)?;
        let step = delta.coords()[axis];
        let mut lines: BTreeMap<Weight, BTreeMap<i64, BigInt>> = BTreeMap::new();
        for (w, m) in &self.terms {
            let k = w.coords()[axis].div_euclid(step);
            let base = w - &delta.scale(k);
            lines.entry(base).or_default().insert(k, m.clone());
        }
        let mut out = Self::zero(self.rank);
        for (base, line) in lines {
            let (&lo, _) = line.iter().next().expect("nonempty line");
            let (&hi, _) = line.iter().next_back().expect("nonempty line");
            let mut running = BigInt::zero();
            for k in lo..=hi {
                if let Some(m) = line.get(&k) {
                    running += m;
                }
                if k < hi {
                    out.add_term(&base + &delta.scale(k), -running.clone());
                }
            }
            if !running.is_zero() {
                return Err(CharError::NotDivisible);
            }
        }
        Ok(out)
    }
}

#[cfg(feature = "parallel")]
fn rayon_threads() -> usize {
    rayon::current_num_threads().max(1)
}

#[cfg(not(feature = "parallel"))]
fn rayon_threads() -> usize {
    1
}

fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

impl fmt::Debug for VirtualCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for VirtualCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (w, m)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(if m.is_negative() { " - " } else { " + " })?;
            } else if m.is_negative() {
                f.write_str("-")?;
            }
            let a = m.abs();
            if !a.is_one() {
                write!(f, "{}*", a)?;
            }
            write!(f, "e^{}", w)?;
        }
        Ok(())
    }
}

// Operator sugar for internal code where ranks are known to agree. These
// panic on rank mismatch; the `Result` methods above are the checked API.

impl<'a> Add<&'a VirtualCharacter> for &'a VirtualCharacter {
    type Output = VirtualCharacter;

    fn add(self, rhs: &'a VirtualCharacter) -> VirtualCharacter {
        VirtualCharacter::linear(self, rhs, 1, 1).expect("rank mismatch")
    }
}

impl<'a> Sub<&'a VirtualCharacter> for &'a VirtualCharacter {
    type Output = VirtualCharacter;

    fn sub(self, rhs: &'a VirtualCharacter) -> VirtualCharacter {
        VirtualCharacter::linear(self, rhs, 1, -1).expect("rank mismatch")
    }
}

impl<'a> Mul<&'a VirtualCharacter> for &'a VirtualCharacter {
    type Output = VirtualCharacter;

    fn mul(self, rhs: &'a VirtualCharacter) -> VirtualCharacter {
        self.tensor(rhs).expect("rank mismatch")
    }
}

impl Neg for &VirtualCharacter {
    type Output = VirtualCharacter;

    fn neg(self) -> VirtualCharacter {
        self.scale(&-BigInt::one())
    }
}
