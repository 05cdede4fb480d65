use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::CliffordError;
use crate::exec::{self, Strategy};

/// A blade: a subset of the `2m` generator slots, `e_1..e_m` in bits
/// `0..m` and `f_1..f_m` in bits `m..2m`. The product is taken in
/// ascending slot order.
pub type Blade = u64;

/// Largest supported `m`; blades must fit in a `u64`.
pub const MAX_M: usize = 32;

/// `V = V+ (+) V-` of dimension `2m`, with `q(e_i, f_j) = -delta_ij` and
/// both halves isotropic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PolarizedSpace {
    m: usize,
}

impl PolarizedSpace {
    pub fn new(m: usize) -> Result<Self, CliffordError> {
        if m == 0 || m > MAX_M {
            return Err(CliffordError::BadDimension(m));
        }
        Ok(PolarizedSpace { m })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn dim(&self) -> usize {
        2 * self.m
    }

    /// Slot of `e_i` (0-based `i`).
    pub fn e(&self, i: usize) -> usize {
        debug_assert!(i < self.m);
        i
    }

    /// Slot of `f_i` (0-based `i`).
    pub fn f(&self, i: usize) -> usize {
        debug_assert!(i < self.m);
        self.m + i
    }

    /// The partner slot under the pairing `e_i <-> f_i`.
    pub fn partner(&self, slot: usize) -> usize {
        if slot < self.m {
            slot + self.m
        } else {
            slot - self.m
        }
    }

    /// `q` on two generator slots.
    pub fn q_slots(&self, a: usize, b: usize) -> BigRational {
        if a != b && self.partner(a) == b {
            -BigRational::one()
        } else {
            BigRational::zero()
        }
    }

    /// `q(u, v)` for vectors given by their `2m` slot coefficients.
    pub fn q(&self, u: &[BigRational], v: &[BigRational]) -> BigRational {
        let m = self.m;
        let mut acc = BigRational::zero();
        for i in 0..m {
            acc -= &u[i] * &v[m + i] + &u[m + i] * &v[i];
        }
        acc
    }

    /// Sign and result of right-multiplying the ordered blade `blade` by the
    /// generator at `slot`: at most two terms, the wedge and the contraction
    /// against the partner already present in the blade.
    fn mul_generator(&self, blade: Blade, slot: usize) -> [(Blade, i64); 2] {
        let bit = 1u64 << slot;
        let above = (blade >> slot >> 1).count_ones();
        let wedge = if blade & bit != 0 {
            // g g = -q(g) = 0 for null generators
            (0, 0)
        } else {
            (blade | bit, if above % 2 == 0 { 1 } else { -1 })
        };
        let partner = self.partner(slot);
        let pbit = 1u64 << partner;
        let contraction = if partner > slot && blade & pbit != 0 {
            // moving g left past everything after the partner, then
            // g p + p g = -2 q(p, g) = 2
            let after = (blade >> partner >> 1).count_ones();
            (blade & !pbit, if after % 2 == 0 { 2 } else { -2 })
        } else {
            (0, 0)
        };
        [wedge, contraction]
    }

    /// Product of two basis blades as a sparse combination of blades.
    pub fn blade_product(&self, a: Blade, b: Blade) -> Vec<(Blade, i64)> {
        let mut acc: Vec<(Blade, i64)> = vec![(a, 1)];
        let mut rest = b;
        while rest != 0 {
            let slot = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let mut next: BTreeMap<Blade, i64> = BTreeMap::new();
            for (blade, c) in acc {
                for (nb, s) in self.mul_generator(blade, slot) {
                    if s != 0 {
                        *next.entry(nb).or_insert(0) += c * s;
                    }
                }
            }
            acc = next.into_iter().filter(|(_, c)| *c != 0).collect();
            if acc.is_empty() {
                break;
            }
        }
        acc
    }
}

/// A finitely supported rational combination of blades.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct CliffordElement {
    terms: BTreeMap<Blade, BigRational>,
}

impl CliffordElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::blade(0, BigRational::one())
    }

    pub fn blade(b: Blade, c: BigRational) -> Self {
        let mut out = Self::zero();
        out.add_term(b, c);
        out
    }

    /// The generator at `slot` with coefficient one.
    pub fn generator(slot: usize) -> Self {
        Self::blade(1 << slot, BigRational::one())
    }

    /// A vector from its `2m` slot coefficients.
    pub fn vector(coeffs: &[BigRational]) -> Self {
        let mut out = Self::zero();
        for (slot, c) in coeffs.iter().enumerate() {
            out.add_term(1 << slot, c.clone());
        }
        out
    }

    pub fn scalar(c: BigRational) -> Self {
        Self::blade(0, c)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Blade, &BigRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, b: Blade) -> BigRational {
        self.terms.get(&b).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn add_term(&mut self, b: Blade, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(b).or_insert_with(BigRational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&b);
        }
    }

    /// Largest slot used plus one.
    pub fn span_bits(&self) -> u32 {
        self.terms.keys().fold(0, |acc, b| acc.max(64 - b.leading_zeros()))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (b, c) in &other.terms {
            out.add_term(*b, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        CliffordElement { terms: self.terms.iter().map(|(b, c)| (*b, c * k)).collect() }
    }

    /// Every blade has even popcount.
    pub fn is_even(&self) -> bool {
        self.terms.keys().all(|b| b.count_ones() % 2 == 0)
    }

    pub fn is_odd(&self) -> bool {
        self.terms.keys().all(|b| b.count_ones() % 2 == 1)
    }

    /// Every blade is a single generator (zero counts as a vector).
    pub fn is_vector(&self) -> bool {
        self.terms.keys().all(|b| b.count_ones() == 1)
    }

    /// Slot coefficients of a vector; `None` if some blade is not degree one.
    pub fn vector_coeffs(&self, sp: &PolarizedSpace) -> Option<Vec<BigRational>> {
        if !self.is_vector() {
            return None;
        }
        let mut out = vec![BigRational::zero(); sp.dim()];
        for (b, c) in &self.terms {
            let slot = b.trailing_zeros() as usize;
            if slot >= sp.dim() {
                return None;
            }
            out[slot] = c.clone();
        }
        Some(out)
    }

    /// The scalar part when the element is a pure scalar.
    pub fn as_scalar(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&0).cloned(),
            _ => None,
        }
    }
}

impl fmt::Debug for CliffordElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (b, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{}*[{:b}]", c, b)?;
        }
        Ok(())
    }
}

fn check_space(sp: &PolarizedSpace, x: &CliffordElement) -> Result<(), CliffordError> {
    if x.span_bits() as usize > sp.dim() {
        Err(CliffordError::SpaceMismatch { m: sp.m() })
    } else {
        Ok(())
    }
}

/// Bilinear product in `Cl(q)`.
pub fn clifford_mul(sp: &PolarizedSpace, x: &CliffordElement, y: &CliffordElement) -> Result<CliffordElement, CliffordError> {
    clifford_mul_with(sp, x, y, Strategy::default())
}

pub fn clifford_mul_with(
    sp: &PolarizedSpace,
    x: &CliffordElement,
    y: &CliffordElement,
    strategy: Strategy,
) -> Result<CliffordElement, CliffordError> {
    check_space(sp, x)?;
    check_space(sp, y)?;
    let left: Vec<(&Blade, &BigRational)> = x.terms.iter().collect();
    let strategy = if left.len() * y.terms.len() < exec::PAR_THRESHOLD { Strategy::Sequential } else { strategy };
    let out = exec::fold_chunks(
        strategy,
        &left,
        16,
        |part| {
            let mut acc: BTreeMap<Blade, BigRational> = BTreeMap::new();
            for (a, ca) in part {
                for (b, cb) in &y.terms {
                    let coeff = *ca * cb;
                    for (blade, s) in sp.blade_product(**a, *b) {
                        *acc.entry(blade).or_insert_with(BigRational::zero) += &coeff * BigRational::from_integer(BigInt::from(s));
                    }
                }
            }
            acc
        },
        |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert_with(BigRational::zero) += v;
            }
            a
        },
    )
    .unwrap_or_default();
    Ok(CliffordElement { terms: out.into_iter().filter(|(_, c)| !c.is_zero()).collect() })
}

/// Dense matrix of left multiplication by `x` on the `4^m` blade basis.
fn left_mul_matrix(sp: &PolarizedSpace, x: &CliffordElement) -> Vec<Vec<BigRational>> {
    let n = 1usize << sp.dim();
    let mut mat = vec![vec![BigRational::zero(); n]; n];
    for col in 0..n {
        for (a, ca) in &x.terms {
            for (blade, s) in sp.blade_product(*a, col as Blade) {
                mat[blade as usize][col] += ca * BigRational::from_integer(BigInt::from(s));
            }
        }
    }
    mat
}

/// Two-sided inverse by solving `x y = 1` exactly on the blade basis.
pub fn clifford_inverse(sp: &PolarizedSpace, x: &CliffordElement) -> Result<CliffordElement, CliffordError> {
    check_space(sp, x)?;
    if sp.dim() > 8 {
        return Err(CliffordError::BadDimension(sp.m()));
    }
    if let Some(v) = x.vector_coeffs(sp) {
        // v^-1 = -v / q(v)
        let qv = sp.q(&v, &v);
        if qv.is_zero() {
            return Err(CliffordError::NotInvertible);
        }
        return Ok(x.scale(&(-BigRational::one() / qv)));
    }
    let n = 1usize << sp.dim();
    let mut a = left_mul_matrix(sp, x);
    let mut rhs = vec![BigRational::zero(); n];
    rhs[0] = BigRational::one();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero()).ok_or(CliffordError::NotInvertible)?;
        a.swap(piv, col);
        rhs.swap(piv, col);
        let p = a[col][col].clone();
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &p;
            for c in col..n {
                let sub = &f * &a[col][c];
                a[r][c] -= sub;
            }
            let sub = &f * &rhs[col];
            rhs[r] -= sub;
        }
    }
    let mut y = CliffordElement::zero();
    for (i, r) in rhs.into_iter().enumerate() {
        y.add_term(i as Blade, r / &a[i][i]);
    }
    // Left inverse of a finite-dimensional algebra element is two-sided.
    debug_assert_eq!(clifford_mul(sp, &y, x).ok(), Some(CliffordElement::one()));
    Ok(y)
}

/// A product of non-isotropic vectors together with its inverse.
#[derive(Debug, Clone, PartialEq)]
pub struct Versor {
    pub element: CliffordElement,
    pub inverse: CliffordElement,
    pub factors: usize,
}

impl Versor {
    /// `v_1 v_2 ... v_k`, each `v_i` given by slot coefficients.
    pub fn from_vectors(sp: &PolarizedSpace, vectors: &[Vec<BigRational>]) -> Result<Self, CliffordError> {
        let mut element = CliffordElement::one();
        let mut inverse = CliffordElement::one();
        for v in vectors {
            if v.len() != sp.dim() {
                return Err(CliffordError::SpaceMismatch { m: sp.m() });
            }
            let qv = sp.q(v, v);
            if qv.is_zero() {
                return Err(CliffordError::NotInvertible);
            }
            let vec = CliffordElement::vector(v);
            element = clifford_mul(sp, &element, &vec)?;
            inverse = clifford_mul(sp, &vec.scale(&(-BigRational::one() / qv)), &inverse)?;
        }
        Ok(Versor { element, inverse, factors: vectors.len() })
    }

    pub fn neg(&self) -> Self {
        let m1 = -BigRational::one();
        Versor { element: self.element.scale(&m1), inverse: self.inverse.scale(&m1), factors: self.factors }
    }

    /// `x v x^-1`.
    pub fn conjugate(&self, sp: &PolarizedSpace, v: &CliffordElement) -> Result<CliffordElement, CliffordError> {
        conjugate_with_inverse(sp, &self.element, &self.inverse, v)
    }
}

fn conjugate_with_inverse(
    sp: &PolarizedSpace,
    x: &CliffordElement,
    x_inv: &CliffordElement,
    v: &CliffordElement,
) -> Result<CliffordElement, CliffordError> {
    let out = clifford_mul(sp, &clifford_mul(sp, x, v)?, x_inv)?;
    if !out.is_vector() {
        return Err(CliffordError::NotVector);
    }
    Ok(out)
}

/// `x v x^-1` for an invertible `x`; the image must again be a vector.
pub fn conjugation_action(sp: &PolarizedSpace, x: &CliffordElement, v: &CliffordElement) -> Result<CliffordElement, CliffordError> {
    let x_inv = clifford_inverse(sp, x)?;
    conjugate_with_inverse(sp, x, &x_inv, v)
}

/// A rational unit vector `a e_i + b f_i` with `q = -2ab = target`.
pub fn unit_vector(sp: &PolarizedSpace, i: usize, a: BigRational, target_sign: i8) -> Result<Vec<BigRational>, CliffordError> {
    if a.is_zero() || i >= sp.m() {
        return Err(CliffordError::NotInvertible);
    }
    // -2 a b = target  =>  b = -target / (2a)
    let target = BigRational::from_integer(BigInt::from(target_sign));
    let b = -target / (BigRational::from_integer(BigInt::from(2)) * &a);
    let mut v = vec![BigRational::zero(); sp.dim()];
    v[sp.e(i)] = a;
    v[sp.f(i)] = b;
    debug_assert_eq!(sp.q(&v, &v).abs(), BigRational::one());
    Ok(v)
}
