use std::collections::{HashSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{CharError, VirtualCharacter, Weight};
use crate::exec::{self, Strategy};

/// Default cap on the size of an enumerated Weyl group.
pub const DEFAULT_WEYL_BOUND: usize = 100_000;

/// Classification of a positive root.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RootClass {
    Compact,
    Noncompact,
    Real,
    Complex,
}

impl RootClass {
    pub fn is_imaginary(self) -> bool {
        matches!(self, RootClass::Compact | RootClass::Noncompact)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            RootClass::Compact => "compact",
            RootClass::Noncompact => "noncompact",
            RootClass::Real => "real",
            RootClass::Complex => "complex",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "compact" => Some(RootClass::Compact),
            "noncompact" => Some(RootClass::Noncompact),
            "real" => Some(RootClass::Real),
            "complex" => Some(RootClass::Complex),
            _ => None,
        }
    }
}

/// Square integer matrix acting on column vectors of doubled coordinates.
pub type IntMatrix = Vec<Vec<i64>>;

fn identity(rank: usize) -> IntMatrix {
    (0..rank).map(|i| (0..rank).map(|j| i64::from(i == j)).collect()).collect()
}

fn mat_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect())
        .collect()
}

fn mat_apply(m: &IntMatrix, w: &Weight) -> Weight {
    Weight::from_doubled(m.iter().map(|row| row.iter().zip(w.coords()).map(|(a, b)| a * b).sum()).collect())
}

/// An element of the Weyl group with its sign character.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct WeylElement {
    pub matrix: IntMatrix,
    pub sign: i8,
}

impl WeylElement {
    pub fn identity(rank: usize) -> Self {
        WeylElement { matrix: identity(rank), sign: 1 }
    }

    pub fn apply(&self, w: &Weight) -> Weight {
        mat_apply(&self.matrix, w)
    }

    pub fn is_identity(&self) -> bool {
        self.matrix == identity(self.matrix.len())
    }
}

impl fmt::Debug for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Weyl({:?}, {:+})", self.matrix, self.sign)
    }
}

/// Unvalidated input to [`CartanDatum::new`]. Weights are in the doubled
/// lattice and the Gram matrix is taken with respect to doubled coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct RawDatum {
    pub name: String,
    pub rank: usize,
    pub roots: Vec<(Weight, RootClass)>,
    pub gram: Vec<Vec<BigRational>>,
    pub extra_generators: Vec<IntMatrix>,
}

/// Positive roots with their classification, the invariant form and
/// everything derived from them: `rho`, `rho_K`, `rho_n`, the character of
/// `p` and the Weyl group generated by compact-root reflections.
#[derive(Debug, Clone)]
pub struct CartanDatum {
    name: String,
    rank: usize,
    positive_roots: Vec<Weight>,
    root_class: Vec<RootClass>,
    gram: Vec<Vec<BigRational>>,
    extra_generators: Vec<IntMatrix>,
    rho: Weight,
    rho_k: Weight,
    rho_n: Weight,
    p_char: VirtualCharacter,
    weyl: Vec<WeylElement>,
    /// `prod over compact roots a (both signs) of (1 - e^a)`
    compact_density: VirtualCharacter,
}

impl CartanDatum {
    pub fn new(raw: RawDatum) -> Result<Self, CharError> {
        Self::with_bound(raw, DEFAULT_WEYL_BOUND)
    }

    pub fn with_bound(raw: RawDatum, bound: usize) -> Result<Self, CharError> {
        let RawDatum { name, rank, roots, gram, extra_generators } = raw;
        if rank == 0 {
            return Err(CharError::BadClassification("rank must be positive".into()));
        }
        check_gram(&gram, rank)?;
        for (r, _) in &roots {
            if r.rank() != rank {
                return Err(CharError::RankMismatch { left: rank, right: r.rank() });
            }
            if r.is_zero() {
                return Err(CharError::BadClassification("zero root".into()));
            }
            if !r.is_integral() {
                return Err(CharError::BadClassification(format!("root {} is not integral", r)));
            }
        }
        for g in &extra_generators {
            if g.len() != rank || g.iter().any(|row| row.len() != rank) {
                return Err(CharError::BadClassification("extra generator has wrong shape".into()));
            }
        }
        let (positive_roots, root_class): (Vec<_>, Vec<_>) = roots.into_iter().unzip();

        let half_sum = |pred: &dyn Fn(RootClass) -> bool| {
            let mut acc = Weight::zero(rank);
            for (r, c) in positive_roots.iter().zip(&root_class) {
                if pred(*c) {
                    acc = &acc + r;
                }
            }
            acc.half().expect("sum of integral roots is even in doubled coordinates")
        };
        let rho = half_sum(&|_| true);
        let rho_k = half_sum(&|c| c == RootClass::Compact);
        let rho_n = half_sum(&|c| c == RootClass::Noncompact);

        let mut p_char = VirtualCharacter::zero(rank);
        for (r, c) in positive_roots.iter().zip(&root_class) {
            if *c == RootClass::Noncompact {
                p_char.add_term(r.clone(), BigInt::one());
                p_char.add_term(-r, BigInt::one());
            }
        }

        let mut datum = CartanDatum {
            name,
            rank,
            positive_roots,
            root_class,
            gram,
            extra_generators,
            rho,
            rho_k,
            rho_n,
            p_char,
            weyl: Vec::new(),
            compact_density: VirtualCharacter::zero(rank),
        };
        datum.check_compact_form_positive()?;
        datum.weyl = datum.enumerate_weyl(bound)?;
        let mut density = VirtualCharacter::trivial(rank);
        for r in datum.compact_positive_roots() {
            for s in [r.clone(), -r] {
                let factor = &VirtualCharacter::trivial(rank) - &VirtualCharacter::monomial(s, 1);
                density = &density * &factor;
            }
        }
        datum.compact_density = density;
        Ok(datum)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn positive_roots(&self) -> &[Weight] {
        &self.positive_roots
    }

    pub fn root_class(&self) -> &[RootClass] {
        &self.root_class
    }

    pub fn gram(&self) -> &[Vec<BigRational>] {
        &self.gram
    }

    pub fn extra_generators(&self) -> &[IntMatrix] {
        &self.extra_generators
    }

    pub fn rho(&self) -> &Weight {
        &self.rho
    }

    pub fn rho_k(&self) -> &Weight {
        &self.rho_k
    }

    pub fn rho_n(&self) -> &Weight {
        &self.rho_n
    }

    /// Character of `p`: `sum over noncompact positive roots of e^a + e^-a`.
    pub fn p_char(&self) -> &VirtualCharacter {
        &self.p_char
    }

    pub fn weyl(&self) -> &[WeylElement] {
        &self.weyl
    }

    pub fn weyl_order(&self) -> usize {
        self.weyl.len()
    }

    pub fn roots_of(&self, class: RootClass) -> impl Iterator<Item = &Weight> {
        self.positive_roots.iter().zip(&self.root_class).filter(move |(_, c)| **c == class).map(|(r, _)| r)
    }

    pub fn compact_positive_roots(&self) -> impl Iterator<Item = &Weight> {
        self.roots_of(RootClass::Compact)
    }

    pub fn noncompact_positive_roots(&self) -> impl Iterator<Item = &Weight> {
        self.roots_of(RootClass::Noncompact)
    }

    /// Every root is compact or noncompact: the datum describes a compact Cartan.
    pub fn is_compact_cartan(&self) -> bool {
        self.root_class.iter().all(|c| c.is_imaginary())
    }

    /// Every root is compact: the datum describes a compact connected group.
    pub fn is_compact_type(&self) -> bool {
        self.root_class.iter().all(|c| *c == RootClass::Compact)
    }

    /// `<a, b>` through the Gram matrix on doubled coordinates.
    pub fn inner(&self, a: &Weight, b: &Weight) -> BigRational {
        let mut acc = BigRational::zero();
        for (i, ai) in a.coords().iter().enumerate() {
            if *ai == 0 {
                continue;
            }
            for (j, bj) in b.coords().iter().enumerate() {
                if *bj != 0 {
                    acc += &self.gram[i][j] * BigRational::from_integer(BigInt::from(ai * bj));
                }
            }
        }
        acc
    }

    /// Dominant for the compact positive roots.
    pub fn is_dominant(&self, w: &Weight) -> bool {
        self.compact_positive_roots().all(|a| !self.inner(w, a).is_negative())
    }

    fn is_root(&self, w: &Weight) -> bool {
        self.positive_roots.iter().any(|r| r == w || &-r == w)
    }

    fn reflection(&self, alpha: &Weight) -> Result<IntMatrix, CharError> {
        let norm = self.inner(alpha, alpha);
        let rank = self.rank;
        let mut m = identity(rank);
        for j in 0..rank {
            let e_j = Weight::from_doubled((0..rank).map(|k| i64::from(k == j)).collect());
            let coeff = BigRational::from_integer(BigInt::from(2)) * self.inner(&e_j, alpha) / &norm;
            for (i, &ai) in alpha.coords().iter().enumerate() {
                let entry = &coeff * BigRational::from_integer(BigInt::from(ai));
                if !entry.is_integer() {
                    return Err(CharError::NonIntegralReflection(alpha.to_string()));
                }
                let entry: i64 = entry.to_integer().try_into().map_err(|_| CharError::NonIntegralReflection(alpha.to_string()))?;
                m[i][j] -= entry;
            }
        }
        Ok(m)
    }

    /// `(-1)^(number of compact positive roots sent to negative roots)`.
    fn sign_of(&self, m: &IntMatrix) -> i8 {
        let flips = self
            .compact_positive_roots()
            .filter(|r| {
                let img = mat_apply(m, r);
                !self.compact_positive_roots().any(|q| *q == img)
            })
            .count();
        if flips % 2 == 0 {
            1
        } else {
            -1
        }
    }

    fn enumerate_weyl(&self, bound: usize) -> Result<Vec<WeylElement>, CharError> {
        let mut gens = Vec::new();
        for r in self.compact_positive_roots() {
            gens.push(self.reflection(r)?);
        }
        gens.extend(self.extra_generators.iter().cloned());
        for g in &gens {
            for r in &self.positive_roots {
                if !self.is_root(&mat_apply(g, r)) {
                    return Err(CharError::RootSetNotInvariant(r.to_string()));
                }
            }
            for r in self.compact_positive_roots() {
                let img = mat_apply(g, r);
                if !self.compact_positive_roots().any(|q| *q == img || -q == img) {
                    return Err(CharError::RootSetNotInvariant(r.to_string()));
                }
            }
        }
        let start = identity(self.rank);
        let mut seen: HashSet<IntMatrix> = HashSet::from([start.clone()]);
        let mut order = vec![start.clone()];
        let mut queue = VecDeque::from([start]);
        while let Some(m) = queue.pop_front() {
            for g in &gens {
                let next = mat_mul(g, &m);
                if seen.insert(next.clone()) {
                    if seen.len() > bound {
                        return Err(CharError::GroupTooLarge { bound });
                    }
                    order.push(next.clone());
                    queue.push_back(next);
                }
            }
        }
        Ok(order
            .into_iter()
            .map(|matrix| {
                let sign = self.sign_of(&matrix);
                WeylElement { matrix, sign }
            })
            .collect())
    }

    /// Stabilizer of `w` in the Weyl group is trivial.
    pub fn is_regular(&self, w: &Weight) -> bool {
        self.weyl.iter().filter(|e| e.apply(w) == *w).count() == 1
    }

    /// Lexicographically largest element of the Weyl orbit.
    pub fn orbit_representative(&self, w: &Weight) -> Weight {
        self.weyl.iter().map(|e| e.apply(w)).max().expect("identity is always present")
    }

    /// The dominant element of the orbit of `w`.
    pub fn dominant_conjugate(&self, w: &Weight) -> Weight {
        self.weyl
            .iter()
            .map(|e| e.apply(w))
            .find(|x| self.is_dominant(x))
            .expect("every orbit meets the dominant chamber")
    }

    fn check_compact_form_positive(&self) -> Result<(), CharError> {
        // Sylvester's criterion on a basis of the compact root span.
        let basis = independent_subset(&self.compact_positive_roots().cloned().collect::<Vec<_>>());
        for k in 1..=basis.len() {
            let minor: Vec<Vec<BigRational>> =
                (0..k).map(|i| (0..k).map(|j| self.inner(&basis[i], &basis[j])).collect()).collect();
            if !determinant(minor).is_positive() {
                return Err(CharError::GramNotPositive);
            }
        }
        Ok(())
    }

    /// `sum over w of sign(w) e^{w lam}`.
    pub fn alternating_sum(&self, lam: &Weight) -> VirtualCharacter {
        self.alternating_sum_with(lam, Strategy::default())
    }

    pub fn alternating_sum_with(&self, lam: &Weight, strategy: Strategy) -> VirtualCharacter {
        let strategy = if self.weyl.len() < 64 { Strategy::Sequential } else { strategy };
        let images = exec::map_slice(strategy, &self.weyl, |e| (e.apply(lam), e.sign));
        let mut out = VirtualCharacter::zero(self.rank);
        for (w, s) in images {
            out.add_term(w, BigInt::from(s));
        }
        out
    }

    /// Irreducible character of highest weight `lam` for a compact datum,
    /// by exact division of the alternating sum at `lam + rho` by the Weyl
    /// denominator `prod (e^{a/2} - e^{-a/2})`.
    pub fn weyl_character(&self, lam: &Weight) -> Result<VirtualCharacter, CharError> {
        if !self.is_compact_type() {
            return Err(CharError::NotCompactDatum);
        }
        if lam.rank() != self.rank {
            return Err(CharError::RankMismatch { left: self.rank, right: lam.rank() });
        }
        if !self.is_dominant(lam) {
            return Err(CharError::NotDominant(lam.to_string()));
        }
        let mut acc = self.alternating_sum(&(lam + &self.rho));
        for a in &self.positive_roots {
            let half = a.half().expect("roots are integral");
            acc = acc.divide_by_binomial(a)?.shift(&half);
        }
        Ok(acc)
    }

    /// Weyl dimension formula `prod <lam+rho, a> / <rho, a>` over positive roots.
    pub fn weyl_dimension(&self, lam: &Weight) -> BigRational {
        let shifted = lam + &self.rho;
        self.positive_roots
            .iter()
            .map(|a| self.inner(&shifted, a) / self.inner(&self.rho, a))
            .fold(BigRational::one(), |acc, x| acc * x)
    }

    /// `(1/|W|) CT(a * dual(b) * prod over compact roots (1 - e^a))`.
    pub fn inner_k(&self, a: &VirtualCharacter, b: &VirtualCharacter) -> Result<BigRational, CharError> {
        if a.rank() != self.rank || b.rank() != self.rank {
            return Err(CharError::RankMismatch { left: self.rank, right: a.rank().max(b.rank()) });
        }
        let weighted = a.tensor(&self.compact_density)?;
        // CT(x * dual(b)) = sum_w x(w) b(w)
        let mut ct = BigInt::zero();
        for (w, m) in b.terms() {
            ct += m * weighted.mult(w);
        }
        Ok(BigRational::new(ct, BigInt::from(self.weyl.len())))
    }
}

fn check_gram(gram: &[Vec<BigRational>], rank: usize) -> Result<(), CharError> {
    if gram.len() != rank || gram.iter().any(|row| row.len() != rank) {
        return Err(CharError::GramNotSymmetric);
    }
    for i in 0..rank {
        for j in 0..i {
            if gram[i][j] != gram[j][i] {
                return Err(CharError::GramNotSymmetric);
            }
        }
    }
    Ok(())
}

/// Maximal linearly independent subset, by exact elimination.
fn independent_subset(vs: &[Weight]) -> Vec<Weight> {
    let mut echelon: Vec<Vec<BigRational>> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    let mut chosen = Vec::new();
    for v in vs {
        let mut row: Vec<BigRational> = v.coords().iter().map(|&c| BigRational::from_integer(BigInt::from(c))).collect();
        for (e, &p) in echelon.iter().zip(&pivots) {
            if !row[p].is_zero() {
                let f = &row[p] / &e[p];
                for (x, y) in row.iter_mut().zip(e) {
                    *x -= &f * y;
                }
            }
        }
        if let Some(p) = row.iter().position(|x| !x.is_zero()) {
            echelon.push(row);
            pivots.push(p);
            chosen.push(v.clone());
        }
    }
    chosen
}

/// Exact determinant by Gaussian elimination over the rationals.
fn determinant(mut m: Vec<Vec<BigRational>>) -> BigRational {
    let n = m.len();
    let mut det = BigRational::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return BigRational::zero();
        };
        if piv != col {
            m.swap(piv, col);
            det = -det;
        }
        let p = m[col][col].clone();
        det *= &p;
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] / &p;
            for c in col..n {
                let sub = &f * &m[col][c];
                m[r][c] -= sub;
            }
        }
    }
    det
}
