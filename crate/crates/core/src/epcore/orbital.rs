use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::{build_compact, delta_characters, EpError, SINGULAR_THRESHOLD};
use crate::charlat::{CartanDatum, CharError, TorusPoint, VirtualCharacter, Weight};
use crate::clifford::half_spin_difference;

fn check_regular(d: &CartanDatum, t: &TorusPoint) -> Result<(), EpError> {
    let delta = delta_characters(d)?.delta_full.evaluate(t)?;
    if delta.norm() < SINGULAR_THRESHOLD {
        return Err(EpError::SingularElement);
    }
    Ok(())
}

/// Orbital integral of the Euler-Poincare function of `tau` at a regular
/// elliptic `t`: the trace `tau(t)`.
pub fn orbital_regular(d: &CartanDatum, tau: &VirtualCharacter, t: &TorusPoint) -> Result<Complex64, EpError> {
    check_regular(d, t)?;
    Ok(tau.evaluate(t)?)
}

/// As [`orbital_regular`] for the irreducible `K`-type of highest weight `lam`.
pub fn orbital_regular_highest(d: &CartanDatum, lam: &Weight, t: &TorusPoint) -> Result<Complex64, EpError> {
    let k = build_compact(d)?;
    let tau = k.weyl_character(lam)?;
    orbital_regular(d, &tau, t)
}

/// `tau_value * c_g^{-1} * w_order * prod <rho_g, a>` over `pos_roots_g`,
/// inner products taken with `gram` on doubled coordinates.
pub fn orbital_general_formula(
    tau_value: Complex64,
    c_g: f64,
    w_order: u64,
    rho_g: &Weight,
    pos_roots_g: &[Weight],
    gram: &[Vec<BigRational>],
) -> Result<Complex64, EpError> {
    if c_g == 0.0 {
        return Err(EpError::ZeroConstant);
    }
    let rank = rho_g.rank();
    if gram.len() != rank || gram.iter().any(|r| r.len() != rank) {
        return Err(EpError::DimensionMismatch("gram does not match rho_g".into()));
    }
    let mut prod = BigRational::one();
    for a in pos_roots_g {
        if a.rank() != rank {
            return Err(CharError::RankMismatch { left: rank, right: a.rank() }.into());
        }
        prod *= gram_inner(gram, rho_g, a);
    }
    let factor = prod.to_f64().unwrap_or(f64::NAN) * w_order as f64 / c_g;
    Ok(tau_value * factor)
}

fn gram_inner(gram: &[Vec<BigRational>], a: &Weight, b: &Weight) -> BigRational {
    let mut acc = BigRational::zero();
    for (i, &x) in a.coords().iter().enumerate() {
        for (j, &y) in b.coords().iter().enumerate() {
            if x != 0 && y != 0 {
                acc += &gram[i][j] * BigRational::from_integer((x * y).into());
            }
        }
    }
    acc
}

/// `tau(t) / (chS+ - chS-)(t)`, the half-spin modules built from the
/// noncompact positive roots.
pub fn pseudo_orbital(d: &CartanDatum, tau: &VirtualCharacter, t: &TorusPoint) -> Result<Complex64, EpError> {
    if !d.is_compact_cartan() {
        return Err(EpError::NotCompactCartan);
    }
    let mu: Vec<Weight> = d.noncompact_positive_roots().cloned().collect();
    let den = half_spin_difference(d.rank(), &mu)?.evaluate(t)?;
    if den.norm() < SINGULAR_THRESHOLD {
        return Err(EpError::SingularElement);
    }
    Ok(tau.evaluate(t)? / den)
}

/// `<l, l + 2 rho_K> - <rho, rho> + <rho_K, rho_K>` with `l` the highest
/// weight of the dual of the `K`-type `lam`.
pub fn casimir_shift(d: &CartanDatum, lam: &Weight) -> Result<BigRational, EpError> {
    if lam.rank() != d.rank() {
        return Err(CharError::RankMismatch { left: d.rank(), right: lam.rank() }.into());
    }
    if !d.is_dominant(lam) {
        return Err(CharError::NotDominant(lam.to_string()).into());
    }
    let dual = d.dominant_conjugate(&-lam);
    let shifted = &dual + &d.rho_k().scale(2);
    Ok(d.inner(&dual, &shifted) - d.inner(d.rho(), d.rho()) + d.inner(d.rho_k(), d.rho_k()))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HcInputs {
    pub n_pos_roots: u32,
    pub n_noncompact: u32,
    /// `dim G/K - real rank`
    pub nu: u32,
    pub weyl_order: u64,
    /// `v(T)/v(K)`, supplied.
    pub vol_ratio: f64,
}

impl HcInputs {
    pub fn validate(&self) -> Result<(), EpError> {
        if self.n_noncompact > self.n_pos_roots {
            return Err(EpError::BadInput("more noncompact roots than positive roots".into()));
        }
        if self.weyl_order == 0 || !(self.vol_ratio > 0.0 && self.vol_ratio.is_finite()) {
            return Err(EpError::BadInput("weyl order and volume ratio must be positive".into()));
        }
        Ok(())
    }
}

/// `(-1)^{n_noncompact} (2 pi)^{n_pos} 2^{nu/2} vol_ratio |W|`.
pub fn hc_constant(inp: &HcInputs) -> f64 {
    let sign = if inp.n_noncompact % 2 == 0 { 1.0 } else { -1.0 };
    sign * (2.0 * std::f64::consts::PI).powi(inp.n_pos_roots as i32)
        * 2f64.powf(inp.nu as f64 / 2.0)
        * inp.vol_ratio
        * inp.weyl_order as f64
}

/// `prod over positive a of |1 - e^{-a}(t)| |1 - e^{a}(t)|`.
pub fn weyl_det_factor(d: &CartanDatum, t: &TorusPoint) -> Result<f64, EpError> {
    if t.rank() != d.rank() {
        return Err(CharError::RankMismatch { left: d.rank(), right: t.rank() }.into());
    }
    Ok(d.positive_roots()
        .iter()
        .map(|a| {
            let z = Complex64::from_polar(1.0, t.phase(a));
            (Complex64::one() - z).norm() * (Complex64::one() - z.inv()).norm()
        })
        .product())
}

/// A positive root of a Cartan `A T` that is not imaginary.
#[derive(Debug, Clone, PartialEq)]
pub struct SplitRoot {
    /// Values on the coordinates of `log a`.
    pub a_values: Vec<BigRational>,
    /// Restriction to `T`, doubled lattice.
    pub t_weight: Weight,
}

/// A Cartan `H = A T` with its non-imaginary positive roots, its positive
/// imaginary roots and `rho_P`.
#[derive(Debug, Clone, PartialEq)]
pub struct SplitCartanDatum {
    real_rank: usize,
    t_rank: usize,
    roots: Vec<SplitRoot>,
    imaginary: Vec<Weight>,
    rho_p: Vec<BigRational>,
}

impl SplitCartanDatum {
    pub fn new(real_rank: usize, t_rank: usize, roots: Vec<SplitRoot>, imaginary: Vec<Weight>) -> Result<Self, EpError> {
        let mut rho_p = vec![BigRational::zero(); real_rank];
        for r in &roots {
            if r.a_values.len() != real_rank || r.t_weight.rank() != t_rank {
                return Err(EpError::DimensionMismatch("split root has the wrong shape".into()));
            }
            if r.a_values.iter().all(Zero::is_zero) {
                return Err(EpError::BadInput("non-imaginary root vanishes on A".into()));
            }
            for (acc, v) in rho_p.iter_mut().zip(&r.a_values) {
                *acc += v;
            }
        }
        if imaginary.iter().any(|w| w.rank() != t_rank) {
            return Err(EpError::DimensionMismatch("imaginary root has the wrong rank".into()));
        }
        let two = BigRational::from_integer(2.into());
        let rho_p = rho_p.into_iter().map(|x| x / &two).collect();
        Ok(SplitCartanDatum { real_rank, t_rank, roots, imaginary, rho_p })
    }

    /// A compact Cartan seen as `H = T` with `A` trivial.
    pub fn from_compact(d: &CartanDatum) -> Self {
        SplitCartanDatum {
            real_rank: 0,
            t_rank: d.rank(),
            roots: Vec::new(),
            imaginary: d.positive_roots().to_vec(),
            rho_p: Vec::new(),
        }
    }

    pub fn real_rank(&self) -> usize {
        self.real_rank
    }

    pub fn t_rank(&self) -> usize {
        self.t_rank
    }

    pub fn roots(&self) -> &[SplitRoot] {
        &self.roots
    }

    pub fn imaginary(&self) -> &[Weight] {
        &self.imaginary
    }

    pub fn rho_p(&self) -> &[BigRational] {
        &self.rho_p
    }

    fn check(&self, a: &[f64], t: &TorusPoint) -> Result<(), EpError> {
        if a.len() != self.real_rank {
            return Err(EpError::DimensionMismatch(format!("expected {} A-coordinates, got {}", self.real_rank, a.len())));
        }
        if t.rank() != self.t_rank {
            return Err(EpError::DimensionMismatch(format!("expected {} T-angles, got {}", self.t_rank, t.rank())));
        }
        Ok(())
    }

    fn linear(v: &[BigRational], a: &[f64]) -> f64 {
        v.iter().zip(a).map(|(c, x)| c.to_f64().unwrap_or(f64::NAN) * x).sum()
    }

    /// `h^{-a}` for a non-imaginary root.
    fn inverse_root_value(&self, r: &SplitRoot, a: &[f64], t: &TorusPoint) -> Complex64 {
        Complex64::from_polar((-Self::linear(&r.a_values, a)).exp(), -t.phase(&r.t_weight))
    }

    /// `|prod (1 - h^{-a})| a^{rho_P}` over the non-imaginary positive roots.
    pub fn delta_plus_evaluate(&self, a: &[f64], t: &TorusPoint) -> Result<f64, EpError> {
        self.check(a, t)?;
        let prod: f64 = self.roots.iter().map(|r| (Complex64::one() - self.inverse_root_value(r, a, t)).norm()).product();
        Ok(prod * Self::linear(&self.rho_p, a).exp())
    }

    /// `h^{rho_P} prod (1 - h^{-a})` over all positive roots.
    pub fn normalized_orbital_factor(&self, a: &[f64], t: &TorusPoint) -> Result<Complex64, EpError> {
        self.check(a, t)?;
        let mut acc = Complex64::new(Self::linear(&self.rho_p, a).exp(), 0.0);
        for r in &self.roots {
            acc *= Complex64::one() - self.inverse_root_value(r, a, t);
        }
        for w in &self.imaginary {
            acc *= Complex64::one() - Complex64::from_polar(1.0, -t.phase(w));
        }
        Ok(acc)
    }
}
