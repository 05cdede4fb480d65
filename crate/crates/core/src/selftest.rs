//! The invariant suite behind `ep selftest`.
//!
//! Each check is self-contained and deterministic (seeded sampling), so the
//! checks themselves can run in parallel.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::charlat::{CartanDatum, TorusPoint, VirtualCharacter, Weight};
use crate::clifford::{
    clifford_mul, epsilon_check, half_spin_difference, spin_action, spin_square_check, CliffordElement,
    PolarizedSpace, SpinVector,
};
use crate::epcore::{
    delta_characters, dirac_square_check, discrete_expansion, ep_index, ep_index_torus, expansion_source, hc_constant,
    orthonormality_pairing, pseudo_orbital, sl2_model, theta_evaluate, weyl_det_factor, HcInputs, RegularCharacter,
    SplitCartanDatum, SplitRoot,
};
use crate::exec::{self, Strategy};
use crate::{cli, fixtures};

#[derive(Debug, Clone)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

type CheckFn = fn() -> Result<(), String>;

const CHECKS: [(&str, CheckFn); 16] = [
    ("clifford_relations", clifford_relations),
    ("clifford_associativity", clifford_associativity),
    ("spin_module_action", spin_module_action),
    ("spin_square", spin_square),
    ("epsilon_twist", epsilon_twist),
    ("half_spin_product", half_spin_product),
    ("sl2r_expansion", sl2r_expansion),
    ("ep_index", ep_index_values),
    ("orthonormality", orthonormality),
    ("weyl_characters", weyl_characters),
    ("dirac_square", dirac_square),
    ("evaluators", evaluators),
    ("reconstruction", reconstruction),
    ("theta_consistency", theta_consistency),
    ("fixture_round_trip", fixture_round_trip),
    ("strategies_agree", strategies_agree),
];

pub fn run(strategy: Strategy) -> Vec<Check> {
    exec::map_slice(strategy, &CHECKS, |(name, f)| {
        let start = Instant::now();
        let out = f();
        Check {
            name: name.to_string(),
            passed: out.is_ok(),
            detail: out.err().unwrap_or_default(),
            elapsed: start.elapsed(),
        }
    })
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// A random Weyl-invariant effective character: orbit sums of weights with
/// true coordinates in `[-bound, bound]`.
pub fn sample_invariant_character(d: &CartanDatum, rng: &mut impl Rng, terms: usize, bound: i64) -> VirtualCharacter {
    let mut out = VirtualCharacter::zero(d.rank());
    for _ in 0..terms {
        let w = Weight::from_true(&(0..d.rank()).map(|_| rng.gen_range(-bound..=bound)).collect::<Vec<_>>());
        let mult: i64 = rng.gen_range(1..=3);
        let mut orbit: Vec<Weight> = d.weyl().iter().map(|e| e.apply(&w)).collect();
        orbit.sort();
        orbit.dedup();
        for x in orbit {
            out = &out + &VirtualCharacter::monomial(x, mult);
        }
    }
    out
}

/// A random sparse Clifford element with small integer coefficients.
pub fn sample_clifford(sp: &PolarizedSpace, rng: &mut impl Rng, terms: usize) -> CliffordElement {
    let mut x = CliffordElement::zero();
    for _ in 0..terms {
        let blade = rng.gen_range(0..(1u64 << sp.dim()));
        x = x.add(&CliffordElement::blade(blade, rat(rng.gen_range(-3..=3))));
    }
    x
}

fn clifford_relations() -> Result<(), String> {
    for m in 1..=5 {
        let sp = PolarizedSpace::new(m).map_err(|e| e.to_string())?;
        for a in 0..sp.dim() {
            for b in 0..sp.dim() {
                let u = CliffordElement::generator(a);
                let v = CliffordElement::generator(b);
                let lhs = clifford_mul(&sp, &u, &v)
                    .and_then(|uv| clifford_mul(&sp, &v, &u).map(|vu| uv.add(&vu)))
                    .map_err(|e| e.to_string())?;
                let rhs = CliffordElement::scalar(sp.q_slots(a, b) * rat(-2));
                ensure(lhs == rhs, || format!("m={m}: slots {a},{b}"))?;
            }
        }
    }
    Ok(())
}

fn clifford_associativity() -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..200 {
        let sp = PolarizedSpace::new(rng.gen_range(1..=4)).map_err(|e| e.to_string())?;
        let [x, y, z] = [0, 1, 2].map(|_| sample_clifford(&sp, &mut rng, 3));
        let mul = |a: &CliffordElement, b: &CliffordElement| clifford_mul(&sp, a, b).map_err(|e| e.to_string());
        ensure(mul(&mul(&x, &y)?, &z)? == mul(&x, &mul(&y, &z)?)?, || format!("{x:?} {y:?} {z:?}"))?;
    }
    Ok(())
}

fn spin_module_action() -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for m in 1..=4 {
        let sp = PolarizedSpace::new(m).map_err(|e| e.to_string())?;
        for _ in 0..40 {
            let x = sample_clifford(&sp, &mut rng, 2);
            let y = sample_clifford(&sp, &mut rng, 2);
            let s = SpinVector::basis(rng.gen_range(0..(1u64 << m)));
            let xy = clifford_mul(&sp, &x, &y).map_err(|e| e.to_string())?;
            let lhs = spin_action(&sp, &xy, &s).map_err(|e| e.to_string())?;
            let rhs = spin_action(&sp, &x, &spin_action(&sp, &y, &s).map_err(|e| e.to_string())?)
                .map_err(|e| e.to_string())?;
            ensure(lhs == rhs, || format!("m={m}: composition fails for {x:?}, {y:?}"))?;
        }
        for _ in 0..20 {
            let coeffs: Vec<BigRational> = (0..sp.dim()).map(|_| rat(rng.gen_range(-2..=2))).collect();
            let v = CliffordElement::vector(&coeffs);
            let s = SpinVector::basis(rng.gen_range(0..(1u64 << m)));
            let twice = spin_action(&sp, &v, &spin_action(&sp, &v, &s).map_err(|e| e.to_string())?)
                .map_err(|e| e.to_string())?;
            let q = sp.q(&coeffs, &coeffs);
            ensure(twice == s.scale(&-q), || format!("m={m}: v.v != -q(v) for {coeffs:?}"))?;
        }
    }
    Ok(())
}

/// Rank one weight lists with `m <= 3` and true weights in `[-4, 4]`.
fn small_corpus() -> Vec<Vec<Weight>> {
    let mut out = vec![Vec::new()];
    let mut level = vec![Vec::new()];
    for _ in 0..3 {
        let mut next = Vec::new();
        for prefix in &level {
            for c in -4..=4 {
                let mut v: Vec<Weight> = prefix.clone();
                v.push(Weight::from_true(&[c]));
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        level = next;
    }
    out
}

fn spin_square() -> Result<(), String> {
    for mu in small_corpus() {
        let r = spin_square_check(1, &mu).map_err(|e| e.to_string())?;
        ensure(r.equal, || format!("{mu:?}"))?;
    }
    Ok(())
}

fn epsilon_twist() -> Result<(), String> {
    for mu in small_corpus() {
        let r = epsilon_check(1, &mu).map_err(|e| e.to_string())?;
        ensure(r.parity_matched, || format!("{mu:?}"))?;
    }
    Ok(())
}

fn half_spin_product() -> Result<(), String> {
    for mu in small_corpus() {
        let diff = half_spin_difference(1, &mu).map_err(|e| e.to_string())?;
        let mut prod = VirtualCharacter::trivial(1);
        for w in &mu {
            let h = w.half().ok_or("true weights halve")?;
            prod = &prod * &(&VirtualCharacter::monomial(h.clone(), 1) - &VirtualCharacter::monomial(-&h, 1));
        }
        ensure(diff == prod, || format!("{mu:?}"))?;
    }
    Ok(())
}

fn sl2r_expansion() -> Result<(), String> {
    let d = fixtures::sl2r();
    for n in -5..=5 {
        let tau = VirtualCharacter::monomial(Weight::from_true(&[n]), 1);
        let x = discrete_expansion(&d, &tau).map_err(|e| e.to_string())?;
        let want: Vec<(Weight, BigInt)> =
            vec![(Weight::from_true(&[n - 2]), BigInt::from(-1)), (Weight::from_true(&[n]), BigInt::one())];
        let got: Vec<(Weight, BigInt)> = x.coeffs.clone().into_iter().collect();
        ensure(got == want && x.remainder.is_zero(), || format!("n={n}: {got:?}"))?;
    }
    Ok(())
}

fn ep_index_values() -> Result<(), String> {
    let d = fixtures::sl2r();
    let one = VirtualCharacter::trivial(1);
    let e = |c: i64| VirtualCharacter::monomial(Weight::from_true(&[c]), 1);
    let idx = |t: &VirtualCharacter, s: &VirtualCharacter| ep_index(&d, t, s).map_err(|e| e.to_string());
    ensure(idx(&one, &one)? == BigInt::from(2), || "ep(1,1) != 2".into())?;
    ensure(idx(&one, &e(2))? == BigInt::from(-1), || "ep(1,e^2) != -1".into())?;
    ensure(idx(&one, &e(-2))? == BigInt::from(-1), || "ep(1,e^-2) != -1".into())?;
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for d in fixtures::all() {
        let k_is_torus = d.compact_positive_roots().next().is_none();
        for _ in 0..20 {
            let t = sample_invariant_character(&d, &mut rng, 2, 3);
            let s = sample_invariant_character(&d, &mut rng, 2, 3);
            let a = ep_index(&d, &t, &s).map_err(|e| e.to_string())?;
            let b = ep_index(&d, &s, &t).map_err(|e| e.to_string())?;
            ensure(a == b, || format!("{}: not symmetric", d.name()))?;
            if k_is_torus {
                ensure(ep_index_torus(&d, &t, &s).map_err(|e| e.to_string())? == a, || "torus path differs".into())?;
            }
        }
    }
    Ok(())
}

fn orthonormality() -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for d in [fixtures::su2(), fixtures::su3(), fixtures::sp4r()] {
        let mut regs = Vec::new();
        while regs.len() < 20 {
            let w = Weight::from_true(&(0..d.rank()).map(|_| rng.gen_range(-6..=6)).collect::<Vec<_>>());
            if let Ok(r) = RegularCharacter::new(&d, w) {
                regs.push(r);
            }
        }
        for a in &regs {
            for b in &regs {
                let same = d.orbit_representative(a.weight()) == d.orbit_representative(b.weight());
                let v = orthonormality_pairing(a, b);
                let ok = if same { v.abs() == BigRational::one() } else { v.is_zero() };
                ensure(ok, || format!("{}: {} vs {} gives {}", d.name(), a.weight(), b.weight(), v))?;
                if a.weight() == b.weight() {
                    ensure(v.is_one(), || "norm is not one".into())?;
                }
            }
        }
    }
    Ok(())
}

fn weyl_characters() -> Result<(), String> {
    let su2 = fixtures::su2();
    for n in 0..=6 {
        let lam = Weight::from_true(&[n]);
        let ch = su2.weyl_character(&lam).map_err(|e| e.to_string())?;
        ensure(ch.dim() == BigInt::from(n + 1), || format!("su2 dim at {n}"))?;
    }
    let su3 = fixtures::su3();
    for (lam, dim) in [([1, 0], 3), ([0, 1], 3), ([1, 1], 8), ([2, 0], 6)] {
        let w = Weight::from_true(&lam);
        let ch = su3.weyl_character(&w).map_err(|e| e.to_string())?;
        ensure(ch.dim() == BigInt::from(dim), || format!("su3 dim at {lam:?}"))?;
        ensure(BigRational::from_integer(ch.dim()) == su3.weyl_dimension(&w), || "dimension formula".into())?;
        for e in su3.weyl() {
            ensure(ch.map_weights(|x| e.apply(x)) == ch, || "not invariant".into())?;
        }
        let norm = su3.inner_k(&ch, &ch).map_err(|e| e.to_string())?;
        ensure(norm.is_one(), || format!("norm {norm}"))?;
    }
    Ok(())
}

fn dirac_square() -> Result<(), String> {
    let sp = PolarizedSpace::new(1).map_err(|e| e.to_string())?;
    for n in 1..=5 {
        let r = dirac_square_check(&sl2_model(n).map_err(|e| e.to_string())?, &sp).map_err(|e| e.to_string())?;
        ensure(r.max_defect.is_zero(), || format!("dim {n}: defect {}", r.max_defect))?;
    }
    Ok(())
}

fn evaluators() -> Result<(), String> {
    let d = fixtures::sl2r();
    for k in 1..100 {
        let theta = k as f64 * 0.0617;
        let v = weyl_det_factor(&d, &TorusPoint::new(vec![theta])).map_err(|e| e.to_string())?;
        let want = 4.0 * theta.sin().powi(2);
        ensure((v - want).abs() < 1e-9, || format!("weyl factor at {theta}"))?;
    }
    let split = SplitCartanDatum::new(1, 0, vec![SplitRoot { a_values: vec![rat(2)], t_weight: Weight::zero(0) }], vec![])
        .map_err(|e| e.to_string())?;
    for k in -20..=20 {
        let s = k as f64 * 0.11;
        let t = TorusPoint::new(vec![]);
        let dp = split.delta_plus_evaluate(&[s], &t).map_err(|e| e.to_string())?;
        let nf = split.normalized_orbital_factor(&[s], &t).map_err(|e| e.to_string())?;
        ensure((dp - 2.0 * s.sinh().abs()).abs() < 1e-9, || format!("delta_plus at {s}"))?;
        ensure((nf.re - 2.0 * s.sinh()).abs() < 1e-9 && nf.im.abs() < 1e-12, || format!("factor at {s}"))?;
    }
    for n_pos in 0..=4 {
        for n_noncompact in 0..=n_pos {
            for nu in 0..=4 {
                for weyl_order in 1..=4 {
                    let inp = HcInputs { n_pos_roots: n_pos, n_noncompact, nu, weyl_order, vol_ratio: 0.75 };
                    let c = hc_constant(&inp);
                    let sign = if n_noncompact % 2 == 0 { 1.0 } else { -1.0 };
                    ensure(c == sign * c.abs() && c != 0.0, || format!("sign rule at {inp:?}"))?;
                }
            }
        }
    }
    Ok(())
}

fn reconstruction() -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for d in fixtures::all() {
        for _ in 0..50 {
            let tau = sample_invariant_character(&d, &mut rng, 3, 3);
            let x = discrete_expansion(&d, &tau).map_err(|e| format!("{}: {e}", d.name()))?;
            let g = expansion_source(&d, &tau).map_err(|e| e.to_string())?;
            ensure(x.reconstruct(&d) == g, || format!("{}: reconstruction", d.name()))?;
        }
    }
    Ok(())
}

fn theta_consistency() -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    for d in fixtures::all() {
        let delta = delta_characters(&d).map_err(|e| e.to_string())?.delta_full;
        let mu: Vec<Weight> = d.noncompact_positive_roots().cloned().collect();
        let spin = half_spin_difference(d.rank(), &mu).map_err(|e| e.to_string())?;
        for _ in 0..20 {
            let t = TorusPoint::new((0..d.rank()).map(|_| rng.gen_range(0.05..3.0)).collect());
            let w = Weight::from_true(&(0..d.rank()).map(|_| rng.gen_range(-5..=5)).collect::<Vec<_>>());
            if let Ok(that) = RegularCharacter::new(&d, w) {
                if let Ok(v) = theta_evaluate(&that, &t) {
                    let lhs = v * delta.evaluate(&t).map_err(|e| e.to_string())?;
                    let rhs = crate::epcore::numerator(&that).evaluate(&t).map_err(|e| e.to_string())?;
                    ensure((lhs - rhs).norm() <= 1e-9 * rhs.norm().max(1.0), || "theta".into())?;
                }
            }
            let tau = sample_invariant_character(&d, &mut rng, 2, 3);
            if let Ok(p) = pseudo_orbital(&d, &tau, &t) {
                let lhs = p * spin.evaluate(&t).map_err(|e| e.to_string())?;
                let rhs = tau.evaluate(&t).map_err(|e| e.to_string())?;
                ensure((lhs - rhs).norm() <= 1e-9 * rhs.norm().max(1.0), || "pseudo orbital".into())?;
            }
        }
    }
    Ok(())
}

fn fixture_round_trip() -> Result<(), String> {
    for (name, text) in fixtures::DATUMS {
        let d = cli::parse_datum(text).map_err(|e| e.to_string())?;
        let once = cli::serialize_datum(&d);
        let twice = cli::serialize_datum(&cli::parse_datum(&once).map_err(|e| e.to_string())?);
        ensure(once == twice, || format!("{name} does not round trip"))?;
    }
    Ok(())
}

fn strategies_agree() -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let d = fixtures::sp4r();
    let taus: Vec<VirtualCharacter> = (0..16).map(|_| sample_invariant_character(&d, &mut rng, 3, 4)).collect();
    let seq = crate::epcore::discrete_expansion_batch(&d, &taus, Strategy::Sequential);
    let par = crate::epcore::discrete_expansion_batch(&d, &taus, Strategy::Parallel);
    ensure(seq == par, || "batch expansions differ".into())?;
    let a = &taus[0] * &taus[1];
    ensure(taus[0].tensor_with(&taus[1], Strategy::Parallel).map_err(|e| e.to_string())? == a, || "tensor".into())?;
    let sp = PolarizedSpace::new(4).map_err(|e| e.to_string())?;
    let x = sample_clifford(&sp, &mut rng, 40);
    let y = sample_clifford(&sp, &mut rng, 40);
    let s = crate::clifford::clifford_mul_with(&sp, &x, &y, Strategy::Sequential).map_err(|e| e.to_string())?;
    let p = crate::clifford::clifford_mul_with(&sp, &x, &y, Strategy::Parallel).map_err(|e| e.to_string())?;
    ensure(s == p, || "clifford product".into())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_passes() {
        for c in run(Strategy::default()) {
            assert!(c.passed, "{}: {}", c.name, c.detail);
        }
    }
}
