use std::fs;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;

use super::datum_file::{parse_datum, parse_rational, parse_split, serialize_datum, weight_from_true};
use super::report::{emit_report, Format, Report, Value};
use super::CliError;
use crate::charlat::{CartanDatum, TorusPoint, VirtualCharacter, Weight};
use crate::clifford::{
    epsilon_check, half_spin_characters, orientation_check, spin_square_check, spinoriality_check, PolarizedSpace,
};
use crate::epcore::{
    build_compact, casimir_shift, delta_characters, dirac_square_check, discrete_expansion, ep_index, ep_index_half,
    ep_index_torus, hc_constant, orbital_general_formula, orbital_regular, orbital_regular_highest, pseudo_orbital,
    sl2_model, theta_evaluate, weyl_det_factor, HcInputs, RegularCharacter,
};
use crate::{fixtures, selftest};

const SCHEMA_HELP: &str = "\
datum files: {\"name\": str, \"rank\": int, \"positive_roots\": [{\"coords\": [q...], \"class\": \
\"compact\"|\"noncompact\"|\"real\"|\"complex\"}], \"gram\": [[q...]...], \"extra_weyl_generators\": [[[int]]]}
  coordinates are true weights, q an integer or a string \"p/q\" with q in {1, 2}
  bundled: sl2R.json su2.json su3.json sp4R.json split_sl2R.json
weights:    comma separated coordinates, several weights separated by ';'   e.g. \"1,0;0,1\"
characters: ';' separated terms \"[mult*]c1,c2,...\"                        e.g. \"2*1/2,1;-1,0\"
angles:     comma separated floats theta_i, t = exp(i theta)";

#[derive(Parser, Debug)]
#[command(name = "ep", version, about = "Euler-Poincare indices, spin modules and discrete-series expansions")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: FormatArg,
    #[command(subcommand)]
    command: Command,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum FormatArg {
    Json,
    Tsv,
}

#[derive(Args, Debug)]
struct DatumArg {
    /// Datum file or the name of a bundled one.
    #[arg(long)]
    datum: String,
}

#[derive(Args, Debug)]
struct WeightsArg {
    /// Weights mu_i in true coordinates.
    #[arg(long, allow_hyphen_values = true, default_value = "")]
    weights: String,
    /// Torus rank, needed when no weight is given.
    #[arg(long)]
    rank: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse and validate a datum, print its derived data.
    Validate(DatumArg),
    /// Half-spin characters of the weights.
    SpinChars(WeightsArg),
    /// (chS+ - chS-)^2 against (-1)^m Lambda_{-1}(V).
    SpinSquare(WeightsArg),
    /// chS+- e^eps against Lambda^even/odd V+.
    EpsilonCheck(WeightsArg),
    /// Does the torus action on p lift to Spin(p).
    Spinoriality(DatumArg),
    /// Is the top exterior power of p trivial.
    Orientation(DatumArg),
    /// Alternating sum of dim (sigma (x) Lambda^p p (x) tau^)^K.
    EpIndex {
        #[command(flatten)]
        d: DatumArg,
        #[arg(long, allow_hyphen_values = true)]
        tau: String,
        #[arg(long, allow_hyphen_values = true)]
        sigma: String,
    },
    /// The same index against Lambda* of a K-stable half p_-.
    EpIndexHalf {
        #[command(flatten)]
        d: DatumArg,
        #[arg(long = "p-minus", allow_hyphen_values = true)]
        p_minus: String,
        #[arg(long, allow_hyphen_values = true)]
        tau: String,
        #[arg(long, allow_hyphen_values = true)]
        sigma: String,
    },
    /// Product characters '∆_c, '∆_n and '∆.
    Delta(DatumArg),
    /// Discrete-series coefficients of tau e^rho_K '∆ plus the singular remainder.
    DiscreteExpand {
        #[command(flatten)]
        d: DatumArg,
        #[arg(long, allow_hyphen_values = true)]
        tau: String,
    },
    /// N(t) / '∆(t) for a regular weight.
    Theta {
        #[command(flatten)]
        d: DatumArg,
        #[arg(long, allow_hyphen_values = true)]
        weight: String,
        #[arg(long, allow_hyphen_values = true)]
        angles: String,
    },
    /// Orbital integral at a regular elliptic element.
    Orbital {
        #[command(flatten)]
        d: DatumArg,
        #[arg(long, allow_hyphen_values = true, conflicts_with = "highest")]
        tau: Option<String>,
        /// Highest weight of an irreducible K-type.
        #[arg(long, allow_hyphen_values = true)]
        highest: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        angles: String,
    },
    /// Orbital integral from supplied centralizer data.
    OrbitalGeneral {
        /// Trace value "re,im".
        #[arg(long = "tau-value", allow_hyphen_values = true)]
        tau_value: String,
        #[arg(long = "c-g", allow_hyphen_values = true)]
        c_g: f64,
        #[arg(long = "w-order")]
        w_order: u64,
        #[arg(long = "rho-g", allow_hyphen_values = true)]
        rho_g: String,
        #[arg(long = "roots-g", allow_hyphen_values = true, default_value = "")]
        roots_g: String,
        /// Gram matrix on true coordinates, rows separated by ';'.
        #[arg(long, allow_hyphen_values = true)]
        gram: String,
    },
    /// tau(t) / (chS+ - chS-)(t).
    PseudoOrbital {
        #[command(flatten)]
        d: DatumArg,
        #[arg(long, allow_hyphen_values = true)]
        tau: String,
        #[arg(long, allow_hyphen_values = true)]
        angles: String,
    },
    /// Casimir eigenvalue shift for a K-type.
    CasimirShift {
        #[command(flatten)]
        d: DatumArg,
        #[arg(long, allow_hyphen_values = true)]
        highest: String,
    },
    /// The Harish-Chandra constant from counts and a volume ratio.
    HcConstant {
        #[arg(long = "n-pos")]
        n_pos: u32,
        #[arg(long = "n-noncompact")]
        n_noncompact: u32,
        #[arg(long)]
        nu: u32,
        #[arg(long = "weyl-order")]
        weyl_order: u64,
        #[arg(long = "vol-ratio")]
        vol_ratio: f64,
    },
    /// |det(1 - Ad t)| on the root spaces.
    WeylFactor {
        #[command(flatten)]
        d: DatumArg,
        #[arg(long, allow_hyphen_values = true)]
        angles: String,
    },
    /// ∆_+ and the normalizing factor on a split Cartan.
    DeltaPlus {
        /// Split Cartan file or the name of a bundled one.
        #[arg(long)]
        split: String,
        /// Coordinates of log a.
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true, default_value = "")]
        angles: String,
    },
    /// D^2 against the Casimir side on the sl(2) model of the given dimension.
    DiracCheck {
        #[arg(long)]
        dim: usize,
    },
    /// Run the invariant suite.
    Selftest,
}

/// What the binary prints and returns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

fn read_input(name: &str) -> Result<String, CliError> {
    match fs::read_to_string(name) {
        Ok(s) => Ok(s),
        Err(e) => fixtures::bundled(name).map(str::to_string).ok_or_else(|| CliError::Io(format!("{name}: {e}"))),
    }
}

fn parse_rat_list(s: &str) -> Result<Vec<BigRational>, CliError> {
    s.split(',').map(parse_rational).collect()
}

/// `;`-separated weights in true coordinates.
pub fn parse_weights(s: &str) -> Result<Vec<Weight>, CliError> {
    s.split(';').map(str::trim).filter(|t| !t.is_empty()).map(|t| weight_from_true(&parse_rat_list(t)?)).collect()
}

/// `;`-separated terms `[mult*]c1,c2,...` of the given rank.
pub fn parse_character(s: &str, rank: usize) -> Result<VirtualCharacter, CliError> {
    let mut out = VirtualCharacter::zero(rank);
    for term in s.split(';').map(str::trim).filter(|t| !t.is_empty()) {
        let (mult, coords) = match term.split_once('*') {
            Some((m, c)) => (
                m.trim().parse::<BigInt>().map_err(|_| CliError::Usage(format!("bad multiplicity in {term:?}")))?,
                c,
            ),
            None => (BigInt::from(1), term),
        };
        let w = weight_from_true(&parse_rat_list(coords)?)?;
        if w.rank() != rank {
            return Err(CliError::Usage(format!("weight {term:?} does not have rank {rank}")));
        }
        out = &out + &VirtualCharacter::monomial(w, mult);
    }
    Ok(out)
}

fn parse_angles(s: &str, rank: usize) -> Result<TorusPoint, CliError> {
    let angles: Vec<f64> = s
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<f64>().map_err(|_| CliError::Usage(format!("bad angle {t:?}"))))
        .collect::<Result<_, _>>()?;
    if angles.len() != rank {
        return Err(CliError::Usage(format!("expected {rank} angles, got {}", angles.len())));
    }
    Ok(TorusPoint::new(angles))
}

fn parse_floats(s: &str) -> Result<Vec<f64>, CliError> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<f64>().map_err(|_| CliError::Usage(format!("bad number {t:?}"))))
        .collect()
}

fn single_weight(s: &str, rank: usize) -> Result<Weight, CliError> {
    let w = weight_from_true(&parse_rat_list(s)?)?;
    if w.rank() != rank {
        return Err(CliError::Usage(format!("weight {s:?} does not have rank {rank}")));
    }
    Ok(w)
}

fn weights_rank(arg: &WeightsArg) -> Result<(usize, Vec<Weight>), CliError> {
    let mu = parse_weights(&arg.weights)?;
    let rank = match (arg.rank, mu.first()) {
        (Some(r), _) => r,
        (None, Some(w)) => w.rank(),
        (None, None) => 1,
    };
    Ok((rank, mu))
}

struct Ctx {
    argv: Vec<String>,
    inputs: Vec<String>,
}

impl Ctx {
    fn datum(&mut self, arg: &DatumArg) -> Result<CartanDatum, CliError> {
        let text = read_input(&arg.datum)?;
        let d = parse_datum(&text)?;
        self.inputs.push(text);
        Ok(d)
    }

    fn report(&self) -> Report {
        let refs: Vec<&str> = self.inputs.iter().map(String::as_str).collect();
        Report::new(&self.argv, &refs)
    }
}

fn complex(z: Complex64) -> Value {
    Value::Complex(z)
}

fn execute(cmd: &Command, ctx: &mut Ctx) -> Result<Report, CliError> {
    let rep = match cmd {
        Command::Validate(a) => {
            let d = ctx.datum(a)?;
            let mut r = ctx.report();
            r.push("name", Value::Text(d.name().to_string()));
            r.push("rank", Value::Int(d.rank().into()));
            r.push("weyl_order", Value::Int(d.weyl_order().into()));
            r.push("positive_roots", Value::Int(d.positive_roots().len().into()));
            r.push("noncompact_roots", Value::Int(d.noncompact_positive_roots().count().into()));
            r.push("compact_cartan", Value::Bool(d.is_compact_cartan()));
            r.push("rho", Value::Weight(d.rho().clone()));
            r.push("rho_k", Value::Weight(d.rho_k().clone()));
            r.push("rho_n", Value::Weight(d.rho_n().clone()));
            r.push("p_char", Value::Character(d.p_char().clone()));
            let text = serialize_datum(&d);
            r.assert("round_trip", parse_datum(&text).map(|e| serialize_datum(&e) == text).unwrap_or(false));
            r
        }
        Command::SpinChars(a) => {
            let (rank, mu) = weights_rank(a)?;
            let (p, n) = half_spin_characters(rank, &mu)?;
            let mut r = ctx.report();
            r.push("s_plus", Value::Character(p));
            r.push("s_minus", Value::Character(n));
            r.push("epsilon", Value::Weight(crate::clifford::epsilon_character(rank, &mu)?));
            r
        }
        Command::SpinSquare(a) => {
            let (rank, mu) = weights_rank(a)?;
            let s = spin_square_check(rank, &mu)?;
            let mut r = ctx.report();
            r.push("lhs", Value::Character(s.lhs));
            r.push("rhs", Value::Character(s.rhs));
            r.push("sign", Value::Int(s.sign.into()));
            r.push("equal", Value::Bool(s.equal));
            r.assert("equal", s.equal);
            r
        }
        Command::EpsilonCheck(a) => {
            let (rank, mu) = weights_rank(a)?;
            let e = epsilon_check(rank, &mu)?;
            let mut r = ctx.report();
            r.push("epsilon", Value::Weight(e.epsilon));
            r.push("plus_twisted", Value::Character(e.plus_twisted));
            r.push("minus_twisted", Value::Character(e.minus_twisted));
            r.push("lambda_even", Value::Character(e.even_side));
            r.push("lambda_odd", Value::Character(e.odd_side));
            r.push("flipped", Value::Bool(e.flipped));
            r.push("parity_matched", Value::Bool(e.parity_matched));
            r.assert("parity_matched", e.parity_matched);
            r
        }
        Command::Spinoriality(a) => {
            let d = ctx.datum(a)?;
            let s = spinoriality_check(&d)?;
            let mut r = ctx.report();
            r.push("epsilon", Value::Weight(s.epsilon));
            r.push("lifts", Value::Bool(s.lifts));
            r
        }
        Command::Orientation(a) => {
            let d = ctx.datum(a)?;
            let ok = orientation_check(&d)?;
            let mut r = ctx.report();
            r.push("determinant_trivial", Value::Bool(ok));
            r
        }
        Command::EpIndex { d, tau, sigma } => {
            let d = ctx.datum(d)?;
            let tau = parse_character(tau, d.rank())?;
            let sigma = parse_character(sigma, d.rank())?;
            let v = ep_index(&d, &tau, &sigma)?;
            let mut r = ctx.report();
            r.push("ep_index", Value::Int(v.clone()));
            if d.compact_positive_roots().next().is_none() {
                r.assert("torus_path_agrees", ep_index_torus(&d, &tau, &sigma)? == v);
            }
            r
        }
        Command::EpIndexHalf { d, p_minus, tau, sigma } => {
            let d = ctx.datum(d)?;
            let p_minus = parse_character(p_minus, d.rank())?;
            let tau = parse_character(tau, d.rank())?;
            let sigma = parse_character(sigma, d.rank())?;
            let v = ep_index_half(&d, &p_minus, &tau, &sigma)?;
            let mut r = ctx.report();
            r.push("ep_index_half", Value::Int(v));
            r
        }
        Command::Delta(a) => {
            let d = ctx.datum(a)?;
            let x = delta_characters(&d)?;
            let mut r = ctx.report();
            r.push("delta_c", Value::Character(x.delta_c));
            r.push("delta_n", Value::Character(x.delta_n));
            r.push("delta_full", Value::Character(x.delta_full));
            r
        }
        Command::DiscreteExpand { d, tau } => {
            let d = ctx.datum(d)?;
            let tau = parse_character(tau, d.rank())?;
            let x = discrete_expansion(&d, &tau)?;
            let source = crate::epcore::expansion_source(&d, &tau)?;
            let mut r = ctx.report();
            r.assert("reconstruction", x.reconstruct(&d) == source);
            r.push("coeffs", Value::Coeffs(x.coeffs));
            r.push("remainder", Value::Character(x.remainder));
            r
        }
        Command::Theta { d, weight, angles } => {
            let d = ctx.datum(d)?;
            let w = single_weight(weight, d.rank())?;
            let t = parse_angles(angles, d.rank())?;
            let that = RegularCharacter::new(&d, w)?;
            let mut r = ctx.report();
            r.push("theta", complex(theta_evaluate(&that, &t)?));
            r
        }
        Command::Orbital { d, tau, highest, angles } => {
            let d = ctx.datum(d)?;
            let t = parse_angles(angles, d.rank())?;
            let v = match (tau, highest) {
                (Some(tau), None) => orbital_regular(&d, &parse_character(tau, d.rank())?, &t)?,
                (None, Some(h)) => orbital_regular_highest(&d, &single_weight(h, d.rank())?, &t)?,
                _ => return Err(CliError::Usage("give exactly one of --tau and --highest".into())),
            };
            let mut r = ctx.report();
            r.push("orbital", complex(v));
            r
        }
        Command::OrbitalGeneral { tau_value, c_g, w_order, rho_g, roots_g, gram } => {
            let z = parse_floats(tau_value)?;
            let z = match z.as_slice() {
                [re] => Complex64::new(*re, 0.0),
                [re, im] => Complex64::new(*re, *im),
                _ => return Err(CliError::Usage("--tau-value takes re or re,im".into())),
            };
            let rho = weight_from_true(&parse_rat_list(rho_g)?)?;
            let roots = parse_weights(roots_g)?;
            let quarter = BigRational::new(1.into(), 4.into());
            let gram: Vec<Vec<BigRational>> = gram
                .split(';')
                .map(|row| parse_rat_list(row).map(|v| v.into_iter().map(|x| x * &quarter).collect()))
                .collect::<Result<_, _>>()?;
            let v = orbital_general_formula(z, *c_g, *w_order, &rho, &roots, &gram)?;
            let mut r = ctx.report();
            r.push("orbital", complex(v));
            r
        }
        Command::PseudoOrbital { d, tau, angles } => {
            let d = ctx.datum(d)?;
            let tau = parse_character(tau, d.rank())?;
            let t = parse_angles(angles, d.rank())?;
            let mut r = ctx.report();
            r.push("pseudo_orbital", complex(pseudo_orbital(&d, &tau, &t)?));
            r
        }
        Command::CasimirShift { d, highest } => {
            let d = ctx.datum(d)?;
            let w = single_weight(highest, d.rank())?;
            let k = build_compact(&d)?;
            let v = casimir_shift(&d, &w)?;
            let mut r = ctx.report();
            r.push("casimir_shift", Value::Rational(v));
            r.push("k_type_dimension", Value::Rational(k.weyl_dimension(&w)));
            r
        }
        Command::HcConstant { n_pos, n_noncompact, nu, weyl_order, vol_ratio } => {
            let inp = HcInputs {
                n_pos_roots: *n_pos,
                n_noncompact: *n_noncompact,
                nu: *nu,
                weyl_order: *weyl_order,
                vol_ratio: *vol_ratio,
            };
            inp.validate()?;
            let mut r = ctx.report();
            r.push("hc_constant", Value::Real(hc_constant(&inp)));
            r
        }
        Command::WeylFactor { d, angles } => {
            let d = ctx.datum(d)?;
            let t = parse_angles(angles, d.rank())?;
            let mut r = ctx.report();
            r.push("weyl_factor", Value::Real(weyl_det_factor(&d, &t)?));
            r
        }
        Command::DeltaPlus { split, a, angles } => {
            let text = read_input(split)?;
            let sd = parse_split(&text)?;
            ctx.inputs.push(text);
            let a = parse_floats(a)?;
            let t = parse_angles(angles, sd.t_rank())?;
            let mut r = ctx.report();
            r.push("delta_plus", Value::Real(sd.delta_plus_evaluate(&a, &t)?));
            r.push("normalized_factor", complex(sd.normalized_orbital_factor(&a, &t)?));
            r
        }
        Command::DiracCheck { dim } => {
            let model = sl2_model(*dim)?;
            let sp = PolarizedSpace::new(1)?;
            let rep = dirac_square_check(&model, &sp)?;
            let mut r = ctx.report();
            r.push("max_defect", Value::Rational(rep.max_defect.clone()));
            r.push("defect_plus", Value::Rational(rep.defect_plus));
            r.push("defect_minus", Value::Rational(rep.defect_minus));
            r.assert("defect_zero", rep.max_defect.is_zero());
            r
        }
        Command::Selftest => {
            let mut r = ctx.report();
            let checks = selftest::run(crate::exec::Strategy::default());
            r.push("checks", Value::Int(checks.len().into()));
            for c in checks {
                r.assert(&c.name, c.passed);
            }
            r
        }
    };
    Ok(rep)
}

/// Parses `argv` (without the program name), runs the command and renders
/// its report.
pub fn run_command(argv: &[String]) -> Outcome {
    let full = std::iter::once("ep".to_string()).chain(argv.iter().cloned());
    let cli = match Cli::try_parse_from(full) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome { stdout: text, stderr: String::new(), code: 0 },
                _ => Outcome { stdout: String::new(), stderr: format!("{text}\n{SCHEMA_HELP}\n"), code: 2 },
            };
        }
    };
    let format = match cli.format {
        FormatArg::Json => Format::Json,
        FormatArg::Tsv => Format::Tsv,
    };
    let mut ctx = Ctx { argv: argv.to_vec(), inputs: Vec::new() };
    match execute(&cli.command, &mut ctx) {
        Ok(r) => {
            let code = if r.passed() { 0 } else { 1 };
            Outcome { stdout: emit_report(&r, format), stderr: String::new(), code }
        }
        Err(e) => {
            let mut stderr = format!("error: {e}\n");
            if matches!(e, CliError::Usage(_)) {
                stderr.push_str(SCHEMA_HELP);
                stderr.push('\n');
            }
            Outcome { stdout: String::new(), stderr, code: e.exit_code() }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> Outcome {
        run_command(&args.iter().map(|s| s.to_string()).collect::<Vec<_>>())
    }

    fn results(o: &Outcome) -> serde_json::Value {
        serde_json::from_str::<serde_json::Value>(&o.stdout).unwrap()["results"].clone()
    }

    #[test]
    fn characters_parse() {
        let c = parse_character("2*1/2;-1", 1).unwrap();
        assert_eq!(c.mult(&Weight::from_doubled(vec![1])), BigInt::from(2));
        assert_eq!(c.mult(&Weight::from_doubled(vec![-2])), BigInt::from(1));
        assert!(parse_character("1,2", 1).is_err());
        assert!(parse_character("", 1).unwrap().is_zero());
    }

    #[test]
    fn ep_index_example() {
        let o = run(&["ep-index", "--datum", "sl2R.json", "--tau", "0", "--sigma", "0"]);
        assert_eq!(o.code, 0, "{}", o.stderr);
        assert_eq!(results(&o)[0]["value"], "2");
    }

    #[test]
    fn spin_square_example() {
        let o = run(&["spin-square", "--weights", "1"]);
        assert_eq!(o.code, 0);
        let r = results(&o);
        assert_eq!(r[2]["value"], "-1");
        assert_eq!(r[3]["value"], true);
    }

    #[test]
    fn discrete_expand_example() {
        let o = run(&["discrete-expand", "--datum", "sl2R.json", "--tau", "3"]);
        assert_eq!(o.code, 0);
        let r = results(&o);
        assert_eq!(r[0]["value"].to_string(), "[[[3],1],[[1],-1]]");
        assert_eq!(r[1]["value"].to_string(), "[]");
    }

    #[test]
    fn usage_errors_exit_two() {
        let o = run(&["ep-index", "--datum", "sl2R.json"]);
        assert_eq!(o.code, 2);
        assert!(o.stderr.contains("datum files"));
        assert_eq!(run(&["nonsense"]).code, 2);
        assert_eq!(run(&["validate", "--datum", "/nonexistent/x.json"]).code, 2);
    }

    #[test]
    fn singular_points_exit_one() {
        let o = run(&["theta", "--datum", "sl2R", "--weight", "1", "--angles", "0"]);
        assert_eq!(o.code, 1);
    }

    #[test]
    fn identical_invocations_are_byte_identical() {
        let args = ["delta", "--datum", "sp4R.json"];
        assert_eq!(run(&args), run(&args));
    }
}
