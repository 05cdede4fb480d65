//! Command reports. Exact values are strings (`"p/q"`), characters are
//! `[[coords], mult]` lists in descending lexicographic order of the
//! weight, floats carry 15 significant digits.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde_json::{json, Value as Json};
use sha2::{Digest, Sha256};

use crate::charlat::{VirtualCharacter, Weight};

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Int(BigInt),
    Rational(BigRational),
    Bool(bool),
    Text(String),
    Real(f64),
    Complex(Complex64),
    Weight(Weight),
    Character(VirtualCharacter),
    /// Weight-indexed integers, e.g. expansion coefficients.
    Coeffs(BTreeMap<Weight, BigInt>),
    List(Vec<Value>),
}

/// Round to 15 significant digits.
pub fn round15(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return if x == 0.0 { 0.0 } else { x };
    }
    format!("{:.14e}", x).parse().unwrap_or(x)
}

fn real_json(x: f64) -> Json {
    serde_json::Number::from_f64(round15(x)).map_or_else(|| Json::String(x.to_string()), Json::Number)
}

fn coord_json(q: &BigRational) -> Json {
    match (q.is_integer(), q.to_integer().to_i64()) {
        (true, Some(n)) => json!(n),
        _ => Json::String(q.to_string()),
    }
}

fn int_json(m: &BigInt) -> Json {
    m.to_i64().map_or_else(|| Json::String(m.to_string()), |n| json!(n))
}

fn weight_json(w: &Weight) -> Json {
    Json::Array(w.true_coords().iter().map(coord_json).collect())
}

fn pairs_json<'a>(it: impl DoubleEndedIterator<Item = (&'a Weight, &'a BigInt)>) -> Json {
    Json::Array(it.rev().map(|(w, m)| json!([weight_json(w), int_json(m)])).collect())
}

impl Value {
    pub fn to_json(&self) -> Json {
        match self {
            Value::Int(n) => Json::String(n.to_string()),
            Value::Rational(q) => Json::String(q.to_string()),
            Value::Bool(b) => json!(b),
            Value::Text(s) => json!(s),
            Value::Real(x) => real_json(*x),
            Value::Complex(z) => json!([real_json(z.re), real_json(z.im)]),
            Value::Weight(w) => weight_json(w),
            Value::Character(c) => pairs_json(c.terms().collect::<Vec<_>>().into_iter()),
            Value::Coeffs(m) => pairs_json(m.iter()),
            Value::List(v) => Json::Array(v.iter().map(Value::to_json).collect()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Tsv,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub command: String,
    pub digest: String,
    pub results: Vec<(String, Value)>,
    pub assertions: Vec<(String, bool)>,
}

impl Report {
    /// `digest` is the sha256 of the command line followed by every input.
    pub fn new(argv: &[String], inputs: &[&str]) -> Self {
        let mut h = Sha256::new();
        h.update(argv.join(" ").as_bytes());
        for i in inputs {
            h.update([0u8]);
            h.update(i.as_bytes());
        }
        Report { command: argv.join(" "), digest: hex::encode(h.finalize()), results: Vec::new(), assertions: Vec::new() }
    }

    pub fn push(&mut self, name: &str, v: Value) {
        self.results.push((name.to_string(), v));
    }

    pub fn assert(&mut self, name: &str, ok: bool) {
        self.assertions.push((name.to_string(), ok));
    }

    pub fn passed(&self) -> bool {
        self.assertions.iter().all(|(_, ok)| *ok)
    }

    pub fn get(&self, name: &str) -> Option<&Value> {
        self.results.iter().find(|(n, _)| n == name).map(|(_, v)| v)
    }

    pub fn to_json(&self) -> Json {
        json!({
            "command": self.command,
            "digest": self.digest,
            "results": self.results.iter().map(|(n, v)| json!({"name": n, "value": v.to_json()})).collect::<Vec<_>>(),
            "assertions": self.assertions.iter().map(|(n, ok)| json!({"name": n, "pass": ok})).collect::<Vec<_>>(),
            "passed": self.passed(),
        })
    }
}

pub fn emit_report(r: &Report, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string(&r.to_json()).expect("reports always serialize");
            s.push('\n');
            s
        }
        Format::Tsv => {
            let mut s = format!("#command\t{}\n#digest\t{}\n", r.command, r.digest);
            for (n, v) in &r.results {
                s.push_str(&format!("{}\t{}\n", n, v.to_json()));
            }
            for (n, ok) in &r.assertions {
                s.push_str(&format!("#assert\t{}\t{}\n", n, if *ok { "pass" } else { "fail" }));
            }
            s
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(c: i64) -> Weight {
        Weight::from_doubled(vec![c])
    }

    #[test]
    fn empty_results() {
        let r = Report::new(&["validate".into()], &[]);
        assert!(emit_report(&r, Format::Json).contains("\"results\":[]"));
    }

    #[test]
    fn rationals_stay_exact() {
        let v = Value::Rational(BigRational::new(1.into(), 2.into()));
        assert_eq!(v.to_json(), json!("1/2"));
    }

    #[test]
    fn characters_are_sorted() {
        let c = VirtualCharacter::from_terms(1, [(w(-4), -1), (w(4), 1)]).unwrap();
        assert_eq!(Value::Character(c).to_json().to_string(), "[[[2],1],[[-2],-1]]");
        let h = VirtualCharacter::from_terms(1, [(w(1), 1)]).unwrap();
        assert_eq!(Value::Character(h).to_json().to_string(), "[[[\"1/2\"],1]]");
    }

    #[test]
    fn floats_have_fifteen_digits() {
        assert_eq!(round15(0.1 + 0.2), 0.3);
        assert_eq!(Value::Real(1.0 / 3.0).to_json().to_string(), "0.333333333333333");
    }
}
