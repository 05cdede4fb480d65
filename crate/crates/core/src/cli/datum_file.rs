//! The JSON datum format. Weights are written in true coordinates, as
//! integers or strings `"p/q"` with `q` dividing 2; the Gram matrix is the
//! form on true coordinates.
//!
//! ```json
//! {
//!   "name": "sl2R",
//!   "rank": 1,
//!   "positive_roots": [{ "coords": [2], "class": "noncompact" }],
//!   "gram": [["1/2"]],
//!   "extra_weyl_generators": []
//! }
//! ```

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::CliError;
use crate::charlat::{CartanDatum, IntMatrix, RawDatum, RootClass, Weight};
use crate::epcore::{SplitCartanDatum, SplitRoot};

/// A rational written either as a JSON integer or as a string.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RatText {
    Int(i64),
    Text(String),
}

impl RatText {
    pub fn parse(&self) -> Result<BigRational, CliError> {
        match self {
            RatText::Int(n) => Ok(BigRational::from_integer(BigInt::from(*n))),
            RatText::Text(s) => parse_rational(s),
        }
    }

    pub fn from_rational(q: &BigRational) -> Self {
        match (q.is_integer(), q.to_integer().to_i64()) {
            (true, Some(n)) => RatText::Int(n),
            _ => RatText::Text(q.to_string()),
        }
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational, CliError> {
    let t = s.trim();
    let bad = || CliError::Usage(format!("not a rational number: {s:?}"));
    if let Some((p, q)) = t.split_once('/') {
        let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
        let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        Ok(BigRational::new(p, q))
    } else {
        Ok(BigRational::from_integer(BigInt::from_str(t).map_err(|_| bad())?))
    }
}

/// True coordinate to doubled integer, rejecting denominators other than 1 and 2.
pub fn doubled(q: &BigRational) -> Result<i64, CliError> {
    let d = q * BigRational::from_integer(BigInt::from(2));
    if !d.is_integer() {
        return Err(CliError::Validation(format!("coordinate {q} has denominator larger than 2")));
    }
    d.to_integer().to_i64().ok_or_else(|| CliError::Validation(format!("coordinate {q} is out of range")))
}

pub fn weight_from_true(coords: &[BigRational]) -> Result<Weight, CliError> {
    Ok(Weight::from_doubled(coords.iter().map(doubled).collect::<Result<_, _>>()?))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RootEntry {
    pub coords: Vec<RatText>,
    pub class: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatumFile {
    pub name: String,
    pub rank: usize,
    pub positive_roots: Vec<RootEntry>,
    pub gram: Vec<Vec<RatText>>,
    #[serde(default)]
    pub extra_weyl_generators: Vec<IntMatrix>,
}

impl DatumFile {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text)
            .map_err(|e| CliError::Parse { line: e.line(), column: e.column(), message: e.to_string() })
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("datum files always serialize");
        s.push('\n');
        s
    }

    pub fn to_raw(&self) -> Result<RawDatum, CliError> {
        let mut roots = Vec::with_capacity(self.positive_roots.len());
        for r in &self.positive_roots {
            let class = RootClass::parse(&r.class)
                .ok_or_else(|| CliError::Validation(format!("unknown root class {:?}", r.class)))?;
            let coords = r.coords.iter().map(RatText::parse).collect::<Result<Vec<_>, _>>()?;
            roots.push((weight_from_true(&coords)?, class));
        }
        let quarter = BigRational::new(BigInt::one(), BigInt::from(4));
        let gram = self
            .gram
            .iter()
            .map(|row| row.iter().map(|x| x.parse().map(|q| q * &quarter)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        Ok(RawDatum {
            name: self.name.clone(),
            rank: self.rank,
            roots,
            gram,
            extra_generators: self.extra_weyl_generators.clone(),
        })
    }

    pub fn from_datum(d: &CartanDatum) -> Self {
        let four = BigRational::from_integer(BigInt::from(4));
        DatumFile {
            name: d.name().to_string(),
            rank: d.rank(),
            positive_roots: d
                .positive_roots()
                .iter()
                .zip(d.root_class())
                .map(|(w, c)| RootEntry {
                    coords: w.true_coords().iter().map(RatText::from_rational).collect(),
                    class: c.as_str().to_string(),
                })
                .collect(),
            gram: d
                .gram()
                .iter()
                .map(|row| row.iter().map(|x| RatText::Text((x * &four).to_string())).collect())
                .collect(),
            extra_weyl_generators: d.extra_generators().to_vec(),
        }
    }
}

pub fn parse_datum(text: &str) -> Result<CartanDatum, CliError> {
    let raw = DatumFile::from_json(text)?.to_raw()?;
    CartanDatum::new(raw).map_err(|e| CliError::Validation(e.to_string()))
}

pub fn serialize_datum(d: &CartanDatum) -> String {
    DatumFile::from_datum(d).to_json()
}

/// A Cartan `A T`: non-imaginary positive roots as values on `log a`
/// (rationals) with their `T`-parts, and positive imaginary roots.
///
/// ```json
/// { "name": "split_sl2R", "real_rank": 1, "t_rank": 0,
///   "roots": [{ "a": [2], "t": [] }], "imaginary": [] }
/// ```
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SplitFile {
    pub name: String,
    pub real_rank: usize,
    pub t_rank: usize,
    pub roots: Vec<SplitRootEntry>,
    #[serde(default)]
    pub imaginary: Vec<Vec<RatText>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SplitRootEntry {
    pub a: Vec<RatText>,
    pub t: Vec<RatText>,
}

fn true_weight(v: &[RatText]) -> Result<Weight, CliError> {
    weight_from_true(&v.iter().map(RatText::parse).collect::<Result<Vec<_>, _>>()?)
}

pub fn parse_split(text: &str) -> Result<SplitCartanDatum, CliError> {
    let f: SplitFile = serde_json::from_str(text)
        .map_err(|e| CliError::Parse { line: e.line(), column: e.column(), message: e.to_string() })?;
    let mut roots = Vec::with_capacity(f.roots.len());
    for r in &f.roots {
        roots.push(SplitRoot {
            a_values: r.a.iter().map(RatText::parse).collect::<Result<_, _>>()?,
            t_weight: true_weight(&r.t)?,
        });
    }
    let imaginary = f.imaginary.iter().map(|w| true_weight(w)).collect::<Result<_, _>>()?;
    SplitCartanDatum::new(f.real_rank, f.t_rank, roots, imaginary).map_err(|e| CliError::Validation(e.to_string()))
}
