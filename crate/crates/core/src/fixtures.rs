//! Data files shipped with the crate.

use crate::charlat::CartanDatum;
use crate::cli::parse_datum;

pub const SL2R: &str = include_str!("../data/sl2R.json");
pub const SU2: &str = include_str!("../data/su2.json");
pub const SU3: &str = include_str!("../data/su3.json");
pub const SP4R: &str = include_str!("../data/sp4R.json");
pub const SPLIT_SL2R: &str = include_str!("../data/split_sl2R.json");

/// `(name, text)` for every bundled Cartan datum.
pub const DATUMS: [(&str, &str); 4] = [("sl2R", SL2R), ("su2", SU2), ("su3", SU3), ("sp4R", SP4R)];

/// Looks a bundled file up by name, with or without the `.json` suffix.
pub fn bundled(name: &str) -> Option<&'static str> {
    let stem = name.strip_suffix(".json").unwrap_or(name);
    let stem = stem.rsplit('/').next().unwrap_or(stem);
    match stem {
        "split_sl2R" => Some(SPLIT_SL2R),
        _ => DATUMS.iter().find(|(n, _)| *n == stem).map(|(_, t)| *t),
    }
}

fn load(text: &str) -> CartanDatum {
    parse_datum(text).expect("bundled data is valid")
}

pub fn sl2r() -> CartanDatum {
    load(SL2R)
}

pub fn su2() -> CartanDatum {
    load(SU2)
}

pub fn su3() -> CartanDatum {
    load(SU3)
}

pub fn sp4r() -> CartanDatum {
    load(SP4R)
}

pub fn all() -> Vec<CartanDatum> {
    DATUMS.iter().map(|(_, t)| load(t)).collect()
}
