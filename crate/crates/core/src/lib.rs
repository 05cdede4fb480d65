//! Exact computations around Euler-Poincare functions and pseudo-coefficients
//! of real reductive groups with a compact Cartan subgroup.
//!
//! * [`charlat`]: weights, virtual characters, Weyl groups.
//! * [`clifford`]: Clifford algebra, spin module, half-spin characters.
//! * [`epcore`]: Euler-Poincare indices, discrete-series expansions,
//!   orbital-integral evaluators, the Dirac square check.
//! * [`cli`]: datum files, reports and the command dispatcher behind `ep`.

pub mod charlat;
pub mod cli;
pub mod clifford;
pub mod epcore;
pub mod exec;
pub mod fixtures;
pub mod selftest;

pub use exec::Strategy;
