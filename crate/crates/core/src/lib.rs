//! Symbolic engine for the degree-one BFV model of Poisson reduction.
//!
//! Module map:
//! - [`graded`]: generator tables, exact polynomials, the graded bracket;
//! - [`lie`]: Lie-theoretic input data and validators;
//! - [`scenario`]: reduction problem instances and their compatibility checks;
//! - [`bfv`]: BRST charges, the differential splitting, exactness solves and
//!   the extended charge;
//! - [`homotopy`]: derived brackets and bounded cohomology probes;
//! - [`document`]: the JSON scenario format and bundled presets;
//! - [`linalg`]: sparse exact elimination;
//! - [`report`]: pass/fail/undecided reports shared by the validators.

pub mod bfv;
pub mod document;
pub mod graded;
pub mod homotopy;
pub mod lie;
pub mod linalg;
pub mod report;
pub mod scenario;

pub use graded::{parse, rat, ratio, serialize, AlgebraError, GPoly, GeneratorTable, Kind, Preset, Rational};
