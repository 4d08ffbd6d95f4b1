//! Exact computation over the tropical semiring `Z_max = (Z ∪ {-∞}, max, +)`.
//!
//! - [`tropical`]: values, matrices, exact rationals.
//! - [`spectral`]: spectral radius, critical graph, ultimate rank of one matrix.
//! - [`automata`]: max-plus automata and bounded word searches.
//! - [`jsr`]: joint spectral radius and ultimate rank of matrix families.
//! - [`constructions`]: star extension, `hat`, `tilde`, NFA-to-family reduction.
//! - [`counter`]: two-counter machines and their compilation to checker automata.
//! - [`oracle`]: slow brute-force references used to cross-check the above.
//! - [`io`]: JSON file formats.

pub mod automata;
pub mod constructions;
pub mod counter;
pub mod error;
mod graph;
pub mod int;
pub mod io;
pub mod jsr;
pub mod oracle;
pub mod spectral;
pub mod tropical;

pub use automata::{MaxPlusAutomaton, Word};
pub use error::{Error, Result};
pub use int::Int;
pub use jsr::MatrixFamily;
pub use tropical::{Rational, TropicalMatrix, TropicalValue};
