//! Exact spectra of line graphs of generalized Bethe trees.
//!
//! * [`poly`]: integer polynomials, rationals, Sturm chains and certified
//!   real-root isolation.
//! * [`bethe`]: degree sequences, the `g`-polynomials, the factored
//!   characteristic polynomial and smallest-eigenvalue checks.
//! * [`graphs`]: explicit trees, line graphs and coronas.
//! * [`schwenk`]: characteristic polynomials of rooted compositions.
//! * [`oracle`]: exact and numeric spectra of explicit matrices.
//! * [`cli`]: the `bethe-spectra` command line.

pub mod bethe;
pub mod cli;
pub mod graphs;
pub mod oracle;
pub mod poly;
pub mod schwenk;

pub use bethe::{DegreePrefix, DegreeSequence};
pub use poly::{BigRational, IntPoly, RootInterval};

pub const TOOL_NAME: &str = "bethe-spectra";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
