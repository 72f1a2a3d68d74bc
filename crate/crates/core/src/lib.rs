//! Exact enumeration, lattice-path bijections and truncated power series for
//! inversion sequences avoiding the patterns 102 and 000.
//!
//! The crate is organised bottom-up:
//!
//! * [`invseq`]: inversion sequences, pattern containment, statistics and a
//!   pruned backtracking enumerator.
//! * [`lattice`]: labeled F-paths, weighted H-walks, simple H-paths and the
//!   substitution map [`lattice::eta`] with its inverse.
//! * [`series`]: trivariate truncated power series over big integers, the
//!   functional-equation solver and the minimal-polynomial residuals.
//! * [`formulas`]: closed forms (binomials, `b_n^(m)`, Fuss-Catalan type counts).
//! * [`oeis`]: b-file parsing, caching and bundled fixtures.
//! * [`verify`]: the cross-check harness producing a [`verify::VerificationReport`].
//! * [`cli`]: the `invseq-lab` command-line front end.

pub mod cli;
pub mod count_table;
mod error;
pub mod formulas;
pub mod invseq;
pub mod lattice;
pub mod oeis;
pub mod series;
pub mod verify;

pub use count_table::{CountKey, CountTable};
pub use error::{Error, Result};
pub use invseq::{InversionSequence, PatternWord, StatRecord};
pub use series::{Bounds, TruncatedSeries};
