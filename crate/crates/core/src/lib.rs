//! Exact codimension computations for the word-indexed nonassociative
//! algebras `A(m, w)` and their unital extensions.
//!
//! * [`words`] — periodic, mechanical and substitutive binary words.
//! * [`algebra`] — the multiplication table of `A(m, w)`, traces and gradings.
//! * [`codim`] — ordinary, graded and unital codimensions by exact rank.
//! * [`asym`] — the entropy function Φ, closed-form maxima and bound checks.
//! * [`cli`] — the `codim-lab` command-line front end.

pub mod algebra;
pub mod asym;
pub mod cli;
pub mod codim;
pub mod error;
pub mod words;

pub use error::{Error, Result};
