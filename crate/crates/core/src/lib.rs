//! Raga note strings from the logistic map: generation, correlation-driven
//! composition, and box-counting analysis.
//!
//! The pipeline has four stages, each its own module:
//!
//! * [`chaos`] iterates `x[n+1] = lambda * x[n] * (1 - x[n])` to produce
//!   real-valued sequences in the unit interval;
//! * [`raga`] quantizes those sequences into note strings over an alphabet
//!   with uniform threshold bins (Bhairabi and Bhupali ship built in), and
//!   decodes strings back to amplitude sequences;
//! * [`compose`] searches a large seeded pool of random candidate strings
//!   for the one whose summed correlation with two parent strings is
//!   maximal ([`correlate`] defines the uncentered coefficient);
//! * [`fractal`] characterizes any string's graph with a box-counting
//!   fractal dimension.
//!
//! The [`cli`] module wraps everything in a command-line tool.
//!
//! ```
//! use ragalab::{chaos, raga};
//!
//! let params = chaos::LogisticParams::new(3.99, 0.1, 12).unwrap();
//! let bhupali = raga::builtin_raga("bhupali").unwrap();
//! let notes = raga::encode(&chaos::iterate(&params), &bhupali);
//! assert_eq!(notes.symbols(), "SGBGCPBSRPBS");
//! ```

pub mod chaos;
pub mod cli;
pub mod compose;
pub mod correlate;
pub mod error;
pub mod float;
pub mod fractal;
pub mod raga;

pub use error::{Error, Result};
pub use float::Float;

/// Concrete scalar used by the search pipeline and the CLI. The generic
/// modules default their scalar parameter to this type.
pub type Real = f64;
