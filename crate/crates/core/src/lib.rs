//! Finite-blocklength Gallager exponents and information spectra for general
//! discrete sources and channels.
//!
//! * [`models`]: memoryless (possibly time-varying), Markov and mixture
//!   laws, the joint law an input induces through a channel, and JSON files.
//! * [`spectrum`]: exact and Monte Carlo laws of the information and entropy
//!   densities, their tail probabilities and the proof-set diagnostic.
//! * [`exponents`]: `E0`, `J0`, the optimized exponents, the two finite-`n`
//!   bounds and the tilted joint law.
//! * [`codingsim`]: random coding and random binning experiments.
//! * [`cli`]: the `gallager` command line.
//!
//! All quantities are in nats per symbol unless a name says otherwise.

// `!(x > 0.0)` style checks are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod codingsim;
pub mod error;
pub mod exponents;
pub mod logspace;
pub mod models;
pub mod parallel;
pub mod rng;
pub mod spectrum;

mod enumerate;

pub use error::{Error, Result, Violation};
