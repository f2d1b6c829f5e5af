//! Collision-free boson sampling: exact simulation, sampling, and validation.
//!
//! The crate simulates the output statistics of `n` photons entering an
//! `m`-mode linear interferometer, restricted to the collision-free sector
//! (every output mode holds 0 or 1 photons). Output probabilities are squared
//! moduli of matrix permanents; photon distinguishability enters through a
//! permutation sum weighted by the pairwise indistinguishability `x_ind`.
//!
//! On top of the probability models sit two validation protocols:
//!
//! * pattern recognition — K-means++ clusters trained on a bona fide sampler,
//!   followed by repeated two-sample chi-squared tests whose Gaussian center
//!   tracks `x_ind`;
//! * Bayesian log-odds — the cumulative likelihood ratio of observed events
//!   against a collision-free uniform reference, whose per-event slope tracks
//!   `x_ind`.
//!
//! Everything is deterministic given explicit seeds; see [`seed`] for how a
//! master seed splits into labeled sub-seeds.

pub mod analysis;
pub mod cluster;
pub mod error;
pub mod linalg;
pub mod pattern;
pub mod prob;
pub mod sampler;
pub mod seed;
pub mod validate;

pub use error::Error;

/// Crate-wide result type.
pub type Result<T> = std::result::Result<T, Error>;
