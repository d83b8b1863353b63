//! Deterministic-LOCC comparability of pure bipartite states and their
//! superpositions.
//!
//! The crate is `no_std` (with `alloc`). Everything here is a pure function of
//! its inputs; randomness comes from an explicit [`RandomSource`] so every
//! Monte-Carlo number can be replayed from `(seed, stream)`.
//!
//! Module map:
//!
//! - [`state`]: Schmidt vectors, pure states, simplex sampling.
//! - [`svd`]: singular values of small dense real matrices.
//! - [`majorization`]: Nielsen's criterion and the four-way comparability verdict.
//! - [`measures`]: entropy of entanglement, concurrence, negativity, log-negativity, Rényi entropy.
//! - [`superposition`]: `α|ψ⟩ + β|φ⟩` with normalization bookkeeping.
//! - [`bounds`]: evaluation of entanglement bounds on superposed states, with margins and certificates.
//! - [`scenarios`]: comparability tables as data, witness search and table validation.

#![cfg_attr(not(test), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod bounds;
mod error;
pub mod majorization;
mod math;
pub mod measures;
pub mod scenarios;
pub mod state;
pub mod superposition;
pub mod svd;

pub use crate::error::{Error, Result};
pub use crate::majorization::{classify_pair, incomparable_3x3_shortcut, majorizes, Verdict};
pub use crate::measures::{
    concurrence_squared, entropy_of_entanglement, log_negativity, negativity, renyi_entropy,
    MeasureKind, MeasureResult,
};
pub use crate::state::{
    sample_schmidt_simplex, schmidt_of_state, PureState, RandomSource, SchmidtVector, StateForm,
};
pub use crate::superposition::{overlap, superpose, superpose_pair, Superposition, SuperpositionSpec};
pub use crate::svd::singular_values;

/// Absolute slack used by every partial-sum and strict comparison.
pub const COMPARE_EPS: f64 = 1e-12;

/// Normalization tolerance for states and Schmidt vectors.
pub const NORM_EPS: f64 = 1e-12;

/// `|⟨ψ|φ⟩|` at or below this counts as orthogonal.
pub const ORTHOGONAL_EPS: f64 = 1e-9;
