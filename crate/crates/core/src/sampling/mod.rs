//! Random generators for Git graphs.
//!
//! * [`sample_rejection`]: uniform at fixed `(n, k)`, fast for `k = O(sqrt n)`.
//! * [`ExactSampler`]: uniform at fixed `(n, k)` or `(n, k, f)`, any `k`.
//! * [`SizeSampler`]: uniform at fixed `n`.
//! * [`sample_boltzmann`]: labeled-main Boltzmann law, linear in output size.
//!
//! Every sampler draws from a caller-supplied [`RandomSource`]; a source must
//! not be shared between threads, use [`RandomSource::derive`] instead.

use thiserror::Error;

use crate::counting::CountError;

mod boltzmann;
mod composition;
pub mod discrete;
mod exact;
mod permutation;
mod random;
mod rejection;

pub use boltzmann::{
    marks_from_extraction, sample_boltzmann, sample_boltzmann_in_window, BoltzmannParams,
};
pub use composition::sample_composition;
pub use exact::{
    feasible_free_count, sample_exact, sample_exact_size_only, ExactSampler, SizeSampler,
    EXACT_TABLE_LIMIT,
};
pub use permutation::{sample_permutation_with_cycles, CycleCounts, ScaledStirling};
pub use random::{uniform_below, weighted_index, RandomSource};
pub use rejection::{exceeds_rejection_regime, sample_rejection, sample_rejection_counted};

#[derive(Clone, Debug, PartialEq, Error)]
pub enum SampleError {
    #[error("infeasible request: {0}")]
    Infeasible(String),
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("precomputed tables do not cover k = {k}, f = {f}")]
    MissingTables { k: usize, f: usize },
    #[error("request too large: {0}")]
    TooLarge(String),
    #[error("no sample in the size window after {0} attempts")]
    Exhausted(u64),
    #[error(transparent)]
    Count(#[from] CountError),
}
