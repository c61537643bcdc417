//! Ground truth for the counting and sampling code: brute-force
//! enumeration of small classes, plus the statistics the sampler tests use.

use thiserror::Error;

mod enumerate;
mod stats;

pub use enumerate::{
    all_cyclariums, all_git_graphs, enumerate_cyclariums, enumerate_git_graphs, EnumerationResult,
    CYCLARIUM_LIMIT, GIT_GRAPH_LIMIT,
};
pub use stats::{
    chi_square_critical, chi_square_equal, chi_square_uniformity, empirical_moments,
    ChiSquareReport, Moments, SampleMoments, SIGNIFICANCE,
};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("n = {n} exceeds the enumeration limit {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("sampler produced an encoding outside the enumerated class: {0:?}")]
    ForeignEncoding(Vec<u8>),
    #[error("{total} samples, at least {needed} needed")]
    TooFewSamples { total: u64, needed: u64 },
}
