//! Mergeable summaries, a quantile sketch and the hypothesis tests used by
//! the experiments.

mod bootstrap;
mod censored;
mod sketch;
mod summary;
mod tests;

pub use bootstrap::{bootstrap_ratio, Interval};
pub use censored::{censored_geometric, CensoredCount, GeometricFit};
pub use sketch::QuantileSketch;
pub use summary::{autocorrelation, PairSummary, Summary};
pub use tests::{chi_square, ks_two_sample, mann_whitney, ChiSquareResult, KsResult, MannWhitneyResult};
