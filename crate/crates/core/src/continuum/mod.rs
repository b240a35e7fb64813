//! Trees encoded by functions, finite metric-measure spaces, and
//! Gromov-Hausdorff-Prokhorov upper bounds.

mod compare;
mod embed;
mod space;
mod tree;

pub use compare::{ghp_tree_bound, local_ghp, LocalGhp, TreeComparison, TreeGhpBound};
pub use embed::{embed_walk, exit_time_cdf, ExitTimeTable};
pub use space::{
    best_coupling, evaluate_correspondence, ghp_lower_bound, ghp_upper_bound, optimize_ghp_bound, Correspondence,
    Coupling, GhpBound, MetricMeasureSpace,
};
pub use tree::{sample_brownian_tree, BallInterval, FunctionTree};
