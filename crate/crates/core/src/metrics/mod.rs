//! Contour functions, tree and map distances, the degree measure, and the
//! statistics comparing the two metrics.

mod contour;
mod gap;
mod graph;
mod local;

pub use contour::{tree_distance, ContourPair, TreeMetric};
pub use graph::{bfs_distances, degree_measure, fibre_counts, map_distance, Bfs, UNREACHED};
pub use local::LocalMap;
pub use gap::{estimate_alpha, gap_grid, metric_gap, GapSample};
