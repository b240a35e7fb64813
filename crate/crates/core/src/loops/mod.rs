//! FK loops traced through the Tutte edges, their diameters, and the
//! loop-size statistic on metric balls.

mod stats;
mod trace;

pub use trace::{strand_links, trace_loops, Loop};
pub use stats::{window_half, loop_diameter, loop_statistic, loop_vertices, LoopStats};
