use crate::bubbles::{first_strong_index, root_sample};
use crate::continuum::{embed_walk, FunctionTree, TreeComparison};
use crate::error::{Error, Result};
use crate::loops::{loop_statistic, window_half};
use crate::metrics::{gap_grid, metric_gap, ContourPair};
use crate::word::{Letter, ModelParams, WordWindow};

use super::config::Experiment;
use super::run::mix;

/// Window half-width of the loop statistic, in units of `n^2`.
pub const LOOP_WINDOW: f64 = 4.0;
/// Metric gap: grid `{j eps n^2 : |j eps| <= GAP_RANGE}` inside a window of
/// half-width `GAP_WINDOW n^2`.
pub const GAP_RANGE: f64 = 1.0;
pub const GAP_EPS: f64 = 0.25;
pub const GAP_WINDOW: f64 = 4.0;
/// Tree comparison: horizon on each side in units of `n^2`, the ball
/// radius of the reported bound, and the local-GHP radius grid.
pub const GHP_HORIZON: f64 = 4.0;
pub const GHP_RADIUS: f64 = 0.1;
pub const GHP_RADIUS_STEP: f64 = 0.05;
pub const GHP_TRUNCATION: f64 = 20.0;

/// Why a sample is excluded from the statistics of its experiment.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Discard {
    /// The window cap stopped a query.
    Unresolved,
    /// The search ended before the event; the value is a lower bound.
    Censored,
    /// A ball reached the end of the sampled grid.
    Truncated,
}

impl Discard {
    pub fn name(self) -> &'static str {
        match self {
            Discard::Unresolved => "unresolved",
            Discard::Censored => "censored",
            Discard::Truncated => "truncated",
        }
    }
}

/// What one `(sample, n)` unit produced.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Outcome {
    pub values: Vec<(&'static str, f64)>,
    pub discard: Option<Discard>,
}

impl Outcome {
    fn ok(values: Vec<(&'static str, f64)>) -> Self {
        Outcome { values, discard: None }
    }

    fn discarded(values: Vec<(&'static str, f64)>, why: Discard) -> Self {
        Outcome { values, discard: Some(why) }
    }
}

/// Shared inputs of every sample of a run.
#[derive(Clone, Copy, Debug)]
pub struct SampleContext {
    pub params: ModelParams,
    pub cap: u64,
    pub metric_constant: f64,
}

pub fn run_sample(e: Experiment, ctx: &SampleContext, n: u32, seed: u64) -> Result<Outcome> {
    let mut w = WordWindow::with_cap(seed, ctx.params, ctx.cap);
    let out = match e {
        Experiment::BmScaling => bm_scaling(&mut w, n),
        Experiment::TauGeom => Ok(tau(&mut w)),
        Experiment::Alpha | Experiment::KIdentity => root(&mut w),
        Experiment::LoopDiam => loop_diam(&mut w, n),
        Experiment::MetricGap => gap(&mut w, n, ctx.metric_constant),
        Experiment::TreeProfile => tree_profile(&mut w, n),
        Experiment::GhpTree => ghp_tree(&mut w, n, seed),
    };
    match out {
        Err(Error::Unresolved { .. }) => Ok(Outcome::discarded(Vec::new(), Discard::Unresolved)),
        other => other,
    }
}

fn bm_scaling(w: &mut WordWindow, n: u32) -> Result<Outcome> {
    let n = n as i64;
    let c = ContourPair::from_window(w, 0, n)?;
    let d = c.tree().distance(0, n)?;
    Ok(Outcome::ok(vec![("H", c.h_at(n) as f64), ("C", c.c_at(n) as f64), ("d_T", d as f64)]))
}

fn tau(w: &mut WordWindow) -> Outcome {
    let t = first_strong_index(w, 0);
    let values = vec![("tau", t.steps as f64)];
    if t.observed {
        Outcome::ok(values)
    } else {
        Outcome::discarded(values, Discard::Censored)
    }
}

fn root(w: &mut WordWindow) -> Result<Outcome> {
    let r = root_sample(w)?;
    Ok(Outcome::ok(vec![
        ("d_T", r.tree_distance as f64),
        ("d_M", r.map_distance as f64),
        ("K", r.counts.total as f64),
        ("K_hamburger", r.counts.hamburger_type as f64),
    ]))
}

fn loop_diam(w: &mut WordWindow, n: u32) -> Result<Outcome> {
    let s = loop_statistic(w, n, window_half(n, LOOP_WINDOW))?;
    Ok(Outcome::ok(vec![
        ("statistic", s.statistic),
        ("max_diameter", s.max_diameter as f64),
        ("loops", s.loops_in_ball as f64),
        ("certified", s.certified as u8 as f64),
        ("partition_ok", s.partition_ok as u8 as f64),
    ]))
}

fn gap(w: &mut WordWindow, n: u32, a: f64) -> Result<Outcome> {
    let grid = gap_grid(n, GAP_RANGE, GAP_EPS)?;
    let g = metric_gap(w, a, n, &grid, window_half(n, GAP_WINDOW))?;
    Ok(Outcome::ok(vec![
        ("statistic", g.statistic),
        ("certified_pairs", g.certified_pairs as f64),
        ("above_tree", g.above_tree as f64),
        ("half", g.half as f64),
    ]))
}

fn tree_profile(w: &mut WordWindow, n: u32) -> Result<Outcome> {
    let m = n as i64 * n as i64;
    let c = ContourPair::from_window(w, 0, m)?;
    Ok(Outcome::ok(vec![("d_T", c.tree().distance(0, m)? as f64 / n as f64)]))
}

fn walk_step(l: Letter) -> i8 {
    if l.is_burger() {
        1
    } else {
        -1
    }
}

/// The rescaled contour `H(n^2 t) / n` against the Brownian tree of
/// `B(n^2 t) / (2n)`, where `B` is embedded in the burger-count walk
/// `H + C` of the same word.
fn ghp_tree(w: &mut WordWindow, n: u32, seed: u64) -> Result<Outcome> {
    let n2 = n as i64 * n as i64;
    let m = (GHP_HORIZON * n2 as f64) as i64;
    let c = ContourPair::from_window(w, -m, m)?;
    let (step, origin) = (1.0 / n2 as f64, m as usize);
    let discrete = FunctionTree::from_path(&c.h, origin, step, 1.0 / n as f64)?;

    // the embedding consumes about one walk step per unit of time
    let reach = m + m / 8 + 1000;
    let mut right = Vec::with_capacity(reach as usize);
    let mut left = Vec::with_capacity(reach as usize);
    for k in 0..reach {
        right.push(walk_step(w.letter(k)?));
        left.push(-walk_step(w.letter(-1 - k)?));
    }
    let bseed = mix(seed, 0x656d_6265_64);
    let br = embed_walk(&right, m as usize, bseed, 0)?;
    let bl = embed_walk(&left, m as usize, bseed, 1)?;
    let scale = 1.0 / (2.0 * n as f64);
    let values: Vec<f64> =
        bl.iter().rev().chain(std::iter::once(&0.0)).chain(br.iter()).map(|&b| b * scale).collect();
    let brownian = FunctionTree::new(step, origin, values)?;

    let cmp = TreeComparison::new(&discrete, &brownian)?;
    let b = cmp.bound(GHP_RADIUS);
    let local = cmp.local(GHP_RADIUS_STEP, GHP_TRUNCATION);
    let values = vec![
        ("bound", b.value),
        ("distortion", b.distortion),
        ("measure_defect", b.measure_defect),
        ("local", local.value),
    ];
    Ok(if b.truncated { Outcome::discarded(values, Discard::Truncated) } else { Outcome::ok(values) })
}
