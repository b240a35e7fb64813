use crate::bijection::EdgeSet;
use crate::error::{Error, Result};
use crate::metrics::{Bfs, ContourPair, LocalMap};
use crate::stats::{bootstrap_ratio, Interval};
use crate::word::{ModelParams, WordWindow};

/// Ratio `E d_T(o, p(o)) / E d_M(o, p(o))` from paired root samples, with a
/// percentile bootstrap interval.
pub fn estimate_alpha(
    params: &ModelParams,
    pairs: &[(u64, u64)],
    resamples: usize,
    level: f64,
    seed: u64,
) -> Result<Interval> {
    if !params.is_supercritical() {
        return Err(Error::Parameter(format!(
            "the metric constant needs p > 1/2 (q > 4); got p = {}",
            params.p()
        )));
    }
    if pairs.is_empty() {
        return Err(Error::Parameter("no samples".into()));
    }
    let (dt, dm): (Vec<f64>, Vec<f64>) = pairs.iter().map(|&(t, m)| (t as f64, m as f64)).unzip();
    if dm.iter().sum::<f64>() == 0.0 {
        return Err(Error::Parameter("all map distances are zero".into()));
    }
    Ok(bootstrap_ratio(&dt, &dm, resamples, level, seed))
}

/// Time grid `{floor(j eps n^2) : |j eps| <= r}`.
pub fn gap_grid(n: u32, r: f64, eps: f64) -> Result<Vec<i64>> {
    if !(eps > 0.0 && r >= 0.0) {
        return Err(Error::Parameter(format!("grid needs eps > 0 and r >= 0, got eps = {eps}, r = {r}")));
    }
    let n2 = n as f64 * n as f64;
    let j = (r / eps + 1e-9).floor() as i64;
    let mut g: Vec<i64> = (-j..=j).map(|j| (j as f64 * eps * n2).floor() as i64).collect();
    g.dedup();
    Ok(g)
}

/// One sample of `sup |a d_M - d_T| / n` over grid pairs.
#[derive(Clone, Debug, PartialEq)]
pub struct GapSample {
    pub n: u32,
    pub statistic: f64,
    pub pairs: usize,
    /// Pairs whose window distance the window certifies as exact.
    pub certified_pairs: usize,
    /// Pairs whose window distance exceeds `d_T`; zero unless the window
    /// misses a tree edge.
    pub above_tree: usize,
    /// Half-width of the window actually used.
    pub half: i64,
}

/// Metric gap over the grid pairs, with `d_T` exact from the contour and
/// `d_M` from the map of `X[-h, h)`, where `h >= half` is grown until the
/// window holds the partner of every letter between the extreme grid
/// times.
///
/// Face classes of window segments are those of the infinite map, so the
/// window map is a subgraph and its distances can only overestimate `d_M`.
/// Every tree edge on a path between grid vertices has an endpoint between
/// them, hence lies in the window, so window distances never exceed `d_T`.
pub fn metric_gap(w: &mut WordWindow, alpha: f64, n: u32, grid: &[i64], half: i64) -> Result<GapSample> {
    if let Some(&t) = grid.iter().find(|&&t| t < -half || t > half) {
        return Err(Error::OutOfRange(t));
    }
    let lo = grid.iter().copied().min().unwrap_or(0).min(0);
    let hi = grid.iter().copied().max().unwrap_or(0).max(0);
    w.resolve_all(lo, hi)?;
    let mut reach = half;
    for t in lo..=hi {
        let m = w.partner_in(t).expect("resolved above");
        reach = reach.max(if m < 0 { -m } else { m + 1 });
    }
    let local = LocalMap::build(w, reach)?;
    let contour = ContourPair::from_window(w, lo, hi)?;
    let tree = contour.tree();
    let map = &local.map;
    let verts: Vec<u32> = grid.iter().map(|&t| map.vertex_at(t).expect("grid inside window")).collect();
    let mut bfs = Bfs::new();
    let mut worst: f64 = 0.0;
    let (mut pairs, mut certified, mut above_tree) = (0, 0, 0);
    for (i, &x) in grid.iter().enumerate() {
        bfs.run(map, verts[i], EdgeSet::Map, u32::MAX);
        for (j, &y) in grid.iter().enumerate().skip(i + 1) {
            let dt = tree.distance(x, y)?;
            let dw = bfs.dist(verts[j]).map_or(u64::MAX, u64::from);
            let (ex, ey) = (local.root_dist[verts[i] as usize], local.root_dist[verts[j] as usize]);
            if dw != u64::MAX && local.certifies(ex, ey, dw as u32) {
                certified += 1;
            }
            if dw > dt {
                above_tree += 1;
            }
            let dm = dw.min(dt);
            worst = worst.max((alpha * dm as f64 - dt as f64).abs());
            pairs += 1;
        }
    }
    Ok(GapSample { n, statistic: worst / n as f64, pairs, certified_pairs: certified, above_tree, half: reach })
}
