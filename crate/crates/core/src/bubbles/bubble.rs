use crate::bijection::{build_decorated_map, DecoratedMap, EdgeSet};
use crate::error::{Error, Result};
use crate::metrics::{Bfs, ContourPair, TreeMetric};
use crate::word::{Interval, OrderCounts, WordWindow};

use super::{is_strong, pinch_sequence};

/// The finite map of one reducible interval `[s, e]`, closed up by gluing
/// its two boundary Tutte edges `E(s)` and `E(e + 1)`.
///
/// Paths between vertices of a filled bubble can leave it only through its
/// pinch point, so tree and map distances computed here are the distances
/// of the infinite map.
#[derive(Clone, Debug)]
pub struct Bubble {
    pub interval: Interval,
    pub map: DecoratedMap,
    pub contour: ContourPair,
    pub tree: TreeMetric,
}

impl Bubble {
    pub fn from_window(w: &mut WordWindow, iv: Interval) -> Result<Self> {
        let slice = w.slice(iv.start, iv.end)?;
        if !slice.is_fully_matched() {
            return Err(Error::Parameter(format!("[{}, {}] is not reducible", iv.start, iv.end)));
        }
        let map = build_decorated_map(&slice, true)?;
        let contour = ContourPair::from_matched(&slice.letters, &slice.partner, iv.start, iv.start)?;
        let tree = contour.tree();
        Ok(Bubble { interval: iv, map, contour, tree })
    }

    /// Segment times covered: `start ..= end + 1`.
    pub fn contains_time(&self, t: i64) -> bool {
        self.interval.start <= t && t <= self.interval.end + 1
    }

    /// `V(t)` for a segment time inside the bubble.
    pub fn vertex_at(&self, t: i64) -> Result<u32> {
        if !self.contains_time(t) {
            return Err(Error::OutOfRange(t));
        }
        Ok(self.map.vertex_at(t).expect("inside"))
    }

    pub fn pinch_vertex(&self) -> u32 {
        self.map.faces.upper[0]
    }

    pub fn tree_distance(&self, s: i64, t: i64) -> Result<u64> {
        if !self.contains_time(s) || !self.contains_time(t) {
            return Err(Error::OutOfRange(if self.contains_time(s) { t } else { s }));
        }
        self.tree.distance(s, t)
    }

    /// Map distances from `V(t)` to every vertex of the bubble.
    pub fn map_distances_from(&self, t: i64, bfs: &mut Bfs) -> Result<()> {
        let v = self.vertex_at(t)?;
        bfs.run(&self.map, v, EdgeSet::Map, u32::MAX);
        Ok(())
    }

    /// Largest tree distance between two vertices of the bubble, from the
    /// contour: the maximum of `H_s - 2 H_u + H_t` over `s <= u <= t`.
    pub fn tree_extent(&self) -> u64 {
        let h = &self.contour.h;
        let mut best_s = i64::MIN;
        let mut best_su = i64::MIN;
        let mut best = 0i64;
        for &x in h {
            best_s = best_s.max(x);
            best_su = best_su.max(best_s - 2 * x);
            best = best.max(best_su + x);
        }
        best as u64
    }
}

/// Root quantities of one sample: the first reducible interval around
/// `E(0)`, the order counts of `X(0..=e)`, and the tree and map distances
/// from the root to its first pinch point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RootSample {
    pub interval: Interval,
    pub counts: OrderCounts,
    pub tree_distance: u64,
    pub map_distance: u64,
}

pub fn root_sample(w: &mut WordWindow) -> Result<RootSample> {
    let (iv, counts) = w.root_order_count()?;
    let bubble = Bubble::from_window(w, iv)?;
    let tree_distance = bubble.tree_distance(0, iv.start)?;
    let mut bfs = Bfs::new();
    bubble.map_distances_from(0, &mut bfs)?;
    let map_distance = bfs.dist(bubble.pinch_vertex()).expect("bubble maps are connected") as u64;
    Ok(RootSample { interval: iv, counts, tree_distance, map_distance })
}

/// Tree and map distances along the pinch sequence of `t`: entry 0 is from
/// `V(t)` to `p_1`, entry `i` from `p_i` to `p_{i+1}`. Each step is measured
/// inside the bubble of the outer interval, where it is exact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PinchIncrements {
    pub base: i64,
    pub intervals: Vec<Interval>,
    pub tree: Vec<u64>,
    pub map: Vec<u64>,
}

pub fn pinch_increments(w: &mut WordWindow, t: i64, k: usize) -> Result<PinchIncrements> {
    let ps = pinch_sequence(w, t, k);
    if ps.len() < k {
        return Err(Error::Unresolved { time: t, cap: w.cap() });
    }
    let mut bfs = Bfs::new();
    let (mut tree, mut map) = (Vec::with_capacity(k), Vec::with_capacity(k));
    let mut from = t;
    for &iv in &ps.intervals {
        let b = Bubble::from_window(w, iv)?;
        tree.push(b.tree_distance(from, iv.start)?);
        b.map_distances_from(from, &mut bfs)?;
        map.push(bfs.dist(b.pinch_vertex()).expect("bubble maps are connected") as u64);
        from = iv.start;
    }
    Ok(PinchIncrements { base: t, intervals: ps.intervals, tree, map })
}

/// Largest tree distance inside a strong bubble; refuses intervals that are
/// not strong.
pub fn strong_bubble_extent(w: &mut WordWindow, iv: Interval) -> Result<u64> {
    if !is_strong(w, iv)? {
        return Err(Error::Parameter(format!("[{}, {}] is not a strong interval", iv.start, iv.end)));
    }
    Ok(Bubble::from_window(w, iv)?.tree_extent())
}
