use crate::bijection::{DecoratedMap, EdgeSet};
use crate::error::{Error, Result};

pub const UNREACHED: u32 = u32::MAX;

/// Breadth-first search with reusable buffers; only the vertices touched by
/// the previous run are reset.
#[derive(Clone, Debug, Default)]
pub struct Bfs {
    dist: Vec<u32>,
    order: Vec<u32>,
}

impl Bfs {
    pub fn new() -> Self {
        Self::default()
    }

    /// Distances from `source` along `set`, stopping past `limit`.
    pub fn run(&mut self, map: &DecoratedMap, source: u32, set: EdgeSet, limit: u32) {
        self.reset(map.num_vertices());
        self.dist[source as usize] = 0;
        self.order.push(source);
        let mut head = 0;
        while head < self.order.len() {
            let v = self.order[head];
            head += 1;
            let d = self.dist[v as usize];
            if d >= limit {
                continue;
            }
            for &(u, e) in map.neighbors(v) {
                if self.dist[u as usize] == UNREACHED && set.contains(&map.edges[e as usize]) {
                    self.dist[u as usize] = d + 1;
                    self.order.push(u);
                }
            }
        }
    }

    /// Runs from `source` until `count` vertices satisfying `target` have
    /// been reached, and returns the distance of the last one. The rest of
    /// the current layer is left unexplored.
    pub fn run_until(
        &mut self,
        map: &DecoratedMap,
        source: u32,
        set: EdgeSet,
        target: impl Fn(u32) -> bool,
        count: usize,
    ) -> u32 {
        self.reset(map.num_vertices());
        self.dist[source as usize] = 0;
        self.order.push(source);
        let mut found = usize::from(target(source));
        let mut last = 0;
        let mut head = 0;
        while head < self.order.len() && found < count {
            let v = self.order[head];
            head += 1;
            let d = self.dist[v as usize];
            for &(u, e) in map.neighbors(v) {
                if self.dist[u as usize] == UNREACHED && set.contains(&map.edges[e as usize]) {
                    self.dist[u as usize] = d + 1;
                    self.order.push(u);
                    if target(u) {
                        found += 1;
                        last = d + 1;
                    }
                }
            }
        }
        last
    }

    fn reset(&mut self, n: usize) {
        if self.dist.len() != n {
            self.dist = vec![UNREACHED; n];
            self.order.clear();
        }
        for &v in &self.order {
            self.dist[v as usize] = UNREACHED;
        }
        self.order.clear();
    }

    pub fn dist(&self, v: u32) -> Option<u32> {
        let d = self.dist[v as usize];
        (d != UNREACHED).then_some(d)
    }

    /// Vertices reached by the last run, in order of distance.
    pub fn reached(&self) -> &[u32] {
        &self.order
    }

    pub fn distances(&self) -> &[u32] {
        &self.dist
    }
}

/// All distances from `source` in the given edge set.
pub fn bfs_distances(map: &DecoratedMap, source: u32, set: EdgeSet) -> Vec<u32> {
    let mut bfs = Bfs::new();
    bfs.run(map, source, set, u32::MAX);
    bfs.dist
}

/// Graph distance in `M` between two clean vertices.
pub fn map_distance(map: &DecoratedMap, x: u32, y: u32) -> Result<u64> {
    for v in [x, y] {
        if map.is_dirty(v) {
            return Err(Error::Dirty(v));
        }
    }
    let mut bfs = Bfs::new();
    bfs.run(map, x, EdgeSet::Map, u32::MAX);
    bfs.dist(y).map(u64::from).ok_or(Error::Dirty(y))
}

/// Degree of every vertex in `M`, loops counted twice.
pub fn degree_measure(map: &DecoratedMap) -> Vec<u64> {
    (0..map.num_vertices() as u32).map(|v| map.degree(v) as u64).collect()
}

/// Number of letters `t` with `V(t) = x`, the push-forward of counting
/// measure on times.
pub fn fibre_counts(map: &DecoratedMap) -> Vec<u64> {
    let mut out = vec![0u64; map.num_vertices()];
    for k in 0..map.len() {
        out[map.faces.upper[k] as usize] += 1;
    }
    out
}
