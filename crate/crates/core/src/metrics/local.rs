use crate::bijection::{build_decorated_map, DecoratedMap, EdgeSet};
use crate::error::Result;
use crate::metrics::{Bfs, UNREACHED};
use crate::word::WordWindow;

/// The open map of `X[-half, half]` seen from the root `V(0)`.
///
/// A clean vertex has its whole face class and every incident edge inside
/// the window. So if no dirty vertex is within window distance `r` of the
/// root, every vertex at true distance below `r` is reached inside the
/// window along a true geodesic, and window and true distances agree on
/// that ball. `clean_radius` is the largest such `r`.
#[derive(Clone, Debug)]
pub struct LocalMap {
    pub half: i64,
    pub map: DecoratedMap,
    pub root: u32,
    pub root_dist: Vec<u32>,
    pub clean_radius: u32,
}

impl LocalMap {
    pub fn build(w: &mut WordWindow, half: i64) -> Result<Self> {
        let slice = w.slice(-half, half - 1)?;
        let map = build_decorated_map(&slice, false)?;
        let root = map.vertex_at(0).expect("0 lies inside the window");
        let mut bfs = Bfs::new();
        bfs.run(&map, root, EdgeSet::Map, u32::MAX);
        let root_dist = bfs.distances().to_vec();
        let clean_radius = (0..map.num_vertices())
            .filter(|&v| map.is_dirty(v as u32) && root_dist[v] != UNREACHED)
            .map(|v| root_dist[v])
            .min()
            .unwrap_or(UNREACHED);
        Ok(LocalMap { half, map, root, root_dist, clean_radius })
    }

    /// True distance from the root, when the window certifies it.
    pub fn root_distance(&self, v: u32) -> Option<u32> {
        let d = self.root_dist[v as usize];
        (d < self.clean_radius).then_some(d)
    }

    /// A window distance `d` between vertices at root distances `ex`, `ey`
    /// is exact when every vertex of a geodesic stays inside the certified
    /// ball: `(ex + ey + d) / 2 < clean_radius`.
    pub fn certifies(&self, ex: u32, ey: u32, d: u32) -> bool {
        (ex as u64 + ey as u64 + d as u64) < 2 * self.clean_radius as u64
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::ModelParams;

    #[test]
    fn certified_distances_survive_window_growth() {
        let p = ModelParams::from_p(0.6).unwrap();
        let mut compared = 0;
        for seed in 0..20 {
            let mut w = WordWindow::new(seed, p);
            let small = LocalMap::build(&mut w, 2000).unwrap();
            let big = LocalMap::build(&mut w, 64_000).unwrap();
            assert!(big.clean_radius >= small.clean_radius || big.clean_radius == UNREACHED);
            for t in -2000..2000 {
                let v = small.map.vertex_at(t).unwrap();
                if let Some(d) = small.root_distance(v) {
                    let u = big.map.vertex_at(t).unwrap();
                    assert_eq!(big.root_dist[u as usize], d, "seed {seed} t {t}");
                    compared += 1;
                }
            }
        }
        assert!(compared > 1000, "{compared}");
    }
}
