use crate::bijection::{DecoratedMap, EdgeSet};
use crate::error::{Error, Result};
use crate::loops::{trace_loops, Loop};
use crate::metrics::{Bfs, LocalMap};
use crate::word::WordWindow;

/// Distinct red endpoints of the Tutte edges a loop crosses.
pub fn loop_vertices(lp: &Loop, map: &DecoratedMap) -> Vec<u32> {
    let mut v: Vec<u32> = lp.segments.iter().map(|&k| map.tutte_edge(k as usize).0).collect();
    v.sort_unstable();
    v.dedup();
    v
}

/// Largest `M`-distance between two red endpoints of the loop.
pub fn loop_diameter(lp: &Loop, map: &DecoratedMap) -> Result<u64> {
    if !lp.closed {
        return Err(Error::Dirty(lp.segments.first().map_or(0, |&k| map.tutte_edge(k as usize).0)));
    }
    let verts = loop_vertices(lp, map);
    if let Some(&v) = verts.iter().find(|&&v| map.is_dirty(v)) {
        return Err(Error::Dirty(v));
    }
    let mut mark = vec![false; map.num_vertices()];
    Ok(bounded_set_diameter(map, &verts, 0, &mut mark, &mut Bfs::new()) as u64)
}

// Distance from `v` to the farthest marked vertex.
fn eccentricity_in(map: &DecoratedMap, v: u32, count: usize, mark: &[bool], bfs: &mut Bfs) -> u32 {
    bfs.run_until(map, v, EdgeSet::Map, |u| mark[u as usize], count)
}

/// Outcome of the loop statistic for one sample.
#[derive(Clone, Debug, PartialEq)]
pub struct LoopStats {
    pub n: u32,
    pub half: i64,
    pub loops_in_ball: usize,
    /// Loops meeting the ball that leave the window; their diameters are
    /// taken over the part inside it.
    pub open_loops_in_ball: usize,
    pub max_diameter: u64,
    pub statistic: f64,
    /// Ball, loops and diameters all agree with the infinite map (see
    /// [`LocalMap`]).
    pub certified: bool,
    /// Loops of the window partition its Tutte edges.
    pub partition_ok: bool,
}

/// `max diam(l) / n` over the loops crossing a Tutte edge with red endpoint
/// in the radius-`n` ball around the root, computed in the map of the
/// window `X[-half, half)`.
///
/// Distances in the window map are never shorter than in the infinite map.
/// When the window certifies the ball and every loop meeting it the value
/// is exact and `certified` is set.
pub fn loop_statistic(w: &mut WordWindow, n: u32, half: i64) -> Result<LoopStats> {
    let local = LocalMap::build(w, half)?;
    Ok(statistic_in(&local, n, &mut Bfs::new()))
}

/// Window half-width `r n^2` for ball radius `n`.
pub fn window_half(n: u32, r: f64) -> i64 {
    ((r * n as f64 * n as f64).ceil() as i64).max(1)
}

fn statistic_in(local: &LocalMap, n: u32, bfs: &mut Bfs) -> LoopStats {
    let map = &local.map;
    let in_ball = |v: u32| local.root_dist[v as usize] <= n;
    let loops = trace_loops(map);
    let covered: usize = loops.iter().map(Loop::len).sum();
    let partition_ok = covered == map.num_tutte_edges();
    let mut sets = Vec::new();
    let mut open = 0;
    let mut reach = 0;
    for lp in &loops {
        if !lp.segments.iter().any(|&k| in_ball(map.tutte_edge(k as usize).0)) {
            continue;
        }
        open += usize::from(!lp.closed);
        let verts = loop_vertices(lp, map);
        reach = verts.iter().map(|&v| local.root_dist[v as usize]).max().unwrap_or(0).max(reach);
        sets.push(verts);
    }
    let max_diameter = max_set_diameter(map, &sets, bfs);
    // every loop has root distances <= reach and window diameter at most
    // max_diameter, so one check covers all of them
    let certified = open == 0 && local.clean_radius > n && local.certifies(reach, reach, max_diameter as u32);
    LoopStats {
        n,
        half: local.half,
        loops_in_ball: sets.len(),
        open_loops_in_ball: open,
        max_diameter,
        statistic: max_diameter as f64 / n as f64,
        certified,
        partition_ok,
    }
}

/// Largest diameter among several vertex sets.
///
/// Consecutive Tutte edges of a loop share a quadrangle, so their red
/// endpoints are equal or adjacent and a loop through `m` distinct red
/// vertices has diameter below `m`. Sets are visited by that bound and
/// skipped once it cannot beat the best diameter found so far.
fn max_set_diameter(map: &DecoratedMap, sets: &[Vec<u32>], bfs: &mut Bfs) -> u64 {
    let mut order: Vec<usize> = (0..sets.len()).filter(|&i| sets[i].len() > 1).collect();
    order.sort_unstable_by_key(|&i| std::cmp::Reverse(sets[i].len()));
    let mut mark = vec![false; map.num_vertices()];
    let mut best = 0u32;
    for i in order {
        if sets[i].len() as u32 - 1 <= best {
            break;
        }
        best = best.max(bounded_set_diameter(map, &sets[i], best, &mut mark, bfs));
    }
    best as u64
}

/// Exact diameter of `set` when it exceeds `floor`, otherwise some value
/// `<= floor`. Keeps eccentricity bounds per member and runs a BFS from
/// the member with the widest open bound until all bounds close.
fn bounded_set_diameter(map: &DecoratedMap, set: &[u32], floor: u32, mark: &mut [bool], bfs: &mut Bfs) -> u32 {
    for &v in set {
        mark[v as usize] = true;
    }
    let m = set.len();
    let mut lo = vec![0u32; m];
    let mut hi = vec![u32::MAX; m];
    let mut done = vec![false; m];
    let mut best = floor;
    let mut pick_high = true;
    loop {
        let upper = (0..m).filter(|&i| !done[i]).map(|i| hi[i]).max();
        match upper {
            Some(u) if u > best => {}
            _ => break,
        }
        let next = (0..m).filter(|&i| !done[i] && hi[i] > best);
        let i = if pick_high {
            next.max_by_key(|&i| (hi[i], std::cmp::Reverse(i)))
        } else {
            next.min_by_key(|&i| (lo[i], i))
        };
        let Some(i) = i else { break };
        pick_high = !pick_high;
        let e = eccentricity_in(map, set[i], m, mark, bfs);
        best = best.max(e);
        done[i] = true;
        let dist = bfs.distances();
        for j in 0..m {
            let d = dist[set[j] as usize];
            lo[j] = lo[j].max(d).max(e.saturating_sub(d));
            hi[j] = hi[j].min(e + d);
            if lo[j] == hi[j] {
                best = best.max(lo[j]);
                done[j] = true;
            }
        }
    }
    for &v in set {
        mark[v as usize] = false;
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bijection::build_finite_map;
    use crate::bubbles::Bubble;
    use crate::bubbles::strong_pinch_sequence;
    use crate::metrics::bfs_distances;
    use crate::word::{parse_word, ModelParams};

    fn params() -> ModelParams {
        ModelParams::from_p(0.6).unwrap()
    }

    fn brute_diameter(map: &DecoratedMap, verts: &[u32]) -> u64 {
        let mut best = 0;
        for &v in verts {
            let d = bfs_distances(map, v, EdgeSet::Map);
            for &u in verts {
                best = best.max(d[u as usize]);
            }
        }
        best as u64
    }

    #[test]
    fn single_vertex_loop_has_zero_diameter() {
        // a cheeseburger pair leaves a single red vertex
        let m = build_finite_map(&parse_word("bB").unwrap()).unwrap();
        let loops = trace_loops(&m);
        assert_eq!(loops.len(), 1);
        assert_eq!(loop_vertices(&loops[0], &m).len(), 1);
        assert_eq!(loop_diameter(&loops[0], &m).unwrap(), 0);
    }

    #[test]
    fn diameters_match_all_pairs_oracle() {
        for seed in 0..30 {
            let mut w = WordWindow::with_cap(seed, params(), 1 << 14);
            let chain = w.enclosing_reducible_intervals(0, 6);
            let Some(&iv) = chain.intervals.iter().rev().find(|iv| iv.len() < 2000) else { continue };
            let b = Bubble::from_window(&mut w, iv).unwrap();
            let loops = trace_loops(&b.map);
            let sets: Vec<Vec<u32>> = loops.iter().map(|l| loop_vertices(l, &b.map)).collect();
            let mut want = 0;
            for (lp, set) in loops.iter().zip(&sets) {
                let d = brute_diameter(&b.map, set);
                assert_eq!(loop_diameter(lp, &b.map).unwrap(), d);
                want = want.max(d);
            }
            assert_eq!(max_set_diameter(&b.map, &sets, &mut Bfs::new()), want);
        }
    }

    #[test]
    fn certified_statistics_do_not_depend_on_the_window() {
        let mut compared = 0;
        for seed in 0..60 {
            let mut w = WordWindow::new(seed, params());
            let n = 3;
            let s = loop_statistic(&mut w, n, 4096).unwrap();
            assert!(s.partition_ok);
            if !s.certified {
                continue;
            }
            let again = loop_statistic(&mut w, n, 65_536).unwrap();
            assert!(again.certified);
            assert_eq!(again.max_diameter, s.max_diameter);
            assert_eq!(again.loops_in_ball, s.loops_in_ball);
            compared += 1;
        }
        assert!(compared > 10, "{compared}");
    }

    #[test]
    fn window_statistic_is_defined_on_every_sample() {
        for seed in 0..5 {
            let mut w = WordWindow::new(seed, params());
            let s = loop_statistic(&mut w, 10, window_half(10, 4.0)).unwrap();
            assert!(s.loops_in_ball > 0);
            assert!(s.statistic >= 0.0);
        }
    }

    #[test]
    fn loops_meeting_a_strong_bubble_stay_inside() {
        let mut checked = 0;
        for seed in 0..40 {
            let mut w = WordWindow::with_cap(seed, params(), 1 << 15);
            let chain = w.enclosing_reducible_intervals(0, 30);
            let Some(&outer) = chain.intervals.iter().rev().find(|iv| iv.len() < 20_000) else { continue };
            let b = Bubble::from_window(&mut w, outer).unwrap();
            let loops = trace_loops(&b.map);
            for t in (outer.start + 1..=outer.end).step_by(97) {
                let sp = strong_pinch_sequence(&mut w, t, 3);
                for k in 0..sp.tau.len() {
                    let iv = sp.pinch.intervals[sp.tau[k] - 1];
                    if !(outer.start < iv.start && iv.end < outer.end) {
                        continue;
                    }
                    // inner Tutte edges are the segments a+1 ..= b
                    let (a, z) = ((iv.start + 1 - outer.start) as u32, (iv.end - outer.start) as u32);
                    for lp in &loops {
                        let inside = lp.segments.iter().filter(|&&k| a <= k && k <= z).count();
                        assert!(inside == 0 || inside == lp.len());
                    }
                    checked += 1;
                }
            }
        }
        assert!(checked > 50, "{checked}");
    }
}
