use std::io::{BufRead, Write};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rmq::SparseTableMin;

/// Tree encoded by a function `g` sampled on a uniform grid, with
/// `d_g(s, t) = g(s) + g(t) - 2 min_{[s,t]} g`.
///
/// Grid index `i` sits at time `(i - origin) * step` and `g` vanishes at the
/// origin, which is the root. Each grid point carries Lebesgue mass `step`.
#[derive(Clone, Debug)]
pub struct FunctionTree {
    step: f64,
    origin: usize,
    seed: Option<u64>,
    rmq: SparseTableMin<f64>,
}

/// Grid indices of a closed ball around the root.
#[derive(Clone, Debug, PartialEq)]
pub struct BallInterval {
    pub radius: f64,
    /// Members in increasing order; all lie in `[hull.0, hull.1]`.
    pub members: Vec<usize>,
    pub hull: (usize, usize),
    /// The running minimum never dropped below `-radius` on some side of the
    /// grid, so the ball may continue past it.
    pub truncated: bool,
}

impl BallInterval {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

impl FunctionTree {
    pub fn new(step: f64, origin: usize, values: Vec<f64>) -> Result<Self> {
        if !(step > 0.0 && step.is_finite()) {
            return Err(Error::Parameter(format!("grid step {step} must be positive")));
        }
        if origin >= values.len() {
            return Err(Error::Grid(format!("origin {origin} outside a grid of {} points", values.len())));
        }
        if values[origin] != 0.0 {
            return Err(Error::Grid(format!("g(0) = {} instead of 0", values[origin])));
        }
        if let Some(v) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::Grid(format!("non-finite value {v}")));
        }
        Ok(FunctionTree { step, origin, seed: None, rmq: SparseTableMin::new(&values) })
    }

    /// Tree of an integer path rescaled to `scale * path[origin + k]` at time
    /// `k * step`.
    pub fn from_path(path: &[i64], origin: usize, step: f64, scale: f64) -> Result<Self> {
        let base = *path.get(origin).ok_or_else(|| Error::Grid("empty path".into()))?;
        Self::new(step, origin, path.iter().map(|&h| (h - base) as f64 * scale).collect())
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn origin(&self) -> usize {
        self.origin
    }

    pub fn len(&self) -> usize {
        self.rmq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rmq.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        self.rmq.values()
    }

    pub fn value(&self, i: usize) -> f64 {
        self.rmq.get(i)
    }

    pub fn time(&self, i: usize) -> f64 {
        (i as f64 - self.origin as f64) * self.step
    }

    /// Grid index closest to time `t`, if it is on the grid.
    pub fn index_of(&self, t: f64) -> Option<usize> {
        let i = (t / self.step).round() + self.origin as f64;
        (i >= 0.0 && (i as usize) < self.len()).then_some(i as usize)
    }

    /// `(first, last)` grid times.
    pub fn horizon(&self) -> (f64, f64) {
        (self.time(0), self.time(self.len() - 1))
    }

    pub fn min_between(&self, i: usize, j: usize) -> f64 {
        self.rmq.min(i, j)
    }

    pub fn distance(&self, i: usize, j: usize) -> f64 {
        let d = self.value(i) + self.value(j) - 2.0 * self.min_between(i, j);
        d.max(0.0)
    }

    pub fn root_distance(&self, i: usize) -> f64 {
        self.distance(self.origin, i)
    }

    /// `d_g(0, t)` for every grid point, in one pass outward from the root.
    pub fn root_distances(&self) -> Vec<f64> {
        let g = self.values();
        let mut d = vec![0.0; g.len()];
        let mut m = 0.0f64;
        for i in self.origin..g.len() {
            m = m.min(g[i]);
            d[i] = g[i] - 2.0 * m;
        }
        m = 0.0;
        for i in (0..self.origin).rev() {
            m = m.min(g[i]);
            d[i] = g[i] - 2.0 * m;
        }
        d
    }

    /// Times whose projection lies in the closed ball of radius `r` around
    /// the root. Past the first time on either side where `g < -r` every
    /// point is farther than `r`, so the scan stops there.
    pub fn ball_interval(&self, r: f64) -> BallInterval {
        ball_from_distances(self, &self.root_distances(), r)
    }

    /// Writes a one-line JSON header followed by the values as little-endian
    /// `f64`.
    pub fn write_to(&self, mut out: impl Write) -> Result<()> {
        let header = TreeHeader { step: self.step, origin: self.origin, len: self.len(), seed: self.seed };
        serde_json::to_writer(&mut out, &header)?;
        out.write_all(b"\n")?;
        let mut buf = Vec::with_capacity(8 * self.len());
        for v in self.values() {
            buf.extend_from_slice(&v.to_le_bytes());
        }
        out.write_all(&buf)?;
        Ok(())
    }

    pub fn read_from(mut input: impl BufRead) -> Result<Self> {
        let mut line = String::new();
        input.read_line(&mut line)?;
        let h: TreeHeader = serde_json::from_str(line.trim_end())?;
        let mut buf = vec![0u8; 8 * h.len];
        input.read_exact(&mut buf)?;
        let values = buf.chunks_exact(8).map(|c| f64::from_le_bytes(c.try_into().unwrap())).collect();
        let t = Self::new(h.step, h.origin, values)?;
        Ok(match h.seed {
            Some(s) => t.with_seed(s),
            None => t,
        })
    }
}

#[derive(Serialize, Deserialize)]
struct TreeHeader {
    step: f64,
    origin: usize,
    len: usize,
    seed: Option<u64>,
}

pub(crate) fn ball_from_distances(tree: &FunctionTree, dist: &[f64], r: f64) -> BallInterval {
    let g = tree.values();
    let o = tree.origin();
    let mut hi = o;
    let mut truncated = true;
    for (i, &v) in g.iter().enumerate().skip(o) {
        if v < -r {
            truncated = false;
            break;
        }
        hi = i;
    }
    let mut lo = o;
    let mut left_open = true;
    for i in (0..o).rev() {
        if g[i] < -r {
            left_open = false;
            break;
        }
        lo = i;
    }
    let members = (lo..=hi).filter(|&i| dist[i] <= r).collect();
    BallInterval { radius: r, members, hull: (lo, hi), truncated: truncated || left_open }
}

/// Two-sided Brownian motion from 0 with `Var g(t) = variance_rate * |t|`,
/// sampled every `step` on `[-horizon, horizon]`.
pub fn sample_brownian_tree(step: f64, horizon: f64, variance_rate: f64, seed: u64) -> Result<FunctionTree> {
    if !(variance_rate > 0.0 && horizon > 0.0 && step > 0.0) {
        return Err(Error::Parameter(format!(
            "need positive step, horizon and variance rate, got {step}, {horizon}, {variance_rate}"
        )));
    }
    let n = (horizon / step).ceil() as usize;
    let normal = Normal::new(0.0, (variance_rate * step).sqrt()).map_err(|e| Error::Parameter(e.to_string()))?;
    let side = |stream: u64| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        let mut acc = 0.0;
        (0..n)
            .map(|_| {
                acc += normal.sample(&mut rng);
                acc
            })
            .collect::<Vec<f64>>()
    };
    let right = side(0);
    let left = side(1);
    let mut values: Vec<f64> = left.into_iter().rev().collect();
    values.push(0.0);
    values.extend(right);
    Ok(FunctionTree::new(step, n, values)?.with_seed(seed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn tree(v: &[f64], origin: usize) -> FunctionTree {
        FunctionTree::new(1.0, origin, v.to_vec()).unwrap()
    }

    #[test]
    fn rejects_nonzero_root() {
        assert!(matches!(FunctionTree::new(1.0, 0, vec![1.0, 2.0]), Err(Error::Grid(_))));
    }

    #[test]
    fn brownian_variance_at_one() {
        let n = 20_000;
        let s: f64 = (0..n)
            .map(|seed| {
                let t = sample_brownian_tree(0.25, 1.0, 0.25, seed).unwrap();
                t.value(t.index_of(1.0).unwrap()).powi(2)
            })
            .sum::<f64>()
            / n as f64;
        // sd of the estimate is 0.25 * sqrt(2 / n)
        assert!((s - 0.25).abs() < 3.0 * 0.25 * (2.0 / n as f64).sqrt(), "{s}");
    }

    #[test]
    fn root_distance_mean_matches_bessel_value() {
        // W_1 - 2 min W has the BES(3) law at time 1, mean 2 sqrt(2 / pi);
        // halved for variance rate 1/4. A fine grid misses part of the
        // minimum, which biases the mean down by about 0.58 sqrt(step) / 2.
        let n = 4000;
        let step = 1e-4;
        let mean: f64 = (0..n)
            .map(|seed| {
                let t = sample_brownian_tree(step, 1.0, 0.25, 1000 + seed).unwrap();
                t.root_distance(t.index_of(1.0).unwrap())
            })
            .sum::<f64>()
            / n as f64;
        let want = (2.0 / std::f64::consts::PI).sqrt();
        // sd of the functional is sqrt(3 - 8/pi) / 2
        let se = (3.0 - 8.0 / std::f64::consts::PI).sqrt() / 2.0 / (n as f64).sqrt();
        assert!((mean - want).abs() < 4.0 * se + 0.3 * step.sqrt(), "{mean} vs {want}");
    }

    #[test]
    fn ball_on_a_small_path() {
        //        index 0    1    2    3   4    5    6
        let t = tree(&[-2.0, 1.0, -1.0, 0.0, 1.0, -1.5, 0.5], 3);
        let b = t.ball_interval(1.0);
        assert_eq!(b.members, vec![2, 3, 4]);
        assert_eq!(b.hull, (1, 4));
        assert!(!b.truncated);
        let b0 = t.ball_interval(0.0);
        assert_eq!(b0.members, vec![3]);
        let big = t.ball_interval(10.0);
        assert!(big.truncated);
        assert_eq!(big.len(), 7);
    }

    #[test]
    fn ball_lies_between_hitting_times_by_direct_scan() {
        for seed in 0..50 {
            let t = sample_brownian_tree(0.01, 4.0, 0.25, seed).unwrap();
            for r in [0.1, 0.3, 0.7] {
                let b = t.ball_interval(r);
                if b.truncated {
                    continue;
                }
                let o = t.origin();
                let tr = (o..t.len()).find(|&i| t.value(i) < -r).unwrap();
                let sr = (0..o).rev().find(|&i| t.value(i) < -r).unwrap();
                assert!(b.members.iter().all(|&i| sr < i && i < tr));
                let brute: Vec<usize> = (0..t.len()).filter(|&i| t.root_distance(i) <= r).collect();
                assert_eq!(b.members, brute);
            }
        }
    }

    #[test]
    fn serialization_round_trip() {
        let t = sample_brownian_tree(0.1, 3.0, 0.25, 9).unwrap();
        let mut buf = Vec::new();
        t.write_to(&mut buf).unwrap();
        let back = FunctionTree::read_from(&buf[..]).unwrap();
        assert_eq!(back.values(), t.values());
        assert_eq!((back.step(), back.origin(), back.seed()), (0.1, t.origin(), Some(9)));
    }

    proptest! {
        #[test]
        fn pseudometric_axioms(steps in prop::collection::vec(-1.0f64..1.0, 2..60), o in 0usize..60, picks in prop::collection::vec((0usize..60, 0usize..60, 0usize..60), 20)) {
            let o = o % (steps.len() + 1);
            let mut v = vec![0.0];
            for s in &steps { v.push(v.last().unwrap() + s); }
            let base = v[o];
            let v: Vec<f64> = v.iter().map(|x| x - base).collect();
            let t = tree(&v, o);
            let n = v.len();
            for (a, b, c) in picks {
                let (a, b, c) = (a % n, b % n, c % n);
                prop_assert_eq!(t.distance(a, a), 0.0);
                prop_assert!(t.distance(a, b) >= 0.0);
                prop_assert!((t.distance(a, b) - t.distance(b, a)).abs() < 1e-12);
                prop_assert!(t.distance(a, c) <= t.distance(a, b) + t.distance(b, c) + 1e-9);
            }
            let d = t.root_distances();
            for i in 0..n {
                prop_assert!((d[i] - t.root_distance(i)).abs() < 1e-9);
            }
        }

        #[test]
        fn balls_grow_with_radius(seed in 0u64..200, r in 0.0f64..1.0, dr in 0.0f64..1.0) {
            let t = sample_brownian_tree(0.05, 2.0, 0.25, seed).unwrap();
            let small = t.ball_interval(r);
            let large = t.ball_interval(r + dr);
            prop_assert!(small.members.iter().all(|i| large.members.binary_search(i).is_ok()));
        }
    }
}
