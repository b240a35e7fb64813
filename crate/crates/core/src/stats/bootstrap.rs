use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// Point estimate with a two-sided percentile interval.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Interval {
    pub estimate: f64,
    pub lower: f64,
    pub upper: f64,
}

impl Interval {
    pub fn half_width(&self) -> f64 {
        (self.upper - self.lower) / 2.0
    }
}

/// Percentile bootstrap for `sum(x) / sum(y)` over paired samples.
pub fn bootstrap_ratio(x: &[f64], y: &[f64], resamples: usize, level: f64, seed: u64) -> Interval {
    assert_eq!(x.len(), y.len());
    let n = x.len();
    let ratio = |sx: f64, sy: f64| sx / sy;
    let estimate = ratio(x.iter().sum(), y.iter().sum());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut stats: Vec<f64> = (0..resamples)
        .map(|_| {
            let (mut sx, mut sy) = (0.0, 0.0);
            for _ in 0..n {
                let i = rng.random_range(0..n);
                sx += x[i];
                sy += y[i];
            }
            ratio(sx, sy)
        })
        .collect();
    stats.sort_by(f64::total_cmp);
    let tail = (1.0 - level) / 2.0;
    let at = |q: f64| stats[((q * (resamples - 1) as f64).round() as usize).min(resamples - 1)];
    Interval { estimate, lower: at(tail), upper: at(1.0 - tail) }
}
