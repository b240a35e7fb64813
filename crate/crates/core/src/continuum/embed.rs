use std::f64::consts::PI;
use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use statrs::function::erf::erfc;

use crate::error::{Error, Result};

const TABLE_SIZE: usize = 1 << 14;

/// `P(tau <= t)` for the exit time `tau` of standard Brownian motion from
/// `(-1, 1)`. Small times use the image series in `erfc`, large times the
/// eigenfunction series; both converge within a few terms on their side.
pub fn exit_time_cdf(t: f64) -> f64 {
    if t <= 0.0 {
        return 0.0;
    }
    if t < 1.0 {
        let mut s = 0.0;
        for k in 0..8 {
            let x = (2 * k + 1) as f64 / (2.0 * t).sqrt();
            let term = 2.0 * erfc(x);
            s += if k % 2 == 0 { term } else { -term };
        }
        s.clamp(0.0, 1.0)
    } else {
        let mut s = 0.0;
        for k in 0..8 {
            let m = (2 * k + 1) as f64;
            let term = (-m * m * PI * PI * t / 8.0).exp() / m;
            s += if k % 2 == 0 { term } else { -term };
        }
        (1.0 - 4.0 / PI * s).clamp(0.0, 1.0)
    }
}

/// Inverse of [`exit_time_cdf`] tabulated at `TABLE_SIZE + 1` levels and
/// interpolated linearly; the last cell uses the exponential tail.
#[derive(Debug)]
pub struct ExitTimeTable {
    quantiles: Vec<f64>,
}

impl ExitTimeTable {
    pub fn global() -> &'static ExitTimeTable {
        static TABLE: OnceLock<ExitTimeTable> = OnceLock::new();
        TABLE.get_or_init(ExitTimeTable::build)
    }

    fn build() -> Self {
        let mut quantiles = Vec::with_capacity(TABLE_SIZE);
        quantiles.push(0.0);
        for k in 1..TABLE_SIZE {
            let u = k as f64 / TABLE_SIZE as f64;
            let (mut lo, mut hi) = (0.0f64, 64.0f64);
            for _ in 0..80 {
                let mid = 0.5 * (lo + hi);
                if exit_time_cdf(mid) < u {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            quantiles.push(0.5 * (lo + hi));
        }
        ExitTimeTable { quantiles }
    }

    pub fn quantile(&self, u: f64) -> f64 {
        let x = u * TABLE_SIZE as f64;
        let k = x.floor() as usize;
        if k + 1 >= TABLE_SIZE {
            // P(tau > t) ~ (4 / pi) exp(-pi^2 t / 8)
            let tail = (1.0 - u).max(f64::MIN_POSITIVE);
            return (8.0 / (PI * PI) * (4.0 / (PI * tail)).ln()).max(self.quantiles[TABLE_SIZE - 1]);
        }
        let f = x - k as f64;
        self.quantiles[k] * (1.0 - f) + self.quantiles[k + 1] * f
    }

    pub fn sample(&self, rng: &mut impl Rng) -> f64 {
        self.quantile(rng.random::<f64>())
    }
}

/// Brownian motion at integer times `1..=len` coupled to a simple random
/// walk by the Skorokhod embedding.
///
/// The walk `steps` (each `+1` or `-1`) is read as the sequence of levels
/// that a standard Brownian motion `B` visits at its successive exits from
/// unit intervals; the exit durations are independent of the directions and
/// are drawn here. At each integer time `u` the value reported is the walk
/// level of the last exit before `u`, which is within 1 of `B(u)`. Fails
/// when the walk is too short to reach time `len`.
pub fn embed_walk(steps: &[i8], len: usize, seed: u64, stream: u64) -> Result<Vec<f64>> {
    let table = ExitTimeTable::global();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    let mut out = Vec::with_capacity(len);
    let mut level = 0i64;
    let mut clock = 0.0f64;
    let mut k = 0usize;
    let mut next = table.sample(&mut rng);
    for u in 1..=len {
        while clock + next <= u as f64 {
            let s = *steps.get(k).ok_or_else(|| Error::Parameter(format!("walk of {} steps ends before time {u}", steps.len())))?;
            clock += next;
            level += s as i64;
            k += 1;
            next = table.sample(&mut rng);
        }
        out.push(level as f64);
    }
    Ok(out)
}
