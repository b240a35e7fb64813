use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Quantile sketch with relative accuracy `accuracy` on positive values.
///
/// Values are counted in logarithmic buckets `(γ^(i-1), γ^i]` with
/// `γ = (1 + accuracy) / (1 - accuracy)`; zero and negative values are
/// bucketed by magnitude on their own side. Merging adds bucket counts, so
/// it is exact, associative and commutative, and any reported quantile is
/// within relative error `accuracy` of a value of the requested rank.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuantileSketch {
    accuracy: f64,
    positive: BTreeMap<i32, u64>,
    negative: BTreeMap<i32, u64>,
    zeros: u64,
    count: u64,
}

impl QuantileSketch {
    pub fn new(accuracy: f64) -> Self {
        assert!(accuracy > 0.0 && accuracy < 1.0);
        QuantileSketch { accuracy, positive: BTreeMap::new(), negative: BTreeMap::new(), zeros: 0, count: 0 }
    }

    fn gamma(&self) -> f64 {
        (1.0 + self.accuracy) / (1.0 - self.accuracy)
    }

    fn key(&self, x: f64) -> i32 {
        (x.ln() / self.gamma().ln()).ceil() as i32
    }

    fn value(&self, key: i32) -> f64 {
        2.0 * self.gamma().powi(key) / (self.gamma() + 1.0)
    }

    pub fn push(&mut self, x: f64) {
        self.count += 1;
        if x > f64::MIN_POSITIVE {
            *self.positive.entry(self.key(x)).or_default() += 1;
        } else if x < -f64::MIN_POSITIVE {
            *self.negative.entry(self.key(-x)).or_default() += 1;
        } else {
            self.zeros += 1;
        }
    }

    pub fn merge(&mut self, other: &QuantileSketch) {
        assert_eq!(self.accuracy, other.accuracy, "sketches must share accuracy");
        for (&k, &c) in &other.positive {
            *self.positive.entry(k).or_default() += c;
        }
        for (&k, &c) in &other.negative {
            *self.negative.entry(k).or_default() += c;
        }
        self.zeros += other.zeros;
        self.count += other.count;
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    /// Value of rank `floor(q (count - 1))` in sorted order.
    pub fn quantile(&self, q: f64) -> Option<f64> {
        if self.count == 0 {
            return None;
        }
        let rank = (q.clamp(0.0, 1.0) * (self.count - 1) as f64).floor() as u64;
        let mut seen = 0;
        for (&k, &c) in self.negative.iter().rev() {
            seen += c;
            if seen > rank {
                return Some(-self.value(k));
            }
        }
        seen += self.zeros;
        if seen > rank {
            return Some(0.0);
        }
        for (&k, &c) in &self.positive {
            seen += c;
            if seen > rank {
                return Some(self.value(k));
            }
        }
        unreachable!("rank below count")
    }

    pub fn median(&self) -> Option<f64> {
        self.quantile(0.5)
    }
}
