use crate::stats::{chi_square, ChiSquareResult};
use statrs::distribution::{ChiSquared, ContinuousCDF};

/// A first-success count that may be right-censored: `trials` Bernoulli
/// trials were seen, and the last one succeeded when `observed` is set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CensoredCount {
    pub trials: u64,
    pub observed: bool,
}

/// Fit of a geometric law to censored first-success counts.
#[derive(Clone, Debug, PartialEq)]
pub struct GeometricFit {
    pub samples: usize,
    pub censored: usize,
    /// Maximum likelihood success probability: successes over trials.
    pub hazard: f64,
    /// Mean `1 / hazard` of the fitted law.
    pub mean: f64,
    /// Plain average of the uncensored counts, biased low when censoring
    /// removes long runs.
    pub naive_mean: f64,
    /// Hazard chi-square against the reference probability.
    pub test: ChiSquareResult,
}

/// Compares per-trial hazards with a reference success probability `h0`.
///
/// At trial `j`, `n_j` samples are still at risk and `d_j` succeed. Under a
/// geometric law `d_j` is binomial `(n_j, h0)` independently over `j`, and
/// censoring after an observed failure does not change that. Trials are
/// pooled from the tail until every cell expects at least `min_expected`
/// successes.
pub fn censored_geometric(data: &[CensoredCount], h0: f64, min_expected: f64) -> GeometricFit {
    let max = data.iter().map(|c| c.trials).max().unwrap_or(0) as usize;
    let mut at_risk = vec![0f64; max + 2];
    let mut events = vec![0f64; max + 2];
    for c in data {
        // at risk on trials 1..=trials
        at_risk[1] += 1.0;
        at_risk[c.trials as usize + 1] -= 1.0;
        if c.observed {
            events[c.trials as usize] += 1.0;
        }
    }
    for j in 1..at_risk.len() {
        at_risk[j] += at_risk[j - 1];
    }
    let successes: f64 = events.iter().sum();
    let exposure: f64 = data.iter().map(|c| c.trials as f64).sum();
    let hazard = successes / exposure;

    // cells of successes and failures per pooled block of trials
    let mut observed = Vec::new();
    let mut expected = Vec::new();
    let (mut n, mut d) = (0.0, 0.0);
    for j in 1..=max {
        n += at_risk[j];
        d += events[j];
        let tail_left: f64 = at_risk[j + 1..=max].iter().sum::<f64>() * h0;
        if n * h0 >= min_expected && n * (1.0 - h0) >= min_expected && tail_left >= min_expected {
            observed.extend([d, n - d]);
            expected.extend([n * h0, n * (1.0 - h0)]);
            n = 0.0;
            d = 0.0;
        }
    }
    if n > 0.0 {
        observed.extend([d, n - d]);
        expected.extend([n * h0, n * (1.0 - h0)]);
    }
    // one binomial per block, so one degree of freedom each
    let blocks = observed.len() / 2;
    let statistic = chi_square(&observed, &expected, 0).statistic;
    let p_value = ChiSquared::new(blocks.max(1) as f64).expect("positive df").sf(statistic);
    let test = ChiSquareResult { statistic, df: blocks, p_value };

    let uncensored: Vec<f64> = data.iter().filter(|c| c.observed).map(|c| c.trials as f64).collect();
    GeometricFit {
        samples: data.len(),
        censored: data.len() - uncensored.len(),
        hazard,
        mean: 1.0 / hazard,
        naive_mean: uncensored.iter().sum::<f64>() / uncensored.len().max(1) as f64,
        test,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn sample(h: f64, censor_at: u64, n: usize, seed: u64) -> Vec<CensoredCount> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..n)
            .map(|_| {
                // censoring time drawn independently of the trials
                let c = rng.random_range(1..=censor_at);
                let mut k = 0;
                loop {
                    k += 1;
                    if rng.random::<f64>() < h {
                        return CensoredCount { trials: k, observed: true };
                    }
                    if k == c {
                        return CensoredCount { trials: k, observed: false };
                    }
                }
            })
            .collect()
    }

    #[test]
    fn recovers_hazard_under_censoring() {
        let data = sample(0.075, 30, 20_000, 1);
        let fit = censored_geometric(&data, 0.075, 5.0);
        assert!(fit.censored > 1000);
        assert!((fit.mean - 1.0 / 0.075).abs() / (1.0 / 0.075) < 0.05, "{}", fit.mean);
        assert!(fit.naive_mean < fit.mean);
        assert!(fit.test.p_value > 0.001, "{:?}", fit.test);
    }

    #[test]
    fn rejects_wrong_hazard() {
        let data = sample(0.1, 40, 10_000, 2);
        let fit = censored_geometric(&data, 0.075, 5.0);
        assert!(fit.test.p_value < 1e-6);
    }

    #[test]
    fn uncensored_geometric_mean() {
        let data: Vec<CensoredCount> =
            [1, 2, 3, 4].iter().map(|&t| CensoredCount { trials: t, observed: true }).collect();
        let fit = censored_geometric(&data, 0.4, 0.1);
        assert_eq!(fit.hazard, 4.0 / 10.0);
        assert_eq!(fit.naive_mean, 2.5);
    }
}
