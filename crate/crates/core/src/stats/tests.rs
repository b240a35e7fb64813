use statrs::distribution::{ChiSquared, ContinuousCDF, Normal};

/// Two-sample Kolmogorov-Smirnov statistic with its asymptotic p-value.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KsResult {
    pub distance: f64,
    pub p_value: f64,
}

pub fn ks_two_sample(a: &[f64], b: &[f64]) -> KsResult {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    x.sort_by(f64::total_cmp);
    y.sort_by(f64::total_cmp);
    let (n, m) = (x.len(), y.len());
    let (mut i, mut j) = (0, 0);
    let mut d: f64 = 0.0;
    while i < n && j < m {
        let v = x[i].min(y[j]);
        while i < n && x[i] <= v {
            i += 1;
        }
        while j < m && y[j] <= v {
            j += 1;
        }
        d = d.max((i as f64 / n as f64 - j as f64 / m as f64).abs());
    }
    let ne = (n * m) as f64 / (n + m) as f64;
    let lambda = (ne.sqrt() + 0.12 + 0.11 / ne.sqrt()) * d;
    KsResult { distance: d, p_value: kolmogorov_q(lambda) }
}

/// `P(K > lambda)` for the Kolmogorov distribution.
fn kolmogorov_q(lambda: f64) -> f64 {
    if lambda < 0.2 {
        return 1.0;
    }
    let mut sum = 0.0;
    for k in 1..=100 {
        let term = 2.0 * (-1f64).powi(k - 1) * (-2.0 * (k as f64 * lambda).powi(2)).exp();
        sum += term;
        if term.abs() < 1e-12 {
            break;
        }
    }
    sum.clamp(0.0, 1.0)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChiSquareResult {
    pub statistic: f64,
    pub df: usize,
    pub p_value: f64,
}

/// Pearson goodness of fit. `fitted` is the number of parameters estimated
/// from the data.
pub fn chi_square(observed: &[f64], expected: &[f64], fitted: usize) -> ChiSquareResult {
    let statistic: f64 = observed.iter().zip(expected).map(|(o, e)| (o - e).powi(2) / e).sum();
    let df = observed.len().saturating_sub(1 + fitted).max(1);
    let p_value = ChiSquared::new(df as f64).expect("positive df").sf(statistic);
    ChiSquareResult { statistic, df, p_value }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MannWhitneyResult {
    pub u: f64,
    pub z: f64,
    /// p-value of the alternative "values of `a` tend to be smaller".
    pub p_less: f64,
}

/// Mann-Whitney U of `a` against `b` with the normal approximation and tie
/// correction.
pub fn mann_whitney(a: &[f64], b: &[f64]) -> MannWhitneyResult {
    let (n1, n2) = (a.len() as f64, b.len() as f64);
    let mut all: Vec<(f64, bool)> = a.iter().map(|&x| (x, true)).chain(b.iter().map(|&x| (x, false))).collect();
    all.sort_by(|p, q| p.0.total_cmp(&q.0));
    let mut rank_a = 0.0;
    let mut ties = 0.0;
    let mut i = 0;
    while i < all.len() {
        let mut j = i;
        while j < all.len() && all[j].0 == all[i].0 {
            j += 1;
        }
        let r = (i + j + 1) as f64 / 2.0;
        let t = (j - i) as f64;
        ties += t * t * t - t;
        rank_a += r * all[i..j].iter().filter(|p| p.1).count() as f64;
        i = j;
    }
    let u = rank_a - n1 * (n1 + 1.0) / 2.0;
    let n = n1 + n2;
    let var = n1 * n2 / 12.0 * ((n + 1.0) - ties / (n * (n - 1.0)));
    let z = (u - n1 * n2 / 2.0) / var.sqrt();
    let p_less = Normal::new(0.0, 1.0).expect("unit normal").cdf(z);
    MannWhitneyResult { u, z, p_less }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn ks_of_identical_samples_is_zero() {
        let a = [1.0, 2.0, 3.0];
        let r = ks_two_sample(&a, &a);
        assert_eq!(r.distance, 0.0);
        assert_eq!(r.p_value, 1.0);
    }

    #[test]
    fn ks_distance_matches_definition() {
        // ECDFs differ most at 2: 2/3 against 0
        let r = ks_two_sample(&[1.0, 2.0, 3.0], &[2.5, 4.0]);
        assert!((r.distance - 2.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn ks_critical_value() {
        // the classical 5% point of the Kolmogorov law is about 1.358
        assert!((kolmogorov_q(1.358) - 0.05).abs() < 1e-3);
    }

    #[test]
    fn chi_square_of_exact_fit() {
        let r = chi_square(&[10.0, 20.0, 30.0], &[10.0, 20.0, 30.0], 0);
        assert_eq!(r.statistic, 0.0);
        assert_eq!(r.df, 2);
        assert!((r.p_value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn chi_square_tail() {
        // 5.991 is the 95% point of chi-square with two degrees of freedom
        let r = chi_square(&[15.0, 5.0, 10.0], &[10.0, 10.0, 10.0], 0);
        assert!((r.statistic - 5.0).abs() < 1e-12);
        assert!((r.p_value - (-2.5f64).exp()).abs() < 1e-9);
    }

    #[test]
    fn mann_whitney_small_case() {
        // a entirely below b: U = 0
        let r = mann_whitney(&[1.0, 2.0, 3.0], &[4.0, 5.0, 6.0, 7.0]);
        assert_eq!(r.u, 0.0);
        assert!(r.p_less < 0.05);
        let r = mann_whitney(&[4.0, 5.0, 6.0, 7.0], &[1.0, 2.0, 3.0]);
        assert_eq!(r.u, 12.0);
        assert!(r.p_less > 0.95);
    }

    #[test]
    fn same_law_gives_uniform_looking_p_values() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut small = 0;
        for _ in 0..200 {
            let a: Vec<f64> = (0..100).map(|_| rng.random()).collect();
            let b: Vec<f64> = (0..150).map(|_| rng.random()).collect();
            if ks_two_sample(&a, &b).p_value < 0.05 {
                small += 1;
            }
        }
        assert!(small < 25, "{small}");
    }
}
