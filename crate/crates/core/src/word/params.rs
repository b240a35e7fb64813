use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The single model parameter `p` together with the derived `q` and `alpha`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    p: f64,
}

impl ModelParams {
    pub fn from_p(p: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&p) || p.is_nan() {
            return Err(Error::Parameter(format!("p must lie in [0, 1), got {p}")));
        }
        Ok(ModelParams { p })
    }

    /// Inverts `sqrt(q) = 2p / (1 - p)`, i.e. `p = sqrt(q) / (2 + sqrt(q))`.
    pub fn from_q(q: f64) -> Result<Self> {
        if !(q >= 0.0) || !q.is_finite() {
            return Err(Error::Parameter(format!("q must be a finite nonnegative number, got {q}")));
        }
        let s = q.sqrt();
        Self::from_p(s / (2.0 + s))
    }

    #[inline]
    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn sqrt_q(&self) -> f64 {
        2.0 * self.p / (1.0 - self.p)
    }

    pub fn q(&self) -> f64 {
        let s = self.sqrt_q();
        s * s
    }

    /// Limiting correlation parameter of the burger-count walks, `max(1 - 2p, 0)`.
    pub fn alpha(&self) -> f64 {
        (1.0 - 2.0 * self.p).max(0.0)
    }

    /// Probabilities of `a, b, A, B, F`.
    pub fn letter_probabilities(&self) -> [f64; 5] {
        let p = self.p;
        [0.25, 0.25, (1.0 - p) / 4.0, (1.0 - p) / 4.0, p / 2.0]
    }

    /// Whether the supercritical regime (q > 4) applies.
    pub fn is_supercritical(&self) -> bool {
        self.p > 0.5
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q_and_p_agree() {
        for &p in &[0.0, 0.1, 0.25, 0.5, 0.6, 0.9] {
            let m = ModelParams::from_p(p).unwrap();
            let back = ModelParams::from_q(m.q()).unwrap();
            assert!((back.p() - p).abs() < 1e-12);
            assert!((m.sqrt_q() - 2.0 * p / (1.0 - p)).abs() < 1e-12);
        }
        // q = 4 is the transition point p = 1/2, q = 9 gives p = 3/5.
        assert!((ModelParams::from_q(4.0).unwrap().p() - 0.5).abs() < 1e-15);
        assert!((ModelParams::from_q(9.0).unwrap().p() - 0.6).abs() < 1e-15);
    }

    #[test]
    fn alpha_regimes() {
        assert_eq!(ModelParams::from_p(0.6).unwrap().alpha(), 0.0);
        assert!((ModelParams::from_p(0.25).unwrap().alpha() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(ModelParams::from_p(1.0).is_err());
        assert!(ModelParams::from_p(-0.1).is_err());
        assert!(ModelParams::from_p(f64::NAN).is_err());
        assert!(ModelParams::from_q(-1.0).is_err());
    }

    #[test]
    fn probabilities_at_p_06() {
        let pr = ModelParams::from_p(0.6).unwrap().letter_probabilities();
        let want = [0.25, 0.25, 0.1, 0.1, 0.3];
        for (a, b) in pr.iter().zip(want) {
            assert!((a - b).abs() < 1e-15);
        }
        let pr0 = ModelParams::from_p(0.0).unwrap().letter_probabilities();
        assert_eq!(pr0[4], 0.0);
        assert_eq!(pr0[2], 0.25);
    }
}
