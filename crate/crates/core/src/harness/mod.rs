//! Experiment configuration, seeded parallel runs with deterministic
//! output, and exact small-volume enumeration.
mod config;
mod experiments;
mod run;

pub use config::{Experiment, ExperimentConfig, ModelChoice};
pub use experiments::{
    run_sample, Discard, Outcome, SampleContext, GAP_EPS, GAP_RANGE, GAP_WINDOW, GHP_HORIZON, GHP_RADIUS,
    GHP_RADIUS_STEP, GHP_TRUNCATION, LOOP_WINDOW,
};
pub use run::{
    metadata_path, mix, run_experiment, sample_seed, ExperimentOutput, ResultRecord, RunMetadata, StatisticSummary,
    MAX_DISCARD_RATE, PILOT_SAMPLES,
};

use crate::bijection::{finite_volume_law_check, sqrt_q_rational, LawTable, MAX_ENUMERATION_N};
use crate::error::{Error, Result};
use crate::word::ModelParams;

/// Exact law of the decorated maps with `n` edges at the given parameter.
pub fn enumerate_small(n: usize, params: &ModelParams) -> Result<LawTable> {
    if n > MAX_ENUMERATION_N {
        return Err(Error::TooLarge { n, max: MAX_ENUMERATION_N });
    }
    finite_volume_law_check(n, sqrt_q_rational(params.q())?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_at_q_nine() {
        let t = enumerate_small(2, &ModelParams::from_q(9.0).unwrap()).unwrap();
        assert!(t.is_bijective() && t.loops_match_flexibles() && t.laws_agree());
        assert_eq!(t.reducible_words, 36);
        assert!(matches!(enumerate_small(5, &ModelParams::from_p(0.6).unwrap()), Err(Error::TooLarge { .. })));
    }
}
