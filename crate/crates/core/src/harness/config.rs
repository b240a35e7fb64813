use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::word::{ModelParams, DEFAULT_CAP};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Experiment {
    BmScaling,
    TauGeom,
    Alpha,
    KIdentity,
    LoopDiam,
    MetricGap,
    TreeProfile,
    GhpTree,
}

impl Experiment {
    pub const ALL: [Experiment; 8] = [
        Experiment::BmScaling,
        Experiment::TauGeom,
        Experiment::Alpha,
        Experiment::KIdentity,
        Experiment::LoopDiam,
        Experiment::MetricGap,
        Experiment::TreeProfile,
        Experiment::GhpTree,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Experiment::BmScaling => "bm-scaling",
            Experiment::TauGeom => "tau-geom",
            Experiment::Alpha => "alpha",
            Experiment::KIdentity => "k-identity",
            Experiment::LoopDiam => "loop-diam",
            Experiment::MetricGap => "metric-gap",
            Experiment::TreeProfile => "tree-profile",
            Experiment::GhpTree => "ghp-tree",
        }
    }

    /// Whether samples depend on a size `n`. The others record `n = 0`.
    pub fn uses_sizes(self) -> bool {
        !matches!(self, Experiment::TauGeom | Experiment::Alpha | Experiment::KIdentity)
    }

    /// Bubbles and metric-gap windows are built as whole maps, so their
    /// windows stay small.
    pub fn default_cap(self) -> u64 {
        match self {
            Experiment::Alpha | Experiment::KIdentity | Experiment::TauGeom => 1 << 20,
            Experiment::MetricGap => 1 << 22,
            Experiment::BmScaling | Experiment::TreeProfile | Experiment::GhpTree => 1 << 24,
            _ => DEFAULT_CAP,
        }
    }

    pub fn default_sizes(self) -> Vec<u32> {
        match self {
            Experiment::BmScaling => vec![10_000],
            Experiment::TreeProfile => vec![100],
            Experiment::LoopDiam => vec![25, 50, 100, 200],
            Experiment::MetricGap => vec![50, 100, 200],
            Experiment::GhpTree => vec![50, 200],
            _ => vec![0],
        }
    }
}

impl fmt::Display for Experiment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Experiment {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Experiment::ALL.into_iter().find(|e| e.name() == s).ok_or_else(|| {
            let names: Vec<&str> = Experiment::ALL.iter().map(|e| e.name()).collect();
            Error::Config(format!("unknown experiment {s:?}; expected one of {}", names.join(", ")))
        })
    }
}

/// The model parameter as given: `p` directly or `q` through
/// `sqrt(q) = 2p / (1 - p)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelChoice {
    P(f64),
    Q(f64),
}

impl ModelChoice {
    /// Exactly one of the two must be given.
    pub fn from_options(p: Option<f64>, q: Option<f64>) -> Result<Self> {
        match (p, q) {
            (Some(p), None) => Ok(ModelChoice::P(p)),
            (None, Some(q)) => Ok(ModelChoice::Q(q)),
            (Some(_), Some(_)) => Err(Error::Config("give either p or q, not both".into())),
            (None, None) => Err(Error::Config("one of p or q is required".into())),
        }
    }

    pub fn params(self) -> Result<ModelParams> {
        match self {
            ModelChoice::P(p) => ModelParams::from_p(p),
            ModelChoice::Q(q) => ModelParams::from_q(q),
        }
        .map_err(|e| Error::Config(e.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub experiment: Experiment,
    pub model: ModelChoice,
    /// Sizes; empty means the experiment's defaults.
    pub sizes: Vec<u32>,
    pub samples: u64,
    pub seed: u64,
    pub workers: usize,
    pub cap: u64,
    /// Metric constant for `metric-gap`; estimated from a pilot run when
    /// absent.
    pub metric_constant: Option<f64>,
    pub out: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn new(experiment: Experiment, model: ModelChoice) -> Self {
        ExperimentConfig {
            experiment,
            model,
            sizes: Vec::new(),
            samples: 1000,
            seed: 0,
            workers: 1,
            cap: experiment.default_cap(),
            metric_constant: None,
            out: None,
        }
    }

    pub fn params(&self) -> Result<ModelParams> {
        self.model.params()
    }

    pub fn resolved_sizes(&self) -> Vec<u32> {
        if !self.experiment.uses_sizes() {
            vec![0]
        } else if self.sizes.is_empty() {
            self.experiment.default_sizes()
        } else {
            self.sizes.clone()
        }
    }

    pub fn validate(&self) -> Result<ModelParams> {
        let params = self.params()?;
        if self.samples == 0 {
            return Err(Error::Config("samples must be at least 1".into()));
        }
        if self.workers == 0 {
            return Err(Error::Config("workers must be at least 1".into()));
        }
        if self.cap == 0 {
            return Err(Error::Config("cap must be positive".into()));
        }
        if self.experiment.uses_sizes() && self.sizes.contains(&0) {
            return Err(Error::Config("sizes must be positive".into()));
        }
        if let Some(a) = self.metric_constant {
            if !(a > 0.0 && a.is_finite()) {
                return Err(Error::Config(format!("metric constant must be positive, got {a}")));
            }
        }
        let needs_supercritical = matches!(self.experiment, Experiment::Alpha | Experiment::MetricGap);
        if needs_supercritical && !params.is_supercritical() {
            return Err(Error::Config(format!("{} needs p > 1/2 (q > 4)", self.experiment)));
        }
        Ok(params)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for e in Experiment::ALL {
            assert_eq!(e.name().parse::<Experiment>().unwrap(), e);
        }
        assert!(matches!("bm".parse::<Experiment>(), Err(Error::Config(_))));
    }

    #[test]
    fn exactly_one_model_parameter() {
        assert!(ModelChoice::from_options(Some(0.6), Some(9.0)).is_err());
        assert!(ModelChoice::from_options(None, None).is_err());
        let q = ModelChoice::from_options(None, Some(9.0)).unwrap().params().unwrap();
        assert!((q.p() - 0.6).abs() < 1e-12);
    }

    #[test]
    fn validation() {
        let mut c = ExperimentConfig::new(Experiment::LoopDiam, ModelChoice::P(0.6));
        assert!(c.validate().is_ok());
        assert_eq!(c.resolved_sizes(), vec![25, 50, 100, 200]);
        c.sizes = vec![10, 0];
        assert!(c.validate().is_err());
        c.sizes = vec![10];
        c.samples = 0;
        assert!(c.validate().is_err());
        let c = ExperimentConfig::new(Experiment::Alpha, ModelChoice::P(0.3));
        assert!(matches!(c.validate(), Err(Error::Config(_))));
        let c = ExperimentConfig::new(Experiment::BmScaling, ModelChoice::P(1.5));
        assert!(matches!(c.validate(), Err(Error::Config(_))));
    }
}
