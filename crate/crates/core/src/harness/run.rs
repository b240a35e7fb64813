use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metrics::estimate_alpha;
use crate::stats::{censored_geometric, CensoredCount, PairSummary, QuantileSketch, Summary};

use super::config::{Experiment, ExperimentConfig};
use super::experiments::{run_sample, Outcome, SampleContext};

/// Discard rates above this put a warning in the metadata.
pub const MAX_DISCARD_RATE: f64 = 0.5;
/// Root samples of the pilot run that fixes the metric constant.
pub const PILOT_SAMPLES: u64 = 2000;
const PILOT_TAG: u64 = 0x7069_6c6f_74;
const SKETCH_ACCURACY: f64 = 0.005;

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

pub fn mix(a: u64, b: u64) -> u64 {
    splitmix(a ^ splitmix(b))
}

/// Seed of sample `index` at size `n`.
pub fn sample_seed(master: u64, n: u32, index: u64) -> u64 {
    mix(mix(master, n as u64), index)
}

/// One statistic of one sample. Discarded samples without values appear
/// once with an empty statistic.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub experiment: String,
    pub n: u32,
    pub sample: u64,
    pub seed: u64,
    pub statistic: String,
    pub value: Option<f64>,
    /// Empty, or why the sample is excluded.
    pub discard: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StatisticSummary {
    pub n: u32,
    pub statistic: String,
    pub count: u64,
    pub mean: f64,
    pub variance: Option<f64>,
    pub median: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunMetadata {
    pub config: ExperimentConfig,
    pub units: u64,
    pub discarded: u64,
    pub discard_rate: f64,
    pub warning: Option<String>,
    /// Over kept samples only.
    pub summaries: Vec<StatisticSummary>,
    /// Experiment-specific estimates, keyed by name.
    pub derived: BTreeMap<String, f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentOutput {
    /// Sorted by `(n, sample, statistic)`.
    pub records: Vec<ResultRecord>,
    pub metadata: RunMetadata,
}

impl ExperimentOutput {
    /// Values of `statistic` at size `n` over kept samples, in sample order.
    pub fn values(&self, n: u32, statistic: &str) -> Vec<f64> {
        self.records
            .iter()
            .filter(|r| r.n == n && r.statistic == statistic && r.discard.is_empty())
            .filter_map(|r| r.value)
            .collect()
    }

    pub fn exceeds_discard_limit(&self) -> bool {
        self.metadata.discard_rate > MAX_DISCARD_RATE
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        for r in &self.records {
            w.serialize(r).map_err(|e| Error::Io(e.to_string()))?;
        }
        w.flush()?;
        Ok(())
    }

    /// Writes the CSV to `path` and the metadata next to it.
    pub fn write(&self, path: &Path) -> Result<()> {
        self.write_csv(BufWriter::new(File::create(path)?))?;
        let mut meta = BufWriter::new(File::create(metadata_path(path))?);
        serde_json::to_writer_pretty(&mut meta, &self.metadata)?;
        writeln!(meta)?;
        Ok(())
    }
}

pub fn metadata_path(csv: &Path) -> PathBuf {
    let mut s = csv.as_os_str().to_owned();
    s.push(".meta.json");
    PathBuf::from(s)
}

fn records_of(e: Experiment, n: u32, sample: u64, seed: u64, o: Outcome) -> Vec<ResultRecord> {
    let discard = o.discard.map_or("", |d| d.name()).to_string();
    let rec = |statistic: &str, value| ResultRecord {
        experiment: e.name().to_string(),
        n,
        sample,
        seed,
        statistic: statistic.to_string(),
        value,
        discard: discard.clone(),
    };
    if o.values.is_empty() {
        return vec![rec("", None)];
    }
    o.values.iter().map(|&(k, v)| rec(k, Some(v))).collect()
}

fn fan_out(
    e: Experiment,
    ctx: &SampleContext,
    master: u64,
    sizes: &[u32],
    samples: u64,
    workers: usize,
) -> Result<Vec<ResultRecord>> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::Config(e.to_string()))?;
    let units: Vec<(u32, u64)> = sizes.iter().flat_map(|&n| (0..samples).map(move |i| (n, i))).collect();
    let results: Vec<Result<Vec<ResultRecord>>> = pool.install(|| {
        units
            .par_iter()
            .map(|&(n, i)| {
                let seed = sample_seed(master, n, i);
                run_sample(e, ctx, n, seed).map(|o| records_of(e, n, i, seed, o))
            })
            .collect()
    });
    let mut records = Vec::new();
    for r in results {
        records.extend(r?);
    }
    records.sort_by(|a, b| (a.n, a.sample, &a.statistic).cmp(&(b.n, b.sample, &b.statistic)));
    Ok(records)
}

fn pairs(records: &[ResultRecord], n: u32, x: &str, y: &str) -> Vec<(f64, f64)> {
    let mut by_sample: BTreeMap<u64, (Option<f64>, Option<f64>)> = BTreeMap::new();
    for r in records.iter().filter(|r| r.n == n && r.discard.is_empty()) {
        let e = by_sample.entry(r.sample).or_default();
        if r.statistic == x {
            e.0 = r.value;
        } else if r.statistic == y {
            e.1 = r.value;
        }
    }
    by_sample.into_values().filter_map(|(a, b)| Some((a?, b?))).collect()
}

fn derived(config: &ExperimentConfig, records: &[ResultRecord], sizes: &[u32]) -> Result<BTreeMap<String, f64>> {
    let mut d = BTreeMap::new();
    let params = config.params()?;
    match config.experiment {
        Experiment::BmScaling => {
            for &n in sizes {
                let mut s = PairSummary::default();
                pairs(records, n, "H", "C").into_iter().for_each(|(h, c)| s.push(h, c));
                let k = n as f64;
                d.insert(format!("var_H/n@{n}"), s.var_x() / k);
                d.insert(format!("var_C/n@{n}"), s.var_y() / k);
                d.insert(format!("cov/n@{n}"), s.covariance() / k);
            }
        }
        Experiment::TauGeom => {
            let data: Vec<CensoredCount> = records
                .iter()
                .filter(|r| r.statistic == "tau")
                .map(|r| CensoredCount { trials: r.value.unwrap_or(0.0) as u64, observed: r.discard.is_empty() })
                .collect();
            let fit = censored_geometric(&data, params.p() / 8.0, 5.0);
            d.insert("hazard".into(), fit.hazard);
            d.insert("mean".into(), fit.mean);
            d.insert("naive_mean".into(), fit.naive_mean);
            d.insert("chi_square_p".into(), fit.test.p_value);
        }
        Experiment::Alpha => {
            let p: Vec<(u64, u64)> =
                pairs(records, 0, "d_T", "d_M").into_iter().map(|(a, b)| (a as u64, b as u64)).collect();
            if let Ok(a) = estimate_alpha(&params, &p, 2000, 0.95, config.seed) {
                d.insert("alpha".into(), a.estimate);
                d.insert("alpha_lower".into(), a.lower);
                d.insert("alpha_upper".into(), a.upper);
            }
        }
        Experiment::KIdentity => {
            for k in ["K", "K_hamburger"] {
                let bad = pairs(records, 0, "d_T", k).iter().filter(|(t, k)| t != k).count();
                d.insert(format!("violations_{k}"), bad as f64);
            }
        }
        _ => {}
    }
    Ok(d)
}

fn summaries(records: &[ResultRecord]) -> Vec<StatisticSummary> {
    let mut acc: BTreeMap<(u32, &str), (Summary, QuantileSketch)> = BTreeMap::new();
    for r in records.iter().filter(|r| r.discard.is_empty()) {
        if let Some(v) = r.value {
            let e = acc
                .entry((r.n, r.statistic.as_str()))
                .or_insert_with(|| (Summary::new(), QuantileSketch::new(SKETCH_ACCURACY)));
            e.0.push(v);
            e.1.push(v);
        }
    }
    acc.into_iter()
        .map(|((n, k), (s, q))| StatisticSummary {
            n,
            statistic: k.to_string(),
            count: s.count,
            mean: s.mean,
            variance: (s.count > 1).then(|| s.variance()),
            median: q.median(),
        })
        .collect()
}

/// Runs every `(n, sample)` unit of the experiment on `config.workers`
/// threads. Records depend only on the config: the worker count changes
/// nothing.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentOutput> {
    let params = config.validate()?;
    let sizes = config.resolved_sizes();
    let mut ctx = SampleContext { params, cap: config.cap, metric_constant: 1.0 };
    let mut pilot = BTreeMap::new();
    if config.experiment == Experiment::MetricGap {
        ctx.metric_constant = match config.metric_constant {
            Some(a) => a,
            None => {
                let seed = mix(config.seed, PILOT_TAG);
                let recs = fan_out(Experiment::Alpha, &ctx, seed, &[0], PILOT_SAMPLES, config.workers)?;
                let p: Vec<(u64, u64)> =
                    pairs(&recs, 0, "d_T", "d_M").into_iter().map(|(a, b)| (a as u64, b as u64)).collect();
                estimate_alpha(&params, &p, 200, 0.95, seed)?.estimate
            }
        };
        pilot.insert("metric_constant".to_string(), ctx.metric_constant);
    }
    let records = fan_out(config.experiment, &ctx, config.seed, &sizes, config.samples, config.workers)?;

    let units = sizes.len() as u64 * config.samples;
    let mut seen = std::collections::BTreeSet::new();
    let discarded = records.iter().filter(|r| !r.discard.is_empty() && seen.insert((r.n, r.sample))).count() as u64;
    let discard_rate = discarded as f64 / units as f64;
    let warning = (discard_rate > MAX_DISCARD_RATE).then(|| {
        format!("{discarded} of {units} samples discarded (rate {discard_rate:.3} > {MAX_DISCARD_RATE})")
    });
    let mut derived = derived(config, &records, &sizes)?;
    derived.extend(pilot);
    derived.retain(|_, v| v.is_finite());
    let metadata = RunMetadata {
        config: config.clone(),
        units,
        discarded,
        discard_rate,
        warning,
        summaries: summaries(&records),
        derived,
    };
    Ok(ExperimentOutput { records, metadata })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::ModelChoice;

    fn config(e: Experiment) -> ExperimentConfig {
        let mut c = ExperimentConfig::new(e, ModelChoice::P(0.6));
        c.samples = 40;
        c.cap = 1 << 18;
        c.sizes = vec![30];
        c
    }

    fn csv_of(o: &ExperimentOutput) -> Vec<u8> {
        let mut v = Vec::new();
        o.write_csv(&mut v).unwrap();
        v
    }

    #[test]
    fn seeds_differ_across_samples_and_sizes() {
        let s: std::collections::HashSet<u64> =
            (0..100).flat_map(|i| [sample_seed(1, 10, i), sample_seed(1, 20, i), sample_seed(2, 10, i)]).collect();
        assert_eq!(s.len(), 300);
    }

    #[test]
    fn worker_count_does_not_change_records() {
        for e in [Experiment::BmScaling, Experiment::KIdentity, Experiment::TauGeom] {
            let mut c = config(e);
            let one = run_experiment(&c).unwrap();
            c.workers = 3;
            let three = run_experiment(&c).unwrap();
            assert_eq!(csv_of(&one), csv_of(&three));
            assert_eq!(one.metadata.summaries, three.metadata.summaries);
        }
    }

    #[test]
    fn discards_are_counted_and_flagged() {
        let mut c = config(Experiment::BmScaling);
        c.sizes = vec![2000];
        c.cap = 8;
        let o = run_experiment(&c).unwrap();
        assert!(o.metadata.discarded > 20);
        assert!(o.exceeds_discard_limit());
        assert!(o.metadata.warning.is_some());
        assert!(o.values(2000, "H").len() as u64 + o.metadata.discarded == 40);
    }

    #[test]
    fn writes_csv_and_metadata() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("k.csv");
        let o = run_experiment(&config(Experiment::KIdentity)).unwrap();
        o.write(&path).unwrap();
        let body = std::fs::read_to_string(&path).unwrap();
        assert!(body.starts_with("experiment,n,sample,seed,statistic,value,discard\n"));
        assert_eq!(body.lines().count(), 1 + o.records.len());
        let meta: RunMetadata = serde_json::from_reader(File::open(metadata_path(&path)).unwrap()).unwrap();
        assert_eq!((meta.units, meta.discarded, &meta.config), (o.metadata.units, o.metadata.discarded, &o.metadata.config));
        assert_eq!(meta.derived["violations_K_hamburger"], 0.0);
    }
}
