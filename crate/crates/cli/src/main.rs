use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use hcmap_core::bijection::{build_decorated_map, write_map};
use hcmap_core::harness::{enumerate_small, run_experiment, Experiment, ExperimentConfig, ModelChoice};
use hcmap_core::word::{is_reducible, parse_word, reduce, sample_range, word_to_string, WordSlice};
use hcmap_core::{Error, ModelParams, WordWindow};

const EXIT_CONFIG: u8 = 2;
const EXIT_DISCARDS: u8 = 3;

#[derive(Parser)]
#[command(name = "hcmap", version, about = "Hamburger-cheeseburger words and FK-decorated planar maps")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct Model {
    /// Model parameter p in [0, 1).
    #[arg(long, conflicts_with = "q")]
    p: Option<f64>,
    /// Cluster weight q, converted through sqrt(q) = 2p / (1 - p).
    #[arg(long)]
    q: Option<f64>,
}

impl Model {
    fn choice(self) -> Result<ModelChoice, Error> {
        ModelChoice::from_options(self.p, self.q)
    }

    fn params(self) -> Result<ModelParams, Error> {
        self.choice()?.params()
    }
}

#[derive(Subcommand)]
enum Command {
    /// Reduced form of a word over a, b, A, B, F.
    Reduce { word: String },
    /// Letters of the random word at times start .. start + n.
    SampleWord {
        #[command(flatten)]
        model: Model,
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        start: i64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Decorated map as JSON lines, of a given word or of the sampled
    /// window X[-n, n).
    BuildMap {
        #[command(flatten)]
        model: Model,
        #[arg(long, conflicts_with_all = ["p", "q"])]
        word: Option<String>,
        #[arg(long)]
        n: Option<i64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact law of the decorated maps with n edges, as CSV.
    Enumerate {
        #[command(flatten)]
        model: Model,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Seeded Monte Carlo experiment writing sorted CSV records.
    Experiment {
        /// One of bm-scaling, tau-geom, alpha, k-identity, loop-diam,
        /// metric-gap, tree-profile, ghp-tree.
        name: String,
        #[command(flatten)]
        model: Model,
        /// Sizes, comma separated.
        #[arg(long, value_delimiter = ',')]
        n: Vec<u32>,
        #[arg(long, default_value_t = 1000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, env = "HCMAP_WORKERS")]
        workers: Option<usize>,
        /// Letters per side before a query is given up.
        #[arg(long)]
        cap: Option<u64>,
        /// Metric constant for metric-gap; estimated when absent.
        #[arg(long)]
        metric_constant: Option<f64>,
        /// CSV path; metadata goes to <out>.meta.json. Stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn output(path: &Option<PathBuf>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Reduce { word } => {
            let w = parse_word(&word)?;
            let r = reduce(&w);
            println!("{}", if r.is_empty() { "empty".to_string() } else { r.to_string() });
        }
        Command::SampleWord { model, n, start, seed } => {
            let params = model.params()?;
            let end = start + n as i64 - 1;
            println!("{}", word_to_string(&sample_range(seed, start, end, &params)));
        }
        Command::BuildMap { model, word, n, seed, out } => {
            let map = match (word, n) {
                (Some(word), None) => {
                    let w = parse_word(&word)?;
                    build_decorated_map(&WordSlice::from_word(&w), is_reducible(&w))?
                }
                (None, Some(n)) if n > 0 => {
                    let mut w = WordWindow::new(seed, model.params()?);
                    build_decorated_map(&w.slice(-n, n - 1)?, false)?
                }
                _ => return Err(Error::Config("give either --word or a positive --n with --p or --q".into())),
            };
            let mut o = output(&out)?;
            write_map(&map, &mut o)?;
            o.flush()?;
        }
        Command::Enumerate { model, n, out } => {
            let table = enumerate_small(n, &model.params()?)?;
            let mut w = csv::Writer::from_writer(output(&out)?);
            let io = |e: csv::Error| Error::Io(e.to_string());
            w.write_record(["code", "words", "vertices", "dual_vertices", "flexible", "loops", "word_probability", "fk_probability"])
                .map_err(io)?;
            for r in &table.rows {
                let code: Vec<String> = r.code.iter().map(u32::to_string).collect();
                w.write_record([
                    code.join("."),
                    r.words.join(" "),
                    r.vertices.to_string(),
                    r.dual_vertices.to_string(),
                    r.flexible.to_string(),
                    r.loops.to_string(),
                    r.word_probability.to_string(),
                    r.fk_probability.to_string(),
                ])
                .map_err(io)?;
            }
            w.flush()?;
            eprintln!(
                "n={} reducible words={} maps={} bijective={} loops=#F+1: {} laws agree: {}",
                table.n,
                table.reducible_words,
                table.rows.len(),
                table.is_bijective(),
                table.loops_match_flexibles(),
                table.laws_agree()
            );
        }
        Command::Experiment { name, model, n, samples, seed, workers, cap, metric_constant, out } => {
            let experiment: Experiment = name.parse()?;
            let mut config = ExperimentConfig::new(experiment, model.choice()?);
            config.sizes = n;
            config.samples = samples;
            config.seed = seed;
            config.workers = workers.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
            if let Some(cap) = cap {
                config.cap = cap;
            }
            config.metric_constant = metric_constant;
            config.out = out.clone();
            let result = run_experiment(&config)?;
            match &out {
                Some(path) => result.write(path)?,
                None => {
                    let mut o = io::stdout().lock();
                    result.write_csv(&mut o)?;
                }
            }
            for (k, v) in &result.metadata.derived {
                eprintln!("{k} = {v}");
            }
            if let Some(warning) = &result.metadata.warning {
                eprintln!("warning: {warning}");
            }
            if result.exceeds_discard_limit() {
                return Ok(ExitCode::from(EXIT_DISCARDS));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Config(_) | Error::Parameter(_) | Error::Letter(_) | Error::TooLarge { .. } => {
                    ExitCode::from(EXIT_CONFIG)
                }
                _ => ExitCode::FAILURE,
            }
        }
    }
}
