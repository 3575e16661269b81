//! Timing harness comparing the crossing-finding methods on seeded random
//! pairs.
//!
//! Every accepted trial first runs each method once and requires canonically
//! equal results; that run also warms caches. Then each method is timed on
//! the same pair, only around the boolean call. A pair that any method
//! rejects as unsupported is replaced by the next seed in the stream and
//! counted.

use std::fmt::Write as _;
use std::time::Instant;

use arcbool::boolean::{boolean_with_stats, Method};
use arcbool::compare::compare_results;
use arcbool::generate::{random_pair, trial_seed};
use arcbool::{Error, ErrorClass, Op, Result, Tolerances};

#[derive(Debug, Clone, PartialEq)]
pub struct BenchConfig {
    pub sizes: Vec<usize>,
    pub trials: usize,
    pub methods: Vec<Method>,
    pub seed: u64,
    pub arc_fraction: f64,
    pub op: Op,
    /// Timed calls per method and trial; the trial's time is their mean.
    pub repeat: usize,
    pub tol: Tolerances,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            sizes: vec![5, 10, 20, 30, 40, 50],
            trials: 100,
            methods: Method::ALL.to_vec(),
            seed: 1,
            arc_fraction: arcbool::generate::DEFAULT_ARC_FRACTION,
            op: Op::Intersection,
            repeat: 3,
            tol: Tolerances::default(),
        }
    }
}

/// One method on one trial.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sample {
    pub seconds: f64,
    pub pair_tests: u64,
    pub events: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trial {
    pub n: usize,
    pub seed: u64,
    /// Parallel to `BenchConfig::methods`.
    pub samples: Vec<Sample>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub n: usize,
    pub method: Method,
    pub trials: usize,
    pub mean: f64,
    pub sd: f64,
    pub pair_tests: f64,
    pub events: f64,
    /// Pairs replaced for this n.
    pub regenerated: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchReport {
    pub rows: Vec<Row>,
    pub trials: Vec<Trial>,
}

/// Upper bound on replaced pairs per size before giving up.
fn regen_cap(trials: usize) -> usize {
    10 * trials + 100
}

fn mean_sd(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = if xs.len() > 1 { xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0) } else { 0.0 };
    (mean, var.sqrt())
}

fn unsupported(e: &Error) -> bool {
    e.class() == ErrorClass::Unsupported
}

pub fn run(cfg: &BenchConfig) -> Result<BenchReport> {
    assert!(cfg.trials >= 1 && cfg.repeat >= 1 && !cfg.methods.is_empty());
    let mut rows = Vec::new();
    let mut all = Vec::new();
    for &n in &cfg.sizes {
        let mut trials = Vec::with_capacity(cfg.trials);
        let mut regenerated = 0;
        let mut stream = 0u64;
        while trials.len() < cfg.trials {
            let seed = trial_seed(cfg.seed, n, stream);
            stream += 1;
            match trial(cfg, n, seed) {
                Ok(t) => trials.push(t),
                Err(e) if unsupported(&e) || matches!(e, Error::GenerationFailed(_)) => {
                    regenerated += 1;
                    if regenerated > regen_cap(cfg.trials) {
                        return Err(e);
                    }
                }
                Err(e) => return Err(e),
            }
        }
        for (mi, &method) in cfg.methods.iter().enumerate() {
            let col: Vec<Sample> = trials.iter().map(|t| t.samples[mi]).collect();
            let times: Vec<f64> = col.iter().map(|s| s.seconds).collect();
            let (mean, sd) = mean_sd(&times);
            let k = col.len() as f64;
            rows.push(Row {
                n,
                method,
                trials: col.len(),
                mean,
                sd,
                pair_tests: col.iter().map(|s| s.pair_tests as f64).sum::<f64>() / k,
                events: col.iter().map(|s| s.events as f64).sum::<f64>() / k,
                regenerated,
            });
        }
        all.extend(trials);
    }
    Ok(BenchReport { rows, trials: all })
}

/// Gate and time one pair.
pub fn trial(cfg: &BenchConfig, n: usize, seed: u64) -> Result<Trial> {
    let (a, b) = random_pair(seed, n, cfg.arc_fraction, &cfg.tol)?;
    let mut gate = Vec::with_capacity(cfg.methods.len());
    for &m in &cfg.methods {
        gate.push(boolean_with_stats(&a, &b, cfg.op, m)?);
    }
    for (i, (r, _)) in gate.iter().enumerate().skip(1) {
        compare_results(&gate[0].0, r, 1e-9, 1e-9).map_err(|detail| Error::MismatchedResults {
            seed,
            detail: format!("{} vs {}: {detail}", cfg.methods[0].name(), cfg.methods[i].name()),
        })?;
    }
    let mut samples = Vec::with_capacity(cfg.methods.len());
    for (&m, (_, stats)) in cfg.methods.iter().zip(&gate) {
        let t0 = Instant::now();
        for _ in 0..cfg.repeat {
            std::hint::black_box(arcbool::boolean::boolean(std::hint::black_box(&a), &b, cfg.op, m)?);
        }
        let seconds = t0.elapsed().as_secs_f64() / cfg.repeat as f64;
        samples.push(Sample { seconds, pair_tests: stats.sweep.pair_tests, events: stats.sweep.events });
    }
    Ok(Trial { n, seed, samples })
}

/// The report as comma-separated values, times in microseconds.
pub fn to_table(r: &BenchReport) -> String {
    let mut s = String::from("n,method,trials,mean_us,sd_us,pair_tests,events,regenerated\n");
    for row in &r.rows {
        let _ = writeln!(
            s,
            "{},{},{},{:.3},{:.3},{:.1},{:.1},{}",
            row.n,
            row.method.name(),
            row.trials,
            row.mean * 1e6,
            row.sd * 1e6,
            row.pair_tests,
            row.events,
            row.regenerated
        );
    }
    s
}
