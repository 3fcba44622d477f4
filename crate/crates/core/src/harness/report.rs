//! Experiment reports, sweep tables and their CSV/JSON writers.
//!
//! Schemas are versioned by [`SCHEMA_VERSION`]; see `docs/report-schema.md`.

use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{Experiment, ExperimentConfig, OutputFormat, TrialOutcome};
use crate::error::{Error, Result};
use crate::stats::MeanSe;

pub const SCHEMA_VERSION: u32 = 1;

/// Aggregate of one experiment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub config: ExperimentConfig,
    pub strategy: String,
    pub instance: String,
    pub n: usize,
    pub trials: usize,
    pub seed: u64,
    pub mean_score: f64,
    pub std_error: f64,
    /// Mean of the realized maxima of the same trials.
    pub benchmark: f64,
    pub benchmark_se: f64,
    /// `benchmark / mean_score`, present only when `mean_score > 0`.
    pub ratio: Option<f64>,
    pub acceptance_rate: f64,
    /// Mean score over trials that accepted an option.
    pub conditional_score: Option<f64>,
    pub conditional_se: Option<f64>,
    /// Bucket count `k` of the success event `score >= max / k`.
    pub success_levels: Option<usize>,
    pub success_rate: Option<f64>,
    pub success_se: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time_secs: Option<f64>,
}

impl Report {
    pub(crate) fn from_outcomes(exp: &Experiment, outcomes: &[TrialOutcome]) -> Report {
        let config = exp.config();
        let scores: Vec<f64> = outcomes.iter().map(|o| o.score).collect();
        let maxima: Vec<f64> = outcomes.iter().map(|o| o.max).collect();
        let score = MeanSe::of(&scores);
        let bench = MeanSe::of(&maxima);
        let accepted: Vec<f64> = outcomes
            .iter()
            .filter(|o| o.accepted)
            .map(|o| o.score)
            .collect();
        let cond = (!accepted.is_empty()).then(|| MeanSe::of(&accepted));
        let levels = exp.success_levels();
        let success =
            levels.map(|k| MeanSe::of_bools(outcomes.iter().map(|o| o.score >= o.max / k as f64)));
        Report {
            schema_version: SCHEMA_VERSION,
            config: config.clone(),
            strategy: config.strategy.to_string(),
            instance: config.instance.to_string(),
            n: exp.n(),
            trials: outcomes.len(),
            seed: config.seed,
            mean_score: score.mean,
            std_error: score.se,
            benchmark: bench.mean,
            benchmark_se: bench.se,
            ratio: (score.mean > 0.0).then(|| bench.mean / score.mean),
            acceptance_rate: MeanSe::of_bools(outcomes.iter().map(|o| o.accepted)).mean,
            conditional_score: cond.map(|c| c.mean),
            conditional_se: cond.map(|c| c.se),
            success_levels: levels,
            success_rate: success.map(|s| s.mean),
            success_se: success.map(|s| s.se),
            wall_time_secs: None,
        }
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| Error::Io(e.to_string()))
    }

    /// Single-row CSV with the sweep columns.
    pub fn to_csv(&self) -> Result<String> {
        let row = SweepRow::ok(self.n, self.clone());
        csv_rows(std::slice::from_ref(&row))
    }

    pub fn write(&self, path: &Path, format: OutputFormat) -> Result<()> {
        let text = match format {
            OutputFormat::Json => self.to_json()?,
            OutputFormat::Csv => self.to_csv()?,
        };
        write_file(path, &text)
    }
}

/// One cell of a sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    /// Size parameter as given to the sweep.
    pub size: usize,
    pub report: Option<Report>,
    pub error: Option<String>,
}

impl SweepRow {
    pub fn ok(size: usize, report: Report) -> SweepRow {
        SweepRow {
            size,
            report: Some(report),
            error: None,
        }
    }

    pub fn failed(size: usize, error: String) -> SweepRow {
        SweepRow {
            size,
            report: None,
            error: Some(error),
        }
    }
}

/// Reports over a list of sizes with a fitted log-growth constant.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepTable {
    pub schema_version: u32,
    pub template: ExperimentConfig,
    pub rows: Vec<SweepRow>,
    /// Least-squares `c` in `ratio = c * ln n` through the origin, over rows with a ratio
    /// and `n >= 2`.
    pub fitted_c: Option<f64>,
}

impl SweepTable {
    pub fn new(template: ExperimentConfig, rows: Vec<SweepRow>) -> SweepTable {
        let points: Vec<(f64, f64)> = rows
            .iter()
            .filter_map(|r| r.report.as_ref())
            .filter(|r| r.n >= 2)
            .filter_map(|r| r.ratio.map(|ratio| ((r.n as f64).ln(), ratio)))
            .collect();
        let fitted_c = fit_through_origin(&points);
        SweepTable {
            schema_version: SCHEMA_VERSION,
            template,
            rows,
            fitted_c,
        }
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| Error::Io(e.to_string()))
    }

    pub fn to_csv(&self) -> Result<String> {
        csv_rows(&self.rows)
    }

    pub fn write(&self, path: &Path, format: OutputFormat) -> Result<()> {
        let text = match format {
            OutputFormat::Json => self.to_json()?,
            OutputFormat::Csv => self.to_csv()?,
        };
        write_file(path, &text)
    }
}

/// Least-squares slope of `y = c x`.
pub fn fit_through_origin(points: &[(f64, f64)]) -> Option<f64> {
    let sxx: f64 = points.iter().map(|(x, _)| x * x).sum();
    let sxy: f64 = points.iter().map(|(x, y)| x * y).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

pub const CSV_HEADER: [&str; 7] = ["n", "mean", "se", "benchmark", "ratio", "success", "error"];

fn csv_rows(rows: &[SweepRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::Io(e.to_string());
    w.write_record(CSV_HEADER).map_err(io)?;
    let opt = |x: Option<f64>| x.map(|v| v.to_string()).unwrap_or_default();
    for row in rows {
        let record = match &row.report {
            Some(r) => [
                r.n.to_string(),
                r.mean_score.to_string(),
                r.std_error.to_string(),
                r.benchmark.to_string(),
                opt(r.ratio),
                opt(r.success_rate),
                String::new(),
            ],
            None => [
                row.size.to_string(),
                String::new(),
                String::new(),
                String::new(),
                String::new(),
                String::new(),
                row.error.clone().unwrap_or_default(),
            ],
        };
        w.write_record(&record).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    let mut f =
        std::fs::File::create(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    f.write_all(text.as_bytes())
        .and_then(|_| {
            if text.ends_with('\n') {
                Ok(())
            } else {
                f.write_all(b"\n")
            }
        })
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}
