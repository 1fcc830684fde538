//! Monte Carlo experiment harness: seeded trial grids, per-n statistics,
//! log-log exponent fits and CSV/JSON reports.

use std::fmt;
use std::io::{Read, Write};
use std::str::FromStr;
use std::time::Instant;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::builder::{block_twin_finder, clique_find, find_twins_recursive, BlockSize};
use crate::error::{Error, Result};
use crate::gen::{random_matching, SeededSource};
use crate::oracle::{max_twins_exact, Budget};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Recursive,
    Block,
    Clique,
    Oracle,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Recursive => "recursive",
            Method::Block => "block",
            Method::Clique => "clique",
            Method::Oracle => "oracle",
        })
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Method> {
        match s {
            "recursive" => Ok(Method::Recursive),
            "block" => Ok(Method::Block),
            "clique" => Ok(Method::Clique),
            "oracle" => Ok(Method::Oracle),
            _ => Err(Error::InvalidArgument(format!("unknown method {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stat {
    Median,
    Mean,
}

impl FromStr for Stat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Stat> {
        match s {
            "median" => Ok(Stat::Median),
            "mean" => Ok(Stat::Mean),
            _ => Err(Error::InvalidArgument(format!("unknown statistic {s:?}"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ExperimentPlan {
    pub method: Method,
    pub r: usize,
    pub grid: Vec<usize>,
    pub trials: usize,
    pub master_seed: u64,
    pub block_size: BlockSize,
    /// When false every row reports `elapsed_ms = 0`, making tables
    /// byte-for-byte reproducible.
    pub record_timing: bool,
    /// Worker threads; `None` uses the global pool.
    pub workers: Option<usize>,
    pub budget: Budget,
}

impl ExperimentPlan {
    pub fn new(
        method: Method,
        r: usize,
        grid: Vec<usize>,
        trials: usize,
        master_seed: u64,
    ) -> Self {
        ExperimentPlan {
            method,
            r,
            grid,
            trials,
            master_seed,
            block_size: BlockSize::Auto,
            record_timing: true,
            workers: None,
            budget: Budget::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.r < 2 {
            return Err(Error::RankTooSmall(self.r));
        }
        if self.grid.is_empty() || self.grid[0] == 0 {
            return Err(Error::InvalidArgument(
                "grid must hold positive sizes".into(),
            ));
        }
        if self.grid.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidArgument(
                "grid must be strictly increasing".into(),
            ));
        }
        if self.trials == 0 {
            return Err(Error::InvalidArgument("trials must be at least 1".into()));
        }
        if self.method == Method::Oracle {
            let limit = self.budget.twins_limit(self.r);
            if let Some(&n) = self.grid.iter().find(|&&n| n > limit) {
                return Err(Error::BudgetExceeded(format!(
                    "oracle method limited to n <= {limit} at r = {}, grid has {n}",
                    self.r
                )));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Row {
    pub r: usize,
    pub n: usize,
    pub trial: usize,
    pub seed: u64,
    pub method: Method,
    pub size: usize,
    pub elapsed_ms: u64,
}

/// Parses `A:B` (every integer), `A:B:S` (step `S`), `A:B:geometric`
/// (doubling from `A`) or a comma-separated list.
pub fn parse_grid(text: &str) -> Result<Vec<usize>> {
    let bad = || Error::InvalidArgument(format!("bad grid {text:?}"));
    let num = |s: &str| s.trim().parse::<usize>().map_err(|_| bad());
    let text = text.trim();
    let grid: Vec<usize> = if text.contains(':') {
        let parts: Vec<&str> = text.split(':').collect();
        let (lo, hi) = match parts.as_slice() {
            [a, b] | [a, b, _] => (num(a)?, num(b)?),
            _ => return Err(bad()),
        };
        if lo == 0 || lo > hi {
            return Err(bad());
        }
        match parts.get(2).map(|s| s.trim()) {
            None => (lo..=hi).collect(),
            Some("geometric") => std::iter::successors(Some(lo), |&n| n.checked_mul(2))
                .take_while(|&n| n <= hi)
                .collect(),
            Some(step) => {
                let step = num(step)?;
                if step == 0 {
                    return Err(bad());
                }
                (lo..=hi).step_by(step).collect()
            }
        }
    } else {
        text.split(',').map(num).collect::<Result<_>>()?
    };
    if grid.is_empty() {
        return Err(bad());
    }
    Ok(grid)
}

/// Seed of one trial, derived from `(master_seed, n_index, trial)` alone.
pub fn trial_seed(master_seed: u64, n_index: usize, trial: usize) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(((n_index as u64) << 32) | trial as u64);
    rng.next_u64()
}

/// Runs one cell in isolation: the random matching is fully determined by
/// `(r, n, seed)`.
pub fn run_cell(
    method: Method,
    r: usize,
    n: usize,
    seed: u64,
    block_size: BlockSize,
    budget: &Budget,
) -> Result<usize> {
    let m = random_matching(n, r, SeededSource::new(seed, 0))?;
    Ok(match method {
        Method::Recursive => find_twins_recursive(&m).size(),
        Method::Block => block_twin_finder(&m, block_size)?.size(),
        Method::Clique => clique_find(&m).size(),
        Method::Oracle => max_twins_exact(&m, budget)?.0,
    })
}

pub fn run_experiment(plan: &ExperimentPlan) -> Result<Vec<Row>> {
    plan.validate()?;
    let cells: Vec<(usize, usize, usize)> = plan
        .grid
        .iter()
        .enumerate()
        .flat_map(|(ni, &n)| (0..plan.trials).map(move |t| (ni, n, t)))
        .collect();
    let work = || {
        cells
            .par_iter()
            .map(|&(ni, n, trial)| {
                let seed = trial_seed(plan.master_seed, ni, trial);
                let start = Instant::now();
                let size = run_cell(plan.method, plan.r, n, seed, plan.block_size, &plan.budget)?;
                let elapsed_ms = if plan.record_timing {
                    start.elapsed().as_millis() as u64
                } else {
                    0
                };
                Ok(Row {
                    r: plan.r,
                    n,
                    trial,
                    seed,
                    method: plan.method,
                    size,
                    elapsed_ms,
                })
            })
            .collect::<Result<Vec<Row>>>()
    };
    let mut rows = match plan.workers {
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w.max(1))
            .build()
            .map_err(|e| Error::InvalidArgument(e.to_string()))?
            .install(work)?,
        None => work()?,
    };
    rows.sort_by_key(|row| (row.n, row.trial));
    Ok(rows)
}

/// Quantile with linear interpolation between order statistics.
pub fn quantile(sorted: &[f64], q: f64) -> f64 {
    assert!(!sorted.is_empty(), "quantile of empty sample");
    let pos = q * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    sorted[lo] + (sorted[hi] - sorted[lo]) * (pos - lo as f64)
}

fn sizes_at(rows: &[Row], n: usize) -> Vec<f64> {
    let mut v: Vec<f64> = rows
        .iter()
        .filter(|r| r.n == n)
        .map(|r| r.size as f64)
        .collect();
    v.sort_by(f64::total_cmp);
    v
}

fn grid_of(rows: &[Row]) -> Vec<usize> {
    let mut ns: Vec<usize> = rows.iter().map(|r| r.n).collect();
    ns.sort_unstable();
    ns.dedup();
    ns
}

/// Per-n statistic of the size column, ascending in n.
pub fn per_n_statistic(rows: &[Row], stat: Stat) -> Vec<(usize, f64)> {
    grid_of(rows)
        .into_iter()
        .map(|n| {
            let v = sizes_at(rows, n);
            let s = match stat {
                Stat::Median => quantile(&v, 0.5),
                Stat::Mean => v.iter().sum::<f64>() / v.len() as f64,
            };
            (n, s)
        })
        .collect()
}

/// Interquartile range over median per n; infinite when the median is 0
/// and the spread is not.
pub fn relative_iqr(rows: &[Row]) -> Vec<(usize, f64)> {
    grid_of(rows)
        .into_iter()
        .map(|n| {
            let v = sizes_at(rows, n);
            let iqr = quantile(&v, 0.75) - quantile(&v, 0.25);
            let med = quantile(&v, 0.5);
            let rel = if med > 0.0 {
                iqr / med
            } else if iqr > 0.0 {
                f64::INFINITY
            } else {
                f64::NAN
            };
            (n, rel)
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScalingFit {
    pub points: Vec<(f64, f64)>,
    pub slope: f64,
    pub intercept: f64,
    /// Root mean square of the log residuals.
    pub residual: f64,
    /// Points dropped for a non-positive statistic.
    pub excluded: usize,
}

/// Least-squares slope of `ln(stat)` against `ln(n)` over points with a
/// positive statistic.
pub fn fit_exponent(points: &[(f64, f64)]) -> Result<ScalingFit> {
    let used: Vec<(f64, f64)> = points
        .iter()
        .copied()
        .filter(|&(n, s)| n > 0.0 && s > 0.0)
        .collect();
    if used.len() < 3 {
        return Err(Error::TooFewPoints(used.len()));
    }
    let logs: Vec<(f64, f64)> = used.iter().map(|&(n, s)| (n.ln(), s.ln())).collect();
    let k = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / k;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = logs.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if sxx == 0.0 {
        return Err(Error::InvalidArgument("all points share one n".into()));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let sse: f64 = logs
        .iter()
        .map(|p| (p.1 - intercept - slope * p.0).powi(2))
        .sum();
    Ok(ScalingFit {
        points: used,
        slope,
        intercept,
        residual: (sse / k).sqrt(),
        excluded: points.len() - logs.len(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Json,
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<ReportFormat> {
        match s {
            "csv" => Ok(ReportFormat::Csv),
            "json" => Ok(ReportFormat::Json),
            _ => Err(Error::InvalidArgument(format!("unknown format {s:?}"))),
        }
    }
}

/// Writes rows as CSV (header `r,n,trial,seed,method,size,elapsed_ms`) or
/// as a JSON array of row objects.
pub fn write_report<W: Write>(rows: &[Row], format: ReportFormat, out: W) -> Result<()> {
    if rows.is_empty() {
        return Err(Error::InvalidArgument("empty table".into()));
    }
    match format {
        ReportFormat::Csv => {
            let mut w = csv::Writer::from_writer(out);
            for row in rows {
                w.serialize(row).map_err(|e| Error::Io(e.to_string()))?;
            }
            w.flush()?;
        }
        ReportFormat::Json => {
            let mut out = out;
            serde_json::to_writer_pretty(&mut out, rows).map_err(|e| Error::Io(e.to_string()))?;
            out.write_all(b"\n")?;
        }
    }
    Ok(())
}

pub fn emit_report(rows: &[Row], format: ReportFormat, path: &std::path::Path) -> Result<()> {
    let file = std::fs::File::create(path)?;
    write_report(rows, format, std::io::BufWriter::new(file))
}

pub fn read_report<R: Read>(format: ReportFormat, input: R) -> Result<Vec<Row>> {
    match format {
        ReportFormat::Csv => csv::Reader::from_reader(input)
            .deserialize()
            .map(|r| r.map_err(|e| Error::Format(e.to_string())))
            .collect(),
        ReportFormat::Json => {
            serde_json::from_reader(input).map_err(|e| Error::Format(e.to_string()))
        }
    }
}
