mod config;

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::Ratio;
use serde_json::json;

use twins_core::builder::{
    block_twin_finder, bound_calculator, find_twins_recursive, BlockSize, BoundParams,
};
use twins_core::gen::{random_matching, SeededSource};
use twins_core::lab::{self, ExperimentPlan, Method, ReportFormat, Stat};
use twins_core::oracle::{
    extremal_scan, max_clique_exact, max_tuplets_exact, max_twins_exact, tau_exact_witness, Budget,
    Quantity,
};
use twins_core::{OrderedMatching, Pattern, Permutation, TwinsCertificate};

#[derive(Parser)]
#[command(
    name = "twins",
    version,
    about = "Twins in ordered r-uniform matchings"
)]
#[command(args_override_self = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample uniform random matchings, one per line
    Gen {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        count: u64,
        #[arg(long, value_enum, default_value_t = GenFormat::Words)]
        format: GenFormat,
    },
    /// Exact solvers on a single instance
    Solve {
        #[arg(value_enum)]
        problem: Problem,
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 2)]
        t: usize,
        #[arg(long)]
        pattern: Option<String>,
    },
    /// Extremal values for every n up to a maximum
    Scan {
        quantity: String,
        #[arg(long, default_value_t = 2)]
        r: usize,
        #[arg(long)]
        max_n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Constructive twin finders
    Construct {
        #[arg(value_enum)]
        finder: Finder,
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value = "auto")]
        block_size: String,
    },
    /// Deterministic lower bound and exponent table as JSON
    Bounds {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        n: u64,
        #[arg(long, default_value = "3/5")]
        alpha: String,
        #[arg(long, default_value = "1/8")]
        beta: String,
    },
    /// Monte Carlo experiments
    Experiment {
        #[command(subcommand)]
        kind: ExperimentKind,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum GenFormat {
    Words,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Problem {
    Twins,
    Tuplets,
    Clique,
    Tau,
}

#[derive(Clone, Copy, ValueEnum)]
enum Finder {
    Recursive,
    Block,
}

#[derive(Subcommand)]
enum ExperimentKind {
    /// Sizes over a grid of n, with a log-log exponent fit
    Scaling(ScalingArgs),
}

#[derive(Args)]
struct ScalingArgs {
    /// key = value file; command-line flags take precedence
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    method: Option<String>,
    #[arg(long)]
    r: Option<usize>,
    /// A:B, A:B:S, A:B:geometric or a comma list
    #[arg(long)]
    grid: Option<String>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    stat: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    format: Option<String>,
    #[arg(long)]
    block_size: Option<String>,
    #[arg(long)]
    workers: Option<usize>,
    /// Report elapsed_ms as 0 so tables are byte-reproducible
    #[arg(long)]
    no_timing: bool,
}

fn read_matching(path: &Path) -> Result<OrderedMatching> {
    let text = read_input(path)?;
    Ok(OrderedMatching::parse_any(&text)?)
}

fn read_input(path: &Path) -> Result<String> {
    let text = if path == Path::new("-") {
        std::io::read_to_string(std::io::stdin())?
    } else {
        std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?
    };
    Ok(text.trim().to_string())
}

fn parse_block_size(text: &str) -> Result<BlockSize> {
    if text == "auto" {
        return Ok(BlockSize::Auto);
    }
    let a: usize = text
        .parse()
        .with_context(|| format!("block size must be a number or auto, got {text:?}"))?;
    Ok(BlockSize::Fixed(a))
}

fn parse_ratio(text: &str) -> Result<Ratio<i64>> {
    if let Ok(q) = text.parse::<Ratio<i64>>() {
        return Ok(q);
    }
    let x: f64 = text
        .parse()
        .with_context(|| format!("not a number: {text:?}"))?;
    Ratio::approximate_float(x).with_context(|| format!("cannot represent {text:?}"))
}

fn certificate_json(m: &OrderedMatching, c: &TwinsCertificate) -> Result<serde_json::Value> {
    let left = m.sub_matching(c.left())?;
    let right = m.sub_matching(c.right())?;
    Ok(json!({
        "size": c.size(),
        "left": c.left(),
        "right": c.right(),
        "left_word": left.to_word(),
        "right_word": right.to_word(),
    }))
}

fn print_json(v: &serde_json::Value) -> Result<()> {
    let mut out = std::io::stdout().lock();
    writeln!(out, "{}", serde_json::to_string_pretty(v)?)?;
    Ok(())
}

fn run_gen(r: usize, n: usize, seed: u64, count: u64, format: GenFormat) -> Result<()> {
    let stdout = std::io::stdout();
    let mut out = std::io::BufWriter::new(stdout.lock());
    for i in 0..count {
        let m = random_matching(n, r, SeededSource::new(seed, i))?;
        match format {
            GenFormat::Words => writeln!(out, "{}", m.to_word())?,
            GenFormat::Json => writeln!(out, "{}", m.to_json())?,
        }
    }
    out.flush()?;
    Ok(())
}

fn run_solve(problem: Problem, input: &Path, t: usize, pattern: Option<&str>) -> Result<()> {
    let budget = Budget::default();
    let v = match problem {
        Problem::Twins => {
            let m = read_matching(input)?;
            let (_, c) = max_twins_exact(&m, &budget)?;
            certificate_json(&m, &c)?
        }
        Problem::Tuplets => {
            let m = read_matching(input)?;
            json!({ "t": t, "size": max_tuplets_exact(&m, t, &budget)? })
        }
        Problem::Clique => {
            let m = read_matching(input)?;
            let p = pattern.map(str::parse::<Pattern>).transpose()?;
            let (size, c) = max_clique_exact(&m, p, &budget)?;
            json!({ "size": size, "pattern": c.pattern.word(), "members": c.members })
        }
        Problem::Tau => {
            let pi = Permutation::parse(&read_input(input)?)?;
            let (k, a, b) = tau_exact_witness(&pi, &budget)?;
            json!({ "size": k, "left": a, "right": b })
        }
    };
    print_json(&v)
}

fn run_scan(quantity: &str, r: usize, max_n: usize, out: Option<&Path>) -> Result<()> {
    let q: Quantity = quantity.parse()?;
    let budget = Budget::default();
    let sink: Box<dyn Write> = match out {
        Some(p) => Box::new(
            std::fs::File::create(p).with_context(|| format!("cannot write {}", p.display()))?,
        ),
        None => Box::new(std::io::stdout()),
    };
    let mut w = csv::Writer::from_writer(sink);
    w.write_record(["quantity", "r", "n", "value", "witness_word"])?;
    for n in 1..=max_n {
        let rec = extremal_scan(q, r, n, &budget)?;
        w.write_record([
            rec.quantity.to_string(),
            rec.r.to_string(),
            rec.n.to_string(),
            rec.value.to_string(),
            rec.witness,
        ])?;
        w.flush()?;
    }
    Ok(())
}

fn run_construct(finder: Finder, input: &Path, block_size: &str) -> Result<()> {
    let m = read_matching(input)?;
    let c = match finder {
        Finder::Recursive => find_twins_recursive(&m),
        Finder::Block => block_twin_finder(&m, parse_block_size(block_size)?)?,
    };
    print_json(&certificate_json(&m, &c)?)
}

fn run_bounds(r: usize, n: u64, alpha: &str, beta: &str) -> Result<()> {
    let params = BoundParams::new(parse_ratio(alpha)?, parse_ratio(beta)?)?;
    let report = bound_calculator(n, r, &params)?;
    print_json(&serde_json::to_value(report)?)
}

const SCALING_KEYS: &[&str] = &[
    "method",
    "r",
    "grid",
    "trials",
    "seed",
    "stat",
    "out",
    "format",
    "block-size",
    "workers",
    "timing",
];

fn merged(flag: Option<String>, key: &str, file: &BTreeMap<String, String>) -> Option<String> {
    flag.or_else(|| file.get(key).cloned())
}

fn parse_value<T: std::str::FromStr>(key: &str, value: &str) -> Result<T>
where
    T::Err: std::fmt::Display,
{
    value
        .parse()
        .map_err(|e| anyhow::anyhow!("invalid {key} {value:?}: {e}"))
}

fn run_scaling(args: ScalingArgs) -> Result<()> {
    let file = match &args.config {
        Some(p) => config::load(p)?,
        None => BTreeMap::new(),
    };
    if let Some(k) = file.keys().find(|k| !SCALING_KEYS.contains(&k.as_str())) {
        bail!("unknown configuration key {k:?}");
    }
    let get = |flag: Option<String>, key: &str| merged(flag, key, &file);

    let method: Method = parse_value(
        "method",
        &get(args.method, "method").unwrap_or("block".into()),
    )?;
    let Some(r) = get(args.r.map(|v| v.to_string()), "r") else {
        bail!("missing --r");
    };
    let Some(grid) = get(args.grid, "grid") else {
        bail!("missing --grid");
    };
    let trials = get(args.trials.map(|v| v.to_string()), "trials").unwrap_or("50".into());
    let seed = get(args.seed.map(|v| v.to_string()), "seed").unwrap_or("0".into());
    let stat: Stat = parse_value("stat", &get(args.stat, "stat").unwrap_or("median".into()))?;
    let format: ReportFormat = parse_value(
        "format",
        &get(args.format, "format").unwrap_or("csv".into()),
    )?;
    let out = args.out.or_else(|| file.get("out").map(PathBuf::from));
    let timing = if args.no_timing {
        false
    } else {
        parse_value::<bool>("timing", file.get("timing").map_or("true", String::as_str))?
    };

    let mut plan = ExperimentPlan::new(
        method,
        parse_value("r", &r)?,
        lab::parse_grid(&grid)?,
        parse_value("trials", &trials)?,
        parse_value("seed", &seed)?,
    );
    plan.block_size =
        parse_block_size(&get(args.block_size, "block-size").unwrap_or("auto".into()))?;
    plan.workers = get(args.workers.map(|v| v.to_string()), "workers")
        .map(|w| parse_value("workers", &w))
        .transpose()?;
    plan.record_timing = timing;

    let rows = lab::run_experiment(&plan)?;
    match &out {
        Some(p) => lab::emit_report(&rows, format, p)
            .with_context(|| format!("cannot write {}", p.display()))?,
        None => lab::write_report(&rows, format, std::io::stdout().lock())?,
    }

    let points: Vec<(f64, f64)> = lab::per_n_statistic(&rows, stat)
        .into_iter()
        .map(|(n, s)| (n as f64, s))
        .collect();
    match lab::fit_exponent(&points) {
        Ok(fit) => eprintln!(
            "slope {:.4}  intercept {:.4}  residual {:.4}  excluded {}",
            fit.slope, fit.intercept, fit.residual, fit.excluded
        ),
        Err(e) => eprintln!("no fit: {e}"),
    }
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Gen {
            r,
            n,
            seed,
            count,
            format,
        } => run_gen(r, n, seed, count, format),
        Command::Solve {
            problem,
            input,
            t,
            pattern,
        } => run_solve(problem, &input, t, pattern.as_deref()),
        Command::Scan {
            quantity,
            r,
            max_n,
            out,
        } => run_scan(&quantity, r, max_n, out.as_deref()),
        Command::Construct {
            finder,
            input,
            block_size,
        } => run_construct(finder, &input, &block_size),
        Command::Bounds { r, n, alpha, beta } => run_bounds(r, n, &alpha, &beta),
        Command::Experiment {
            kind: ExperimentKind::Scaling(args),
        } => run_scaling(args),
    }
}

fn is_broken_pipe(e: &anyhow::Error) -> bool {
    e.chain().any(|c| {
        c.downcast_ref::<std::io::Error>()
            .is_some_and(|io| io.kind() == std::io::ErrorKind::BrokenPipe)
    })
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) if is_broken_pipe(&e) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
