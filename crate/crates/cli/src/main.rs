use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand};
use liouville::bench::bench_builders;
use liouville::io::{builtin, builtin_names, emit_csv, emit_csv_keyed, instantiate, parse_model, ModelFile, Observable, SweepResult};
use liouville::sweep::{columns, observe, run_sweep, SweepOptions};
use liouville::{
    evolve, residual, steady_state_with, validate_spec, Builder, DensityMatrix, Error, SolveOptions,
};

const THREADS_VAR: &str = "LIOUVILLE_THREADS";

#[derive(Parser)]
#[command(name = "liouville", version, about = "Steady states, sweeps and time evolution of N-level density matrices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve for the steady state at one value of the sweep variable.
    Steady {
        #[command(flatten)]
        source: Source,
        /// Value of the sweep variable.
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        x: f64,
        #[arg(long, value_parser = parse_builder, default_value = "fast")]
        builder: Builder,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solve at every point of the model's sweep and write CSV.
    Sweep {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_parser = parse_builder, default_value = "fast")]
        builder: Builder,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Integrate from a pure level and write the trajectory as CSV.
    Evolve {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        x: f64,
        #[arg(long = "t-end", default_value_t = 50.0)]
        t_end: f64,
        /// Step size; defaults to the stability bound.
        #[arg(long)]
        dt: Option<f64>,
        /// Initially populated level (1-based).
        #[arg(long, default_value_t = 1)]
        initial: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the physical invariants of a model.
    Validate {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        x: f64,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Time the naive and column-wise builders on random systems.
    Bench {
        #[arg(long, value_delimiter = ',', default_value = "2,3,5,10,15")]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 5)]
        reps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Source {
    /// Model description file.
    #[arg(long)]
    model: Option<PathBuf>,
    /// Bundled model: two-level, lambda3 or rb87-waveplate.
    #[arg(long)]
    builtin: Option<String>,
}

fn parse_builder(s: &str) -> Result<Builder, String> {
    s.parse()
}

/// Exit status 1 for user or model errors, 2 for numerical failures.
struct Failure {
    code: u8,
    error: anyhow::Error,
}

impl Failure {
    fn user(error: impl Into<anyhow::Error>) -> Self {
        Self { code: 1, error: error.into() }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(error: anyhow::Error) -> Self {
        Self::user(error)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Diverged(_) | Error::Dimension { .. } | Error::NotSquare(_) | Error::Index { .. } => 2,
            _ => 1,
        };
        Self { code, error: e.into() }
    }
}

type CmdResult = Result<(), Failure>;

fn load(source: &Source) -> Result<ModelFile, Failure> {
    if let Some(name) = &source.builtin {
        return builtin(name).map(|(_, m)| m).ok_or_else(|| {
            Failure::user(anyhow!(
                "unknown builtin `{name}` (available: {})",
                builtin_names().join(", ")
            ))
        });
    }
    let path = source.model.as_ref().expect("clap enforces a source");
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_model(&text).map_err(|errs| {
        let mut msg = format!("{} has {} error(s)", path.display(), errs.0.len());
        for d in &errs.0 {
            write!(msg, "\n{}:{d}", path.display()).unwrap();
        }
        Failure::user(anyhow!(msg))
    })
}

fn write_output(out: Option<&PathBuf>, text: &str) -> CmdResult {
    match out {
        Some(path) => fs::write(path, text)
            .with_context(|| format!("writing {}", path.display()))
            .map_err(Failure::user),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn threads_from_env() -> Result<Option<usize>, Failure> {
    match std::env::var(THREADS_VAR) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(Failure::user(anyhow!("{THREADS_VAR} must be a positive integer, got `{v}`"))),
        },
        Err(_) => Ok(None),
    }
}

fn grid_text(rho: &DensityMatrix, part: fn(liouville::C64) -> f64) -> String {
    let n = rho.n_levels();
    let mut s = String::new();
    for i in 0..n {
        let row: Vec<String> = (0..n).map(|j| format!("{:>24.16e}", part(rho.get(i, j)))).collect();
        writeln!(s, "{}", row.join(" ")).unwrap();
    }
    s
}

fn cmd_steady(source: &Source, x: f64, builder: Builder, out: Option<&PathBuf>) -> CmdResult {
    let model = load(source)?;
    let spec = instantiate(&model, x)?;
    let opts = SolveOptions { builder, ..Default::default() };
    let rho = steady_state_with(&spec, opts)?;
    let m = builder.build(&spec);
    let res = residual(&m, &rho)?;
    let trace = rho.trace();
    let mut text = String::new();
    writeln!(text, "# steady state at x = {x}, N = {}", spec.n_levels()).unwrap();
    writeln!(text, "real part:").unwrap();
    text.push_str(&grid_text(&rho, |z| z.re));
    writeln!(text, "imaginary part:").unwrap();
    text.push_str(&grid_text(&rho, |z| z.im));
    writeln!(text, "trace: {:.16e} {:+.3e}i", trace.re, trace.im).unwrap();
    writeln!(text, "residual: {res:.3e} (max|M| = {:.3e})", m.max_abs()).unwrap();
    write_output(out, &text)
}

fn cmd_sweep(source: &Source, builder: Builder, out: Option<&PathBuf>) -> CmdResult {
    let model = load(source)?;
    let sweep = model
        .sweep
        .as_ref()
        .ok_or_else(|| Failure::user(anyhow!("model has no sweep directive")))?;
    let opts = SweepOptions {
        threads: threads_from_env()?,
        ..SweepOptions::with_builder(builder)
    };
    let outcome = run_sweep(&model, &sweep.grid(), opts);
    write_output(out, &emit_csv(&outcome.result))?;
    if outcome.failures.is_empty() {
        return Ok(());
    }
    for (x, msg) in &outcome.failures {
        eprintln!("  {} = {x}: {msg}", sweep.name);
    }
    Err(Failure::user(anyhow!(
        "{} of {} sweep points failed (NaN rows)",
        outcome.failures.len(),
        sweep.points
    )))
}

fn cmd_evolve(
    source: &Source,
    x: f64,
    t_end: f64,
    dt: Option<f64>,
    initial: usize,
    out: Option<&PathBuf>,
) -> CmdResult {
    let model = load(source)?;
    let spec = instantiate(&model, x)?;
    let n = spec.n_levels();
    if initial == 0 || initial > n {
        return Err(Failure::user(anyhow!("initial level {initial} out of range 1..={n}")));
    }
    let dt = dt.unwrap_or_else(|| liouville::evolve::max_step(&spec));
    let traj = evolve(&spec, &DensityMatrix::ground(n, initial - 1), t_end, dt)?;

    let observables: Vec<Observable> = if model.observables.is_empty() {
        (1..=n).map(Observable::Pop).collect()
    } else {
        model.observables.clone()
    };
    let mut result = SweepResult::new("t", columns(&observables));
    for (t, rho) in traj.times.iter().zip(&traj.states) {
        result.rows.push((*t, observe(&spec, rho, &observables)?));
    }
    write_output(out, &emit_csv_keyed(&result, "t"))
}

fn cmd_validate(source: &Source, x: f64, json: bool, out: Option<&PathBuf>) -> CmdResult {
    let model = load(source)?;
    let spec = instantiate(&model, x)?;
    let report = validate_spec(&spec);
    let text = if json {
        serde_json::to_string_pretty(&report).map_err(anyhow::Error::from)? + "\n"
    } else {
        format!("{report}\n")
    };
    write_output(out, &text)?;
    if report.is_ok() {
        Ok(())
    } else {
        Err(Failure::user(anyhow!("model fails validation")))
    }
}

fn cmd_bench(sizes: &[usize], reps: usize, seed: u64, json: bool, out: Option<&PathBuf>) -> CmdResult {
    let rows = bench_builders(sizes, reps, seed).map_err(|e| match e {
        Error::Argument(msg) if msg.starts_with("builders disagree") => Failure {
            code: 2,
            error: anyhow!(msg),
        },
        e => Failure::from(e),
    })?;
    let text = if json {
        serde_json::to_string_pretty(&rows).map_err(anyhow::Error::from)? + "\n"
    } else {
        let mut t = format!(
            "{:>4} {:>5} {:>14} {:>14} {:>10} {:>10}\n",
            "N", "reps", "naive_s", "fast_s", "ratio", "max_diff"
        );
        for r in &rows {
            writeln!(
                t,
                "{:>4} {:>5} {:>14.6e} {:>14.6e} {:>10.1} {:>10.1e}",
                r.n_levels, r.reps, r.naive_median_s, r.fast_median_s, r.ratio, r.max_diff
            )
            .unwrap();
        }
        t
    };
    write_output(out, &text)
}

fn run(cli: Cli) -> CmdResult {
    match cli.command {
        Command::Steady { source, x, builder, out } => cmd_steady(&source, x, builder, out.as_ref()),
        Command::Sweep { source, builder, out } => cmd_sweep(&source, builder, out.as_ref()),
        Command::Evolve { source, x, t_end, dt, initial, out } => {
            cmd_evolve(&source, x, t_end, dt, initial, out.as_ref())
        }
        Command::Validate { source, x, json, out } => cmd_validate(&source, x, json, out.as_ref()),
        Command::Bench { sizes, reps, seed, json, out } => cmd_bench(&sizes, reps, seed, json, out.as_ref()),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {:#}", f.error);
            ExitCode::from(f.code)
        }
    }
}
