//! Command-line driver. Every number it prints comes straight from a library
//! call; this module only parses arguments and formats tables.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::analysis::{analyze, bounds_sweep, exact_sweep, BoundsRow, SnrGrid};
use crate::constellation::Bundle;
use crate::detector::{rasterize_regions, DetectorKind, Noise, Window};
use crate::error::Error;
use crate::io::{fmt_num, fmt_opt, read_constellation, serialize_constellation, FileError, Table};
use crate::montecarlo::{sweep, SimConfig};
use crate::presets;
use crate::weights::{ErrorKind, ErrorSpec};

/// Observed errors below which a Monte Carlo standard error is unreliable.
const MIN_RELIABLE_ERRORS: u64 = 100;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    File(#[from] FileError),
    #[error(transparent)]
    Model(#[from] Error),
    #[error("{0}")]
    Usage(String),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Parser)]
#[command(
    name = "mapml",
    version,
    about = "Error probabilities of MAP and ML detection over AWGN"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// MED structure, energy, asymptotic constants and lower-bound onset.
    Analyze(AnalyzeArgs),
    /// Union bound, lower bound and asymptote over an SNR grid.
    Bounds(SweepArgs),
    /// Exact error probability (one-dimensional constellations only).
    Exact(SweepArgs),
    /// Monte Carlo sweep with bounds and asymptote alongside.
    Simulate(SimulateArgs),
    /// Decision regions of a two-dimensional constellation on a grid.
    Regions(RegionsArgs),
    /// Write a built-in constellation as a constellation file.
    Generate(GenerateArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Preset {
    /// (-1, 0, 2) with priors (0.62, 0.07, 0.31).
    Asym3,
    /// (-1, 0, 1) with priors (p1, 1 - 2 p1, p1).
    Sym3,
    /// Uniform unit-spaced PAM of size --size.
    Pam,
    /// 4+12 two-ring constellation, inner prior p1.
    Ring,
}

#[derive(Debug, Args)]
struct Source {
    /// Constellation file (TOML).
    #[arg(long, short = 'c', conflicts_with = "preset")]
    constellation: Option<PathBuf>,
    /// Built-in constellation.
    #[arg(long, value_enum)]
    preset: Option<Preset>,
    /// Prior parameter of the sym3 and ring presets.
    #[arg(long)]
    p1: Option<f64>,
    /// Number of points of the pam preset.
    #[arg(long, default_value_t = 4)]
    size: usize,
}

impl Source {
    fn load(&self) -> Result<Bundle, CliError> {
        if let Some(path) = &self.constellation {
            return read_constellation(path).map_err(|e| match e {
                FileError::Io(io) => {
                    CliError::Usage(format!("cannot read {}: {io}", path.display()))
                }
                other => other.into(),
            });
        }
        let preset = self.preset.ok_or_else(|| {
            CliError::Usage("one of --constellation or --preset is required".into())
        })?;
        Ok(match preset {
            Preset::Asym3 => presets::asymmetric_pam3(),
            Preset::Sym3 => presets::symmetric_pam3(self.p1.unwrap_or(1.0 / 3.0))?,
            Preset::Pam => presets::uniform_pam(self.size)?,
            Preset::Ring => presets::ring_4_12(self.p1.unwrap_or(0.22))?,
        })
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum DetectorArg {
    Map,
    Ml,
}

impl From<DetectorArg> for DetectorKind {
    fn from(d: DetectorArg) -> Self {
        match d {
            DetectorArg::Map => DetectorKind::Map,
            DetectorArg::Ml => DetectorKind::Ml,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ErrorArg {
    Sep,
    Bep,
}

impl From<ErrorArg> for ErrorKind {
    fn from(e: ErrorArg) -> Self {
        match e {
            ErrorArg::Sep => ErrorKind::Sep,
            ErrorArg::Bep => ErrorKind::Bep,
        }
    }
}

#[derive(Debug, Args)]
struct AnalyzeArgs {
    #[command(flatten)]
    source: Source,
    /// Output path (default: stdout).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[command(flatten)]
    source: Source,
    #[arg(long, value_enum, default_value = "map")]
    detector: DetectorArg,
    #[arg(long = "error", value_enum, default_value = "sep")]
    error: ErrorArg,
    /// E_s / sigma^2 grid in dB as start:stop:step (sigma^2 per dimension).
    #[arg(long, default_value = "0:20:1", allow_hyphen_values = true)]
    snr: SnrGrid,
    #[arg(long)]
    out: Option<PathBuf>,
}

impl SweepArgs {
    fn spec(&self) -> ErrorSpec {
        ErrorSpec::new(self.detector.into(), self.error.into())
    }
}

#[derive(Debug, Args)]
struct SimulateArgs {
    #[command(flatten)]
    sweep: SweepArgs,
    #[arg(long, default_value_t = 1_000_000)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    workers: usize,
}

#[derive(Debug, Args)]
struct RegionsArgs {
    #[command(flatten)]
    source: Source,
    #[arg(long, value_enum, default_value = "map")]
    detector: DetectorArg,
    /// Per-dimension noise variance.
    #[arg(long, conflicts_with = "snr")]
    sigma2: Option<f64>,
    /// E_s / sigma^2 in dB, as an alternative to --sigma2.
    #[arg(long, allow_hyphen_values = true)]
    snr: Option<f64>,
    /// Window as x_min:x_max:y_min:y_max.
    #[arg(long, default_value = "-2:2:-2:2", allow_hyphen_values = true)]
    window: String,
    /// Cells per axis.
    #[arg(long, default_value_t = 200)]
    resolution: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct GenerateArgs {
    #[command(flatten)]
    source: Source,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_window(s: &str) -> Result<Window, CliError> {
    let v: Vec<f64> = s
        .split(':')
        .map(|p| p.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::Usage(format!("--window: cannot parse '{s}'")))?;
    match v.as_slice() {
        &[x_min, x_max, y_min, y_max] => Ok(Window {
            x_min,
            x_max,
            y_min,
            y_max,
        }),
        _ => Err(CliError::Usage(format!(
            "--window: expected x_min:x_max:y_min:y_max, got '{s}'"
        ))),
    }
}

fn emit(out: &Option<PathBuf>, text: &str, stdout: &mut dyn Write) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| {
            CliError::Usage(format!("cannot write {}: {e}", path.display()))
        }),
        None => Ok(stdout.write_all(text.as_bytes())?),
    }
}

fn join<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    items
        .into_iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(";")
}

fn analyze_table(bundle: &Bundle) -> Result<Table, CliError> {
    let s = analyze(bundle)?;
    let mut t = Table::new(["key", "value"]);
    let mut kv = |k: &str, v: String| t.push(vec![k.to_string(), v]);
    kv("name", s.name.clone().unwrap_or_default());
    kv("M", s.size.to_string());
    kv("N", s.dim.to_string());
    kv("d", fmt_num(s.med));
    kv("Es", fmt_num(s.energy));
    kv(
        "med_pairs",
        join(s.med_pairs.iter().map(|(i, j)| format!("{}-{}", i + 1, j + 1))),
    );
    kv("G", join(&s.neighbor_counts));
    kv("B_map_sep", fmt_num(s.asymptotics.b_map_sep));
    kv("B_ml_sep", fmt_num(s.asymptotics.b_ml_sep));
    kv("R_sep", fmt_num(s.asymptotics.r_sep));
    if let Some(b) = &s.asymptotics.bep {
        kv("B_map_bep", fmt_num(b.b_map_bep));
        kv("B_ml_bep", fmt_num(b.b_ml_bep));
        kv("R_bep", fmt_num(b.r_bep));
    }
    kv(
        "tau_min",
        if s.min_tau.is_finite() {
            fmt_num(s.min_tau)
        } else {
            "inf".into()
        },
    );
    kv("lb_onset_snr_db", fmt_opt(s.lb_onset_snr_db));
    Ok(t)
}

fn bounds_table(rows: &[BoundsRow], with_exact: bool) -> Table {
    let mut header = vec!["snr_db", "sigma"];
    if with_exact {
        header.push("exact");
    }
    header.extend(["ub", "lb", "asym"]);
    let mut t = Table::new(header);
    for r in rows {
        let mut row = vec![fmt_num(r.snr_db), fmt_num(r.sigma)];
        if with_exact {
            row.push(fmt_opt(r.exact));
        }
        row.extend([fmt_num(r.ub), fmt_opt(r.lb), fmt_num(r.asym)]);
        t.push(row);
    }
    t
}

fn execute(cli: Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Analyze(a) => {
            let bundle = a.source.load()?;
            emit(&a.out, &analyze_table(&bundle)?.to_csv(), stdout)
        }
        Command::Bounds(a) => {
            let bundle = a.source.load()?;
            let rows = bounds_sweep(&bundle, a.spec(), &a.snr.values())?;
            emit(&a.out, &bounds_table(&rows, false).to_csv(), stdout)
        }
        Command::Exact(a) => {
            let bundle = a.source.load()?;
            let rows = exact_sweep(&bundle, a.spec(), &a.snr.values())?;
            emit(&a.out, &bounds_table(&rows, true).to_csv(), stdout)
        }
        Command::Simulate(a) => {
            let bundle = a.sweep.source.load()?;
            let config = SimConfig::new(a.sweep.spec(), a.trials, a.seed).with_workers(a.workers);
            let rows = sweep(&bundle, &a.sweep.snr.values(), &config)?;
            let mut t = Table::new([
                "snr_db",
                "sigma",
                "ub",
                "lb",
                "asym",
                "sim_estimate",
                "sim_stderr",
            ]);
            for r in &rows {
                if r.sim.symbol_errors < MIN_RELIABLE_ERRORS {
                    writeln!(
                        stderr,
                        "warning: only {} symbol errors at {} dB; standard error is unreliable",
                        r.sim.symbol_errors, r.snr_db
                    )?;
                }
                t.push(vec![
                    fmt_num(r.snr_db),
                    fmt_num(r.sigma),
                    fmt_num(r.ub),
                    fmt_opt(r.lb),
                    fmt_num(r.asym),
                    fmt_num(r.sim.estimate),
                    fmt_num(r.sim.stderr),
                ]);
            }
            emit(&a.sweep.out, &t.to_csv(), stdout)
        }
        Command::Regions(a) => {
            let bundle = a.source.load()?;
            let noise = match (a.sigma2, a.snr) {
                (Some(v), _) => Noise::from_variance(v)?,
                (None, Some(db)) => Noise::from_snr_db(bundle.average_energy(), db)?,
                (None, None) => {
                    return Err(CliError::Usage("one of --sigma2 or --snr is required".into()))
                }
            };
            let window = parse_window(&a.window)?;
            let raster =
                rasterize_regions(&bundle, a.detector.into(), noise, window, a.resolution)?;
            let mut t = Table::new(["x", "y", "point"]);
            for row in 0..raster.resolution {
                for col in 0..raster.resolution {
                    let (x, y) = raster.center(row, col);
                    t.push(vec![
                        fmt_num(x),
                        fmt_num(y),
                        (raster.get(row, col) + 1).to_string(),
                    ]);
                }
            }
            emit(&a.out, &t.to_csv(), stdout)
        }
        Command::Generate(a) => {
            let bundle = a.source.load()?;
            emit(&a.out, &serialize_constellation(&bundle), stdout)
        }
    }
}

/// Runs the CLI on `argv` (including the program name) and returns the
/// process exit status.
pub fn run_command<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    match execute(cli, stdout, stderr) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            1
        }
    }
}
