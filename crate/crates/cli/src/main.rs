use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, CommandFactory, Parser, Subcommand};
use sle::distributions::{grid, mellin_sides, write_csv};
use sle::montecarlo::{sample_sle, validate, DEFAULT_PARTITIONS, MEAN_Z_THRESHOLD};
use sle::{coefficients, CoefficientTable, Engine, SimulationConfig, SleDistribution};

/// Exact law of the scaled largest eigenvalue of a complex Wishart matrix.
#[derive(Debug, Parser)]
#[command(name = "sle", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Coefficient table of the largest-eigenvalue density, as JSON
    Coeffs(Common),
    /// Density and distribution function on a grid, as CSV `x,pdf,cdf`
    Pdf(Tabulate),
    /// Same table as `pdf`
    Cdf(Tabulate),
    /// `y` with `F(y) = p`
    Quantile {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        p: f64,
    },
    /// Threshold `t` with `P(X > t) = alpha`
    Threshold {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        alpha: f64,
    },
    /// Monte Carlo draws checked against the exact law
    Validate {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_PARTITIONS)]
        partitions: u32,
    },
    /// Exact moments `E[X^m]` for `m = 0..=M` and the Mellin product check
    Moments {
        #[command(flatten)]
        common: Common,
        #[arg(long = "M", default_value_t = 4)]
        m: usize,
    },
}

#[derive(Debug, Args)]
struct Common {
    /// Number of antennas (rows)
    #[arg(long = "K")]
    k: u32,
    /// Number of samples (columns)
    #[arg(long = "N")]
    n: u32,
    /// auto, closed-form or hankel
    #[arg(long, default_value = "auto")]
    engine: Engine,
    /// Output file; standard output when absent
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct Tabulate {
    #[command(flatten)]
    common: Common,
    /// Uniform points on [1, K]; the breakpoints K/i are always added
    #[arg(long, default_value_t = 512)]
    grid: usize,
}

impl Common {
    fn table(&self) -> Result<CoefficientTable> {
        Ok(coefficients(self.k, self.n, self.engine)?)
    }

    fn distribution(&self) -> Result<SleDistribution> {
        Ok(SleDistribution::new(self.table()?)?)
    }

    fn sink(&self) -> Result<Box<dyn Write>> {
        sink(self.out.as_deref())
    }
}

fn sink(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("cannot create {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn sidecar_path(path: &Path) -> PathBuf {
    let mut name = path.as_os_str().to_owned();
    name.push(".meta.json");
    PathBuf::from(name)
}

/// Runs one command; `Ok(false)` means it ran but a check failed.
fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Coeffs(common) => {
            let table = common.table()?;
            let mut out = common.sink()?;
            writeln!(out, "{}", table.to_json())?;
            out.flush()?;
        }
        Command::Pdf(t) | Command::Cdf(t) => {
            let d = t.common.distribution()?;
            let mut out = t.common.sink()?;
            write_csv(&d, &grid(d.k(), t.grid), &mut out)?;
            out.flush()?;
        }
        Command::Quantile { common, p } => {
            let y = common.distribution()?.quantile(p)?;
            let mut out = common.sink()?;
            writeln!(out, "{y:?}")?;
            out.flush()?;
        }
        Command::Threshold { common, alpha } => {
            let t = common.distribution()?.threshold_for_false_alarm(alpha)?;
            let mut out = common.sink()?;
            writeln!(out, "{t:?}")?;
            out.flush()?;
        }
        Command::Validate {
            common,
            samples,
            seed,
            partitions,
        } => {
            let config = SimulationConfig::new(common.k, common.n, samples, seed)?
                .with_partitions(partitions)?;
            let d = common.distribution()?;
            let sample = sample_sle(&config)?;
            if let Some(path) = &common.out {
                let mut csv = sink(Some(path))?;
                sample.write_csv(&mut csv)?;
                csv.flush()?;
                let meta = sidecar_path(path);
                std::fs::write(&meta, sample.metadata_json() + "\n")
                    .with_context(|| format!("cannot write {}", meta.display()))?;
            }
            let report = validate(&sample, &d)?;
            let verdict = |ok: bool| if ok { "pass" } else { "fail" };
            println!(
                "ks_distance {:?} (threshold {:?}) {}",
                report.ks_distance,
                report.ks_threshold(),
                verdict(report.ks_passes())
            );
            println!("exact_mean {:?}", report.exact_mean);
            println!(
                "empirical_mean {:?} (standard error {:?})",
                report.empirical_mean, report.standard_error
            );
            println!(
                "mean_z {:?} (threshold {MEAN_Z_THRESHOLD:?}) {}",
                report.mean_z_score(),
                verdict(report.mean_passes())
            );
            println!("{}", if report.passes() { "PASS" } else { "FAIL" });
            return Ok(report.passes());
        }
        Command::Moments { common, m } => {
            let d = common.distribution()?;
            let mut out = common.sink()?;
            let mut all_hold = true;
            for order in 0..=m {
                writeln!(out, "E[X^{order}] = {}", d.moment(order))?;
            }
            for z in 1..=(m as u32 + 1) {
                let (lhs, rhs) = mellin_sides(&d, z)?;
                let holds = lhs == rhs;
                all_hold &= holds;
                writeln!(
                    out,
                    "z = {z}: E[lambda1^{}] = {lhs}, E[X^{}] E[T^{}] = {rhs} {}",
                    z - 1,
                    z - 1,
                    z - 1,
                    if holds { "holds" } else { "FAILS" }
                )?;
            }
            out.flush()?;
            return Ok(all_hold);
        }
    }
    Ok(true)
}

/// Usage line of the subcommand named on the command line, if any.
fn usage() -> String {
    let mut cmd = Cli::command();
    cmd.build();
    let name = std::env::args().nth(1).unwrap_or_default();
    match cmd.find_subcommand_mut(&name) {
        Some(sub) => sub.render_usage().to_string(),
        None => cmd.render_usage().to_string(),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => e.exit(),
        Err(e) => {
            let rendered = e.render().to_string();
            eprint!("{rendered}");
            if !rendered.contains("Usage:") {
                eprintln!("\n{}", usage());
            }
            return ExitCode::from(2);
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}\n\n{}", usage());
            ExitCode::FAILURE
        }
    }
}
