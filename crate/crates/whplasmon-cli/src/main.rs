use std::collections::BTreeMap;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use whplasmon_cli::config::{parse_settings, RunConfig};
use whplasmon_cli::output::Report;
use whplasmon_cli::{commands, CliError, CliResult};

/// Diffraction by a semi-infinite resistive sheet: split-function table,
/// field sweeps and checks.
#[derive(Parser, Debug)]
#[command(name = "whplasmon", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Flat key = value file; flags override it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Wavenumber, e.g. "1+0.05i".
    #[arg(long, global = true, allow_hyphen_values = true)]
    k: Option<String>,
    /// Dimensionless sheet strength, e.g. "0.002+0.2i".
    #[arg(long, global = true, allow_hyphen_values = true)]
    varsigma: Option<String>,
    /// Angle of incidence in degrees.
    #[arg(long = "theta-deg", global = true, allow_hyphen_values = true)]
    theta_deg: Option<String>,
    /// x_min:x_max:points:lin|log in units of 1/|k|.
    #[arg(long, global = true)]
    grid: Option<String>,
    #[arg(long = "rel-tol", global = true)]
    rel_tol: Option<String>,
    /// csv or json.
    #[arg(long, global = true)]
    format: Option<String>,
    /// Output file (default: stdout).
    #[arg(long, global = true)]
    out: Option<String>,
    /// Oracle truncation length in units of 1/|k|.
    #[arg(long = "oracle-kL", global = true)]
    oracle_kl: Option<String>,
    /// Oracle cell count.
    #[arg(long = "oracle-N", global = true)]
    oracle_n: Option<String>,
    /// Oracle comparison window lo:hi in units of 1/|k|.
    #[arg(long, global = true)]
    window: Option<String>,
    /// Oracle RMS threshold.
    #[arg(long = "max-rms", global = true)]
    max_rms: Option<String>,
}

#[derive(Subcommand, Debug, Clone, Copy)]
enum Command {
    /// Q₊ at k_∥ and k_sp by three methods.
    SplitTable,
    /// u, u_dir, u_sp and u_rad over a grid.
    FieldSweep,
    /// Truncated integral-equation solve against the analytic field.
    OracleCompare,
    /// Quick invariant checks.
    Invariants,
}

impl Cli {
    fn settings(&self) -> CliResult<BTreeMap<String, String>> {
        let mut s = match &self.config {
            Some(path) => parse_settings(&std::fs::read_to_string(path)?)?,
            None => BTreeMap::new(),
        };
        let flags = [
            ("k", &self.k),
            ("varsigma", &self.varsigma),
            ("theta_deg", &self.theta_deg),
            ("grid", &self.grid),
            ("rel_tol", &self.rel_tol),
            ("format", &self.format),
            ("out", &self.out),
            ("oracle_kL", &self.oracle_kl),
            ("oracle_N", &self.oracle_n),
            ("window", &self.window),
            ("max_rms", &self.max_rms),
        ];
        for (k, v) in flags {
            if let Some(v) = v {
                s.insert(k.to_string(), v.clone());
            }
        }
        Ok(s)
    }
}

fn run(cli: &Cli) -> CliResult<bool> {
    let cfg = RunConfig::from_settings(&cli.settings()?)?;
    let report: Report = match cli.command {
        Command::SplitTable => commands::split_table(&cfg)?,
        Command::FieldSweep => commands::field_sweep(&cfg)?,
        Command::OracleCompare => commands::oracle_compare(&cfg)?,
        Command::Invariants => commands::invariants(&cfg)?,
    };
    let mut w: Box<dyn Write> = match &cfg.out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    report.write(&cfg, &mut w)?;
    Ok(report.ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("whplasmon: {e}");
            ExitCode::from(match e {
                CliError::Config(_) => 2,
                _ => 3,
            })
        }
    }
}
