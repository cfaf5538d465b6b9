use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use renorm_core::harness::{
    compare_schemes_with, parse_potential, parse_real_list, parse_schemes, records_of, render_records,
    render_reports, run_scheme, run_sweep, OutputFormat, ResultRecord, SchemeOptions, SweepSpec,
    DEFAULT_COMPARISON_TOL,
};
use renorm_core::{Error, ScatteringConfig, Scheme};

#[derive(Parser)]
#[command(name = "renorm", version, about = "Renormalized Born phase shifts for singular power-law potentials")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Phase shifts from one or more schemes.
    PhaseShift {
        /// lj12:eta,alpha,beta | ljgen:eta,alpha,beta,m | terms:c/r^m,...
        #[arg(long)]
        potential: String,
        /// Comma-separated wave numbers.
        #[arg(long)]
        k: String,
        #[arg(long, default_value_t = 0)]
        l: u32,
        #[arg(long, default_value_t = 3.0)]
        n: f64,
        /// A scheme name, a comma list of names, or `all`.
        #[arg(long, default_value = "all")]
        scheme: String,
        /// Split point for acont.
        #[arg(long)]
        eps: Option<f64>,
        /// Comma-separated, strictly decreasing cutoffs for minsub.
        #[arg(long)]
        eps_grid: Option<String>,
        /// Integration tolerance for the numerical schemes.
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long, default_value = "table")]
        format: String,
    },
    /// All three schemes at one point, with an agreement verdict.
    Compare {
        #[arg(long)]
        potential: String,
        #[arg(long)]
        k: f64,
        #[arg(long, default_value_t = 0)]
        l: u32,
        #[arg(long, default_value_t = 3.0)]
        n: f64,
        /// Agreement tolerance, absolute or relative, whichever is looser.
        #[arg(long, default_value_t = DEFAULT_COMPARISON_TOL)]
        tol: f64,
        #[arg(long, default_value = "table")]
        format: String,
    },
    /// Comparison over a grid described by a key = value file.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        /// Overrides the format in the config file.
        #[arg(long)]
        format: Option<String>,
    },
}

/// Bad arguments or configuration, as opposed to a scheme failing.
struct UsageError(String);

impl From<Error> for UsageError {
    fn from(e: Error) -> Self {
        UsageError(e.to_string())
    }
}

fn phase_shift(
    potential: &str,
    k: &str,
    l: u32,
    n: f64,
    scheme: &str,
    opts: SchemeOptions,
    format: &str,
) -> Result<bool, UsageError> {
    let v = parse_potential(potential)?;
    let schemes = parse_schemes(scheme)?;
    let format: OutputFormat = format.parse()?;
    let configs = parse_real_list(k)?
        .into_iter()
        .map(|k| ScatteringConfig::new(k, l, n))
        .collect::<Result<Vec<_>, _>>()?;
    let records: Vec<ResultRecord> = configs
        .iter()
        .flat_map(|cfg| {
            schemes
                .iter()
                .map(|&s| ResultRecord::new(cfg, s, &run_scheme(&v, cfg, s, &opts)))
                .collect::<Vec<_>>()
        })
        .collect();
    print!("{}", render_records(&records, format));
    Ok(records.iter().all(ResultRecord::is_ok))
}

fn run(cli: Cli) -> Result<bool, UsageError> {
    match cli.command {
        Command::PhaseShift { potential, k, l, n, scheme, eps, eps_grid, tol, format } => {
            let opts = SchemeOptions {
                eps,
                eps_grid: eps_grid.as_deref().map(parse_real_list).transpose()?,
                tol,
            };
            phase_shift(&potential, &k, l, n, &scheme, opts, &format)
        }
        Command::Compare { potential, k, l, n, tol, format } => {
            let v = parse_potential(&potential)?;
            let cfg = ScatteringConfig::new(k, l, n)?;
            let format: OutputFormat = format.parse()?;
            let report = compare_schemes_with(&v, &cfg, &Scheme::ALL, tol, &SchemeOptions::default());
            print!("{}", render_reports(std::slice::from_ref(&report), format));
            Ok(!report.has_errors())
        }
        Command::Sweep { config, format } => {
            let text = fs::read_to_string(&config)
                .map_err(|e| UsageError(format!("cannot read {}: {e}", config.display())))?;
            let spec: SweepSpec = text.parse()?;
            let format = match format {
                Some(f) => f.parse()?,
                None => spec.format.unwrap_or_else(|| format_from_path(spec.output.as_ref())),
            };
            let reports = run_sweep(&spec)?;
            let rendered = render_reports(&reports, format);
            match &spec.output {
                Some(path) => fs::write(path, rendered)
                    .map_err(|e| UsageError(format!("cannot write {}: {e}", path.display())))?,
                None => print!("{rendered}"),
            }
            Ok(reports.iter().all(|r| records_of(r).iter().all(ResultRecord::is_ok)))
        }
    }
}

fn format_from_path(path: Option<&PathBuf>) -> OutputFormat {
    match path.and_then(|p| p.extension()).and_then(|e| e.to_str()) {
        Some("csv") => OutputFormat::Csv,
        Some("txt") => OutputFormat::Table,
        _ => OutputFormat::Json,
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
