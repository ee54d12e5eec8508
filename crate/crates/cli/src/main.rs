//! `dgrover` — Grover-walk analysis of Cayley graphs over dihedral groups.

use clap::{Parser, Subcommand, ValueEnum};

use dgrover_cli::analyze::{analyze, scan_family, scan_json, scan_table, AnalyzeOptions};
use dgrover_cli::family::Family;
use dgrover_cli::parse::parse_set;
use dgrover_cli::CliError;

#[derive(Parser)]
#[command(
    name = "dgrover",
    version,
    about = "Spectra, periodicity and perfect state transfer of Grover walks on Cay(D_n, S)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze a single Cayley graph.
    Analyze {
        /// Dihedral order parameter (the group has 2n elements).
        #[arg(long)]
        n: usize,
        /// Connection-set expression, e.g. "b, b*a^1" or "b*<a^2>".
        #[arg(long)]
        set: String,
        /// Cross-check the classifier against the brute-force oracle.
        #[arg(long)]
        verify: bool,
        /// Search horizon for transfer times (default 8n).
        #[arg(long, value_name = "T")]
        tau_max: Option<u64>,
        /// Entry tolerance for the brute-force scan (default 1e-9, or
        /// DGROVER_TOL).
        #[arg(long, value_name = "X")]
        tol: Option<f64>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Analyze a whole named family over a parameter range.
    Scan {
        /// Family id: example-5.1, example-5.2, example-5.3a, example-5.3b
        /// or example-5.4.
        #[arg(long)]
        family: String,
        #[arg(long)]
        from: i64,
        #[arg(long)]
        to: i64,
        /// Worker threads.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

fn tolerance(flag: Option<f64>) -> Result<f64, CliError> {
    if let Some(t) = flag {
        return Ok(t);
    }
    match std::env::var("DGROVER_TOL") {
        Ok(text) => text
            .parse::<f64>()
            .map_err(|_| CliError::Usage(format!("DGROVER_TOL is not a number: {text:?}"))),
        Err(_) => Ok(dgrover_core::ZERO_TOL),
    }
}

fn run(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Analyze {
            n,
            set,
            verify,
            tau_max,
            tol,
            format,
        } => {
            let expr = parse_set(&set, n)?;
            let opts = AnalyzeOptions {
                verify,
                tau_max,
                tol: tolerance(tol)?,
            };
            let report = analyze(&expr, &opts)?;
            Ok(match format {
                Format::Json => report.to_json(),
                Format::Text => report.to_text(),
            })
        }
        Command::Scan {
            family,
            from,
            to,
            jobs,
            format,
        } => {
            let family: Family = family.parse()?;
            let rows = scan_family(family, from, to, jobs, &AnalyzeOptions::default())?;
            Ok(match format {
                Format::Json => scan_json(&rows),
                Format::Text => scan_table(&rows),
            })
        }
    }
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(output) => print!("{output}"),
        Err(err) => {
            eprintln!("error: {err}");
            std::process::exit(err.exit_code());
        }
    }
}
