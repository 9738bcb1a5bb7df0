use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use kkt_type::classify::Config;
use kkt_type::cli::{batch_exit_code, run_batch, RunOptions};
use kkt_type::poly::parse_rational;

/// Classify an isolated KKT point as local minimizer, local maximizer or
/// not an extremum, with exact certificates.
#[derive(Parser, Debug)]
#[command(name = "kkt-type", version)]
struct Args {
    /// Problem files (text format, or JSON with --json-in or a .json extension).
    files: Vec<PathBuf>,
    /// Read problem files as JSON.
    #[arg(long)]
    json_in: bool,
    /// Emit JSON reports.
    #[arg(long)]
    json: bool,
    /// Seed for generic coordinate changes.
    #[arg(long)]
    seed: Option<u64>,
    /// Coordinate changes tried in step 1 after the identity.
    #[arg(long)]
    max_retries: Option<usize>,
    /// Use this sphere radius (p/q) after certifying it.
    #[arg(long)]
    radius: Option<String>,
    /// Print Gröbner/RUR statistics and timings to stderr.
    #[arg(long)]
    trace: bool,
    /// Re-check every certificate after classifying.
    #[arg(long)]
    verify: bool,
    /// Files processed concurrently.
    #[arg(long, short = 'j', default_value_t = 1)]
    jobs: usize,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let radius = match args.radius.as_deref().map(parse_rational).transpose() {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: --radius: {e}");
            return ExitCode::from(1);
        }
    };
    let opts = RunOptions {
        json_in: args.json_in,
        config: Config::default(),
        seed: args.seed,
        max_retries: args.max_retries,
        radius,
        trace: args.trace,
        verify: args.verify,
    };
    let results = run_batch(&args.files, &opts, args.jobs.max(1));
    for r in &results {
        for line in &r.trace {
            eprintln!("{line}");
        }
    }
    let mut out = std::io::stdout().lock();
    if args.json {
        let reports: Vec<_> = results.iter().map(|r| &r.report).collect();
        let text = if reports.len() == 1 {
            reports[0].to_json()
        } else {
            serde_json::to_string_pretty(&reports).expect("reports serialize")
        };
        let _ = writeln!(out, "{text}");
    } else {
        for (k, r) in results.iter().enumerate() {
            if k > 0 {
                let _ = writeln!(out);
            }
            let _ = write!(out, "{}", r.report.to_text());
        }
    }
    // a closed pipe (e.g. `| head`) is not an error worth a panic
    let _ = out.flush();
    ExitCode::from(batch_exit_code(&results) as u8)
}
