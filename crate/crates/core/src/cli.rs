//! File-level entry points used by the binary.

use std::path::Path;

use rayon::prelude::*;

use crate::classify::{classify_detailed, Config};
use crate::error::{Error, Result};
use crate::problem::ProblemFile;
use crate::report::Report;

#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    pub json_in: bool,
    pub config: Config,
    /// Command-line overrides win over options in the file.
    pub seed: Option<u64>,
    pub max_retries: Option<usize>,
    pub radius: Option<crate::Rational>,
    pub trace: bool,
    pub verify: bool,
}

/// One report plus diagnostic lines for `--trace`.
#[derive(Clone, Debug)]
pub struct FileResult {
    pub report: Report,
    pub trace: Vec<String>,
}

fn load(path: &Path, json_in: bool) -> Result<ProblemFile> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let is_json = json_in || path.extension().is_some_and(|e| e == "json");
    if is_json {
        ProblemFile::parse_json(&text)
    } else {
        ProblemFile::parse_text(&text)
    }
}

pub fn run_problem_file(pf: &ProblemFile, name: Option<String>, opts: &RunOptions) -> FileResult {
    let mut cfg = match pf.config(&opts.config) {
        Ok(c) => c,
        Err(e) => return FileResult { report: Report::from_error(name, opts.config.rng_seed, &e), trace: vec![] },
    };
    if let Some(s) = opts.seed {
        cfg.rng_seed = s;
    }
    if let Some(m) = opts.max_retries {
        cfg.max_coordinate_retries = m;
    }
    if let Some(r) = &opts.radius {
        cfg.radius_override = Some(r.clone());
    }
    let outcome = pf.to_problem().and_then(|p| classify_detailed(&p, &cfg));
    match outcome {
        Err(e) => FileResult { report: Report::from_error(name, cfg.rng_seed, &e), trace: vec![] },
        Ok(o) => {
            let mut report = Report::from_outcome(name, &o, opts.trace);
            if opts.verify {
                match o.verify() {
                    Ok(()) => report.verified = Some(true),
                    Err(e) => {
                        report.verified = Some(false);
                        report.warnings.push(format!("verification: {e}"));
                        report.exit_code = 2;
                    }
                }
            }
            let trace = if opts.trace { o.stats.notes.clone() } else { Vec::new() };
            FileResult { report, trace }
        }
    }
}

pub fn run_file(path: &Path, opts: &RunOptions) -> FileResult {
    let name = Some(path.display().to_string());
    match load(path, opts.json_in) {
        Ok(pf) => run_problem_file(&pf, name, opts),
        Err(e) => FileResult { report: Report::from_error(name, opts.seed.unwrap_or(opts.config.rng_seed), &e), trace: vec![] },
    }
}

/// Reports in input order; `jobs = 1` runs sequentially.
pub fn run_batch<P: AsRef<Path> + Sync>(paths: &[P], opts: &RunOptions, jobs: usize) -> Vec<FileResult> {
    if jobs <= 1 || paths.len() <= 1 {
        return paths.iter().map(|p| run_file(p.as_ref(), opts)).collect();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(pool) => pool.install(|| paths.par_iter().map(|p| run_file(p.as_ref(), opts)).collect()),
        Err(_) => paths.iter().map(|p| run_file(p.as_ref(), opts)).collect(),
    }
}

/// Overall status: 0 if every file succeeded, else the largest per-file code.
pub fn batch_exit_code(results: &[FileResult]) -> i32 {
    results.iter().map(|r| r.report.exit_code).max().unwrap_or(0)
}
