//! Command-line front end: point-count tables, verification suites and the acceptance self-test.

pub mod args;
pub mod commands;
pub mod criteria;
pub mod report;

use std::ffi::OsString;
use std::fmt;
use std::io::Write;
use std::time::Instant;

use anyhow::Result;
use clap::Parser;
use serde_json::json;

use args::{Cli, Command};
use report::{Cell, Report};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Invalid flag values or combinations, reported with exit code 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn selftest() -> Report {
    let mut report = Report::new(&["criterion", "status", "title", "seconds", "detail"], json!(null));
    let mut items = Vec::new();
    for o in criteria::run_all() {
        log::info!("{}", o.line());
        report.ok &= o.pass;
        report.push(vec![
            o.id.into(),
            if o.pass { "PASS" } else { "FAIL" }.into(),
            o.title.into(),
            Cell::from(format!("{:.2}", o.seconds)),
            o.detail.clone().into(),
        ]);
        items.push(json!({"criterion": o.id, "title": o.title, "pass": o.pass, "seconds": o.seconds, "detail": o.detail}));
    }
    report.json = json!({"all_pass": report.ok, "criteria": items});
    report
}

fn dispatch(cli: &Cli) -> Result<Report> {
    match &cli.command {
        Command::Tables(a) => commands::tables(a),
        Command::VerifySieve(a) => commands::verify_sieve(a),
        Command::VerifyHyperelliptic(a) => commands::verify_hyperelliptic(a),
        Command::VerifyQuadruples(a) => commands::verify_quadruples(a),
        Command::LocalSystems => commands::local_systems(),
        Command::Selftest => Ok(selftest()),
    }
}

fn configure_threads(threads: Option<usize>) -> Result<(), UsageError> {
    if let Some(n) = threads {
        if n == 0 {
            return Err(UsageError("--threads must be positive".into()));
        }
        if rayon::ThreadPoolBuilder::new().num_threads(n).build_global().is_err() {
            log::warn!("thread pool already configured; ignoring --threads {n}");
        }
    }
    Ok(())
}

/// Runs the command line `argv` (program name first), writing the report to
/// `stdout` or `--out`, and returns the exit code.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if e.use_stderr() { write!(stderr, "{e}") } else { write!(stdout, "{e}") };
            return code;
        }
    };
    if let Err(e) = configure_threads(cli.threads) {
        let _ = writeln!(stderr, "error: {e}");
        return EXIT_USAGE;
    }
    let start = Instant::now();
    let report = match dispatch(&cli) {
        Ok(r) => r,
        Err(e) if e.is::<UsageError>() => {
            let _ = writeln!(stderr, "error: {e}");
            return EXIT_USAGE;
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e:#}");
            return EXIT_MISMATCH;
        }
    };
    log::info!("{:?} finished in {:.3} s", cli.command, start.elapsed().as_secs_f64());
    let text = match report.render(cli.format) {
        Ok(t) => t,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e:#}");
            return EXIT_MISMATCH;
        }
    };
    let written = match &cli.out {
        Some(path) => std::fs::write(path, &text).map_err(anyhow::Error::from),
        None => stdout.write_all(text.as_bytes()).map_err(anyhow::Error::from),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: {e:#}");
        return EXIT_MISMATCH;
    }
    if report.ok {
        EXIT_OK
    } else {
        EXIT_MISMATCH
    }
}
