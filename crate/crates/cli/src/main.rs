//! `verify`: runs the verification suites and writes a report.
//!
//! Exit status: 0 when every check passes, 1 on any failure, 2 on a
//! configuration error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use g2dual::report::{self, Config, Format};
use g2dual::{g2, rep7, Error, Q};

#[derive(Debug, Parser)]
#[command(name = "verify", version, about = "Exact verification of the G2 x SL2 component counts")]
struct Args {
    /// Suites to run: a comma-separated subset of algebra, combinatorics,
    /// slice, linear, or `all`.
    #[arg(long = "suite", default_value = "all")]
    suite: String,

    /// Primes for the finite-field orbit oracle.
    #[arg(long, value_delimiter = ',', default_value = "3,5,7")]
    primes: Vec<u64>,

    /// Overrides both sample counts (10 slice points, 100 conormal pairs).
    #[arg(long)]
    samples: Option<usize>,

    #[arg(long, default_value_t = 42)]
    seed: u64,

    #[arg(long, default_value = "text")]
    format: String,

    /// Report destination; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,

    /// Record per-check wall-clock time (makes reports non-reproducible).
    #[arg(long)]
    timings: bool,

    /// Write the adjoint and 7-dimensional representation matrices here.
    #[arg(long)]
    dump_matrices: Option<PathBuf>,
}

fn config_from(args: &Args) -> Result<Config, Error> {
    let defaults = Config::default();
    let format: Format = args.format.parse()?;
    Ok(Config {
        suites: report::parse_suites(&args.suite)?,
        primes: args.primes.clone(),
        rank_samples: args.samples.unwrap_or(defaults.rank_samples),
        conormal_samples: args.samples.unwrap_or(defaults.conormal_samples),
        seed: args.seed,
        format,
        out: args.out.clone(),
        timings: args.timings,
    })
}

fn dump(path: &PathBuf) -> Result<(), Error> {
    let rep = rep7::build_rep7()?;
    let body = format!("{}\n{}", g2::adjoint_table::<Q>(), rep.dump());
    std::fs::write(path, body).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

fn main() -> ExitCode {
    let args = Args::parse();
    let config = match config_from(&args).and_then(|c| c.validate().map(|_| c)) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("verify: {e}");
            return ExitCode::from(2);
        }
    };
    if let Some(path) = &args.dump_matrices {
        if let Err(e) = dump(path) {
            eprintln!("verify: {e}");
            return ExitCode::from(1);
        }
    }
    let report = match report::run_suite(&config) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("verify: {e}");
            return ExitCode::from(2);
        }
    };
    if let Err(e) = report::write_output(&config, &report::emit(&report, &config)) {
        eprintln!("verify: {e}");
        return ExitCode::from(1);
    }
    if report.all_passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
