//! `qcs` — verification suites for the q-oscillator coherent-state toolkit.
//!
//! Exit codes: 0 when every check passes, 1 on any tolerance failure
//! (results are still written), 2 on invalid input.

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use qcs_core::qspecial::QBase;
use qcs_core::Error;

mod report;
mod suites;

use report::{emit_csv, emit_json, sort_rows, CheckRow};
use suites::SuiteCtx;

#[derive(Parser, Debug)]
#[command(
    name = "qcs",
    version,
    about = "Numerical checks for the q-deformed oscillator, its coherent states, and their completeness measure"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,

    /// Deformation base, strictly inside (0,1)
    #[arg(long, global = true, default_value_t = 0.5)]
    q: f64,

    /// Base parameter a1 (> 0)
    #[arg(long, global = true, default_value_t = 1.0)]
    a1: f64,

    /// Remainder constant c, so that R(a1) = c*a1 (> 0)
    #[arg(long, global = true, default_value_t = 1.0)]
    c: f64,

    /// Largest index in moment and completeness tables
    #[arg(long = "n-max", global = true, default_value_t = 8)]
    n_max: usize,

    /// Fock-space truncation level N
    #[arg(long, global = true, default_value_t = 32)]
    trunc: usize,

    /// Pass/fail tolerance (checks with a coarser method floor use the floor)
    #[arg(long, global = true, default_value_t = 1e-8)]
    tol: f64,

    /// Seed for every random stream in the run
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,

    /// Monte Carlo samples per matrix element
    #[arg(long, global = true, default_value_t = 100_000)]
    samples: usize,

    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = OutFormat::Json)]
    format: OutFormat,

    /// Output path; "-" writes to stdout
    #[arg(long = "out", global = true, default_value = "-")]
    out: String,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// q-series self-checks (products, q-exponentials, moment ratios)
    Special,
    /// Moment quadrature against the closed form
    Ramanujan,
    /// Ladder-operator commutation-relation residuals
    Algebra,
    /// Coherent-state identities across both representations
    Coherent,
    /// Resolution-of-identity table, radial and Monte Carlo
    Completeness,
    /// Driven-evolution diagnostics
    Evolve,
    /// Every suite in sequence
    VerifyAll,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OutFormat {
    Json,
    Csv,
}

fn build_ctx(cli: &Cli) -> Result<SuiteCtx, Error> {
    let q = QBase::new(cli.q)?;
    if !(cli.a1.is_finite() && cli.a1 > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "a1 must be positive, got {}",
            cli.a1
        )));
    }
    if !(cli.c.is_finite() && cli.c > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "c must be positive, got {}",
            cli.c
        )));
    }
    if !(cli.tol.is_finite() && cli.tol > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "tol must be positive, got {}",
            cli.tol
        )));
    }
    if cli.trunc < 4 || cli.trunc > 1024 {
        return Err(Error::InvalidParameter(format!(
            "trunc must lie in 4..=1024 (dense matrices), got {}",
            cli.trunc
        )));
    }
    if cli.n_max > 12 {
        return Err(Error::InvalidParameter(format!(
            "n-max must be at most 12, got {}",
            cli.n_max
        )));
    }
    Ok(SuiteCtx {
        q,
        a1: cli.a1,
        c: cli.c,
        n_max: cli.n_max,
        trunc: cli.trunc,
        tol: cli.tol,
        seed: cli.seed,
        samples: cli.samples,
    })
}

fn write_output(rows: &[CheckRow], format: OutFormat, path: &str) -> std::io::Result<()> {
    let body = match format {
        OutFormat::Json => emit_json(rows),
        OutFormat::Csv => emit_csv(rows),
    };
    if path == "-" {
        std::io::stdout().write_all(body.as_bytes())
    } else {
        std::fs::write(path, body.as_bytes())
            .map_err(|e| std::io::Error::new(e.kind(), format!("{path}: {e}")))
    }
}

fn run() -> u8 {
    let cli = Cli::parse();
    let ctx = match build_ctx(&cli) {
        Ok(ctx) => ctx,
        Err(e) => {
            eprintln!("qcs: {e}");
            return 2;
        }
    };
    let result = match cli.command {
        Cmd::Special => suites::special(&ctx),
        Cmd::Ramanujan => suites::ramanujan(&ctx),
        Cmd::Algebra => suites::algebra(&ctx),
        Cmd::Coherent => suites::coherent(&ctx),
        Cmd::Completeness => suites::completeness(&ctx),
        Cmd::Evolve => suites::evolve(&ctx),
        Cmd::VerifyAll => suites::verify_all(&ctx),
    };
    let mut rows = match result {
        Ok(rows) => rows,
        Err(e @ Error::InvalidParameter(_)) => {
            eprintln!("qcs: {e}");
            return 2;
        }
        Err(e) => {
            eprintln!("qcs: computation failed: {e}");
            return 1;
        }
    };
    sort_rows(&mut rows);
    if let Err(e) = write_output(&rows, cli.format, &cli.out) {
        eprintln!("qcs: cannot write output: {e}");
        return 2;
    }
    let failed: Vec<&CheckRow> = rows.iter().filter(|r| !r.pass).collect();
    let total = rows.len();
    if failed.is_empty() {
        eprintln!("qcs: {total}/{total} checks passed");
        0
    } else {
        eprintln!("qcs: {}/{} checks passed", total - failed.len(), total);
        for row in failed {
            eprintln!(
                "qcs: FAIL {} (m={:?}, n={:?}): value {:.6e}, reference {:.6e}, rel_err {:.3e}",
                row.check, row.m, row.n, row.value_re, row.reference, row.rel_err
            );
        }
        1
    }
}

fn main() -> ExitCode {
    ExitCode::from(run())
}
