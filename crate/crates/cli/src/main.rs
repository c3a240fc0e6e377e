use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use bvk_cli::{emit_report, run_suite, ConfigError, Format, Suite, SuiteConfig, EXIT_CONFIG, DEFAULT_SEED};
use bvk_core::{GridDomain, Plane};
use clap::Parser;

/// Run verification suites for bicomplex pseudoanalytic function theory.
#[derive(Debug, Parser)]
#[command(name = "bvk", version)]
struct Args {
    /// algebra, calculus, pseudoanalytic, schrodinger or all
    #[arg(long, default_value = "all")]
    suite: Suite,
    /// Lattice, e.g. "x=-1:1:9,y=-1:1:9,p=-1:1:9,q=-1:1:9"; a single value freezes an axis
    #[arg(long)]
    grid: Option<GridDomain>,
    /// Restriction plane for the specializations: c2 or d
    #[arg(long)]
    plane: Option<Plane>,
    /// Particular solution f0: catalog name or expression
    #[arg(long)]
    f0: Option<String>,
    /// Generating pair: catalog name or "F,G"
    #[arg(long)]
    pair: Option<String>,
    /// Extra test function
    #[arg(long)]
    w: Option<String>,
    /// Residual tolerance override (default: BVK_TOL, else per-case defaults)
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Halve the grid spacing this many times
    #[arg(long, default_value_t = 0)]
    refine: u32,
    /// Output file (default: stdout)
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value = "json")]
    format: Format,
}

fn env_tol() -> Result<Option<f64>, String> {
    match std::env::var("BVK_TOL") {
        Ok(s) => s.trim().parse().map(Some).map_err(|_| format!("BVK_TOL is not a number: `{s}`")),
        Err(_) => Ok(None),
    }
}

fn run(args: Args) -> Result<i32, String> {
    let tol = match args.tol {
        Some(t) => Some(t),
        None => env_tol()?,
    };
    let cfg = SuiteConfig {
        suite: args.suite,
        grid: args.grid,
        plane: args.plane,
        f0: args.f0,
        pair: args.pair,
        w: args.w,
        tol,
        seed: args.seed,
        refine: args.refine,
        out: args.out,
        format: args.format,
    };
    let run = run_suite(&cfg).map_err(|e| e.to_string())?;
    let write = |w: &mut dyn Write| -> Result<(), ConfigError> {
        emit_report(&run.reports, cfg.format, w)?;
        w.flush()?;
        Ok(())
    };
    match &cfg.out {
        Some(p) => {
            let f = File::create(p).map_err(|e| format!("{}: {e}", p.display()))?;
            write(&mut BufWriter::new(f)).map_err(|e| e.to_string())?;
        }
        None => write(&mut io::stdout().lock()).map_err(|e| e.to_string())?,
    }
    let failed = run.failures().count();
    eprintln!("{} cases, {} failed", run.reports.len(), failed);
    for r in run.failures() {
        eprintln!("FAIL {} {}: max {:e} > tol {:e}", r.suite, r.case_id, r.max_residual, r.tolerance);
    }
    Ok(run.exit_code())
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { 0 };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    match run(args) {
        Ok(code) => ExitCode::from(code as u8),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_CONFIG as u8)
        }
    }
}
