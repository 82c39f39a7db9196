//! `verify`: run a verification suite and write its report.
//!
//! Exit status: 0 when every row passes, 1 when any row fails, 2 on usage,
//! configuration or family construction errors.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::Parser;
use serde::Deserialize;
use sl2_geom::suite::{
    render_surface_report, run_suite, surface_report, FamilySpec, GridSize, OutputFormat, SuiteConfig, SuiteKind,
};

#[derive(Debug, Parser)]
#[command(
    name = "verify",
    version,
    about = "Numerical verification suites for left-invariant geometry on SL(2,R)",
    after_help = "Family specs: hopf_cylinder(kappa=K) | hopf_cylinder(geodesic|horocycle(y0=Y)|ray(alpha=A)|circle(rho=R))\n  \
                  conoid(mu=M[,a=A]) | lightcone(umbilic(A=..,u0=..) | minimal(A=..,B=..) | exp_sine(c0=..,..,c4=..)\n  \
                  | perturbed(A=..,u0=..,eps=..)) | complex_circle(a=..,b=..) | complex_circle(t=..)\n  \
                  Any family accepts u=lo:hi and v=lo:hi.\n\n\
                  Config files are TOML with the keys nu, suite, family, grid, tol, format, seed, samples;\n  \
                  flags given on the command line override them.\n\n\
                  Exit status: 0 all rows pass, 1 some row fails, 2 usage or configuration error."
)]
struct Args {
    /// Suite: connection | curvature | sasaki | family | gauss | ads | all [default: all]
    #[arg(long)]
    suite: Option<SuiteKind>,
    /// Metric parameter nu, any nonzero real [default: 1]
    #[arg(long, allow_negative_numbers = true)]
    nu: Option<f64>,
    /// Family spec, required by the family and gauss suites
    #[arg(long)]
    family: Option<FamilySpec>,
    /// Grid resolution NxM, at least 2 per axis [default: 20x20]
    #[arg(long)]
    grid: Option<GridSize>,
    /// Replace every per-check tolerance with this positive value [default: per check]
    #[arg(long)]
    tol: Option<f64>,
    /// Output format: csv | json [default: csv]
    #[arg(long)]
    format: Option<OutputFormat>,
    /// Seed for the random samples [default: 0]
    #[arg(long)]
    seed: Option<u64>,
    /// Number of random samples in the pointwise suites [default: per check]
    #[arg(long)]
    samples: Option<usize>,
    /// Write the report here instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
    /// TOML config file; command-line flags take precedence
    #[arg(long)]
    config: Option<PathBuf>,
    /// Emit the per-sample geometry table of --family instead of a suite report
    #[arg(long)]
    surface_report: bool,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    nu: Option<f64>,
    suite: Option<SuiteKind>,
    family: Option<FamilySpec>,
    grid: Option<GridSize>,
    tol: Option<f64>,
    format: Option<OutputFormat>,
    seed: Option<u64>,
    samples: Option<usize>,
}

fn load_config(args: &Args) -> Result<SuiteConfig> {
    let file = match &args.config {
        Some(p) => {
            let text = fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            toml::from_str::<FileConfig>(&text).with_context(|| format!("parsing {}", p.display()))?
        }
        None => FileConfig::default(),
    };
    let d = SuiteConfig::default();
    let cfg = SuiteConfig {
        nu: args.nu.or(file.nu).unwrap_or(d.nu),
        suite: args.suite.or(file.suite).unwrap_or(d.suite),
        family: args.family.clone().or(file.family),
        grid: args.grid.or(file.grid).unwrap_or(d.grid),
        tol: args.tol.or(file.tol),
        format: args.format.or(file.format).unwrap_or(d.format),
        seed: args.seed.or(file.seed).unwrap_or(d.seed),
        samples: args.samples.or(file.samples),
    };
    if !args.surface_report {
        cfg.validate()?;
    }
    Ok(cfg)
}

fn emit(args: &Args, text: &str) -> Result<()> {
    match &args.out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            Ok(out.flush()?)
        }
    }
}

fn run(args: &Args) -> Result<bool> {
    let cfg = load_config(args)?;
    if args.surface_report {
        let rows = surface_report(&cfg)?;
        emit(args, &render_surface_report(&rows, cfg.format))?;
        let bad = rows.iter().filter(|r| !r.ok).count();
        eprintln!("surface report: {} samples, {bad} failed", rows.len());
        return Ok(bad == 0);
    }
    let report = run_suite(&cfg)?;
    emit(args, &report.render(cfg.format))?;
    let bad = report.failures().count();
    eprintln!("suite {}: {} rows, {bad} failed", cfg.suite, report.rows.len());
    for r in report.failures().take(10) {
        eprintln!("  FAIL {} at {}: expected {:e}, computed {:e}", r.check, r.location, r.expected, r.computed);
    }
    Ok(bad == 0)
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(&args) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("verify: {e:#}");
            ExitCode::from(2)
        }
    }
}
