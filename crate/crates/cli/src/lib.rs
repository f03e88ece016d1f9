//! Command-line front end for `cartan-core`: loads algebras, frames and experiment configs,
//! runs verification suites and writes reports.

pub mod config;
pub mod report;
pub mod suites;

use std::io::Write;
use std::path::PathBuf;

use anyhow::{Context as _, Result};
use cartan_core::integral::LabOptions;
use cartan_core::{builtins, Execution, QuadratureOptions};
use clap::{Args, Parser, Subcommand};

use crate::config::{resolve_algebra, resolve_frame, ExperimentConfig, Suite};
use crate::report::RunReport;
use crate::suites::Context;

pub const DEFAULT_SEED: u64 = 20150301;

#[derive(Debug, Parser)]
#[command(
    name = "cartan",
    version,
    about = "Numerical verification of integral theorems in commutative algebras"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List built-in algebras and frames.
    List,
    /// Check the multiplication rules, associativity and nilpotency of an algebra.
    Validate {
        #[arg(long)]
        algebra: String,
        /// Associativity tolerance.
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Run verification suites.
    Verify(RunArgs),
    /// Compute λ on the standard circles.
    Lambda(RunArgs),
    /// Evaluate the sufficient conditions for λ = 2πi.
    Predicates(RunArgs),
}

#[derive(Debug, Args, Default, Clone)]
pub struct RunArgs {
    /// Experiment config (JSON); flags override its fields.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Built-in name (example1..example4, semisimple:m=<M>) or JSON file.
    #[arg(long)]
    pub algebra: Option<String>,
    /// Built-in frame (default, s, theorem7) or JSON file.
    #[arg(long)]
    pub frame: Option<String>,
    #[arg(long, value_enum, value_delimiter = ',')]
    pub suite: Vec<Suite>,
    /// Replaces the tolerance of every at-most check.
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Directory for report.json, summary.txt and convergence.csv.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Maximum node count on circles.
    #[arg(long)]
    pub nodes_cap: Option<usize>,
    /// Run everything on the calling thread.
    #[arg(long)]
    pub sequential: bool,
}

/// Merges flags over the config file and runs the requested suites.
pub fn execute(args: &RunArgs, default_suites: &[Suite]) -> Result<RunReport> {
    let (config, base) = match &args.config {
        Some(p) => ExperimentConfig::load(p)?,
        None => (ExperimentConfig::default(), None),
    };
    let algebra_ref = args
        .algebra
        .clone()
        .or(config.algebra.clone())
        .unwrap_or_else(|| "example1".into());
    let frame_ref = args
        .frame
        .clone()
        .or(config.frame.clone())
        .unwrap_or_else(|| "default".into());
    let alg = resolve_algebra(&algebra_ref, base.as_deref())?;
    let frame = resolve_frame(&frame_ref, &alg, base.as_deref())?;
    let seed = args.seed.or(config.seed).unwrap_or(DEFAULT_SEED);
    let quadrature = QuadratureOptions {
        circle_cap: args
            .nodes_cap
            .or(config.nodes_cap)
            .unwrap_or(QuadratureOptions::default().circle_cap),
        ..QuadratureOptions::default()
    };
    let execution = if args.sequential {
        Execution::Sequential
    } else {
        config.execution.unwrap_or_default()
    };
    for phi in &config.functions {
        phi.check(&alg).context("function in config")?;
    }
    let suites = if !args.suite.is_empty() {
        Suite::expand(&args.suite)
    } else if !config.suites.is_empty() {
        Suite::expand(&config.suites)
    } else {
        Suite::expand(default_suites)
    };

    let ctx = Context {
        lab: LabOptions {
            quadrature,
            execution,
        },
        functions: config.functions.clone(),
        curves: config.curves.clone(),
        center: config.center.clone(),
        morera_triangles: config.morera_triangles.unwrap_or(200),
        inverse_points: config.inverse_points.unwrap_or(1000),
        ..Context::new(alg, frame, seed)
    };
    let mut checks = Vec::new();
    let mut facts = Vec::new();
    for s in &suites {
        let o = suites::run(&ctx, *s);
        checks.extend(o.checks);
        facts.extend(o.facts);
    }
    if let Some(tol) = args.tol.or(config.tol) {
        checks.iter_mut().for_each(|c| c.override_tolerance(tol));
    }
    let report = RunReport::new(
        &algebra_ref,
        &frame_ref,
        seed,
        ctx.lab.quadrature.circle_cap,
        suites,
        checks,
        facts,
    );
    let config_out = config.out.as_ref().map(|o| match &base {
        Some(b) if o.is_relative() => b.join(o),
        _ => o.clone(),
    });
    if let Some(dir) = args.out.clone().or(config_out) {
        report.write(&dir)?;
    }
    Ok(report)
}

/// Runs a parsed command, writing human-readable output to `out`. Returns whether every
/// check passed.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<bool> {
    match &cli.command {
        Command::List => {
            writeln!(out, "algebras:")?;
            for b in builtins::BUILTINS {
                writeln!(out, "  {:<18} {}", b.name, b.description)?;
            }
            writeln!(out, "frames:")?;
            writeln!(out, "  {:<18} k = 3 where possible: e2 = i*I1 + I2 + I4, e3 = I3 + i*I5 for the examples", "default")?;
            writeln!(
                out,
                "  {:<18} same idempotent parts, no nilpotent entries (frame inside S)",
                "s"
            )?;
            writeln!(
                out,
                "  {:<18} dim N = 4 only: e2, e3 free of I(m+1) and I(m+2)",
                "theorem7"
            )?;
            Ok(true)
        }
        Command::Validate { algebra, tol } => {
            let alg = resolve_algebra(algebra, None)?;
            let r = match tol {
                Some(t) => alg.validate_with(*t),
                None => alg.validate(),
            };
            writeln!(out, "algebra {algebra}: n = {}, m = {}", alg.n(), alg.m())?;
            writeln!(
                out,
                "associativity residual A1 {:.3e}",
                r.assoc_a1_max_residual
            )?;
            writeln!(
                out,
                "associativity residual A2 {:.3e}",
                r.assoc_a2_max_residual
            )?;
            writeln!(out, "tolerance {:.3e}", r.tolerance)?;
            writeln!(
                out,
                "rule1 {}  rule2 {}  rule3 {}  unit {}  nilpotent {} (index {})",
                r.rule1_ok,
                r.rule2_support_ok,
                r.rule3_ok,
                r.unit_ok,
                r.nilpotent,
                r.nilpotency_index
            )?;
            for w in &r.warnings {
                writeln!(out, "warning: {w}")?;
            }
            let ok = r.passed();
            writeln!(out, "{}", if ok { "valid" } else { "INVALID" })?;
            Ok(ok)
        }
        Command::Verify(args) => {
            let report = execute(args, &[Suite::All])?;
            write!(out, "{}", report.summary())?;
            Ok(report.pass)
        }
        Command::Lambda(args) => {
            let args = RunArgs {
                suite: vec![Suite::Lambda],
                ..args.clone()
            };
            let report = execute(&args, &[Suite::Lambda])?;
            write!(out, "{}", report.summary())?;
            for c in report
                .checks
                .iter()
                .filter(|c| c.name.starts_with("lambda on"))
            {
                if let Some(v) = &c.value {
                    let coords: Vec<String> = v
                        .coords()
                        .iter()
                        .map(|z| format!("{:+.12}{:+.12}i", z.re, z.im))
                        .collect();
                    writeln!(out, "{}: [{}]", c.name, coords.join(", "))?;
                }
            }
            Ok(report.pass)
        }
        Command::Predicates(args) => {
            let args = RunArgs {
                suite: vec![Suite::Predicates],
                ..args.clone()
            };
            let report = execute(&args, &[Suite::Predicates])?;
            write!(out, "{}", report.summary())?;
            Ok(report.pass)
        }
    }
}
