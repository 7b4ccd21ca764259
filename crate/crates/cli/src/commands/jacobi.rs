use clap::{Args, Subcommand};
use serde::Serialize;
use serde_json::json;
use smilansky::jacobi::{stabilized_count, stabilized_eigs, Side, SpectralQuery};

use super::{require_nonempty, Context};
use crate::args::{FamilyArgs, SideArg, TruncArgs};
use crate::error::CliError;
use crate::report::Report;

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Stabilized eigenvalue count beyond each threshold.
    Count(CountArgs),
    /// Stabilized eigenvalues beyond a threshold, outermost first.
    Eigs(EigsArgs),
}

#[derive(Debug, Args, Serialize)]
pub struct CountArgs {
    #[command(flatten)]
    family: FamilyArgs,
    /// Threshold (repeatable).
    #[arg(long = "s", required = true)]
    s: Vec<f64>,
    #[arg(long, value_enum, default_value_t = SideArg::Above)]
    side: SideArg,
    #[command(flatten)]
    trunc: TruncArgs,
}

#[derive(Debug, Args, Serialize)]
pub struct EigsArgs {
    #[command(flatten)]
    family: FamilyArgs,
    #[arg(long = "s", default_value_t = 1.0)]
    s: f64,
    #[arg(long, value_enum, default_value_t = SideArg::Above)]
    side: SideArg,
    /// Keep only the outermost k eigenvalues.
    #[arg(long)]
    k_max: Option<usize>,
    /// Bisection tolerance (default 1e-12 max(1,|s|)).
    #[arg(long)]
    tol: Option<f64>,
    #[command(flatten)]
    trunc: TruncArgs,
}

pub fn run(cmd: &Command, ctx: &Context) -> Result<Report, CliError> {
    match cmd {
        Command::Count(a) => count(a, ctx),
        Command::Eigs(a) => eigs(a, ctx),
    }
}

fn count(a: &CountArgs, ctx: &Context) -> Result<Report, CliError> {
    require_nonempty(&a.s, "s")?;
    let seq = a.family.build()?;
    let policy = a.trunc.policy()?;
    let mut report = ctx.report("jacobi count", a)?;
    report.diag("family", seq.label())?;
    report.diag("policy", policy)?;
    for &s in &a.s {
        let r = stabilized_count(&seq, s, Side::from(a.side), &policy)?;
        if !r.stabilized {
            report.warn(format!(
                "count at s = {s} did not plateau by N = {}",
                r.n_used
            ));
        }
        report.push(json!({
            "s": s,
            "side": a.side,
            "count": r.count,
            "n_used": r.n_used,
            "stabilized": r.stabilized,
            "retries": r.retries,
            "levels": r.levels,
        }));
    }
    Ok(report)
}

fn eigs(a: &EigsArgs, ctx: &Context) -> Result<Report, CliError> {
    let seq = a.family.build()?;
    let policy = a.trunc.policy()?;
    let mut q = SpectralQuery::new(a.s, Side::from(a.side));
    if let Some(tol) = a.tol {
        if tol.is_nan() || tol <= 0.0 {
            return Err(CliError::Usage(format!(
                "--tol must be positive, got {tol}"
            )));
        }
        q = q.with_tol(tol);
    }
    if let Some(k) = a.k_max {
        q = q.with_k_max(k);
    }
    let r = stabilized_eigs(&seq, &q, &policy)?;
    let mut report = ctx.report("jacobi eigs", a)?;
    report.diag("family", seq.label())?;
    report.diag("eig_tol", q.eig_tol)?;
    report.diag("levels", &r.levels)?;
    if !r.stabilized {
        report.warn(format!("eigenvalues did not settle by N = {}", r.n_used));
    }
    for (i, v) in r.values.iter().enumerate() {
        report.push(json!({
            "rank": i + 1,
            "value": v,
            "n_used": r.n_used,
            "stabilized": r.stabilized,
        }));
    }
    Ok(report)
}
