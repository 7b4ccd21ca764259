use clap::{Args, Subcommand};
use serde::Serialize;
use serde_json::json;
use smilansky::jacobi::{stabilized_count, OffDiagSequence, Side};
use smilansky::pollaczek::PollaczekParams;

use super::{require_nonempty, Context};
use crate::args::TruncArgs;
use crate::error::CliError;
use crate::report::Report;

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed-form eigenvalues and counts above each threshold, next to the
    /// Sturm engine count.
    Oracle(OracleArgs),
    /// Monic Pollaczek polynomial `Q_n(x)`.
    Eval(EvalArgs),
}

#[derive(Debug, Args, Serialize)]
pub struct OracleArgs {
    #[arg(long)]
    lambda: f64,
    #[arg(long)]
    r: f64,
    /// Threshold above 1 (repeatable).
    #[arg(long = "s", required = true)]
    s: Vec<f64>,
    #[command(flatten)]
    trunc: TruncArgs,
}

#[derive(Debug, Args, Serialize)]
pub struct EvalArgs {
    #[arg(long)]
    lambda: f64,
    #[arg(long)]
    r: f64,
    /// Degree.
    #[arg(long)]
    n: usize,
    /// Evaluation point (repeatable).
    #[arg(long = "x", required = true)]
    x: Vec<f64>,
}

pub fn run(cmd: &Command, ctx: &Context) -> Result<Report, CliError> {
    match cmd {
        Command::Oracle(a) => oracle(a, ctx),
        Command::Eval(a) => eval(a, ctx),
    }
}

fn oracle(a: &OracleArgs, ctx: &Context) -> Result<Report, CliError> {
    require_nonempty(&a.s, "s")?;
    let p = PollaczekParams::new(a.lambda, a.r)?;
    let seq = OffDiagSequence::pollaczek(p);
    let policy = a.trunc.policy()?;
    let mut report = ctx.report("pollaczek oracle", a)?;
    report.diag("policy", policy)?;
    for &s in &a.s {
        let closed = p.count_above(s)?;
        let eigenvalues = (0..closed)
            .map(|k| p.mu_k(k))
            .collect::<Result<Vec<_>, _>>()?;
        let engine = stabilized_count(&seq, s, Side::Above, &policy)?;
        if engine.count != closed {
            report.warn(format!(
                "engine count {} differs from closed form {closed} at s = {s}",
                engine.count
            ));
        }
        report.push(json!({
            "s": s,
            "count_closed_form": closed,
            "count_engine": engine.count,
            "n_used": engine.n_used,
            "stabilized": engine.stabilized,
            "eigenvalues": eigenvalues,
        }));
    }
    Ok(report)
}

fn eval(a: &EvalArgs, ctx: &Context) -> Result<Report, CliError> {
    let p = PollaczekParams::new(a.lambda, a.r)?;
    let mut report = ctx.report("pollaczek eval", a)?;
    for &x in &a.x {
        report.push(json!({
            "n": a.n,
            "x": x,
            "value": p.monic_eval(a.n, x)?,
        }));
    }
    Ok(report)
}
