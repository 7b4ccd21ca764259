use clap::{Args, Subcommand};
use serde::Serialize;
use serde_json::json;
use smilansky::asymptotics::{
    check_counting_law, check_eigenvalue_law, comparison_check, estimate_q, predict_count_a,
};

use super::{require_nonempty, Context};
use crate::args::{parse_family_spec, FamilyArgs, TruncArgs};
use crate::error::CliError;
use crate::report::Report;

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Estimate q in `b_n = 1/2 + q/n` by the median over a window.
    Q(QArgs),
    /// Eigenvalue and counting law ratios.
    Laws(LawsArgs),
    /// Predicted count below 1/2 as the coupling approaches its cap.
    Predict(PredictArgs),
    /// Entrywise domination check and ordered counts for two families.
    Compare(CompareArgs),
}

#[derive(Debug, Args, Serialize)]
pub struct QArgs {
    #[command(flatten)]
    family: FamilyArgs,
    #[arg(long, default_value_t = 1000)]
    lo: usize,
    #[arg(long, default_value_t = 10_000)]
    hi: usize,
}

#[derive(Debug, Args, Serialize)]
pub struct LawsArgs {
    #[command(flatten)]
    family: FamilyArgs,
    /// Coefficient q (default: estimated over 1000..=10000).
    #[arg(long)]
    q: Option<f64>,
    /// 1-based eigenvalue rank (repeatable).
    #[arg(long = "k")]
    k: Vec<usize>,
    /// Threshold above 1 (repeatable).
    #[arg(long = "s")]
    s: Vec<f64>,
    #[command(flatten)]
    trunc: TruncArgs,
}

#[derive(Debug, Args, Serialize)]
pub struct PredictArgs {
    /// Coupling in (0, sqrt 2) (repeatable).
    #[arg(long = "alpha", required = true)]
    alpha: Vec<f64>,
}

#[derive(Debug, Args, Serialize)]
pub struct CompareArgs {
    /// Dominated family: j0, jeps:<eps>, pollaczek:<lambda>,<r>, const:<v>.
    #[arg(long)]
    small: String,
    /// Dominating family, same syntax.
    #[arg(long)]
    large: String,
    #[arg(long = "s", required = true)]
    s: Vec<f64>,
    #[command(flatten)]
    trunc: TruncArgs,
}

pub fn run(cmd: &Command, ctx: &Context) -> Result<Report, CliError> {
    match cmd {
        Command::Q(a) => q(a, ctx),
        Command::Laws(a) => laws(a, ctx),
        Command::Predict(a) => predict(a, ctx),
        Command::Compare(a) => compare(a, ctx),
    }
}

fn q(a: &QArgs, ctx: &Context) -> Result<Report, CliError> {
    let seq = a.family.build()?;
    let fit = estimate_q(&seq, a.lo, a.hi)?;
    let mut report = ctx.report("asymptotics q", a)?;
    report.diag("family", seq.label())?;
    report.push(json!({
        "q_hat": fit.q_hat,
        "residual": fit.residual,
        "lo": fit.window.0,
        "hi": fit.window.1,
    }));
    Ok(report)
}

fn laws(a: &LawsArgs, ctx: &Context) -> Result<Report, CliError> {
    let seq = a.family.build()?;
    let policy = a.trunc.policy()?;
    let (ranks, thresholds) = if a.k.is_empty() && a.s.is_empty() {
        (vec![1, 5, 10, 20], vec![1.01, 1.003, 1.001])
    } else {
        (a.k.clone(), a.s.clone())
    };
    let mut report = ctx.report("asymptotics laws", a)?;
    report.diag("family", seq.label())?;
    let q = match a.q {
        Some(q) => q,
        None => {
            let fit = estimate_q(&seq, 1000, 10_000)?;
            report.diag("q_window", fit.window)?;
            fit.q_hat
        }
    };
    report.diag("q", q)?;
    if !ranks.is_empty() {
        let table = check_eigenvalue_law(&seq, q, &ranks, &policy)?;
        if let Some(note) = &table.note {
            report.warn(note.clone());
        }
        for row in &table.rows {
            report.push(json!({
                "law": "eigenvalue",
                "k": row.k,
                "s": null,
                "lambda_k": row.lambda_k,
                "count": null,
                "ratio": row.ratio,
                "n_used": table.n_used,
                "stabilized": table.stabilized,
            }));
        }
    }
    if !thresholds.is_empty() {
        for row in check_counting_law(&seq, q, &thresholds, &policy)? {
            if !row.stabilized {
                report.warn(format!(
                    "count at s = {} did not plateau by N = {}",
                    row.s, row.n_used
                ));
            }
            report.push(json!({
                "law": "counting",
                "k": null,
                "s": row.s,
                "lambda_k": null,
                "count": row.count,
                "ratio": row.ratio,
                "n_used": row.n_used,
                "stabilized": row.stabilized,
            }));
        }
    }
    Ok(report)
}

fn predict(a: &PredictArgs, ctx: &Context) -> Result<Report, CliError> {
    let mut report = ctx.report("asymptotics predict", a)?;
    for &alpha in &a.alpha {
        report.push(json!({
            "alpha": alpha,
            "s": std::f64::consts::SQRT_2 / alpha,
            "prediction": predict_count_a(alpha)?,
        }));
    }
    Ok(report)
}

fn compare(a: &CompareArgs, ctx: &Context) -> Result<Report, CliError> {
    require_nonempty(&a.s, "s")?;
    let small = parse_family_spec(&a.small)?;
    let large = parse_family_spec(&a.large)?;
    let policy = a.trunc.policy()?;
    let rows = comparison_check(&small, &large, &a.s, &policy)?;
    let mut report = ctx.report("asymptotics compare", a)?;
    report.diag("small", small.label())?;
    report.diag("large", large.label())?;
    report.diag("domination_checked_up_to", policy.n_max)?;
    for r in rows {
        report.push(json!({
            "s": r.s,
            "count_small": r.count_small,
            "count_large": r.count_large,
            "ordered": r.ordered,
            "n_small": r.n_small,
            "n_large": r.n_large,
        }));
    }
    Ok(report)
}
