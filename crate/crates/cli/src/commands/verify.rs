use clap::{Args, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};
use smilansky::jacobi::{stabilized_count, sturm_count, OffDiagSequence, Side};
use smilansky::pollaczek::PollaczekParams;
use smilansky::smilansky::{
    birman_schwinger_check, sandwich_check, ModeSpaceGrid, SmilanskyProblem, StarGraphSpec,
    DEFAULT_MODES,
};

use super::Context;
use crate::args::{GridArgs, TruncArgs};
use crate::error::CliError;
use crate::report::Report;

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Operator count against the Jacobi count for each (alpha, eps).
    Bs(BsArgs),
    /// Every built-in cross-check.
    All(AllArgs),
}

#[derive(Debug, Args, Serialize)]
pub struct BsArgs {
    /// Coupling (repeatable; default 0.8 1.0 1.2 1.3).
    #[arg(long = "alpha")]
    alpha: Vec<f64>,
    /// ε (repeatable; default 0.1 0.25).
    #[arg(long = "eps")]
    eps: Vec<f64>,
    /// Number of half-infinite bonds.
    #[arg(long, default_value_t = 2)]
    m: usize,
    #[command(flatten)]
    grid: GridArgs,
    #[command(flatten)]
    trunc: TruncArgs,
}

#[derive(Debug, Args, Serialize)]
pub struct AllArgs {
    #[command(flatten)]
    trunc: TruncArgs,
}

pub fn run(cmd: &Command, ctx: &Context) -> Result<Report, CliError> {
    match cmd {
        Command::Bs(a) => bs(a, ctx),
        Command::All(a) => all(a, ctx),
    }
}

fn or_default(values: &[f64], default: &[f64]) -> Vec<f64> {
    if values.is_empty() {
        default.to_vec()
    } else {
        values.to_vec()
    }
}

fn summarize(report: &mut Report) -> Result<(), CliError> {
    let passed = report
        .results
        .iter()
        .filter(|r| r.get("passed") == Some(&Value::Bool(true)))
        .count();
    let total = report.results.len();
    report.diag("passed", passed)?;
    report.diag("total", total)?;
    eprintln!("verify: {passed}/{total} passed");
    Ok(())
}

fn bs(a: &BsArgs, ctx: &Context) -> Result<Report, CliError> {
    let alphas = or_default(&a.alpha, &[0.8, 1.0, 1.2, 1.3]);
    let epss = or_default(&a.eps, &[0.1, 0.25]);
    let policy = a.trunc.policy()?;
    let star = StarGraphSpec::infinite(a.m)?;
    let mut report = ctx.report("verify bs", a)?;
    for &alpha in &alphas {
        for &eps in &epss {
            let problem = SmilanskyProblem::new(alpha, eps)?;
            let grid = a.grid.grid(eps)?;
            let c = birman_schwinger_check(&star, &problem, &grid, &policy)?;
            report.push(json!({
                "alpha": c.alpha,
                "eps": c.eps,
                "bonds": c.bonds,
                "s": c.s,
                "operator_count": c.operator_count,
                "jacobi_count": c.jacobi_count,
                "jacobi_n_used": c.jacobi_n_used,
                "modes": c.modes,
                "half_length": c.half_length,
                "step": c.step,
                "passed": c.passed,
            }));
        }
    }
    summarize(&mut report)?;
    Ok(report)
}

fn row(
    check: &str,
    case: String,
    expected: String,
    observed: String,
    passed: bool,
    provenance: String,
) -> Value {
    json!({
        "check": check,
        "case": case,
        "expected": expected,
        "observed": observed,
        "passed": passed,
        "provenance": provenance,
    })
}

fn grid_note(g: &ModeSpaceGrid<f64>) -> String {
    format!("M={} L={} h={}", g.modes(), g.half_length(), g.step())
}

fn all(a: &AllArgs, ctx: &Context) -> Result<Report, CliError> {
    let policy = a.trunc.policy()?;
    let mut report = ctx.report("verify all", a)?;

    let p = PollaczekParams::new(1.0, 0.5)?;
    let seq = OffDiagSequence::pollaczek(p);
    for s in [1.01, 1.05, 1.1, 1.2] {
        let closed = p.count_above(s)?;
        let r = stabilized_count(&seq, s, Side::Above, &policy)?;
        report.push(row(
            "pollaczek",
            format!("lambda=1 r=0.5 s={s}"),
            closed.to_string(),
            r.count.to_string(),
            r.stabilized && r.count == closed,
            format!("N={}", r.n_used),
        ));
    }

    for alpha in [0.8, 1.0, 1.2, 1.3] {
        for eps in [0.1, 0.25] {
            let grid = ModeSpaceGrid::default_for(eps, DEFAULT_MODES)?;
            let c = birman_schwinger_check(
                &StarGraphSpec::line(),
                &SmilanskyProblem::new(alpha, eps)?,
                &grid,
                &policy,
            )?;
            report.push(row(
                "birman-schwinger",
                format!("alpha={alpha} eps={eps}"),
                c.jacobi_count.to_string(),
                c.operator_count.to_string(),
                c.passed,
                format!("{} N={}", grid_note(&grid), c.jacobi_n_used),
            ));
        }
    }

    for alpha in [1.2, 1.3] {
        for eps in [0.1, 0.05, 0.02] {
            let grid = ModeSpaceGrid::default_for(eps, DEFAULT_MODES)?;
            let c = sandwich_check(&SmilanskyProblem::new(alpha, eps)?, &grid, &policy)?;
            report.push(row(
                "sandwich",
                format!("alpha={alpha} eps={eps}"),
                format!("{} or {}", c.j0_count, c.j0_count + 1),
                c.operator_count.to_string(),
                c.passed,
                format!("{} N={}", grid_note(&grid), c.j0_n_used),
            ));
        }
    }

    let grid = ModeSpaceGrid::default_for(0.25, DEFAULT_MODES)?;
    for alpha in [1.0, 2.0, 2.1] {
        let c = birman_schwinger_check(
            &StarGraphSpec::infinite(3)?,
            &SmilanskyProblem::new(alpha, 0.25)?,
            &grid,
            &policy,
        )?;
        report.push(row(
            "star m=3",
            format!("alpha={alpha} eps=0.25"),
            c.jacobi_count.to_string(),
            c.operator_count.to_string(),
            c.passed,
            format!("{} N={}", grid_note(&grid), c.jacobi_n_used),
        ));
    }

    symmetry_sweep(&mut report, ctx.seed)?;
    summarize(&mut report)?;
    Ok(report)
}

/// Counts above `s` and below `-s` agree for random families and thresholds.
fn symmetry_sweep(report: &mut Report, seed: u64) -> Result<(), CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let families = [
        OffDiagSequence::j0(),
        OffDiagSequence::j_eps(0.1)?,
        OffDiagSequence::pollaczek(PollaczekParams::new(1.0, 0.5)?),
    ];
    let n = 4096;
    let mut mismatches = 0;
    let trials = 100;
    for _ in 0..trials {
        let seq = &families[rng.gen_range(0..families.len())];
        let s = rng.gen_range(0.0..1.5);
        let up = sturm_count(seq, n, s, Side::Above)?.count;
        let down = sturm_count(seq, n, -s, Side::Below)?.count;
        mismatches += usize::from(up != down);
    }
    report.push(row(
        "symmetry",
        format!("{trials} random thresholds, seed {seed}"),
        "0 mismatches".into(),
        format!("{mismatches} mismatches"),
        mismatches == 0,
        format!("N={n}"),
    ));
    Ok(())
}
