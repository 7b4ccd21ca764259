use clap::{Args, Subcommand};
use serde::Serialize;
use serde_json::json;
use smilansky::jacobi::{stabilized_count, OffDiagSequence, Side};
use smilansky::smilansky::{
    count_below, count_below_mode_sweep, interface_schur_star, star_graph_count, BondLength,
    SmilanskyProblem, StarGraphSpec,
};

use super::Context;
use crate::args::{parse_bond_length, GridArgs, TruncArgs};
use crate::error::CliError;
use crate::report::Report;

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Eigenvalue count below `1/2 - ε` on the line.
    Count(CountArgs),
    /// Interface Schur complement and its normalized form.
    Schur(SchurArgs),
    /// Eigenvalue count below `1/2 - ε` on a star graph.
    Star(StarArgs),
}

#[derive(Debug, Args, Serialize)]
pub struct CountArgs {
    #[arg(long)]
    alpha: f64,
    #[arg(long)]
    eps: f64,
    #[command(flatten)]
    grid: GridArgs,
    /// Also count at these mode truncations (ascending).
    #[arg(long = "sweep-modes")]
    sweep_modes: Vec<usize>,
}

#[derive(Debug, Args, Serialize)]
pub struct SchurArgs {
    #[arg(long)]
    alpha: f64,
    #[arg(long)]
    eps: f64,
    /// Number of bonds.
    #[arg(long, default_value_t = 2)]
    m: usize,
    #[command(flatten)]
    grid: GridArgs,
}

#[derive(Debug, Args, Serialize)]
pub struct StarArgs {
    #[arg(long)]
    alpha: f64,
    #[arg(long)]
    eps: f64,
    /// Number of half-infinite bonds when no --length is given.
    #[arg(long)]
    m: Option<usize>,
    /// Bond length, `inf` or a number (repeatable, one per bond).
    #[arg(long = "length")]
    lengths: Vec<String>,
    #[command(flatten)]
    grid: GridArgs,
    #[command(flatten)]
    trunc: TruncArgs,
}

pub fn run(cmd: &Command, ctx: &Context) -> Result<Report, CliError> {
    match cmd {
        Command::Count(a) => count(a, ctx),
        Command::Schur(a) => schur(a, ctx),
        Command::Star(a) => star(a, ctx),
    }
}

fn count(a: &CountArgs, ctx: &Context) -> Result<Report, CliError> {
    let problem = SmilanskyProblem::new(a.alpha, a.eps)?;
    let grid = a.grid.grid(a.eps)?;
    let mut report = ctx.report("smilansky count", a)?;
    let row = |count: usize, modes: usize, retries: u32| {
        json!({
            "alpha": a.alpha,
            "eps": a.eps,
            "threshold": problem.threshold(),
            "count": count,
            "retries": retries,
            "modes": modes,
            "half_length": grid.half_length(),
            "step": grid.step(),
        })
    };
    if a.sweep_modes.is_empty() {
        let r = count_below(&problem, &grid)?;
        report.push(row(r.count, grid.modes(), r.retries));
    } else {
        let r = count_below_mode_sweep(&problem, &grid, &a.sweep_modes)?;
        report.diag("stabilized", r.stabilized)?;
        if !r.stabilized {
            report.warn("count changed between the last two mode truncations");
        }
        for &(modes, count) in &r.levels {
            report.push(row(count, modes, 0));
        }
        report.diag("retries", r.retries)?;
    }
    Ok(report)
}

fn schur(a: &SchurArgs, ctx: &Context) -> Result<Report, CliError> {
    let problem = SmilanskyProblem::new(a.alpha, a.eps)?;
    let grid = a.grid.grid(a.eps)?;
    let star = StarGraphSpec::infinite(a.m)?;
    let iface = interface_schur_star(&star, &problem, &grid)?;
    let continuum = iface.continuum_diag();
    let (diag, off) = iface.symmetrized(&continuum);
    let j = OffDiagSequence::j_eps(a.eps)?;
    let scale = a.alpha * std::f64::consts::SQRT_2 / a.m as f64;
    let mut report = ctx.report("smilansky schur", a)?;
    let mut diag_err = 0.0f64;
    let mut off_err = 0.0f64;
    for n in 0..iface.size() {
        let (coupling, normalized, target) = if n == 0 {
            (None, None, None)
        } else {
            let t = scale * j.entry(n)?;
            off_err = off_err.max((off[n - 1] - t).abs());
            (Some(iface.off[n - 1]), Some(off[n - 1]), Some(t))
        };
        diag_err = diag_err.max((diag[n] - 1.0).abs());
        report.push(json!({
            "n": n,
            "d": iface.diag[n],
            "d_continuum": continuum[n],
            "d_normalized": diag[n],
            "c": coupling,
            "c_normalized": normalized,
            "c_target": target,
            "modes": grid.modes(),
            "half_length": grid.half_length(),
            "step": grid.step(),
        }));
    }
    report.diag("s", problem.s_for_bonds(a.m))?;
    report.diag("max_diag_error", diag_err)?;
    report.diag("max_off_error", off_err)?;
    Ok(report)
}

fn star(a: &StarArgs, ctx: &Context) -> Result<Report, CliError> {
    let lengths = a
        .lengths
        .iter()
        .map(|l| parse_bond_length(l).map_err(CliError::Usage))
        .collect::<Result<Vec<_>, _>>()?;
    let spec = match (a.m, lengths.is_empty()) {
        (Some(m), true) => StarGraphSpec::infinite(m)?,
        (None, false) => StarGraphSpec::new(lengths)?,
        (Some(m), false) if m == lengths.len() => StarGraphSpec::new(lengths)?,
        (Some(m), false) => {
            return Err(CliError::Usage(format!(
                "--m {m} disagrees with {} --length values",
                a.lengths.len()
            )));
        }
        (None, true) => {
            return Err(CliError::Usage(
                "star needs --m or at least one --length".into(),
            ))
        }
    };
    let problem = SmilanskyProblem::new(a.alpha, a.eps)?;
    let grid = a.grid.grid(a.eps)?;
    let policy = a.trunc.policy()?;
    let op = star_graph_count(&spec, &problem, &grid)?;
    let all_infinite = spec.lengths().iter().all(|l| *l == BondLength::Infinite);
    let s = problem.s_for_bonds(spec.bonds());
    let jac = if all_infinite {
        Some(stabilized_count(
            &OffDiagSequence::j_eps(a.eps)?,
            s,
            Side::Above,
            &policy,
        )?)
    } else {
        None
    };
    let lengths: Vec<Option<f64>> = spec
        .lengths()
        .iter()
        .map(|l| match l {
            BondLength::Infinite => None,
            BondLength::Finite(b) => Some(*b),
        })
        .collect();
    let mut report = ctx.report("smilansky star", a)?;
    report.diag("lengths", &lengths)?;
    report.push(json!({
        "bonds": spec.bonds(),
        "alpha": a.alpha,
        "eps": a.eps,
        "s": s,
        "count": op.count,
        "jacobi_count": jac.as_ref().map(|r| r.count),
        "jacobi_n_used": jac.as_ref().map(|r| r.n_used),
        "agree": jac.as_ref().map(|r| r.count == op.count),
        "modes": grid.modes(),
        "half_length": grid.half_length(),
        "step": grid.step(),
    }));
    Ok(report)
}
