use serde::Serialize;

use crate::error::Result;
use crate::jacobi::{stabilized_count, OffDiagSequence, Side, TruncationPolicy};
use crate::Scalar;

use super::grid::{ModeSpaceGrid, SmilanskyProblem, StarGraphSpec};
use super::inertia::star_graph_count;

/// Discretized `N_-(1/2 - ε)` next to the Jacobi count `N₊(s(α); J(ε))`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BirmanSchwingerCheck<T: Scalar> {
    pub alpha: T,
    pub eps: T,
    pub bonds: usize,
    pub s: T,
    pub operator_count: usize,
    pub jacobi_count: usize,
    pub jacobi_n_used: usize,
    pub jacobi_stabilized: bool,
    pub modes: usize,
    pub half_length: T,
    pub step: T,
    pub passed: bool,
}

/// Compares the star-graph inertia count with `N₊(m/(α√2); J(ε))`.
pub fn birman_schwinger_check<T: Scalar>(
    star: &StarGraphSpec<T>,
    problem: &SmilanskyProblem<T>,
    grid: &ModeSpaceGrid<T>,
    policy: &TruncationPolicy,
) -> Result<BirmanSchwingerCheck<T>> {
    let op = star_graph_count(star, problem, grid)?;
    let s = problem.s_for_bonds(star.bonds());
    let jac = stabilized_count(
        &OffDiagSequence::j_eps(problem.eps)?,
        s,
        Side::Above,
        policy,
    )?;
    Ok(BirmanSchwingerCheck {
        alpha: problem.alpha,
        eps: problem.eps,
        bonds: star.bonds(),
        s,
        operator_count: op.count,
        jacobi_count: jac.count,
        jacobi_n_used: jac.n_used,
        jacobi_stabilized: jac.stabilized,
        modes: grid.modes(),
        half_length: grid.half_length(),
        step: grid.step(),
        passed: op.count == jac.count && jac.stabilized,
    })
}

/// Discretized line count at `1/2 - ε` against `{N₊(s;J₀), N₊(s;J₀)+1}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SandwichCheck<T: Scalar> {
    pub alpha: T,
    pub eps: T,
    pub s: T,
    pub operator_count: usize,
    pub j0_count: usize,
    pub j0_n_used: usize,
    pub modes: usize,
    pub half_length: T,
    pub step: T,
    pub passed: bool,
}

pub fn sandwich_check<T: Scalar>(
    problem: &SmilanskyProblem<T>,
    grid: &ModeSpaceGrid<T>,
    policy: &TruncationPolicy,
) -> Result<SandwichCheck<T>> {
    let star = StarGraphSpec::line();
    let op = star_graph_count(&star, problem, grid)?;
    let s = problem.s_for_bonds(2);
    let j0 = stabilized_count(&OffDiagSequence::j0(), s, Side::Above, policy)?;
    Ok(SandwichCheck {
        alpha: problem.alpha,
        eps: problem.eps,
        s,
        operator_count: op.count,
        j0_count: j0.count,
        j0_n_used: j0.n_used,
        modes: grid.modes(),
        half_length: grid.half_length(),
        step: grid.step(),
        passed: j0.stabilized && (op.count == j0.count || op.count == j0.count + 1),
    })
}
