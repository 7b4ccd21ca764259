use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::jacobi::{negative_pivots, CountReport, ZeroPivot, MAX_RETRIES};
use crate::Scalar;

use super::grid::{BondLength, ModeSpaceGrid, SmilanskyProblem, StarGraphSpec};
use super::hermite::coupling_coefficient;

/// Eliminates one bond chain of `interior` nodes (Dirichlet at the far end)
/// from `K - λB` and returns the bond's contribution to the vertex diagonal
/// together with the number of negative chain pivots. `gamma_sq` is
/// `n + 1/2 - λ`.
fn eliminate_bond<T: Scalar>(gamma_sq: T, interior: usize, h: T) -> Result<(T, usize), ZeroPivot> {
    let inv_h = h.recip();
    let own = inv_h + T::lit(0.5) * h * gamma_sq;
    if interior == 0 {
        return Ok((own, 0));
    }
    let a = T::lit(2.0) * inv_h + h * gamma_sq;
    let inv_h2 = inv_h * inv_h;
    let mut pivot = a;
    let mut negatives = 0;
    for i in 0..interior {
        if i > 0 {
            pivot = a - inv_h2 / pivot;
        }
        if pivot == T::zero() {
            return Err(ZeroPivot);
        }
        if pivot < T::zero() {
            negatives += 1;
        }
    }
    Ok((own - inv_h2 / pivot, negatives))
}

/// Discrete Dirichlet-to-Neumann value of one bond at decay rate `γ`: the
/// Schur complement onto the vertex of `Σ (u_{i+1}-u_i)²/h + γ² h Σ' u_i²`
/// (vertex weight `h/2`). Tends to `γ` on a half-line and to `γ coth(γB)`
/// on a bond of length `B` as `h → 0`.
pub fn dtn_value<T: Scalar>(gamma: T, grid: &ModeSpaceGrid<T>, end: BondLength<T>) -> Result<T> {
    if !(gamma > T::zero()) || !gamma.is_finite() {
        return Err(Error::domain("gamma", gamma.as_f64(), "(0, inf)"));
    }
    let interior = grid.bond_steps(end)? - 1;
    eliminate_bond(gamma * gamma, interior, grid.step())
        .map(|(v, _)| v)
        .map_err(|_| Error::NotConverged("zero pivot in a positive definite chain".into()))
}

/// Schur complement of `K - (1/2 - ε)B` onto the vertex values
/// `u_0(0), …, u_{M-1}(0)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InterfaceMatrix<T: Scalar> {
    /// `d_n`, per-mode Dirichlet-to-Neumann sums.
    pub diag: Vec<T>,
    /// `c_n = α sqrt(2n) / 2` between modes `n-1` and `n`; `off[i]` is `c_{i+1}`.
    pub off: Vec<T>,
    pub bonds: usize,
    pub eps: T,
    pub alpha: T,
}

impl<T: Scalar> InterfaceMatrix<T> {
    pub fn size(&self) -> usize {
        self.diag.len()
    }

    /// Continuum diagonal `m sqrt(n + ε)` for `m` half-infinite bonds.
    pub fn continuum_diag(&self) -> Vec<T> {
        let m = T::from_usize_lossy(self.bonds);
        (0..self.size())
            .map(|n| m * (T::from_usize_lossy(n) + self.eps).sqrt())
            .collect()
    }

    /// `D^{-1/2} S D^{-1/2}` as (diagonal, off-diagonal).
    pub fn symmetrized(&self, scale: &[T]) -> (Vec<T>, Vec<T>) {
        let root: Vec<T> = scale.iter().map(|d| d.sqrt()).collect();
        let diag = self
            .diag
            .iter()
            .zip(&root)
            .map(|(d, r)| *d / (*r * *r))
            .collect();
        let off = self
            .off
            .iter()
            .enumerate()
            .map(|(i, c)| *c / (root[i] * root[i + 1]))
            .collect();
        (diag, off)
    }

    /// Number of negative eigenvalues; `None` if elimination meets an exact
    /// zero pivot.
    pub fn negative_count(&self) -> Option<usize> {
        self.negatives().ok()
    }

    pub(crate) fn negatives(&self) -> Result<usize, ZeroPivot> {
        negative_pivots(self.size(), |i| self.diag[i], |i| self.off[i] * self.off[i])
    }
}

/// Inertia of `K - λB` split along the elimination.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Inertia {
    pub chain_negatives: usize,
    pub interface_negatives: usize,
    pub retries: u32,
    /// Threshold of the final (successful) pass.
    pub threshold: f64,
}

impl Inertia {
    pub fn total(&self) -> usize {
        self.chain_negatives + self.interface_negatives
    }
}

fn interface_at<T: Scalar>(
    star: &StarGraphSpec<T>,
    alpha: T,
    eps_label: T,
    grid: &ModeSpaceGrid<T>,
    lambda: T,
) -> Result<Result<(InterfaceMatrix<T>, usize), ZeroPivot>> {
    let interiors = star
        .lengths()
        .iter()
        .map(|&l| grid.bond_steps(l).map(|s| s - 1))
        .collect::<Result<Vec<_>>>()?;
    let h = grid.step();
    let half = T::lit(0.5);
    // Modes are independent until the interface step.
    let per_mode: Result<Vec<(T, usize)>, ZeroPivot> = (0..grid.modes())
        .into_par_iter()
        .map(|n| {
            let gamma_sq = T::from_usize_lossy(n) + half - lambda;
            let mut d = T::zero();
            let mut neg = 0;
            for &interior in &interiors {
                let (v, k) = eliminate_bond(gamma_sq, interior, h)?;
                d += v;
                neg += k;
            }
            Ok((d, neg))
        })
        .collect();
    let per_mode = match per_mode {
        Ok(v) => v,
        Err(z) => return Ok(Err(z)),
    };
    let chain_negatives = per_mode.iter().map(|&(_, k)| k).sum();
    let diag = per_mode.into_iter().map(|(d, _)| d).collect();
    let off = (1..grid.modes())
        .map(|n| alpha * coupling_coefficient::<T>(n) * half)
        .collect();
    Ok(Ok((
        InterfaceMatrix {
            diag,
            off,
            bonds: star.bonds(),
            eps: eps_label,
            alpha,
        },
        chain_negatives,
    )))
}

/// Inertia count of `K - λB` for any threshold `λ`: negatives from the
/// bond chains plus negatives of the interface Schur complement. On an
/// exact zero pivot `λ` is lowered by `1e-12·max(1,|λ|)` (doubling) and the
/// count repeated.
pub fn inertia_below<T: Scalar>(
    star: &StarGraphSpec<T>,
    alpha: T,
    grid: &ModeSpaceGrid<T>,
    lambda: T,
) -> Result<Inertia> {
    let base = T::lit(1e-12) * T::one().max(lambda.abs());
    let mut shifted = lambda;
    for retries in 0..=MAX_RETRIES {
        let eps_label = T::lit(0.5) - shifted;
        if let Ok((iface, chain_negatives)) = interface_at(star, alpha, eps_label, grid, shifted)? {
            if let Ok(interface_negatives) = iface.negatives() {
                return Ok(Inertia {
                    chain_negatives,
                    interface_negatives,
                    retries,
                    threshold: shifted.as_f64(),
                });
            }
        }
        shifted = lambda - base * T::lit(2f64.powi(retries as i32));
    }
    Err(Error::NotConverged(format!(
        "zero pivot persisted after {MAX_RETRIES} threshold perturbations at lambda = {lambda}"
    )))
}

/// Interface matrix of the line at threshold `1/2 - ε`.
pub fn interface_schur<T: Scalar>(
    problem: &SmilanskyProblem<T>,
    grid: &ModeSpaceGrid<T>,
) -> Result<InterfaceMatrix<T>> {
    interface_schur_star(&StarGraphSpec::line(), problem, grid)
}

pub fn interface_schur_star<T: Scalar>(
    star: &StarGraphSpec<T>,
    problem: &SmilanskyProblem<T>,
    grid: &ModeSpaceGrid<T>,
) -> Result<InterfaceMatrix<T>> {
    match interface_at(star, problem.alpha, problem.eps, grid, problem.threshold())? {
        Ok((iface, 0)) => Ok(iface),
        Ok((_, k)) => Err(Error::NotConverged(format!(
            "{k} negative chain pivots below the continuum edge"
        ))),
        Err(ZeroPivot) => Err(Error::NotConverged(
            "zero pivot in a chain that should be positive definite".into(),
        )),
    }
}

fn single_level(inertia: Inertia, modes: usize) -> CountReport {
    CountReport {
        count: inertia.total(),
        n_used: modes,
        stabilized: true,
        levels: vec![(modes, inertia.total())],
        retries: inertia.retries,
    }
}

/// `N_-(1/2 - ε)` of the discretized operator on the line.
pub fn count_below<T: Scalar>(
    problem: &SmilanskyProblem<T>,
    grid: &ModeSpaceGrid<T>,
) -> Result<CountReport> {
    star_graph_count(&StarGraphSpec::line(), problem, grid)
}

/// `N_-(1/2 - ε)` on a star graph (one shared vertex value per mode).
pub fn star_graph_count<T: Scalar>(
    star: &StarGraphSpec<T>,
    problem: &SmilanskyProblem<T>,
    grid: &ModeSpaceGrid<T>,
) -> Result<CountReport> {
    problem.check_alpha(star.bonds())?;
    let inertia = inertia_below(star, problem.alpha, grid, problem.threshold())?;
    Ok(single_level(inertia, grid.modes()))
}

/// Line counts at each mode truncation in `modes` (ascending); stabilized
/// when the last two levels agree.
pub fn count_below_mode_sweep<T: Scalar>(
    problem: &SmilanskyProblem<T>,
    grid: &ModeSpaceGrid<T>,
    modes: &[usize],
) -> Result<CountReport> {
    problem.check_alpha(2)?;
    if modes.is_empty() {
        return Err(Error::Grid("empty mode sweep".into()));
    }
    let star = StarGraphSpec::line();
    let mut levels = Vec::with_capacity(modes.len());
    let mut retries = 0;
    for &m in modes {
        let g = grid.with_modes(m);
        let inertia = inertia_below(&star, problem.alpha, &g, problem.threshold())?;
        retries += inertia.retries;
        levels.push((m, inertia.total()));
    }
    let n = levels.len();
    let &(n_used, count) = levels.last().expect("non-empty");
    Ok(CountReport {
        count,
        n_used,
        stabilized: n >= 2 && levels[n - 2].1 == count,
        levels,
        retries,
    })
}

/// Smallest eigenvalue of the pencil, by bisection on the inertia count.
pub fn lowest_eigenvalue<T: Scalar>(
    star: &StarGraphSpec<T>,
    alpha: T,
    grid: &ModeSpaceGrid<T>,
    tol: T,
) -> Result<T> {
    let count = |x: T| inertia_below(star, alpha, grid, x).map(|i| i.total());
    let mut lo = T::zero();
    let mut width = T::one();
    while count(lo)? > 0 {
        lo -= width;
        width *= T::lit(2.0);
        if width > T::lit(1e12) {
            return Err(Error::NotConverged("pencil is unbounded below".into()));
        }
    }
    let mut hi = T::lit(0.5);
    while count(hi)? == 0 {
        hi *= T::lit(2.0);
        if hi > T::lit(1e12) {
            return Err(Error::NotConverged("no eigenvalue found".into()));
        }
    }
    for _ in 0..200 {
        if hi - lo <= tol {
            return Ok((lo + hi) / T::lit(2.0));
        }
        let mid = (lo + hi) / T::lit(2.0);
        if count(mid)? >= 1 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Err(Error::NotConverged("lowest eigenvalue bisection".into()))
}
