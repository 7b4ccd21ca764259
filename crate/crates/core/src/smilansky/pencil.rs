use crate::error::Result;
use crate::Scalar;

use super::grid::{ModeSpaceGrid, SmilanskyProblem, StarGraphSpec};
use super::hermite::coupling_coefficient;

/// Symmetric sparse pencil `(K, B)` of the discretized form.
///
/// Unknowns are ordered mode by mode. Within mode `n` the block starts with
/// the vertex value `u_n(0)` and continues bond by bond, each bond listed
/// from the vertex outward. On the line bond 0 is `x < 0`, bond 1 is `x > 0`.
/// Dirichlet nodes (bond ends and mode `M`) are eliminated.
#[derive(Debug, Clone, PartialEq)]
pub struct Pencil<T: Scalar> {
    block: usize,
    modes: usize,
    /// Diagonal of `K`.
    pub diag: Vec<T>,
    /// Strict upper triangle of `K` as `(row, col, value)`, `row < col`.
    pub upper: Vec<(usize, usize, T)>,
    /// Diagonal lumped mass `B`.
    pub mass: Vec<T>,
}

impl<T: Scalar> Pencil<T> {
    pub fn size(&self) -> usize {
        self.diag.len()
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    /// Unknowns per mode.
    pub fn block(&self) -> usize {
        self.block
    }

    /// Index of `u_n(0)`.
    pub fn vertex_index(&self, mode: usize) -> usize {
        mode * self.block
    }

    /// `uᵀ K u`.
    pub fn quadratic_form(&self, u: &[T]) -> T {
        let mut acc = T::zero();
        for (d, x) in self.diag.iter().zip(u) {
            acc += *d * *x * *x;
        }
        for &(i, j, v) in &self.upper {
            acc += T::lit(2.0) * v * u[i] * u[j];
        }
        acc
    }

    /// `uᵀ B u`.
    pub fn mass_form(&self, u: &[T]) -> T {
        self.mass
            .iter()
            .zip(u)
            .fold(T::zero(), |acc, (m, x)| acc + *m * *x * *x)
    }
}

/// Pencil for the line geometry.
pub fn assemble<T: Scalar>(
    problem: &SmilanskyProblem<T>,
    grid: &ModeSpaceGrid<T>,
) -> Result<Pencil<T>> {
    assemble_star(&StarGraphSpec::line(), problem, grid)
}

/// Pencil for a star graph: per mode and bond the chain
/// `Σ (u_{i+1} - u_i)² / h + (n + 1/2) h Σ u_i²` (vertex mass `h/2` per bond),
/// plus `K[(n,0),(n-1,0)] = α sqrt(2n) / 2`.
pub fn assemble_star<T: Scalar>(
    star: &StarGraphSpec<T>,
    problem: &SmilanskyProblem<T>,
    grid: &ModeSpaceGrid<T>,
) -> Result<Pencil<T>> {
    let h = grid.step();
    let inv_h = h.recip();
    let half = T::lit(0.5);
    let interiors = star
        .lengths()
        .iter()
        .map(|&l| grid.bond_steps(l).map(|s| s - 1))
        .collect::<Result<Vec<_>>>()?;
    let block = 1 + interiors.iter().sum::<usize>();
    let modes = grid.modes();
    let size = block * modes;

    let mut diag = vec![T::zero(); size];
    let mut mass = vec![T::zero(); size];
    let mut upper = Vec::with_capacity(size + modes);

    for n in 0..modes {
        let potential = T::from_usize_lossy(n) + half;
        let vertex = n * block;
        let mut next = vertex + 1;
        for &interior in &interiors {
            // Edge vertex–first node (or vertex–Dirichlet end if no interior).
            diag[vertex] += inv_h;
            diag[vertex] += half * h * potential;
            mass[vertex] += half * h;
            let mut prev = vertex;
            for i in 0..interior {
                let idx = next + i;
                // Two edges touch every interior node.
                diag[idx] = T::lit(2.0) * inv_h + h * potential;
                mass[idx] = h;
                upper.push((prev, idx, -inv_h));
                prev = idx;
            }
            next += interior;
        }
        if n > 0 {
            let c = problem.alpha * coupling_coefficient::<T>(n) * half;
            upper.push(((n - 1) * block, vertex, c));
        }
    }
    Ok(Pencil {
        block,
        modes,
        diag,
        upper,
        mass,
    })
}
