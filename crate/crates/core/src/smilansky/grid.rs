use serde::Serialize;

use crate::error::{Error, Result};
use crate::Scalar;

pub const DEFAULT_MODES: usize = 64;

/// Discretization of the mode-space form: `modes` Hermite modes, each a
/// uniform grid on `[-L, L]` with step `h`, node at `x = 0`, Dirichlet at
/// `±L`. Infinite star-graph bonds are truncated at `L` as well.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModeSpaceGrid<T: Scalar> {
    modes: usize,
    step: T,
    half_steps: usize,
}

impl<T: Scalar> ModeSpaceGrid<T> {
    /// `half_length / step` must be an integer (to 1e-9 relative) and
    /// `half_length ≥ 10`.
    pub fn new(modes: usize, half_length: T, step: T) -> Result<Self> {
        if modes == 0 {
            return Err(Error::Grid("at least one Hermite mode is required".into()));
        }
        if !(step > T::zero()) || !step.is_finite() {
            return Err(Error::Grid(format!("step h = {step} must be positive")));
        }
        if !(half_length >= T::lit(10.0)) || !half_length.is_finite() {
            return Err(Error::Grid(format!(
                "half-length L = {half_length} must be at least 10"
            )));
        }
        let half_steps = whole_steps(half_length, step).ok_or_else(|| {
            Error::Grid(format!(
                "L / h = {} is not an integer, so x = 0 is not a grid node",
                half_length / step
            ))
        })?;
        Ok(Self {
            modes,
            step,
            half_steps,
        })
    }

    /// `h = min(1/64, 0.1/sqrt(M))`, `L = max(24, 12/sqrt(ε))` rounded up to
    /// a whole number of steps.
    pub fn default_for(eps: T, modes: usize) -> Result<Self> {
        if !(eps > T::zero()) {
            return Err(Error::domain("eps", eps.as_f64(), "(0, 1/2)"));
        }
        if modes == 0 {
            return Err(Error::Grid("at least one Hermite mode is required".into()));
        }
        let step = (T::one() / T::lit(64.0)).min(T::lit(0.1) / T::from_usize_lossy(modes).sqrt());
        let target = T::lit(24.0).max(T::lit(12.0) / eps.sqrt());
        let half_steps = (target / step - T::lit(1e-9))
            .ceil()
            .to_usize()
            .ok_or_else(|| {
                Error::Grid(format!(
                    "half-length {target} with step {step} is too large"
                ))
            })?;
        Ok(Self {
            modes,
            step,
            half_steps,
        })
    }

    pub fn with_modes(mut self, modes: usize) -> Self {
        self.modes = modes.max(1);
        self
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn step(&self) -> T {
        self.step
    }

    pub fn half_length(&self) -> T {
        T::from_usize_lossy(self.half_steps) * self.step
    }

    /// Steps from `x = 0` to `x = L`.
    pub fn half_steps(&self) -> usize {
        self.half_steps
    }

    /// Interior nodes per mode on the line, `2L/h - 1`.
    pub fn nodes_per_mode(&self) -> usize {
        2 * self.half_steps - 1
    }

    /// Number of grid steps along a bond.
    pub fn bond_steps(&self, length: BondLength<T>) -> Result<usize> {
        match length {
            BondLength::Infinite => Ok(self.half_steps),
            BondLength::Finite(b) => whole_steps(b, self.step).ok_or_else(|| {
                Error::Grid(format!(
                    "bond length {b} is not a whole number of steps h = {}",
                    self.step
                ))
            }),
        }
    }
}

fn whole_steps<T: Scalar>(length: T, step: T) -> Option<usize> {
    let ratio = length / step;
    let k = ratio.round();
    if k < T::one() || (ratio - k).abs() > T::lit(1e-9) * ratio.max(T::one()) {
        return None;
    }
    k.to_usize()
}

/// Coupling constant and spectral shift; the counting threshold is `1/2 - ε`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SmilanskyProblem<T: Scalar> {
    pub alpha: T,
    pub eps: T,
}

impl<T: Scalar> SmilanskyProblem<T> {
    /// `α ≥ 0`, `0 < ε < 1/2`. The upper bound on `α` depends on the
    /// geometry and is checked by the counting routines.
    pub fn new(alpha: T, eps: T) -> Result<Self> {
        if !(alpha >= T::zero()) || !alpha.is_finite() {
            return Err(Error::domain("alpha", alpha.as_f64(), "[0, m/sqrt(2))"));
        }
        if !(eps > T::zero() && eps < T::lit(0.5)) {
            return Err(Error::domain("eps", eps.as_f64(), "(0, 1/2)"));
        }
        Ok(Self { alpha, eps })
    }

    pub fn threshold(&self) -> T {
        T::lit(0.5) - self.eps
    }

    /// `s(α) = m / (α sqrt(2))`; `√2/α` on the line.
    pub fn s_for_bonds(&self, bonds: usize) -> T {
        T::from_usize_lossy(bonds) / (self.alpha * T::SQRT_2())
    }

    pub(crate) fn check_alpha(&self, bonds: usize) -> Result<()> {
        let cap = T::from_usize_lossy(bonds) / T::SQRT_2();
        if self.alpha >= cap {
            return Err(Error::domain(
                "alpha",
                self.alpha.as_f64(),
                "[0, m/sqrt(2)) for an m-bond star graph; [0, sqrt(2)) on the line",
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum BondLength<T: Scalar> {
    /// Truncated at the grid half-length with a Dirichlet end.
    Infinite,
    /// Dirichlet condition at the far end.
    Finite(T),
}

/// Star graph with `m = lengths.len()` bonds meeting at one vertex.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StarGraphSpec<T: Scalar> {
    lengths: Vec<BondLength<T>>,
}

impl<T: Scalar> StarGraphSpec<T> {
    pub fn new(lengths: Vec<BondLength<T>>) -> Result<Self> {
        if lengths.is_empty() {
            return Err(Error::domain("m", 0.0, "[1, inf)"));
        }
        for l in &lengths {
            if let BondLength::Finite(b) = l {
                if !(*b > T::zero()) || !b.is_finite() {
                    return Err(Error::domain("bond length", b.as_f64(), "(0, inf]"));
                }
            }
        }
        Ok(Self { lengths })
    }

    /// `m` half-infinite bonds.
    pub fn infinite(m: usize) -> Result<Self> {
        Self::new(vec![BondLength::Infinite; m])
    }

    /// The real line: two half-infinite bonds, left then right.
    pub fn line() -> Self {
        Self {
            lengths: vec![BondLength::Infinite; 2],
        }
    }

    pub fn bonds(&self) -> usize {
        self.lengths.len()
    }

    pub fn lengths(&self) -> &[BondLength<T>] {
        &self.lengths
    }
}
