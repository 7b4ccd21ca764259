//! Eigenvalue counting for the Smilansky operator family and the Jacobi
//! matrices it reduces to.
//!
//! The crate has four computational layers:
//!
//! - [`jacobi`]: zero-diagonal Jacobi families as off-diagonal sequences, an
//!   O(N) pivot-sign (Sturm) counter, bisection for isolated eigenvalues and
//!   truncation-plateau detection.
//! - [`pollaczek`]: the monic Pollaczek recurrence and its closed-form
//!   eigenvalues, used as exact ground truth for the counter.
//! - [`smilansky`]: a quadratic-form discretization of the two-dimensional
//!   operator in Hermite modes, counted by exact inertia (chain elimination
//!   followed by an interface Schur complement), on the line and on star
//!   graphs.
//! - [`asymptotics`]: estimation of the `1/2 + q/n` coefficient and checks of
//!   the eigenvalue and counting laws near the band edge.
//!
//! Every numerical routine is generic over [`Scalar`] (`f32` or `f64`); the
//! aliases at the crate root fix `f64`, which is what the CLI uses.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod asymptotics;
pub mod error;
pub mod jacobi;
pub mod pollaczek;
pub mod smilansky;

pub use error::{Error, Result};

use std::fmt::{Debug, Display};

/// Floating-point scalar the numerical kernels are written against.
pub trait Scalar:
    num_traits::Float
    + num_traits::FloatConst
    + num_traits::FromPrimitive
    + num_traits::NumAssign
    + Debug
    + Display
    + Default
    + Send
    + Sync
    + serde::Serialize
    + 'static
{
    /// Converts an `f64` literal. Panics only for non-representable input,
    /// which cannot happen for `f32`/`f64`.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable in scalar type")
    }

    #[inline]
    fn from_usize_lossy(n: usize) -> Self {
        Self::from_usize(n).expect("index representable in scalar type")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

pub type OffDiag = jacobi::OffDiagSequence<f64>;
pub type Query = jacobi::SpectralQuery<f64>;
pub type Policy = jacobi::TruncationPolicy;
pub type Report = jacobi::CountReport;
pub type EigReport = jacobi::EigReport<f64>;
pub type Pollaczek = pollaczek::PollaczekParams<f64>;
pub type Grid = smilansky::ModeSpaceGrid<f64>;
pub type Problem = smilansky::SmilanskyProblem<f64>;
pub type StarGraph = smilansky::StarGraphSpec<f64>;
pub type Interface = smilansky::InterfaceMatrix<f64>;
pub type Fit = asymptotics::AsymptoticFit<f64>;
