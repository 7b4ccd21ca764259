//! Zero-diagonal Jacobi matrices given by their off-diagonal sequences, and
//! exact eigenvalue counting on large truncations.
//!
//! A truncation of size `N` acts on coordinates `0..N`; its couplings are
//! `b_{f}, …, b_{f+N-2}` with `f = seq.first_index()`. Counting uses the
//! pivot signs of the LDLᵀ factorization of `T_N - sI` (or `sI - T_N`), so a
//! count costs one O(N) sweep and never skips an eigenvalue.
//! Eigenvalues exactly equal to the threshold are counted on neither side.

mod eigs;
mod sequence;
mod sturm;

pub use eigs::{
    eigs_outside, stabilized_count, stabilized_eigs, CountReport, EigReport, SpectralQuery,
    TruncationPolicy, MAX_BISECTION_STEPS,
};
pub use sequence::{offdiag_j0, offdiag_j_eps, offdiag_pollaczek, FamilyTag, OffDiagSequence};
pub use sturm::{sturm_count, Side, SturmOutcome, Truncation};

pub(crate) use sequence::pollaczek_p as sequence_p;
pub(crate) use sturm::{negative_pivots, ZeroPivot, MAX_RETRIES};
