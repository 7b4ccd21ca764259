//! Mode-space discretization of the two-dimensional operator
//! `-∂²_x + (1/2)(-∂²_y + y²)` with the interface form
//! `α Σ_n sqrt(2n) Re(u_n(0) conj u_{n-1}(0))`, and its exact inertia count.
//!
//! Expanding in Hermite functions `χ_n(y)` turns the form into decoupled
//! one-dimensional chains `h_n[u_n] = ∫ |u_n'|² + (n+1/2)|u_n|²` coupled only
//! through the vertex values `u_n(0)`. Each chain is discretized with
//! linear elements and lumped mass; eliminating its interior leaves a
//! per-mode Dirichlet-to-Neumann number `d_n`, and the coupling stays exact.
//! By inertia additivity the count of `K - (1/2-ε)B` is the chain negatives
//! (zero below the continuum edge) plus the negatives of the `M × M`
//! tridiagonal interface matrix. Normalized by `m sqrt(n+ε)`, that matrix is
//! `I + s(α)^{-1} J(ε)` with `s(α) = m / (α sqrt 2)`.

mod grid;
mod hermite;
mod inertia;
mod pencil;
mod verify;

pub use grid::{BondLength, ModeSpaceGrid, SmilanskyProblem, StarGraphSpec, DEFAULT_MODES};
pub use hermite::{coupling_coefficient, hermite_eval, hermite_values};
pub use inertia::{
    count_below, count_below_mode_sweep, dtn_value, inertia_below, interface_schur,
    interface_schur_star, lowest_eigenvalue, star_graph_count, Inertia, InterfaceMatrix,
};
pub use pencil::{assemble, assemble_star, Pencil};
pub use verify::{birman_schwinger_check, sandwich_check, BirmanSchwingerCheck, SandwichCheck};
