//! Vectorized Liouville equation for N-level atomic systems.
//!
//! The density-matrix equation of motion
//!
//! ```text
//! dρ/dt = −i(H′ρ − ρH′†) + source(ρ) + dephasing(ρ)
//! ```
//!
//! is rewritten as the linear system `dA/dt = M·A`, where `A` stacks the
//! entries of ρ in row-major order. Element `ρ[α][β]` (1-based) sits at
//! position `n = (α−1)·N + β` of `A`; internally everything is 0-based, so
//! `ρ[a][b]` lives at `a·N + b`.
//!
//! From `M` the crate builds the trace-reduced system `W·B = −S`, solves it
//! for the steady state, and integrates time evolution. The [`models`]
//! module holds the two-level, three-level Λ and 15-level ⁸⁷Rb waveplate
//! builders, [`io`] the model-file format and CSV output.

pub mod bench;
pub mod builder;
pub mod density;
pub mod error;
pub mod evolve;
pub mod index;
pub mod io;
pub mod liouvillian;
pub mod models;
pub mod random;
pub mod reduce;
pub mod spec;
pub mod steady;
pub mod sweep;
pub mod validate;

pub use num_complex::Complex64 as C64;

/// Dense complex matrix used throughout the crate.
pub type CMatrix = nalgebra::DMatrix<C64>;
/// Dense real matrix (source and dephasing rates).
pub type RMatrix = nalgebra::DMatrix<f64>;
/// Dense complex column vector.
pub type CVector = nalgebra::DVector<C64>;

pub use builder::{build_fast, build_naive, Builder, EvolutionMatrix};
pub use density::{DensityMatrix, Trajectory};
pub use error::{Error, Result};
pub use evolve::evolve;
pub use index::{devectorize, index_to_pair, nzrem, pair_to_index, vectorize};
pub use liouvillian::apply_liouvillian;
pub use reduce::{reduce, ReducedSystem};
pub use spec::SystemSpec;
pub use steady::{residual, steady_state, steady_state_with, SolveOptions};
pub use validate::{validate_spec, ValidationReport, Violation};
