//! Builders for the concrete atomic systems and their observables.

mod lambda;
mod observables;
mod rb87;
mod two_level;

pub use lambda::{three_level_lambda, ThreeLevelParams};
pub use observables::{
    excited_population, jones_output, polarization_observables, polarization_observables_for,
    PolarizationObservables, ProbeLegs, B_MIN_SQUARED, SIGMA_MINUS_LEGS, SIGMA_PLUS_LEGS,
};
pub use rb87::{rb87_waveplate, WaveplateParams, MIRROR_PERMUTATION};
pub use two_level::{two_level, TwoLevelParams};

use crate::{CMatrix, C64};

/// Set `H[i][j] = v` and `H[j][i] = conj(v)` (1-based).
pub(crate) fn couple(h: &mut CMatrix, i: usize, j: usize, v: f64) {
    h[(i - 1, j - 1)] = C64::new(v, 0.0);
    h[(j - 1, i - 1)] = C64::new(v, 0.0);
}
