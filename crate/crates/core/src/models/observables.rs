use std::f64::consts::PI;

use serde::Serialize;

use super::rb87::WaveplateParams;
use crate::density::DensityMatrix;
use crate::error::{Error, Result};
use crate::spec::SystemSpec;
use crate::C64;

/// Fraction of the decay of the weakest probe leg's upper level along that leg.
pub const B_MIN_SQUARED: f64 = 1.0 / 12.0;

/// Probe coherences `(upper, lower)` driven by the σ⁺ component (1-based).
pub const SIGMA_PLUS_LEGS: [(usize, usize); 5] = [(13, 4), (14, 5), (12, 7), (13, 8), (14, 9)];
/// Same for σ⁻.
pub const SIGMA_MINUS_LEGS: [(usize, usize); 5] = [(12, 5), (13, 6), (12, 9), (13, 10), (14, 11)];

/// Probe-leg weights `a_ij = Ω_ij / Ω_min`, signed as in the Hamiltonian.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbeLegs {
    pub plus: [((usize, usize), f64); 5],
    pub minus: [((usize, usize), f64); 5],
}

impl ProbeLegs {
    /// Read the weights off `H[i][j]`, normalised by `Ω_min/2`.
    pub fn from_spec(spec: &SystemSpec, omega_min: f64) -> Result<Self> {
        if spec.n_levels() != 15 {
            return Err(Error::Dimension {
                expected: 15,
                actual: spec.n_levels(),
            });
        }
        let h = spec.hamiltonian();
        let weight = |(i, j): (usize, usize)| ((i, j), h[(i - 1, j - 1)].re / (omega_min / 2.0));
        Ok(Self {
            plus: SIGMA_PLUS_LEGS.map(weight),
            minus: SIGMA_MINUS_LEGS.map(weight),
        })
    }

    /// Weights of the standard builder.
    pub fn rb87() -> Self {
        let spec = super::rb87_waveplate(&WaveplateParams::default()).expect("default params");
        Self::from_spec(&spec, WaveplateParams::default().omega_s).expect("15 levels")
    }

    pub fn weight(&self, upper: usize, lower: usize) -> Option<f64> {
        self.plus
            .iter()
            .chain(self.minus.iter())
            .find(|(ij, _)| *ij == (upper, lower))
            .map(|(_, a)| *a)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PolarizationObservables {
    pub phi_plus: f64,
    pub phi_minus: f64,
    pub trans_plus: f64,
    pub trans_minus: f64,
    pub beta: f64,
}

impl PolarizationObservables {
    /// `Φ₊ − Φ₋` in radians.
    pub fn dphi(&self) -> f64 {
        self.phi_plus - self.phi_minus
    }
}

/// `β± = b_min²·3·n·Γ·λ³ / (4π²·Ω_min)`.
pub fn beta(params: &WaveplateParams) -> f64 {
    let gamma = params.beta_gamma.unwrap_or(params.gamma_b);
    B_MIN_SQUARED * 3.0 * params.atom_density * gamma * params.wavelength.powi(3)
        / (4.0 * PI * PI * params.omega_s)
}

/// Phase and transmission of the two circular probe components for the
/// standard 15-level builder.
pub fn polarization_observables(
    rho: &DensityMatrix,
    params: &WaveplateParams,
) -> Result<PolarizationObservables> {
    let spec = super::rb87_waveplate(params)?;
    polarization_observables_for(&spec, rho, params)
}

/// As [`polarization_observables`], with leg weights taken from `spec`.
pub fn polarization_observables_for(
    spec: &SystemSpec,
    rho: &DensityMatrix,
    params: &WaveplateParams,
) -> Result<PolarizationObservables> {
    if rho.n_levels() != 15 {
        return Err(Error::Dimension {
            expected: 15,
            actual: rho.n_levels(),
        });
    }
    let legs = ProbeLegs::from_spec(spec, params.omega_s)?;
    let sum = |set: &[((usize, usize), f64); 5]| -> C64 {
        set.iter()
            .map(|&((i, j), a)| rho.get(i - 1, j - 1) * a)
            .sum()
    };
    let beta = beta(params);
    let kl = 2.0 * PI / params.wavelength * params.cell_length;
    let plus = sum(&legs.plus);
    let minus = sum(&legs.minus);
    Ok(PolarizationObservables {
        phi_plus: kl * beta / 2.0 * plus.re,
        phi_minus: kl * beta / 2.0 * minus.re,
        trans_plus: (-kl * beta * plus.im / 2.0).exp(),
        trans_minus: (-kl * beta * minus.im / 2.0).exp(),
        beta,
    })
}

/// Output Jones vector for x-polarized input.
pub fn jones_output(obs: &PolarizationObservables) -> [C64; 2] {
    let plus = C64::from_polar(obs.trans_plus, obs.phi_plus) * 0.5;
    let minus = C64::from_polar(obs.trans_minus, obs.phi_minus) * 0.5;
    let i = C64::new(0.0, 1.0);
    [plus + minus, i * plus - i * minus]
}

/// Population of a 1-based level.
pub fn excited_population(rho: &DensityMatrix, level: usize) -> Result<f64> {
    let n = rho.n_levels();
    if level == 0 || level > n {
        return Err(Error::Index { index: level, max: n });
    }
    Ok(rho.get(level - 1, level - 1).re)
}
