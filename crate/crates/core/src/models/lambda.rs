use crate::error::{Error, Result};
use crate::spec::SystemSpec;
use crate::{CMatrix, RMatrix, C64};

/// Λ system: ground levels 1 and 2 both coupled to the excited level 3.
///
/// `detuning` is the common one-photon detuning δ, `difference` the
/// two-photon detuning Δ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThreeLevelParams {
    pub rabi_a: f64,
    pub rabi_b: f64,
    pub detuning: f64,
    pub difference: f64,
    pub gamma: f64,
}

impl ThreeLevelParams {
    pub fn new(rabi_a: f64, rabi_b: f64, detuning: f64, difference: f64, gamma: f64) -> Self {
        Self {
            rabi_a,
            rabi_b,
            detuning,
            difference,
            gamma,
        }
    }
}

impl Default for ThreeLevelParams {
    fn default() -> Self {
        Self::new(1.0, 1.0, 0.0, 0.0, 1.0)
    }
}

/// Level 3 decays at `Γ`, split equally into levels 1 and 2.
pub fn three_level_lambda(p: &ThreeLevelParams) -> Result<SystemSpec> {
    if !(p.gamma > 0.0) {
        return Err(Error::Argument(format!("gamma must be positive, got {}", p.gamma)));
    }
    let mut h = CMatrix::zeros(3, 3);
    h[(0, 0)] = C64::new(p.difference / 2.0, 0.0);
    h[(1, 1)] = C64::new(-p.difference / 2.0, 0.0);
    h[(2, 2)] = C64::new(-p.detuning, -p.gamma / 2.0);
    super::couple(&mut h, 1, 3, p.rabi_a / 2.0);
    super::couple(&mut h, 2, 3, p.rabi_b / 2.0);

    let mut g = RMatrix::zeros(3, 3);
    g[(0, 2)] = p.gamma / 2.0;
    g[(1, 2)] = p.gamma / 2.0;
    SystemSpec::new(h, g, RMatrix::zeros(3, 3), true)
}
