use crate::error::{Error, Result};
use crate::spec::SystemSpec;
use crate::{CMatrix, RMatrix, C64};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoLevelParams {
    pub rabi: f64,
    pub detuning: f64,
    pub gamma: f64,
    pub dephasing: f64,
}

impl TwoLevelParams {
    pub fn new(rabi: f64, detuning: f64, gamma: f64) -> Self {
        Self {
            rabi,
            detuning,
            gamma,
            dephasing: 0.0,
        }
    }
}

impl Default for TwoLevelParams {
    fn default() -> Self {
        Self::new(5.0, 0.0, 1.0)
    }
}

/// Driven two-level atom with excited-state decay `Γ` back to the ground level.
pub fn two_level(p: &TwoLevelParams) -> Result<SystemSpec> {
    if !(p.gamma > 0.0) {
        return Err(Error::Argument(format!("gamma must be positive, got {}", p.gamma)));
    }
    if !(p.dephasing >= 0.0) {
        return Err(Error::Argument(format!(
            "dephasing must be non-negative, got {}",
            p.dephasing
        )));
    }
    let mut h = CMatrix::zeros(2, 2);
    super::couple(&mut h, 1, 2, p.rabi / 2.0);
    h[(1, 1)] = C64::new(-p.detuning, -p.gamma / 2.0);

    let mut g = RMatrix::zeros(2, 2);
    g[(0, 1)] = p.gamma;
    let mut d = RMatrix::zeros(2, 2);
    d[(0, 1)] = p.dephasing;
    d[(1, 0)] = p.dephasing;
    SystemSpec::new(h, g, d, true)
}
