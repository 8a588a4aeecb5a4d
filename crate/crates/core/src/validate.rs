//! Diagnostic checks on a [`SystemSpec`].
//!
//! Indices in reported violations are 1-based, matching the model files.

use std::fmt;

use serde::Serialize;

use crate::spec::{SystemSpec, HERMITIAN_TOL};

/// Tolerance on `Σ_i G[i][j] = −2·Im H′[j][j]`.
pub const CLOSURE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// `H′[i][j] ≠ conj(H′[j][i])` for `i ≠ j`.
    NonHermitian { row: usize, col: usize, magnitude: f64 },
    /// Positive imaginary part on the diagonal.
    Gain { level: usize, magnitude: f64 },
    NegativeSource { row: usize, col: usize, magnitude: f64 },
    NegativeDephasing { row: usize, col: usize, magnitude: f64 },
    DiagonalDephasing { level: usize, magnitude: f64 },
    AsymmetricDephasing { row: usize, col: usize, magnitude: f64 },
    NonFinite { row: usize, col: usize },
    /// Total influx sourced by level `level` differs from its decay rate.
    Closure {
        level: usize,
        influx: f64,
        decay: f64,
        magnitude: f64,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::NonHermitian { row, col, magnitude } => write!(
                f,
                "ham {row} {col} is not the conjugate of ham {col} {row} (|diff| = {magnitude:e})"
            ),
            Self::Gain { level, magnitude } => write!(
                f,
                "ham {level} {level} has positive imaginary part {magnitude:e} (gain)"
            ),
            Self::NegativeSource { row, col, magnitude } => {
                write!(f, "src {row} {col} is negative ({magnitude:e})")
            }
            Self::NegativeDephasing { row, col, magnitude } => {
                write!(f, "deph {row} {col} is negative ({magnitude:e})")
            }
            Self::DiagonalDephasing { level, magnitude } => {
                write!(f, "deph {level} {level} must be zero (got {magnitude:e})")
            }
            Self::AsymmetricDephasing { row, col, magnitude } => write!(
                f,
                "deph {row} {col} differs from deph {col} {row} by {magnitude:e}"
            ),
            Self::NonFinite { row, col } => write!(f, "entry ({row}, {col}) is not finite"),
            Self::Closure {
                level,
                influx,
                decay,
                magnitude,
            } => write!(
                f,
                "level {level}: total source influx {influx} differs from decay rate {decay} by {magnitude:e}"
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    pub n_levels: usize,
    pub closed_system: bool,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return write!(f, "ok: {} levels, no violations", self.n_levels);
        }
        writeln!(f, "{} violation(s):", self.violations.len())?;
        for v in &self.violations {
            writeln!(f, "  {v}")?;
        }
        Ok(())
    }
}

/// Per-entry invariants (everything except trace closure).
pub(crate) fn entry_violations(spec: &SystemSpec) -> Vec<Violation> {
    let n = spec.n_levels();
    let h = spec.hamiltonian();
    let g = spec.source();
    let d = spec.dephasing();
    let mut out = Vec::new();

    for i in 0..n {
        for j in 0..n {
            let finite = h[(i, j)].re.is_finite()
                && h[(i, j)].im.is_finite()
                && g[(i, j)].is_finite()
                && d[(i, j)].is_finite();
            if !finite {
                out.push(Violation::NonFinite { row: i + 1, col: j + 1 });
            }
        }
    }
    if !out.is_empty() {
        return out;
    }

    for j in 0..n {
        let im = h[(j, j)].im;
        if im > 0.0 {
            out.push(Violation::Gain { level: j + 1, magnitude: im });
        }
        if d[(j, j)] != 0.0 {
            out.push(Violation::DiagonalDephasing {
                level: j + 1,
                magnitude: d[(j, j)],
            });
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let diff = (h[(i, j)] - h[(j, i)].conj()).norm();
            if diff > HERMITIAN_TOL {
                out.push(Violation::NonHermitian {
                    row: i + 1,
                    col: j + 1,
                    magnitude: diff,
                });
            }
            let ddiff = (d[(i, j)] - d[(j, i)]).abs();
            if ddiff > HERMITIAN_TOL {
                out.push(Violation::AsymmetricDephasing {
                    row: i + 1,
                    col: j + 1,
                    magnitude: ddiff,
                });
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            if g[(i, j)] < 0.0 {
                out.push(Violation::NegativeSource {
                    row: i + 1,
                    col: j + 1,
                    magnitude: g[(i, j)],
                });
            }
            if d[(i, j)] < 0.0 {
                out.push(Violation::NegativeDephasing {
                    row: i + 1,
                    col: j + 1,
                    magnitude: d[(i, j)],
                });
            }
        }
    }
    out
}

/// Check every invariant of `spec`; for closed systems also check that each
/// level's decay is fully redistributed by the source matrix.
pub fn validate_spec(spec: &SystemSpec) -> ValidationReport {
    let mut violations = entry_violations(spec);
    if spec.closed_system() {
        let n = spec.n_levels();
        for j in 0..n {
            let influx: f64 = spec.source().column(j).sum();
            let decay = -2.0 * spec.hamiltonian()[(j, j)].im;
            let magnitude = (influx - decay).abs();
            if !(magnitude <= CLOSURE_TOL) {
                violations.push(Violation::Closure {
                    level: j + 1,
                    influx,
                    decay,
                    magnitude,
                });
            }
        }
    }
    ValidationReport {
        n_levels: spec.n_levels(),
        closed_system: spec.closed_system(),
        violations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{two_level, TwoLevelParams};
    use crate::{CMatrix, RMatrix, C64};

    #[test]
    fn two_level_closes() {
        let spec = two_level(&TwoLevelParams::new(5.0, 0.0, 1.0)).unwrap();
        assert!(validate_spec(&spec).is_ok());
    }

    #[test]
    fn halved_source_is_one_violation() {
        let spec = two_level(&TwoLevelParams::new(5.0, 0.0, 1.0)).unwrap();
        let mut g = spec.source().clone();
        g[(0, 1)] *= 0.5;
        let broken = SystemSpec::new(
            spec.hamiltonian().clone(),
            g,
            spec.dephasing().clone(),
            true,
        )
        .unwrap();
        let report = validate_spec(&broken);
        assert_eq!(report.violations.len(), 1);
        match &report.violations[0] {
            Violation::Closure {
                level, magnitude, ..
            } => {
                assert_eq!(*level, 2);
                assert!((magnitude - 0.5).abs() < 1e-15);
            }
            v => panic!("unexpected {v:?}"),
        }
    }

    #[test]
    fn open_system_skips_closure() {
        let h = CMatrix::from_diagonal_element(2, 2, C64::new(0.0, -0.5));
        let spec = SystemSpec::new(h, RMatrix::zeros(2, 2), RMatrix::zeros(2, 2), false).unwrap();
        assert!(validate_spec(&spec).is_ok());
    }

    #[test]
    fn report_lists_every_entry_problem() {
        let mut h = CMatrix::zeros(2, 2);
        h[(0, 0)] = C64::new(0.0, 0.1);
        h[(0, 1)] = C64::new(1.0, 0.0);
        let mut d = RMatrix::zeros(2, 2);
        d[(0, 1)] = 0.3;
        let raw = SystemSpec::from_parts_unchecked(h, RMatrix::zeros(2, 2), d, false);
        let v = entry_violations(&raw);
        assert_eq!(v.len(), 3, "{v:?}");
    }
}
