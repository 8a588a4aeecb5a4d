//! 15-level ⁸⁷Rb ladder: 5S½ F=1 → 5P½ (pump) → 6S½ F''=1 (probe).
//!
//! Level map (1-based):
//!
//! | levels   | manifold          | m_F        |
//! |----------|-------------------|------------|
//! | 1–3      | 5S½ F=1           | −1, 0, 1   |
//! | 4–6      | 5P½ F'=1          | −1, 0, 1   |
//! | 7–11     | 5P½ F'=2          | −2 … 2     |
//! | 12–14    | 6S½ F''=1         | −1, 0, 1   |
//! | 15       | 5S½ F=2 (lumped)  |            |
//!
//! All rates are in units of `gamma_a`.

use crate::error::{Error, Result};
use crate::spec::SystemSpec;
use crate::{CMatrix, RMatrix, C64};

const SQRT3: f64 = 1.732_050_807_568_877_2;
const SQRT6: f64 = 2.449_489_742_783_178;

/// Relabeling `m_F → −m_F` (0-based, level `i` of the mirror is level
/// `MIRROR_PERMUTATION[i]` of the original).
pub const MIRROR_PERMUTATION: [usize; 15] = [2, 1, 0, 5, 4, 3, 10, 9, 8, 7, 6, 13, 12, 11, 14];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveplateParams {
    /// Pump Rabi frequency.
    pub omega_p: f64,
    /// Probe Rabi frequency of the weakest probe leg.
    pub omega_s: f64,
    pub delta_p: f64,
    pub delta_s: f64,
    /// 5P½ F'=1 ↔ F'=2 splitting.
    pub hyperfine: f64,
    pub gamma_a: f64,
    pub gamma_b: f64,
    /// Ground-state exchange rate between F=1 and F=2.
    pub gamma_g: f64,
    /// Fraction of `gamma_b` that decays back into 5P½.
    pub branching: f64,
    /// Cell length in meters.
    pub cell_length: f64,
    /// Atom density in m⁻³.
    pub atom_density: f64,
    /// Probe wavelength in meters.
    pub wavelength: f64,
    /// Rate used in the β± prefactor; `None` means `gamma_b`.
    pub beta_gamma: Option<f64>,
}

impl Default for WaveplateParams {
    fn default() -> Self {
        let hyperfine = 141.4;
        Self {
            omega_p: 5.0,
            omega_s: 0.1,
            delta_p: hyperfine,
            delta_s: 0.0,
            hyperfine,
            gamma_a: 1.0,
            gamma_b: 3.45 / 5.75,
            gamma_g: 0.1 / 5.75,
            branching: 0.5,
            cell_length: 0.15,
            atom_density: 1e16,
            wavelength: 1.323e-6,
            beta_gamma: None,
        }
    }
}

impl WaveplateParams {
    pub fn gamma_bd(&self) -> f64 {
        self.branching * self.gamma_b
    }

    pub fn gamma_bi(&self) -> f64 {
        (1.0 - self.branching) * self.gamma_b
    }

    fn check(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.branching) {
            return Err(Error::Argument(format!(
                "branching must lie in [0, 1], got {}",
                self.branching
            )));
        }
        for (name, v) in [
            ("gamma_a", self.gamma_a),
            ("gamma_b", self.gamma_b),
            ("gamma_g", self.gamma_g),
        ] {
            if !(v >= 0.0) {
                return Err(Error::Argument(format!("{name} must be non-negative, got {v}")));
            }
        }
        for (name, v) in [
            ("cell_length", self.cell_length),
            ("atom_density", self.atom_density),
            ("wavelength", self.wavelength),
        ] {
            if !(v > 0.0) {
                return Err(Error::Argument(format!("{name} must be positive, got {v}")));
            }
        }
        Ok(())
    }
}

/// Build the closed 15-level system.
pub fn rb87_waveplate(p: &WaveplateParams) -> Result<SystemSpec> {
    p.check()?;
    let mut h = CMatrix::zeros(15, 15);
    let mut diag = |level: usize, re: f64, gamma: f64| {
        h[(level - 1, level - 1)] = C64::new(re, -gamma / 2.0);
    };
    for level in 1..=3 {
        diag(level, 0.0, p.gamma_g);
    }
    for level in 4..=6 {
        diag(level, -p.delta_p, p.gamma_a);
    }
    for level in 7..=11 {
        diag(level, p.hyperfine - p.delta_p, p.gamma_a);
    }
    for level in 12..=14 {
        diag(level, -p.delta_s - p.delta_p, p.gamma_b);
    }
    diag(15, 0.0, p.gamma_g);

    let pump = p.omega_p / 2.0;
    let probe = p.omega_s / 2.0;
    let couplings = [
        (1, 5, -pump),
        (1, 9, -pump),
        (2, 6, -pump),
        (2, 10, -SQRT3 * pump),
        (3, 11, -SQRT6 * pump),
        (4, 13, -probe),
        (5, 12, probe),
        (5, 14, -probe),
        (6, 13, probe),
        (7, 12, SQRT6 * probe),
        (8, 13, SQRT3 * probe),
        (9, 12, probe),
        (9, 14, probe),
        (10, 13, SQRT3 * probe),
        (11, 14, SQRT6 * probe),
    ];
    for (i, j, v) in couplings {
        super::couple(&mut h, i, j, v);
    }

    let ga = p.gamma_a;
    let bd = p.gamma_bd();
    let bi = p.gamma_bi();
    let gg = p.gamma_g;
    let mut g = RMatrix::zeros(15, 15);
    let mut src = |to: usize, from: usize, rate: f64| {
        g[(to - 1, from - 1)] += rate;
    };

    // 5P½ → 5S½ F=1
    for from in [4, 5, 9] {
        src(1, from, ga / 12.0);
    }
    src(1, 7, ga / 2.0);
    src(1, 8, ga / 4.0);
    for from in [4, 6] {
        src(2, from, ga / 12.0);
    }
    src(2, 8, ga / 4.0);
    src(2, 9, ga / 3.0);
    src(2, 10, ga / 4.0);
    for from in [5, 6, 9] {
        src(3, from, ga / 12.0);
    }
    src(3, 10, ga / 4.0);
    src(3, 11, ga / 2.0);

    // 6S½ → 5S½ (effective, via 5P3/2) and F=2 → F=1 exchange
    for to in 1..=3 {
        for from in 12..=14 {
            src(to, from, bi / 18.0);
        }
        src(to, 15, gg / 3.0);
    }

    // 6S½ → 5P½
    src(4, 12, bd / 12.0);
    src(4, 13, bd / 12.0);
    src(5, 12, bd / 12.0);
    src(5, 14, bd / 12.0);
    src(6, 13, bd / 12.0);
    src(6, 14, bd / 12.0);
    src(7, 12, bd / 2.0);
    src(8, 12, bd / 4.0);
    src(8, 13, bd / 4.0);
    src(9, 12, bd / 12.0);
    src(9, 13, bd / 3.0);
    src(9, 14, bd / 12.0);
    src(10, 13, bd / 4.0);
    src(10, 14, bd / 4.0);
    src(11, 14, bd / 2.0);

    // everything into 5S½ F=2
    for from in 1..=3 {
        src(15, from, gg);
    }
    for from in 4..=6 {
        src(15, from, 5.0 * ga / 6.0);
    }
    for from in 7..=11 {
        src(15, from, ga / 2.0);
    }
    for from in 12..=14 {
        src(15, from, 5.0 * bi / 6.0);
    }

    SystemSpec::new(h, g, RMatrix::zeros(15, 15), true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::validate_spec;

    fn spec() -> SystemSpec {
        rb87_waveplate(&WaveplateParams::default()).unwrap()
    }

    #[test]
    fn listed_entries() {
        let p = WaveplateParams::default();
        let s = spec();
        let h = s.hamiltonian();
        assert!((h[(1, 9)].re + SQRT3 * p.omega_p / 2.0).abs() < 1e-15);
        assert_eq!(h[(9, 1)], h[(1, 9)].conj());
        assert_eq!(h[(0, 4)], C64::new(-2.5, 0.0));
        assert_eq!(h[(6, 6)], C64::new(0.0, -0.5));
        assert_eq!(h[(11, 11)], C64::new(-141.4, -p.gamma_b / 2.0));
        assert_eq!(h[(14, 14)], C64::new(0.0, -p.gamma_g / 2.0));
        let g = s.source();
        assert!((g[(14, 4)] - 5.0 / 6.0).abs() < 1e-15);
        assert!((g[(6, 11)] - p.gamma_bd() / 2.0).abs() < 1e-15);
    }

    #[test]
    fn unlisted_entries_are_zero() {
        let s = spec();
        let h = s.hamiltonian();
        let nonzero = h.iter().filter(|z| z.norm() != 0.0).count();
        // 15 diagonal entries plus 15 couplings counted twice
        assert_eq!(nonzero, 15 + 30);
    }

    #[test]
    fn every_level_closes() {
        let report = validate_spec(&spec());
        assert!(report.is_ok(), "{report}");
    }

    #[test]
    fn level_twelve_by_hand() {
        let p = WaveplateParams::default();
        let influx: f64 = spec().source().column(11).sum();
        let by_hand = 3.0 * (p.gamma_bi() / 18.0)
            + p.gamma_bd() * (1.0 / 12.0 + 1.0 / 12.0 + 1.0 / 2.0 + 1.0 / 4.0 + 1.0 / 12.0)
            + 5.0 * p.gamma_bi() / 6.0;
        assert!((influx - by_hand).abs() < 1e-15);
        assert!((by_hand - p.gamma_b).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_branching() {
        let p = WaveplateParams {
            branching: 1.5,
            ..Default::default()
        };
        assert!(rb87_waveplate(&p).is_err());
    }
}
