use crate::error::{Error, Result};
use crate::spec::SystemSpec;
use crate::{CMatrix, C64};

/// Right-hand side of the density-matrix equation of motion:
/// `Q = −i(H′ρ − ρH′†) + Q_source + Q_deph`.
pub fn apply_liouvillian(spec: &SystemSpec, rho: &CMatrix) -> Result<CMatrix> {
    let n = spec.n_levels();
    if rho.shape() != (n, n) {
        return Err(Error::Dimension {
            expected: n,
            actual: if rho.nrows() != n { rho.nrows() } else { rho.ncols() },
        });
    }
    let h = spec.hamiltonian();
    let commutator = h * rho - rho * h.adjoint();
    let mut q = commutator * C64::new(0.0, -1.0);

    let g = spec.source();
    let d = spec.dephasing();
    for i in 0..n {
        let influx: C64 = (0..n).map(|j| rho[(j, j)] * g[(i, j)]).sum();
        q[(i, i)] += influx;
        for j in 0..n {
            if i != j {
                q[(i, j)] -= rho[(i, j)] * d[(i, j)];
            }
        }
    }
    Ok(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{two_level, TwoLevelParams};

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn excited_population_decays_into_ground() {
        let spec = two_level(&TwoLevelParams::new(0.0, 0.0, 1.0)).unwrap();
        let mut rho = CMatrix::zeros(2, 2);
        rho[(1, 1)] = c(1.0, 0.0);
        let q = apply_liouvillian(&spec, &rho).unwrap();
        assert!((q[(0, 0)] - c(1.0, 0.0)).norm() < 1e-15);
        assert!((q[(1, 1)] - c(-1.0, 0.0)).norm() < 1e-15);
        assert_eq!(q[(0, 1)], c(0.0, 0.0));
    }

    #[test]
    fn zero_state_gives_zero() {
        let spec = two_level(&TwoLevelParams::new(5.0, 1.0, 1.0)).unwrap();
        let q = apply_liouvillian(&spec, &CMatrix::zeros(2, 2)).unwrap();
        assert!(q.iter().all(|z| z.norm() == 0.0));
    }

    #[test]
    fn single_coherence() {
        let omega = 3.0;
        let spec = two_level(&TwoLevelParams::new(omega, 0.0, 1.0)).unwrap();
        let mut rho = CMatrix::zeros(2, 2);
        rho[(0, 1)] = c(1.0, 0.0);
        let q = apply_liouvillian(&spec, &rho).unwrap();
        assert!((q[(0, 1)] - c(-0.5, 0.0)).norm() < 1e-15);
        assert!((q[(0, 0)] - c(0.0, omega / 2.0)).norm() < 1e-15);
        assert!((q[(1, 1)] - c(0.0, -omega / 2.0)).norm() < 1e-15);
    }

    #[test]
    fn dephasing_damps_coherence() {
        let mut p = TwoLevelParams::new(0.0, 0.0, 1.0);
        p.dephasing = 0.25;
        let spec = two_level(&p).unwrap();
        let mut rho = CMatrix::zeros(2, 2);
        rho[(1, 0)] = c(1.0, 0.0);
        let q = apply_liouvillian(&spec, &rho).unwrap();
        assert!((q[(1, 0)] - c(-0.75, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn wrong_dimension() {
        let spec = two_level(&TwoLevelParams::new(1.0, 0.0, 1.0)).unwrap();
        assert!(apply_liouvillian(&spec, &CMatrix::zeros(3, 3)).is_err());
    }
}
