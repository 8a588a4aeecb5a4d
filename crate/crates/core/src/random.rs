//! Random closed systems for property tests and benchmarks.

use rand::Rng;

use crate::spec::SystemSpec;
use crate::{CMatrix, RMatrix, C64};

/// A closed `n`-level system with random couplings, detunings, source
/// rates and symmetric dephasing. Decay on each level equals the total
/// influx it feeds, so the result passes closure validation.
pub fn random_closed_spec<R: Rng + ?Sized>(n: usize, rng: &mut R) -> SystemSpec {
    let mut g = RMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            if rng.gen_bool(0.6) {
                g[(i, j)] = rng.gen_range(0.0..2.0);
            }
        }
    }
    let mut d = RMatrix::zeros(n, n);
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.gen_bool(0.3) {
                let v = rng.gen_range(0.0..0.5);
                d[(i, j)] = v;
                d[(j, i)] = v;
            }
        }
    }
    let mut h = CMatrix::zeros(n, n);
    for j in 0..n {
        let decay: f64 = g.column(j).sum();
        h[(j, j)] = C64::new(rng.gen_range(-3.0..3.0), -decay / 2.0);
        for i in (j + 1)..n {
            let z = C64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
            h[(i, j)] = z;
            h[(j, i)] = z.conj();
        }
    }
    SystemSpec::new(h, g, d, true).expect("random spec satisfies invariants")
}

/// Random Hermitian matrix with unit trace and real diagonal.
pub fn random_hermitian_state<R: Rng + ?Sized>(n: usize, rng: &mut R) -> CMatrix {
    let mut m = CMatrix::zeros(n, n);
    let mut total = 0.0;
    for i in 0..n {
        let p: f64 = rng.gen_range(0.01..1.0);
        total += p;
        m[(i, i)] = C64::new(p, 0.0);
        for j in (i + 1)..n {
            let z = C64::new(rng.gen_range(-0.3..0.3), rng.gen_range(-0.3..0.3));
            m[(i, j)] = z;
            m[(j, i)] = z.conj();
        }
    }
    m / C64::new(total, 0.0)
}

/// Random matrix with no structure.
pub fn random_matrix<R: Rng + ?Sized>(n: usize, rng: &mut R) -> CMatrix {
    CMatrix::from_fn(n, n, |_, _| {
        C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::validate_spec;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_specs_validate() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 1..=8 {
            let spec = random_closed_spec(n, &mut rng);
            assert!(validate_spec(&spec).is_ok());
        }
    }

    #[test]
    fn random_state_has_unit_trace() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let m = random_hermitian_state(4, &mut rng);
        assert!((m.trace() - C64::new(1.0, 0.0)).norm() < 1e-14);
        assert!((&m - m.adjoint()).norm() < 1e-15);
    }
}
