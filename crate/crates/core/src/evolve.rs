use crate::builder::build_fast;
use crate::density::{DensityMatrix, Trajectory};
use crate::error::{Error, Result};
use crate::index::{devectorize, vectorize};
use crate::spec::SystemSpec;
use crate::C64;

/// `dt·max_rate` may not exceed this.
pub const STEP_GUARD: f64 = 0.1;

/// Largest step accepted for `spec`.
pub fn max_step(spec: &SystemSpec) -> f64 {
    let rate = spec.max_rate();
    if rate == 0.0 {
        f64::INFINITY
    } else {
        STEP_GUARD / rate
    }
}

/// Integrate `dA/dt = M·A` from `rho0` to `t_end` with classical RK4.
///
/// For a constant linear system one RK4 step is the 4th-order Taylor
/// polynomial of `exp(M·dt)`. Every step is sampled; the final step is
/// shortened to land on `t_end`.
pub fn evolve(spec: &SystemSpec, rho0: &DensityMatrix, t_end: f64, dt: f64) -> Result<Trajectory> {
    let n = spec.n_levels();
    if rho0.n_levels() != n {
        return Err(Error::Dimension {
            expected: n,
            actual: rho0.n_levels(),
        });
    }
    if !(t_end > 0.0) || !t_end.is_finite() {
        return Err(Error::Argument(format!("t_end must be positive, got {t_end}")));
    }
    if !(dt > 0.0) || !dt.is_finite() {
        return Err(Error::Argument(format!("dt must be positive, got {dt}")));
    }
    let bound = max_step(spec);
    if dt > bound {
        return Err(Error::StepSize { dt, bound });
    }

    let m = build_fast(spec).into_entries();
    let mut a = vectorize(rho0.matrix())?;
    let steps = (t_end / dt - 1e-9).ceil().max(1.0) as usize;
    let mut times = Vec::with_capacity(steps + 1);
    let mut states = Vec::with_capacity(steps + 1);
    times.push(0.0);
    states.push(rho0.clone());

    let half = C64::new(0.5, 0.0);
    for k in 1..=steps {
        let t_prev = (k - 1) as f64 * dt;
        let t = if k == steps { t_end } else { k as f64 * dt };
        let h = C64::new(t - t_prev, 0.0);
        let k1 = &m * &a;
        let k2 = &m * (&a + &k1 * (h * half));
        let k3 = &m * (&a + &k2 * (h * half));
        let k4 = &m * (&a + &k3 * h);
        a += (k1 + (k2 + k3) * C64::new(2.0, 0.0) + k4) * (h / 6.0);
        if a.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::Diverged(t));
        }
        times.push(t);
        states.push(DensityMatrix::from_matrix(devectorize(&a)?));
    }
    Ok(Trajectory { times, states })
}
