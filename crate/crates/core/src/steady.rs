//! Steady state from the trace-reduced system `W·B = −S`.

use nalgebra::LU;

use crate::builder::{Builder, EvolutionMatrix};
use crate::density::DensityMatrix;
use crate::error::{Error, Result};
use crate::index::vectorize;
use crate::reduce::reduce;
use crate::spec::SystemSpec;
use crate::validate::validate_spec;
use crate::{CMatrix, CVector, C64};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveOptions {
    /// `W` with an estimated 1-norm condition number above this is rejected.
    pub cond_threshold: f64,
    pub builder: Builder,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            cond_threshold: 1e12,
            builder: Builder::Fast,
        }
    }
}

/// Steady-state density matrix of a closed system, using the fast builder.
pub fn steady_state(spec: &SystemSpec) -> Result<DensityMatrix> {
    steady_state_with(spec, SolveOptions::default())
}

pub fn steady_state_with(spec: &SystemSpec, opts: SolveOptions) -> Result<DensityMatrix> {
    if !spec.closed_system() {
        return Err(Error::NotClosed(
            "trace reduction needs a closed system".into(),
        ));
    }
    let report = validate_spec(spec);
    if !report.is_ok() {
        return Err(Error::InvalidSpec(report.to_string().trim().to_string()));
    }
    let m = opts.builder.build(spec);
    solve_matrix(&m, opts.cond_threshold)
}

/// Solve the reduced system of an already built `M`.
pub fn solve_matrix(m: &EvolutionMatrix, cond_threshold: f64) -> Result<DensityMatrix> {
    let n = m.n_levels();
    if n == 1 {
        return Ok(DensityMatrix::ground(1, 0));
    }
    let red = reduce(m);
    let lu = red.w.clone().lu();
    let rhs = -&red.s;
    let b = lu
        .solve(&rhs)
        .ok_or_else(|| Error::Singular("W is exactly singular".into()))?;
    let cond = condition_estimate(&red.w, &lu);
    if !(cond <= cond_threshold) {
        return Err(Error::Singular(format!(
            "condition estimate {cond:e} exceeds {cond_threshold:e}"
        )));
    }
    if b.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::Singular("non-finite solution".into()));
    }

    let mut rho = CMatrix::zeros(n, n);
    for (k, value) in b.iter().enumerate() {
        rho[(k / n, k % n)] = *value;
    }
    rho[(n - 1, n - 1)] = recovered_last_population(&b, n);
    Ok(DensityMatrix::from_matrix(rho))
}

/// `ρ[N][N] = 1 − Σ_{k<N−1} B[k·N + k]`.
pub fn recovered_last_population(b: &CVector, n: usize) -> C64 {
    let mut acc = C64::new(1.0, 0.0);
    for k in 0..n - 1 {
        acc -= b[k * n + k];
    }
    acc
}

/// Max-norm of `M·vec(ρ)`.
pub fn residual(m: &EvolutionMatrix, rho: &DensityMatrix) -> Result<f64> {
    if rho.n_levels() != m.n_levels() {
        return Err(Error::Dimension {
            expected: m.n_levels(),
            actual: rho.n_levels(),
        });
    }
    let a = vectorize(rho.matrix())?;
    Ok(m.apply(&a).iter().map(|z| z.norm()).fold(0.0, f64::max))
}

fn norm1(a: &CMatrix) -> f64 {
    a.column_iter()
        .map(|c| c.iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// 1-norm condition estimate `‖W‖₁·est(‖W⁻¹‖₁)` from an existing LU,
/// using Hager's iteration (solves with `W` and `W†` only).
pub(crate) fn condition_estimate(w: &CMatrix, lu: &LU<C64, nalgebra::Dyn, nalgebra::Dyn>) -> f64 {
    let n = w.nrows();
    if n == 0 {
        return 0.0;
    }
    let anorm = norm1(w);
    if anorm == 0.0 {
        return f64::INFINITY;
    }
    let l = lu.l();
    let u = lu.u();
    let p = lu.p();
    let adjoint_solve = |rhs: &CVector| -> Option<CVector> {
        let a = u.ad_solve_upper_triangular(rhs)?;
        let mut z = l.ad_solve_lower_triangular(&a)?;
        p.inv_permute_rows(&mut z);
        Some(z)
    };

    let mut x = CVector::from_element(n, C64::new(1.0 / n as f64, 0.0));
    let mut est = 0.0;
    let mut last_j = usize::MAX;
    for _ in 0..5 {
        let Some(y) = lu.solve(&x) else {
            return f64::INFINITY;
        };
        est = y.iter().map(|z| z.norm()).sum::<f64>();
        let xi = y.map(|z| {
            let r = z.norm();
            if r == 0.0 {
                C64::new(1.0, 0.0)
            } else {
                z / r
            }
        });
        let Some(z) = adjoint_solve(&xi) else {
            return f64::INFINITY;
        };
        let (j, zmax) = z
            .iter()
            .enumerate()
            .map(|(i, v)| (i, v.norm()))
            .fold((0, -1.0), |acc, v| if v.1 > acc.1 { v } else { acc });
        let ztx = z.dotc(&x).re;
        if zmax <= ztx || j == last_j {
            break;
        }
        last_j = j;
        x.fill(C64::new(0.0, 0.0));
        x[j] = C64::new(1.0, 0.0);
    }
    anorm * est
}
