//! Steady-state parameter sweeps over a model file.

use rayon::prelude::*;

use crate::builder::Builder;
use crate::density::DensityMatrix;
use crate::error::Result;
use crate::io::{instantiate, Column, ModelFile, Observable, SweepResult, Value};
use crate::models::{polarization_observables_for, WaveplateParams, SIGMA_MINUS_LEGS, SIGMA_PLUS_LEGS};
use crate::spec::SystemSpec;
use crate::steady::{steady_state_with, SolveOptions};

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SweepOptions {
    pub solve: SolveOptions,
    /// Worker threads; `None` uses rayon's default pool.
    pub threads: Option<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepOutcome {
    pub result: SweepResult,
    /// `(x, message)` for every point whose solve failed; its row holds NaN.
    pub failures: Vec<(f64, String)>,
}

/// Output columns for a list of observables.
pub fn columns(observables: &[Observable]) -> Vec<Column> {
    let mut cols = Vec::new();
    for obs in observables {
        match *obs {
            Observable::Pop(k) => cols.push(Column::real(format!("pop{k}"))),
            Observable::Coh(i, j) => cols.push(Column::complex(format!("coh{i}_{j}"))),
            Observable::Waveplate => {
                for name in ["phi_plus", "phi_minus", "trans_plus", "trans_minus", "dphi"] {
                    cols.push(Column::real(name));
                }
            }
        }
    }
    cols
}

/// Waveplate optics for a 15-level spec read from a file: the probe Rabi
/// frequency and the β rate are taken from the Hamiltonian, cell and
/// vapour constants are the defaults.
pub fn waveplate_params_for(spec: &SystemSpec) -> WaveplateParams {
    let h = spec.hamiltonian();
    let weakest = SIGMA_PLUS_LEGS
        .iter()
        .chain(SIGMA_MINUS_LEGS.iter())
        .map(|&(i, j)| h[(i - 1, j - 1)].norm())
        .filter(|v| *v > 0.0)
        .fold(f64::INFINITY, f64::min);
    let mut p = WaveplateParams::default();
    if weakest.is_finite() {
        p.omega_s = 2.0 * weakest;
    }
    p.gamma_b = -2.0 * h[(11, 11)].im;
    p
}

/// Evaluate observables on a solved state.
pub fn observe(spec: &SystemSpec, rho: &DensityMatrix, observables: &[Observable]) -> Result<Vec<Value>> {
    let mut out = Vec::new();
    for obs in observables {
        match *obs {
            Observable::Pop(k) => out.push(Value::Real(rho.get(k - 1, k - 1).re)),
            Observable::Coh(i, j) => out.push(Value::Complex(rho.get(i - 1, j - 1))),
            Observable::Waveplate => {
                let params = waveplate_params_for(spec);
                let o = polarization_observables_for(spec, rho, &params)?;
                out.extend(
                    [o.phi_plus, o.phi_minus, o.trans_plus, o.trans_minus, o.dphi()]
                        .map(Value::Real),
                );
            }
        }
    }
    Ok(out)
}

fn solve_point(model: &ModelFile, x: f64, opts: &SolveOptions) -> Result<Vec<Value>> {
    let spec = instantiate(model, x)?;
    let rho = steady_state_with(&spec, *opts)?;
    observe(&spec, &rho, &model.observables)
}

/// One steady-state solve per grid point. Rows come back in grid order.
pub fn run_sweep(model: &ModelFile, grid: &[f64], opts: SweepOptions) -> SweepOutcome {
    let cols = columns(&model.observables);
    let solve = |x: &f64| solve_point(model, *x, &opts.solve);
    let results: Vec<Result<Vec<Value>>> = match opts.threads {
        Some(1) => grid.iter().map(solve).collect(),
        Some(t) => match rayon::ThreadPoolBuilder::new().num_threads(t).build() {
            Ok(pool) => pool.install(|| grid.par_iter().map(solve).collect()),
            Err(_) => grid.iter().map(solve).collect(),
        },
        None => grid.par_iter().map(solve).collect(),
    };

    let name = model
        .sweep
        .as_ref()
        .map(|s| s.name.clone())
        .unwrap_or_else(|| "x".into());
    let mut result = SweepResult::new(name, cols.clone());
    let mut failures = Vec::new();
    for (x, r) in grid.iter().zip(results) {
        match r {
            Ok(values) => result.rows.push((*x, values)),
            Err(e) => {
                failures.push((*x, e.to_string()));
                result
                    .rows
                    .push((*x, cols.iter().map(|c| Value::nan(c.kind)).collect()));
            }
        }
    }
    SweepOutcome { result, failures }
}

/// Sweep over the model's own `sweep` directive.
pub fn run_model_sweep(model: &ModelFile, opts: SweepOptions) -> Option<SweepOutcome> {
    let grid = model.sweep.as_ref()?.grid();
    Some(run_sweep(model, &grid, opts))
}

impl SweepOptions {
    pub fn with_builder(builder: Builder) -> Self {
        Self {
            solve: SolveOptions {
                builder,
                ..Default::default()
            },
            threads: None,
        }
    }
}
