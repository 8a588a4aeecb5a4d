use crate::error::{Error, Result};
use crate::{CMatrix, C64};

pub const HERMITIAN_TOL: f64 = 1e-12;
pub const TRACE_TOL: f64 = 1e-10;
pub const POPULATION_TOL: f64 = 1e-9;

/// Tolerances used by [`DensityMatrix::check`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateTolerance {
    pub hermitian: f64,
    pub trace: f64,
    pub population: f64,
}

impl Default for StateTolerance {
    fn default() -> Self {
        Self {
            hermitian: HERMITIAN_TOL,
            trace: TRACE_TOL,
            population: POPULATION_TOL,
        }
    }
}

impl StateTolerance {
    /// Looser bounds for integrated trajectories.
    pub fn trajectory() -> Self {
        Self {
            hermitian: 1e-9,
            trace: 1e-6,
            population: 1e-6,
        }
    }
}

/// N×N density matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix(CMatrix);

impl DensityMatrix {
    /// Wrap `rho`, checking Hermiticity, unit trace and population range.
    pub fn new(rho: CMatrix) -> Result<Self> {
        let state = Self(rho);
        state.check(StateTolerance::default())?;
        Ok(state)
    }

    /// Wrap without checks.
    pub fn from_matrix(rho: CMatrix) -> Self {
        Self(rho)
    }

    /// Pure state `|k⟩⟨k|` (0-based level).
    pub fn ground(n_levels: usize, level: usize) -> Self {
        let mut m = CMatrix::zeros(n_levels, n_levels);
        m[(level, level)] = C64::new(1.0, 0.0);
        Self(m)
    }

    /// Diagonal state from real populations.
    pub fn from_populations(pops: &[f64]) -> Self {
        let n = pops.len();
        let mut m = CMatrix::zeros(n, n);
        for (i, p) in pops.iter().enumerate() {
            m[(i, i)] = C64::new(*p, 0.0);
        }
        Self(m)
    }

    pub fn n_levels(&self) -> usize {
        self.0.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> CMatrix {
        self.0
    }

    /// Entry by 0-based indices.
    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.0[(row, col)]
    }

    pub fn trace(&self) -> C64 {
        self.0.trace()
    }

    /// `max |ρ − ρ†|`.
    pub fn hermiticity_error(&self) -> f64 {
        let n = self.n_levels();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in i..n {
                worst = worst.max((self.0[(i, j)] - self.0[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// Smallest eigenvalue of the Hermitian part; diagnostic only.
    pub fn min_eigenvalue(&self) -> f64 {
        let herm = (&self.0 + self.0.adjoint()) * C64::new(0.5, 0.0);
        herm.symmetric_eigenvalues()
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min)
    }

    pub fn check(&self, tol: StateTolerance) -> Result<()> {
        if self.0.nrows() != self.0.ncols() || self.0.nrows() == 0 {
            return Err(Error::Dimension {
                expected: self.0.nrows(),
                actual: self.0.ncols(),
            });
        }
        let herm = self.hermiticity_error();
        if !(herm <= tol.hermitian) {
            return Err(Error::InvalidSpec(format!(
                "density matrix not Hermitian (|ρ − ρ†| = {herm:e})"
            )));
        }
        let tr = self.trace();
        if !((tr - C64::new(1.0, 0.0)).norm() <= tol.trace) {
            return Err(Error::InvalidSpec(format!("trace {tr} differs from 1")));
        }
        for i in 0..self.n_levels() {
            let p = self.0[(i, i)];
            if !(p.im.abs() <= tol.hermitian)
                || !(p.re >= -tol.population && p.re <= 1.0 + tol.population)
            {
                return Err(Error::InvalidSpec(format!(
                    "population of level {} out of range: {p}",
                    i + 1
                )));
            }
        }
        Ok(())
    }

    /// `max |self − other|` over entries.
    pub fn max_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.0.shape(), other.0.shape());
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// Sampled time evolution; `times` in units of the reference rate's inverse.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<DensityMatrix>,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn last(&self) -> Option<&DensityMatrix> {
        self.states.last()
    }

    /// State at the sample closest to `t`.
    pub fn at(&self, t: f64) -> Option<&DensityMatrix> {
        let idx = self
            .times
            .iter()
            .enumerate()
            .min_by(|a, b| (a.1 - t).abs().total_cmp(&(b.1 - t).abs()))?
            .0;
        self.states.get(idx)
    }
}
