//! Construction of the evolution matrix `M` with `dA/dt = M·A`.
//!
//! Two routes produce the same matrix. [`build_naive`] evaluates the full
//! Liouvillian once per entry of `M` with a single unit element in ρ.
//! [`build_fast`] fills each column directly from columns of H′ and the
//! source matrix, since a unit ρ only ever selects one column of H′ per
//! product.

use serde::Serialize;

use crate::index::index_to_pair;
use crate::liouvillian::apply_liouvillian;
use crate::spec::SystemSpec;
use crate::{CMatrix, CVector, C64};

/// `N²×N²` evolution matrix in the row-major index convention.
#[derive(Debug, Clone, PartialEq)]
pub struct EvolutionMatrix {
    n_levels: usize,
    entries: CMatrix,
}

impl EvolutionMatrix {
    pub fn from_entries(n_levels: usize, entries: CMatrix) -> crate::Result<Self> {
        let dim = n_levels * n_levels;
        if entries.shape() != (dim, dim) {
            return Err(crate::Error::Dimension {
                expected: dim,
                actual: entries.nrows(),
            });
        }
        Ok(Self { n_levels, entries })
    }

    pub fn n_levels(&self) -> usize {
        self.n_levels
    }

    pub fn dim(&self) -> usize {
        self.n_levels * self.n_levels
    }

    pub fn entries(&self) -> &CMatrix {
        &self.entries
    }

    pub fn into_entries(self) -> CMatrix {
        self.entries
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `M·A`.
    pub fn apply(&self, a: &CVector) -> CVector {
        &self.entries * a
    }

    /// Max-norm of the entrywise difference.
    pub fn max_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.entries.shape(), other.entries.shape());
        self.entries
            .iter()
            .zip(other.entries.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Builder {
    Naive,
    #[default]
    Fast,
}

impl Builder {
    pub fn build(self, spec: &SystemSpec) -> EvolutionMatrix {
        match self {
            Self::Naive => build_naive(spec),
            Self::Fast => build_fast(spec),
        }
    }
}

impl std::str::FromStr for Builder {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "naive" => Ok(Self::Naive),
            "fast" => Ok(Self::Fast),
            other => Err(format!("unknown builder `{other}` (expected naive|fast)")),
        }
    }
}

/// Entry-by-entry construction: `M[n][p] = Q[α][β]` with only `ρ[ε][σ] = 1`.
///
/// Evaluates one Liouvillian per entry, `N⁴` evaluations in total.
pub fn build_naive(spec: &SystemSpec) -> EvolutionMatrix {
    let n = spec.n_levels();
    let dim = n * n;
    let mut m = CMatrix::zeros(dim, dim);
    let mut rho = CMatrix::zeros(n, n);
    for row in 1..=dim {
        let (alpha, beta) = index_to_pair(row, n).expect("row in range");
        for col in 1..=dim {
            let (eps, sigma) = index_to_pair(col, n).expect("col in range");
            rho.fill(C64::new(0.0, 0.0));
            rho[(eps - 1, sigma - 1)] = C64::new(1.0, 0.0);
            let q = apply_liouvillian(spec, &rho).expect("dimensions match");
            m[(row - 1, col - 1)] = q[(alpha - 1, beta - 1)];
        }
    }
    EvolutionMatrix { n_levels: n, entries: m }
}

/// Column-wise construction.
///
/// For the column of `ρ[e][s] = 1` (index `e·N + s`):
/// * `ρH′†` contributes `+i·conj(H′[j][s])` at rows `e·N + j`;
/// * `H′ρ` contributes `−i·H′[i][e]` at rows `i·N + s`;
/// * populations (`e = s`) add column `e` of the source matrix on the
///   diagonal positions `i·N + i`;
/// * coherences (`e ≠ s`) pick up `−D[e][s]` on the diagonal of `M`.
pub fn build_fast(spec: &SystemSpec) -> EvolutionMatrix {
    let n = spec.n_levels();
    let dim = n * n;
    let h = spec.hamiltonian();
    let g = spec.source();
    let d = spec.dephasing();
    let i_unit = C64::new(0.0, 1.0);
    let mut m = CMatrix::zeros(dim, dim);

    for e in 0..n {
        for s in 0..n {
            let col = e * n + s;
            let mut column = m.column_mut(col);
            for j in 0..n {
                column[e * n + j] += i_unit * h[(j, s)].conj();
            }
            for i in 0..n {
                column[i * n + s] -= i_unit * h[(i, e)];
            }
            if e == s {
                for i in 0..n {
                    column[i * n + i] += C64::new(g[(i, e)], 0.0);
                }
            } else {
                column[col] -= C64::new(d[(e, s)], 0.0);
            }
        }
    }
    EvolutionMatrix { n_levels: n, entries: m }
}
