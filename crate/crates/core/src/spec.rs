use crate::error::{Error, Result};
use crate::{CMatrix, RMatrix};

/// Tolerance for the off-diagonal Hermitian-symmetry check on H′.
pub const HERMITIAN_TOL: f64 = 1e-12;

/// Complete input to the vectorization: effective Hamiltonian plus
/// population source and dephasing rates, all in units of a reference rate.
///
/// * `hamiltonian[j][j]` carries level decay as `−i·Γ_j/2`.
/// * `source[i][j]` multiplies `ρ[j][j]` in `dρ[i][i]/dt`.
/// * `dephasing[i][j]` multiplies `−ρ[i][j]`; symmetric with zero diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct SystemSpec {
    hamiltonian: CMatrix,
    source: RMatrix,
    dephasing: RMatrix,
    closed: bool,
}

impl SystemSpec {
    /// Build a spec, checking shape and the per-entry invariants.
    ///
    /// Trace closure is not enforced here; see [`crate::validate_spec`].
    pub fn new(
        hamiltonian: CMatrix,
        source: RMatrix,
        dephasing: RMatrix,
        closed: bool,
    ) -> Result<Self> {
        let spec = Self {
            hamiltonian,
            source,
            dephasing,
            closed,
        };
        spec.check_shape()?;
        if let Some(v) = crate::validate::entry_violations(&spec).into_iter().next() {
            return Err(Error::InvalidSpec(v.to_string()));
        }
        Ok(spec)
    }

    #[cfg(test)]
    pub(crate) fn from_parts_unchecked(
        hamiltonian: CMatrix,
        source: RMatrix,
        dephasing: RMatrix,
        closed: bool,
    ) -> Self {
        Self {
            hamiltonian,
            source,
            dephasing,
            closed,
        }
    }

    /// Spec with zero source and dephasing matrices.
    pub fn hamiltonian_only(hamiltonian: CMatrix, closed: bool) -> Result<Self> {
        let n = hamiltonian.nrows();
        Self::new(hamiltonian, RMatrix::zeros(n, n), RMatrix::zeros(n, n), closed)
    }

    fn check_shape(&self) -> Result<()> {
        let n = self.hamiltonian.nrows();
        if n == 0 {
            return Err(Error::InvalidSpec("zero levels".into()));
        }
        for (rows, cols) in [
            self.hamiltonian.shape(),
            self.source.shape(),
            self.dephasing.shape(),
        ] {
            if rows != n || cols != n {
                return Err(Error::Dimension {
                    expected: n,
                    actual: if rows != n { rows } else { cols },
                });
            }
        }
        Ok(())
    }

    pub fn n_levels(&self) -> usize {
        self.hamiltonian.nrows()
    }

    pub fn hamiltonian(&self) -> &CMatrix {
        &self.hamiltonian
    }

    pub fn source(&self) -> &RMatrix {
        &self.source
    }

    pub fn dephasing(&self) -> &RMatrix {
        &self.dephasing
    }

    pub fn closed_system(&self) -> bool {
        self.closed
    }

    /// Largest rate in the system: max over `|H′|` entries and source entries.
    ///
    /// Dephasing is included as well since it enters `M` on the diagonal.
    pub fn max_rate(&self) -> f64 {
        let h = self.hamiltonian.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let g = self.source.iter().copied().fold(0.0, f64::max);
        let d = self.dephasing.iter().copied().fold(0.0, f64::max);
        h.max(g).max(d)
    }

    /// Relabel levels: level `i` of the result is level `perm[i]` of `self`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        let n = self.n_levels();
        let mut seen = vec![false; n];
        if perm.len() != n {
            return Err(Error::Dimension {
                expected: n,
                actual: perm.len(),
            });
        }
        for &p in perm {
            if p >= n || seen[p] {
                return Err(Error::Argument(format!("not a permutation: {perm:?}")));
            }
            seen[p] = true;
        }
        Ok(Self {
            hamiltonian: CMatrix::from_fn(n, n, |i, j| self.hamiltonian[(perm[i], perm[j])]),
            source: RMatrix::from_fn(n, n, |i, j| self.source[(perm[i], perm[j])]),
            dephasing: RMatrix::from_fn(n, n, |i, j| self.dephasing[(perm[i], perm[j])]),
            closed: self.closed,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::C64;

    #[test]
    fn rejects_gain() {
        let h = CMatrix::from_diagonal_element(2, 2, C64::new(0.0, 0.5));
        let err = SystemSpec::hamiltonian_only(h, false).unwrap_err();
        assert!(matches!(err, Error::InvalidSpec(_)));
    }

    #[test]
    fn rejects_non_hermitian_coupling() {
        let mut h = CMatrix::zeros(2, 2);
        h[(0, 1)] = C64::new(1.0, 0.0);
        h[(1, 0)] = C64::new(0.5, 0.0);
        assert!(SystemSpec::hamiltonian_only(h, false).is_err());
    }

    #[test]
    fn rejects_shape_mismatch() {
        let err = SystemSpec::new(
            CMatrix::zeros(2, 2),
            RMatrix::zeros(3, 3),
            RMatrix::zeros(2, 2),
            false,
        )
        .unwrap_err();
        assert!(matches!(err, Error::Dimension { .. }));
    }

    #[test]
    fn rejects_negative_source_and_diagonal_dephasing() {
        let mut g = RMatrix::zeros(2, 2);
        g[(0, 1)] = -1.0;
        assert!(SystemSpec::new(CMatrix::zeros(2, 2), g, RMatrix::zeros(2, 2), false).is_err());
        let d = RMatrix::identity(2, 2);
        assert!(SystemSpec::new(CMatrix::zeros(2, 2), RMatrix::zeros(2, 2), d, false).is_err());
    }

    #[test]
    fn permutation_relabels() {
        let mut h = CMatrix::zeros(3, 3);
        h[(0, 2)] = C64::new(1.0, 0.0);
        h[(2, 0)] = C64::new(1.0, 0.0);
        let spec = SystemSpec::hamiltonian_only(h, false).unwrap();
        let p = spec.permuted(&[2, 1, 0]).unwrap();
        assert_eq!(p.hamiltonian()[(2, 0)], C64::new(1.0, 0.0));
        assert!(spec.permuted(&[0, 0, 1]).is_err());
    }
}
