use crate::builder::EvolutionMatrix;
use crate::{CMatrix, CVector};

/// Trace-reduced steady-state system `W·B = −S`, with `ρ[N][N]` eliminated.
#[derive(Debug, Clone, PartialEq)]
pub struct ReducedSystem {
    pub w: CMatrix,
    pub s: CVector,
}

/// Drop the last row and column of `M`; the dropped column (minus its last
/// entry) is `S`, and every population column `k·N + k` (`k < N−1`) of the
/// remaining matrix has `S` subtracted.
pub fn reduce(m: &EvolutionMatrix) -> ReducedSystem {
    let n = m.n_levels();
    let dim = m.dim();
    let r = dim - 1;
    let entries = m.entries();
    let s: CVector = entries.view((0, r), (r, 1)).column(0).into_owned();
    let mut w: CMatrix = entries.view((0, 0), (r, r)).into_owned();
    for k in 0..n.saturating_sub(1) {
        let c = k * n + k;
        let mut col = w.column_mut(c);
        col -= &s;
    }
    ReducedSystem { w, s }
}
