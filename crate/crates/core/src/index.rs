//! Index bookkeeping between ρ and its vectorized form.
//!
//! Public functions use the 1-based convention of the row-major map
//! `n = (α−1)·N + β`; the rest of the crate works 0-based.

use crate::error::{Error, Result};
use crate::{CMatrix, CVector};

/// Remainder of `a / b`, or `b` when the remainder is zero. Result in `1..=b`.
pub fn nzrem(a: usize, b: usize) -> usize {
    debug_assert!(a >= 1 && b >= 1);
    match a % b {
        0 => b,
        r => r,
    }
}

/// Map a 1-based position of the vectorized ρ to its 1-based `(row, col)`.
pub fn index_to_pair(n: usize, levels: usize) -> Result<(usize, usize)> {
    let max = levels * levels;
    if n == 0 || n > max {
        return Err(Error::Index { index: n, max });
    }
    let col = nzrem(n, levels);
    let row = 1 + (n - col) / levels;
    Ok((row, col))
}

/// Inverse of [`index_to_pair`].
pub fn pair_to_index(row: usize, col: usize, levels: usize) -> Result<usize> {
    for i in [row, col] {
        if i == 0 || i > levels {
            return Err(Error::Index { index: i, max: levels });
        }
    }
    Ok((row - 1) * levels + col)
}

/// Stack the entries of ρ row by row.
pub fn vectorize(rho: &CMatrix) -> Result<CVector> {
    if rho.nrows() != rho.ncols() {
        return Err(Error::Dimension {
            expected: rho.nrows(),
            actual: rho.ncols(),
        });
    }
    let n = rho.nrows();
    Ok(CVector::from_fn(n * n, |k, _| rho[(k / n, k % n)]))
}

pub fn devectorize(a: &CVector) -> Result<CMatrix> {
    let len = a.len();
    let n = (len as f64).sqrt().round() as usize;
    if n * n != len || n == 0 {
        return Err(Error::NotSquare(len));
    }
    Ok(CMatrix::from_fn(n, n, |r, c| a[r * n + c]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::C64;

    #[test]
    fn nzrem_branches() {
        assert_eq!(nzrem(4, 2), 2);
        assert_eq!(nzrem(3, 2), 1);
        assert_eq!(nzrem(7, 3), 1);
        assert_eq!(nzrem(1, 1), 1);
    }

    #[test]
    fn pair_examples() {
        assert_eq!(index_to_pair(2, 2).unwrap(), (1, 2));
        assert_eq!(index_to_pair(4, 2).unwrap(), (2, 2));
        assert_eq!(index_to_pair(1, 5).unwrap(), (1, 1));
        assert_eq!(index_to_pair(9, 3).unwrap(), (3, 3));
        assert_eq!(pair_to_index(2, 3, 3).unwrap(), 6);
    }

    #[test]
    fn out_of_range_index() {
        assert!(matches!(index_to_pair(0, 3), Err(Error::Index { .. })));
        assert!(matches!(
            index_to_pair(10, 3),
            Err(Error::Index { index: 10, max: 9 })
        ));
        assert!(pair_to_index(4, 1, 3).is_err());
    }

    #[test]
    fn round_trip_all_positions() {
        for levels in 1..=16 {
            for n in 1..=levels * levels {
                let (a, b) = index_to_pair(n, levels).unwrap();
                assert!((1..=levels).contains(&a) && (1..=levels).contains(&b));
                assert_eq!((a - 1) * levels + b, n);
            }
        }
    }

    #[test]
    fn two_level_ordering() {
        let rho = CMatrix::from_row_slice(
            2,
            2,
            &[
                C64::new(11.0, 0.0),
                C64::new(12.0, 0.0),
                C64::new(21.0, 0.0),
                C64::new(22.0, 0.0),
            ],
        );
        let a = vectorize(&rho).unwrap();
        let re: Vec<f64> = a.iter().map(|z| z.re).collect();
        assert_eq!(re, vec![11.0, 12.0, 21.0, 22.0]);
        assert_eq!(devectorize(&a).unwrap(), rho);
    }

    #[test]
    fn rho23_lands_at_six() {
        let mut rho = CMatrix::zeros(3, 3);
        rho[(1, 2)] = C64::new(1.0, 0.0);
        let a = vectorize(&rho).unwrap();
        assert_eq!(a[5], C64::new(1.0, 0.0));
    }

    #[test]
    fn bad_lengths() {
        assert_eq!(
            devectorize(&CVector::zeros(5)).unwrap_err(),
            Error::NotSquare(5)
        );
        assert!(devectorize(&CVector::zeros(0)).is_err());
        assert!(vectorize(&CMatrix::zeros(2, 3)).is_err());
    }
}
