//! Singular values of small dense real matrices by one-sided (Hestenes) Jacobi.
//!
//! The routine orthogonalizes the columns of whichever of `M`, `Mᵀ` has fewer
//! columns, so the implicit Gram matrix is the smaller of `MᵀM` and `MMᵀ`.
//! Singular values are the column norms once all pairs are orthogonal.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::math;

/// Relative off-diagonal threshold `|aₚ·a_q| / (‖aₚ‖‖a_q‖)`.
const OFF_DIAGONAL_TOL: f64 = 1e-13;
const MAX_SWEEPS: usize = 100;

/// Singular values of the row-major `rows × cols` matrix `data`,
/// non-increasing, `min(rows, cols)` of them.
pub fn singular_values(rows: usize, cols: usize, data: &[f64]) -> Result<Vec<f64>> {
    if rows == 0 || cols == 0 {
        return Err(Error::Empty);
    }
    if rows * cols != data.len() {
        return Err(Error::Shape { rows, cols, len: data.len() });
    }
    if let Some(index) = data.iter().position(|x| !x.is_finite()) {
        return Err(Error::NonFinite { index });
    }

    // Column-major working copy of the orientation with fewer columns.
    let (len, n) = if cols <= rows { (rows, cols) } else { (cols, rows) };
    let mut columns: Vec<Vec<f64>> = vec![vec![0.0; len]; n];
    for r in 0..rows {
        for c in 0..cols {
            let x = data[r * cols + c];
            if cols <= rows {
                columns[c][r] = x;
            } else {
                columns[r][c] = x;
            }
        }
    }

    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let alpha = math::dot(&columns[p], &columns[p]);
                let beta = math::dot(&columns[q], &columns[q]);
                let gamma = math::dot(&columns[p], &columns[q]);
                if gamma == 0.0 || math::abs(gamma) <= OFF_DIAGONAL_TOL * math::sqrt(alpha * beta) {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = libm::copysign(1.0, zeta) / (math::abs(zeta) + math::sqrt(1.0 + zeta * zeta));
                let c = 1.0 / math::sqrt(1.0 + t * t);
                let s = c * t;
                let (left, right) = columns.split_at_mut(q);
                for (x, y) in left[p].iter_mut().zip(right[0].iter_mut()) {
                    let (xp, yq) = (*x, *y);
                    *x = c * xp - s * yq;
                    *y = s * xp + c * yq;
                }
            }
        }
        if !rotated {
            break;
        }
    }

    let mut values: Vec<f64> = columns.iter().map(|col| math::sqrt(math::dot(col, col))).collect();
    values.sort_by(|a, b| b.total_cmp(a));
    Ok(values)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_and_diagonal() {
        let id = [1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0];
        assert_eq!(singular_values(3, 3, &id).unwrap(), vec![1.0, 1.0, 1.0]);
        let d = [1.0, 0.0, 0.0, 0.0, 3.0, 0.0, 0.0, 0.0, 2.0];
        assert_eq!(singular_values(3, 3, &d).unwrap(), vec![3.0, 2.0, 1.0]);
    }

    #[test]
    fn permutation_matrix() {
        // mᵀm = I, so both singular values are one.
        let sv = singular_values(2, 2, &[0.0, 1.0, 1.0, 0.0]).unwrap();
        assert!(sv.iter().all(|s| (s - 1.0).abs() < 1e-15));
    }

    #[test]
    fn rank_one() {
        let sv = singular_values(2, 2, &[0.5; 4]).unwrap();
        assert!((sv[0] - 1.0).abs() < 1e-15);
        assert!(sv[1].abs() < 1e-15);
    }

    #[test]
    fn rectangular_count() {
        // [[3, 4]] has the single singular value 5.
        let sv = singular_values(1, 2, &[3.0, 4.0]).unwrap();
        assert_eq!(sv.len(), 1);
        assert!((sv[0] - 5.0).abs() < 1e-14);
        assert_eq!(singular_values(2, 1, &[3.0, 4.0]).unwrap().len(), 1);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(singular_values(1, 2, &[1.0, f64::INFINITY]), Err(Error::NonFinite { index: 1 })));
        assert_eq!(singular_values(0, 2, &[]), Err(Error::Empty));
        assert!(matches!(singular_values(2, 2, &[1.0]), Err(Error::Shape { .. })));
    }
}
