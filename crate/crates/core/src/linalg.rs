//! Small dense helpers on top of nalgebra.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

/// Solves `a x = b` by partial-pivot LU; `None` when the smallest pivot is `≤ pivot_tol`.
pub(crate) fn solve_complex(
    a: DMatrix<Complex64>,
    b: &[Complex64],
    pivot_tol: f64,
) -> Option<Vec<Complex64>> {
    let n = a.nrows();
    let lu = a.lu();
    let u = lu.u();
    let min_pivot = (0..n)
        .map(|i| u[(i, i)].norm())
        .fold(f64::INFINITY, f64::min);
    if !(min_pivot > pivot_tol) {
        return None;
    }
    let rhs = DVector::from_column_slice(b);
    lu.solve(&rhs).map(|x| x.iter().copied().collect())
}

/// Reduced basis of the span of `vectors` by Gaussian elimination with partial pivoting.
pub(crate) fn span_basis(mut vectors: Vec<Vec<Complex64>>, tol: f64) -> Vec<Vec<Complex64>> {
    let mut basis: Vec<Vec<Complex64>> = Vec::new();
    let Some(dim) = vectors.first().map(|v| v.len()) else {
        return basis;
    };
    let mut col = 0;
    while col < dim && !vectors.is_empty() {
        let (best, mag) = vectors
            .iter()
            .enumerate()
            .map(|(i, v)| (i, v[col].norm()))
            .fold((0, 0.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if mag <= tol {
            col += 1;
            continue;
        }
        let pivot = vectors.swap_remove(best);
        let p = pivot[col];
        for v in vectors.iter_mut() {
            let f = v[col] / p;
            if f.norm() != 0.0 {
                for (x, y) in v.iter_mut().zip(&pivot) {
                    *x -= f * y;
                }
            }
        }
        vectors.retain(|v| v.iter().any(|c| c.norm() > tol));
        basis.push(pivot);
        col += 1;
    }
    basis
}

/// Numerical rank of a real matrix via singular values.
pub(crate) fn real_rank(a: &DMatrix<f64>, rel_tol: f64) -> usize {
    let sv = a.clone().svd(false, false).singular_values;
    let max = sv.iter().copied().fold(0.0, f64::max);
    if max == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > rel_tol * max).count()
}

/// Least-squares solution of `a x ≈ b` with its residual norm.
pub(crate) fn least_squares(a: &DMatrix<f64>, b: &DVector<f64>) -> (DVector<f64>, f64) {
    let svd = a.clone().svd(true, true);
    let x = svd
        .solve(b, 1e-13)
        .unwrap_or_else(|_| DVector::zeros(a.ncols()));
    let r = (a * &x - b).norm();
    (x, r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn span_of_dependent_vectors() {
        let v = vec![
            vec![c(1.0), c(2.0), c(0.0)],
            vec![c(2.0), c(4.0), c(0.0)],
            vec![c(0.0), c(0.0), c(1.0)],
        ];
        assert_eq!(span_basis(v, 1e-12).len(), 2);
        assert!(span_basis(vec![vec![c(0.0); 3]], 1e-12).is_empty());
    }

    #[test]
    fn singular_solve_is_none() {
        let a = DMatrix::from_row_slice(2, 2, &[c(1.0), c(2.0), c(2.0), c(4.0)]);
        assert!(solve_complex(a, &[c(1.0), c(0.0)], 1e-12).is_none());
    }
}
