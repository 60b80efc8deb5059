//! Dense Gaussian elimination with partial pivoting for the small nodal
//! systems this crate produces (tens of unknowns at most).

use alloc::vec::Vec;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Singular;

/// Solves `a * x = b` in place for a row-major `n x n` matrix, leaving the
/// solution in `b`. The matrix is destroyed. Fails when a pivot column is
/// numerically zero relative to the largest entry of the matrix.
pub fn solve_in_place(a: &mut [f64], b: &mut [f64], n: usize) -> Result<(), Singular> {
    assert_eq!(a.len(), n * n);
    assert_eq!(b.len(), n);
    let scale = a
        .iter()
        .fold(0.0_f64, |acc, &x| if libm::fabs(x) > acc { libm::fabs(x) } else { acc });
    if n == 0 {
        return Ok(());
    }
    if scale == 0.0 {
        return Err(Singular);
    }
    let tol = scale * 1e-14 * n as f64;

    for col in 0..n {
        let mut pivot_row = col;
        let mut pivot_abs = libm::fabs(a[col * n + col]);
        for row in (col + 1)..n {
            let cand = libm::fabs(a[row * n + col]);
            if cand > pivot_abs {
                pivot_abs = cand;
                pivot_row = row;
            }
        }
        if pivot_abs <= tol {
            return Err(Singular);
        }
        if pivot_row != col {
            for k in col..n {
                a.swap(col * n + k, pivot_row * n + k);
            }
            b.swap(col, pivot_row);
        }
        let pivot = a[col * n + col];
        for row in (col + 1)..n {
            let factor = a[row * n + col] / pivot;
            if factor == 0.0 {
                continue;
            }
            a[row * n + col] = 0.0;
            for k in (col + 1)..n {
                a[row * n + k] -= factor * a[col * n + k];
            }
            b[row] -= factor * b[col];
        }
    }
    for col in (0..n).rev() {
        let mut sum = b[col];
        for k in (col + 1)..n {
            sum -= a[col * n + k] * b[k];
        }
        b[col] = sum / a[col * n + col];
    }
    Ok(())
}

/// Convenience wrapper that clones the inputs and returns the solution.
#[allow(dead_code)]
pub fn solve(a: &[f64], b: &[f64], n: usize) -> Result<Vec<f64>, Singular> {
    let mut a = a.to_vec();
    let mut x = b.to_vec();
    solve_in_place(&mut a, &mut x, n)?;
    Ok(x)
}
