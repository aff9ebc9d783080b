//! Closed-form ridge and cyclic coordinate descent for the L1/L2 penalized
//! least-squares objectives. The intercept is never penalized.

use crate::error::{Error, Result};
use crate::matrix::Matrix;

/// Ridge: minimize ||y - Xw - b||^2 + alpha * ||w||^2 with unpenalized
/// intercept, solved by a Cholesky factorization of the centered normal
/// equations (X'X + alpha*I).
pub(crate) fn fit_ridge(x: &Matrix, y: &[f64], alpha: f64) -> Result<(Vec<f64>, f64)> {
    let n = x.n_rows();
    let p = x.n_cols();
    let nf = n as f64;

    let mut col_means = vec![0.0; p];
    for row in x.rows() {
        for (j, &v) in row.iter().enumerate() {
            col_means[j] += v;
        }
    }
    for m in &mut col_means {
        *m /= nf;
    }
    let y_mean = y.iter().sum::<f64>() / nf;

    // Gram matrix of centered columns, plus the ridge term on the diagonal.
    let mut gram = vec![0.0; p * p];
    let mut rhs = vec![0.0; p];
    for (i, row) in x.rows().enumerate() {
        let yc = y[i] - y_mean;
        for j in 0..p {
            let xj = row[j] - col_means[j];
            rhs[j] += xj * yc;
            for k in j..p {
                gram[j * p + k] += xj * (row[k] - col_means[k]);
            }
        }
    }
    for j in 0..p {
        gram[j * p + j] += alpha;
        for k in 0..j {
            gram[j * p + k] = gram[k * p + j];
        }
    }

    let w = cholesky_solve(gram, p, &rhs)?;
    let intercept = y_mean
        - w.iter()
            .zip(&col_means)
            .map(|(wj, mj)| wj * mj)
            .sum::<f64>();
    if !w.iter().all(|v| v.is_finite()) || !intercept.is_finite() {
        return Err(Error::NonFinite {
            context: "ridge coefficients",
        });
    }
    Ok((w, intercept))
}

/// Solves A x = b for symmetric positive definite A (row-major, p x p).
fn cholesky_solve(mut a: Vec<f64>, p: usize, b: &[f64]) -> Result<Vec<f64>> {
    // Pivots at or below roundoff scale mean the system is numerically
    // singular rather than merely ill-conditioned.
    let diag_max = (0..p).map(|j| a[j * p + j]).fold(0.0, f64::max);
    let pivot_floor = diag_max * p as f64 * f64::EPSILON;

    // In-place lower-triangular factorization.
    for j in 0..p {
        let mut d = a[j * p + j];
        for k in 0..j {
            d -= a[j * p + k] * a[j * p + k];
        }
        if d <= pivot_floor {
            return Err(Error::SingularSystem);
        }
        let d = d.sqrt();
        a[j * p + j] = d;
        for i in (j + 1)..p {
            let mut s = a[i * p + j];
            for k in 0..j {
                s -= a[i * p + k] * a[j * p + k];
            }
            a[i * p + j] = s / d;
        }
    }
    // Forward then backward substitution.
    let mut x = b.to_vec();
    for i in 0..p {
        for k in 0..i {
            x[i] -= a[i * p + k] * x[k];
        }
        x[i] /= a[i * p + i];
    }
    for i in (0..p).rev() {
        for k in (i + 1)..p {
            x[i] -= a[k * p + i] * x[k];
        }
        x[i] /= a[i * p + i];
    }
    Ok(x)
}

pub(crate) struct CdFit {
    pub coefficients: Vec<f64>,
    pub intercept: f64,
    /// Objective value after each completed sweep.
    pub objectives: Vec<f64>,
}

/// Cyclic coordinate descent on
///   (1/2n) ||y - Xw - b||^2 + l1 * ||w||_1 + (l2/2) * ||w||^2,
/// stopping when the largest coefficient change in a sweep drops below `tol`
/// or after `max_iter` sweeps. Lasso is `l1 = alpha, l2 = 0`; elastic net is
/// `l1 = alpha * l1_ratio, l2 = alpha * (1 - l1_ratio)`.
pub(crate) fn coordinate_descent(
    x: &Matrix,
    y: &[f64],
    l1: f64,
    l2: f64,
    tol: f64,
    max_iter: usize,
) -> CdFit {
    let n = x.n_rows();
    let p = x.n_cols();
    let nf = n as f64;

    let mut col_norm = vec![0.0; p];
    for row in x.rows() {
        for (j, &v) in row.iter().enumerate() {
            col_norm[j] += v * v;
        }
    }
    for c in &mut col_norm {
        *c /= nf;
    }

    let mut w = vec![0.0; p];
    let mut intercept = y.iter().sum::<f64>() / nf;
    let mut residual: Vec<f64> = y.iter().map(|&v| v - intercept).collect();
    let mut objectives = Vec::new();

    for _sweep in 0..max_iter {
        let mut max_delta = 0.0_f64;
        for j in 0..p {
            if col_norm[j] == 0.0 {
                continue;
            }
            let mut dot = 0.0;
            for (i, row) in x.rows().enumerate() {
                dot += row[j] * residual[i];
            }
            let rho = dot / nf + col_norm[j] * w[j];
            let w_new = soft_threshold(rho, l1) / (col_norm[j] + l2);
            let delta = w_new - w[j];
            if delta != 0.0 {
                for (i, row) in x.rows().enumerate() {
                    residual[i] -= row[j] * delta;
                }
                w[j] = w_new;
            }
            max_delta = max_delta.max(delta.abs());
        }
        // Exact coordinate step on the unpenalized intercept.
        let shift = residual.iter().sum::<f64>() / nf;
        if shift != 0.0 {
            intercept += shift;
            for r in &mut residual {
                *r -= shift;
            }
        }
        objectives.push(cd_objective(&residual, &w, l1, l2, nf));
        if max_delta < tol {
            break;
        }
    }

    CdFit {
        coefficients: w,
        intercept,
        objectives,
    }
}

fn soft_threshold(z: f64, threshold: f64) -> f64 {
    if z > threshold {
        z - threshold
    } else if z < -threshold {
        z + threshold
    } else {
        0.0
    }
}

fn cd_objective(residual: &[f64], w: &[f64], l1: f64, l2: f64, nf: f64) -> f64 {
    let sse: f64 = residual.iter().map(|r| r * r).sum();
    let l1_term: f64 = w.iter().map(|v| v.abs()).sum();
    let l2_term: f64 = w.iter().map(|v| v * v).sum();
    sse / (2.0 * nf) + l1 * l1_term + 0.5 * l2 * l2_term
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line_data() -> (Matrix, Vec<f64>) {
        // y = 2x + 1, exactly.
        let xs: Vec<f64> = (0..20).map(|i| i as f64 * 0.3 - 2.0).collect();
        let y: Vec<f64> = xs.iter().map(|&v| 2.0 * v + 1.0).collect();
        let x = Matrix::from_rows(&xs.iter().map(|&v| vec![v]).collect::<Vec<_>>()).unwrap();
        (x, y)
    }

    #[test]
    fn ridge_alpha_zero_recovers_exact_line() {
        let (x, y) = line_data();
        let (w, b) = fit_ridge(&x, &y, 0.0).unwrap();
        assert!((w[0] - 2.0).abs() < 1e-8);
        assert!((b - 1.0).abs() < 1e-8);
    }

    #[test]
    fn cholesky_rejects_singular_system() {
        // Two identical columns, no regularization.
        let x = Matrix::from_rows(&[vec![1.0, 1.0], vec![2.0, 2.0], vec![3.0, 3.0]]).unwrap();
        let y = vec![1.0, 2.0, 3.0];
        assert!(matches!(fit_ridge(&x, &y, 0.0), Err(Error::SingularSystem)));
    }

    #[test]
    fn lasso_full_shrinkage_yields_mean_model() {
        let (x, y) = line_data();
        let fit = coordinate_descent(&x, &y, 1e6, 0.0, 1e-10, 100);
        assert_eq!(fit.coefficients, vec![0.0]);
        let y_mean = y.iter().sum::<f64>() / y.len() as f64;
        assert!((fit.intercept - y_mean).abs() < 1e-12);
    }

    #[test]
    fn soft_threshold_cases() {
        assert_eq!(soft_threshold(5.0, 2.0), 3.0);
        assert_eq!(soft_threshold(-5.0, 2.0), -3.0);
        assert_eq!(soft_threshold(1.5, 2.0), 0.0);
        assert_eq!(soft_threshold(-1.5, 2.0), 0.0);
    }
}
