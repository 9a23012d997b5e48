//! Cyclic Jacobi eigensolver for real symmetric matrices.

use ndarray::Array2;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiOptions {
    pub max_sweeps: usize,
    /// Convergence when the off-diagonal Frobenius norm drops below
    /// `tolerance_factor * n`.
    pub tolerance_factor: f64,
}

impl Default for JacobiOptions {
    fn default() -> Self {
        Self {
            max_sweeps: 100,
            tolerance_factor: 1e-12,
        }
    }
}

/// Raw Jacobi output: unsorted eigenvalues and unit eigenvectors stored as
/// the columns of `vectors`.
#[derive(Debug, Clone)]
pub struct JacobiEigen {
    pub values: Vec<f64>,
    pub vectors: Array2<f64>,
    pub sweeps: usize,
}

fn off_diagonal_norm(a: &Array2<f64>) -> f64 {
    let n = a.nrows();
    let mut ss = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                ss += a[[i, j]] * a[[i, j]];
            }
        }
    }
    ss.sqrt()
}

/// Diagonalizes `a` by sweeping plane rotations over every `(p, q)` pair in
/// row order. `a` must be square and symmetric.
pub fn jacobi_eigen(a: &Array2<f64>, opts: &JacobiOptions) -> Result<JacobiEigen> {
    let n = a.nrows();
    if a.ncols() != n {
        return Err(Error::DimensionMismatch(format!(
            "matrix is {:?}, not square",
            a.dim()
        )));
    }
    if a.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidParameter(
            "matrix has non-finite entries".into(),
        ));
    }
    let mut a = a.clone();
    let mut v = Array2::<f64>::eye(n);
    let tol = opts.tolerance_factor * n as f64;

    let mut sweeps = 0;
    loop {
        let off = off_diagonal_norm(&a);
        if off < tol {
            break;
        }
        if sweeps == opts.max_sweeps {
            return Err(Error::NoConvergence {
                sweeps,
                off_norm: off,
            });
        }
        sweeps += 1;
        for p in 0..n.saturating_sub(1) {
            for q in p + 1..n {
                let apq = a[[p, q]];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[[q, q]] - a[[p, p]]) / (2.0 * apq);
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[[k, p]], a[[k, q]]);
                    a[[k, p]] = c * akp - s * akq;
                    a[[k, q]] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[[p, k]], a[[q, k]]);
                    a[[p, k]] = c * apk - s * aqk;
                    a[[q, k]] = s * apk + c * aqk;
                }
                a[[p, q]] = 0.0;
                a[[q, p]] = 0.0;
                for k in 0..n {
                    let (vkp, vkq) = (v[[k, p]], v[[k, q]]);
                    v[[k, p]] = c * vkp - s * vkq;
                    v[[k, q]] = s * vkp + c * vkq;
                }
            }
        }
    }

    Ok(JacobiEigen {
        values: (0..n).map(|i| a[[i, i]]).collect(),
        vectors: v,
        sweeps,
    })
}
