//! Cross-correlation matrices and their spectra.
//!
//! Eigenvectors follow the normalization `sum_i u_ji^2 = N`, so a matrix is
//! rebuilt as `sum_j (lambda_j / N) u_j u_j^T`. Each eigenvector is signed so
//! that its largest-magnitude component is positive.

mod jacobi;
mod rmt;
mod surrogate;

pub use jacobi::{jacobi_eigen, JacobiEigen, JacobiOptions};
pub use rmt::{mp_density, porter_thomas_density, rmt_bounds, RmtBounds};
pub use surrogate::{derive_seed, shuffle_surrogate, surrogate_spectra};

use ndarray::{Array1, Array2, ArrayView1, Axis};

use crate::error::{Error, Result};
use crate::market::ReturnPanel;

const SYMMETRY_TOL: f64 = 1e-12;

/// Symmetric matrix with unit diagonal and entries in `[-1, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationMatrix {
    entries: Array2<f64>,
}

impl CorrelationMatrix {
    pub fn new(entries: Array2<f64>) -> Result<Self> {
        let n = entries.nrows();
        if entries.ncols() != n || n == 0 {
            return Err(Error::InvalidCorrelation(format!(
                "shape {:?}",
                entries.dim()
            )));
        }
        for i in 0..n {
            if (entries[[i, i]] - 1.0).abs() > SYMMETRY_TOL {
                return Err(Error::InvalidCorrelation(format!(
                    "diagonal entry {i} is {}",
                    entries[[i, i]]
                )));
            }
            for j in 0..n {
                let x = entries[[i, j]];
                if !x.is_finite() || x.abs() > 1.0 + SYMMETRY_TOL {
                    return Err(Error::InvalidCorrelation(format!(
                        "entry ({i}, {j}) is {x}"
                    )));
                }
                if (x - entries[[j, i]]).abs() > SYMMETRY_TOL {
                    return Err(Error::InvalidCorrelation(format!(
                        "asymmetric at ({i}, {j})"
                    )));
                }
            }
        }
        Ok(Self { entries })
    }

    pub fn entries(&self) -> &Array2<f64> {
        &self.entries
    }

    pub fn size(&self) -> usize {
        self.entries.nrows()
    }

    pub fn into_inner(self) -> Array2<f64> {
        self.entries
    }
}

/// Equal-time cross-correlation of a normalized return panel.
///
/// Rows are centred before the products are averaged, which makes the
/// diagonal exactly one for series with a nonzero drift.
pub fn correlation_matrix(rp: &ReturnPanel) -> Result<CorrelationMatrix> {
    if !rp.is_normalized() {
        return Err(Error::NotNormalized);
    }
    let r = rp.returns();
    let n = r.nrows();
    let mean = r.mean_axis(Axis(1)).expect("panel has columns");
    let centred = r - &mean.insert_axis(Axis(1));
    let norms: Vec<f64> = centred
        .axis_iter(Axis(0))
        .map(|row| row.dot(&row).sqrt())
        .collect();
    let mut c = Array2::<f64>::eye(n);
    for i in 0..n {
        for j in i + 1..n {
            let v = centred.row(i).dot(&centred.row(j)) / (norms[i] * norms[j]);
            let v = v.clamp(-1.0, 1.0);
            c[[i, j]] = v;
            c[[j, i]] = v;
        }
    }
    CorrelationMatrix::new(c)
}

/// Eigenvalues in descending order with matching eigenvectors (row `j` of
/// `eigenvectors` is `u_j`).
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralDecomposition {
    eigenvalues: Vec<f64>,
    eigenvectors: Array2<f64>,
    sweeps: usize,
}

impl SpectralDecomposition {
    /// Assembles a decomposition from known eigenpairs. Eigenvalues must be
    /// in descending order and each row of `eigenvectors` must satisfy
    /// `sum u^2 = N`.
    pub fn from_parts(eigenvalues: Vec<f64>, eigenvectors: Array2<f64>) -> Result<Self> {
        let n = eigenvalues.len();
        if eigenvectors.dim() != (n, n) {
            return Err(Error::DimensionMismatch(format!(
                "{n} eigenvalues with eigenvector matrix {:?}",
                eigenvectors.dim()
            )));
        }
        if eigenvalues.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidParameter(
                "eigenvalues must be descending".into(),
            ));
        }
        for (j, u) in eigenvectors.axis_iter(Axis(0)).enumerate() {
            if (u.dot(&u) - n as f64).abs() > 1e-9 * n as f64 {
                return Err(Error::InvalidParameter(format!(
                    "eigenvector {j} is not normalized to N"
                )));
            }
        }
        Ok(Self {
            eigenvalues,
            eigenvectors,
            sweeps: 0,
        })
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn eigenvectors(&self) -> &Array2<f64> {
        &self.eigenvectors
    }

    pub fn eigenvector(&self, j: usize) -> ArrayView1<'_, f64> {
        self.eigenvectors.row(j)
    }

    pub fn size(&self) -> usize {
        self.eigenvalues.len()
    }

    /// Jacobi sweeps used.
    pub fn sweeps(&self) -> usize {
        self.sweeps
    }

    /// `sum_{j in modes} (lambda_j / N) u_j u_j^T`.
    pub fn partial_sum(&self, modes: impl IntoIterator<Item = usize>) -> Array2<f64> {
        let n = self.size();
        let mut out = Array2::<f64>::zeros((n, n));
        for j in modes {
            let w = self.eigenvalues[j] / n as f64;
            let u = self.eigenvectors.row(j);
            for a in 0..n {
                let wa = w * u[a];
                for b in 0..n {
                    out[[a, b]] += wa * u[b];
                }
            }
        }
        out
    }

    pub fn reconstruct(&self) -> Array2<f64> {
        self.partial_sum(0..self.size())
    }
}

/// Index of the largest-magnitude component; the lowest index wins ties.
pub(crate) fn dominant_index(u: ArrayView1<'_, f64>) -> usize {
    let max = u.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    u.iter()
        .position(|x| x.abs() >= max * (1.0 - 1e-12))
        .unwrap_or(0)
}

/// Deterministic eigendecomposition of a correlation matrix.
pub fn eigendecompose(c: &CorrelationMatrix) -> Result<SpectralDecomposition> {
    eigendecompose_with(c, &JacobiOptions::default())
}

pub fn eigendecompose_with(
    c: &CorrelationMatrix,
    opts: &JacobiOptions,
) -> Result<SpectralDecomposition> {
    let n = c.size();
    let raw = jacobi_eigen(c.entries(), opts)?;
    let scale = (n as f64).sqrt();

    let mut pairs: Vec<(f64, Array1<f64>, usize)> = (0..n)
        .map(|j| {
            let mut u = raw.vectors.column(j).to_owned();
            let norm = u.dot(&u).sqrt();
            u.mapv_inplace(|x| x * scale / norm);
            let k = dominant_index(u.view());
            if u[k] < 0.0 {
                u.mapv_inplace(|x| -x);
            }
            (raw.values[j], u, k)
        })
        .collect();
    pairs.sort_by(|a, b| b.0.total_cmp(&a.0));

    // Within a block of (numerically) equal eigenvalues, order by the position
    // of the dominant component.
    let degenerate = 1e-10 * n as f64;
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && pairs[end - 1].0 - pairs[end].0 <= degenerate {
            end += 1;
        }
        pairs[start..end].sort_by_key(|p| p.2);
        start = end;
    }

    let mut eigenvectors = Array2::<f64>::zeros((n, n));
    for (j, (_, u, _)) in pairs.iter().enumerate() {
        eigenvectors.row_mut(j).assign(u);
    }
    Ok(SpectralDecomposition {
        eigenvalues: pairs.iter().map(|p| p.0).collect(),
        eigenvectors,
        sweeps: raw.sweeps,
    })
}

/// Components of the selected eigenvectors, concatenated in the given order.
pub fn eigenvector_component_sample(
    sd: &SpectralDecomposition,
    which: &[usize],
) -> Result<Vec<f64>> {
    let mut out = Vec::with_capacity(which.len() * sd.size());
    for &j in which {
        if j >= sd.size() {
            return Err(Error::IndexOutOfRange {
                index: j,
                len: sd.size(),
            });
        }
        out.extend(sd.eigenvector(j).iter());
    }
    Ok(out)
}

/// Indices of eigenvalues inside the random-matrix support.
pub fn bulk_indices(sd: &SpectralDecomposition, bounds: &RmtBounds) -> Vec<usize> {
    sd.eigenvalues()
        .iter()
        .enumerate()
        .filter(|(_, &l)| bounds.contains(l))
        .map(|(j, _)| j)
        .collect()
}
