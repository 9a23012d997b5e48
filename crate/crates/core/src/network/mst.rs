use ndarray::Array2;

use super::{Edge, Graph, GraphKind, UnionFind};
use crate::error::{Error, Result};
use crate::market::AssetMeta;
use crate::spectral::CorrelationMatrix;

const CLAMP_TOL: f64 = 1e-9;

/// `d_ij = sqrt(2 (1 - C_ij))` for any square matrix with entries in
/// `[-1, 1]` (values within 1e-9 outside are clamped).
pub fn mantegna_distance_matrix(c: &Array2<f64>) -> Result<Array2<f64>> {
    let n = c.nrows();
    if c.ncols() != n {
        return Err(Error::DimensionMismatch(format!("matrix is {:?}", c.dim())));
    }
    let mut d = Array2::<f64>::zeros((n, n));
    for ((i, j), &x) in c.indexed_iter() {
        if !x.is_finite() || x.abs() > 1.0 + CLAMP_TOL {
            return Err(Error::InvalidCorrelation(format!(
                "entry ({i}, {j}) is {x}"
            )));
        }
        if i != j {
            d[[i, j]] = (2.0 * (1.0 - x.clamp(-1.0, 1.0))).sqrt();
        }
    }
    Ok(d)
}

pub fn mantegna_distance(c: &CorrelationMatrix) -> Result<Array2<f64>> {
    mantegna_distance_matrix(c.entries())
}

/// Kruskal's algorithm over the upper triangle of `d`, with candidate edges
/// ordered by `(weight, i, j)`. Output edges are sorted by `(i, j)`.
pub fn minimum_spanning_tree(d: &Array2<f64>, assets: &[AssetMeta]) -> Result<Graph> {
    let n = assets.len();
    if d.dim() != (n, n) {
        return Err(Error::DimensionMismatch(format!(
            "distance matrix {:?} for {n} assets",
            d.dim()
        )));
    }
    let mut candidates = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            let w = d[[i, j]];
            if !w.is_finite() {
                return Err(Error::NonFiniteDistance(i, j));
            }
            candidates.push(Edge { i, j, weight: w });
        }
    }
    candidates.sort_by(|a, b| {
        a.weight
            .total_cmp(&b.weight)
            .then(a.i.cmp(&b.i))
            .then(a.j.cmp(&b.j))
    });

    let mut uf = UnionFind::new(n);
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    for e in candidates {
        if uf.union(e.i, e.j) {
            edges.push(e);
            if edges.len() + 1 == n {
                break;
            }
        }
    }
    edges.sort_by_key(|e| (e.i, e.j));
    Graph::new(assets.to_vec(), edges, GraphKind::Mst)
}
