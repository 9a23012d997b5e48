use ndarray::Array2;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{cluster_report, Edge, Graph, GraphKind, DEFAULT_HUB_SIGMA};
use crate::error::{Error, Result};
use crate::market::AssetMeta;
use crate::modes::upper_triangle;

/// Edges `(i, j)` wherever `m_ij > c_th` strictly, weighted by `m_ij`.
pub fn threshold_network(m: &Array2<f64>, c_th: f64, assets: &[AssetMeta]) -> Result<Graph> {
    let n = assets.len();
    if m.dim() != (n, n) {
        return Err(Error::DimensionMismatch(format!(
            "matrix {:?} for {n} assets",
            m.dim()
        )));
    }
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if m[[i, j]] > c_th {
                edges.push(Edge {
                    i,
                    j,
                    weight: m[[i, j]],
                });
            }
        }
    }
    Graph::new(assets.to_vec(), edges, GraphKind::Threshold)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepPoint {
    pub c_th: f64,
    pub edges: usize,
    /// Nodes with at least one edge.
    pub non_isolated: usize,
    pub components: usize,
    /// Component sizes, largest first.
    pub sizes: Vec<usize>,
    /// Nodes in components of three or more.
    pub clustered: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThresholdSweep {
    pub points: Vec<SweepPoint>,
    pub recommended: f64,
}

/// Evaluates the threshold network at every grid value and recommends the
/// threshold that places the most nodes in components of size three or more,
/// preferring the larger threshold on ties.
pub fn threshold_sweep(
    m: &Array2<f64>,
    grid: &[f64],
    assets: &[AssetMeta],
) -> Result<ThresholdSweep> {
    if grid.is_empty() {
        return Err(Error::InvalidParameter("threshold grid is empty".into()));
    }
    if grid
        .windows(2)
        .any(|w| w[0].partial_cmp(&w[1]) != Some(std::cmp::Ordering::Less))
    {
        return Err(Error::InvalidParameter(
            "threshold grid must be strictly increasing".into(),
        ));
    }
    let points = grid
        .par_iter()
        .map(|&c_th| {
            let g = threshold_network(m, c_th, assets)?;
            let report = cluster_report(&g, DEFAULT_HUB_SIGMA);
            let sizes: Vec<usize> = report.components.iter().map(Vec::len).collect();
            Ok(SweepPoint {
                c_th,
                edges: g.edges.len(),
                non_isolated: g.n_nodes() - report.isolated.len(),
                components: sizes.len(),
                clustered: sizes.iter().filter(|&&s| s >= 3).sum(),
                sizes,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let best = points
        .iter()
        .enumerate()
        .max_by_key(|(k, p)| (p.clustered, *k))
        .map(|(_, p)| p.c_th)
        .expect("grid is nonempty");
    Ok(ThresholdSweep {
        points,
        recommended: best,
    })
}

/// `steps` evenly spaced thresholds from just below the smallest off-diagonal
/// entry (complete graph) up to the largest (empty graph).
pub fn default_threshold_grid(m: &Array2<f64>, steps: usize) -> Vec<f64> {
    let off = upper_triangle(m);
    if off.is_empty() {
        return vec![0.0];
    }
    let lo = off.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = off.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let lo = lo - 1e-9 * (1.0 + lo.abs());
    let steps = steps.max(2);
    let mut grid: Vec<f64> = (0..steps)
        .map(|k| lo + (hi - lo) * k as f64 / (steps - 1) as f64)
        .collect();
    grid.dedup();
    grid
}
