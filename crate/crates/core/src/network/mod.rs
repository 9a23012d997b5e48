//! Network reconstruction from correlation structure: a minimum spanning tree
//! over Mantegna distances and threshold networks over the group matrix.

mod clusters;
mod dsu;
mod mst;
mod threshold;

pub use clusters::{cluster_report, ClusterReport, DEFAULT_HUB_SIGMA};
pub use dsu::UnionFind;
pub use mst::{mantegna_distance, mantegna_distance_matrix, minimum_spanning_tree};
pub use threshold::{
    default_threshold_grid, threshold_network, threshold_sweep, SweepPoint, ThresholdSweep,
};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::market::AssetMeta;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GraphKind {
    Mst,
    Threshold,
}

/// Undirected weighted edge between panel positions `i < j` (0-based).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Edge {
    pub i: usize,
    pub j: usize,
    pub weight: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    pub nodes: Vec<AssetMeta>,
    pub edges: Vec<Edge>,
    pub kind: GraphKind,
}

impl Graph {
    /// Builds a graph, rejecting self-loops, duplicate edges, out-of-range
    /// endpoints and (for spanning trees) anything other than N-1 edges
    /// forming a connected graph.
    pub fn new(nodes: Vec<AssetMeta>, edges: Vec<Edge>, kind: GraphKind) -> Result<Self> {
        let n = nodes.len();
        let mut seen = std::collections::HashSet::new();
        for e in &edges {
            if e.i >= e.j || e.j >= n {
                return Err(Error::InvalidParameter(format!(
                    "edge ({}, {}) is not a valid i < j pair for {n} nodes",
                    e.i, e.j
                )));
            }
            if !seen.insert((e.i, e.j)) {
                return Err(Error::InvalidParameter(format!(
                    "duplicate edge ({}, {})",
                    e.i, e.j
                )));
            }
        }
        if kind == GraphKind::Mst {
            if edges.len() + 1 != n {
                return Err(Error::InvalidParameter(format!(
                    "spanning tree on {n} nodes has {} edges",
                    edges.len()
                )));
            }
            let mut uf = UnionFind::new(n);
            if !edges.iter().all(|e| uf.union(e.i, e.j)) {
                return Err(Error::InvalidParameter(
                    "spanning tree contains a cycle".into(),
                ));
            }
        }
        Ok(Self { nodes, edges, kind })
    }

    pub fn n_nodes(&self) -> usize {
        self.nodes.len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.nodes.len()];
        for e in &self.edges {
            deg[e.i] += 1;
            deg[e.j] += 1;
        }
        deg
    }

    pub fn total_weight(&self) -> f64 {
        self.edges.iter().map(|e| e.weight).sum()
    }
}
