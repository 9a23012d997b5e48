use serde::{Deserialize, Serialize};

use super::{Graph, UnionFind};
use crate::stats::mean_std;

pub const DEFAULT_HUB_SIGMA: f64 = 2.0;

/// Connected components, isolated nodes and hubs of a graph. Node ids are
/// 0-based panel positions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClusterReport {
    /// Components with at least one edge, largest first (ties by smallest member).
    pub components: Vec<Vec<usize>>,
    pub isolated: Vec<usize>,
    /// `(node, degree)` for nodes whose degree exceeds mean + hub_sigma * std.
    pub hubs: Vec<(usize, usize)>,
    pub degrees: Vec<usize>,
}

impl ClusterReport {
    /// Partition label per node; isolated nodes get their own label.
    pub fn labels(&self) -> Vec<usize> {
        let n = self.degrees.len();
        let mut labels = vec![usize::MAX; n];
        for (c, members) in self.components.iter().enumerate() {
            for &v in members {
                labels[v] = c;
            }
        }
        let unlabelled = labels.iter_mut().filter(|l| **l == usize::MAX);
        for (next, l) in (self.components.len()..).zip(unlabelled) {
            *l = next;
        }
        labels
    }
}

pub fn cluster_report(g: &Graph, hub_sigma: f64) -> ClusterReport {
    let n = g.n_nodes();
    let degrees = g.degrees();
    let mut uf = UnionFind::new(n);
    for e in &g.edges {
        uf.union(e.i, e.j);
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    let mut isolated = Vec::new();
    for (v, &deg) in degrees.iter().enumerate() {
        if deg == 0 {
            isolated.push(v);
        } else {
            groups.entry(uf.find(v)).or_default().push(v);
        }
    }
    let mut components: Vec<Vec<usize>> = groups.into_values().collect();
    components.sort_by(|a, b| b.len().cmp(&a.len()).then(a[0].cmp(&b[0])));

    let deg_f: Vec<f64> = degrees.iter().map(|&d| d as f64).collect();
    let (mean, std) = mean_std(&deg_f);
    let cut = mean + hub_sigma * std;
    let hubs = degrees
        .iter()
        .enumerate()
        .filter(|(_, &d)| d as f64 > cut)
        .map(|(v, &d)| (v, d))
        .collect();

    ClusterReport {
        components,
        isolated,
        hubs,
        degrees,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::market::{AssetMeta, MarketClass};
    use crate::network::{Edge, GraphKind};

    fn graph(n: usize, pairs: &[(usize, usize)], kind: GraphKind) -> Graph {
        let nodes = (1..=n)
            .map(|i| AssetMeta::new(i, format!("N{i}"), "", MarketClass::Frontier, ""))
            .collect();
        let edges = pairs
            .iter()
            .map(|&(i, j)| Edge { i, j, weight: 1.0 })
            .collect();
        Graph::new(nodes, edges, kind).unwrap()
    }

    #[test]
    fn empty_graph_is_all_isolated() {
        let r = cluster_report(&graph(4, &[], GraphKind::Threshold), 2.0);
        assert!(r.components.is_empty());
        assert_eq!(r.isolated, vec![0, 1, 2, 3]);
        assert!(r.hubs.is_empty());
        assert_eq!(r.labels(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn star_has_single_hub() {
        let pairs: Vec<_> = (1..10).map(|j| (0, j)).collect();
        let r = cluster_report(&graph(10, &pairs, GraphKind::Mst), 2.0);
        assert_eq!(r.components.len(), 1);
        assert_eq!(r.hubs, vec![(0, 9)]);
    }

    #[test]
    fn components_sorted_by_size() {
        let r = cluster_report(
            &graph(7, &[(0, 1), (2, 3), (3, 4), (2, 4)], GraphKind::Threshold),
            2.0,
        );
        assert_eq!(r.components, vec![vec![2, 3, 4], vec![0, 1]]);
        assert_eq!(r.isolated, vec![5, 6]);
        assert_eq!(r.labels(), vec![1, 1, 0, 0, 0, 2, 3]);
    }

    #[test]
    fn graph_validation() {
        let nodes: Vec<_> = (1..=3)
            .map(|i| AssetMeta::new(i, format!("N{i}"), "", MarketClass::Frontier, ""))
            .collect();
        let e = |i, j| Edge { i, j, weight: 0.0 };
        assert!(Graph::new(nodes.clone(), vec![e(1, 1)], GraphKind::Threshold).is_err());
        assert!(Graph::new(nodes.clone(), vec![e(0, 1), e(0, 1)], GraphKind::Threshold).is_err());
        assert!(Graph::new(nodes.clone(), vec![e(0, 1)], GraphKind::Mst).is_err());
        assert!(Graph::new(nodes, vec![e(0, 1), e(1, 2)], GraphKind::Mst).is_ok());
    }
}
