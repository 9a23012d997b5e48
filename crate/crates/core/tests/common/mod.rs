//! Independent reference implementations used as test oracles. None of
//! these call into the library's numerical code.
#![allow(dead_code)]

use std::collections::BTreeSet;

use ndarray::Array2;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

/// Pearson correlation of `t` Gaussian draws in `n` columns, computed
/// directly. Small `t` spreads the spectrum.
pub fn random_correlation(n: usize, t: usize, seed: u64) -> Array2<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let x: Vec<Vec<f64>> = (0..n)
        .map(|_| (0..t).map(|_| rng.sample(StandardNormal)).collect())
        .collect();
    let centered: Vec<Vec<f64>> = x
        .iter()
        .map(|row| {
            let m = row.iter().sum::<f64>() / t as f64;
            row.iter().map(|v| v - m).collect()
        })
        .collect();
    let norm: Vec<f64> = centered
        .iter()
        .map(|r| r.iter().map(|v| v * v).sum::<f64>().sqrt())
        .collect();
    Array2::from_shape_fn((n, n), |(i, j)| {
        if i == j {
            1.0
        } else {
            let dot: f64 = centered[i]
                .iter()
                .zip(&centered[j])
                .map(|(a, b)| a * b)
                .sum();
            dot / (norm[i] * norm[j])
        }
    })
}

/// Coefficients of `det(x I - A)`, highest degree first, by the
/// Faddeev–LeVerrier recursion.
pub fn characteristic_polynomial(a: &Array2<f64>) -> Vec<f64> {
    let n = a.nrows();
    let mut coeffs = vec![1.0];
    let mut m = Array2::<f64>::zeros((n, n));
    let eye = Array2::<f64>::eye(n);
    let mut c_prev = 1.0;
    for k in 1..=n {
        m = a.dot(&m) + &eye * c_prev;
        let am = a.dot(&m);
        let c = -am.diag().sum() / k as f64;
        coeffs.push(c);
        c_prev = c;
    }
    coeffs
}

fn horner(coeffs: &[f64], z: (f64, f64)) -> (f64, f64) {
    coeffs.iter().fold((0.0, 0.0), |(re, im), &c| {
        (re * z.0 - im * z.1 + c, re * z.1 + im * z.0)
    })
}

/// Roots of a monic polynomial by Durand–Kerner iteration, real parts
/// sorted descending, each polished with Newton steps on the real line.
pub fn polynomial_roots(coeffs: &[f64]) -> Vec<f64> {
    let n = coeffs.len() - 1;
    let mut z: Vec<(f64, f64)> = (0..n)
        .map(|k| {
            let r = 0.4_f64 + 0.9 * k as f64;
            let th = 0.7 + k as f64;
            (r * th.cos(), r * th.sin())
        })
        .collect();
    for _ in 0..2000 {
        let mut delta = 0.0_f64;
        for i in 0..n {
            let p = horner(coeffs, z[i]);
            let mut d = (1.0, 0.0);
            for j in 0..n {
                if i != j {
                    let w = (z[i].0 - z[j].0, z[i].1 - z[j].1);
                    d = (d.0 * w.0 - d.1 * w.1, d.0 * w.1 + d.1 * w.0);
                }
            }
            let den = d.0 * d.0 + d.1 * d.1;
            let q = ((p.0 * d.0 + p.1 * d.1) / den, (p.1 * d.0 - p.0 * d.1) / den);
            z[i] = (z[i].0 - q.0, z[i].1 - q.1);
            delta = delta.max(q.0.abs() + q.1.abs());
        }
        if delta < 1e-15 {
            break;
        }
    }
    let deriv: Vec<f64> = coeffs[..n]
        .iter()
        .enumerate()
        .map(|(k, c)| c * (n - k) as f64)
        .collect();
    let mut roots: Vec<f64> = z
        .iter()
        .map(|&(mut x, _)| {
            for _ in 0..3 {
                let d = horner(&deriv, (x, 0.0)).0;
                if d.abs() > 1e-10 {
                    x -= horner(coeffs, (x, 0.0)).0 / d;
                }
            }
            x
        })
        .collect();
    roots.sort_by(|a, b| b.total_cmp(a));
    roots
}

/// Decodes a Prüfer sequence over `n` labels into a tree edge list.
pub fn prufer_tree(seq: &[usize], n: usize) -> Vec<(usize, usize)> {
    let mut degree = vec![1usize; n];
    for &s in seq {
        degree[s] += 1;
    }
    let mut leaves: BTreeSet<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &s in seq {
        let leaf = *leaves.iter().next().expect("a leaf exists");
        leaves.remove(&leaf);
        edges.push((leaf.min(s), leaf.max(s)));
        degree[s] -= 1;
        if degree[s] == 1 {
            leaves.insert(s);
        }
    }
    let rest: Vec<usize> = leaves.into_iter().collect();
    edges.push((rest[0], rest[1]));
    edges.sort();
    edges
}

/// Minimum-weight spanning tree by enumerating all `n^(n-2)` labelled
/// trees. Weight is summed over edges in `(i, j)` order.
pub fn brute_force_mst(d: &Array2<f64>) -> (Vec<(usize, usize)>, f64) {
    let n = d.nrows();
    let mut seq = vec![0usize; n - 2];
    let mut best: Option<(Vec<(usize, usize)>, f64)> = None;
    loop {
        let tree = prufer_tree(&seq, n);
        let w: f64 = tree.iter().map(|&(i, j)| d[[i, j]]).sum();
        if best.as_ref().is_none_or(|b| w < b.1) {
            best = Some((tree, w));
        }
        // Odometer increment over base-n digits.
        let mut pos = 0;
        loop {
            if pos == seq.len() {
                return best.expect("at least one tree");
            }
            seq[pos] += 1;
            if seq[pos] < n {
                break;
            }
            seq[pos] = 0;
            pos += 1;
        }
    }
}

/// Fraction of node pairs on which two partitions agree.
pub fn rand_index(a: &[usize], b: &[usize]) -> f64 {
    let n = a.len();
    let mut agree = 0usize;
    let mut total = 0usize;
    for i in 0..n {
        for j in i + 1..n {
            total += 1;
            if (a[i] == a[j]) == (b[i] == b[j]) {
                agree += 1;
            }
        }
    }
    agree as f64 / total as f64
}

#[derive(Debug, PartialEq)]
pub struct PajekGraph {
    pub vertices: Vec<(usize, String)>,
    pub edges: Vec<(usize, usize, f64)>,
}

/// Minimal Pajek reader for `*Vertices` / `*Edges` files.
pub fn read_pajek(text: &str) -> PajekGraph {
    assert!(!text.contains('\r'), "LF line endings only");
    let mut lines = text.lines();
    let head = lines.next().expect("header");
    let n: usize = head
        .strip_prefix("*Vertices ")
        .expect("*Vertices header")
        .parse()
        .expect("vertex count");
    let mut vertices = Vec::new();
    for _ in 0..n {
        let line = lines.next().expect("vertex line");
        let (idx, label) = line.split_once(' ').expect("idx label");
        let label = label.trim_matches('"').to_string();
        vertices.push((idx.parse().expect("vertex index"), label));
    }
    assert_eq!(lines.next(), Some("*Edges"));
    let edges = lines
        .map(|l| {
            let f: Vec<&str> = l.split(' ').collect();
            assert_eq!(f.len(), 3, "edge line `{l}`");
            (
                f[0].parse().unwrap(),
                f[1].parse().unwrap(),
                f[2].parse().unwrap(),
            )
        })
        .collect();
    PajekGraph { vertices, edges }
}

/// `(bin_center, density, component)` rows of a histogram CSV.
pub fn read_histogram_csv(text: &str) -> Vec<(f64, f64, Option<String>)> {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let labelled = reader.headers().unwrap().len() == 3;
    reader
        .records()
        .map(|r| {
            let r = r.unwrap();
            (
                r[0].parse().unwrap(),
                r[1].parse().unwrap(),
                labelled.then(|| r[2].to_string()),
            )
        })
        .collect()
}

/// Upper bound on the second singular value of `m`: the Frobenius distance
/// to the rank-one matrix built from its column with the largest diagonal.
pub fn rank_one_residual(m: &Array2<f64>) -> f64 {
    let n = m.nrows();
    let k = (0..n)
        .max_by(|&a, &b| m[[a, a]].total_cmp(&m[[b, b]]))
        .unwrap();
    let pivot = m[[k, k]];
    if pivot == 0.0 {
        return m.iter().map(|x| x * x).sum::<f64>().sqrt();
    }
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            let r = m[[i, j]] - m[[i, k]] * m[[k, j]] / pivot;
            s += r * r;
        }
    }
    s.sqrt()
}

/// Synthetic price table and metadata for `n` assets over `t + 1` days.
pub fn write_synthetic_inputs(
    dir: &std::path::Path,
    n: usize,
    t: usize,
    seed: u64,
) -> (std::path::PathBuf, std::path::PathBuf) {
    let model = corrnet::synthetic::FactorModel {
        n_assets: n,
        n_periods: t,
        global_loading: 0.5,
        group_loading: 0.3,
        groups: vec![(0..n / 2).collect()],
    };
    let start = chrono::NaiveDate::from_ymd_opt(2005, 3, 1).unwrap();
    let panel = model.sample_prices(seed, 0.01, start).unwrap();
    corrnet::synthetic::write_inputs(&panel, dir).unwrap()
}
