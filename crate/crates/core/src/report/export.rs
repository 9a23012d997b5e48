//! Serialization of analysis artifacts: Pajek networks, JSON documents and
//! plot-ready CSV tables.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use ndarray::Array2;
use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::market::AssetMeta;
use crate::network::Graph;
use crate::stats::Histogram;

pub const SCHEMA_VERSION: u32 = 1;
const SIGNIFICANT_DIGITS: usize = 12;

/// Rounds to 12 significant digits so JSON output is stable across
/// platforms and short enough to read.
pub fn round_significant(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x)
        .parse()
        .expect("formatted float parses")
}

fn round_value(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = round_significant(n.as_f64().expect("f64 number"));
            *v = serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number);
        }
        Value::Array(items) => items.iter_mut().for_each(round_value),
        Value::Object(map) => map.values_mut().for_each(round_value),
        _ => {}
    }
}

/// Pretty JSON with keys in lexicographic order, reals rounded to 12
/// significant digits and a trailing newline.
pub fn to_stable_json<T: Serialize>(value: &T) -> Result<String> {
    let mut v = serde_json::to_value(value)?;
    round_value(&mut v);
    let mut s = serde_json::to_string_pretty(&v)?;
    s.push('\n');
    Ok(s)
}

/// Pajek `.net` text: `*Vertices N`, one `idx "CODE"` line per node, then
/// `*Edges` and one `i j weight` line per edge (1-based, 6 decimals).
pub fn pajek_string(g: &Graph) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "*Vertices {}", g.n_nodes());
    for (pos, node) in g.nodes.iter().enumerate() {
        let _ = writeln!(s, "{} \"{}\"", pos + 1, node.code);
    }
    s.push_str("*Edges\n");
    for e in &g.edges {
        let _ = writeln!(s, "{} {} {:.6}", e.i + 1, e.j + 1, e.weight);
    }
    s
}

pub fn export_pajek(g: &Graph, path: &Path) -> Result<()> {
    write_file(path, &pajek_string(g))
}

#[derive(Serialize)]
struct GraphNodeDoc<'a> {
    index: usize,
    code: &'a str,
    name: &'a str,
    market_class: &'a str,
    region: &'a str,
}

#[derive(Serialize)]
struct GraphEdgeDoc {
    source: usize,
    target: usize,
    weight: f64,
}

#[derive(Serialize)]
struct GraphDoc<'a> {
    schema_version: u32,
    kind: crate::network::GraphKind,
    seed: u64,
    nodes: Vec<GraphNodeDoc<'a>>,
    edges: Vec<GraphEdgeDoc>,
}

/// JSON node/edge list with 1-based indices.
pub fn graph_json(g: &Graph, seed: u64) -> Result<String> {
    let doc = GraphDoc {
        schema_version: SCHEMA_VERSION,
        kind: g.kind,
        seed,
        nodes: g
            .nodes
            .iter()
            .enumerate()
            .map(|(pos, a)| GraphNodeDoc {
                index: pos + 1,
                code: &a.code,
                name: &a.name,
                market_class: a.market_class.as_str(),
                region: &a.region,
            })
            .collect(),
        edges: g
            .edges
            .iter()
            .map(|e| GraphEdgeDoc {
                source: e.i + 1,
                target: e.j + 1,
                weight: e.weight,
            })
            .collect(),
    };
    to_stable_json(&doc)
}

pub fn export_json_report<T: Serialize>(report: &T, path: &Path) -> Result<()> {
    write_file(path, &to_stable_json(report)?)
}

/// One histogram series, optionally labelled with a component name.
pub struct HistogramSeries<'a> {
    pub component: Option<&'a str>,
    pub histogram: &'a Histogram,
}

/// `bin_center,density[,component]` rows. The component column appears when
/// any series carries a label.
pub fn histogram_csv(series: &[HistogramSeries<'_>]) -> String {
    let labelled = series.iter().any(|s| s.component.is_some());
    let mut out = String::from(if labelled {
        "bin_center,density,component\n"
    } else {
        "bin_center,density\n"
    });
    for s in series {
        for (center, density) in &s.histogram.bins {
            if labelled {
                let _ = writeln!(out, "{center},{density},{}", s.component.unwrap_or(""));
            } else {
                let _ = writeln!(out, "{center},{density}");
            }
        }
    }
    out
}

pub fn export_histogram_csv(h: &Histogram, path: &Path) -> Result<()> {
    write_file(
        path,
        &histogram_csv(&[HistogramSeries {
            component: None,
            histogram: h,
        }]),
    )
}

/// Square matrix with asset codes as header and first column.
pub fn matrix_csv(m: &Array2<f64>, assets: &[AssetMeta]) -> String {
    let mut out = String::from("code");
    for a in assets {
        out.push(',');
        out.push_str(&a.code);
    }
    out.push('\n');
    for (i, row) in m.rows().into_iter().enumerate() {
        out.push_str(&assets[i].code);
        for x in row {
            let _ = write!(out, ",{x}");
        }
        out.push('\n');
    }
    out
}

/// Generic CSV from a header and rows of preformatted cells.
pub fn table_csv<I, R>(header: &[&str], rows: I) -> String
where
    I: IntoIterator<Item = R>,
    R: IntoIterator<Item = String>,
{
    let mut out = header.join(",");
    out.push('\n');
    for row in rows {
        let cells: Vec<String> = row.into_iter().collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

pub(crate) fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|e| Error::io(path, e))
}

/// Writes files under a root directory and remembers what it created so a
/// failed run can remove its partial output.
#[derive(Debug)]
pub struct OutputWriter {
    root: PathBuf,
    files: Vec<PathBuf>,
    dirs: Vec<PathBuf>,
}

impl OutputWriter {
    pub fn new(root: impl Into<PathBuf>) -> Self {
        Self {
            root: root.into(),
            files: Vec::new(),
            dirs: Vec::new(),
        }
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    fn ensure_dir(&mut self, dir: &Path) -> Result<()> {
        let mut missing = Vec::new();
        let mut cur = Some(dir);
        while let Some(d) = cur {
            if d.as_os_str().is_empty() || d.exists() {
                break;
            }
            missing.push(d.to_path_buf());
            cur = d.parent();
        }
        for d in missing.into_iter().rev() {
            fs::create_dir(&d).map_err(|e| Error::io(&d, e))?;
            self.dirs.push(d);
        }
        Ok(())
    }

    /// Writes `contents` to `root/relative`, creating parent directories.
    pub fn write(&mut self, relative: impl AsRef<Path>, contents: &str) -> Result<PathBuf> {
        let path = self.root.join(relative);
        if let Some(parent) = path.parent() {
            self.ensure_dir(parent)?;
        }
        write_file(&path, contents)?;
        self.files.push(path.clone());
        Ok(path)
    }

    /// Files written so far, in write order.
    pub fn files(&self) -> &[PathBuf] {
        &self.files
    }

    /// Removes everything this writer created.
    pub fn rollback(&mut self) {
        for f in self.files.drain(..).rev() {
            let _ = fs::remove_file(f);
        }
        for d in self.dirs.drain(..).rev() {
            let _ = fs::remove_dir(d);
        }
    }
}
