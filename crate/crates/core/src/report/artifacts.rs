//! Plot-ready files for each stage of an analysis.

use std::collections::BTreeMap;

use super::analysis::Analysis;
use super::export::{
    graph_json, histogram_csv, matrix_csv, pajek_string, table_csv, to_stable_json,
    HistogramSeries, OutputWriter,
};
use super::summary::{build_report, AnalysisReport};
use crate::error::Result;
use crate::market::AssetMeta;
use crate::modes::element_histogram;
use crate::spectral::{
    bulk_indices, eigenvector_component_sample, mp_density, porter_thomas_density,
};
use crate::stats::{histogram, Histogram};
use crate::tails::{tail_survival, Side};

const CURVE_POINTS: usize = 201;

fn header_with_codes(first: &[&str], assets: &[AssetMeta]) -> String {
    let mut h: Vec<&str> = first.to_vec();
    h.extend(assets.iter().map(|a| a.code.as_str()));
    h.join(",")
}

fn panel_csv<'a>(
    first: &[&str],
    assets: &[AssetMeta],
    rows: impl Iterator<Item = Vec<String>> + 'a,
) -> String {
    let mut out = header_with_codes(first, assets);
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

fn series_csv(series: &[(&str, &Histogram)]) -> String {
    let s: Vec<HistogramSeries<'_>> = series
        .iter()
        .map(|(name, h)| HistogramSeries {
            component: Some(name),
            histogram: h,
        })
        .collect();
    histogram_csv(&s)
}

fn curve_csv(header: [&str; 2], lo: f64, hi: f64, f: impl Fn(f64) -> f64) -> String {
    table_csv(
        &header,
        (0..CURVE_POINTS).map(|k| {
            let x = lo + (hi - lo) * k as f64 / (CURVE_POINTS - 1) as f64;
            vec![x.to_string(), f(x).to_string()]
        }),
    )
}

/// Every file for the stages the analysis reached, keyed by path relative to
/// the output directory, together with the report.
pub fn render(a: &Analysis) -> Result<(AnalysisReport, BTreeMap<String, String>)> {
    let mut files = BTreeMap::new();
    let cfg = &a.config;
    let assets = a.prices.assets();
    let report = build_report(a)?;

    {
        let p = a.prices.prices();
        let rows = a.prices.dates().iter().enumerate().map(|(t, d)| {
            let mut row = vec![d.to_string()];
            row.extend(p.column(t).iter().map(f64::to_string));
            row
        });
        files.insert("prices.csv".into(), panel_csv(&["date"], assets, rows));
    }

    if let Some(r) = &a.returns {
        let x = r.normalized.returns();
        let rows = r.normalized.dates().iter().enumerate().map(|(t, d)| {
            let mut row = vec![d.to_string()];
            row.extend(x.column(t).iter().map(f64::to_string));
            row
        });
        files.insert("returns.csv".into(), panel_csv(&["date"], assets, rows));
        files.insert(
            "volatility.csv".into(),
            table_csv(
                &["code", "sigma"],
                assets
                    .iter()
                    .zip(r.raw.sigma())
                    .map(|(a, s)| vec![a.code.clone(), s.to_string()]),
            ),
        );
    }

    if let (Some(_), Some(r)) = (&a.tails, &a.returns) {
        let x = r.normalized.returns();
        let mut pooled = Vec::with_capacity(x.len());
        for (asset, row) in assets.iter().zip(x.rows()) {
            let xs = row.to_vec();
            for (side, name) in [(Side::Positive, "positive"), (Side::Negative, "negative")] {
                // An all-one-sign row has no tail on the other side.
                if let Ok(curve) = tail_survival(&xs, side) {
                    files.insert(format!("ccdf/{}_{name}.csv", asset.code), ccdf_csv(&curve));
                }
            }
            pooled.extend(xs);
        }
        for (side, name) in [(Side::Positive, "positive"), (Side::Negative, "negative")] {
            if let Ok(curve) = tail_survival(&pooled, side) {
                files.insert(format!("ccdf/pooled_{name}.csv"), ccdf_csv(&curve));
            }
        }
    }

    if let Some(s) = &a.spectrum {
        let sd = &s.decomposition;
        let b = &s.bounds;
        files.insert(
            "spectrum.csv".into(),
            table_csv(
                &["index", "eigenvalue"],
                sd.eigenvalues()
                    .iter()
                    .enumerate()
                    .map(|(j, l)| vec![j.to_string(), l.to_string()]),
            ),
        );
        let vecs = sd.eigenvectors();
        let rows = (0..sd.size()).map(|j| {
            let mut row = vec![j.to_string(), sd.eigenvalues()[j].to_string()];
            row.extend(vecs.row(j).iter().map(f64::to_string));
            row
        });
        files.insert(
            "eigenvectors.csv".into(),
            panel_csv(&["index", "eigenvalue"], assets, rows),
        );
        files.insert(
            "surrogate_spectrum.csv".into(),
            table_csv(
                &["replicate", "index", "eigenvalue"],
                s.surrogates.iter().enumerate().flat_map(|(k, sur)| {
                    sur.eigenvalues()
                        .iter()
                        .enumerate()
                        .map(move |(j, l)| vec![k.to_string(), j.to_string(), l.to_string()])
                        .collect::<Vec<_>>()
                }),
            ),
        );

        let pooled_values: Vec<f64> = s
            .surrogates
            .iter()
            .flat_map(|x| x.eigenvalues().to_vec())
            .collect();
        let h_emp = histogram(sd.eigenvalues(), cfg.histogram_bins);
        let h_sur = histogram(&pooled_values, cfg.histogram_bins);
        files.insert(
            "eigenvalue_histogram.csv".into(),
            series_csv(&[("empirical", &h_emp), ("surrogate", &h_sur)]),
        );
        files.insert(
            "mp_density.csv".into(),
            curve_csv(["lambda", "density"], b.lambda_min, b.lambda_max, |l| {
                mp_density(l, b.q)
            }),
        );

        let bulk = eigenvector_component_sample(sd, &bulk_indices(sd, b))?;
        let mut pooled_components = Vec::new();
        for sur in &s.surrogates {
            pooled_components.extend(eigenvector_component_sample(sur, &bulk_indices(sur, b))?);
        }
        let leading = eigenvector_component_sample(sd, &[0])?;
        let h_bulk = histogram(&bulk, cfg.histogram_bins);
        let h_pool = histogram(&pooled_components, cfg.histogram_bins);
        let h_lead = histogram(&leading, cfg.histogram_bins);
        files.insert(
            "eigenvector_histogram.csv".into(),
            series_csv(&[
                ("bulk", &h_bulk),
                ("surrogate", &h_pool),
                ("leading", &h_lead),
            ]),
        );
        files.insert(
            "porter_thomas.csv".into(),
            curve_csv(["u", "density"], -5.0, 5.0, porter_thomas_density),
        );
        files.insert(
            "leading_eigenvector.csv".into(),
            table_csv(
                &["code", "component", "market_class", "region"],
                assets.iter().zip(sd.eigenvector(0).iter()).map(|(a, x)| {
                    vec![
                        a.code.clone(),
                        x.to_string(),
                        a.market_class.as_str().to_string(),
                        a.region.clone(),
                    ]
                }),
            ),
        );
    }

    if let (Some(s), Some(m)) = (&a.spectrum, &a.modes) {
        let d = &m.decomposition;
        let parts = [
            ("full", s.correlation.entries()),
            ("global", &d.c_global),
            ("group", &d.c_group),
            ("random", &d.c_random),
        ];
        let mut hists = Vec::new();
        for (name, mat) in parts {
            let file = if name == "full" {
                "correlation.csv".to_string()
            } else {
                format!("c_{name}.csv")
            };
            files.insert(file, matrix_csv(mat, assets));
            hists.push((name, element_histogram(mat, cfg.histogram_bins)?));
        }
        let refs: Vec<(&str, &Histogram)> = hists.iter().map(|(n, h)| (*n, h)).collect();
        files.insert("element_histogram.csv".into(), series_csv(&refs));
    }

    if let Some(n) = &a.networks {
        files.insert("mst.net".into(), pajek_string(&n.mst));
        files.insert("mst.json".into(), graph_json(&n.mst, cfg.seed)?);
        files.insert("distance.csv".into(), matrix_csv(&n.distances, assets));
        {
            files.insert("threshold.net".into(), pajek_string(&n.threshold));
            files.insert("threshold.json".into(), graph_json(&n.threshold, cfg.seed)?);
            files.insert(
                "threshold_sweep.csv".into(),
                table_csv(
                    &[
                        "c_th",
                        "edges",
                        "non_isolated",
                        "components",
                        "clustered",
                        "sizes",
                    ],
                    n.sweep.points.iter().map(|p| {
                        vec![
                            p.c_th.to_string(),
                            p.edges.to_string(),
                            p.non_isolated.to_string(),
                            p.components.to_string(),
                            p.clustered.to_string(),
                            p.sizes
                                .iter()
                                .map(usize::to_string)
                                .collect::<Vec<_>>()
                                .join(";"),
                        ]
                    }),
                ),
            );
        }
    }

    files.insert("report.json".into(), to_stable_json(&report)?);
    Ok((report, files))
}

fn ccdf_csv(curve: &[(f64, f64)]) -> String {
    table_csv(
        &["x", "ccdf"],
        curve
            .iter()
            .map(|(x, p)| vec![x.to_string(), p.to_string()]),
    )
}

/// Writes rendered files in path order; on failure everything written so far
/// is removed.
pub fn write_all(writer: &mut OutputWriter, files: &BTreeMap<String, String>) -> Result<()> {
    for (path, contents) in files {
        if let Err(e) = writer.write(path, contents) {
            writer.rollback();
            return Err(e);
        }
    }
    Ok(())
}
