mod common;

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use common::{read_histogram_csv, read_pajek, write_synthetic_inputs};
use corrnet::market::{
    compute_log_returns, load_price_panel, normalize_returns, IngestOptions, ReturnOptions,
};
use corrnet::report::{
    run, run_pipeline, NgChoice, PipelineConfig, Stage, Target, ThresholdChoice,
};
use corrnet::spectral::{correlation_matrix, eigendecompose};
use corrnet::synthetic::{write_inputs, FactorModel};

fn tree(dir: &Path) -> BTreeMap<String, Vec<u8>> {
    let mut out = BTreeMap::new();
    let mut stack = vec![dir.to_path_buf()];
    while let Some(d) = stack.pop() {
        for entry in fs::read_dir(&d).unwrap() {
            let p = entry.unwrap().path();
            if p.is_dir() {
                stack.push(p);
            } else {
                let rel = p.strip_prefix(dir).unwrap().to_string_lossy().into_owned();
                out.insert(rel, fs::read(&p).unwrap());
            }
        }
    }
    out
}

fn json(path: &Path) -> serde_json::Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn four_assets_with_defaults() {
    let dir = tempfile::tempdir().unwrap();
    let (prices, meta) = write_synthetic_inputs(&dir.path().join("in"), 4, 500, 1);
    let out = dir.path().join("out");
    let result = run_pipeline(&PipelineConfig::new(prices, meta, &out)).unwrap();

    let r = json(&out.join("report.json"));
    assert_eq!(r["schema_version"], 1);
    assert_eq!(r["tails"].as_array().unwrap().len(), 4);
    for t in r["tails"].as_array().unwrap() {
        assert!(t["positive"]["alpha"].as_f64().unwrap() > 0.0);
        assert!(t["negative"]["alpha"].as_f64().unwrap() > 0.0);
    }
    assert_eq!(r["spectrum"]["eigenvalues"].as_array().unwrap().len(), 4);
    assert_eq!(r["mst"]["edges"].as_array().unwrap().len(), 3);
    // Six group modes cannot fit in four assets; all three non-leading ones are used.
    assert_eq!(r["modes"]["n_g_requested"], 6);
    assert_eq!(r["modes"]["n_g"], 3);
    assert_eq!(r["run"]["seed"], 1);
    assert_eq!(r["run"]["config"]["tail_fraction"], 0.1);
    assert!(result.files.iter().any(|f| f.ends_with("mst.net")));

    let net = read_pajek(&fs::read_to_string(out.join("mst.net")).unwrap());
    assert_eq!(net.edges.len(), 3);
}

#[test]
fn auto_ng_on_planted_panel() {
    let dir = tempfile::tempdir().unwrap();
    let model = FactorModel::two_groups();
    let panel = model
        .sample_prices(
            17,
            0.006,
            chrono::NaiveDate::from_ymd_opt(1995, 1, 2).unwrap(),
        )
        .unwrap();
    let (prices, meta) = write_inputs(&panel, &dir.path().join("in")).unwrap();
    let mut cfg = PipelineConfig::new(prices, meta, dir.path().join("out"));
    cfg.n_g = NgChoice::Auto;
    cfg.surrogates = 2;
    let out = run_pipeline(&cfg).unwrap();
    let modes = out.report.modes.unwrap();
    assert_eq!(modes.n_g, 2);
    assert_eq!(modes.n_g_auto, 2);
    let r = json(&dir.path().join("out/report.json"));
    assert_eq!(r["modes"]["n_g"], 2);
    assert_eq!(r["modes"]["n_g_requested"], "auto");
    assert_eq!(r["threshold"]["chosen_by"], "sweep");
    assert_eq!(
        r["threshold"]["graph"]["components"]
            .as_array()
            .unwrap()
            .len(),
        3
    );
}

#[test]
fn missing_metadata_fails_at_ingest() {
    let dir = tempfile::tempdir().unwrap();
    let (prices, _) = write_synthetic_inputs(&dir.path().join("in"), 4, 200, 2);
    let out = dir.path().join("out");
    let cfg = PipelineConfig::new(prices, dir.path().join("missing.csv"), &out);
    let err = run_pipeline(&cfg).unwrap_err();
    assert_eq!(err.stage, Stage::Ingest);
    assert!(err.to_string().starts_with("ingest stage failed"));
    assert!(!out.exists());
}

#[test]
fn missing_metadata_exits_nonzero() {
    let dir = tempfile::tempdir().unwrap();
    let (prices, _) = write_synthetic_inputs(&dir.path().join("in"), 4, 200, 2);
    let status = std::process::Command::new(env!("CARGO_BIN_EXE_corrnet"))
        .args(["report", "--prices"])
        .arg(&prices)
        .arg("--meta")
        .arg(dir.path().join("missing.csv"))
        .arg("--out-dir")
        .arg(dir.path().join("out"))
        .output()
        .unwrap();
    assert!(!status.status.success());
    assert!(String::from_utf8_lossy(&status.stderr).contains("ingest"));
    assert!(!dir.path().join("out").exists());
}

#[test]
fn pegged_series_fails_at_returns_without_output() {
    let dir = tempfile::tempdir().unwrap();
    let in_dir = dir.path().join("in");
    fs::create_dir_all(&in_dir).unwrap();
    fs::write(
        in_dir.join("meta.csv"),
        "index,code,name,market_class,region\n1,AAA,a,developed,x\n2,PEG,p,frontier,y\n",
    )
    .unwrap();
    let mut table = String::from("date,AAA,PEG\n");
    for d in 1..=20 {
        table.push_str(&format!(
            "2001-01-{d:02},{},3.75\n",
            1.0 + 0.01 * (d % 3) as f64
        ));
    }
    fs::write(in_dir.join("prices.csv"), table).unwrap();
    let out = dir.path().join("out");
    let cfg = PipelineConfig::new(in_dir.join("prices.csv"), in_dir.join("meta.csv"), &out);
    let err = run_pipeline(&cfg).unwrap_err();
    assert_eq!(err.stage, Stage::Returns);
    assert!(!out.exists());
}

#[test]
fn reruns_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let (prices, meta) = write_synthetic_inputs(&dir.path().join("in"), 12, 400, 3);
    let mut cfg = PipelineConfig::new(prices, meta, dir.path().join("a"));
    cfg.seed = 77;
    cfg.surrogates = 3;
    run_pipeline(&cfg).unwrap();
    cfg.out_dir = dir.path().join("b");
    run_pipeline(&cfg).unwrap();
    let a = tree(&dir.path().join("a"));
    let b = tree(&dir.path().join("b"));
    assert!(a.len() > 20);
    assert_eq!(a, b);

    // A different seed changes only the surrogate-dependent artifacts.
    cfg.seed = 78;
    cfg.out_dir = dir.path().join("c");
    run_pipeline(&cfg).unwrap();
    let c = tree(&dir.path().join("c"));
    assert_eq!(a["spectrum.csv"], c["spectrum.csv"]);
    assert_ne!(a["surrogate_spectrum.csv"], c["surrogate_spectrum.csv"]);
}

#[test]
fn report_eigenvalues_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let (prices, meta) = write_synthetic_inputs(&dir.path().join("in"), 10, 300, 4);
    let cfg = PipelineConfig::new(&prices, &meta, dir.path().join("out"));
    run(&cfg, Target::Spectrum).unwrap();

    // Recompute independently of the pipeline's own bookkeeping.
    let panel = load_price_panel(&prices, &meta, &IngestOptions::default()).unwrap();
    let rp = normalize_returns(&compute_log_returns(&panel, &ReturnOptions::default()).unwrap())
        .unwrap();
    let sd = eigendecompose(&correlation_matrix(&rp).unwrap()).unwrap();

    let r = json(&dir.path().join("out/report.json"));
    let parsed: Vec<f64> = r["spectrum"]["eigenvalues"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_f64().unwrap())
        .collect();
    assert_eq!(parsed.len(), 10);
    for (a, b) in parsed.iter().zip(sd.eigenvalues()) {
        assert!((a - b).abs() < 1e-10);
    }
    // The spectrum target stops before the decomposition.
    assert!(r.get("modes").is_none());
    assert!(!dir.path().join("out/mst.net").exists());
}

#[test]
fn histograms_resum_to_one() {
    let dir = tempfile::tempdir().unwrap();
    let (prices, meta) = write_synthetic_inputs(&dir.path().join("in"), 8, 300, 5);
    let out = dir.path().join("out");
    let mut cfg = PipelineConfig::new(prices, meta, &out);
    cfg.surrogates = 2;
    run_pipeline(&cfg).unwrap();
    for name in [
        "eigenvalue_histogram.csv",
        "eigenvector_histogram.csv",
        "element_histogram.csv",
    ] {
        let rows = read_histogram_csv(&fs::read_to_string(out.join(name)).unwrap());
        let mut by_series: BTreeMap<String, Vec<(f64, f64)>> = BTreeMap::new();
        for (c, d, s) in rows {
            by_series.entry(s.unwrap()).or_default().push((c, d));
        }
        assert!(!by_series.is_empty());
        for (series, bins) in by_series {
            assert!(bins.windows(2).all(|w| w[0].0 < w[1].0), "{name}/{series}");
            let width = if bins.len() > 1 {
                bins[1].0 - bins[0].0
            } else {
                1.0
            };
            let mass: f64 = bins.iter().map(|b| b.1 * width).sum();
            assert!((mass - 1.0).abs() < 1e-9, "{name}/{series}: {mass}");
        }
    }
}

#[test]
fn fixed_threshold_above_every_entry_gives_empty_graph() {
    let dir = tempfile::tempdir().unwrap();
    let (prices, meta) = write_synthetic_inputs(&dir.path().join("in"), 6, 300, 6);
    let out = dir.path().join("out");
    let mut cfg = PipelineConfig::new(prices, meta, &out);
    cfg.c_th = ThresholdChoice::Fixed(5.0);
    cfg.surrogates = 1;
    run(&cfg, Target::Threshnet).unwrap();
    let r = json(&out.join("report.json"));
    assert_eq!(r["threshold"]["chosen_by"], "fixed");
    assert_eq!(r["threshold"]["graph"]["edges"], serde_json::json!([]));
    let g = json(&out.join("threshold.json"));
    assert_eq!(g["edges"], serde_json::json!([]));
    let net = read_pajek(&fs::read_to_string(out.join("threshold.net")).unwrap());
    assert!(net.edges.is_empty());
    assert_eq!(net.vertices.len(), 6);
}

#[test]
fn ingest_target_writes_aligned_prices() {
    let dir = tempfile::tempdir().unwrap();
    let (prices, meta) = write_synthetic_inputs(&dir.path().join("in"), 3, 50, 7);
    let out = dir.path().join("out");
    let written = run(&PipelineConfig::new(&prices, &meta, &out), Target::Ingest).unwrap();
    assert_eq!(written.files.len(), 2);
    // The aligned table is itself valid input.
    assert_eq!(
        fs::read(out.join("prices.csv")).unwrap(),
        fs::read(&prices).unwrap()
    );
    let r = json(&out.join("report.json"));
    assert_eq!(r["run"]["n_dates"], 51);
    assert!(r.get("tails").is_none());
}

#[test]
fn invalid_configuration_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let (prices, meta) = write_synthetic_inputs(&dir.path().join("in"), 3, 50, 7);
    let mut cfg = PipelineConfig::new(prices, meta, dir.path().join("out"));
    cfg.tail_fraction = 0.9;
    assert!(run_pipeline(&cfg).is_err());
}
