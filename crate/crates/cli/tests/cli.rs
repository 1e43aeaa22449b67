use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use ppr_core::experiment::{read_csv, CSV_HEADER};
use ppr_core::instances::{check_swappable, SwapQuadruple};
use ppr_core::Graph;

fn ppr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ppr")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn k3(dir: &Path) -> String {
    let p = dir.join("k3.graph");
    fs::write(&p, "3 3\n0 1\n1 2\n0 2\n").unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn estimate_bp_on_k2() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("k2.graph");
    fs::write(&g, "2 1\n0 1\n").unwrap();
    let out = ppr(&["estimate", "--algo", "bp", "--graph", g.to_str().unwrap(), "--target", "1", "--delta", "0.1"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let recs = read_csv(&out.stdout[..]).unwrap();
    assert_eq!(recs.len(), 1);
    assert_eq!(recs[0].queries_jump, 0);
    assert!(String::from_utf8_lossy(&out.stdout).starts_with(CSV_HEADER));
}

#[test]
fn single_node_models() {
    let dir = tempfile::tempdir().unwrap();
    let g = k3(dir.path());
    let ok = ppr(&["estimate", "--algo", "single-node", "--model", "jump,sorted,adj", "--graph", &g, "--target", "0"]);
    assert_eq!(code(&ok), 0);
    let rec = &read_csv(&ok.stdout[..]).unwrap()[0];
    assert!(rec.queries_sorted >= 1);
    let bad = ppr(&["estimate", "--algo", "single-node", "--model", "jump", "--graph", &g, "--target", "0"]);
    assert_eq!(code(&bad), 3);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let g = k3(dir.path());
    let missing = dir.path().join("missing.graph");
    assert_eq!(code(&ppr(&["estimate", "--algo", "bp", "--graph", missing.to_str().unwrap(), "--target", "0"])), 2);
    let broken = dir.path().join("broken.graph");
    fs::write(&broken, "3 2\n0 1\n1 1\n").unwrap();
    assert_eq!(code(&ppr(&["exact", "--graph", broken.to_str().unwrap(), "--target", "0"])), 2);
    assert_eq!(code(&ppr(&["estimate", "--algo", "warp", "--graph", &g])), 4);
    assert_eq!(code(&ppr(&["verify", "--suite", "nope"])), 4);
    assert_eq!(code(&ppr(&["estimate", "--algo", "bp", "--graph", &g, "--target", "7"])), 4);
    assert_eq!(code(&ppr(&["--c", "0.7", "exact", "--graph", &g, "--target", "0"])), 4);
    assert_eq!(code(&ppr(&["--help"])), 0);
    let few = ppr(&[
        "bench",
        "--family",
        "sn-worst",
        "--algo",
        "mc",
        "--axis",
        "inv-delta",
        "--values",
        "2,4",
        "--trials",
        "5",
    ]);
    assert_eq!(code(&few), 4);
    let miss = ppr(&[
        "bench",
        "--family",
        "sn-worst",
        "--algo",
        "mc",
        "--axis",
        "inv-delta",
        "--values",
        "2,4,8",
        "--n",
        "64",
        "--m",
        "256",
        "--trials",
        "5",
        "--target-exponent",
        "3.0",
    ]);
    assert_eq!(code(&miss), 1);
    assert!(String::from_utf8_lossy(&miss.stdout).contains("FAIL"));
}

#[test]
fn csv_round_trip_and_reproducibility() {
    let dir = tempfile::tempdir().unwrap();
    let g = k3(dir.path());
    let csv = dir.path().join("out.csv");
    let args = |path: &str| {
        vec![
            "--seed".to_string(),
            "11".into(),
            "--csv".into(),
            path.into(),
            "estimate".into(),
            "--algo".into(),
            "bippr-avg".into(),
            "--graph".into(),
            g.clone(),
            "--source".into(),
            "0".into(),
            "--target".into(),
            "2".into(),
            "--trials".into(),
            "4".into(),
            "--with-exact".into(),
        ]
    };
    let a: Vec<String> = args(csv.to_str().unwrap());
    assert_eq!(code(&ppr(&a.iter().map(String::as_str).collect::<Vec<_>>())), 0);
    let first = fs::read(&csv).unwrap();
    let recs = read_csv(&first[..]).unwrap();
    assert_eq!(recs.len(), 4);
    assert_eq!(recs.iter().map(|r| r.seed).collect::<Vec<_>>(), vec![11, 12, 13, 14]);
    for r in &recs {
        assert_eq!(r.queries_total, r.counts().total());
        assert!(r.exact.is_some() && r.rel_err.is_some());
    }
    let mut again = Vec::new();
    ppr_core::experiment::write_csv(&mut again, &recs).unwrap();
    assert_eq!(again, first);
    assert_eq!(code(&ppr(&a.iter().map(String::as_str).collect::<Vec<_>>())), 0);
    assert_eq!(fs::read(&csv).unwrap(), first);
    let mut seq = a.clone();
    seq.push("--sequential".into());
    assert_eq!(code(&ppr(&seq.iter().map(String::as_str).collect::<Vec<_>>())), 0);
    assert_eq!(fs::read(&csv).unwrap(), first);
}

#[test]
fn gen_writes_swaps() {
    let dir = tempfile::tempdir().unwrap();
    let base = dir.path().join("base.graph");
    let sw = dir.path().join("swaps");
    let out = ppr(&[
        "--delta",
        "0.1",
        "--seed",
        "3",
        "gen",
        "--family",
        "sp-worst",
        "--n",
        "40",
        "--m",
        "80",
        "--out",
        base.to_str().unwrap(),
        "--swap-out",
        sw.to_str().unwrap(),
        "--swaps",
        "4",
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let g = Graph::parse(&fs::read_to_string(&base).unwrap()).unwrap();
    let manifest = fs::read_to_string(sw.join("swaps.tsv")).unwrap();
    let mut lines = manifest.lines();
    assert_eq!(lines.next(), Some("index\tq1\tq2\tq3\tq4"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 4);
    for row in rows {
        let f: Vec<usize> = row.split('\t').map(|x| x.parse().unwrap()).collect();
        let q = SwapQuadruple([f[1], f[2], f[3], f[4]]);
        check_swappable(&g, &q).unwrap();
        let h = Graph::parse(&fs::read_to_string(sw.join(format!("swap_{}.graph", f[0]))).unwrap()).unwrap();
        assert_eq!(h.m(), g.m());
        assert!(h.has_edge(q.0[0], q.0[2]) && !h.has_edge(q.0[0], q.0[1]));
    }
}

#[test]
fn verify_separation_example() {
    let out =
        ppr(&["verify", "--suite", "separation", "--family", "sp-worst", "--n", "60", "--m", "120", "--delta", "0.05"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.lines().nth(1).unwrap().contains("\tpass\t"), "{text}");
}

#[test]
fn verify_accuracy_hybrid() {
    let out = ppr(&["verify", "--suite", "accuracy", "--algo", "hybrid"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));
    assert!(String::from_utf8_lossy(&out.stdout).contains("violation_rate"));
}

#[test]
fn exact_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let g = k3(dir.path());
    let out = ppr(&["exact", "--graph", &g, "--target", "0"]);
    let text = String::from_utf8_lossy(&out.stdout);
    let vals: Vec<f64> = text.lines().skip(1).map(|l| l.split('\t').nth(1).unwrap().parse().unwrap()).collect();
    // K3 at α = 0.2: π(t,t) = α(1+α)/((1+α) − (1−α)²) = 3/7, π(u,t) = 2/7
    assert_eq!(vals.len(), 3);
    assert!((vals[0] - 3.0 / 7.0).abs() < 1e-12);
    assert!((vals[1] - 2.0 / 7.0).abs() < 1e-12 && (vals[2] - 2.0 / 7.0).abs() < 1e-12);
    assert!((vals.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    let pr = ppr(&["exact", "--graph", &g, "--pagerank", "1"]);
    let v: f64 = String::from_utf8_lossy(&pr.stdout).trim().parse().unwrap();
    assert!((v - 1.0 / 3.0).abs() < 1e-12);
}
