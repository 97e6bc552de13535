use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use bubble_radius::harness::{load_dataset, write_dataset, DatasetStats, LoadOptions};
use bubble_radius::{exact_br, Graph};

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bubble-radius")).args(args).output().expect("binary runs")
}

fn path(dir: &Path, name: &str) -> String {
    dir.join(name).to_string_lossy().into_owned()
}

#[test]
fn generate_then_analyse() {
    let dir = tempfile::tempdir().unwrap();
    let prefix = path(dir.path(), "pol");
    let out = cli(&[
        "gen-polarized", "--n-red", "15", "--n-blue", "15", "--p-within", "0.2", "--p-cross", "0.02", "--seed", "4",
        &prefix,
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let edges = format!("{prefix}.edges.tsv");
    let colors = format!("{prefix}.colors.tsv");

    let stats = cli(&["stats", &edges, &colors, "--t", "8"]);
    assert!(stats.status.success());
    let text = String::from_utf8(stats.stdout).unwrap();
    assert!(text.starts_with(DatasetStats::HEADER));
    assert!(text.lines().nth(1).unwrap().starts_with("15\t15\t"));

    let br = cli(&["br", &edges, &colors, "--t", "8"]);
    assert_eq!(String::from_utf8(br.stdout).unwrap().lines().count(), 31);

    let rec = cli(&["recommend", &edges, &colors, "--t", "8", "-k", "3", "--color", "B"]);
    assert!(rec.status.success(), "{}", String::from_utf8_lossy(&rec.stderr));
    assert_eq!(String::from_utf8(rec.stdout).unwrap().lines().count(), 4);

    let rwcc = cli(&["rwcc", &edges, &colors, "--t", "8", "--backend", "mc", "--epsilon", "0.9"]);
    assert!(rwcc.status.success(), "{}", String::from_utf8_lossy(&rwcc.stderr));
}

#[test]
fn sweep_is_reproducible_and_writes_plot_data() {
    let dir = tempfile::tempdir().unwrap();
    let prefix = path(dir.path(), "pol");
    assert!(cli(&["gen-polarized", "--n-red", "12", "--n-blue", "12", "--p-within", "0.25", "--p-cross", "0.02", &prefix])
        .status
        .success());
    let edges = format!("{prefix}.edges.tsv");
    let colors = format!("{prefix}.colors.tsv");
    let plots = path(dir.path(), "plots");
    let mut csvs = Vec::new();
    for run in 0..2 {
        let csv = path(dir.path(), &format!("sweep{run}.csv"));
        let out = cli(&[
            "sweep", &edges, &colors, "--t", "6", "--k", "0,1,2,4", "--repetitions", "3", "--no-runtime", "--output",
            &csv, "--plot-dir", &plots,
        ]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        csvs.push(fs::read(&csv).unwrap());
    }
    assert_eq!(csvs[0], csvs[1]);
    let text = String::from_utf8(csvs.remove(0)).unwrap();
    assert!(text.starts_with("algo,K,pct_candidate,delta,pct_parochial,seed,runtime_ms\n"));
    assert_eq!(text.lines().count(), 1 + 5 * 4 * 3);
    assert!(Path::new(&plots).join("repbublik-plus_delta.tsv").exists());
}

#[test]
fn bad_input_exits_with_validation_code() {
    let dir = tempfile::tempdir().unwrap();
    let edges = path(dir.path(), "e.tsv");
    let colors = path(dir.path(), "c.tsv");
    fs::write(&edges, "0\t1\tx\n").unwrap();
    fs::write(&colors, "0\tR\n1\tB\n").unwrap();
    let out = cli(&["br", &edges, &colors]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 1"));
}

#[test]
fn gadget_from_set_file() {
    let dir = tempfile::tempdir().unwrap();
    let sets = path(dir.path(), "sets.txt");
    fs::write(&sets, "0 1\n1\n").unwrap();
    let prefix = path(dir.path(), "gadget");
    assert!(cli(&["gen-gadget", &sets, &prefix, "--t", "6"]).status.success());
    let ds = load_dataset(
        Path::new(&format!("{prefix}.edges.tsv")),
        Path::new(&format!("{prefix}.colors.tsv")),
        LoadOptions::default(),
    )
    .unwrap();
    let brs = exact_br(&ds.graph, 6).unwrap();
    assert_eq!(&brs.values()[..4], &[3.0, 3.0, 2.0, 2.0]);
}

#[test]
fn stats_survive_a_round_trip() {
    let g: Graph = bubble_radius::harness::generate_polarized(10, 14, 0.3, 0.05, 8).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let (e, c) = (dir.path().join("e.tsv"), dir.path().join("c.tsv"));
    write_dataset(&g, &e, &c).unwrap();
    let back = load_dataset(&e, &c, LoadOptions::default()).unwrap().graph;
    let a = DatasetStats::compute(&g, &exact_br(&g, 6).unwrap(), 3.0);
    let b = DatasetStats::compute(&back, &exact_br(&back, 6).unwrap(), 3.0);
    assert_eq!(a, b);
    assert_eq!(g.edges().len(), back.edges().len());
}
