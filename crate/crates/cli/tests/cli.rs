use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use chaoskit::cgr::Symmetry;
use chaoskit::distribution::{total_variation_l1, KmerDistribution, MARGINAL_TOLERANCE};
use chaoskit::imaging::{read_pgm, remap_image};
use chaoskit::seq::{parse_fasta, NonAcgtPolicy};
use tempfile::TempDir;

fn chaoskit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chaoskit")).args(args).output().expect("binary runs")
}

fn ok(args: &[&str]) -> Output {
    let out = chaoskit(args);
    assert!(out.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    out
}

fn code(args: &[&str]) -> i32 {
    chaoskit(args).status.code().unwrap()
}

struct Work(TempDir);

impl Work {
    fn new() -> Work {
        Work(tempfile::tempdir().unwrap())
    }

    fn path(&self, name: &str) -> PathBuf {
        self.0.path().join(name)
    }

    fn p(&self, name: &str) -> String {
        self.path(name).to_str().unwrap().to_string()
    }

    fn fasta(&self, name: &str, body: &str) -> String {
        fs::write(self.path(name), body).unwrap();
        self.p(name)
    }
}

fn read_theta(path: &Path) -> KmerDistribution {
    KmerDistribution::read_csv(&fs::read(path).unwrap()[..]).unwrap().0
}

#[test]
fn kmers_counts_example() {
    let w = Work::new();
    let input = w.fasta("x.fa", ">x\nATCGTATCCA\n");
    ok(&["kmers", "-i", &input, "-k", "3", "-o", &w.p("counts.csv")]);
    let csv = fs::read_to_string(w.path("counts.csv")).unwrap();
    assert!(csv.starts_with("kmer,count\n"));
    assert!(csv.lines().any(|l| l == "ATC,2"));
    assert_eq!(csv.lines().count(), 1 + 64);
}

#[test]
fn reconstruct_from_counts_and_distribution() {
    let w = Work::new();
    let input = w.fasta("x.fa", ">x\nATCGTATCCA\n");
    ok(&["kmers", "-i", &input, "-k", "3", "-o", &w.p("counts.csv")]);
    ok(&["reconstruct", "--theta", &w.p("counts.csv"), "-n", "10", "-o", &w.p("a.fa"), "--report", &w.p("a.json")]);
    let report: serde_json::Value = serde_json::from_str(&fs::read_to_string(w.path("a.json")).unwrap()).unwrap();
    assert_eq!(report["achieved_l1"], serde_json::json!(0.0));
    assert_eq!(report["used_direct_eulerian_path"], serde_json::json!(true));

    ok(&["dist", "-i", &input, "-k", "3", "-o", &w.p("theta.csv")]);
    ok(&["reconstruct", "--theta", &w.p("theta.csv"), "-n", "10", "-o", &w.p("b.fa"), "--report", &w.p("b.json")]);
    let report: serde_json::Value = serde_json::from_str(&fs::read_to_string(w.path("b.json")).unwrap()).unwrap();
    assert_eq!(report["achieved_l1"], serde_json::json!(0.0));
    let recs = parse_fasta(&fs::read(w.path("b.fa")).unwrap()[..], NonAcgtPolicy::Fail).unwrap();
    assert_eq!(recs[0].seq.len(), 10);
}

#[test]
fn symmetry_then_render_matches_remap() {
    let w = Work::new();
    let input = w.fasta("x.fa", ">x\nGATTACAGGCTTAACGGATCCATGCAAAATTTGCGCACGTTGCA\n");
    ok(&["symmetry", "-i", &input, "--sigma", "(A C G T)", "-o", &w.p("y.fa")]);
    ok(&["cgr", "render", "-i", &input, "-r", "4", "-o", &w.p("x.pgm")]);
    ok(&["cgr", "render", "-i", &w.p("y.fa"), "-r", "4", "-o", &w.p("y.pgm")]);
    let original = read_pgm(&fs::read(w.path("x.pgm")).unwrap()).unwrap();
    let permuted = read_pgm(&fs::read(w.path("y.pgm")).unwrap()).unwrap();
    assert_eq!(permuted, remap_image(&original, Symmetry::R3).unwrap());
    assert_ne!(permuted, original);
}

#[test]
fn symmetry_rejects_non_square_permutations() {
    let w = Work::new();
    let input = w.fasta("x.fa", ">x\nACGT\n");
    assert_eq!(code(&["symmetry", "-i", &input, "--sigma", "(A C)", "-o", &w.p("y.fa")]), 1);
    assert_eq!(code(&["symmetry", "-i", &input, "--sigma", "(A X)", "-o", &w.p("y.fa")]), 1);
}

#[test]
fn pipeline_closure_within_bound() {
    let w = Work::new();
    let fixture = concat!(env!("CARGO_MANIFEST_DIR"), "/../core/tests/fixtures/gc_rich.fasta");
    for k in ["2", "4"] {
        ok(&["dist", "-i", fixture, "-k", k, "-o", &w.p("theta.csv")]);
        ok(&[
            "reconstruct",
            "--theta",
            &w.p("theta.csv"),
            "-n",
            "20000",
            "-o",
            &w.p("r.fa"),
            "--report",
            &w.p("r.json"),
        ]);
        ok(&["dist", "-i", &w.p("r.fa"), "-k", k, "-o", &w.p("back.csv")]);
        let report: serde_json::Value = serde_json::from_str(&fs::read_to_string(w.path("r.json")).unwrap()).unwrap();
        let l1 = total_variation_l1(&read_theta(&w.path("back.csv")), &read_theta(&w.path("theta.csv"))).unwrap();
        let rounding = report["rounding_l1"].as_f64().unwrap();
        let bound = report["bound_l1"].as_f64().unwrap();
        assert!(l1 <= rounding + bound + 1e-9, "k={k}: {l1} > {rounding} + {bound}");
    }
}

#[test]
fn sample_is_deterministic_and_consistent() {
    let w = Work::new();
    ok(&["sample", "-k", "3", "--iterations", "500", "--seed", "7", "-o", &w.p("a.csv")]);
    ok(&["sample", "-k", "3", "--iterations", "500", "--seed", "7", "-o", &w.p("b.csv")]);
    ok(&["sample", "-k", "3", "--iterations", "500", "-o", &w.p("c.csv")]);
    let a = fs::read(w.path("a.csv")).unwrap();
    assert_eq!(a, fs::read(w.path("b.csv")).unwrap());
    assert_ne!(a, fs::read(w.path("c.csv")).unwrap());
    let theta = read_theta(&w.path("a.csv"));
    assert!(chaoskit::distribution::max_marginal_residual(&theta).unwrap() <= MARGINAL_TOLERANCE);
}

#[test]
fn reconstruct_from_sampled_target_with_image() {
    let w = Work::new();
    ok(&[
        "reconstruct",
        "-k",
        "2",
        "--iterations",
        "200",
        "-n",
        "3201",
        "-o",
        &w.p("s.fa"),
        "--report",
        &w.p("s.json"),
        "--image",
        &w.p("s.pgm"),
        "-r",
        "6",
    ]);
    let report: serde_json::Value = serde_json::from_str(&fs::read_to_string(w.path("s.json")).unwrap()).unwrap();
    assert!(report["achieved_l1"].as_f64().unwrap() <= 0.01);
    let img = read_pgm(&fs::read(w.path("s.pgm")).unwrap()).unwrap();
    assert_eq!((img.width(), img.height()), (64, 64));
}

#[test]
fn fcgr_modes_and_image() {
    let w = Work::new();
    let input = w.fasta("x.fa", ">x\nAGCA\n>y\nTTGCAN\n");
    for mode in ["count", "grid", "kronecker"] {
        ok(&["fcgr", "-i", &input, "-k", "2", "--mode", mode, "-o", &w.p(&format!("{mode}.csv"))]);
    }
    let count = fs::read_to_string(w.path("count.csv")).unwrap();
    assert_eq!(count, fs::read_to_string(w.path("grid.csv")).unwrap());
    assert_ne!(count, fs::read_to_string(w.path("kronecker.csv")).unwrap());
    assert!(count.starts_with("k=2\n"));
    let total: u64 = count.lines().skip(1).flat_map(|l| l.split(',')).map(|c| c.parse::<u64>().unwrap()).sum();
    assert_eq!(total, 3 + 4);

    ok(&["fcgr", "-i", &input, "-k", "1", "-o", &w.p("m.csv"), "--image", &w.p("m.pgm"), "--scale", "linear"]);
    let img = read_pgm(&fs::read(w.path("m.pgm")).unwrap()).unwrap();
    assert_eq!((img.width(), img.height()), (2, 2));
}

#[test]
fn trajectory_tsv() {
    let w = Work::new();
    let input = w.fasta("x.fa", ">x\nACG\n");
    ok(&["cgr", "trajectory", "-i", &input, "-o", &w.p("t.tsv")]);
    let tsv = fs::read_to_string(w.path("t.tsv")).unwrap();
    assert_eq!(tsv.lines().count(), 5);
    assert_eq!(tsv.lines().last().unwrap(), "3\t0.125\t0.625");
}

#[test]
fn stdin_and_stdout() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_chaoskit"))
        .args(["kmers", "-i", "-", "-k", "1", "-o", "-"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    use std::io::Write;
    child.stdin.take().unwrap().write_all(b">x\nAACG\n").unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "kmer,count\nA,2\nC,1\nG,1\nT,0\n");
}

#[test]
fn dist_reports_marginals() {
    let w = Work::new();
    let input = w.fasta("x.fa", ">x\nACGTACGTAC\n");
    let out = ok(&["dist", "-i", &input, "-k", "2", "-o", &w.p("d.csv"), "--check-marginals"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("max marginal residual"));
}

#[test]
fn exit_codes() {
    let w = Work::new();
    let input = w.fasta("x.fa", ">x\nACGT\n");
    assert_eq!(code(&["frobnicate"]), 1);
    assert_eq!(code(&["kmers", "--bogus"]), 1);
    assert!(!chaoskit(&["kmers", "--bogus"]).stderr.is_empty());
    assert_eq!(code(&["kmers", "-i", &input, "-k", "0", "-o", &w.p("o.csv")]), 1);
    assert_eq!(code(&["kmers", "-i", &input, "-k", "5", "-o", &w.p("o.csv")]), 1);
    assert_eq!(code(&["kmers", "-i", &w.p("missing.fa"), "-k", "2", "-o", &w.p("o.csv")]), 2);
    assert_eq!(code(&["kmers", "-i", &input, "-k", "2", "-o", &w.p("no/such/dir/o.csv")]), 2);
    assert_eq!(code(&["reconstruct", "--theta", &w.p("missing.csv"), "-n", "10", "-o", &w.p("o.fa")]), 2);
    let bad = w.fasta("bad.fa", "ACGT\n");
    assert_eq!(code(&["kmers", "-i", &bad, "-k", "2", "-o", &w.p("o.csv")]), 1);
    assert_eq!(code(&["kmers", "-i", &input, "-k", "2", "--policy", "nope", "-o", &w.p("o.csv")]), 1);
    assert_eq!(code(&["--help"]), 0);
}

#[test]
fn thread_cap_is_validated() {
    let w = Work::new();
    let input = w.fasta("x.fa", ">x\nACGT\n>y\nGGTA\n");
    let run = |v: &str| {
        Command::new(env!("CARGO_BIN_EXE_chaoskit"))
            .args(["kmers", "-i", &input, "-k", "2", "-o", &w.p("o.csv")])
            .env("CHAOSKIT_THREADS", v)
            .output()
            .unwrap()
            .status
            .code()
            .unwrap()
    };
    assert_eq!(run("2"), 0);
    assert_eq!(run("zero"), 1);
}

#[test]
fn deterministic_outputs() {
    let w = Work::new();
    let fixture = concat!(env!("CARGO_MANIFEST_DIR"), "/../core/tests/fixtures/repeat_rich.fasta");
    for run in ["1", "2"] {
        ok(&["dist", "-i", fixture, "-k", "3", "-o", &w.p(&format!("d{run}.csv"))]);
        ok(&["reconstruct", "--theta", &w.p(&format!("d{run}.csv")), "-n", "5000", "-o", &w.p(&format!("r{run}.fa"))]);
        ok(&["cgr", "render", "-i", fixture, "-r", "5", "-o", &w.p(&format!("c{run}.pgm"))]);
    }
    for (stem, ext) in [("d", "csv"), ("r", "fa"), ("c", "pgm")] {
        assert_eq!(
            fs::read(w.path(&format!("{stem}1.{ext}"))).unwrap(),
            fs::read(w.path(&format!("{stem}2.{ext}"))).unwrap()
        );
    }
}
