use std::path::Path;
use std::process::{Command, Output};

use minorvc::oracle::BENCH_HEADER;

fn minorvc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_minorvc")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(minorvc(&[]).status.code(), Some(2));
    assert_eq!(minorvc(&["stats"]).status.code(), Some(2));
    assert_eq!(minorvc(&["stats", "--gen", "grid:3x3", "--input", "x"]).status.code(), Some(2));
    assert_eq!(minorvc(&["stats", "--gen", "nope:3"]).status.code(), Some(2));
    assert_eq!(minorvc(&["stats", "--gen", "grid:3x3", "--r", "0"]).status.code(), Some(2));
    assert_eq!(minorvc(&["stats", "--input", "/nonexistent/graph.txt"]).status.code(), Some(2));
    assert!(minorvc(&["--help"]).status.success());
}

#[test]
fn malformed_graph_reports_line() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("bad.txt");
    std::fs::write(&g, "graph 3 0 0\n0 1\n1 x\n").unwrap();
    let o = minorvc(&["stats", "--input", p(&g)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
}

#[test]
fn gen_then_stats_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.txt");
    assert!(minorvc(&["gen", "--gen", "planar:120", "--seed", "4", "--out", p(&g)]).status.success());
    let o = minorvc(&["stats", "--input", p(&g), "--r", "12", "--brute"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["brute_match"], true);
    assert_eq!(v["ecc"].as_array().unwrap().len(), 120);
}

#[test]
fn stats_directed_not_strongly_connected() {
    let o = minorvc(&["stats", "--gen", "planar-oriented:150", "--seed", "2", "--r", "15", "--brute"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["brute_match"], true);
    assert_eq!(v["hypothesis_violations"], 0);
    assert!(v.get("wiener").is_none());
}

#[test]
fn oracle_build_query_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    for (spec, seed) in [("planar", "5"), ("planar-oriented", "6")] {
        let g = dir.path().join("g.txt");
        let o = dir.path().join("o.bin");
        let gen = format!("{spec}:300");
        assert!(minorvc(&["gen", "--gen", &gen, "--seed", seed, "--out", p(&g)]).status.success());
        let b = minorvc(&["oracle-build", "--input", p(&g), "--r", "30", "--out", p(&o)]);
        assert!(b.status.success(), "{}", String::from_utf8_lossy(&b.stderr));
        let rep: serde_json::Value = serde_json::from_str(&stdout(&b)).unwrap();
        assert_eq!(rep["cap_ok"], true);
        let q = minorvc(&["oracle-query", "--oracle", p(&o), "--random", "20000", "--verify", p(&g)]);
        assert!(q.status.success(), "{}", String::from_utf8_lossy(&q.stderr));
        assert_eq!(stdout(&q).lines().count(), 20000);
        let summary: serde_json::Value = serde_json::from_str(String::from_utf8_lossy(&q.stderr).trim()).unwrap();
        assert_eq!(summary["verified"]["mismatches"], 0);
    }
}

#[test]
fn oracle_query_pairs_file_and_version_mismatch() {
    let dir = tempfile::tempdir().unwrap();
    let o = dir.path().join("o.bin");
    assert!(minorvc(&["oracle-build", "--gen", "grid:5x5", "--r", "5", "--out", p(&o)]).status.success());
    let pairs = dir.path().join("pairs.txt");
    std::fs::write(&pairs, "# corners\n0 24\n24 0\n12 12\n").unwrap();
    let q = minorvc(&["oracle-query", "--oracle", p(&o), "--pairs", p(&pairs)]);
    assert!(q.status.success());
    assert_eq!(stdout(&q), "0 24 8\n24 0 8\n12 12 0\n");

    let mut bytes = std::fs::read(&o).unwrap();
    bytes[4] ^= 0xff;
    std::fs::write(&o, bytes).unwrap();
    let q = minorvc(&["oracle-query", "--oracle", p(&o), "--pairs", p(&pairs)]);
    assert_eq!(q.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&q.stderr).contains("version"));
}

#[test]
fn unreachable_answers_print_inf() {
    let dir = tempfile::tempdir().unwrap();
    let (g, o, pairs) = (dir.path().join("g.txt"), dir.path().join("o.bin"), dir.path().join("p.txt"));
    std::fs::write(&g, "graph 3 1 0\n0 1\n1 2\n").unwrap();
    std::fs::write(&pairs, "0 2\n2 0\n").unwrap();
    assert!(minorvc(&["oracle-build", "--input", p(&g), "--r", "1", "--out", p(&o)]).status.success());
    assert_eq!(stdout(&minorvc(&["oracle-query", "--oracle", p(&o), "--pairs", p(&pairs)])), "0 2 2\n2 0 inf\n");
}

#[test]
fn vcdim_json_lines_deterministic_across_threads() {
    let args = ["vcdim", "--family", "lp-hat", "--gen", "grid:5x5", "--count", "4", "--terminals", "4"];
    let one = minorvc(&args);
    let four = minorvc(&[&args[..], &["--threads", "4"]].concat());
    assert!(one.status.success());
    assert_eq!(stdout(&one), stdout(&four));
    for line in stdout(&one).lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert!(v["dimension"].as_u64().unwrap() <= 4);
        assert_eq!(v["family"], "lp-hat");
    }
}

#[test]
fn vcdim_expectation_failure_exits_1() {
    // Shortest-path trees of the r=3 gadget shatter X, so "at most 2" fails.
    let o = minorvc(&["vcdim", "--family", "sp-trees", "--gen", "gadget:3", "--cap", "3", "--expect-max", "2"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn lowerbound_writes_graph_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("gadget.txt");
    let o = minorvc(&["lowerbound", "--r", "3", "--graph-out", p(&g), "--unweighted"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["shattering"]["realized"], 8);
    assert_eq!(v["unweighted"]["pass"], true);
    assert_eq!(v["x"].as_array().unwrap().len(), 3);
    let graph = minorvc::io::read_graph(&g).unwrap();
    assert_eq!(graph.m(), v["edges"].as_u64().unwrap() as usize);
    assert_eq!(minorvc(&["lowerbound", "--r", "0"]).status.code(), Some(2));
}

#[test]
fn bench_csv_schema_is_stable() {
    let o = minorvc(&["bench", "--sizes", "200,400", "--queries", "1000", "--seed", "3"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let golden = std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden/bench_header.csv")).unwrap();
    assert_eq!(text.lines().next().unwrap(), golden.trim_end());
    assert_eq!(golden.trim_end(), BENCH_HEADER);
    let rows: Vec<Vec<String>> =
        text.lines().skip(1).map(|l| l.split(',').map(str::to_string).collect()).collect();
    assert_eq!(rows.len(), 2);
    // Everything except the timing columns is a function of the seed.
    let again = stdout(&minorvc(&["bench", "--sizes", "200,400", "--queries", "1000", "--seed", "3", "--threads", "2"]));
    for (a, b) in rows.iter().zip(again.lines().skip(1)) {
        let b: Vec<&str> = b.split(',').collect();
        for (k, col) in BENCH_HEADER.split(',').enumerate() {
            if !col.ends_with("_ms") && !col.ends_with("_ns") {
                assert_eq!(a[k], b[k], "column {col}");
            }
        }
        assert_eq!(a[9], "true");
    }
}

#[test]
fn division_dump_golden() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().join("div.txt");
    assert!(minorvc(&["stats", "--gen", "grid:4x4", "--r", "4", "--dump-division", p(&d)]).status.success());
    let golden = std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden/grid4x4_r4.div")).unwrap();
    assert_eq!(std::fs::read_to_string(&d).unwrap(), golden);
}
