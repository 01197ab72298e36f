use std::fs;
use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

const BRANCHED_ABAB: &str = "child\tparent\tlabel\n1\t-1\t0\n2\t1\tb\n3\t2\ta\n4\t3\tb\n5\t4\ta\n6\t3\tc\n";

fn run(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_trie-runs"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn runs_on_abab_string() {
    let o = run(&["runs", "--format", "strings", "--direction", "rootward"], "abab\n");
    assert!(o.status.success());
    let runs: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(
        runs,
        serde_json::json!([{"deep": 5, "shallow": 1, "period": 2, "length": 4, "exponent_num": 2, "exponent_den": 1}])
    );
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("1 run over 5 edges"));
}

#[test]
fn runs_writes_output_file_and_stats() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "branched.tsv", BRANCHED_ABAB);
    let out = dir.path().join("runs.json");
    let o = run(&["runs", "--input", &input, "--output", out.to_str().unwrap(), "--stats"], "");
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let runs: serde_json::Value = serde_json::from_str(&fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(runs.as_array().unwrap().len(), 1);
    let stats: serde_json::Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(stats["sum_exponents"], "2/1");
    assert_eq!(stats["edge_count"], 6);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["runs", "--format", "strings"], "").status.code(), Some(2));
    assert_eq!(run(&["runs"], "").status.code(), Some(2));
    let dup = "child\tparent\tlabel\n1\t-1\t0\n2\t1\ta\n3\t1\ta\n";
    assert_eq!(run(&["runs"], dup).status.code(), Some(3));
    let cycle = "child\tparent\tlabel\n1\t-1\t0\n2\t3\ta\n3\t2\tb\n";
    assert_eq!(run(&["runs"], cycle).status.code(), Some(3));
    let bad = run(&["runs"], "child\tparent\tlabel\n1\t-1\t0\n2\t1\n");
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("line 3"));
    assert_eq!(run(&["count"], "no header\n").status.code(), Some(2));
}

#[test]
fn count_e2_and_single_edge() {
    let o = run(&["count"], BRANCHED_ABAB);
    assert_eq!(stdout(&o), "1 run; shallow endpoints: [(root, p=2)]\n");
    let o = run(&["count"], "child\tparent\tlabel\n1\t-1\t0\n");
    assert_eq!(stdout(&o), "0 runs\n");
}

#[test]
fn count_agrees_with_runs() {
    let trie = stdout(&run(&["gen", "--size", "3000", "--alphabet", "2", "--seed", "4"], ""));
    let runs: Vec<serde_json::Value> = serde_json::from_slice(&run(&["runs"], &trie).stdout).unwrap();
    let count = stdout(&run(&["count"], &trie));
    assert!(count.starts_with(&format!("{} run", runs.len())), "{count}");
}

#[test]
fn parallel_output_equals_sequential() {
    let trie = stdout(&run(&["gen", "--size", "20000", "--seed", "8"], ""));
    let seq = run(&["runs"], &trie);
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_trie-runs"));
    cmd.args(["runs", "--parallel"]).env("TRIE_RUNS_THREADS", "3");
    cmd.stdin(Stdio::piped()).stdout(Stdio::piped()).stderr(Stdio::piped());
    let mut child = cmd.spawn().unwrap();
    child.stdin.take().unwrap().write_all(trie.as_bytes()).unwrap();
    let par = child.wait_with_output().unwrap();
    assert!(par.status.success());
    assert_eq!(seq.stdout, par.stdout);
}

#[test]
fn bad_thread_cap_is_rejected() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_trie-runs"))
        .args(["count", "--parallel"])
        .env("TRIE_RUNS_THREADS", "many")
        .stdin(Stdio::piped())
        .stdout(Stdio::null())
        .stderr(Stdio::null())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(BRANCHED_ABAB.as_bytes()).unwrap();
    assert_eq!(child.wait().unwrap().code(), Some(2));
}

#[test]
fn gen_is_deterministic_and_round_trips() {
    for kind in ["random", "path", "fibonacci-path", "thue-morse-path", "caterpillar"] {
        let args = ["gen", "--kind", kind, "--size", "400", "--alphabet", "3", "--seed", "12"];
        let a = stdout(&run(&args, ""));
        assert_eq!(a, stdout(&run(&args, "")), "{kind}");
        assert_eq!(a.lines().count(), 401, "{kind}");
        // Re-serializing a parsed edge list reproduces it byte for byte.
        let trie = trie_runs::CommonSuffixTrie::from_edges(&trie_runs::formats::parse_edge_list(&a).unwrap()).unwrap();
        assert_eq!(trie_runs::formats::write_edge_list(&trie), a, "{kind}");
    }
}

#[test]
fn gen_path_pattern() {
    let a = stdout(&run(&["gen", "--kind", "path", "--pattern", "ab", "--size", "7"], ""));
    let labels: Vec<&str> = a.lines().skip(2).map(|l| l.rsplit('\t').next().unwrap()).collect();
    assert_eq!(labels, ["98", "97", "98", "97", "98", "97"]);
}

#[test]
fn gen_rejects_bad_specs() {
    assert_eq!(
        run(&["gen", "--kind", "caterpillar", "--alphabet", "1", "--branching", "0.5", "--size", "9"], "")
            .status
            .code(),
        Some(2)
    );
    assert_eq!(run(&["gen", "--size", "0"], "").status.code(), Some(2));
    assert_eq!(run(&["gen", "--kind", "random", "--pattern", "ab", "--size", "5"], "").status.code(), Some(2));
}

#[test]
fn stats_dumps() {
    let s = stdout(&run(&["stats", "--dump-suffixes"], BRANCHED_ABAB));
    let rows: Vec<&str> = s.lines().collect();
    assert_eq!(rows[0], "rank\tnode\tsdepth\tisa0\tisa1\tlcp0");
    // "abab$" is the smallest suffix; "bab$" has natural rank 3.
    assert_eq!(rows[1], "1\t5\t5\t1\t6\t0");
    assert_eq!(rows.len(), 7);
    let l = stdout(&run(&["stats", "--dump-lyndon"], BRANCHED_ABAB));
    assert!(l.lines().any(|r| r == "4\t3\t1\t2\t2"), "{l}");
    let summary: serde_json::Value = serde_json::from_slice(&run(&["stats"], BRANCHED_ABAB).stdout).unwrap();
    assert_eq!(summary["count"], 1);
    assert_eq!(summary["runs_per_edge"], "1/6");
}

#[test]
fn export_dot_highlight() {
    let plain = stdout(&run(&["export-dot"], BRANCHED_ABAB));
    assert!(!plain.contains("color=red"));
    let lit = stdout(&run(&["export-dot", "--highlight", "0"], BRANCHED_ABAB));
    assert_eq!(lit.matches("color=red").count(), 4);
    assert!(lit.contains("period=2"));
    assert_eq!(lit, stdout(&run(&["export-dot", "--highlight", "0"], BRANCHED_ABAB)));
    assert_eq!(run(&["export-dot", "--highlight", "1"], BRANCHED_ABAB).status.code(), Some(2));
}

#[test]
fn bench_table() {
    let o = run(&["bench", "--sizes", "500,2000", "--seed", "2"], "");
    assert!(o.status.success());
    let table = stdout(&o);
    let header: Vec<&str> = table.lines().next().unwrap().split('\t').collect();
    assert!(header.contains(&"total_us") && header.contains(&"runs_per_edge"));
    assert_eq!(table.lines().count(), 3);
    let counts = run(&["bench", "--sizes", "500,2000", "--seed", "2", "--counts-only"], "");
    assert!(!stdout(&counts).contains("_us"));
    assert_eq!(run(&["bench", "--sizes", "2000,500"], "").status.code(), Some(2));
}

#[test]
fn bench_threshold_file() {
    let dir = tempfile::tempdir().unwrap();
    let good =
        write(dir.path(), "t.toml", "max_step_ratio_per_decade = 1.0\nmax_normalized_growth = 1.0\nmin_timed_us = 0\n");
    assert!(run(&["bench", "--sizes", "300,600", "--thresholds", &good], "").status.success());
    let bad = write(dir.path(), "bad.toml", "max_step_ratio = 1\n");
    assert_eq!(run(&["bench", "--sizes", "300", "--thresholds", &bad], "").status.code(), Some(2));
}

#[test]
fn leafward_strings() {
    // Leafward "ab","ac" share the root-side 'a'; four real nodes, no runs.
    let o = run(&["stats", "--format", "strings", "--direction", "leafward"], "ab\nac\n");
    let s: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(s["edge_count"], 4);
    assert_eq!(s["count"], 0);
}
