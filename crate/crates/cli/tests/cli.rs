use std::io::Write;
use std::process::{Command, Output, Stdio};

fn ncpart(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_ncpart"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary starts");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn generated(args: &[&str]) -> String {
    let o = ncpart(args, "");
    assert_eq!(o.status.code(), Some(0));
    stdout(&o)
}

#[test]
fn spider_fifth_power_has_no_k4_factor() {
    let g = generated(&["gen", "spider", "-r", "4"]);
    let o = ncpart(&["factor", "-", "-r", "4", "-k", "5"], &g);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "no K4-factor");

    let o = ncpart(&["factor", "-", "-r", "4", "-k", "6"], &g);
    assert!(stdout(&o).starts_with("K4-factor:"));
}

#[test]
fn subdivided_k4_partitions_into_six_parts() {
    let g = generated(&["gen", "subdivided-k4", "-r", "4"]);
    let o = ncpart(&["partition", "-"], &g);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().filter(|l| l.starts_with("part ")).count(), 6);
    assert!(text.contains("verified"));
}

#[test]
fn partition_json_round_trips_through_verify() {
    let g = generated(&["gen", "subdivided-k4", "-r", "4", "--output", "graph6"]);
    let o = ncpart(&["partition", "-", "--json", "--trace"], &g);
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["n"], 24);
    assert_eq!(doc["parts"].as_array().unwrap().len(), 6);
    assert!(doc["parts"][0]["witness"].is_array());
    assert!(!doc["trace"].as_array().unwrap().is_empty());

    let dir = std::env::temp_dir().join(format!("ncpart-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let graph = dir.join("g.g6");
    std::fs::write(&graph, &g).unwrap();
    let o = ncpart(&["verify", graph.to_str().unwrap(), "--parts", "-"], &stdout(&o));
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "verified: true");
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn overlapping_parts_fail_verification() {
    let g = generated(&["gen", "cycle", "-n", "8"]);
    let o = ncpart(&["verify", "-", "--parts", "[[0,1,2,3],[3,4,5,6]]"], &g);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("verified: false"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(ncpart(&["gen", "spider"], "").status.code(), Some(2));
    assert_eq!(ncpart(&["frobnicate"], "").status.code(), Some(2));
    let c6 = generated(&["gen", "cycle", "-n", "6"]);
    let o = ncpart(&["partition", "-"], &c6);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not divisible by 4"));
    assert_eq!(ncpart(&["explore", "--n", "6", "--sizes", "3,4"], "").status.code(), Some(2));
}

#[test]
fn tree_partition_respects_witness_bound() {
    let g = generated(&["gen", "spider", "-r", "4"]);
    let o = ncpart(&["tree-partition", "-", "--sizes", "4,4,4,4", "--json"], &g);
    assert_eq!(o.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["witness_bound_ok"], true);
    for part in doc["parts"].as_array().unwrap() {
        assert!(part["witness"].as_array().unwrap().len() <= 7);
    }
}

#[test]
fn power_and_generation_are_deterministic() {
    let a = generated(&["gen", "random", "-n", "12", "--seed", "7"]);
    let b = generated(&["gen", "random", "-n", "12", "--seed", "7"]);
    assert_eq!(a, b);
    let square = ncpart(&["power", "-", "-k", "2"], &generated(&["gen", "cycle", "-n", "5"]));
    // C5 squared is K5.
    assert_eq!(stdout(&square).lines().count(), 1 + 10);
}

#[test]
fn explore_small_orders() {
    let o = ncpart(&["explore", "--n", "6", "--sizes", "3,3"], "");
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "explored 56 graphs, 0 without a partition");
}
