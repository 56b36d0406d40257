//! End-to-end tests of the binary: exit codes, JSON shapes, the
//! verify closed loop, and the catalog files.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_cycol")
}

fn run(args: &[&str]) -> Output {
    Command::new(bin())
        .args(args)
        .output()
        .expect("binary runs")
}

fn write(dir: &Path, name: &str, content: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, content).unwrap();
    path
}

#[test]
fn color_triangle_is_a_witness() {
    let dir = tempfile::tempdir().unwrap();
    let g6 = write(dir.path(), "c3.g6", "Bw\n");
    let out = run(&["color", "--k", "7", g6.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let line = String::from_utf8(out.stdout).unwrap();
    let v: serde_json::Value = serde_json::from_str(line.lines().next().unwrap()).unwrap();
    assert_eq!(v["status"], "witness");
    assert_eq!(v["k"], 7);
    assert_eq!(v["witness"]["reason"], "OddCycleTooShort");
    assert_eq!(v["witness"]["oracle_verified"], true);
}

#[test]
fn color_bipartite_uses_two_residues() {
    let dir = tempfile::tempdir().unwrap();
    let el = write(dir.path(), "p5.el", "0 1\n1 2\n2 3\n3 4\n");
    let out = run(&[
        "color",
        "--k",
        "8",
        "--format",
        "edgelist",
        el.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let line = String::from_utf8(out.stdout).unwrap();
    let v: serde_json::Value = serde_json::from_str(line.lines().next().unwrap()).unwrap();
    assert_eq!(v["status"], "colored");
    let colors: Vec<u64> = v["coloring"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_u64().unwrap())
        .collect();
    assert!(colors.iter().all(|&c| c <= 1));
}

#[test]
fn color_rejects_small_k() {
    let dir = tempfile::tempdir().unwrap();
    let g6 = write(dir.path(), "x.g6", "Bw\n");
    let out = run(&["color", "--k", "4", g6.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn color_verify_closed_loop() {
    let dir = tempfile::tempdir().unwrap();
    // C_7, C_5, K_4 in one batch; every emitted line must verify against
    // its own graph.
    let graphs = ["FhCKG", "Dhc", "C~"];
    let batch = write(dir.path(), "batch.g6", "FhCKG\nDhc\nC~\n");
    let res = dir.path().join("res.jsonl");
    let out = run(&[
        "color",
        "--k",
        "7",
        "--jobs",
        "2",
        "-o",
        res.to_str().unwrap(),
        batch.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1)); // K_4 yields a witness
    let lines = std::fs::read_to_string(&res).unwrap();
    for (g6, line) in graphs.iter().zip(lines.lines()) {
        let gpath = write(dir.path(), "one.g6", &format!("{g6}\n"));
        let rpath = write(dir.path(), "one.json", &format!("{line}\n"));
        let v = run(&[
            "verify",
            "--graph",
            gpath.to_str().unwrap(),
            rpath.to_str().unwrap(),
        ]);
        assert_eq!(v.status.code(), Some(0), "line {line} must verify");
    }
}

#[test]
fn verify_rejects_tampered_results() {
    let dir = tempfile::tempdir().unwrap();
    let g6 = write(dir.path(), "c7.g6", "FhCKG\n");
    let res = dir.path().join("res.json");
    let out = run(&[
        "color",
        "--k",
        "7",
        "-o",
        res.to_str().unwrap(),
        g6.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let line = std::fs::read_to_string(&res).unwrap();
    let mut v: serde_json::Value = serde_json::from_str(line.lines().next().unwrap()).unwrap();
    // Recolor vertex 0 to match vertex 1 across an edge.
    let c1 = v["coloring"][1].clone();
    v["coloring"][0] = c1;
    let bad = write(dir.path(), "bad.json", &v.to_string());
    let check = run(&[
        "verify",
        "--graph",
        g6.to_str().unwrap(),
        bad.to_str().unwrap(),
    ]);
    assert_eq!(check.status.code(), Some(1));
}

#[test]
fn hom_emits_obstruction_and_mapping() {
    let dir = tempfile::tempdir().unwrap();
    let c5 = write(dir.path(), "c5.g6", "Dhc\n");
    let c3 = write(dir.path(), "c3.g6", "Bw\n");
    let c7 = write(dir.path(), "c7.g6", "FhCKG\n");

    let out = run(&[
        "hom",
        "--target",
        c5.to_str().unwrap(),
        "--cross-check",
        c3.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value =
        serde_json::from_str(String::from_utf8(out.stdout).unwrap().lines().next().unwrap())
            .unwrap();
    assert_eq!(v["status"], "infeasible");
    assert_eq!(v["obstruction"]["vertices"], serde_json::json!([0, 1, 2]));

    let res = dir.path().join("hom.json");
    let td = dir.path().join("td.txt");
    let out = run(&[
        "hom",
        "--target",
        c5.to_str().unwrap(),
        "--dump-td",
        td.to_str().unwrap(),
        "-o",
        res.to_str().unwrap(),
        c7.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let dump = std::fs::read_to_string(&td).unwrap();
    assert!(dump.lines().any(|l| l.starts_with("b0:")));
    assert!(dump.lines().any(|l| l.starts_with("t:")));
    // And the mapping verifies.
    let check = run(&[
        "verify",
        "--graph",
        c7.to_str().unwrap(),
        res.to_str().unwrap(),
    ]);
    assert_eq!(check.status.code(), Some(0));
}

#[test]
fn hom_with_lists_file() {
    let dir = tempfile::tempdir().unwrap();
    let c5 = write(dir.path(), "c5.g6", "Dhc\n");
    // Restrict vertex 0 of a C_5 to a single target vertex: still
    // feasible by rotating.
    let lists = write(dir.path(), "lists.txt", "0: 2\n");
    let out = run(&[
        "hom",
        "--target",
        c5.to_str().unwrap(),
        "--lists",
        lists.to_str().unwrap(),
        "--cross-check",
        c5.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value =
        serde_json::from_str(String::from_utf8(out.stdout).unwrap().lines().next().unwrap())
            .unwrap();
    assert_eq!(v["mapping"][0], 2);
}

#[test]
fn search_writes_catalog_files() {
    let dir = tempfile::tempdir().unwrap();
    let k3 = write(dir.path(), "k3.g6", "Bw\n");
    let outdir = dir.path().join("cat");
    let out = run(&[
        "search",
        "--k",
        "6",
        "--target",
        k3.to_str().unwrap(),
        "--max-n",
        "4",
        "--mode",
        "subgraph",
        "--out",
        outdir.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let g6 = std::fs::read_to_string(outdir.join("catalog.g6")).unwrap();
    assert!(g6.contains("C~"), "K_4 must be in the catalog: {g6}");
    let meta = std::fs::read_to_string(outdir.join("catalog.json")).unwrap();
    let parsed: serde_json::Value = serde_json::from_str(&meta).unwrap();
    assert!(parsed.as_array().unwrap().iter().all(|e| {
        e["verified_minimal"] == true && e["in_class"] == true
    }));
}

#[test]
fn search_respects_cap_and_env_override() {
    let dir = tempfile::tempdir().unwrap();
    let c5 = write(dir.path(), "c5.g6", "Dhc\n");
    let out = run(&[
        "search",
        "--k",
        "7",
        "--target",
        c5.to_str().unwrap(),
        "--max-n",
        "9",
    ]);
    assert_eq!(out.status.code(), Some(2));

    // The environment can lower the cap as well.
    let out = Command::new(bin())
        .args(["search", "--k", "7", "--target", c5.to_str().unwrap(), "--max-n", "5"])
        .env("CYCOL_MAX_ENUM_N", "4")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn byte_identical_reruns() {
    let dir = tempfile::tempdir().unwrap();
    let batch = write(dir.path(), "b.g6", "FhCKG\nDhc\nC~\nBw\n");
    let r1 = run(&["color", "--k", "7", batch.to_str().unwrap()]);
    let r2 = run(&["color", "--k", "7", "--jobs", "4", batch.to_str().unwrap()]);
    assert_eq!(r1.stdout, r2.stdout);
}

#[test]
fn strict_mode_surfaces_contract_errors() {
    let dir = tempfile::tempdir().unwrap();
    // P_7 as an edge list: contains itself, so --verify-input fails.
    let el = write(dir.path(), "p7.el", "0 1\n1 2\n2 3\n3 4\n4 5\n5 6\n");
    let out = run(&[
        "color",
        "--k",
        "7",
        "--format",
        "edgelist",
        "--verify-input",
        el.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    let line = String::from_utf8(out.stdout).unwrap();
    let v: serde_json::Value = serde_json::from_str(line.lines().next().unwrap()).unwrap();
    assert_eq!(v["status"], "error");
}

#[test]
fn minimize_flag_shrinks_witnesses() {
    let dir = tempfile::tempdir().unwrap();
    // K_4 plus a pendant vertex: the minimal witness drops the pendant.
    let el = write(
        dir.path(),
        "k4p.el",
        "0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n3 4\n",
    );
    let out = run(&[
        "color",
        "--k",
        "5",
        "--format",
        "edgelist",
        "--minimize-witness",
        el.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value =
        serde_json::from_str(String::from_utf8(out.stdout).unwrap().lines().next().unwrap())
            .unwrap();
    assert_eq!(v["witness"]["vertices"], serde_json::json!([0, 1, 2, 3]));
}
