//! End-to-end checks of the `kuniv` binary: exit codes, file formats, and
//! seeded determinism.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn kuniv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kuniv"))
        .args(args)
        .output()
        .expect("spawn kuniv")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("kuniv-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn construct_decide_and_game_round_trip() {
    let k3 = tmp("k3.json");
    let p3 = tmp("p3.json");
    let out = kuniv(&[
        "construct",
        "--family",
        "clique",
        "--n",
        "3",
        "--out",
        k3.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let out = kuniv(&[
        "construct",
        "--family",
        "path",
        "--n",
        "3",
        "--out",
        p3.to_str().unwrap(),
    ]);
    assert!(out.status.success());

    let out = kuniv(&[
        "game",
        "--from",
        k3.to_str().unwrap(),
        "--to",
        p3.to_str().unwrap(),
        "--k",
        "3",
        "--rounds",
        "eternal",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["winner"], "Spoiler");
    assert_eq!(v["rounds_bound"], 3);

    let out = kuniv(&[
        "coloring",
        "--graph",
        tmp("missing-empty5.json").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2), "missing file is a usage error");

    let empty5 = tmp("empty5.json");
    kuniv(&[
        "construct",
        "--family",
        "empty",
        "--n",
        "5",
        "--out",
        empty5.to_str().unwrap(),
    ]);
    let out = kuniv(&["coloring", "--graph", empty5.to_str().unwrap()]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["coloring_number"], 0);
}

#[test]
fn theorem3_universality_through_the_cli() {
    let t3 = tmp("t3k4.json");
    kuniv(&[
        "construct",
        "--family",
        "theorem3",
        "--k",
        "4",
        "--out",
        t3.to_str().unwrap(),
    ]);
    let out = kuniv(&[
        "decide",
        "universal",
        "--graph",
        t3.to_str().unwrap(),
        "--k",
        "4",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["universal"], true);
}

#[test]
fn seeded_sampling_is_byte_deterministic() {
    let g1 = tmp("s1.json");
    let g2 = tmp("s2.json");
    for g in [&g1, &g2] {
        let out = kuniv(&[
            "sample",
            "--model",
            "sparse",
            "--n",
            "40",
            "--alpha",
            "7/10",
            "--seed",
            "99",
            "--out",
            g.to_str().unwrap(),
        ]);
        assert!(out.status.success());
    }
    assert_eq!(
        std::fs::read(&g1).unwrap(),
        std::fs::read(&g2).unwrap(),
        "same seed must give identical files"
    );
}

#[test]
fn json_to_edge_list_round_trip_preserves_graph() {
    let gj = tmp("rt.json");
    kuniv(&[
        "sample",
        "--model",
        "gnp",
        "--n",
        "12",
        "--p",
        "0.5",
        "--seed",
        "4",
        "--out",
        gj.to_str().unwrap(),
    ]);
    let g = kuniv_graph(&gj);
    // rewrite as edge list and read back through the CLI
    let el = tmp("rt.txt");
    let (text, _) = kuniv_core::io::to_edge_list(&g);
    std::fs::write(&el, text).unwrap();
    let out = kuniv(&[
        "decide",
        "extendible",
        "--graph",
        el.to_str().unwrap(),
        "--k",
        "2",
    ]);
    assert!(out.status.success());
    let via_el: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let out = kuniv(&[
        "decide",
        "extendible",
        "--graph",
        gj.to_str().unwrap(),
        "--k",
        "2",
    ]);
    let via_json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(via_el, via_json);
}

fn kuniv_graph(path: &Path) -> kuniv_core::Graph {
    kuniv_core::io::from_json(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn domain_errors_exit_one_usage_errors_exit_two() {
    // tie: K4 against alpha = 2/3 in a closure run
    let k4 = tmp("k4.json");
    kuniv(&[
        "construct",
        "--family",
        "clique",
        "--n",
        "4",
        "--out",
        k4.to_str().unwrap(),
    ]);
    let out = kuniv(&[
        "closure",
        "--graph",
        k4.to_str().unwrap(),
        "--set",
        "0",
        "--l",
        "4",
        "--alpha",
        "2/3",
    ]);
    assert_eq!(out.status.code(), Some(1), "tie is a domain error");

    // malformed graph file
    let bad = tmp("bad.json");
    std::fs::write(&bad, "{\"n\": 2, \"edges\": [[0,0]]}").unwrap();
    let out = kuniv(&["coloring", "--graph", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    // unknown flag
    let out = kuniv(&["coloring", "--graf", "x.json"]);
    assert_eq!(out.status.code(), Some(2));

    // unsupported pebble count for the reference registry is a domain error
    let out = kuniv(&[
        "game",
        "--from",
        k4.to_str().unwrap(),
        "--to",
        k4.to_str().unwrap(),
        "--k",
        "0",
        "--rounds",
        "eternal",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn run_report_carries_digests_and_payload() {
    let g = tmp("rep-graph.json");
    let report = tmp("report.json");
    kuniv(&[
        "construct",
        "--family",
        "cycle",
        "--n",
        "5",
        "--out",
        g.to_str().unwrap(),
    ]);
    let out = kuniv(&[
        "--report",
        report.to_str().unwrap(),
        "decide",
        "universal",
        "--graph",
        g.to_str().unwrap(),
        "--k",
        "2",
    ]);
    assert!(out.status.success());
    let env: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(env["result"]["universal"], true);
    assert!(env["inputs"][g.to_str().unwrap()].as_str().unwrap().len() == 64);
    assert!(env["command"].as_str().unwrap().contains("decide"));
}
