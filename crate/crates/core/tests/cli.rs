use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("data/groups")
        .join(format!("{name}.json"))
}

fn tautilt(args: &[&str], cache: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_tautilt"));
    cmd.args(args);
    match cache {
        Some(dir) => cmd.env("TAUTILT_CACHE", dir),
        None => cmd.env_remove("TAUTILT_CACHE"),
    };
    cmd.output().expect("binary runs")
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = tautilt(args, None);
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn path(name: &str) -> String {
    data(name).to_string_lossy().into_owned()
}

fn block_count(group: &str, p: &str) -> u64 {
    let (code, stdout, _) = run(&["blocks", &path(group), "--p", p]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    v["block_count"].as_u64().unwrap()
}

#[test]
fn block_counts() {
    assert_eq!(block_count("A4", "2"), 1);
    assert_eq!(block_count("C2", "2"), 1);
    // the defect group of kS3 at p = 3 is normal, so there is a single block
    assert_eq!(block_count("S3", "3"), 1);
    // two p-regular classes with a defect-zero character of degree 2
    assert_eq!(block_count("S3", "2"), 2);
}

#[test]
fn blocks_json_fields() {
    let (_, stdout, _) = run(&["blocks", &path("S3"), "--p", "2"]);
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["field"]["m"], 2);
    let blocks = v["blocks"].as_array().unwrap();
    let principal: Vec<bool> = blocks
        .iter()
        .map(|b| b["principal"].as_bool().unwrap())
        .collect();
    assert_eq!(principal.iter().filter(|&&b| b).count(), 1);
    let dims: u64 = blocks.iter().map(|b| b["dim"].as_u64().unwrap()).sum();
    assert_eq!(dims, 6);
    assert!(blocks
        .iter()
        .all(|b| !b["support"].as_array().unwrap().is_empty()));
}

#[test]
fn stt_counts() {
    assert_eq!(
        run(&["stt", &path("C2"), "--p", "2"]).1.trim(),
        "2 nodes, 1 edge"
    );
    assert_eq!(
        run(&["stt", &path("S4"), "--p", "2"]).1.trim(),
        "8 nodes, 8 edges"
    );
    assert!(run(&["stt", &path("A4"), "--p", "2"])
        .1
        .starts_with("32 nodes"));
}

#[test]
fn stt_names_and_block() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("s4.json");
    let (code, _, _) = run(&[
        "stt",
        &path("S4"),
        "--p",
        "2",
        "--names",
        "1',2'",
        "--json",
        json.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(v["schema"], "tautilt.poset/1");
    assert_eq!(v["nodes"][0]["label"], "P1' ⊕ P2'");
    let (code, stdout, _) = run(&["stt", &path("S3"), "--p", "2", "--block", "1"]);
    assert_eq!(code, 0);
    assert_eq!(stdout.trim(), "2 nodes, 1 edge");
}

#[test]
fn cap_exceeded_writes_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("a4.dot");
    let json = dir.path().join("a4.json");
    let (code, _, stderr) = run(&[
        "stt",
        &path("A4"),
        "--p",
        "2",
        "--node-cap",
        "10",
        "--dot",
        dot.to_str().unwrap(),
        "--json",
        json.to_str().unwrap(),
    ]);
    assert_eq!(code, 3);
    assert!(stderr.contains("node cap 10"));
    assert!(!dot.exists() && !json.exists());
    assert_eq!(
        run(&["blocks", &path("S4"), "--p", "2", "--order-cap", "5"]).0,
        3
    );
}

#[test]
fn parse_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"degree\": 3, \"generators\": [[0, 0, 1]]}").unwrap();
    assert_eq!(run(&["blocks", bad.to_str().unwrap(), "--p", "2"]).0, 2);
    std::fs::write(&bad, "not json").unwrap();
    assert_eq!(run(&["stt", bad.to_str().unwrap(), "--p", "2"]).0, 2);
    assert_eq!(run(&["blocks", "/nonexistent.json", "--p", "2"]).0, 2);
    assert_eq!(run(&["blocks", &path("C2"), "--p", "4"]).0, 2);
    assert_eq!(
        run(&[
            "verify",
            &path("C3"),
            &path("S3"),
            "--p",
            "3",
            "--theorems",
            "X9"
        ])
        .0,
        2
    );
    assert_eq!(run(&["frobnicate"]).0, 2);
}

#[test]
fn verify_exit_codes() {
    let (code, stdout, _) = run(&[
        "verify",
        &path("A4"),
        &path("S4"),
        "--p",
        "2",
        "--theorems",
        "all",
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["schema"], "tautilt.report/1");
    assert_eq!(v["passed"], true);
    assert_eq!(v["invariant_nodes"].as_array().unwrap().len(), 8);

    assert_eq!(run(&["verify", &path("S4"), &path("S4"), "--p", "2"]).0, 0);
    assert_eq!(run(&["verify", &path("C3"), &path("S3"), "--p", "3"]).0, 0);
    assert_eq!(
        run(&["verify", &path("S3_in_S4"), &path("S4"), "--p", "2"]).0,
        4
    );

    // S4 is not A4 x C2, so the direct-product check fails
    let (code, _, stderr) = run(&[
        "verify",
        &path("A4"),
        &path("S4"),
        "--p",
        "2",
        "--theorems",
        "E3.8",
    ]);
    assert_eq!(code, 5);
    assert!(stderr.contains("FAIL"));
}

#[test]
fn induce_and_mackey() {
    let (code, stdout, _) = run(&[
        "induce",
        &path("A4"),
        &path("S4"),
        "--p",
        "2",
        "--module",
        "regular",
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["dim"], 24);

    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("ind.json");
    let (code, _, _) = run(&[
        "induce",
        &path("C3"),
        &path("S3"),
        "--p",
        "2",
        "--module",
        "simple:1",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    // a non-invariant character induces to the two-dimensional simple
    assert_eq!(v["dim"], 2);
    assert_eq!(v["summands"].as_array().unwrap().len(), 1);

    let module = dir.path().join("m.json");
    std::fs::write(&module, serde_json::to_string(&v["module"]).unwrap()).unwrap();
    let (code, stdout, _) = run(&[
        "mackey",
        &path("C3"),
        &path("S3"),
        "--p",
        "2",
        "--module",
        "simple:1",
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["witness_verified"], true);
    let iso: Vec<bool> = v["twists"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| t["isomorphic_to_input"].as_bool().unwrap())
        .collect();
    assert_eq!(iso, vec![true, false]);

    assert_eq!(
        run(&[
            "mackey",
            &path("S3_in_S4"),
            &path("S4"),
            "--p",
            "2",
            "--module",
            "trivial"
        ])
        .0,
        4
    );
    assert_eq!(
        run(&[
            "induce",
            &path("C3"),
            &path("S3"),
            "--p",
            "2",
            "--module",
            "missing.json"
        ])
        .0,
        2
    );
    // a module over S3 is not a module over C3
    assert_eq!(
        run(&[
            "induce",
            &path("C3"),
            &path("S3"),
            "--p",
            "2",
            "--module",
            module.to_str().unwrap()
        ])
        .0,
        1
    );
}

#[test]
fn cache_hit_matches_fresh_run() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path();
    let args = |tag: &str| -> Vec<String> {
        vec![
            "stt".into(),
            path("S4"),
            "--p".into(),
            "2".into(),
            "--dot".into(),
            out.join(format!("{tag}.dot"))
                .to_string_lossy()
                .into_owned(),
            "--json".into(),
            out.join(format!("{tag}.json"))
                .to_string_lossy()
                .into_owned(),
        ]
    };
    let cache = out.join("cache");
    for (tag, c) in [
        ("fresh", None),
        ("miss", Some(cache.as_path())),
        ("hit", Some(cache.as_path())),
    ] {
        let a = args(tag);
        let a: Vec<&str> = a.iter().map(String::as_str).collect();
        assert!(tautilt(&a, c).status.success());
    }
    assert_eq!(std::fs::read_dir(&cache).unwrap().count(), 1);
    for ext in ["dot", "json"] {
        let fresh = std::fs::read(out.join(format!("fresh.{ext}"))).unwrap();
        assert_eq!(
            fresh,
            std::fs::read(out.join(format!("miss.{ext}"))).unwrap()
        );
        assert_eq!(
            fresh,
            std::fs::read(out.join(format!("hit.{ext}"))).unwrap()
        );
    }

    let verify = ["verify", &path("A4"), &path("S4"), "--p", "2"].map(String::from);
    let verify: Vec<&str> = verify.iter().map(String::as_str).collect();
    let fresh = tautilt(&verify, None).stdout;
    let miss = tautilt(&verify, Some(&cache)).stdout;
    let hit = tautilt(&verify, Some(&cache)).stdout;
    assert_eq!(fresh, miss);
    assert_eq!(fresh, hit);
}
