//! End-to-end tests of the command-line surface: output shapes, exit
//! codes, determinism and the cache round trip.

use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_grouppoly"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn chartable_json_s3() {
    let out = run(&["chartable", "--builtin", "Sn:3", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["command"], "chartable");
    assert_eq!(v["order"], 6);
    let degrees: Vec<u64> = v["report"]["characters"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["degree"].as_u64().unwrap())
        .collect();
    assert_eq!(degrees, vec![1, 1, 2]);
}

#[test]
fn mckay_a5_p2() {
    let out = run(&["mckay", "--builtin", "An:5", "-p", "2", "--format", "json"]);
    assert!(out.status.success(), "exit code 0 expected for an equal verdict");
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["report"]["equal"], true);
    assert_eq!(v["report"]["sylow_order"], 4);
    assert_eq!(v["report"]["normalizer_order"], 12);
}

#[test]
fn degpoly_z4_text() {
    let out = run(&["degpoly", "--builtin", "Zn:4"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "(x-1)^4");
}

#[test]
fn deterministic_reports() {
    let args = ["frobpoly", "--builtin", "Sn:4", "--format", "json", "--seed", "7"];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout, "reports must be byte-identical across runs");
    let args = ["verify-all", "--builtin", "Q8", "--format", "json"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn cache_hit_is_identical_and_verified() {
    let dir = std::env::temp_dir().join(format!("grouppoly-cli-cache-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    let dirs = dir.to_str().unwrap();
    let args = ["chartable", "--builtin", "Sn:4", "--format", "json", "--cache-dir", dirs];
    let cold = run(&args);
    assert!(cold.status.success());
    // exactly one cache entry written
    let entries: Vec<PathBuf> = std::fs::read_dir(&dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .collect();
    assert_eq!(entries.len(), 1);
    let warm = run(&args);
    assert_eq!(cold.stdout, warm.stdout, "cache hit must reproduce the cold output");
    // corrupt the entry: the digest check recomputes and still matches
    let text = std::fs::read_to_string(&entries[0]).unwrap();
    std::fs::write(&entries[0], text.replace("\"degree\":1", "\"degree\":9")).unwrap();
    let healed = run(&args);
    assert_eq!(cold.stdout, healed.stdout);
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn exit_codes() {
    // unknown builtin: input error
    let out = run(&["classes", "--builtin", "Foo:3"]);
    assert_eq!(out.status.code(), Some(2));
    // no group given: input error
    let out = run(&["classes"]);
    assert_eq!(out.status.code(), Some(2));
    // different groups: compare reports inequality with exit 1
    let out = run(&["compare", "--builtin", "Sn:3", "--builtin2", "Zn:6"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("not equal"));
    // matching pair exits 0
    let out = run(&["compare", "--builtin", "D:8", "--builtin2", "Q8"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn cayley_and_permutation_files() {
    let dir = std::env::temp_dir().join(format!("grouppoly-cli-files-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cayley = dir.join("z3.cayley");
    std::fs::write(&cayley, "3\n1 2 3\n2 3 1\n3 1 2\n").unwrap();
    let out = run(&["classes", "--cayley", cayley.to_str().unwrap(), "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["report"]["n_classes"], 3);

    let perms = dir.join("a5.perms");
    std::fs::write(&perms, "(1 2 3 4 5)\n(1 2 3)\n").unwrap();
    let out = run(&["classes", "--perms", perms.to_str().unwrap(), "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["order"], 60);
    assert_eq!(v["report"]["n_classes"], 5);

    // the normalizer-of-sylow modifier induces N as a group of its own
    let out = run(&[
        "classes",
        "--perms",
        perms.to_str().unwrap(),
        "--normalizer-of-sylow",
        "2",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["order"], 12);
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn partition_subcommand_reports_validation() {
    let out = run(&["partition", "--builtin", "Zn:5", "--partition", "rational", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["report"]["sizes"], serde_json::json!([1, 4]));
    assert_eq!(v["report"]["validation"]["product_closure"], true);
}

#[test]
fn verify_all_prints_pass_lines() {
    let out = run(&["verify-all", "--builtin", "Sn:3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("PASS group invariants"));
    assert!(text.contains("all checks passed"));
}

#[test]
fn bad_custom_partition_is_reported_not_errored() {
    // grouping the identity class with an order-2 class breaks product
    // closure; the report carries a witness and the exit code is 1
    let out = run(&["partition", "--builtin", "Sn:3", "--partition", "custom=0,2;1", "--format", "json"]);
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["report"]["validation"]["product_closure"], false);
    assert!(v["report"]["validation"]["witness"].as_str().unwrap().len() > 5);
    // the coset-shaped list {e, 3-cycles};{transpositions} is good
    let out = run(&["partition", "--builtin", "Sn:3", "--partition", "custom=0,1;2"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn compare_finds_relabeled_isomorphisms() {
    // two presentations of Z/24 and of D12, plus a non-isomorphic abelian
    // pair with identical class-size multisets
    let out = run(&["compare", "--builtin", "Zn:24", "--builtin2", "Zn:8xZn:3"]);
    assert_eq!(out.status.code(), Some(0));
    let out = run(&["compare", "--builtin", "D:12", "--builtin2", "Zn:2xSn:3"]);
    assert_eq!(out.status.code(), Some(0));
    let out = run(&["compare", "--builtin", "Zn:4xZn:2", "--builtin2", "Zn:8"]);
    assert_eq!(out.status.code(), Some(1));
}
