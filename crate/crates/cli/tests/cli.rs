use std::path::Path;
use std::process::{Command, Output};

fn uqrs(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_uqrs")).args(args).env_remove("UQRS_CACHE_DIR").output().unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn matrices_even_rank_a() {
    let out = uqrs(&["matrices", "--type", "A", "--rank", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["detRplusS"], "1");
    let odd = uqrs(&["matrices", "--type", "A", "--rank", "3", "--format", "csv"]);
    assert_eq!(String::from_utf8(odd.stdout).unwrap(), "type,rank,detRminusS,detRplusS,kernel_dim\nA,3,4,0,1\n");
}

#[test]
fn serre_suite_g2() {
    let out = uqrs(&["verify", "--suite", "serre", "--type", "G", "--rank", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["status"], "passed");
}

#[test]
fn poly_express_a2() {
    let out = uqrs(&["poly-express", "--type", "A", "--rank", "2", "--weight", "1,1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["polynomial"], "x1*x2 - 1");
}

#[test]
fn product_and_alpha_coordinates() {
    let out = uqrs(&["product", "--type", "A", "--rank", "2", "--weight", "1,0", "--weight", "0,1"]);
    let v = json(&out);
    assert_eq!(v["decomposition"], serde_json::json!([{"nu": [0, 0], "c": 1}, {"nu": [1, 1], "c": 1}]));
    let g = uqrs(&["pairing-gram", "--type", "A", "--rank", "2", "--alpha", "--weight", "1,1"]);
    assert_eq!(g.status.code(), Some(0));
    assert_eq!(json(&g)["beta"], serde_json::json!([1, 1]));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["matrices", "--type", "X", "--rank", "2"][..],
        &["mults", "--type", "A", "--rank", "2", "--weight", "1,x"],
        &["mults", "--type", "A", "--rank", "2", "--weight", "-1,0"],
        &["verify", "--type", "A", "--rank", "2"],
        &["central-element", "--type", "A", "--rank", "3", "--weight", "1,0,1"],
        &["central-element", "--type", "A", "--rank", "2", "--weight", "1,0", "--root-form"],
        &["frobnicate", "--type", "A", "--rank", "2"],
    ] {
        let out = uqrs(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
    }
}

fn cached_mults(dir: &Path) -> Output {
    uqrs(&["mults", "--type", "B", "--rank", "2", "--weight", "2,1", "--cache-dir", dir.to_str().unwrap()])
}

#[test]
fn cache_is_reused_and_corruption_is_reported() {
    let d = tempfile::tempdir().unwrap();
    let cold = cached_mults(d.path());
    assert_eq!(cold.status.code(), Some(0));
    assert_eq!(cached_mults(d.path()).stdout, cold.stdout);
    let entry = std::fs::read_dir(d.path())
        .unwrap()
        .map(|e| e.unwrap().path())
        .find(|p| p.file_name().unwrap() != "index.json")
        .unwrap();
    let mut v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&entry).unwrap()).unwrap();
    v["payload"]["mults"][0]["m"] = serde_json::json!(99);
    std::fs::write(&entry, v.to_string()).unwrap();
    let bad = cached_mults(d.path());
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("checksum"));
}

#[test]
fn cache_dir_from_environment() {
    let d = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_uqrs"))
        .args(["mults", "--type", "A", "--rank", "2", "--weight", "1,0"])
        .env("UQRS_CACHE_DIR", d.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(d.path().join("index.json").exists());
    let check = uqrs(&["verify", "--suite", "cache", "--type", "A", "--rank", "2", "--cache-dir", d.path().to_str().unwrap()]);
    assert_eq!(check.status.code(), Some(0));
    assert_eq!(json(&check)["checks"], 1);
}

#[test]
fn central_element_a2() {
    let out = uqrs(&["central-element", "--type", "A", "--rank", "2", "--weight", "1,1", "--root-form"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!(!v["terms"].as_array().unwrap().is_empty());
    assert_eq!(v["hc_projection"].as_array().unwrap().len(), 7);
}
