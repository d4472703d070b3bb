use serde_json::Value;
use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qonsager")).args(args).output().expect("binary runs")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("json on stdout")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("qonsager-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn example2_passes() {
    let o = run(&["verify", "--suite", "example2"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let checks = v["report"]["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 3);
    assert!(checks.iter().all(|c| c["status"] == "pass"));
    assert!(v["envelope"]["unix_time"].is_u64());
}

#[test]
fn reports_are_deterministic() {
    let a = json(&run(&["verify", "--suite", "counts", "--max-weight", "6"]));
    let b = json(&run(&["verify", "--suite", "counts", "--max-weight", "6"]));
    assert_eq!(a["report"], b["report"]);
    let checks = a["report"]["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 7);
    assert_eq!(checks[6]["witness"], "graded=40 zigzag=40 wg=40 gf1=40 gf2=40 partitions=40");
}

#[test]
fn misprints_are_reported_but_do_not_gate() {
    let o = run(&["verify", "--suite", "appendixA"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["report"]["summary"]["erratum"], 4);
    assert_eq!(v["report"]["summary"]["fail"], 0);
}

#[test]
fn appendix_b_specialized_at_one_point() {
    let o = run(&[
        "verify", "--suite", "appendixB", "--mode", "specialized", "--q", "5/3", "--rho", "2", "--delta", "1,1/2,1/3,1/4,1/5,1/6",
        "--max-weight", "4", "--format", "text",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.contains("W=4 rank"));
    assert!(text.contains("rank 29 of 29"));
}

#[test]
fn usage_and_configuration_errors_exit_two() {
    let o = run(&["verify", "--suite", "nonsense"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(json(&o)["error"]["kind"], "usage");
    let o = run(&["gen", "--kind", "G", "--k", "3", "--mode", "specialized", "--delta", "1,2"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(json(&o)["error"]["kind"], "configuration");
    let o = run(&["gen", "--kind", "G", "--mode", "specialized", "--q", "1"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["verify", "--suite", "appendixA", "--max-degree", "5"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn gen_and_delta() {
    let v = json(&run(&["gen", "--kind", "G", "--k", "0"]));
    assert_eq!(v["alphabet"], serde_json::json!(["a", "b"]));
    assert_eq!(v["terms"].as_array().unwrap().len(), 3);
    let v = json(&run(&["delta", "--k", "0", "--form", "expanded"]));
    assert_eq!(v["terms"][0]["word"], "");
    assert_eq!(v["terms"][0]["coeff"], "2*d1");
    let v = json(&run(&["delta", "--k", "1"]));
    assert!(v["alphabet"].as_array().unwrap().iter().any(|x| x == "Gt2"));
}

#[test]
fn reduce_a_relation_to_zero() {
    let rel = serde_json::json!({
        "alphabet": ["a", "b"],
        "terms": [
            {"word": "aaab", "coeff": "1"},
            {"word": "aaba", "coeff": "-q^2-1-q^-2"},
            {"word": "abaa", "coeff": "q^2+1+q^-2"},
            {"word": "baaa", "coeff": "-1"},
            {"word": "ab", "coeff": "-r"},
            {"word": "ba", "coeff": "r"}
        ]
    });
    let path = scratch("rel.json");
    std::fs::write(&path, rel.to_string()).unwrap();
    let o = run(&["reduce", "--expr", path.to_str().unwrap(), "--max-degree", "4"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(json(&o)["terms"].as_array().unwrap().len(), 0);
}

#[test]
fn dims_with_cache() {
    let cache = scratch("rs.json");
    let _ = std::fs::remove_file(&cache);
    for _ in 0..2 {
        let o = run(&["dims", "--max-degree", "6", "--cache", cache.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
        assert_eq!(json(&o)["dims"], serde_json::json!([1, 2, 4, 8, 14, 24, 40]));
    }
    let o = run(&["dims", "--max-degree", "6", "--cache", cache.to_str().unwrap()]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("loaded rewrite system"));
}

#[test]
fn transition_emits_matrix() {
    let path = scratch("m.json");
    let o = run(&[
        "transition", "--max-weight", "4", "--check-invertible", "--mode", "specialized", "--emit-matrix", path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["verdict"]["rank"], 29);
    let m: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(m["rows"].as_array().unwrap().len(), 29);
    assert_eq!(m["cols"].as_array().unwrap().len(), 29);
}

#[test]
fn count_items() {
    let v = json(&run(&["count", "--max-weight", "3", "--which", "zigzag"]));
    assert_eq!(v["counts"]["3"], 8);
    assert_eq!(v["items"]["1"].as_array().unwrap().len(), 2);
    let v = json(&run(&["count", "--max-weight", "10"]));
    assert_eq!(v["gf"]["verma"][10], "232");
}
