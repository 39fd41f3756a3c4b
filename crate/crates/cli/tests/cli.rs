use std::fs;
use std::process::{Command, Output};

use k3leech::chamber::CaseId;
use k3leech::fixture::Fixture;

fn k3leech(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_k3leech")).args(args).env_remove("SOURCE_DATE_EPOCH").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn faces_dot_has_38_vertices() {
    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("out.dot");
    let o = k3leech(&["faces", "--case", "jacobian-ordinary", "--dot", dot.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = fs::read_to_string(&dot).unwrap();
    assert!(text.starts_with("graph "));
    assert_eq!(text.lines().filter(|l| l.contains("shape=")).count(), 38);
    assert_eq!(text.lines().filter(|l| l.contains("shape=circle")).count(), 18);
    let table: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(table["total_faces"], 38);
}

#[test]
fn appendix_substitution_passes() {
    let o = k3leech(&["poly", "--identity", "appendix_substitution"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v[0]["status"], "pass");
    assert_eq!(v[0]["cofactor"], "(x+y+z)^2");
}

#[test]
fn unknown_identity_is_a_usage_error() {
    assert_eq!(k3leech(&["poly", "--identity", "no_such_identity"]).status.code(), Some(2));
}

#[test]
fn fixtures_are_reemitted_byte_for_byte() {
    for c in CaseId::ALL {
        let o = k3leech(&["fixture", "--case", c.as_str()]);
        assert_eq!(o.status.code(), Some(0));
        let shipped = fs::read(format!("{}/../core/fixtures/{c}.json", env!("CARGO_MANIFEST_DIR"))).unwrap();
        assert!(o.stdout == shipped, "{c} differs from the shipped fixture");
    }
}

#[test]
fn template_is_schema_valid() {
    let o = k3leech(&["fixture", "--case", "complex-case", "--template"]);
    assert_eq!(o.status.code(), Some(0));
    let f = Fixture::parse(&stdout(&o)).unwrap();
    assert_eq!(f.case_id, "complex-case");
    assert!(f.generators.is_empty());
}

#[test]
fn invalid_input_exits_2() {
    assert_eq!(k3leech(&["fixture", "--case", "table-one"]).status.code(), Some(2));
    assert_eq!(k3leech(&["faces", "--case", "table-one"]).status.code(), Some(2));
    assert_eq!(k3leech(&["verify", "--checks", "bogus"]).status.code(), Some(2));
    assert_eq!(k3leech(&["verify", "--format", "xml"]).status.code(), Some(2));
    assert_eq!(k3leech(&["fixture", "--case", "", "--template"]).status.code(), Some(2));
}

#[test]
fn verify_is_deterministic() {
    let args = ["verify", "--cases", "generic-d4,jacobian-prank1", "--checks", "faces,ns"];
    let (a, b) = (k3leech(&args), k3leech(&args));
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(v["version"], 1);
    assert_eq!(v["timestamp"], "1970-01-01T00:00:00Z");
    let checks = v["checks"].as_array().unwrap();
    assert!(!checks.is_empty());
    assert!(checks.iter().all(|c| c["status"] == "pass" && c["anchor"].is_string() && c["expected"].is_string()));
}

#[test]
fn source_date_epoch_sets_the_timestamp() {
    let o = Command::new(env!("CARGO_BIN_EXE_k3leech"))
        .args(["verify", "--checks", "steiner", "--format", "md"])
        .env("SOURCE_DATE_EPOCH", "1700000000")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("Generated 2023-11-14T22:13:20Z"));
}

#[test]
fn out_writes_the_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.md");
    let o = k3leech(&["verify", "--checks", "identities", "--format", "md", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = fs::read_to_string(out).unwrap();
    assert!(text.contains("identity/appendix_substitution"));
}

#[test]
fn shell_cache_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("shell.bin");
    let c = cache.to_str().unwrap();
    let first = k3leech(&["minvec", "--cache", c]);
    assert_eq!(first.status.code(), Some(0));
    assert!(cache.exists());
    let second = k3leech(&["minvec", "--cache", c]);
    assert_eq!(second.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
    let v: serde_json::Value = serde_json::from_str(&stdout(&second)).unwrap();
    assert_eq!(v["count"], 196560);
    let mut bytes = fs::read(&cache).unwrap();
    bytes[100] ^= 1;
    fs::write(&cache, bytes).unwrap();
    assert_eq!(k3leech(&["minvec", "--cache", c]).status.code(), Some(2));
}

#[test]
fn octads_and_graphs() {
    let o = k3leech(&["octads"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 759);
    let lines = stdout(&k3leech(&["octads", "--class", "3+5", "--format", "md"])).lines().count();
    assert_eq!(lines, 21);
    let g = k3leech(&["graph", "--case", "jacobian-ordinary", "--id", "orthogonal"]);
    assert_eq!(stdout(&g).lines().filter(|l| l.contains("shape=")).count(), 20);
    assert_eq!(k3leech(&["graph", "--case", "jacobian-ordinary", "--id", "nope"]).status.code(), Some(2));
}

#[test]
fn fibration_verb() {
    let o = k3leech(&["fibration", "--case", "product-EF-mixed", "--id", "e8-e8"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("rank 0"));
}

#[test]
fn full_suite_exits_0() {
    let o = k3leech(&["verify", "--cases", "all", "--checks", "all", "--format", "md"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(String::from_utf8_lossy(&o.stderr).contains(" 0 failed"));
}
