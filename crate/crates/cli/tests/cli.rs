use std::path::Path;
use std::process::{Command, Output};

fn perfmat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_perfmat")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn gen_to(dir: &Path, name: &str, args: &[&str]) -> String {
    let path = dir.join(format!("{name}.json"));
    let p = path.to_str().unwrap().to_string();
    let mut full = vec!["gen"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["--out", &p]);
    let o = perfmat(&full);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    p
}

fn vertex_count(path: &str) -> u64 {
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    v["graph"]["n"].as_u64().or(v["n"].as_u64()).unwrap()
}

#[test]
fn gen_writes_expected_sizes() {
    let dir = tempfile::tempdir().unwrap();
    let cases: [(&str, &[&str], u64); 4] = [
        ("penta", &["pentacap", "2"], 30),
        ("octa", &["classic", "octahedron"], 6),
        ("le", &["leapfrog", "pentacap", "1"], 60),
        ("ext", &["extend", "hexacap", "1"], 36),
    ];
    for (name, args, n) in cases {
        assert_eq!(vertex_count(&gen_to(dir.path(), name, args)), n, "{name}");
    }
}

#[test]
fn count_both_agrees() {
    let dir = tempfile::tempdir().unwrap();
    let octa = gen_to(dir.path(), "octa", &["classic", "octahedron"]);
    let o = perfmat(&["count", &octa, "--method", "both"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("pfaffian 8 = oracle 8"));

    let dodeca = gen_to(dir.path(), "dodeca", &["classic", "dodecahedron"]);
    let o = perfmat(&["count", &dodeca]);
    assert!(stdout(&o).contains("pfaffian 36 = oracle 36"));
}

#[test]
fn oracle_guard_is_a_failure() {
    let dir = tempfile::tempdir().unwrap();
    let le = gen_to(dir.path(), "le", &["leapfrog", "pentacap", "1"]);
    assert!(!perfmat(&["count", &le, "--method", "oracle"]).status.success());
    let o = perfmat(&["count", &le, "--method", "pfaffian"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("le: pfaffian "));
}

#[test]
fn count_without_embedding_needs_oracle() {
    let dir = tempfile::tempdir().unwrap();
    let k33 = gen_to(dir.path(), "k33", &["classic", "bipartite", "3"]);
    assert!(!perfmat(&["count", &k33, "--method", "pfaffian"]).status.success());
    let o = perfmat(&["count", &k33, "--method", "oracle"]);
    assert!(stdout(&o).contains("oracle 6"));
}

#[test]
fn bounds_on_k4_is_tight() {
    let dir = tempfile::tempdir().unwrap();
    let k4 = gen_to(dir.path(), "k4", &["classic", "complete", "4"]);
    let o = perfmat(&["bounds", &k4]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let hadamard = v[0]["bounds"].as_array().unwrap().iter().find(|b| b["name"] == "hadamard").unwrap();
    assert_eq!(hadamard["tight"], true);
}

#[test]
fn bounds_corpus_csv_passes() {
    let o = perfmat(&["bounds", "--corpus", "--format", "csv"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    assert!(text.starts_with("id,n,m,exact_count,bound"));
    assert!(text.lines().any(|l| l.starts_with("dodecahedron,20,30,36,semicircular_cubic")));
}

#[test]
fn identities_pass_and_name_the_maximum() {
    let o = perfmat(&["identities", "16"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(!text.contains("FAIL"));
    assert!(text.contains("n=6"));
    assert!(!perfmat(&["identities", "7"]).status.success());
}

#[test]
fn output_is_deterministic() {
    let a = perfmat(&["bounds", "--corpus"]);
    let b = perfmat(&["bounds", "--corpus"]);
    assert_eq!(a.stdout, b.stdout);
}
