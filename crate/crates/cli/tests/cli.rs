use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn gcliff(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gcliff")).args(args).output().expect("binary runs")
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn json(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

const PLUS: &str = r#"{"format_version":1,"group":"2","kind":"circuit","qudits":1,"ops":[
  {"op":"gate","slots":[0],"gate":{"type":"fourier","iso":[[1]]}},
  {"op":"measure","register":"m","slots":[0],"observables":[{"x":[0],"z":[1]}]}]}"#;

#[test]
fn decompose_identity_gives_empty_sequence() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "id.json", r#"{"format_version":1,"group":"4,2","kind":"symplectic","matrix":[[1,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,1]]}"#);
    let out = dir.path().join("seq.json");
    let o = gcliff(&["decompose", "--in", &input, "--out", out.to_str().unwrap(), "--verify"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let doc = json(&out);
    assert_eq!(doc["kind"], "sequence");
    assert_eq!(doc["format_version"], 1);
    assert!(doc["gates"].as_array().unwrap().is_empty());
}

#[test]
fn decompose_swap_verifies() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "swap.json", r#"{"format_version":1,"group":"2","kind":"symplectic","matrix":[[0,1],[1,0]]}"#);
    let o = gcliff(&["decompose", "--in", &input, "--verify"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stderr).contains("verify: pass"));
}

#[test]
fn decompose_tableau_in_embedded_convention() {
    let dir = TempDir::new().unwrap();
    // S on Z_4 x Z_2 written with the Z_2 slots scaled by 2.
    let input = write(
        &dir,
        "t.json",
        r#"{"format_version":1,"group":"4,2","convention":"embedded","kind":"tableau",
            "x_images":[{"phase":"1/8","x":[1,0],"z":[1,0]},{"phase":"0/1","x":[0,2],"z":[0,0]}],
            "z_images":[{"phase":"0/1","x":[0,0],"z":[1,0]},{"phase":"0/1","x":[0,0],"z":[0,2]}]}"#,
    );
    let o = gcliff(&["decompose", "--in", &input, "--verify", "--convention", "embedded"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let doc: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["convention"], "embedded");
}

#[test]
fn corrupted_matrix_exits_2() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "bad.json", r#"{"format_version":1,"group":"4","kind":"symplectic","matrix":[[1,0],[0,3]]}"#);
    let o = gcliff(&["decompose", "--in", &input]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("error[not-symplectic]"));
}

#[test]
fn parse_errors_carry_locations() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "broken.json", "{\"format_version\":1,\n\"group\":\"2\",\n\"kind\":\"symplectic\",\"matrix\":[[1,0],[0,1]");
    let o = gcliff(&["decompose", "--in", &input]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("error[parse]") && err.contains("line"), "{err}");
    let missing = write(&dir, "nover.json", r#"{"group":"2","kind":"symplectic","matrix":[[1,0],[0,1]]}"#);
    assert_eq!(gcliff(&["decompose", "--in", &missing]).status.code(), Some(2));
}

#[test]
fn zero_state_measures_zero() {
    let dir = TempDir::new().unwrap();
    let input = write(
        &dir,
        "z.json",
        r#"{"format_version":1,"group":"3","kind":"circuit","qudits":1,"ops":[
            {"op":"measure","register":"m","slots":[0],"observables":[{"x":[0],"z":[1]}]}]}"#,
    );
    for backend in ["tableau", "dense"] {
        let o = gcliff(&["simulate", "--in", &input, "--backend", backend, "--shots", "50", "--seed", "1"]);
        assert_eq!(o.status.code(), Some(0));
        let doc: Value = serde_json::from_slice(&o.stdout).unwrap();
        assert_eq!(doc["frequencies"]["m"]["0"], 1.0);
    }
}

#[test]
fn seeded_simulation_is_reproducible() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "plus.json", PLUS);
    let run = |backend: &str| gcliff(&["simulate", "--in", &input, "--backend", backend, "--shots", "10000", "--seed", "42"]).stdout;
    let a = run("tableau");
    assert_eq!(a, run("tableau"));
    let doc: Value = serde_json::from_slice(&a).unwrap();
    let f0 = doc["frequencies"]["m"]["0"].as_f64().unwrap();
    assert!((f0 - 0.5).abs() < 0.03, "{f0}");
    let dense: Value = serde_json::from_slice(&run("dense")).unwrap();
    let g0 = dense["frequencies"]["m"]["0"].as_f64().unwrap();
    assert!((g0 - 0.5).abs() < 0.03, "{g0}");
}

#[test]
fn branch_tables_agree_between_backends() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "plus.json", PLUS);
    let table = |backend: &str| {
        let o = gcliff(&["simulate", "--in", &input, "--backend", backend, "--branches", "--shots", "0"]);
        assert_eq!(o.status.code(), Some(0));
        let doc: Value = serde_json::from_slice(&o.stdout).unwrap();
        doc["branches"].as_array().unwrap().clone()
    };
    let (d, t) = (table("dense"), table("tableau"));
    assert_eq!(d.len(), 2);
    for (a, b) in d.iter().zip(&t) {
        assert_eq!(a["record"], b["record"]);
        assert!((a["probability"].as_f64().unwrap() - b["probability"].as_f64().unwrap()).abs() < 1e-9);
    }
}

#[test]
fn shots_without_seed_is_an_input_error() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "plus.json", PLUS);
    assert_eq!(gcliff(&["simulate", "--in", &input, "--shots", "3"]).status.code(), Some(2));
}

#[test]
fn magic_state_on_tableau_backend_is_rejected() {
    let dir = TempDir::new().unwrap();
    let circuit = dir.path().join("magic.json");
    let o = gcliff(&["verify", "--group", "2", "--protocol", "magic", "--circuit-out", circuit.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let c = circuit.to_str().unwrap();
    let t = gcliff(&["simulate", "--in", c, "--backend", "tableau", "--shots", "1", "--seed", "0"]);
    assert_eq!(t.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&t.stderr).contains("non-stabilizer"));
    let d = gcliff(&["simulate", "--in", c, "--backend", "dense", "--branches", "--shots", "0"]);
    assert_eq!(d.status.code(), Some(0));
}

#[test]
fn dense_cap_exits_3() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "plus.json", PLUS);
    let o = gcliff(&["simulate", "--in", &input, "--backend", "dense", "--branches", "--shots", "0", "--dense-cap", "1"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn verify_qubits_and_reports_are_deterministic() {
    let dir = TempDir::new().unwrap();
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    for p in [&a, &b] {
        let o = gcliff(&["verify", "--group", "2", "--seed", "3", "--out", p.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    let doc = json(&a);
    assert_eq!(doc["passed"], true);
    let names: Vec<&str> = doc["checks"].as_array().unwrap().iter().map(|c| c["protocol"].as_str().unwrap()).collect();
    for want in ["qubit-classics", "cx", "triple-identity", "conjugation-rules"] {
        assert!(names.contains(&want), "{names:?}");
    }
}

#[test]
fn verify_z4_z2() {
    let o = gcliff(&["verify", "--group", "4,2", "--samples", "20"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn counterexample_certificate() {
    let o = gcliff(&["counterexample", "--group", "2,4"]);
    assert_eq!(o.status.code(), Some(0));
    let doc: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["details"]["verdict"], "target not in H");
    assert_eq!(gcliff(&["counterexample", "--group", "2,2"]).status.code(), Some(2));
    assert_eq!(gcliff(&["counterexample", "--bfs", "--bfs-cap", "10"]).status.code(), Some(3));
}

#[test]
fn canonicalize_crt() {
    let o = gcliff(&["canonicalize", "--group", "2,3"]);
    assert_eq!(o.status.code(), Some(0));
    let doc: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["kind"], "isomorphism");
    assert_eq!(doc["target"], "6");
    assert_eq!(gcliff(&["canonicalize", "--group", "1,2"]).status.code(), Some(2));
}

#[test]
fn protocol_circuits_roundtrip_through_files() {
    let dir = TempDir::new().unwrap();
    let circuit = dir.path().join("cx.json");
    let o = gcliff(&["verify", "--group", "3", "--protocol", "cx", "--circuit-out", circuit.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let o = gcliff(&["simulate", "--in", circuit.to_str().unwrap(), "--backend", "tableau", "--branches", "--shots", "0"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let doc: Value = serde_json::from_slice(&o.stdout).unwrap();
    let total: f64 = doc["branches"].as_array().unwrap().iter().map(|b| b["probability"].as_f64().unwrap()).sum();
    assert!((total - 1.0).abs() < 1e-9);
}
