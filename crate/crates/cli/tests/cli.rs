use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn elemstate(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_elemstate")).args(args).output().expect("binary runs")
}

fn scenario(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("scenarios").join(name)
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn bundled_scenarios_pass() {
    for name in ["spin_half.json", "chsh_singlet.json"] {
        let out = elemstate(&["run", scenario(name).to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0), "{name}: {}", String::from_utf8_lossy(&out.stderr));
        let report = json(&out);
        assert_eq!(report["passed"], true);
        assert!(report["timestamp"].is_u64());
    }
}

#[test]
fn stable_output_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let path = scenario("chsh_singlet.json");
    let mut outputs = Vec::new();
    for k in 0..2 {
        let file = dir.path().join(format!("r{k}.json"));
        let out = elemstate(&[
            "--stable-output",
            "--seed",
            "31",
            "-o",
            file.to_str().unwrap(),
            "run",
            path.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0));
        outputs.push(std::fs::read(file).unwrap());
    }
    assert_eq!(outputs[0], outputs[1]);
    let text = String::from_utf8(outputs[0].clone()).unwrap();
    assert!(!text.contains("timestamp") && !text.contains("elapsed_ms"));
    assert!(text.contains("\"seed\": 31"));
}

#[test]
fn failing_task_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("wrong.json");
    std::fs::write(
        &file,
        r#"{
            "name": "wrong expectation",
            "dimension": 4,
            "state": "singlet",
            "registry": [{"id": "zz", "family": ["pauli_z⊗identity", "identity⊗pauli_z"]}],
            "tasks": [{
                "task": "chsh",
                "settings": ["pauli_z⊗identity", "pauli_x⊗identity", "identity⊗pauli_z", "identity⊗pauli_x"],
                "expect": 2.0
            }]
        }"#,
    )
    .unwrap();
    let out = elemstate(&["run", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["passed"], false);
}

#[test]
fn parse_and_validation_errors() {
    let dir = tempfile::tempdir().unwrap();
    let garbled = dir.path().join("garbled.json");
    std::fs::write(&garbled, "{ not json").unwrap();
    assert_eq!(elemstate(&["run", garbled.to_str().unwrap()]).status.code(), Some(2));

    let bad_ref = dir.path().join("bad_ref.json");
    std::fs::write(
        &bad_ref,
        r#"{"name": "x", "dimension": 2, "state": "maximally_mixed",
            "registry": [{"id": "z", "family": ["pauli_z"]}],
            "tasks": [{"task": "ensemble_mean", "device": "nope", "observable": "pauli_z"}]}"#,
    )
    .unwrap();
    assert_eq!(elemstate(&["run", bad_ref.to_str().unwrap()]).status.code(), Some(3));

    let bad_dim = dir.path().join("bad_dim.json");
    std::fs::write(
        &bad_dim,
        r#"{"name": "x", "dimension": 2, "state": "singlet", "registry": [], "tasks": []}"#,
    )
    .unwrap();
    assert_eq!(elemstate(&["run", bad_dim.to_str().unwrap()]).status.code(), Some(3));

    assert_eq!(elemstate(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn gns_subcommand() {
    let out = elemstate(&["gns", "--state", "singlet"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["source_dim"], 4);
    assert_eq!(v["rep_dim"], 4);
    assert_eq!(v["faithful"], true);
    assert!(v["max_residual"].as_f64().unwrap() <= 1e-9);

    let out = elemstate(&["gns", "--state", "maximally_mixed", "--dimension", "3"]);
    assert_eq!(json(&out)["rep_dim"], 9);
}

#[test]
fn chsh_subcommand() {
    let out = elemstate(&["chsh"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!((v["chsh"].as_f64().unwrap() - 2.0 * 2f64.sqrt()).abs() <= 1e-9);
    assert_eq!(v["joint_measure"], "infeasible");
    assert!(v["witness"]["expression"].is_string());

    let aligned = elemstate(&["chsh", "--angles", "0,0,0,0"]);
    assert_eq!(json(&aligned)["joint_measure"], "feasible");
}

#[test]
fn collapse_demo_subcommand() {
    let out = elemstate(&["--seed", "3", "--samples", "20000", "collapse-demo"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["analytic"], 1.0);
    assert_eq!(v["empirical"]["N"], 20000);
    assert_eq!(v["empirical"]["seed"], 3);
    for key in ["eq22", "eq23", "eq24_26"] {
        assert!(v["identities"][key].as_f64().unwrap() <= 1e-9);
    }

    let out = elemstate(&[
        "collapse-demo",
        "--state",
        "maximally_mixed",
        "--observable",
        "{\"identity\": 3}",
        "--window",
        "[[5.0, 6.0]]",
        "--target",
        "{\"identity\": 3}",
    ]);
    assert_eq!(out.status.code(), Some(3), "zero-probability window is rejected");
}

#[test]
fn character_table_subcommand() {
    let device = r#"{"id": "zz", "family": ["pauli_z⊗identity", "identity⊗pauli_z"]}"#;
    let out = elemstate(&["character-table", "--device", device, "--observable", "pauli_z⊗pauli_z"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let mut values: Vec<f64> =
        v["characters"].as_array().unwrap().iter().map(|c| c["value"].as_f64().unwrap()).collect();
    values.sort_by(f64::total_cmp);
    assert_eq!(values.len(), 4);
    for (x, y) in values.iter().zip([-1.0, -1.0, 1.0, 1.0]) {
        assert!((x - y).abs() <= 1e-12);
    }

    let out = elemstate(&["character-table", "--device", device, "--observable", "pauli_x⊗identity"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn csv_export() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("draws.csv");
    let file = dir.path().join("export.json");
    std::fs::write(
        &file,
        format!(
            r#"{{"name": "export", "dimension": 2, "state": {{"basis": 0}},
                "registry": [{{"id": "z", "family": ["pauli_z"]}}],
                "tasks": [{{"task": "ensemble_mean", "device": "z", "observable": "pauli_z",
                            "export_csv": {}}}],
                "samples": 5, "seed": 1}}"#,
            serde_json::to_string(csv.to_str().unwrap()).unwrap()
        ),
    )
    .unwrap();
    let out = elemstate(&["run", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(csv).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "draw,xi,character_index");
    assert_eq!(lines.len(), 6);
}
