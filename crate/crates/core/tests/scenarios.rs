use std::path::PathBuf;

use elemstate::scenario::{run_scenario_file, RunOptions};

fn bundled(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../cli/scenarios").join(name)
}

#[test]
fn bundled_scenarios_pass() {
    for name in ["spin_half.json", "chsh_singlet.json"] {
        let opts = RunOptions { stable_output: true, ..RunOptions::default() };
        let r = run_scenario_file(&bundled(name), &opts).unwrap();
        if std::env::var_os("SHOW").is_some() {
            println!("{}", serde_json::to_string_pretty(&r).unwrap());
        }
        assert!(r.passed, "{name}: {}", serde_json::to_string_pretty(&r).unwrap());
    }
}
