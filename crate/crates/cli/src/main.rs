//! `elemstate`: run scenario files and small demonstrations, print JSON.
//!
//! Exit codes: 0 all checks passed, 1 a check failed, 2 bad arguments or
//! unparsable input, 3 input that parses but is invalid.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::json;

use elemstate::operators::chsh_settings_from_angles;
use elemstate::probability::CorrelationReport;
use elemstate::reduction::{spectral_projector, IntervalUnion};
use elemstate::scenario::{
    collapse_demo, gns_summary, run_scenario, DeviceSpec, OperatorSpec, RunOptions, Scenario, ScenarioError,
    StateSpec, DEFAULT_GNS_PROBES, DEFAULT_IDENTITY_TRIALS, DEFAULT_SAMPLES,
};
use elemstate::{Error, QuantumState, ScenarioCorrelations};

#[derive(Parser)]
#[command(name = "elemstate", version, about = "Elementary-state measurement laboratory")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Overrides the scenario seed.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Overrides the number of Monte-Carlo draws.
    #[arg(long, global = true)]
    samples: Option<usize>,
    /// Omit timestamps and timings so reruns are byte-identical.
    #[arg(long, global = true)]
    stable_output: bool,
    /// Multiplies every assertion tolerance.
    #[arg(long, global = true, default_value_t = 1.0)]
    tolerance_scale: f64,
    /// Write the report here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario file.
    Run { scenario: PathBuf },
    /// GNS construction for a state.
    Gns {
        /// State: a name (`maximally_mixed`, `singlet`), inline JSON, or @file.
        #[arg(long, default_value = "maximally_mixed")]
        state: String,
        #[arg(long)]
        dimension: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_GNS_PROBES)]
        probes: usize,
    },
    /// CHSH correlations for spin settings `cos t Z + sin t X` on each qubit.
    Chsh {
        #[arg(long, default_value = "singlet")]
        state: String,
        /// Angles a1,a2,b1,b2 in radians (default: the maximal-violation settings).
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        angles: Option<Vec<f64>>,
    },
    /// Collapse versus classical conditioning for one yes-no experiment.
    CollapseDemo {
        #[arg(long, default_value = "{\"pure\": {\"re\": [0.7071067811865476, 0.7071067811865476]}}")]
        state: String,
        #[arg(long)]
        dimension: Option<usize>,
        /// Observable whose spectral window defines the yes-no experiment.
        #[arg(long, default_value = "pauli_z")]
        observable: String,
        /// Window as JSON, e.g. `[[0.5, "inf"]]`.
        #[arg(long, default_value = "[[0.5, \"inf\"]]")]
        window: String,
        /// Observable whose conditional mean is compared.
        #[arg(long, default_value = "pauli_z")]
        target: String,
        #[arg(long, default_value_t = DEFAULT_IDENTITY_TRIALS)]
        trials: usize,
    },
    /// Character values of an observable in a device type.
    CharacterTable {
        /// Device spec JSON (`{"id": .., "family": [..]}`) or @file.
        #[arg(long)]
        device: String,
        #[arg(long)]
        observable: String,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn parse(message: impl Into<String>) -> Self {
        Self { code: 2, message: message.into() }
    }

    fn invalid(message: impl Into<String>) -> Self {
        Self { code: 3, message: message.into() }
    }
}

impl From<ScenarioError> for Failure {
    fn from(e: ScenarioError) -> Self {
        match e {
            ScenarioError::Parse(m) => Failure::parse(m),
            ScenarioError::Validation(m) => Failure::invalid(m),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::invalid(e.to_string())
    }
}

/// Inline JSON, `@path`, or a bare word taken as a JSON string.
fn parse_arg<T: DeserializeOwned>(raw: &str, what: &str) -> Result<T, Failure> {
    let text = match raw.strip_prefix('@') {
        Some(path) => {
            std::fs::read_to_string(path).map_err(|e| Failure::parse(format!("{what}: {path}: {e}")))?
        }
        None => raw.to_string(),
    };
    serde_json::from_str(&text)
        .or_else(|first| serde_json::from_value(json!(text.trim())).map_err(|_| first))
        .map_err(|e| Failure::parse(format!("{what}: {e}")))
}

fn state_arg(raw: &str, dimension: Option<usize>) -> Result<QuantumState, Failure> {
    let spec: StateSpec = parse_arg(raw, "state")?;
    let n = dimension.or(spec.natural_dim()).unwrap_or(2);
    Ok(spec.resolve(n)?)
}

fn emit<T: Serialize>(value: &T, output: &Option<PathBuf>) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).expect("report serializes") + "\n";
    match output {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure { code: 1, message: e.to_string() }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<bool, Failure> {
    let g = &cli.global;
    if !(g.tolerance_scale.is_finite() && g.tolerance_scale > 0.0) {
        return Err(Failure::parse("--tolerance-scale must be positive"));
    }
    let seed = g.seed.unwrap_or(0);
    let samples = g.samples.unwrap_or(DEFAULT_SAMPLES);
    match &cli.command {
        Command::Run { scenario } => {
            let scenario = Scenario::from_file(scenario)?;
            let opts = RunOptions {
                seed: g.seed,
                samples: g.samples,
                stable_output: g.stable_output,
                tolerance_scale: g.tolerance_scale,
            };
            let report = run_scenario(&scenario, &opts)?;
            emit(&report, &g.output)?;
            if !report.passed {
                eprintln!("failed tasks: {}", report.failed_tasks().join(", "));
            }
            Ok(report.passed)
        }
        Command::Gns { state, dimension, probes } => {
            let psi = state_arg(state, *dimension)?;
            let summary = gns_summary(&psi, *probes, seed)?;
            emit(&summary, &g.output)?;
            Ok(summary.passed(g.tolerance_scale))
        }
        Command::Chsh { state, angles } => {
            let psi = state_arg(state, Some(4))?;
            let angles = match angles {
                Some(a) if a.len() == 4 => [a[0], a[1], a[2], a[3]],
                Some(a) => return Err(Failure::parse(format!("--angles needs 4 values, got {}", a.len()))),
                None => {
                    let pi = std::f64::consts::PI;
                    [0.0, pi / 2.0, 5.0 * pi / 4.0, 3.0 * pi / 4.0]
                }
            };
            let c = ScenarioCorrelations::from_state(&psi, &chsh_settings_from_angles(angles))?;
            emit(&CorrelationReport::new(&c), &g.output)?;
            Ok(true)
        }
        Command::CollapseDemo { state, dimension, observable, window, target, trials } => {
            let a: OperatorSpec = parse_arg(observable, "observable")?;
            let a = a.resolve()?;
            let psi = state_arg(state, dimension.or(Some(a.dim())))?;
            let window: IntervalUnion = parse_arg(window, "window")?;
            let target: OperatorSpec = parse_arg(target, "target")?;
            let target = target.resolve()?;
            let p = spectral_projector(&a, &window)?;
            let demo = collapse_demo(&psi, &target, &p, samples, seed, *trials)?;
            emit(&demo, &g.output)?;
            Ok(demo.passed(g.tolerance_scale))
        }
        Command::CharacterTable { device, observable } => {
            let a: OperatorSpec = parse_arg(observable, "observable")?;
            let a = a.resolve()?;
            let spec: DeviceSpec = parse_arg(device, "device")?;
            let d = spec.resolve(a.dim(), seed)?;
            let values = d.character_values(&a)?;
            let mut spectrum = a.spectrum()?;
            spectrum.sort_by(f64::total_cmp);
            let rows: Vec<_> =
                values.iter().enumerate().map(|(k, v)| json!({ "character": k, "value": v })).collect();
            emit(&json!({ "device": d.id(), "characters": rows, "spectrum": spectrum }), &g.output)?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
