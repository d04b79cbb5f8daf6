//! End-to-end CLI behavior: dataset determinism, worker-count independence,
//! exit codes, config validation, manifest completeness.

use std::collections::BTreeMap;
use std::path::Path;
use std::process::Command;

use metrol_cli::{config::ExperimentConfig, scenarios, Scenario};

fn read_dir_files(dir: &Path) -> BTreeMap<String, Vec<u8>> {
    let mut out = BTreeMap::new();
    for entry in std::fs::read_dir(dir).unwrap() {
        let entry = entry.unwrap();
        let name = entry.file_name().to_string_lossy().to_string();
        out.insert(name, std::fs::read(entry.path()).unwrap());
    }
    out
}

fn small_config(scenario: &str, out_dir: &Path) -> ExperimentConfig {
    let toml = format!(
        r#"
scenario = "{scenario}"
[physical]
delta_grid = [-30.0, -20.0, -5.0]
[numerics]
h = 1e-3
t_max = 4.0
[output]
directory = "{}"
"#,
        out_dir.display()
    );
    ExperimentConfig::from_toml(&toml).unwrap()
}

#[test]
fn datasets_are_deterministic_across_runs() {
    let tmp = tempfile::tempdir().unwrap();
    let dir_a = tmp.path().join("a");
    let dir_b = tmp.path().join("b");

    let mut config = small_config("steady-state", &dir_a);
    scenarios::run(&config, 2).unwrap();
    config.output.directory = dir_b.clone();
    scenarios::run(&config, 2).unwrap();

    let files_a = read_dir_files(&dir_a);
    let files_b = read_dir_files(&dir_b);
    assert_eq!(
        files_a.keys().collect::<Vec<_>>(),
        files_b.keys().collect::<Vec<_>>()
    );
    for (name, bytes) in &files_a {
        if name == "manifest.toml" {
            continue; // carries wall time; data files must be byte-identical
        }
        assert_eq!(bytes, &files_b[name], "{name} differs between runs");
    }
}

#[test]
fn parallel_equals_serial_byte_for_byte() {
    let tmp = tempfile::tempdir().unwrap();
    let dir_serial = tmp.path().join("serial");
    let dir_parallel = tmp.path().join("parallel");

    let mut config = small_config("steady-state", &dir_serial);
    scenarios::run(&config, 1).unwrap();
    config.output.directory = dir_parallel.clone();
    scenarios::run(&config, 8).unwrap();

    let serial = read_dir_files(&dir_serial);
    let parallel = read_dir_files(&dir_parallel);
    for (name, bytes) in &serial {
        if name == "manifest.toml" {
            continue;
        }
        assert_eq!(bytes, &parallel[name], "{name} differs with 8 workers");
    }
}

#[test]
fn manifest_echoes_every_config_field() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path().join("out");
    let config = small_config("spectrum", &dir);
    scenarios::run(&config, 1).unwrap();

    let manifest_text = std::fs::read_to_string(dir.join("manifest.toml")).unwrap();
    let manifest: toml::Value = toml::from_str(&manifest_text).unwrap();
    let echoed = manifest.get("config").expect("manifest has [config]");
    let original: toml::Value = toml::from_str(&config.to_toml()).unwrap();
    assert_eq!(echoed, &original, "manifest config echo differs");
    for key in ["scenario", "code_version", "wall_time_seconds", "workers", "status"] {
        assert!(
            manifest.get("run").unwrap().get(key).is_some(),
            "run.{key} missing"
        );
    }
}

#[test]
fn json_format_mirrors_csv_datasets() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path().join("out");
    let toml = format!(
        r#"
scenario = "spectrum"
[physical]
delta_grid = [-20.0, -10.0]
[output]
directory = "{}"
format = "json"
"#,
        dir.display()
    );
    let config = ExperimentConfig::from_toml(&toml).unwrap();
    scenarios::run(&config, 1).unwrap();
    let text = std::fs::read_to_string(dir.join("spectrum.json")).unwrap();
    let parsed: serde_json::Value = serde_json::from_str(&text).unwrap();
    let rows = parsed.as_array().unwrap();
    assert_eq!(rows.len(), 2);
    assert!(rows[0].get("omega0").unwrap().as_f64().unwrap() > 0.0);
    assert!(rows[0].get("z").unwrap().as_f64().unwrap() > 0.0);
}

#[test]
fn scaling_scenario_emits_pinned_columns() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path().join("out");
    let toml = format!(
        r#"
scenario = "scaling-vs-n"
[physical]
delta_grid = [-20.0]
[probe]
n_grid = [2, 4]
[numerics]
h = 2e-4
t_max = 4.0
[output]
directory = "{}"
"#,
        dir.display()
    );
    let config = ExperimentConfig::from_toml(&toml).unwrap();
    let outcome = scenarios::run(&config, 2).unwrap();
    assert_eq!(outcome.exit_code(), 0);
    let csv = std::fs::read_to_string(dir.join("scaling_delta_-20.000.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(
        lines.next().unwrap(),
        "n,min_delta_omega,bound_eq13,hl_reference"
    );
    assert_eq!(csv.lines().count(), 3);
}

// binary-level checks

fn metrol() -> Command {
    Command::new(env!("CARGO_BIN_EXE_metrol"))
}

#[test]
fn empty_delta_grid_exits_one_with_field_name() {
    let tmp = tempfile::tempdir().unwrap();
    let config_path = tmp.path().join("bad.toml");
    std::fs::write(
        &config_path,
        "scenario = \"steady-state\"\n[physical]\ndelta_grid = []\n",
    )
    .unwrap();
    let output = metrol()
        .args(["validate", "--config"])
        .arg(&config_path)
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(
        stderr.contains("physical.delta_grid: empty"),
        "stderr: {stderr}"
    );
}

#[test]
fn per_point_failures_exit_two_and_land_in_manifest() {
    let tmp = tempfile::tempdir().unwrap();
    let config_path = tmp.path().join("partial.toml");
    let out_dir = tmp.path().join("out");
    // delta = -120 puts omega0 below zero: that point fails, the rest succeed
    std::fs::write(
        &config_path,
        format!(
            "scenario = \"steady-state\"\n[physical]\ndelta_grid = [-120.0, -20.0]\n\
             [numerics]\nh = 1e-3\nt_max = 2.0\n[output]\ndirectory = \"{}\"\n",
            out_dir.display()
        ),
    )
    .unwrap();
    let output = metrol()
        .args(["run", "--config"])
        .arg(&config_path)
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(2), "stderr: {}", String::from_utf8_lossy(&output.stderr));
    let manifest = std::fs::read_to_string(out_dir.join("manifest.toml")).unwrap();
    assert!(manifest.contains("status = \"partial\""));
    assert!(manifest.contains("delta=-120.000"));
    // the good point still produced a data row
    let csv = std::fs::read_to_string(out_dir.join("steady_state.csv")).unwrap();
    assert_eq!(csv.lines().count(), 2);
}

#[test]
fn scenario_flag_overrides_config() {
    let tmp = tempfile::tempdir().unwrap();
    let config_path = tmp.path().join("run.toml");
    let out_dir = tmp.path().join("out");
    std::fs::write(
        &config_path,
        format!(
            "scenario = \"steady-state\"\n[physical]\ndelta_grid = [-20.0, -10.0]\n\
             [output]\ndirectory = \"{}\"\n",
            out_dir.display()
        ),
    )
    .unwrap();
    let output = metrol()
        .args(["run", "--scenario", "spectrum", "--config"])
        .arg(&config_path)
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&output.stderr));
    assert!(out_dir.join("spectrum.csv").exists());
}

#[test]
fn units_subcommand_prints_gamma0_parameters() {
    let output = metrol()
        .args([
            "units",
            "--omega-c-ghz",
            "8.0",
            "--gamma0-mhz",
            "50",
            "--omega0-ghz",
            "8.0",
        ])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(0));
    let stdout = String::from_utf8_lossy(&output.stdout);
    assert!(stdout.contains("omega_c = 160.000000 gamma0"), "{stdout}");
    assert!(stdout.contains("delta   = 0.000000 gamma0"), "{stdout}");
    let bad = metrol()
        .args(["units", "--omega-c-ghz", "0", "--gamma0-mhz", "50", "--omega0-ghz", "8"])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn shipped_configs_validate() {
    let configs_dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../configs");
    let mut seen = 0usize;
    for entry in std::fs::read_dir(configs_dir).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().is_some_and(|e| e == "toml") {
            let text = std::fs::read_to_string(&path).unwrap();
            ExperimentConfig::from_toml(&text)
                .unwrap_or_else(|e| panic!("{}: {e}", path.display()));
            seen += 1;
        }
    }
    assert_eq!(seen, 6, "expected one config per scenario");
}

#[test]
fn validate_accepts_shipped_scenario_names() {
    for scenario in [
        Scenario::SteadyState,
        Scenario::Spectrum,
        Scenario::PrecisionEvolution,
        Scenario::ScalingVsN,
        Scenario::MarkovianCheck,
        Scenario::AsymptoteCheck,
    ] {
        assert_eq!(Scenario::parse(scenario.as_str()).unwrap(), scenario);
    }
    assert!(Scenario::parse("fig-1a").is_err());
}
