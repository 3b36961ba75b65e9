//! End-to-end tests of the command-line interface: subcommand output
//! schemas, exit codes, error objects, seed precedence, and byte-identical
//! reruns.

use std::process::{Command, Output};

use serde_json::Value;

fn binary() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_firefly-games"));
    // Tests control the seed explicitly; keep the ambient environment out.
    cmd.env_remove("FIREFLY_GAMES_SEED");
    cmd
}

fn run(args: &[&str]) -> Output {
    binary()
        .args(args)
        .output()
        .expect("binary spawns and terminates")
}

fn stdout_json(output: &Output) -> Value {
    assert!(
        output.status.success(),
        "expected success, got {:?}: {}",
        output.status.code(),
        String::from_utf8_lossy(&output.stderr)
    );
    serde_json::from_slice(&output.stdout).expect("stdout is a JSON document")
}

fn stderr_error_kind(output: &Output) -> String {
    let err: Value = serde_json::from_slice(&output.stderr).expect("stderr is a JSON error object");
    err["error"]["kind"]
        .as_str()
        .expect("error object has a kind")
        .to_string()
}

#[test]
fn solve_reports_the_unique_reference_equilibrium() {
    let output = run(&["solve", "--payoff", "1,9,10,2", "--verify", "--grid", "512"]);
    let report = stdout_json(&output);
    assert_eq!(report["kind"], "unique");
    let theta = report["theta"].as_f64().unwrap();
    assert!((theta - std::f64::consts::FRAC_PI_4).abs() < 1e-12);
    assert!((report["value"].as_f64().unwrap() - 2.75).abs() < 1e-12);
    assert!((report["classical_value"].as_f64().unwrap() - 28.0 / 11.0).abs() < 1e-12);
    assert_eq!(report["oracle"], "pass");
    assert_eq!(report["equilibria"].as_array().unwrap().len(), 1);
    assert_eq!(report["oracle_checks"].as_array().unwrap().len(), 1);
}

#[test]
fn solve_reports_both_boundary_equilibria() {
    let output = run(&["solve", "--payoff", "1,2,9,8"]);
    let report = stdout_json(&output);
    assert_eq!(report["kind"], "multiple");
    let equilibria = report["equilibria"].as_array().unwrap();
    assert_eq!(equilibria.len(), 2);
    for eq in equilibria {
        assert!((eq["value"].as_f64().unwrap() - 2.5).abs() < 1e-10);
    }
    let notes = report["notes"].as_array().unwrap();
    assert!(notes
        .iter()
        .any(|n| n.as_str().unwrap().contains("twice each value")));
}

#[test]
fn degenerate_stakes_exit_2_with_error_objects() {
    let output = run(&["solve", "--payoff", "1,1,1,1"]);
    assert_eq!(output.status.code(), Some(2));
    assert!(output.stdout.is_empty());
    assert_eq!(stderr_error_kind(&output), "degenerate-omega");

    // c1 = c3 with c2 != c4 keeps omega nonzero but zeroes the determinant.
    let output = run(&["solve", "--payoff", "1,1,3,3"]);
    assert_eq!(output.status.code(), Some(2));
    assert_eq!(stderr_error_kind(&output), "degenerate-game");

    // A ratio of exactly 1 drives the solved angle onto the boundary.
    let output = run(&["solve", "--payoff", "0.5,1,1.5,3"]);
    assert_eq!(output.status.code(), Some(2));
    assert_eq!(stderr_error_kind(&output), "degenerate-representation");
}

#[test]
fn kind_none_exits_0_with_a_candidate() {
    let output = run(&["solve", "--payoff", "1,2,3,100"]);
    let report = stdout_json(&output);
    assert_eq!(report["kind"], "none");
    assert!(report["equilibria"].as_array().unwrap().is_empty());
    assert!(report["candidate"]["certified"].as_bool() == Some(false));

    // Verification agrees: the best candidate still has a profitable
    // deviation, so the overall verdict stays "pass".
    let output = run(&["solve", "--payoff", "1,2,3,100", "--verify", "--grid", "512"]);
    let report = stdout_json(&output);
    assert_eq!(report["oracle"], "pass");
    assert_eq!(report["candidate_check"]["pass"], false);
}

#[test]
fn usage_mistakes_exit_1() {
    for args in [
        &["solve", "--payoff", "1,9,10"] as &[&str],
        &["solve", "--payoff", "1,9,ten,2"],
        &["solve"],
        &["bogus-subcommand"],
        &["solve", "--payoff", "1,9,10,2", "--json", "--csv"],
        &["solve", "--payoff", "1,9,10,2", "--tolerance-overrides", "bogus=1"],
        &["lattice", "check", "firefly", "--csv"],
        &["payoff", "eval", "--payoff", "1,9,10,2"],
        &["payoff", "eval", "--payoff", "1,9,10,2", "--windows-a", "0.5,0.5,0.5,0.5"],
    ] {
        let output = run(args);
        assert_eq!(output.status.code(), Some(1), "args: {args:?}");
    }
}

#[test]
fn help_exits_0() {
    let output = run(&["--help"]);
    assert_eq!(output.status.code(), Some(0));
    assert!(!output.stdout.is_empty());
}

#[test]
fn nonpositive_stakes_are_domain_errors() {
    let output = run(&["solve", "--payoff", "1,9,-10,2"]);
    assert_eq!(output.status.code(), Some(2));
    assert_eq!(stderr_error_kind(&output), "invalid-payoff");
}

#[test]
fn lattice_check_reads_fixtures_and_files() {
    let output = run(&["lattice", "check", "firefly"]);
    let report = stdout_json(&output);
    assert_eq!(report["elements"], 6);
    assert_eq!(report["distributive"], false);
    assert_eq!(report["distributivity_witness"].as_array().unwrap().len(), 3);
    assert_eq!(report["orthomodular"], true);
    assert_eq!(report["all_laws_hold"], true);

    let output = run(&["lattice", "check", "boolean4"]);
    let report = stdout_json(&output);
    assert_eq!(report["elements"], 16);
    assert_eq!(report["distributive"], true);
    assert_eq!(report["orthomodular"], true);

    let output = run(&["lattice", "check", "hexagon"]);
    let report = stdout_json(&output);
    assert_eq!(report["orthomodular"], false);
    assert_eq!(
        report["orthomodularity_counterexample"]
            .as_array()
            .unwrap()
            .len(),
        2
    );

    // A lattice document loaded from disk goes through the same checks.
    let dir = std::env::temp_dir().join("firefly-games-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("pentagon.json");
    std::fs::write(
        &path,
        serde_json::json!({
            "elements": ["bot", "x", "y", "z", "top"],
            "covers": [["bot", "x"], ["x", "y"], ["y", "top"], ["bot", "z"], ["z", "top"]],
            "ortho": {"bot": "top", "top": "bot", "x": "z", "z": "x", "y": "z"},
            "bottom": "bot",
            "top": "top"
        })
        .to_string(),
    )
    .unwrap();
    // The pentagon violates the orthocomplement laws (y' = z but y join z
    // is not top), so construction must reject it as a domain error.
    let output = run(&["lattice", "check", path.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(2));
    assert_eq!(stderr_error_kind(&output), "invalid-lattice");

    let output = run(&["lattice", "check", "no-such-file.json"]);
    assert_eq!(output.status.code(), Some(2));
    assert_eq!(stderr_error_kind(&output), "invalid-config");
}

#[test]
fn lattice_check_accepts_a_valid_file_round_trip() {
    // Serialize the builtin firefly fixture, reload it through the CLI, and
    // expect the same verdicts as the builtin.
    let lattice = firefly_games::ortholattice::firefly();
    let dir = std::env::temp_dir().join("firefly-games-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("firefly-roundtrip.json");
    std::fs::write(&path, serde_json::to_string(&lattice).unwrap()).unwrap();

    let from_file = stdout_json(&run(&["lattice", "check", path.to_str().unwrap()]));
    let builtin = stdout_json(&run(&["lattice", "check", "firefly"]));
    assert_eq!(from_file["distributive"], builtin["distributive"]);
    assert_eq!(from_file["orthomodular"], builtin["orthomodular"]);
    assert_eq!(from_file["elements"], builtin["elements"]);
    assert_eq!(from_file["laws"], builtin["laws"]);
}

#[test]
fn measures_ellipse_separates_on_and_off_curve_points() {
    // The reference equilibrium windows lie on the constraint curve.
    let output = run(&[
        "measures",
        "ellipse",
        "--wu",
        "0.8946761086881632",
        "--wl",
        "0.19302969324253982",
        "--theta",
        "0.7853981633974483",
    ]);
    let report = stdout_json(&output);
    assert_eq!(report["on_ellipse"], true);

    // The off-curve probe sits far outside the tolerance band.
    let output = run(&[
        "measures", "ellipse", "--wu", "0.857", "--wl", "0.622", "--theta",
        "0.7853981633974483",
    ]);
    let report = stdout_json(&output);
    assert_eq!(report["on_ellipse"], false);
    assert!(report["residual"].as_f64().unwrap().abs() > 0.1);

    // Degenerate representation angles are domain errors.
    let output = run(&["measures", "ellipse", "--wu", "0.5", "--wl", "0.5", "--theta", "0"]);
    assert_eq!(output.status.code(), Some(2));
    assert_eq!(stderr_error_kind(&output), "degenerate-representation");
}

#[test]
fn measures_embed_reconstructs_quadrant_states() {
    let output = run(&["measures", "embed", "--wl", "0.6", "--wd", "0.7"]);
    let report = stdout_json(&output);
    let state: Vec<f64> = report["state"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_f64().unwrap())
        .collect();
    assert_eq!(state.len(), 4);
    let sum: f64 = state.iter().sum();
    assert!((sum - 1.0).abs() < 1e-12);
    // w_l = w1 + w2, w_d = w1 + w3.
    assert!((state[0] + state[1] - 0.6).abs() < 1e-12);
    assert!((state[0] + state[2] - 0.7).abs() < 1e-12);
    assert_eq!(report["windows"], report["induced_windows"]);

    let output = run(&["measures", "embed", "--wl", "0.9", "--wd", "0.05", "--free", "0.5"]);
    assert_eq!(output.status.code(), Some(2));
    assert_eq!(stderr_error_kind(&output), "infeasible-parameter");
}

#[test]
fn payoff_routes_agree_on_induced_windows() {
    let vector = stdout_json(&run(&[
        "payoff", "eval", "--payoff", "1,9,10,2", "--chi-a", "0.4", "--chi-b", "-1.1",
        "--theta", "0.6",
    ]));
    assert_eq!(vector["route"], "vectors");
    let wa = &vector["windows_a"];
    let wb = &vector["windows_b"];
    let windows_arg = |w: &Value| {
        format!(
            "{},{},{},{}",
            w["w_l"], w["w_r"], w["w_u"], w["w_d"]
        )
    };
    let probability = stdout_json(&run(&[
        "payoff",
        "eval",
        "--payoff",
        "1,9,10,2",
        "--windows-a",
        &windows_arg(wa),
        "--windows-b",
        &windows_arg(wb),
    ]));
    assert_eq!(probability["route"], "probabilities");
    let va = vector["value"].as_f64().unwrap();
    let vb = probability["value"].as_f64().unwrap();
    assert!((va - vb).abs() < 1e-12 * 22.0, "{va} vs {vb}");
}

#[test]
fn payoff_classical_prints_the_exact_saddle() {
    let report = stdout_json(&run(&["payoff", "classical", "--payoff", "1,9,10,2"]));
    let p = report["saddle"]["p"].as_array().unwrap();
    assert!((p[0].as_f64().unwrap() - 1.0 / 11.0).abs() < 1e-15);
    assert!((report["saddle"]["value"].as_f64().unwrap() - 28.0 / 11.0).abs() < 1e-15);
}

#[test]
fn sweep_emits_csv_with_one_row_per_grid_point() {
    let output = run(&["sweep", "--payoff", "1,9,10,2", "--payoff-range", "c3=9:12:4"]);
    assert!(output.status.success());
    let text = String::from_utf8(output.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "c1,c2,c3,c4,theta,kind,value");
    assert_eq!(lines.len(), 5);
    let kinds: Vec<&str> = lines[1..]
        .iter()
        .map(|l| l.split(',').nth(5).unwrap())
        .collect();
    assert_eq!(kinds, ["unique", "unique", "none", "none"]);

    // JSON mode returns the same rows as an array of objects.
    let output = run(&[
        "sweep", "--payoff", "1,9,10,2", "--payoff-range", "c3=9:12:4", "--json",
    ]);
    let rows = stdout_json(&output);
    assert_eq!(rows.as_array().unwrap().len(), 4);
    assert_eq!(rows[0]["kind"], "unique");
    assert_eq!(rows[0]["c3"], 9.0);
}

#[test]
fn sweep_rows_absorb_degenerate_points() {
    // c3 = 3 zeroes the determinant on this base; the row stays in the
    // listing with its kind instead of killing the sweep.
    let output = run(&["sweep", "--payoff", "1,1,2,3", "--payoff-range", "c3=2:3:2"]);
    assert!(output.status.success());
    let text = String::from_utf8(output.stdout).unwrap();
    assert!(text.contains("degenerate-game"), "{text}");

    // A point with c1 = c3 and c2 = c4 has zero stake imbalance.
    let output = run(&["sweep", "--payoff", "1,2,9,2", "--payoff-range", "c3=1:1:1"]);
    assert!(output.status.success());
    let text = String::from_utf8(output.stdout).unwrap();
    assert!(text.contains("degenerate-omega"), "{text}");
}

fn write_sim_config(dir: &std::path::Path, seed: u64) -> std::path::PathBuf {
    std::fs::create_dir_all(dir).unwrap();
    let path = dir.join(format!("sim-{seed}.json"));
    std::fs::write(
        &path,
        serde_json::json!({
            "boolean_state_a": [0.25, 0.25, 0.25, 0.25],
            "boolean_state_b": [0.4, 0.1, 0.3, 0.2],
            "payoff": [1, 9, 10, 2],
            "rounds": 200000,
            "seed": seed,
            "window_policy": "random-even"
        })
        .to_string(),
    )
    .unwrap();
    path
}

#[test]
fn simulate_is_bit_reproducible_and_honors_seed_precedence() {
    let dir = std::env::temp_dir().join("firefly-games-cli-test");
    let config = write_sim_config(&dir, 42);
    let config = config.to_str().unwrap();

    let first = run(&["simulate", "--config", config]);
    let second = run(&["simulate", "--config", config]);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout, "reruns must be byte-identical");

    let report = stdout_json(&first);
    assert_eq!(report["seed"], 42);
    assert_eq!(report["rounds"], 200000);
    assert_eq!(report["pairing_factor"], 0.25);

    // --seed beats both config and environment.
    let flagged = binary()
        .args(["--seed", "99", "simulate", "--config", config])
        .env("FIREFLY_GAMES_SEED", "7")
        .output()
        .unwrap();
    assert_eq!(stdout_json(&flagged)["seed"], 99);

    // The environment beats the config when --seed is absent.
    let from_env = binary()
        .args(["simulate", "--config", config])
        .env("FIREFLY_GAMES_SEED", "7")
        .output()
        .unwrap();
    assert_eq!(stdout_json(&from_env)["seed"], 7);

    // A malformed environment seed is a usage error.
    let bad_env = binary()
        .args(["simulate", "--config", config])
        .env("FIREFLY_GAMES_SEED", "not-a-number")
        .output()
        .unwrap();
    assert_eq!(bad_env.status.code(), Some(1));
}

#[test]
fn simulate_writes_result_and_convergence_files() {
    let dir = std::env::temp_dir().join("firefly-games-cli-test");
    let config = write_sim_config(&dir, 5);
    let out = dir.join("result.json");
    let csv = dir.join("running.csv");

    let output = run(&[
        "simulate",
        "--config",
        config.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
        "--running-csv",
        csv.to_str().unwrap(),
    ]);
    assert!(output.status.success());

    // The file carries the same document as stdout.
    let from_file: Value =
        serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(from_file, stdout_json(&output));

    let csv_text = std::fs::read_to_string(&csv).unwrap();
    let lines: Vec<&str> = csv_text.lines().collect();
    assert_eq!(lines[0], "rounds_completed,running_payoff");
    // 200000 rounds at 65536 per chunk: three partial chunks plus the tail.
    assert_eq!(lines.len(), 1 + 4);
    assert!(lines.last().unwrap().starts_with("200000,"));
}

#[test]
fn solve_writes_the_report_to_a_json_file() {
    let dir = std::env::temp_dir().join("firefly-games-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("solve-report.json");
    let output = run(&[
        "solve", "--payoff", "1,9,10,2", "--json", path.to_str().unwrap(),
    ]);
    let on_stdout = stdout_json(&output);
    let in_file: Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(on_stdout, in_file);
}

#[test]
fn machine_output_reruns_are_byte_identical() {
    for args in [
        &["solve", "--payoff", "1,2,99,98"] as &[&str],
        &["lattice", "check", "firefly"],
        &["measures", "embed", "--wl", "0.6", "--wd", "0.7"],
        &["sweep", "--payoff", "1,9,10,2", "--payoff-range", "c3=8:12:9"],
        &["payoff", "classical", "--payoff", "3,5,7,11"],
    ] {
        let first = run(args);
        let second = run(args);
        assert!(first.status.success(), "args: {args:?}");
        assert_eq!(first.stdout, second.stdout, "args: {args:?}");
    }
}

#[test]
fn tolerance_overrides_change_classification() {
    // (1, 2, 9, 8.001) sits about 1e-4 below the alignment boundary: with a
    // wider boundary band it reports the boundary kind instead of unique.
    let strict = stdout_json(&run(&["solve", "--payoff", "1,2,9,8.001"]));
    assert_eq!(strict["kind"], "unique");
    let loose = stdout_json(&run(&[
        "solve",
        "--payoff",
        "1,2,9,8.001",
        "--tolerance-overrides",
        "boundary_rel=1e-2",
    ]));
    assert_eq!(loose["kind"], "multiple");
}
