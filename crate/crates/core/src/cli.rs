//! Command-line front end: lattice law checks, measure utilities, payoff
//! evaluation, equilibrium solving with optional brute-force verification,
//! parameter sweeps, and the round-based observation game.
//!
//! All machine output is JSON (CSV for sweeps and convergence traces) with
//! shortest round-trip number formatting, so identical inputs produce
//! byte-identical output. Exit codes: 0 on success, 1 on usage errors, 2 on
//! domain errors, which are reported as a JSON object
//! `{"error": {"kind": ..., "message": ...}}` on stderr.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::equilibrium::{
    saddle_oracle, solve_eigenequilibrium, EquilibriumKind, EquilibriumReport, SaddleCheck,
    Tolerances,
};
use crate::error::Error;
use crate::measures::{
    boolean_to_windows, ellipse_residual, free_parameter_interval, windows_to_boolean,
    BooleanState, Representation, WindowProbabilities,
};
use crate::ortholattice::{boolean4, firefly, hexagon, FiniteOrtholattice, LatticeSpec, LawReport};
use crate::payoff::{
    classical_saddle, profile_windows, quantum_payoff_probabilities, quantum_payoff_vectors,
    ClassicalSaddle, PayoffMatrix, Strategy, StrategyPair,
};
use crate::sim::{run_game_traced, ChunkStat, SimulationConfig, SimulationResult};

/// Environment variable consulted for the RNG seed when `--seed` is absent.
/// A `--seed` flag beats the variable; the variable beats any seed stored in
/// a simulation config file.
pub const SEED_ENV_VAR: &str = "FIREFLY_GAMES_SEED";

/// Residual magnitude below which `measures ellipse` reports a point as
/// lying on the constraint curve.
pub const ON_ELLIPSE_TOL: f64 = 1e-9;

#[derive(Parser, Debug)]
#[command(
    name = "firefly-games",
    version,
    about = "Window games on the firefly box: lattice checks, payoffs, equilibria, simulation"
)]
struct Cli {
    /// Emit JSON to stdout; with a PATH value, also write it to that file
    #[arg(long, global = true, value_name = "PATH", num_args = 0..=1,
          default_missing_value = "-")]
    json: Option<String>,

    /// Emit CSV to stdout (sweep only); with a PATH value, also write it to
    /// that file
    #[arg(long, global = true, value_name = "PATH", num_args = 0..=1,
          default_missing_value = "-")]
    csv: Option<String>,

    /// RNG seed for `simulate`; when absent, FIREFLY_GAMES_SEED is
    /// consulted, then the seed in the config file
    #[arg(long, global = true, value_name = "SEED")]
    seed: Option<u64>,

    /// Comma-separated solver tolerance overrides, e.g.
    /// "delta_rel=1e-9,saddle_rel=1e-8"
    #[arg(long, global = true, value_name = "KEY=VALUE,...")]
    tolerance_overrides: Option<String>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Lattice law checks on a builtin fixture or a JSON file
    Lattice {
        #[command(subcommand)]
        command: LatticeCommand,
    },
    /// Window-probability utilities
    Measures {
        #[command(subcommand)]
        command: MeasuresCommand,
    },
    /// Payoff evaluation and the classical game
    Payoff {
        #[command(subcommand)]
        command: PayoffCommand,
    },
    /// Solve a game for its eigenequilibrium and classify it
    Solve(SolveArgs),
    /// Solve across a grid of payoff matrices, one row per game
    Sweep(SweepArgs),
    /// Run the round-based firefly observation game
    Simulate(SimulateArgs),
}

#[derive(Subcommand, Debug)]
enum LatticeCommand {
    /// Verify the algebraic laws and probe distributivity/orthomodularity
    Check {
        /// Builtin fixture (`firefly`, `boolean4`, `hexagon`) or a path to a
        /// lattice JSON file
        target: String,
    },
}

#[derive(Subcommand, Debug)]
enum MeasuresCommand {
    /// Evaluate the window-probability constraint-curve residual
    Ellipse {
        /// Up-window probability
        #[arg(long, allow_negative_numbers = true)]
        wu: f64,
        /// Left-window probability
        #[arg(long, allow_negative_numbers = true)]
        wl: f64,
        /// Representation angle in radians, strictly inside (0, pi/2)
        #[arg(long, allow_negative_numbers = true)]
        theta: f64,
    },
    /// Reconstruct a Boolean quadrant state from window probabilities
    Embed {
        /// Left-window probability
        #[arg(long, allow_negative_numbers = true)]
        wl: f64,
        /// Down-window probability
        #[arg(long, allow_negative_numbers = true)]
        wd: f64,
        /// Mass of the left-down quadrant; defaults to the midpoint of the
        /// feasible interval
        #[arg(long, allow_negative_numbers = true)]
        free: Option<f64>,
    },
}

#[derive(Subcommand, Debug)]
enum PayoffCommand {
    /// Expected payment to A, from window probabilities or strategy angles
    Eval(PayoffEvalArgs),
    /// Exact mixed saddle of the classical (Boolean-box) game
    Classical {
        /// Stakes c1,c2,c3,c4 (all positive)
        #[arg(long, value_name = "C1,C2,C3,C4", allow_hyphen_values = true)]
        payoff: String,
    },
}

#[derive(Args, Debug)]
struct PayoffEvalArgs {
    /// Stakes c1,c2,c3,c4 (all positive)
    #[arg(long, value_name = "C1,C2,C3,C4", allow_hyphen_values = true)]
    payoff: String,
    /// A's window probabilities wl,wr,wu,wd (each pair must sum to 1)
    #[arg(long, value_name = "WL,WR,WU,WD", allow_hyphen_values = true)]
    windows_a: Option<String>,
    /// B's window probabilities wl,wr,wu,wd
    #[arg(long, value_name = "WL,WR,WU,WD", allow_hyphen_values = true)]
    windows_b: Option<String>,
    /// A's strategy angle in radians (vector route; requires --theta)
    #[arg(long, allow_negative_numbers = true)]
    chi_a: Option<f64>,
    /// B's strategy angle in radians (vector route; requires --theta)
    #[arg(long, allow_negative_numbers = true)]
    chi_b: Option<f64>,
    /// A's representation angle in radians, strictly inside (0, pi/2)
    #[arg(long, allow_negative_numbers = true)]
    theta: Option<f64>,
    /// B's representation angle; defaults to --theta
    #[arg(long, allow_negative_numbers = true)]
    tau: Option<f64>,
}

#[derive(Args, Debug)]
struct SolveArgs {
    /// Stakes c1,c2,c3,c4 (all positive)
    #[arg(long, value_name = "C1,C2,C3,C4", allow_hyphen_values = true)]
    payoff: String,
    /// Re-check the report against the brute-force deviation oracle
    #[arg(long)]
    verify: bool,
    /// Deviation angles per oracle scan (minimum 256)
    #[arg(long, default_value_t = 4096)]
    grid: usize,
}

#[derive(Args, Debug)]
struct SweepArgs {
    /// Base stakes c1,c2,c3,c4; swept coefficients override these
    #[arg(long, value_name = "C1,C2,C3,C4", allow_hyphen_values = true)]
    payoff: String,
    /// Sweep axes `cK=START:STOP:POINTS`, comma-separated, e.g.
    /// "c3=1:20:39" or "c1=1:2:5,c4=8:9:3" (cartesian product)
    #[arg(long, value_name = "AXES", allow_hyphen_values = true)]
    payoff_range: String,
}

#[derive(Args, Debug)]
struct SimulateArgs {
    /// Path to the run configuration JSON
    #[arg(long, value_name = "FILE")]
    config: PathBuf,
    /// Also write the result JSON to this file
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Write per-chunk running payoff averages as CSV for convergence plots
    #[arg(long, value_name = "FILE")]
    running_csv: Option<PathBuf>,
}

/// A command failure, split by who got the invocation wrong: `Usage` is the
/// caller's flag mistake (exit 1), `Domain` is a well-formed request the
/// mathematics rejects (exit 2, JSON error object on stderr).
#[derive(Debug)]
enum CliFailure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for CliFailure {
    fn from(err: Error) -> Self {
        CliFailure::Domain(err)
    }
}

type CliResult<T> = std::result::Result<T, CliFailure>;

/// Parses `argv` and runs the selected subcommand, returning the process
/// exit code. Output goes to stdout, errors to stderr.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(err) => {
            // Help and version requests render to stdout and succeed; real
            // parse errors render to stderr and exit 1.
            let code = i32::from(err.use_stderr());
            let _ = err.print();
            return code;
        }
    };
    match dispatch(&cli) {
        Ok(()) => 0,
        Err(CliFailure::Usage(msg)) => {
            eprintln!("error: {msg}");
            1
        }
        Err(CliFailure::Domain(err)) => {
            let object = serde_json::json!({
                "error": { "kind": err.kind(), "message": err.to_string() }
            });
            eprintln!("{object}");
            2
        }
    }
}

fn dispatch(cli: &Cli) -> CliResult<()> {
    if cli.json.is_some() && cli.csv.is_some() {
        return Err(CliFailure::Usage(
            "--json and --csv are mutually exclusive".to_string(),
        ));
    }
    let tol = parse_tolerances(cli.tolerance_overrides.as_deref())?;
    match &cli.command {
        Command::Lattice {
            command: LatticeCommand::Check { target },
        } => {
            let output = lattice_check(target)?;
            emit_json(cli, &output)
        }
        Command::Measures { command } => match command {
            MeasuresCommand::Ellipse { wu, wl, theta } => {
                let output = measures_ellipse(*wu, *wl, *theta)?;
                emit_json(cli, &output)
            }
            MeasuresCommand::Embed { wl, wd, free } => {
                let output = measures_embed(*wl, *wd, *free)?;
                emit_json(cli, &output)
            }
        },
        Command::Payoff { command } => match command {
            PayoffCommand::Eval(args) => {
                let output = payoff_eval(args)?;
                emit_json(cli, &output)
            }
            PayoffCommand::Classical { payoff } => {
                let payoff = parse_payoff(payoff)?;
                let output = PayoffClassicalOutput {
                    payoff: payoff.as_array(),
                    saddle: classical_saddle(&payoff),
                };
                emit_json(cli, &output)
            }
        },
        Command::Solve(args) => {
            let output = solve(args, &tol)?;
            emit_json(cli, &output)
        }
        Command::Sweep(args) => {
            let rows = sweep(args, &tol)?;
            emit_sweep(cli, &rows)
        }
        Command::Simulate(args) => {
            let (result, chunks) = simulate(cli, args)?;
            if let Some(path) = &args.running_csv {
                write_file(&path.to_string_lossy(), &running_csv(&chunks))?;
            }
            if let Some(path) = &args.out {
                let text = to_json(&result);
                write_file(&path.to_string_lossy(), &format!("{text}\n"))?;
            }
            emit_json(cli, &result)
        }
    }
}

// ---------------------------------------------------------------------------
// Output plumbing

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("output types serialize without error")
}

/// Writes to stdout without panicking when the consumer hangs up early
/// (e.g. the output is piped into `head`): a broken pipe ends the process
/// quietly, any other write failure is a hard error.
fn print_stdout(text: &str) {
    use std::io::Write as _;
    let mut out = std::io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|()| out.flush()) {
        Ok(()) => {}
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => std::process::exit(0),
        Err(e) => {
            eprintln!("error: cannot write to stdout: {e}");
            std::process::exit(2);
        }
    }
}

fn write_file(path: &str, text: &str) -> CliResult<()> {
    fs::write(path, text)
        .map_err(|e| CliFailure::Domain(Error::InvalidConfig(format!("cannot write {path}: {e}"))))
}

/// Prints a JSON document to stdout and, when `--json` carried a file path,
/// writes the same bytes (plus a trailing newline) to that file.
fn emit_json<T: Serialize>(cli: &Cli, value: &T) -> CliResult<()> {
    if cli.csv.is_some() {
        return Err(CliFailure::Usage(
            "this subcommand emits JSON; --csv is only available for sweep output".to_string(),
        ));
    }
    let text = to_json(value);
    print_stdout(&format!("{text}\n"));
    if let Some(path) = cli.json.as_deref() {
        if path != "-" {
            write_file(path, &format!("{text}\n"))?;
        }
    }
    Ok(())
}

/// Sweep output: CSV by default (stdout, plus a file when `--csv` carried a
/// path), or a JSON array of row objects under `--json`.
fn emit_sweep(cli: &Cli, rows: &[SweepRow]) -> CliResult<()> {
    if cli.json.is_some() {
        return emit_json(cli, &rows);
    }
    let text = sweep_csv(rows);
    print_stdout(&text);
    if let Some(path) = cli.csv.as_deref() {
        if path != "-" {
            write_file(path, &text)?;
        }
    }
    Ok(())
}

fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut text = String::from("c1,c2,c3,c4,theta,kind,value\n");
    for row in rows {
        let theta = row.theta.map(|t| t.to_string()).unwrap_or_default();
        let value = row.value.map(|v| v.to_string()).unwrap_or_default();
        let _ = writeln!(
            text,
            "{},{},{},{},{},{},{}",
            row.c1, row.c2, row.c3, row.c4, theta, row.kind, value
        );
    }
    text
}

fn running_csv(chunks: &[ChunkStat]) -> String {
    let mut text = String::from("rounds_completed,running_payoff\n");
    for chunk in chunks {
        let _ = writeln!(text, "{},{}", chunk.rounds_completed, chunk.running_payoff);
    }
    text
}

// ---------------------------------------------------------------------------
// Flag parsing helpers

fn parse_tolerances(spec: Option<&str>) -> CliResult<Tolerances> {
    let mut tol = Tolerances::default();
    let Some(spec) = spec else {
        return Ok(tol);
    };
    for part in spec.split(',').filter(|p| !p.trim().is_empty()) {
        let (key, value) = part.split_once('=').ok_or_else(|| {
            CliFailure::Usage(format!("tolerance override '{part}' is not KEY=VALUE"))
        })?;
        let value: f64 = value.trim().parse().map_err(|_| {
            CliFailure::Usage(format!("tolerance value '{}' is not a number", value.trim()))
        })?;
        tol.set(key.trim(), value)
            .map_err(|e| CliFailure::Usage(e.to_string()))?;
    }
    Ok(tol)
}

fn parse_floats(flag: &str, text: &str, n: usize) -> CliResult<Vec<f64>> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if parts.len() != n {
        return Err(CliFailure::Usage(format!(
            "{flag} expects {n} comma-separated numbers, got {}",
            parts.len()
        )));
    }
    parts
        .iter()
        .map(|p| {
            p.parse::<f64>()
                .map_err(|_| CliFailure::Usage(format!("{flag}: '{p}' is not a number")))
        })
        .collect()
}

fn parse_payoff(text: &str) -> CliResult<PayoffMatrix> {
    let c = parse_floats("--payoff", text, 4)?;
    Ok(PayoffMatrix::new(c[0], c[1], c[2], c[3])?)
}

fn parse_windows(flag: &str, text: &str) -> CliResult<WindowProbabilities> {
    let w = parse_floats(flag, text, 4)?;
    Ok(WindowProbabilities::from_four(w[0], w[1], w[2], w[3])?)
}

/// Seed precedence for the simulation: `--seed` flag, then the
/// [`SEED_ENV_VAR`] environment variable, then the seed in the config file.
fn effective_seed(cli: &Cli, from_config: u64) -> CliResult<u64> {
    if let Some(seed) = cli.seed {
        return Ok(seed);
    }
    match std::env::var(SEED_ENV_VAR) {
        Ok(text) => text.trim().parse().map_err(|_| {
            CliFailure::Usage(format!(
                "{SEED_ENV_VAR}='{text}' is not an unsigned 64-bit integer"
            ))
        }),
        Err(_) => Ok(from_config),
    }
}

// ---------------------------------------------------------------------------
// lattice check

#[derive(Serialize)]
struct LatticeCheckOutput {
    source: String,
    elements: usize,
    bottom: String,
    top: String,
    laws: LawReport,
    all_laws_hold: bool,
    distributive: bool,
    /// A triple (a, b, c) with `a /\ (b \/ c) != (a /\ b) \/ (a /\ c)`, when
    /// one exists.
    distributivity_witness: Option<[String; 3]>,
    orthomodular: bool,
    /// A pair (x, y) with `x <= y` but `y != x \/ (x' /\ y)`, when one
    /// exists.
    orthomodularity_counterexample: Option<[String; 2]>,
}

fn load_lattice(target: &str) -> CliResult<(String, FiniteOrtholattice)> {
    match target {
        "firefly" => return Ok(("builtin:firefly".to_string(), firefly())),
        "boolean4" => return Ok(("builtin:boolean4".to_string(), boolean4())),
        "hexagon" => return Ok(("builtin:hexagon".to_string(), hexagon())),
        _ => {}
    }
    let text = fs::read_to_string(target).map_err(|e| {
        CliFailure::Domain(Error::InvalidConfig(format!("cannot read {target}: {e}")))
    })?;
    let spec: LatticeSpec = serde_json::from_str(&text).map_err(|e| {
        CliFailure::Domain(Error::InvalidConfig(format!(
            "{target} is not a lattice JSON document: {e}"
        )))
    })?;
    Ok((target.to_string(), FiniteOrtholattice::from_spec(&spec)?))
}

fn lattice_check(target: &str) -> CliResult<LatticeCheckOutput> {
    let (source, lattice) = load_lattice(target)?;
    let laws = lattice.verify_laws();
    let witness = lattice
        .distributivity_violation()
        .map(|[a, b, c]| [a.to_string(), b.to_string(), c.to_string()]);
    let counterexample = lattice
        .orthomodularity_counterexample()
        .map(|[x, y]| [x.to_string(), y.to_string()]);
    Ok(LatticeCheckOutput {
        source,
        elements: lattice.len(),
        bottom: lattice.bottom().to_string(),
        top: lattice.top().to_string(),
        laws,
        all_laws_hold: laws.all_hold(),
        distributive: witness.is_none(),
        distributivity_witness: witness,
        orthomodular: counterexample.is_none(),
        orthomodularity_counterexample: counterexample,
    })
}

// ---------------------------------------------------------------------------
// measures

#[derive(Serialize)]
struct EllipseOutput {
    wu: f64,
    wl: f64,
    theta: f64,
    /// Value of the constraint form minus 1; zero exactly on the curve.
    residual: f64,
    on_ellipse: bool,
    tolerance: f64,
}

fn measures_ellipse(wu: f64, wl: f64, theta: f64) -> CliResult<EllipseOutput> {
    for (name, w) in [("--wu", wu), ("--wl", wl)] {
        if !(0.0..=1.0).contains(&w) {
            return Err(CliFailure::Domain(Error::InvalidProbability(format!(
                "{name} = {w} is outside [0, 1]"
            ))));
        }
    }
    let residual = ellipse_residual(wu, wl, theta)?;
    Ok(EllipseOutput {
        wu,
        wl,
        theta,
        residual,
        on_ellipse: residual.abs() <= ON_ELLIPSE_TOL,
        tolerance: ON_ELLIPSE_TOL,
    })
}

#[derive(Serialize)]
struct EmbedOutput {
    windows: WindowProbabilities,
    /// Feasible range for the left-down quadrant mass.
    interval: [f64; 2],
    /// The quadrant mass actually used.
    free: f64,
    /// Quadrant masses (left-down, left-up, right-down, right-up).
    state: BooleanState,
    /// Windows recovered from the state; equals `windows` up to rounding.
    induced_windows: WindowProbabilities,
}

fn measures_embed(wl: f64, wd: f64, free: Option<f64>) -> CliResult<EmbedOutput> {
    if !(0.0..=1.0).contains(&wd) || !wd.is_finite() {
        return Err(CliFailure::Domain(Error::InvalidProbability(format!(
            "--wd = {wd} is outside [0, 1]"
        ))));
    }
    let windows = WindowProbabilities::from_left_up(wl, 1.0 - wd)?;
    let (lo, hi) = free_parameter_interval(&windows);
    let free = free.unwrap_or(0.5 * (lo + hi));
    let state = windows_to_boolean(&windows, free)?;
    Ok(EmbedOutput {
        windows,
        interval: [lo, hi],
        free,
        induced_windows: boolean_to_windows(&state),
        state,
    })
}

// ---------------------------------------------------------------------------
// payoff

#[derive(Serialize)]
struct PayoffEvalOutput {
    payoff: [f64; 4],
    route: &'static str,
    value: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    theta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    tau: Option<f64>,
    windows_a: WindowProbabilities,
    windows_b: WindowProbabilities,
}

#[derive(Serialize)]
struct PayoffClassicalOutput {
    payoff: [f64; 4],
    saddle: ClassicalSaddle,
}

fn payoff_eval(args: &PayoffEvalArgs) -> CliResult<PayoffEvalOutput> {
    let payoff = parse_payoff(&args.payoff)?;
    let probability_route = args.windows_a.is_some() || args.windows_b.is_some();
    let vector_route = args.chi_a.is_some()
        || args.chi_b.is_some()
        || args.theta.is_some()
        || args.tau.is_some();
    if probability_route && vector_route {
        return Err(CliFailure::Usage(
            "window probabilities and strategy angles are mutually exclusive; \
             give --windows-a/--windows-b or --chi-a/--chi-b/--theta"
                .to_string(),
        ));
    }
    if probability_route {
        let (Some(wa), Some(wb)) = (&args.windows_a, &args.windows_b) else {
            return Err(CliFailure::Usage(
                "the probability route needs both --windows-a and --windows-b".to_string(),
            ));
        };
        let a = parse_windows("--windows-a", wa)?;
        let b = parse_windows("--windows-b", wb)?;
        return Ok(PayoffEvalOutput {
            payoff: payoff.as_array(),
            route: "probabilities",
            value: quantum_payoff_probabilities(&payoff, &a, &b),
            theta: None,
            tau: None,
            windows_a: a,
            windows_b: b,
        });
    }
    let (Some(chi_a), Some(chi_b), Some(theta)) = (args.chi_a, args.chi_b, args.theta) else {
        return Err(CliFailure::Usage(
            "give either --windows-a/--windows-b (probability route) or \
             --chi-a/--chi-b/--theta (vector route)"
                .to_string(),
        ));
    };
    let tau = args.tau.unwrap_or(theta);
    let rep = Representation::new(theta, tau)?;
    let pair = StrategyPair {
        x: Strategy::from_angle(chi_a),
        y: Strategy::from_angle(chi_b),
    };
    let (a, b) = profile_windows(&rep, &pair);
    Ok(PayoffEvalOutput {
        payoff: payoff.as_array(),
        route: "vectors",
        value: quantum_payoff_vectors(&payoff, &rep, &pair.x, &pair.y),
        theta: Some(theta),
        tau: Some(tau),
        windows_a: a,
        windows_b: b,
    })
}

// ---------------------------------------------------------------------------
// solve

#[derive(Serialize)]
struct SolveOutput {
    #[serde(flatten)]
    report: EquilibriumReport,
    /// Convenience copy of the first equilibrium's value.
    #[serde(skip_serializing_if = "Option::is_none")]
    value: Option<f64>,
    /// "pass" when every reported equilibrium survives the deviation oracle
    /// and a non-certified candidate (if any) is confirmed unstable.
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle: Option<&'static str>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    oracle_checks: Vec<SaddleCheck>,
    /// Oracle view of the informational candidate on a `kind = none` report.
    #[serde(skip_serializing_if = "Option::is_none")]
    candidate_check: Option<SaddleCheck>,
}

fn solve(args: &SolveArgs, tol: &Tolerances) -> CliResult<SolveOutput> {
    let payoff = parse_payoff(&args.payoff)?;
    let report = solve_eigenequilibrium(&payoff, tol)?;

    // Degenerate stakes are not a solvable game: surface them as domain
    // errors so scripts can branch on the exit code, as with any other
    // rejected input.
    match report.kind {
        EquilibriumKind::DegenerateOmega => {
            return Err(CliFailure::Domain(Error::DegenerateOmega));
        }
        EquilibriumKind::DegenerateGame => {
            return Err(CliFailure::Domain(Error::DegenerateGame {
                delta: report.diagnostics.delta,
                tol: tol.delta_rel * report.diagnostics.n * report.diagnostics.m,
            }));
        }
        _ => {}
    }

    let mut output = SolveOutput {
        value: report.equilibria.first().map(|e| e.value),
        report,
        oracle: None,
        oracle_checks: Vec::new(),
        candidate_check: None,
    };
    if !args.verify {
        return Ok(output);
    }

    let theta = output
        .report
        .theta
        .expect("non-degenerate reports carry the solved angle");
    let rep = Representation::symmetric(theta)?;
    let mut pass = true;
    for eq in &output.report.equilibria {
        let pair = StrategyPair { x: eq.x, y: eq.y };
        let check = saddle_oracle(&payoff, &rep, &pair, args.grid, tol)?;
        pass &= check.pass;
        output.oracle_checks.push(check);
    }
    if let Some(candidate) = &output.report.candidate {
        let pair = StrategyPair {
            x: candidate.x,
            y: candidate.y,
        };
        let check = saddle_oracle(&payoff, &rep, &pair, args.grid, tol)?;
        // The solver claims no equilibrium exists; the oracle agrees exactly
        // when the best candidate still admits a profitable deviation.
        pass &= !check.pass;
        output.candidate_check = Some(check);
    }
    output.oracle = Some(if pass { "pass" } else { "fail" });
    Ok(output)
}

// ---------------------------------------------------------------------------
// sweep

#[derive(Serialize)]
struct SweepRow {
    c1: f64,
    c2: f64,
    c3: f64,
    c4: f64,
    theta: Option<f64>,
    kind: String,
    value: Option<f64>,
}

struct SweepAxis {
    index: usize,
    values: Vec<f64>,
}

fn parse_axis(part: &str) -> CliResult<SweepAxis> {
    let usage = || {
        CliFailure::Usage(format!(
            "sweep axis '{part}' is not of the form cK=START:STOP:POINTS"
        ))
    };
    let (name, range) = part.split_once('=').ok_or_else(usage)?;
    let index = match name.trim() {
        "c1" => 0,
        "c2" => 1,
        "c3" => 2,
        "c4" => 3,
        _ => return Err(usage()),
    };
    let fields: Vec<&str> = range.split(':').map(str::trim).collect();
    let [start, stop, points] = fields.as_slice() else {
        return Err(usage());
    };
    let start: f64 = start.parse().map_err(|_| usage())?;
    let stop: f64 = stop.parse().map_err(|_| usage())?;
    let points: usize = points.parse().map_err(|_| usage())?;
    if points == 0 || !start.is_finite() || !stop.is_finite() {
        return Err(usage());
    }
    let values = if points == 1 {
        vec![start]
    } else {
        (0..points)
            .map(|i| start + (stop - start) * i as f64 / (points - 1) as f64)
            .collect()
    };
    Ok(SweepAxis { index, values })
}

/// Solves one game per grid point of the axes' cartesian product. Rows never
/// abort the sweep: games the solver rejects (degenerate stakes, boundary
/// representation angles, nonpositive swept stakes) appear with the error
/// kind in the `kind` column and empty angle/value fields.
fn sweep(args: &SweepArgs, tol: &Tolerances) -> CliResult<Vec<SweepRow>> {
    let base = parse_floats("--payoff", &args.payoff, 4)?;
    let axes: Vec<SweepAxis> = args
        .payoff_range
        .split(',')
        .filter(|p| !p.trim().is_empty())
        .map(parse_axis)
        .collect::<CliResult<_>>()?;
    if axes.is_empty() {
        return Err(CliFailure::Usage(
            "--payoff-range needs at least one axis cK=START:STOP:POINTS".to_string(),
        ));
    }
    let mut seen = [false; 4];
    for axis in &axes {
        if seen[axis.index] {
            return Err(CliFailure::Usage(format!(
                "sweep axis c{} appears more than once",
                axis.index + 1
            )));
        }
        seen[axis.index] = true;
    }

    let mut rows = Vec::new();
    let mut cursor = vec![0usize; axes.len()];
    loop {
        let mut c = base.clone();
        for (axis, &i) in axes.iter().zip(&cursor) {
            c[axis.index] = axis.values[i];
        }
        rows.push(sweep_row(c[0], c[1], c[2], c[3], tol));

        // Odometer increment over the axes, last axis fastest.
        let mut level = axes.len();
        loop {
            if level == 0 {
                return Ok(rows);
            }
            level -= 1;
            cursor[level] += 1;
            if cursor[level] < axes[level].values.len() {
                break;
            }
            cursor[level] = 0;
        }
    }
}

fn sweep_row(c1: f64, c2: f64, c3: f64, c4: f64, tol: &Tolerances) -> SweepRow {
    let solved = PayoffMatrix::new(c1, c2, c3, c4)
        .and_then(|payoff| solve_eigenequilibrium(&payoff, tol));
    let (theta, kind, value) = match solved {
        Ok(report) => (
            report.theta,
            report.kind.to_string(),
            report.equilibria.first().map(|e| e.value),
        ),
        Err(err) => (None, err.kind().to_string(), None),
    };
    SweepRow {
        c1,
        c2,
        c3,
        c4,
        theta,
        kind,
        value,
    }
}

// ---------------------------------------------------------------------------
// simulate

fn simulate(cli: &Cli, args: &SimulateArgs) -> CliResult<(SimulationResult, Vec<ChunkStat>)> {
    let path = args.config.to_string_lossy();
    let text = fs::read_to_string(&args.config).map_err(|e| {
        CliFailure::Domain(Error::InvalidConfig(format!("cannot read {path}: {e}")))
    })?;
    let mut config: SimulationConfig = serde_json::from_str(&text).map_err(|e| {
        CliFailure::Domain(Error::InvalidConfig(format!(
            "{path} is not a simulation config: {e}"
        )))
    })?;
    config.seed = effective_seed(cli, config.seed)?;
    Ok(run_game_traced(&config)?)
}
