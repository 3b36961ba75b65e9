//! Round-by-round simulation of the window game.
//!
//! Each round both players' boxes are sampled: a quadrant is drawn from each
//! player's Boolean state, each player reads the half of their box visible
//! through one window, and the outcome pair is tallied. A payment accrues
//! when the pair lands on a paying cell. Only some outcome pairs can pay in
//! a given round (the windows must oppose), so the long-run payment rate is
//! the four-cell expectation times a policy-dependent pairing factor, which
//! is reported explicitly and never folded into the payoff silently.
//!
//! Reproducibility: rounds are processed in fixed-size chunks, each chunk
//! drawing from its own stream of a counter-based generator keyed by
//! `(seed, chunk index)`. Results are bit-identical for a given config no
//! matter how chunks would be scheduled.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::measures::{boolean_to_windows, BooleanState, WindowProbabilities};
use crate::payoff::{quantum_payoff_probabilities, PayoffMatrix};

/// Rounds per RNG stream; fixed so results never depend on scheduling.
const CHUNK_ROUNDS: u64 = 1 << 16;

/// How players choose which window to look through each round.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WindowPolicy {
    /// Both players look through the bottom window on even rounds and the
    /// side window on odd rounds. Every round is a potential paying round,
    /// pairing factor 1/2.
    Alternate,
    /// Each player independently picks a window uniformly at random. Each
    /// paying cell is live in a quarter of the rounds, pairing factor 1/4.
    RandomEven,
}

impl WindowPolicy {
    /// Fraction of rounds in which a given paying cell is live, relating
    /// the four-cell expectation to the per-round payment rate.
    pub fn pairing_factor(&self) -> f64 {
        match self {
            Self::Alternate => 0.5,
            Self::RandomEven => 0.25,
        }
    }
}

/// A window of the box.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Window {
    /// Sees the left/right split.
    Bottom,
    /// Sees the down/up split.
    Side,
}

/// What one player reads off their box in one round. The numbering matches
/// the payoff cells: outcome 1 = up, 2 = left, 3 = down, 4 = right.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    U,
    L,
    D,
    R,
}

impl Outcome {
    /// Row/column index in the tally matrix, in the order (u, l, d, r).
    pub fn index(&self) -> usize {
        match self {
            Self::U => 0,
            Self::L => 1,
            Self::D => 2,
            Self::R => 3,
        }
    }
}

/// Full description of one simulation run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimulationConfig {
    pub boolean_state_a: BooleanState,
    pub boolean_state_b: BooleanState,
    pub payoff: PayoffMatrix,
    pub rounds: u64,
    #[serde(default)]
    pub seed: u64,
    pub window_policy: WindowPolicy,
}

impl SimulationConfig {
    pub fn validate(&self) -> Result<()> {
        if self.rounds == 0 {
            return Err(Error::InvalidConfig(
                "rounds must be at least 1".to_string(),
            ));
        }
        Ok(())
    }
}

/// Per-player observation tallies with derived frequencies. Frequencies are
/// `None` when that window was never observed; when present, the two
/// frequencies of a window sum to exactly 1 (the complement is stored as
/// `1 - freq`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EmpiricalWindows {
    pub count_u: u64,
    pub count_l: u64,
    pub count_d: u64,
    pub count_r: u64,
    pub freq_u: Option<f64>,
    pub freq_l: Option<f64>,
    pub freq_d: Option<f64>,
    pub freq_r: Option<f64>,
}

impl EmpiricalWindows {
    fn from_counts(count_u: u64, count_l: u64, count_d: u64, count_r: u64) -> Self {
        let side = count_u + count_d;
        let bottom = count_l + count_r;
        let (freq_u, freq_d) = if side > 0 {
            let f = count_u as f64 / side as f64;
            (Some(f), Some(1.0 - f))
        } else {
            (None, None)
        };
        let (freq_l, freq_r) = if bottom > 0 {
            let f = count_l as f64 / bottom as f64;
            (Some(f), Some(1.0 - f))
        } else {
            (None, None)
        };
        Self {
            count_u,
            count_l,
            count_d,
            count_r,
            freq_u,
            freq_l,
            freq_d,
            freq_r,
        }
    }

    /// Sum of all four frequencies; 2 by construction when both windows
    /// were observed.
    pub fn frequency_sum(&self) -> Option<f64> {
        Some(self.freq_u? + self.freq_d? + self.freq_l? + self.freq_r?)
    }
}

/// Cumulative payment rate after each completed chunk, for convergence
/// plots.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChunkStat {
    pub rounds_completed: u64,
    pub running_payoff: f64,
}

/// Everything a run produces.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulationResult {
    pub rounds: u64,
    pub seed: u64,
    pub window_policy: WindowPolicy,
    /// Fraction of rounds in which each paying cell is live under the
    /// policy; multiply the four-cell expectation by this to predict the
    /// per-round payment rate.
    pub pairing_factor: f64,
    /// Outcome-pair tallies: rows are A's outcome, columns B's, both in the
    /// order (u, l, d, r). Entries sum to `rounds`.
    pub counts: [[u64; 4]; 4],
    pub empirical_windows_a: EmpiricalWindows,
    pub empirical_windows_b: EmpiricalWindows,
    /// Mean payment to A per round.
    pub empirical_payoff: f64,
    /// Standard error of `empirical_payoff` from the sample variance.
    pub standard_error: f64,
    /// Window probabilities implied by the configured Boolean states.
    pub analytic_windows_a: WindowProbabilities,
    pub analytic_windows_b: WindowProbabilities,
    /// Predicted per-round payment: pairing factor times the four-cell
    /// expectation of the configured states.
    pub analytic_payoff: f64,
}

/// Samples one observation: draws a quadrant from the Boolean state, then
/// reports the half of the box visible through the chosen window. The
/// bottom window splits the quadrants into left {1, 2} and right {3, 4};
/// the side window splits them into down {1, 3} and up {2, 4}.
pub fn observe<R: Rng>(state: &BooleanState, window: Window, rng: &mut R) -> Outcome {
    let [w1, w2, w3, _] = state.as_array();
    let u: f64 = rng.gen();
    let quadrant = if u < w1 {
        1
    } else if u < w1 + w2 {
        2
    } else if u < w1 + w2 + w3 {
        3
    } else {
        4
    };
    match window {
        Window::Bottom => {
            if quadrant <= 2 {
                Outcome::L
            } else {
                Outcome::R
            }
        }
        Window::Side => {
            if quadrant == 1 || quadrant == 3 {
                Outcome::D
            } else {
                Outcome::U
            }
        }
    }
}

/// Payment to A for one outcome pair: c1 for (d, u), c2 for (r, l), c3 for
/// (u, d), c4 for (l, r), and nothing for the remaining twelve cells.
pub fn payment(payoff: &PayoffMatrix, a: Outcome, b: Outcome) -> f64 {
    match (a, b) {
        (Outcome::D, Outcome::U) => payoff.c1(),
        (Outcome::R, Outcome::L) => payoff.c2(),
        (Outcome::U, Outcome::D) => payoff.c3(),
        (Outcome::L, Outcome::R) => payoff.c4(),
        _ => 0.0,
    }
}

/// Sum and sum of squares of the per-round payments implied by a tally.
fn payment_moments(payoff: &PayoffMatrix, counts: &[[u64; 4]; 4]) -> (f64, f64) {
    let all = [Outcome::U, Outcome::L, Outcome::D, Outcome::R];
    let mut sum = 0.0;
    let mut sum_sq = 0.0;
    for a in all {
        for b in all {
            let v = payment(payoff, a, b);
            let n = counts[a.index()][b.index()] as f64;
            sum += v * n;
            sum_sq += v * v * n;
        }
    }
    (sum, sum_sq)
}

/// Runs the game and also returns the per-chunk running payment rate.
///
/// Per round, the draw order is fixed: A's window (random-even policy
/// only), A's quadrant, B's window (random-even only), B's quadrant.
pub fn run_game_traced(config: &SimulationConfig) -> Result<(SimulationResult, Vec<ChunkStat>)> {
    config.validate()?;
    let base = ChaCha8Rng::seed_from_u64(config.seed);
    let mut counts = [[0u64; 4]; 4];
    let chunk_count = config.rounds.div_ceil(CHUNK_ROUNDS);
    let mut trace = Vec::with_capacity(chunk_count as usize);

    for chunk in 0..chunk_count {
        let mut rng = base.clone();
        rng.set_stream(chunk);
        let start = chunk * CHUNK_ROUNDS;
        let end = config.rounds.min(start + CHUNK_ROUNDS);
        for round in start..end {
            let draw_window = |rng: &mut ChaCha8Rng| {
                if rng.gen::<f64>() < 0.5 {
                    Window::Bottom
                } else {
                    Window::Side
                }
            };
            let window_a = match config.window_policy {
                WindowPolicy::Alternate => {
                    if round % 2 == 0 {
                        Window::Bottom
                    } else {
                        Window::Side
                    }
                }
                WindowPolicy::RandomEven => draw_window(&mut rng),
            };
            let outcome_a = observe(&config.boolean_state_a, window_a, &mut rng);
            let window_b = match config.window_policy {
                WindowPolicy::Alternate => window_a,
                WindowPolicy::RandomEven => draw_window(&mut rng),
            };
            let outcome_b = observe(&config.boolean_state_b, window_b, &mut rng);
            counts[outcome_a.index()][outcome_b.index()] += 1;
        }
        trace.push(ChunkStat {
            rounds_completed: end,
            running_payoff: payment_moments(&config.payoff, &counts).0 / end as f64,
        });
    }

    let row = |i: usize| -> u64 { counts[i].iter().sum() };
    let col = |j: usize| -> u64 { counts.iter().map(|r| r[j]).sum() };
    let empirical_windows_a = EmpiricalWindows::from_counts(row(0), row(1), row(2), row(3));
    let empirical_windows_b = EmpiricalWindows::from_counts(col(0), col(1), col(2), col(3));

    let rounds = config.rounds as f64;
    let (paid, paid_sq) = payment_moments(&config.payoff, &counts);
    let empirical_payoff = paid / rounds;
    let standard_error = if config.rounds > 1 {
        let variance = (paid_sq - paid * paid / rounds) / (rounds - 1.0);
        (variance.max(0.0) / rounds).sqrt()
    } else {
        0.0
    };

    let analytic_windows_a = boolean_to_windows(&config.boolean_state_a);
    let analytic_windows_b = boolean_to_windows(&config.boolean_state_b);
    let pairing_factor = config.window_policy.pairing_factor();
    let analytic_payoff = pairing_factor
        * quantum_payoff_probabilities(&config.payoff, &analytic_windows_a, &analytic_windows_b);

    Ok((
        SimulationResult {
            rounds: config.rounds,
            seed: config.seed,
            window_policy: config.window_policy,
            pairing_factor,
            counts,
            empirical_windows_a,
            empirical_windows_b,
            empirical_payoff,
            standard_error,
            analytic_windows_a,
            analytic_windows_b,
            analytic_payoff,
        },
        trace,
    ))
}

/// Runs the game. See [`run_game_traced`] for the running-average variant.
pub fn run_game(config: &SimulationConfig) -> Result<SimulationResult> {
    run_game_traced(config).map(|(result, _)| result)
}
