//! Closed-form equilibrium solving and independent verification.
//!
//! The solver works entirely in the strategy-vector picture. With balanced
//! angles `theta = tau` the coupling `A = M_theta^T C M_theta` is symmetric,
//! and the candidate equilibria all point along `z = M_theta^T omega`:
//!
//! 1. [`solve_angle`] pins the representation angle from
//!    `cos 2 theta = (m - n) omega_1 omega_2 / delta`;
//! 2. [`solve_eigenequilibrium`] classifies the game by comparing the
//!    alignment product `<Az, z>` against `|z|^3` and emits an
//!    [`EquilibriumReport`];
//! 3. [`saddle_oracle`] and [`classical_saddle_oracle`] re-derive the results
//!    by brute-force grid search over raw payoff evaluations, sharing no
//!    algebra with the solver, so that every reported equilibrium is checked
//!    by an independent route.

use nalgebra::{Matrix2, Vector2};
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::measures::{strategy_windows, Representation, WindowProbabilities};
use crate::payoff::{
    classical_value, coupling_matrix, linear_term, quantum_payoff_probabilities,
    quantum_payoff_vectors, PayoffMatrix, Strategy, StrategyPair,
};

/// Numeric thresholds for the solver, the classifier, and the oracles.
///
/// All thresholds are relative to a natural scale of the quantity they
/// guard, so reports behave identically at any overall stake magnitude.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// The game is degenerate when `|delta| <= delta_rel * n * m`.
    pub delta_rel: f64,
    /// Half-width of the classification band: the mirrored profile is also
    /// an equilibrium when `|<Az, z> - |z|^3| <= boundary_rel * |z|^3`.
    pub boundary_rel: f64,
    /// Residual bound certifying eigenvector and eigen-pair checks.
    pub eigen_residual: f64,
    /// Grid-oracle deviation threshold per unit of total stake.
    pub saddle_rel: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            delta_rel: 1e-12,
            boundary_rel: 1e-9,
            eigen_residual: 1e-10,
            saddle_rel: 1e-9,
        }
    }
}

impl Tolerances {
    /// Sets one named threshold, for `key=value` style overrides.
    pub fn set(&mut self, key: &str, value: f64) -> Result<()> {
        if !value.is_finite() || value <= 0.0 {
            return Err(Error::InvalidConfig(format!(
                "tolerance {key} must be a positive number, got {value}"
            )));
        }
        match key {
            "delta_rel" => self.delta_rel = value,
            "boundary_rel" => self.boundary_rel = value,
            "eigen_residual" => self.eigen_residual = value,
            "saddle_rel" => self.saddle_rel = value,
            other => {
                return Err(Error::InvalidConfig(format!(
                    "unknown tolerance {other} (expected delta_rel, boundary_rel, \
                     eigen_residual, or saddle_rel)"
                )))
            }
        }
        Ok(())
    }
}

/// Classification of a game's equilibrium structure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EquilibriumKind {
    /// Exactly one equilibrium, `x = y = z/|z|`.
    Unique,
    /// The boundary case: the aligned profile and its sign-flipped
    /// maximizer twin are both equilibria.
    Multiple,
    /// No equilibrium: either no valid angle solves the angle equation, or
    /// the alignment product exceeds the cube of the pull norm.
    None,
    /// `n omega_2^2 - m omega_1^2` vanishes; no angle is determined.
    DegenerateGame,
    /// The stake imbalance `omega` is zero; `z` vanishes identically.
    DegenerateOmega,
}

impl std::fmt::Display for EquilibriumKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Self::Unique => "unique",
            Self::Multiple => "multiple",
            Self::None => "none",
            Self::DegenerateGame => "degenerate-game",
            Self::DegenerateOmega => "degenerate-omega",
        };
        f.write_str(s)
    }
}

/// One certified equilibrium profile.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Equilibrium {
    pub x: Strategy,
    pub y: Strategy,
    pub probs_a: WindowProbabilities,
    pub probs_b: WindowProbabilities,
    pub value: f64,
    /// The shared scalar with `A y = lambda x` and `A^T x = lambda y`.
    pub eigenvalue: f64,
}

/// Intermediate quantities the classification was based on.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Diagnostics {
    pub n: f64,
    pub m: f64,
    pub omega: [f64; 2],
    pub delta: f64,
    /// Right-hand side of the angle equation, when the game is
    /// non-degenerate.
    pub cos_two_theta: Option<f64>,
    pub z: Option<[f64; 2]>,
    pub z_norm: Option<f64>,
    /// The alignment product `<Az, z>`.
    pub az_z: Option<f64>,
    pub z_norm_cubed: Option<f64>,
}

/// Best profile a grid search could find when no equilibrium is certified.
/// Informational only; `worst_deviation` is the larger of the two players'
/// exact best-response gains at the profile.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CandidateProfile {
    pub x: Strategy,
    pub y: Strategy,
    pub probs_a: WindowProbabilities,
    pub probs_b: WindowProbabilities,
    pub value: f64,
    pub worst_deviation: f64,
    pub certified: bool,
}

/// Full output of [`solve_eigenequilibrium`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EquilibriumReport {
    pub kind: EquilibriumKind,
    /// The solved representation angle (shared by both players); absent for
    /// degenerate games and when the angle equation has no solution.
    pub theta: Option<f64>,
    pub equilibria: Vec<Equilibrium>,
    /// Eigenvalue of the coupling on the `z` direction, when an angle
    /// exists.
    pub eigenvalue: Option<f64>,
    pub classical_value: f64,
    pub diagnostics: Diagnostics,
    pub candidate: Option<CandidateProfile>,
    pub notes: Vec<String>,
}

/// Result of [`common_eigenvector_check`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EigenvectorCheck {
    pub holds: bool,
    /// Normalized cross product of `C M_theta M_theta^T omega` with `omega`.
    pub residual_theta: f64,
    pub residual_tau: f64,
    /// Rayleigh quotients of `omega` under the two matrices.
    pub eigenvalue_theta: f64,
    pub eigenvalue_tau: f64,
}

/// Result of [`is_eigenequilibrium`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EigenPairCheck {
    pub holds: bool,
    /// The shared scalar `lambda = <x, A y>`.
    pub eigenvalue: f64,
    /// Larger of `|A y - lambda x|` and `|A^T x - lambda y|`, relative to
    /// the Frobenius norm of `A`.
    pub residual: f64,
}

/// Verdict of the quantum grid oracle ([`saddle_oracle`]).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SaddleCheck {
    pub pass: bool,
    /// Largest payoff gain A found by deviating (negative when no grid
    /// point beats the profile).
    pub best_gain_a: f64,
    /// Largest payoff reduction B found by deviating.
    pub best_gain_b: f64,
    pub best_deviation_a: Strategy,
    pub best_deviation_b: Strategy,
    /// Value of the checked profile.
    pub value: f64,
    pub epsilon: f64,
    pub grid: usize,
}

/// Output of the classical grid oracle ([`classical_saddle_oracle`]).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClassicalOracle {
    pub grid: usize,
    /// Maximin argument for A: (up, left) probabilities.
    pub p: [f64; 2],
    /// Minimax argument for B.
    pub q: [f64; 2],
    /// Midpoint of the maximin/minimax bracket.
    pub value: f64,
    /// Grid maximin: guaranteed lower bound on the game value.
    pub lower: f64,
    /// Grid minimax: guaranteed upper bound.
    pub upper: f64,
}

fn perp_dot(a: &Vector2<f64>, b: &Vector2<f64>) -> f64 {
    a[0] * b[1] - a[1] * b[0]
}

/// Checks whether the stake imbalance `omega` is an eigenvector of both
/// `C M_theta M_theta^T` and `C M_tau M_tau^T`, a necessary condition for an
/// eigen-pair equilibrium to exist at those angles.
pub fn common_eigenvector_check(
    payoff: &PayoffMatrix,
    rep: &Representation,
    tol: &Tolerances,
) -> Result<EigenvectorCheck> {
    let k = payoff.constants();
    if k.omega.norm() == 0.0 {
        return Err(Error::DegenerateOmega);
    }
    let side = |phi: f64| {
        let (s2, c2) = (2.0 * phi).sin_cos();
        let _ = s2;
        let mm = Matrix2::new(1.0, c2, c2, 1.0);
        let v = k.c_diag * mm * k.omega;
        let residual = perp_dot(&v, &k.omega).abs() / (v.norm() * k.omega.norm());
        let eigenvalue = v.dot(&k.omega) / k.omega.norm_squared();
        (residual, eigenvalue)
    };
    let (residual_theta, eigenvalue_theta) = side(rep.theta());
    let (residual_tau, eigenvalue_tau) = side(rep.tau());
    Ok(EigenvectorCheck {
        holds: residual_theta < tol.eigen_residual && residual_tau < tol.eigen_residual,
        residual_theta,
        residual_tau,
        eigenvalue_theta,
        eigenvalue_tau,
    })
}

/// Solves the angle equation `cos 2 theta = (m - n) omega_1 omega_2 / delta`
/// for the shared representation angle, taken in `(0, pi/2)`.
pub fn solve_angle(payoff: &PayoffMatrix, tol: &Tolerances) -> Result<f64> {
    let k = payoff.constants();
    if k.delta.abs() <= tol.delta_rel * k.n * k.m {
        return Err(Error::DegenerateGame {
            delta: k.delta,
            tol: tol.delta_rel * k.n * k.m,
        });
    }
    let ratio = (k.m - k.n) * k.omega[0] * k.omega[1] / k.delta;
    if ratio.abs() > 1.0 {
        return Err(Error::NoEigenequilibrium { ratio });
    }
    let theta = 0.5 * ratio.acos();
    Representation::symmetric(theta)?;
    Ok(theta)
}

fn normalization_note() -> String {
    "values are the four-cell expectation c1*wd*wu' + c2*wr*wl' + c3*wu*wd' + c4*wl*wr', \
     equal to (g + n + m)/4; a convention normalizing g by 1/2 instead of 1/4 reports \
     exactly twice each value"
        .to_string()
}

fn certified_pair(
    payoff: &PayoffMatrix,
    rep: &Representation,
    a: &Matrix2<f64>,
    x: Strategy,
    y: Strategy,
) -> Equilibrium {
    let probs_a = strategy_windows(&x, rep.theta());
    let probs_b = strategy_windows(&y, rep.tau());
    let value = quantum_payoff_vectors(payoff, rep, &x, &y);
    let eigenvalue = x.vector().dot(&(a * y.vector()));
    Equilibrium {
        x,
        y,
        probs_a,
        probs_b,
        value,
        eigenvalue,
    }
}

/// Exact best-response gains at a profile: how much A can still gain by
/// switching `x`, and how much B can still cut by switching `y`. Both are
/// zero exactly at a saddle.
pub fn deviation_gaps(
    payoff: &PayoffMatrix,
    rep: &Representation,
    pair: &StrategyPair,
) -> (f64, f64) {
    let a = coupling_matrix(payoff, rep);
    let z_theta = linear_term(payoff, rep.theta());
    let z_tau = linear_term(payoff, rep.tau());
    let pull_a = z_theta - a * pair.y.vector();
    let gap_a = 0.25 * (pull_a.norm() - pair.x.vector().dot(&pull_a));
    let pull_b = a.transpose() * pair.x.vector() + z_tau;
    let gap_b = 0.25 * (pull_b.norm() - pair.y.vector().dot(&pull_b));
    (gap_a, gap_b)
}

fn best_grid_candidate(
    payoff: &PayoffMatrix,
    rep: &Representation,
    grid: usize,
) -> CandidateProfile {
    let step = TAU / grid as f64;
    let mut best: Option<(f64, Strategy, Strategy)> = None;
    for i in 0..grid {
        let x = Strategy::from_angle(i as f64 * step);
        for j in 0..grid {
            let y = Strategy::from_angle(j as f64 * step);
            let (gap_a, gap_b) = deviation_gaps(payoff, rep, &StrategyPair { x, y });
            let worst = gap_a.max(gap_b);
            if best.as_ref().is_none_or(|(w, _, _)| worst < *w) {
                best = Some((worst, x, y));
            }
        }
    }
    let (worst_deviation, x, y) = best.unwrap();
    CandidateProfile {
        x,
        y,
        probs_a: strategy_windows(&x, rep.theta()),
        probs_b: strategy_windows(&y, rep.tau()),
        value: quantum_payoff_vectors(payoff, rep, &x, &y),
        worst_deviation,
        certified: false,
    }
}

/// Solves and classifies the game, certifying equilibria in closed form.
///
/// Degenerate stakes are reported through [`EquilibriumReport::kind`], not
/// as errors; the only error path is an angle solution that lands within the
/// degenerate margin of 0 or pi/2.
pub fn solve_eigenequilibrium(
    payoff: &PayoffMatrix,
    tol: &Tolerances,
) -> Result<EquilibriumReport> {
    let k = payoff.constants();
    let mut diagnostics = Diagnostics {
        n: k.n,
        m: k.m,
        omega: [k.omega[0], k.omega[1]],
        delta: k.delta,
        cos_two_theta: None,
        z: None,
        z_norm: None,
        az_z: None,
        z_norm_cubed: None,
    };
    let classical = classical_value(payoff);
    let report = |kind, theta, equilibria, eigenvalue, diagnostics, candidate, notes| {
        Ok(EquilibriumReport {
            kind,
            theta,
            equilibria,
            eigenvalue,
            classical_value: classical,
            diagnostics,
            candidate,
            notes,
        })
    };

    if k.omega.norm() <= tol.delta_rel * payoff.total() {
        return report(
            EquilibriumKind::DegenerateOmega,
            None,
            vec![],
            None,
            diagnostics,
            None,
            vec![
                "the stake imbalance vector omega is zero, so z vanishes and no \
                 eigen-direction exists"
                    .to_string(),
            ],
        );
    }

    let theta = match solve_angle(payoff, tol) {
        Ok(theta) => theta,
        Err(Error::DegenerateGame { .. }) => {
            return report(
                EquilibriumKind::DegenerateGame,
                None,
                vec![],
                None,
                diagnostics,
                None,
                vec![
                    "degenerate game: n*omega2^2 - m*omega1^2 vanishes within tolerance, \
                     so the angle equation has no unique solution"
                        .to_string(),
                ],
            );
        }
        Err(Error::NoEigenequilibrium { ratio }) => {
            diagnostics.cos_two_theta = Some(ratio);
            return report(
                EquilibriumKind::None,
                None,
                vec![],
                None,
                diagnostics,
                None,
                vec![format!(
                    "no equilibrium: the angle equation requires cos(2*theta) = {ratio}, \
                     outside [-1, 1]"
                )],
            );
        }
        Err(e) => return Err(e),
    };

    let rep = Representation::symmetric(theta)?;
    let a = coupling_matrix(payoff, &rep);
    let z = linear_term(payoff, theta);
    let z_norm = z.norm();
    let az_z = (a * z).dot(&z);
    let cube = z_norm.powi(3);
    diagnostics.cos_two_theta = Some((k.m - k.n) * k.omega[0] * k.omega[1] / k.delta);
    diagnostics.z = Some([z[0], z[1]]);
    diagnostics.z_norm = Some(z_norm);
    diagnostics.az_z = Some(az_z);
    diagnostics.z_norm_cubed = Some(cube);

    let zhat = Strategy::normalized(&z)?;
    let aligned = certified_pair(payoff, &rep, &a, zhat, zhat);
    let lambda = aligned.eigenvalue;

    if (az_z - cube).abs() <= tol.boundary_rel * cube {
        let mirrored = certified_pair(payoff, &rep, &a, zhat.negated(), zhat);
        report(
            EquilibriumKind::Multiple,
            Some(theta),
            vec![aligned, mirrored],
            Some(lambda),
            diagnostics,
            None,
            vec![
                "boundary classification: <Az, z> equals |z|^3 within the relative band, \
                 so the profile with the maximizer's sign flipped is a second equilibrium \
                 with the same value"
                    .to_string(),
                normalization_note(),
            ],
        )
    } else if az_z < cube {
        report(
            EquilibriumKind::Unique,
            Some(theta),
            vec![aligned],
            Some(lambda),
            diagnostics,
            None,
            vec![normalization_note()],
        )
    } else {
        let candidate = best_grid_candidate(payoff, &rep, 256);
        report(
            EquilibriumKind::None,
            Some(theta),
            vec![],
            Some(lambda),
            diagnostics,
            Some(candidate),
            vec![
                "no equilibrium at the solved angle: <Az, z> exceeds |z|^3 beyond the \
                 classification band; the attached candidate is the best grid-search \
                 profile and is not certified"
                    .to_string(),
                normalization_note(),
            ],
        )
    }
}

/// Tests whether a profile is an eigen-pair of the block coupling: a shared
/// scalar `lambda` with `A y = lambda x` and `A^T x = lambda y`.
pub fn is_eigenequilibrium(
    payoff: &PayoffMatrix,
    rep: &Representation,
    pair: &StrategyPair,
    tol: &Tolerances,
) -> EigenPairCheck {
    let a = coupling_matrix(payoff, rep);
    let (x, y) = (pair.x.vector(), pair.y.vector());
    let lambda = x.dot(&(a * y));
    let r1 = (a * y - lambda * x).norm();
    let r2 = (a.transpose() * x - lambda * y).norm();
    let residual = r1.max(r2) / a.norm();
    EigenPairCheck {
        holds: residual < tol.eigen_residual,
        eigenvalue: lambda,
        residual,
    }
}

/// Payoff of a profile through the probability route, the evaluation the
/// grid oracles use. Kept free of the bilinear-form algebra on purpose.
fn probability_route_payoff(
    payoff: &PayoffMatrix,
    rep: &Representation,
    x: &Strategy,
    y: &Strategy,
) -> f64 {
    let wa = strategy_windows(x, rep.theta());
    let wb = strategy_windows(y, rep.tau());
    quantum_payoff_probabilities(payoff, &wa, &wb)
}

/// Scans one player's deviations: returns the best deviation angle and its
/// payoff according to `eval`, maximizing over a uniform grid on `[0, 2pi)`
/// and then three local halving rounds around the winner. Ties keep the
/// smallest angle index.
fn scan_deviations(grid: usize, eval: impl Fn(f64) -> f64) -> (f64, f64) {
    let step = TAU / grid as f64;
    let mut best_chi = 0.0;
    let mut best_val = eval(0.0);
    for i in 1..grid {
        let chi = i as f64 * step;
        let val = eval(chi);
        if val > best_val {
            best_val = val;
            best_chi = chi;
        }
    }
    let mut h = step;
    for _ in 0..3 {
        let lo = best_chi - h;
        let fine = h / 4.0;
        for k in 0..=8 {
            let chi = lo + k as f64 * fine;
            let val = eval(chi);
            if val > best_val {
                best_val = val;
                best_chi = chi;
            }
        }
        h = fine;
    }
    (best_chi, best_val)
}

/// Brute-force check that a profile is a saddle: no grid deviation by either
/// player improves that player's outcome by more than
/// `epsilon = saddle_rel * (c1 + c2 + c3 + c4)`. Evaluates payoffs through
/// the probability route only.
pub fn saddle_oracle(
    payoff: &PayoffMatrix,
    rep: &Representation,
    pair: &StrategyPair,
    grid: usize,
    tol: &Tolerances,
) -> Result<SaddleCheck> {
    if grid < 256 {
        return Err(Error::InvalidConfig(format!(
            "saddle oracle grid must be at least 256, got {grid}"
        )));
    }
    let epsilon = tol.saddle_rel * payoff.total();
    let value = probability_route_payoff(payoff, rep, &pair.x, &pair.y);

    let (chi_a, best_a) = scan_deviations(grid, |chi| {
        probability_route_payoff(payoff, rep, &Strategy::from_angle(chi), &pair.y)
    });
    let (chi_b, best_b_neg) = scan_deviations(grid, |chi| {
        -probability_route_payoff(payoff, rep, &pair.x, &Strategy::from_angle(chi))
    });

    let best_gain_a = best_a - value;
    let best_gain_b = value - (-best_b_neg);
    Ok(SaddleCheck {
        pass: best_gain_a <= epsilon && best_gain_b <= epsilon,
        best_gain_a,
        best_gain_b,
        best_deviation_a: Strategy::from_angle(chi_a),
        best_deviation_b: Strategy::from_angle(chi_b),
        value,
        epsilon,
        grid,
    })
}

/// Exact inner optimum of the classical payoff for the minimizer: since the
/// payoff is linear in each of B's probabilities, the minimum over the
/// square sits at a corner, evaluated per window.
fn classical_inner_min(payoff: &PayoffMatrix, p: [f64; 2]) -> f64 {
    (payoff.c3() * p[0]).min(payoff.c1() * (1.0 - p[0]))
        + (payoff.c4() * p[1]).min(payoff.c2() * (1.0 - p[1]))
}

fn classical_inner_max(payoff: &PayoffMatrix, q: [f64; 2]) -> f64 {
    (payoff.c1() * q[0]).max(payoff.c3() * (1.0 - q[0]))
        + (payoff.c2() * q[1]).max(payoff.c4() * (1.0 - q[1]))
}

/// Brute-force saddle search for the classical game on the probability
/// square. The outer player ranges over a `grid x grid` lattice on
/// `[0, 1]^2`; the inner response is evaluated exactly at the square's
/// corners (the payoff is linear in each inner coordinate). Returns the
/// maximin profile for A, the minimax profile for B, and the bracket
/// midpoint as the value estimate; `lower <= value of the game <= upper`
/// always holds, and the bracket tightens as the grid refines.
pub fn classical_saddle_oracle(payoff: &PayoffMatrix, grid: usize) -> Result<ClassicalOracle> {
    if grid < 101 {
        return Err(Error::InvalidConfig(format!(
            "classical oracle grid must be at least 101, got {grid}"
        )));
    }
    let coord = |i: usize| i as f64 / (grid - 1) as f64;

    let mut lower = f64::NEG_INFINITY;
    let mut p = [0.0, 0.0];
    for i in 0..grid {
        for j in 0..grid {
            let cand = [coord(i), coord(j)];
            let v = classical_inner_min(payoff, cand);
            if v > lower {
                lower = v;
                p = cand;
            }
        }
    }

    let mut upper = f64::INFINITY;
    let mut q = [0.0, 0.0];
    for i in 0..grid {
        for j in 0..grid {
            let cand = [coord(i), coord(j)];
            let v = classical_inner_max(payoff, cand);
            if v < upper {
                upper = v;
                q = cand;
            }
        }
    }

    Ok(ClassicalOracle {
        grid,
        p,
        q,
        value: 0.5 * (lower + upper),
        lower,
        upper,
    })
}
