//! Probability calculus on the box and its windows.
//!
//! Two descriptions of the same firefly coexist here. The Boolean one assigns
//! probabilities to the four quadrants of the box ([`BooleanState`]); summing
//! quadrant pairs gives the four window probabilities ([`WindowProbabilities`],
//! [`boolean_to_windows`]). The projective one derives the window
//! probabilities from a unit [`WaveVector`] and a representation angle via
//! rank-1 projectors ([`projector_probabilities`]); the pairs it can produce
//! are exactly the points of an ellipse, tested by [`ellipse_residual`].
//!
//! Quadrants are numbered 1 = lower-left, 2 = upper-left, 3 = lower-right,
//! 4 = upper-right. The bottom window aggregates left/right columns
//! (`w_l = w1 + w2`), the side window aggregates lower/upper rows
//! (`w_d = w1 + w3`).

use nalgebra::{Matrix2, Vector2};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::payoff::{representation_matrix, Strategy};

/// Absolute tolerance for probability arithmetic in closed form.
pub const PROB_TOL: f64 = 1e-12;

/// Representation angles closer than this to 0 or pi/2 are rejected as
/// degenerate: the two projector directions (anti)coincide there.
pub const DEGENERATE_ANGLE_TOL: f64 = 1e-9;

/// Probabilities of the four box quadrants.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 4]", into = "[f64; 4]")]
pub struct BooleanState {
    w1: f64,
    w2: f64,
    w3: f64,
    w4: f64,
}

impl BooleanState {
    /// Validates that all four probabilities lie in `[0, 1]` and sum to 1
    /// within [`PROB_TOL`].
    pub fn new(w1: f64, w2: f64, w3: f64, w4: f64) -> Result<Self> {
        for (name, w) in [("w1", w1), ("w2", w2), ("w3", w3), ("w4", w4)] {
            if !(0.0..=1.0).contains(&w) || !w.is_finite() {
                return Err(Error::InvalidProbability(format!(
                    "{name} = {w} is outside [0, 1]"
                )));
            }
        }
        let sum = w1 + w2 + w3 + w4;
        if (sum - 1.0).abs() > PROB_TOL {
            return Err(Error::InvalidProbability(format!(
                "quadrant probabilities sum to {sum}, not 1"
            )));
        }
        Ok(Self { w1, w2, w3, w4 })
    }

    pub fn uniform() -> Self {
        Self::new(0.25, 0.25, 0.25, 0.25).unwrap()
    }

    pub fn as_array(&self) -> [f64; 4] {
        [self.w1, self.w2, self.w3, self.w4]
    }

    pub fn w1(&self) -> f64 {
        self.w1
    }
    pub fn w2(&self) -> f64 {
        self.w2
    }
    pub fn w3(&self) -> f64 {
        self.w3
    }
    pub fn w4(&self) -> f64 {
        self.w4
    }
}

impl TryFrom<[f64; 4]> for BooleanState {
    type Error = Error;
    fn try_from(w: [f64; 4]) -> Result<Self> {
        BooleanState::new(w[0], w[1], w[2], w[3])
    }
}

impl From<BooleanState> for [f64; 4] {
    fn from(s: BooleanState) -> [f64; 4] {
        s.as_array()
    }
}

/// Probabilities of the four window outcomes.
///
/// Only `w_l` and `w_u` are free; their complements are stored as exact
/// floating-point complements (`w_r = 1 - w_l`, `w_d = 1 - w_u`) so that each
/// window pair sums to exactly 1 and the four outcomes to exactly 2.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WindowProbabilities {
    pub w_l: f64,
    pub w_r: f64,
    pub w_u: f64,
    pub w_d: f64,
}

impl WindowProbabilities {
    /// Builds from the two free outcomes, deriving exact complements.
    pub fn from_left_up(w_l: f64, w_u: f64) -> Result<Self> {
        for (name, w) in [("w_l", w_l), ("w_u", w_u)] {
            if !(0.0..=1.0).contains(&w) || !w.is_finite() {
                return Err(Error::InvalidProbability(format!(
                    "{name} = {w} is outside [0, 1]"
                )));
            }
        }
        Ok(Self {
            w_l,
            w_r: 1.0 - w_l,
            w_u,
            w_d: 1.0 - w_u,
        })
    }

    /// Validates a full 4-tuple `(w_l, w_r, w_u, w_d)`: each pair must sum to
    /// 1 within [`PROB_TOL`]. Complements are re-derived exactly from
    /// `(w_l, w_u)`.
    pub fn from_four(w_l: f64, w_r: f64, w_u: f64, w_d: f64) -> Result<Self> {
        if (w_l + w_r - 1.0).abs() > PROB_TOL {
            return Err(Error::InvalidProbability(format!(
                "w_l + w_r = {} is not 1",
                w_l + w_r
            )));
        }
        if (w_u + w_d - 1.0).abs() > PROB_TOL {
            return Err(Error::InvalidProbability(format!(
                "w_u + w_d = {} is not 1",
                w_u + w_d
            )));
        }
        Self::from_left_up(w_l, w_u)
    }
}

/// The pair of representation angles fixing both players' projector
/// realizations of the lattice: `theta` for the first player, `tau` for the
/// second. Both must lie strictly inside `(0, pi/2)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Representation {
    theta: f64,
    tau: f64,
}

impl Representation {
    pub fn new(theta: f64, tau: f64) -> Result<Self> {
        check_angle(theta)?;
        check_angle(tau)?;
        Ok(Self { theta, tau })
    }

    /// Common angle for both players.
    pub fn symmetric(angle: f64) -> Result<Self> {
        Self::new(angle, angle)
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }
    pub fn tau(&self) -> f64 {
        self.tau
    }
}

fn check_angle(angle: f64) -> Result<()> {
    if !angle.is_finite()
        || angle < DEGENERATE_ANGLE_TOL
        || angle > std::f64::consts::FRAC_PI_2 - DEGENERATE_ANGLE_TOL
    {
        return Err(Error::DegenerateRepresentation {
            angle,
            tol: DEGENERATE_ANGLE_TOL,
        });
    }
    Ok(())
}

/// A unit vector in the real plane, the state preparation of one player.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WaveVector {
    components: [f64; 2],
}

impl WaveVector {
    pub fn from_angle(alpha: f64) -> Self {
        Self {
            components: [alpha.cos(), alpha.sin()],
        }
    }

    /// Validates the Euclidean norm is 1 within [`PROB_TOL`].
    pub fn from_components(x: f64, y: f64) -> Result<Self> {
        let norm = x.hypot(y);
        if !norm.is_finite() || (norm - 1.0).abs() > PROB_TOL {
            return Err(Error::InvalidProbability(format!(
                "wave vector norm {norm} is not 1"
            )));
        }
        Ok(Self { components: [x, y] })
    }

    pub fn components(&self) -> [f64; 2] {
        self.components
    }

    pub fn angle(&self) -> f64 {
        let a = self.components[1].atan2(self.components[0]);
        if a < 0.0 {
            a + std::f64::consts::TAU
        } else {
            a
        }
    }
}

/// Window probabilities induced by the quadrant distribution: the bottom
/// window sees the left/right columns, the side window the lower/upper rows.
pub fn boolean_to_windows(state: &BooleanState) -> WindowProbabilities {
    let w_l = state.w1() + state.w2();
    let w_d = state.w1() + state.w3();
    WindowProbabilities {
        w_l,
        w_r: 1.0 - w_l,
        w_u: 1.0 - w_d,
        w_d,
    }
}

/// Feasibility interval for the free quadrant probability `w1` given the two
/// independent window probabilities.
pub fn free_parameter_interval(w: &WindowProbabilities) -> (f64, f64) {
    let lo = (w.w_l + w.w_d - 1.0).max(0.0);
    let hi = w.w_l.min(w.w_d);
    (lo, hi)
}

/// Inverts [`boolean_to_windows`]. The window probabilities pin the quadrant
/// distribution only up to one free parameter; `free` chooses `w1` inside its
/// feasibility interval, and the error carries that interval when it is
/// violated.
pub fn windows_to_boolean(w: &WindowProbabilities, free: f64) -> Result<BooleanState> {
    let (lo, hi) = free_parameter_interval(w);
    if !(lo - PROB_TOL..=hi + PROB_TOL).contains(&free) || !free.is_finite() {
        return Err(Error::InfeasibleParameter {
            value: free,
            lo,
            hi,
        });
    }
    let clamp = |x: f64| x.clamp(0.0, 1.0);
    BooleanState::new(
        clamp(free),
        clamp(w.w_l - free),
        clamp(w.w_d - free),
        clamp(1.0 - w.w_l - w.w_d + free),
    )
}

fn rank1_projector(direction: f64) -> Matrix2<f64> {
    let e = Vector2::new(direction.cos(), direction.sin());
    e * e.transpose()
}

/// Quantum probability rule for one player: `w = <psi, P psi>` with `P` the
/// rank-1 projector onto direction 0 for the up outcome and direction
/// `rep_angle` for the left outcome. The complementary outcomes use the
/// orthogonal projectors, so `w_u = cos^2(alpha)` and
/// `w_l = cos^2(alpha - rep_angle)`.
///
/// Both players use the same component mapping; the second player substitutes
/// their own wave vector and `tau`.
pub fn projector_probabilities(psi: &WaveVector, rep_angle: f64) -> WindowProbabilities {
    let v = Vector2::from_column_slice(&psi.components());
    let w_u = (v.transpose() * rank1_projector(0.0) * v)[0];
    let w_l = (v.transpose() * rank1_projector(rep_angle) * v)[0];
    let clamp = |x: f64| x.clamp(0.0, 1.0);
    WindowProbabilities {
        w_l: clamp(w_l),
        w_r: 1.0 - clamp(w_l),
        w_u: clamp(w_u),
        w_d: 1.0 - clamp(w_u),
    }
}

/// Left-hand side of the realizability constraint minus 1:
///
/// ```text
/// (w_u + w_l - 1)^2 / cos^2(theta) + (w_l - w_u)^2 / sin^2(theta) - 1
/// ```
///
/// Zero (within [`PROB_TOL`]) exactly when `(w_u, w_l)` is induced by some
/// wave vector under representation angle `theta`. Angles within
/// [`DEGENERATE_ANGLE_TOL`] of 0 or pi/2 are rejected: the ellipse collapses
/// to a segment there.
pub fn ellipse_residual(w_u: f64, w_l: f64, theta: f64) -> Result<f64> {
    check_angle(theta)?;
    let (sin, cos) = theta.sin_cos();
    let a = w_u + w_l - 1.0;
    let b = w_l - w_u;
    Ok(a * a / (cos * cos) + b * b / (sin * sin) - 1.0)
}

/// Window probabilities of a strategy vector `x` under representation angle
/// `phi`: with `s = M_phi x`, `w_u = (1 + s_1)/2` and `w_l = (1 + s_2)/2`.
/// Equivalent to [`projector_probabilities`] through the angle doubling
/// below.
pub fn strategy_windows(strategy: &Strategy, phi: f64) -> WindowProbabilities {
    let s = representation_matrix(phi) * strategy.vector();
    let clamp = |x: f64| x.clamp(0.0, 1.0);
    let w_u = clamp((1.0 + s[0]) / 2.0);
    let w_l = clamp((1.0 + s[1]) / 2.0);
    WindowProbabilities {
        w_l,
        w_r: 1.0 - w_l,
        w_u,
        w_d: 1.0 - w_u,
    }
}

/// A wave vector at angle `alpha` acts, through the probability mapping, as
/// the strategy vector at angle `2 alpha - rep_angle` (the ray double cover).
pub fn wave_to_strategy(psi: &WaveVector, rep_angle: f64) -> Strategy {
    Strategy::from_angle(2.0 * psi.angle() - rep_angle)
}

/// Inverse of [`wave_to_strategy`]: the wave-vector angle is
/// `(strategy_angle + rep_angle) / 2`.
pub fn strategy_to_wave(strategy: &Strategy, rep_angle: f64) -> WaveVector {
    WaveVector::from_angle((strategy.angle() + rep_angle) / 2.0)
}
