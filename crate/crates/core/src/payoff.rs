//! Payoff functionals of the zero-sum window game.
//!
//! Player A maximizes and player B minimizes the expected payment
//!
//! ```text
//! H = c1 w_d^a w_u^b + c2 w_r^a w_l^b + c3 w_u^a w_d^b + c4 w_l^a w_r^b
//! ```
//!
//! where `w^a`, `w^b` are the players' window probabilities. When those
//! probabilities come from strategy vectors, H collapses to a bilinear form
//! in the plane ([`quantum_payoff_vectors`]); when the four probabilities per
//! player are chosen freely in the unit square instead, the same expression
//! is the classical game ([`classical_payoff`]) with a closed-form saddle
//! ([`classical_saddle`]).

use nalgebra::{Matrix2, Vector2};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::measures::{strategy_windows, Representation, WindowProbabilities};

/// Unit-norm tolerance for strategy vectors.
pub const STRATEGY_NORM_TOL: f64 = 1e-12;

/// The four stakes of the game, all strictly positive. `c1` is paid to A for
/// the outcome pair (d, u), `c2` for (r, l), `c3` for (u, d), `c4` for (l, r).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 4]", into = "[f64; 4]")]
pub struct PayoffMatrix {
    c: [f64; 4],
}

impl PayoffMatrix {
    pub fn new(c1: f64, c2: f64, c3: f64, c4: f64) -> Result<Self> {
        for (i, c) in [c1, c2, c3, c4].iter().enumerate() {
            if !c.is_finite() || *c <= 0.0 {
                return Err(Error::InvalidPayoff(format!(
                    "c{} = {c} must be a finite positive number",
                    i + 1
                )));
            }
        }
        Ok(Self {
            c: [c1, c2, c3, c4],
        })
    }

    pub fn c1(&self) -> f64 {
        self.c[0]
    }
    pub fn c2(&self) -> f64 {
        self.c[1]
    }
    pub fn c3(&self) -> f64 {
        self.c[2]
    }
    pub fn c4(&self) -> f64 {
        self.c[3]
    }

    pub fn as_array(&self) -> [f64; 4] {
        self.c
    }

    /// Sum of all four stakes, the natural scale of the payoff.
    pub fn total(&self) -> f64 {
        self.c.iter().sum()
    }

    pub fn constants(&self) -> GameConstants {
        let n = self.c[0] + self.c[2];
        let m = self.c[1] + self.c[3];
        let omega = Vector2::new(self.c[2] - self.c[0], self.c[3] - self.c[1]);
        GameConstants {
            n,
            m,
            omega,
            c_diag: Matrix2::new(n, 0.0, 0.0, m),
            delta: n * omega[1] * omega[1] - m * omega[0] * omega[0],
        }
    }
}

impl TryFrom<[f64; 4]> for PayoffMatrix {
    type Error = Error;
    fn try_from(c: [f64; 4]) -> Result<Self> {
        PayoffMatrix::new(c[0], c[1], c[2], c[3])
    }
}

impl From<PayoffMatrix> for [f64; 4] {
    fn from(p: PayoffMatrix) -> [f64; 4] {
        p.c
    }
}

/// Aggregates derived from the stakes that drive every closed-form result.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GameConstants {
    /// `c1 + c3`, the stake mass on the side window.
    pub n: f64,
    /// `c2 + c4`, the stake mass on the bottom window.
    pub m: f64,
    /// `(c3 - c1, c4 - c2)`, the stake imbalance vector.
    pub omega: Vector2<f64>,
    /// `diag(n, m)`.
    pub c_diag: Matrix2<f64>,
    /// `n omega_2^2 - m omega_1^2`; the game degenerates when this vanishes.
    pub delta: f64,
}

impl GameConstants {
    /// `n + m`, the trace of the diagonal stake matrix.
    pub fn trace(&self) -> f64 {
        self.n + self.m
    }
}

/// The matrix sending a strategy vector to its expectation coordinates:
///
/// ```text
/// M_phi = [ cos phi  -sin phi ]
///         [ cos phi   sin phi ]
/// ```
///
/// With `s = M_phi x` the window probabilities of `x` are `(1 + s_1)/2` for
/// up and `(1 + s_2)/2` for left. The rows are the doubled-angle images of
/// the two projector directions, so `M_phi M_phi^T` has unit diagonal and
/// off-diagonal `cos 2 phi`, and `M_phi^T M_phi = diag(2 cos^2, 2 sin^2)`.
pub fn representation_matrix(phi: f64) -> Matrix2<f64> {
    let (s, c) = phi.sin_cos();
    Matrix2::new(c, -s, c, s)
}

/// The bilinear coupling `A = M_theta^T C M_tau` between the two players'
/// strategy vectors.
pub fn coupling_matrix(payoff: &PayoffMatrix, rep: &Representation) -> Matrix2<f64> {
    let k = payoff.constants();
    representation_matrix(rep.theta()).transpose() * k.c_diag * representation_matrix(rep.tau())
}

/// The linear term `z_phi = M_phi^T omega` seen by a player with
/// representation angle `phi`.
pub fn linear_term(payoff: &PayoffMatrix, phi: f64) -> Vector2<f64> {
    representation_matrix(phi).transpose() * payoff.constants().omega
}

/// A unit vector in the plane, one player's strategy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 2]", into = "[f64; 2]")]
pub struct Strategy {
    v: [f64; 2],
}

impl Strategy {
    pub fn from_angle(chi: f64) -> Self {
        Self {
            v: [chi.cos(), chi.sin()],
        }
    }

    /// Validates the Euclidean norm is 1 within [`STRATEGY_NORM_TOL`].
    pub fn from_components(x: f64, y: f64) -> Result<Self> {
        let norm = x.hypot(y);
        if !norm.is_finite() || (norm - 1.0).abs() > STRATEGY_NORM_TOL {
            return Err(Error::InvalidProbability(format!(
                "strategy norm {norm} is not 1"
            )));
        }
        Ok(Self { v: [x, y] })
    }

    /// The unit vector along `v`; fails on (near-)zero input.
    pub fn normalized(v: &Vector2<f64>) -> Result<Self> {
        let norm = v.norm();
        if !norm.is_finite() || norm < STRATEGY_NORM_TOL {
            return Err(Error::InvalidProbability(
                "cannot normalize a zero vector into a strategy".into(),
            ));
        }
        Ok(Self {
            v: [v[0] / norm, v[1] / norm],
        })
    }

    pub fn vector(&self) -> Vector2<f64> {
        Vector2::new(self.v[0], self.v[1])
    }

    pub fn components(&self) -> [f64; 2] {
        self.v
    }

    pub fn angle(&self) -> f64 {
        let a = self.v[1].atan2(self.v[0]);
        if a < 0.0 {
            a + std::f64::consts::TAU
        } else {
            a
        }
    }

    pub fn negated(&self) -> Self {
        Self {
            v: [-self.v[0], -self.v[1]],
        }
    }
}

impl TryFrom<[f64; 2]> for Strategy {
    type Error = Error;
    fn try_from(v: [f64; 2]) -> Result<Self> {
        Strategy::from_components(v[0], v[1])
    }
}

impl From<Strategy> for [f64; 2] {
    fn from(s: Strategy) -> [f64; 2] {
        s.v
    }
}

/// A strategy profile, one vector per player.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StrategyPair {
    pub x: Strategy,
    pub y: Strategy,
}

/// Expected payment to A given both players' window probabilities.
pub fn quantum_payoff_probabilities(
    payoff: &PayoffMatrix,
    a: &WindowProbabilities,
    b: &WindowProbabilities,
) -> f64 {
    payoff.c1() * a.w_d * b.w_u
        + payoff.c2() * a.w_r * b.w_l
        + payoff.c3() * a.w_u * b.w_d
        + payoff.c4() * a.w_l * b.w_r
}

/// The shifted bilinear form `g(x, y) = -<x, A y> + <x, z_theta> - <y, z_tau>`
/// whose saddle points are the equilibria. The payoff itself is
/// `(g + n + m) / 4`.
pub fn game_form(payoff: &PayoffMatrix, rep: &Representation, x: &Strategy, y: &Strategy) -> f64 {
    let a = coupling_matrix(payoff, rep);
    let z_theta = linear_term(payoff, rep.theta());
    let z_tau = linear_term(payoff, rep.tau());
    let (xv, yv) = (x.vector(), y.vector());
    -xv.dot(&(a * yv)) + xv.dot(&z_theta) - yv.dot(&z_tau)
}

/// Expected payment to A in strategy-vector form, `(g(x, y) + n + m) / 4`.
/// Agrees with [`quantum_payoff_probabilities`] applied to the vectors'
/// window probabilities.
pub fn quantum_payoff_vectors(
    payoff: &PayoffMatrix,
    rep: &Representation,
    x: &Strategy,
    y: &Strategy,
) -> f64 {
    0.25 * (game_form(payoff, rep, x, y) + payoff.constants().trace())
}

fn check_unit_interval(name: &str, v: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&v) || !v.is_finite() {
        return Err(Error::InvalidProbability(format!(
            "{name} = {v} is outside [0, 1]"
        )));
    }
    Ok(())
}

/// Expected payment to A when each player picks window probabilities freely:
/// `p = (p1, p2)` are A's up and left probabilities, `q = (q1, q2)` B's.
/// Unlike the vector game the two windows decouple here.
pub fn classical_payoff(payoff: &PayoffMatrix, p: [f64; 2], q: [f64; 2]) -> Result<f64> {
    check_unit_interval("p1", p[0])?;
    check_unit_interval("p2", p[1])?;
    check_unit_interval("q1", q[0])?;
    check_unit_interval("q2", q[1])?;
    Ok(payoff.c1() * (1.0 - p[0]) * q[0]
        + payoff.c3() * p[0] * (1.0 - q[0])
        + payoff.c2() * (1.0 - p[1]) * q[1]
        + payoff.c4() * p[1] * (1.0 - q[1]))
}

/// The classical game's unique interior saddle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClassicalSaddle {
    /// A's (up, left) probabilities.
    pub p: [f64; 2],
    /// B's (up, left) probabilities.
    pub q: [f64; 2],
    /// The game value `c1 c3 / n + c2 c4 / m`.
    pub value: f64,
}

/// Closed-form solution of the classical game. Each window is a separate
/// matching-pennies game; the saddle equalizes the opponent's options.
pub fn classical_saddle(payoff: &PayoffMatrix) -> ClassicalSaddle {
    let k = payoff.constants();
    ClassicalSaddle {
        p: [payoff.c1() / k.n, payoff.c2() / k.m],
        q: [payoff.c3() / k.n, payoff.c4() / k.m],
        value: classical_value(payoff),
    }
}

/// Value of the classical game, `c1 c3 / n + c2 c4 / m`.
pub fn classical_value(payoff: &PayoffMatrix) -> f64 {
    let k = payoff.constants();
    payoff.c1() * payoff.c3() / k.n + payoff.c2() * payoff.c4() / k.m
}

/// Window probabilities induced by a strategy profile under a representation.
pub fn profile_windows(
    rep: &Representation,
    pair: &StrategyPair,
) -> (WindowProbabilities, WindowProbabilities) {
    (
        strategy_windows(&pair.x, rep.theta()),
        strategy_windows(&pair.y, rep.tau()),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::FRAC_PI_4;

    use super::Strategy;

    fn assert_close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b} (tol {tol})");
    }

    #[test]
    fn constants_of_the_reference_games() {
        let k = PayoffMatrix::new(1.0, 9.0, 10.0, 2.0).unwrap().constants();
        assert_eq!((k.n, k.m), (11.0, 11.0));
        assert_eq!((k.omega[0], k.omega[1]), (9.0, -7.0));
        assert_eq!(k.delta, 11.0 * 49.0 - 11.0 * 81.0);
        assert_eq!(k.trace(), 22.0);

        let k = PayoffMatrix::new(1.0, 2.0, 9.0, 8.0).unwrap().constants();
        assert_eq!((k.n, k.m), (10.0, 10.0));
        assert_eq!((k.omega[0], k.omega[1]), (8.0, 6.0));
        assert_eq!(k.delta, 10.0 * 36.0 - 10.0 * 64.0);

        let k = PayoffMatrix::new(1.0, 1.0, 3.0, 3.0).unwrap().constants();
        assert_eq!(k.delta, 0.0);
        assert!(k.omega.norm() > 0.0);
    }

    #[test]
    fn nonpositive_stakes_are_rejected() {
        assert!(PayoffMatrix::new(0.0, 1.0, 1.0, 1.0).is_err());
        assert!(PayoffMatrix::new(1.0, -2.0, 1.0, 1.0).is_err());
        assert!(PayoffMatrix::new(1.0, 1.0, f64::NAN, 1.0).is_err());
        assert!(PayoffMatrix::new(1e-9, 1.0, 1.0, 1e9).is_ok());
    }

    #[test]
    fn representation_matrix_products() {
        for phi in [0.2, FRAC_PI_4, 1.0, 1.5] {
            let mm = representation_matrix(phi);
            let outer = mm * mm.transpose();
            assert_close(outer[(0, 0)], 1.0, 1e-14);
            assert_close(outer[(1, 1)], 1.0, 1e-14);
            assert_close(outer[(0, 1)], (2.0 * phi).cos(), 1e-14);
            assert_close(outer[(1, 0)], (2.0 * phi).cos(), 1e-14);

            let inner = mm.transpose() * mm;
            assert_close(inner[(0, 0)], 2.0 * phi.cos().powi(2), 1e-14);
            assert_close(inner[(1, 1)], 2.0 * phi.sin().powi(2), 1e-14);
            assert_close(inner[(0, 1)], 0.0, 1e-14);
        }
    }

    #[test]
    fn coupling_is_scalar_for_balanced_stakes_at_quarter_pi() {
        // n = m makes C scalar, and at phi = pi/4 the inner product matrix is
        // the identity, so A = n I.
        let rep = Representation::symmetric(FRAC_PI_4).unwrap();

        let payoff = PayoffMatrix::new(1.0, 9.0, 10.0, 2.0).unwrap();
        let a = coupling_matrix(&payoff, &rep);
        for (i, j) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            let expect = if i == j { 11.0 } else { 0.0 };
            assert_close(a[(i, j)], expect, 1e-12);
        }

        let payoff = PayoffMatrix::new(1.0, 2.0, 9.0, 8.0).unwrap();
        let a = coupling_matrix(&payoff, &rep);
        assert_close(a[(0, 0)], 10.0, 1e-12);
        assert_close(a[(1, 1)], 10.0, 1e-12);
        assert_close(a[(0, 1)], 0.0, 1e-12);
    }

    #[test]
    fn coupling_is_symmetric_for_equal_angles() {
        let payoff = PayoffMatrix::new(2.0, 5.0, 7.0, 3.0).unwrap();
        let rep = Representation::symmetric(0.7).unwrap();
        let a = coupling_matrix(&payoff, &rep);
        assert_close(a[(0, 1)], a[(1, 0)], 1e-12);
    }

    #[test]
    fn linear_terms_of_the_reference_games() {
        let payoff = PayoffMatrix::new(1.0, 9.0, 10.0, 2.0).unwrap();
        let z = linear_term(&payoff, FRAC_PI_4);
        assert_close(z[0], 2.0_f64.sqrt(), 1e-12);
        assert_close(z[1], -8.0 * 2.0_f64.sqrt(), 1e-12);
        assert_close(z.norm(), 130.0_f64.sqrt(), 1e-12);

        let payoff = PayoffMatrix::new(1.0, 2.0, 9.0, 8.0).unwrap();
        let z = linear_term(&payoff, FRAC_PI_4);
        assert_close(z[0], 7.0 * 2.0_f64.sqrt(), 1e-12);
        assert_close(z[1], -(2.0_f64.sqrt()), 1e-12);
        assert_close(z.norm(), 10.0, 1e-12);
    }

    #[test]
    fn equilibrium_payoffs_of_the_reference_games() {
        // Balanced stakes at pi/4: A = n I, and along x = y the linear terms
        // cancel, leaving (n + m - n)/4.
        let rep = Representation::symmetric(FRAC_PI_4).unwrap();

        let payoff = PayoffMatrix::new(1.0, 9.0, 10.0, 2.0).unwrap();
        let z = linear_term(&payoff, FRAC_PI_4);
        let x = Strategy::normalized(&z).unwrap();
        assert_close(
            quantum_payoff_vectors(&payoff, &rep, &x, &x),
            11.0 / 4.0,
            1e-12,
        );

        let payoff = PayoffMatrix::new(1.0, 2.0, 9.0, 8.0).unwrap();
        let z = linear_term(&payoff, FRAC_PI_4);
        let x = Strategy::normalized(&z).unwrap();
        assert_close(quantum_payoff_vectors(&payoff, &rep, &x, &x), 2.5, 1e-12);
        // The mirrored profile pays the same here.
        assert_close(
            quantum_payoff_vectors(&payoff, &rep, &x.negated(), &x),
            2.5,
            1e-12,
        );
    }

    #[test]
    fn classical_saddles_of_the_reference_games() {
        let payoff = PayoffMatrix::new(1.0, 9.0, 10.0, 2.0).unwrap();
        let s = classical_saddle(&payoff);
        assert_close(s.value, 28.0 / 11.0, 1e-12);
        assert_close(s.p[0], 1.0 / 11.0, 1e-12);
        assert_close(s.q[0], 10.0 / 11.0, 1e-12);

        let payoff = PayoffMatrix::new(1.0, 2.0, 9.0, 8.0).unwrap();
        assert_close(classical_value(&payoff), 2.5, 1e-12);

        let payoff = PayoffMatrix::new(1.0, 2.0, 99.0, 98.0).unwrap();
        assert_close(classical_value(&payoff), 0.99 + 1.96, 1e-12);
    }

    #[test]
    fn classical_saddle_equalizes_the_opponent() {
        let payoff = PayoffMatrix::new(3.0, 5.0, 2.0, 7.0).unwrap();
        let s = classical_saddle(&payoff);
        for q in [[0.0, 0.0], [1.0, 0.0], [0.3, 0.9], [1.0, 1.0]] {
            assert_close(classical_payoff(&payoff, s.p, q).unwrap(), s.value, 1e-12);
        }
        for p in [[0.0, 1.0], [0.6, 0.2], [1.0, 1.0]] {
            assert_close(classical_payoff(&payoff, p, s.q).unwrap(), s.value, 1e-12);
        }
    }

    #[test]
    fn probability_arguments_are_validated() {
        let payoff = PayoffMatrix::new(1.0, 1.0, 1.0, 1.0).unwrap();
        assert!(classical_payoff(&payoff, [1.2, 0.5], [0.5, 0.5]).is_err());
        assert!(classical_payoff(&payoff, [0.5, 0.5], [0.5, -0.1]).is_err());
        assert!(Strategy::from_components(0.7, 0.7).is_err());
        assert!(Strategy::from_components(0.6, 0.8).is_ok());
    }

    proptest! {
        #[test]
        fn vector_and_probability_payoffs_agree(
            c1 in 0.1..20.0f64, c2 in 0.1..20.0f64, c3 in 0.1..20.0f64, c4 in 0.1..20.0f64,
            theta in 0.05..1.5f64, tau in 0.05..1.5f64,
            chi_x in 0.0..std::f64::consts::TAU, chi_y in 0.0..std::f64::consts::TAU,
        ) {
            let payoff = PayoffMatrix::new(c1, c2, c3, c4).unwrap();
            let rep = Representation::new(theta, tau).unwrap();
            let pair = StrategyPair {
                x: Strategy::from_angle(chi_x),
                y: Strategy::from_angle(chi_y),
            };
            let (wa, wb) = profile_windows(&rep, &pair);
            let via_probs = quantum_payoff_probabilities(&payoff, &wa, &wb);
            let via_vectors = quantum_payoff_vectors(&payoff, &rep, &pair.x, &pair.y);
            let tol = 1e-12 * payoff.constants().trace();
            prop_assert!((via_probs - via_vectors).abs() <= tol,
                "{via_probs} vs {via_vectors}");
        }

        #[test]
        fn classical_saddle_is_a_saddle(
            c1 in 0.1..20.0f64, c2 in 0.1..20.0f64, c3 in 0.1..20.0f64, c4 in 0.1..20.0f64,
            p1 in 0.0..1.0f64, p2 in 0.0..1.0f64, q1 in 0.0..1.0f64, q2 in 0.0..1.0f64,
        ) {
            let payoff = PayoffMatrix::new(c1, c2, c3, c4).unwrap();
            let s = classical_saddle(&payoff);
            let tol = 1e-12 * payoff.total();
            // Any deviation by the maximizer cannot raise the value, and any
            // deviation by the minimizer cannot lower it.
            let dev_a = classical_payoff(&payoff, [p1, p2], s.q).unwrap();
            let dev_b = classical_payoff(&payoff, s.p, [q1, q2]).unwrap();
            prop_assert!(dev_a <= s.value + tol);
            prop_assert!(dev_b >= s.value - tol);
        }
    }
}
