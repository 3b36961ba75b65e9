//! Solving games for their eigenequilibria.
//!
//! For a payoff matrix `(c1, c2, c3, c4)` the solver first pins the shared
//! representation angle from the stake imbalance, then classifies the game
//! by comparing the alignment product `<Az, z>` against `|z|^3`: strictly
//! below gives a unique equilibrium, equality adds a second one, above
//! leaves none. This example walks one game of each kind plus the
//! degenerate stakes the solver refuses to classify.
//!
//! ```bash
//! cargo run --example solve_equilibrium
//! ```

use firefly_games::equilibrium::{solve_eigenequilibrium, EquilibriumKind, Tolerances};
use firefly_games::payoff::PayoffMatrix;

fn show(c: [f64; 4]) {
    let tol = Tolerances::default();
    print!("== stakes ({}, {}, {}, {}): ", c[0], c[1], c[2], c[3]);
    let payoff = PayoffMatrix::new(c[0], c[1], c[2], c[3]).unwrap();
    let report = match solve_eigenequilibrium(&payoff, &tol) {
        Ok(report) => report,
        Err(err) => {
            println!("rejected ({err})");
            println!();
            return;
        }
    };
    println!("kind = {}", report.kind);
    if let Some(theta) = report.theta {
        println!("   representation angle: {theta:.6} rad ({:.2} deg)", theta.to_degrees());
    }
    for (i, eq) in report.equilibria.iter().enumerate() {
        println!(
            "   equilibrium {}: (w_u, w_l) = ({:.6}, {:.6}) for A, \
             ({:.6}, {:.6}) for B, value {:.6}",
            i + 1,
            eq.probs_a.w_u,
            eq.probs_a.w_l,
            eq.probs_b.w_u,
            eq.probs_b.w_l,
            eq.value
        );
    }
    if let Some(candidate) = &report.candidate {
        println!(
            "   closest grid profile is still unstable: the worse-off player \
             gains {:.4} by deviating",
            candidate.worst_deviation
        );
    }
    if report.kind == EquilibriumKind::None && report.theta.is_none() {
        if let Some(ratio) = report.diagnostics.cos_two_theta {
            println!("   the angle equation wants cos(2 theta) = {ratio}, outside [-1, 1]");
        }
    }
    println!("   classical value for comparison: {:.6}", report.classical_value);
    for note in &report.notes {
        println!("   note: {note}");
    }
    println!();
}

fn main() {
    // One unique equilibrium, strictly better for A than the classical game.
    show([1.0, 9.0, 10.0, 2.0]);
    // The boundary case: the aligned profile and its flipped twin coexist.
    show([1.0, 2.0, 9.0, 8.0]);
    // Alignment exceeds the cube: no equilibrium, only a best candidate.
    show([1.0, 2.0, 3.0, 100.0]);
    // The angle equation itself has no solution.
    show([0.5, 1.0, 1.5, 2.5]);
    // Degenerate stakes: zero imbalance, then a vanishing determinant.
    show([1.0, 1.0, 1.0, 1.0]);
    show([1.0, 1.0, 3.0, 3.0]);
    // The angle equation lands exactly on 0 or pi/2, where the
    // representation collapses; the solver refuses rather than guesses.
    show([0.5, 1.0, 1.5, 3.0]);
}
