//! What the wave-vector constraint is worth.
//!
//! In the classical version of the game both players pick window
//! probabilities freely, the two windows decouple, and the saddle value has
//! the closed form `c1 c3 / (c1 + c3) + c2 c4 / (c2 + c4)`. Wave-vector
//! players are confined to the constraint ellipse, which couples the
//! windows — and, counterintuitively, can pay the maximizer strictly more.
//! This example compares both values across games and verifies each with
//! its independent brute-force oracle.
//!
//! ```bash
//! cargo run --example classical_vs_quantum
//! ```

use firefly_games::equilibrium::{
    classical_saddle_oracle, saddle_oracle, solve_eigenequilibrium, Tolerances,
};
use firefly_games::measures::Representation;
use firefly_games::payoff::{classical_saddle, PayoffMatrix, StrategyPair};

fn main() {
    let tol = Tolerances::default();
    println!("   stakes               classical   quantum    advantage  oracles");
    for c in [
        [1.0, 9.0, 10.0, 2.0],
        [1.0, 2.0, 9.0, 8.0],
        [1.0, 2.0, 99.0, 98.0],
        [3.0, 5.0, 7.0, 2.0],
        [1.0, 5.0, 40.0, 38.0],
    ] {
        let payoff = PayoffMatrix::new(c[0], c[1], c[2], c[3]).unwrap();
        let saddle = classical_saddle(&payoff);
        let report = solve_eigenequilibrium(&payoff, &tol).unwrap();

        // Independent checks: grid search on the probability square for the
        // classical value, grid deviation scan for the quantum equilibrium.
        let bracket = classical_saddle_oracle(&payoff, 401).unwrap();
        let classical_ok = bracket.lower - 1e-9 <= saddle.value && saddle.value <= bracket.upper + 1e-9;

        let (quantum, quantum_ok) = match report.equilibria.first() {
            Some(eq) => {
                let rep = Representation::symmetric(report.theta.unwrap()).unwrap();
                let pair = StrategyPair { x: eq.x, y: eq.y };
                let check = saddle_oracle(&payoff, &rep, &pair, 1024, &tol).unwrap();
                (Some(eq.value), check.pass)
            }
            None => (None, true),
        };

        let quantum_text = quantum
            .map(|v| format!("{v:9.6}"))
            .unwrap_or_else(|| "  (none) ".to_string());
        let advantage = quantum
            .map(|v| format!("{:+9.6}", v - saddle.value))
            .unwrap_or_else(|| "         ".to_string());
        println!(
            "   ({:4}, {:4}, {:4}, {:4}) {:9.6}  {quantum_text}  {advantage}  classical {} / quantum {}",
            c[0],
            c[1],
            c[2],
            c[3],
            saddle.value,
            if classical_ok { "ok" } else { "FAIL" },
            if quantum_ok { "ok" } else { "FAIL" },
        );
    }
    println!();
    println!("A positive advantage means the constraint helps the maximizer:");
    println!("restricting BOTH players to the ellipse removes more of the");
    println!("minimizer's defenses than of the maximizer's threats.");
}
