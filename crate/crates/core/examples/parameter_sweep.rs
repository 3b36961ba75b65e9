//! Sweeping a stake across the classification boundaries.
//!
//! Holding `(c1, c2, c4) = (1, 2, 8)` and sweeping `c3` drags the game
//! through a remarkable amount of structure: unstable eigen-directions
//! (alignment ratio well above 1), a collapse of the representation at
//! `c3 = 4` where the angle equation lands exactly on zero, a stretch
//! with no solvable angle at all, a second collapse at `c3 = 7`, a band
//! of unique equilibria, the multiple-equilibrium boundary hit exactly at
//! `c3 = 9`, and past it no equilibrium again. The same table is
//! available from the command line as
//! `firefly-games sweep --payoff 1,2,9,8 --payoff-range c3=2:12:41 --csv`.
//!
//! ```bash
//! cargo run --example parameter_sweep
//! ```

use firefly_games::equilibrium::{solve_eigenequilibrium, Tolerances};
use firefly_games::payoff::PayoffMatrix;

fn main() {
    let tol = Tolerances::default();
    println!(
        "   {:>5}  {:>8}   {:<25}  {:>8}  {}",
        "c3", "angle", "kind", "value", "<Az,z> / |z|^3"
    );
    let mut previous: Option<String> = None;
    for i in 0..=40 {
        let c3 = 2.0 + 0.25 * i as f64;
        let payoff = PayoffMatrix::new(1.0, 2.0, c3, 8.0).unwrap();
        let (kind, theta, value, alignment) = match solve_eigenequilibrium(&payoff, &tol) {
            Ok(report) => (
                report.kind.to_string(),
                report.theta,
                report.equilibria.first().map(|eq| eq.value),
                report
                    .diagnostics
                    .az_z
                    .zip(report.diagnostics.z_norm_cubed)
                    .map(|(a, c)| a / c),
            ),
            Err(err) => (err.kind().to_string(), None, None, None),
        };

        let crossed = previous.as_deref().is_some_and(|p| p != kind);
        let marker = if crossed { "  <- crossing" } else { "" };
        previous = Some(kind.clone());
        let theta = theta.map(|t| format!("{t:8.5}")).unwrap_or_else(|| " ".repeat(8));
        let value = value.map(|v| format!("{v:8.5}")).unwrap_or_else(|| " ".repeat(8));
        let alignment = alignment
            .map(|r| format!("{r:14.5}"))
            .unwrap_or_else(|| " ".repeat(14));
        println!("   {c3:5.2}  {theta}   {kind:25}  {value}  {alignment}{marker}");
    }
    println!();
    println!("The alignment ratio crosses 1 exactly where the aligned profile");
    println!("gains or loses its stability; where the ratio column is empty,");
    println!("the angle equation itself has no usable solution.");
}
