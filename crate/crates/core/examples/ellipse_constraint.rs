//! The constraint curve of wave-vector states.
//!
//! A quadrant distribution can put any consistent pair of probabilities on
//! the up and left windows. A wave vector cannot: its projector
//! probabilities `w_u = cos^2(alpha)` and `w_l = cos^2(alpha - theta)` trace
//! an ellipse as the wave angle `alpha` turns, with shape fixed by the
//! representation angle `theta`. This example sweeps the wave angle to show
//! the residual vanishing on the curve, evaluates off-curve points, and
//! shows the curve degenerating as `theta` approaches the ends of its range.
//!
//! ```bash
//! cargo run --example ellipse_constraint
//! ```

use std::f64::consts::{FRAC_PI_4, PI};

use firefly_games::measures::{ellipse_residual, projector_probabilities, WaveVector};

fn main() {
    let theta = FRAC_PI_4;

    println!("== points generated by wave vectors (theta = pi/4)");
    println!("   alpha/pi     w_u      w_l      residual");
    for k in 0..8 {
        let alpha = PI * k as f64 / 8.0;
        let psi = WaveVector::from_angle(alpha);
        let w = projector_probabilities(&psi, theta);
        let residual = ellipse_residual(w.w_u, w.w_l, theta).unwrap();
        println!(
            "   {:8.3} {:8.4} {:8.4}  {residual:+.2e}",
            alpha / PI,
            w.w_u,
            w.w_l
        );
    }

    println!();
    println!("== points no wave vector reaches");
    for (w_u, w_l) in [(0.5, 0.5), (0.9, 0.1), (0.857, 0.622)] {
        let residual = ellipse_residual(w_u, w_l, theta).unwrap();
        println!("   (w_u, w_l) = ({w_u}, {w_l}): residual = {residual:+.6}");
    }
    println!("   A residual of zero is attainable; anything else needs a");
    println!("   quadrant state rather than a wave vector.");

    println!();
    println!("== the curve flattens at the range ends");
    for theta in [0.5, 0.1, 0.01, 1e-6] {
        // Fix the wave halfway between the two projector directions and
        // watch the point crowd the diagonal w_u = w_l.
        let psi = WaveVector::from_angle(theta / 2.0);
        let w = projector_probabilities(&psi, theta);
        println!(
            "   theta = {theta:<8}: (w_u, w_l) = ({:.6}, {:.6}), spread {:+.2e}",
            w.w_u,
            w.w_l,
            w.w_u - w.w_l
        );
    }
    match ellipse_residual(0.7, 0.7, 0.0) {
        Err(err) => println!("   theta = 0 is rejected: {err}"),
        Ok(_) => unreachable!("degenerate angles must be rejected"),
    }
}
