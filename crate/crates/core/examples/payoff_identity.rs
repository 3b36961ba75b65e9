//! Two routes to the same expected payment.
//!
//! The expected payment to player A can be computed two ways: directly from
//! both players' window probabilities (four product terms), or from the
//! players' strategy vectors through the bilinear form
//! `H = (g(x, y) + n + m) / 4`. The two must agree to rounding error on
//! every profile; this example hammers the identity with deterministic
//! pseudo-random payoffs, representation angles, and strategy angles, and
//! reports the worst discrepancy seen.
//!
//! ```bash
//! cargo run --example payoff_identity
//! ```

use firefly_games::measures::Representation;
use firefly_games::payoff::{
    profile_windows, quantum_payoff_probabilities, quantum_payoff_vectors, PayoffMatrix,
    Strategy, StrategyPair,
};

/// Counter-based generator (splitmix64): sample `i` of stream `key` is
/// `unit(key, i)`, independent of evaluation order.
fn unit(key: u64, index: u64) -> f64 {
    let mut z = key
        .wrapping_mul(0x9e37_79b9_7f4a_7c15)
        .wrapping_add(index.wrapping_mul(0xbf58_476d_1ce4_e5b9));
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^= z >> 31;
    (z >> 11) as f64 / (1u64 << 53) as f64
}

fn main() {
    let samples = 20_000;
    let mut worst: f64 = 0.0;
    let mut worst_at = 0;

    for i in 0..samples {
        let stake = |k: u64| 0.1 + 9.9 * unit(k, i);
        let payoff = PayoffMatrix::new(stake(1), stake(2), stake(3), stake(4)).unwrap();
        let angle = |k: u64| 0.05 + (std::f64::consts::FRAC_PI_2 - 0.1) * unit(k, i);
        let rep = Representation::new(angle(5), angle(6)).unwrap();
        let pair = StrategyPair {
            x: Strategy::from_angle(2.0 * std::f64::consts::PI * unit(7, i)),
            y: Strategy::from_angle(2.0 * std::f64::consts::PI * unit(8, i)),
        };

        let via_vectors = quantum_payoff_vectors(&payoff, &rep, &pair.x, &pair.y);
        let (wa, wb) = profile_windows(&rep, &pair);
        let via_probabilities = quantum_payoff_probabilities(&payoff, &wa, &wb);

        let gap = (via_vectors - via_probabilities).abs() / payoff.total();
        if gap > worst {
            worst = gap;
            worst_at = i;
        }
    }

    println!("samples:                 {samples}");
    println!("worst relative mismatch: {worst:.3e} (sample {worst_at})");
    println!("tolerance:               1.0e-12 of the total stake");
    assert!(worst < 1e-12, "the two payoff routes disagree");
    println!();
    println!("The bilinear form is not a model of the game; it IS the game,");
    println!("rewritten. Any daylight between the two routes would mean an");
    println!("algebra bug, so the acceptance suite re-runs this check.");
}
