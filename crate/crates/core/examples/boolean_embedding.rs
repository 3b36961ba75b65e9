//! Hidden variables: embedding the window lattice into the quadrant algebra.
//!
//! Each window observation aggregates two of the four box quadrants, so the
//! firefly lattice embeds into the Boolean lattice of quadrant subsets. The
//! embedding preserves order and orthocomplement — but not meets and joins,
//! which is exactly where the "hidden" quadrant states live. On the
//! probability side the same gap appears as a free parameter: a pair of
//! window probabilities pins a quadrant distribution only up to the mass of
//! one quadrant.
//!
//! ```bash
//! cargo run --example boolean_embedding
//! ```

use firefly_games::measures::{
    boolean_to_windows, free_parameter_interval, windows_to_boolean, WindowProbabilities,
};
use firefly_games::ortholattice::{boolean4, boolean_embedding, firefly};

fn main() {
    let small = firefly();
    let big = boolean4();
    let embed = boolean_embedding();

    println!("== the embedding");
    for (from, to) in &embed {
        println!("   {from:4} -> {to}");
    }

    // Order and orthocomplement survive the embedding.
    let mut order_ok = true;
    let mut ortho_ok = true;
    for x in small.elements() {
        for y in small.elements() {
            let there = big.leq(&embed[x], &embed[y]).unwrap();
            order_ok &= small.leq(x, y).unwrap() == there;
        }
        ortho_ok &= embed[small.ortho(x).unwrap()] == *big.ortho(&embed[x]).unwrap();
    }
    println!();
    println!("   order preserved and reflected: {order_ok}");
    println!("   orthocomplement preserved:     {ortho_ok}");

    // Meets do not survive: incompatible windows overlap in a quadrant that
    // has no preimage.
    let meet_small = small.meet("l", "d").unwrap();
    let meet_big = big.meet(&embed["l"], &embed["d"]).unwrap();
    println!();
    println!("== where it breaks");
    println!("   l /\\ d in the window lattice:  {meet_small}");
    println!(
        "   {{1,2}} /\\ {{1,3}} in the quadrant algebra: {meet_big} (no window maps there)"
    );

    // The same slack, numerically: window probabilities determine the
    // quadrant state only up to one quadrant's mass.
    let windows = WindowProbabilities::from_left_up(0.6, 0.3).unwrap();
    let (lo, hi) = free_parameter_interval(&windows);
    println!();
    println!("== the probability side");
    println!(
        "   windows (w_l, w_r, w_u, w_d) = ({}, {}, {}, {})",
        windows.w_l, windows.w_r, windows.w_u, windows.w_d
    );
    println!("   feasible left-down quadrant mass: [{lo}, {hi}]");
    for t in [0.0, 0.5, 1.0] {
        let free = lo + t * (hi - lo);
        let state = windows_to_boolean(&windows, free).unwrap();
        let [w1, w2, w3, w4] = state.as_array();
        let back = boolean_to_windows(&state);
        let drift = (back.w_l - windows.w_l)
            .abs()
            .max((back.w_u - windows.w_u).abs());
        println!(
            "   mass {free:.3} -> quadrants ({w1:.3}, {w2:.3}, {w3:.3}, {w4:.3}), \
             windows recovered: {}",
            drift <= 1e-12
        );
    }
    println!();
    println!("Every state in the interval reproduces the observed window");
    println!("statistics; the quadrant mass itself is unobservable.");
}
