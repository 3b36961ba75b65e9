//! Equilibria of a zero-sum guessing game played on the nondistributive
//! event lattice of a particle in a partitioned box.
//!
//! Two players each prepare a unit wave vector; a representation angle turns
//! those vectors into probabilities for four window outcomes (up, down, left,
//! right), and a stake matrix prices every opposed outcome pair. The crate
//! provides:
//!
//! - [`ortholattice`]: finite orthocomplemented lattices, law checking, the
//!   six-element box lattice, and its embedding into a Boolean algebra;
//! - [`measures`]: quadrant and window probability states, the projector
//!   probability rule, and the ellipse constraint that separates realizable
//!   window pairs from free ones;
//! - [`payoff`]: the expected payment in probability and strategy-vector
//!   form, and the classical game's closed-form saddle;
//! - [`equilibrium`]: the closed-form equilibrium solver, its classifier,
//!   and independent grid-search verifiers for both games;
//! - [`sim`]: a reproducible round-by-round simulation of the game;
//! - [`cli`]: the command-line front end wrapping all of the above.

pub mod cli;
pub mod equilibrium;
pub mod error;
pub mod measures;
pub mod ortholattice;
pub mod payoff;
pub mod sim;

pub use error::{Error, Result};
pub use measures::{BooleanState, Representation, WaveVector, WindowProbabilities};
pub use ortholattice::FiniteOrtholattice;
pub use payoff::{PayoffMatrix, Strategy, StrategyPair};
