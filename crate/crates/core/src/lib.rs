//! Secure route planning over roadmaps with a single-edge attacker.
//!
//! Traversing an edge is modelled as a multistage 2×2 zero-sum game between a
//! defender (the vehicle, choosing Defend / No Defend) and an attacker
//! (Attack / No Attack). The game stops the first time both play actively:
//! the attack is detected and permanently disabled. [`game`] solves that
//! edge-game in closed form; [`meta`] lifts the edge values to a path-vs-edge
//! matrix game over a [`roadmap`] and compares it against a shortest-path
//! heuristic; [`bench`] runs the random-graph comparisons; [`cli`] wires it
//! all to the `secroute` binary.

pub mod bench;
pub mod cli;
pub mod error;
pub mod game;
pub mod lp;
pub mod meta;
pub mod roadmap;
pub mod seed;

pub use error::{Error, Result};
pub use game::{EdgeGameSolution, MixedPolicy2, StageCostMatrix};
pub use meta::{MetaGame, PathSet};
pub use roadmap::{Edge, Roadmap};
