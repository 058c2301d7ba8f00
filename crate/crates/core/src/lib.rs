//! Strict epsilon Nash equilibria in concurrent games where every agent ranks
//! plays lexicographically: first by an LTL (or parity) goal, then by the mean
//! payoff of its state weights.

#![allow(clippy::needless_range_loop, clippy::type_complexity)]

pub mod arena;
pub mod automata;
pub mod cli;
pub mod dot;
pub mod equilibrium;
pub mod error;
pub mod graph;
pub mod ltl;
pub mod oracle;
pub mod pathfinder;
pub mod rational;
pub mod zerosum;

pub use error::{Error, Result};
