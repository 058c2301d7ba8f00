//! Two-player zero-sum games with lexicographic parity / mean-payoff objectives.

mod attractor;
mod machine;
mod meanpayoff;
mod mpp;
mod parity;
mod punish;
mod synth;
mod turn;

use std::fmt;
use std::ops::Neg;

pub use attractor::attractor;
pub use machine::{coalition_machines, simulate_profile, Positional, StrategyMachine, TbStrategy};
pub use meanpayoff::{mp_solve, one_player_values, solve_mean_payoff, MpSolution};
pub use mpp::{lex_value, lex_values, mpp_solve, solve_mpp, solve_mpp_dual, MppSolution};
pub use parity::{solve_parity, solve_parity_via_mean_payoff, zielonka, ParitySolution};
pub use punish::{punish_strategy, punishing_table, AgentAnalysis, PunishTable, Punisher};
pub use synth::{product_secures, strategy_product, synth, StrategyProduct, SynthMem, SynthStrategy};
pub use turn::{coalition_game, to_turn_based, CoalitionGame, MoverOrder};

use crate::rational::{fmt_q, Q};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Player {
    /// Wants even parity and high mean payoff.
    Max,
    Min,
}

impl Player {
    pub fn opponent(self) -> Player {
        match self {
            Player::Max => Player::Min,
            Player::Min => Player::Max,
        }
    }
}

/// Explicit turn-based game with vertex weights and priorities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TurnBasedGame {
    pub owner: Vec<Player>,
    pub succ: Vec<Vec<usize>>,
    pub weight: Vec<i64>,
    pub priority: Vec<u32>,
}

impl TurnBasedGame {
    pub fn len(&self) -> usize {
        self.owner.len()
    }

    pub fn is_empty(&self) -> bool {
        self.owner.is_empty()
    }

    pub fn full_mask(&self) -> Vec<bool> {
        vec![true; self.len()]
    }

    /// Exchange the players, negate weights and shift priorities by one.
    pub fn swap(&self) -> TurnBasedGame {
        TurnBasedGame {
            owner: self.owner.iter().map(|p| p.opponent()).collect(),
            succ: self.succ.clone(),
            weight: self.weight.iter().map(|w| -w).collect(),
            priority: self.priority.iter().map(|p| p + 1).collect(),
        }
    }

    pub fn predecessors(&self) -> Vec<Vec<usize>> {
        let mut pred = vec![Vec::new(); self.len()];
        for (v, succ) in self.succ.iter().enumerate() {
            for &u in succ {
                pred[u].push(v);
            }
        }
        pred
    }

    pub fn max_abs_weight(&self) -> i64 {
        self.weight.iter().map(|w| w.abs()).max().unwrap_or(0)
    }

    /// Every vertex of `mask` keeps a successor in `mask`.
    pub fn is_subgame(&self, mask: &[bool]) -> bool {
        (0..self.len()).all(|v| !mask[v] || self.succ[v].iter().any(|&u| mask[u]))
    }
}

/// Rationals extended with both infinities.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtValue {
    NegInf,
    Fin(Q),
    PosInf,
}

impl ExtValue {
    pub fn finite(&self) -> Option<&Q> {
        match self {
            ExtValue::Fin(q) => Some(q),
            _ => None,
        }
    }
}

impl Neg for ExtValue {
    type Output = ExtValue;
    fn neg(self) -> ExtValue {
        match self {
            ExtValue::NegInf => ExtValue::PosInf,
            ExtValue::PosInf => ExtValue::NegInf,
            ExtValue::Fin(q) => ExtValue::Fin(-q),
        }
    }
}

impl fmt::Display for ExtValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtValue::NegInf => write!(f, "-inf"),
            ExtValue::PosInf => write!(f, "+inf"),
            ExtValue::Fin(q) => write!(f, "{}", fmt_q(q)),
        }
    }
}
