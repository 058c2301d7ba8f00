use std::collections::HashMap;

use super::{Player, TurnBasedGame};
use crate::arena::{Decision, LexParityGame};
use crate::error::{Error, Result};

/// Who commits first when a simultaneous round is sequentialized.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MoverOrder {
    /// The coalition (minimizer) commits first; the maximizer sees its choice.
    MinFirst,
    /// The maximizer commits first.
    MaxFirst,
}

/// Agent `agent` against the fused coalition of all other agents.
///
/// Vertices `0..n` are arena states, owned by the first mover. The remaining
/// vertices are states after the first mover picked an option, where options
/// are the first mover's actions (coalition actions are mixed-radix tuples
/// over the other agents in declaration order). Options of one state leaving
/// the second mover the same successor set share a vertex.
#[derive(Debug, Clone)]
pub struct CoalitionGame {
    pub tb: TurnBasedGame,
    pub agent: usize,
    pub order: MoverOrder,
    pub n_states: usize,
    pub n_actions: usize,
    pub n_agents: usize,
    /// Number of joint coalition actions.
    pub n_coalition: usize,
    first_count: usize,
    second_count: usize,
    /// `inter[s * first_count + x]`: vertex of option `x` at state `s`.
    inter: Vec<u32>,
    /// Per intermediate vertex: its state and the least option reaching it.
    parts: Vec<(usize, usize)>,
}

impl CoalitionGame {
    pub fn state_vertex(&self, s: usize) -> usize {
        s
    }

    pub fn inter_vertex(&self, s: usize, x: usize) -> usize {
        self.inter[s * self.first_count + x] as usize
    }

    pub fn is_state_vertex(&self, v: usize) -> bool {
        v < self.n_states
    }

    /// `(state, first mover's option)` of an intermediate vertex.
    pub fn inter_parts(&self, v: usize) -> (usize, usize) {
        self.parts[v - self.n_states]
    }

    /// Arena state represented by a vertex.
    pub fn origin(&self, v: usize) -> usize {
        if self.is_state_vertex(v) {
            v
        } else {
            self.inter_parts(v).0
        }
    }

    /// Joint decision from the maximizer's action and a coalition action.
    pub fn join(&self, own: usize, coalition: usize) -> Decision {
        let mut digits = Vec::with_capacity(self.n_agents);
        let mut c = coalition;
        let mut others = Vec::with_capacity(self.n_agents - 1);
        for _ in 0..self.n_agents - 1 {
            others.push(c % self.n_actions);
            c /= self.n_actions;
        }
        others.reverse();
        let mut it = others.into_iter();
        for b in 0..self.n_agents {
            digits.push(if b == self.agent { own } else { it.next().unwrap() });
        }
        digits.iter().fold(0, |acc, &x| acc * self.n_actions + x)
    }

    /// Split a decision into `(maximizer action, coalition action)`.
    pub fn split(&self, d: Decision) -> (usize, usize) {
        let mut digits = vec![0; self.n_agents];
        let mut d = d;
        for slot in digits.iter_mut().rev() {
            *slot = d % self.n_actions;
            d /= self.n_actions;
        }
        let own = digits[self.agent];
        let coalition = (0..self.n_agents).filter(|&b| b != self.agent).fold(0, |acc, b| acc * self.n_actions + digits[b]);
        (own, coalition)
    }

    /// Coalition action as per-agent actions (agents other than `self.agent`).
    pub fn coalition_actions(&self, c: usize) -> Vec<(usize, usize)> {
        let d = self.join(0, c);
        let mut digits = vec![0; self.n_agents];
        let mut d = d;
        for slot in digits.iter_mut().rev() {
            *slot = d % self.n_actions;
            d /= self.n_actions;
        }
        (0..self.n_agents).filter(|&b| b != self.agent).map(|b| (b, digits[b])).collect()
    }

    /// Intermediate vertex reached from state `s` under decision `d`.
    pub fn inter_for(&self, s: usize, d: Decision) -> usize {
        let (own, c) = self.split(d);
        match self.order {
            MoverOrder::MinFirst => self.inter_vertex(s, c),
            MoverOrder::MaxFirst => self.inter_vertex(s, own),
        }
    }

    pub fn first_mover(&self) -> Player {
        match self.order {
            MoverOrder::MinFirst => Player::Min,
            MoverOrder::MaxFirst => Player::Max,
        }
    }

    pub fn second_count(&self) -> usize {
        self.second_count
    }
}

pub fn coalition_game(g: &LexParityGame, agent: usize, order: MoverOrder) -> CoalitionGame {
    let a = &g.arena;
    let n = a.num_states();
    let k = a.num_actions();
    let n_coal = k.pow(a.num_agents() as u32 - 1);
    let (first_count, second_count) = match order {
        MoverOrder::MinFirst => (n_coal, k),
        MoverOrder::MaxFirst => (k, n_coal),
    };
    let mut cg = CoalitionGame {
        tb: TurnBasedGame { owner: vec![], succ: vec![], weight: vec![], priority: vec![] },
        agent,
        order,
        n_states: n,
        n_actions: k,
        n_agents: a.num_agents(),
        n_coalition: n_coal,
        first_count,
        second_count,
        inter: Vec::with_capacity(n * first_count),
        parts: Vec::new(),
    };
    let first = cg.first_mover();
    let mut owner = vec![first; n];
    let mut succ: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut seen: HashMap<Vec<usize>, usize> = HashMap::new();
    for s in 0..n {
        seen.clear();
        for x in 0..first_count {
            let mut out: Vec<usize> = (0..second_count)
                .map(|y| {
                    let d = match order {
                        MoverOrder::MinFirst => cg.join(y, x),
                        MoverOrder::MaxFirst => cg.join(x, y),
                    };
                    a.next(s, d)
                })
                .collect();
            out.sort_unstable();
            out.dedup();
            let v = *seen.entry(out.clone()).or_insert_with(|| {
                owner.push(first.opponent());
                succ.push(out);
                cg.parts.push((s, x));
                succ.len() - 1
            });
            cg.inter.push(u32::try_from(v).expect("coalition game too large"));
            if !succ[s].contains(&v) {
                succ[s].push(v);
            }
        }
    }
    let total = succ.len();
    let origin: Vec<usize> = (0..total).map(|v| cg.origin(v)).collect();
    cg.tb = TurnBasedGame {
        owner,
        succ,
        weight: origin.iter().map(|&s| g.weights[agent][s]).collect(),
        priority: origin.iter().map(|&s| g.priorities[agent][s]).collect(),
    };
    cg
}

/// Two-agent game as a turn-based game: agent 0 maximizes, agent 1 minimizes.
pub fn to_turn_based(g: &LexParityGame, order: MoverOrder) -> Result<TurnBasedGame> {
    if g.arena.num_agents() != 2 {
        return Err(Error::BadInput(format!("turn-based conversion needs exactly two agents, got {}", g.arena.num_agents())));
    }
    Ok(coalition_game(g, 0, order).tb)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arena::Arena;

    fn pennies() -> LexParityGame {
        // states: start, same, diff; agent a wants same, b wants diff
        let succ0 = vec![1, 2, 2, 1];
        let arena = Arena {
            agents: vec!["a".into(), "b".into()],
            actions: vec!["h".into(), "t".into()],
            states: vec!["start".into(), "same".into(), "diff".into()],
            initial: 0,
            succ: vec![succ0.clone(), succ0.clone(), succ0],
        };
        LexParityGame { arena, weights: vec![vec![0; 3]; 2], priorities: vec![vec![1, 2, 1], vec![1, 1, 2]] }
    }

    #[test]
    fn sizes_and_codes() {
        let g = pennies();
        let cg = coalition_game(&g, 1, MoverOrder::MinFirst);
        assert_eq!(cg.tb.len(), 3 + 3);
        for d in 0..4 {
            let (own, c) = cg.split(d);
            assert_eq!(cg.join(own, c), d);
            assert_eq!(g.arena.action_of(d, 1), own);
        }
        let tb = to_turn_based(&g, MoverOrder::MaxFirst).unwrap();
        assert_eq!(tb.owner[0], Player::Max);
        // either coin leaves the opponent both outcomes, so one vertex serves
        assert_eq!(tb.succ[0].len(), 1);
        assert_eq!(cg.inter_vertex(0, 0), cg.inter_vertex(0, 1));
        assert_eq!(cg.inter_parts(cg.inter_vertex(0, 1)), (0, 0));
    }
}
