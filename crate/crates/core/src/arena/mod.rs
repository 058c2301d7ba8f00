//! Concurrent arenas, the two game flavours, lexicographic payoffs and lassos.

mod io;
mod product;
mod push;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

pub use io::{load_game, parse_game, validate_game, write_parity_game, Game, GameFile, LassoFile, StateEntry, StepEntry, TransitionEntry};
pub use product::{observed_product, parity_product, parity_product_with_budget, Product};
pub use push::push_weights_to_states;

use crate::error::{Error, Result};
use crate::graph::cycle_mean;
use crate::ltl::{eval_masks, Ltl};
use crate::rational::{fmt_q, Q};

/// Joint actions are encoded as integers in mixed radix, agent 0 most significant.
pub type Decision = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arena {
    pub agents: Vec<String>,
    pub actions: Vec<String>,
    pub states: Vec<String>,
    pub initial: usize,
    /// `succ[s][d]`
    pub succ: Vec<Vec<usize>>,
}

impl Arena {
    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn num_agents(&self) -> usize {
        self.agents.len()
    }

    pub fn num_actions(&self) -> usize {
        self.actions.len()
    }

    pub fn num_decisions(&self) -> usize {
        self.num_actions().pow(self.num_agents() as u32)
    }

    pub fn next(&self, s: usize, d: Decision) -> usize {
        self.succ[s][d]
    }

    pub fn encode(&self, acts: &[usize]) -> Decision {
        acts.iter().fold(0, |acc, &a| acc * self.num_actions() + a)
    }

    pub fn decode(&self, d: Decision) -> Vec<usize> {
        let k = self.num_actions();
        let mut out = vec![0; self.num_agents()];
        let mut d = d;
        for slot in out.iter_mut().rev() {
            *slot = d % k;
            d /= k;
        }
        out
    }

    pub fn action_of(&self, d: Decision, agent: usize) -> usize {
        let k = self.num_actions();
        d / k.pow((self.num_agents() - 1 - agent) as u32) % k
    }

    /// `d` with agent's action replaced.
    pub fn with_action(&self, d: Decision, agent: usize, act: usize) -> Decision {
        let k = self.num_actions();
        let w = k.pow((self.num_agents() - 1 - agent) as u32);
        d - self.action_of(d, agent) * w + act * w
    }

    /// All decisions agreeing with `d` except possibly at `agent` (including `d`).
    pub fn deviations(&self, d: Decision, agent: usize) -> impl Iterator<Item = Decision> + '_ {
        (0..self.num_actions()).map(move |a| self.with_action(d, agent, a))
    }

    /// The single agent whose action differs, if exactly one does.
    pub fn sole_deviator(&self, expected: Decision, actual: Decision) -> Option<usize> {
        let mut who = None;
        for a in 0..self.num_agents() {
            if self.action_of(expected, a) != self.action_of(actual, a) {
                if who.is_some() {
                    return None;
                }
                who = Some(a);
            }
        }
        who
    }

    pub fn decision_map(&self, d: Decision) -> BTreeMap<String, String> {
        self.decode(d).into_iter().enumerate().map(|(i, a)| (self.agents[i].clone(), self.actions[a].clone())).collect()
    }

    pub fn decision_from_map(&self, m: &BTreeMap<String, String>) -> Result<Decision> {
        let mut acts = Vec::with_capacity(self.num_agents());
        for ag in &self.agents {
            let a = m.get(ag).ok_or_else(|| Error::Invalid(format!("decision {m:?} misses agent {ag}")))?;
            acts.push(self.action_index(a)?);
        }
        if m.len() != self.num_agents() {
            return Err(Error::Invalid(format!("decision {m:?} names unknown agents")));
        }
        Ok(self.encode(&acts))
    }

    pub fn decision_string(&self, d: Decision) -> String {
        let acts = self.decode(d);
        let parts: Vec<String> = acts.iter().map(|&a| self.actions[a].clone()).collect();
        format!("({})", parts.join(","))
    }

    pub fn state_index(&self, name: &str) -> Result<usize> {
        self.states.iter().position(|s| s == name).ok_or_else(|| Error::Invalid(format!("unknown state {name}")))
    }

    pub fn action_index(&self, name: &str) -> Result<usize> {
        self.actions.iter().position(|s| s == name).ok_or_else(|| Error::Invalid(format!("unknown action {name}")))
    }

    pub fn agent_index(&self, name: &str) -> Result<usize> {
        self.agents.iter().position(|s| s == name).ok_or_else(|| Error::Invalid(format!("unknown agent {name}")))
    }

    /// Successor lists without decision labels, deduplicated.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        self.succ
            .iter()
            .map(|row| {
                let mut v = row.clone();
                v.sort_unstable();
                v.dedup();
                v
            })
            .collect()
    }
}

/// Payoff `(sat, mp)`. The derived order is exactly the lexicographic order:
/// `false < true` on the flag, then the rational.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Payoff {
    pub sat: bool,
    pub mp: Q,
}

impl Payoff {
    pub fn new(sat: bool, mp: Q) -> Payoff {
        Payoff { sat, mp }
    }

    pub fn plus(&self, eps: &Q) -> Payoff {
        Payoff { sat: self.sat, mp: &self.mp + eps }
    }

    pub fn minus(&self, eps: &Q) -> Payoff {
        Payoff { sat: self.sat, mp: &self.mp - eps }
    }

    pub fn lex_cmp(&self, other: &Payoff) -> Ordering {
        self.cmp(other)
    }
}

impl fmt::Display for Payoff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "sat={} mp={}", if self.sat { "T" } else { "F" }, fmt_q(&self.mp))
    }
}

/// Ultimately periodic play: `prefix` then `cycle` forever, as (state, decision) pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lasso {
    pub prefix: Vec<(usize, Decision)>,
    pub cycle: Vec<(usize, Decision)>,
}

impl Lasso {
    pub fn len(&self) -> usize {
        self.prefix.len() + self.cycle.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycle.is_empty()
    }

    pub fn steps(&self) -> impl Iterator<Item = &(usize, Decision)> {
        self.prefix.iter().chain(self.cycle.iter())
    }

    pub fn start(&self) -> usize {
        self.steps().next().expect("empty lasso").0
    }

    pub fn cycle_states(&self) -> Vec<usize> {
        self.cycle.iter().map(|x| x.0).collect()
    }

    /// Step `i` of the infinite play.
    pub fn at(&self, i: usize) -> (usize, Decision) {
        if i < self.prefix.len() {
            self.prefix[i]
        } else {
            self.cycle[(i - self.prefix.len()) % self.cycle.len()]
        }
    }

    pub fn check(&self, arena: &Arena, start: usize) -> Result<()> {
        if self.cycle.is_empty() {
            return Err(Error::BadInput("lasso cycle is empty".into()));
        }
        if self.start() != start {
            return Err(Error::BadInput(format!("lasso starts at {} instead of {}", arena.states[self.start()], arena.states[start])));
        }
        let steps: Vec<_> = self.steps().copied().collect();
        for (i, &(s, d)) in steps.iter().enumerate() {
            if s >= arena.num_states() || d >= arena.num_decisions() {
                return Err(Error::BadInput(format!("lasso step {i} out of range")));
            }
            let want = if i + 1 < steps.len() { steps[i + 1].0 } else { self.cycle[0].0 };
            if arena.next(s, d) != want {
                return Err(Error::BadInput(format!(
                    "inconsistent lasso at step {i}: {} under {} does not lead to {}",
                    arena.states[s],
                    arena.decision_string(d),
                    arena.states[want]
                )));
            }
        }
        Ok(())
    }

    /// Canonical form: shortest rotation-free representation.
    pub fn normalized(&self) -> Lasso {
        let mut prefix = self.prefix.clone();
        let mut cycle = self.cycle.clone();
        // smallest period of the cycle
        let n = cycle.len();
        for p in 1..=n {
            if n.is_multiple_of(p) && (0..n).all(|i| cycle[i] == cycle[i % p]) {
                cycle.truncate(p);
                break;
            }
        }
        // fold prefix tail into the cycle
        while let Some(&last) = prefix.last() {
            if last == *cycle.last().unwrap() {
                prefix.pop();
                cycle.rotate_right(1);
            } else {
                break;
            }
        }
        Lasso { prefix, cycle }
    }
}

#[derive(Debug, Clone)]
pub struct LexLtlGame {
    pub arena: Arena,
    /// `weights[agent][state]`
    pub weights: Vec<Vec<i64>>,
    pub atoms: Vec<String>,
    /// Bitmask over `atoms` per state.
    pub labels: Vec<u64>,
    pub goals: Vec<Ltl>,
}

#[derive(Debug, Clone)]
pub struct LexParityGame {
    pub arena: Arena,
    /// `weights[agent][state]`
    pub weights: Vec<Vec<i64>>,
    /// `priorities[agent][state]`
    pub priorities: Vec<Vec<u32>>,
}

fn mean_on_cycle(weights: &[i64], l: &Lasso) -> Q {
    cycle_mean(l.cycle.iter().map(|&(s, _)| weights[s]))
}

impl LexParityGame {
    pub fn lasso_payoff(&self, l: &Lasso, a: usize) -> Payoff {
        let top = l.cycle.iter().map(|&(s, _)| self.priorities[a][s]).max().unwrap();
        Payoff::new(top % 2 == 0, mean_on_cycle(&self.weights[a], l))
    }

    pub fn payoffs(&self, l: &Lasso) -> Vec<Payoff> {
        (0..self.arena.num_agents()).map(|a| self.lasso_payoff(l, a)).collect()
    }

    pub fn min_weight(&self, a: usize) -> i64 {
        self.weights[a].iter().copied().min().unwrap_or(0)
    }

    pub fn max_abs_weight(&self) -> i64 {
        self.weights.iter().flatten().map(|w| w.abs()).max().unwrap_or(0)
    }
}

impl LexLtlGame {
    pub fn label_names(&self, s: usize) -> Vec<String> {
        self.atoms.iter().enumerate().filter(|(k, _)| self.labels[s] >> k & 1 == 1).map(|(_, a)| a.clone()).collect()
    }

    pub fn satisfies(&self, f: &Ltl, l: &Lasso) -> bool {
        let pre: Vec<u64> = l.prefix.iter().map(|&(s, _)| self.labels[s]).collect();
        let cyc: Vec<u64> = l.cycle.iter().map(|&(s, _)| self.labels[s]).collect();
        eval_masks(f, &self.atoms, &pre, &cyc)
    }

    pub fn lasso_payoff(&self, l: &Lasso, a: usize) -> Payoff {
        Payoff::new(self.satisfies(&self.goals[a], l), mean_on_cycle(&self.weights[a], l))
    }

    pub fn payoffs(&self, l: &Lasso) -> Vec<Payoff> {
        (0..self.arena.num_agents()).map(|a| self.lasso_payoff(l, a)).collect()
    }
}

/// Running average of the first `n` weights of a play (n >= 1).
pub fn prefix_average(weights: &[i64], l: &Lasso, n: usize) -> Q {
    let s: i64 = (0..n).map(|i| weights[l.at(i).0]).sum();
    if s.is_zero() {
        return Q::zero();
    }
    Q::new(s.into(), (n as i64).into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, q};

    pub(crate) fn two_state() -> LexParityGame {
        // one agent, actions stay/go; states s0 (w 0, p 2), s1 (w 1, p 2)
        let arena = Arena {
            agents: vec!["a".into()],
            actions: vec!["stay".into(), "go".into()],
            states: vec!["s0".into(), "s1".into()],
            initial: 0,
            succ: vec![vec![0, 1], vec![1, 0]],
        };
        LexParityGame { arena, weights: vec![vec![0, 1]], priorities: vec![vec![2, 2]] }
    }

    #[test]
    fn decision_codes_roundtrip() {
        let arena = Arena {
            agents: vec!["x".into(), "y".into(), "z".into()],
            actions: vec!["a".into(), "b".into(), "c".into()],
            states: vec!["s".into()],
            initial: 0,
            succ: vec![vec![0; 27]],
        };
        for d in 0..27 {
            assert_eq!(arena.encode(&arena.decode(d)), d);
            for ag in 0..3 {
                assert_eq!(arena.action_of(d, ag), arena.decode(d)[ag]);
                for act in 0..3 {
                    let e = arena.with_action(d, ag, act);
                    assert_eq!(arena.action_of(e, ag), act);
                    if e != d {
                        assert_eq!(arena.sole_deviator(d, e), Some(ag));
                    }
                }
            }
        }
        assert_eq!(arena.decode(5), vec![0, 1, 2]);
        assert_eq!(arena.sole_deviator(0, 4), None);
    }

    #[test]
    fn payoffs_on_lassos() {
        let g = two_state();
        let l = Lasso { prefix: vec![], cycle: vec![(0, 1), (1, 1)] };
        l.check(&g.arena, 0).unwrap();
        assert_eq!(g.lasso_payoff(&l, 0), Payoff::new(true, frac(1, 2)));
        let bad = Lasso { prefix: vec![], cycle: vec![(0, 0), (1, 1)] };
        assert!(bad.check(&g.arena, 0).is_err());
    }

    #[test]
    fn running_average_tends_to_cycle_mean() {
        let g = two_state();
        let l = Lasso { prefix: vec![(0, 1)], cycle: vec![(1, 0), (1, 1), (0, 1)] };
        let mean = g.lasso_payoff(&l, 0).mp;
        for n in 1..=10 * l.len() {
            let avg = prefix_average(&g.weights[0], &l, n);
            let gap = if avg > mean { &avg - &mean } else { &mean - &avg };
            // bounded by (prefix + cycle) * W / n
            assert!(gap <= frac(2 * l.len() as i64, n as i64), "n={n}");
        }
    }

    #[test]
    fn normalization_folds_prefix() {
        let l = Lasso { prefix: vec![(0, 1), (1, 1)], cycle: vec![(0, 1), (1, 1), (0, 1), (1, 1)] };
        let n = l.normalized();
        assert!(n.prefix.is_empty());
        assert_eq!(n.cycle.len(), 2);
    }

    #[test]
    fn payoff_order() {
        assert!(Payoff::new(false, q(100)) < Payoff::new(true, q(-100)));
        assert!(Payoff::new(true, q(1)) < Payoff::new(true, q(2)));
        assert_eq!(Payoff::new(true, q(1)).plus(&frac(1, 2)), Payoff::new(true, frac(3, 2)));
        assert_eq!(Payoff::new(true, q(5)).to_string(), "sat=T mp=5/1");
    }

    use proptest::prelude::*;

    fn arb_payoff() -> impl Strategy<Value = Payoff> {
        (any::<bool>(), -20i64..20, 1i64..5).prop_map(|(s, n, d)| Payoff::new(s, frac(n, d)))
    }

    proptest! {
        #[test]
        fn lex_order_is_total(a in arb_payoff(), b in arb_payoff(), c in arb_payoff()) {
            let lt = |x: &Payoff, y: &Payoff| (!x.sat && y.sat) || (x.sat == y.sat && x.mp < y.mp);
            prop_assert_eq!(a < b, lt(&a, &b));
            let count = [lt(&a, &b), lt(&b, &a), a == b].iter().filter(|x| **x).count();
            prop_assert_eq!(count, 1);
            if lt(&a, &b) && lt(&b, &c) {
                prop_assert!(lt(&a, &c));
            }
        }
    }
}
