use super::{
    coalition_game, coalition_machines, mpp_solve, synth, zielonka, CoalitionGame, ExtValue, MoverOrder, MppSolution, SynthStrategy,
    TbStrategy, TurnBasedGame,
};
use crate::arena::{LexParityGame, Payoff};
use crate::rational::Q;
use crate::zerosum::machine::StrategyMachine;
use crate::zerosum::synth::SynthMem;

/// Punishing values `p_a(s)`, indexed `[agent][state]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PunishTable {
    pub values: Vec<Vec<Payoff>>,
}

impl PunishTable {
    pub fn get(&self, agent: usize, state: usize) -> &Payoff {
        &self.values[agent][state]
    }

    /// Distinct values of one agent, ascending.
    pub fn distinct(&self, agent: usize) -> Vec<Payoff> {
        let mut v = self.values[agent].clone();
        v.sort();
        v.dedup();
        v
    }
}

/// Zero-sum analysis of one agent against the coalition of the others.
#[derive(Debug, Clone)]
pub struct AgentAnalysis {
    pub cg: CoalitionGame,
    pub primal: MppSolution,
    /// Values of the dual game (plus infinity where the agent forces parity).
    pub dual: Vec<ExtValue>,
    pub lex: Vec<Payoff>,
}

impl AgentAnalysis {
    pub fn new(g: &LexParityGame, agent: usize) -> AgentAnalysis {
        let cg = coalition_game(g, agent, MoverOrder::MinFirst);
        let primal = mpp_solve(&cg.tb, &cg.tb.full_mask());
        let dual: Vec<ExtValue> = mpp_solve(&cg.tb.swap(), &cg.tb.full_mask()).value.into_iter().map(|v| -v).collect();
        let lex = primal
            .value
            .iter()
            .zip(&dual)
            .map(|(p, d)| match (p, d) {
                (ExtValue::Fin(x), _) => Payoff::new(true, x.clone()),
                (ExtValue::NegInf, ExtValue::Fin(y)) => Payoff::new(false, y.clone()),
                (p, d) => panic!("inconsistent primal/dual values {p} / {d}"),
            })
            .collect();
        AgentAnalysis { cg, primal, dual, lex }
    }

    pub fn value(&self, s: usize) -> &Payoff {
        &self.lex[self.cg.state_vertex(s)]
    }

    /// Coalition strategy holding the agent to at most `p_a(s) + eps` from
    /// `s`; with `parity_only` (allowed when `p_a(s)` is unsatisfied) it only
    /// breaks the agent's parity objective.
    pub fn punisher(&self, s: usize, eps: &Q, parity_only: bool) -> Punisher {
        let tb = &self.cg.tb;
        let v = self.cg.state_vertex(s);
        let p = &self.lex[v];
        if p.sat {
            return Punisher::Positional(self.primal.min_strategy.clone());
        }
        if parity_only {
            return Punisher::Positional(zielonka(tb, &tb.full_mask()).odd_strategy);
        }
        let swapped: TurnBasedGame = tb.swap();
        let half = eps / Q::from_integer(2.into());
        let tau = -(&p.mp) - eps;
        let floor = ExtValue::Fin(-(&p.mp) - &half);
        let region: Vec<bool> = self.dual.iter().map(|d| -d.clone() >= floor).collect();
        Punisher::Capped(synth(&swapped, &region, &tau, &half))
    }
}

/// Minimizer strategy in a coalition game.
#[derive(Debug, Clone)]
pub enum Punisher {
    Positional(Vec<usize>),
    /// Strategy of the swapped game, where the coalition is the maximizer.
    Capped(SynthStrategy),
}

impl TbStrategy for Punisher {
    type Mem = SynthMem;

    fn start(&self, v: usize) -> SynthMem {
        match self {
            Punisher::Positional(_) => SynthMem::None,
            Punisher::Capped(s) => s.start(v),
        }
    }

    fn update(&self, m: &SynthMem, u: usize) -> SynthMem {
        match self {
            Punisher::Positional(_) => SynthMem::None,
            Punisher::Capped(s) => s.update(m, u),
        }
    }

    fn choose(&self, m: &SynthMem, v: usize) -> usize {
        match self {
            Punisher::Positional(t) => t[v],
            Punisher::Capped(s) => s.choose(m, v),
        }
    }
}

pub fn punishing_table(g: &LexParityGame) -> PunishTable {
    let values = (0..g.arena.num_agents())
        .map(|a| {
            let an = AgentAnalysis::new(g, a);
            (0..g.arena.num_states()).map(|s| an.value(s).clone()).collect()
        })
        .collect();
    PunishTable { values }
}

/// Machines for every agent other than `a` that, started at `s`, keep agent
/// `a` at or below `p_a(s) + eps` whatever it does.
pub fn punish_strategy(g: &LexParityGame, a: usize, s: usize, eps: &Q) -> Vec<(usize, StrategyMachine)> {
    let an = AgentAnalysis::new(g, a);
    let p = an.punisher(s, eps, false);
    coalition_machines(&an.cg, &g.arena, &p, s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arena::Arena;
    use crate::rational::q;

    fn pennies() -> LexParityGame {
        // state 0 start; 1: coins matched (agent 0 happy), 2: mismatched
        let arena = Arena {
            agents: vec!["a".into(), "b".into()],
            actions: vec!["h".into(), "t".into()],
            states: vec!["start".into(), "same".into(), "diff".into()],
            initial: 0,
            succ: vec![vec![1, 2, 2, 1]; 3],
        };
        LexParityGame { arena, weights: vec![vec![0; 3]; 2], priorities: vec![vec![1, 2, 1], vec![1, 1, 2]] }
    }

    #[test]
    fn pennies_punishing_values() {
        // a deviator predicts the punishers' committed coin and answers it
        let t = punishing_table(&pennies());
        for a in 0..2 {
            for s in 0..3 {
                assert_eq!(t.get(a, s), &Payoff::new(true, q(0)));
            }
        }
    }

    #[test]
    fn single_action_opponent() {
        let arena = Arena {
            agents: vec!["a".into(), "b".into()],
            actions: vec!["x".into(), "y".into()],
            states: vec!["s0".into(), "s1".into()],
            initial: 0,
            // agent a picks the next state, b is irrelevant
            succ: vec![vec![0, 0, 1, 1]; 2],
        };
        let g = LexParityGame { arena, weights: vec![vec![1, 3], vec![0, 0]], priorities: vec![vec![0, 1], vec![0, 0]] };
        let t = punishing_table(&g);
        assert_eq!(t.get(0, 0), &Payoff::new(true, q(1)));
        assert_eq!(t.get(1, 0), &Payoff::new(true, q(0)));
    }
}
