use std::collections::HashMap;

use crate::arena::{parity_product_with_budget, LexLtlGame, LexParityGame, Payoff};
use crate::error::{Error, Result};
use crate::graph;
use crate::rational::Q;
use crate::zerosum::{simulate_profile, StrategyMachine};

/// Supremum of lexicographic payoffs over all infinite paths from each vertex
/// of a one-player graph. Within a component whose top priority is even, rare
/// visits to the top priority let the path approach the component's best
/// cycle mean, so the supremum is that mean and is attained by some play.
pub fn one_player_sup(adj: &[Vec<usize>], weight: &[i64], prio: &[u32]) -> Vec<Payoff> {
    let n = adj.len();
    let mut own: Vec<Option<Payoff>> = vec![None; n];
    let raise = |own: &mut Vec<Option<Payoff>>, comp: &[usize], p: Payoff| {
        for &v in comp {
            if own[v].as_ref().is_none_or(|x| p > *x) {
                own[v] = Some(p.clone());
            }
        }
    };
    for comp in graph::sccs(adj, None) {
        if let Some(m) = graph::karp_max_mean(adj, weight, &comp) {
            raise(&mut own, &comp, Payoff::new(false, m));
        }
    }
    let mut evens: Vec<u32> = prio.iter().copied().filter(|p| p % 2 == 0).collect();
    evens.sort_unstable();
    evens.dedup();
    for d in evens {
        let mask: Vec<bool> = prio.iter().map(|&p| p <= d).collect();
        for comp in graph::sccs(adj, Some(&mask)) {
            if !comp.iter().any(|&v| prio[v] == d) {
                continue;
            }
            // karp ignores edges leaving the component, so the mask is respected
            if let Some(m) = graph::karp_max_mean(adj, weight, &comp) {
                raise(&mut own, &comp, Payoff::new(true, m));
            }
        }
    }
    // propagate along the condensation, sinks first
    let comps = graph::sccs(adj, None);
    let mut comp_of = vec![0; n];
    for (i, c) in comps.iter().enumerate() {
        for &v in c {
            comp_of[v] = i;
        }
    }
    let mut best: Vec<Option<Payoff>> = vec![None; n];
    for (i, comp) in comps.iter().enumerate() {
        let mut b: Option<Payoff> = None;
        for &v in comp {
            let cands = own[v].iter().chain(adj[v].iter().filter(|&&u| comp_of[u] != i).filter_map(|&u| best[u].as_ref()));
            for c in cands {
                if b.as_ref().is_none_or(|x| c > x) {
                    b = Some(c.clone());
                }
            }
        }
        for &v in comp {
            best[v] = b.clone();
        }
    }
    best.into_iter().map(|b| b.expect("every vertex has an infinite path")).collect()
}

/// First departure from the play by one agent and the best payoff it can
/// reach afterwards.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Deviation {
    pub agent: usize,
    /// Position on the play (prefix then cycle).
    pub step: usize,
    pub action: usize,
    pub value: Payoff,
}

#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub payoffs: Vec<Payoff>,
    /// Best deviation per agent (`None` when the agent has a single action).
    pub best: Vec<Option<Deviation>>,
    /// Agents with a deviation reaching at least `pay + eps`.
    pub violations: Vec<Deviation>,
}

impl VerifyReport {
    pub fn accepted(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Exact check of the strict epsilon condition: for each agent, the other
/// machines are composed with the arena and the agent's best payoff over all
/// (possibly infinite-memory) deviations is computed in that one-player graph.
/// A deviation is any play leaving the profile's play, judged at its first
/// differing decision.
pub fn verify_profile(g: &LexParityGame, profile: &[StrategyMachine], eps: &Q) -> Result<VerifyReport> {
    let arena = &g.arena;
    let n_ag = arena.num_agents();
    let nd = arena.num_decisions();
    if profile.len() != n_ag {
        return Err(Error::BadInput(format!("profile has {} machines for {} agents", profile.len(), n_ag)));
    }
    for m in profile {
        if m.update.len() != m.num_states() || m.update.iter().any(|r| r.len() != nd) || m.initial >= m.num_states() {
            return Err(Error::BadInput("machine not total over decisions".into()));
        }
        if m.update.iter().flatten().any(|&j| j >= m.num_states()) || m.output.iter().any(|&x| x >= arena.num_actions()) {
            return Err(Error::BadInput("machine refers to unknown states or actions".into()));
        }
    }
    let play = simulate_profile(arena, profile, arena.initial);
    let payoffs = g.payoffs(&play);
    let mut best = Vec::with_capacity(n_ag);
    let mut violations = Vec::new();
    for a in 0..n_ag {
        let others: Vec<usize> = (0..n_ag).filter(|&b| b != a).collect();
        // one-player graph over (state, memories of the others)
        let mut index: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
        let mut nodes: Vec<(usize, Vec<usize>)> = Vec::new();
        let mut entries: Vec<(usize, usize, usize)> = Vec::new();
        let mut mem: Vec<usize> = profile.iter().map(|m| m.initial).collect();
        let mut s = arena.initial;
        for i in 0..play.len() {
            let acts: Vec<usize> = profile.iter().zip(&mem).map(|(m, &x)| m.output[x]).collect();
            for x in (0..arena.num_actions()).filter(|&x| x != acts[a]) {
                let mut dev = acts.clone();
                dev[a] = x;
                let d = arena.encode(&dev);
                let key = (arena.next(s, d), others.iter().map(|&b| profile[b].update[mem[b]][d]).collect());
                let j = *index.entry(key).or_insert_with_key(|k| {
                    nodes.push(k.clone());
                    nodes.len() - 1
                });
                entries.push((i, x, j));
            }
            let d = arena.encode(&acts);
            for (x, m) in mem.iter_mut().zip(profile) {
                *x = m.update[*x][d];
            }
            s = arena.next(s, d);
        }
        let mut adj: Vec<Vec<usize>> = Vec::new();
        let mut k = 0;
        while k < nodes.len() {
            let (s, ms) = nodes[k].clone();
            let mut out = Vec::new();
            for x in 0..arena.num_actions() {
                let mut acts = vec![0; n_ag];
                acts[a] = x;
                for (i, &b) in others.iter().enumerate() {
                    acts[b] = profile[b].output[ms[i]];
                }
                let d = arena.encode(&acts);
                let key = (arena.next(s, d), others.iter().enumerate().map(|(i, &b)| profile[b].update[ms[i]][d]).collect());
                let j = *index.entry(key).or_insert_with_key(|k| {
                    nodes.push(k.clone());
                    nodes.len() - 1
                });
                out.push(j);
            }
            out.sort_unstable();
            out.dedup();
            adj.push(out);
            k += 1;
        }
        let weight: Vec<i64> = nodes.iter().map(|(s, _)| g.weights[a][*s]).collect();
        let prio: Vec<u32> = nodes.iter().map(|(s, _)| g.priorities[a][*s]).collect();
        let sup = one_player_sup(&adj, &weight, &prio);
        let mut top: Option<Deviation> = None;
        for (step, action, j) in entries {
            if top.as_ref().is_none_or(|t| sup[j] > t.value) {
                top = Some(Deviation { agent: a, step, action, value: sup[j].clone() });
            }
        }
        if let Some(t) = &top {
            if t.value >= payoffs[a].plus(eps) {
                violations.push(t.clone());
            }
        }
        best.push(top);
    }
    Ok(VerifyReport { payoffs, best, violations })
}

/// Verification of a profile in an LTL game through its parity product.
pub fn verify_ltl_profile(g: &LexLtlGame, profile: &[StrategyMachine], eps: &Q, max_dpw_states: usize) -> Result<VerifyReport> {
    let prod = parity_product_with_budget(g, max_dpw_states)?;
    verify_profile(&prod.game, profile, eps)
}
