use std::collections::{HashMap, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use super::{attractor, mp_solve, mpp_solve, ExtValue, Player, TbStrategy, TurnBasedGame};
use crate::graph;
use crate::rational::Q;

/// Finite-memory strategy for `Max` securing parity and a mean payoff of at
/// least a threshold, built by recursion on the top priority.
#[derive(Debug, Clone)]
pub enum SynthStrategy {
    Empty,
    /// Top priority even: alternate `bound` steps of a mean-payoff optimal
    /// strategy with a forced visit to the top priority; inside the region
    /// where the top cannot be forced, defer to the substrategy.
    Even {
        top: Vec<bool>,
        sub_region: Vec<bool>,
        attract: Vec<usize>,
        mean: Vec<usize>,
        sub: Box<SynthStrategy>,
        bound: usize,
    },
    /// Top priority odd: the region splits into pieces, each attracting to a
    /// core avoiding the top priority; the piece index never increases.
    Odd {
        piece: Vec<usize>,
        core: Vec<bool>,
        attract: Vec<usize>,
        parts: Vec<SynthStrategy>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SynthMem {
    None,
    Count(usize),
    Attract,
    Sub(Box<SynthMem>),
    Piece(usize, Option<Box<SynthMem>>),
}

impl SynthStrategy {
    fn enter_even(&self, u: usize) -> SynthMem {
        let SynthStrategy::Even { top, sub_region, sub, .. } = self else { unreachable!() };
        if sub_region[u] {
            SynthMem::Sub(Box::new(sub.start(u)))
        } else if top[u] {
            SynthMem::Count(0)
        } else {
            SynthMem::Attract
        }
    }
}

impl TbStrategy for SynthStrategy {
    type Mem = SynthMem;

    fn start(&self, v: usize) -> SynthMem {
        match self {
            SynthStrategy::Empty => SynthMem::None,
            SynthStrategy::Even { .. } => self.enter_even(v),
            SynthStrategy::Odd { piece, core, parts, .. } => {
                let i = piece[v];
                SynthMem::Piece(i, core[v].then(|| Box::new(parts[i].start(v))))
            }
        }
    }

    fn update(&self, m: &SynthMem, u: usize) -> SynthMem {
        match (self, m) {
            (SynthStrategy::Even { bound, .. }, SynthMem::Count(k)) if k + 1 < *bound => SynthMem::Count(k + 1),
            (SynthStrategy::Even { sub_region, sub, .. }, SynthMem::Sub(inner)) if sub_region[u] => {
                SynthMem::Sub(Box::new(sub.update(inner, u)))
            }
            (SynthStrategy::Even { .. }, _) => self.enter_even(u),
            (SynthStrategy::Odd { piece, core, parts, .. }, SynthMem::Piece(i, inner)) if piece[u] == *i => {
                if !core[u] {
                    SynthMem::Piece(*i, None)
                } else {
                    let next = match inner {
                        Some(x) => parts[*i].update(x, u),
                        None => parts[*i].start(u),
                    };
                    SynthMem::Piece(*i, Some(Box::new(next)))
                }
            }
            _ => self.start(u),
        }
    }

    fn choose(&self, m: &SynthMem, v: usize) -> usize {
        match (self, m) {
            (SynthStrategy::Even { mean, .. }, SynthMem::Count(_)) => mean[v],
            (SynthStrategy::Even { attract, .. }, SynthMem::Attract) => attract[v],
            (SynthStrategy::Even { sub, .. }, SynthMem::Sub(inner)) => sub.choose(inner, v),
            (SynthStrategy::Odd { parts, .. }, SynthMem::Piece(i, Some(inner))) => parts[*i].choose(inner, v),
            (SynthStrategy::Odd { attract, .. }, SynthMem::Piece(_, None)) => attract[v],
            _ => panic!("strategy memory {m:?} does not match the strategy shape at vertex {v}"),
        }
    }
}

/// Product of a `Max` strategy with the free moves of `Min` inside `mask`.
pub struct StrategyProduct<M> {
    pub nodes: Vec<(usize, M)>,
    pub adj: Vec<Vec<usize>>,
}

pub fn strategy_product<S: TbStrategy>(g: &TurnBasedGame, mask: &[bool], s: &S) -> StrategyProduct<S::Mem> {
    let mut index: HashMap<(usize, S::Mem), usize> = HashMap::new();
    let mut nodes = Vec::new();
    let mut queue = VecDeque::new();
    for v in (0..g.len()).filter(|&v| mask[v]) {
        let key = (v, s.start(v));
        if !index.contains_key(&key) {
            index.insert(key.clone(), nodes.len());
            queue.push_back(nodes.len());
            nodes.push(key);
        }
    }
    let mut adj: Vec<Vec<usize>> = Vec::new();
    while let Some(i) = queue.pop_front() {
        let (v, m) = nodes[i].clone();
        let targets: Vec<usize> = match g.owner[v] {
            Player::Max => vec![s.choose(&m, v)],
            Player::Min => g.succ[v].iter().copied().filter(|&u| mask[u]).collect(),
        };
        let mut out = Vec::with_capacity(targets.len());
        for u in targets {
            assert!(mask[u], "strategy leaves its region at vertex {v}");
            let key = (u, s.update(&m, u));
            let j = match index.get(&key) {
                Some(&j) => j,
                None => {
                    let j = nodes.len();
                    index.insert(key.clone(), j);
                    queue.push_back(j);
                    nodes.push(key);
                    j
                }
            };
            out.push(j);
        }
        if adj.len() <= i {
            adj.resize(i + 1, Vec::new());
        }
        adj[i] = out;
    }
    adj.resize(nodes.len(), Vec::new());
    StrategyProduct { nodes, adj }
}

/// Every cycle of the product has an even top priority and mean at least `tau`.
pub fn product_secures<M>(g: &TurnBasedGame, p: &StrategyProduct<M>, tau: &Q) -> bool {
    let n = p.nodes.len();
    let prio: Vec<u32> = p.nodes.iter().map(|(v, _)| g.priority[*v]).collect();
    let weight: Vec<i64> = p.nodes.iter().map(|(v, _)| g.weight[*v]).collect();
    let mut odd: Vec<u32> = prio.iter().copied().filter(|x| x % 2 == 1).collect();
    odd.sort_unstable();
    odd.dedup();
    for &o in &odd {
        let mask: Vec<bool> = prio.iter().map(|&x| x <= o).collect();
        for comp in graph::sccs(&p.adj, Some(&mask)) {
            if comp.iter().any(|&x| prio[x] == o) && graph::nontrivial(&p.adj, &comp) {
                return false;
            }
        }
    }
    let all = vec![true; n];
    graph::sccs(&p.adj, Some(&all))
        .into_iter()
        .filter(|c| graph::nontrivial(&p.adj, c))
        .all(|c| graph::karp_min_mean(&p.adj, &weight, &c).is_none_or(|m| &m >= tau))
}

/// Largest total of `tau - weight` along any path of the product; `None` when
/// some cycle has mean below `tau`.
fn max_deficit<M>(g: &TurnBasedGame, p: &StrategyProduct<M>, tau: &Q) -> Option<Q> {
    let den = tau.denom().clone();
    let num = tau.numer().clone();
    let cost: Vec<BigInt> = p.nodes.iter().map(|(v, _)| &num - &den * BigInt::from(g.weight[*v])).collect();
    let n = p.nodes.len();
    // longest path ending at each node, paths of length at most n+1
    let mut best: Vec<BigInt> = cost.iter().map(|c| c.clone().max(BigInt::zero())).collect();
    for round in 0..=n {
        let mut changed = false;
        for i in 0..n {
            for &j in &p.adj[i] {
                let cand = &best[i] + &cost[j];
                if cand > best[j] {
                    best[j] = cand;
                    changed = true;
                }
            }
        }
        if !changed {
            let top = best.into_iter().max().unwrap_or_default();
            return Some(Q::new(top, den));
        }
        if round == n {
            return None;
        }
    }
    None
}

fn ceil_div(x: &Q, y: &Q) -> usize {
    let r = x / y;
    let (q, rem) = r.numer().div_rem(r.denom());
    let c = if rem.is_positive() { q + 1 } else { q };
    c.to_usize().unwrap_or(usize::MAX / 4)
}

fn values_at_least(values: &[ExtValue], mask: &[bool], tau: &Q) -> Vec<bool> {
    let t = ExtValue::Fin(tau.clone());
    (0..mask.len()).map(|v| mask[v] && values[v] >= t).collect()
}

/// `Max` strategy on the subgame `mask` securing parity and mean payoff at
/// least `tau` from every vertex, given that every vertex of `mask` has value
/// at least `tau + delta` in the subgame.
pub fn synth(g: &TurnBasedGame, mask: &[bool], tau: &Q, delta: &Q) -> SynthStrategy {
    let n = g.len();
    let Some(d) = (0..n).filter(|&v| mask[v]).map(|v| g.priority[v]).max() else {
        return SynthStrategy::Empty;
    };
    let top: Vec<bool> = (0..n).map(|v| mask[v] && g.priority[v] == d).collect();
    let two = Q::from_integer(2.into());
    let half = delta / &two;
    if d % 2 == 0 {
        let (attr, attract) = attractor(g, mask, &top, Player::Max);
        let sub_region: Vec<bool> = (0..n).map(|v| mask[v] && !attr[v]).collect();
        let sub = if sub_region.iter().any(|&b| b) { synth(g, &sub_region, &(tau + &half), &half) } else { SynthStrategy::Empty };
        let mean = mp_solve(g, mask).max_strategy;
        let mut strat =
            SynthStrategy::Even { top, sub_region: sub_region.clone(), attract, mean: mean.clone(), sub: Box::new(sub), bound: 1 };
        let deficit =
            |s: &dyn Fn() -> Option<Q>| s().unwrap_or_else(|| Q::from_integer(BigInt::from(g.len() as i64 * (2 * g.max_abs_weight() + 1))));
        let mean_prod = strategy_product(g, mask, &super::Positional(mean));
        let c_mean = deficit(&|| max_deficit(g, &mean_prod, &(tau + delta)));
        let c_sub = match &strat {
            SynthStrategy::Even { sub, .. } if sub_region.iter().any(|&b| b) => {
                let p = strategy_product(g, &sub_region, sub.as_ref());
                deficit(&|| max_deficit(g, &p, tau))
            }
            _ => Q::zero(),
        };
        let w_min = (0..n).filter(|&v| mask[v]).map(|v| g.weight[v]).min().unwrap();
        let c_att = (tau - Q::from_integer(w_min.into())).max(Q::zero()) * Q::from_integer(BigInt::from(n as i64));
        let mut bound = ceil_div(&(c_mean + c_sub + c_att), delta) + 1;
        loop {
            if let SynthStrategy::Even { bound: b, .. } = &mut strat {
                *b = bound;
            }
            if product_secures(g, &strategy_product(g, mask, &strat), tau) {
                return strat;
            }
            log::debug!("synthesized strategy with phase bound {bound} failed verification, doubling");
            bound *= 2;
            if bound > 1 << 24 {
                panic!("phase bound diverged; precondition on values violated");
            }
        }
    } else {
        let mut piece = vec![usize::MAX; n];
        let mut core = vec![false; n];
        let mut attract = vec![usize::MAX; n];
        let mut parts = Vec::new();
        let mut rem = mask.to_vec();
        let lower = tau + &half;
        while rem.iter().any(|&b| b) {
            let rtop: Vec<bool> = (0..n).map(|v| rem[v] && top[v]).collect();
            let (a_min, _) = attractor(g, &rem, &rtop, Player::Min);
            let inner: Vec<bool> = (0..n).map(|v| rem[v] && !a_min[v]).collect();
            let vals = mpp_solve(g, &inner).value;
            let w = values_at_least(&vals, &inner, &lower);
            assert!(w.iter().any(|&b| b), "no piece with value above the threshold; precondition violated");
            let (b, att) = attractor(g, &rem, &w, Player::Max);
            let i = parts.len();
            for v in 0..n {
                if b[v] {
                    piece[v] = i;
                    core[v] = w[v];
                    attract[v] = att[v];
                    rem[v] = false;
                }
            }
            parts.push(synth(g, &w, tau, &half));
        }
        SynthStrategy::Odd { piece, core, attract, parts }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, q};

    #[test]
    fn alternation_needs_long_phases() {
        // s0 (w 10, p 1) <-> s1 (w 0, p 2); s0 loops
        let g = TurnBasedGame {
            owner: vec![Player::Max, Player::Max],
            succ: vec![vec![0, 1], vec![0]],
            weight: vec![10, 0],
            priority: vec![1, 2],
        };
        let tau = q(10) - frac(1, 10);
        let s = synth(&g, &g.full_mask(), &tau, &frac(1, 20));
        let p = strategy_product(&g, &g.full_mask(), &s);
        assert!(product_secures(&g, &p, &tau));
        assert!(p.nodes.len() > 50);
    }

    #[test]
    fn odd_top_is_avoided() {
        // Max at v0 may go to v1 (w 0, p 3, loop back) or v2 (w 1, p 0 loop)
        let g = TurnBasedGame {
            owner: vec![Player::Max, Player::Max, Player::Max],
            succ: vec![vec![1, 2], vec![0], vec![2]],
            weight: vec![0, 0, 1],
            priority: vec![0, 3, 0],
        };
        let s = synth(&g, &g.full_mask(), &frac(1, 2), &frac(1, 4));
        let p = strategy_product(&g, &g.full_mask(), &s);
        assert!(product_secures(&g, &p, &frac(1, 2)));
    }
}
