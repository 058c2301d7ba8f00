use std::collections::{HashMap, VecDeque};
use std::fmt::Debug;
use std::hash::Hash;

use super::{CoalitionGame, MoverOrder, Player, TurnBasedGame};
use crate::arena::{Arena, Decision, Lasso};

/// Finite-memory strategy on a turn-based game. The memory passed to `choose`
/// and `update` already accounts for the current vertex.
pub trait TbStrategy {
    type Mem: Clone + Eq + Hash + Debug;
    fn start(&self, v: usize) -> Self::Mem;
    fn update(&self, m: &Self::Mem, u: usize) -> Self::Mem;
    fn choose(&self, m: &Self::Mem, v: usize) -> usize;
}

/// Memoryless strategy given as a successor table.
#[derive(Debug, Clone)]
pub struct Positional(pub Vec<usize>);

impl TbStrategy for Positional {
    type Mem = ();
    fn start(&self, _: usize) {}
    fn update(&self, _: &(), _: usize) {}
    fn choose(&self, _: &(), v: usize) -> usize {
        self.0[v]
    }
}

/// Moore machine over arena decisions: `update` reads the decision just
/// played.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrategyMachine {
    pub initial: usize,
    /// `update[m][d]`, total over all decisions of the arena.
    pub update: Vec<Vec<usize>>,
    /// Action played in memory state `m`.
    pub output: Vec<usize>,
    pub labels: Vec<String>,
}

impl StrategyMachine {
    pub fn num_states(&self) -> usize {
        self.output.len()
    }

    /// Equivalent machine with the fewest states: reachable part, states
    /// merged by partition refinement, numbered in breadth-first order from
    /// the initial state. A merged state keeps the label of its first member.
    pub fn minimized(&self) -> StrategyMachine {
        let n = self.num_states();
        let mut class: Vec<usize> = self.output.clone();
        let mut count = usize::MAX;
        loop {
            let mut ids: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
            let next: Vec<usize> = (0..n)
                .map(|m| {
                    let sig = (class[m], self.update[m].iter().map(|&t| class[t]).collect());
                    let k = ids.len();
                    *ids.entry(sig).or_insert(k)
                })
                .collect();
            class = next;
            if ids.len() == count {
                break;
            }
            count = ids.len();
        }
        let mut first = vec![usize::MAX; count];
        for m in (0..n).rev() {
            first[class[m]] = m;
        }
        let mut order = vec![usize::MAX; count];
        let mut members = vec![class[self.initial]];
        order[class[self.initial]] = 0;
        let mut i = 0;
        while i < members.len() {
            let rep = first[members[i]];
            for &t in &self.update[rep] {
                if order[class[t]] == usize::MAX {
                    order[class[t]] = members.len();
                    members.push(class[t]);
                }
            }
            i += 1;
        }
        let rows = members.iter().map(|&c| self.update[first[c]].iter().map(|&t| order[class[t]]).collect()).collect();
        StrategyMachine {
            initial: 0,
            update: rows,
            output: members.iter().map(|&c| self.output[first[c]]).collect(),
            labels: members.iter().map(|&c| self.labels[first[c]].clone()).collect(),
        }
    }

    /// Machine that always plays `action`.
    pub fn constant(action: usize, num_decisions: usize) -> StrategyMachine {
        StrategyMachine { initial: 0, update: vec![vec![0; num_decisions]], output: vec![action], labels: vec!["idle".into()] }
    }
}

/// Play of a profile (one machine per agent) from `start`, as a lasso.
pub fn simulate_profile(arena: &Arena, machines: &[StrategyMachine], start: usize) -> Lasso {
    let mut seen: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
    let mut steps: Vec<(usize, Decision)> = Vec::new();
    let mut s = start;
    let mut mem: Vec<usize> = machines.iter().map(|m| m.initial).collect();
    loop {
        if let Some(&i) = seen.get(&(s, mem.clone())) {
            let cycle = steps.split_off(i);
            return Lasso { prefix: steps, cycle };
        }
        seen.insert((s, mem.clone()), steps.len());
        let acts: Vec<usize> = machines.iter().zip(&mem).map(|(m, &x)| m.output[x]).collect();
        let d = arena.encode(&acts);
        steps.push((s, d));
        for (x, m) in mem.iter_mut().zip(machines) {
            *x = m.update[*x][d];
        }
        s = arena.next(s, d);
    }
}

/// Arena machines for the coalition agents realizing a minimizer strategy of a
/// min-first coalition game, started at arena state `start`. Returns one
/// `(agent, machine)` per coalition agent in declaration order.
///
/// Memory states are the reachable pairs of arena state and strategy memory.
/// After a decision, the strategy memory is advanced through the intermediate
/// vertex of the coalition action actually played, then the successor state.
pub fn coalition_machines<S: TbStrategy>(cg: &CoalitionGame, arena: &Arena, strat: &S, start: usize) -> Vec<(usize, StrategyMachine)> {
    assert_eq!(cg.order, MoverOrder::MinFirst, "coalition machines need the coalition to commit first");
    let tb: &TurnBasedGame = &cg.tb;
    debug_assert_eq!(tb.owner[cg.state_vertex(start)], Player::Min);
    let nd = arena.num_decisions();
    let mut index: HashMap<(usize, S::Mem), usize> = HashMap::new();
    let mut nodes: Vec<(usize, S::Mem)> = Vec::new();
    let mut queue = VecDeque::new();
    let first = (start, strat.start(cg.state_vertex(start)));
    index.insert(first.clone(), 0);
    nodes.push(first);
    queue.push_back(0);
    let mut update: Vec<Vec<usize>> = Vec::new();
    let mut coalition_choice: Vec<usize> = Vec::new();
    while let Some(i) = queue.pop_front() {
        let (s, m) = nodes[i].clone();
        let v = cg.state_vertex(s);
        // states off the strategy's region are only entered after the
        // coalition itself strayed; any choice will do there
        let pick = strat.choose(&m, v);
        let pick = if tb.succ[v].contains(&pick) { pick } else { tb.succ[v][0] };
        let (_, x) = cg.inter_parts(pick);
        coalition_choice.push(x);
        let mut row = Vec::with_capacity(nd);
        for d in 0..nd {
            let (_, c) = cg.split(d);
            let mid = strat.update(&m, cg.inter_vertex(s, c));
            let s2 = arena.next(s, d);
            let key = (s2, strat.update(&mid, cg.state_vertex(s2)));
            let j = match index.get(&key) {
                Some(&j) => j,
                None => {
                    let j = nodes.len();
                    index.insert(key.clone(), j);
                    nodes.push(key);
                    queue.push_back(j);
                    j
                }
            };
            row.push(j);
        }
        update.push(row);
    }
    let labels: Vec<String> = nodes.iter().map(|(s, m)| format!("{}/{:?}", arena.states[*s], m)).collect();
    (0..arena.num_agents())
        .filter(|&b| b != cg.agent)
        .map(|b| {
            let output = coalition_choice.iter().map(|&x| cg.coalition_actions(x).into_iter().find(|&(a, _)| a == b).unwrap().1).collect();
            (b, StrategyMachine { initial: 0, update: update.clone(), output, labels: labels.clone() })
        })
        .collect()
}
