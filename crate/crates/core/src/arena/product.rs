use std::collections::HashMap;

use super::{Arena, LexLtlGame, LexParityGame};
use crate::automata::{ltl_to_dpw_with_stats, CompileStats, Dpw, DEFAULT_DPW_BUDGET};
use crate::error::Result;
use crate::ltl::Ltl;

/// Parity product of an LTL game with one automaton per goal.
#[derive(Debug, Clone)]
pub struct Product {
    pub game: LexParityGame,
    /// Arena state of each product state.
    pub origin: Vec<usize>,
    /// Automaton state per agent of each product state.
    pub memory: Vec<Vec<usize>>,
    pub automata: Vec<Dpw>,
    pub stats: Vec<CompileStats>,
    /// Priorities of each extra observed formula, `[formula][product state]`.
    pub observed: Vec<Vec<u32>>,
}

pub fn parity_product(g: &LexLtlGame) -> Result<Product> {
    parity_product_with_budget(g, DEFAULT_DPW_BUDGET)
}

/// Restricted to the part reachable from `(initial, q0, ..., q0)`. Automata read
/// the label of the current arena state.
pub fn parity_product_with_budget(g: &LexLtlGame, budget: usize) -> Result<Product> {
    observed_product(g, &[], budget)
}

/// Product that also runs an automaton for each formula of `observe`; these
/// only contribute the `observed` priorities.
pub fn observed_product(g: &LexLtlGame, observe: &[Ltl], budget: usize) -> Result<Product> {
    let n_ag = g.arena.num_agents();
    let mut automata = Vec::new();
    let mut stats = Vec::new();
    // local letter of each (automaton, arena state)
    let mut letters: Vec<Vec<u64>> = Vec::new();
    for f in g.goals.iter().chain(observe) {
        let atoms: Vec<String> = f.atoms().into_iter().collect();
        let (d, st) = ltl_to_dpw_with_stats(f, &atoms, budget)?;
        let pos: Vec<usize> = atoms.iter().map(|p| g.atoms.iter().position(|x| x == p).unwrap()).collect();
        letters.push(g.labels.iter().map(|&l| pos.iter().enumerate().fold(0, |acc, (k, &i)| acc | ((l >> i & 1) << k))).collect());
        automata.push(d);
        stats.push(st);
    }
    let nd = g.arena.num_decisions();
    let key0: Vec<usize> = std::iter::once(g.arena.initial).chain(automata.iter().map(|d| d.initial)).collect();
    let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(key0.clone(), 0)]);
    let mut keys = vec![key0];
    let mut succ: Vec<Vec<usize>> = Vec::new();
    let mut i = 0;
    while i < keys.len() {
        let s = keys[i][0];
        let mem: Vec<usize> = (0..automata.len()).map(|a| automata[a].step(keys[i][a + 1], letters[a][s])).collect();
        let mut row = Vec::with_capacity(nd);
        for d in 0..nd {
            let key: Vec<usize> = std::iter::once(g.arena.next(s, d)).chain(mem.iter().copied()).collect();
            let id = match index.get(&key) {
                Some(&id) => id,
                None => {
                    keys.push(key.clone());
                    index.insert(key, keys.len() - 1);
                    keys.len() - 1
                }
            };
            row.push(id);
        }
        succ.push(row);
        i += 1;
    }
    let states = keys
        .iter()
        .map(|k| {
            let qs: Vec<String> = k[1..].iter().map(|q| q.to_string()).collect();
            format!("{}|{}", g.arena.states[k[0]], qs.join("|"))
        })
        .collect();
    let arena = Arena { agents: g.arena.agents.clone(), actions: g.arena.actions.clone(), states, initial: 0, succ };
    let weights = (0..n_ag).map(|a| keys.iter().map(|k| g.weights[a][k[0]]).collect()).collect();
    let priorities = (0..n_ag).map(|a| keys.iter().map(|k| automata[a].priority[k[a + 1]]).collect()).collect();
    let observed = (n_ag..automata.len()).map(|j| keys.iter().map(|k| automata[j].priority[k[j + 1]]).collect()).collect();
    Ok(Product {
        game: LexParityGame { arena, weights, priorities },
        origin: keys.iter().map(|k| k[0]).collect(),
        memory: keys.iter().map(|k| k[1..].to_vec()).collect(),
        automata,
        stats,
        observed,
    })
}

impl Product {
    /// Project a play of the product onto the arena.
    pub fn project(&self, l: &super::Lasso) -> super::Lasso {
        let f = |xs: &[(usize, usize)]| xs.iter().map(|&(s, d)| (self.origin[s], d)).collect();
        super::Lasso { prefix: f(&l.prefix), cycle: f(&l.cycle) }
    }

    /// Lift an arena play to the product (decisions are shared).
    pub fn lift(&self, l: &super::Lasso) -> super::Lasso {
        // simulate until the (product state, cycle position) repeats
        let a = &self.game.arena;
        let mut seen: HashMap<(usize, usize), usize> = HashMap::new();
        let mut steps = Vec::new();
        let mut s = a.initial;
        let mut i = 0;
        loop {
            let (_, d) = l.at(i);
            let pos = if i < l.prefix.len() { i } else { l.prefix.len() + (i - l.prefix.len()) % l.cycle.len() };
            if i >= l.prefix.len() {
                if let Some(&k) = seen.get(&(s, pos)) {
                    return super::Lasso { prefix: steps[..k].to_vec(), cycle: steps[k..].to_vec() };
                }
                seen.insert((s, pos), steps.len());
            }
            steps.push((s, d));
            s = a.next(s, d);
            i += 1;
        }
    }
}
