use std::collections::{HashMap, VecDeque};

use super::{check_emptiness, decide_observed, Options, Witness};
use crate::arena::{observed_product, Arena, Game, Lasso, LexLtlGame};
use crate::error::{Error, Result};
use crate::ltl::Ltl;
use crate::rational::Q;
use crate::zerosum::StrategyMachine;

fn fresh(base: &str, taken: &[String]) -> String {
    let mut name = base.to_string();
    while taken.contains(&name) {
        name.push('_');
    }
    name
}

/// Pure LTL game as a game with all weights zero. For positive epsilon its
/// strict epsilon equilibria are the equilibria of the LTL game.
pub fn embed_ltl_game(arena: Arena, atoms: Vec<String>, labels: Vec<u64>, goals: Vec<Ltl>) -> LexLtlGame {
    let weights = vec![vec![0; arena.num_states()]; arena.num_agents()];
    LexLtlGame { arena, weights, atoms, labels, goals }
}

/// Game with two extra zero-weight agents playing matching pennies on a fresh
/// atom unless `phi` holds: state `(s, b)` has index `2 s + b`, and `b` is set
/// when the two extra agents disagreed on the last step.
pub fn existence_game(g: &LexLtlGame, phi: &Ltl) -> Result<LexLtlGame> {
    if let Some(a) = phi.atoms().into_iter().find(|a| !g.atoms.contains(a)) {
        return Err(Error::BadInput(format!("formula uses undeclared atom {a}")));
    }
    let arena = &g.arena;
    let n_ag = arena.num_agents();
    let mut agents = arena.agents.clone();
    agents.push(fresh("a1", &agents));
    agents.push(fresh("a2", &agents));
    let mut atoms = g.atoms.clone();
    let p = fresh("p", &atoms);
    atoms.push(p.clone());
    if atoms.len() > 64 {
        return Err(Error::SizeCap("at most 64 atoms".into()));
    }
    let bit = 1u64 << (atoms.len() - 1);
    let mut big = Arena { agents, actions: arena.actions.clone(), states: Vec::new(), initial: 2 * arena.initial, succ: Vec::new() };
    for s in 0..arena.num_states() {
        for b in 0..2 {
            big.states.push(format!("{}/{}", arena.states[s], b));
        }
    }
    let nd = big.num_decisions();
    for s in 0..arena.num_states() {
        let row: Vec<usize> = (0..nd)
            .map(|d| {
                let acts = big.decode(d);
                let t = arena.next(s, arena.encode(&acts[..n_ag]));
                2 * t + usize::from(acts[n_ag] != acts[n_ag + 1])
            })
            .collect();
        big.succ.push(row.clone());
        big.succ.push(row);
    }
    let mut weights: Vec<Vec<i64>> = g.weights.iter().map(|w| w.iter().flat_map(|&x| [x, x]).collect()).collect();
    weights.push(vec![0; big.num_states()]);
    weights.push(vec![0; big.num_states()]);
    let labels = g.labels.iter().flat_map(|&l| [l, l | bit]).collect();
    let mut goals = g.goals.clone();
    goals.push(Ltl::or(phi.clone(), Ltl::next(Ltl::atom(&p))));
    goals.push(Ltl::or(phi.clone(), Ltl::next(Ltl::not(Ltl::atom(&p)))));
    Ok(LexLtlGame { arena: big, weights, atoms, labels, goals })
}

/// Machine of one original agent with the two extra agents' machines folded
/// in, reading decisions of the original arena.
fn fold_machine(small: &Arena, big: &Arena, own: &StrategyMachine, e1: &StrategyMachine, e2: &StrategyMachine) -> StrategyMachine {
    let mut index: HashMap<[usize; 3], usize> = HashMap::new();
    let mut nodes = vec![[own.initial, e1.initial, e2.initial]];
    index.insert(nodes[0], 0);
    let mut queue = VecDeque::from([0usize]);
    let mut update = Vec::new();
    while let Some(i) = queue.pop_front() {
        let [m, x1, x2] = nodes[i];
        let row = (0..small.num_decisions())
            .map(|d| {
                let mut acts = small.decode(d);
                acts.push(e1.output[x1]);
                acts.push(e2.output[x2]);
                let d2 = big.encode(&acts);
                let key = [own.update[m][d2], e1.update[x1][d2], e2.update[x2][d2]];
                *index.entry(key).or_insert_with(|| {
                    nodes.push(key);
                    queue.push_back(nodes.len() - 1);
                    nodes.len() - 1
                })
            })
            .collect();
        update.push(row);
    }
    StrategyMachine {
        initial: 0,
        update,
        output: nodes.iter().map(|k| own.output[k[0]]).collect(),
        labels: nodes.iter().map(|k| format!("{}|{}|{}", own.labels[k[0]], k[1], k[2])).collect(),
    }
}

/// Equilibrium whose play satisfies `phi`. Equilibrium plays are exactly the
/// plays meeting the threshold characterization, so the search runs on the
/// goal product extended by an automaton for `phi` and only accepts plays
/// that this automaton accepts.
pub fn check_existence(g: &LexLtlGame, phi: &Ltl, eps: &Q, opts: &Options) -> Result<Option<Witness>> {
    if let Some(a) = phi.atoms().into_iter().find(|a| !g.atoms.contains(a)) {
        return Err(Error::BadInput(format!("formula uses undeclared atom {a}")));
    }
    let prod = observed_product(g, std::slice::from_ref(phi), opts.max_dpw_states)?;
    let Some(w) = decide_observed(&prod.game, eps, opts, Some(&prod.observed[0]))? else {
        return Ok(None);
    };
    let play = prod.project(&w.play);
    if !g.satisfies(phi, &play) {
        return Err(Error::Invalid("equilibrium play violates the formula".into()));
    }
    Ok(Some(Witness { play, ..w }))
}

/// Equilibrium whose play satisfies `phi`, through the two-extra-agent
/// game. With a single action every profile yields the same play, so the
/// emptiness answer is filtered by `phi` directly. Only meaningful for
/// positive epsilon: at zero one extra agent is always content whatever `phi`
/// does and can change its action at no cost, so no strict equilibrium exists.
pub fn check_existence_by_reduction(g: &LexLtlGame, phi: &Ltl, eps: &Q, opts: &Options) -> Result<Option<Witness>> {
    let arena = &g.arena;
    if arena.num_actions() < 2 {
        let w = check_emptiness(&Game::Ltl(g.clone()), eps, opts)?;
        return Ok(w.filter(|w| g.satisfies(phi, &w.play)));
    }
    let big = existence_game(g, phi)?;
    let Some(w) = check_emptiness(&Game::Ltl(big.clone()), eps, opts)? else {
        return Ok(None);
    };
    let n_ag = arena.num_agents();
    let shrink =
        |steps: &[(usize, usize)]| steps.iter().map(|&(s, d)| (s / 2, arena.encode(&big.arena.decode(d)[..n_ag]))).collect::<Vec<_>>();
    let play = Lasso { prefix: shrink(&w.play.prefix), cycle: shrink(&w.play.cycle) };
    let profile: Vec<StrategyMachine> =
        (0..n_ag).map(|b| fold_machine(arena, &big.arena, &w.profile[b], &w.profile[n_ag], &w.profile[n_ag + 1]).minimized()).collect();
    if !g.satisfies(phi, &play) {
        return Err(Error::Invalid("equilibrium play of the reduction violates the formula".into()));
    }
    let payoffs = g.payoffs(&play);
    Ok(Some(Witness { z: w.z[..n_ag].to_vec(), play, profile, epsilon: eps.clone(), payoffs }))
}
