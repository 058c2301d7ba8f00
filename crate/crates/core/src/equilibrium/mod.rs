//! Strict epsilon equilibria: search over punishment thresholds, witness
//! synthesis, the designer-formula reduction and profile verification.

mod existence;
mod verify;
mod witness;

use std::collections::{BTreeMap, HashMap};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use num_traits::{One, Zero};

use crate::arena::{parity_product_with_budget, Decision, Game, Lasso, LexParityGame, Payoff};
use crate::automata::DEFAULT_DPW_BUDGET;
use crate::error::{Error, Result};
use crate::pathfinder::{build_secure_subgraph, find_threshold_lasso, is_secure, SecureGraph, VertexLasso};
use crate::rational::Q;
use crate::zerosum::{coalition_machines, AgentAnalysis, PunishTable, StrategyMachine};

pub use existence::{check_existence, check_existence_by_reduction, embed_ltl_game, existence_game};
pub use verify::{one_player_sup, verify_ltl_profile, verify_profile, Deviation, VerifyReport};
pub use witness::{MachineFile, WitnessFile};

pub const DEFAULT_MAX_Z_VECTORS: usize = 1_000_000;

/// Search budgets and parallelism.
#[derive(Debug, Clone)]
pub struct Options {
    pub max_dpw_states: usize,
    pub max_z_vectors: usize,
    pub jobs: usize,
}

impl Default for Options {
    fn default() -> Options {
        Options { max_dpw_states: DEFAULT_DPW_BUDGET, max_z_vectors: DEFAULT_MAX_Z_VECTORS, jobs: 1 }
    }
}

/// Equilibrium witness: thresholds, the play and one machine per agent.
#[derive(Debug, Clone)]
pub struct Witness {
    pub z: Vec<Payoff>,
    pub play: Lasso,
    pub profile: Vec<StrategyMachine>,
    pub epsilon: Q,
    pub payoffs: Vec<Payoff>,
}

/// Zero-sum analyses of every agent, computed once per game.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub agents: Vec<AgentAnalysis>,
    pub table: PunishTable,
}

impl Analysis {
    pub fn new(g: &LexParityGame) -> Analysis {
        let agents: Vec<AgentAnalysis> = (0..g.arena.num_agents()).map(|a| AgentAnalysis::new(g, a)).collect();
        let values = agents.iter().map(|an| (0..g.arena.num_states()).map(|s| an.value(s).clone()).collect()).collect();
        Analysis { agents, table: PunishTable { values } }
    }
}

/// Threshold for the path search: `z ≺ pay + eps` iff `(z.sat, z.mp - eps) ≺ pay`.
pub fn shifted_threshold(z: &[Payoff], eps: &Q) -> Vec<Payoff> {
    z.iter().map(|p| p.minus(eps)).collect()
}

/// Arena lasso of a vertex lasso in the secure graph.
pub fn to_arena_lasso(sg: &SecureGraph, vl: &VertexLasso) -> Lasso {
    let states: Vec<usize> = vl.stem.iter().chain(&vl.cycle).copied().collect();
    let steps: Vec<(usize, Decision)> = (0..states.len())
        .map(|i| {
            let t = if i + 1 < states.len() { states[i + 1] } else { vl.cycle[0] };
            (states[i], sg.decision[&(states[i], t)])
        })
        .collect();
    Lasso { prefix: steps[..vl.stem.len()].to_vec(), cycle: steps[vl.stem.len()..].to_vec() }
}

/// All threshold vectors, agents in declaration order, each ascending.
fn z_vectors(table: &PunishTable, n_agents: usize, max: usize) -> Result<Vec<Vec<Payoff>>> {
    let per: Vec<Vec<Payoff>> = (0..n_agents).map(|a| table.distinct(a)).collect();
    let total = per.iter().try_fold(1usize, |acc, v| acc.checked_mul(v.len()));
    match total {
        Some(t) if t <= max => {}
        _ => return Err(Error::Budget(format!("more than {max} threshold vectors"))),
    }
    let mut out = vec![Vec::new()];
    for vals in &per {
        out = out.into_iter().flat_map(|z| vals.iter().map(move |v| [z.clone(), vec![v.clone()]].concat())).collect();
    }
    Ok(out)
}

/// Thresholds and play satisfying the characterization, first in enumeration
/// order. Workers split the vectors; the lowest successful index wins.
pub fn find_play(g: &LexParityGame, table: &PunishTable, eps: &Q, opts: &Options) -> Result<Option<(Vec<Payoff>, Lasso)>> {
    find_play_observed(g, table, eps, opts, None)
}

/// `find_play` restricted to plays whose highest recurring `observed`
/// priority is even.
pub fn find_play_observed(
    g: &LexParityGame,
    table: &PunishTable,
    eps: &Q,
    opts: &Options,
    observed: Option<&[u32]>,
) -> Result<Option<(Vec<Payoff>, Lasso)>> {
    let zs = z_vectors(table, g.arena.num_agents(), opts.max_z_vectors)?;
    let next = AtomicUsize::new(0);
    let best: Mutex<Option<(usize, Lasso)>> = Mutex::new(None);
    let work = || loop {
        let i = next.fetch_add(1, Ordering::SeqCst);
        if i >= zs.len() || best.lock().unwrap().as_ref().is_some_and(|(b, _)| *b < i) {
            return;
        }
        let mut sg = build_secure_subgraph(g, &zs[i], table);
        let mut f = shifted_threshold(&zs[i], eps);
        if let Some(prio) = observed {
            // an extra index with zero weights that only asks for even parity
            sg.graph.weights.push(vec![0; g.arena.num_states()]);
            sg.graph.priorities.push(prio.to_vec());
            f.push(Payoff::new(true, -Q::one()));
        }
        if let Some(vl) = find_threshold_lasso(&sg.graph, &f) {
            let l = to_arena_lasso(&sg, &vl);
            let mut b = best.lock().unwrap();
            if b.as_ref().is_none_or(|(j, _)| i < *j) {
                *b = Some((i, l));
            }
        }
    };
    let jobs = opts.jobs.max(1);
    if jobs == 1 {
        work();
    } else {
        std::thread::scope(|sc| {
            for _ in 0..jobs {
                sc.spawn(work);
            }
        });
    }
    Ok(best.into_inner().unwrap().map(|(i, l)| (zs[i].clone(), l)))
}

/// Finite-state strict epsilon equilibrium of a parity game, if one exists.
pub fn decide_fsne(g: &LexParityGame, eps: &Q) -> Result<Option<Witness>> {
    decide_fsne_with(g, eps, &Options::default())
}

pub fn decide_fsne_with(g: &LexParityGame, eps: &Q, opts: &Options) -> Result<Option<Witness>> {
    decide_observed(g, eps, opts, None)
}

/// Witness whose play also has even highest recurring `observed` priority.
pub fn decide_observed(g: &LexParityGame, eps: &Q, opts: &Options, observed: Option<&[u32]>) -> Result<Option<Witness>> {
    if eps < &Q::zero() {
        return Err(Error::BadInput("epsilon must be nonnegative".into()));
    }
    let an = Analysis::new(g);
    let Some((z, play)) = find_play_observed(g, &an.table, eps, opts, observed)? else {
        return Ok(None);
    };
    let profile = synthesize_profile(g, &an, &z, &play, eps)?;
    let payoffs = g.payoffs(&play);
    Ok(Some(Witness { z, play, profile, epsilon: eps.clone(), payoffs }))
}

/// Parameter for the punishers: half the smallest finite slack between `z_a`
/// and `pay_a + eps`, or 1 when every slack lies in the satisfaction flag.
pub fn punishing_epsilon(z: &[Payoff], pay: &[Payoff], eps: &Q) -> Q {
    z.iter()
        .zip(pay)
        .filter(|(z, p)| z.sat == p.sat)
        .map(|(z, p)| (&p.mp + eps - &z.mp) / Q::from_integer(2.into()))
        .min()
        .unwrap_or_else(Q::one)
}

/// Machines following `play`; after a deviation by exactly one agent `a` into
/// `s'`, the others switch for good to the coalition strategy punishing `a`
/// from `s'` and `a` itself idles. Deviations by several agents are ignored:
/// the machines keep following the play positions.
pub fn synthesize_profile(g: &LexParityGame, an: &Analysis, z: &[Payoff], play: &Lasso, eps: &Q) -> Result<Vec<StrategyMachine>> {
    let arena = &g.arena;
    let n_ag = arena.num_agents();
    let nd = arena.num_decisions();
    play.check(arena, arena.initial)?;
    let pay = g.payoffs(play);
    for a in 0..n_ag {
        if !(z[a] < pay[a].plus(eps)) {
            return Err(Error::BadInput(format!("threshold of agent {} not below the play payoff", arena.agents[a])));
        }
    }
    for &(s, d) in play.steps() {
        if !is_secure(g, z, &an.table, s, d) {
            return Err(Error::BadInput(format!("step at {} is not secure", arena.states[s])));
        }
    }
    let eps_p = punishing_epsilon(z, &pay, eps);
    let len = play.len();
    let next_pos = |i: usize| if i + 1 < len { i + 1 } else { play.prefix.len() };
    // punishing machines per (deviator, entered state)
    let mut blocks: BTreeMap<(usize, usize), Vec<(usize, StrategyMachine)>> = BTreeMap::new();
    for i in 0..len {
        let (s, d) = play.at(i);
        for a in 0..n_ag {
            for d2 in arena.deviations(d, a).filter(|&d2| d2 != d) {
                let s2 = arena.next(s, d2);
                if blocks.contains_key(&(a, s2)) {
                    continue;
                }
                let p = an.table.get(a, s2);
                let parity_only = !p.sat && pay[a].sat;
                let punisher = an.agents[a].punisher(s2, &eps_p, parity_only);
                blocks.insert((a, s2), coalition_machines(&an.agents[a].cg, arena, &punisher, s2));
            }
        }
    }
    let mut profile = Vec::with_capacity(n_ag);
    for b in 0..n_ag {
        let idle = len;
        let mut offset: HashMap<(usize, usize), usize> = HashMap::new();
        let mut output: Vec<usize> = (0..len).map(|i| arena.action_of(play.at(i).1, b)).collect();
        output.push(0);
        let mut labels: Vec<String> = (0..len).map(|i| format!("main/{i}")).collect();
        labels.push("idle".into());
        let mut update: Vec<Vec<usize>> = vec![Vec::new(); len];
        update.push(vec![idle; nd]);
        for (&(a, s2), ms) in &blocks {
            if a == b {
                continue;
            }
            let m = &ms.iter().find(|(c, _)| *c == b).expect("coalition member").1;
            let off = output.len();
            offset.insert((a, s2), off);
            output.extend(&m.output);
            labels.extend(m.labels.iter().map(|l| format!("punish {}@{}", arena.agents[a], l)));
            update.extend(m.update.iter().map(|row| row.iter().map(|&j| j + off).collect()));
        }
        for i in 0..len {
            let (s, d) = play.at(i);
            update[i] = (0..nd)
                .map(|d2| match arena.sole_deviator(d, d2) {
                    None => next_pos(i),
                    Some(a) if a == b => idle,
                    Some(a) => offset[&(a, arena.next(s, d2))],
                })
                .collect();
        }
        profile.push(StrategyMachine { initial: 0, update, output, labels }.minimized());
    }
    Ok(profile)
}

/// Emptiness check for either game flavour. LTL games go through the parity
/// product; the returned play is projected back onto the arena, and the
/// machines, which only read decisions, apply unchanged.
pub fn check_emptiness(game: &Game, eps: &Q, opts: &Options) -> Result<Option<Witness>> {
    match game {
        Game::Parity(g) => decide_fsne_with(g, eps, opts),
        Game::Ltl(g) => {
            let prod = parity_product_with_budget(g, opts.max_dpw_states)?;
            let Some(w) = decide_fsne_with(&prod.game, eps, opts)? else {
                return Ok(None);
            };
            let play = prod.project(&w.play);
            debug_assert_eq!(g.payoffs(&play), w.payoffs);
            Ok(Some(Witness { play, ..w }))
        }
    }
}
