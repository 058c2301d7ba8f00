use super::io::Game;
use super::{Arena, LexLtlGame, LexParityGame};

/// Move per-agent action weights onto states of `St x Act^Ag`.
/// `table[agent][action]` is the weight an agent collects for its own action.
/// The new initial state pairs the old one with the all-least-actions decision.
pub fn push_weights_to_states(game: &Game, table: &[Vec<i64>]) -> Game {
    let a = game.arena();
    let nd = a.num_decisions();
    let idx = |s: usize, d: usize| s * nd + d;
    let mut states = Vec::with_capacity(a.num_states() * nd);
    let mut succ = Vec::with_capacity(a.num_states() * nd);
    for s in 0..a.num_states() {
        for d in 0..nd {
            states.push(format!("{}{}", a.states[s], a.decision_string(d)));
            succ.push((0..nd).map(|d2| idx(a.next(s, d2), d2)).collect());
        }
    }
    let arena = Arena { agents: a.agents.clone(), actions: a.actions.clone(), states, initial: idx(a.initial, 0), succ };
    let weights: Vec<Vec<i64>> = (0..a.num_agents())
        .map(|ag| (0..a.num_states()).flat_map(|_| (0..nd).map(move |d| (ag, d))).map(|(ag, d)| table[ag][a.action_of(d, ag)]).collect())
        .collect();
    let lift = |v: &Vec<u32>| v.iter().flat_map(|&p| std::iter::repeat_n(p, nd)).collect();
    match game {
        Game::Ltl(g) => Game::Ltl(LexLtlGame {
            arena,
            weights,
            atoms: g.atoms.clone(),
            labels: g.labels.iter().flat_map(|&l| std::iter::repeat_n(l, nd)).collect(),
            goals: g.goals.clone(),
        }),
        Game::Parity(g) => Game::Parity(LexParityGame { arena, weights, priorities: g.priorities.iter().map(lift).collect() }),
    }
}
