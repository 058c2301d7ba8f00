//! Graphviz export of games and witness plays.

use std::collections::HashSet;
use std::fmt::Write;

use crate::arena::{Game, Lasso};

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\"").replace('\n', "\\n"))
}

/// DOT digraph with one node per state in declaration order and one edge per
/// (state, decision). Nodes carry `label/weights/priorities`; edges taken by
/// `play` are drawn bold red.
pub fn export_dot(game: &Game, play: Option<&Lasso>) -> String {
    let arena = game.arena();
    let used: HashSet<(usize, usize)> = play.map(|l| l.steps().copied().collect()).unwrap_or_default();
    let mut out = String::from("digraph game {\n  rankdir=LR;\n  node [shape=box];\n");
    for (s, name) in arena.states.iter().enumerate() {
        let label = match game {
            Game::Ltl(g) => g
                .atoms
                .iter()
                .enumerate()
                .filter(|&(i, _)| g.labels[s] >> i & 1 == 1)
                .map(|(_, a)| a.as_str())
                .collect::<Vec<_>>()
                .join(","),
            Game::Parity(_) => String::new(),
        };
        let weights = game.weights().iter().map(|w| w[s].to_string()).collect::<Vec<_>>().join(",");
        let prios = match game {
            Game::Parity(g) => g.priorities.iter().map(|p| p[s].to_string()).collect::<Vec<_>>().join(","),
            Game::Ltl(_) => String::new(),
        };
        let text = format!("{name}\n{{{label}}}/[{weights}]/[{prios}]");
        let init = if s == arena.initial { ", peripheries=2" } else { "" };
        let _ = writeln!(out, "  s{s} [label={}{init}];", quote(&text));
    }
    for s in 0..arena.num_states() {
        for d in 0..arena.num_decisions() {
            let t = arena.next(s, d);
            let style = if used.contains(&(s, d)) { ", color=red, penwidth=2" } else { "" };
            let _ = writeln!(out, "  s{s} -> s{t} [label={}{style}];", quote(&arena.decision_string(d)));
        }
    }
    out.push_str("}\n");
    out
}
