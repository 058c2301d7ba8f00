use std::collections::{BTreeMap, HashMap};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{push_weights_to_states, Arena, Lasso, LexLtlGame, LexParityGame};
use crate::error::{Error, Result};
use crate::ltl::{parse_formula, Ltl};

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct StateEntry {
    pub name: String,
    #[serde(default)]
    pub label: Vec<String>,
    #[serde(default)]
    pub weights: BTreeMap<String, i64>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct TransitionEntry {
    pub from: String,
    pub decision: BTreeMap<String, String>,
    pub to: String,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct GameFile {
    pub agents: Vec<String>,
    pub actions: Vec<String>,
    #[serde(default)]
    pub atoms: Vec<String>,
    pub states: Vec<StateEntry>,
    pub initial: String,
    pub transitions: Vec<TransitionEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub goals_ltl: Option<BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub goals_parity: Option<BTreeMap<String, BTreeMap<String, u32>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub action_weights: Option<BTreeMap<String, BTreeMap<String, i64>>>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct StepEntry {
    pub state: String,
    pub decision: BTreeMap<String, String>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct LassoFile {
    pub prefix: Vec<StepEntry>,
    pub cycle: Vec<StepEntry>,
}

impl LassoFile {
    pub fn from_lasso(arena: &Arena, l: &Lasso) -> LassoFile {
        let conv = |xs: &[(usize, usize)]| {
            xs.iter().map(|&(s, d)| StepEntry { state: arena.states[s].clone(), decision: arena.decision_map(d) }).collect()
        };
        LassoFile { prefix: conv(&l.prefix), cycle: conv(&l.cycle) }
    }

    pub fn to_lasso(&self, arena: &Arena) -> Result<Lasso> {
        let conv = |xs: &[StepEntry]| -> Result<Vec<(usize, usize)>> {
            xs.iter().map(|e| Ok((arena.state_index(&e.state)?, arena.decision_from_map(&e.decision)?))).collect()
        };
        let l = Lasso { prefix: conv(&self.prefix)?, cycle: conv(&self.cycle)? };
        l.check(arena, arena.initial)?;
        Ok(l)
    }
}

/// A validated game of either flavour.
#[derive(Debug, Clone)]
pub enum Game {
    Ltl(LexLtlGame),
    Parity(LexParityGame),
}

impl Game {
    pub fn arena(&self) -> &Arena {
        match self {
            Game::Ltl(g) => &g.arena,
            Game::Parity(g) => &g.arena,
        }
    }

    pub fn weights(&self) -> &Vec<Vec<i64>> {
        match self {
            Game::Ltl(g) => &g.weights,
            Game::Parity(g) => &g.weights,
        }
    }

    pub fn payoffs(&self, l: &Lasso) -> Vec<super::Payoff> {
        match self {
            Game::Ltl(g) => g.payoffs(l),
            Game::Parity(g) => g.payoffs(l),
        }
    }
}

fn check_unique(kind: &str, names: &[String]) -> Result<()> {
    let mut seen = std::collections::HashSet::new();
    for n in names {
        if !seen.insert(n) {
            return Err(Error::Invalid(format!("duplicate {kind} name {n}")));
        }
    }
    Ok(())
}

pub fn parse_game(text: &str) -> Result<Game> {
    let file: GameFile = serde_json::from_str(text)?;
    validate_game(&file)
}

pub fn load_game(path: &Path) -> Result<Game> {
    parse_game(&std::fs::read_to_string(path)?)
}

/// Check totality and references, and build the in-memory game.
pub fn validate_game(file: &GameFile) -> Result<Game> {
    check_unique("agent", &file.agents)?;
    check_unique("action", &file.actions)?;
    check_unique("atom", &file.atoms)?;
    let state_names: Vec<String> = file.states.iter().map(|s| s.name.clone()).collect();
    check_unique("state", &state_names)?;
    if file.agents.is_empty() || file.actions.is_empty() || file.states.is_empty() {
        return Err(Error::Invalid("agents, actions and states must be nonempty".into()));
    }
    if file.atoms.len() > 64 {
        return Err(Error::Invalid("at most 64 atoms are supported".into()));
    }
    let n_dec = file
        .actions
        .len()
        .checked_pow(file.agents.len() as u32)
        .filter(|&n| n <= 1 << 20)
        .ok_or_else(|| Error::Invalid("too many joint decisions".into()))?;
    let mut arena = Arena {
        agents: file.agents.clone(),
        actions: file.actions.clone(),
        states: state_names,
        initial: 0,
        succ: vec![vec![usize::MAX; n_dec]; file.states.len()],
    };
    arena.initial = arena.state_index(&file.initial)?;
    for t in &file.transitions {
        let s = arena.state_index(&t.from)?;
        let to = arena.state_index(&t.to)?;
        let d = arena.decision_from_map(&t.decision)?;
        let slot = &mut arena.succ[s][d];
        if *slot != usize::MAX && *slot != to {
            return Err(Error::Invalid(format!("conflicting transitions from {} under {}", t.from, arena.decision_string(d))));
        }
        *slot = to;
    }
    for s in 0..arena.num_states() {
        for d in 0..n_dec {
            if arena.succ[s][d] == usize::MAX {
                return Err(Error::Invalid(format!(
                    "missing transition from {} under decision {}",
                    arena.states[s],
                    serde_json::to_string(&arena.decision_map(d)).unwrap_or_default()
                )));
            }
        }
    }
    let atom_index: HashMap<&str, usize> = file.atoms.iter().enumerate().map(|(i, a)| (a.as_str(), i)).collect();
    let mut labels = Vec::with_capacity(file.states.len());
    for st in &file.states {
        let mut m = 0u64;
        for p in &st.label {
            let k = atom_index.get(p.as_str()).ok_or_else(|| Error::Invalid(format!("state {} uses undeclared atom {p}", st.name)))?;
            m |= 1 << k;
        }
        labels.push(m);
        for ag in st.weights.keys() {
            arena.agent_index(ag)?;
        }
    }
    let weights: Vec<Vec<i64>> =
        arena.agents.iter().map(|ag| file.states.iter().map(|st| st.weights.get(ag).copied().unwrap_or(0)).collect()).collect();

    let game = match (&file.goals_ltl, &file.goals_parity) {
        (Some(goals), None) => {
            let mut parsed: Vec<Ltl> = Vec::new();
            for ag in &arena.agents {
                let text = goals.get(ag).ok_or_else(|| Error::Invalid(format!("no goal for agent {ag}")))?;
                let f = parse_formula(text)?;
                for p in f.atoms() {
                    if !atom_index.contains_key(p.as_str()) {
                        return Err(Error::Invalid(format!("goal of {ag} uses undeclared atom {p}")));
                    }
                }
                parsed.push(f);
            }
            for ag in goals.keys() {
                arena.agent_index(ag)?;
            }
            Game::Ltl(LexLtlGame { arena, weights, atoms: file.atoms.clone(), labels, goals: parsed })
        }
        (None, Some(goals)) => {
            let mut priorities = Vec::new();
            for ag in &arena.agents {
                let m = goals.get(ag).ok_or_else(|| Error::Invalid(format!("no priorities for agent {ag}")))?;
                let mut row = Vec::new();
                for s in &arena.states {
                    row.push(*m.get(s).ok_or_else(|| Error::Invalid(format!("no priority for agent {ag} at state {s}")))?);
                }
                for s in m.keys() {
                    arena.state_index(s)?;
                }
                priorities.push(row);
            }
            for ag in goals.keys() {
                arena.agent_index(ag)?;
            }
            Game::Parity(LexParityGame { arena, weights, priorities })
        }
        _ => return Err(Error::Invalid("exactly one of goals_ltl or goals_parity is required".into())),
    };
    match &file.action_weights {
        None => Ok(game),
        Some(aw) => {
            let arena = game.arena();
            let mut table = Vec::new();
            for ag in &arena.agents {
                let m = aw.get(ag);
                let mut row = Vec::new();
                for act in &arena.actions {
                    row.push(m.and_then(|m| m.get(act)).copied().unwrap_or(0));
                }
                if let Some(m) = m {
                    for act in m.keys() {
                        arena.action_index(act)?;
                    }
                }
                table.push(row);
            }
            for ag in aw.keys() {
                arena.agent_index(ag)?;
            }
            Ok(push_weights_to_states(&game, &table))
        }
    }
}

/// Serialize a parity game (e.g. a product) in the input format.
pub fn write_parity_game(g: &LexParityGame) -> GameFile {
    let a = &g.arena;
    let states = (0..a.num_states())
        .map(|s| StateEntry {
            name: a.states[s].clone(),
            label: vec![],
            weights: a.agents.iter().enumerate().map(|(i, ag)| (ag.clone(), g.weights[i][s])).collect(),
        })
        .collect();
    let mut transitions = Vec::new();
    for s in 0..a.num_states() {
        for d in 0..a.num_decisions() {
            transitions.push(TransitionEntry {
                from: a.states[s].clone(),
                decision: a.decision_map(d),
                to: a.states[a.next(s, d)].clone(),
            });
        }
    }
    let goals = a
        .agents
        .iter()
        .enumerate()
        .map(|(i, ag)| (ag.clone(), a.states.iter().cloned().zip(g.priorities[i].iter().copied()).collect()))
        .collect();
    GameFile {
        agents: a.agents.clone(),
        actions: a.actions.clone(),
        atoms: vec![],
        states,
        initial: a.states[a.initial].clone(),
        transitions,
        goals_ltl: None,
        goals_parity: Some(goals),
        action_weights: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one_state() -> String {
        r#"{"agents":["a"],"actions":["x"],"atoms":["p"],
            "states":[{"name":"s","label":["p"],"weights":{"a":5}}],
            "initial":"s",
            "transitions":[{"from":"s","decision":{"a":"x"},"to":"s"}],
            "goals_ltl":{"a":"G p"}}"#
            .to_string()
    }

    #[test]
    fn loads_minimal_game() {
        match parse_game(&one_state()).unwrap() {
            Game::Ltl(g) => {
                assert_eq!(g.arena.num_states(), 1);
                assert_eq!(g.weights, vec![vec![5]]);
                assert_eq!(g.labels, vec![1]);
            }
            _ => panic!(),
        }
    }

    #[test]
    fn reports_missing_decision() {
        let text = r#"{"agents":["a","b"],"actions":["x","y"],
            "states":[{"name":"s"}],"initial":"s",
            "transitions":[
              {"from":"s","decision":{"a":"x","b":"x"},"to":"s"},
              {"from":"s","decision":{"a":"x","b":"y"},"to":"s"},
              {"from":"s","decision":{"a":"y","b":"x"},"to":"s"}],
            "goals_parity":{"a":{"s":0},"b":{"s":0}}}"#;
        let err = parse_game(text).unwrap_err().to_string();
        assert!(err.contains("missing transition from s"), "{err}");
        assert!(err.contains(r#""a":"y","b":"y""#), "{err}");
    }

    #[test]
    fn rejects_bad_references() {
        let t = one_state().replace(r#""to":"s""#, r#""to":"t""#);
        assert!(parse_game(&t).unwrap_err().to_string().contains("unknown state t"));
        let t = one_state().replace(r#""G p""#, r#""G q""#);
        assert!(parse_game(&t).unwrap_err().to_string().contains("undeclared atom q"));
        let t = one_state().replace(r#"[{"name":"s","#, r#"[{"name":"s"},{"name":"s","#);
        assert!(parse_game(&t).unwrap_err().to_string().contains("duplicate state"));
    }

    #[test]
    fn parity_roundtrip() {
        let text = r#"{"agents":["a"],"actions":["x","y"],
            "states":[{"name":"s","weights":{"a":1}},{"name":"t","weights":{"a":-2}}],"initial":"s",
            "transitions":[
              {"from":"s","decision":{"a":"x"},"to":"s"},
              {"from":"s","decision":{"a":"y"},"to":"t"},
              {"from":"t","decision":{"a":"x"},"to":"s"},
              {"from":"t","decision":{"a":"y"},"to":"t"}],
            "goals_parity":{"a":{"s":1,"t":2}}}"#;
        let Game::Parity(g) = parse_game(text).unwrap() else { panic!() };
        let back = serde_json::to_string(&write_parity_game(&g)).unwrap();
        let Game::Parity(h) = parse_game(&back).unwrap() else { panic!() };
        assert_eq!(g.arena, h.arena);
        assert_eq!(g.weights, h.weights);
        assert_eq!(g.priorities, h.priorities);
    }
}
