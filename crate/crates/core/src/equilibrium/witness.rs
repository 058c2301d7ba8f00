use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::Witness;
use crate::arena::{Arena, LassoFile, Payoff};
use crate::error::{Error, Result};
use crate::rational::{fmt_q, parse_q};
use crate::zerosum::StrategyMachine;

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct PayoffEntry {
    pub sat: bool,
    pub mp: String,
}

impl PayoffEntry {
    fn new(p: &Payoff) -> PayoffEntry {
        PayoffEntry { sat: p.sat, mp: fmt_q(&p.mp) }
    }

    fn payoff(&self) -> Result<Payoff> {
        Ok(Payoff::new(self.sat, parse_q(&self.mp)?))
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct MachineTransition {
    pub from: String,
    pub decision: BTreeMap<String, String>,
    pub to: String,
}

/// Moore machine in file form; state names are `q<index>:<label>`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct MachineFile {
    pub states: Vec<String>,
    pub initial: String,
    pub transitions: Vec<MachineTransition>,
    pub output: BTreeMap<String, String>,
}

impl MachineFile {
    pub fn from_machine(arena: &Arena, m: &StrategyMachine) -> MachineFile {
        let states: Vec<String> = (0..m.num_states()).map(|i| format!("q{i}:{}", m.labels.get(i).map_or("", |l| l))).collect();
        let transitions = (0..m.num_states())
            .flat_map(|i| {
                let states = &states;
                m.update[i].iter().enumerate().map(move |(d, &j)| MachineTransition {
                    from: states[i].clone(),
                    decision: arena.decision_map(d),
                    to: states[j].clone(),
                })
            })
            .collect();
        let output = states.iter().zip(&m.output).map(|(s, &x)| (s.clone(), arena.actions[x].clone())).collect();
        MachineFile { initial: states[m.initial].clone(), states, transitions, output }
    }

    pub fn to_machine(&self, arena: &Arena) -> Result<StrategyMachine> {
        let index: HashMap<&str, usize> = self.states.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        if index.len() != self.states.len() {
            return Err(Error::BadInput("duplicate machine state".into()));
        }
        let find = |s: &str| index.get(s).copied().ok_or_else(|| Error::BadInput(format!("unknown machine state {s}")));
        let n = self.states.len();
        let nd = arena.num_decisions();
        let mut update = vec![vec![usize::MAX; nd]; n];
        for t in &self.transitions {
            update[find(&t.from)?][arena.decision_from_map(&t.decision)?] = find(&t.to)?;
        }
        if let Some(i) = update.iter().position(|r| r.contains(&usize::MAX)) {
            return Err(Error::BadInput(format!("machine state {} lacks a transition", self.states[i])));
        }
        let output = self
            .states
            .iter()
            .map(|s| {
                let a = self.output.get(s).ok_or_else(|| Error::BadInput(format!("no output for machine state {s}")))?;
                arena.action_index(a)
            })
            .collect::<Result<Vec<usize>>>()?;
        let labels = self.states.iter().map(|s| s.split_once(':').map_or(s.as_str(), |(_, l)| l).to_string()).collect();
        Ok(StrategyMachine { initial: find(&self.initial)?, update, output, labels })
    }
}

/// Witness document.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct WitnessFile {
    pub z: BTreeMap<String, PayoffEntry>,
    pub play: LassoFile,
    pub profile: BTreeMap<String, MachineFile>,
    pub epsilon: String,
    #[serde(default)]
    pub payoffs: BTreeMap<String, PayoffEntry>,
}

impl WitnessFile {
    pub fn new(arena: &Arena, w: &Witness) -> WitnessFile {
        let by_agent = |ps: &[Payoff]| arena.agents.iter().cloned().zip(ps.iter().map(PayoffEntry::new)).collect();
        WitnessFile {
            z: by_agent(&w.z),
            play: LassoFile::from_lasso(arena, &w.play),
            profile: arena.agents.iter().cloned().zip(w.profile.iter().map(|m| MachineFile::from_machine(arena, m))).collect(),
            epsilon: fmt_q(&w.epsilon),
            payoffs: by_agent(&w.payoffs),
        }
    }

    /// Back to a witness; payoffs are taken from the file as given.
    pub fn to_witness(&self, arena: &Arena) -> Result<Witness> {
        let per_agent = |m: &BTreeMap<String, PayoffEntry>| {
            arena
                .agents
                .iter()
                .map(|a| m.get(a).ok_or_else(|| Error::BadInput(format!("no entry for agent {a}")))?.payoff())
                .collect::<Result<Vec<Payoff>>>()
        };
        let profile = arena
            .agents
            .iter()
            .map(|a| self.profile.get(a).ok_or_else(|| Error::BadInput(format!("no machine for agent {a}")))?.to_machine(arena))
            .collect::<Result<Vec<StrategyMachine>>>()?;
        let payoffs = if self.payoffs.is_empty() { Vec::new() } else { per_agent(&self.payoffs)? };
        Ok(Witness { z: per_agent(&self.z)?, play: self.play.to_lasso(arena)?, profile, epsilon: parse_q(&self.epsilon)?, payoffs })
    }
}
