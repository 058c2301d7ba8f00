//! Safra-Piterman determinization into max-parity automata.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write;

use super::nba::Nba;
use crate::error::{Error, Result};
use crate::graph;
use crate::ltl::LassoWord;

pub const DEFAULT_DPW_BUDGET: usize = 200_000;

/// Deterministic max-parity automaton. Letters are bitmasks over `atoms`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dpw {
    pub atoms: Vec<String>,
    pub initial: usize,
    /// `trans[q][letter]`
    pub trans: Vec<Vec<usize>>,
    pub priority: Vec<u32>,
}

impl Dpw {
    pub fn num_states(&self) -> usize {
        self.trans.len()
    }

    /// Number of distinct priorities in use.
    pub fn num_priorities(&self) -> usize {
        let mut p = self.priority.clone();
        p.sort_unstable();
        p.dedup();
        p.len()
    }

    pub fn step(&self, q: usize, letter: u64) -> usize {
        self.trans[q][letter as usize]
    }

    pub fn accepts_lasso(&self, w: &LassoWord) -> bool {
        let (pre, cyc) = w.masks(&self.atoms);
        self.accepts_masks(&pre, &cyc)
    }

    /// Runs the prefix, pumps the cycle until the state at the cycle start repeats,
    /// then checks the largest priority seen on the repeating part.
    pub fn accepts_masks(&self, pre: &[u64], cyc: &[u64]) -> bool {
        let mut q = self.initial;
        for &l in pre {
            q = self.step(q, l);
        }
        let mut starts: HashMap<usize, usize> = HashMap::new();
        let mut rounds: Vec<u32> = Vec::new();
        loop {
            if let Some(&k) = starts.get(&q) {
                let top = rounds[k..].iter().copied().max().unwrap();
                return top % 2 == 0;
            }
            starts.insert(q, rounds.len());
            let mut top = 0;
            for &l in cyc {
                top = top.max(self.priority[q]);
                q = self.step(q, l);
            }
            rounds.push(top);
        }
    }

    /// Text listing, one transition per line: `state priority ; letter -> state`.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "atoms {}", self.atoms.join(" "));
        let _ = writeln!(s, "initial {}", self.initial);
        for (q, row) in self.trans.iter().enumerate() {
            for (l, &r) in row.iter().enumerate() {
                let _ = writeln!(s, "{q} {} ; {l:0width$b} -> {r}", self.priority[q], width = self.atoms.len().max(1));
            }
        }
        s
    }

    /// Repeated bisimulation quotient and per-SCC priority compression.
    /// Shrinks the automaton but does not minimize it.
    pub fn reduce(&self) -> Dpw {
        let mut cur = self.quotient();
        loop {
            let next = cur.normalize_sccs().quotient();
            if next.num_states() == cur.num_states() {
                return next;
            }
            cur = next;
        }
    }

    /// Acceptance only looks at priorities on cycles, and every cycle stays in one
    /// SCC: compress each SCC on its own and give transient states priority 0.
    fn normalize_sccs(&self) -> Dpw {
        let adj: Vec<Vec<usize>> = self.trans.clone();
        let mut priority = self.priority.clone();
        for comp in graph::sccs(&adj, None) {
            if !graph::nontrivial(&adj, &comp) {
                priority[comp[0]] = 0;
                continue;
            }
            let local: Vec<u32> = comp.iter().map(|&q| self.priority[q]).collect();
            for (&q, p) in comp.iter().zip(compress(&local)) {
                priority[q] = p;
            }
        }
        Dpw { priority, ..self.clone() }
    }

    fn quotient(&self) -> Dpw {
        let n = self.num_states();
        let mut class: Vec<usize> = {
            let mut ids: HashMap<u32, usize> = HashMap::new();
            self.priority
                .iter()
                .map(|p| {
                    let k = ids.len();
                    *ids.entry(*p).or_insert(k)
                })
                .collect()
        };
        let mut count = class.iter().max().map_or(0, |m| m + 1);
        loop {
            let mut ids: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
            let next: Vec<usize> = (0..n)
                .map(|q| {
                    let sig = (class[q], self.trans[q].iter().map(|&r| class[r]).collect());
                    let k = ids.len();
                    *ids.entry(sig).or_insert(k)
                })
                .collect();
            let c = ids.len();
            class = next;
            if c == count {
                break;
            }
            count = c;
        }
        // renumber classes in BFS order from the initial state
        let mut order = vec![usize::MAX; count];
        let mut rep = Vec::new();
        let mut queue = VecDeque::from([self.initial]);
        order[class[self.initial]] = 0;
        rep.push(self.initial);
        while let Some(q) = queue.pop_front() {
            for &r in &self.trans[q] {
                if order[class[r]] == usize::MAX {
                    order[class[r]] = rep.len();
                    rep.push(r);
                    queue.push_back(r);
                }
            }
        }
        let trans = rep.iter().map(|&q| self.trans[q].iter().map(|&r| order[class[r]]).collect()).collect();
        let priority = compress(&rep.iter().map(|&q| self.priority[q]).collect::<Vec<_>>());
        Dpw { atoms: self.atoms.clone(), initial: 0, trans, priority }
    }
}

/// Order- and parity-preserving renaming of priorities onto the smallest values.
pub fn compress(prios: &[u32]) -> Vec<u32> {
    let mut distinct = prios.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    let mut map = HashMap::new();
    let mut cur: Option<u32> = None;
    for p in distinct {
        let v = match cur {
            None => p % 2,
            Some(c) => {
                if (c + 1) % 2 == p % 2 {
                    c + 1
                } else {
                    c + 2
                }
            }
        };
        map.insert(p, v);
        cur = Some(v);
    }
    prios.iter().map(|p| map[p]).collect()
}

type Set = Vec<u64>;

fn set_empty(s: &Set) -> bool {
    s.iter().all(|&w| w == 0)
}

fn set_union(a: &mut Set, b: &Set) {
    for (x, y) in a.iter_mut().zip(b) {
        *x |= y;
    }
}

fn set_minus(a: &mut Set, b: &Set) {
    for (x, y) in a.iter_mut().zip(b) {
        *x &= !y;
    }
}

fn set_and(a: &Set, b: &Set) -> Set {
    a.iter().zip(b).map(|(x, y)| x & y).collect()
}

/// Canonical Safra tree: preorder (older children first) list of
/// `(name, depth, label)`. Empty means the rejecting sink.
type Tree = Vec<(u32, u32, Set)>;

struct Work {
    name: u32,
    label: Set,
    children: Vec<usize>,
    alive: bool,
}

struct Determinizer<'a> {
    nba: &'a Nba,
    words: usize,
    accepting: Set,
    /// `post[q][letter]`
    post: Vec<Vec<Set>>,
}

impl Determinizer<'_> {
    fn image(&self, s: &Set, letter: usize) -> Set {
        let mut out = vec![0; self.words];
        for (wi, &w) in s.iter().enumerate() {
            let mut w = w;
            while w != 0 {
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                set_union(&mut out, &self.post[wi * 64 + b][letter]);
            }
        }
        out
    }

    /// Successor tree and the min-parity priority of the step.
    fn step(&self, tree: &Tree, letter: usize) -> (Tree, u32) {
        let n = self.nba.num_states() as u32;
        let neutral = 2 * n + 1;
        if tree.is_empty() {
            return (Vec::new(), neutral);
        }
        let old = tree.len() as u32;
        let mut nodes: Vec<Work> = Vec::with_capacity(tree.len() * 2);
        let mut path: Vec<usize> = Vec::new();
        for (name, depth, label) in tree {
            path.truncate(*depth as usize);
            let id = nodes.len();
            nodes.push(Work { name: *name, label: label.clone(), children: Vec::new(), alive: true });
            if let Some(&p) = path.last() {
                nodes[p].children.push(id);
            }
            path.push(id);
        }
        for v in nodes.iter_mut() {
            v.label = self.image(&v.label, letter);
        }
        let mut fresh = old + 1;
        for v in 0..tree.len() {
            let inter = set_and(&nodes[v].label, &self.accepting);
            if !set_empty(&inter) {
                let id = nodes.len();
                nodes.push(Work { name: fresh, label: inter, children: Vec::new(), alive: true });
                nodes[v].children.push(id);
                fresh += 1;
            }
        }
        self.hmerge(&mut nodes, 0, &vec![0; self.words]);
        let mut bad = u32::MAX;
        self.remove_empty(&mut nodes, 0, old, &mut bad);
        let mut good = u32::MAX;
        if nodes[0].alive {
            self.vmerge(&mut nodes, 0, old, &mut good, &mut bad);
        }
        let prio = if good < bad {
            2 * good
        } else if bad != u32::MAX {
            2 * bad - 1
        } else {
            neutral
        };
        if !nodes[0].alive {
            return (Vec::new(), prio);
        }
        let mut names: Vec<u32> = nodes.iter().filter(|v| v.alive).map(|v| v.name).collect();
        names.sort_unstable();
        let rank: HashMap<u32, u32> = names.iter().enumerate().map(|(i, &x)| (x, i as u32 + 1)).collect();
        let mut out = Vec::new();
        let mut stack = vec![(0usize, 0u32)];
        while let Some((v, d)) = stack.pop() {
            out.push((rank[&nodes[v].name], d, nodes[v].label.clone()));
            for &c in nodes[v].children.iter().rev() {
                if nodes[c].alive {
                    stack.push((c, d + 1));
                }
            }
        }
        (out, prio)
    }

    fn hmerge(&self, nodes: &mut [Work], v: usize, forbid: &Set) {
        set_minus(&mut nodes[v].label, forbid);
        let mut acc = forbid.clone();
        let children = nodes[v].children.clone();
        for c in children {
            self.hmerge(nodes, c, &acc);
            set_union(&mut acc, &nodes[c].label);
        }
    }

    fn kill(&self, nodes: &mut [Work], v: usize, old: u32, bad: &mut u32) {
        if !nodes[v].alive {
            return;
        }
        nodes[v].alive = false;
        if nodes[v].name <= old {
            *bad = (*bad).min(nodes[v].name);
        }
        for c in nodes[v].children.clone() {
            self.kill(nodes, c, old, bad);
        }
    }

    fn remove_empty(&self, nodes: &mut [Work], v: usize, old: u32, bad: &mut u32) {
        if set_empty(&nodes[v].label) {
            self.kill(nodes, v, old, bad);
            return;
        }
        for c in nodes[v].children.clone() {
            self.remove_empty(nodes, c, old, bad);
        }
    }

    fn vmerge(&self, nodes: &mut [Work], v: usize, old: u32, good: &mut u32, bad: &mut u32) {
        let children: Vec<usize> = nodes[v].children.iter().copied().filter(|&c| nodes[c].alive).collect();
        if children.is_empty() {
            return;
        }
        let mut union = vec![0; self.words];
        for &c in &children {
            set_union(&mut union, &nodes[c].label);
        }
        if union == nodes[v].label {
            for c in children {
                self.kill(nodes, c, old, bad);
            }
            *good = (*good).min(nodes[v].name);
        } else {
            for c in children {
                self.vmerge(nodes, c, old, good, bad);
            }
        }
    }
}

/// Safra-Piterman construction. Fails once more than `budget` states are built.
pub fn determinize_with_budget(nba: &Nba, budget: usize) -> Result<Dpw> {
    let n = nba.num_states();
    let words = n.div_ceil(64).max(1);
    let letters = nba.num_letters();
    let to_set = |qs: &[usize]| {
        let mut s = vec![0u64; words];
        for &q in qs {
            s[q / 64] |= 1 << (q % 64);
        }
        s
    };
    let accepting: Vec<usize> = (0..n).filter(|&q| nba.accepting[q]).collect();
    let det = Determinizer {
        nba,
        words,
        accepting: to_set(&accepting),
        post: nba.trans.iter().map(|row| row.iter().map(|s| to_set(s)).collect()).collect(),
    };
    let max_form = |p: u32| 2 * n as u32 + 2 - p;
    let init_tree: Tree = if nba.initial.is_empty() { Vec::new() } else { vec![(1, 0, to_set(&nba.initial))] };
    let mut index: HashMap<(Tree, u32), usize> = HashMap::new();
    let mut states: Vec<(Tree, u32)> = vec![(init_tree.clone(), 1)];
    index.insert((init_tree, 1), 0);
    let mut trans: Vec<Vec<usize>> = Vec::new();
    let mut succ_cache: HashMap<Tree, Vec<(Tree, u32)>> = HashMap::new();
    let mut i = 0;
    while i < states.len() {
        let tree = states[i].0.clone();
        let succs = succ_cache.entry(tree.clone()).or_insert_with(|| (0..letters).map(|l| det.step(&tree, l)).collect()).clone();
        let mut row = Vec::with_capacity(letters);
        for (t, p) in succs {
            let p = if t.is_empty() { 1 } else { max_form(p) };
            let key = (t, p);
            let id = match index.get(&key) {
                Some(&id) => id,
                None => {
                    if states.len() >= budget {
                        return Err(Error::Budget(format!("more than {budget} automaton states")));
                    }
                    states.push(key.clone());
                    index.insert(key, states.len() - 1);
                    states.len() - 1
                }
            };
            row.push(id);
        }
        trans.push(row);
        i += 1;
    }
    let priority = states.iter().map(|s| s.1).collect();
    Ok(Dpw { atoms: nba.atoms.clone(), initial: 0, trans, priority })
}

pub fn determinize(nba: &Nba) -> Dpw {
    determinize_with_budget(nba, usize::MAX).expect("unbounded determinization")
}
