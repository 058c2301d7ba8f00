//! Tableau translation from LTL to a state-based Büchi automaton.
//!
//! Formulas are put in negation normal form (with Release), expanded into a
//! transition-based generalized Büchi automaton with one acceptance set per
//! Until subformula, then degeneralized with a counter.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::graph;
use crate::ltl::{LassoWord, Ltl};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Node {
    True,
    False,
    Lit(usize, bool),
    And(usize, usize),
    Or(usize, usize),
    Next(usize),
    Until(usize, usize),
    Release(usize, usize),
}

#[derive(Default)]
struct Pool {
    nodes: Vec<Node>,
    index: HashMap<Node, usize>,
}

impl Pool {
    fn intern(&mut self, n: Node) -> usize {
        if let Some(&i) = self.index.get(&n) {
            return i;
        }
        self.nodes.push(n.clone());
        self.index.insert(n, self.nodes.len() - 1);
        self.nodes.len() - 1
    }

    fn nnf(&mut self, f: &Ltl, neg: bool, atoms: &[String]) -> usize {
        let n = match (f, neg) {
            (Ltl::True, false) | (Ltl::False, true) => Node::True,
            (Ltl::True, true) | (Ltl::False, false) => Node::False,
            (Ltl::Atom(p), _) => match atoms.iter().position(|a| a == p) {
                Some(k) => Node::Lit(k, !neg),
                None => panic!("atom {p} not in alphabet"),
            },
            (Ltl::Not(a), _) => return self.nnf(a, !neg, atoms),
            (Ltl::And(a, b), false) | (Ltl::Or(a, b), true) => Node::And(self.nnf(a, neg, atoms), self.nnf(b, neg, atoms)),
            (Ltl::Or(a, b), false) | (Ltl::And(a, b), true) => Node::Or(self.nnf(a, neg, atoms), self.nnf(b, neg, atoms)),
            (Ltl::Implies(a, b), false) => Node::Or(self.nnf(a, true, atoms), self.nnf(b, false, atoms)),
            (Ltl::Implies(a, b), true) => Node::And(self.nnf(a, false, atoms), self.nnf(b, true, atoms)),
            (Ltl::Next(a), _) => Node::Next(self.nnf(a, neg, atoms)),
            (Ltl::Until(a, b), false) => Node::Until(self.nnf(a, false, atoms), self.nnf(b, false, atoms)),
            (Ltl::Until(a, b), true) => Node::Release(self.nnf(a, true, atoms), self.nnf(b, true, atoms)),
            (Ltl::Eventually(a), false) | (Ltl::Always(a), true) => {
                let t = self.intern(Node::True);
                Node::Until(t, self.nnf(a, neg, atoms))
            }
            (Ltl::Always(a), false) | (Ltl::Eventually(a), true) => {
                let ff = self.intern(Node::False);
                Node::Release(ff, self.nnf(a, neg, atoms))
            }
        };
        self.intern(n)
    }
}

#[derive(Debug, Clone)]
struct Cover {
    pos: u64,
    neg: u64,
    next: BTreeSet<usize>,
    pending: BTreeSet<usize>,
}

fn expand(pool: &Pool, todo: Vec<usize>, done: BTreeSet<usize>, cur: Cover, out: &mut Vec<Cover>) {
    let mut todo = todo;
    let mut done = done;
    let mut cur = cur;
    while let Some(f) = todo.pop() {
        if !done.insert(f) {
            continue;
        }
        match pool.nodes[f] {
            Node::True => {}
            Node::False => return,
            Node::Lit(k, pos) => {
                if pos {
                    cur.pos |= 1 << k;
                } else {
                    cur.neg |= 1 << k;
                }
                if cur.pos & cur.neg != 0 {
                    return;
                }
            }
            Node::And(a, b) => {
                todo.push(a);
                todo.push(b);
            }
            Node::Or(a, b) => {
                let mut t = todo.clone();
                t.push(a);
                expand(pool, t, done.clone(), cur.clone(), out);
                todo.push(b);
            }
            Node::Next(a) => {
                cur.next.insert(a);
            }
            Node::Until(a, b) => {
                let mut t = todo.clone();
                t.push(b);
                expand(pool, t, done.clone(), cur.clone(), out);
                todo.push(a);
                cur.next.insert(f);
                cur.pending.insert(f);
            }
            Node::Release(a, b) => {
                let mut t = todo.clone();
                t.push(a);
                t.push(b);
                expand(pool, t, done.clone(), cur.clone(), out);
                todo.push(b);
                cur.next.insert(f);
            }
        }
    }
    out.push(cur);
}

/// Nondeterministic Büchi automaton over letters `0..2^atoms.len()`,
/// bit `k` of a letter meaning `atoms[k]` holds.
#[derive(Debug, Clone)]
pub struct Nba {
    pub atoms: Vec<String>,
    pub initial: Vec<usize>,
    /// `trans[q][letter]` is the sorted successor list.
    pub trans: Vec<Vec<Vec<usize>>>,
    pub accepting: Vec<bool>,
}

impl Nba {
    pub fn num_states(&self) -> usize {
        self.trans.len()
    }

    pub fn num_letters(&self) -> usize {
        1 << self.atoms.len()
    }

    /// Lasso acceptance via the product with the lasso positions.
    pub fn accepts_lasso(&self, w: &LassoWord) -> bool {
        let (pre, cyc) = w.masks(&self.atoms);
        self.accepts_masks(&pre, &cyc)
    }

    pub fn accepts_masks(&self, pre: &[u64], cyc: &[u64]) -> bool {
        let p = pre.len();
        let len = p + cyc.len();
        let letter = |i: usize| if i < p { pre[i] } else { cyc[i - p] } as usize;
        let n = self.num_states();
        let id = |q: usize, i: usize| q * len + i;
        let mut adj = vec![Vec::new(); n * len];
        for q in 0..n {
            for i in 0..len {
                let j = if i + 1 < len { i + 1 } else { p };
                for &r in &self.trans[q][letter(i)] {
                    adj[id(q, i)].push(id(r, j));
                }
            }
        }
        let starts: Vec<usize> = self.initial.iter().map(|&q| id(q, 0)).collect();
        let reach = graph::reachable(&adj, &starts, None);
        graph::sccs(&adj, Some(&reach)).iter().any(|c| graph::nontrivial(&adj, c) && c.iter().any(|&v| self.accepting[v / len]))
    }

    /// Drop states that cannot reach an accepting cycle.
    fn prune(self) -> Nba {
        let n = self.num_states();
        let adj: Vec<Vec<usize>> = self
            .trans
            .iter()
            .map(|row| {
                let s: BTreeSet<usize> = row.iter().flatten().copied().collect();
                s.into_iter().collect()
            })
            .collect();
        let mut good = vec![false; n];
        for c in graph::sccs(&adj, None) {
            if graph::nontrivial(&adj, &c) && c.iter().any(|&v| self.accepting[v]) {
                for &v in &c {
                    good[v] = true;
                }
            }
        }
        let mut radj = vec![Vec::new(); n];
        for (v, succ) in adj.iter().enumerate() {
            for &u in succ {
                radj[u].push(v);
            }
        }
        let seeds: Vec<usize> = (0..n).filter(|&v| good[v]).collect();
        let live = graph::reachable(&radj, &seeds, None);
        let mut map = vec![usize::MAX; n];
        let mut k = 0;
        for v in 0..n {
            if live[v] {
                map[v] = k;
                k += 1;
            }
        }
        let trans = (0..n)
            .filter(|&v| live[v])
            .map(|v| self.trans[v].iter().map(|s| s.iter().filter(|&&u| live[u]).map(|&u| map[u]).collect()).collect())
            .collect();
        Nba {
            atoms: self.atoms,
            initial: self.initial.iter().filter(|&&q| live[q]).map(|&q| map[q]).collect(),
            trans,
            accepting: (0..n).filter(|&v| live[v]).map(|v| self.accepting[v]).collect(),
        }
    }
}

/// Translate `f` into a Büchi automaton over the given atoms.
pub fn ltl_to_nba(f: &Ltl, atoms: &[String]) -> Nba {
    assert!(atoms.len() <= 16, "too many atoms for explicit letters");
    let mut pool = Pool::default();
    let root = pool.nnf(f, false, atoms);
    let untils: Vec<usize> = (0..pool.nodes.len()).filter(|&i| matches!(pool.nodes[i], Node::Until(..))).collect();
    let k = untils.len();
    let letters = 1u64 << atoms.len();

    // generalized automaton: states are obligation sets
    let start: BTreeSet<usize> = [root].into_iter().filter(|&x| pool.nodes[x] != Node::True).collect();
    let mut gstates: Vec<BTreeSet<usize>> = vec![start];
    let mut gindex: HashMap<BTreeSet<usize>, usize> = HashMap::new();
    gindex.insert(gstates[0].clone(), 0);
    // per state: list of (pos, neg, target, accepted-until bitmask)
    let mut gedges: Vec<Vec<(u64, u64, usize, Vec<bool>)>> = Vec::new();
    let mut i = 0;
    while i < gstates.len() {
        let mut covers = Vec::new();
        let init = Cover { pos: 0, neg: 0, next: BTreeSet::new(), pending: BTreeSet::new() };
        expand(&pool, gstates[i].iter().copied().collect(), BTreeSet::new(), init, &mut covers);
        let mut edges = Vec::new();
        for mut c in covers {
            c.next.retain(|&x| pool.nodes[x] != Node::True);
            let t = match gindex.get(&c.next) {
                Some(&t) => t,
                None => {
                    gstates.push(c.next.clone());
                    gindex.insert(c.next.clone(), gstates.len() - 1);
                    gstates.len() - 1
                }
            };
            let acc = untils.iter().map(|u| !c.pending.contains(u)).collect();
            edges.push((c.pos, c.neg, t, acc));
        }
        gedges.push(edges);
        i += 1;
    }

    // degeneralize: (gstate, level) with level k meaning "all sets just seen"
    let accepting_level = if k == 0 { 0 } else { k };
    let mut index: HashMap<(usize, usize), usize> = HashMap::new();
    let mut states = vec![(0usize, 0usize)];
    index.insert((0, 0), 0);
    let mut trans: Vec<Vec<Vec<usize>>> = Vec::new();
    let mut queue: VecDeque<usize> = VecDeque::from([0]);
    while let Some(s) = queue.pop_front() {
        let (g, lvl) = states[s];
        let mut row = vec![BTreeSet::new(); letters as usize];
        for (pos, neg, t, acc) in &gedges[g] {
            let mut j = if lvl == k { 0 } else { lvl };
            while j < k && acc[j] {
                j += 1;
            }
            let key = (*t, j);
            let id = match index.get(&key) {
                Some(&id) => id,
                None => {
                    states.push(key);
                    index.insert(key, states.len() - 1);
                    queue.push_back(states.len() - 1);
                    states.len() - 1
                }
            };
            for l in 0..letters {
                if l & pos == *pos && l & neg == 0 {
                    row[l as usize].insert(id);
                }
            }
        }
        if trans.len() <= s {
            trans.resize(s + 1, Vec::new());
        }
        trans[s] = row.into_iter().map(|x| x.into_iter().collect()).collect();
    }
    let accepting = states.iter().map(|&(_, l)| l == accepting_level).collect();
    Nba { atoms: atoms.to_vec(), initial: vec![0], trans, accepting }.prune()
}
