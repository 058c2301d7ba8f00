//! Brute-force reference implementations for tests and acceptance runs.
//! Exponential by design with hard size caps; they use the data types of the
//! other modules but none of their solving routines.

use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::arena::{Arena, LexLtlGame, Payoff};
use crate::error::{Error, Result};
use crate::ltl::{eval_masks, LassoWord, Ltl};
use crate::pathfinder::MultiWeightedGraph;
use crate::rational::{fmt_q, Q};
use crate::zerosum::{ExtValue, Player, TurnBasedGame};

const MAX_VERTICES: usize = 8;
const MAX_STRATEGIES: usize = 200_000;

fn mean(ws: impl Iterator<Item = i64>) -> Q {
    let (mut s, mut n) = (0i64, 0i64);
    for w in ws {
        s += w;
        n += 1;
    }
    Q::new(s.into(), n.into())
}

/// Transitive closure by repeated squaring of a boolean matrix.
fn closure(adj: &[Vec<usize>], keep: &[bool]) -> Vec<Vec<bool>> {
    let n = adj.len();
    let mut r = vec![vec![false; n]; n];
    for u in 0..n {
        r[u][u] = true;
        if keep[u] {
            for &v in &adj[u] {
                if keep[v] {
                    r[u][v] = true;
                }
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            if r[i][k] {
                for j in 0..n {
                    if r[k][j] {
                        r[i][j] = true;
                    }
                }
            }
        }
    }
    r
}

/// All simple cycles, each listed once from its smallest vertex.
fn all_simple_cycles(adj: &[Vec<usize>], keep: &[bool]) -> Vec<Vec<usize>> {
    fn dfs(adj: &[Vec<usize>], keep: &[bool], s: usize, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let u = *path.last().unwrap();
        for &v in &adj[u] {
            if !keep[v] {
                continue;
            }
            if v == s {
                out.push(path.clone());
            } else if v > s && !path.contains(&v) {
                path.push(v);
                dfs(adj, keep, s, path, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    for s in 0..adj.len() {
        if keep[s] {
            dfs(adj, keep, s, &mut vec![s], &mut out);
        }
    }
    out
}

/// Best lexicographic payoff from every vertex of a one-player graph, for the
/// owner of all choices (`maximize`) or against it.
fn one_player_lex(adj: &[Vec<usize>], weight: &[i64], prio: &[u32], maximize: bool) -> Vec<Payoff> {
    let n = adj.len();
    let all = vec![true; n];
    let reach = closure(adj, &all);
    // the owner's favourite parity
    let wanted = if maximize { 0 } else { 1 };
    let mut favoured: Vec<Option<Q>> = vec![None; n];
    let mut plain: Vec<Option<Q>> = vec![None; n];
    let pick = |cur: &mut Option<Q>, x: Q| {
        let replace = match cur {
            None => true,
            Some(c) => (maximize && x > *c) || (!maximize && x < *c),
        };
        if replace {
            *cur = Some(x);
        }
    };
    let mut tops: Vec<u32> = prio.to_vec();
    tops.sort_unstable();
    tops.dedup();
    for &d in tops.iter().filter(|&&d| d % 2 == wanted) {
        let keep: Vec<bool> = prio.iter().map(|&p| p <= d).collect();
        let inner = closure(adj, &keep);
        for c in all_simple_cycles(adj, &keep) {
            // the cycle's component in the capped graph must reach priority d
            let hits = (0..n).any(|x| keep[x] && prio[x] == d && inner[c[0]][x] && inner[x][c[0]]);
            if !hits {
                continue;
            }
            let m = mean(c.iter().map(|&v| weight[v]));
            for v in 0..n {
                if reach[v][c[0]] {
                    pick(&mut favoured[v], m.clone());
                }
            }
        }
    }
    for c in all_simple_cycles(adj, &all) {
        let m = mean(c.iter().map(|&v| weight[v]));
        for v in 0..n {
            if reach[v][c[0]] {
                pick(&mut plain[v], m.clone());
            }
        }
    }
    (0..n)
        .map(|v| match &favoured[v] {
            Some(x) => Payoff::new(maximize, x.clone()),
            None => Payoff::new(!maximize, plain[v].clone().expect("every vertex reaches a cycle")),
        })
        .collect()
}

fn check_size(h: &TurnBasedGame, side: Player) -> Result<Vec<usize>> {
    if h.len() > MAX_VERTICES {
        return Err(Error::SizeCap(format!("oracle handles at most {MAX_VERTICES} vertices, got {}", h.len())));
    }
    let owned: Vec<usize> = (0..h.len()).filter(|&v| h.owner[v] == side).collect();
    let count = owned.iter().try_fold(1usize, |acc, &v| acc.checked_mul(h.succ[v].len()));
    match count {
        Some(c) if c <= MAX_STRATEGIES => Ok(owned),
        _ => Err(Error::SizeCap("too many memoryless strategies for the oracle".into())),
    }
}

/// Iterate over all memoryless strategies of `side`, calling `f` with the
/// induced one-player adjacency.
fn for_each_strategy(h: &TurnBasedGame, side: Player, mut f: impl FnMut(&[Vec<usize>])) -> Result<()> {
    let owned = check_size(h, side)?;
    let mut choice = vec![0usize; owned.len()];
    loop {
        let mut adj = h.succ.clone();
        for (k, &v) in owned.iter().enumerate() {
            adj[v] = vec![h.succ[v][choice[k]]];
        }
        f(&adj);
        let mut k = owned.len();
        loop {
            if k == 0 {
                return Ok(());
            }
            k -= 1;
            choice[k] += 1;
            if choice[k] < h.succ[owned[k]].len() {
                break;
            }
            choice[k] = 0;
        }
    }
}

/// Lexicographic value with the strategies of `side` restricted to memoryless
/// ones: min-max when `side` is the minimizer, max-min otherwise.
pub fn brute_lex_value(h: &TurnBasedGame, side: Player) -> Result<Vec<Payoff>> {
    let mut best: Option<Vec<Payoff>> = None;
    for_each_strategy(h, side, |adj| {
        let vals = one_player_lex(adj, &h.weight, &h.priority, side == Player::Min);
        best = Some(match best.take() {
            None => vals,
            Some(b) => b.into_iter().zip(vals).map(|(x, y)| if side == Player::Min { x.min(y) } else { x.max(y) }).collect(),
        });
    })?;
    Ok(best.unwrap())
}

/// Exact lexicographic value: the minimizer-memoryless enumeration where the
/// maximizer can secure parity, the maximizer-memoryless one elsewhere.
pub fn brute_lex_value_exact(h: &TurnBasedGame) -> Result<Vec<Payoff>> {
    let upper = brute_lex_value(h, Player::Min)?;
    let lower = brute_lex_value(h, Player::Max)?;
    Ok(upper.into_iter().zip(lower).map(|(u, l)| if u.sat { u } else { l }).collect())
}

/// Mean-payoff parity value (minus infinity when parity is lost), by the
/// minimizer-memoryless enumeration.
pub fn brute_mpp_value(h: &TurnBasedGame) -> Result<Vec<ExtValue>> {
    Ok(brute_lex_value(h, Player::Min)?.into_iter().map(|p| if p.sat { ExtValue::Fin(p.mp) } else { ExtValue::NegInf }).collect())
}

/// Mean-payoff value as min-max over memoryless strategy pairs.
pub fn brute_mean_payoff(h: &TurnBasedGame) -> Result<Vec<Q>> {
    check_size(h, Player::Max)?;
    let mut outer: Option<Vec<Q>> = None;
    for_each_strategy(h, Player::Min, |adj_min| {
        let g2 = TurnBasedGame { owner: h.owner.clone(), succ: adj_min.to_vec(), weight: h.weight.clone(), priority: h.priority.clone() };
        let mut inner: Option<Vec<Q>> = None;
        for_each_strategy(&g2, Player::Max, |adj| {
            let vals: Vec<Q> = (0..adj.len())
                .map(|v| {
                    // follow the unique successors until a vertex repeats
                    let mut seen = vec![usize::MAX; adj.len()];
                    let mut path = Vec::new();
                    let mut x = v;
                    while seen[x] == usize::MAX {
                        seen[x] = path.len();
                        path.push(x);
                        x = adj[x][0];
                    }
                    mean(path[seen[x]..].iter().map(|&u| h.weight[u]))
                })
                .collect();
            inner = Some(match inner.take() {
                None => vals,
                Some(b) => b.into_iter().zip(vals).map(|(x, y)| x.max(y)).collect(),
            });
        })
        .expect("size already checked");
        let vals = inner.unwrap();
        outer = Some(match outer.take() {
            None => vals,
            Some(b) => b.into_iter().zip(vals).map(|(x, y)| x.min(y)).collect(),
        });
    })?;
    Ok(outer.unwrap())
}

/// Closed-walk search over `(vertex, per-index maxima, per-index sums)` with
/// dominated sum vectors pruned; `accept` judges a completed walk.
fn closed_walk(
    g: &MultiWeightedGraph,
    start: usize,
    weights: &[Vec<i64>],
    maxlen: usize,
    keep: &[bool],
    accept: &dyn Fn(&[u32], &[i64]) -> bool,
) -> Option<Vec<usize>> {
    type Key = (usize, Vec<u32>);
    let k = g.num_indices();
    let init_max: Vec<u32> = (0..k).map(|a| g.priorities[a][start]).collect();
    let init_sum: Vec<i64> = (0..k).map(|a| weights[a][start]).collect();
    let mut layer: HashMap<Key, Vec<(Vec<i64>, Vec<usize>)>> = HashMap::new();
    layer.insert((start, init_max), vec![(init_sum, vec![start])]);
    for _ in 0..maxlen {
        let mut next: HashMap<Key, Vec<(Vec<i64>, Vec<usize>)>> = HashMap::new();
        let mut keys: Vec<&Key> = layer.keys().collect();
        keys.sort();
        for key in keys {
            let (u, maxes) = key;
            for (sums, path) in &layer[key] {
                for &v in &g.adj[*u] {
                    if v == start && accept(maxes, sums) {
                        return Some(path.clone());
                    }
                    if !keep[v] {
                        continue;
                    }
                    let m2: Vec<u32> = (0..k).map(|a| maxes[a].max(g.priorities[a][v])).collect();
                    let s2: Vec<i64> = (0..k).map(|a| sums[a] + weights[a][v]).collect();
                    let entry = next.entry((v, m2)).or_default();
                    if entry.iter().any(|(s, _)| s.iter().zip(&s2).all(|(x, y)| x >= y)) {
                        continue;
                    }
                    entry.retain(|(s, _)| !s.iter().zip(&s2).all(|(x, y)| y >= x));
                    let mut p = path.clone();
                    p.push(v);
                    entry.push((s2, p));
                }
            }
        }
        layer = next;
    }
    None
}

/// A cycle (closed walk that may repeat vertices, at most `maxlen` steps) with
/// top priority exactly `targets[a]` and positive weight sum for every index.
pub fn brute_eta_cycle(g: &MultiWeightedGraph, targets: &[u32], maxlen: usize) -> Result<Option<Vec<usize>>> {
    if g.num_vertices() > 6 || maxlen > 12 {
        return Err(Error::SizeCap("eta-cycle oracle handles at most 6 vertices and length 12".into()));
    }
    let keep: Vec<bool> = (0..g.num_vertices()).map(|v| (0..g.num_indices()).all(|a| g.priorities[a][v] <= targets[a])).collect();
    let accept = |m: &[u32], s: &[i64]| m == targets && s.iter().all(|&x| x > 0);
    for v in (0..g.num_vertices()).filter(|&v| keep[v]) {
        if let Some(c) = closed_walk(g, v, &g.weights, maxlen, &keep, &accept) {
            return Ok(Some(c));
        }
    }
    Ok(None)
}

/// Lasso from the start vertex whose cycle (at most `maxlen` steps) beats `f`
/// for every index.
pub fn brute_threshold_lasso(g: &MultiWeightedGraph, f: &[Payoff], maxlen: usize) -> Result<Option<Vec<usize>>> {
    if g.num_vertices() > 6 || maxlen > 12 {
        return Err(Error::SizeCap("lasso oracle handles at most 6 vertices and length 12".into()));
    }
    let n = g.num_vertices();
    let reach = closure(&g.adj, &vec![true; n]);
    // scale each index so that the threshold becomes zero
    let weights: Vec<Vec<i64>> = (0..g.num_indices())
        .map(|a| {
            let t = &f[a].mp;
            let den: i64 = t.denom().try_into().expect("threshold denominator");
            let num: i64 = t.numer().try_into().expect("threshold numerator");
            g.weights[a].iter().map(|&w| w * den - num).collect()
        })
        .collect();
    let sats: Vec<bool> = f.iter().map(|p| p.sat).collect();
    let accept = |m: &[u32], s: &[i64]| {
        (0..m.len()).all(|a| {
            let even = m[a].is_multiple_of(2);
            if sats[a] {
                even && s[a] > 0
            } else {
                even || s[a] > 0
            }
        })
    };
    let keep = vec![true; n];
    for v in (0..n).filter(|&v| reach[g.start][v]) {
        if let Some(c) = closed_walk(g, v, &weights, maxlen, &keep, &accept) {
            return Ok(Some(c));
        }
    }
    Ok(None)
}

/// Positions needed by the unrolling evaluator: nesting depth of temporal
/// operators plus one, times the lasso length.
pub fn unroll_bound(f: &Ltl, w: &LassoWord) -> usize {
    f.size() * (w.prefix.len() + w.cycle.len())
}

/// Evaluation by unrolling `prefix . cycle^omega` to `depth` letters: eventual
/// and until operators search a window of one lasso length.
pub fn bounded_unroll_eval(f: &Ltl, w: &LassoWord, depth: usize) -> Result<bool> {
    let p = w.prefix.len();
    let c = w.cycle.len();
    let letter = |i: usize| if i < p { &w.prefix[i] } else { &w.cycle[(i - p) % c] };
    fn go<'a>(
        f: &Ltl,
        i: usize,
        win: usize,
        depth: usize,
        letter: &dyn Fn(usize) -> &'a std::collections::BTreeSet<String>,
    ) -> Result<bool> {
        if i >= depth {
            return Err(Error::BadInput(format!("unrolling depth {depth} too small")));
        }
        let ev = |g: &Ltl, j: usize| go(g, j, win, depth, letter);
        Ok(match f {
            Ltl::True => true,
            Ltl::False => false,
            Ltl::Atom(a) => letter(i).contains(a),
            Ltl::Not(g) => !ev(g, i)?,
            Ltl::And(a, b) => ev(a, i)? && ev(b, i)?,
            Ltl::Or(a, b) => ev(a, i)? || ev(b, i)?,
            Ltl::Implies(a, b) => !ev(a, i)? || ev(b, i)?,
            Ltl::Next(g) => ev(g, i + 1)?,
            Ltl::Eventually(g) => {
                let mut r = false;
                for j in i..i + win {
                    if ev(g, j)? {
                        r = true;
                        break;
                    }
                }
                r
            }
            Ltl::Always(g) => {
                let mut r = true;
                for j in i..i + win {
                    if !ev(g, j)? {
                        r = false;
                        break;
                    }
                }
                r
            }
            Ltl::Until(a, b) => {
                let mut r = false;
                for j in i..i + win {
                    if ev(b, j)? {
                        r = true;
                        break;
                    }
                    if !ev(a, j)? {
                        break;
                    }
                }
                r
            }
        })
    }
    go(f, 0, p + c, depth, &letter)
}

/// One row of the negation demonstration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NegationRow {
    pub n: usize,
    pub a: u64,
    pub b: u64,
    pub avg_a: Q,
    pub avg_b: Q,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NegationReport {
    pub rows: Vec<NegationRow>,
}

impl fmt::Display for NegationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "two-state arena: s1 weight 0, s2 weight 1; path in s2 on (a_n, b_n]")?;
        for r in &self.rows {
            writeln!(f, "n={} a_n={} b_n={} avg(a_n)={} avg(b_n)={}", r.n, r.a, r.b, fmt_q(&r.avg_a), fmt_q(&r.avg_b))?;
        }
        writeln!(f, "liminf of averages <= 1/4 while limsup >= 3/4, so -mp(k) >= -1/4 but mp(-k) <= -3/4")
    }
}

/// The non-periodic path bouncing between two states with stretches growing
/// threefold: averages at `a_n` stay at or below 1/4 and at `b_n` at or above
/// 3/4, so negating weights does not commute with the mean payoff.
pub fn negation_demo() -> Result<NegationReport> {
    let mut a = vec![0u64];
    let mut b = vec![3u64];
    for _ in 0..5 {
        let an = 3 * b.last().unwrap() + 2;
        a.push(an);
        b.push(3 * an + 2);
    }
    let end = *b.last().unwrap() as usize;
    let mut prefix_sum = Vec::with_capacity(end + 2);
    let mut s = 0u64;
    prefix_sum.push(0);
    for k in 0..=end as u64 {
        if (0..a.len()).any(|i| a[i] < k && k <= b[i]) {
            s += 1;
        }
        prefix_sum.push(s);
    }
    // average over positions 0..=k
    let avg = |k: u64| Q::new((prefix_sum[k as usize + 1] as i64).into(), (k as i64 + 1).into());
    let quarter = Q::new(1.into(), 4.into());
    let three_quarters = Q::new(3.into(), 4.into());
    let mut rows = Vec::new();
    for n in 0..a.len() {
        let row = NegationRow { n, a: a[n], b: b[n], avg_a: avg(a[n]), avg_b: avg(b[n]) };
        if row.avg_a > quarter || row.avg_b < three_quarters {
            return Err(Error::Invalid(format!("negation bound fails at n = {n}")));
        }
        rows.push(row);
    }
    Ok(NegationReport { rows })
}

/// Moore machine over joint actions for the finite-state brute force.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SmallMachine {
    pub output: Vec<usize>,
    /// `update[m][decision]`, initial memory 0.
    pub update: Vec<Vec<usize>>,
}

fn machines(actions: usize, decisions: usize, max_mem: usize) -> Vec<SmallMachine> {
    let mut out = Vec::new();
    for m in 1..=max_mem {
        let cells = m * decisions;
        let outputs = actions.pow(m as u32);
        let updates = m.pow(cells as u32);
        for o in 0..outputs {
            let output: Vec<usize> = (0..m).map(|i| o / actions.pow(i as u32) % actions).collect();
            for u in 0..updates {
                let update: Vec<Vec<usize>> =
                    (0..m).map(|i| (0..decisions).map(|d| u / m.pow((i * decisions + d) as u32) % m).collect()).collect();
                out.push(SmallMachine { output: output.clone(), update });
            }
        }
    }
    out
}

fn play_of(arena: &Arena, ms: &[&SmallMachine]) -> (Vec<usize>, Vec<usize>) {
    let mut seen: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
    let mut states = Vec::new();
    let mut s = arena.initial;
    let mut mem = vec![0usize; ms.len()];
    loop {
        if let Some(&i) = seen.get(&(s, mem.clone())) {
            let cycle = states.split_off(i);
            return (states, cycle);
        }
        seen.insert((s, mem.clone()), states.len());
        states.push(s);
        let acts: Vec<usize> = ms.iter().zip(&mem).map(|(m, &x)| m.output[x]).collect();
        let d = arena.encode(&acts);
        for (x, m) in mem.iter_mut().zip(ms) {
            *x = m.update[*x][d];
        }
        s = arena.next(s, d);
    }
}

/// Whether `agent` can satisfy its goal against the fixed machine of the other
/// agent, by lasso enumeration in the product up to `max_len` steps.
fn can_win(
    g: &LexLtlGame,
    agent: usize,
    other: &SmallMachine,
    max_len: usize,
    cache: &mut HashMap<Vec<(usize, Vec<usize>)>, bool>,
) -> bool {
    let arena = &g.arena;
    let o = 1 - agent;
    // product nodes (state, other memory), numbered in discovery order
    let mut index: HashMap<(usize, usize), usize> = HashMap::new();
    let mut nodes = vec![(arena.initial, 0usize)];
    index.insert(nodes[0], 0);
    let mut succ: Vec<(usize, Vec<usize>)> = Vec::new();
    let mut i = 0;
    while i < nodes.len() {
        let (s, m) = nodes[i];
        let mut out = Vec::new();
        for x in 0..arena.num_actions() {
            let mut acts = vec![0; 2];
            acts[agent] = x;
            acts[o] = other.output[m];
            let d = arena.encode(&acts);
            let key = (arena.next(s, d), other.update[m][d]);
            let j = *index.entry(key).or_insert_with(|| {
                nodes.push(key);
                nodes.len() - 1
            });
            out.push(j);
        }
        succ.push((g.labels[s] as usize, out));
        i += 1;
    }
    if let Some(&r) = cache.get(&succ) {
        return r;
    }
    let mut tried: HashSet<(Vec<u64>, Vec<u64>)> = HashSet::new();
    let mut found = false;
    let mut path = vec![0usize];
    fn explore(
        g: &LexLtlGame,
        agent: usize,
        succ: &[(usize, Vec<usize>)],
        path: &mut Vec<usize>,
        max_len: usize,
        tried: &mut HashSet<(Vec<u64>, Vec<u64>)>,
        found: &mut bool,
    ) {
        if *found {
            return;
        }
        let u = *path.last().unwrap();
        for &v in &succ[u].1 {
            for j in 0..path.len() {
                if path[j] == v {
                    let pre: Vec<u64> = path[..j].iter().map(|&x| succ[x].0 as u64).collect();
                    let cyc: Vec<u64> = path[j..].iter().map(|&x| succ[x].0 as u64).collect();
                    if tried.insert((pre.clone(), cyc.clone())) && eval_masks(&g.goals[agent], &g.atoms, &pre, &cyc) {
                        *found = true;
                        return;
                    }
                }
            }
            if path.len() < max_len {
                path.push(v);
                explore(g, agent, succ, path, max_len, tried, found);
                path.pop();
            }
        }
    }
    explore(g, agent, &succ, &mut path, max_len, &mut tried, &mut found);
    cache.insert(succ, found);
    found
}

/// Finite-state strict epsilon NE search for two-agent zero-weight LTL games
/// with `epsilon > 0`: profiles of machines with at most `max_mem` memory
/// states, deviations by lassos of at most `max_len` steps. Payoffs are then
/// `(sat, 0)`, so a profile is an equilibrium iff no losing agent can win.
pub fn brute_fsne_ltl(g: &LexLtlGame, max_mem: usize, max_len: usize) -> Result<Option<Vec<SmallMachine>>> {
    let arena = &g.arena;
    if arena.num_agents() != 2 || g.weights.iter().flatten().any(|&w| w != 0) {
        return Err(Error::BadInput("finite-state NE oracle needs two agents and zero weights".into()));
    }
    if arena.num_states() > 4 || arena.num_actions() > 2 || max_mem > 2 {
        return Err(Error::SizeCap("finite-state NE oracle handles 4 states, 2 actions, 2 memory states".into()));
    }
    let all = machines(arena.num_actions(), arena.num_decisions(), max_mem);
    let mut win_cache = [HashMap::new(), HashMap::new()];
    let mut can: Vec<HashMap<usize, bool>> = vec![HashMap::new(), HashMap::new()];
    let mut sat_cache: HashMap<(Vec<usize>, Vec<usize>), Vec<bool>> = HashMap::new();
    for (i0, m0) in all.iter().enumerate() {
        for (i1, m1) in all.iter().enumerate() {
            let (pre, cyc) = play_of(arena, &[m0, m1]);
            let sats = sat_cache
                .entry((pre.clone(), cyc.clone()))
                .or_insert_with(|| {
                    let p: Vec<u64> = pre.iter().map(|&s| g.labels[s]).collect();
                    let c: Vec<u64> = cyc.iter().map(|&s| g.labels[s]).collect();
                    g.goals.iter().map(|f| eval_masks(f, &g.atoms, &p, &c)).collect()
                })
                .clone();
            let ok = (0..2).all(|a| {
                if sats[a] {
                    return true;
                }
                let (other_idx, other) = if a == 0 { (i1, m1) } else { (i0, m0) };
                if let Some(&r) = can[a].get(&other_idx) {
                    return !r;
                }
                let r = can_win(g, a, other, max_len, &mut win_cache[a]);
                can[a].insert(other_idx, r);
                !r
            });
            if ok {
                return Ok(Some(vec![m0.clone(), m1.clone()]));
            }
        }
    }
    Ok(None)
}

/// Supremum lexicographic payoff per vertex when one agent controls every move.
pub fn one_player_best(adj: &[Vec<usize>], weight: &[i64], prio: &[u32]) -> Vec<Payoff> {
    one_player_lex(adj, weight, prio, true)
}
