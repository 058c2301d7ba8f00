//! Ultimately periodic paths beating per-index lexicographic thresholds in
//! multi-weighted graphs. The edge-flow program decides multicycle
//! feasibility on small supports; the lasso search works per strongly
//! connected component with mean-cycle pricing and Euler-circuit extraction.

pub mod simplex;

use std::cmp::Ordering;
use std::collections::{BTreeMap, VecDeque};

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::arena::{Decision, LexParityGame, Payoff};
use crate::graph;
use crate::rational::{lcm_denoms, Q};
use crate::zerosum::PunishTable;
use simplex::{integer_scaling, Lp, LpResult, Rel};

/// Directed graph with per-index vertex weights and priorities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiWeightedGraph {
    pub adj: Vec<Vec<usize>>,
    /// `weights[a][v]`
    pub weights: Vec<Vec<i64>>,
    /// `priorities[a][v]`
    pub priorities: Vec<Vec<u32>>,
    pub start: usize,
}

impl MultiWeightedGraph {
    pub fn num_vertices(&self) -> usize {
        self.adj.len()
    }

    pub fn num_indices(&self) -> usize {
        self.weights.len()
    }

    pub fn edges(&self, mask: &[bool]) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (u, succ) in self.adj.iter().enumerate() {
            if mask[u] {
                out.extend(succ.iter().filter(|&&v| mask[v]).map(|&v| (u, v)));
            }
        }
        out
    }

    /// Payoff of index `a` on the periodic part `cycle`.
    pub fn cycle_payoff(&self, a: usize, cycle: &[usize]) -> Payoff {
        let top = cycle.iter().map(|&v| self.priorities[a][v]).max().unwrap();
        Payoff::new(top % 2 == 0, graph::cycle_mean(cycle.iter().map(|&v| self.weights[a][v])))
    }
}

/// Per-index requirement on a cycle: top priority exactly `target` and mean
/// strictly above `threshold`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Demand {
    pub target: Vec<u32>,
    pub threshold: Vec<Q>,
}

/// Edge flow satisfying the multicycle constraints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowAssignment {
    pub edges: Vec<(usize, usize)>,
    pub flow: Vec<Q>,
}

impl FlowAssignment {
    pub fn support(&self) -> Vec<(usize, usize)> {
        self.edges.iter().zip(&self.flow).filter(|(_, x)| x.is_positive()).map(|(e, _)| *e).collect()
    }

    /// Pointwise sum of two flows over the same edge list.
    pub fn merge(&self, other: &FlowAssignment) -> FlowAssignment {
        assert_eq!(self.edges, other.edges);
        FlowAssignment { edges: self.edges.clone(), flow: self.flow.iter().zip(&other.flow).map(|(x, y)| x + y).collect() }
    }

    pub fn scale(&self, k: &Q) -> FlowAssignment {
        FlowAssignment { edges: self.edges.clone(), flow: self.flow.iter().map(|x| x * k).collect() }
    }

    /// Whether the flow meets the balance, coverage, strict positivity and
    /// top-priority constraints for `demand` in `g`.
    pub fn satisfies(&self, g: &MultiWeightedGraph, demand: &Demand) -> bool {
        let n = g.num_vertices();
        if self.flow.iter().any(|x| x.is_negative()) {
            return false;
        }
        let total: Q = self.flow.iter().sum();
        if total < Q::from_integer(1.into()) {
            return false;
        }
        let mut balance = vec![Q::zero(); n];
        for (&(u, v), x) in self.edges.iter().zip(&self.flow) {
            balance[u] -= x;
            balance[v] += x;
        }
        if balance.iter().any(|b| !b.is_zero()) {
            return false;
        }
        (0..g.num_indices()).all(|a| {
            let sum: Q = self
                .edges
                .iter()
                .zip(&self.flow)
                .map(|(&(u, _), x)| x * (Q::from_integer(g.weights[a][u].into()) - &demand.threshold[a]))
                .sum();
            let hit: Q = self
                .edges
                .iter()
                .zip(&self.flow)
                .filter(|((u, _), _)| g.priorities[a][*u] == demand.target[a])
                .map(|(_, x)| x.clone())
                .sum();
            let below = self.edges.iter().zip(&self.flow).all(|((u, _), x)| x.is_zero() || g.priorities[a][*u] <= demand.target[a]);
            sum.is_positive() && hit >= Q::from_integer(1.into()) && below
        })
    }
}

/// `w_a(v) - threshold_a`, scaled per index to integers.
fn normalized_weights(g: &MultiWeightedGraph, demand: &Demand) -> Vec<Vec<i64>> {
    (0..g.num_indices())
        .map(|a| {
            let t = &demand.threshold[a];
            let (num, den) = (t.numer().clone(), t.denom().clone());
            g.weights[a].iter().map(|&w| (BigInt::from(w) * &den - &num).to_i64().expect("normalized weight out of range")).collect()
        })
        .collect()
}

fn allowed_vertices(g: &MultiWeightedGraph, mask: &[bool], demand: &Demand) -> Vec<bool> {
    (0..g.num_vertices()).map(|v| mask[v] && (0..g.num_indices()).all(|a| g.priorities[a][v] <= demand.target[a])).collect()
}

/// Balance, coverage and top-priority rows shared by both programs.
fn base_lp(g: &MultiWeightedGraph, edges: &[(usize, usize)], demand: &Demand, extra_vars: usize) -> Lp {
    let m = edges.len();
    let mut lp = Lp::new(m + extra_vars);
    let mut balance: BTreeMap<usize, Vec<(usize, i64)>> = BTreeMap::new();
    for (i, &(u, v)) in edges.iter().enumerate() {
        if u != v {
            balance.entry(u).or_default().push((i, -1));
            balance.entry(v).or_default().push((i, 1));
        }
    }
    for (_, row) in balance {
        lp.add(row, Rel::Eq, 0);
    }
    lp.add((0..m).map(|i| (i, 1)).collect(), Rel::Ge, 1);
    for a in 0..g.num_indices() {
        let row: Vec<(usize, i64)> =
            edges.iter().enumerate().filter(|(_, &(u, _))| g.priorities[a][u] == demand.target[a]).map(|(i, _)| (i, 1)).collect();
        lp.add(row, Rel::Ge, 1);
    }
    lp
}

/// Flow with every index sum strictly positive, if one exists.
fn strict_flow(g: &MultiWeightedGraph, edges: &[(usize, usize)], w: &[Vec<i64>], demand: &Demand) -> Option<Vec<Q>> {
    let m = edges.len();
    if m == 0 {
        return None;
    }
    let mut lp = base_lp(g, edges, demand, 1);
    for wa in w {
        let mut row: Vec<(usize, i64)> = edges.iter().enumerate().map(|(i, &(u, _))| (i, wa[u])).collect();
        row.push((m, -1));
        lp.add(row, Rel::Ge, 0);
    }
    lp.add(vec![(m, 1)], Rel::Le, 1);
    lp.objective = vec![(m, 1)];
    match simplex::solve(&lp) {
        LpResult::Optimal { value, mut x } if value.is_positive() => {
            x.truncate(m);
            Some(x)
        }
        _ => None,
    }
}

/// Strictly feasible multicycle flow inside `mask` for `demand`.
pub fn eta_multicycle_feasible(g: &MultiWeightedGraph, mask: &[bool], demand: &Demand) -> Option<FlowAssignment> {
    let allowed = allowed_vertices(g, mask, demand);
    let edges = g.edges(&allowed);
    let w = normalized_weights(g, demand);
    strict_flow(g, &edges, &w, demand).map(|flow| FlowAssignment { edges, flow })
}

/// Closed walk using every edge of an integral balanced flow with connected
/// support; vertices in visiting order, the last one stepping back to the first.
pub fn euler_cycle(edges: &[(usize, usize)], counts: &[BigInt]) -> Vec<usize> {
    let mut out: BTreeMap<usize, Vec<(usize, u64)>> = BTreeMap::new();
    for (&(u, v), c) in edges.iter().zip(counts) {
        let c = c.to_u64().expect("flow multiplicity too large for a cycle");
        if c > 0 {
            out.entry(u).or_default().push((v, c));
        }
    }
    let Some(&first) = out.keys().next() else {
        return Vec::new();
    };
    // Hierholzer with multiplicities
    let mut stack = vec![first];
    let mut circuit = Vec::new();
    while let Some(&u) = stack.last() {
        let next = out.get_mut(&u).and_then(|list| {
            let slot = list.iter_mut().find(|(_, c)| *c > 0)?;
            slot.1 -= 1;
            Some(slot.0)
        });
        match next {
            Some(v) => stack.push(v),
            None => circuit.push(stack.pop().unwrap()),
        }
    }
    circuit.reverse();
    circuit.pop();
    circuit
}

/// Simple cycles of the graph given by `edges`, at most `cap` of them, each
/// starting at its smallest vertex.
fn simple_cycles(n: usize, edges: &[(usize, usize)], cap: usize) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        adj[u].push(v);
    }
    let mut found = Vec::new();
    let mut budget = 200_000usize;
    for s in 0..n {
        let mut path = vec![s];
        let mut on_path = vec![false; n];
        on_path[s] = true;
        let mut iters: Vec<usize> = vec![0];
        while let Some(&u) = path.last() {
            if found.len() >= cap || budget == 0 {
                return found;
            }
            budget -= 1;
            let k = iters.last_mut().unwrap();
            if *k < adj[u].len() {
                let v = adj[u][*k];
                *k += 1;
                if v == s {
                    found.push(path.clone());
                } else if v > s && !on_path[v] {
                    on_path[v] = true;
                    path.push(v);
                    iters.push(0);
                }
            } else {
                on_path[u] = false;
                path.pop();
                iters.pop();
            }
        }
    }
    found
}

fn cycle_meets(g: &MultiWeightedGraph, cycle: &[usize], demand: &Demand) -> bool {
    !cycle.is_empty()
        && (0..g.num_indices()).all(|a| {
            let top = cycle.iter().map(|&v| g.priorities[a][v]).max().unwrap();
            let mean = graph::cycle_mean(cycle.iter().map(|&v| g.weights[a][v]));
            top == demand.target[a] && mean > demand.threshold[a]
        })
}

/// Total mean over all indices; higher is better.
fn cycle_quality(g: &MultiWeightedGraph, cycle: &[usize]) -> Q {
    (0..g.num_indices()).map(|a| graph::cycle_mean(cycle.iter().map(|&v| g.weights[a][v]))).sum()
}

/// Better of two candidate cycles: higher total mean, then shorter, then
/// lexicographically smaller vertex sequence.
fn better(g: &MultiWeightedGraph, x: &[usize], y: &[usize]) -> bool {
    match cycle_quality(g, x).cmp(&cycle_quality(g, y)) {
        Ordering::Greater => true,
        Ordering::Less => false,
        Ordering::Equal => (x.len(), x) < (y.len(), y),
    }
}

/// Components up to this size also get an exhaustive simple-cycle search.
const SMALL_COMPONENT: usize = 10;

/// `sum_a lambda_a * w_a` scaled to integers.
fn combine(w: &[Vec<i64>], indices: &[usize], lambda: &[Q]) -> Vec<i128> {
    let scale = lcm_denoms(lambda);
    let coef: Vec<i128> =
        lambda.iter().map(|l| (l * Q::from_integer(scale.clone())).to_integer().to_i128().expect("weight factor out of range")).collect();
    (0..w[0].len())
        .map(|v| indices.iter().zip(&coef).map(|(&a, &c)| c.checked_mul(w[a][v] as i128).expect("combined weight overflow")).sum())
        .collect()
}

fn index_sums(w: &[Vec<i64>], indices: &[usize], cycle: &[usize]) -> Vec<i64> {
    indices.iter().map(|&a| cycle.iter().map(|&v| w[a][v]).sum()).collect()
}

/// Weights on cycles making every index sum at least one, if the cycles
/// admit such a mix.
fn cycle_mix(sums: &[Vec<i64>]) -> Option<Vec<Q>> {
    let mut lp = Lp::new(sums.len());
    for a in 0..sums[0].len() {
        lp.add(sums.iter().enumerate().map(|(c, s)| (c, s[a])).collect(), Rel::Ge, 1);
    }
    lp.objective = (0..sums.len()).map(|c| (c, -1)).collect();
    match simplex::solve(&lp) {
        LpResult::Optimal { x, .. } => Some(x),
        _ => None,
    }
}

/// Index weighting minimizing the best mean of the given cycles, and that
/// mean. Variables are `lambda`, then `s+` and `s-`.
fn worst_weighting(sums: &[Vec<i64>], lens: &[usize]) -> (Vec<Q>, Q) {
    let k = sums[0].len();
    let mut lp = Lp::new(k + 2);
    for (s, &len) in sums.iter().zip(lens) {
        let mut row: Vec<(usize, i64)> = s.iter().enumerate().map(|(a, &x)| (a, x)).collect();
        row.push((k, -(len as i64)));
        row.push((k + 1, len as i64));
        lp.add(row, Rel::Le, 0);
    }
    lp.add((0..k).map(|a| (a, 1)).collect(), Rel::Eq, 1);
    lp.objective = vec![(k, -1), (k + 1, 1)];
    match simplex::solve(&lp) {
        LpResult::Optimal { x, .. } => {
            let s = &x[k] - &x[k + 1];
            (x[..k].to_vec(), s)
        }
        r => panic!("weighting program is feasible and bounded, got {r:?}"),
    }
}

/// Closed walk inside `comp` through the given vertices in order.
fn tour(adj: &[Vec<usize>], comp_mask: &[bool], stops: &[usize]) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for i in 0..stops.len() {
        let (from, to) = (stops[i], stops[(i + 1) % stops.len()]);
        if from == to {
            continue;
        }
        let mut target = vec![false; adj.len()];
        target[to] = true;
        let sub: Vec<Vec<usize>> = adj
            .iter()
            .enumerate()
            .map(|(u, s)| if comp_mask[u] { s.iter().copied().filter(|&v| comp_mask[v]).collect() } else { Vec::new() })
            .collect();
        let path = shortest_path(&sub, from, &target).expect("component is strongly connected");
        edges.extend(path.windows(2).map(|p| (p[0], p[1])));
    }
    edges
}

/// A cycle inside the strongly connected set `comp` (allowed vertices only)
/// meeting `demand`, if one exists. The cycle of highest total mean is tried
/// first. Otherwise cycles are generated against the index weighting that
/// currently hurts most, until either some mix of them is strictly positive
/// on every index or a weighting shows that no cycle can be.
fn component_cycle(g: &MultiWeightedGraph, comp: &[usize], demand: &Demand) -> Option<Vec<usize>> {
    let n_idx = g.num_indices();
    let targets: Vec<usize> =
        (0..n_idx).map(|a| comp.iter().copied().find(|&v| g.priorities[a][v] == demand.target[a])).collect::<Option<_>>()?;
    let raw: Vec<i128> = (0..g.num_vertices()).map(|v| (0..n_idx).map(|a| g.weights[a][v] as i128).sum()).collect();
    let top = graph::karp_max_mean_wide(&g.adj, &raw, comp)?;
    let first = graph::tight_cycle(&g.adj, &raw, comp, &top);
    let mut found = cycle_meets(g, &first, demand).then_some(first.clone());
    if comp.len() <= SMALL_COMPONENT {
        let mut mask = vec![false; g.num_vertices()];
        for &v in comp {
            mask[v] = true;
        }
        for c in simple_cycles(g.num_vertices(), &g.edges(&mask), 5000) {
            if cycle_meets(g, &c, demand) && found.as_ref().is_none_or(|b| better(g, &c, b)) {
                found = Some(c);
            }
        }
    }
    if found.is_some() {
        return found;
    }
    let w = normalized_weights(g, demand);
    let live: Vec<usize> = (0..n_idx).filter(|&a| comp.iter().any(|&v| w[a][v] <= 0)).collect();
    let mut cycles = vec![first];
    if !live.is_empty() {
        let mut lambda = vec![Q::new(1.into(), (live.len() as i64).into()); live.len()];
        loop {
            let comb = combine(&w, &live, &lambda);
            let best = graph::karp_max_mean_wide(&g.adj, &comb, comp)?;
            if !best.is_positive() {
                return None;
            }
            let c = graph::tight_cycle(&g.adj, &comb, comp, &best);
            cycles.push(c);
            let sums: Vec<Vec<i64>> = cycles.iter().map(|c| index_sums(&w, &live, c)).collect();
            let lens: Vec<usize> = cycles.iter().map(|c| c.len()).collect();
            let (next, value) = worst_weighting(&sums, &lens);
            if value.is_positive() {
                break;
            }
            lambda = next;
        }
    }
    // pump the mix so that the connecting tour cannot spoil any index
    let sums: Vec<Vec<i64>> = cycles.iter().map(|c| index_sums(&w, &live, c)).collect();
    let mix = if live.is_empty() { vec![Q::zero(); cycles.len()] } else { cycle_mix(&sums).expect("positive mix exists") };
    let mult = integer_scaling(&mix);
    let mut comp_mask = vec![false; g.num_vertices()];
    for &v in comp {
        comp_mask[v] = true;
    }
    let stops: Vec<usize> = cycles.iter().map(|c| c[0]).chain(targets).collect();
    let link = tour(&g.adj, &comp_mask, &stops);
    let link_sums: Vec<i64> = live.iter().map(|&a| link.iter().map(|&(u, _)| w[a][u]).sum()).collect();
    let pump = BigInt::from(link_sums.iter().map(|&x| (-x).max(0)).max().unwrap_or(0) + 1);
    let mut counts: BTreeMap<(usize, usize), BigInt> = BTreeMap::new();
    for e in link {
        *counts.entry(e).or_default() += 1;
    }
    for (c, m) in cycles.iter().zip(&mult) {
        for i in 0..c.len() {
            *counts.entry((c[i], c[(i + 1) % c.len()])).or_default() += m * &pump;
        }
    }
    let (edges, counts): (Vec<(usize, usize)>, Vec<BigInt>) = counts.into_iter().filter(|(_, c)| c.is_positive()).unzip();
    let cycle = euler_cycle(&edges, &counts);
    debug_assert!(cycle_meets(g, &cycle, demand));
    Some(cycle)
}

/// All cycles meeting `demand` found inside `mask`, one per strongly
/// connected component of the allowed vertices.
fn refine(g: &MultiWeightedGraph, mask: &[bool], demand: &Demand, out: &mut Vec<Vec<usize>>) {
    let allowed = allowed_vertices(g, mask, demand);
    let mut comps: Vec<Vec<usize>> = graph::sccs(&g.adj, Some(&allowed)).into_iter().filter(|c| graph::nontrivial(&g.adj, c)).collect();
    comps.sort();
    out.extend(comps.iter().filter_map(|c| component_cycle(g, c, demand)));
}

/// A single cycle meeting `demand` inside `mask`, if any exists.
pub fn refine_and_extract(g: &MultiWeightedGraph, mask: &[bool], demand: &Demand) -> Option<Vec<usize>> {
    let mut found = Vec::new();
    refine(g, mask, demand, &mut found);
    found.into_iter().reduce(|x, y| if better(g, &y, &x) { y } else { x })
}

/// Path through graph vertices: `stem` from the start, then `cycle` forever.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexLasso {
    pub stem: Vec<usize>,
    pub cycle: Vec<usize>,
}

impl VertexLasso {
    pub fn payoff(&self, g: &MultiWeightedGraph, a: usize) -> Payoff {
        g.cycle_payoff(a, &self.cycle)
    }
}

/// Candidate `(target, threshold)` pairs for one index beating `f`.
fn demands_for(g: &MultiWeightedGraph, a: usize, f: &Payoff, mask: &[bool]) -> Vec<(u32, Q)> {
    let mut prios: Vec<u32> = (0..g.num_vertices()).filter(|&v| mask[v]).map(|v| g.priorities[a][v]).collect();
    prios.sort_unstable();
    prios.dedup();
    let w_min = (0..g.num_vertices()).filter(|&v| mask[v]).map(|v| g.weights[a][v]).min().unwrap_or(0);
    let floor = Q::from_integer((w_min - 1).into());
    let mut out = Vec::new();
    for p in prios {
        if p % 2 == 0 {
            out.push((p, if f.sat { f.mp.clone() } else { floor.clone() }));
        } else if !f.sat {
            out.push((p, f.mp.clone()));
        }
    }
    out
}

/// Shortest path from `start` to some vertex of `targets` (inclusive).
fn shortest_path(adj: &[Vec<usize>], start: usize, targets: &[bool]) -> Option<Vec<usize>> {
    let mut parent = vec![usize::MAX; adj.len()];
    let mut seen = vec![false; adj.len()];
    let mut queue = VecDeque::from([start]);
    seen[start] = true;
    while let Some(u) = queue.pop_front() {
        if targets[u] {
            let mut path = vec![u];
            let mut x = u;
            while x != start {
                x = parent[x];
                path.push(x);
            }
            path.reverse();
            return Some(path);
        }
        for &v in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                parent[v] = u;
                queue.push_back(v);
            }
        }
    }
    None
}

/// Lasso from the start vertex with `f_a` strictly below its payoff for every
/// index. Every candidate vector of top priorities is tried and the best cycle
/// (highest total mean, then shortest) is kept.
pub fn find_threshold_lasso(g: &MultiWeightedGraph, f: &[Payoff]) -> Option<VertexLasso> {
    let n = g.num_vertices();
    let reach = graph::reachable(&g.adj, &[g.start], None);
    let per_index: Vec<Vec<(u32, Q)>> = (0..g.num_indices()).map(|a| demands_for(g, a, &f[a], &reach)).collect();
    if per_index.iter().any(|d| d.is_empty()) {
        return None;
    }
    let mut best: Option<Vec<usize>> = None;
    let mut choice = vec![0usize; per_index.len()];
    loop {
        let demand = Demand {
            target: choice.iter().zip(&per_index).map(|(&i, d)| d[i].0).collect(),
            threshold: choice.iter().zip(&per_index).map(|(&i, d)| d[i].1.clone()).collect(),
        };
        if let Some(c) = refine_and_extract(g, &reach, &demand) {
            if best.as_ref().is_none_or(|b| better(g, &c, b)) {
                best = Some(c);
            }
        }
        // odometer over candidate choices, last index fastest
        let mut k = per_index.len();
        loop {
            if k == 0 {
                let cycle = best?;
                let mut on_cycle = vec![false; n];
                for &v in &cycle {
                    on_cycle[v] = true;
                }
                let path = shortest_path(&g.adj, g.start, &on_cycle).expect("cycle reachable from the start");
                let entry = *path.last().unwrap();
                let pos = cycle.iter().position(|&v| v == entry).unwrap();
                let mut cycle = cycle;
                cycle.rotate_left(pos);
                let stem = path[..path.len() - 1].to_vec();
                return Some(VertexLasso { stem, cycle });
            }
            k -= 1;
            choice[k] += 1;
            if choice[k] < per_index[k].len() {
                break;
            }
            choice[k] = 0;
        }
    }
}

/// Secure subgraph with, per edge, the least decision realizing it.
#[derive(Debug, Clone)]
pub struct SecureGraph {
    pub graph: MultiWeightedGraph,
    pub decision: BTreeMap<(usize, usize), Decision>,
}

/// `(s, d)` is secure when every unilateral variation of `d` (including `d`)
/// leads, for every agent `a`, to a state with punishing value at most `z_a`.
pub fn is_secure(g: &LexParityGame, z: &[Payoff], pt: &PunishTable, s: usize, d: Decision) -> bool {
    let arena = &g.arena;
    (0..arena.num_agents()).all(|a| (0..arena.num_actions()).all(|x| pt.get(a, arena.next(s, arena.with_action(d, a, x))) <= &z[a]))
}

pub fn build_secure_subgraph(g: &LexParityGame, z: &[Payoff], pt: &PunishTable) -> SecureGraph {
    let arena = &g.arena;
    let n = arena.num_states();
    let mut decision = BTreeMap::new();
    let mut adj = vec![Vec::new(); n];
    for s in 0..n {
        for d in 0..arena.num_decisions() {
            let t = arena.next(s, d);
            if !decision.contains_key(&(s, t)) && is_secure(g, z, pt, s, d) {
                decision.insert((s, t), d);
                adj[s].push(t);
            }
        }
        adj[s].sort_unstable();
    }
    let reach = graph::reachable(&adj, &[arena.initial], None);
    for s in 0..n {
        if !reach[s] {
            adj[s].clear();
        }
    }
    decision.retain(|(s, _), _| reach[*s]);
    let graph = MultiWeightedGraph { adj, weights: g.weights.clone(), priorities: g.priorities.clone(), start: arena.initial };
    SecureGraph { graph, decision }
}
