//! Plain digraph utilities on adjacency lists: reachability, SCCs, Karp mean cycles.

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::rational::Q;

/// Vertices reachable from `starts` using only vertices allowed by `mask`.
pub fn reachable(adj: &[Vec<usize>], starts: &[usize], mask: Option<&[bool]>) -> Vec<bool> {
    let ok = |v: usize| mask.is_none_or(|m| m[v]);
    let mut seen = vec![false; adj.len()];
    let mut stack: Vec<usize> = starts.iter().copied().filter(|&v| ok(v)).collect();
    for &s in &stack {
        seen[s] = true;
    }
    while let Some(v) = stack.pop() {
        for &u in &adj[v] {
            if ok(u) && !seen[u] {
                seen[u] = true;
                stack.push(u);
            }
        }
    }
    seen
}

/// Tarjan's SCC algorithm restricted to `mask`, iterative.
/// Components come out in reverse topological order (sinks first).
pub fn sccs(adj: &[Vec<usize>], mask: Option<&[bool]>) -> Vec<Vec<usize>> {
    let n = adj.len();
    let ok = |v: usize| mask.is_none_or(|m| m[v]);
    const UNSEEN: usize = usize::MAX;
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut out = Vec::new();
    let mut counter = 0;
    let mut call: Vec<(usize, usize)> = Vec::new();
    for root in 0..n {
        if !ok(root) || index[root] != UNSEEN {
            continue;
        }
        call.push((root, 0));
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&mut (v, ref mut i)) = call.last_mut() {
            if *i < adj[v].len() {
                let u = adj[v][*i];
                *i += 1;
                if !ok(u) {
                    continue;
                }
                if index[u] == UNSEEN {
                    index[u] = counter;
                    low[u] = counter;
                    counter += 1;
                    stack.push(u);
                    on_stack[u] = true;
                    call.push((u, 0));
                } else if on_stack[u] {
                    low[v] = low[v].min(index[u]);
                }
            } else {
                call.pop();
                if let Some(&(p, _)) = call.last() {
                    low[p] = low[p].min(low[v]);
                }
                if low[v] == index[v] {
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().unwrap();
                        on_stack[w] = false;
                        comp.push(w);
                        if w == v {
                            break;
                        }
                    }
                    comp.sort_unstable();
                    out.push(comp);
                }
            }
        }
    }
    out
}

/// Whether a component contains at least one cycle.
pub fn nontrivial(adj: &[Vec<usize>], comp: &[usize]) -> bool {
    comp.len() > 1 || adj[comp[0]].contains(&comp[0])
}

/// Maximum mean weight of a cycle inside the strongly connected vertex set `comp`
/// (vertex weights, edges leaving `comp` ignored). `None` if `comp` has no cycle.
pub fn karp_max_mean(adj: &[Vec<usize>], weight: &[i64], comp: &[usize]) -> Option<Q> {
    let wide: Vec<i128> = weight.iter().map(|&w| w as i128).collect();
    karp_max_mean_wide(adj, &wide, comp)
}

/// `karp_max_mean` over 128-bit weights.
pub fn karp_max_mean_wide(adj: &[Vec<usize>], weight: &[i128], comp: &[usize]) -> Option<Q> {
    if !nontrivial(adj, comp) {
        return None;
    }
    let k = comp.len();
    let local = local_index(adj.len(), comp);
    // d_j[v]: max weight of a walk of exactly j edges from comp[0] to v,
    // counting the weights of the walk's source vertices. Rows are recomputed
    // in a second pass so that memory stays linear.
    let step = |prev: &[Option<i128>]| {
        let mut next: Vec<Option<i128>> = vec![None; k];
        for (iv, &v) in comp.iter().enumerate() {
            let Some(dv) = prev[iv] else { continue };
            let cand = dv.checked_add(weight[v]).expect("walk weight overflow");
            for &u in &adj[v] {
                let iu = local[u];
                if iu != usize::MAX && next[iu].is_none_or(|x| cand > x) {
                    next[iu] = Some(cand);
                }
            }
        }
        next
    };
    let mut first = vec![None; k];
    first[0] = Some(0);
    let mut last = first.clone();
    for _ in 0..k {
        last = step(&last);
    }
    let mut worst: Vec<Option<Q>> = vec![None; k];
    let mut row = first;
    for j in 0..k {
        for v in 0..k {
            if let (Some(dn), Some(dj)) = (last[v], row[v]) {
                let r = Q::new(BigInt::from(dn - dj), BigInt::from((k - j) as i64));
                if worst[v].as_ref().is_none_or(|w| r < *w) {
                    worst[v] = Some(r);
                }
            }
        }
        row = step(&row);
    }
    worst.into_iter().flatten().max()
}

fn local_index(n: usize, comp: &[usize]) -> Vec<usize> {
    let mut local = vec![usize::MAX; n];
    for (i, &v) in comp.iter().enumerate() {
        local[v] = i;
    }
    local
}

/// Shortest cycle inside `comp` whose mean is exactly `mean`, which must be
/// the maximum cycle mean there. Ties go to the smallest starting vertex.
pub fn tight_cycle(adj: &[Vec<usize>], weight: &[i128], comp: &[usize], mean: &Q) -> Vec<usize> {
    let k = comp.len();
    let local = local_index(adj.len(), comp);
    let p = mean.numer().to_i128().expect("mean numerator out of range");
    let q = mean.denom().to_i128().expect("mean denominator out of range");
    let reduced: Vec<i128> =
        comp.iter().map(|&v| weight[v].checked_mul(q).and_then(|x| x.checked_sub(p)).expect("reduced weight overflow")).collect();
    // longest-path potentials; no positive cycle exists under reduced weights
    let mut d = vec![0i128; k];
    loop {
        let mut changed = false;
        for (iv, &v) in comp.iter().enumerate() {
            let cand = d[iv] + reduced[iv];
            for &u in &adj[v] {
                let iu = local[u];
                if iu != usize::MAX && cand > d[iu] {
                    d[iu] = cand;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    // every cycle of tight edges has reduced weight zero
    let tight: Vec<Vec<usize>> = comp
        .iter()
        .enumerate()
        .map(|(iv, &v)| adj[v].iter().map(|&u| local[u]).filter(|&iu| iu != usize::MAX && d[iu] == d[iv] + reduced[iv]).collect())
        .collect();
    let mut best: Option<Vec<usize>> = None;
    for s in 0..k {
        let limit = best.as_ref().map_or(usize::MAX, |b| b.len());
        let mut parent = vec![usize::MAX; k];
        let mut depth = vec![usize::MAX; k];
        let mut queue = VecDeque::from([s]);
        depth[s] = 0;
        'bfs: while let Some(u) = queue.pop_front() {
            if depth[u] + 1 >= limit {
                break;
            }
            for &v in &tight[u] {
                if v == s {
                    let mut cyc = vec![u];
                    let mut x = u;
                    while x != s {
                        x = parent[x];
                        cyc.push(x);
                    }
                    cyc.reverse();
                    best = Some(cyc.into_iter().map(|i| comp[i]).collect());
                    break 'bfs;
                }
                if depth[v] == usize::MAX {
                    depth[v] = depth[u] + 1;
                    parent[v] = u;
                    queue.push_back(v);
                }
            }
        }
    }
    best.expect("maximum mean is attained by a tight cycle")
}

pub fn karp_min_mean(adj: &[Vec<usize>], weight: &[i64], comp: &[usize]) -> Option<Q> {
    let neg: Vec<i64> = weight.iter().map(|w| -w).collect();
    karp_max_mean(adj, &neg, comp).map(|x| -x)
}

/// Mean of vertex weights along a cycle.
pub fn cycle_mean(weights: impl IntoIterator<Item = i64>) -> Q {
    let mut s = 0i64;
    let mut n = 0i64;
    for w in weights {
        s += w;
        n += 1;
    }
    assert!(n > 0, "empty cycle");
    if s.is_zero() {
        return Q::zero();
    }
    Q::new(BigInt::from(s), BigInt::from(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    #[test]
    fn scc_basic() {
        let adj = vec![vec![1], vec![2], vec![0, 3], vec![3], vec![]];
        let mut c = sccs(&adj, None);
        c.sort();
        assert_eq!(c, vec![vec![0, 1, 2], vec![3], vec![4]]);
        assert!(nontrivial(&adj, &[3]));
        assert!(!nontrivial(&adj, &[4]));
    }

    #[test]
    fn karp_two_cycles() {
        // 0 <-> 1 (weights 0, 1) and self-loop on 1
        let adj = vec![vec![1], vec![0, 1]];
        let w = vec![0, 1];
        assert_eq!(karp_max_mean(&adj, &w, &[0, 1]), Some(frac(1, 1)));
        assert_eq!(karp_min_mean(&adj, &w, &[0, 1]), Some(frac(1, 2)));
    }

    #[test]
    fn karp_matches_brute_force_on_random_graphs() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let n = rng.gen_range(1..6);
            let adj: Vec<Vec<usize>> = (0..n).map(|_| (0..n).filter(|_| rng.gen_bool(0.4)).collect()).collect();
            let w: Vec<i64> = (0..n).map(|_| rng.gen_range(-3..=3)).collect();
            for comp in sccs(&adj, None) {
                let got = karp_max_mean(&adj, &w, &comp);
                // brute force: simple cycles within comp via DFS
                let mut best: Option<Q> = None;
                fn dfs(adj: &[Vec<usize>], w: &[i64], comp: &[usize], start: usize, v: usize, path: &mut Vec<usize>, best: &mut Option<Q>) {
                    for &u in &adj[v] {
                        if !comp.contains(&u) {
                            continue;
                        }
                        if u == start {
                            let m = cycle_mean(path.iter().map(|&x| w[x]));
                            if best.as_ref().is_none_or(|b| m > *b) {
                                *best = Some(m);
                            }
                        } else if u > start && !path.contains(&u) {
                            path.push(u);
                            dfs(adj, w, comp, start, u, path, best);
                            path.pop();
                        }
                    }
                }
                for &s in &comp {
                    dfs(&adj, &w, &comp, s, s, &mut vec![s], &mut best);
                }
                assert_eq!(got, best);
            }
        }
    }
}
