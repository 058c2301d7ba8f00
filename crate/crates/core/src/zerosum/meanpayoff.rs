use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::{Player, TurnBasedGame};
use crate::rational::Q;

/// Mean-payoff game values on a subgame, with memoryless strategies for both
/// players. When `certified`, each strategy alone guarantees the values.
#[derive(Debug, Clone)]
pub struct MpSolution {
    pub value: Vec<Option<Q>>,
    pub max_strategy: Vec<usize>,
    pub min_strategy: Vec<usize>,
    pub certified: bool,
}

/// Optimal values for the free player once the other player's vertices follow
/// `fixed` (liminf of averages, vertex weights).
pub fn one_player_values(g: &TurnBasedGame, mask: &[bool], fixed_player: Player, fixed: &[usize]) -> Vec<Option<Q>> {
    let n = g.len();
    let adj: Vec<Vec<usize>> = (0..n)
        .map(|v| {
            if !mask[v] {
                vec![]
            } else if g.owner[v] == fixed_player {
                vec![fixed[v]]
            } else {
                g.succ[v].iter().copied().filter(|&u| mask[u]).collect()
            }
        })
        .collect();
    if fixed_player == Player::Min {
        best_reachable_means(&adj, &g.weight, mask)
    } else {
        let neg: Vec<i64> = g.weight.iter().map(|w| -w).collect();
        best_reachable_means(&adj, &neg, mask).into_iter().map(|v| v.map(|x| -x)).collect()
    }
}

/// Gain and bias of a positional choice `pol`: every vertex reaches one cycle
/// of `pol`, whose mean is the gain; biases are zero at the least vertex of
/// each cycle.
fn evaluate(pol: &[usize], weight: &[i64], verts: &[usize]) -> (Vec<Q>, Vec<Q>) {
    let n = pol.len();
    let mut gain = vec![Q::zero(); n];
    let mut bias = vec![Q::zero(); n];
    let mut state = vec![0u8; n];
    for &s in verts {
        if state[s] != 0 {
            continue;
        }
        let mut path = Vec::new();
        let mut v = s;
        while state[v] == 0 {
            state[v] = 1;
            path.push(v);
            v = pol[v];
        }
        if state[v] == 1 {
            let pos = path.iter().position(|&u| u == v).unwrap();
            let mut cycle = path.split_off(pos);
            let root = cycle.iter().enumerate().min_by_key(|(_, &u)| u).unwrap().0;
            cycle.rotate_left(root);
            let total: i64 = cycle.iter().map(|&u| weight[u]).sum();
            let mean = Q::new(BigInt::from(total), BigInt::from(cycle.len() as i64));
            for i in (0..cycle.len()).rev() {
                let u = cycle[i];
                gain[u] = mean.clone();
                if i > 0 {
                    bias[u] = Q::from_integer(weight[u].into()) - &mean + &bias[cycle[(i + 1) % cycle.len()]];
                }
                state[u] = 2;
            }
        }
        for &u in path.iter().rev() {
            let t = pol[u];
            gain[u] = gain[t].clone();
            bias[u] = Q::from_integer(weight[u].into()) - &gain[t] + &bias[t];
            state[u] = 2;
        }
    }
    (gain, bias)
}

/// Highest mean of a cycle reachable from each vertex of `mask`, by policy
/// iteration: switch to a successor of higher gain, otherwise to one of equal
/// gain and higher bias, until neither is possible.
fn best_reachable_means(adj: &[Vec<usize>], weight: &[i64], mask: &[bool]) -> Vec<Option<Q>> {
    let n = adj.len();
    let verts: Vec<usize> = (0..n).filter(|&v| mask[v]).collect();
    let mut pol = vec![usize::MAX; n];
    for &v in &verts {
        pol[v] = *adj[v].iter().max_by_key(|&&u| weight[u]).expect("vertex without successor in subgame");
    }
    loop {
        let (gain, bias) = evaluate(&pol, weight, &verts);
        let mut changed = false;
        for &v in &verts {
            let best = adj[v].iter().copied().max_by(|&a, &b| gain[a].cmp(&gain[b])).unwrap();
            if gain[best] > gain[v] {
                pol[v] = best;
                changed = true;
            }
        }
        if !changed {
            for &v in &verts {
                let w = Q::from_integer(weight[v].into());
                let mut top = bias[v].clone();
                for &u in &adj[v] {
                    if gain[u] == gain[v] {
                        let cand = &w - &gain[v] + &bias[u];
                        if cand > top {
                            top = cand;
                            pol[v] = u;
                            changed = true;
                        }
                    }
                }
            }
        }
        if !changed {
            return (0..n).map(|v| mask[v].then(|| gain[v].clone())).collect();
        }
    }
}

/// Fraction with denominator at most `max_den` closest to `num / den`
/// (continued-fraction convergents and the best semiconvergent).
fn closest_fraction(num: i64, den: i64, max_den: i64) -> (i64, i64) {
    let (num, den, max_den) = (num as i128, den as i128, max_den as i128);
    let g = num.gcd(&den);
    if den / g <= max_den {
        return ((num / g) as i64, (den / g) as i64);
    }
    let (mut p0, mut q0, mut p1, mut q1) = (0i128, 1i128, 1i128, 0i128);
    let (mut n, mut d) = (num, den);
    loop {
        let a = n.div_euclid(d);
        let q2 = q0 + a * q1;
        if q2 > max_den {
            break;
        }
        (p0, q0, p1, q1) = (p1, q1, p0 + a * p1, q2);
        (n, d) = (d, n - a * d);
    }
    let k = (max_den - q0) / q1;
    let (pa, qa) = (p0 + k * p1, q0 + k * q1);
    // |p/q - num/den| compared without division
    let err = |p: i128, q: i128| ((p * den - num * q).abs(), q);
    let (ea, da) = err(pa, qa);
    let (eb, db) = err(p1, q1);
    if eb * da <= ea * db {
        (p1 as i64, q1 as i64)
    } else {
        (pa as i64, qa as i64)
    }
}

fn extract(g: &TurnBasedGame, mask: &[bool], cand: &[Option<Q>], bias: &[i64]) -> (Vec<usize>, Vec<usize>) {
    let n = g.len();
    let mut smax = vec![usize::MAX; n];
    let mut smin = vec![usize::MAX; n];
    for v in 0..n {
        if !mask[v] {
            continue;
        }
        let succ = g.succ[v].iter().copied().filter(|&u| mask[u]);
        let pick = match g.owner[v] {
            Player::Max => succ.max_by(|&a, &b| (&cand[a], bias[a]).cmp(&(&cand[b], bias[b]))),
            Player::Min => succ.min_by(|&a, &b| (&cand[a], bias[a]).cmp(&(&cand[b], bias[b]))),
        };
        let u = pick.expect("vertex without successor in subgame");
        match g.owner[v] {
            Player::Max => smax[v] = u,
            Player::Min => smin[v] = u,
        }
    }
    (smax, smin)
}

/// Value iteration with periodic exact certification: candidate values are
/// rounded to fractions with small denominators, greedy strategies are read off,
/// and both are checked by one-player analysis. Falls back to the classical
/// pseudo-polynomial iteration bound.
pub fn mp_solve(g: &TurnBasedGame, mask: &[bool]) -> MpSolution {
    let n = g.len();
    let verts: Vec<usize> = (0..n).filter(|&v| mask[v]).collect();
    let size = verts.len() as i64;
    if verts.is_empty() {
        return MpSolution { value: vec![None; n], max_strategy: vec![usize::MAX; n], min_strategy: vec![usize::MAX; n], certified: true };
    }
    let w_max = verts.iter().map(|&v| g.weight[v].abs()).max().unwrap().max(1);
    let bound = 4 * size.pow(3) * w_max + 1;
    let mut cur = vec![0i64; n];
    let mut next = vec![0i64; n];
    let mut k: i64 = 0;
    let mut checkpoint = 16.min(bound);
    loop {
        for &v in &verts {
            let succ = g.succ[v].iter().filter(|&&u| mask[u]).map(|&u| cur[u]);
            let opt = match g.owner[v] {
                Player::Max => succ.max(),
                Player::Min => succ.min(),
            };
            next[v] = g.weight[v] + opt.expect("vertex without successor in subgame");
        }
        std::mem::swap(&mut cur, &mut next);
        k += 1;
        let last = k >= bound;
        if k == checkpoint || last {
            let cand: Vec<Option<Q>> = (0..n)
                .map(|v| {
                    mask[v].then(|| {
                        let (p, q) = closest_fraction(cur[v], k, size);
                        Q::new(BigInt::from(p), BigInt::from(q))
                    })
                })
                .collect();
            let (smax, smin) = extract(g, mask, &cand, &cur);
            let lower = one_player_values(g, mask, Player::Max, &smax);
            let upper = one_player_values(g, mask, Player::Min, &smin);
            if lower == upper || last {
                let certified = lower == upper;
                if !certified {
                    log::warn!("mean-payoff strategies not certified on a subgame of {size} vertices");
                }
                return MpSolution { value: if certified { lower } else { cand }, max_strategy: smax, min_strategy: smin, certified };
            }
            checkpoint *= 2;
        }
    }
}

/// Mean-payoff values of the whole game.
pub fn solve_mean_payoff(g: &TurnBasedGame) -> Vec<Q> {
    mp_solve(g, &g.full_mask()).value.into_iter().map(|v| v.unwrap()).collect()
}
