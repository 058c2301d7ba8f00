use super::{attractor, mp_solve, CoalitionGame, ExtValue, Player, TurnBasedGame};
use crate::arena::{LexParityGame, Payoff};

/// Values of the mean-payoff parity game for `Max` (parity and liminf average;
/// payoff minus infinity when parity fails), with a memoryless optimal strategy
/// for `Min`.
#[derive(Debug, Clone)]
pub struct MppSolution {
    pub value: Vec<ExtValue>,
    pub min_strategy: Vec<usize>,
}

fn first_succ_in(g: &TurnBasedGame, v: usize, mask: &[bool]) -> usize {
    *g.succ[v].iter().find(|&&u| mask[u]).expect("vertex without successor in subgame")
}

/// Recursive value computation on the subgame `mask`.
///
/// With top priority odd, the best values of the game without the minimizer's
/// attractor to the top are peeled off with the maximizer's attractor. With top
/// priority even, the lowest of (best-for-minimizer value of the game without
/// the maximizer's attractor, lowest mean-payoff value) is peeled off with the
/// minimizer's attractor. Each peeled region gets one value.
///
/// The rest after a minimizer's attractor is left open to the maximizer, who
/// may exit into a region valued at the lowest value so far, and symmetrically
/// for the minimizer after a maximizer's attractor: later values are clamped
/// between that floor and ceiling.
pub fn mpp_solve(g: &TurnBasedGame, mask: &[bool]) -> MppSolution {
    let n = g.len();
    let mut sol = MppSolution { value: vec![ExtValue::NegInf; n], min_strategy: vec![usize::MAX; n] };
    let mut rem = mask.to_vec();
    let mut floor = ExtValue::NegInf;
    let mut ceiling = ExtValue::PosInf;
    let clamp = |x: ExtValue, lo: &ExtValue, hi: &ExtValue| x.max(lo.clone()).min(hi.clone());
    loop {
        let Some(d) = (0..n).filter(|&v| rem[v]).map(|v| g.priority[v]).max() else {
            return sol;
        };
        let top: Vec<bool> = (0..n).map(|v| rem[v] && g.priority[v] == d).collect();
        let peeled: Vec<bool>;
        if d % 2 == 1 {
            let (attr, att) = attractor(g, &rem, &top, Player::Min);
            let sub: Vec<bool> = (0..n).map(|v| rem[v] && !attr[v]).collect();
            let inner = mpp_solve(g, &sub);
            let best = (0..n).filter(|&v| sub[v]).map(|v| &inner.value[v]).max().cloned();
            let level_choice = |v: usize| {
                if top[v] {
                    first_succ_in(g, v, &rem)
                } else if attr[v] {
                    att[v]
                } else {
                    inner.min_strategy[v]
                }
            };
            match best {
                None | Some(ExtValue::NegInf) => {
                    for v in 0..n {
                        if rem[v] {
                            sol.value[v] = clamp(ExtValue::NegInf, &floor, &ceiling);
                            if g.owner[v] == Player::Min {
                                sol.min_strategy[v] = level_choice(v);
                            }
                        }
                    }
                    return sol;
                }
                Some(m) => {
                    let s: Vec<bool> = (0..n).map(|v| sub[v] && inner.value[v] == m).collect();
                    let (b, _) = attractor(g, &rem, &s, Player::Max);
                    for v in 0..n {
                        if b[v] {
                            sol.value[v] = clamp(m.clone(), &floor, &ceiling);
                            if g.owner[v] == Player::Min {
                                sol.min_strategy[v] = level_choice(v);
                            }
                        }
                    }
                    ceiling = clamp(m, &floor, &ceiling);
                    peeled = b;
                }
            }
        } else {
            let (attr, _) = attractor(g, &rem, &top, Player::Max);
            let sub: Vec<bool> = (0..n).map(|v| rem[v] && !attr[v]).collect();
            let mp = mp_solve(g, &rem);
            let low = (0..n).filter(|&v| rem[v]).map(|v| mp.value[v].clone().unwrap()).min().unwrap();
            let low = ExtValue::Fin(low);
            let inner = (0..n).any(|v| sub[v]).then(|| mpp_solve(g, &sub));
            let m = inner.as_ref().and_then(|s| (0..n).filter(|&v| sub[v]).map(|v| s.value[v].clone()).min());
            let (target, value, core_choice): (Vec<bool>, ExtValue, Vec<usize>) = match (m, &inner) {
                (Some(m), Some(s)) if m <= low => ((0..n).map(|v| sub[v] && s.value[v] == m).collect(), m, s.min_strategy.clone()),
                _ => ((0..n).map(|v| rem[v] && mp.value[v].as_ref() == low.finite()).collect(), low, mp.min_strategy.clone()),
            };
            let (b, att) = attractor(g, &rem, &target, Player::Min);
            for v in 0..n {
                if b[v] {
                    sol.value[v] = clamp(value.clone(), &floor, &ceiling);
                    if g.owner[v] == Player::Min {
                        sol.min_strategy[v] = if target[v] { core_choice[v] } else { att[v] };
                    }
                }
            }
            floor = clamp(value, &floor, &ceiling);
            peeled = b;
        }
        for v in 0..n {
            if peeled[v] {
                rem[v] = false;
            }
        }
    }
}

pub fn solve_mpp(k: &TurnBasedGame) -> Vec<ExtValue> {
    mpp_solve(k, &k.full_mask()).value
}

/// Dual game: `Min` wants odd parity and low limsup average; value plus infinity
/// where `Max` forces even parity.
pub fn solve_mpp_dual(k: &TurnBasedGame) -> Vec<ExtValue> {
    solve_mpp(&k.swap()).into_iter().map(|v| -v).collect()
}

/// Lexicographic values at every vertex, from both solutions.
pub fn lex_values(k: &TurnBasedGame) -> Vec<Payoff> {
    let primal = solve_mpp(k);
    let dual = solve_mpp_dual(k);
    primal
        .into_iter()
        .zip(dual)
        .map(|(p, d)| match (p, d) {
            (ExtValue::Fin(x), ExtValue::PosInf) => Payoff::new(true, x),
            (ExtValue::NegInf, ExtValue::Fin(y)) => Payoff::new(false, y),
            (p, d) => panic!("inconsistent primal/dual values {p} / {d}"),
        })
        .collect()
}

/// Lexicographic value of a two-agent game from `start` (agent 0 maximizes).
pub fn lex_value(h: &LexParityGame, start: usize) -> Payoff {
    let cg: CoalitionGame = super::coalition_game(h, 0, super::MoverOrder::MinFirst);
    lex_values(&cg.tb)[cg.state_vertex(start)].clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn tb(owner: Vec<Player>, succ: Vec<Vec<usize>>, weight: Vec<i64>, priority: Vec<u32>) -> TurnBasedGame {
        TurnBasedGame { owner, succ, weight, priority }
    }

    #[test]
    fn self_loops() {
        let g = tb(vec![Player::Max], vec![vec![0]], vec![4], vec![2]);
        assert_eq!(solve_mpp(&g), vec![ExtValue::Fin(q(4))]);
        assert_eq!(lex_values(&g), vec![Payoff::new(true, q(4))]);
        let g = tb(vec![Player::Max], vec![vec![0]], vec![-2], vec![1]);
        assert_eq!(solve_mpp(&g), vec![ExtValue::NegInf]);
        assert_eq!(solve_mpp_dual(&g), vec![ExtValue::Fin(q(-2))]);
        assert_eq!(lex_values(&g), vec![Payoff::new(false, q(-2))]);
    }

    #[test]
    fn alternation_value_is_supremum() {
        // s0 (w 10, p 1) <-> s1 (w 0, p 2), s0 has a self-loop; all max-owned
        let g = tb(vec![Player::Max, Player::Max], vec![vec![0, 1], vec![0]], vec![10, 0], vec![1, 2]);
        assert_eq!(solve_mpp(&g), vec![ExtValue::Fin(q(10)), ExtValue::Fin(q(10))]);
    }

    #[test]
    fn parity_lost_everywhere() {
        let g = tb(vec![Player::Max, Player::Min], vec![vec![1], vec![0, 1]], vec![1, 1], vec![0, 3]);
        assert_eq!(solve_mpp(&g), vec![ExtValue::NegInf, ExtValue::NegInf]);
        assert_eq!(solve_mpp_dual(&g), vec![ExtValue::Fin(q(1)), ExtValue::Fin(q(1))]);
    }
}
