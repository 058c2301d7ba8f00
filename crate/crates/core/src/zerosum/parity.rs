use super::{attractor, solve_mean_payoff, Player, TurnBasedGame};

/// Winning regions and memoryless winning strategies (`usize::MAX` where undefined).
#[derive(Debug, Clone)]
pub struct ParitySolution {
    /// Region won by `Max` (the even player).
    pub even: Vec<bool>,
    pub even_strategy: Vec<usize>,
    pub odd_strategy: Vec<usize>,
}

impl ParitySolution {
    fn set(&mut self, who: Player, v: usize, choice: usize) {
        match who {
            Player::Max => self.even_strategy[v] = choice,
            Player::Min => self.odd_strategy[v] = choice,
        }
    }
}

fn any_succ_in(g: &TurnBasedGame, v: usize, mask: &[bool]) -> usize {
    *g.succ[v].iter().find(|&&u| mask[u]).expect("vertex without successor in subgame")
}

/// Zielonka's recursive algorithm on the subgame `mask`.
pub fn zielonka(g: &TurnBasedGame, mask: &[bool]) -> ParitySolution {
    let n = g.len();
    let mut sol = ParitySolution { even: vec![false; n], even_strategy: vec![usize::MAX; n], odd_strategy: vec![usize::MAX; n] };
    let Some(d) = (0..n).filter(|&v| mask[v]).map(|v| g.priority[v]).max() else {
        return sol;
    };
    let p = if d % 2 == 0 { Player::Max } else { Player::Min };
    let target: Vec<bool> = (0..n).map(|v| mask[v] && g.priority[v] == d).collect();
    let (attr, att_strat) = attractor(g, mask, &target, p);
    let sub: Vec<bool> = (0..n).map(|v| mask[v] && !attr[v]).collect();
    let inner = zielonka(g, &sub);
    let won_by = |s: &ParitySolution, v: usize, who: Player| (who == Player::Max) == s.even[v];
    let opp_wins_some = (0..n).any(|v| sub[v] && won_by(&inner, v, p.opponent()));
    if !opp_wins_some {
        for v in 0..n {
            if !mask[v] {
                continue;
            }
            sol.even[v] = p == Player::Max;
            if g.owner[v] != p {
                continue;
            }
            let choice = if target[v] {
                any_succ_in(g, v, mask)
            } else if attr[v] {
                att_strat[v]
            } else {
                let s = if p == Player::Max { &inner.even_strategy } else { &inner.odd_strategy };
                s[v]
            };
            sol.set(p, v, choice);
        }
        return sol;
    }
    let opp = p.opponent();
    let opp_target: Vec<bool> = (0..n).map(|v| sub[v] && won_by(&inner, v, opp)).collect();
    let (battr, batt_strat) = attractor(g, mask, &opp_target, opp);
    let rest: Vec<bool> = (0..n).map(|v| mask[v] && !battr[v]).collect();
    let second = zielonka(g, &rest);
    for v in 0..n {
        if !mask[v] {
            continue;
        }
        if battr[v] {
            sol.even[v] = opp == Player::Max;
            if g.owner[v] == opp {
                let choice = if opp_target[v] {
                    let s = if opp == Player::Max { &inner.even_strategy } else { &inner.odd_strategy };
                    s[v]
                } else {
                    batt_strat[v]
                };
                sol.set(opp, v, choice);
            }
        } else {
            sol.even[v] = second.even[v];
            sol.even_strategy[v] = second.even_strategy[v];
            sol.odd_strategy[v] = second.odd_strategy[v];
        }
    }
    sol
}

/// Even player's winning region.
pub fn solve_parity(g: &TurnBasedGame) -> Vec<bool> {
    zielonka(g, &g.full_mask()).even
}

/// Winning region through the mean-payoff reduction: priority `p` becomes weight
/// `(-(n+1))^p`, and the even player wins exactly where the value is positive.
pub fn solve_parity_via_mean_payoff(g: &TurnBasedGame) -> Vec<bool> {
    let base = g.len() as i64 + 1;
    let weight = g
        .priority
        .iter()
        .map(|&p| {
            let mag = base.checked_pow(p).expect("priority too large for the reduction");
            if p % 2 == 0 {
                mag
            } else {
                -mag
            }
        })
        .collect();
    let h = TurnBasedGame { weight, ..g.clone() };
    solve_mean_payoff(&h).into_iter().map(|v| v > num_traits::Zero::zero()).collect()
}
