use super::{Player, TurnBasedGame};

/// Attractor of `target` for `player` inside `mask`, with a choice for each of
/// the player's vertices in the attractor but outside the target.
/// Returns `(attr, strategy)`; `strategy[v] == usize::MAX` where undefined.
pub fn attractor(g: &TurnBasedGame, mask: &[bool], target: &[bool], player: Player) -> (Vec<bool>, Vec<usize>) {
    let n = g.len();
    let pred = g.predecessors();
    let mut attr = vec![false; n];
    let mut strat = vec![usize::MAX; n];
    let mut count: Vec<usize> = (0..n).map(|v| if mask[v] { g.succ[v].iter().filter(|&&u| mask[u]).count() } else { 0 }).collect();
    let mut queue = Vec::new();
    for v in 0..n {
        if mask[v] && target[v] {
            attr[v] = true;
            queue.push(v);
        }
    }
    while let Some(u) = queue.pop() {
        for &v in &pred[u] {
            if !mask[v] || attr[v] {
                continue;
            }
            if g.owner[v] == player {
                attr[v] = true;
                strat[v] = u;
                queue.push(v);
            } else {
                // duplicate edges are counted once per occurrence
                count[v] -= 1;
                if count[v] == 0 {
                    attr[v] = true;
                    queue.push(v);
                }
            }
        }
    }
    (attr, strat)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn opponent_must_be_forced() {
        // 0 (min) -> 1, 2 ; 1 (max) -> 2 ; 2 target ; 3 (max) -> 0, 3
        let g = TurnBasedGame {
            owner: vec![Player::Min, Player::Max, Player::Max, Player::Max],
            succ: vec![vec![1, 2], vec![2], vec![2], vec![0, 3]],
            weight: vec![0; 4],
            priority: vec![0; 4],
        };
        let target = vec![false, false, true, false];
        let (a, s) = attractor(&g, &g.full_mask(), &target, Player::Max);
        assert_eq!(a, vec![true, true, true, true]);
        assert_eq!(s[1], 2);
        assert_eq!(s[3], 0);
        let (a, _) = attractor(&g, &g.full_mask(), &target, Player::Min);
        assert_eq!(a, vec![true, true, true, false]);
    }
}
