#![allow(clippy::needless_range_loop)]

use lexeq::arena::Payoff;
use lexeq::oracle::{brute_lex_value_exact, brute_mean_payoff, brute_threshold_lasso};
use lexeq::pathfinder::{find_threshold_lasso, MultiWeightedGraph};
use lexeq::rational::q;
use lexeq::zerosum::{lex_values, solve_mean_payoff, Player, TurnBasedGame};
use proptest::prelude::*;

fn game() -> impl Strategy<Value = TurnBasedGame> {
    (2usize..=5).prop_flat_map(|n| {
        (
            prop::collection::vec(any::<bool>(), n),
            prop::collection::vec(prop::collection::btree_set(0..n, 1..=2), n),
            prop::collection::vec(-3i64..=3, n),
            prop::collection::vec(0u32..=3, n),
        )
            .prop_map(|(own, succ, weight, priority)| TurnBasedGame {
                owner: own.into_iter().map(|b| if b { Player::Max } else { Player::Min }).collect(),
                succ: succ.into_iter().map(|s| s.into_iter().collect()).collect(),
                weight,
                priority,
            })
    })
}

fn graph() -> impl Strategy<Value = MultiWeightedGraph> {
    (2usize..=4).prop_flat_map(|n| {
        (
            prop::collection::vec(prop::collection::btree_set(0..n, 1..=2), n),
            prop::collection::vec(prop::collection::vec(-2i64..=2, n), 2),
            prop::collection::vec(prop::collection::vec(0u32..=2, n), 2),
        )
            .prop_map(|(adj, weights, priorities)| MultiWeightedGraph {
                adj: adj.into_iter().map(|s| s.into_iter().collect()).collect(),
                weights,
                priorities,
                start: 0,
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn lex_values_match_enumeration(g in game()) {
        prop_assert_eq!(lex_values(&g), brute_lex_value_exact(&g).unwrap());
    }

    #[test]
    fn mean_payoff_matches_enumeration(g in game()) {
        prop_assert_eq!(solve_mean_payoff(&g), brute_mean_payoff(&g).unwrap());
    }

    #[test]
    fn threshold_lasso_matches_enumeration(
        g in graph(),
        sats in prop::collection::vec(any::<bool>(), 2),
        ts in prop::collection::vec(-2i64..=1, 2),
    ) {
        let f: Vec<Payoff> = sats.iter().zip(&ts).map(|(&s, &t)| Payoff::new(s, q(t))).collect();
        let fast = find_threshold_lasso(&g, &f);
        let slow = brute_threshold_lasso(&g, &f, 12).unwrap();
        // the enumeration is capped at 12 steps, so it can only miss lassos
        prop_assert!(slow.is_none() || fast.is_some());
        if let Some(l) = fast {
            for a in 0..2 {
                prop_assert!(l.payoff(&g, a) > f[a]);
            }
        }
    }
}
