//! LTL to deterministic parity automata: tableau NBA, then Safra-Piterman trees.

mod dpw;
mod nba;

pub use dpw::{compress, determinize, determinize_with_budget, Dpw, DEFAULT_DPW_BUDGET};
pub use nba::{ltl_to_nba, Nba};

use crate::error::Result;
use crate::ltl::{LassoWord, Ltl};

/// Sizes recorded while compiling a goal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CompileStats {
    pub nba_states: usize,
    pub raw_dpw_states: usize,
    pub dpw_states: usize,
    pub priorities: usize,
}

pub fn ltl_to_dpw(f: &Ltl, atoms: &[String]) -> Result<Dpw> {
    ltl_to_dpw_with_stats(f, atoms, DEFAULT_DPW_BUDGET).map(|(d, _)| d)
}

pub fn ltl_to_dpw_with_stats(f: &Ltl, atoms: &[String], budget: usize) -> Result<(Dpw, CompileStats)> {
    let nba = ltl_to_nba(f, atoms);
    let raw = determinize_with_budget(&nba, budget)?;
    let dpw = raw.reduce();
    let stats = CompileStats {
        nba_states: nba.num_states(),
        raw_dpw_states: raw.num_states(),
        dpw_states: dpw.num_states(),
        priorities: dpw.num_priorities(),
    };
    log::debug!("compiled {f}: {stats:?}");
    Ok((dpw, stats))
}

pub fn dpw_accepts_lasso(d: &Dpw, w: &LassoWord) -> bool {
    d.accepts_lasso(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ltl::{eval_masks, parse_formula};
    use proptest::prelude::*;

    fn atoms() -> Vec<String> {
        vec!["p".into(), "q".into()]
    }

    fn lassos(max_len: usize, letters: u64) -> Vec<(Vec<u64>, Vec<u64>)> {
        let mut out = Vec::new();
        for len in 1..=max_len {
            for code in 0..letters.pow(len as u32) {
                let mut c = code;
                let word: Vec<u64> = (0..len)
                    .map(|_| {
                        let l = c % letters;
                        c /= letters;
                        l
                    })
                    .collect();
                for p in 0..len {
                    out.push((word[..p].to_vec(), word[p..].to_vec()));
                }
            }
        }
        out
    }

    fn check(s: &str) {
        let f = parse_formula(s).unwrap();
        let d = ltl_to_dpw(&f, &atoms()).unwrap();
        let nd = ltl_to_dpw(&Ltl::not(f.clone()), &atoms()).unwrap();
        for (pre, cyc) in lassos(4, 4) {
            let truth = eval_masks(&f, &atoms(), &pre, &cyc);
            assert_eq!(d.accepts_masks(&pre, &cyc), truth, "{s} {pre:?} {cyc:?}");
            assert_eq!(nd.accepts_masks(&pre, &cyc), !truth, "!({s}) {pre:?} {cyc:?}");
        }
    }

    #[test]
    fn fixed_formulas() {
        for s in [
            "true",
            "false",
            "p",
            "X p",
            "G p",
            "F p",
            "G F p",
            "F G p",
            "p U q",
            "G F p -> G F q",
            "G (p -> X (!p U q))",
            "F G p | G F q",
            "(G F p) & (G F q)",
            "X X !p U q",
            "F (p & X G !q)",
        ] {
            check(s);
        }
    }

    #[test]
    fn constant_automata() {
        let t = ltl_to_dpw(&Ltl::True, &atoms()).unwrap();
        assert_eq!(t.num_states(), 1);
        assert_eq!(t.priority[0] % 2, 0);
        let f = ltl_to_dpw(&Ltl::False, &atoms()).unwrap();
        assert_eq!(f.num_states(), 1);
        assert_eq!(f.priority[0] % 2, 1);
    }

    #[test]
    fn safety_is_small() {
        let d = ltl_to_dpw(&parse_formula("G p").unwrap(), &["p".to_string()]).unwrap();
        assert_eq!(d.num_states(), 2);
        let w = LassoWord::from_strs(&[&["p"]], &[&[]]);
        assert!(!dpw_accepts_lasso(&d, &w));
    }

    #[test]
    fn empty_nba_gives_rejecting_dpw() {
        let nba = Nba { atoms: atoms(), initial: vec![0], trans: vec![vec![vec![0]; 4]], accepting: vec![false] };
        let d = determinize(&nba);
        for (pre, cyc) in lassos(3, 4) {
            assert!(!d.accepts_masks(&pre, &cyc));
        }
    }

    #[test]
    fn priority_bound_and_counts() {
        let f = parse_formula("G F p -> G F q").unwrap();
        let nba = ltl_to_nba(&f, &atoms());
        let raw = determinize(&nba);
        assert!(raw.priority.iter().all(|&p| p <= 2 * nba.num_states() as u32 + 2));
        let (_, stats) = ltl_to_dpw_with_stats(&f, &atoms(), DEFAULT_DPW_BUDGET).unwrap();
        assert!(stats.dpw_states <= stats.raw_dpw_states);
    }

    #[test]
    fn budget_is_enforced() {
        let f = parse_formula("G F p -> G F q").unwrap();
        assert!(matches!(ltl_to_dpw_with_stats(&f, &atoms(), 2), Err(crate::Error::Budget(_))));
    }

    #[test]
    fn dump_lists_every_transition() {
        let d = ltl_to_dpw(&parse_formula("F p").unwrap(), &["p".to_string()]).unwrap();
        assert_eq!(d.dump().lines().count(), 2 + 2 * d.num_states());
    }

    #[test]
    fn compress_keeps_order_and_parity() {
        assert_eq!(compress(&[3, 7, 8, 12]), vec![1, 3, 4, 6]);
        assert_eq!(compress(&[2, 4, 5]), vec![0, 2, 3]);
    }

    fn arb_formula() -> impl Strategy<Value = Ltl> {
        let leaf = prop_oneof![Just(Ltl::atom("p")), Just(Ltl::atom("q")), Just(Ltl::True)];
        leaf.prop_recursive(3, 8, 2, |inner| {
            prop_oneof![
                inner.clone().prop_map(Ltl::not),
                inner.clone().prop_map(Ltl::next),
                inner.clone().prop_map(Ltl::eventually),
                inner.clone().prop_map(Ltl::always),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Ltl::and(a, b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Ltl::or(a, b)),
                (inner.clone(), inner).prop_map(|(a, b)| Ltl::until(a, b)),
            ]
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(60))]
        #[test]
        fn nba_and_dpw_agree(f in arb_formula()) {
            let nba = ltl_to_nba(&f, &atoms());
            let d = ltl_to_dpw(&f, &atoms()).unwrap();
            for (pre, cyc) in lassos(3, 4) {
                prop_assert_eq!(nba.accepts_masks(&pre, &cyc), d.accepts_masks(&pre, &cyc));
            }
        }
    }
}
