use super::{LassoWord, Ltl};

/// Truth of `f` on `prefix . cycle^omega`, letters given as bitmasks over `atoms`.
pub fn eval_masks(f: &Ltl, atoms: &[String], prefix: &[u64], cycle: &[u64]) -> bool {
    assert!(!cycle.is_empty());
    let p = prefix.len();
    let n = p + cycle.len();
    let letter = |i: usize| if i < p { prefix[i] } else { cycle[i - p] };
    let succ = |i: usize| if i + 1 < n { i + 1 } else { p };
    let letters: Vec<u64> = (0..n).map(letter).collect();
    let succs: Vec<usize> = (0..n).map(succ).collect();
    let v = eval_node(f, atoms, &letters, &succs);
    v[0]
}

fn fixpoint(init: bool, n: usize, step: impl Fn(&[bool], usize) -> bool) -> Vec<bool> {
    let mut cur = vec![init; n];
    loop {
        let mut changed = false;
        for i in (0..n).rev() {
            let x = step(&cur, i);
            if x != cur[i] {
                cur[i] = x;
                changed = true;
            }
        }
        if !changed {
            return cur;
        }
    }
}

fn eval_node(f: &Ltl, atoms: &[String], letters: &[u64], succ: &[usize]) -> Vec<bool> {
    let n = letters.len();
    let rec = |g: &Ltl| eval_node(g, atoms, letters, succ);
    match f {
        Ltl::True => vec![true; n],
        Ltl::False => vec![false; n],
        Ltl::Atom(name) => match atoms.iter().position(|a| a == name) {
            Some(k) => letters.iter().map(|l| l >> k & 1 == 1).collect(),
            None => vec![false; n],
        },
        Ltl::Not(a) => rec(a).into_iter().map(|x| !x).collect(),
        Ltl::And(a, b) => rec(a).into_iter().zip(rec(b)).map(|(x, y)| x && y).collect(),
        Ltl::Or(a, b) => rec(a).into_iter().zip(rec(b)).map(|(x, y)| x || y).collect(),
        Ltl::Implies(a, b) => rec(a).into_iter().zip(rec(b)).map(|(x, y)| !x || y).collect(),
        Ltl::Next(a) => {
            let va = rec(a);
            (0..n).map(|i| va[succ[i]]).collect()
        }
        Ltl::Until(a, b) => {
            let (va, vb) = (rec(a), rec(b));
            fixpoint(false, n, |cur, i| vb[i] || (va[i] && cur[succ[i]]))
        }
        Ltl::Eventually(a) => {
            let va = rec(a);
            fixpoint(false, n, |cur, i| va[i] || cur[succ[i]])
        }
        Ltl::Always(a) => {
            let va = rec(a);
            fixpoint(true, n, |cur, i| va[i] && cur[succ[i]])
        }
    }
}

pub fn eval_on_lasso(f: &Ltl, w: &LassoWord) -> bool {
    let atoms: Vec<String> = f.atoms().into_iter().collect();
    let (p, c) = w.masks(&atoms);
    eval_masks(f, &atoms, &p, &c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ltl::parse_formula;
    use proptest::prelude::*;

    fn ev(s: &str, prefix: &[&[&str]], cycle: &[&[&str]]) -> bool {
        eval_on_lasso(&parse_formula(s).unwrap(), &LassoWord::from_strs(prefix, cycle))
    }

    #[test]
    fn small_cases() {
        assert!(ev("G p", &[], &[&["p"]]));
        assert!(!ev("F q", &[&[]], &[&[]]));
        assert!(ev("p U q", &[&["p"]], &[&["q"]]));
        assert!(!ev("G F p", &[&["p"]], &[&[]]));
        assert!(ev("F G p", &[&[]], &[&["p"]]));
        assert!(ev("X p", &[&[]], &[&["p"]]));
        assert!(!ev("X p", &[&["p"]], &[&[]]));
        assert!(ev("G F p", &[], &[&[], &[], &["p"]]));
    }

    fn arb_formula() -> impl Strategy<Value = Ltl> {
        let leaf = prop_oneof![Just(Ltl::True), Just(Ltl::False), Just(Ltl::atom("p")), Just(Ltl::atom("q")),];
        leaf.prop_recursive(4, 16, 2, |inner| {
            prop_oneof![
                inner.clone().prop_map(Ltl::not),
                inner.clone().prop_map(Ltl::next),
                inner.clone().prop_map(Ltl::eventually),
                inner.clone().prop_map(Ltl::always),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Ltl::and(a, b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Ltl::or(a, b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Ltl::implies(a, b)),
                (inner.clone(), inner).prop_map(|(a, b)| Ltl::until(a, b)),
            ]
        })
    }

    fn atoms() -> Vec<String> {
        vec!["p".into(), "q".into()]
    }

    proptest! {
        #[test]
        fn negation_flips(f in arb_formula(), pre in prop::collection::vec(0u64..4, 0..3), cyc in prop::collection::vec(0u64..4, 1..4)) {
            let a = atoms();
            prop_assert_eq!(eval_masks(&Ltl::not(f.clone()), &a, &pre, &cyc), !eval_masks(&f, &a, &pre, &cyc));
        }

        #[test]
        fn rotation_invariant(f in arb_formula(), pre in prop::collection::vec(0u64..4, 0..3), cyc in prop::collection::vec(0u64..4, 1..4), k in 0usize..4) {
            let a = atoms();
            let k = k % cyc.len();
            let mut pre2 = pre.clone();
            pre2.extend_from_slice(&cyc[..k]);
            let mut cyc2 = cyc[k..].to_vec();
            cyc2.extend_from_slice(&cyc[..k]);
            prop_assert_eq!(eval_masks(&f, &a, &pre, &cyc), eval_masks(&f, &a, &pre2, &cyc2));
        }

        #[test]
        fn until_expansion(f in arb_formula(), g in arb_formula(), pre in prop::collection::vec(0u64..4, 0..3), cyc in prop::collection::vec(0u64..4, 1..4)) {
            let a = atoms();
            let u = Ltl::until(f.clone(), g.clone());
            let lhs = eval_masks(&u, &a, &pre, &cyc);
            let now = |h: &Ltl| eval_masks(h, &a, &pre, &cyc);
            let next_u = now(&Ltl::next(u.clone()));
            prop_assert_eq!(lhs, now(&g) || (now(&f) && next_u));
        }
    }
}
