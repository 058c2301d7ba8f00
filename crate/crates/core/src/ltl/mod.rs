//! LTL formulae: parsing, printing and exact evaluation on ultimately periodic words.

mod eval;
mod parse;

use std::collections::BTreeSet;
use std::fmt;

pub use eval::{eval_masks, eval_on_lasso};
pub use parse::parse_formula;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ltl {
    True,
    False,
    Atom(String),
    Not(Box<Ltl>),
    And(Box<Ltl>, Box<Ltl>),
    Or(Box<Ltl>, Box<Ltl>),
    Implies(Box<Ltl>, Box<Ltl>),
    Next(Box<Ltl>),
    Until(Box<Ltl>, Box<Ltl>),
    Eventually(Box<Ltl>),
    Always(Box<Ltl>),
}

pub type LtlFormula = Ltl;

impl Ltl {
    pub fn atom(name: &str) -> Ltl {
        Ltl::Atom(name.to_string())
    }
    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Ltl) -> Ltl {
        Ltl::Not(Box::new(f))
    }
    pub fn and(a: Ltl, b: Ltl) -> Ltl {
        Ltl::And(Box::new(a), Box::new(b))
    }
    pub fn or(a: Ltl, b: Ltl) -> Ltl {
        Ltl::Or(Box::new(a), Box::new(b))
    }
    pub fn implies(a: Ltl, b: Ltl) -> Ltl {
        Ltl::Implies(Box::new(a), Box::new(b))
    }
    pub fn next(f: Ltl) -> Ltl {
        Ltl::Next(Box::new(f))
    }
    pub fn until(a: Ltl, b: Ltl) -> Ltl {
        Ltl::Until(Box::new(a), Box::new(b))
    }
    pub fn eventually(f: Ltl) -> Ltl {
        Ltl::Eventually(Box::new(f))
    }
    pub fn always(f: Ltl) -> Ltl {
        Ltl::Always(Box::new(f))
    }

    /// Operator nodes plus atom occurrences.
    pub fn size(&self) -> usize {
        1 + self.children().iter().map(|c| c.size()).sum::<usize>()
    }

    pub fn children(&self) -> Vec<&Ltl> {
        match self {
            Ltl::True | Ltl::False | Ltl::Atom(_) => vec![],
            Ltl::Not(a) | Ltl::Next(a) | Ltl::Eventually(a) | Ltl::Always(a) => vec![a],
            Ltl::And(a, b) | Ltl::Or(a, b) | Ltl::Implies(a, b) | Ltl::Until(a, b) => vec![a, b],
        }
    }

    pub fn atoms(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut BTreeSet<String>) {
        if let Ltl::Atom(p) = self {
            out.insert(p.clone());
        }
        for c in self.children() {
            c.collect_atoms(out);
        }
    }
}

fn prec(f: &Ltl) -> u8 {
    match f {
        Ltl::Implies(..) => 0,
        Ltl::Or(..) => 1,
        Ltl::And(..) => 2,
        Ltl::Until(..) => 3,
        _ => 4,
    }
}

struct Sub<'a>(&'a Ltl, u8);

impl fmt::Display for Sub<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if prec(self.0) < self.1 {
            write!(f, "({})", self.0)
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl fmt::Display for Ltl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ltl::True => write!(f, "true"),
            Ltl::False => write!(f, "false"),
            Ltl::Atom(p) => write!(f, "{p}"),
            Ltl::Not(a) => write!(f, "!{}", Sub(a, 4)),
            Ltl::Next(a) => write!(f, "X {}", Sub(a, 4)),
            Ltl::Eventually(a) => write!(f, "F {}", Sub(a, 4)),
            Ltl::Always(a) => write!(f, "G {}", Sub(a, 4)),
            Ltl::Implies(a, b) => write!(f, "{} -> {}", Sub(a, 1), Sub(b, 0)),
            Ltl::Or(a, b) => write!(f, "{} | {}", Sub(a, 1), Sub(b, 2)),
            Ltl::And(a, b) => write!(f, "{} & {}", Sub(a, 2), Sub(b, 3)),
            Ltl::Until(a, b) => write!(f, "{} U {}", Sub(a, 4), Sub(b, 3)),
        }
    }
}

/// An ultimately periodic word `prefix . cycle^omega` over atom sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LassoWord {
    pub prefix: Vec<BTreeSet<String>>,
    pub cycle: Vec<BTreeSet<String>>,
}

impl LassoWord {
    pub fn new(prefix: Vec<BTreeSet<String>>, cycle: Vec<BTreeSet<String>>) -> LassoWord {
        assert!(!cycle.is_empty(), "lasso cycle must be nonempty");
        LassoWord { prefix, cycle }
    }

    /// Build from string slices, e.g. `&[&["p"], &[]]`.
    pub fn from_strs(prefix: &[&[&str]], cycle: &[&[&str]]) -> LassoWord {
        let conv = |xs: &[&[&str]]| xs.iter().map(|l| l.iter().map(|s| s.to_string()).collect()).collect();
        LassoWord::new(conv(prefix), conv(cycle))
    }

    /// Letters as bitmasks relative to `atoms`; unknown atoms are dropped.
    pub fn masks(&self, atoms: &[String]) -> (Vec<u64>, Vec<u64>) {
        let m = |l: &BTreeSet<String>| atoms.iter().enumerate().filter(|(_, a)| l.contains(*a)).fold(0u64, |acc, (i, _)| acc | (1 << i));
        (self.prefix.iter().map(m).collect(), self.cycle.iter().map(m).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn size_counts_atoms_and_operators() {
        let f = parse_formula("G (load1 -> X (!load1 U exit1))").unwrap();
        assert_eq!(f.size(), 8);
        assert_eq!(parse_formula("p").unwrap().size(), 1);
    }

    #[test]
    fn print_reparse() {
        for s in ["p U q U r", "(p U q) U r", "a -> b -> c", "(a -> b) -> c", "!(a & b) | X F G c", "a & (b | c)"] {
            let f = parse_formula(s).unwrap();
            let g = parse_formula(&f.to_string()).unwrap();
            assert_eq!(f, g, "{s} printed as {f}");
        }
    }
}
