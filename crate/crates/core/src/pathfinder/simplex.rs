//! Exact two-phase simplex with Bland's rule. Runs on checked `i128`
//! fractions first and reruns on big rationals when an operation overflows.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::Q;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rel {
    Le,
    Ge,
    Eq,
}

/// `maximize objective . x` subject to `rows`, `x >= 0`.
#[derive(Debug, Clone, Default)]
pub struct Lp {
    pub num_vars: usize,
    pub rows: Vec<(Vec<(usize, i64)>, Rel, i64)>,
    pub objective: Vec<(usize, i64)>,
}

impl Lp {
    pub fn new(num_vars: usize) -> Lp {
        Lp { num_vars, ..Lp::default() }
    }

    pub fn add(&mut self, coeffs: Vec<(usize, i64)>, rel: Rel, rhs: i64) {
        self.rows.push((coeffs, rel, rhs));
    }

    /// Plain-text tableau listing for debugging.
    pub fn dump(&self) -> String {
        let term = |(j, c): &(usize, i64)| format!("{c:+}*x{j}");
        let mut out = format!("max {}\n", self.objective.iter().map(term).collect::<Vec<_>>().join(" "));
        for (coeffs, rel, rhs) in &self.rows {
            let r = match rel {
                Rel::Le => "<=",
                Rel::Ge => ">=",
                Rel::Eq => "=",
            };
            out.push_str(&format!("{} {r} {rhs}\n", coeffs.iter().map(term).collect::<Vec<_>>().join(" ")));
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpResult {
    Infeasible,
    Unbounded,
    Optimal { value: Q, x: Vec<Q> },
}

trait Field: Clone + PartialEq + Sized {
    fn zero() -> Self;
    fn from_i64(x: i64) -> Self;
    fn add(&self, o: &Self) -> Option<Self>;
    fn sub(&self, o: &Self) -> Option<Self>;
    fn mul(&self, o: &Self) -> Option<Self>;
    fn div(&self, o: &Self) -> Option<Self>;
    fn sign(&self) -> i32;
    fn lt(&self, o: &Self) -> Option<bool>;
    fn to_q(&self) -> Q;
}

/// `n / d` in lowest terms with `d > 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Small(i128, i128);

impl Small {
    fn make(n: i128, d: i128) -> Option<Small> {
        if d == 0 {
            return None;
        }
        let g = n.gcd(&d);
        let (mut n, mut d) = (n / g, d / g);
        if d < 0 {
            n = n.checked_neg()?;
            d = d.checked_neg()?;
        }
        Some(Small(n, d))
    }
}

impl Field for Small {
    fn zero() -> Self {
        Small(0, 1)
    }
    fn from_i64(x: i64) -> Self {
        Small(x as i128, 1)
    }
    fn add(&self, o: &Self) -> Option<Self> {
        let g = self.1.gcd(&o.1);
        let n = self.0.checked_mul(o.1 / g)?.checked_add(o.0.checked_mul(self.1 / g)?)?;
        Small::make(n, (self.1 / g).checked_mul(o.1)?)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        self.add(&Small(o.0.checked_neg()?, o.1))
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        if self.0 == 0 || o.0 == 0 {
            return Some(Small::zero());
        }
        let g1 = self.0.gcd(&o.1);
        let g2 = o.0.gcd(&self.1);
        Small::make((self.0 / g1).checked_mul(o.0 / g2)?, (self.1 / g2).checked_mul(o.1 / g1)?)
    }
    fn div(&self, o: &Self) -> Option<Self> {
        if o.0 == 0 {
            return None;
        }
        self.mul(&Small::make(o.1, o.0)?)
    }
    fn sign(&self) -> i32 {
        self.0.signum() as i32
    }
    fn lt(&self, o: &Self) -> Option<bool> {
        Some(self.0.checked_mul(o.1)? < o.0.checked_mul(self.1)?)
    }
    fn to_q(&self) -> Q {
        Q::new(BigInt::from(self.0), BigInt::from(self.1))
    }
}

impl Field for Q {
    fn zero() -> Self {
        Zero::zero()
    }
    fn from_i64(x: i64) -> Self {
        Q::from_integer(x.into())
    }
    fn add(&self, o: &Self) -> Option<Self> {
        Some(self + o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn div(&self, o: &Self) -> Option<Self> {
        (!o.is_zero()).then(|| self / o)
    }
    fn sign(&self) -> i32 {
        if self.is_positive() {
            1
        } else if self.is_negative() {
            -1
        } else {
            0
        }
    }
    fn lt(&self, o: &Self) -> Option<bool> {
        Some(self < o)
    }
    fn to_q(&self) -> Q {
        self.clone()
    }
}

struct Tableau<F> {
    /// `rows[i]` has one entry per column plus the right-hand side last.
    rows: Vec<Vec<F>>,
    z: Vec<F>,
    basis: Vec<usize>,
    cols: usize,
}

impl<F: Field> Tableau<F> {
    fn pivot(&mut self, r: usize, c: usize) -> Option<()> {
        let p = self.rows[r][c].clone();
        for x in self.rows[r].iter_mut() {
            *x = x.div(&p)?;
        }
        let pivot_row = self.rows[r].clone();
        for i in 0..self.rows.len() {
            if i != r && self.rows[i][c].sign() != 0 {
                let f = self.rows[i][c].clone();
                for (x, y) in self.rows[i].iter_mut().zip(&pivot_row) {
                    if y.sign() != 0 {
                        *x = x.sub(&f.mul(y)?)?;
                    }
                }
            }
        }
        if self.z[c].sign() != 0 {
            let f = self.z[c].clone();
            for (x, y) in self.z.iter_mut().zip(&pivot_row) {
                if y.sign() != 0 {
                    *x = x.sub(&f.mul(y)?)?;
                }
            }
        }
        self.basis[r] = c;
        Some(())
    }

    /// Set the objective row for maximizing `cost`.
    fn set_objective(&mut self, cost: &[F]) -> Option<()> {
        let mut z: Vec<F> = cost.iter().map(|c| F::zero().sub(c)).collect::<Option<_>>()?;
        z.push(F::zero());
        for (i, &b) in self.basis.iter().enumerate() {
            if cost[b].sign() != 0 {
                for (x, y) in z.iter_mut().zip(&self.rows[i]) {
                    *x = x.add(&cost[b].mul(y)?)?;
                }
            }
        }
        self.z = z;
        Some(())
    }

    /// Bland's rule iterations; `allowed` filters entering columns.
    /// Returns `Some(false)` when unbounded.
    fn optimize(&mut self, allowed: &dyn Fn(usize) -> bool) -> Option<bool> {
        loop {
            let Some(c) = (0..self.cols).find(|&j| allowed(j) && self.z[j].sign() < 0) else {
                return Some(true);
            };
            let mut best: Option<(usize, F)> = None;
            for i in 0..self.rows.len() {
                if self.rows[i][c].sign() > 0 {
                    let ratio = self.rows[i][self.cols].div(&self.rows[i][c])?;
                    let better = match &best {
                        None => true,
                        Some((bi, br)) => ratio.lt(br)? || (ratio == *br && self.basis[i] < self.basis[*bi]),
                    };
                    if better {
                        best = Some((i, ratio));
                    }
                }
            }
            let Some((r, _)) = best else {
                return Some(false);
            };
            self.pivot(r, c)?;
        }
    }
}

fn run<F: Field>(lp: &Lp) -> Option<LpResult> {
    let n = lp.num_vars;
    let slack_count = lp.rows.iter().filter(|r| r.1 != Rel::Eq).count();
    let m = lp.rows.len();
    let mut rows: Vec<Vec<F>> = Vec::with_capacity(m);
    let mut slack_col = n;
    let mut basis = vec![usize::MAX; m];
    let mut needs_art = Vec::new();
    for (i, (coeffs, rel, rhs)) in lp.rows.iter().enumerate() {
        let mut row = vec![F::zero(); n + slack_count];
        for &(j, c) in coeffs {
            row[j] = row[j].add(&F::from_i64(c))?;
        }
        let mut slack = None;
        match rel {
            Rel::Le => {
                row[slack_col] = F::from_i64(1);
                slack = Some(slack_col);
                slack_col += 1;
            }
            Rel::Ge => {
                row[slack_col] = F::from_i64(-1);
                slack = Some(slack_col);
                slack_col += 1;
            }
            Rel::Eq => {}
        }
        let mut b = F::from_i64(*rhs);
        if *rhs < 0 {
            for x in row.iter_mut() {
                *x = F::zero().sub(x)?;
            }
            b = F::zero().sub(&b)?;
        }
        match slack {
            Some(s) if row[s].sign() > 0 => basis[i] = s,
            _ => needs_art.push(i),
        }
        row.push(b);
        rows.push(row);
    }
    let art_start = n + slack_count;
    let cols = art_start + needs_art.len();
    for row in rows.iter_mut() {
        let b = row.pop().unwrap();
        row.resize(cols, F::zero());
        row.push(b);
    }
    for (k, &i) in needs_art.iter().enumerate() {
        rows[i][art_start + k] = F::from_i64(1);
        basis[i] = art_start + k;
    }
    let mut t = Tableau { rows, z: Vec::new(), basis, cols };
    if !needs_art.is_empty() {
        let cost: Vec<F> = (0..cols).map(|j| F::from_i64(if j >= art_start { -1 } else { 0 })).collect();
        t.set_objective(&cost)?;
        t.optimize(&|_| true)?;
        if t.z[cols].sign() < 0 {
            return Some(LpResult::Infeasible);
        }
        for i in 0..m {
            if t.basis[i] >= art_start {
                if let Some(c) = (0..art_start).find(|&j| t.rows[i][j].sign() != 0) {
                    t.pivot(i, c)?;
                }
            }
        }
    }
    let mut cost = vec![F::zero(); cols];
    for &(j, c) in &lp.objective {
        cost[j] = cost[j].add(&F::from_i64(c))?;
    }
    t.set_objective(&cost)?;
    if !t.optimize(&|j| j < art_start)? {
        return Some(LpResult::Unbounded);
    }
    let mut x = vec![<Q as Zero>::zero(); n];
    for (i, &b) in t.basis.iter().enumerate() {
        if b < n {
            x[b] = t.rows[i][cols].to_q();
        }
    }
    Some(LpResult::Optimal { value: t.z[cols].to_q(), x })
}

pub fn solve(lp: &Lp) -> LpResult {
    run::<Small>(lp).unwrap_or_else(|| {
        log::debug!("simplex overflowed i128, rerunning on big rationals");
        run::<Q>(lp).expect("exact simplex cannot fail")
    })
}

/// Positive integer multiple of `xs` with all entries integral.
pub fn integer_scaling(xs: &[Q]) -> Vec<BigInt> {
    let l = xs.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    xs.iter().map(|x| (x * Q::from_integer(l.clone())).to_integer()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, q};

    #[test]
    fn small_lp() {
        // max x + y, x + 2y <= 4, 3x + y <= 6
        let mut lp = Lp::new(2);
        lp.objective = vec![(0, 1), (1, 1)];
        lp.add(vec![(0, 1), (1, 2)], Rel::Le, 4);
        lp.add(vec![(0, 3), (1, 1)], Rel::Le, 6);
        match solve(&lp) {
            LpResult::Optimal { value, x } => {
                assert_eq!(value, frac(14, 5));
                assert_eq!(x, vec![frac(8, 5), frac(6, 5)]);
            }
            r => panic!("{r:?}"),
        }
    }

    #[test]
    fn infeasible_and_unbounded() {
        let mut lp = Lp::new(1);
        lp.add(vec![(0, 1)], Rel::Ge, 2);
        lp.add(vec![(0, 1)], Rel::Le, 1);
        assert_eq!(solve(&lp), LpResult::Infeasible);
        let mut lp = Lp::new(1);
        lp.objective = vec![(0, 1)];
        lp.add(vec![(0, 1)], Rel::Ge, 2);
        assert_eq!(solve(&lp), LpResult::Unbounded);
    }

    #[test]
    fn equalities_and_negative_rhs() {
        // x - y = -1, x + y >= 3, min x (max -x)
        let mut lp = Lp::new(2);
        lp.objective = vec![(0, -1)];
        lp.add(vec![(0, 1), (1, -1)], Rel::Eq, -1);
        lp.add(vec![(0, 1), (1, 1)], Rel::Ge, 3);
        match solve(&lp) {
            LpResult::Optimal { value, x } => {
                assert_eq!(value, q(-1));
                assert_eq!(x, vec![q(1), q(2)]);
            }
            r => panic!("{r:?}"),
        }
        assert!(lp.dump().contains(">= 3"));
    }

    #[test]
    fn scaling() {
        assert_eq!(integer_scaling(&[frac(1, 2), frac(1, 3)]), vec![BigInt::from(3), BigInt::from(2)]);
    }
}
