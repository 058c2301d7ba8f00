//! Exact rational helpers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Parse `p/q` (or a bare integer) into an exact rational.
pub fn parse_q(s: &str) -> Result<Q> {
    let bad = || Error::BadInput(format!("expected rational p/q, got {s:?}"));
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Q::new(n, d))
}

/// Always `p/q`, even for integers.
pub fn fmt_q(x: &Q) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

pub fn lcm_denoms<'a>(xs: impl IntoIterator<Item = &'a Q>) -> BigInt {
    xs.into_iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// The unique fraction with denominator at most `max_den` lying within `tol` of `x`, if any.
pub fn snap(x: &Q, tol: &Q, max_den: u64) -> Option<Q> {
    for d in 1..=max_den.max(1) {
        let d = BigInt::from(d);
        let scaled = x * Q::from_integer(d.clone());
        let p = scaled.round().to_integer();
        let cand = Q::new(p, d);
        if (&cand - x).abs() <= *tol {
            return Some(cand);
        }
    }
    None
}

pub fn to_f64(x: &Q) -> f64 {
    x.numer().to_f64().unwrap_or(f64::NAN) / x.denom().to_f64().unwrap_or(f64::NAN)
}
