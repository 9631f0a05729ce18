//! Exact rational scalars.

use num::{BigInt, BigRational, One, Signed, Zero};

pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn frac(p: i64, q: i64) -> Scalar {
    Scalar::new(BigInt::from(p), BigInt::from(q))
}

pub fn zero() -> Scalar {
    Scalar::zero()
}

pub fn one() -> Scalar {
    Scalar::one()
}

/// Parses `"p/q"` or `"p"`; the result is in lowest terms.
pub fn parse(s: &str) -> Option<Scalar> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(Scalar::new(p, q))
        }
        None => Some(Scalar::from_integer(s.parse().ok()?)),
    }
}

/// `"p/q"`, or `"p"` for integers.
pub fn format(x: &Scalar) -> String {
    x.to_string()
}

pub fn sign(x: &Scalar) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

pub fn pow(x: &Scalar, e: u32) -> Scalar {
    let mut r = one();
    for _ in 0..e {
        r *= x;
    }
    r
}

/// Rational square root when `x` is a perfect square of a rational.
pub fn sqrt_exact(x: &Scalar) -> Option<Scalar> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    if &(&n * &n) == x.numer() && &(&d * &d) == x.denom() {
        Some(Scalar::new(n, d))
    } else {
        None
    }
}

/// The deterministic grid 0, 1, -1, 2, -2, 1/2, -1/2, 3, -3, 1/3, ... ordered by height.
pub fn grid(len: usize) -> Vec<Scalar> {
    let mut out = vec![zero()];
    let mut h: i64 = 1;
    while out.len() < len {
        for q in 1..=h {
            for p in 1..=h {
                if p.max(q) != h || num::integer::gcd(p, q) != 1 {
                    continue;
                }
                out.push(frac(p, q));
                out.push(frac(-p, q));
            }
        }
        h += 1;
    }
    out.truncate(len);
    out
}
