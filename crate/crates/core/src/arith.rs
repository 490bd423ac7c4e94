//! Exact integer and rational helpers.
//!
//! Rational angles enter the classifier as exact `p/q` and are never
//! converted to floats before the arithmetic dichotomy is decided.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}

/// A reduced fraction `p/q` with `q >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RationalRepr", into = "RationalRepr")]
pub struct Rational {
    p: i64,
    q: i64,
}

#[derive(Serialize, Deserialize)]
struct RationalRepr {
    p: i64,
    q: i64,
}

impl TryFrom<RationalRepr> for Rational {
    type Error = Error;

    fn try_from(r: RationalRepr) -> Result<Self> {
        Rational::new(r.p, r.q)
    }
}

impl From<Rational> for RationalRepr {
    fn from(r: Rational) -> Self {
        RationalRepr { p: r.p, q: r.q }
    }
}

impl Rational {
    /// Builds `p/q`, rejecting fractions that are not in lowest terms.
    pub fn new(p: i64, q: i64) -> Result<Self> {
        if q <= 0 {
            return Err(Error::ZeroDenominator(q));
        }
        if gcd(p.unsigned_abs(), q.unsigned_abs()) != 1 {
            return Err(Error::NotCoprime { p, q });
        }
        Ok(Rational { p, q })
    }

    /// Builds `p/q` and reduces it.
    pub fn reduced(p: i64, q: i64) -> Result<Self> {
        if q == 0 {
            return Err(Error::ZeroDenominator(q));
        }
        let g = gcd(p.unsigned_abs(), q.unsigned_abs()) as i64;
        let (p, q) = (p / g, q / g);
        if q < 0 {
            Ok(Rational { p: -p, q: -q })
        } else {
            Ok(Rational { p, q })
        }
    }

    pub fn integer(n: i64) -> Self {
        Rational { p: n, q: 1 }
    }

    pub fn numer(&self) -> i64 {
        self.p
    }

    pub fn denom(&self) -> i64 {
        self.q
    }

    /// The representative of `self` modulo 1 in `[0, 1)`.
    pub fn fract(&self) -> Rational {
        Rational {
            p: self.p.rem_euclid(self.q),
            q: self.q,
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.p as f64 / self.q as f64
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.q == 1 {
            write!(f, "{}", self.p)
        } else {
            write!(f, "{}/{}", self.p, self.q)
        }
    }
}
