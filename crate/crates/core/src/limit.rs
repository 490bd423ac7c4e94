//! Symbolic limits of parametric subgroup sequences in the Chabauty topology.
//!
//! The classifier consumes only limiting parameter data ([`SequenceSpec`]) and
//! returns the limiting subgroup. Rational angles are kept exact: whether the
//! limit of a degenerating lattice is a line subgroup or the whole plane is an
//! arithmetic question that floats cannot answer.
//!
//! Rules for `C*`:
//!
//! | sequence | parameters | limit |
//! |---|---|---|
//! | `A^{m_n}` | `m_n → ∞` | `iR` |
//! | `A^{m_n}` | `m_n → m` | `A^m` |
//! | `B^{m_n}_{z_n}` | `m_n → ∞`, `Re z_n → x` | `C_x` |
//! | `B^{m}_{z_n}` | `Re z_n → ∞` | `A^m` |
//! | `B^{m}_{z_n}` | `z_n → z`, `0 < Re z < ∞` | `B^m_z` |
//! | `B^{m}_{z_n}` | `Re z_n → 0`, `θ` irrational | `C` |
//! | `B^{m}_{z_n}` | `Re z_n → 0`, `θ = p/q`, `t_n → t` | `D^{lcm(m,q)}_t` |
//! | `B^{m}_{z_n}` | `Re z_n → 0`, `θ = p/q`, `t_n → ±∞` | `C` |
//! | `C_{x_n}` | `x_n → 0` / `∞` / `x` | `C` / `iR` / `C_x` |
//! | `D^{m_n}_{t_n}` | `m_n → ∞` or `t_n → ±∞` | `C` |
//! | `D^{m_n}_{t_n}` | `m_n → m`, `t_n → t` | `D^m_t` |
//!
//! Here `z_n = x_n + 2iπθ_n` and `t_n = 2π(θ_n - θ)/x_n`.

use std::cmp::Ordering;
use std::f64::consts::TAU;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::arith::{gcd, lcm, Rational};
use crate::error::{Error, Result};
use crate::subgroup::{CStarSubgroup, RSubgroup, Subgroup};

/// A point of `[-∞, +∞]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ExtRepr", into = "ExtRepr")]
pub enum ExtendedReal {
    NegInfinity,
    Finite(f64),
    PosInfinity,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum ExtRepr {
    Num(f64),
    Text(String),
}

impl TryFrom<ExtRepr> for ExtendedReal {
    type Error = Error;

    fn try_from(r: ExtRepr) -> Result<Self> {
        match r {
            ExtRepr::Num(v) => ExtendedReal::new(v),
            ExtRepr::Text(s) => match s.as_str() {
                "inf" | "+inf" | "infinity" | "+infinity" => Ok(ExtendedReal::PosInfinity),
                "-inf" | "-infinity" => Ok(ExtendedReal::NegInfinity),
                other => Err(Error::InvalidParameter(format!(
                    "not an extended real: {other:?}"
                ))),
            },
        }
    }
}

impl From<ExtendedReal> for ExtRepr {
    fn from(v: ExtendedReal) -> Self {
        match v {
            ExtendedReal::Finite(x) => ExtRepr::Num(x),
            ExtendedReal::PosInfinity => ExtRepr::Text("+inf".into()),
            ExtendedReal::NegInfinity => ExtRepr::Text("-inf".into()),
        }
    }
}

impl ExtendedReal {
    pub fn new(v: f64) -> Result<Self> {
        if v.is_nan() {
            Err(Error::InvalidParameter(
                "NaN is not an extended real".into(),
            ))
        } else if v == f64::INFINITY {
            Ok(ExtendedReal::PosInfinity)
        } else if v == f64::NEG_INFINITY {
            Ok(ExtendedReal::NegInfinity)
        } else {
            Ok(ExtendedReal::Finite(v))
        }
    }

    pub fn finite(v: f64) -> Self {
        ExtendedReal::new(v).expect("finite value")
    }

    pub fn is_infinite(&self) -> bool {
        !matches!(self, ExtendedReal::Finite(_))
    }

    pub fn to_f64(&self) -> f64 {
        match *self {
            ExtendedReal::NegInfinity => f64::NEG_INFINITY,
            ExtendedReal::Finite(v) => v,
            ExtendedReal::PosInfinity => f64::INFINITY,
        }
    }
}

impl PartialOrd for ExtendedReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.to_f64().partial_cmp(&other.to_f64())
    }
}

impl fmt::Display for ExtendedReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedReal::NegInfinity => write!(f, "-inf"),
            ExtendedReal::Finite(v) => write!(f, "{v}"),
            ExtendedReal::PosInfinity => write!(f, "+inf"),
        }
    }
}

/// Limit of an integer index sequence `m_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ExtRepr", into = "ExtRepr")]
pub enum MLimit {
    Finite(u32),
    Infinity,
}

impl TryFrom<ExtRepr> for MLimit {
    type Error = Error;

    fn try_from(r: ExtRepr) -> Result<Self> {
        match ExtendedReal::try_from(r)? {
            ExtendedReal::PosInfinity => Ok(MLimit::Infinity),
            ExtendedReal::Finite(v) if v >= 1.0 && v.fract() == 0.0 && v <= u32::MAX as f64 => {
                Ok(MLimit::Finite(v as u32))
            }
            other => Err(Error::InvalidParameter(format!(
                "m must be a positive integer or inf, got {other}"
            ))),
        }
    }
}

impl From<MLimit> for ExtRepr {
    fn from(m: MLimit) -> Self {
        match m {
            MLimit::Finite(m) => ExtRepr::Num(f64::from(m)),
            MLimit::Infinity => ExtRepr::Text("+inf".into()),
        }
    }
}

/// Limit of the angle `θ_n` in `z_n = x_n + 2iπθ_n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ThetaRepr", into = "ThetaRepr")]
pub enum ThetaLimit {
    /// Exact rational `p/q`.
    Rational(Rational),
    /// Known to be irrational; the value itself is not needed at `Re z → 0`.
    Irrational,
    /// A float value of unknown arithmetic nature; enough for interior limits.
    Real(f64),
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum ThetaRepr {
    Rational { p: i64, q: i64 },
    Real { real: f64 },
    Mark(String),
}

impl TryFrom<ThetaRepr> for ThetaLimit {
    type Error = Error;

    fn try_from(r: ThetaRepr) -> Result<Self> {
        match r {
            ThetaRepr::Rational { p, q } => Ok(ThetaLimit::Rational(Rational::new(p, q)?)),
            ThetaRepr::Real { real } if real.is_finite() => Ok(ThetaLimit::Real(real)),
            ThetaRepr::Real { real } => Err(Error::InvalidParameter(format!(
                "theta {real} is not finite"
            ))),
            ThetaRepr::Mark(s) if s == "irrational" => Ok(ThetaLimit::Irrational),
            ThetaRepr::Mark(s) => Err(Error::InvalidParameter(format!(
                "unknown theta marker {s:?}"
            ))),
        }
    }
}

impl From<ThetaLimit> for ThetaRepr {
    fn from(t: ThetaLimit) -> Self {
        match t {
            ThetaLimit::Rational(r) => ThetaRepr::Rational {
                p: r.numer(),
                q: r.denom(),
            },
            ThetaLimit::Irrational => ThetaRepr::Mark("irrational".into()),
            ThetaLimit::Real(real) => ThetaRepr::Real { real },
        }
    }
}

/// Symbolic description of a convergent parametric sequence of subgroups.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family")]
pub enum SequenceSpec {
    /// `G_{r_n}` in `R`.
    R {
        r_limit: ExtendedReal,
    },
    A {
        m_limit: MLimit,
    },
    B {
        m_limit: MLimit,
        re_limit: ExtendedReal,
        theta: ThetaLimit,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        t_limit: Option<ExtendedReal>,
    },
    C {
        x_limit: ExtendedReal,
    },
    D {
        m_limit: MLimit,
        t_limit: ExtendedReal,
    },
}

/// The subgroup a sequence converges to.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ChabautyLimit(pub Subgroup);

impl ChabautyLimit {
    pub fn subgroup(&self) -> &Subgroup {
        &self.0
    }

    pub fn as_cstar(&self) -> Option<&CStarSubgroup> {
        match &self.0 {
            Subgroup::CStar(g) => Some(g),
            Subgroup::Real(_) => None,
        }
    }
}

impl fmt::Display for ChabautyLimit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Slope of the line through `0` and `q z_n - 2iπp`: `t_n = 2π(θ_n - p/q) / x_n`.
pub fn slope_sequence(x_n: f64, theta_n: f64, theta: Rational) -> Result<f64> {
    if x_n.is_nan() || x_n <= 0.0 {
        return Err(Error::NonPositiveX(x_n));
    }
    Ok(TAU * (theta_n - theta.to_f64()) / x_n)
}

/// Index of the limiting line subgroup: `lcm(m, q)`.
///
/// Also checks the identity `mq / gcd(pm, q) = lcm(m, q)`, which holds for
/// every coprime `(p, q)`.
pub fn lcm_rule(m: u64, p: i64, q: u64) -> Result<u64> {
    if m == 0 || q == 0 {
        return Err(Error::InvalidParameter(format!(
            "m = {m} and q = {q} must be positive"
        )));
    }
    let pa = p.unsigned_abs();
    if gcd(pa, q) != 1 {
        return Err(Error::NotCoprime { p, q: q as i64 });
    }
    let l = lcm(m, q);
    let via_gcd = (m as u128 * q as u128) / gcd_u128(pa as u128 * m as u128, q as u128);
    assert_eq!(
        via_gcd, l as u128,
        "mq/gcd(pm, q) = lcm(m, q) for coprime p, q"
    );
    Ok(l)
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

fn nonnegative(v: ExtendedReal) -> Result<ExtendedReal> {
    match v {
        ExtendedReal::Finite(x) if x < 0.0 => Err(Error::NegativeLimit(x)),
        ExtendedReal::NegInfinity => Err(Error::NegativeLimit(f64::NEG_INFINITY)),
        v => Ok(v),
    }
}

/// Limit of `G_{r_n}`: `r → 0` gives `R`, `r → ∞` gives `{0}`.
pub fn classify_limit_r(r_limit: ExtendedReal) -> Result<ChabautyLimit> {
    let g = match nonnegative(r_limit)? {
        ExtendedReal::Finite(0.0) => RSubgroup::Line,
        ExtendedReal::Finite(r) => RSubgroup::Cyclic { r },
        _ => RSubgroup::Trivial,
    };
    Ok(ChabautyLimit(Subgroup::Real(g)))
}

fn cstar(g: CStarSubgroup) -> ChabautyLimit {
    ChabautyLimit(Subgroup::CStar(g))
}

fn finite_m(m: u32) -> Result<u32> {
    if m == 0 {
        Err(Error::InvalidParameter("m must be positive".into()))
    } else {
        Ok(m)
    }
}

/// Limit of a sequence of closed subgroups of `C*`.
pub fn classify_limit_cstar(s: &SequenceSpec) -> Result<ChabautyLimit> {
    match *s {
        SequenceSpec::R { .. } => Err(Error::InvalidParameter(
            "R sequences live in the Chabauty space of R".into(),
        )),
        SequenceSpec::A { m_limit } => Ok(match m_limit {
            MLimit::Infinity => cstar(CStarSubgroup::CInfinity),
            MLimit::Finite(m) => cstar(CStarSubgroup::a(finite_m(m)?)),
        }),
        SequenceSpec::B {
            m_limit,
            re_limit,
            theta,
            t_limit,
        } => classify_b(m_limit, nonnegative(re_limit)?, theta, t_limit),
        SequenceSpec::C { x_limit } => Ok(cstar(match nonnegative(x_limit)? {
            ExtendedReal::Finite(0.0) => CStarSubgroup::Full,
            ExtendedReal::Finite(x) => CStarSubgroup::C { x },
            _ => CStarSubgroup::CInfinity,
        })),
        SequenceSpec::D { m_limit, t_limit } => match (m_limit, t_limit) {
            (MLimit::Infinity, _) | (_, ExtendedReal::PosInfinity | ExtendedReal::NegInfinity) => {
                Ok(cstar(CStarSubgroup::Full))
            }
            (MLimit::Finite(m), ExtendedReal::Finite(t)) => {
                Ok(cstar(CStarSubgroup::d(finite_m(m)?, t)?))
            }
        },
    }
}

fn classify_b(
    m_limit: MLimit,
    re: ExtendedReal,
    theta: ThetaLimit,
    t_limit: Option<ExtendedReal>,
) -> Result<ChabautyLimit> {
    let m = match m_limit {
        MLimit::Infinity => {
            return match re {
                ExtendedReal::Finite(0.0) => Err(Error::Unsupported(
                    "m_n -> inf together with Re z_n -> 0".into(),
                )),
                ExtendedReal::Finite(x) => Ok(cstar(CStarSubgroup::C { x })),
                _ => Ok(cstar(CStarSubgroup::CInfinity)),
            };
        }
        MLimit::Finite(m) => finite_m(m)?,
    };
    match re {
        ExtendedReal::PosInfinity => Ok(cstar(CStarSubgroup::a(m))),
        ExtendedReal::Finite(x) if x > 0.0 => {
            let th =
                match theta {
                    ThetaLimit::Rational(r) => r.to_f64(),
                    ThetaLimit::Real(v) => v,
                    ThetaLimit::Irrational => return Err(Error::Underdetermined(
                        "an interior limit needs the value of theta, not only its irrationality"
                            .into(),
                    )),
                };
            Ok(cstar(CStarSubgroup::b(m, Complex64::new(x, TAU * th))?))
        }
        _ => match theta {
            ThetaLimit::Irrational => Ok(cstar(CStarSubgroup::Full)),
            ThetaLimit::Real(v) => Err(Error::Underdetermined(format!(
                "theta = {v} given as a float; rational or irrational must be stated"
            ))),
            ThetaLimit::Rational(r) => {
                let r = r.fract();
                let t = t_limit.ok_or_else(|| {
                    Error::Underdetermined(format!(
                        "Re z_n -> 0 with theta = {r} needs the limit of the slopes t_n"
                    ))
                })?;
                match t {
                    ExtendedReal::Finite(t) => {
                        let l = lcm_rule(u64::from(m), r.numer(), r.denom() as u64)?;
                        let l = u32::try_from(l)
                            .map_err(|_| Error::InvalidParameter(format!("lcm {l} overflows")))?;
                        Ok(cstar(CStarSubgroup::d(l, t)?))
                    }
                    _ => Ok(cstar(CStarSubgroup::Full)),
                }
            }
        },
    }
}

/// Classifies a sequence in either Chabauty space.
pub fn classify(s: &SequenceSpec) -> Result<ChabautyLimit> {
    match *s {
        SequenceSpec::R { r_limit } => classify_limit_r(r_limit),
        _ => classify_limit_cstar(s),
    }
}
