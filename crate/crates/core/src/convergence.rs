//! Explicit parametric sequences and numerical convergence checks.
//!
//! A [`SequenceSchedule`] produces the `n`-th subgroup of a sequence and the
//! symbolic data of its limit. [`verify_convergence`] samples terms and limit
//! and reports certified Hausdorff enclosures, which should decay towards the
//! sampling floor.

use std::f64::consts::TAU;
use std::fmt::Write as _;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::format::fmt_real;
use crate::hausdorff::hausdorff_bound_true_sets;
use crate::limit::{classify, ExtendedReal, MLimit, SequenceSpec, ThetaLimit};
use crate::par;
use crate::sample::sample_subgroup;
use crate::subgroup::{CStarSubgroup, RSubgroup, Subgroup};

/// A real parameter as a function of `n >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Param {
    Constant {
        value: f64,
    },
    /// `limit + a / n^k`, `k > 0`.
    Approach {
        limit: f64,
        a: f64,
        k: f64,
    },
    /// `a n^k`, `k > 0`, `a != 0`.
    Diverge {
        a: f64,
        k: f64,
    },
}

impl Param {
    pub fn value(&self, n: u64) -> f64 {
        let n = n as f64;
        match *self {
            Param::Constant { value } => value,
            Param::Approach { limit, a, k } => limit + a / n.powf(k),
            Param::Diverge { a, k } => a * n.powf(k),
        }
    }

    pub fn limit(&self) -> ExtendedReal {
        match *self {
            Param::Constant { value } => ExtendedReal::finite(value),
            Param::Approach { limit, .. } => ExtendedReal::finite(limit),
            Param::Diverge { a, .. } if a < 0.0 => ExtendedReal::NegInfinity,
            Param::Diverge { .. } => ExtendedReal::PosInfinity,
        }
    }

    fn validate(&self, what: &str) -> Result<()> {
        let ok = match *self {
            Param::Constant { value } => value.is_finite(),
            Param::Approach { limit, a, k } => limit.is_finite() && a.is_finite() && k > 0.0,
            Param::Diverge { a, k } => a.is_finite() && a != 0.0 && k > 0.0,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!(
                "bad schedule for {what}: {self:?}"
            )))
        }
    }
}

/// Integer index `m_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MParam {
    Constant {
        m: u32,
    },
    /// `m_n = a n`.
    Linear {
        a: u32,
    },
}

impl MParam {
    pub fn value(&self, n: u64) -> Result<u32> {
        let v = match *self {
            MParam::Constant { m } => u64::from(m),
            MParam::Linear { a } => u64::from(a) * n,
        };
        match u32::try_from(v) {
            Ok(m) if m > 0 => Ok(m),
            _ => Err(Error::InvalidParameter(format!(
                "m_{n} = {v} is not a positive u32"
            ))),
        }
    }

    pub fn limit(&self) -> MLimit {
        match *self {
            MParam::Constant { m } => MLimit::Finite(m),
            MParam::Linear { .. } => MLimit::Infinity,
        }
    }
}

/// Angle `θ_n` in `z_n = x_n + 2iπθ_n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ThetaSchedule {
    /// `θ_n = θ + slope x_n / 2π`, so every slope `t_n` equals `slope`.
    Slope { theta: Rational, slope: f64 },
    /// `θ_n = θ + b / n^j`.
    Offset { theta: Rational, b: f64, j: f64 },
    /// Constant `θ_n = value`, known to be irrational.
    Irrational { value: f64 },
    /// Constant `θ_n = value` of unspecified arithmetic nature.
    Real { value: f64 },
}

impl ThetaSchedule {
    fn value(&self, n: u64, x_n: f64) -> f64 {
        match *self {
            ThetaSchedule::Slope { theta, slope } => theta.to_f64() + slope * x_n / TAU,
            ThetaSchedule::Offset { theta, b, j } => theta.to_f64() + b / (n as f64).powf(j),
            ThetaSchedule::Irrational { value } | ThetaSchedule::Real { value } => value,
        }
    }

    fn limit(&self) -> ThetaLimit {
        match *self {
            ThetaSchedule::Slope { theta, .. } | ThetaSchedule::Offset { theta, .. } => {
                ThetaLimit::Rational(theta)
            }
            ThetaSchedule::Irrational { .. } => ThetaLimit::Irrational,
            ThetaSchedule::Real { value } => ThetaLimit::Real(value),
        }
    }

    /// Limit of `t_n = 2π(θ_n - θ) / x_n` when `x_n → 0`.
    fn slope_limit(&self, x: &Param) -> Option<ExtendedReal> {
        match (*self, *x) {
            (ThetaSchedule::Slope { slope, .. }, _) => Some(ExtendedReal::finite(slope)),
            (ThetaSchedule::Offset { b, j, .. }, Param::Approach { limit: 0.0, a, k }) => {
                // t_n = (2π b / a) n^(k - j)
                let c = TAU * b / a;
                Some(if b == 0.0 || k < j {
                    ExtendedReal::finite(0.0)
                } else if k == j {
                    ExtendedReal::finite(c)
                } else if c > 0.0 {
                    ExtendedReal::PosInfinity
                } else {
                    ExtendedReal::NegInfinity
                })
            }
            _ => None,
        }
    }
}

/// A concrete parametric sequence of closed subgroups.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family")]
pub enum SequenceSchedule {
    /// `G_{r_n}` in `R`.
    R {
        r: Param,
    },
    A {
        m: MParam,
    },
    B {
        m: MParam,
        x: Param,
        theta: ThetaSchedule,
    },
    C {
        x: Param,
    },
    D {
        m: MParam,
        t: Param,
    },
}

impl SequenceSchedule {
    /// The `n`-th term, `n >= 1`.
    pub fn term(&self, n: u64) -> Result<Subgroup> {
        if n == 0 {
            return Err(Error::InvalidParameter("sequence index starts at 1".into()));
        }
        Ok(match *self {
            SequenceSchedule::R { r } => Subgroup::Real(RSubgroup::generated_by(r.value(n))?),
            SequenceSchedule::A { m } => Subgroup::CStar(CStarSubgroup::a(m.value(n)?)),
            SequenceSchedule::B { m, x, theta } => {
                let x_n = x.value(n);
                if x_n.is_nan() || x_n <= 0.0 {
                    return Err(Error::NonPositiveX(x_n));
                }
                let z = Complex64::new(x_n, TAU * theta.value(n, x_n));
                Subgroup::CStar(CStarSubgroup::b(m.value(n)?, z)?)
            }
            SequenceSchedule::C { x } => Subgroup::CStar(CStarSubgroup::c(x.value(n))?),
            SequenceSchedule::D { m, t } => {
                Subgroup::CStar(CStarSubgroup::d(m.value(n)?, t.value(n))?)
            }
        })
    }

    /// Symbolic limiting data for the classifier.
    pub fn limit_spec(&self) -> Result<SequenceSpec> {
        Ok(match *self {
            SequenceSchedule::R { r } => {
                r.validate("r")?;
                SequenceSpec::R { r_limit: r.limit() }
            }
            SequenceSchedule::A { m } => SequenceSpec::A { m_limit: m.limit() },
            SequenceSchedule::B { m, x, theta } => {
                x.validate("x")?;
                let re_limit = x.limit();
                let t_limit = match re_limit {
                    ExtendedReal::Finite(0.0) => theta.slope_limit(&x),
                    _ => None,
                };
                SequenceSpec::B {
                    m_limit: m.limit(),
                    re_limit,
                    theta: theta.limit(),
                    t_limit,
                }
            }
            SequenceSchedule::C { x } => {
                x.validate("x")?;
                SequenceSpec::C { x_limit: x.limit() }
            }
            SequenceSchedule::D { m, t } => {
                t.validate("t")?;
                SequenceSpec::D {
                    m_limit: m.limit(),
                    t_limit: t.limit(),
                }
            }
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DecayRow {
    pub n: u64,
    pub d_hausdorff: f64,
    pub interval_lo: f64,
    pub interval_hi: f64,
    /// Sum of the two covering radii; the distance is only resolved above it.
    pub floor: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecayTable {
    pub limit: Subgroup,
    pub radius: f64,
    pub step: f64,
    pub rows: Vec<DecayRow>,
}

impl DecayTable {
    pub fn to_csv(&self) -> String {
        let mut s = String::from("n,d_hausdorff,interval_lo,interval_hi\n");
        for r in &self.rows {
            let _ = writeln!(
                s,
                "{},{},{},{}",
                r.n,
                fmt_real(r.d_hausdorff),
                fmt_real(r.interval_lo),
                fmt_real(r.interval_hi)
            );
        }
        s
    }

    /// Each distance is at most its predecessor, or already within the
    /// sampling floor of the limit.
    pub fn decays_to_floor(&self) -> bool {
        self.rows
            .windows(2)
            .all(|w| w[1].d_hausdorff <= w[0].d_hausdorff || w[1].d_hausdorff <= w[1].floor)
    }
}

/// Samples the limit once and each requested term, returning one certified
/// row per `n` in input order.
pub fn verify_convergence(
    schedule: &SequenceSchedule,
    n_values: &[u64],
    radius: f64,
    step: f64,
) -> Result<DecayTable> {
    let (table, failures) = verify_convergence_lenient(schedule, n_values, radius, step)?;
    match failures.into_iter().next() {
        Some((_, e)) => Err(e),
        None => Ok(table),
    }
}

/// Like [`verify_convergence`], but a failing term only drops its own row.
/// Failures are returned next to the table, in input order.
pub fn verify_convergence_lenient(
    schedule: &SequenceSchedule,
    n_values: &[u64],
    radius: f64,
    step: f64,
) -> Result<(DecayTable, Vec<(u64, Error)>)> {
    let limit = classify(&schedule.limit_spec()?)?.0;
    let limit_sample = sample_subgroup(&limit, radius, step)?;
    let results = par::map_slice_with(
        par::Execution::default(),
        n_values,
        |&n| -> Result<DecayRow> {
            let term = sample_subgroup(&schedule.term(n)?, radius, step)?;
            let r = hausdorff_bound_true_sets(&term, &limit_sample)?;
            let [lo, hi] = r.interval.expect("enclosure is always filled");
            if !r.value.is_finite() {
                return Err(Error::InvalidParameter(format!(
                    "non-finite distance at n = {n}"
                )));
            }
            Ok(DecayRow {
                n,
                d_hausdorff: r.value,
                interval_lo: lo,
                interval_hi: hi,
                floor: term.covering_radius + limit_sample.covering_radius,
            })
        },
    );
    let mut rows = Vec::new();
    let mut failures = Vec::new();
    for (&n, r) in n_values.iter().zip(results) {
        match r {
            Ok(row) => rows.push(row),
            Err(e) => failures.push((n, e)),
        }
    }
    Ok((
        DecayTable {
            limit,
            radius,
            step,
            rows,
        },
        failures,
    ))
}
