//! Closed subgroups of the real line and of the cylinder `C / 2iπZ`.
//!
//! Subgroups of `C*` are modelled through the exponential map as closed
//! subgroups of `C` that contain `2iπ`. Every such subgroup is one of six
//! parametric families, and each value here is stored in a canonical form so
//! that set equality reduces to structural comparison (up to [`EQ_TOL`] on the
//! floating-point parameters).

use std::f64::consts::TAU;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Comparison tolerance for floating-point subgroup parameters.
pub const EQ_TOL: f64 = 1e-9;

/// A closed subgroup of `(R, +)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum RSubgroup {
    /// `{0}`.
    Trivial,
    /// `rZ` with `r > 0`.
    Cyclic { r: f64 },
    /// `R` itself.
    Line,
}

impl RSubgroup {
    /// The subgroup generated by `r`. `rZ = (-r)Z`, and `r = 0` gives `{0}`.
    pub fn generated_by(r: f64) -> Result<Self> {
        if !r.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "generator {r} is not finite"
            )));
        }
        if r == 0.0 {
            Ok(RSubgroup::Trivial)
        } else {
            Ok(RSubgroup::Cyclic { r: r.abs() })
        }
    }

    /// Distance from `x` to the subgroup in the Euclidean metric of `R`.
    pub fn distance_to(&self, x: f64) -> f64 {
        match *self {
            RSubgroup::Trivial => x.abs(),
            RSubgroup::Cyclic { r } => (x - r * (x / r).round()).abs(),
            RSubgroup::Line => 0.0,
        }
    }

    pub fn contains(&self, x: f64, tol: f64) -> bool {
        self.distance_to(x) <= tol
    }

    pub fn approx_eq(&self, other: &RSubgroup) -> bool {
        match (self, other) {
            (RSubgroup::Trivial, RSubgroup::Trivial) | (RSubgroup::Line, RSubgroup::Line) => true,
            (RSubgroup::Cyclic { r: a }, RSubgroup::Cyclic { r: b }) => (a - b).abs() <= EQ_TOL,
            _ => false,
        }
    }
}

impl fmt::Display for RSubgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RSubgroup::Trivial => write!(f, "G_0"),
            RSubgroup::Cyclic { r } => write!(f, "G_{r}"),
            RSubgroup::Line => write!(f, "R"),
        }
    }
}

/// Abstract isomorphism type of a closed subgroup of `C`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum IsomorphismType {
    Trivial,
    Z,
    Z2,
    R,
    ZxR,
    C,
}

/// A closed subgroup of `C` containing `2iπ`, i.e. a closed subgroup of `C*`.
///
/// Construct through [`CStarSubgroup::a`], [`CStarSubgroup::b`],
/// [`CStarSubgroup::c`] and [`CStarSubgroup::d`] so that values are canonical.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "CStarRepr", into = "CStarRepr")]
pub enum CStarSubgroup {
    /// `(2π/m) iZ`.
    A { m: u32 },
    /// `zZ + (2π/m) iZ`, with `Re z > 0` and `Im z ∈ [0, 2π/m)`.
    B { m: u32, z: Complex64 },
    /// `xZ + iR`, `x > 0`.
    C { x: f64 },
    /// `(2π/m) iZ + (1 + it) R`.
    D { m: u32, t: f64 },
    /// `iR`.
    CInfinity,
    /// `C`.
    Full,
}

/// Length of the shortest purely imaginary period `2π/m`.
pub fn imaginary_period(m: u32) -> f64 {
    TAU / f64::from(m)
}

/// Puts a B-lattice generator into the canonical strip `Im z ∈ [0, 2π/m)`.
///
/// `m = 0` is the degenerate `A^0 = iR` direction, and `zZ + iR` is `C_{Re z}`.
pub fn canonicalize_b(m: u32, z: Complex64) -> Result<CStarSubgroup> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "generator {z} is not finite"
        )));
    }
    if z.re <= 0.0 {
        return Err(Error::NonPositiveRealPart(z.re));
    }
    if m == 0 {
        return Ok(CStarSubgroup::C { x: z.re });
    }
    let period = imaginary_period(m);
    let k = (z.im / period).floor();
    let mut im = z.im - k * period;
    if im < 0.0 || period - im <= EQ_TOL * 1e-3 {
        im = 0.0;
    }
    Ok(CStarSubgroup::B {
        m,
        z: Complex64::new(z.re, im),
    })
}

impl CStarSubgroup {
    pub fn a(m: u32) -> Self {
        if m == 0 {
            CStarSubgroup::CInfinity
        } else {
            CStarSubgroup::A { m }
        }
    }

    pub fn b(m: u32, z: Complex64) -> Result<Self> {
        canonicalize_b(m, z)
    }

    /// `xZ + iR`. `C_0 = C` and `C_∞ = iR`.
    pub fn c(x: f64) -> Result<Self> {
        if x.is_nan() {
            return Err(Error::InvalidParameter("x is NaN".into()));
        }
        let x = x.abs();
        Ok(if x == 0.0 {
            CStarSubgroup::Full
        } else if x.is_infinite() {
            CStarSubgroup::CInfinity
        } else {
            CStarSubgroup::C { x }
        })
    }

    pub fn d(m: u32, t: f64) -> Result<Self> {
        if !t.is_finite() {
            return Err(Error::InvalidParameter(format!("slope {t} is not finite")));
        }
        Ok(if m == 0 {
            CStarSubgroup::Full
        } else {
            CStarSubgroup::D { m, t }
        })
    }

    /// Euclidean distance in `C` from `w` to the subgroup, in closed form.
    pub fn distance_to(&self, w: Complex64) -> f64 {
        match *self {
            CStarSubgroup::A { m } => {
                let h = imaginary_period(m);
                w.re.hypot(w.im - h * (w.im / h).round())
            }
            CStarSubgroup::B { m, z } => lattice_distance(z, imaginary_period(m), w),
            CStarSubgroup::C { x } => (w.re - x * (w.re / x).round()).abs(),
            CStarSubgroup::D { m, t } => {
                // Lines v = t u + k h; vertical offset divided by the slope norm.
                let h = imaginary_period(m);
                let off = w.im - t * w.re;
                (off - h * (off / h).round()).abs() / t.hypot(1.0)
            }
            CStarSubgroup::CInfinity => w.re.abs(),
            CStarSubgroup::Full => 0.0,
        }
    }

    pub fn contains(&self, w: Complex64, tol: f64) -> bool {
        self.distance_to(w) <= tol
    }

    pub fn isomorphism_type(&self) -> IsomorphismType {
        match self {
            CStarSubgroup::A { .. } => IsomorphismType::Z,
            CStarSubgroup::B { .. } => IsomorphismType::Z2,
            CStarSubgroup::C { .. } | CStarSubgroup::D { .. } => IsomorphismType::ZxR,
            CStarSubgroup::CInfinity => IsomorphismType::R,
            CStarSubgroup::Full => IsomorphismType::C,
        }
    }

    /// Set equality on canonical values.
    pub fn approx_eq(&self, other: &CStarSubgroup) -> bool {
        use CStarSubgroup::*;
        match (*self, *other) {
            (A { m: a }, A { m: b }) => a == b,
            (B { m: ma, z: za }, B { m: mb, z: zb }) => {
                if ma != mb || (za.re - zb.re).abs() > EQ_TOL {
                    return false;
                }
                let h = imaginary_period(ma);
                let d = (za.im - zb.im).rem_euclid(h);
                d.min(h - d) <= EQ_TOL
            }
            (C { x: a }, C { x: b }) => (a - b).abs() <= EQ_TOL,
            (D { m: ma, t: ta }, D { m: mb, t: tb }) => ma == mb && (ta - tb).abs() <= EQ_TOL,
            (CInfinity, CInfinity) | (Full, Full) => true,
            _ => false,
        }
    }

    pub fn family(&self) -> &'static str {
        match self {
            CStarSubgroup::A { .. } => "A",
            CStarSubgroup::B { .. } => "B",
            CStarSubgroup::C { .. } => "C",
            CStarSubgroup::D { .. } => "D",
            CStarSubgroup::CInfinity => "Cinf",
            CStarSubgroup::Full => "Full",
        }
    }
}

/// Exact nearest-point distance to the lattice `zZ + hiZ` (`Re z > 0`).
fn lattice_distance(z: Complex64, h: f64, w: Complex64) -> f64 {
    let a = z.re;
    let j0 = (w.re / a).round() as i64;
    let column = |j: i64| {
        let jf = j as f64;
        let dx = w.re - jf * a;
        let y = w.im - jf * z.im;
        dx.hypot(y - h * (y / h).round())
    };
    let mut best = column(j0);
    let mut step = 1i64;
    // Columns |j - j0| >= step are at least (step - 1/2) a away horizontally.
    while (step as f64 - 0.5) * a <= best {
        best = best.min(column(j0 + step)).min(column(j0 - step));
        step += 1;
    }
    best
}

/// Public alias matching the operation name used throughout the crate.
pub fn subgroups_equal(a: &CStarSubgroup, b: &CStarSubgroup) -> bool {
    a.approx_eq(b)
}

pub fn classify_isomorphism_type(g: &CStarSubgroup) -> IsomorphismType {
    g.isomorphism_type()
}

impl fmt::Display for CStarSubgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CStarSubgroup::A { m } => write!(f, "A^{m}"),
            CStarSubgroup::B { m, z } => write!(f, "B^{m}_({}+{}i)", z.re, z.im),
            CStarSubgroup::C { x } => write!(f, "C_{x}"),
            CStarSubgroup::D { m, t } => write!(f, "D^{m}_{t}"),
            CStarSubgroup::CInfinity => write!(f, "iR"),
            CStarSubgroup::Full => write!(f, "C"),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "family")]
enum CStarRepr {
    A {
        m: u32,
    },
    B {
        m: u32,
        z: [f64; 2],
    },
    C {
        x: f64,
    },
    D {
        m: u32,
        t: f64,
    },
    #[serde(rename = "Cinf")]
    CInfinity,
    Full,
}

impl TryFrom<CStarRepr> for CStarSubgroup {
    type Error = Error;

    fn try_from(r: CStarRepr) -> Result<Self> {
        match r {
            CStarRepr::A { m } => Ok(CStarSubgroup::a(m)),
            CStarRepr::B { m, z } => CStarSubgroup::b(m, Complex64::new(z[0], z[1])),
            CStarRepr::C { x } => CStarSubgroup::c(x),
            CStarRepr::D { m, t } => CStarSubgroup::d(m, t),
            CStarRepr::CInfinity => Ok(CStarSubgroup::CInfinity),
            CStarRepr::Full => Ok(CStarSubgroup::Full),
        }
    }
}

impl From<CStarSubgroup> for CStarRepr {
    fn from(g: CStarSubgroup) -> Self {
        match g {
            CStarSubgroup::A { m } => CStarRepr::A { m },
            CStarSubgroup::B { m, z } => CStarRepr::B { m, z: [z.re, z.im] },
            CStarSubgroup::C { x } => CStarRepr::C { x },
            CStarSubgroup::D { m, t } => CStarRepr::D { m, t },
            CStarSubgroup::CInfinity => CStarRepr::CInfinity,
            CStarSubgroup::Full => CStarRepr::Full,
        }
    }
}

/// Either kind of subgroup handled by the crate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Subgroup {
    Real(RSubgroup),
    CStar(CStarSubgroup),
}

impl Subgroup {
    pub fn approx_eq(&self, other: &Subgroup) -> bool {
        match (self, other) {
            (Subgroup::Real(a), Subgroup::Real(b)) => a.approx_eq(b),
            (Subgroup::CStar(a), Subgroup::CStar(b)) => a.approx_eq(b),
            _ => false,
        }
    }
}

impl From<RSubgroup> for Subgroup {
    fn from(g: RSubgroup) -> Self {
        Subgroup::Real(g)
    }
}

impl From<CStarSubgroup> for Subgroup {
    fn from(g: CStarSubgroup) -> Self {
        Subgroup::CStar(g)
    }
}

impl fmt::Display for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Subgroup::Real(g) => g.fmt(f),
            Subgroup::CStar(g) => g.fmt(f),
        }
    }
}
