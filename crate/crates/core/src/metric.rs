//! Explicit metrics on the one-point compactifications of `R` and of the
//! cylinder `C / 2iπZ`.
//!
//! The line is sent to the unit circle by stereographic projection, so the
//! distance is the chordal one:
//!
//! ```text
//! d(x, y) = 2|x - y| / sqrt((1 + x²)(1 + y²)),    d(x, ∞) = 2 / sqrt(1 + x²)
//! ```
//!
//! A cylinder point `x + iθ` is sent to `e^{x+iθ}` on the Riemann sphere. The
//! two ends of the cylinder land on `0` and `∞`; gluing those poles into a
//! single point at infinity gives the quotient metric
//!
//! ```text
//! d(p, q) = min(χ(p, q), χ(p, 0) + χ(q, ∞), χ(p, ∞) + χ(q, 0))
//! ```
//!
//! Both metrics are evaluated through an [`Embedded`] image which is also
//! what the Hausdorff engine indexes, so every code path computes the exact
//! same floating-point distance.

use std::cmp::Ordering;
use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which compactified space a point or sample lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CompactSpaceKind {
    /// `R ∪ {∞}`.
    LineBar,
    /// `(C / 2iπZ) ∪ {∞}`, both ends glued to one point.
    CylinderBar,
}

/// A point of a compactified space; `Infinity` is the added point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CompactPoint {
    Line(f64),
    Cylinder { x: f64, theta: f64 },
    Infinity,
}

/// Wraps an angle into `[0, 2π)`, snapping values within `1e-12` of `2π` to 0.
pub fn normalize_angle(theta: f64) -> f64 {
    let t = theta.rem_euclid(TAU);
    if TAU - t <= 1e-12 {
        0.0
    } else {
        t
    }
}

impl CompactPoint {
    pub fn line(x: f64) -> Self {
        CompactPoint::Line(x)
    }

    /// A cylinder point `x + iθ (mod 2iπ)`, with `θ` normalized into `[0, 2π)`.
    pub fn cylinder(x: f64, theta: f64) -> Self {
        CompactPoint::Cylinder {
            x,
            theta: normalize_angle(theta),
        }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, CompactPoint::Infinity)
    }

    /// Base-space real coordinate, `None` at infinity.
    pub fn x(&self) -> Option<f64> {
        match *self {
            CompactPoint::Line(x) | CompactPoint::Cylinder { x, .. } => Some(x),
            CompactPoint::Infinity => None,
        }
    }

    pub fn theta(&self) -> Option<f64> {
        match *self {
            CompactPoint::Cylinder { theta, .. } => Some(theta),
            _ => None,
        }
    }

    /// Lexicographic order on `(x, θ)`, with infinity after every finite point.
    pub fn lex_cmp(&self, other: &Self) -> Ordering {
        let key = |p: &CompactPoint| match *p {
            CompactPoint::Line(x) => (0u8, x, 0.0),
            CompactPoint::Cylinder { x, theta } => (0, x, theta),
            CompactPoint::Infinity => (1, 0.0, 0.0),
        };
        let (ka, kb) = (key(self), key(other));
        ka.0.cmp(&kb.0)
            .then(ka.1.total_cmp(&kb.1))
            .then(ka.2.total_cmp(&kb.2))
    }
}

impl CompactSpaceKind {
    pub fn admits(&self, p: &CompactPoint) -> bool {
        matches!(
            (self, p),
            (_, CompactPoint::Infinity)
                | (CompactSpaceKind::LineBar, CompactPoint::Line(_))
                | (CompactSpaceKind::CylinderBar, CompactPoint::Cylinder { .. })
        )
    }

    pub fn embed(&self, p: &CompactPoint) -> Result<Embedded> {
        match (self, *p) {
            (CompactSpaceKind::LineBar, CompactPoint::Line(x)) => Ok(Embedded::line(x)),
            (CompactSpaceKind::LineBar, CompactPoint::Infinity) => Ok(Embedded::line_infinity()),
            (CompactSpaceKind::CylinderBar, CompactPoint::Cylinder { x, theta }) => {
                Ok(Embedded::cylinder(x, theta))
            }
            (CompactSpaceKind::CylinderBar, CompactPoint::Infinity) => {
                Ok(Embedded::cylinder_infinity())
            }
            _ => Err(Error::WrongSpace(*self)),
        }
    }

    pub fn distance(&self, a: &CompactPoint, b: &CompactPoint) -> Result<f64> {
        Ok(self.embedded_distance(&self.embed(a)?, &self.embed(b)?))
    }

    /// Distance between already-embedded points of this space.
    #[inline]
    pub fn embedded_distance(&self, a: &Embedded, b: &Embedded) -> f64 {
        match self {
            CompactSpaceKind::LineBar => chord(&a.pos, &b.pos),
            CompactSpaceKind::CylinderBar => {
                let direct = if a.glued || b.glued {
                    f64::INFINITY
                } else {
                    chord(&a.pos, &b.pos)
                };
                direct.min(a.to_zero + b.to_inf).min(a.to_inf + b.to_zero)
            }
        }
    }

    /// Embedding dimension used by spatial indexing.
    pub fn embedding_dim(&self) -> usize {
        match self {
            CompactSpaceKind::LineBar => 2,
            CompactSpaceKind::CylinderBar => 3,
        }
    }
}

/// A point's image in Euclidean space together with its chordal distances to
/// the two poles.
///
/// For the line, `pos` lies on the unit circle of the `(x, y)` plane and the
/// pole distances are unused. For the cylinder, `pos` lies on the unit sphere;
/// the glued point at infinity has no position and both pole distances zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Embedded {
    pub pos: [f64; 3],
    pub to_zero: f64,
    pub to_inf: f64,
    pub glued: bool,
}

impl Embedded {
    /// `x ↦ (sin φ, -cos φ)` with `φ = 2 atan x`; `0` at the south pole.
    pub fn line(x: f64) -> Self {
        let phi = 2.0 * x.atan();
        Embedded {
            pos: [phi.sin(), -phi.cos(), 0.0],
            to_zero: 0.0,
            to_inf: 0.0,
            glued: false,
        }
    }

    pub fn line_infinity() -> Self {
        Embedded {
            pos: [0.0, 1.0, 0.0],
            to_zero: 0.0,
            to_inf: 0.0,
            glued: false,
        }
    }

    /// Stereographic image of `e^{x + iθ}`: `(sech x cos θ, sech x sin θ, tanh x)`.
    pub fn cylinder(x: f64, theta: f64) -> Self {
        let sech = 1.0 / x.cosh();
        Embedded {
            pos: [sech * theta.cos(), sech * theta.sin(), x.tanh()],
            to_zero: chordal_to_zero(x),
            to_inf: chordal_to_infinity(x),
            glued: false,
        }
    }

    pub fn cylinder_infinity() -> Self {
        Embedded {
            pos: [0.0; 3],
            to_zero: 0.0,
            to_inf: 0.0,
            glued: true,
        }
    }
}

#[inline]
pub(crate) fn chord(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    let dx = a[0] - b[0];
    let dy = a[1] - b[1];
    let dz = a[2] - b[2];
    (dx * dx + dy * dy + dz * dz).sqrt()
}

/// `χ(e^x, 0) = 2|e^x| / sqrt(1 + |e^x|²)`.
pub fn chordal_to_zero(x: f64) -> f64 {
    2.0 / (1.0 + (-2.0 * x).exp()).sqrt()
}

/// `χ(e^x, ∞) = 2 / sqrt(1 + |e^x|²)`.
pub fn chordal_to_infinity(x: f64) -> f64 {
    2.0 / (1.0 + (2.0 * x).exp()).sqrt()
}

/// Chordal distance on `R ∪ {∞}`.
pub fn dist_line(a: &CompactPoint, b: &CompactPoint) -> Result<f64> {
    CompactSpaceKind::LineBar.distance(a, b)
}

/// Quotient chordal distance on the compactified cylinder.
pub fn dist_cylinder(a: &CompactPoint, b: &CompactPoint) -> Result<f64> {
    CompactSpaceKind::CylinderBar.distance(a, b)
}

/// Upper bound on the distance to infinity of any line point with `|x| > R`.
pub fn line_tail_bound(radius: f64) -> f64 {
    2.0 / (1.0 + radius * radius).sqrt()
}

/// Upper bound on the distance to infinity of any cylinder point with `|x| > R`:
/// `min(χ(e^x, 0), χ(e^x, ∞)) <= 2 e^{-|x|}`.
pub fn cylinder_tail_bound(radius: f64) -> f64 {
    2.0 * (-radius).exp()
}

/// Lipschitz constant of the compact line metric against `|x - y|`.
pub const LINE_LIPSCHITZ: f64 = 2.0;

/// Lipschitz constant of the compact cylinder metric against the flat
/// cylinder distance; the pulled-back spherical density is `sech x <= 1`.
pub const CYLINDER_LIPSCHITZ: f64 = 1.0;

/// Violations found by [`check_metric_axioms`].
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct AxiomReport {
    pub points: usize,
    pub triples_checked: u64,
    pub symmetry: Vec<(usize, usize)>,
    pub identity: Vec<(usize, usize)>,
    pub triangle: Vec<(usize, usize, usize)>,
    pub negative: Vec<(usize, usize)>,
}

impl AxiomReport {
    pub fn is_clean(&self) -> bool {
        self.symmetry.is_empty()
            && self.identity.is_empty()
            && self.triangle.is_empty()
            && self.negative.is_empty()
    }

    pub fn violation_count(&self) -> usize {
        self.symmetry.len() + self.identity.len() + self.triangle.len() + self.negative.len()
    }
}

/// Tolerance used by [`check_metric_axioms`].
pub const AXIOM_TOL: f64 = 1e-12;

fn same_point(a: &CompactPoint, b: &CompactPoint) -> bool {
    match (*a, *b) {
        (CompactPoint::Infinity, CompactPoint::Infinity) => true,
        (CompactPoint::Line(x), CompactPoint::Line(y)) => (x - y).abs() <= AXIOM_TOL,
        (
            CompactPoint::Cylinder { x: xa, theta: ta },
            CompactPoint::Cylinder { x: xb, theta: tb },
        ) => {
            let d = (ta - tb).rem_euclid(TAU);
            (xa - xb).abs() <= AXIOM_TOL && d.min(TAU - d) <= AXIOM_TOL
        }
        _ => false,
    }
}

/// Checks nonnegativity, symmetry, identity of indiscernibles and the
/// triangle inequality over every ordered triple of `pts`.
///
/// Identity is violated when `d(p, p) > tol`, or when two points at distance
/// exactly zero are not the same point.
pub fn check_metric_axioms(space: CompactSpaceKind, pts: &[CompactPoint]) -> Result<AxiomReport> {
    let emb = pts
        .iter()
        .map(|p| space.embed(p))
        .collect::<Result<Vec<_>>>()?;
    let n = emb.len();
    let dist: Vec<Vec<f64>> = crate::par::map_indexed(n, |i| {
        (0..n)
            .map(|j| space.embedded_distance(&emb[i], &emb[j]))
            .collect()
    });

    let mut report = AxiomReport {
        points: n,
        triples_checked: (n as u64).pow(3),
        ..Default::default()
    };
    for i in 0..n {
        for j in 0..n {
            let d = dist[i][j];
            if d < 0.0 || d.is_nan() {
                report.negative.push((i, j));
            }
            if (d - dist[j][i]).abs() > AXIOM_TOL {
                report.symmetry.push((i, j));
            }
            if (i == j && d > AXIOM_TOL) || (i != j && d == 0.0 && !same_point(&pts[i], &pts[j])) {
                report.identity.push((i, j));
            }
        }
    }
    let triangle: Vec<Vec<(usize, usize, usize)>> = crate::par::map_indexed(n, |i| {
        let mut bad = Vec::new();
        for j in 0..n {
            for k in 0..n {
                if dist[i][k] > dist[i][j] + dist[j][k] + AXIOM_TOL {
                    bad.push((i, j, k));
                }
            }
        }
        bad
    });
    report.triangle = triangle.into_iter().flatten().collect();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn closed_form_line(x: f64, y: f64) -> f64 {
        2.0 * (x - y).abs() / ((1.0 + x * x) * (1.0 + y * y)).sqrt()
    }

    #[test]
    fn line_examples() {
        let inf = CompactPoint::Infinity;
        let p = CompactPoint::line;
        assert!((dist_line(&p(0.0), &inf).unwrap() - 2.0).abs() < 1e-15);
        assert!((dist_line(&p(1.0), &p(-1.0)).unwrap() - 2.0).abs() < 1e-15);
        let d = dist_line(&p(100.0), &inf).unwrap();
        assert!((d - 2.0 / 10001f64.sqrt()).abs() < 1e-15);
        assert!((d - 0.019_999_000_075).abs() < 1e-12);
        assert_eq!(dist_line(&inf, &inf).unwrap(), 0.0);
    }

    #[test]
    fn line_embedding_agrees_with_closed_form() {
        let xs = [-1e6, -37.0, -2.5, -1.0, -1e-3, 0.0, 0.3, 1.0, 4.0, 1e3];
        for &x in &xs {
            for &y in &xs {
                let emb = dist_line(&CompactPoint::line(x), &CompactPoint::line(y)).unwrap();
                assert!((emb - closed_form_line(x, y)).abs() < 1e-12, "{x} {y}");
            }
            let to_inf = dist_line(&CompactPoint::line(x), &CompactPoint::Infinity).unwrap();
            assert!((to_inf - 2.0 / (1.0 + x * x).sqrt()).abs() < 1e-12);
        }
    }

    #[test]
    fn cylinder_examples() {
        let p = CompactPoint::cylinder(0.3, 1.0);
        assert_eq!(dist_cylinder(&p, &p).unwrap(), 0.0);

        let far_left = CompactPoint::cylinder(-50.0, 0.0);
        let d = dist_cylinder(&far_left, &CompactPoint::Infinity).unwrap();
        assert!((d / (2.0 * (-50f64).exp()) - 1.0).abs() < 1e-12);

        // Brute force over the three quotient terms.
        let far_right = CompactPoint::cylinder(50.0, 0.0);
        let e = (-50f64).exp();
        let chi = |a: f64, b: f64| 2.0 * (a - b).abs() / ((1.0 + a * a) * (1.0 + b * b)).sqrt();
        let (za, zb) = (e, 1.0 / e);
        let terms = [
            chi(za, zb),
            chi(za, 0.0) + 2.0 / (1.0 + zb * zb).sqrt(),
            2.0 / (1.0 + za * za).sqrt() + chi(zb, 0.0),
        ];
        let expected = terms.iter().cloned().fold(f64::INFINITY, f64::min);
        let got = dist_cylinder(&far_left, &far_right).unwrap();
        assert!((got / expected - 1.0).abs() < 1e-9);
        assert!((got / (4.0 * e) - 1.0).abs() < 1e-9);
    }

    #[test]
    fn cylinder_chord_matches_riemann_sphere_formula() {
        let pts: [(f64, f64); 5] = [(0.0, 0.0), (0.5, 2.0), (-1.2, 4.0), (2.0, 6.0), (-0.1, 0.1)];
        for &(xa, ta) in &pts {
            for &(xb, tb) in &pts {
                let za = num_complex::Complex64::from_polar(xa.exp(), ta);
                let zb = num_complex::Complex64::from_polar(xb.exp(), tb);
                let chi =
                    2.0 * (za - zb).norm() / ((1.0 + za.norm_sqr()) * (1.0 + zb.norm_sqr())).sqrt();
                let a = Embedded::cylinder(xa, ta);
                let b = Embedded::cylinder(xb, tb);
                let direct = chord(&a.pos, &b.pos);
                assert!((direct - chi).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn cylinder_is_periodic_in_theta() {
        let a = CompactPoint::Cylinder { x: 0.4, theta: 1.0 };
        let b = CompactPoint::Cylinder {
            x: 0.4,
            theta: 1.0 + TAU,
        };
        let c = CompactPoint::cylinder(-0.7, 3.0);
        let da = dist_cylinder(&a, &c).unwrap();
        let db = dist_cylinder(&b, &c).unwrap();
        assert!((da - db).abs() < 1e-12);
        assert_eq!(CompactPoint::cylinder(1.0, TAU - 1e-14).theta(), Some(0.0));
    }

    #[test]
    fn mixing_spaces_is_an_error() {
        let l = CompactPoint::line(1.0);
        let c = CompactPoint::cylinder(1.0, 0.0);
        assert_eq!(
            dist_line(&l, &c),
            Err(Error::WrongSpace(CompactSpaceKind::LineBar))
        );
        assert!(dist_cylinder(&l, &c).is_err());
        assert!(dist_line(&CompactPoint::Infinity, &l).is_ok());
    }

    #[test]
    fn identical_points_are_clean() {
        let pts = vec![CompactPoint::line(2.0); 5];
        assert!(check_metric_axioms(CompactSpaceKind::LineBar, &pts)
            .unwrap()
            .is_clean());
    }

    #[test]
    fn detects_wrong_space_points() {
        let pts = [
            CompactPoint::line(0.0),
            CompactPoint::cylinder(0.0, 0.0),
            CompactPoint::Infinity,
        ];
        assert!(check_metric_axioms(CompactSpaceKind::LineBar, &pts).is_err());
    }
}
