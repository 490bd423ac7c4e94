//! Finite samples of compactified subgroups.
//!
//! A sample keeps every element of the subgroup inside the base-space box
//! `|x| <= R` (continuous parts are sampled with arclength step `δ`) and
//! always contains the point at infinity. Everything beyond `R` lies close to
//! infinity in the compact metric, so the sample carries a certified covering
//! radius: every point of the true compactified set is within
//! `covering_radius` of some sample point.

use std::f64::consts::{PI, TAU};
use std::fmt::Write as _;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::format::fmt_real;
use crate::index::SpatialIndex;
use crate::metric::{
    cylinder_tail_bound, line_tail_bound, CompactPoint, CompactSpaceKind, Embedded,
    CYLINDER_LIPSCHITZ, LINE_LIPSCHITZ,
};
use crate::par;
use crate::subgroup::{imaginary_period, CStarSubgroup, RSubgroup, Subgroup};

/// Points closer than this in both coordinates are merged.
pub const DEDUP_TOL: f64 = 1e-12;

/// Upper limit on the number of points a single sample may hold.
pub const MAX_SAMPLE_POINTS: usize = 20_000_000;

/// A finite, lexicographically sorted, deduplicated point cloud.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointCloud {
    pub space: CompactSpaceKind,
    pub points: Vec<CompactPoint>,
}

impl PointCloud {
    pub fn new(space: CompactSpaceKind, mut points: Vec<CompactPoint>) -> Result<Self> {
        if points.iter().any(|p| !space.admits(p)) {
            return Err(Error::WrongSpace(space));
        }
        for p in points.iter_mut() {
            if let CompactPoint::Cylinder { x, theta } = *p {
                *p = CompactPoint::cylinder(x, theta);
            }
        }
        points.sort_by(|a, b| a.lex_cmp(b));
        points.dedup_by(|b, a| near(a, b));
        Ok(PointCloud { space, points })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn embedded(&self) -> Vec<Embedded> {
        self.points
            .iter()
            .map(|p| {
                self.space
                    .embed(p)
                    .expect("cloud points belong to their space")
            })
            .collect()
    }

    /// `x,theta,is_infinity` rows; line clouds leave `theta` empty.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("x,theta,is_infinity\n");
        for p in &self.points {
            match *p {
                CompactPoint::Line(x) => writeln!(out, "{},,0", fmt_real(x)),
                CompactPoint::Cylinder { x, theta } => {
                    writeln!(out, "{},{},0", fmt_real(x), fmt_real(theta))
                }
                CompactPoint::Infinity => writeln!(out, ",,1"),
            }
            .expect("writing to a String");
        }
        out
    }
}

fn near(a: &CompactPoint, b: &CompactPoint) -> bool {
    match (*a, *b) {
        (CompactPoint::Infinity, CompactPoint::Infinity) => true,
        (CompactPoint::Line(x), CompactPoint::Line(y)) => (x - y).abs() <= DEDUP_TOL,
        (
            CompactPoint::Cylinder { x: xa, theta: ta },
            CompactPoint::Cylinder { x: xb, theta: tb },
        ) => (xa - xb).abs() <= DEDUP_TOL && (ta - tb).abs() <= DEDUP_TOL,
        _ => false,
    }
}

/// A compactified subgroup realized as a finite cloud with a covering certificate.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SubgroupSample {
    pub cloud: PointCloud,
    pub source: Subgroup,
    pub trunc_radius: f64,
    pub step: f64,
    pub covering_radius: f64,
}

impl SubgroupSample {
    pub fn space(&self) -> CompactSpaceKind {
        self.cloud.space
    }

    pub fn points(&self) -> &[CompactPoint] {
        &self.cloud.points
    }

    pub fn len(&self) -> usize {
        self.cloud.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cloud.is_empty()
    }

    pub fn to_csv(&self) -> String {
        self.cloud.to_csv()
    }
}

impl AsRef<PointCloud> for SubgroupSample {
    fn as_ref(&self) -> &PointCloud {
        &self.cloud
    }
}

impl AsRef<PointCloud> for PointCloud {
    fn as_ref(&self) -> &PointCloud {
        self
    }
}

fn check_params(radius: f64, step: f64) -> Result<()> {
    if radius > 0.0 && step > 0.0 && radius.is_finite() && step.is_finite() {
        Ok(())
    } else {
        Err(Error::BadSampling { radius, step })
    }
}

/// Largest `n` with `n * spacing <= radius`, up to relative rounding.
fn half_count(radius: f64, spacing: f64) -> Result<usize> {
    let n = (radius / spacing * (1.0 + 1e-12)).floor();
    if n > MAX_SAMPLE_POINTS as f64 {
        return Err(Error::InvalidParameter(format!(
            "sampling {radius} with spacing {spacing} exceeds {MAX_SAMPLE_POINTS} points"
        )));
    }
    Ok(n as usize)
}

fn check_total(n: usize) -> Result<()> {
    if n > MAX_SAMPLE_POINTS {
        Err(Error::InvalidParameter(format!(
            "sample would hold {n} points (limit {MAX_SAMPLE_POINTS})"
        )))
    } else {
        Ok(())
    }
}

/// Number of angular samples on a full circle so that spacing is at most `δ`.
fn circle_count(step: f64) -> Result<usize> {
    let n = (TAU / step).ceil().max(1.0);
    if n > MAX_SAMPLE_POINTS as f64 {
        return Err(Error::InvalidParameter(format!(
            "angular step {step} too small"
        )));
    }
    Ok(n as usize)
}

fn symmetric(n: usize) -> impl Iterator<Item = i64> {
    let n = n as i64;
    -n..=n
}

/// Samples a closed subgroup of `R` on `R ∪ {∞}`.
pub fn sample_r_subgroup(g: &RSubgroup, radius: f64, step: f64) -> Result<SubgroupSample> {
    check_params(radius, step)?;
    let (mut pts, covering) = match *g {
        RSubgroup::Trivial => (vec![CompactPoint::line(0.0)], 0.0),
        RSubgroup::Cyclic { r } => {
            let n = half_count(radius, r)?;
            check_total(2 * n + 1)?;
            let pts = symmetric(n)
                .map(|k| CompactPoint::line(k as f64 * r))
                .collect();
            (pts, line_tail_bound(radius))
        }
        RSubgroup::Line => {
            let n = half_count(radius, step)?;
            check_total(2 * n + 1)?;
            let pts = symmetric(n)
                .map(|k| CompactPoint::line(k as f64 * step))
                .collect();
            (pts, line_tail_bound(radius) + LINE_LIPSCHITZ * step)
        }
    };
    pts.push(CompactPoint::Infinity);
    Ok(SubgroupSample {
        cloud: PointCloud::new(CompactSpaceKind::LineBar, pts)?,
        source: Subgroup::Real(*g),
        trunc_radius: radius,
        step,
        covering_radius: covering,
    })
}

/// `n` evenly spaced vertical circle samples at base coordinate `x`.
fn circle_at(x: f64, n: usize) -> impl Iterator<Item = CompactPoint> {
    (0..n).map(move |j| CompactPoint::cylinder(x, TAU * j as f64 / n as f64))
}

/// Samples a closed subgroup of `C*` on the compactified cylinder.
pub fn sample_cstar_subgroup(g: &CStarSubgroup, radius: f64, step: f64) -> Result<SubgroupSample> {
    check_params(radius, step)?;
    let tail = cylinder_tail_bound(radius);
    let (mut pts, covering): (Vec<CompactPoint>, f64) = match *g {
        CStarSubgroup::A { m } => {
            let h = imaginary_period(m);
            check_total(m as usize)?;
            let pts = (0..m)
                .map(|k| CompactPoint::cylinder(0.0, h * f64::from(k)))
                .collect();
            (pts, 0.0)
        }
        CStarSubgroup::B { m, z } => {
            let h = imaginary_period(m);
            let n = half_count(radius, z.re)?;
            check_total((2 * n + 1).saturating_mul(m as usize))?;
            let cols: Vec<i64> = symmetric(n).collect();
            let pts = par::map_slice_with(par::Execution::default(), &cols, |&a| {
                let af = a as f64;
                (0..m)
                    .map(|b| CompactPoint::cylinder(af * z.re, af * z.im + f64::from(b) * h))
                    .collect::<Vec<_>>()
            });
            (pts.into_iter().flatten().collect(), tail)
        }
        CStarSubgroup::C { x } => {
            let n = half_count(radius, x)?;
            let nt = circle_count(step)?;
            check_total((2 * n + 1).saturating_mul(nt))?;
            let pts = symmetric(n)
                .flat_map(|k| circle_at(k as f64 * x, nt))
                .collect();
            (pts, tail + CYLINDER_LIPSCHITZ * PI / nt as f64)
        }
        CStarSubgroup::D { m, t } => {
            let h = imaginary_period(m);
            let dx = step / t.hypot(1.0);
            let n = half_count(radius, dx)?;
            check_total((2 * n + 1).saturating_mul(m as usize))?;
            let cols: Vec<i64> = symmetric(n).collect();
            let pts = par::map_slice_with(par::Execution::default(), &cols, |&j| {
                let x = j as f64 * dx;
                (0..m)
                    .map(|k| CompactPoint::cylinder(x, t * x + f64::from(k) * h))
                    .collect::<Vec<_>>()
            });
            // Gaps are at most δ/2 along each line, and below δ at the box edge.
            (
                pts.into_iter().flatten().collect(),
                tail + CYLINDER_LIPSCHITZ * step,
            )
        }
        CStarSubgroup::CInfinity => {
            let nt = circle_count(step)?;
            (
                circle_at(0.0, nt).collect(),
                CYLINDER_LIPSCHITZ * PI / nt as f64,
            )
        }
        CStarSubgroup::Full => {
            let n = half_count(radius, step)?;
            let nt = circle_count(step)?;
            check_total((2 * n + 1).saturating_mul(nt))?;
            let cols: Vec<i64> = symmetric(n).collect();
            let pts = par::map_slice_with(par::Execution::default(), &cols, |&k| {
                circle_at(k as f64 * step, nt).collect::<Vec<_>>()
            });
            let gap = step.hypot(PI / nt as f64);
            (
                pts.into_iter().flatten().collect(),
                tail + CYLINDER_LIPSCHITZ * gap,
            )
        }
    };
    pts.push(CompactPoint::Infinity);
    Ok(SubgroupSample {
        cloud: PointCloud::new(CompactSpaceKind::CylinderBar, pts)?,
        source: Subgroup::CStar(*g),
        trunc_radius: radius,
        step,
        covering_radius: covering,
    })
}

/// Samples either kind of subgroup.
pub fn sample_subgroup(g: &Subgroup, radius: f64, step: f64) -> Result<SubgroupSample> {
    match g {
        Subgroup::Real(g) => sample_r_subgroup(g, radius, step),
        Subgroup::CStar(g) => sample_cstar_subgroup(g, radius, step),
    }
}

/// Draws a random point of the true compactified subgroup, reaching well past
/// the truncation radius so tail bounds get exercised.
pub fn random_true_point<R: Rng>(g: &Subgroup, radius: f64, rng: &mut R) -> CompactPoint {
    if rng.gen_bool(0.05) {
        return CompactPoint::Infinity;
    }
    let reach = 3.0 * radius;
    let index_in = |rng: &mut R, spacing: f64| -> f64 {
        let k = (reach / spacing).ceil().min(1e9) as i64;
        rng.gen_range(-k..=k) as f64
    };
    match *g {
        Subgroup::Real(RSubgroup::Trivial) => CompactPoint::line(0.0),
        Subgroup::Real(RSubgroup::Cyclic { r }) => CompactPoint::line(index_in(rng, r) * r),
        Subgroup::Real(RSubgroup::Line) => {
            if rng.gen_bool(0.1) {
                let mag = 10f64.powf(rng.gen_range(0.0..8.0)) * radius;
                CompactPoint::line(if rng.gen_bool(0.5) { mag } else { -mag })
            } else {
                CompactPoint::line(rng.gen_range(-reach..=reach))
            }
        }
        Subgroup::CStar(c) => {
            let w = random_true_complex(&c, reach, rng, index_in);
            CompactPoint::cylinder(w.re, w.im)
        }
    }
}

fn random_true_complex<R: Rng>(
    g: &CStarSubgroup,
    reach: f64,
    rng: &mut R,
    index_in: impl Fn(&mut R, f64) -> f64,
) -> Complex64 {
    match *g {
        CStarSubgroup::A { m } => {
            let k = rng.gen_range(0..m);
            Complex64::new(0.0, imaginary_period(m) * f64::from(k))
        }
        CStarSubgroup::B { m, z } => {
            let a = index_in(rng, z.re);
            let b = rng.gen_range(0..m);
            z * a + Complex64::new(0.0, imaginary_period(m) * f64::from(b))
        }
        CStarSubgroup::C { x } => {
            let k = index_in(rng, x);
            Complex64::new(k * x, rng.gen_range(0.0..TAU))
        }
        CStarSubgroup::D { m, t } => {
            let x = rng.gen_range(-reach..=reach);
            let k = rng.gen_range(0..m);
            Complex64::new(x, t * x + imaginary_period(m) * f64::from(k))
        }
        CStarSubgroup::CInfinity => Complex64::new(0.0, rng.gen_range(0.0..TAU)),
        CStarSubgroup::Full => {
            Complex64::new(rng.gen_range(-reach..=reach), rng.gen_range(0.0..TAU))
        }
    }
}

/// Largest observed distance from random points of the true set to the sample.
///
/// A valid certificate satisfies `certify_covering(s, ..) <= s.covering_radius`.
pub fn certify_covering(s: &SubgroupSample, probes: usize, seed: u64) -> Result<f64> {
    if probes == 0 {
        return Err(Error::InvalidParameter("probes must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draws: Vec<CompactPoint> = (0..probes)
        .map(|_| random_true_point(&s.source, s.trunc_radius, &mut rng))
        .collect();
    let space = s.space();
    let index = SpatialIndex::new(space, s.cloud.embedded());
    let dists = par::map_slice_with(par::Execution::default(), &draws, |p| {
        let q = space.embed(p).expect("draws live in the sample's space");
        index.nearest(&q).map_or(f64::INFINITY, |(d, _)| d)
    });
    Ok(dists.into_iter().fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xs(s: &SubgroupSample) -> Vec<Option<f64>> {
        s.points().iter().map(|p| p.x()).collect()
    }

    #[test]
    fn cyclic_enumeration() {
        let s = sample_r_subgroup(&RSubgroup::Cyclic { r: 2.0 }, 5.0, 1.0).unwrap();
        assert_eq!(
            xs(&s),
            vec![
                Some(-4.0),
                Some(-2.0),
                Some(0.0),
                Some(2.0),
                Some(4.0),
                None
            ]
        );
    }

    #[test]
    fn trivial_is_zero_and_infinity() {
        let s = sample_r_subgroup(&RSubgroup::Trivial, 3.0, 0.1).unwrap();
        assert_eq!(
            s.points(),
            &[CompactPoint::line(0.0), CompactPoint::Infinity]
        );
        assert_eq!(certify_covering(&s, 100, 1).unwrap(), 0.0);
    }

    #[test]
    fn full_line_count_and_bound() {
        let s = sample_r_subgroup(&RSubgroup::Line, 10.0, 0.01).unwrap();
        assert_eq!(s.len(), 2001 + 1);
        assert!(s.covering_radius <= 2.0 / 101f64.sqrt() + 0.02 + 1e-15);
        let seen = certify_covering(&s, 10_000, 7).unwrap();
        assert!(seen <= s.covering_radius, "{seen} > {}", s.covering_radius);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(sample_r_subgroup(&RSubgroup::Line, 0.0, 0.1).is_err());
        assert!(sample_r_subgroup(&RSubgroup::Line, 1.0, -0.1).is_err());
        assert!(sample_cstar_subgroup(&CStarSubgroup::Full, 1.0, 0.0).is_err());
        assert!(sample_cstar_subgroup(&CStarSubgroup::Full, f64::NAN, 0.1).is_err());
        assert!(certify_covering(
            &sample_r_subgroup(&RSubgroup::Trivial, 1.0, 1.0).unwrap(),
            0,
            0
        )
        .is_err());
    }

    #[test]
    fn a2_is_two_points() {
        let s = sample_cstar_subgroup(&CStarSubgroup::a(2), 1.0, 0.3).unwrap();
        assert_eq!(
            s.points(),
            &[
                CompactPoint::cylinder(0.0, 0.0),
                CompactPoint::cylinder(0.0, PI),
                CompactPoint::Infinity
            ]
        );
    }

    #[test]
    fn d_line_count() {
        let s = sample_cstar_subgroup(&CStarSubgroup::d(1, 0.0).unwrap(), 3.0, 0.5).unwrap();
        assert_eq!(s.len(), 13 + 1);
        assert!(s.points()[..13].iter().all(|p| p.theta() == Some(0.0)));
    }

    #[test]
    fn full_grid_count() {
        let s = sample_cstar_subgroup(&CStarSubgroup::Full, 2.0, 0.5).unwrap();
        let nt = (TAU / 0.5).ceil() as usize;
        assert_eq!(nt, 13);
        assert_eq!(s.len(), 9 * nt + 1);
    }

    #[test]
    fn cyclic_certificate() {
        let s = sample_r_subgroup(&RSubgroup::Cyclic { r: 1.0 }, 10.0, 1.0).unwrap();
        let seen = certify_covering(&s, 1000, 11).unwrap();
        assert!(seen <= 2.0 / 101f64.sqrt());
    }

    #[test]
    fn d_certificate() {
        let s = sample_cstar_subgroup(&CStarSubgroup::d(1, 0.0).unwrap(), 5.0, 0.01).unwrap();
        let seen = certify_covering(&s, 1000, 13).unwrap();
        assert!(seen <= s.covering_radius);
    }

    #[test]
    fn csv_layout() {
        let s = sample_r_subgroup(&RSubgroup::Cyclic { r: 1.5 }, 2.0, 1.0).unwrap();
        let csv = s.to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "x,theta,is_infinity");
        assert_eq!(lines.len(), 1 + 4);
        assert!(lines[1].ends_with(",,0"));
        assert_eq!(lines[4], ",,1");
        let c = sample_cstar_subgroup(&CStarSubgroup::a(1), 1.0, 1.0)
            .unwrap()
            .to_csv();
        assert_eq!(c.lines().nth(1).unwrap().split(',').count(), 3);
    }

    #[test]
    fn cloud_rejects_foreign_points() {
        let r = PointCloud::new(
            CompactSpaceKind::LineBar,
            vec![CompactPoint::cylinder(0.0, 1.0)],
        );
        assert!(r.is_err());
    }

    #[test]
    fn cloud_dedups() {
        let c = PointCloud::new(
            CompactSpaceKind::CylinderBar,
            vec![
                CompactPoint::cylinder(1.0, 0.5),
                CompactPoint::Infinity,
                CompactPoint::cylinder(1.0 + 1e-14, 0.5),
                CompactPoint::Infinity,
            ],
        )
        .unwrap();
        assert_eq!(c.len(), 2);
    }
}
