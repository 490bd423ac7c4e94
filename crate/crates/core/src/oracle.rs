//! Randomized cross-check of the grid Hausdorff engine against brute force.

use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::hausdorff::{hausdorff_with, Method};
use crate::metric::{CompactPoint, CompactSpaceKind};
use crate::par::Execution;
use crate::sample::PointCloud;

/// Where a random cloud puts its mass.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CloudProfile {
    /// Base coordinates spread over a moderate window.
    Spread,
    /// Most points far out, crushed together near infinity.
    NearInfinity,
    /// A handful of tight clusters, which produces many near ties.
    Clustered,
}

impl CloudProfile {
    pub const ALL: [CloudProfile; 3] = [
        CloudProfile::Spread,
        CloudProfile::NearInfinity,
        CloudProfile::Clustered,
    ];
}

fn random_x<R: Rng>(profile: CloudProfile, rng: &mut R, centers: &[f64]) -> f64 {
    match profile {
        CloudProfile::Spread => rng.gen_range(-10.0..10.0),
        CloudProfile::NearInfinity => {
            let mag = 10f64.powf(rng.gen_range(1.0..7.0));
            if rng.gen_bool(0.5) {
                mag
            } else {
                -mag
            }
        }
        CloudProfile::Clustered => {
            centers[rng.gen_range(0..centers.len())] + rng.gen_range(-1e-3..1e-3)
        }
    }
}

/// A random cloud of at most `n` points (duplicates merge); `∞` is included
/// with probability one half.
pub fn random_cloud<R: Rng>(
    space: CompactSpaceKind,
    n: usize,
    profile: CloudProfile,
    rng: &mut R,
) -> PointCloud {
    let centers: Vec<f64> = (0..4).map(|_| rng.gen_range(-5.0..5.0)).collect();
    let mut pts: Vec<CompactPoint> = (0..n.max(1))
        .map(|_| {
            let x = random_x(profile, rng, &centers);
            match space {
                CompactSpaceKind::LineBar => CompactPoint::line(x),
                CompactSpaceKind::CylinderBar => CompactPoint::cylinder(x, rng.gen_range(0.0..TAU)),
            }
        })
        .collect();
    if rng.gen_bool(0.5) {
        pts.push(CompactPoint::Infinity);
    }
    PointCloud::new(space, pts).expect("generated points belong to the space")
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpaceSweep {
    pub space: CompactSpaceKind,
    pub pairs: usize,
    pub mismatches: usize,
    pub max_abs_diff: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepReport {
    pub seed: u64,
    pub max_size: usize,
    pub spaces: Vec<SpaceSweep>,
}

impl SweepReport {
    pub fn mismatches(&self) -> usize {
        self.spaces.iter().map(|s| s.mismatches).sum()
    }
}

/// Compares grid and brute force on `pairs` random cloud pairs per space.
/// A pair mismatches when values differ by more than `tol` or witnesses differ.
pub fn sweep(pairs: usize, max_size: usize, seed: u64, tol: f64) -> Result<SweepReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut spaces = Vec::new();
    for space in [CompactSpaceKind::LineBar, CompactSpaceKind::CylinderBar] {
        let mut s = SpaceSweep {
            space,
            pairs,
            mismatches: 0,
            max_abs_diff: 0.0,
        };
        for i in 0..pairs {
            let pa = CloudProfile::ALL[i % 3];
            let pb = CloudProfile::ALL[(i / 3) % 3];
            let a = random_cloud(space, rng.gen_range(1..=max_size.max(1)), pa, &mut rng);
            let b = random_cloud(space, rng.gen_range(1..=max_size.max(1)), pb, &mut rng);
            let brute = hausdorff_with(&a, &b, Method::Brute, Execution::default())?;
            let grid = hausdorff_with(&a, &b, Method::Grid, Execution::default())?;
            let diff = (brute.value - grid.value).abs();
            s.max_abs_diff = s.max_abs_diff.max(diff);
            if diff > tol || brute.witness_a != grid.witness_a || brute.witness_b != grid.witness_b
            {
                s.mismatches += 1;
            }
        }
        spaces.push(s);
    }
    Ok(SweepReport {
        seed,
        max_size,
        spaces,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_sweep_is_clean() {
        let r = sweep(12, 60, 1, 1e-12).unwrap();
        assert_eq!(r.mismatches(), 0, "{r:?}");
        assert_eq!(r.spaces.len(), 2);
    }

    #[test]
    fn near_infinity_clouds_are_far_out() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let c = random_cloud(
            CompactSpaceKind::CylinderBar,
            50,
            CloudProfile::NearInfinity,
            &mut rng,
        );
        assert!(c
            .points
            .iter()
            .all(|p| p.x().is_none_or(|x| x.abs() >= 10.0)));
    }
}
