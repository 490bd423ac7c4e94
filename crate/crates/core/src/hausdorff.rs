//! Directed and symmetric Hausdorff distances between finite clouds.
//!
//! For finite `A`, `B` in a compactified space,
//!
//! ```text
//! h(A, B) = max_{a ∈ A} min_{b ∈ B} d(a, b)
//! d_H(A, B) = max(h(A, B), h(B, A))
//! ```
//!
//! [`Method::Brute`] evaluates every pair and is the reference.
//! [`Method::Grid`] answers each inner `min` through a [`SpatialIndex`]; since
//! the index is exact, both methods return identical values and witnesses.
//! Ties go to the lexicographically smallest point (clouds are stored sorted,
//! so this is the smallest index).

use serde::Serialize;

use crate::error::{Error, Result};
use crate::index::SpatialIndex;
use crate::metric::{CompactPoint, CompactSpaceKind, Embedded};
use crate::par::{self, Execution};
use crate::sample::{PointCloud, SubgroupSample};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Brute,
    Grid,
}

/// Anything that exposes a point cloud and, optionally, a covering radius.
pub trait Sampled {
    fn cloud(&self) -> &PointCloud;

    fn covering_radius(&self) -> f64 {
        0.0
    }
}

impl Sampled for PointCloud {
    fn cloud(&self) -> &PointCloud {
        self
    }
}

impl Sampled for SubgroupSample {
    fn cloud(&self) -> &PointCloud {
        &self.cloud
    }

    fn covering_radius(&self) -> f64 {
        self.covering_radius
    }
}

/// One directed term `h(A, B)` with the pair achieving it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Directed {
    pub value: f64,
    /// The point of `A` farthest from `B`.
    pub from: CompactPoint,
    /// Its nearest point in `B`.
    pub to: CompactPoint,
    #[serde(skip)]
    pub from_index: usize,
    #[serde(skip)]
    pub to_index: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HausdorffResult {
    pub value: f64,
    pub directed_ab: f64,
    pub directed_ba: f64,
    /// Witness pair of the larger directed term: `witness_a ∈ A`, `witness_b ∈ B`.
    pub witness_a: CompactPoint,
    pub witness_b: CompactPoint,
    pub method: Method,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub interval: Option<[f64; 2]>,
}

fn check_pair(a: &PointCloud, b: &PointCloud) -> Result<()> {
    if a.space != b.space {
        return Err(Error::SpaceMismatch {
            a: a.space,
            b: b.space,
        });
    }
    if a.is_empty() || b.is_empty() {
        return Err(Error::InvalidParameter(
            "Hausdorff distance of an empty cloud".into(),
        ));
    }
    Ok(())
}

fn brute_nearest(space: CompactSpaceKind, q: &Embedded, targets: &[Embedded]) -> (f64, usize) {
    let mut best = (f64::INFINITY, 0);
    for (i, p) in targets.iter().enumerate() {
        let d = space.embedded_distance(q, p);
        if d < best.0 {
            best = (d, i);
        }
    }
    best
}

/// `h(A, B)` by the chosen method.
pub fn directed_with<A: Sampled, B: Sampled>(
    a: &A,
    b: &B,
    method: Method,
    exec: Execution,
) -> Result<Directed> {
    let (ca, cb) = (a.cloud(), b.cloud());
    check_pair(ca, cb)?;
    let space = ca.space;
    let ea = ca.embedded();
    let eb = cb.embedded();

    let nearest: Vec<(f64, usize)> = match method {
        Method::Brute => par::map_slice_with(exec, &ea, |q| brute_nearest(space, q, &eb)),
        Method::Grid => {
            let index = SpatialIndex::new(space, eb);
            par::map_slice_with(exec, &ea, |q| {
                index.nearest(q).expect("target cloud is nonempty")
            })
        }
    };
    let (from_index, value) =
        par::argmax_with(exec, nearest.len(), |i| nearest[i].0).expect("source cloud is nonempty");
    let to_index = nearest[from_index].1;
    Ok(Directed {
        value,
        from: ca.points[from_index],
        to: cb.points[to_index],
        from_index,
        to_index,
    })
}

/// Directed Hausdorff distance `h(A, B)`, brute force.
pub fn directed_hausdorff<A: Sampled, B: Sampled>(a: &A, b: &B) -> Result<Directed> {
    directed_with(a, b, Method::Brute, Execution::default())
}

pub fn hausdorff_with<A: Sampled, B: Sampled>(
    a: &A,
    b: &B,
    method: Method,
    exec: Execution,
) -> Result<HausdorffResult> {
    let ab = directed_with(a, b, method, exec)?;
    let ba = directed_with(b, a, method, exec)?;
    let (witness_a, witness_b) = if ab.value >= ba.value {
        (ab.from, ab.to)
    } else {
        (ba.to, ba.from)
    };
    Ok(HausdorffResult {
        value: ab.value.max(ba.value),
        directed_ab: ab.value,
        directed_ba: ba.value,
        witness_a,
        witness_b,
        method,
        interval: None,
    })
}

/// Reference `O(|A| |B|)` evaluation.
pub fn hausdorff_brute<A: Sampled, B: Sampled>(a: &A, b: &B) -> Result<HausdorffResult> {
    hausdorff_with(a, b, Method::Brute, Execution::default())
}

/// Spatially indexed evaluation; agrees exactly with [`hausdorff_brute`].
pub fn hausdorff_grid<A: Sampled, B: Sampled>(a: &A, b: &B) -> Result<HausdorffResult> {
    hausdorff_with(a, b, Method::Grid, Execution::default())
}

/// Rigorous enclosure `[lo, hi]` of the Hausdorff distance between the true
/// compactified sets behind two samples, from the triangle inequality for
/// `d_H` and the covering certificates.
pub fn hausdorff_bound_true_sets(
    a: &SubgroupSample,
    b: &SubgroupSample,
) -> Result<HausdorffResult> {
    let mut r = hausdorff_grid(a, b)?;
    let slack = a.covering_radius + b.covering_radius;
    r.interval = Some([(r.value - slack).max(0.0), r.value + slack]);
    Ok(r)
}
