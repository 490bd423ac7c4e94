//! Exact nearest-neighbour queries in a compactified space.
//!
//! Points are stored in a kd-tree over their Euclidean embedding (unit circle
//! for the line, unit sphere for the cylinder). Compactified clouds are far
//! from uniform: everything beyond the truncation radius piles up next to
//! infinity, so the tree adapts its cells to the local density instead of
//! using a fixed grid. The cylinder's glued point at infinity has no position
//! on the sphere; its effect enters through the two glue terms of the
//! quotient metric. Each glue term `q.a + p.b` is monotone in `p.b`, so the
//! points minimising it (after rounding) form a prefix of the cloud sorted by
//! `p.b`, and a prefix minimum of indices yields the smallest tied index.
//!
//! Answers are exact: the returned distance equals the brute-force minimum
//! bit for bit, and ties resolve to the smallest point index.

use crate::metric::{chord, CompactSpaceKind, Embedded};

/// Points per leaf.
const LEAF_SIZE: usize = 12;
/// Slack for splitting-plane bounds, so equal-distance ties are never pruned.
const BOUND_SLACK: f64 = 1e-12;

enum Node {
    Leaf {
        start: usize,
        end: usize,
    },
    Split {
        axis: usize,
        value: f64,
        left: usize,
        right: usize,
    },
}

pub struct SpatialIndex {
    space: CompactSpaceKind,
    points: Vec<Embedded>,
    /// Indices of non-glued points, permuted into tree order.
    order: Vec<u32>,
    nodes: Vec<Node>,
    by_to_inf: GlueList,
    by_to_zero: GlueList,
}

/// Points sorted by one pole distance, with running minima of their indices.
#[derive(Default)]
struct GlueList {
    keys: Vec<f64>,
    first_index: Vec<usize>,
}

impl GlueList {
    fn new(points: &[Embedded], key: impl Fn(&Embedded) -> f64) -> Self {
        let mut ids: Vec<usize> = (0..points.len()).collect();
        ids.sort_by(|&a, &b| key(&points[a]).total_cmp(&key(&points[b])).then(a.cmp(&b)));
        let keys = ids.iter().map(|&i| key(&points[i])).collect();
        let first_index = ids
            .iter()
            .scan(usize::MAX, |m, &i| {
                *m = (*m).min(i);
                Some(*m)
            })
            .collect();
        GlueList { keys, first_index }
    }

    /// Smallest index minimising the rounded sum `offset + key`.
    fn argmin(&self, offset: f64) -> Option<usize> {
        let best = offset + *self.keys.first()?;
        let k = self.keys.partition_point(|&b| offset + b <= best);
        Some(self.first_index[k - 1])
    }
}

impl SpatialIndex {
    pub fn new(space: CompactSpaceKind, points: Vec<Embedded>) -> Self {
        let mut order: Vec<u32> = (0..points.len() as u32)
            .filter(|&i| !points[i as usize].glued)
            .collect();
        let mut nodes = Vec::new();
        if !order.is_empty() {
            let len = order.len();
            build(
                &points,
                &mut order,
                0,
                len,
                space.embedding_dim(),
                &mut nodes,
            );
        }

        let (by_to_inf, by_to_zero) = if space == CompactSpaceKind::CylinderBar {
            (
                GlueList::new(&points, |p| p.to_inf),
                GlueList::new(&points, |p| p.to_zero),
            )
        } else {
            Default::default()
        };
        SpatialIndex {
            space,
            points,
            order,
            nodes,
            by_to_inf,
            by_to_zero,
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Embedded] {
        &self.points
    }

    /// Exact nearest point: `(distance, index)`, smallest index on ties.
    pub fn nearest(&self, q: &Embedded) -> Option<(f64, usize)> {
        if self.points.is_empty() {
            return None;
        }
        let mut candidates: [Option<usize>; 3] = [None; 3];
        if !q.glued && !self.nodes.is_empty() {
            let mut best = None;
            self.search(0, &q.pos, &mut best);
            candidates[0] = best.map(|(_, i)| i);
        }
        candidates[1] = self.by_to_inf.argmin(q.to_zero);
        candidates[2] = self.by_to_zero.argmin(q.to_inf);

        let mut best: Option<(f64, usize)> = None;
        for i in candidates.into_iter().flatten() {
            let d = self.space.embedded_distance(q, &self.points[i]);
            if better(d, i, best) {
                best = Some((d, i));
            }
        }
        best
    }

    fn search(&self, node: usize, q: &[f64; 3], best: &mut Option<(f64, usize)>) {
        match self.nodes[node] {
            Node::Leaf { start, end } => {
                for &id in &self.order[start..end] {
                    let i = id as usize;
                    let d = chord(q, &self.points[i].pos);
                    if better(d, i, *best) {
                        *best = Some((d, i));
                    }
                }
            }
            Node::Split {
                axis,
                value,
                left,
                right,
            } => {
                let diff = q[axis] - value;
                let (near, far) = if diff <= 0.0 {
                    (left, right)
                } else {
                    (right, left)
                };
                self.search(near, q, best);
                // Points across the plane are at least |diff| away.
                if best.is_none_or(|(bd, _)| diff.abs() <= bd + BOUND_SLACK) {
                    self.search(far, q, best);
                }
            }
        }
    }
}

#[inline]
fn better(d: f64, i: usize, best: Option<(f64, usize)>) -> bool {
    best.is_none_or(|(bd, bi)| d < bd || (d == bd && i < bi))
}

/// Builds the subtree over `order[start..end]` and returns its node index.
/// Left children hold coordinates `<= value`, right children `>= value`.
fn build(
    points: &[Embedded],
    order: &mut [u32],
    start: usize,
    end: usize,
    dims: usize,
    nodes: &mut Vec<Node>,
) -> usize {
    let id = nodes.len();
    if end - start <= LEAF_SIZE {
        nodes.push(Node::Leaf { start, end });
        return id;
    }
    let axis = (0..dims)
        .max_by(|&a, &b| {
            spread(points, &order[start..end], a).total_cmp(&spread(points, &order[start..end], b))
        })
        .unwrap_or(0);
    if spread(points, &order[start..end], axis) == 0.0 {
        // All positions coincide; splitting cannot separate them.
        nodes.push(Node::Leaf { start, end });
        return id;
    }
    let mid = (start + end) / 2;
    order[start..end].select_nth_unstable_by(mid - start, |&a, &b| {
        points[a as usize].pos[axis].total_cmp(&points[b as usize].pos[axis])
    });
    let value = points[order[mid] as usize].pos[axis];
    nodes.push(Node::Leaf { start, end });
    let left = build(points, order, start, mid, dims, nodes);
    let right = build(points, order, mid, end, dims, nodes);
    nodes[id] = Node::Split {
        axis,
        value,
        left,
        right,
    };
    id
}

fn spread(points: &[Embedded], ids: &[u32], axis: usize) -> f64 {
    let (lo, hi) = ids
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &i| {
            let v = points[i as usize].pos[axis];
            (lo.min(v), hi.max(v))
        });
    hi - lo
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn brute(space: CompactSpaceKind, pts: &[Embedded], q: &Embedded) -> (f64, usize) {
        let mut best = (f64::INFINITY, usize::MAX);
        for (i, p) in pts.iter().enumerate() {
            let d = space.embedded_distance(q, p);
            if d < best.0 {
                best = (d, i);
            }
        }
        best
    }

    #[test]
    fn matches_brute_force_on_cylinder() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let space = CompactSpaceKind::CylinderBar;
        let mut pts: Vec<Embedded> = (0..400)
            .map(|_| {
                Embedded::cylinder(
                    rng.gen_range(-6.0..6.0),
                    rng.gen_range(0.0..std::f64::consts::TAU),
                )
            })
            .collect();
        pts.push(Embedded::cylinder_infinity());
        let idx = SpatialIndex::new(space, pts.clone());
        for _ in 0..2000 {
            let q = Embedded::cylinder(
                rng.gen_range(-12.0..12.0),
                rng.gen_range(0.0..std::f64::consts::TAU),
            );
            assert_eq!(idx.nearest(&q).unwrap(), brute(space, &pts, &q));
        }
        let q = Embedded::cylinder_infinity();
        assert_eq!(idx.nearest(&q).unwrap(), brute(space, &pts, &q));
    }

    #[test]
    fn matches_brute_force_on_line() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let space = CompactSpaceKind::LineBar;
        let pts: Vec<Embedded> = (0..300)
            .map(|_| Embedded::line(rng.gen_range(-50.0..50.0)))
            .collect();
        let idx = SpatialIndex::new(space, pts.clone());
        for _ in 0..300 {
            let q = Embedded::line(rng.gen_range(-1e3..1e3));
            assert_eq!(idx.nearest(&q).unwrap(), brute(space, &pts, &q));
        }
    }

    #[test]
    fn glued_point_alone() {
        let space = CompactSpaceKind::CylinderBar;
        let idx = SpatialIndex::new(space, vec![Embedded::cylinder_infinity()]);
        let q = Embedded::cylinder(1.0, 0.0);
        let (d, i) = idx.nearest(&q).unwrap();
        assert_eq!(i, 0);
        assert_eq!(d, q.to_inf.min(q.to_zero));
    }

    #[test]
    fn rounded_glue_ties_keep_smallest_index() {
        // Far-out points whose pole distances vanish below one ulp of the
        // query's, so several glue sums round to the same value.
        let space = CompactSpaceKind::CylinderBar;
        let pts: Vec<Embedded> = [300.0, 400.0, 500.0, -300.0, -500.0]
            .iter()
            .enumerate()
            .map(|(k, &x)| Embedded::cylinder(x, k as f64))
            .collect();
        let idx = SpatialIndex::new(space, pts.clone());
        for q in [
            Embedded::cylinder(0.3, 2.0),
            Embedded::cylinder(-2.0, 0.5),
            Embedded::cylinder_infinity(),
        ] {
            assert_eq!(idx.nearest(&q).unwrap(), brute(space, &pts, &q));
        }
    }
}
