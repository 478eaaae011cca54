//! Finite point sets in ℝᵏ and their support-function algebra.
//!
//! The support function `h_A(x) = max{a·x : a ∈ A}` of a finite set determines
//! its convex hull and turns Minkowski sums into pointwise sums:
//! `h_{A+B} = h_A + h_B`, `h_{λA} = λ h_A`. Everything downstream (generalized
//! circumradii, linear diversities, mean width) is built on these identities.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Per-coordinate tolerance for point deduplication. Support evaluations and
/// the containment LPs are exact on duplicates, so dedup is purely a size
/// optimization.
pub const DEDUP_TOL: f64 = 1e-12;

/// A point (or direction) in ℝᵏ.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Vector(pub Vec<f64>);

impl Vector {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Vector(coords))
    }

    pub fn zeros(dim: usize) -> Self {
        Vector(vec![0.0; dim])
    }

    /// Standard basis vector `e_i` (zero-indexed).
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = vec![0.0; dim];
        v[i] = 1.0;
        Vector(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn dot(&self, other: &Vector) -> f64 {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn add(&self, other: &Vector) -> Vector {
        Vector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Vector) -> Vector {
        Vector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, lambda: f64) -> Vector {
        Vector(self.0.iter().map(|a| a * lambda).collect())
    }

    pub fn neg(&self) -> Vector {
        Vector(self.0.iter().map(|a| -a).collect())
    }

    /// Returns `self / |self|`, or `None` for (numerically) zero vectors.
    pub fn normalized(&self) -> Option<Vector> {
        let n = self.norm();
        if n <= 1e-300 {
            None
        } else {
            Some(self.scale(1.0 / n))
        }
    }
}

/// A finite list of points of ℝᵏ, the argument of every diversity.
///
/// The set may be empty and may contain duplicates; [`PointSet::dedup`]
/// collapses duplicates at [`DEDUP_TOL`] per coordinate.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointSet {
    pub dim: usize,
    pub points: Vec<Vector>,
}

impl PointSet {
    pub fn new(dim: usize, points: Vec<Vector>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::EmptyInput("dimension must be at least 1"));
        }
        for p in &points {
            if p.dim() != dim {
                return Err(Error::DimMismatch {
                    expected: dim,
                    got: p.dim(),
                });
            }
            if p.0.iter().any(|c| !c.is_finite()) {
                return Err(Error::NonFinite);
            }
        }
        Ok(PointSet { dim, points })
    }

    pub fn empty(dim: usize) -> Self {
        PointSet { dim, points: vec![] }
    }

    /// Builds a set from coordinate rows, inferring nothing: `dim` is explicit.
    pub fn from_rows(dim: usize, rows: &[&[f64]]) -> Result<Self> {
        let pts = rows.iter().map(|r| Vector(r.to_vec())).collect();
        PointSet::new(dim, pts)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    fn check_dir(&self, x: &Vector) -> Result<()> {
        if x.dim() != self.dim {
            return Err(Error::DimMismatch {
                expected: self.dim,
                got: x.dim(),
            });
        }
        Ok(())
    }

    /// Support function `h_A(x) = max{a·x : a ∈ A}`.
    pub fn support(&self, x: &Vector) -> Result<f64> {
        self.check_dir(x)?;
        if self.is_empty() {
            return Err(Error::EmptySupport);
        }
        Ok(self
            .points
            .iter()
            .map(|p| p.dot(x))
            .fold(f64::NEG_INFINITY, f64::max))
    }

    /// Width in direction `x`: `w_A(x) = h_A(x) + h_A(−x) = max{x·(a−b)}`.
    pub fn width(&self, x: &Vector) -> Result<f64> {
        Ok(self.support(x)? + self.support(&x.neg())?)
    }

    /// Minkowski sum `A + B = {a + b}`, deduplicated at [`DEDUP_TOL`].
    pub fn minkowski_sum(&self, other: &PointSet) -> Result<PointSet> {
        if self.dim != other.dim {
            return Err(Error::DimMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        if self.is_empty() || other.is_empty() {
            return Err(Error::EmptyInput("minkowski sum of an empty set"));
        }
        let mut pts = Vec::with_capacity(self.len() * other.len());
        for a in &self.points {
            for b in &other.points {
                pts.push(a.add(b));
            }
        }
        Ok(PointSet {
            dim: self.dim,
            points: pts,
        }
        .dedup())
    }

    /// Scales every point by `λ ≥ 0`. Negative scaling is not part of the
    /// diversity axioms and is rejected.
    pub fn scale(&self, lambda: f64) -> Result<PointSet> {
        if !(lambda >= 0.0) {
            return Err(Error::NegativeScale(lambda));
        }
        Ok(PointSet {
            dim: self.dim,
            points: self.points.iter().map(|p| p.scale(lambda)).collect(),
        })
    }

    /// Translates every point by `x`.
    pub fn translate(&self, x: &Vector) -> Result<PointSet> {
        self.check_dir(x)?;
        Ok(PointSet {
            dim: self.dim,
            points: self.points.iter().map(|p| p.add(x)).collect(),
        })
    }

    /// Canonical duplicate removal: keeps the first of any group of points
    /// that agree within [`DEDUP_TOL`] in every coordinate.
    pub fn dedup(&self) -> PointSet {
        let mut kept: Vec<Vector> = Vec::with_capacity(self.points.len());
        'outer: for p in &self.points {
            for q in &kept {
                if p.0
                    .iter()
                    .zip(&q.0)
                    .all(|(a, b)| (a - b).abs() <= DEDUP_TOL)
                {
                    continue 'outer;
                }
            }
            kept.push(p.clone());
        }
        PointSet {
            dim: self.dim,
            points: kept,
        }
    }

    /// Extreme points of the planar convex hull (Andrew's monotone chain).
    /// Only exactly collinear interior points are dropped, so containment in
    /// any convex set is unchanged. Callers use this to shrink LP sizes.
    pub(crate) fn extreme_points_2d(&self) -> PointSet {
        debug_assert_eq!(self.dim, 2);
        let deduped = self.dedup();
        if deduped.len() <= 2 {
            return deduped;
        }
        let mut pts = deduped.points;
        pts.sort_by(|a, b| {
            a.0[0]
                .partial_cmp(&b.0[0])
                .unwrap()
                .then(a.0[1].partial_cmp(&b.0[1]).unwrap())
        });
        let cross = |o: &Vector, a: &Vector, b: &Vector| -> f64 {
            (a.0[0] - o.0[0]) * (b.0[1] - o.0[1]) - (a.0[1] - o.0[1]) * (b.0[0] - o.0[0])
        };
        let mut hull: Vec<Vector> = Vec::with_capacity(pts.len() + 1);
        for p in &pts {
            while hull.len() >= 2
                && cross(&hull[hull.len() - 2], &hull[hull.len() - 1], p) <= 0.0
            {
                hull.pop();
            }
            hull.push(p.clone());
        }
        let lower = hull.len() + 1;
        for p in pts.iter().rev().skip(1) {
            while hull.len() >= lower
                && cross(&hull[hull.len() - 2], &hull[hull.len() - 1], p) <= 0.0
            {
                hull.pop();
            }
            hull.push(p.clone());
        }
        hull.pop();
        PointSet {
            dim: 2,
            points: hull,
        }
        .dedup()
    }

    /// Union as point lists (deduplicated).
    pub fn union(&self, other: &PointSet) -> Result<PointSet> {
        if self.dim != other.dim {
            return Err(Error::DimMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        let mut pts = self.points.clone();
        pts.extend(other.points.iter().cloned());
        Ok(PointSet {
            dim: self.dim,
            points: pts,
        }
        .dedup())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ps(dim: usize, rows: &[&[f64]]) -> PointSet {
        PointSet::from_rows(dim, rows).unwrap()
    }

    #[test]
    fn support_singleton_is_dot_product() {
        let a = ps(2, &[&[2.0, 5.0]]);
        assert_eq!(a.support(&Vector(vec![1.0, 0.0])).unwrap(), 2.0);
    }

    #[test]
    fn support_takes_max() {
        let a = ps(2, &[&[0.0, 0.0], &[3.0, 0.0]]);
        assert_eq!(a.support(&Vector(vec![1.0, 0.0])).unwrap(), 3.0);
    }

    #[test]
    fn support_unit_square_diagonal() {
        // Enumerating all four dot products with (1,1)/sqrt(2):
        // 0, 1/sqrt(2), 1/sqrt(2), sqrt(2); the max is sqrt(2).
        let a = ps(2, &[&[0.0, 0.0], &[1.0, 0.0], &[0.0, 1.0], &[1.0, 1.0]]);
        let s = 1.0 / 2f64.sqrt();
        let x = Vector(vec![s, s]);
        let expected = a.points.iter().map(|p| p.dot(&x)).fold(f64::MIN, f64::max);
        let h = a.support(&x).unwrap();
        assert!((h - 2f64.sqrt()).abs() < 1e-12);
        assert_eq!(h, expected);
    }

    #[test]
    fn support_empty_errors() {
        let a = PointSet::empty(2);
        assert!(matches!(
            a.support(&Vector(vec![1.0, 0.0])),
            Err(Error::EmptySupport)
        ));
    }

    #[test]
    fn support_dim_mismatch_errors() {
        let a = ps(2, &[&[1.0, 2.0]]);
        assert!(a.support(&Vector(vec![1.0])).is_err());
    }

    #[test]
    fn width_examples() {
        let single = ps(2, &[&[5.0, 5.0]]);
        assert_eq!(single.width(&Vector(vec![1.0, 0.0])).unwrap(), 0.0);

        let seg = ps(2, &[&[0.0, 0.0], &[3.0, 0.0]]);
        assert_eq!(seg.width(&Vector(vec![1.0, 0.0])).unwrap(), 3.0);
        assert_eq!(seg.width(&Vector(vec![0.0, 1.0])).unwrap(), 0.0);
    }

    #[test]
    fn minkowski_sum_identity_and_square() {
        let a = ps(2, &[&[1.0, 2.0], &[3.0, 4.0]]);
        let zero = ps(2, &[&[0.0, 0.0]]);
        assert_eq!(a.minkowski_sum(&zero).unwrap(), a);

        let ex = ps(2, &[&[0.0, 0.0], &[1.0, 0.0]]);
        let ey = ps(2, &[&[0.0, 0.0], &[0.0, 1.0]]);
        let sq = ex.minkowski_sum(&ey).unwrap();
        assert_eq!(sq.len(), 4);
    }

    #[test]
    fn minkowski_sum_triangle_with_negation() {
        // 9 pairwise sums, 3 of which coincide at the origin: 7 distinct.
        let a = ps(2, &[&[0.0, 0.0], &[1.0, 0.0], &[0.0, 1.0]]);
        let b = ps(2, &[&[0.0, 0.0], &[-1.0, 0.0], &[0.0, -1.0]]);
        let s = a.minkowski_sum(&b).unwrap();
        assert_eq!(s.len(), 7);
        // brute-force oracle: enumerate and dedup by exact comparison
        let mut sums: Vec<(i64, i64)> = vec![];
        for p in &a.points {
            for q in &b.points {
                let key = ((p.0[0] + q.0[0]) as i64, (p.0[1] + q.0[1]) as i64);
                if !sums.contains(&key) {
                    sums.push(key);
                }
            }
        }
        assert_eq!(sums.len(), 7);
    }

    #[test]
    fn scale_examples() {
        let a = ps(2, &[&[0.0, 0.0], &[3.0, 0.0]]);
        assert_eq!(a.scale(1.0).unwrap(), a);
        assert_eq!(
            ps(2, &[&[1.0, 2.0]]).scale(0.0).unwrap(),
            ps(2, &[&[0.0, 0.0]])
        );
        assert_eq!(a.scale(2.0).unwrap(), ps(2, &[&[0.0, 0.0], &[6.0, 0.0]]));
        assert!(a.scale(-1.0).is_err());
    }

    #[test]
    fn translate_examples() {
        let a = ps(2, &[&[0.0, 0.0]]);
        assert_eq!(a.translate(&Vector(vec![0.0, 0.0])).unwrap(), a);
        assert_eq!(
            a.translate(&Vector(vec![1.0, 1.0])).unwrap(),
            ps(2, &[&[1.0, 1.0]])
        );
        let b = ps(2, &[&[0.5, -2.0], &[4.0, 1.0]]);
        let t = Vector(vec![3.25, -7.5]);
        let back = b.translate(&t).unwrap().translate(&t.neg()).unwrap();
        for (p, q) in back.points.iter().zip(&b.points) {
            for (x, y) in p.0.iter().zip(&q.0) {
                assert!((x - y).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn extreme_points_of_square_with_fillers() {
        let a = ps(
            2,
            &[
                &[0.0, 0.0],
                &[1.0, 0.0],
                &[0.0, 1.0],
                &[1.0, 1.0],
                &[0.5, 0.5],
                &[0.5, 0.0],
                &[1.0, 0.5],
            ],
        );
        let hull = a.extreme_points_2d();
        assert_eq!(hull.len(), 4);
        for corner in [[0.0, 0.0], [1.0, 0.0], [0.0, 1.0], [1.0, 1.0]] {
            assert!(hull.points.iter().any(|p| p.0 == corner));
        }
    }

    #[test]
    fn extreme_points_of_collinear_set() {
        let a = ps(2, &[&[0.0, 0.0], &[1.0, 1.0], &[3.0, 3.0], &[2.0, 2.0]]);
        let hull = a.extreme_points_2d();
        assert_eq!(hull.len(), 2);
    }

    #[test]
    fn extreme_points_preserve_support() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            let n = rng.random_range(1..30usize);
            let pts: Vec<Vector> = (0..n)
                .map(|_| {
                    Vector(vec![
                        rng.random_range(-10.0..10.0),
                        rng.random_range(-10.0..10.0),
                    ])
                })
                .collect();
            let a = PointSet::new(2, pts).unwrap();
            let hull = a.extreme_points_2d();
            assert!(hull.len() <= a.dedup().len());
            for _ in 0..8 {
                let x = Vector(vec![
                    rng.random_range(-1.0..1.0),
                    rng.random_range(-1.0..1.0),
                ]);
                let ha = a.support(&x).unwrap();
                let hh = hull.support(&x).unwrap();
                assert!((ha - hh).abs() <= 1e-9 * (1.0 + ha.abs()));
            }
        }
    }

    #[test]
    fn nonfinite_rejected() {
        assert!(PointSet::new(2, vec![Vector(vec![f64::NAN, 0.0])]).is_err());
        assert!(Vector::new(vec![f64::INFINITY]).is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn coord() -> impl Strategy<Value = f64> {
            -10.0..10.0f64
        }

        fn point_set(dim: usize) -> impl Strategy<Value = PointSet> {
            prop::collection::vec(prop::collection::vec(coord(), dim), 1..6).prop_map(
                move |rows| PointSet {
                    dim,
                    points: rows.into_iter().map(Vector).collect(),
                },
            )
        }

        proptest! {
            #[test]
            fn support_homogeneous(a in point_set(3), x in prop::collection::vec(coord(), 3), lam in 0.0..4.0f64) {
                let x = Vector(x);
                let lhs = a.scale(lam).unwrap().support(&x).unwrap();
                let rhs = lam * a.support(&x).unwrap();
                prop_assert!((lhs - rhs).abs() <= 1e-10 * (1.0 + rhs.abs()));
            }

            #[test]
            fn support_additive_under_minkowski_sum(a in point_set(3), b in point_set(3), x in prop::collection::vec(coord(), 3)) {
                let x = Vector(x);
                let lhs = a.minkowski_sum(&b).unwrap().support(&x).unwrap();
                let rhs = a.support(&x).unwrap() + b.support(&x).unwrap();
                prop_assert!((lhs - rhs).abs() <= 1e-10 * (1.0 + rhs.abs()));
            }

            #[test]
            fn support_translates(a in point_set(3), t in prop::collection::vec(coord(), 3), x in prop::collection::vec(coord(), 3)) {
                let t = Vector(t);
                let x = Vector(x);
                let lhs = a.translate(&t).unwrap().support(&x).unwrap();
                let rhs = a.support(&x).unwrap() + t.dot(&x);
                prop_assert!((lhs - rhs).abs() <= 1e-10 * (1.0 + rhs.abs()));
            }

            #[test]
            fn width_symmetric_nonnegative(a in point_set(3), x in prop::collection::vec(coord(), 3)) {
                let x = Vector(x);
                let w = a.width(&x).unwrap();
                let w_neg = a.width(&x.neg()).unwrap();
                prop_assert!(w >= 0.0);
                prop_assert!((w - w_neg).abs() <= 1e-12 * (1.0 + w.abs()));
            }
        }
    }
}
