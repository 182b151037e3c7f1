//! Points, balls and the basic metric quantities of a finite point set in
//! R^d: distance, set distance, diameter, closest pair, spread, and the
//! 2-approximate smallest ball covering α points.
//!
//! All distances are Euclidean and computed by a single routine
//! ([`distance`]), so two code paths that measure the same pair always agree
//! bit for bit.

use std::ops::Deref;

use crate::error::{Error, Result};
use crate::spatial::KdTree;

/// Relative slack applied to every point-in-ball and separation test.
pub const REL_TOL: f64 = 1e-9;

/// Below this many candidate points the α-ball search is done exhaustively.
const BRUTE_FORCE_LIMIT: usize = 64;

/// A point of R^d with finite coordinates and d ≥ 1.
#[derive(Debug, Clone, PartialEq)]
pub struct Point(Vec<f64>);

impl Point {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::ZeroDimension);
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self(coords))
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<f64> {
        self.0
    }
}

impl Deref for Point {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl TryFrom<Vec<f64>> for Point {
    type Error = Error;

    fn try_from(coords: Vec<f64>) -> Result<Self> {
        Point::new(coords)
    }
}

/// An ordered list of points sharing one dimension. Indices `0..len()` are
/// the stable identifiers used by every clustering in this crate.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSet {
    dim: usize,
    coords: Vec<f64>,
}

impl PointSet {
    /// An empty set of dimension `dim`.
    pub fn empty(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        Ok(Self { dim, coords: Vec::new() })
    }

    /// Builds a set from row-major coordinates.
    pub fn from_flat(dim: usize, coords: Vec<f64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        if coords.len() % dim != 0 {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: coords.len() % dim,
            });
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { dim, coords })
    }

    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let first = rows.first().ok_or(Error::EmptySet)?;
        let mut set = Self::empty(first.as_ref().len())?;
        for row in rows {
            set.push(row.as_ref())?;
        }
        Ok(set)
    }

    /// Convenience for one-dimensional inputs.
    pub fn from_values(values: &[f64]) -> Result<Self> {
        Self::from_flat(1, values.to_vec())
    }

    pub fn push(&mut self, coords: &[f64]) -> Result<()> {
        if coords.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: coords.len(),
            });
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFinite);
        }
        self.coords.extend_from_slice(coords);
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.coords.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    /// Coordinates of point `i`. Panics when `i` is out of range.
    pub fn point(&self, i: usize) -> &[f64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = &[f64]> + '_ {
        self.coords.chunks_exact(self.dim)
    }

    pub fn as_flat(&self) -> &[f64] {
        &self.coords
    }

    /// A new set holding the points at `indices`, in that order.
    pub fn select(&self, indices: &[usize]) -> PointSet {
        let mut coords = Vec::with_capacity(indices.len() * self.dim);
        for &i in indices {
            coords.extend_from_slice(self.point(i));
        }
        PointSet { dim: self.dim, coords }
    }
}

/// A closed ball. Membership tests allow a relative slack of [`REL_TOL`].
#[derive(Debug, Clone, PartialEq)]
pub struct Ball {
    pub center: Point,
    pub radius: f64,
}

impl Ball {
    pub fn new(center: Point, radius: f64) -> Result<Self> {
        if !(radius.is_finite() && radius >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "ball radius must be finite and non-negative, got {radius}"
            )));
        }
        Ok(Self { center, radius })
    }

    /// The ball with the same center and radius scaled by `factor`.
    pub fn scaled(&self, factor: f64) -> Ball {
        Ball {
            center: self.center.clone(),
            radius: self.radius * factor,
        }
    }

    pub fn contains(&self, p: &[f64]) -> bool {
        within(dist(&self.center, p), self.radius)
    }
}

#[inline]
pub(crate) fn within(d: f64, radius: f64) -> bool {
    d <= radius * (1.0 + REL_TOL)
}

/// Euclidean distance without the dimension check.
#[inline]
pub(crate) fn dist(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = 0.0;
    for (x, y) in a.iter().zip(b) {
        let t = x - y;
        acc += t * t;
    }
    acc.sqrt()
}

pub fn distance(p: &[f64], q: &[f64]) -> Result<f64> {
    if p.len() != q.len() {
        return Err(Error::DimensionMismatch {
            expected: p.len(),
            got: q.len(),
        });
    }
    Ok(dist(p, q))
}

/// Minimum distance over all cross pairs.
pub fn set_distance(x: &PointSet, y: &PointSet) -> Result<f64> {
    if x.is_empty() || y.is_empty() {
        return Err(Error::EmptySet);
    }
    if x.dim() != y.dim() {
        return Err(Error::DimensionMismatch {
            expected: x.dim(),
            got: y.dim(),
        });
    }
    let mut best = f64::INFINITY;
    for p in x.iter() {
        for q in y.iter() {
            best = best.min(dist(p, q));
        }
    }
    Ok(best)
}

pub fn diameter(points: &PointSet) -> Result<f64> {
    if points.is_empty() {
        return Err(Error::EmptySet);
    }
    let all: Vec<usize> = (0..points.len()).collect();
    Ok(subset_diameter(points, &all))
}

pub fn closest_pair(points: &PointSet) -> Result<f64> {
    let n = points.len();
    if n < 2 {
        return Err(Error::TooFewPoints { needed: 2, got: n });
    }
    let mut best = f64::INFINITY;
    for i in 0..n {
        let p = points.point(i);
        for j in i + 1..n {
            best = best.min(dist(p, points.point(j)));
        }
    }
    Ok(best)
}

/// Diameter over closest pair. Duplicates make the spread infinite, which is
/// reported as an error.
pub fn spread(points: &PointSet) -> Result<f64> {
    let cp = closest_pair(points)?;
    if cp == 0.0 {
        return Err(Error::InfiniteSpread);
    }
    Ok(diameter(points)? / cp)
}

/// Diameter of the points at `indices` (0 for fewer than two points).
pub fn subset_diameter(points: &PointSet, indices: &[usize]) -> f64 {
    let mut best = 0.0f64;
    for (a, &i) in indices.iter().enumerate() {
        let p = points.point(i);
        for &j in &indices[a + 1..] {
            best = best.max(dist(p, points.point(j)));
        }
    }
    best
}

/// Minimum distance between the points at `a` and the points at `b`.
pub fn subset_distance(points: &PointSet, a: &[usize], b: &[usize]) -> f64 {
    let mut best = f64::INFINITY;
    for &i in a {
        let p = points.point(i);
        for &j in b {
            best = best.min(dist(p, points.point(j)));
        }
    }
    best
}

/// How the α-ball search enumerates candidate neighbours. Both methods
/// return the identical ball.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SearchMethod {
    /// Exhaustive distances from every candidate center.
    BruteForce,
    /// Bounded k-nearest-neighbour queries in a kd-tree.
    KdTree,
    /// Brute force on small inputs, kd-tree otherwise.
    #[default]
    Auto,
}

/// Result of an α-ball search restricted to a subset of a point set: the
/// index of the center (an input point) and the radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlphaBall {
    pub center: usize,
    pub radius: f64,
}

impl AlphaBall {
    pub fn to_ball(self, points: &PointSet) -> Ball {
        Ball {
            center: Point(points.point(self.center).to_vec()),
            radius: self.radius,
        }
    }
}

/// 2-approximate smallest ball covering `alpha` points of `points`.
///
/// Centers are restricted to input points: every point proposes the distance
/// to its α-th nearest point (itself included) and the smallest proposal
/// wins, ties going to the smaller index. Recentering an optimal ball at one
/// of its covered points at most doubles its radius, so
/// `r_opt <= radius <= 2 r_opt`.
pub fn approx_min_ball_alpha(points: &PointSet, alpha: usize) -> Result<Ball> {
    approx_min_ball_alpha_with(points, alpha, SearchMethod::Auto)
}

pub fn approx_min_ball_alpha_with(
    points: &PointSet,
    alpha: usize,
    method: SearchMethod,
) -> Result<Ball> {
    let all: Vec<usize> = (0..points.len()).collect();
    Ok(alpha_ball_in(points, &all, alpha, method)?.to_ball(points))
}

/// The α-ball search over the points at `subset` (which must be sorted
/// ascending so that ties resolve to the smallest original index).
pub fn alpha_ball_in(
    points: &PointSet,
    subset: &[usize],
    alpha: usize,
    method: SearchMethod,
) -> Result<AlphaBall> {
    let n = subset.len();
    if alpha == 0 || alpha > n {
        return Err(Error::AlphaOutOfRange { alpha, n });
    }
    debug_assert!(subset.windows(2).all(|w| w[0] < w[1]));
    if alpha == 1 {
        return Ok(AlphaBall {
            center: subset[0],
            radius: 0.0,
        });
    }
    let use_tree = match method {
        SearchMethod::BruteForce => false,
        SearchMethod::KdTree => true,
        SearchMethod::Auto => n > BRUTE_FORCE_LIMIT,
    };
    let best = if use_tree {
        alpha_ball_kdtree(points, subset, alpha)
    } else {
        alpha_ball_brute_force(points, subset, alpha)
    };
    Ok(best)
}

fn alpha_ball_brute_force(points: &PointSet, subset: &[usize], alpha: usize) -> AlphaBall {
    let mut best = AlphaBall {
        center: subset[0],
        radius: f64::INFINITY,
    };
    let mut scratch = Vec::with_capacity(subset.len());
    for &i in subset {
        let p = points.point(i);
        scratch.clear();
        scratch.extend(subset.iter().map(|&j| dist(p, points.point(j))));
        let (_, kth, _) = scratch.select_nth_unstable_by(alpha - 1, f64::total_cmp);
        if *kth < best.radius {
            best = AlphaBall {
                center: i,
                radius: *kth,
            };
        }
    }
    best
}

fn alpha_ball_kdtree(points: &PointSet, subset: &[usize], alpha: usize) -> AlphaBall {
    let tree = KdTree::build(points, subset);
    let mut best = AlphaBall {
        center: subset[0],
        radius: f64::INFINITY,
    };
    for &i in subset {
        // Candidates tying with the current best cannot win: they come later.
        if let Some(r) = tree.kth_distance_within(points.point(i), alpha, best.radius) {
            if r < best.radius {
                best = AlphaBall { center: i, radius: r };
            }
        }
    }
    best
}

/// The `count` points of `subset` nearest to point `center`, ties broken by
/// index, returned in ascending index order.
pub fn nearest_members(
    points: &PointSet,
    subset: &[usize],
    center: usize,
    count: usize,
) -> Vec<usize> {
    let c = points.point(center);
    let mut keyed: Vec<(f64, usize)> = subset
        .iter()
        .map(|&j| (dist(c, points.point(j)), j))
        .collect();
    let count = count.min(keyed.len());
    if count == 0 {
        return Vec::new();
    }
    let cmp = |a: &(f64, usize), b: &(f64, usize)| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1));
    keyed.select_nth_unstable_by(count - 1, cmp);
    let mut members: Vec<usize> = keyed[..count].iter().map(|&(_, j)| j).collect();
    members.sort_unstable();
    members
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line(values: &[f64]) -> PointSet {
        PointSet::from_values(values).unwrap()
    }

    #[test]
    fn distance_examples() {
        assert_eq!(distance(&[0.0, 0.0], &[3.0, 4.0]).unwrap(), 5.0);
        assert_eq!(distance(&[1.5, -2.0], &[1.5, -2.0]).unwrap(), 0.0);
        assert!(matches!(
            distance(&[0.0], &[0.0, 1.0]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn point_validation() {
        assert_eq!(Point::new(vec![]), Err(Error::ZeroDimension));
        assert_eq!(Point::new(vec![f64::NAN]), Err(Error::NonFinite));
        assert!(PointSet::from_rows(&[vec![0.0, 1.0], vec![f64::INFINITY, 0.0]]).is_err());
        let mut set = PointSet::empty(2).unwrap();
        assert!(set.push(&[1.0]).is_err());
    }

    #[test]
    fn set_distance_examples() {
        let x = line(&[0.0, 1.0]);
        let y = line(&[5.0, 7.0]);
        assert_eq!(set_distance(&x, &y).unwrap(), 4.0);
        assert_eq!(set_distance(&x, &x).unwrap(), 0.0);
        let empty = PointSet::empty(1).unwrap();
        assert_eq!(set_distance(&x, &empty), Err(Error::EmptySet));
    }

    #[test]
    fn diameter_and_closest_pair() {
        let p = PointSet::from_rows(&[[0.0, 0.0], [3.0, 4.0]]).unwrap();
        assert_eq!(diameter(&p).unwrap(), 5.0);
        assert_eq!(diameter(&line(&[2.0])).unwrap(), 0.0);
        assert_eq!(diameter(&PointSet::empty(1).unwrap()), Err(Error::EmptySet));

        assert_eq!(closest_pair(&line(&[0.0, 1.0, 4.0])).unwrap(), 1.0);
        assert_eq!(closest_pair(&line(&[0.0, 3.0, 3.0])).unwrap(), 0.0);
        assert!(matches!(
            closest_pair(&line(&[1.0])),
            Err(Error::TooFewPoints { .. })
        ));
    }

    #[test]
    fn spread_examples() {
        assert_eq!(spread(&line(&[0.0, 1.0, 4.0])).unwrap(), 4.0);
        assert_eq!(spread(&line(&[3.0, 7.0, 15.0, 31.0, 63.0])).unwrap(), 15.0);
        assert_eq!(spread(&line(&[1.0, 1.0, 2.0])), Err(Error::InfiniteSpread));
    }

    #[test]
    fn alpha_ball_examples() {
        let p = line(&[0.0, 1.0, 2.0, 10.0]);
        let b = approx_min_ball_alpha(&p, 3).unwrap();
        assert!((1.0..=2.0).contains(&b.radius));
        let covered: Vec<f64> = p.iter().filter(|q| b.contains(q)).map(|q| q[0]).collect();
        assert_eq!(covered, vec![0.0, 1.0, 2.0]);

        let single = approx_min_ball_alpha(&p, 1).unwrap();
        assert_eq!(single.radius, 0.0);
        assert_eq!(single.center.coords(), &[0.0]);

        let two = PointSet::from_rows(&[[0.0, 0.0], [2.0, 0.0]]).unwrap();
        let b = approx_min_ball_alpha(&two, 2).unwrap();
        assert!((1.0..=2.0).contains(&b.radius));

        assert_eq!(
            approx_min_ball_alpha(&p, 0),
            Err(Error::AlphaOutOfRange { alpha: 0, n: 4 })
        );
        assert_eq!(
            approx_min_ball_alpha(&p, 5),
            Err(Error::AlphaOutOfRange { alpha: 5, n: 4 })
        );
    }

    #[test]
    fn alpha_ball_ties_go_to_smallest_index() {
        // Every point of an evenly spaced line proposes radius 1 for α = 2.
        let p = line(&[0.0, 1.0, 2.0, 3.0]);
        for method in [SearchMethod::BruteForce, SearchMethod::KdTree] {
            let b = alpha_ball_in(&p, &[0, 1, 2, 3], 2, method).unwrap();
            assert_eq!(b, AlphaBall { center: 0, radius: 1.0 });
        }
    }

    #[test]
    fn nearest_members_breaks_ties_by_index() {
        let p = line(&[5.0, 4.0, 6.0, 9.0]);
        assert_eq!(nearest_members(&p, &[0, 1, 2, 3], 0, 2), vec![0, 1]);
        assert_eq!(nearest_members(&p, &[0, 1, 2, 3], 0, 3), vec![0, 1, 2]);
    }

    #[test]
    fn scaled_ball_keeps_center() {
        let b = Ball::new(Point::new(vec![1.0, 2.0]).unwrap(), 1.5).unwrap();
        let s = b.scaled(4.0);
        assert_eq!(s.center, b.center);
        assert_eq!(s.radius, 6.0);
        assert!(Ball::new(Point::new(vec![0.0]).unwrap(), -1.0).is_err());
    }
}
