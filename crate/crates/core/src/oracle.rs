//! Exponential-time exact baselines for small instances.

use crate::algorithms::ColoredInstance;
use crate::error::{Error, Result};
use crate::geometry::{dist, subset_diameter, within, PointSet, REL_TOL};
use crate::separation::SeparationKind;

/// Size limits for the exhaustive searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleBudget {
    pub max_n_assignment: usize,
    pub max_n_ball: usize,
}

impl Default for OracleBudget {
    fn default() -> Self {
        Self {
            max_n_assignment: 12,
            max_n_ball: 40,
        }
    }
}

/// Exact radius of the smallest ball covering `alpha` points of `points`
/// (center anywhere in space), for `d <= 3`.
///
/// In one dimension this is a sliding window over the sorted values.
/// Otherwise every optimal ball is the circumscribed ball of at most `d+1`
/// points, so all such balls are tried.
pub fn exact_min_ball_alpha(points: &PointSet, alpha: usize, budget: &OracleBudget) -> Result<f64> {
    let n = points.len();
    if n > budget.max_n_ball {
        return Err(Error::BudgetExceeded { n, limit: budget.max_n_ball });
    }
    if alpha == 0 || alpha > n {
        return Err(Error::AlphaOutOfRange { alpha, n });
    }
    let dim = points.dim();
    if dim > 3 {
        return Err(Error::InvalidParameter(format!(
            "exact alpha-ball supports d <= 3, got d = {dim}"
        )));
    }
    if alpha == 1 {
        return Ok(0.0);
    }
    if dim == 1 {
        let mut xs: Vec<f64> = points.as_flat().to_vec();
        xs.sort_by(f64::total_cmp);
        let best = xs
            .windows(alpha)
            .map(|w| (w[alpha - 1] - w[0]) / 2.0)
            .fold(f64::INFINITY, f64::min);
        return Ok(best);
    }

    let mut best = f64::INFINITY;
    let mut chosen = Vec::with_capacity(dim + 1);
    for_each_subset(n, dim + 1, &mut chosen, &mut |subset| {
        let Some((center, radius)) = circumball(points, subset) else {
            return;
        };
        if radius >= best {
            return;
        }
        let covered = points
            .iter()
            .filter(|p| within(dist(&center, p), radius))
            .count();
        if covered >= alpha {
            best = radius;
        }
    });
    Ok(best)
}

/// Calls `f` on every nonempty subset of `0..n` with at most `max` elements.
fn for_each_subset(n: usize, max: usize, chosen: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
    let start = chosen.last().map_or(0, |&l| l + 1);
    for i in start..n {
        chosen.push(i);
        f(chosen);
        if chosen.len() < max {
            for_each_subset(n, max, chosen, f);
        }
        chosen.pop();
    }
}

/// Center and radius of the ball with all of `subset` on its boundary and
/// its center in their affine hull; `None` if the points are affinely
/// dependent.
fn circumball(points: &PointSet, subset: &[usize]) -> Option<(Vec<f64>, f64)> {
    let q0 = points.point(subset[0]);
    let m = subset.len() - 1;
    let diffs: Vec<Vec<f64>> = subset[1..]
        .iter()
        .map(|&i| points.point(i).iter().zip(q0).map(|(a, b)| a - b).collect())
        .collect();
    let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();
    // Gram system G λ = b/2 with G_ij = v_i·v_j, b_i = |v_i|².
    let mut a: Vec<Vec<f64>> = (0..m)
        .map(|i| {
            let mut row: Vec<f64> = (0..m).map(|j| dot(&diffs[i], &diffs[j])).collect();
            row.push(dot(&diffs[i], &diffs[i]) / 2.0);
            row
        })
        .collect();
    let scale = (0..m).map(|i| a[i][i]).fold(0.0, f64::max);
    for col in 0..m {
        let pivot = (col..m).max_by(|&x, &y| a[x][col].abs().total_cmp(&a[y][col].abs()))?;
        if a[pivot][col].abs() <= 1e-12 * scale {
            return None;
        }
        a.swap(col, pivot);
        for row in 0..m {
            if row != col {
                let factor = a[row][col] / a[col][col];
                for c in col..=m {
                    a[row][c] -= factor * a[col][c];
                }
            }
        }
    }
    let mut center = q0.to_vec();
    for (i, v) in diffs.iter().enumerate() {
        let lambda = a[i][m] / a[i][i];
        for (c, x) in center.iter_mut().zip(v) {
            *c += lambda * x;
        }
    }
    let radius = subset
        .iter()
        .map(|&i| dist(&center, points.point(i)))
        .fold(0.0, f64::max);
    Some((center, radius))
}

/// Two disjoint clusters and the smaller of their sizes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairWitness {
    pub quality: usize,
    pub first: Vec<usize>,
    pub second: Vec<usize>,
}

/// The pair of disjoint clusters separated under `kind` at `sigma` whose
/// smaller cluster is largest.
///
/// Separation survives removing points from either cluster, so an optimum of
/// quality q contains a separated pair of exactly q points each. The search
/// raises q until no such pair exists; within each size it enumerates the
/// first cluster, then grows the second by backtracking, abandoning a branch
/// as soon as the partial pair fails. The first cluster holds the smaller
/// lowest index, and the witness is the lexicographically smallest pair of
/// the optimal size.
pub fn best_separated_pair(
    points: &PointSet,
    sigma: f64,
    kind: SeparationKind,
    budget: &OracleBudget,
) -> Result<PairWitness> {
    let n = points.len();
    if n > budget.max_n_assignment {
        return Err(Error::BudgetExceeded { n, limit: budget.max_n_assignment });
    }
    if n < 2 {
        return Err(Error::TooFewPoints { needed: 2, got: n });
    }
    if !(sigma.is_finite() && sigma > 0.0) {
        return Err(Error::InvalidParameter(format!("sigma must be positive, got {sigma}")));
    }
    let search = PairSearch {
        points,
        sigma,
        kind,
    };
    let mut best = None;
    for q in 1..=n / 2 {
        match search.find(q) {
            Some(w) => best = Some(w),
            None => break,
        }
    }
    Ok(best.expect("two singletons are always separated"))
}

struct PairSearch<'a> {
    points: &'a PointSet,
    sigma: f64,
    kind: SeparationKind,
}

impl PairSearch<'_> {
    fn holds(&self, first: &[usize], second: &[usize], d1: f64) -> bool {
        let d2 = subset_diameter(self.points, second);
        let mut distance = f64::INFINITY;
        for &i in first {
            for &j in second {
                distance = distance.min(dist(self.points.point(i), self.points.point(j)));
            }
        }
        let term = match self.kind {
            SeparationKind::Strong | SeparationKind::Well => d1.max(d2),
            SeparationKind::Semi => d1.min(d2),
        };
        distance >= self.sigma * term * (1.0 - REL_TOL)
    }

    fn find(&self, q: usize) -> Option<PairWitness> {
        let n = self.points.len();
        let mut first = Vec::with_capacity(q);
        let mut found = None;
        self.grow_first(q, n, &mut first, &mut found);
        found
    }

    fn grow_first(&self, q: usize, n: usize, first: &mut Vec<usize>, found: &mut Option<PairWitness>) {
        if found.is_some() {
            return;
        }
        if first.len() == q {
            let d1 = subset_diameter(self.points, first);
            let mut second = Vec::with_capacity(q);
            if self.grow_second(q, n, first, d1, &mut second) {
                *found = Some(PairWitness {
                    quality: q,
                    first: first.clone(),
                    second,
                });
            }
            return;
        }
        let start = first.last().map_or(0, |&l| l + 1);
        for i in start..n {
            first.push(i);
            self.grow_first(q, n, first, found);
            first.pop();
            if found.is_some() {
                return;
            }
        }
    }

    fn grow_second(&self, q: usize, n: usize, first: &[usize], d1: f64, second: &mut Vec<usize>) -> bool {
        if second.len() == q {
            return true;
        }
        // The second cluster's lowest index must exceed the first's.
        let start = second.last().map_or(first[0] + 1, |&l| l + 1);
        for i in start..n {
            if first.contains(&i) {
                continue;
            }
            second.push(i);
            if self.holds(first, second, d1) && self.grow_second(q, n, first, d1, second) {
                return true;
            }
            second.pop();
        }
        false
    }
}

/// Whether the two facts that force every strongly `sigma`-separated
/// colorful triple to have quality 1 hold: consecutive points of the third
/// color are at least `n` apart, the first two colors together span at most
/// `2n`, and `sigma > 2` (so a third-color cluster of two points would need
/// its partners more than `2n` apart).
pub fn check_three_color_hopeless(instance: &ColoredInstance, sigma: f64) -> bool {
    if instance.k() != 3 {
        return false;
    }
    let third = instance.indices_of(2);
    let n = third.len() as f64;
    let points = instance.points();
    let mut min_gap = f64::INFINITY;
    for (a, &i) in third.iter().enumerate() {
        for &j in &third[a + 1..] {
            min_gap = min_gap.min(dist(points.point(i), points.point(j)));
        }
    }
    let mut near = instance.indices_of(0);
    near.extend(instance.indices_of(1));
    min_gap >= n && subset_diameter(points, &near) <= 2.0 * n && sigma > 2.0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_exponential_line, gen_three_color_line};

    fn line(values: &[f64]) -> PointSet {
        PointSet::from_values(values).unwrap()
    }

    #[test]
    fn min_ball_examples() {
        let b = OracleBudget::default();
        assert_eq!(exact_min_ball_alpha(&line(&[0.0, 1.0, 2.0, 10.0]), 3, &b).unwrap(), 1.0);
        assert_eq!(exact_min_ball_alpha(&line(&[0.0, 1.0, 2.0, 10.0]), 1, &b).unwrap(), 0.0);
        let tri = PointSet::from_rows(&[[0.0, 0.0], [2.0, 0.0], [0.0, 2.0]]).unwrap();
        let r = exact_min_ball_alpha(&tri, 3, &b).unwrap();
        assert!((r - 2f64.sqrt()).abs() < 1e-12);
        assert!((exact_min_ball_alpha(&tri, 2, &b).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn min_ball_obtuse_and_3d() {
        let b = OracleBudget::default();
        // Obtuse triangle: the smallest ball is set by the long side.
        let obtuse = PointSet::from_rows(&[[0.0, 0.0], [4.0, 0.0], [2.0, 0.5]]).unwrap();
        assert!((exact_min_ball_alpha(&obtuse, 3, &b).unwrap() - 2.0).abs() < 1e-12);
        let cube: Vec<[f64; 3]> = (0..8)
            .map(|m| [(m & 1) as f64, ((m >> 1) & 1) as f64, ((m >> 2) & 1) as f64])
            .collect();
        let cube = PointSet::from_rows(&cube).unwrap();
        let r = exact_min_ball_alpha(&cube, 8, &b).unwrap();
        assert!((r - 3f64.sqrt() / 2.0).abs() < 1e-12);
        let r4 = exact_min_ball_alpha(&cube, 4, &b).unwrap();
        assert!((r4 - 2f64.sqrt() / 2.0).abs() < 1e-12);
    }

    #[test]
    fn min_ball_budget_and_dimension() {
        let b = OracleBudget { max_n_assignment: 12, max_n_ball: 3 };
        assert!(matches!(
            exact_min_ball_alpha(&line(&[0.0, 1.0, 2.0, 3.0]), 2, &b),
            Err(Error::BudgetExceeded { n: 4, limit: 3 })
        ));
        let p4 = PointSet::from_rows(&[[0.0; 4], [1.0; 4]]).unwrap();
        assert!(exact_min_ball_alpha(&p4, 2, &OracleBudget::default()).is_err());
    }

    #[test]
    fn pair_examples() {
        let b = OracleBudget::default();
        let exp = gen_exponential_line(8).unwrap();
        assert_eq!(best_separated_pair(&exp, 1.0, SeparationKind::Strong, &b).unwrap().quality, 1);

        let pairs = line(&[0.0, 1.0, 100.0, 101.0]);
        let w = best_separated_pair(&pairs, 1.0, SeparationKind::Strong, &b).unwrap();
        assert_eq!(w, PairWitness { quality: 2, first: vec![0, 1], second: vec![2, 3] });

        let tight = line(&[0.0, 1.0, 2.0, 3.0]);
        let w = best_separated_pair(&tight, 100.0, SeparationKind::Strong, &b).unwrap();
        assert_eq!(w, PairWitness { quality: 1, first: vec![0], second: vec![1] });
    }

    #[test]
    fn semi_exploits_small_partner() {
        // A tight pair next to a wide pair: semi compares against the smaller.
        let p = line(&[0.0, 0.1, 5.0, 15.0]);
        let b = OracleBudget::default();
        assert_eq!(best_separated_pair(&p, 3.0, SeparationKind::Semi, &b).unwrap().quality, 2);
        assert_eq!(best_separated_pair(&p, 3.0, SeparationKind::Well, &b).unwrap().quality, 1);
    }

    #[test]
    fn pair_budget() {
        let p = line(&(0..13).map(f64::from).collect::<Vec<_>>());
        assert!(matches!(
            best_separated_pair(&p, 1.0, SeparationKind::Semi, &OracleBudget::default()),
            Err(Error::BudgetExceeded { n: 13, limit: 12 })
        ));
    }

    #[test]
    fn three_color_checks() {
        assert!(check_three_color_hopeless(&gen_three_color_line(3).unwrap(), 3.0));
        assert!(check_three_color_hopeless(&gen_three_color_line(20).unwrap(), 3.0));
        assert!(!check_three_color_hopeless(&gen_three_color_line(20).unwrap(), 2.0));

        let inst = gen_three_color_line(5).unwrap();
        let mut sets = inst.sets();
        let mut third = sets[2].as_flat().to_vec();
        third[1] = third[0] + 2.0;
        sets[2] = PointSet::from_values(&third).unwrap();
        let perturbed = ColoredInstance::from_sets(&sets).unwrap();
        assert!(!check_three_color_hopeless(&perturbed, 3.0));
    }
}
