use crate::error::{Error, Result};
use crate::geometry::{alpha_ball_in, AlphaBall, dist, nearest_members, within, Ball, PointSet, SearchMethod};
use crate::separation::{Clustering, SeparationKind};

use super::{run_with_alpha, verified, ColoredInstance, ExtractionConfig};

type Extracted = (Vec<Vec<usize>>, Vec<Ball>);

/// k semi-separated clusters of size α each.
///
/// Each round cuts the α points nearest to a 2-approximate smallest α-ball
/// out of the survivors, then discards every survivor within `(2σ+2)` times
/// that radius of its center.
pub fn semi_separated_k(points: &PointSet, cfg: &ExtractionConfig) -> Result<Clustering> {
    cfg.validate()?;
    let n = points.len();
    if n < cfg.k {
        return Err(Error::TooFewPoints { needed: cfg.k, got: n });
    }
    let dim = points.dim() as i32;
    let fixed = cfg.fixed_alpha(|c| (c * n as f64 / (cfg.k as f64 * cfg.sigma.powi(dim))).ceil())?;
    let (alpha, (clusters, balls)) = run_with_alpha(fixed, n / cfg.k, |alpha| {
        semi_extract(points, cfg.k, cfg.sigma, alpha)
    })?;
    verified(
        points,
        Clustering {
            clusters,
            sigma: cfg.sigma,
            kind: SeparationKind::Semi,
            alpha,
            balls,
        },
    )
}

fn semi_extract(points: &PointSet, k: usize, sigma: f64, alpha: usize) -> Result<Extracted> {
    let mut survivors: Vec<usize> = (0..points.len()).collect();
    let mut clusters = Vec::with_capacity(k);
    let mut balls = Vec::with_capacity(k);
    let exclusion = 2.0 * sigma + 2.0;
    for iteration in 0..k {
        if survivors.len() < alpha {
            return Err(Error::InsufficientPoints { iteration, alpha });
        }
        let ab = alpha_ball_in(points, &survivors, alpha, SearchMethod::Auto)?;
        clusters.push(nearest_members(points, &survivors, ab.center, alpha));
        let center = points.point(ab.center);
        let reach = exclusion * ab.radius;
        survivors.retain(|&i| !within(dist(center, points.point(i)), reach));
        balls.push(ab.to_ball(points));
    }
    Ok((clusters, balls))
}

/// Semi-separated clusters over k colored sets, cluster `i` drawn from
/// color `i`, each of size α.
///
/// Each round takes, among the colors not yet served, the one whose α-ball
/// is smallest (ties to the lower color), assigns the α nearest points of
/// that color, and discards points of the remaining colors within `(2σ+2)`
/// times the radius.
pub fn semi_separated_k_colored(
    instance: &ColoredInstance,
    cfg: &ExtractionConfig,
) -> Result<Clustering> {
    cfg.validate()?;
    if cfg.k != instance.k() {
        return Err(Error::InvalidParameter(format!(
            "k = {} but the instance has {} colors",
            cfg.k,
            instance.k()
        )));
    }
    let points = instance.points();
    let smallest = (0..instance.k())
        .map(|c| instance.indices_of(c).len())
        .min()
        .unwrap_or(0);
    let dim = points.dim() as i32;
    let fixed = cfg.fixed_alpha(|c| {
        (c * smallest as f64 / (cfg.k as f64 * cfg.sigma.powi(dim))).ceil()
    })?;
    let (alpha, (clusters, balls)) = run_with_alpha(fixed, smallest, |alpha| {
        semi_extract_colored(instance, cfg.sigma, alpha)
    })?;
    verified(
        points,
        Clustering {
            clusters,
            sigma: cfg.sigma,
            kind: SeparationKind::Semi,
            alpha,
            balls,
        },
    )
}

fn semi_extract_colored(instance: &ColoredInstance, sigma: f64, alpha: usize) -> Result<Extracted> {
    let points = instance.points();
    let k = instance.k();
    let mut survivors: Vec<Vec<usize>> = (0..k).map(|c| instance.indices_of(c)).collect();
    let mut served = vec![false; k];
    let mut clusters = vec![Vec::new(); k];
    let mut balls: Vec<Option<Ball>> = vec![None; k];
    let exclusion = 2.0 * sigma + 2.0;
    for iteration in 0..k {
        let mut best: Option<(usize, AlphaBall)> = None;
        for color in (0..k).filter(|&c| !served[c]) {
            if survivors[color].len() < alpha {
                return Err(Error::InsufficientPoints { iteration, alpha });
            }
            let ab = alpha_ball_in(points, &survivors[color], alpha, SearchMethod::Auto)?;
            if best.is_none_or(|(_, b)| ab.radius < b.radius) {
                best = Some((color, ab));
            }
        }
        let (color, ab) = best.expect("an unserved color remains");
        clusters[color] = nearest_members(points, &survivors[color], ab.center, alpha);
        served[color] = true;
        balls[color] = Some(ab.to_ball(points));
        let c = points.point(ab.center);
        let reach = exclusion * ab.radius;
        for other in (0..k).filter(|&o| !served[o]) {
            survivors[other].retain(|&i| !within(dist(c, points.point(i)), reach));
        }
    }
    Ok((clusters, balls.into_iter().map(|b| b.expect("every color served")).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::separation::is_separated;

    fn line(values: &[f64]) -> PointSet {
        PointSet::from_values(values).unwrap()
    }

    #[test]
    fn two_groups_on_a_line() {
        let p = line(&[0.0, 1.0, 2.0, 100.0, 101.0, 102.0]);
        let c = semi_separated_k(&p, &ExtractionConfig::auto(2, 1.0)).unwrap();
        assert_eq!(c.alpha, 3);
        assert_eq!(c.clusters, vec![vec![0, 1, 2], vec![3, 4, 5]]);
        assert!(is_separated(&p, &c.clusters, 1.0, SeparationKind::Semi));
    }

    #[test]
    fn explicit_alpha_too_large_fails() {
        let p = line(&[0.0, 1.0, 2.0, 3.0]);
        let err = semi_separated_k(&p, &ExtractionConfig::explicit(2, 1.0, 2)).unwrap_err();
        assert!(err.is_infeasible(), "{err:?}");
        let ok = semi_separated_k(&p, &ExtractionConfig::explicit(2, 1.0, 1)).unwrap();
        assert_eq!(ok.quality(), 1);
    }

    #[test]
    fn cluster_gap_exceeds_twice_sigma_radius() {
        let values: Vec<f64> = (0..200).map(|i| ((i * 7919) % 1009) as f64 / 7.0).collect();
        let p = line(&values);
        for sigma in [1.0, 2.0, 4.0] {
            let c = semi_separated_k(&p, &ExtractionConfig::auto(3, sigma)).unwrap();
            for i in 0..3 {
                for j in 0..3 {
                    if i != j {
                        let gap = crate::geometry::subset_distance(&p, &c.clusters[i], &c.clusters[j]);
                        assert!(gap >= 2.0 * sigma * c.balls[i].radius * (1.0 - 1e-9));
                    }
                }
            }
        }
    }

    #[test]
    fn constant_sets_alpha() {
        let p = line(&(0..40).map(f64::from).collect::<Vec<_>>());
        let cfg = ExtractionConfig::auto(2, 1.0).with_constant(0.1);
        let c = semi_separated_k(&p, &cfg).unwrap();
        assert_eq!(c.alpha, 2);
    }

    #[test]
    fn colored_clusters_follow_colors() {
        let a = line(&[0.0, 1.0, 2.0]);
        let b = line(&[50.0, 51.0, 52.0]);
        let inst = ColoredInstance::from_sets(&[a, b]).unwrap();
        let c = semi_separated_k_colored(&inst, &ExtractionConfig::auto(2, 1.0)).unwrap();
        assert!(inst.respects_colors(&c.clusters));
        assert_eq!(c.alpha, 3);
    }

    #[test]
    fn colored_rejects_wrong_k() {
        let inst = ColoredInstance::from_sets(&[line(&[0.0]), line(&[1.0])]).unwrap();
        assert!(semi_separated_k_colored(&inst, &ExtractionConfig::auto(3, 1.0)).is_err());
    }
}
