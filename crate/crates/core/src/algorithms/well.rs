use crate::error::{Error, Result};
use crate::geometry::{dist, spread, within, Ball};
use crate::quorum::quorum_clustering;
use crate::separation::{Clustering, SeparationKind};

use super::{log_spread_factor, run_with_alpha, verified, ColoredInstance, ExtractionConfig};

/// Whether two balls are far enough apart that any subsets of them are
/// well separated at `sigma`: center gap minus both radii is at least
/// `2σ` times the larger radius.
pub fn ball_separated(a: &Ball, b: &Ball, sigma: f64) -> bool {
    dist(&a.center, &b.center) - a.radius - b.radius >= 2.0 * sigma * a.radius.max(b.radius)
}

#[derive(Debug, Clone)]
struct Candidate {
    color: usize,
    step: usize,
    ball: Ball,
    alive: bool,
}

/// Well-separated clusters over k colored sets, cluster `i` drawn from
/// color `i`.
///
/// Every color gets its own quorum clustering with quorum α. Repeatedly the
/// smallest remaining full ball (ties by color, then step) is chosen; its
/// cluster is every point of its color inside it. Afterwards all balls of
/// that color, and all balls not ball-separated from it, are discarded.
/// Requires the union of the sets to be free of duplicates.
pub fn well_separated_k_colored(
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
    let phi = if points.len() >= 2 { spread(points)? } else { 1.0 };
    let smallest = (0..instance.k())
        .map(|c| instance.indices_of(c).len())
        .min()
        .unwrap_or(0);
    let dim = points.dim() as i32;
    let fixed = cfg.fixed_alpha(|c| {
        (c * smallest as f64 / (cfg.k as f64 * cfg.sigma.powi(dim) * log_spread_factor(phi)))
            .floor()
    })?;
    let (alpha, (clusters, balls)) = run_with_alpha(fixed, smallest, |alpha| {
        well_extract(instance, cfg.sigma, alpha)
    })?;
    verified(
        points,
        Clustering {
            clusters,
            sigma: cfg.sigma,
            kind: SeparationKind::Well,
            alpha,
            balls,
        },
    )
}

fn well_extract(
    instance: &ColoredInstance,
    sigma: f64,
    alpha: usize,
) -> Result<(Vec<Vec<usize>>, Vec<Ball>)> {
    let points = instance.points();
    let k = instance.k();
    let members: Vec<Vec<usize>> = (0..k).map(|c| instance.indices_of(c)).collect();
    let mut candidates = Vec::new();
    for (color, idx) in members.iter().enumerate() {
        if idx.len() < alpha {
            return Err(Error::ColorExhausted { color });
        }
        let quorum = quorum_clustering(&points.select(idx), alpha)?;
        for (step, s) in quorum.steps.into_iter().enumerate() {
            if s.members.len() == alpha {
                candidates.push(Candidate {
                    color,
                    step,
                    ball: s.ball,
                    alive: true,
                });
            }
        }
    }
    candidates.sort_by(|a, b| {
        a.ball
            .radius
            .total_cmp(&b.ball.radius)
            .then(a.color.cmp(&b.color))
            .then(a.step.cmp(&b.step))
    });

    let mut clusters: Vec<Option<Vec<usize>>> = vec![None; k];
    let mut balls: Vec<Option<Ball>> = vec![None; k];
    for _ in 0..k {
        let Some(pick) = candidates.iter().position(|c| c.alive) else {
            let color = clusters.iter().position(Option::is_none).expect("a color is unserved");
            return Err(Error::ColorExhausted { color });
        };
        let chosen = candidates[pick].clone();
        let covered: Vec<usize> = members[chosen.color]
            .iter()
            .copied()
            .filter(|&i| within(dist(&chosen.ball.center, points.point(i)), chosen.ball.radius))
            .collect();
        clusters[chosen.color] = Some(covered);
        for c in candidates.iter_mut().filter(|c| c.alive) {
            if c.color == chosen.color || !ball_separated(&chosen.ball, &c.ball, sigma) {
                c.alive = false;
            }
        }
        balls[chosen.color] = Some(chosen.ball);
    }
    Ok((
        clusters.into_iter().map(|c| c.expect("every color served")).collect(),
        balls.into_iter().map(|b| b.expect("every color served")).collect(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{Point, PointSet};

    fn line(values: &[f64]) -> PointSet {
        PointSet::from_values(values).unwrap()
    }

    #[test]
    fn ball_separation_rule() {
        let ball = |c: f64, r: f64| Ball::new(Point::new(vec![c]).unwrap(), r).unwrap();
        assert!(ball_separated(&ball(0.0, 1.0), &ball(6.0, 1.0), 2.0));
        assert!(!ball_separated(&ball(0.0, 1.0), &ball(5.9, 1.0), 2.0));
        assert!(!ball_separated(&ball(0.0, 0.5), &ball(10.0, 3.0), 2.0));
    }

    #[test]
    fn separated_colors() {
        let a = line(&[0.0, 1.0, 2.0, 3.0]);
        let b = line(&[100.0, 101.0, 102.0, 103.0]);
        let inst = ColoredInstance::from_sets(&[a, b]).unwrap();
        let c = well_separated_k_colored(&inst, &ExtractionConfig::auto(2, 2.0)).unwrap();
        assert!(inst.respects_colors(&c.clusters));
        assert_eq!(c.quality(), 4);
    }

    #[test]
    fn interleaved_colors_exhaust() {
        let a = line(&[0.0, 2.0, 4.0]);
        let b = line(&[1.0, 3.0, 5.0]);
        let inst = ColoredInstance::from_sets(&[a, b]).unwrap();
        let err = well_separated_k_colored(&inst, &ExtractionConfig::explicit(2, 4.0, 3)).unwrap_err();
        assert!(matches!(err, Error::ColorExhausted { .. }), "{err:?}");
    }

    #[test]
    fn cluster_takes_every_covered_point() {
        let a = line(&[0.0, 1.0, 2.0, 3.0, 50.0]);
        let b = line(&[200.0, 201.0]);
        let inst = ColoredInstance::from_sets(&[a, b]).unwrap();
        let c = well_separated_k_colored(&inst, &ExtractionConfig::explicit(2, 1.0, 2)).unwrap();
        assert_eq!(c.clusters[1], vec![5, 6]);
        assert!(c.clusters[0].len() >= 2);
    }
}
