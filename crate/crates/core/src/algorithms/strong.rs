use crate::error::{Error, Result};
use crate::geometry::{dist, spread, PointSet};
use crate::quorum::{quorum_clustering, EpochPartition, QuorumClustering};
use crate::separation::{Clustering, SeparationKind};

use super::{log_spread_factor, run_with_alpha, verified, ExtractionConfig};

/// A strong extraction together with the quorum clustering it was read from.
#[derive(Debug, Clone, PartialEq)]
pub struct StrongExtraction {
    pub clustering: Clustering,
    pub quorum: QuorumClustering,
    pub epochs: EpochPartition,
    /// Epoch the balls were taken from.
    pub epoch: usize,
    /// Quorum step index of each chosen ball, in cluster order.
    pub steps: Vec<usize>,
}

/// k strongly separated clusters of size α each.
///
/// Builds a quorum clustering with quorum α, takes the epoch holding the
/// most full (size α) balls, and greedily picks balls of that epoch in step
/// order whose center gap, minus both radii, is at least `2σ R` with `R` the
/// epoch's largest full-ball radius. Requires distinct points.
pub fn strong_separated_k(points: &PointSet, cfg: &ExtractionConfig) -> Result<Clustering> {
    strong_separated_k_detailed(points, cfg).map(|e| e.clustering)
}

pub fn strong_separated_k_detailed(
    points: &PointSet,
    cfg: &ExtractionConfig,
) -> Result<StrongExtraction> {
    cfg.validate()?;
    let n = points.len();
    if n < cfg.k {
        return Err(Error::TooFewPoints { needed: cfg.k, got: n });
    }
    let phi = if n >= 2 { spread(points)? } else { 1.0 };
    let dim = points.dim() as i32;
    let fixed = cfg.fixed_alpha(|c| {
        (c * n as f64 / (cfg.k as f64 * cfg.sigma.powi(dim) * log_spread_factor(phi))).floor()
    })?;
    let (_, extraction) = run_with_alpha(fixed, n / cfg.k, |alpha| {
        strong_extract(points, cfg.k, cfg.sigma, alpha)
    })?;
    let StrongExtraction { clustering, .. } = &extraction;
    verified(points, clustering.clone())?;
    Ok(extraction)
}

fn strong_extract(points: &PointSet, k: usize, sigma: f64, alpha: usize) -> Result<StrongExtraction> {
    let quorum = quorum_clustering(points, alpha)?;
    let epochs = quorum.epochs();
    let full = |s: usize| quorum.steps[s].members.len() == alpha;

    let mut epoch = 0;
    let mut most = 0;
    for (e, range) in epochs.ranges.iter().enumerate() {
        let count = range.clone().filter(|&s| full(s)).count();
        if count > most {
            epoch = e;
            most = count;
        }
    }
    let candidates: Vec<usize> = epochs.ranges[epoch].clone().filter(|&s| full(s)).collect();
    let largest = candidates
        .iter()
        .map(|&s| quorum.steps[s].ball.radius)
        .fold(0.0, f64::max);
    let gap = 2.0 * sigma * largest;

    let mut chosen: Vec<usize> = Vec::with_capacity(k);
    for &s in &candidates {
        if chosen.len() == k {
            break;
        }
        let b = &quorum.steps[s].ball;
        let compatible = chosen.iter().all(|&t| {
            let o = &quorum.steps[t].ball;
            dist(&b.center, &o.center) - b.radius - o.radius >= gap
        });
        if compatible {
            chosen.push(s);
        }
    }
    if chosen.len() < k {
        return Err(Error::InstanceTooSeparationHostile { k, alpha });
    }

    let clustering = Clustering {
        clusters: chosen.iter().map(|&s| quorum.steps[s].members.clone()).collect(),
        sigma,
        kind: SeparationKind::Strong,
        alpha,
        balls: chosen.iter().map(|&s| quorum.steps[s].ball.clone()).collect(),
    };
    Ok(StrongExtraction {
        clustering,
        quorum,
        epochs,
        epoch,
        steps: chosen,
    })
}
