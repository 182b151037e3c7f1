//! Quorum clustering: repeatedly cut a near-smallest ball holding γ points
//! out of the remaining set. The radius sequence splits into epochs, runs in
//! which no radius exceeds four times the run's first radius, and balls of a
//! single epoch cover any point only a dimension-bounded number of times.

use std::ops::Range;

use crate::error::{Error, Result};
use crate::geometry::{alpha_ball_in, nearest_members, within, dist, Ball, PointSet, SearchMethod};

#[derive(Debug, Clone, PartialEq)]
pub struct QuorumStep {
    pub ball: Ball,
    /// Indices into the input set, ascending.
    pub members: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuorumClustering {
    pub gamma: usize,
    pub steps: Vec<QuorumStep>,
}

impl QuorumClustering {
    pub fn radii(&self) -> Vec<f64> {
        self.steps.iter().map(|s| s.ball.radius).collect()
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn epochs(&self) -> EpochPartition {
        epochs(&self.radii())
    }

    pub fn balls(&self) -> impl Iterator<Item = &Ball> {
        self.steps.iter().map(|s| &s.ball)
    }
}

/// Quorum clustering of `points` with quorum size `gamma`.
///
/// Each step takes the 2-approximate smallest ball over the survivors
/// covering `min(gamma, survivors)` of them, and removes the covered points
/// nearest its center (ties by index).
pub fn quorum_clustering(points: &PointSet, gamma: usize) -> Result<QuorumClustering> {
    quorum_clustering_with(points, gamma, SearchMethod::Auto)
}

pub fn quorum_clustering_with(
    points: &PointSet,
    gamma: usize,
    method: SearchMethod,
) -> Result<QuorumClustering> {
    let n = points.len();
    if gamma == 0 || gamma > n {
        return Err(Error::AlphaOutOfRange { alpha: gamma, n });
    }
    let mut survivors: Vec<usize> = (0..n).collect();
    let mut removed = vec![false; n];
    let mut steps = Vec::with_capacity(n.div_ceil(gamma));
    while !survivors.is_empty() {
        let take = gamma.min(survivors.len());
        let ab = alpha_ball_in(points, &survivors, take, method)?;
        let members = if take == 1 {
            vec![ab.center]
        } else {
            nearest_members(points, &survivors, ab.center, take)
        };
        for &m in &members {
            removed[m] = true;
        }
        survivors.retain(|&i| !removed[i]);
        steps.push(QuorumStep {
            ball: ab.to_ball(points),
            members,
        });
    }
    Ok(QuorumClustering { gamma, steps })
}

/// Consecutive index ranges (zero-based, half-open) partitioning a radius
/// sequence into epochs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EpochPartition {
    pub ranges: Vec<Range<usize>>,
}

impl EpochPartition {
    pub fn len(&self) -> usize {
        self.ranges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranges.is_empty()
    }

    /// Index of the epoch holding position `i`.
    pub fn epoch_of(&self, i: usize) -> Option<usize> {
        self.ranges.iter().position(|r| r.contains(&i))
    }
}

/// Greedy left-to-right split: each epoch is the longest run starting at its
/// first radius `r` whose maximum stays at most `4 r`. A run of zero radii is
/// one epoch.
pub fn epochs(radii: &[f64]) -> EpochPartition {
    let mut ranges = Vec::new();
    let mut start = 0;
    while start < radii.len() {
        let cap = 4.0 * radii[start];
        let mut end = start + 1;
        while end < radii.len() && radii[end] <= cap {
            end += 1;
        }
        ranges.push(start..end);
        start = end;
    }
    EpochPartition { ranges }
}

/// Number of `balls` containing `q`.
pub fn cover_depth<'a>(balls: impl IntoIterator<Item = &'a Ball>, q: &[f64]) -> Result<usize> {
    let mut depth = 0;
    for b in balls {
        if b.center.dim() != q.len() {
            return Err(Error::DimensionMismatch {
                expected: b.center.dim(),
                got: q.len(),
            });
        }
        if within(dist(&b.center, q), b.radius) {
            depth += 1;
        }
    }
    Ok(depth)
}

/// Largest number of same-epoch balls covering any input point.
pub fn max_epoch_depth(points: &PointSet, qc: &QuorumClustering) -> usize {
    let partition = qc.epochs();
    let mut worst = 0;
    for range in &partition.ranges {
        let balls = &qc.steps[range.clone()];
        for q in points.iter() {
            let depth = balls
                .iter()
                .filter(|s| within(dist(&s.ball.center, q), s.ball.radius))
                .count();
            worst = worst.max(depth);
        }
    }
    worst
}

/// `(2 + ⌈64 √d⌉)^d`: the grid-cell count bounding same-epoch cover depth.
pub fn depth_bound(dim: usize) -> f64 {
    let per_axis = 2.0 + (64.0 * (dim as f64).sqrt()).ceil();
    per_axis.powi(dim as i32)
}
