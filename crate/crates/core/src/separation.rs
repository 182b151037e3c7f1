//! The three separation notions, clustering quality, and the verifier every
//! extraction result is passed through.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{subset_diameter, subset_distance, Ball, PointSet, REL_TOL};

/// Which diameter a pair of clusters is measured against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SeparationKind {
    /// Largest diameter over all clusters.
    Strong,
    /// Larger diameter of the pair.
    Well,
    /// Smaller diameter of the pair.
    Semi,
}

impl SeparationKind {
    pub const ALL: [SeparationKind; 3] = [Self::Strong, Self::Well, Self::Semi];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Strong => "strong",
            Self::Well => "well",
            Self::Semi => "semi",
        }
    }
}

impl fmt::Display for SeparationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SeparationKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "strong" => Ok(Self::Strong),
            "well" => Ok(Self::Well),
            "semi" => Ok(Self::Semi),
            other => Err(Error::InvalidParameter(format!("unknown separation kind `{other}`"))),
        }
    }
}

/// k disjoint, nonempty clusters given as index sets into a [`PointSet`],
/// with the separation they claim.
#[derive(Debug, Clone, PartialEq)]
pub struct Clustering {
    pub clusters: Vec<Vec<usize>>,
    pub sigma: f64,
    pub kind: SeparationKind,
    /// Quorum/extraction size the clusters were built with (0 if unknown).
    pub alpha: usize,
    /// Balls the clusters were cut from, when the algorithm produced them.
    pub balls: Vec<Ball>,
}

impl Clustering {
    /// Validates the clustering against a point set of `n` points.
    pub fn new(
        clusters: Vec<Vec<usize>>,
        sigma: f64,
        kind: SeparationKind,
        n: usize,
    ) -> Result<Self> {
        let c = Self {
            clusters,
            sigma,
            kind,
            alpha: 0,
            balls: Vec::new(),
        };
        c.validate(n)?;
        Ok(c)
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        if self.clusters.is_empty() {
            return Err(Error::InvalidClustering("k must be at least 1".into()));
        }
        if !(self.sigma.is_finite() && self.sigma > 0.0) {
            return Err(Error::InvalidClustering(format!(
                "sigma must be positive, got {}",
                self.sigma
            )));
        }
        let mut owner = vec![usize::MAX; n];
        for (c, cluster) in self.clusters.iter().enumerate() {
            if cluster.is_empty() {
                return Err(Error::InvalidClustering(format!("cluster {c} is empty")));
            }
            for &i in cluster {
                if i >= n {
                    return Err(Error::InvalidClustering(format!(
                        "index {i} out of range for {n} points"
                    )));
                }
                if owner[i] != usize::MAX {
                    return Err(Error::InvalidClustering(format!(
                        "index {i} appears in clusters {} and {c}",
                        owner[i]
                    )));
                }
                owner[i] = c;
            }
        }
        Ok(())
    }

    pub fn k(&self) -> usize {
        self.clusters.len()
    }

    /// Size of the smallest cluster.
    pub fn quality(&self) -> usize {
        quality(&self.clusters)
    }

    pub fn is_useless(&self) -> bool {
        self.quality() == 1
    }
}

pub fn quality(clusters: &[Vec<usize>]) -> usize {
    clusters.iter().map(Vec::len).min().unwrap_or(0)
}

pub fn is_useless(clusters: &[Vec<usize>]) -> bool {
    quality(clusters) == 1
}

/// The separation inequality for one pair of clusters.
#[derive(Debug, Clone, PartialEq)]
pub struct PairMargin {
    pub i: usize,
    pub j: usize,
    pub distance: f64,
    /// The diameter the pair is measured against under the chosen kind.
    pub diameter_term: f64,
    pub holds: bool,
}

impl PairMargin {
    /// `distance / diameter_term`; infinite when the diameter term is zero.
    pub fn ratio(&self) -> f64 {
        if self.diameter_term == 0.0 {
            f64::INFINITY
        } else {
            self.distance / self.diameter_term
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SeparationReport {
    pub kind: SeparationKind,
    pub sigma: f64,
    pub diameters: Vec<f64>,
    pub pairs: Vec<PairMargin>,
}

impl SeparationReport {
    pub fn passed(&self) -> bool {
        self.pairs.iter().all(|p| p.holds)
    }
}

/// Per-pair margins of `clusters` under `kind` at separation `sigma`. A pair
/// passes when its distance is at least `sigma * D * (1 - 1e-9)`.
pub fn separation_report(
    points: &PointSet,
    clusters: &[Vec<usize>],
    sigma: f64,
    kind: SeparationKind,
) -> SeparationReport {
    let diameters: Vec<f64> = clusters.iter().map(|c| subset_diameter(points, c)).collect();
    let global = diameters.iter().copied().fold(0.0, f64::max);
    let mut pairs = Vec::new();
    for i in 0..clusters.len() {
        for j in i + 1..clusters.len() {
            let distance = subset_distance(points, &clusters[i], &clusters[j]);
            let diameter_term = match kind {
                SeparationKind::Strong => global,
                SeparationKind::Well => diameters[i].max(diameters[j]),
                SeparationKind::Semi => diameters[i].min(diameters[j]),
            };
            let holds = distance >= sigma * diameter_term * (1.0 - REL_TOL);
            pairs.push(PairMargin {
                i,
                j,
                distance,
                diameter_term,
                holds,
            });
        }
    }
    SeparationReport {
        kind,
        sigma,
        diameters,
        pairs,
    }
}

/// Whether `clustering` satisfies its own declared kind and σ.
pub fn check_separation(points: &PointSet, clustering: &Clustering) -> bool {
    is_separated(points, &clustering.clusters, clustering.sigma, clustering.kind)
}

pub fn is_separated(
    points: &PointSet,
    clusters: &[Vec<usize>],
    sigma: f64,
    kind: SeparationKind,
) -> bool {
    separation_report(points, clusters, sigma, kind).passed()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line(values: &[f64]) -> PointSet {
        PointSet::from_values(values).unwrap()
    }

    #[test]
    fn strong_examples() {
        let p = line(&[0.0, 1.0, 10.0, 11.0]);
        let clusters = vec![vec![0, 1], vec![2, 3]];
        assert!(is_separated(&p, &clusters, 3.0, SeparationKind::Strong));
        assert!(!is_separated(&p, &clusters, 10.0, SeparationKind::Strong));
    }

    #[test]
    fn semi_versus_well() {
        let p = line(&[0.0, 100.0, 50.0, 51.0]);
        let clusters = vec![vec![0, 1], vec![2, 3]];
        assert!(is_separated(&p, &clusters, 5.0, SeparationKind::Semi));
        assert!(!is_separated(&p, &clusters, 5.0, SeparationKind::Well));
    }

    #[test]
    fn boundary_case_passes_with_tolerance() {
        // Distance 2 against diameter 1 at sigma 2 sits exactly on the boundary.
        let p = line(&[0.0, 1.0, 3.0]);
        assert!(is_separated(&p, &[vec![0, 1], vec![2]], 2.0, SeparationKind::Strong));
    }

    #[test]
    fn quality_and_useless() {
        let sizes = |s: &[usize]| -> Vec<Vec<usize>> {
            let mut next = 0;
            s.iter()
                .map(|&len| {
                    let c = (next..next + len).collect();
                    next += len;
                    c
                })
                .collect()
        };
        assert_eq!(quality(&sizes(&[3, 5, 2])), 2);
        assert_eq!(quality(&sizes(&[7])), 7);
        assert!(is_useless(&sizes(&[1, 9])));
        assert!(!is_useless(&sizes(&[2, 2])));
    }

    #[test]
    fn validation_rejects_bad_clusterings() {
        let kind = SeparationKind::Semi;
        assert!(Clustering::new(vec![], 1.0, kind, 4).is_err());
        assert!(Clustering::new(vec![vec![0], vec![]], 1.0, kind, 4).is_err());
        assert!(Clustering::new(vec![vec![0, 1], vec![1]], 1.0, kind, 4).is_err());
        assert!(Clustering::new(vec![vec![4]], 1.0, kind, 4).is_err());
        assert!(Clustering::new(vec![vec![0]], 0.0, kind, 4).is_err());
        assert!(Clustering::new(vec![vec![0], vec![3]], 1.0, kind, 4).is_ok());
    }

    #[test]
    fn singleton_pairs_are_always_semi_separated() {
        let p = line(&[0.0, 0.5, 0.6]);
        assert!(is_separated(&p, &[vec![0], vec![1, 2]], 1e6, SeparationKind::Semi));
    }

    #[test]
    fn single_cluster_is_vacuously_separated() {
        let p = line(&[0.0, 5.0]);
        for kind in SeparationKind::ALL {
            assert!(is_separated(&p, &[vec![0, 1]], 100.0, kind));
        }
    }

    #[test]
    fn kind_parses() {
        assert_eq!("Strong".parse::<SeparationKind>().unwrap(), SeparationKind::Strong);
        assert!("loose".parse::<SeparationKind>().is_err());
    }
}
