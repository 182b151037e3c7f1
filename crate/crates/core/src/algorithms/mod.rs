//! Extraction of k large separated clusters.
//!
//! | function | separation | input |
//! |---|---|---|
//! | [`semi_separated_k`] | semi | one point set |
//! | [`semi_separated_k_colored`] | semi | k colored sets |
//! | [`strong_separated_k`] | strong | one point set |
//! | [`well_separated_k_colored`] | well | k colored sets |
//!
//! Every result is re-verified with [`crate::separation::check_separation`]
//! before it is returned.
//!
//! The size α of the extracted clusters is either given explicitly, derived
//! from a constant `c` through the closed-form size formulas, or (the
//! default) searched: doubling from 1 until extraction fails, then bisecting
//! between the last success and the first failure.

mod semi;
mod strong;
mod well;

pub use semi::{semi_separated_k, semi_separated_k_colored};
pub use strong::{strong_separated_k, strong_separated_k_detailed, StrongExtraction};
pub use well::{ball_separated, well_separated_k_colored};

use crate::error::{Error, Result};
use crate::geometry::PointSet;
use crate::separation::{check_separation, Clustering};

/// k point sets P_1..P_k stored as one flattened [`PointSet`] plus a color
/// per point. Clusters over a colored instance index the flattened set.
#[derive(Debug, Clone, PartialEq)]
pub struct ColoredInstance {
    points: PointSet,
    colors: Vec<usize>,
    k: usize,
}

impl ColoredInstance {
    /// Concatenates `sets`; set `i` gets color `i`.
    pub fn from_sets(sets: &[PointSet]) -> Result<Self> {
        let first = sets.first().ok_or_else(|| {
            Error::InvalidParameter("a colored instance needs at least one set".into())
        })?;
        let mut points = PointSet::empty(first.dim())?;
        let mut colors = Vec::new();
        for (c, set) in sets.iter().enumerate() {
            if set.dim() != first.dim() {
                return Err(Error::DimensionMismatch {
                    expected: first.dim(),
                    got: set.dim(),
                });
            }
            for p in set.iter() {
                points.push(p)?;
                colors.push(c);
            }
        }
        Self::from_labeled(points, colors)
    }

    /// Colors must cover `0..k` with every color used at least once.
    pub fn from_labeled(points: PointSet, colors: Vec<usize>) -> Result<Self> {
        if colors.len() != points.len() {
            return Err(Error::InvalidParameter(format!(
                "{} colors for {} points",
                colors.len(),
                points.len()
            )));
        }
        let k = colors.iter().max().map_or(0, |&m| m + 1);
        if k == 0 {
            return Err(Error::EmptySet);
        }
        let mut used = vec![false; k];
        for &c in &colors {
            used[c] = true;
        }
        if let Some(missing) = used.iter().position(|u| !u) {
            return Err(Error::InvalidParameter(format!(
                "colors must form the range 0..{k}; color {missing} is unused"
            )));
        }
        Ok(Self { points, colors, k })
    }

    pub fn points(&self) -> &PointSet {
        &self.points
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Indices (into the flattened set) of the points of color `color`.
    pub fn indices_of(&self, color: usize) -> Vec<usize> {
        self.colors
            .iter()
            .enumerate()
            .filter(|&(_, &c)| c == color)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn set(&self, color: usize) -> PointSet {
        self.points.select(&self.indices_of(color))
    }

    pub fn sets(&self) -> Vec<PointSet> {
        (0..self.k).map(|c| self.set(c)).collect()
    }

    /// Whether cluster `i` only holds points of color `i`.
    pub fn respects_colors(&self, clusters: &[Vec<usize>]) -> bool {
        clusters.len() <= self.k
            && clusters
                .iter()
                .enumerate()
                .all(|(c, cluster)| cluster.iter().all(|&i| self.colors.get(i) == Some(&c)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AlphaMode {
    Explicit(usize),
    /// Largest α for which extraction succeeds.
    Auto,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtractionConfig {
    pub sigma: f64,
    pub k: usize,
    pub alpha_mode: AlphaMode,
    /// When set, α comes from the algorithm's size formula with this
    /// constant and `alpha_mode` is ignored.
    pub c_override: Option<f64>,
}

impl ExtractionConfig {
    pub fn auto(k: usize, sigma: f64) -> Self {
        Self {
            sigma,
            k,
            alpha_mode: AlphaMode::Auto,
            c_override: None,
        }
    }

    pub fn explicit(k: usize, sigma: f64, alpha: usize) -> Self {
        Self {
            alpha_mode: AlphaMode::Explicit(alpha),
            ..Self::auto(k, sigma)
        }
    }

    pub fn with_constant(mut self, c: f64) -> Self {
        self.c_override = Some(c);
        self
    }

    fn validate(&self) -> Result<()> {
        if !(self.sigma.is_finite() && self.sigma > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "sigma must be positive, got {}",
                self.sigma
            )));
        }
        if self.k == 0 {
            return Err(Error::InvalidParameter("k must be at least 1".into()));
        }
        if let AlphaMode::Explicit(0) = self.alpha_mode {
            return Err(Error::InvalidParameter("alpha must be at least 1".into()));
        }
        if let Some(c) = self.c_override {
            if !(c.is_finite() && c > 0.0) {
                return Err(Error::InvalidParameter(format!("c must be positive, got {c}")));
            }
        }
        Ok(())
    }

    /// Fixed α if one is determined up front, `None` for auto mode.
    fn fixed_alpha(&self, formula: impl Fn(f64) -> f64) -> Result<Option<usize>> {
        if let Some(c) = self.c_override {
            let a = formula(c);
            if !(a >= 1.0) {
                return Err(Error::InvalidParameter(format!(
                    "constant c = {c} yields alpha = {a} < 1"
                )));
            }
            return Ok(Some(a as usize));
        }
        Ok(match self.alpha_mode {
            AlphaMode::Explicit(a) => Some(a),
            AlphaMode::Auto => None,
        })
    }
}

/// Runs `attempt` at a fixed α or searches the largest feasible α in
/// `1..=max_alpha`.
fn run_with_alpha<T>(
    fixed: Option<usize>,
    max_alpha: usize,
    attempt: impl FnMut(usize) -> Result<T>,
) -> Result<(usize, T)> {
    match fixed {
        Some(a) => {
            let mut attempt = attempt;
            attempt(a).map(|t| (a, t))
        }
        None => largest_feasible_alpha(max_alpha, attempt),
    }
}

/// Doubling from α = 1, then bisection between the last feasible and first
/// infeasible value. Infeasibility at α = 1 is returned as the error.
pub(crate) fn largest_feasible_alpha<T>(
    max_alpha: usize,
    mut attempt: impl FnMut(usize) -> Result<T>,
) -> Result<(usize, T)> {
    if max_alpha == 0 {
        return attempt(1).map(|t| (1, t));
    }
    let mut best = (1, attempt(1)?);
    let mut infeasible = max_alpha + 1;
    let mut next = 2;
    while next <= max_alpha {
        match attempt(next) {
            Ok(t) => {
                best = (next, t);
                next = next.saturating_mul(2);
            }
            Err(e) if e.is_infeasible() => {
                infeasible = next;
                break;
            }
            Err(e) => return Err(e),
        }
    }
    while infeasible - best.0 > 1 {
        let mid = best.0 + (infeasible - best.0) / 2;
        match attempt(mid) {
            Ok(t) => best = (mid, t),
            Err(e) if e.is_infeasible() => infeasible = mid,
            Err(e) => return Err(e),
        }
    }
    Ok(best)
}

fn verified(points: &PointSet, clustering: Clustering) -> Result<Clustering> {
    clustering.validate(points.len())?;
    if !check_separation(points, &clustering) {
        return Err(Error::VerificationFailed {
            kind: clustering.kind,
        });
    }
    Ok(clustering)
}

/// `max(1, log2 Φ)`, the spread factor in the strong/well size formulas.
pub fn log_spread_factor(spread: f64) -> f64 {
    spread.log2().max(1.0)
}

/// Covering constant for the semi extraction: a ball of radius
/// `(2σ+2) r` is covered by at most `K_semi(d) · max(σ,1)^d` grid cells of
/// diameter `r/2`, each holding fewer than α survivors. So
/// `K_semi(d) = (⌈16 √d⌉ + 1)^d`.
pub fn semi_covering_constant(dim: usize) -> f64 {
    let per_axis = (16.0 * (dim as f64).sqrt()).ceil() + 1.0;
    per_axis.powi(dim as i32)
}

/// Covering constant for the strong extraction: each greedy pick excludes
/// same-epoch balls whose members lie within `(12 + 8σ) r` of its center,
/// at most `(⌈80 √d⌉ + 1)^d · max(σ,1)^d` of them; the factor 8 absorbs the
/// epoch count (at most `1.5 max(1, log2 Φ)`) with room to spare.
pub fn strong_covering_constant(dim: usize) -> f64 {
    let per_axis = (80.0 * (dim as f64).sqrt()).ceil() + 1.0;
    8.0 * per_axis.powi(dim as i32)
}

/// Guaranteed semi quality on duplicate-free input:
/// `⌊n / (k · K_semi(d) · max(σ,1)^d)⌋`.
pub fn semi_quality_floor(n: usize, k: usize, sigma: f64, dim: usize) -> usize {
    let denom = k as f64 * semi_covering_constant(dim) * sigma.max(1.0).powi(dim as i32);
    (n as f64 / denom).floor() as usize
}

/// Guaranteed strong quality on duplicate-free input:
/// `⌊n / (k · K_strong(d) · max(σ,1)^d · max(1, log2 Φ))⌋`.
pub fn strong_quality_floor(n: usize, k: usize, sigma: f64, dim: usize, spread: f64) -> usize {
    let denom = k as f64
        * strong_covering_constant(dim)
        * sigma.max(1.0).powi(dim as i32)
        * log_spread_factor(spread);
    (n as f64 / denom).floor() as usize
}
