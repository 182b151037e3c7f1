//! Benchmark and lower-bound instances.
//!
//! Coordinates follow the one-based conventions of the constructions (the
//! grid is `{1..N}^d`, the exponential line starts at 3); only cluster
//! indices elsewhere in the crate are zero-based.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::algorithms::ColoredInstance;
use crate::error::{Error, Result};
use crate::geometry::{dist, PointSet};

/// Points allowed in a single generated set.
pub const MAX_POINTS: usize = 1 << 26;

/// Attempts made by [`gen_near_uniform_highdim`] before giving up.
pub const EMBEDDING_ATTEMPTS: usize = 100;

/// A generated instance: plain or colored.
#[derive(Debug, Clone, PartialEq)]
pub enum Instance {
    Plain(PointSet),
    Colored(ColoredInstance),
}

impl Instance {
    pub fn points(&self) -> &PointSet {
        match self {
            Instance::Plain(p) => p,
            Instance::Colored(c) => c.points(),
        }
    }

    pub fn colors(&self) -> Option<&[usize]> {
        match self {
            Instance::Plain(_) => None,
            Instance::Colored(c) => Some(c.colors()),
        }
    }
}

/// One generator invocation with its parameters.
#[derive(Debug, Clone, PartialEq)]
pub enum GeneratorSpec {
    Grid { side: usize, dim: usize },
    ExpLine { n: usize },
    ThreeColor { n: usize },
    ExpRingGrid { n: usize, spread: f64, dim: usize },
    KCopies { k: usize, base: PointSet },
    NearUniform { n: usize, eps: f64, seed: u64 },
    RandomUniform { n: usize, dim: usize, seed: u64 },
}

impl GeneratorSpec {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Grid { .. } => "grid",
            Self::ExpLine { .. } => "expline",
            Self::ThreeColor { .. } => "threecolor",
            Self::ExpRingGrid { .. } => "expgrid",
            Self::KCopies { .. } => "kcopies",
            Self::NearUniform { .. } => "nearuniform",
            Self::RandomUniform { .. } => "random",
        }
    }

    pub fn generate(&self) -> Result<Instance> {
        Ok(match self {
            Self::Grid { side, dim } => Instance::Plain(gen_grid(*side, *dim)?),
            Self::ExpLine { n } => Instance::Plain(gen_exponential_line(*n)?),
            Self::ThreeColor { n } => Instance::Colored(gen_three_color_line(*n)?),
            Self::ExpRingGrid { n, spread, dim } => {
                Instance::Plain(gen_exponential_ring_grid(*n, *spread, *dim)?)
            }
            Self::KCopies { k, base } => Instance::Plain(gen_k_copies(base, *k)?),
            Self::NearUniform { n, eps, seed } => {
                Instance::Plain(gen_near_uniform_highdim(*n, *eps, *seed)?)
            }
            Self::RandomUniform { n, dim, seed } => {
                Instance::Plain(gen_random_uniform(*n, *dim, *seed)?)
            }
        })
    }
}

fn positive(name: &str, value: usize) -> Result<()> {
    if value == 0 {
        return Err(Error::InvalidParameter(format!("{name} must be positive")));
    }
    Ok(())
}

/// `{1..side}^dim` in lexicographic order.
pub fn gen_grid(side: usize, dim: usize) -> Result<PointSet> {
    positive("side", side)?;
    positive("dim", dim)?;
    let n = u32::try_from(dim)
        .ok()
        .and_then(|d| side.checked_pow(d))
        .filter(|&n| n <= MAX_POINTS && n.checked_mul(dim).is_some())
        .ok_or_else(|| Error::Overflow(format!("{side}^{dim} grid points")))?;
    let mut coords = Vec::with_capacity(n * dim);
    let mut index = vec![1usize; dim];
    for _ in 0..n {
        coords.extend(index.iter().map(|&c| c as f64));
        for axis in (0..dim).rev() {
            if index[axis] < side {
                index[axis] += 1;
                break;
            }
            index[axis] = 1;
        }
    }
    PointSet::from_flat(dim, coords)
}

/// `p_i = 2^{i+1} - 1` for `i = 1..n`: every gap doubles the previous one.
pub fn gen_exponential_line(n: usize) -> Result<PointSet> {
    positive("n", n)?;
    if n > 50 {
        return Err(Error::Overflow(format!(
            "exponential line of length {n} exceeds exact double range (n <= 50)"
        )));
    }
    let values: Vec<f64> = (1..=n).map(|i| ((1u64 << (i + 1)) - 1) as f64).collect();
    PointSet::from_values(&values)
}

/// Three colors on a line: `P1 = {1..n}`, `P2 = {n+1..2n}`,
/// `P3 = {1 + (1+i) n : i = 1..n}`.
pub fn gen_three_color_line(n: usize) -> Result<ColoredInstance> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("n must be at least 2, got {n}")));
    }
    let p1: Vec<f64> = (1..=n).map(|i| i as f64).collect();
    let p2: Vec<f64> = (1..=n).map(|i| (n + i) as f64).collect();
    let p3: Vec<f64> = (1..=n).map(|i| (1 + (1 + i) * n) as f64).collect();
    ColoredInstance::from_sets(&[
        PointSet::from_values(&p1)?,
        PointSet::from_values(&p2)?,
        PointSet::from_values(&p3)?,
    ])
}

/// Grid spacing `ℓ = numerator / denominator` for a ring grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Spacing {
    pub numerator: u64,
    pub denominator: u64,
}

impl Spacing {
    pub fn value(self) -> f64 {
        self.numerator as f64 / self.denominator as f64
    }

    /// Grid points `ℓ j` with `|ℓ j|_∞ <= 3`, per axis.
    fn outer_per_axis(self) -> u64 {
        2 * (3 * self.denominator / self.numerator) + 1
    }

    /// Grid points with `|ℓ j|_∞ < 2`, per axis.
    fn inner_per_axis(self) -> u64 {
        2 * (2 * self.denominator).div_ceil(self.numerator) - 1
    }

    /// Grid points in the ring `[-3,3]^d \ (-2,2)^d`, or `None` on overflow.
    pub fn ring_count(self, dim: usize) -> Option<u64> {
        let d = u32::try_from(dim).ok()?;
        let outer = self.outer_per_axis().checked_pow(d)?;
        let inner = self.inner_per_axis().checked_pow(d)?;
        Some(outer - inner)
    }

    pub fn box_count(self, dim: usize) -> Option<u64> {
        self.outer_per_axis().checked_pow(u32::try_from(dim).ok()?)
    }
}

/// The largest spacing whose grid has at least `n` points in the ring
/// `[-3,3]^d \ (-2,2)^d`.
///
/// The ring count only changes where `3/ℓ` or `2/ℓ` is an integer, and it is
/// not monotone in `ℓ`, so the breakpoints are scanned in decreasing order
/// with exact integer counts.
pub fn ring_grid_spacing(n: usize, dim: usize) -> Result<Spacing> {
    positive("n", n)?;
    positive("dim", dim)?;
    let (mut m3, mut m2) = (1u64, 1u64);
    loop {
        // Next breakpoint: the larger of 3/m3 and 2/m2.
        let spacing = if 3 * m2 >= 2 * m3 {
            if 3 * m2 == 2 * m3 {
                m2 += 1;
            }
            m3 += 1;
            Spacing { numerator: 3, denominator: m3 - 1 }
        } else {
            m2 += 1;
            Spacing { numerator: 2, denominator: m2 - 1 }
        };
        let count = spacing
            .ring_count(dim)
            .filter(|&c| c <= MAX_POINTS as u64)
            .ok_or_else(|| Error::Overflow(format!("ring grid for n = {n}, d = {dim}")))?;
        if count >= n as u64 {
            return Ok(spacing);
        }
    }
}

/// Levels used by [`gen_exponential_ring_grid`]: `⌈log2 Φ⌉`.
pub fn ring_grid_levels(spread: f64) -> usize {
    spread.log2().ceil() as usize
}

/// Upper bound on the spread of a ring grid instance:
/// diameter at most `6 √d`, closest pair at least `ℓ / 3^{h-1}`.
pub fn ring_grid_spread_bound(spacing: Spacing, levels: usize, dim: usize) -> f64 {
    6.0 * (dim as f64).sqrt() / spacing.value() * 3f64.powi(levels as i32 - 1)
}

/// Nested rings of grid points at exponentially shrinking scales.
///
/// Level 1 is the `n` lexicographically smallest points of the grid `ℓ Z^d`
/// inside `[-3,3]^d \ (-2,2)^d`, with `ℓ` from [`ring_grid_spacing`]; each
/// further level is the previous one divided by 3, for `⌈log2 Φ⌉` levels.
/// Fails if the spacing's grid puts more than `6n` points in `[-3,3]^d`.
pub fn gen_exponential_ring_grid(n: usize, spread: f64, dim: usize) -> Result<PointSet> {
    if !(spread.is_finite() && spread >= n as f64 && spread > 1.0) {
        return Err(Error::InvalidParameter(format!(
            "spread must be finite, at least n and above 1, got {spread}"
        )));
    }
    let spacing = ring_grid_spacing(n, dim)?;
    let in_box = spacing.box_count(dim).unwrap_or(u64::MAX);
    if in_box > 6 * n as u64 {
        return Err(Error::InvalidParameter(format!(
            "n = {n} too small: the grid has {in_box} points in [-3,3]^{dim}, more than 6n"
        )));
    }
    let levels = ring_grid_levels(spread);
    let (p, m) = (spacing.numerator as i64, spacing.denominator as i64);
    let reach = 3 * m / p;

    let mut first = Vec::with_capacity(n * dim);
    let mut j = vec![-reach; dim];
    let mut taken = 0;
    while taken < n {
        let norm = j.iter().map(|c| c.abs()).max().expect("dim >= 1") * p;
        if norm >= 2 * m && norm <= 3 * m {
            first.extend(j.iter().map(|&c| (c * p) as f64 / m as f64));
            taken += 1;
        }
        for axis in (0..dim).rev() {
            if j[axis] < reach {
                j[axis] += 1;
                break;
            }
            j[axis] = -reach;
        }
    }

    let mut coords = Vec::with_capacity(n * dim * levels);
    coords.extend_from_slice(&first);
    let mut level = first;
    for _ in 1..levels {
        for c in level.iter_mut() {
            *c /= 3.0;
        }
        coords.extend_from_slice(&level);
    }
    PointSet::from_flat(dim, coords)
}

/// `⌊k/2⌋` copies of `base` along the first axis, consecutive copies'
/// extents separated by the diameter of `base`.
pub fn gen_k_copies(base: &PointSet, k: usize) -> Result<PointSet> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!("k must be at least 2, got {k}")));
    }
    if base.is_empty() {
        return Err(Error::EmptySet);
    }
    let all: Vec<usize> = (0..base.len()).collect();
    let delta = crate::geometry::subset_diameter(base, &all);
    let (lo, hi) = base
        .iter()
        .map(|p| p[0])
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), x| (lo.min(x), hi.max(x)));
    let step = hi - lo + delta;
    let mut out = PointSet::empty(base.dim())?;
    let mut shifted = vec![0.0; base.dim()];
    for copy in 0..k / 2 {
        let offset = copy as f64 * step;
        for p in base.iter() {
            shifted.copy_from_slice(p);
            shifted[0] += offset;
            out.push(&shifted)?;
        }
    }
    Ok(out)
}

/// Target dimension `8 ⌈ε^{-2} ln n⌉` of the random embedding.
pub fn embedding_dimension(n: usize, eps: f64) -> usize {
    8 * ((n as f64).ln() / (eps * eps)).ceil().max(1.0) as usize
}

/// `n` points whose pairwise distances all lie in `[1-ε, 1+ε]`: the scaled
/// basis vectors `e_i/√2` of `R^n` under a seeded Gaussian projection to
/// [`embedding_dimension`] dimensions, redrawn until the band holds.
pub fn gen_near_uniform_highdim(n: usize, eps: f64, seed: u64) -> Result<PointSet> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("n must be at least 2, got {n}")));
    }
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::InvalidParameter(format!("eps must lie in (0, 1), got {eps}")));
    }
    let dim = embedding_dimension(n, eps);
    let scale = 1.0 / ((dim as f64).sqrt() * std::f64::consts::SQRT_2);
    for attempt in 0..EMBEDDING_ATTEMPTS {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(attempt as u64);
        // Row i of the output is column i of the projection matrix.
        let coords: Vec<f64> = (0..n * dim)
            .map(|_| rng.sample::<f64, _>(StandardNormal) * scale)
            .collect();
        let points = PointSet::from_flat(dim, coords)?;
        let in_band = (0..n).all(|i| {
            (i + 1..n).all(|j| {
                let d = dist(points.point(i), points.point(j));
                d >= 1.0 - eps && d <= 1.0 + eps
            })
        });
        if in_band {
            return Ok(points);
        }
    }
    Err(Error::EmbeddingFailed {
        attempts: EMBEDDING_ATTEMPTS,
    })
}

/// `n` seeded uniform points in `[0,1)^dim`.
pub fn gen_random_uniform(n: usize, dim: usize, seed: u64) -> Result<PointSet> {
    positive("n", n)?;
    positive("dim", dim)?;
    if n.checked_mul(dim).is_none_or(|c| c > MAX_POINTS) {
        return Err(Error::Overflow(format!("{n} points in dimension {dim}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let coords: Vec<f64> = (0..n * dim).map(|_| rng.random::<f64>()).collect();
    PointSet::from_flat(dim, coords)
}
