//! The benchmark suite behind `sepclust bench`.

use std::fmt::Write as _;
use std::time::Instant;

use crate::algorithms::{
    semi_separated_k, semi_separated_k_colored, strong_separated_k, well_separated_k_colored,
    ExtractionConfig,
};
use crate::error::Result;
use crate::generators::{gen_grid, GeneratorSpec, Instance};
use crate::quorum::{max_epoch_depth, quorum_clustering};
use crate::separation::{check_separation, Clustering};

pub const CSV_HEADER: &str =
    "generator,n,d,k,sigma,algo,alpha,quality,epochs,max_depth,verified,wall_ms";

/// One generated instance and the runs made on it.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchCase {
    pub label: String,
    pub spec: GeneratorSpec,
    pub algos: Vec<&'static str>,
    pub ks: Vec<usize>,
    pub sigmas: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub generator: String,
    pub n: usize,
    pub d: usize,
    pub k: usize,
    pub sigma: f64,
    pub algo: &'static str,
    pub alpha: usize,
    pub quality: usize,
    /// Epochs of the quorum clustering with quorum size `alpha`.
    pub epochs: usize,
    /// Largest same-epoch cover depth of that quorum clustering.
    pub max_depth: usize,
    pub verified: bool,
    pub wall_ms: f64,
}

impl BenchRow {
    pub fn csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{:.3}",
            self.generator,
            self.n,
            self.d,
            self.k,
            self.sigma,
            self.algo,
            self.alpha,
            self.quality,
            self.epochs,
            self.max_depth,
            self.verified,
            self.wall_ms
        )
    }
}

pub fn default_suite() -> Vec<BenchCase> {
    let plain = vec!["semi", "strong"];
    let ks = vec![2, 3];
    let sigmas = vec![1.0, 2.0, 4.0];
    let case = |label: &str, spec: GeneratorSpec| BenchCase {
        label: label.into(),
        spec,
        algos: plain.clone(),
        ks: ks.clone(),
        sigmas: sigmas.clone(),
    };
    vec![
        case("grid-16x2", GeneratorSpec::Grid { side: 16, dim: 2 }),
        case("grid-32x2", GeneratorSpec::Grid { side: 32, dim: 2 }),
        case("expline-30", GeneratorSpec::ExpLine { n: 30 }),
        case(
            "expgrid-50-64x2",
            GeneratorSpec::ExpRingGrid { n: 50, spread: 64.0, dim: 2 },
        ),
        case(
            "kcopies-4-grid-8x2",
            GeneratorSpec::KCopies {
                k: 4,
                base: gen_grid(8, 2).expect("small grid"),
            },
        ),
        case("random-1000x2", GeneratorSpec::RandomUniform { n: 1000, dim: 2, seed: 1 }),
        case("random-500x3", GeneratorSpec::RandomUniform { n: 500, dim: 3, seed: 2 }),
        BenchCase {
            label: "threecolor-20".into(),
            spec: GeneratorSpec::ThreeColor { n: 20 },
            algos: vec!["semi-colored", "well-colored"],
            ks: vec![3],
            sigmas,
        },
    ]
}

fn extract(instance: &Instance, algo: &str, cfg: &ExtractionConfig) -> Result<Clustering> {
    match (instance, algo) {
        (Instance::Plain(p), "semi") => semi_separated_k(p, cfg),
        (Instance::Plain(p), "strong") => strong_separated_k(p, cfg),
        (Instance::Colored(c), "semi-colored") => semi_separated_k_colored(c, cfg),
        (Instance::Colored(c), "well-colored") => well_separated_k_colored(c, cfg),
        _ => Err(crate::error::Error::InvalidParameter(format!(
            "algorithm {algo} does not apply to this instance"
        ))),
    }
}

/// Runs every case with auto α. Only `wall_ms` varies between runs.
pub fn run_suite(suite: &[BenchCase]) -> Result<Vec<BenchRow>> {
    let mut rows = Vec::new();
    for case in suite {
        let instance = case.spec.generate()?;
        let points = instance.points();
        for &algo in &case.algos {
            for &k in &case.ks {
                for &sigma in &case.sigmas {
                    let start = Instant::now();
                    let clustering = extract(&instance, algo, &ExtractionConfig::auto(k, sigma))?;
                    let wall_ms = start.elapsed().as_secs_f64() * 1e3;
                    let quorum = quorum_clustering(points, clustering.alpha)?;
                    rows.push(BenchRow {
                        generator: case.label.clone(),
                        n: points.len(),
                        d: points.dim(),
                        k,
                        sigma,
                        algo,
                        alpha: clustering.alpha,
                        quality: clustering.quality(),
                        epochs: quorum.epochs().len(),
                        max_depth: max_epoch_depth(points, &quorum),
                        verified: check_separation(points, &clustering),
                        wall_ms,
                    });
                }
            }
        }
    }
    Ok(rows)
}

pub fn render_csv(rows: &[BenchRow]) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{CSV_HEADER}");
    for row in rows {
        let _ = writeln!(s, "{}", row.csv());
    }
    s
}
