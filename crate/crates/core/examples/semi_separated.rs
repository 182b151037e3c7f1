//! Semi-separated extraction on a grid, across σ, with auto and fixed α.

use sepclust::algorithms::{semi_quality_floor, semi_separated_k, ExtractionConfig};
use sepclust::generators::gen_grid;
use sepclust::separation::separation_report;

fn main() -> sepclust::Result<()> {
    let points = gen_grid(32, 2)?;
    let k = 2;
    for sigma in [1.0, 2.0, 4.0] {
        let c = semi_separated_k(&points, &ExtractionConfig::auto(k, sigma))?;
        println!(
            "sigma = {sigma}: alpha = {}, quality = {}, guaranteed >= {}",
            c.alpha,
            c.quality(),
            semi_quality_floor(points.len(), k, sigma, 2)
        );
        let report = separation_report(&points, &c.clusters, sigma, c.kind);
        for pair in &report.pairs {
            println!(
                "  clusters {} {}: distance {:.3} vs diameter term {:.3}",
                pair.i, pair.j, pair.distance, pair.diameter_term
            );
        }
    }

    let fixed = semi_separated_k(&points, &ExtractionConfig::explicit(3, 1.0, 50))?;
    println!("k = 3, alpha = 50: quality {}", fixed.quality());
    Ok(())
}
