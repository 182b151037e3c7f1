//! The lower-bound constructions, each checked with the exhaustive oracle.

use sepclust::generators::{
    gen_exponential_line, gen_exponential_ring_grid, gen_k_copies, gen_near_uniform_highdim,
};
use sepclust::geometry::spread;
use sepclust::oracle::{best_separated_pair, OracleBudget};
use sepclust::separation::SeparationKind;

fn main() -> sepclust::Result<()> {
    let budget = OracleBudget::default();

    for n in [4, 8, 10] {
        let line = gen_exponential_line(n)?;
        let best = best_separated_pair(&line, 1.0, SeparationKind::Strong, &budget)?;
        println!("exponential line n = {n}: spread {}, best strong pair quality {}", spread(&line)?, best.quality);
    }

    for seed in 0..3 {
        let cloud = gen_near_uniform_highdim(10, 0.4, seed)?;
        let best = best_separated_pair(&cloud, 2.0, SeparationKind::Well, &budget)?;
        println!("near-uniform seed {seed}: d = {}, best well pair quality {}", cloud.dim(), best.quality);
    }

    let rings = gen_exponential_ring_grid(100, 100.0, 2)?;
    println!("ring grid: {} points, spread {:.1}", rings.len(), spread(&rings)?);
    let sample: Vec<usize> = (0..18).map(|i| i * rings.len() / 18).collect();
    let sub = rings.select(&sample);
    let wide = OracleBudget { max_n_assignment: 18, ..budget };
    let best = best_separated_pair(&sub, 24.0, SeparationKind::Well, &wide)?;
    println!("  18-point sample, well 24-separated: quality {}", best.quality);

    let copies = gen_k_copies(&rings, 6)?;
    println!("three spaced copies: {} points", copies.len());
    Ok(())
}
