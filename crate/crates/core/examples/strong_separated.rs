//! Strong extraction: three far-apart groups versus the exponential line.

use sepclust::algorithms::{strong_quality_floor, strong_separated_k_detailed, ExtractionConfig};
use sepclust::generators::{gen_exponential_line, gen_random_uniform};
use sepclust::geometry::{spread, PointSet};

fn three_groups() -> sepclust::Result<PointSet> {
    let base = gen_random_uniform(200, 2, 11)?;
    let mut points = PointSet::empty(2)?;
    for offset in [0.0, 50.0, 100.0] {
        for p in base.iter() {
            points.push(&[p[0] + offset, p[1]])?;
        }
    }
    Ok(points)
}

fn main() -> sepclust::Result<()> {
    let groups = three_groups()?;
    let e = strong_separated_k_detailed(&groups, &ExtractionConfig::auto(3, 2.0))?;
    println!(
        "three groups: alpha = {}, quality = {}, epoch {} of {}, floor {}",
        e.clustering.alpha,
        e.clustering.quality(),
        e.epoch,
        e.epochs.len(),
        strong_quality_floor(groups.len(), 3, 2.0, 2, spread(&groups)?)
    );
    for (step, ball) in e.steps.iter().zip(&e.clustering.balls) {
        println!("  step {step}: radius {:.4}", ball.radius);
    }

    let line = gen_exponential_line(10)?;
    let e = strong_separated_k_detailed(&line, &ExtractionConfig::auto(2, 1.0))?;
    println!("exponential line: quality = {}", e.clustering.quality());
    Ok(())
}
