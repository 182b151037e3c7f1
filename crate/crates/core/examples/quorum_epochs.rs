//! Quorum clustering of a grid: radii, epochs, and same-epoch cover depth.

use sepclust::generators::gen_grid;
use sepclust::quorum::{depth_bound, max_epoch_depth, quorum_clustering};

fn main() -> sepclust::Result<()> {
    let points = gen_grid(32, 2)?;
    for gamma in [4, 16, 64] {
        let qc = quorum_clustering(&points, gamma)?;
        let epochs = qc.epochs();
        println!(
            "gamma = {gamma:>2}: {} steps, {} epochs, max depth {}",
            qc.len(),
            epochs.len(),
            max_epoch_depth(&points, &qc)
        );
        for (e, range) in epochs.ranges.iter().enumerate() {
            let radii = &qc.radii()[range.clone()];
            let (lo, hi) = radii
                .iter()
                .fold((f64::INFINITY, 0.0f64), |(lo, hi), &r| (lo.min(r), hi.max(r)));
            println!("  epoch {e}: steps {range:?}, radius in [{lo:.3}, {hi:.3}]");
        }
    }
    println!("depth bound for d = 2: {}", depth_bound(2));
    Ok(())
}
