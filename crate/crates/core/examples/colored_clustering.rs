//! Colored extraction on the three-color line: semi succeeds, well and
//! strong separation collapse to singletons.

use sepclust::algorithms::{semi_separated_k_colored, well_separated_k_colored, ExtractionConfig};
use sepclust::generators::gen_three_color_line;
use sepclust::oracle::check_three_color_hopeless;
use sepclust::separation::{is_separated, SeparationKind};

fn main() -> sepclust::Result<()> {
    let inst = gen_three_color_line(20)?;

    let semi = semi_separated_k_colored(&inst, &ExtractionConfig::auto(3, 1.0))?;
    println!("semi, sigma = 1: quality {} clusters {:?}", semi.quality(), semi.clusters);

    let well = well_separated_k_colored(&inst, &ExtractionConfig::auto(3, 3.0))?;
    println!("well, sigma = 3: quality {}", well.quality());
    println!(
        "  strongly 3-separated as well: {}",
        is_separated(inst.points(), &well.clusters, 3.0, SeparationKind::Strong)
    );

    println!("hopeless at sigma = 3: {}", check_three_color_hopeless(&inst, 3.0));
    Ok(())
}
