//! Distances, diameter, spread and the 2-approximate α-ball.

use sepclust::geometry::{approx_min_ball_alpha, closest_pair, diameter, spread, PointSet};

fn main() -> sepclust::Result<()> {
    let points = PointSet::from_rows(&[[0.0, 0.0], [1.0, 0.0], [0.0, 1.0], [5.0, 5.0], [9.0, 9.0]])?;

    println!("n = {}, d = {}", points.len(), points.dim());
    println!("diameter     = {:.4}", diameter(&points)?);
    println!("closest pair = {:.4}", closest_pair(&points)?);
    println!("spread       = {:.4}", spread(&points)?);

    for alpha in 1..=points.len() {
        let ball = approx_min_ball_alpha(&points, alpha)?;
        println!(
            "alpha = {alpha}: center {:?}, radius {:.4}",
            ball.center.coords(),
            ball.radius
        );
    }
    Ok(())
}
