//! Points and clustering files, and the command-line entry point driven
//! in-process.

use std::io;

use sepclust::cli::formats::{ClusteringFile, PointsFile};
use sepclust::cli::run;
use sepclust::generators::gen_random_uniform;

fn main() -> sepclust::Result<()> {
    let points = gen_random_uniform(500, 2, 7)?;
    let text = PointsFile::plain(points.clone()).render();
    let back = PointsFile::parse(&text)?;
    assert_eq!(back.points, points);
    println!("{} points round-tripped bit-exactly", points.len());

    let dir = std::env::temp_dir().join("sepclust-example");
    std::fs::create_dir_all(&dir).expect("temp dir");
    let input = dir.join("points.txt");
    let output = dir.join("clusters.json");
    std::fs::write(&input, text).expect("write points");

    let arg = |p: &std::path::Path| p.to_string_lossy().into_owned();
    let code = run(
        ["sepclust", "cluster", "--algo", "semi", "--k", "3", "--sigma", "2", "--auto"]
            .into_iter()
            .map(String::from)
            .chain(["--in".into(), arg(&input), "--out".into(), arg(&output)]),
        &mut io::stdout(),
        &mut io::stderr(),
    );
    println!("cluster exit code {code}");

    let record = ClusteringFile::parse(&std::fs::read_to_string(&output).expect("read clusters"))?;
    println!("{} clusters, quality {}", record.k, record.quality);

    let code = run(
        ["sepclust".into(), "verify".into(), "--points".into(), arg(&input), "--clusters".into(), arg(&output)],
        &mut io::stdout(),
        &mut io::stderr(),
    );
    println!("verify exit code {code}");
    Ok(())
}
