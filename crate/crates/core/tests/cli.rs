use std::path::Path;
use std::process::Command;

use sepclust::cli::formats::{ClusteringFile, PointsFile};
use sepclust::cli::{run_with_env, EXIT_BUDGET, EXIT_INFEASIBLE, EXIT_OK, EXIT_USAGE, EXIT_VERIFY_FAILED};

struct Outcome {
    code: i32,
    out: String,
    err: String,
}

fn sepclust(args: &[&str]) -> Outcome {
    sepclust_env(args, None)
}

fn sepclust_env(args: &[&str], seed: Option<&str>) -> Outcome {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("sepclust").chain(args.iter().copied());
    let code = run_with_env(argv, seed, &mut out, &mut err);
    Outcome {
        code,
        out: String::from_utf8(out).unwrap(),
        err: String::from_utf8(err).unwrap(),
    }
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn data_lines(text: &str) -> Vec<&str> {
    text.lines().filter(|l| !l.starts_with('#')).collect()
}

#[test]
fn generate_examples() {
    let r = sepclust(&["generate", "expline", "--n", "3"]);
    assert_eq!(r.code, EXIT_OK);
    assert_eq!(data_lines(&r.out), ["3", "7", "15"]);

    let r = sepclust(&["generate", "grid", "--side", "2", "--dim", "1"]);
    assert_eq!(data_lines(&r.out), ["1", "2"]);

    let r = sepclust(&["generate", "threecolor", "--n", "3"]);
    assert!(r.out.starts_with("# dim=1 colored=1\n"));
    assert_eq!(
        data_lines(&r.out),
        ["0 1", "0 2", "0 3", "1 4", "1 5", "1 6", "2 7", "2 10", "2 13"]
    );
}

#[test]
fn generate_seed_handling() {
    let missing = sepclust_env(&["generate", "random", "--n", "5", "--dim", "2"], None);
    assert_eq!(missing.code, EXIT_USAGE);
    assert!(missing.err.contains("SEPCLUST_SEED"));

    let from_env = sepclust_env(&["generate", "random", "--n", "5", "--dim", "2"], Some("9"));
    let from_flag = sepclust(&["generate", "random", "--n", "5", "--dim", "2", "--seed", "9"]);
    assert_eq!(from_env.code, EXIT_OK);
    assert_eq!(from_env.out, from_flag.out);

    let bad = sepclust_env(&["generate", "nearuniform", "--n", "5", "--eps", "0.5"], Some("x"));
    assert_eq!(bad.code, EXIT_USAGE);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(sepclust(&["generate", "grid", "--side", "2"]).code, EXIT_USAGE);
    assert_eq!(sepclust(&["frobnicate"]).code, EXIT_USAGE);
    assert_eq!(sepclust(&["generate", "expline", "--n", "0"]).code, EXIT_USAGE);
    assert_eq!(sepclust(&["--help"]).code, EXIT_OK);
}

#[test]
fn cluster_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let points = dir.path().join("points.txt");
    let clusters = dir.path().join("clusters.json");
    let r = sepclust(&["generate", "random", "--n", "2000", "--dim", "2", "--seed", "7", "--out", path(&points)]);
    assert_eq!(r.code, EXIT_OK, "{}", r.err);

    let r = sepclust(&[
        "cluster", "--algo", "semi", "--k", "3", "--sigma", "2", "--auto",
        "--in", path(&points), "--out", path(&clusters), "--seed", "7",
    ]);
    assert_eq!(r.code, EXIT_OK, "{}", r.err);
    let record = ClusteringFile::parse(&std::fs::read_to_string(&clusters).unwrap()).unwrap();
    assert!(record.verified);
    assert_eq!(record.k, 3);
    assert_eq!(record.seed, Some(7));
    assert_eq!(record.indexing, "zero-based");
    // ⌊2000 / (3 · 576 · 4)⌋ = 0, so any quality meets the floor.
    assert!(record.quality >= 2000 / (3 * 576 * 4));

    let r = sepclust(&["verify", "--points", path(&points), "--clusters", path(&clusters)]);
    assert_eq!(r.code, EXIT_OK);
    assert_eq!(r.out.matches(" PASS").count(), 3);
    assert!(r.out.ends_with("PASS\n"));

    // Semi verification of a strong result holds too.
    let strong = dir.path().join("strong.json");
    let r = sepclust(&[
        "cluster", "--algo", "strong", "--k", "2", "--sigma", "1",
        "--in", path(&points), "--out", path(&strong),
    ]);
    assert_eq!(r.code, EXIT_OK, "{}", r.err);
    for kind in ["strong", "well", "semi"] {
        let r = sepclust(&["verify", "--kind", kind, "--points", path(&points), "--clusters", path(&strong)]);
        assert_eq!(r.code, EXIT_OK, "{kind}");
    }
}

#[test]
fn tampered_clustering_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    let points = dir.path().join("points.txt");
    let clusters = dir.path().join("clusters.json");
    std::fs::write(&points, "0\n1\n2\n100\n101\n102\n").unwrap();
    let r = sepclust(&["cluster", "--algo", "semi", "--k", "2", "--sigma", "2", "--in", path(&points), "--out", path(&clusters)]);
    assert_eq!(r.code, EXIT_OK, "{}", r.err);

    let mut record = ClusteringFile::parse(&std::fs::read_to_string(&clusters).unwrap()).unwrap();
    assert_eq!(record.clusters, vec![vec![0, 1, 2], vec![3, 4, 5]]);
    // Swap a point of the first cluster for one sitting next to the second.
    record.clusters[0] = vec![0, 1, 5];
    record.clusters[1] = vec![2, 3, 4];
    std::fs::write(&clusters, record.render()).unwrap();
    let r = sepclust(&["verify", "--points", path(&points), "--clusters", path(&clusters)]);
    assert_eq!(r.code, EXIT_VERIFY_FAILED);
    assert!(r.out.contains("FAIL"));

    record.clusters[1] = vec![0, 3];
    std::fs::write(&clusters, record.render()).unwrap();
    let r = sepclust(&["verify", "--points", path(&points), "--clusters", path(&clusters)]);
    assert_eq!(r.code, EXIT_USAGE);
}

#[test]
fn cluster_examples_and_errors() {
    let dir = tempfile::tempdir().unwrap();
    let line = dir.path().join("line.txt");
    let colored = dir.path().join("colored.txt");
    let out = dir.path().join("out.json");
    sepclust(&["generate", "expline", "--n", "10", "--out", path(&line)]);
    sepclust(&["generate", "threecolor", "--n", "6", "--out", path(&colored)]);

    let r = sepclust(&["cluster", "--algo", "strong", "--k", "2", "--sigma", "1", "--in", path(&line), "--out", path(&out)]);
    assert_eq!(r.code, EXIT_OK);
    assert!(r.out.contains("quality=1"));

    let r = sepclust(&["cluster", "--algo", "semi", "--k", "1", "--sigma", "1", "--in", path(&line)]);
    assert_eq!(r.code, EXIT_OK);
    let record = ClusteringFile::parse(&r.out).unwrap();
    assert_eq!(record.clusters, vec![(0..10).collect::<Vec<_>>()]);

    let r = sepclust(&["cluster", "--algo", "semi", "--k", "2", "--sigma", "1", "--alpha", "6", "--in", path(&line)]);
    assert_eq!(r.code, EXIT_INFEASIBLE);

    let r = sepclust(&["cluster", "--algo", "semi-colored", "--k", "3", "--sigma", "1", "--in", path(&line)]);
    assert_eq!(r.code, EXIT_USAGE);
    let r = sepclust(&["cluster", "--algo", "semi", "--k", "3", "--sigma", "1", "--in", path(&colored)]);
    assert_eq!(r.code, EXIT_USAGE);
    let r = sepclust(&["cluster", "--algo", "kmeans", "--k", "3", "--sigma", "1", "--in", path(&line)]);
    assert_eq!(r.code, EXIT_USAGE);

    let r = sepclust(&["cluster", "--algo", "well-colored", "--k", "3", "--sigma", "3", "--in", path(&colored), "--out", path(&out)]);
    assert_eq!(r.code, EXIT_OK, "{}", r.err);
    let r = sepclust(&["verify", "--points", path(&colored), "--clusters", path(&out)]);
    assert_eq!(r.code, EXIT_OK);
    assert!(r.out.contains("colors PASS"));
}

#[test]
fn oracle_commands() {
    let dir = tempfile::tempdir().unwrap();
    let line = dir.path().join("line.txt");
    let small = dir.path().join("small.txt");
    let colored = dir.path().join("colored.txt");
    sepclust(&["generate", "expline", "--n", "8", "--out", path(&line)]);
    std::fs::write(&small, "0\n1\n2\n10\n").unwrap();
    sepclust(&["generate", "threecolor", "--n", "20", "--out", path(&colored)]);

    let r = sepclust(&["oracle", "best-pair", "--sigma", "1", "--kind", "strong", "--in", path(&line)]);
    assert_eq!(r.code, EXIT_OK);
    assert!(r.out.starts_with("quality=1\n"));

    let r = sepclust(&["oracle", "min-ball", "--alpha", "1", "--in", path(&small)]);
    assert_eq!(r.out, "radius=0\n");
    let r = sepclust(&["oracle", "min-ball", "--alpha", "3", "--in", path(&small)]);
    assert_eq!(r.out, "radius=1\n");

    let r = sepclust(&["oracle", "best-pair", "--sigma", "1", "--kind", "semi", "--in", path(&line), "--max-n", "5"]);
    assert_eq!(r.code, EXIT_BUDGET);

    let r = sepclust(&["oracle", "three-color", "--sigma", "3", "--in", path(&colored)]);
    assert_eq!(r.out, "hopeless=true\n");
}

#[test]
fn kcopies_reads_its_input() {
    let dir = tempfile::tempdir().unwrap();
    let base = dir.path().join("base.txt");
    std::fs::write(&base, "0\n1\n").unwrap();
    let r = sepclust(&["generate", "kcopies", "--k", "6", "--input", path(&base)]);
    assert_eq!(data_lines(&r.out), ["0", "1", "2", "3", "4", "5"]);
    let parsed = PointsFile::parse(&r.out).unwrap();
    assert_eq!(parsed.points.len(), 6);
}

#[test]
fn binary_exit_codes() {
    let exe = env!("CARGO_BIN_EXE_sepclust");
    let ok = Command::new(exe).args(["generate", "grid", "--side", "2", "--dim", "2"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(EXIT_OK));
    assert_eq!(String::from_utf8(ok.stdout).unwrap(), "# dim=2 colored=0\n1 1\n1 2\n2 1\n2 2\n");

    let bad = Command::new(exe).args(["cluster", "--k", "2"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_USAGE));

    let env = Command::new(exe)
        .args(["generate", "random", "--n", "3", "--dim", "1"])
        .env("SEPCLUST_SEED", "4")
        .output()
        .unwrap();
    assert_eq!(env.status.code(), Some(EXIT_OK));
}
