//! Command-line front end. [`run`] is the whole program; the binary only
//! forwards `std::env::args` and the standard streams to it.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
//! 3 infeasible extraction, 4 oracle budget exceeded.

pub mod bench;
pub mod formats;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::algorithms::{
    semi_separated_k, semi_separated_k_colored, strong_separated_k, well_separated_k_colored,
    AlphaMode, ExtractionConfig,
};
use crate::error::Error;
use crate::generators::{GeneratorSpec, Instance};
use crate::oracle::{best_separated_pair, check_three_color_hopeless, exact_min_ball_alpha, OracleBudget};
use crate::separation::{separation_report, Clustering, SeparationKind};

use formats::{format_g17, ClusteringFile, PointsFile};

pub const SEED_ENV: &str = "SEPCLUST_SEED";

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INFEASIBLE: i32 = 3;
pub const EXIT_BUDGET: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "sepclust", version, about = "Large separated clusters in point sets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write a generated instance as a points file.
    Generate {
        #[command(subcommand)]
        kind: GenerateKind,
        #[arg(long, global = true)]
        out: Option<PathBuf>,
    },
    /// Extract k separated clusters from a points file.
    Cluster(ClusterArgs),
    /// Check a clustering file against a points file.
    Verify(VerifyArgs),
    /// Exact exhaustive baselines for small inputs.
    Oracle {
        #[command(subcommand)]
        query: OracleQuery,
    },
    /// Run a benchmark suite and write CSV.
    Bench {
        #[arg(long, default_value = "default")]
        suite: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
enum GenerateKind {
    /// {1..side}^dim.
    Grid {
        #[arg(long)]
        side: usize,
        #[arg(long)]
        dim: usize,
    },
    /// 2^{i+1} - 1 for i = 1..n.
    Expline {
        #[arg(long)]
        n: usize,
    },
    /// Three colored sets of n points on a line.
    Threecolor {
        #[arg(long)]
        n: usize,
    },
    /// Nested ring grids at scales 3^{-i}.
    Expgrid {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        spread: f64,
        #[arg(long)]
        dim: usize,
    },
    /// floor(k/2) spaced copies of an input set.
    Kcopies {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        input: PathBuf,
    },
    /// n points with all pairwise distances in [1-eps, 1+eps].
    Nearuniform {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        eps: f64,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// n uniform points in the unit cube.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        seed: Option<u64>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Algo {
    Semi,
    SemiColored,
    Strong,
    WellColored,
}

impl Algo {
    fn name(self) -> &'static str {
        match self {
            Algo::Semi => "semi",
            Algo::SemiColored => "semi-colored",
            Algo::Strong => "strong",
            Algo::WellColored => "well-colored",
        }
    }

    fn colored(self) -> bool {
        matches!(self, Algo::SemiColored | Algo::WellColored)
    }
}

#[derive(Debug, Args)]
struct ClusterArgs {
    #[arg(long, value_enum)]
    algo: Algo,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    sigma: f64,
    /// Fixed cluster size.
    #[arg(long, conflicts_with = "auto")]
    alpha: Option<usize>,
    /// Search the largest feasible cluster size (the default).
    #[arg(long)]
    auto: bool,
    /// Constant for the closed-form cluster size; overrides --alpha/--auto.
    #[arg(long)]
    c: Option<f64>,
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Recorded in the output file.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// Defaults to the kind recorded in the clustering file.
    #[arg(long)]
    kind: Option<SeparationKind>,
    /// Defaults to the sigma recorded in the clustering file.
    #[arg(long)]
    sigma: Option<f64>,
    #[arg(long)]
    points: PathBuf,
    #[arg(long)]
    clusters: PathBuf,
}

#[derive(Debug, Subcommand)]
enum OracleQuery {
    /// Best pair of separated clusters by exhaustive search.
    BestPair {
        #[arg(long)]
        sigma: f64,
        #[arg(long)]
        kind: SeparationKind,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        max_n: Option<usize>,
    },
    /// Exact smallest ball covering alpha points.
    MinBall {
        #[arg(long)]
        alpha: usize,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        max_n: Option<usize>,
    },
    /// Check the premises that make colorful strong triples useless.
    ThreeColor {
        #[arg(long)]
        sigma: f64,
        #[arg(long = "in")]
        input: PathBuf,
    },
}

/// A failed command: its exit code and message.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self { code: EXIT_USAGE, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            _ if e.is_infeasible() => EXIT_INFEASIBLE,
            Error::VerificationFailed { .. } => EXIT_VERIFY_FAILED,
            Error::BudgetExceeded { .. } => EXIT_BUDGET,
            _ => EXIT_USAGE,
        };
        Self { code, message: e.to_string() }
    }
}

type Outcome = std::result::Result<i32, Failure>;

/// Runs the command line `args` (program name first), reading the fallback
/// seed from the environment.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let env_seed = std::env::var(SEED_ENV).ok();
    run_with_env(args, env_seed.as_deref(), out, err)
}

/// [`run`] with the fallback seed passed explicitly.
pub fn run_with_env<I, T>(args: I, env_seed: Option<&str>, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                let _ = write!(err, "{e}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{e}");
                EXIT_OK
            };
            return code;
        }
    };
    let outcome = match cli.command {
        Command::Generate { kind, out: path } => generate(kind, path.as_deref(), env_seed, out),
        Command::Cluster(args) => cluster(args, out),
        Command::Verify(args) => verify(args, out),
        Command::Oracle { query } => oracle(query, out),
        Command::Bench { suite, out: path } => bench(&suite, path.as_deref(), out),
    };
    match outcome {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn read(path: &Path) -> std::result::Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn read_points(path: &Path) -> std::result::Result<PointsFile, Failure> {
    PointsFile::parse(&read(path)?)
        .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn emit(text: &str, path: Option<&Path>, out: &mut dyn Write) -> std::result::Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::usage(format!("{}: {e}", p.display()))),
        None => out
            .write_all(text.as_bytes())
            .map_err(|e| Failure::usage(format!("stdout: {e}"))),
    }
}

fn resolve_seed(seed: Option<u64>, env_seed: Option<&str>) -> std::result::Result<u64, Failure> {
    if let Some(s) = seed {
        return Ok(s);
    }
    match env_seed {
        Some(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::usage(format!("{SEED_ENV}=`{v}` is not an integer seed"))),
        None => Err(Failure::usage(format!(
            "a seed is required: pass --seed or set {SEED_ENV}"
        ))),
    }
}

fn generate(kind: GenerateKind, path: Option<&Path>, env_seed: Option<&str>, out: &mut dyn Write) -> Outcome {
    let spec = match kind {
        GenerateKind::Grid { side, dim } => GeneratorSpec::Grid { side, dim },
        GenerateKind::Expline { n } => GeneratorSpec::ExpLine { n },
        GenerateKind::Threecolor { n } => GeneratorSpec::ThreeColor { n },
        GenerateKind::Expgrid { n, spread, dim } => GeneratorSpec::ExpRingGrid { n, spread, dim },
        GenerateKind::Kcopies { k, input } => {
            let base = read_points(&input)?;
            GeneratorSpec::KCopies { k, base: base.points }
        }
        GenerateKind::Nearuniform { n, eps, seed } => GeneratorSpec::NearUniform {
            n,
            eps,
            seed: resolve_seed(seed, env_seed)?,
        },
        GenerateKind::Random { n, dim, seed } => GeneratorSpec::RandomUniform {
            n,
            dim,
            seed: resolve_seed(seed, env_seed)?,
        },
    };
    let file = match spec.generate()? {
        Instance::Plain(points) => PointsFile::plain(points),
        Instance::Colored(inst) => PointsFile::colored(&inst),
    };
    emit(&file.render(), path, out)?;
    Ok(EXIT_OK)
}

fn cluster(args: ClusterArgs, out: &mut dyn Write) -> Outcome {
    let file = read_points(&args.input)?;
    if file.is_colored() != args.algo.colored() {
        return Err(Failure::usage(format!(
            "algorithm {} needs a {} points file",
            args.algo.name(),
            if args.algo.colored() { "colored" } else { "plain" }
        )));
    }
    let cfg = ExtractionConfig {
        sigma: args.sigma,
        k: args.k,
        alpha_mode: args.alpha.map_or(AlphaMode::Auto, AlphaMode::Explicit),
        c_override: args.c,
    };
    let clustering: Clustering = match args.algo {
        Algo::Semi => semi_separated_k(&file.points, &cfg)?,
        Algo::Strong => strong_separated_k(&file.points, &cfg)?,
        Algo::SemiColored => semi_separated_k_colored(&file.to_instance()?, &cfg)?,
        Algo::WellColored => well_separated_k_colored(&file.to_instance()?, &cfg)?,
    };
    // Extraction fails rather than return an unverified clustering.
    let record = ClusteringFile::new(args.algo.name(), &clustering, args.seed, true);
    match args.out {
        Some(path) => {
            emit(&record.render(), Some(&path), out)?;
            let _ = writeln!(
                out,
                "algorithm={} k={} alpha={} quality={} verified=true",
                record.algorithm, record.k, record.alpha, record.quality
            );
        }
        None => emit(&record.render(), None, out)?,
    }
    Ok(EXIT_OK)
}

fn verify(args: VerifyArgs, out: &mut dyn Write) -> Outcome {
    let points = read_points(&args.points)?;
    let record = ClusteringFile::parse(&read(&args.clusters)?)
        .map_err(|e| Failure::usage(format!("{}: {e}", args.clusters.display())))?;
    let mut clustering = record.to_clustering(points.points.len())?;
    clustering.kind = args.kind.unwrap_or(record.kind);
    clustering.sigma = args.sigma.unwrap_or(record.sigma);
    if !(clustering.sigma.is_finite() && clustering.sigma > 0.0) {
        return Err(Failure::usage("sigma must be positive"));
    }
    let report = separation_report(&points.points, &clustering.clusters, clustering.sigma, clustering.kind);
    let _ = writeln!(out, "kind={} sigma={}", report.kind, format_g17(report.sigma));
    for pair in &report.pairs {
        let _ = writeln!(
            out,
            "pair {} {} distance={} diameter_term={} ratio={} {}",
            pair.i,
            pair.j,
            format_g17(pair.distance),
            format_g17(pair.diameter_term),
            format_g17(pair.ratio()),
            if pair.holds { "PASS" } else { "FAIL" }
        );
    }
    let mut passed = report.passed();
    if record.algorithm.ends_with("-colored") {
        let colors_ok = points
            .to_instance()
            .map(|inst| inst.respects_colors(&clustering.clusters))
            .unwrap_or(false);
        let _ = writeln!(out, "colors {}", if colors_ok { "PASS" } else { "FAIL" });
        passed &= colors_ok;
    }
    let _ = writeln!(out, "{}", if passed { "PASS" } else { "FAIL" });
    Ok(if passed { EXIT_OK } else { EXIT_VERIFY_FAILED })
}

fn oracle(query: OracleQuery, out: &mut dyn Write) -> Outcome {
    let defaults = OracleBudget::default();
    match query {
        OracleQuery::BestPair { sigma, kind, input, max_n } => {
            let file = read_points(&input)?;
            let budget = OracleBudget {
                max_n_assignment: max_n.unwrap_or(defaults.max_n_assignment),
                ..defaults
            };
            let w = best_separated_pair(&file.points, sigma, kind, &budget)?;
            let list = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
            let _ = writeln!(out, "quality={}", w.quality);
            let _ = writeln!(out, "first={}", list(&w.first));
            let _ = writeln!(out, "second={}", list(&w.second));
        }
        OracleQuery::MinBall { alpha, input, max_n } => {
            let file = read_points(&input)?;
            let budget = OracleBudget {
                max_n_ball: max_n.unwrap_or(defaults.max_n_ball),
                ..defaults
            };
            let r = exact_min_ball_alpha(&file.points, alpha, &budget)?;
            let _ = writeln!(out, "radius={}", format_g17(r));
        }
        OracleQuery::ThreeColor { sigma, input } => {
            let inst = read_points(&input)?.to_instance()?;
            let _ = writeln!(out, "hopeless={}", check_three_color_hopeless(&inst, sigma));
        }
    }
    Ok(EXIT_OK)
}

fn bench(suite: &str, path: Option<&Path>, out: &mut dyn Write) -> Outcome {
    if suite != "default" {
        return Err(Failure::usage(format!("unknown suite `{suite}`")));
    }
    let rows = bench::run_suite(&bench::default_suite())?;
    emit(&bench::render_csv(&rows), path, out)?;
    let all_verified = rows.iter().all(|r| r.verified);
    Ok(if all_verified { EXIT_OK } else { EXIT_VERIFY_FAILED })
}
