//! The points file and clustering file formats.
//!
//! Points file: an optional header `# dim=<d> colored=<0|1>`, then one point
//! per line as whitespace-separated decimals, preceded by an integer color
//! when colored. Other `#` lines and blank lines are ignored. Coordinates are
//! written with 17 significant digits, so a write/read cycle is bit-exact.
//!
//! Clustering file: pretty-printed JSON, cluster indices zero-based into the
//! points file's order.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::algorithms::ColoredInstance;
use crate::error::{Error, Result};
use crate::geometry::{Ball, PointSet};
use crate::separation::{Clustering, SeparationKind};

/// `x` as C's `%.17g` would print it.
pub fn format_g17(x: f64) -> String {
    if !x.is_finite() {
        return if x.is_nan() { "nan".into() } else if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let sci = format!("{x:.16e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..17).contains(&exp) {
        let mantissa = strip_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        return format!("{mantissa}e{sign}{:02}", exp.abs());
    }
    strip_zeros(&format!("{:.*}", (16 - exp) as usize, x)).to_string()
}

fn strip_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PointsFile {
    pub points: PointSet,
    pub colors: Option<Vec<usize>>,
}

impl PointsFile {
    pub fn plain(points: PointSet) -> Self {
        Self { points, colors: None }
    }

    pub fn colored(instance: &ColoredInstance) -> Self {
        Self {
            points: instance.points().clone(),
            colors: Some(instance.colors().to_vec()),
        }
    }

    pub fn is_colored(&self) -> bool {
        self.colors.is_some()
    }

    pub fn to_instance(&self) -> Result<ColoredInstance> {
        let colors = self
            .colors
            .clone()
            .ok_or_else(|| Error::InvalidParameter("points file is not colored".into()))?;
        ColoredInstance::from_labeled(self.points.clone(), colors)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut dim: Option<usize> = None;
        let mut colored: Option<bool> = None;
        let mut coords = Vec::new();
        let mut colors = Vec::new();
        let mut rows = 0;
        for (number, raw) in text.lines().enumerate() {
            let line = number + 1;
            let parse_err = |message: String| Error::Parse { line, message };
            let trimmed = raw.trim();
            if let Some(comment) = trimmed.strip_prefix('#') {
                if rows == 0 && dim.is_none() && comment.contains("dim=") {
                    for field in comment.split_whitespace() {
                        if let Some(v) = field.strip_prefix("dim=") {
                            dim = Some(v.parse().map_err(|_| parse_err(format!("bad dim `{v}`")))?);
                        } else if let Some(v) = field.strip_prefix("colored=") {
                            colored = Some(match v {
                                "0" => false,
                                "1" => true,
                                _ => return Err(parse_err(format!("bad colored flag `{v}`"))),
                            });
                        }
                    }
                }
                continue;
            }
            if trimmed.is_empty() {
                continue;
            }
            let fields: Vec<&str> = trimmed.split_whitespace().collect();
            let is_colored = *colored.get_or_insert(false);
            let d = *dim.get_or_insert(fields.len() - usize::from(is_colored));
            if fields.len() != d + usize::from(is_colored) {
                return Err(parse_err(format!(
                    "expected {} fields, found {}",
                    d + usize::from(is_colored),
                    fields.len()
                )));
            }
            let mut values = fields.iter();
            if is_colored {
                let c = values.next().expect("field count checked");
                colors.push(c.parse().map_err(|_| parse_err(format!("bad color `{c}`")))?);
            }
            for v in values {
                let x: f64 = v.parse().map_err(|_| parse_err(format!("bad number `{v}`")))?;
                if !x.is_finite() {
                    return Err(parse_err(format!("non-finite number `{v}`")));
                }
                coords.push(x);
            }
            rows += 1;
        }
        let dim = dim.filter(|&d| d > 0).ok_or(Error::Parse {
            line: 0,
            message: "cannot determine a positive dimension".into(),
        })?;
        let points = PointSet::from_flat(dim, coords)?;
        if colored == Some(true) {
            let file = Self { points, colors: Some(colors) };
            file.to_instance()?;
            Ok(file)
        } else {
            Ok(Self::plain(points))
        }
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "# dim={} colored={}",
            self.points.dim(),
            u8::from(self.is_colored())
        );
        for (i, p) in self.points.iter().enumerate() {
            let mut fields: Vec<String> = Vec::with_capacity(p.len() + 1);
            if let Some(colors) = &self.colors {
                fields.push(colors[i].to_string());
            }
            fields.extend(p.iter().map(|&x| format_g17(x)));
            s.push_str(&fields.join(" "));
            s.push('\n');
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BallRecord {
    pub center: Vec<f64>,
    pub radius: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClusteringFile {
    pub tool: String,
    pub version: String,
    pub algorithm: String,
    pub kind: SeparationKind,
    pub sigma: f64,
    pub k: usize,
    pub alpha: usize,
    pub seed: Option<u64>,
    pub indexing: String,
    pub quality: usize,
    pub verified: bool,
    pub clusters: Vec<Vec<usize>>,
    #[serde(default)]
    pub balls: Vec<BallRecord>,
}

impl ClusteringFile {
    pub fn new(algorithm: &str, clustering: &Clustering, seed: Option<u64>, verified: bool) -> Self {
        Self {
            tool: env!("CARGO_PKG_NAME").into(),
            version: env!("CARGO_PKG_VERSION").into(),
            algorithm: algorithm.into(),
            kind: clustering.kind,
            sigma: clustering.sigma,
            k: clustering.k(),
            alpha: clustering.alpha,
            seed,
            indexing: "zero-based".into(),
            quality: clustering.quality(),
            verified,
            clusters: clustering.clusters.clone(),
            balls: clustering
                .balls
                .iter()
                .map(|b| BallRecord {
                    center: b.center.to_vec(),
                    radius: b.radius,
                })
                .collect(),
        }
    }

    /// The clustering this file describes, checked against `n` points.
    pub fn to_clustering(&self, n: usize) -> Result<Clustering> {
        if self.indexing != "zero-based" {
            return Err(Error::InvalidClustering(format!(
                "unsupported indexing `{}`",
                self.indexing
            )));
        }
        let mut c = Clustering::new(self.clusters.clone(), self.sigma, self.kind, n)?;
        c.alpha = self.alpha;
        c.balls = self
            .balls
            .iter()
            .map(|b| Ball::new(b.center.clone().try_into()?, b.radius))
            .collect::<Result<_>>()?;
        Ok(c)
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            message: e.to_string(),
        })
    }

    pub fn render(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain data serializes");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g17_matches_c() {
        let cases = [
            (3.0, "3"),
            (0.1, "0.10000000000000001"),
            (-2.5, "-2.5"),
            (1e20, "1e+20"),
            (1.5e-5, "1.5e-05"),
            (0.0001, "0.0001"),
            (123456789012345680.0, "1.2345678901234568e+17"),
            (12345678901234567.0, "12345678901234568"),
            (0.0, "0"),
            (1.0 / 3.0, "0.33333333333333331"),
            (f64::INFINITY, "inf"),
        ];
        for (x, expected) in cases {
            assert_eq!(format_g17(x), expected, "{x}");
        }
    }

    #[test]
    fn points_file_parses_both_layouts() {
        let plain = PointsFile::parse("# dim=2 colored=0\n1 2\n3.5 -4\n").unwrap();
        assert_eq!(plain.points.as_flat(), &[1.0, 2.0, 3.5, -4.0]);
        assert!(!plain.is_colored());

        let headerless = PointsFile::parse("# a comment\n1 2 3\n\n4 5 6\n").unwrap();
        assert_eq!(headerless.points.dim(), 3);

        let colored = PointsFile::parse("# dim=1 colored=1\n0 1\n1 5\n0 2\n").unwrap();
        assert_eq!(colored.colors, Some(vec![0, 1, 0]));
        assert_eq!(colored.to_instance().unwrap().k(), 2);
    }

    #[test]
    fn points_file_rejects_bad_input() {
        for text in [
            "# dim=2 colored=0\n1 2\n3\n",
            "1 x\n",
            "# dim=1 colored=1\n0 1\n2 3\n",
            "# dim=1 colored=2\n1\n",
            "# dim=1 colored=0\ninf\n",
            "",
        ] {
            assert!(PointsFile::parse(text).is_err(), "{text:?}");
        }
        match PointsFile::parse("1 2\n3 4 5\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn clustering_file_round_trip() {
        let points = PointSet::from_values(&[0.0, 1.0, 10.0]).unwrap();
        let mut c = Clustering::new(vec![vec![0, 1], vec![2]], 2.0, SeparationKind::Strong, 3).unwrap();
        c.alpha = 2;
        let file = ClusteringFile::new("strong", &c, Some(7), true);
        let back = ClusteringFile::parse(&file.render()).unwrap();
        assert_eq!(back, file);
        assert_eq!(back.to_clustering(points.len()).unwrap(), c);
        assert!(back.to_clustering(2).is_err());
        assert!(file.render().contains("\"indexing\": \"zero-based\""));
    }
}
