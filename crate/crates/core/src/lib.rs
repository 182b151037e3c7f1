//! Large separated clusters in Euclidean point sets.
//!
//! Given a point set (or k colored point sets) and a separation factor σ,
//! the [`algorithms`] module extracts k disjoint clusters that are strongly,
//! well, or semi separated, trying to make the smallest cluster as large as
//! possible. Every returned clustering has been checked by
//! [`separation::check_separation`].
//!
//! ```
//! use sepclust::algorithms::{semi_separated_k, ExtractionConfig};
//! use sepclust::geometry::PointSet;
//!
//! let points = PointSet::from_values(&[0.0, 1.0, 2.0, 100.0, 101.0, 102.0]).unwrap();
//! let clustering = semi_separated_k(&points, &ExtractionConfig::auto(2, 1.0)).unwrap();
//! assert_eq!(clustering.quality(), 3);
//! ```

pub mod algorithms;
pub mod cli;
pub mod error;
pub mod generators;
pub mod geometry;
pub mod oracle;
pub mod quorum;
pub mod separation;
mod spatial;

pub use error::{Error, Result};
pub use geometry::{Ball, Point, PointSet};
pub use separation::{Clustering, SeparationKind};
