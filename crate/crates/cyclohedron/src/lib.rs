//! Centrally symmetric triangulations of convex polygons and the flip
//! distances between them.
//!
//! A convex polygon with `2d + 2` vertices, labeled clockwise so that
//! opposite vertices differ by `d + 1`, admits triangulations that are
//! invariant under the half-turn about the center. These centrally
//! symmetric triangulations, under the flip operation that preserves the
//! symmetry (flipping an interior edge together with its mirror image, or
//! the unique diagonal alone), form the graph of the `d`-dimensional
//! cyclohedron. This crate provides:
//!
//! * exact representations of the triangulations, their validation, a text
//!   format, and exhaustive or random enumeration ([`triangulation`],
//!   [`format`], [`enumerate`]);
//! * the symmetric flip, flip paths, and exact distance, eccentricity, and
//!   diameter computations by symmetry-reduced breadth-first search
//!   ([`flip`], [`path`], [`search`]);
//! * explicit constructions — fans, their transformations, and the
//!   distant pairs behind the known distance lower bounds — together with
//!   exact bound evaluators ([`constructions`], [`abcd`], [`bounds`]);
//! * vertex deletion and empirical checkers for the inequalities that
//!   connect deletion to distances ([`deletion`]).
//!
//! # Quick start
//!
//! ```
//! use cyclohedron::{distance, neighbors, PolygonDim, SearchConfig};
//! use cyclohedron::constructions::fan_triangulation;
//!
//! # fn main() -> cyclohedron::Result<()> {
//! // The hexagon: d = 2, six centrally symmetric triangulations.
//! let dim = PolygonDim::new(2)?;
//! let fan = fan_triangulation(dim);
//!
//! // Every triangulation has exactly d symmetric flips.
//! let moves = neighbors(&fan)?;
//! assert_eq!(moves.len(), 2);
//!
//! // Flip graph distances are exact.
//! let (first_move, neighbor) = &moves[0];
//! let report = distance(&fan, neighbor, &SearchConfig::default(), false)?;
//! assert_eq!(report.value, 1);
//! assert_eq!(first_move.removed, first_move.inverse().introduced);
//! # Ok(())
//! # }
//! ```
//!
//! Triangulations can also be read from and written to a plain text format:
//!
//! ```
//! let t = cyclohedron::format::parse("n 6\n0 2\n0 3\n3 5\n")?;
//! assert_eq!(t.dim().d(), 2);
//! assert_eq!(cyclohedron::format::serialize(&t), "n 6\n0 2\n0 3\n3 5\n");
//! # Ok::<(), cyclohedron::Error>(())
//! ```

pub mod abcd;
pub mod bounds;
pub mod canonical;
pub mod constructions;
pub mod deletion;
pub mod enumerate;
pub mod error;
pub mod flip;
pub mod format;
pub mod path;
pub mod polygon;
pub mod search;
pub mod triangulation;

pub use canonical::{canonical_form, canonical_key, CanonicalKey};
pub use enumerate::{cs_count, enumerate_cs, for_each_cs, sample_cs};
pub use error::{Error, Result};
pub use flip::{flip, neighbors, FlipMove, MoveKind};
pub use path::FlipPath;
pub use polygon::{DihedralMap, Edge, PolygonDim, Vertex};
pub use search::{diameter, distance, eccentricity, DistanceReport, FlipGraph, SearchConfig};
pub use triangulation::{CsTriangulation, StateKey};
