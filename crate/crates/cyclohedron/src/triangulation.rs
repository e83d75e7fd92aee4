//! Centrally symmetric triangulations and their validity report.
//!
//! A triangulation of the `(2d+2)`-gon is *centrally symmetric* when its edge
//! set is closed under the mirror map. Such a triangulation has exactly
//! `2d - 1` interior edges: `d - 1` mirror pairs plus exactly one diagonal.
//! Only interior edges are stored; polygon sides are implicit.
//!
//! # Example
//!
//! ```
//! use cyclohedron::{CsTriangulation, Edge, PolygonDim, Vertex};
//!
//! # fn main() -> cyclohedron::Result<()> {
//! let dim = PolygonDim::new(2)?;
//! // The hexagon triangulation with diagonal {0, 3} and the edge {0, 2}
//! // plus its mirror {3, 5}.
//! let t = CsTriangulation::new(
//!     dim,
//!     vec![
//!         Edge::new(Vertex(0), Vertex(2)),
//!         Edge::new(Vertex(0), Vertex(3)),
//!         Edge::new(Vertex(3), Vertex(5)),
//!     ],
//! );
//! assert!(t.validate().is_valid());
//! assert_eq!(t.diagonal(), Some(Edge::new(Vertex(0), Vertex(3))));
//! # Ok(())
//! # }
//! ```

use std::fmt;

use crate::error::{Error, Result};
use crate::polygon::{DihedralMap, Edge, EdgeKind, PolygonDim, Vertex};

/// A centrally symmetric triangulation, stored as its sorted interior edge
/// list. Construction does not validate; see [`CsTriangulation::validate`].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CsTriangulation {
    dim: PolygonDim,
    interior: Box<[Edge]>,
}

impl CsTriangulation {
    /// Builds a triangulation from an arbitrary edge list; edges are sorted
    /// and deduplicated. Validity is a separate question.
    pub fn new(dim: PolygonDim, mut interior: Vec<Edge>) -> CsTriangulation {
        interior.sort_unstable();
        interior.dedup();
        CsTriangulation {
            dim,
            interior: interior.into_boxed_slice(),
        }
    }

    pub fn dim(&self) -> PolygonDim {
        self.dim
    }

    /// Interior edges, sorted lexicographically.
    pub fn interior(&self) -> &[Edge] {
        &self.interior
    }

    pub fn contains(&self, e: Edge) -> bool {
        self.interior.binary_search(&e).is_ok()
    }

    /// The unique diagonal. Valid triangulations have exactly one; on invalid
    /// input this returns the first one found.
    pub fn diagonal(&self) -> Option<Edge> {
        self.interior
            .iter()
            .copied()
            .find(|&e| self.dim.is_diagonal(e))
    }

    /// Checks every defining property and reports all violations found.
    pub fn validate(&self) -> ValidationReport {
        let dim = self.dim;
        let mut violations = Vec::new();

        for &e in self.interior.iter() {
            if e.hi().0 >= dim.n() {
                violations.push(Violation::VertexOutOfRange { edge: e });
            } else if dim.classify(e) == EdgeKind::Boundary {
                violations.push(Violation::BoundaryEdgeListed { edge: e });
            }
        }
        if violations
            .iter()
            .any(|v| matches!(v, Violation::VertexOutOfRange { .. }))
        {
            // Range errors poison the remaining checks; report them alone.
            return ValidationReport { violations };
        }

        let expected = dim.interior_count();
        if self.interior.len() != expected {
            violations.push(Violation::WrongEdgeCount {
                expected,
                got: self.interior.len(),
            });
        }

        for &e in self.interior.iter() {
            let m = dim.mirror(e);
            if !self.contains(m) {
                violations.push(Violation::MirrorMissing { edge: e, mirror: m });
            }
        }

        for (i, &a) in self.interior.iter().enumerate() {
            for &b in &self.interior[i + 1..] {
                if dim.edges_cross(a, b) {
                    violations.push(Violation::Crossing { e1: a, e2: b });
                }
            }
        }

        let diagonals: Vec<Edge> = self
            .interior
            .iter()
            .copied()
            .filter(|&e| dim.is_diagonal(e))
            .collect();
        if diagonals.len() != 1 {
            violations.push(Violation::DiagonalCount { diagonals });
        }

        ValidationReport { violations }
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_valid()
    }

    /// Vertex adjacency over interior edges *and* polygon sides. Requires
    /// `n <= 32`; everything downstream of flips works through this.
    pub fn adjacency(&self) -> Result<Adjacency> {
        let dim = self.dim;
        if dim.n() > 32 {
            return Err(Error::DimensionTooLarge {
                got: dim.d(),
                max: PolygonDim::MAX_KEYED,
            });
        }
        let mut masks = [0u32; 32];
        let mut link = |a: Vertex, b: Vertex| {
            masks[a.0 as usize] |= 1 << b.0;
            masks[b.0 as usize] |= 1 << a.0;
        };
        for x in dim.vertices() {
            link(x, dim.next(x));
        }
        for &e in self.interior.iter() {
            link(e.lo(), e.hi());
        }
        Ok(Adjacency { masks })
    }

    /// Packs the interior edge set into a fixed-width bit string, one bit per
    /// vertex pair. Equal keys mean equal triangulations of the same
    /// dimension. Requires `n <= 32`.
    pub fn bit_key(&self) -> Result<StateKey> {
        if self.dim.n() > 32 {
            return Err(Error::DimensionTooLarge {
                got: self.dim.d(),
                max: PolygonDim::MAX_KEYED,
            });
        }
        let mut key = StateKey::default();
        for &e in self.interior.iter() {
            key.set(pair_index(e));
        }
        Ok(key)
    }

    /// Inverse of [`CsTriangulation::bit_key`].
    pub fn from_bit_key(dim: PolygonDim, key: StateKey) -> CsTriangulation {
        let mut interior = Vec::with_capacity(dim.interior_count());
        for idx in key.iter_ones() {
            interior.push(edge_of_pair_index(idx));
        }
        CsTriangulation::new(dim, interior)
    }

    /// The image under a dihedral relabeling. Relabelings preserve validity.
    pub fn relabel(&self, map: DihedralMap) -> CsTriangulation {
        let edges = self
            .interior
            .iter()
            .map(|&e| map.apply_edge(self.dim, e))
            .collect();
        CsTriangulation::new(self.dim, edges)
    }
}

impl fmt::Display for CsTriangulation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.interior.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

/// Per-vertex neighbor bitmasks (sides included). The apexes over an edge
/// `{u, v}` are exactly the common neighbors of `u` and `v`: two for an
/// interior edge, one for a polygon side.
pub struct Adjacency {
    masks: [u32; 32],
}

impl Adjacency {
    pub fn neighbors(&self, x: Vertex) -> u32 {
        self.masks[x.0 as usize]
    }

    pub fn common(&self, e: Edge) -> u32 {
        self.masks[e.lo().0 as usize] & self.masks[e.hi().0 as usize]
    }

    pub fn apexes(&self, e: Edge) -> impl Iterator<Item = Vertex> {
        let mut bits = self.common(e);
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let b = bits.trailing_zeros() as u16;
                bits &= bits - 1;
                Some(Vertex(b))
            }
        })
    }
}

/// Fixed-width edge-set bit string for `n <= 32`. Doubles as the hash key in
/// every visited set and as the payload of canonical keys.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StateKey(pub [u64; 8]);

impl StateKey {
    fn set(&mut self, idx: usize) {
        self.0[idx / 64] |= 1 << (idx % 64);
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(w, &word)| {
            let mut bits = word;
            std::iter::from_fn(move || {
                if bits == 0 {
                    None
                } else {
                    let b = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    Some(w * 64 + b)
                }
            })
        })
    }
}

/// Index of the pair `{u, v}`, `u < v`, in the triangular enumeration of all
/// vertex pairs: `v(v-1)/2 + u`.
pub fn pair_index(e: Edge) -> usize {
    let (u, v) = (e.lo().0 as usize, e.hi().0 as usize);
    v * (v - 1) / 2 + u
}

fn edge_of_pair_index(idx: usize) -> Edge {
    let mut v = 1usize;
    while (v + 1) * v / 2 <= idx {
        v += 1;
    }
    let u = idx - v * (v - 1) / 2;
    Edge::new(u as u16, v as u16)
}

/// Outcome of [`CsTriangulation::validate`]: empty means valid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violations(&self) -> &[Violation] {
        &self.violations
    }

    pub fn into_result(self) -> Result<()> {
        if self.is_valid() {
            Ok(())
        } else {
            Err(Error::InvalidTriangulation(self.to_string()))
        }
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return write!(f, "valid");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Violation {
    #[error("edge {edge} has a vertex out of range")]
    VertexOutOfRange { edge: Edge },
    #[error("edge {edge} is a polygon side, not an interior edge")]
    BoundaryEdgeListed { edge: Edge },
    #[error("expected {expected} interior edges, found {got}")]
    WrongEdgeCount { expected: usize, got: usize },
    #[error("edge {edge} present without its mirror {mirror}")]
    MirrorMissing { edge: Edge, mirror: Edge },
    #[error("edges {e1} and {e2} cross")]
    Crossing { e1: Edge, e2: Edge },
    #[error("expected exactly one diagonal, found {}", diagonals.len())]
    DiagonalCount { diagonals: Vec<Edge> },
}

/// Convenience constructor used throughout tests and examples.
pub fn triangulation(dim: PolygonDim, pairs: &[(u16, u16)]) -> CsTriangulation {
    let edges = pairs.iter().map(|&(u, v)| Edge::new(u, v)).collect();
    CsTriangulation::new(dim, edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dim(d: u16) -> PolygonDim {
        PolygonDim::new(d).unwrap()
    }

    #[test]
    fn valid_hexagon_example() {
        let t = triangulation(dim(2), &[(0, 3), (0, 2), (3, 5)]);
        assert!(t.validate().is_valid());
        assert_eq!(t.diagonal(), Some(Edge::new(0u16, 3u16)));
    }

    #[test]
    fn missing_mirror_is_caught_along_with_crossing() {
        // {0, 2} without {3, 5}, plus {1, 4} crossing nothing it should.
        let t = triangulation(dim(2), &[(0, 2), (1, 4), (2, 5)]);
        let report = t.validate();
        assert!(!report.is_valid());
        assert!(report
            .violations()
            .iter()
            .any(|v| matches!(v, Violation::MirrorMissing { .. })));
        assert!(report
            .violations()
            .iter()
            .any(|v| matches!(v, Violation::Crossing { .. })));
    }

    #[test]
    fn square_has_one_interior_edge() {
        let t = triangulation(dim(1), &[(0, 2)]);
        assert!(t.validate().is_valid());
    }

    #[test]
    fn wrong_count_reported() {
        let t = triangulation(dim(2), &[(0, 3)]);
        let report = t.validate();
        assert!(report.violations().iter().any(|v| matches!(
            v,
            Violation::WrongEdgeCount {
                expected: 3,
                got: 1
            }
        )));
    }

    #[test]
    fn two_diagonals_rejected() {
        // Structurally impossible to also be non-crossing; both findings appear.
        let t = triangulation(dim(2), &[(0, 3), (1, 4), (2, 5)]);
        let report = t.validate();
        assert!(report
            .violations()
            .iter()
            .any(|v| matches!(v, Violation::DiagonalCount { .. })));
    }

    #[test]
    fn apexes_of_interior_edge() {
        let t = triangulation(dim(2), &[(0, 3), (0, 2), (3, 5)]);
        let adj = t.adjacency().unwrap();
        let apexes: Vec<Vertex> = adj.apexes(Edge::new(0u16, 2u16)).collect();
        assert_eq!(apexes, vec![Vertex(1), Vertex(3)]);
        let apexes: Vec<Vertex> = adj.apexes(Edge::new(4u16, 5u16)).collect();
        assert_eq!(apexes, vec![Vertex(3)]);
    }

    #[test]
    fn bit_key_roundtrip() {
        let t = triangulation(
            dim(4),
            &[(0, 5), (0, 2), (0, 3), (0, 4), (5, 7), (5, 8), (5, 9)],
        );
        let key = t.bit_key().unwrap();
        assert_eq!(CsTriangulation::from_bit_key(t.dim(), key), t);
    }

    #[test]
    fn pair_index_is_a_bijection() {
        let mut seen = std::collections::HashSet::new();
        for v in 1..32u16 {
            for u in 0..v {
                let e = Edge::new(u, v);
                let idx = pair_index(e);
                assert!(idx < 496);
                assert!(seen.insert(idx));
                assert_eq!(edge_of_pair_index(idx), e);
            }
        }
    }

    #[test]
    fn relabel_preserves_validity() {
        let t = triangulation(dim(3), &[(0, 4), (0, 2), (0, 3), (4, 6), (4, 7)]);
        assert!(t.is_valid());
        for map in DihedralMap::all(t.dim()) {
            assert!(t.relabel(map).is_valid());
        }
    }
}
