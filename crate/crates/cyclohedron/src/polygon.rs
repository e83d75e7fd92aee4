//! The labeled convex polygon underlying everything else.
//!
//! A dimension `d >= 1` fixes a convex polygon with `n = 2d + 2` vertices,
//! labeled `0..n` clockwise. Vertex `x + d + 1 (mod n)` is *opposite* `x`;
//! writing `x̄` for it, central symmetry maps each edge `{x, y}` to its
//! mirror `{x̄, ȳ}`. Chords joining opposite vertices are *diagonals* (they
//! pass through the center); all other non-boundary chords come in mirror
//! pairs.

use std::fmt;

use crate::error::{Error, Result};

/// A polygon vertex label. Always interpreted modulo the vertex count of the
/// ambient [`PolygonDim`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vertex(pub u16);

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl From<u16> for Vertex {
    fn from(v: u16) -> Self {
        Vertex(v)
    }
}

/// An unordered pair of distinct vertices, stored with the smaller label
/// first. Orders lexicographically, which every deterministic tie-break in
/// the crate relies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    u: Vertex,
    v: Vertex,
}

impl Edge {
    /// Builds the edge `{u, v}`, normalizing the endpoint order.
    ///
    /// Panics if `u == v`; degenerate edges never arise from in-range inputs
    /// and indicate a logic error at the call site.
    pub fn new(u: impl Into<Vertex>, v: impl Into<Vertex>) -> Edge {
        let (u, v) = (u.into(), v.into());
        assert_ne!(u, v, "degenerate edge {{{u}, {v}}}");
        if u < v {
            Edge { u, v }
        } else {
            Edge { u: v, v: u }
        }
    }

    pub fn lo(&self) -> Vertex {
        self.u
    }

    pub fn hi(&self) -> Vertex {
        self.v
    }

    pub fn endpoints(&self) -> [Vertex; 2] {
        [self.u, self.v]
    }

    pub fn contains(&self, x: Vertex) -> bool {
        self.u == x || self.v == x
    }

    pub fn shares_endpoint(&self, other: Edge) -> bool {
        self.contains(other.u) || self.contains(other.v)
    }

    /// The endpoint other than `x`. Panics if `x` is not an endpoint.
    pub fn other(&self, x: Vertex) -> Vertex {
        if self.u == x {
            self.v
        } else {
            assert_eq!(self.v, x, "vertex {x} not an endpoint of {self}");
            self.u
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}, {}}}", self.u, self.v)
    }
}

/// How an edge sits in the polygon: a side, a chord through the center, or an
/// ordinary chord (whose mirror is a different chord).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeKind {
    Boundary,
    Diagonal,
    Interior,
}

/// The dimension parameter. Wraps `d` and caches `n = 2d + 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PolygonDim {
    d: u16,
    n: u16,
}

impl PolygonDim {
    /// Maximum `d` for which triangulations can be packed into fixed-width
    /// bit keys (the search and canonicalization machinery needs `n <= 32`).
    pub const MAX_KEYED: u16 = 15;

    pub fn new(d: u16) -> Result<PolygonDim> {
        if d == 0 || d > (u16::MAX - 2) / 2 {
            return Err(Error::InvalidDimension(d as u32));
        }
        Ok(PolygonDim { d, n: 2 * d + 2 })
    }

    pub fn d(&self) -> u16 {
        self.d
    }

    /// Vertex count `2d + 2`.
    pub fn n(&self) -> u16 {
        self.n
    }

    /// Interior edge count of any centrally symmetric triangulation: `2d - 1`.
    pub fn interior_count(&self) -> usize {
        2 * self.d as usize - 1
    }

    pub fn check_vertex(&self, x: Vertex) -> Result<Vertex> {
        if x.0 < self.n {
            Ok(x)
        } else {
            Err(Error::VertexOutOfRange {
                vertex: x.0,
                n: self.n,
            })
        }
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> {
        (0..self.n).map(Vertex)
    }

    /// Reduces an arbitrary integer to a vertex label.
    pub fn wrap(&self, x: i64) -> Vertex {
        Vertex(x.rem_euclid(self.n as i64) as u16)
    }

    /// The antipodal vertex `x + d + 1 (mod n)`.
    pub fn opposite(&self, x: Vertex) -> Vertex {
        self.wrap(x.0 as i64 + self.d as i64 + 1)
    }

    /// Clockwise successor `x + 1 (mod n)`.
    pub fn next(&self, x: Vertex) -> Vertex {
        self.wrap(x.0 as i64 + 1)
    }

    /// Clockwise predecessor `x - 1 (mod n)`.
    pub fn prev(&self, x: Vertex) -> Vertex {
        self.wrap(x.0 as i64 - 1)
    }

    /// The mirror edge `{x̄, ȳ}`. Diagonals are their own mirror.
    pub fn mirror(&self, e: Edge) -> Edge {
        Edge::new(self.opposite(e.lo()), self.opposite(e.hi()))
    }

    /// For a mirror pair, the lexicographically smaller of `e` and `ē`; the
    /// canonical name of the pair.
    pub fn pair_rep(&self, e: Edge) -> Edge {
        e.min(self.mirror(e))
    }

    pub fn classify(&self, e: Edge) -> EdgeKind {
        let gap = e.hi().0 - e.lo().0;
        if gap == 1 || gap == self.n - 1 {
            EdgeKind::Boundary
        } else if gap == self.d + 1 {
            EdgeKind::Diagonal
        } else {
            EdgeKind::Interior
        }
    }

    pub fn is_diagonal(&self, e: Edge) -> bool {
        self.classify(e) == EdgeKind::Diagonal
    }

    pub fn is_boundary(&self, e: Edge) -> bool {
        self.classify(e) == EdgeKind::Boundary
    }

    /// Strict crossing test for chords of the polygon. Chords sharing an
    /// endpoint do not cross; a chord never crosses itself.
    pub fn edges_cross(&self, e1: Edge, e2: Edge) -> bool {
        if e1.shares_endpoint(e2) {
            return false;
        }
        // With endpoints normalized to 0..n, e1 splits the label line at
        // (lo, hi); e2 crosses it iff exactly one of its endpoints lies
        // strictly between them.
        let inside = |x: Vertex| e1.lo() < x && x < e1.hi();
        inside(e2.lo()) != inside(e2.hi())
    }
}

/// An element of the dihedral symmetry group of the labeled polygon:
/// `x -> shift + x` or `x -> shift - x`, modulo `n`. These are exactly the
/// relabelings that preserve central symmetry.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DihedralMap {
    pub shift: u16,
    pub reflect: bool,
}

impl DihedralMap {
    pub fn identity() -> DihedralMap {
        DihedralMap {
            shift: 0,
            reflect: false,
        }
    }

    pub fn rotation(shift: u16) -> DihedralMap {
        DihedralMap {
            shift,
            reflect: false,
        }
    }

    pub fn reflection(shift: u16) -> DihedralMap {
        DihedralMap {
            shift,
            reflect: true,
        }
    }

    /// All `2n` elements of the group, rotations first.
    pub fn all(dim: PolygonDim) -> impl Iterator<Item = DihedralMap> {
        (0..dim.n())
            .map(DihedralMap::rotation)
            .chain((0..dim.n()).map(DihedralMap::reflection))
    }

    pub fn apply(&self, dim: PolygonDim, x: Vertex) -> Vertex {
        if self.reflect {
            dim.wrap(self.shift as i64 - x.0 as i64)
        } else {
            dim.wrap(self.shift as i64 + x.0 as i64)
        }
    }

    pub fn apply_edge(&self, dim: PolygonDim, e: Edge) -> Edge {
        Edge::new(self.apply(dim, e.lo()), self.apply(dim, e.hi()))
    }

    /// The group inverse: reflections are involutions, a rotation by `s`
    /// undoes as a rotation by `n - s`.
    pub fn inverse_for(&self, dim: PolygonDim) -> DihedralMap {
        if self.reflect {
            DihedralMap {
                shift: dim.wrap(self.shift as i64).0,
                reflect: true,
            }
        } else {
            DihedralMap {
                shift: dim.wrap(-(self.shift as i64)).0,
                reflect: false,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dim(d: u16) -> PolygonDim {
        PolygonDim::new(d).unwrap()
    }

    #[test]
    fn dimension_bounds() {
        assert_eq!(PolygonDim::new(0), Err(Error::InvalidDimension(0)));
        assert_eq!(dim(1).n(), 4);
        assert_eq!(dim(13).n(), 28);
    }

    #[test]
    fn opposite_examples() {
        assert_eq!(dim(2).opposite(Vertex(1)), Vertex(4));
        assert_eq!(dim(4).opposite(Vertex(0)), Vertex(5));
    }

    #[test]
    fn opposite_is_an_involution() {
        for d in 1..=9 {
            let dim = dim(d);
            for x in dim.vertices() {
                assert_eq!(dim.opposite(dim.opposite(x)), x);
            }
        }
    }

    #[test]
    fn crossing_examples() {
        let h = dim(2);
        assert!(h.edges_cross(Edge::new(0u16, 3u16), Edge::new(1u16, 4u16)));
        assert!(!h.edges_cross(Edge::new(0u16, 3u16), Edge::new(3u16, 5u16)));
        assert!(!h.edges_cross(Edge::new(0u16, 2u16), Edge::new(3u16, 5u16)));
    }

    #[test]
    fn crossing_is_symmetric_and_irreflexive() {
        let h = dim(3);
        let mut chords = vec![];
        for u in 0..h.n() {
            for v in (u + 1)..h.n() {
                let e = Edge::new(u, v);
                if !h.is_boundary(e) {
                    chords.push(e);
                }
            }
        }
        for &a in &chords {
            assert!(!h.edges_cross(a, a));
            for &b in &chords {
                assert_eq!(h.edges_cross(a, b), h.edges_cross(b, a));
            }
        }
    }

    #[test]
    fn classify_by_gap() {
        let h = dim(2);
        assert_eq!(h.classify(Edge::new(0u16, 1u16)), EdgeKind::Boundary);
        assert_eq!(h.classify(Edge::new(0u16, 5u16)), EdgeKind::Boundary);
        assert_eq!(h.classify(Edge::new(0u16, 3u16)), EdgeKind::Diagonal);
        assert_eq!(h.classify(Edge::new(0u16, 2u16)), EdgeKind::Interior);
    }

    #[test]
    fn mirror_pairs() {
        let h = dim(2);
        assert_eq!(h.mirror(Edge::new(0u16, 2u16)), Edge::new(3u16, 5u16));
        assert_eq!(h.mirror(Edge::new(0u16, 3u16)), Edge::new(0u16, 3u16));
    }

    #[test]
    fn dihedral_maps_compose_with_inverse() {
        // Spans both power-of-two and non-power-of-two vertex counts.
        for d in 1..=5 {
            let h = dim(d);
            for m in DihedralMap::all(h) {
                let inv = m.inverse_for(h);
                for x in h.vertices() {
                    assert_eq!(inv.apply(h, m.apply(h, x)), x);
                    assert_eq!(m.apply(h, inv.apply(h, x)), x);
                }
            }
        }
    }

    #[test]
    fn dihedral_maps_commute_with_mirror() {
        let h = dim(4);
        let e = Edge::new(1u16, 3u16);
        for m in DihedralMap::all(h) {
            assert_eq!(h.mirror(m.apply_edge(h, e)), m.apply_edge(h, h.mirror(e)));
        }
    }
}
