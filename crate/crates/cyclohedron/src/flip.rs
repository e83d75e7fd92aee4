//! Flips between centrally symmetric triangulations.
//!
//! An interior edge `e` of a triangulation is the shared side of two
//! triangles forming a quadrilateral; its *apexes* are the two vertices of
//! that quadrilateral off `e`. Flipping replaces `e` by the other chord of
//! the quadrilateral. To stay centrally symmetric, a flip acts on a whole
//! mirror class: flipping the diagonal replaces it by the (automatically
//! diagonal) other chord, and flipping an ordinary edge also flips its
//! mirror. Every triangulation thus has exactly `d` moves, one per mirror
//! class, and each move is an involution.
//!
//! # Example
//!
//! ```
//! use cyclohedron::constructions::fan_triangulation;
//! use cyclohedron::{flip, neighbors, MoveKind, PolygonDim};
//!
//! # fn main() -> cyclohedron::Result<()> {
//! let fan = fan_triangulation(PolygonDim::new(3)?);
//! let moves = neighbors(&fan)?;
//! assert_eq!(moves.len(), 3);
//! let diagonal_moves = moves.iter().filter(|(m, _)| m.kind == MoveKind::Diagonal);
//! assert_eq!(diagonal_moves.count(), 1);
//!
//! // Flipping the edge a move introduced leads straight back.
//! let (mv, t) = &moves[0];
//! let (back, home) = flip(t, mv.introduced)?;
//! assert_eq!(home, fan);
//! assert_eq!(back, mv.inverse());
//! # Ok(())
//! # }
//! ```

use std::fmt;

use crate::error::{Error, Result};
use crate::polygon::{Edge, EdgeKind, Vertex};
use crate::triangulation::{Adjacency, CsTriangulation};

/// Whether a move exchanges the diagonal or a mirror pair of chords.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MoveKind {
    Diagonal,
    MirrorPair,
}

/// One flip, named by the mirror-class representatives it removes and
/// introduces (the lexicographically smaller edge of each class).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FlipMove {
    pub kind: MoveKind,
    pub removed: Edge,
    pub introduced: Edge,
}

impl FlipMove {
    /// The move undoing this one.
    pub fn inverse(&self) -> FlipMove {
        FlipMove {
            kind: self.kind,
            removed: self.introduced,
            introduced: self.removed,
        }
    }
}

impl fmt::Display for FlipMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", self.removed, self.introduced)
    }
}

/// The two apexes over the interior edge `e`, in increasing label order.
pub fn flip_quadrilateral(t: &CsTriangulation, e: Edge) -> Result<(Vertex, Vertex)> {
    let adj = t.adjacency()?;
    quad_apexes(t, &adj, e)
}

fn quad_apexes(t: &CsTriangulation, adj: &Adjacency, e: Edge) -> Result<(Vertex, Vertex)> {
    if !t.contains(e) || t.dim().classify(e) == EdgeKind::Boundary {
        return Err(Error::NotInteriorEdge { edge: e });
    }
    let mut apexes = adj.apexes(e);
    let y = apexes.next();
    let y2 = apexes.next();
    match (y, y2, apexes.next()) {
        (Some(y), Some(y2), None) => Ok((y, y2)),
        // Unreachable on valid input: every interior edge of a triangulation
        // flanks exactly two triangles.
        _ => Err(Error::NotInteriorEdge { edge: e }),
    }
}

/// Flips the mirror class of `e`. Accepts either member of the class, so
/// `flip(t, e)` and `flip(t, ē)` agree.
pub fn flip(t: &CsTriangulation, e: Edge) -> Result<(FlipMove, CsTriangulation)> {
    let adj = t.adjacency()?;
    flip_with_adj(t, &adj, e)
}

fn flip_with_adj(
    t: &CsTriangulation,
    adj: &Adjacency,
    e: Edge,
) -> Result<(FlipMove, CsTriangulation)> {
    let dim = t.dim();
    let (y, y2) = quad_apexes(t, adj, e)?;
    let introduced = Edge::new(y, y2);
    let mut edges: Vec<Edge> = Vec::with_capacity(t.interior().len());

    let (kind, removed_class, introduced_rep) = if dim.is_diagonal(e) {
        // The apexes of the diagonal are opposite each other, so the new
        // chord is again a diagonal.
        debug_assert_eq!(dim.opposite(y), y2);
        (MoveKind::Diagonal, [e, e], introduced)
    } else {
        (
            MoveKind::MirrorPair,
            [e, dim.mirror(e)],
            dim.pair_rep(introduced),
        )
    };

    for &old in t.interior() {
        if old != removed_class[0] && old != removed_class[1] {
            edges.push(old);
        }
    }
    edges.push(introduced);
    if kind == MoveKind::MirrorPair {
        edges.push(dim.mirror(introduced));
    }
    let result = CsTriangulation::new(dim, edges);
    debug_assert!(result.is_valid(), "flip of {e} broke {t}: {result}");

    let mv = FlipMove {
        kind,
        removed: dim.pair_rep(e),
        introduced: introduced_rep,
    };
    Ok((mv, result))
}

/// All `d` flip moves out of `t`, sorted by removed representative, with the
/// resulting triangulations.
pub fn neighbors(t: &CsTriangulation) -> Result<Vec<(FlipMove, CsTriangulation)>> {
    let dim = t.dim();
    let adj = t.adjacency()?;
    let mut out = Vec::with_capacity(dim.d() as usize);
    for &e in t.interior() {
        if dim.pair_rep(e) == e {
            out.push(flip_with_adj(t, &adj, e)?);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::enumerate_cs;
    use crate::polygon::PolygonDim;
    use crate::triangulation::triangulation;

    fn dim(d: u16) -> PolygonDim {
        PolygonDim::new(d).unwrap()
    }

    fn hexagon_fan() -> CsTriangulation {
        triangulation(dim(2), &[(0, 3), (0, 2), (3, 5)])
    }

    #[test]
    fn quadrilateral_of_ordinary_edge() {
        let (y, y2) = flip_quadrilateral(&hexagon_fan(), Edge::new(0u16, 2u16)).unwrap();
        assert_eq!((y, y2), (Vertex(1), Vertex(3)));
    }

    #[test]
    fn quadrilateral_rejects_non_edges() {
        let t = hexagon_fan();
        assert!(matches!(
            flip_quadrilateral(&t, Edge::new(1u16, 4u16)),
            Err(Error::NotInteriorEdge { .. })
        ));
        assert!(matches!(
            flip_quadrilateral(&t, Edge::new(0u16, 1u16)),
            Err(Error::NotInteriorEdge { .. })
        ));
    }

    #[test]
    fn mirror_pair_flip() {
        let (mv, s) = flip(&hexagon_fan(), Edge::new(0u16, 2u16)).unwrap();
        assert_eq!(s, triangulation(dim(2), &[(1, 3), (0, 3), (0, 4)]));
        assert_eq!(mv.kind, MoveKind::MirrorPair);
        assert_eq!(mv.removed, Edge::new(0u16, 2u16));
        assert_eq!(
            mv.introduced,
            Edge::new(0u16, 4u16).min(Edge::new(1u16, 3u16))
        );
    }

    #[test]
    fn diagonal_flip() {
        let (mv, s) = flip(&hexagon_fan(), Edge::new(0u16, 3u16)).unwrap();
        assert_eq!(s, triangulation(dim(2), &[(2, 5), (0, 2), (3, 5)]));
        assert_eq!(mv.kind, MoveKind::Diagonal);
    }

    #[test]
    fn flip_agrees_on_both_class_members() {
        let t = hexagon_fan();
        let a = flip(&t, Edge::new(0u16, 2u16)).unwrap();
        let b = flip(&t, Edge::new(3u16, 5u16)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn involution_exhaustive_small() {
        for d in 1..=4 {
            for t in enumerate_cs(dim(d), 1 << 20).unwrap() {
                for (mv, s) in neighbors(&t).unwrap() {
                    let (back, t2) = flip(&s, mv.introduced).unwrap();
                    assert_eq!(t2, t);
                    assert_eq!(back, mv.inverse());
                }
            }
        }
    }

    #[test]
    fn degree_and_distinctness_exhaustive_small() {
        for d in 1..=5 {
            for t in enumerate_cs(dim(d), 1 << 20).unwrap() {
                let nbrs = neighbors(&t).unwrap();
                assert_eq!(nbrs.len(), d as usize);
                let mut states: Vec<_> = nbrs.iter().map(|(_, s)| s.clone()).collect();
                states.sort();
                states.dedup();
                assert_eq!(states.len(), d as usize, "coinciding neighbors of {t}");
                for (_, s) in &nbrs {
                    assert!(s.is_valid());
                    assert_ne!(s, &t);
                }
            }
        }
    }

    #[test]
    fn exactly_one_diagonal_move() {
        for t in enumerate_cs(dim(3), 100).unwrap() {
            let nbrs = neighbors(&t).unwrap();
            let diagonal_moves = nbrs
                .iter()
                .filter(|(mv, _)| mv.kind == MoveKind::Diagonal)
                .count();
            assert_eq!(diagonal_moves, 1);
        }
    }

    #[test]
    fn flips_commute_with_relabeling() {
        use crate::polygon::DihedralMap;
        for t in enumerate_cs(dim(3), 100).unwrap() {
            for map in [DihedralMap::rotation(3), DihedralMap::reflection(1)] {
                let mut direct: Vec<_> = neighbors(&t.relabel(map))
                    .unwrap()
                    .into_iter()
                    .map(|(_, s)| s)
                    .collect();
                let mut mapped: Vec<_> = neighbors(&t)
                    .unwrap()
                    .into_iter()
                    .map(|(_, s)| s.relabel(map))
                    .collect();
                direct.sort();
                mapped.sort();
                assert_eq!(direct, mapped);
            }
        }
    }
}
