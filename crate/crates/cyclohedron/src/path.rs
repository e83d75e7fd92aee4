//! Flip paths: walks in the flip graph with their moves recorded.

use crate::error::{Error, Result};
use crate::flip::{flip, FlipMove};
use crate::polygon::{DihedralMap, Edge, EdgeKind, PolygonDim, Vertex};
use crate::triangulation::CsTriangulation;

/// A walk `states[0] -> states[1] -> ...` where consecutive states differ by
/// the recorded move. Always holds at least one state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlipPath {
    states: Vec<CsTriangulation>,
    moves: Vec<FlipMove>,
}

impl FlipPath {
    pub fn trivial(t: CsTriangulation) -> FlipPath {
        FlipPath {
            states: vec![t],
            moves: Vec::new(),
        }
    }

    /// Reconstructs moves from a state sequence by diffing edge sets; fails
    /// if some consecutive states do not differ by a single flip.
    pub fn from_states(states: Vec<CsTriangulation>) -> Result<FlipPath> {
        let mut path = FlipPath::trivial(
            states
                .first()
                .cloned()
                .ok_or_else(|| Error::InvalidTriangulation("empty path".into()))?,
        );
        for next in states.into_iter().skip(1) {
            let prev = path.end();
            let removed: Vec<Edge> = prev
                .interior()
                .iter()
                .copied()
                .filter(|&e| !next.contains(e))
                .collect();
            let rep = removed
                .iter()
                .copied()
                .min()
                .ok_or_else(|| Error::InvalidTriangulation(format!("{prev} repeats")))?;
            let (mv, got) = flip(prev, rep)?;
            if got != next {
                return Err(Error::InvalidTriangulation(format!(
                    "{prev} and {next} do not differ by one flip"
                )));
            }
            path.states.push(next);
            path.moves.push(mv);
        }
        Ok(path)
    }

    pub fn dim(&self) -> PolygonDim {
        self.states[0].dim()
    }

    /// Number of flips (one less than the number of states).
    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    pub fn start(&self) -> &CsTriangulation {
        &self.states[0]
    }

    pub fn end(&self) -> &CsTriangulation {
        self.states.last().expect("paths are nonempty")
    }

    pub fn states(&self) -> &[CsTriangulation] {
        &self.states
    }

    pub fn moves(&self) -> &[FlipMove] {
        &self.moves
    }

    /// Extends the path by flipping `e` in the current end state.
    pub fn push_flip(&mut self, e: Edge) -> Result<&CsTriangulation> {
        let (mv, next) = flip(self.end(), e)?;
        self.states.push(next);
        self.moves.push(mv);
        Ok(self.end())
    }

    /// Full integrity check: every state valid, every step a real flip
    /// matching its recorded move.
    pub fn validate(&self) -> Result<()> {
        for s in &self.states {
            s.validate().into_result()?;
            if s.dim() != self.dim() {
                return Err(Error::DimMismatch(self.dim().d(), s.dim().d()));
            }
        }
        for (i, mv) in self.moves.iter().enumerate() {
            let (got_mv, got) = flip(&self.states[i], mv.removed)?;
            if got != self.states[i + 1] || got_mv != *mv {
                return Err(Error::InvalidTriangulation(format!(
                    "step {i} does not match its move {mv}"
                )));
            }
        }
        Ok(())
    }

    /// The same walk traversed backwards.
    pub fn reversed(&self) -> FlipPath {
        FlipPath {
            states: self.states.iter().rev().cloned().collect(),
            moves: self.moves.iter().rev().map(FlipMove::inverse).collect(),
        }
    }

    /// Concatenation; `other` must start where `self` ends.
    pub fn then(mut self, other: FlipPath) -> Result<FlipPath> {
        if self.end() != other.start() {
            return Err(Error::InvalidTriangulation(
                "concatenated paths do not share an endpoint".into(),
            ));
        }
        self.states.extend(other.states.into_iter().skip(1));
        self.moves.extend(other.moves);
        Ok(self)
    }

    pub fn relabel(&self, map: DihedralMap) -> FlipPath {
        let dim = self.dim();
        FlipPath {
            states: self.states.iter().map(|s| s.relabel(map)).collect(),
            moves: self
                .moves
                .iter()
                .map(|mv| FlipMove {
                    kind: mv.kind,
                    removed: dim.pair_rep(map.apply_edge(dim, mv.removed)),
                    introduced: dim.pair_rep(map.apply_edge(dim, mv.introduced)),
                })
                .collect(),
        }
    }
}

/// The apex over a polygon side `{p, q}`: the third vertex of the unique
/// triangle resting on that side.
pub fn boundary_apex(t: &CsTriangulation, side: Edge) -> Result<Vertex> {
    if t.dim().classify(side) != EdgeKind::Boundary {
        return Err(Error::NotBoundaryEdge { edge: side });
    }
    let adj = t.adjacency()?;
    let mut apexes = adj.apexes(side);
    let apex = apexes.next().expect("every side supports a triangle");
    debug_assert!(apexes.next().is_none());
    Ok(apex)
}

/// Counts the flips along `path` that move the triangle resting on the
/// polygon side `{p, q}`, i.e. the steps where that triangle's apex changes.
pub fn count_incident_flips(path: &FlipPath, side: Edge) -> Result<u32> {
    let mut count = 0;
    let mut prev = boundary_apex(&path.states()[0], side)?;
    for s in &path.states()[1..] {
        let apex = boundary_apex(s, side)?;
        if apex != prev {
            count += 1;
            prev = apex;
        }
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::triangulation::triangulation;

    fn dim(d: u16) -> PolygonDim {
        PolygonDim::new(d).unwrap()
    }

    fn hexagon_fan() -> CsTriangulation {
        triangulation(dim(2), &[(0, 3), (0, 2), (3, 5)])
    }

    #[test]
    fn trivial_path_counts_nothing() {
        let path = FlipPath::trivial(hexagon_fan());
        path.validate().unwrap();
        assert_eq!(
            count_incident_flips(&path, Edge::new(1u16, 2u16)).unwrap(),
            0
        );
    }

    #[test]
    fn apex_change_is_counted() {
        let mut path = FlipPath::trivial(hexagon_fan());
        path.push_flip(Edge::new(0u16, 2u16)).unwrap();
        path.validate().unwrap();
        assert_eq!(path.len(), 1);
        assert_eq!(
            count_incident_flips(&path, Edge::new(1u16, 2u16)).unwrap(),
            1
        );
        // The far side's triangle is carried by the mirror flip.
        assert_eq!(
            count_incident_flips(&path, Edge::new(4u16, 5u16)).unwrap(),
            1
        );
    }

    #[test]
    fn side_outside_both_quadrilaterals_is_untouched() {
        let fan = triangulation(dim(3), &[(0, 4), (0, 2), (0, 3), (4, 6), (4, 7)]);
        let mut path = FlipPath::trivial(fan);
        path.push_flip(Edge::new(0u16, 2u16)).unwrap();
        assert_eq!(
            count_incident_flips(&path, Edge::new(3u16, 4u16)).unwrap(),
            0
        );
        assert_eq!(
            count_incident_flips(&path, Edge::new(1u16, 2u16)).unwrap(),
            1
        );
    }

    #[test]
    fn non_boundary_side_rejected() {
        let path = FlipPath::trivial(hexagon_fan());
        assert!(matches!(
            count_incident_flips(&path, Edge::new(0u16, 2u16)),
            Err(Error::NotBoundaryEdge { .. })
        ));
    }

    #[test]
    fn reversal_roundtrips() {
        let mut path = FlipPath::trivial(hexagon_fan());
        path.push_flip(Edge::new(0u16, 2u16)).unwrap();
        path.push_flip(Edge::new(0u16, 3u16)).unwrap();
        let rev = path.reversed();
        rev.validate().unwrap();
        assert_eq!(rev.reversed(), path);
        assert_eq!(rev.start(), path.end());
    }

    #[test]
    fn from_states_recovers_moves() {
        let mut path = FlipPath::trivial(hexagon_fan());
        path.push_flip(Edge::new(0u16, 2u16)).unwrap();
        path.push_flip(Edge::new(1u16, 3u16)).unwrap();
        let rebuilt = FlipPath::from_states(path.states().to_vec()).unwrap();
        assert_eq!(rebuilt, path);
    }

    #[test]
    fn concatenation_checks_endpoints() {
        let a = FlipPath::trivial(hexagon_fan());
        let mut b = FlipPath::trivial(hexagon_fan());
        b.push_flip(Edge::new(0u16, 3u16)).unwrap();
        let joined = a.clone().then(b.clone()).unwrap();
        assert_eq!(joined.len(), 1);
        assert!(b.clone().then(b.reversed()).is_ok());
        assert!(b.clone().then(b).is_err());
    }
}
