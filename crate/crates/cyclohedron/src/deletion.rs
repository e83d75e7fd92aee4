//! Vertex deletion and what it does to distances.
//!
//! Deleting vertex `p` (together with its opposite `p̄`) from a CS
//! triangulation of the `(2d + 2)`-gon contracts `p` onto its clockwise
//! successor `q`: every interior edge has `p` replaced by `q` and `p̄` by
//! `q̄`, edges that become degenerate or boundary are dropped, duplicates
//! are merged, and the survivors are relabeled `0..2d` in ascending order of
//! their old labels. The result is a CS triangulation one dimension lower.
//!
//! Deletion interacts with flips through the boundary side `{p, q}`: a flip
//! is *incident* to that side when it changes the apex of the triangle
//! sitting on it, and exactly those flips collapse under deletion — their
//! quadrilateral shrinks to a triangle. Projecting a path therefore shortens
//! it by precisely the incident-flip count, which yields the distance
//! inequality `distance(P) >= distance(P minus p) + f` for any geodesic with
//! `f` incident flips. [`check_deletion_inequality`] verifies that on
//! concrete pairs; [`ear_deletion_witness`] and [`chain_deletion_check`]
//! verify the stronger drops available when one side has an ear that the
//! other side's triangles do not anticipate. The checkers certify instances:
//! a violation is reported as an error because it can only mean a bug here,
//! not new mathematics.
//!
//! # Example
//!
//! ```
//! use cyclohedron::deletion::delete_vertex;
//! use cyclohedron::format::{parse, serialize};
//! use cyclohedron::Vertex;
//!
//! # fn main() -> cyclohedron::Result<()> {
//! let t = parse("n 6\n0 2\n0 3\n3 5\n")?;
//! let (deleted, relabel) = delete_vertex(&t, Vertex(1))?;
//! assert_eq!(serialize(&deleted), "n 4\n0 2\n");
//! assert_eq!(relabel.apply(Vertex(2)), Some(Vertex(1)));
//! assert_eq!(relabel.apply(Vertex(1)), None); // deleted vertices go nowhere
//! # Ok(())
//! # }
//! ```

use crate::error::{Error, Result};
use crate::path::{boundary_apex, count_incident_flips, FlipPath};
use crate::polygon::{Edge, PolygonDim, Vertex};
use crate::search::{distance, SearchConfig};
use crate::triangulation::CsTriangulation;

/// A boundary edge with its clockwise orientation: `q` immediately follows
/// `p`. Deleting `p` collapses this side.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OrientedBoundaryEdge {
    p: Vertex,
    q: Vertex,
}

impl OrientedBoundaryEdge {
    /// The side collapsed by deleting `p`.
    pub fn at(dim: PolygonDim, p: Vertex) -> Result<OrientedBoundaryEdge> {
        let p = dim.check_vertex(p)?;
        Ok(OrientedBoundaryEdge { p, q: dim.next(p) })
    }

    pub fn p(&self) -> Vertex {
        self.p
    }

    pub fn q(&self) -> Vertex {
        self.q
    }

    /// The underlying unoriented edge.
    pub fn edge(&self) -> Edge {
        Edge::new(self.p, self.q)
    }
}

/// The vertex relabeling produced by a deletion: old labels to new ones,
/// with the two deleted vertices mapping to nothing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelabelMap {
    forward: Box<[Option<Vertex>]>,
}

impl RelabelMap {
    /// Where old vertex `v` went, or `None` if it was deleted.
    pub fn apply(&self, v: Vertex) -> Option<Vertex> {
        self.forward.get(v.0 as usize).copied().flatten()
    }

    /// Number of vertices before the deletion.
    pub fn len_before(&self) -> u16 {
        self.forward.len() as u16
    }
}

/// Deletes vertex `p` and its opposite, returning the smaller triangulation
/// and the relabeling of the surviving vertices. Requires `d >= 2` so the
/// result is still a polygon triangulation. Deleting `p` and deleting `p̄`
/// produce identical results.
pub fn delete_vertex(t: &CsTriangulation, p: Vertex) -> Result<(CsTriangulation, RelabelMap)> {
    let dim = t.dim();
    if dim.d() < 2 {
        return Err(Error::DimensionTooSmall {
            min: 2,
            got: dim.d(),
        });
    }
    let p = dim.check_vertex(p)?;
    let pbar = dim.opposite(p);
    let q = dim.next(p);
    let qbar = dim.opposite(q);

    let mut forward = vec![None; dim.n() as usize];
    let mut fresh = 0u16;
    for v in dim.vertices() {
        if v != p && v != pbar {
            forward[v.0 as usize] = Some(Vertex(fresh));
            fresh += 1;
        }
    }

    let new_dim = PolygonDim::new(dim.d() - 1)?;
    let substitute = |v: Vertex| {
        let moved = if v == p {
            q
        } else if v == pbar {
            qbar
        } else {
            v
        };
        forward[moved.0 as usize].expect("substitution targets survive the deletion")
    };
    let mut interior = Vec::with_capacity(t.interior().len());
    for e in t.interior() {
        let (u, v) = (substitute(e.lo()), substitute(e.hi()));
        if u == v {
            continue;
        }
        let mapped = Edge::new(u, v);
        if !new_dim.is_boundary(mapped) {
            interior.push(mapped);
        }
    }
    let result = CsTriangulation::new(new_dim, interior);
    debug_assert!(result.is_valid(), "deletion broke a triangulation");
    Ok((
        result,
        RelabelMap {
            forward: forward.into_boxed_slice(),
        },
    ))
}

/// Deletes the same vertex from both triangulations of a pair, with the
/// identical relabeling.
pub fn delete_pair(
    a: &CsTriangulation,
    b: &CsTriangulation,
    p: Vertex,
) -> Result<(CsTriangulation, CsTriangulation, RelabelMap)> {
    if a.dim() != b.dim() {
        return Err(Error::DimMismatch(a.dim().d(), b.dim().d()));
    }
    let (da, map) = delete_vertex(a, p)?;
    let (db, _) = delete_vertex(b, p)?;
    Ok((da, db, map))
}

/// Projects a path through the deletion of `p`: every state is deleted and
/// consecutive duplicates are collapsed. The projection is again a valid
/// path, exactly `count_incident_flips(path, {p, q})` steps shorter.
pub fn project_path(path: &FlipPath, p: Vertex) -> Result<FlipPath> {
    let mut states: Vec<CsTriangulation> = Vec::with_capacity(path.states().len());
    for s in path.states() {
        let (deleted, _) = delete_vertex(s, p)?;
        if states.last() != Some(&deleted) {
            states.push(deleted);
        }
    }
    FlipPath::from_states(states)
}

/// One verified instance of the deletion inequality.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DeletionCheck {
    /// Exact flip distance of the original pair.
    pub distance: u32,
    /// Flips incident to the collapsed side `{p, q}` along the geodesic the
    /// check followed.
    pub incident_flips: u32,
    /// Exact flip distance of the deleted pair.
    pub projected_distance: u32,
}

impl DeletionCheck {
    /// Whether `distance >= projected_distance + incident_flips` held.
    pub fn holds(&self) -> bool {
        self.distance >= self.projected_distance + self.incident_flips
    }
}

/// Verifies the deletion inequality on one pair: computes a geodesic, counts
/// its flips incident to `{p, q}`, deletes `p` from both endpoints, and
/// compares exact distances. Also confirms the projected geodesic realizes
/// the shortened length.
pub fn check_deletion_inequality(
    a: &CsTriangulation,
    b: &CsTriangulation,
    p: Vertex,
    cfg: &SearchConfig,
) -> Result<DeletionCheck> {
    let side = OrientedBoundaryEdge::at(a.dim(), p)?;
    let geodesic = distance(a, b, cfg, true)?
        .witness
        .expect("distance with want_witness returns a geodesic");
    let incident_flips = count_incident_flips(&geodesic, side.edge())?;
    let projection = project_path(&geodesic, p)?;
    debug_assert_eq!(
        projection.len(),
        geodesic.len() - incident_flips as usize,
        "projection must shorten a path by exactly its incident flips"
    );
    let (da, db, _) = delete_pair(a, b, p)?;
    let projected_distance = distance(&da, &db, cfg, false)?.value;
    Ok(DeletionCheck {
        distance: geodesic.len() as u32,
        incident_flips,
        projected_distance,
    })
}

/// Whether the triangles of `t` sitting on the boundary sides starting at
/// `chain[0]`, `chain[1]`, ... share any edge. Each triangle contributes its
/// apex edges; two triangles on consecutive sides share an edge exactly when
/// they have the same apex or are the same triangle.
fn side_triangles_share_edges(t: &CsTriangulation, chain: &[Vertex]) -> Result<bool> {
    let dim = t.dim();
    let mut seen: Vec<Edge> = Vec::new();
    for w in chain.windows(2) {
        let side = Edge::new(w[0], w[1]);
        let apex = boundary_apex(t, side)?;
        for v in [w[0], w[1]] {
            let e = Edge::new(v, apex);
            if seen.contains(&e) {
                return Ok(true);
            }
            if !dim.is_boundary(e) {
                seen.push(e);
            }
        }
    }
    Ok(false)
}

/// Checks whether `b` has an ear at `p1`, i.e. contains the edge joining
/// `p1`'s two polygon neighbors.
fn has_ear(t: &CsTriangulation, p0: Vertex, p2: Vertex) -> bool {
    t.contains(Edge::new(p0, p2))
}

/// Looks for the guaranteed distance drop at an ear: given consecutive
/// boundary sides `(p0, p1)` and `(p1, p2)` where the triangles of `a` on
/// those sides share no edge and `b` has an ear at `p1`, some
/// `x ∈ {p0, p1}` satisfies `distance(a, b) >= distance after deleting x + 2`.
///
/// Returns that `x` (trying `p0` first), or `None` when the hypotheses do
/// not hold. A hypothesis-satisfying instance where neither vertex works is
/// reported as an error: it would mean a bug in the deletion machinery.
pub fn ear_deletion_witness(
    a: &CsTriangulation,
    b: &CsTriangulation,
    p0: Vertex,
    p1: Vertex,
    p2: Vertex,
    cfg: &SearchConfig,
) -> Result<Option<Vertex>> {
    let dim = a.dim();
    if a.dim() != b.dim() {
        return Err(Error::DimMismatch(a.dim().d(), b.dim().d()));
    }
    if p1 != dim.next(p0) || p2 != dim.next(p1) {
        return Err(Error::ConstraintViolation {
            inequality: "p1 = p0 + 1, p2 = p1 + 1",
            detail: format!("vertices {p0}, {p1}, {p2} are not consecutive clockwise"),
        });
    }
    a.validate().into_result()?;
    b.validate().into_result()?;
    if side_triangles_share_edges(a, &[p0, p1, p2])? || !has_ear(b, p0, p2) {
        return Ok(None);
    }
    let base = distance(a, b, cfg, false)?.value;
    for x in [p0, p1] {
        let (da, db, _) = delete_pair(a, b, x)?;
        if base >= distance(&da, &db, cfg, false)?.value + 2 {
            return Ok(Some(x));
        }
    }
    Err(Error::ConstraintViolation {
        inequality: "distance >= deleted distance + 2",
        detail: format!(
            "ear at {p1} with independent side triangles, yet neither {p0} nor {p1} \
             drops the distance by 2"
        ),
    })
}

/// One deletion performed by [`chain_deletion_check`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChainStep {
    /// The deleted vertex, labeled as in the triangulations of that round.
    pub deleted: Vertex,
    /// Distance drop achieved by this deletion.
    pub slack: u32,
}

/// Outcome of iterated ear deletions along a chain of boundary sides.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainDeletionReport {
    pub steps: Vec<ChainStep>,
    /// Distance of the original pair.
    pub initial_distance: u32,
    /// Distance of the final, fully reduced pair.
    pub final_distance: u32,
}

impl ChainDeletionReport {
    /// Total distance drop across all deletions.
    pub fn total_slack(&self) -> u32 {
        self.initial_distance - self.final_distance
    }

    /// The drop the chain construction guarantees: 2 per deletion.
    pub fn required_slack(&self) -> u32 {
        2 * self.steps.len() as u32
    }

    pub fn holds(&self) -> bool {
        self.total_slack() >= self.required_slack()
    }
}

/// Iterates [`ear_deletion_witness`] along `sides` consecutive boundary
/// sides starting at `start`: while more than one chain side remains, an ear
/// of `b` interior to the chain is located, the witness vertex next to it is
/// deleted from both triangulations, and the chain is relabeled. After
/// `sides - 1` deletions the accumulated distance drop is at least
/// `2 * (sides - 1)`.
///
/// Hypotheses: `2 <= sides <= d` (longer chains would contain a vertex and
/// its mirror, so one deletion would consume two chain vertices), the
/// triangles of `a` on the chain sides are pairwise edge-disjoint, and `b`
/// contains the edge closing the chain. Returns `None` when the geometric
/// hypotheses fail, an error if a guaranteed drop does not materialize.
pub fn chain_deletion_check(
    a: &CsTriangulation,
    b: &CsTriangulation,
    start: Vertex,
    sides: u16,
    cfg: &SearchConfig,
) -> Result<Option<ChainDeletionReport>> {
    let dim = a.dim();
    if a.dim() != b.dim() {
        return Err(Error::DimMismatch(a.dim().d(), b.dim().d()));
    }
    if sides < 2 || sides > dim.d() {
        return Err(Error::OutOfRange {
            what: "chain side count",
            got: sides as i64,
            lo: 2,
            hi: dim.d() as i64,
        });
    }
    a.validate().into_result()?;
    b.validate().into_result()?;
    let mut chain: Vec<Vertex> = Vec::with_capacity(sides as usize + 1);
    let mut v = dim.check_vertex(start)?;
    for _ in 0..=sides {
        chain.push(v);
        v = dim.next(v);
    }
    if side_triangles_share_edges(a, &chain)?
        || !b.contains(Edge::new(chain[0], chain[sides as usize]))
    {
        return Ok(None);
    }

    let initial_distance = distance(a, b, cfg, false)?.value;
    let mut current = (a.clone(), b.clone());
    let mut steps = Vec::with_capacity(sides as usize - 1);
    let mut dist = initial_distance;
    while chain.len() > 2 {
        let ear = (1..chain.len() - 1)
            .find(|&i| has_ear(&current.1, chain[i - 1], chain[i + 1]))
            .ok_or_else(|| Error::ConstraintViolation {
                inequality: "a closed chain has an ear strictly inside it",
                detail: format!("no ear among {chain:?}"),
            })?;
        let x = ear_deletion_witness(
            &current.0,
            &current.1,
            chain[ear - 1],
            chain[ear],
            chain[ear + 1],
            cfg,
        )?
        .ok_or_else(|| Error::ConstraintViolation {
            inequality: "chain hypotheses persist under chain deletions",
            detail: format!("lost at ear {} of {chain:?}", chain[ear]),
        })?;
        let (da, db, map) = delete_pair(&current.0, &current.1, x)?;
        let next_dist = distance(&da, &db, cfg, false)?.value;
        steps.push(ChainStep {
            deleted: x,
            slack: dist - next_dist,
        });
        chain = chain.iter().filter_map(|&u| map.apply(u)).collect();
        current = (da, db);
        dist = next_dist;
    }
    let report = ChainDeletionReport {
        steps,
        initial_distance,
        final_distance: dist,
    };
    if !report.holds() {
        return Err(Error::ConstraintViolation {
            inequality: "total slack >= 2 * (sides - 1)",
            detail: format!(
                "chain of {sides} sides dropped the distance by {} < {}",
                report.total_slack(),
                report.required_slack()
            ),
        });
    }
    Ok(Some(report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::enumerate_cs;
    use crate::triangulation::triangulation;

    fn hexagon(pairs: &[(u16, u16)]) -> CsTriangulation {
        triangulation(PolygonDim::new(2).unwrap(), pairs)
    }

    #[test]
    fn deleting_an_untouched_vertex_keeps_the_diagonal() {
        let t = hexagon(&[(0, 2), (0, 3), (3, 5)]);
        let (del, map) = delete_vertex(&t, Vertex(1)).unwrap();
        assert_eq!(del, triangulation(PolygonDim::new(1).unwrap(), &[(0, 2)]));
        assert_eq!(map.apply(Vertex(0)), Some(Vertex(0)));
        assert_eq!(map.apply(Vertex(1)), None);
        assert_eq!(map.apply(Vertex(2)), Some(Vertex(1)));
        assert_eq!(map.apply(Vertex(4)), None);
        assert_eq!(map.apply(Vertex(5)), Some(Vertex(3)));
    }

    #[test]
    fn substitution_can_merge_edges() {
        let t = hexagon(&[(0, 2), (0, 3), (3, 5)]);
        let (del, _) = delete_vertex(&t, Vertex(2)).unwrap();
        assert_eq!(del, triangulation(PolygonDim::new(1).unwrap(), &[(0, 2)]));
    }

    #[test]
    fn deleting_opposite_vertices_is_the_same_deletion() {
        for d in 2..=5 {
            let dim = PolygonDim::new(d).unwrap();
            for t in enumerate_cs(dim, 1 << 20).unwrap() {
                for p in dim.vertices() {
                    let (a, ma) = delete_vertex(&t, p).unwrap();
                    let (b, mb) = delete_vertex(&t, dim.opposite(p)).unwrap();
                    assert_eq!(a, b);
                    assert_eq!(ma, mb);
                }
            }
        }
    }

    #[test]
    fn deletion_output_is_always_valid() {
        for d in 2..=6 {
            let dim = PolygonDim::new(d).unwrap();
            for t in enumerate_cs(dim, 1 << 20).unwrap() {
                for p in dim.vertices() {
                    let (del, _) = delete_vertex(&t, p).unwrap();
                    assert_eq!(del.dim().d(), d - 1);
                    assert!(del.is_valid());
                }
            }
        }
    }

    #[test]
    fn squares_cannot_shrink() {
        let t = triangulation(PolygonDim::new(1).unwrap(), &[(0, 2)]);
        assert!(matches!(
            delete_vertex(&t, Vertex(0)),
            Err(Error::DimensionTooSmall { min: 2, .. })
        ));
    }

    #[test]
    fn projection_shortens_by_the_incident_flips() {
        let cfg = SearchConfig::default();
        let dim = PolygonDim::new(3).unwrap();
        let states = enumerate_cs(dim, 1 << 20).unwrap();
        for (i, a) in states.iter().enumerate() {
            for b in &states[i + 1..] {
                let geo = distance(a, b, &cfg, true).unwrap().witness.unwrap();
                for p in dim.vertices() {
                    let side = OrientedBoundaryEdge::at(dim, p).unwrap();
                    let f = count_incident_flips(&geo, side.edge()).unwrap();
                    let proj = project_path(&geo, p).unwrap();
                    assert_eq!(proj.len(), geo.len() - f as usize);
                    proj.validate().unwrap();
                    assert_eq!(proj.start(), &delete_vertex(a, p).unwrap().0);
                    assert_eq!(proj.end(), &delete_vertex(b, p).unwrap().0);
                }
            }
        }
    }

    #[test]
    fn deletion_inequality_holds_exhaustively() {
        let cfg = SearchConfig::default();
        let dim = PolygonDim::new(3).unwrap();
        let states = enumerate_cs(dim, 1 << 20).unwrap();
        for (i, a) in states.iter().enumerate() {
            for b in states.iter().skip(i) {
                for p in dim.vertices() {
                    let check = check_deletion_inequality(a, b, p, &cfg).unwrap();
                    assert!(check.holds(), "{check:?} at p = {p}");
                }
            }
        }
    }

    #[test]
    fn trivial_pair_has_zero_everything() {
        let t = hexagon(&[(0, 2), (0, 3), (3, 5)]);
        let check = check_deletion_inequality(&t, &t, Vertex(4), &SearchConfig::default()).unwrap();
        assert_eq!(
            check,
            DeletionCheck {
                distance: 0,
                incident_flips: 0,
                projected_distance: 0,
            }
        );
    }

    #[test]
    fn ear_witness_requires_consecutive_vertices() {
        let t = hexagon(&[(0, 2), (0, 3), (3, 5)]);
        assert!(ear_deletion_witness(
            &t,
            &t,
            Vertex(0),
            Vertex(2),
            Vertex(3),
            &SearchConfig::default()
        )
        .is_err());
    }

    #[test]
    fn ear_witness_scans_cleanly_where_defined() {
        // Every hypothesis-satisfying instance must produce a witness; the
        // gate must reject the rest quietly.
        let cfg = SearchConfig::default();
        for d in 2..=3 {
            let dim = PolygonDim::new(d).unwrap();
            let states = enumerate_cs(dim, 1 << 20).unwrap();
            let mut witnessed = 0u32;
            for a in &states {
                for b in &states {
                    for p0 in dim.vertices() {
                        let p1 = dim.next(p0);
                        let p2 = dim.next(p1);
                        if ear_deletion_witness(a, b, p0, p1, p2, &cfg)
                            .unwrap()
                            .is_some()
                        {
                            witnessed += 1;
                        }
                    }
                }
            }
            assert!(witnessed > 0, "the gate should admit some instances");
        }
    }

    #[test]
    fn chain_checks_match_the_single_ear_case() {
        let cfg = SearchConfig::default();
        let dim = PolygonDim::new(3).unwrap();
        let states = enumerate_cs(dim, 1 << 20).unwrap();
        let mut seen = 0u32;
        for a in &states {
            for b in &states {
                for start in dim.vertices() {
                    if let Some(report) = chain_deletion_check(a, b, start, 2, &cfg).unwrap() {
                        assert!(report.holds());
                        assert_eq!(report.steps.len(), 1);
                        assert!(report.steps[0].slack >= 2);
                        seen += 1;
                    }
                }
            }
        }
        assert!(seen > 0);
    }

    #[test]
    fn chain_length_is_bounded_by_the_dimension() {
        let t = hexagon(&[(0, 2), (0, 3), (3, 5)]);
        assert!(matches!(
            chain_deletion_check(&t, &t, Vertex(0), 3, &SearchConfig::default()),
            Err(Error::OutOfRange { .. })
        ));
    }
}
