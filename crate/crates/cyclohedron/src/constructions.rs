//! Fan triangulations and the constructive distance upper bound.
//!
//! The routing argument behind the `ceil(5d/2) - 2` diameter upper bound
//! runs through two fan-shaped hubs: `fan_triangulation` (diagonal `{0, 0̄}`,
//! everything else incident to `0` or `0̄`) and `fan_with_diagonal(x)`
//! (diagonal `{x, x̄}`, all other edges incident to `0` on its side of the
//! diagonal and to `0̄` opposite). Any triangulation reaches its fan hub in
//! at most `d - 1` flips, and the two hubs are `d - x + 1` flips apart.
//!
//! # Example
//!
//! ```
//! use cyclohedron::constructions::{diameter_upper_bound, fan_with_diagonal, upper_bound_path};
//! use cyclohedron::{distance, PolygonDim, SearchConfig};
//!
//! # fn main() -> cyclohedron::Result<()> {
//! let dim = PolygonDim::new(4)?;
//! let (a, b) = (fan_with_diagonal(dim, 1)?, fan_with_diagonal(dim, 4)?);
//!
//! let path = upper_bound_path(&a, &b)?;
//! path.validate()?;
//! let exact = distance(&a, &b, &SearchConfig::default(), false)?.value;
//! assert!(exact <= path.len() as u32);
//! assert!(path.len() as u32 <= diameter_upper_bound(4)); // ceil(5 * 4 / 2) - 2 = 8
//! # Ok(())
//! # }
//! ```

use crate::error::{Error, Result};
use crate::path::FlipPath;
use crate::polygon::{DihedralMap, Edge, PolygonDim, Vertex};
use crate::triangulation::CsTriangulation;

/// The fan with diagonal `{0, 0̄}`: interior edges `{0, x}` for
/// `2 <= x <= d` plus mirrors.
pub fn fan_triangulation(dim: PolygonDim) -> CsTriangulation {
    let zero = Vertex(0);
    let mut edges = vec![Edge::new(zero, dim.opposite(zero))];
    for x in 2..=dim.d() {
        let e = Edge::new(zero, Vertex(x));
        edges.push(e);
        edges.push(dim.mirror(e));
    }
    CsTriangulation::new(dim, edges)
}

/// The fan with diagonal `{x, x̄}`, `1 <= x <= d`: on the side of the
/// diagonal containing `0`, every edge is incident to `0`; the other side is
/// the mirror image (everything at `0̄`).
pub fn fan_with_diagonal(dim: PolygonDim, x: u16) -> Result<CsTriangulation> {
    if x == 0 || x > dim.d() {
        return Err(Error::OutOfRange {
            what: "fan diagonal endpoint",
            got: x as i64,
            lo: 1,
            hi: dim.d() as i64,
        });
    }
    let (d, zero) = (dim.d(), Vertex(0));
    let mut edges = vec![Edge::new(Vertex(x), dim.opposite(Vertex(x)))];
    let mut push_spoke = |y: u16| {
        let e = Edge::new(zero, Vertex(y));
        edges.push(e);
        edges.push(dim.mirror(e));
    };
    for y in (x + d + 1)..=(2 * d) {
        push_spoke(y);
    }
    for y in 2..=x {
        push_spoke(y);
    }
    Ok(CsTriangulation::new(dim, edges))
}

/// Greedily flips `t` into the fan anchored at `anchor`, keeping the
/// diagonal fixed: afterwards every interior edge on `anchor`'s side of the
/// diagonal is incident to `anchor`, and the mirror side to `anchor`'s
/// opposite. At most `d - 1` flips.
///
/// Each step flips the smallest edge `{u, v}` on the anchor's side that
/// forms a triangle with `anchor`; this introduces a new spoke at `anchor`
/// and never removes one on that side, so progress is strict.
pub fn fan_transform(t: &CsTriangulation, anchor: Vertex) -> Result<FlipPath> {
    let dim = t.dim();
    dim.check_vertex(anchor)?;
    t.validate().into_result()?;
    let diag = t.diagonal().expect("validated above");

    let region = region_mask(dim, diag, anchor);
    let anchor_bit = 1u32 << anchor.0;
    let in_region = |v: Vertex| region & (1 << v.0) != 0;

    let mut path = FlipPath::trivial(t.clone());
    loop {
        let cur = path.end();
        let adj = cur.adjacency()?;
        let candidate = cur.interior().iter().copied().find(|&e| {
            !dim.is_diagonal(e)
                && in_region(e.lo())
                && in_region(e.hi())
                && adj.common(e) & anchor_bit != 0
        });
        match candidate {
            Some(e) => {
                path.push_flip(e)?;
                assert!(
                    path.len() < dim.d() as usize + 1,
                    "fan transform exceeded its flip budget"
                );
            }
            None => break,
        }
    }

    debug_assert!(path.end().interior().iter().all(|&e| {
        dim.is_diagonal(e) || !(in_region(e.lo()) && in_region(e.hi())) || e.contains(anchor)
    }));
    Ok(path)
}

/// Vertices of the closed arc on `anchor`'s side of the diagonal, as a
/// bitmask. An anchor lying on the diagonal takes the clockwise arc from
/// itself to its opposite.
fn region_mask(dim: PolygonDim, diag: Edge, anchor: Vertex) -> u32 {
    let (from, to) = if diag.contains(anchor) {
        (anchor, dim.opposite(anchor))
    } else {
        let mut v = diag.lo();
        let mut hit = false;
        while v != diag.hi() {
            v = dim.next(v);
            if v == anchor {
                hit = true;
                break;
            }
        }
        if hit {
            (diag.lo(), diag.hi())
        } else {
            (diag.hi(), diag.lo())
        }
    };
    let mut mask = 0u32;
    let mut v = from;
    loop {
        mask |= 1 << v.0;
        if v == to {
            break;
        }
        v = dim.next(v);
    }
    mask
}

/// `ceil(5d/2) - 2`, the proven upper bound for any flip distance in
/// dimension `d`. [`upper_bound_path`] realizes it constructively.
pub fn diameter_upper_bound(d: u16) -> u32 {
    (5 * d as u32).div_ceil(2) - 2
}

/// A concrete flip path from `t1` to `t2` of length at most
/// `ceil(5d/2) - 2`, built by routing both endpoints through fan hubs.
/// Generally not a geodesic.
pub fn upper_bound_path(t1: &CsTriangulation, t2: &CsTriangulation) -> Result<FlipPath> {
    if t1.dim() != t2.dim() {
        return Err(Error::DimMismatch(t1.dim().d(), t2.dim().d()));
    }
    t1.validate().into_result()?;
    t2.validate().into_result()?;
    if t1 == t2 {
        return Ok(FlipPath::trivial(t1.clone()));
    }

    let dim = t1.dim();
    let d = dim.d();

    // Normalize labels: rotate t1's diagonal onto {0, 0̄}, then if t2's
    // diagonal endpoint x in 0..=d falls in 1..=floor(d/2), reflect through
    // v -> d + 1 - v (which fixes {0, 0̄}) to push x above d/2. The route
    // length 3d - x - 1 then meets the bound.
    let g = t1.diagonal().expect("validated").lo();
    let rho = DihedralMap::rotation(dim.wrap(-(g.0 as i64)).0);
    let mut applied = vec![rho];
    let mut s1 = t1.relabel(rho);
    let mut s2 = t2.relabel(rho);
    let mut x = s2.diagonal().expect("validated").lo().0;
    debug_assert_eq!(s1.diagonal(), Some(Edge::new(0u16, d + 1)));
    if (1..=d / 2).contains(&x) {
        let nu = DihedralMap::reflection(d + 1);
        s1 = s1.relabel(nu);
        s2 = s2.relabel(nu);
        x = d + 1 - x;
        applied.push(nu);
    }

    let zero = Vertex(0);
    let to_hub1 = fan_transform(&s1, zero)?;
    let to_hub2 = fan_transform(&s2, zero)?;
    let mut path = if x == 0 {
        // Same diagonal class: both endpoints share the {0, 0̄} hub.
        to_hub1.then(to_hub2.reversed())?
    } else {
        debug_assert_eq!(to_hub2.end(), &fan_with_diagonal(dim, x)?);
        // Hub to hub: flip the diagonal (its quadrilateral apexes are 0 and
        // 0̄), then walk the leftover spokes of 0̄ up the polygon.
        let mut bridge = FlipPath::trivial(to_hub2.end().clone());
        bridge.push_flip(Edge::new(Vertex(x), dim.opposite(Vertex(x))))?;
        for z in x..d {
            bridge.push_flip(Edge::new(dim.opposite(zero), Vertex(z)))?;
        }
        if bridge.end() != to_hub1.end() {
            return Err(Error::InvalidTriangulation(
                "fan routing failed to converge on the shared hub".into(),
            ));
        }
        to_hub1.then(bridge.reversed())?.then(to_hub2.reversed())?
    };

    for m in applied.iter().rev() {
        path = path.relabel(m.inverse_for(dim));
    }
    debug_assert_eq!(path.start(), t1);
    debug_assert_eq!(path.end(), t2);
    debug_assert!(path.len() as u32 <= diameter_upper_bound(d));
    Ok(path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::enumerate_cs;
    use crate::search::{distance, SearchConfig};
    use crate::triangulation::triangulation;

    fn dim(d: u16) -> PolygonDim {
        PolygonDim::new(d).unwrap()
    }

    #[test]
    fn fan_examples() {
        assert_eq!(
            fan_triangulation(dim(2)),
            triangulation(dim(2), &[(0, 3), (0, 2), (3, 5)])
        );
        assert_eq!(
            fan_triangulation(dim(4)),
            triangulation(
                dim(4),
                &[(0, 5), (0, 2), (0, 3), (0, 4), (5, 7), (5, 8), (5, 9)]
            )
        );
    }

    #[test]
    fn fans_are_valid_up_to_twelve() {
        for d in 1..=12 {
            assert!(fan_triangulation(dim(d)).is_valid(), "d = {d}");
            for x in 1..=d {
                let t = fan_with_diagonal(dim(d), x).unwrap();
                assert!(t.is_valid(), "d = {d}, x = {x}");
            }
        }
    }

    #[test]
    fn shifted_fan_examples() {
        assert_eq!(
            fan_with_diagonal(dim(2), 1).unwrap(),
            triangulation(dim(2), &[(1, 4), (0, 4), (1, 3)])
        );
        let t = fan_with_diagonal(dim(4), 3).unwrap();
        assert_eq!(t.interior().len(), 7);
        assert!(t.contains(Edge::new(3u16, 8u16)));
        assert!(t.contains(Edge::new(0u16, 8u16)));
        assert!(t.contains(Edge::new(0u16, 2u16)));
    }

    #[test]
    fn shifted_fan_range_checked() {
        assert!(fan_with_diagonal(dim(3), 0).is_err());
        assert!(fan_with_diagonal(dim(3), 4).is_err());
    }

    #[test]
    fn fan_transform_fixes_the_fan() {
        for d in 1..=6 {
            let fan = fan_triangulation(dim(d));
            assert_eq!(fan_transform(&fan, Vertex(0)).unwrap().len(), 0);
        }
    }

    #[test]
    fn fan_transform_reaches_the_anchored_fan_exhaustively() {
        for d in 1..=5 {
            for t in enumerate_cs(dim(d), 1 << 20).unwrap() {
                let path = fan_transform(&t, Vertex(0)).unwrap();
                path.validate().unwrap();
                assert!(path.len() < d as usize || path.is_empty());
                let x = t.diagonal().unwrap().lo().0;
                let expected = if x == 0 {
                    fan_triangulation(dim(d))
                } else {
                    fan_with_diagonal(dim(d), x).unwrap()
                };
                assert_eq!(path.end(), &expected, "from {t}");
            }
        }
    }

    #[test]
    fn upper_bound_path_trivial_on_equal_input() {
        let t = fan_triangulation(dim(3));
        assert_eq!(upper_bound_path(&t, &t).unwrap().len(), 0);
    }

    #[test]
    fn upper_bound_values() {
        let expect = [1, 3, 6, 8, 11, 13, 16, 18, 21, 23];
        for (i, &e) in expect.iter().enumerate() {
            assert_eq!(diameter_upper_bound(i as u16 + 1), e);
        }
    }

    #[test]
    fn upper_bound_path_exhaustive_small() {
        let cfg = SearchConfig::default();
        for d in 1..=4 {
            let all = enumerate_cs(dim(d), 1 << 20).unwrap();
            for a in &all {
                for b in &all {
                    let path = upper_bound_path(a, b).unwrap();
                    path.validate().unwrap();
                    assert_eq!((path.start(), path.end()), (a, b));
                    assert!(path.len() as u32 <= diameter_upper_bound(d));
                    let exact = distance(a, b, &cfg, false).unwrap().value;
                    assert!(path.len() as u32 >= exact);
                }
            }
        }
    }
}
