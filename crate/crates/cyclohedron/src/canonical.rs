//! Canonical forms under the dihedral relabeling group.
//!
//! Rotations and reflections of the label cycle are graph automorphisms of
//! the flip graph (they commute with the mirror map and with flips), so
//! eccentricities are constant on relabeling orbits. The canonical key of a
//! triangulation is the minimum bit key over all `2n` relabelings; orbit
//! reduction in the diameter engine keys off it.

use crate::error::Result;
use crate::polygon::DihedralMap;
use crate::triangulation::{pair_index, CsTriangulation, StateKey};

/// The minimal bit key over the orbit, together with a relabeling that
/// achieves it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CanonicalKey {
    pub key: StateKey,
    /// A map with `t.relabel(map).bit_key() == key` (the first such map in
    /// rotation-then-reflection order, which makes it deterministic).
    pub map: DihedralMap,
}

/// Computes the canonical key of `t`. Requires `n <= 32`, like
/// [`CsTriangulation::bit_key`].
pub fn canonical_key(t: &CsTriangulation) -> Result<CanonicalKey> {
    let dim = t.dim();
    t.bit_key()?;
    let mut best: Option<CanonicalKey> = None;
    for map in DihedralMap::all(dim) {
        let mut key = StateKey::default();
        for &e in t.interior() {
            let idx = pair_index(map.apply_edge(dim, e));
            key.0[idx / 64] |= 1 << (idx % 64);
        }
        if best.map_or(true, |b| key < b.key) {
            best = Some(CanonicalKey { key, map });
        }
    }
    Ok(best.expect("dihedral group is nonempty"))
}

/// The canonical representative itself: the relabeled triangulation whose
/// bit key equals the canonical key.
pub fn canonical_form(t: &CsTriangulation) -> Result<CsTriangulation> {
    let c = canonical_key(t)?;
    Ok(CsTriangulation::from_bit_key(t.dim(), c.key))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::enumerate_cs;
    use crate::polygon::PolygonDim;
    use crate::triangulation::triangulation;
    use std::collections::HashSet;

    fn dim(d: u16) -> PolygonDim {
        PolygonDim::new(d).unwrap()
    }

    #[test]
    fn square_states_share_a_key() {
        let a = triangulation(dim(1), &[(0, 2)]);
        let b = triangulation(dim(1), &[(1, 3)]);
        assert_eq!(
            canonical_key(&a).unwrap().key,
            canonical_key(&b).unwrap().key
        );
    }

    #[test]
    fn hexagon_is_a_single_orbit() {
        let keys: HashSet<StateKey> = enumerate_cs(dim(2), 100)
            .unwrap()
            .iter()
            .map(|t| canonical_key(t).unwrap().key)
            .collect();
        assert_eq!(keys.len(), 1);
    }

    #[test]
    fn key_is_invariant_under_relabeling() {
        for d in 1..=4 {
            for t in enumerate_cs(dim(d), 1 << 20).unwrap() {
                let key = canonical_key(&t).unwrap().key;
                for map in DihedralMap::all(t.dim()) {
                    assert_eq!(canonical_key(&t.relabel(map)).unwrap().key, key);
                }
            }
        }
    }

    #[test]
    fn canonical_form_is_idempotent() {
        for t in enumerate_cs(dim(3), 100).unwrap() {
            let form = canonical_form(&t).unwrap();
            assert!(form.is_valid());
            assert_eq!(form.bit_key().unwrap(), canonical_key(&t).unwrap().key);
            assert_eq!(canonical_form(&form).unwrap(), form);
        }
    }

    #[test]
    fn achieving_map_is_reported() {
        for t in enumerate_cs(dim(3), 100).unwrap() {
            let c = canonical_key(&t).unwrap();
            assert_eq!(t.relabel(c.map).bit_key().unwrap(), c.key);
        }
    }
}
