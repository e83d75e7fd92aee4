//! Exhaustive enumeration of centrally symmetric triangulations.
//!
//! Every centrally symmetric triangulation contains exactly one diagonal
//! `{x, x̄}` with `0 <= x <= d`, and is determined by an arbitrary
//! triangulation of the half-polygon on the `d + 2` vertices
//! `x, x+1, ..., x̄` (the other half is forced by mirroring). Enumerating
//! half-polygon triangulations per diagonal therefore visits each
//! centrally symmetric triangulation exactly once, giving
//! `(d+1) * catalan(d) = binomial(2d, d)` in total.
//!
//! # Example
//!
//! ```
//! use cyclohedron::{cs_count, enumerate_cs, PolygonDim};
//!
//! # fn main() -> cyclohedron::Result<()> {
//! let dim = PolygonDim::new(3)?;
//! let all = enumerate_cs(dim, 1 << 20)?;
//! assert_eq!(all.len() as u64, cs_count(3));
//! assert_eq!(cs_count(3), 20);
//! # Ok(())
//! # }
//! ```

use std::ops::ControlFlow;

use crate::error::{Error, Result};
use crate::polygon::{Edge, PolygonDim, Vertex};
use crate::triangulation::CsTriangulation;

/// Visits every centrally symmetric triangulation of the `(2d+2)`-gon once,
/// in a deterministic order, without materializing the full list. The
/// visitor can stop early by returning [`ControlFlow::Break`].
pub fn for_each_cs<B>(
    dim: PolygonDim,
    mut visit: impl FnMut(&CsTriangulation) -> ControlFlow<B>,
) -> Option<B> {
    let d = dim.d();
    let mut arc: Vec<Vertex> = Vec::with_capacity(d as usize + 2);
    for x in 0..=d {
        // Half-polygon vertices x, x+1, ..., x̄ in clockwise order.
        arc.clear();
        arc.extend((0..=d + 1).map(|k| dim.wrap(x as i64 + k as i64)));
        let diagonal = Edge::new(arc[0], arc[arc.len() - 1]);

        let mut chords: Vec<Edge> = Vec::with_capacity(2 * d as usize - 2);
        let flow = enumerate_region(&arc, 0, arc.len() - 1, &mut chords, &mut |chords| {
            let mut interior = Vec::with_capacity(dim.interior_count());
            interior.push(diagonal);
            for &c in chords.iter() {
                interior.push(c);
                interior.push(dim.mirror(c));
            }
            visit(&CsTriangulation::new(dim, interior))
        });
        if let ControlFlow::Break(b) = flow {
            return Some(b);
        }
    }
    None
}

/// Triangulations of the sub-polygon `arc[lo..=hi]`, by recursion over the
/// apex of the triangle resting on the edge `arc[lo]..arc[hi]`. Chords
/// accumulate in `chords`; `emit` fires once per complete triangulation.
/// The continuation is `dyn` because the left recursion nests the right one.
fn enumerate_region<B>(
    arc: &[Vertex],
    lo: usize,
    hi: usize,
    chords: &mut Vec<Edge>,
    emit: &mut dyn FnMut(&mut Vec<Edge>) -> ControlFlow<B>,
) -> ControlFlow<B> {
    if hi - lo < 2 {
        return emit(chords);
    }
    for mid in lo + 1..hi {
        let before = chords.len();
        if mid - lo > 1 {
            chords.push(Edge::new(arc[lo], arc[mid]));
        }
        if hi - mid > 1 {
            chords.push(Edge::new(arc[mid], arc[hi]));
        }
        let flow = enumerate_region(arc, lo, mid, chords, &mut |chords| {
            enumerate_region(arc, mid, hi, chords, emit)
        });
        chords.truncate(before);
        if let ControlFlow::Break(b) = flow {
            return ControlFlow::Break(b);
        }
    }
    ControlFlow::Continue(())
}

/// Collects the full enumeration, failing with [`Error::ResourceLimit`] once
/// more than `cap` triangulations have been produced.
pub fn enumerate_cs(dim: PolygonDim, cap: u64) -> Result<Vec<CsTriangulation>> {
    let mut out = Vec::new();
    let overflow = for_each_cs(dim, |t| {
        if out.len() as u64 >= cap {
            return ControlFlow::Break(());
        }
        out.push(t.clone());
        ControlFlow::Continue(())
    });
    match overflow {
        Some(()) => Err(Error::ResourceLimit {
            explored: cap,
            lower_bound: None,
        }),
        None => Ok(out),
    }
}

/// `binomial(2d, d)`, the number of centrally symmetric triangulations.
/// Saturates at `u64::MAX` for huge `d`.
pub fn cs_count(d: u16) -> u64 {
    let mut acc: u128 = 1;
    for k in 1..=d as u128 {
        acc = acc * (d as u128 + k) / k;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// The `k`-th Catalan number, the count of triangulations of a
/// `(k + 2)`-gon.
fn catalan(k: usize) -> u64 {
    let mut acc: u128 = 1;
    for i in 1..=k as u128 {
        acc = acc * (k as u128 + i) / i;
    }
    (acc / (k as u128 + 1)) as u64
}

/// Draws a centrally symmetric triangulation uniformly at random: each
/// diagonal carries equally many triangulations, and within a diagonal the
/// half-polygon is triangulated by Catalan-weighted apex choices.
pub fn sample_cs<R: rand::Rng + ?Sized>(dim: PolygonDim, rng: &mut R) -> CsTriangulation {
    let d = dim.d();
    let x = rng.gen_range(0..=d);
    let arc: Vec<Vertex> = (0..=d + 1).map(|k| dim.wrap(x as i64 + k as i64)).collect();

    let mut interior = Vec::with_capacity(dim.interior_count());
    interior.push(Edge::new(arc[0], arc[arc.len() - 1]));
    let mut stack = vec![(0usize, arc.len() - 1)];
    while let Some((lo, hi)) = stack.pop() {
        if hi - lo < 2 {
            continue;
        }
        let mut remaining = rng.gen_range(0..catalan(hi - lo - 1));
        let mid = (lo + 1..hi)
            .find(|&mid| {
                let ways = catalan(mid - lo - 1) * catalan(hi - mid - 1);
                if remaining < ways {
                    true
                } else {
                    remaining -= ways;
                    false
                }
            })
            .expect("apex weights sum to the region count");
        if mid - lo > 1 {
            let e = Edge::new(arc[lo], arc[mid]);
            interior.push(e);
            interior.push(dim.mirror(e));
        }
        if hi - mid > 1 {
            let e = Edge::new(arc[mid], arc[hi]);
            interior.push(e);
            interior.push(dim.mirror(e));
        }
        stack.push((lo, mid));
        stack.push((mid, hi));
    }
    CsTriangulation::new(dim, interior)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::triangulation::triangulation;

    fn dim(d: u16) -> PolygonDim {
        PolygonDim::new(d).unwrap()
    }

    #[test]
    fn square_has_two() {
        let all = enumerate_cs(dim(1), 10).unwrap();
        assert_eq!(all.len(), 2);
        assert!(all.contains(&triangulation(dim(1), &[(0, 2)])));
        assert!(all.contains(&triangulation(dim(1), &[(1, 3)])));
    }

    #[test]
    fn hexagon_has_six() {
        assert_eq!(enumerate_cs(dim(2), 100).unwrap().len(), 6);
    }

    #[test]
    fn counts_match_central_binomial() {
        for d in 1..=8 {
            let expect = cs_count(d);
            let got = enumerate_cs(dim(d), expect + 1).unwrap().len() as u64;
            assert_eq!(got, expect, "d = {d}");
        }
    }

    #[test]
    fn central_binomial_values() {
        let expect = [2, 6, 20, 70, 252, 924, 3432, 12870, 48620, 184756];
        for (i, &e) in expect.iter().enumerate() {
            assert_eq!(cs_count(i as u16 + 1), e);
        }
        assert_eq!(cs_count(13), 10_400_600);
    }

    #[test]
    fn all_outputs_valid_and_distinct() {
        for d in 1..=5 {
            let all = enumerate_cs(dim(d), 1 << 20).unwrap();
            let mut seen = std::collections::HashSet::new();
            for t in &all {
                assert!(t.validate().is_valid(), "d = {d}: {t}");
                assert!(seen.insert(t.clone()), "duplicate at d = {d}: {t}");
            }
        }
    }

    #[test]
    fn cap_reports_resource_limit() {
        match enumerate_cs(dim(4), 10) {
            Err(Error::ResourceLimit { explored: 10, .. }) => {}
            other => panic!("expected resource limit, got {other:?}"),
        }
    }

    #[test]
    fn catalan_values() {
        let expect = [1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862];
        for (k, &e) in expect.iter().enumerate() {
            assert_eq!(catalan(k), e);
        }
    }

    #[test]
    fn samples_are_valid_and_deterministic() {
        use rand::SeedableRng;
        for d in [1, 2, 5, 9, 12] {
            let mut a = rand_chacha::ChaCha8Rng::seed_from_u64(7);
            let mut b = rand_chacha::ChaCha8Rng::seed_from_u64(7);
            for _ in 0..50 {
                let t = sample_cs(dim(d), &mut a);
                assert!(t.is_valid(), "d = {d}: {t}");
                assert_eq!(t, sample_cs(dim(d), &mut b));
            }
        }
    }

    #[test]
    fn sampling_covers_the_whole_space() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        let mut seen = std::collections::HashSet::new();
        for _ in 0..600 {
            seen.insert(sample_cs(dim(2), &mut rng));
        }
        assert_eq!(seen.len(), 6);
    }
}
