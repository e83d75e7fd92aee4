//! Exact flip distances, eccentricities, and diameters.
//!
//! Point-to-point distances run a level-synchronized bidirectional BFS over
//! the implicit flip graph. Diameters materialize the whole state space once
//! per dimension, then BFS from one representative per dihedral orbit
//! (eccentricity is constant on orbits, see [`crate::canonical`]).
//!
//! Everything here is deterministic: frontiers expand in insertion order,
//! neighbor lists are sorted by removed edge, and witness reconstruction
//! walks back from the far endpoint always taking the predecessor whose
//! forward move introduces the lexicographically smallest edge class.
//!
//! # Example
//!
//! ```
//! use cyclohedron::constructions::{fan_triangulation, fan_with_diagonal};
//! use cyclohedron::{diameter, distance, PolygonDim, SearchConfig};
//!
//! # fn main() -> cyclohedron::Result<()> {
//! let cfg = SearchConfig::default();
//! let dim = PolygonDim::new(3)?;
//! let report = distance(&fan_triangulation(dim), &fan_with_diagonal(dim, 2)?, &cfg, true)?;
//! assert_eq!(report.value, 2);
//! assert_eq!(report.witness.unwrap().len(), 2);
//!
//! // The flip graph of the octagon's 20 triangulations has diameter 5.
//! assert_eq!(diameter(dim, &cfg, false)?.value, 5);
//! # Ok(())
//! # }
//! ```

use std::collections::HashMap;

use crate::canonical::canonical_key;
use crate::enumerate::for_each_cs;
use crate::error::{Error, Result};
use crate::flip::neighbors;
use crate::path::FlipPath;
use crate::polygon::PolygonDim;
use crate::triangulation::{CsTriangulation, StateKey};

/// Resource guardrails. Searches fail with [`Error::ResourceLimit`] rather
/// than run away; the error carries any exact lower bound established before
/// the cap was hit.
#[derive(Debug, Clone, Copy)]
pub struct SearchConfig {
    /// Cap on states visited by a single BFS query.
    pub max_visited: u64,
    /// Cap on states materialized when building a whole flip graph.
    pub max_enumerated: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            max_visited: 50_000_000,
            max_enumerated: 20_000_000,
        }
    }
}

impl SearchConfig {
    /// One cap for everything; what the CLI `--cap` flag maps to.
    pub fn with_cap(cap: u64) -> SearchConfig {
        SearchConfig {
            max_visited: cap,
            max_enumerated: cap,
        }
    }
}

/// How a reported value was computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Bfs,
    BidirectionalBfs,
    OrbitReduced,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Bfs => "bfs",
            Method::BidirectionalBfs => "bidirectional-bfs",
            Method::OrbitReduced => "orbit-reduced",
        }
    }
}

/// An exact distance-like value with provenance and an optional geodesic.
#[derive(Debug, Clone)]
pub struct DistanceReport {
    pub value: u32,
    pub witness: Option<FlipPath>,
    /// Distinct states touched (for diameters: the state-space size).
    pub explored: u64,
    pub method: Method,
}

/// Exact flip distance between two triangulations of the same dimension.
pub fn distance(
    a: &CsTriangulation,
    b: &CsTriangulation,
    cfg: &SearchConfig,
    want_witness: bool,
) -> Result<DistanceReport> {
    if a.dim() != b.dim() {
        return Err(Error::DimMismatch(a.dim().d(), b.dim().d()));
    }
    a.validate().into_result()?;
    b.validate().into_result()?;

    if a == b {
        return Ok(DistanceReport {
            value: 0,
            witness: want_witness.then(|| FlipPath::trivial(a.clone())),
            explored: 1,
            method: Method::BidirectionalBfs,
        });
    }

    let mut fwd = Side::new(a.clone())?;
    let mut bwd = Side::new(b.clone())?;
    let mut explored: u64 = 2;
    // (geodesic length, meet state) of the best meeting point seen.
    let mut best: Option<(u32, CsTriangulation)> = None;

    loop {
        if let Some((sum, _)) = &best {
            // Once both searches have completed enough levels, some vertex
            // on every geodesic has been seen from both sides, so the best
            // recorded sum is the exact distance.
            if *sum <= fwd.depth + bwd.depth {
                break;
            }
        }
        if fwd.frontier.is_empty() && bwd.frontier.is_empty() {
            // Unreachable: the flip graph is connected.
            return Err(Error::InvalidTriangulation(
                "search exhausted both frontiers without meeting".into(),
            ));
        }
        let expand_fwd = if fwd.frontier.is_empty() {
            false
        } else if bwd.frontier.is_empty() {
            true
        } else {
            fwd.frontier.len() <= bwd.frontier.len()
        };
        let (own, other) = if expand_fwd {
            (&mut fwd, &mut bwd)
        } else {
            (&mut bwd, &mut fwd)
        };

        let frontier = std::mem::take(&mut own.frontier);
        let next_depth = own.depth + 1;
        for t in &frontier {
            for (_, s) in neighbors(t)? {
                let key = s.bit_key()?;
                if own.dist.contains_key(&key) {
                    continue;
                }
                own.dist.insert(key, next_depth);
                explored += 1;
                if explored > cfg.max_visited {
                    return Err(Error::ResourceLimit {
                        explored,
                        lower_bound: Some(fwd.depth + bwd.depth + 1),
                    });
                }
                if let Some(&od) = other.dist.get(&key) {
                    let sum = next_depth + od;
                    if best.as_ref().map_or(true, |(b, _)| sum < *b) {
                        best = Some((sum, s.clone()));
                    }
                }
                own.frontier.push(s);
            }
        }
        own.depth = next_depth;
    }

    let (value, meet) = best.expect("loop breaks only with a meet");
    let witness = if want_witness {
        let head = backtrack(&meet, |t| fwd.dist.get(&t.bit_key().ok()?).copied())?;
        let tail = backtrack(&meet, |t| bwd.dist.get(&t.bit_key().ok()?).copied())?;
        let path = head.reversed().then(tail)?;
        debug_assert_eq!(path.len() as u32, value);
        Some(path)
    } else {
        None
    };

    Ok(DistanceReport {
        value,
        witness,
        explored,
        method: Method::BidirectionalBfs,
    })
}

struct Side {
    dist: HashMap<StateKey, u32>,
    frontier: Vec<CsTriangulation>,
    /// Completed levels: every state at this depth or less has been found.
    depth: u32,
}

impl Side {
    fn new(t: CsTriangulation) -> Result<Side> {
        let mut dist = HashMap::new();
        dist.insert(t.bit_key()?, 0);
        Ok(Side {
            dist,
            frontier: vec![t],
            depth: 0,
        })
    }
}

/// Walks from `far` down to depth zero through any depth labeling, taking at
/// each step the predecessor whose forward move introduces the smallest edge
/// class. Returns the path from `far` to the depth-zero state.
fn backtrack(
    far: &CsTriangulation,
    depth_of: impl Fn(&CsTriangulation) -> Option<u32>,
) -> Result<FlipPath> {
    let mut states = vec![far.clone()];
    let mut level = depth_of(far).expect("backtrack starts inside the labeled region");
    while level > 0 {
        let current = states.last().expect("nonempty").clone();
        // neighbors() is sorted by removed edge, which is the introduced
        // edge of the reverse (forward-pointing) move; the first hit is the
        // documented deterministic choice.
        let prev = neighbors(&current)?
            .into_iter()
            .map(|(_, s)| s)
            .find(|s| depth_of(s) == Some(level - 1))
            .expect("BFS labelings always have a predecessor");
        states.push(prev);
        level -= 1;
    }
    FlipPath::from_states(states)
}

/// Eccentricity of `t`: a full BFS. The witness, if requested, is a geodesic
/// to the farthest state with the smallest bit key.
pub fn eccentricity(
    t: &CsTriangulation,
    cfg: &SearchConfig,
    want_witness: bool,
) -> Result<DistanceReport> {
    t.validate().into_result()?;
    let mut dist: HashMap<StateKey, u32> = HashMap::new();
    dist.insert(t.bit_key()?, 0);
    let mut frontier = vec![t.clone()];
    let mut depth = 0u32;
    let mut explored = 1u64;
    let mut last_level = frontier.clone();

    while !frontier.is_empty() {
        let mut next = Vec::new();
        for s in &frontier {
            for (_, u) in neighbors(s)? {
                let key = u.bit_key()?;
                if dist.contains_key(&key) {
                    continue;
                }
                dist.insert(key, depth + 1);
                explored += 1;
                if explored > cfg.max_visited {
                    return Err(Error::ResourceLimit {
                        explored,
                        // Depths already assigned are exact.
                        lower_bound: Some(depth + 1),
                    });
                }
                next.push(u);
            }
        }
        if !next.is_empty() {
            depth += 1;
            last_level = next.clone();
        }
        frontier = next;
    }

    let witness = if want_witness {
        let far = last_level
            .iter()
            .min_by_key(|s| s.bit_key().expect("keyed above"))
            .expect("last level is nonempty");
        Some(backtrack(far, |s| dist.get(&s.bit_key().ok()?).copied())?.reversed())
    } else {
        None
    };

    Ok(DistanceReport {
        value: depth,
        witness,
        explored,
        method: Method::Bfs,
    })
}

/// The whole flip graph of one dimension, materialized: states sorted by bit
/// key with a flat adjacency table (every state has exactly `d` neighbors).
pub struct FlipGraph {
    dim: PolygonDim,
    keys: Vec<StateKey>,
    states: Vec<CsTriangulation>,
    adj: Vec<u32>,
}

impl FlipGraph {
    pub fn build(dim: PolygonDim, cfg: &SearchConfig) -> Result<FlipGraph> {
        let mut pairs: Vec<(StateKey, CsTriangulation)> = Vec::new();
        let overflow = for_each_cs(dim, |t| {
            if pairs.len() as u64 >= cfg.max_enumerated {
                return std::ops::ControlFlow::Break(None);
            }
            match t.bit_key() {
                Ok(key) => {
                    pairs.push((key, t.clone()));
                    std::ops::ControlFlow::Continue(())
                }
                Err(e) => std::ops::ControlFlow::Break(Some(e)),
            }
        });
        match overflow {
            Some(Some(e)) => return Err(e),
            Some(None) => {
                return Err(Error::ResourceLimit {
                    explored: cfg.max_enumerated,
                    lower_bound: None,
                })
            }
            None => {}
        }
        pairs.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        let keys: Vec<StateKey> = pairs.iter().map(|p| p.0).collect();
        let states: Vec<CsTriangulation> = pairs.into_iter().map(|p| p.1).collect();

        let stride = dim.d() as usize;
        let mut adj = Vec::with_capacity(states.len() * stride);
        for s in &states {
            let nbrs = neighbors(s)?;
            debug_assert_eq!(nbrs.len(), stride);
            for (_, u) in nbrs {
                let key = u.bit_key()?;
                let idx = keys
                    .binary_search(&key)
                    .expect("flips stay inside the enumerated space");
                adj.push(idx as u32);
            }
        }
        Ok(FlipGraph {
            dim,
            keys,
            states,
            adj,
        })
    }

    pub fn dim(&self) -> PolygonDim {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn state(&self, idx: u32) -> &CsTriangulation {
        &self.states[idx as usize]
    }

    pub fn index_of(&self, t: &CsTriangulation) -> Result<u32> {
        let key = t.bit_key()?;
        self.keys
            .binary_search(&key)
            .map(|i| i as u32)
            .map_err(|_| Error::InvalidTriangulation(format!("{t} is not in the flip graph")))
    }

    /// BFS depths from `src` over the explicit adjacency, as exact `u8`
    /// levels (diameters here are far below 255).
    pub fn distances_from(&self, src: u32) -> Vec<u8> {
        let mut dist = vec![u8::MAX; self.len()];
        dist[src as usize] = 0;
        let mut frontier = vec![src];
        let mut depth = 0u8;
        let stride = self.dim.d() as usize;
        while !frontier.is_empty() {
            let mut next = Vec::new();
            depth += 1;
            for &v in &frontier {
                let base = v as usize * stride;
                for &u in &self.adj[base..base + stride] {
                    if dist[u as usize] == u8::MAX {
                        dist[u as usize] = depth;
                        next.push(u);
                    }
                }
            }
            frontier = next;
        }
        assert!(
            dist.iter().all(|&d| d != u8::MAX),
            "flip graph is connected; an unreachable state is a bug"
        );
        dist
    }

    /// Eccentricity of `src` and the smallest-index farthest state.
    pub fn eccentricity_from(&self, src: u32) -> (u32, u32) {
        let dist = self.distances_from(src);
        let mut ecc = 0u8;
        let mut far = src;
        for (i, &d) in dist.iter().enumerate() {
            if d > ecc {
                ecc = d;
                far = i as u32;
            }
        }
        (ecc as u32, far)
    }

    /// A geodesic between two states of the graph.
    pub fn geodesic(&self, src: u32, dst: u32) -> Result<FlipPath> {
        let dist = self.distances_from(src);
        let path = backtrack(self.state(dst), |t| {
            let key = t.bit_key().ok()?;
            let idx = self.keys.binary_search(&key).ok()?;
            Some(dist[idx] as u32)
        })?;
        Ok(path.reversed())
    }

    /// One index per dihedral orbit, sorted by canonical key: the sources
    /// the diameter computation actually visits.
    pub fn orbit_representatives(&self) -> Result<Vec<u32>> {
        let mut by_canon: HashMap<StateKey, u32> = HashMap::new();
        for (i, s) in self.states.iter().enumerate() {
            let canon = canonical_key(s)?.key;
            by_canon.entry(canon).or_insert(i as u32);
        }
        let mut reps: Vec<(StateKey, u32)> = by_canon.into_iter().collect();
        reps.sort_unstable();
        Ok(reps.into_iter().map(|(_, i)| i).collect())
    }
}

/// Exact diameter of the flip graph for dimension `dim`.
///
/// On a resource-limit failure the returned error carries a true lower bound
/// for the diameter (the deepest exact BFS level reached from a fixed seed
/// before the cap).
pub fn diameter(dim: PolygonDim, cfg: &SearchConfig, want_witness: bool) -> Result<DistanceReport> {
    let graph = match FlipGraph::build(dim, cfg) {
        Ok(g) => g,
        Err(Error::ResourceLimit { explored, .. }) => {
            let lower = partial_diameter_bound(dim, cfg)?;
            return Err(Error::ResourceLimit {
                explored,
                lower_bound: Some(lower),
            });
        }
        Err(e) => return Err(e),
    };

    let reps = graph.orbit_representatives()?;
    let mut best: Option<(u32, u32, u32)> = None; // (ecc, rep, far)
    for &rep in &reps {
        let (ecc, far) = graph.eccentricity_from(rep);
        if best.map_or(true, |(b, _, _)| ecc > b) {
            best = Some((ecc, rep, far));
        }
    }
    let (value, rep, far) = best.expect("every dimension has at least one state");

    let witness = if want_witness {
        Some(graph.geodesic(rep, far)?)
    } else {
        None
    };

    Ok(DistanceReport {
        value,
        witness,
        explored: graph.len() as u64,
        method: Method::OrbitReduced,
    })
}

/// Best-effort diameter lower bound when the state space exceeds its cap: a
/// capped BFS from the first enumerated state. Exact depths reached are true
/// distances, hence true lower bounds.
fn partial_diameter_bound(dim: PolygonDim, cfg: &SearchConfig) -> Result<u32> {
    let mut seed: Option<CsTriangulation> = None;
    for_each_cs(dim, |t| {
        seed = Some(t.clone());
        std::ops::ControlFlow::Break(())
    });
    let seed = seed.expect("every dimension has at least one state");
    match eccentricity(&seed, cfg, false) {
        Ok(r) => Ok(r.value),
        Err(Error::ResourceLimit { lower_bound, .. }) => Ok(lower_bound.unwrap_or(0)),
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::enumerate_cs;
    use crate::triangulation::triangulation;

    fn dim(d: u16) -> PolygonDim {
        PolygonDim::new(d).unwrap()
    }

    fn cfg() -> SearchConfig {
        SearchConfig::default()
    }

    #[test]
    fn distance_to_self_is_zero() {
        let t = triangulation(dim(2), &[(0, 3), (0, 2), (3, 5)]);
        let r = distance(&t, &t, &cfg(), true).unwrap();
        assert_eq!(r.value, 0);
        assert_eq!(r.witness.unwrap().len(), 0);
    }

    #[test]
    fn distance_one_to_a_neighbor() {
        let t = triangulation(dim(2), &[(0, 3), (0, 2), (3, 5)]);
        for (_, s) in crate::flip::neighbors(&t).unwrap() {
            let r = distance(&t, &s, &cfg(), true).unwrap();
            assert_eq!(r.value, 1);
            let w = r.witness.unwrap();
            w.validate().unwrap();
            assert_eq!((w.start(), w.end()), (&t, &s));
        }
    }

    #[test]
    fn hexagon_flip_graph_is_a_six_cycle() {
        // Each state has 2 neighbors and the farthest state is 3 away.
        let all = enumerate_cs(dim(2), 100).unwrap();
        for t in &all {
            let r = eccentricity(t, &cfg(), true).unwrap();
            assert_eq!(r.value, 3);
            assert_eq!(r.explored, 6);
            let w = r.witness.unwrap();
            w.validate().unwrap();
            assert_eq!(w.len(), 3);
            assert_eq!(w.start(), t);
        }
        let max = all
            .iter()
            .flat_map(|a| all.iter().map(move |b| (a, b)))
            .map(|(a, b)| distance(a, b, &cfg(), false).unwrap().value)
            .max();
        assert_eq!(max, Some(3));
    }

    #[test]
    fn square_diameter_is_one() {
        let r = diameter(dim(1), &cfg(), true).unwrap();
        assert_eq!(r.value, 1);
        assert_eq!(r.explored, 2);
        r.witness.unwrap().validate().unwrap();
    }

    #[test]
    fn distance_symmetry_small() {
        let all = enumerate_cs(dim(3), 100).unwrap();
        for a in &all {
            for b in &all {
                let ab = distance(a, b, &cfg(), false).unwrap().value;
                let ba = distance(b, a, &cfg(), false).unwrap().value;
                assert_eq!(ab, ba);
            }
        }
    }

    #[test]
    fn dimension_mismatch_rejected() {
        let a = triangulation(dim(1), &[(0, 2)]);
        let b = triangulation(dim(2), &[(0, 3), (0, 2), (3, 5)]);
        assert!(matches!(
            distance(&a, &b, &cfg(), false),
            Err(Error::DimMismatch(1, 2))
        ));
    }

    #[test]
    fn invalid_input_rejected() {
        let bad = triangulation(dim(2), &[(0, 2), (1, 4), (2, 5)]);
        let good = triangulation(dim(2), &[(0, 3), (0, 2), (3, 5)]);
        assert!(distance(&bad, &good, &cfg(), false).is_err());
    }

    #[test]
    fn tiny_cap_reports_lower_bound() {
        let a = triangulation(
            dim(4),
            &[(0, 5), (0, 2), (0, 3), (0, 4), (5, 7), (5, 8), (5, 9)],
        );
        let r = eccentricity(&a, &SearchConfig::with_cap(5), false);
        match r {
            Err(Error::ResourceLimit {
                lower_bound: Some(lb),
                ..
            }) => assert!(lb >= 1),
            other => panic!("expected capped search, got {other:?}"),
        }
    }

    #[test]
    fn capped_diameter_carries_a_true_lower_bound() {
        let r = diameter(dim(4), &SearchConfig::with_cap(30), false);
        match r {
            Err(Error::ResourceLimit {
                lower_bound: Some(lb),
                ..
            }) => {
                let exact = diameter(dim(4), &cfg(), false).unwrap().value;
                assert!(lb <= exact, "partial bound {lb} exceeds exact {exact}");
                assert!(lb >= 1);
            }
            other => panic!("expected capped diameter, got {other:?}"),
        }
    }

    #[test]
    fn graph_indices_roundtrip() {
        let graph = FlipGraph::build(dim(3), &cfg()).unwrap();
        assert_eq!(graph.len(), 20);
        for i in 0..graph.len() as u32 {
            assert_eq!(graph.index_of(graph.state(i)).unwrap(), i);
        }
    }

    #[test]
    fn orbit_reduction_matches_full_sweep() {
        for d in 1..=4 {
            let graph = FlipGraph::build(dim(d), &cfg()).unwrap();
            let full_max = (0..graph.len() as u32)
                .map(|i| graph.eccentricity_from(i).0)
                .max()
                .unwrap();
            let reduced = diameter(dim(d), &cfg(), false).unwrap().value;
            assert_eq!(reduced, full_max, "d = {d}");
        }
    }

    #[test]
    fn eccentricity_constant_on_orbits() {
        use crate::polygon::DihedralMap;
        for t in enumerate_cs(dim(3), 100).unwrap() {
            let base = eccentricity(&t, &cfg(), false).unwrap().value;
            for map in [DihedralMap::rotation(5), DihedralMap::reflection(2)] {
                let e = eccentricity(&t.relabel(map), &cfg(), false).unwrap().value;
                assert_eq!(e, base);
            }
        }
    }
}
