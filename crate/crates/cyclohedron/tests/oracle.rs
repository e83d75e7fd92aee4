//! Cross-checks against deliberately naive reimplementations: an enumerator
//! of all triangulations of a polygon filtered for central symmetry, and a
//! plain single-source breadth-first search. The optimized engines must
//! agree with these on everything they can both reach.

use std::collections::{HashMap, HashSet, VecDeque};

use cyclohedron::{
    cs_count, diameter, distance, enumerate_cs, neighbors, CsTriangulation, Edge, PolygonDim,
    SearchConfig, StateKey, Vertex,
};

/// Every triangulation of the convex `m`-gon (vertices `0..m` clockwise),
/// reported as its chord set, by recursion on the apex of each base edge.
fn for_each_polygon_triangulation(m: u16, visit: &mut dyn FnMut(&[(u16, u16)])) {
    fn rec(lo: u16, hi: u16, chords: &mut Vec<(u16, u16)>, visit: &mut dyn FnMut(&[(u16, u16)])) {
        if hi - lo < 2 {
            visit(chords);
            return;
        }
        for apex in lo + 1..hi {
            let keep = chords.len();
            if apex - lo > 1 {
                chords.push((lo, apex));
            }
            if hi - apex > 1 {
                chords.push((apex, hi));
            }
            // Materialize the left sub-polygon's completions, then extend
            // each with every completion of the right sub-polygon.
            let mut lefts: Vec<Vec<(u16, u16)>> = Vec::new();
            rec(lo, apex, &mut Vec::new(), &mut |c| lefts.push(c.to_vec()));
            for left in lefts {
                let mark = chords.len();
                chords.extend_from_slice(&left);
                rec(apex, hi, chords, visit);
                chords.truncate(mark);
            }
            chords.truncate(keep);
        }
    }
    rec(0, m - 1, &mut Vec::new(), visit);
}

fn is_centrally_symmetric(chords: &[(u16, u16)], n: u16) -> bool {
    let set: HashSet<(u16, u16)> = chords.iter().copied().collect();
    chords.iter().all(|&(u, v)| {
        let (mu, mv) = ((u + n / 2) % n, (v + n / 2) % n);
        set.contains(&(mu.min(mv), mu.max(mv)))
    })
}

fn edge_set(t: &CsTriangulation) -> Vec<(u16, u16)> {
    t.interior().iter().map(|e| (e.lo().0, e.hi().0)).collect()
}

#[test]
fn enumeration_agrees_with_the_naive_filter() {
    for d in 1..=6u16 {
        let dim = PolygonDim::new(d).unwrap();
        let n = dim.n();
        let mut filtered: HashSet<Vec<(u16, u16)>> = HashSet::new();
        for_each_polygon_triangulation(n, &mut |chords| {
            if is_centrally_symmetric(chords, n) {
                let mut sorted = chords.to_vec();
                sorted.sort_unstable();
                filtered.insert(sorted);
            }
        });
        let fast: HashSet<Vec<(u16, u16)>> = enumerate_cs(dim, 1 << 24)
            .unwrap()
            .iter()
            .map(edge_set)
            .collect();
        assert_eq!(fast, filtered, "d = {d}");
        assert_eq!(fast.len() as u64, cs_count(d), "d = {d}");
    }
}

#[test]
fn count_at_dimension_eight() {
    let dim = PolygonDim::new(8).unwrap();
    assert_eq!(enumerate_cs(dim, 1 << 24).unwrap().len(), 12_870);
}

fn key(t: &CsTriangulation) -> StateKey {
    t.bit_key().unwrap()
}

/// Textbook breadth-first search, one level at a time, no bidirectional
/// tricks, no symmetry reduction.
fn naive_distance(a: &CsTriangulation, b: &CsTriangulation) -> u32 {
    let mut dist: HashMap<StateKey, u32> = HashMap::new();
    let mut queue = VecDeque::new();
    dist.insert(key(a), 0);
    queue.push_back(a.clone());
    while let Some(t) = queue.pop_front() {
        let here = dist[&key(&t)];
        if t == *b {
            return here;
        }
        for (_, next) in neighbors(&t).unwrap() {
            if !dist.contains_key(&key(&next)) {
                dist.insert(key(&next), here + 1);
                queue.push_back(next);
            }
        }
    }
    unreachable!("the flip graph is connected");
}

#[test]
fn distances_match_naive_bfs_exhaustively() {
    let cfg = SearchConfig::default();
    for d in 1..=4u16 {
        let states = enumerate_cs(PolygonDim::new(d).unwrap(), 1 << 20).unwrap();
        for (i, a) in states.iter().enumerate() {
            for b in states.iter().skip(i + 1) {
                let expect = naive_distance(a, b);
                let report = distance(a, b, &cfg, true).unwrap();
                assert_eq!(report.value, expect);
                let witness = report.witness.unwrap();
                witness.validate().unwrap();
                assert_eq!(witness.len() as u32, expect);
                assert_eq!(witness.start(), a);
                assert_eq!(witness.end(), b);
            }
        }
    }
}

#[test]
fn distances_match_naive_bfs_sampled() {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2024);
    let cfg = SearchConfig::default();
    for d in 5..=6u16 {
        let dim = PolygonDim::new(d).unwrap();
        for _ in 0..100 {
            let a = cyclohedron::sample_cs(dim, &mut rng);
            let b = cyclohedron::sample_cs(dim, &mut rng);
            assert_eq!(
                distance(&a, &b, &cfg, false).unwrap().value,
                naive_distance(&a, &b)
            );
        }
    }
}

#[test]
fn distance_is_a_metric() {
    let cfg = SearchConfig::default();
    let states = enumerate_cs(PolygonDim::new(3).unwrap(), 1 << 20).unwrap();
    let k = states.len();
    let mut table = vec![vec![0u32; k]; k];
    for i in 0..k {
        for j in 0..k {
            table[i][j] = distance(&states[i], &states[j], &cfg, false).unwrap().value;
        }
    }
    for i in 0..k {
        assert_eq!(table[i][i], 0);
        for j in 0..k {
            assert_eq!(table[i][j], table[j][i], "symmetry at ({i}, {j})");
            assert!((table[i][j] == 0) == (i == j), "separation at ({i}, {j})");
            for l in 0..k {
                assert!(
                    table[i][l] <= table[i][j] + table[j][l],
                    "triangle inequality at ({i}, {j}, {l})"
                );
            }
        }
    }
}

#[test]
fn diameter_matches_the_all_pairs_maximum() {
    let cfg = SearchConfig::default();
    for d in 1..=5u16 {
        let dim = PolygonDim::new(d).unwrap();
        let states = enumerate_cs(dim, 1 << 20).unwrap();
        let mut max = 0;
        for a in &states {
            // One naive sweep per source covers all targets.
            let mut dist: HashMap<StateKey, u32> = HashMap::new();
            let mut queue = VecDeque::new();
            dist.insert(key(a), 0);
            queue.push_back(a.clone());
            while let Some(t) = queue.pop_front() {
                let here = dist[&key(&t)];
                max = max.max(here);
                for (_, next) in neighbors(&t).unwrap() {
                    dist.entry(key(&next)).or_insert_with(|| {
                        queue.push_back(next);
                        here + 1
                    });
                }
            }
            assert_eq!(dist.len(), states.len(), "connectivity from one source");
        }
        let report = diameter(dim, &cfg, true).unwrap();
        assert_eq!(report.value, max, "d = {d}");
        let witness = report.witness.unwrap();
        witness.validate().unwrap();
        assert_eq!(witness.len() as u32, max);
    }
}

#[test]
fn known_diameters_up_to_five() {
    let cfg = SearchConfig::default();
    for (d, expect) in [(1u16, 1u32), (2, 3), (3, 5), (4, 7), (5, 9)] {
        let report = diameter(PolygonDim::new(d).unwrap(), &cfg, false).unwrap();
        assert_eq!(report.value, expect, "d = {d}");
    }
}

#[test]
fn eccentricities_match_naive_sweeps() {
    let cfg = SearchConfig::default();
    let dim = PolygonDim::new(3).unwrap();
    for t in enumerate_cs(dim, 1 << 20).unwrap() {
        let mut dist: HashMap<StateKey, u32> = HashMap::new();
        let mut queue = VecDeque::new();
        dist.insert(key(&t), 0);
        queue.push_back(t.clone());
        let mut ecc = 0;
        while let Some(s) = queue.pop_front() {
            let here = dist[&key(&s)];
            ecc = ecc.max(here);
            for (_, next) in neighbors(&s).unwrap() {
                dist.entry(key(&next)).or_insert_with(|| {
                    queue.push_back(next);
                    here + 1
                });
            }
        }
        assert_eq!(
            cyclohedron::eccentricity(&t, &cfg, false).unwrap().value,
            ecc
        );
    }
}

#[test]
fn bridge_routes_stay_within_their_promised_length() {
    // The fan with diagonal {x, x̄} reaches the plain fan in at most
    // d - x + 1 flips; breadth-first search can only improve on that.
    let cfg = SearchConfig::default();
    for d in 2..=5u16 {
        let dim = PolygonDim::new(d).unwrap();
        let hub = cyclohedron::constructions::fan_triangulation(dim);
        for x in 1..=d {
            let shifted = cyclohedron::constructions::fan_with_diagonal(dim, x).unwrap();
            let dist = distance(&hub, &shifted, &cfg, false).unwrap().value;
            assert!(
                dist <= (d - x + 1) as u32,
                "d = {d}, x = {x}: {dist} > {}",
                d - x + 1
            );
        }
    }
}

#[test]
fn resource_limits_carry_usable_lower_bounds() {
    let dim = PolygonDim::new(5).unwrap();
    let far = diameter(dim, &SearchConfig::default(), true)
        .unwrap()
        .witness
        .unwrap();
    match distance(far.start(), far.end(), &SearchConfig::with_cap(4), false) {
        Err(cyclohedron::Error::ResourceLimit {
            lower_bound: Some(lb),
            ..
        }) => {
            let exact = naive_distance(far.start(), far.end());
            assert!(lb <= exact, "lower bound {lb} exceeds exact {exact}");
            assert!(lb >= 1);
        }
        other => panic!("expected a resource limit, got {other:?}"),
    }
}

#[test]
fn mirrors_are_consistent_between_implementations() {
    // The naive filter's modular mirror and the library's must agree.
    let dim = PolygonDim::new(4).unwrap();
    let n = dim.n();
    for u in 0..n {
        for v in u + 1..n {
            let e = Edge::new(Vertex(u), Vertex(v));
            let m = dim.mirror(e);
            let (mu, mv) = ((u + n / 2) % n, (v + n / 2) % n);
            assert_eq!((m.lo().0, m.hi().0), (mu.min(mv), mu.max(mv)));
        }
    }
}
