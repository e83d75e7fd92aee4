//! Randomized structural invariants over seeded samples of the state space.

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use cyclohedron::deletion::delete_vertex;
use cyclohedron::{
    canonical_key, flip, neighbors, sample_cs, CsTriangulation, DihedralMap, Edge, MoveKind,
    PolygonDim, Vertex,
};

prop_compose! {
    fn any_cs(max_d: u16)(d in 1..=max_d, seed in any::<u64>()) -> CsTriangulation {
        let dim = PolygonDim::new(d).unwrap();
        sample_cs(dim, &mut ChaCha8Rng::seed_from_u64(seed))
    }
}

prop_compose! {
    fn any_map()(t in any_cs(9), shift in 0..64u16, reflect in any::<bool>())
        -> (CsTriangulation, DihedralMap)
    {
        let n = t.dim().n();
        let map = if reflect {
            DihedralMap::reflection(shift % n)
        } else {
            DihedralMap::rotation(shift % n)
        };
        (t, map)
    }
}

proptest! {
    #[test]
    fn samples_are_valid(t in any_cs(15)) {
        prop_assert!(t.validate().is_valid());
    }

    #[test]
    fn every_state_has_dimension_many_moves(t in any_cs(12)) {
        let d = t.dim().d() as usize;
        let moves = neighbors(&t).unwrap();
        prop_assert_eq!(moves.len(), d);
        let diagonal_moves = moves
            .iter()
            .filter(|(mv, _)| mv.kind == MoveKind::Diagonal)
            .count();
        prop_assert_eq!(diagonal_moves, 1);
        for (mv, next) in &moves {
            prop_assert!(next.is_valid());
            prop_assert_ne!(next, &t);
            prop_assert!(!next.contains(mv.removed));
            prop_assert!(next.contains(mv.introduced));
        }
    }

    #[test]
    fn flips_are_involutions(t in any_cs(12), pick in any::<prop::sample::Index>()) {
        let moves = neighbors(&t).unwrap();
        let (mv, next) = &moves[pick.index(moves.len())];
        let (back_move, back) = flip(next, mv.introduced).unwrap();
        prop_assert_eq!(&back, &t);
        prop_assert_eq!(back_move, mv.inverse());
    }

    #[test]
    fn canonical_key_ignores_relabeling((t, map) in any_map()) {
        let relabeled = t.relabel(map);
        prop_assert!(relabeled.is_valid());
        prop_assert_eq!(
            canonical_key(&t).unwrap().key,
            canonical_key(&relabeled).unwrap().key
        );
    }

    #[test]
    fn relabeling_commutes_with_flipping((t, map) in any_map(), pick in any::<prop::sample::Index>()) {
        let dim = t.dim();
        let moves = neighbors(&t).unwrap();
        let (mv, next) = &moves[pick.index(moves.len())];
        let (_, direct) = flip(&t.relabel(map), map.apply_edge(dim, mv.removed)).unwrap();
        prop_assert_eq!(direct, next.relabel(map));
    }

    #[test]
    fn documents_round_trip(t in any_cs(15)) {
        let doc = cyclohedron::format::serialize(&t);
        let back = cyclohedron::format::parse(&doc).unwrap();
        prop_assert_eq!(&back, &t);
        prop_assert_eq!(cyclohedron::format::serialize(&back), doc);
    }

    #[test]
    fn crossing_is_symmetric_and_irreflexive(
        d in 1..=12u16,
        a in 0..26u16,
        b in 0..26u16,
        c in 0..26u16,
        e in 0..26u16,
    ) {
        let dim = PolygonDim::new(d).unwrap();
        let n = dim.n();
        let (a, b, c, e) = (a % n, b % n, c % n, e % n);
        prop_assume!(a != b && c != e);
        let e1 = Edge::new(Vertex(a), Vertex(b));
        let e2 = Edge::new(Vertex(c), Vertex(e));
        prop_assert!(!dim.edges_cross(e1, e1));
        prop_assert_eq!(dim.edges_cross(e1, e2), dim.edges_cross(e2, e1));
        if e1.shares_endpoint(e2) {
            prop_assert!(!dim.edges_cross(e1, e2));
        }
    }

    #[test]
    fn deletion_always_shrinks_cleanly(t in any_cs(12), p in 0..32u16) {
        prop_assume!(t.dim().d() >= 2);
        let p = Vertex(p % t.dim().n());
        let (del, map) = delete_vertex(&t, p).unwrap();
        prop_assert!(del.is_valid());
        prop_assert_eq!(del.dim().d(), t.dim().d() - 1);
        prop_assert_eq!(map.apply(p), None);
        prop_assert_eq!(map.apply(t.dim().opposite(p)), None);
        let survivors = t
            .dim()
            .vertices()
            .filter(|&v| map.apply(v).is_some())
            .count();
        prop_assert_eq!(survivors, del.dim().n() as usize);
    }

    #[test]
    fn mirror_classes_partition_the_interior(t in any_cs(15)) {
        let dim = t.dim();
        for e in t.interior() {
            prop_assert!(t.contains(dim.mirror(*e)), "mirror of {} missing", e);
            prop_assert!(t.contains(dim.pair_rep(*e)));
        }
        let diagonals = t
            .interior()
            .iter()
            .filter(|e| dim.is_diagonal(**e))
            .count();
        prop_assert_eq!(diagonals, 1);
    }
}
