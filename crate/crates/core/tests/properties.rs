use proptest::prelude::*;
use triblock::blocker::{build_edges, is_blocker, nominal_structures, parse_structure, BlockerStructure};
use triblock::game::{apply_move, new_game, Bias, GameConfig, Player, Status};
use triblock::geometry::{circle_vertices, segments_cross};
use triblock::polygon::{canonical_rotation, crosses, rotate, Diagonal, DiagonalSet, PolygonSize};
use triblock::triangulation::{contains_triangulation, is_triangulation};
use triblock::Rational;

fn p(n: usize) -> PolygonSize {
    PolygonSize::new(n).unwrap()
}

fn diagonal(n: usize) -> impl Strategy<Value = Diagonal> {
    let size = p(n);
    (0..size.diagonal_count()).prop_map(move |i| size.diagonal_at(i).unwrap())
}

fn diagonal_set(n: usize) -> impl Strategy<Value = DiagonalSet> {
    let size = p(n);
    proptest::collection::vec(any::<bool>(), size.diagonal_count()).prop_map(move |bits| {
        let ds = bits
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(i, _)| size.diagonal_at(i).unwrap());
        DiagonalSet::from_diagonals(size, ds).unwrap()
    })
}

fn sized_set() -> impl Strategy<Value = (usize, DiagonalSet)> {
    (4usize..=14).prop_flat_map(|n| diagonal_set(n).prop_map(move |s| (n, s)))
}

#[test]
fn crossing_matches_rational_geometry() {
    for n in 4..=8 {
        let pts = circle_vertices::<Rational>(n);
        let ds: Vec<Diagonal> = p(n).diagonals().collect();
        for &a in &ds {
            for &b in &ds {
                let geo = segments_cross(&pts[a.i()], &pts[a.j()], &pts[b.i()], &pts[b.j()]);
                assert_eq!(crosses(p(n), a, b).unwrap(), geo, "n={n} {a} {b}");
            }
        }
    }
}

/// Beam `j` leaves vertex `m+3+j` (relative to offset 0) for target `t_j`;
/// built here without any validation so invalid sequences can be tested.
fn raw_edges(n: usize, m: usize, beams: &[usize]) -> DiagonalSet {
    let pairs = (0..=m)
        .map(|t| (t, t + 2))
        .chain(beams.iter().enumerate().map(|(j, &t)| (m + 3 + j, t)));
    DiagonalSet::from_pairs(p(n), pairs).unwrap()
}

#[test]
fn beam_constraint_equivalences() {
    for n in 5..=10 {
        for m in 1..=n - 3 {
            let len = n - 3 - m;
            let mut seq = vec![1usize; len];
            loop {
                let arithmetic = (0..len).all(|k| (0..k).all(|j| seq[k] <= seq[j] + 1));
                let st = BlockerStructure {
                    offset: 0,
                    m,
                    beams: seq.clone(),
                };
                let geometric = st.validate(p(n)).is_ok();
                let blocks = is_blocker(p(n), &raw_edges(n, m, &seq));
                assert_eq!(arithmetic, geometric, "n={n} m={m} {seq:?}");
                assert_eq!(arithmetic, blocks, "n={n} m={m} {seq:?}");
                // odometer over [1, m+1]^len
                let mut i = 0;
                while i < len && seq[i] == m + 1 {
                    seq[i] = 1;
                    i += 1;
                }
                if i == len {
                    break;
                }
                seq[i] += 1;
            }
        }
    }
}

#[test]
fn nominal_structures_build_and_parse() {
    for n in 4..=11 {
        for st in nominal_structures(p(n)) {
            let edges = build_edges(p(n), &st).unwrap();
            assert!(is_blocker(p(n), &edges), "n={n} {st}");
            let parsed = parse_structure(p(n), &edges).unwrap();
            assert_eq!(build_edges(p(n), &parsed).unwrap(), edges, "n={n} {st}");
        }
    }
}

proptest! {
    #[test]
    fn crossing_is_symmetric_and_rotation_invariant(
        (n, a, b, k) in (4usize..=40).prop_flat_map(|n| (Just(n), diagonal(n), diagonal(n), 0..n))
    ) {
        let size = p(n);
        let c = crosses(size, a, b).unwrap();
        prop_assert_eq!(c, crosses(size, b, a).unwrap());
        let r = |d: Diagonal| Diagonal::new(size, (d.i() + k) % n, (d.j() + k) % n).unwrap();
        prop_assert_eq!(c, crosses(size, r(a), r(b)).unwrap());
    }

    #[test]
    fn rotations_compose((n, s) in sized_set(), a in 0usize..20, b in 0usize..20) {
        let size = p(n);
        let ra = rotate(size, a, &s);
        prop_assert_eq!(ra.len(), s.len());
        prop_assert_eq!(rotate(size, b, &ra), rotate(size, a + b, &s));
        prop_assert_eq!(rotate(size, n - a % n, &ra), s.clone());
        let (canon, k) = canonical_rotation(size, &s);
        prop_assert_eq!(&rotate(size, k, &s), &canon);
        prop_assert_eq!(canonical_rotation(size, &ra).0, canon);
    }

    #[test]
    fn text_and_json_round_trip((n, s) in sized_set()) {
        let size = p(n);
        prop_assert_eq!(DiagonalSet::parse(size, &s.to_string()).unwrap(), s.clone());
        let json = serde_json::to_string(&s).unwrap();
        prop_assert_eq!(serde_json::from_str::<DiagonalSet>(&json).unwrap(), s);
    }

    #[test]
    fn witness_is_a_triangulation_inside_the_allowed_set((n, s) in sized_set()) {
        let size = p(n);
        if let Some(t) = contains_triangulation(size, &s) {
            prop_assert!(t.diagonals().is_subset(&s));
            prop_assert!(is_triangulation(size, t.diagonals()));
        }
        let full = contains_triangulation(size, &DiagonalSet::full(size));
        prop_assert!(full.is_some());
    }

    #[test]
    fn random_games_keep_the_state_invariants(
        n in 4usize..=10,
        picks in proptest::collection::vec(any::<prop::sample::Index>(), 60),
        biased in any::<bool>(),
        breaker_first in any::<bool>(),
    ) {
        let bias = if biased { Bias::OneTwo } else { Bias::Unbiased };
        let first = if breaker_first { Player::Breaker } else { Player::Maker };
        let mut g = new_game(GameConfig::with_bias(p(n), bias, first)).unwrap();
        let mut picks = picks.into_iter();
        while g.status() == Status::Ongoing {
            let free: Vec<Diagonal> = g.unclaimed().iter().collect();
            let mut claim = Vec::new();
            let mut pool = free.clone();
            for _ in 0..g.required_arity() {
                let i = picks.next().map_or(0, |ix| ix.index(pool.len()));
                claim.push(pool.remove(i));
            }
            g = apply_move(&g, g.to_move(), &claim).unwrap();
            prop_assert!(g.maker().is_disjoint(g.breaker()));
        }
        match g.status() {
            Status::MakerWon => {
                let w = g.witness().unwrap();
                prop_assert!(w.diagonals().is_subset(g.maker()));
            }
            Status::BreakerWon => {
                prop_assert!(contains_triangulation(p(n), &g.breaker().complement()).is_none());
            }
            Status::Ongoing => unreachable!(),
        }
    }
}
