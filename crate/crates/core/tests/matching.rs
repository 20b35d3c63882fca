use std::sync::Arc;

use bimatch::matching::{color_intervals, has_chromatic_cut, precedes, side_set, triple_pattern, SidednessOutcome, TriplePattern};
use bimatch::testlab::{enumerate_all_matchings, fixtures, gen_random};
use bimatch::{BrMatching, Color, Segment};
use proptest::prelude::*;

type P = (i128, i128);

fn det(a: P, b: P, c: P) -> i128 {
    (b.0 - a.0) * (c.1 - a.1) - (b.1 - a.1) * (c.0 - a.0)
}

/// `a ⊴ b` restated on integer endpoints `(white, black)`.
fn oracle_precedes(a: (P, P), b: (P, P)) -> bool {
    let right_of = |s: (P, P), q: P| det(s.0, s.1, q) < 0;
    let left_of = |s: (P, P), q: P| det(s.0, s.1, q) > 0;
    right_of(a, b.0) && right_of(a, b.1) && left_of(b, a.0) && left_of(b, a.1)
}

fn as_pair(m: &BrMatching, k: usize) -> (P, P) {
    let s = m.segment(k);
    let p = |i: usize| {
        let q = &m.points()[i];
        (q.x().to_integer().try_into().unwrap(), q.y().to_integer().try_into().unwrap())
    };
    (p(s.white), p(s.black))
}

#[test]
fn two_segment_fixtures() {
    let f1 = fixtures::f1_matching();
    assert!(f1.precedes(0, 1));
    assert!(!f1.precedes(1, 0));
    let f2 = fixtures::f2_matching();
    assert!(matches!(f2.sidedness(0, 1), SidednessOutcome::Incomparable(_)));
    assert_eq!(has_chromatic_cut(&f2), Some((0, 1)));
    assert_eq!(has_chromatic_cut(&f1), None);
}

#[test]
fn oracle_counts_for_fixtures() {
    let count = |m: BrMatching| enumerate_all_matchings(m.base()).unwrap().count;
    assert_eq!(count(fixtures::f1_matching()), 1);
    assert_eq!(count(fixtures::f2_matching()), 2);
    // the circular matching and its two alternatives
    assert!(count(fixtures::f3_matching()) >= 3);
}

#[test]
fn three_star_is_cyclic() {
    let m = fixtures::f3_matching();
    let p = m.points();
    assert_eq!(triple_pattern(p, m.segment(0), m.segment(1), m.segment(2)), TriplePattern::ThreeStar);
    let forward = m.precedes(0, 1) && m.precedes(1, 2) && m.precedes(2, 0);
    let backward = m.precedes(1, 0) && m.precedes(2, 1) && m.precedes(0, 2);
    assert!(forward ^ backward);
}

#[test]
fn validation_rejects_bad_matchings() {
    let diagonals = vec![Segment::new(0, 3), Segment::new(2, 1)];
    assert!(BrMatching::new(Arc::new(fixtures::f1()), diagonals).is_err());
    let ps = Arc::new(fixtures::f2());
    let same_color = vec![Segment::new(0, 2), Segment::new(1, 3)];
    assert!(BrMatching::new(ps.clone(), same_color).is_err());
    let reused = vec![Segment::new(0, 1), Segment::new(0, 3)];
    assert!(BrMatching::new(ps.clone(), reused).is_err());
    assert!(BrMatching::new(ps, vec![Segment::new(0, 1)]).is_err());
}

#[test]
fn hull_color_intervals() {
    let sizes: Vec<(Color, usize)> = color_intervals(&fixtures::four_intervals());
    assert_eq!(sizes.len(), 4);
    assert_eq!(sizes.iter().map(|s| s.1).sum::<usize>(), 8);
    assert_eq!(color_intervals(&fixtures::f3()), vec![(Color::Black, 3)]);
}

#[test]
fn side_sets_partition_a_circular_matching() {
    let m = fixtures::f3_matching();
    for b in 0..3 {
        let (l, r) = (side_set(&m, b, true), side_set(&m, b, false));
        assert_eq!(l.len() + r.len(), 2);
        assert!(r.iter().all(|&x| m.precedes(b, x)));
        assert!(l.iter().all(|&x| m.precedes(x, b)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sidedness_matches_integer_oracle(n in 2usize..5, seed in any::<u64>()) {
        let ps = Arc::new(gen_random(n, seed, 20));
        for m in enumerate_all_matchings(&ps).unwrap().all_matchings {
            for a in 0..n {
                for b in 0..n {
                    if a != b {
                        prop_assert_eq!(m.precedes(a, b), oracle_precedes(as_pair(&m, a), as_pair(&m, b)));
                        prop_assert_eq!(m.precedes(a, b), precedes(m.points(), m.segment(a), m.segment(b)));
                    }
                }
            }
        }
    }

    #[test]
    fn oracle_matchings_are_valid_and_distinct(n in 1usize..6, seed in any::<u64>()) {
        let ps = Arc::new(gen_random(n, seed, 15));
        let all = enumerate_all_matchings(&ps).unwrap();
        prop_assert!(all.count >= 1);
        prop_assert_eq!(all.count, all.all_matchings.len());
        for (i, m) in all.all_matchings.iter().enumerate() {
            prop_assert!(BrMatching::new(ps.clone(), m.segments().to_vec()).is_ok());
            for other in &all.all_matchings[i + 1..] {
                prop_assert!(!m.same_segments(other));
            }
        }
    }

    #[test]
    fn submatchings_keep_sidedness(n in 3usize..6, seed in any::<u64>()) {
        let ps = Arc::new(gen_random(n, seed, 25));
        let m = enumerate_all_matchings(&ps).unwrap().all_matchings.remove(0);
        let keep: Vec<usize> = (0..n).filter(|k| k % 2 == 0 || *k == 1).collect();
        let sub = m.submatching(&keep);
        for (i, &a) in keep.iter().enumerate() {
            for (j, &b) in keep.iter().enumerate() {
                if i != j {
                    prop_assert_eq!(sub.precedes(i, j), m.precedes(a, b));
                }
            }
        }
        prop_assert_eq!(sub.points().len(), 2 * keep.len());
    }
}
