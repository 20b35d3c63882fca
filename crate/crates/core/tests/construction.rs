use std::sync::Arc;

use bimatch::classify::{classify, is_unique, Verdict};
use bimatch::construct::{
    alternative_matching_via_balanced_line, alternative_matchings_circular, build_alternating_paths, build_matching,
    ham_sandwich,
};
use bimatch::cut::balanced_line_for_matching;
use bimatch::matching::has_chromatic_cut;
use bimatch::testlab::{enumerate_all_matchings, fixtures, gen_duplication, gen_nonparallelizable, gen_parallel, gen_random};
use bimatch::{BrMatching, Color, Coord, Sign, Vector};
use proptest::prelude::*;

fn revalidate(m: &BrMatching) -> bool {
    BrMatching::new(m.base().clone(), m.segments().to_vec()).is_ok()
}

#[test]
fn circular_alternatives_on_the_three_star() {
    let m = fixtures::f3_matching();
    let verdict = classify(&m).unwrap();
    let (a, b) = alternative_matchings_circular(&m, &verdict).unwrap();
    let oracle = enumerate_all_matchings(m.base()).unwrap();
    for alt in [&a, &b] {
        assert!(revalidate(alt));
        assert!(oracle.contains(alt));
        assert!(alt.segments().iter().all(|s| !m.segments().contains(s)));
    }
    assert!(!a.same_segments(&b));
    assert!(alternative_matchings_circular(&fixtures::f1_matching(), &classify(&fixtures::f1_matching()).unwrap()).is_err());
}

#[test]
fn balanced_line_alternative_on_f2() {
    let m = fixtures::f2_matching();
    let (a, b) = has_chromatic_cut(&m).unwrap();
    let bl = balanced_line_for_matching(&m, a, b).unwrap();
    let alt = alternative_matching_via_balanced_line(m.base(), &bl).unwrap();
    assert!(revalidate(&alt));
    assert!(!alt.segments().contains(&bl.crossed));
    // the only other matching of F2 is the horizontal pair
    let other = enumerate_all_matchings(m.base()).unwrap().all_matchings.into_iter().find(|x| !x.same_segments(&m));
    assert!(alt.same_segments(&other.unwrap()));
}

#[test]
fn alternating_paths_through_a_parallel_family() {
    let (_, m) = gen_parallel(6, 3);
    let verdict = classify(&m).unwrap();
    for path in build_alternating_paths(&m, &verdict).unwrap() {
        assert_eq!(path.vertices.len(), 12);
        assert!(path.is_simple(m.points()));
        let colors: Vec<Color> = path.vertices.iter().map(|&v| m.points()[v].color()).collect();
        assert!(colors.windows(2).all(|w| w[0] != w[1]));
    }
}

#[test]
fn nonparallelizable_fixture() {
    let (ps, m) = gen_nonparallelizable();
    assert_eq!(ps.n(), 6);
    assert!(revalidate(&m));
    assert!(matches!(classify(&m).unwrap(), Verdict::Linear { .. }));
}

#[test]
fn duplication_of_f2_is_unique() {
    let dist = Coord::new(1.into(), 100.into());
    let (dup, m) = gen_duplication(&fixtures::f2(), &Vector::from_ints(1, 0), &dist).unwrap();
    assert_eq!(dup.n(), 4);
    assert!(revalidate(&m));
    assert_eq!(enumerate_all_matchings(&dup).unwrap().count, 1);
    assert!(is_unique(&dup).unwrap().unique);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn built_matchings_are_valid(n in 1usize..60, seed in any::<u64>()) {
        let ps = Arc::new(gen_random(n, seed, 1000));
        let m = build_matching(&ps);
        prop_assert_eq!(m.len(), n);
        prop_assert!(revalidate(&m));
    }

    #[test]
    fn built_matchings_appear_in_the_oracle(n in 1usize..6, seed in any::<u64>()) {
        let ps = Arc::new(gen_random(n, seed, 12));
        prop_assert!(enumerate_all_matchings(&ps).unwrap().contains(&build_matching(&ps)));
    }

    // at most n/2 points of each color strictly on each side
    #[test]
    fn ham_sandwich_bisects(n in 1usize..40, seed in any::<u64>()) {
        let ps = gen_random(n, seed, 500);
        let cut = ham_sandwich(&ps);
        prop_assert!(cut.on_line.len() <= 2);
        let mut counts = [[0usize; 2]; 2];
        for p in ps.points() {
            let side = match cut.line.side_of(p) {
                Sign::Positive => 0,
                Sign::Negative => 1,
                Sign::Zero => continue,
            };
            counts[side][(p.color() == Color::Black) as usize] += 1;
        }
        for side in counts {
            for c in side {
                prop_assert!(c <= n / 2);
            }
        }
    }
}
