//! Ground truth for everything else: a brute-force matching enumerator and
//! generators for the point-set families the classifiers are tested on.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cut::{inside_unit, probe_param};
use crate::error::{Error, Result};
use crate::geom::{orient, segments_intersect, Color, Coord, DirectedLine, Point, Segment, Sign, Vector};
use crate::matching::BrMatching;
use crate::pointset::PointSet;

/// Largest `n` the enumerator accepts.
pub const ORACLE_MAX_N: usize = 8;

/// Every BR-matching of a point set, each with segments sorted.
#[derive(Debug, Clone)]
pub struct OracleResult {
    pub all_matchings: Vec<BrMatching>,
    pub count: usize,
}

impl OracleResult {
    pub fn contains(&self, m: &BrMatching) -> bool {
        let c = m.canonical();
        self.all_matchings.iter().any(|x| x.segments() == c.as_slice())
    }
}

/// Backtracks over white-to-black assignments, pruning a partial matching
/// as soon as its newest segment crosses an earlier one.
pub fn enumerate_all_matchings(base: &Arc<PointSet>) -> Result<OracleResult> {
    if base.n() > ORACLE_MAX_N {
        return Err(Error::Precondition(format!(
            "enumeration is limited to n <= {ORACLE_MAX_N}, got {}",
            base.n()
        )));
    }
    let whites = base.indices_of(Color::White);
    let blacks = base.indices_of(Color::Black);
    let mut used = vec![false; blacks.len()];
    let mut current: Vec<Segment> = Vec::with_capacity(whites.len());
    let mut found: Vec<Vec<Segment>> = Vec::new();
    extend(base.points(), &whites, &blacks, &mut used, &mut current, &mut found);
    found.sort();
    let all_matchings: Vec<BrMatching> =
        found.into_iter().map(|s| BrMatching::new_unchecked(base.clone(), s)).collect();
    Ok(OracleResult { count: all_matchings.len(), all_matchings })
}

fn extend(
    pts: &[Point],
    whites: &[usize],
    blacks: &[usize],
    used: &mut [bool],
    current: &mut Vec<Segment>,
    found: &mut Vec<Vec<Segment>>,
) {
    let k = current.len();
    if k == whites.len() {
        let mut s = current.clone();
        s.sort();
        found.push(s);
        return;
    }
    let w = whites[k];
    for (j, &b) in blacks.iter().enumerate() {
        if used[j] {
            continue;
        }
        let crosses = current
            .iter()
            .any(|s| segments_intersect(&pts[s.white], &pts[s.black], &pts[w], &pts[b]));
        if crosses {
            continue;
        }
        used[j] = true;
        current.push(Segment::new(w, b));
        extend(pts, whites, blacks, used, current, found);
        current.pop();
        used[j] = false;
    }
}

fn ratio(p: i64, q: i64) -> Coord {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// `n` vertical segments of length 2 at `x = i·spacing`, white ends below.
/// The white ends sit on the parabola `y = 3i(i-1)`, which keeps all `2n`
/// points in general position while every segment stays exactly vertical.
pub fn gen_parallel(n: usize, spacing: i64) -> (Arc<PointSet>, BrMatching) {
    assert!(n >= 1 && spacing >= 1);
    let mut pts = Vec::with_capacity(2 * n);
    let mut segs = Vec::with_capacity(n);
    for i in 0..n as i64 {
        let (x, y) = (i * spacing, 3 * i * (i - 1));
        segs.push(Segment::new(pts.len(), pts.len() + 1));
        pts.push(Point::from_ints(x, y, Color::White));
        pts.push(Point::from_ints(x, y + 2, Color::Black));
    }
    let base = Arc::new(PointSet::new_unchecked(pts));
    let m = BrMatching::new_unchecked(base.clone(), segs);
    (base, m)
}

/// Exact unit vector at an angle close to `i·π/n`, from the rational
/// half-angle tangent with denominator `den`.
fn radial_direction(i: usize, n: usize, den: i64) -> Vector {
    let half = (i as f64) * std::f64::consts::PI / (2.0 * n as f64);
    let t = ratio((half.tan() * den as f64).round() as i64, den);
    let t2 = &t * &t;
    let one = Coord::one();
    let d = &one + &t2;
    Vector::new((&one - &t2) / &d, (&t + &t) / d)
}

/// Radial matching without the general-position check. Segment `i` lies on
/// the `i`-th of `n` lines through the origin, pointing outward; it takes the
/// ray at angle `≈ iπ/n` when `occupancy[i]` agrees with the parity of `i`
/// being even, and the opposite ray otherwise. All-true occupancy spreads the
/// segments alternately over both half-planes, which is circular.
pub(crate) fn gen_radial_unchecked(
    n: usize,
    occupancy: &[bool],
    inner: &Coord,
    outer: &Coord,
    den: i64,
) -> (Arc<PointSet>, BrMatching) {
    let mut pts = Vec::with_capacity(2 * n);
    let mut segs = Vec::with_capacity(n);
    for (i, &occ) in occupancy.iter().enumerate() {
        let mut d = radial_direction(i, n, den);
        if occ != (i % 2 == 0) {
            d = -&d;
        }
        segs.push(Segment::new(pts.len(), pts.len() + 1));
        pts.push(Point::at(d.scale(inner), Color::White));
        pts.push(Point::at(d.scale(outer), Color::Black));
    }
    let base = Arc::new(PointSet::new_unchecked(pts));
    let m = BrMatching::new_unchecked(base.clone(), segs);
    (base, m)
}

/// Radial matching on `n` lines through the origin; see
/// [`gen_radial_unchecked`] for the occupancy convention. Whites sit at
/// radius `inner`, blacks at `outer`.
pub fn gen_radial(
    n: usize,
    occupancy: &[bool],
    inner: &Coord,
    outer: &Coord,
) -> Result<(Arc<PointSet>, BrMatching)> {
    if n < 3 || occupancy.len() != n {
        return Err(Error::Precondition(format!(
            "radial matchings need n >= 3 and one occupancy flag per line (n = {n}, flags = {})",
            occupancy.len()
        )));
    }
    if !inner.is_positive() || outer <= inner {
        return Err(Error::Precondition("radii must satisfy 0 < inner < outer".into()));
    }
    let mut last = None;
    for den in (10_000..).step_by(7).take(16) {
        let (base, m) = gen_radial_unchecked(n, occupancy, inner, outer, den);
        match PointSet::new(base.points().to_vec()) {
            Ok(_) => return Ok((base, m)),
            Err(e) => last = Some(e),
        }
    }
    Err(last.expect("at least one attempt"))
}

/// Occupancy flags from a `0`/`1` string.
pub fn parse_occupancy(s: &str) -> Option<Vec<bool>> {
    s.chars()
        .map(|c| match c {
            '1' => Some(true),
            '0' => Some(false),
            _ => None,
        })
        .collect()
}

/// Doubles every point: a white `p` gets a black partner at
/// `p + distance·direction`, a black `p` a white partner at
/// `p - distance·direction`, so all partner segments point the same way.
/// The result lists originals first, partners after.
pub fn gen_duplication(ps: &PointSet, direction: &Vector, distance: &Coord) -> Result<(Arc<PointSet>, BrMatching)> {
    if direction.is_zero() || !distance.is_positive() {
        return Err(Error::Precondition("duplication needs a nonzero direction and positive distance".into()));
    }
    let m = ps.len();
    for attempt in 0..24i64 {
        // shrink the offset and turn it slightly on each retry
        let dist = distance / BigRational::from_integer(BigInt::from(attempt + 1));
        let dir = direction + &Vector::new(Coord::zero(), ratio(attempt, 997));
        if dir.is_zero() {
            continue;
        }
        let off = dir.scale(&dist);
        let mut pts: Vec<Point> = ps.points().to_vec();
        let mut segs = Vec::with_capacity(m);
        for (i, p) in ps.points().iter().enumerate() {
            let (pos, seg) = match p.color() {
                Color::White => (p.pos() + &off, Segment::new(i, m + i)),
                Color::Black => (p.pos() - &off, Segment::new(m + i, i)),
            };
            pts.push(Point::at(pos, p.color().other()));
            segs.push(seg);
        }
        if let Ok(checked) = PointSet::new(pts) {
            let base = Arc::new(checked);
            let mm = BrMatching::new_unchecked(base.clone(), segs);
            return Ok((base, mm));
        }
    }
    Err(Error::Precondition("could not place duplicates in general position".into()))
}

/// Six-segment linear matching whose order type no parallel matching
/// realizes. Segments are named `A..F` in position order; `wedge_triples`
/// lists the triples `(X, Y, W)` where `W` sits in the wedge spanned by the
/// lines through the matching ends of `X` and `Y`.
pub fn gen_nonparallelizable() -> (Arc<PointSet>, BrMatching) {
    const COORDS: [(i64, i64); 12] = [
        (47, -29),
        (40, 27),
        (152, -85),
        (55, 13),
        (153, -57),
        (141, 59),
        (435, -319),
        (405, -225),
        (801, 463),
        (640, 445),
        (-257, 11),
        (-396, 86),
    ];
    let pts: Vec<Point> = COORDS
        .iter()
        .enumerate()
        .map(|(i, &(x, y))| Point::from_ints(x, y, if i % 2 == 0 { Color::White } else { Color::Black }))
        .collect();
    let base = Arc::new(PointSet::new_unchecked(pts));
    let segs = (0..6).map(|k| Segment::new(2 * k, 2 * k + 1)).collect();
    let m = BrMatching::new_unchecked(base.clone(), segs);
    (base, m)
}

/// For the matching of [`gen_nonparallelizable`].
pub fn wedge_triples() -> [(usize, usize, usize); 3] {
    [(0, 1, 3), (1, 2, 4), (2, 0, 5)]
}

/// Whether `w` lies in the wedge of `x` and `y` as in the length argument:
/// the white end of `w` beyond the line through the black ends, the black
/// end of `w` beyond the line through the white ends, with "beyond" taken
/// in the direction `x → y`.
pub fn in_wedge(points: &[Point], x: Segment, y: Segment, w: Segment, forward: bool) -> bool {
    let s = if forward { Sign::Positive } else { Sign::Negative };
    orient(&points[x.black], &points[y.black], &points[w.white]) == s
        && orient(&points[x.white], &points[y.white], &points[w.black]) == s.flip()
}

/// Seeded random point set with coordinates in `[-bound, bound]`; points
/// alternate white and black.
pub fn gen_random(n: usize, seed: u64, bound: i64) -> PointSet {
    assert!(n >= 1 && bound >= 2, "need n >= 1 and bound >= 2");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pts: Vec<Point> = Vec::with_capacity(2 * n);
    while pts.len() < 2 * n {
        let color = if pts.len() % 2 == 0 { Color::White } else { Color::Black };
        let p = Point::from_ints(rng.gen_range(-bound..=bound), rng.gen_range(-bound..=bound), color);
        if fits(&pts, &p) {
            pts.push(p);
        }
    }
    PointSet::new_unchecked(pts)
}

/// `p` is new and on no line through two of `pts`.
fn fits(pts: &[Point], p: &Point) -> bool {
    for (i, a) in pts.iter().enumerate() {
        if a.pos() == p.pos() {
            return false;
        }
        for b in &pts[i + 1..] {
            if orient(a, b, p) == Sign::Zero {
                return false;
            }
        }
    }
    true
}

/// All-pairs reference for [`crate::cut::lowest_crossing_spanning`].
pub fn lowest_crossing_spanning_brute(low: &Vector, high: &Vector, points: &[Point]) -> Option<Vector> {
    let probe = DirectedLine::through(low, high);
    lowest_over_pairs(low, high, points, |x, y| {
        let (sx, sy) = (probe.side_of(x), probe.side_of(y));
        sx != Sign::Zero && sy != Sign::Zero && sx != sy
    })
}

/// All-pairs reference for [`crate::cut::lowest_crossing_one_sided`].
pub fn lowest_crossing_one_sided_brute(low: &Vector, high: &Vector, points: &[Point]) -> Option<Vector> {
    let probe = DirectedLine::through(low, high);
    lowest_over_pairs(low, high, points, |x, y| {
        let sx = probe.side_of(x);
        sx != Sign::Zero && sx == probe.side_of(y)
    })
}

fn lowest_over_pairs(
    low: &Vector,
    high: &Vector,
    points: &[Point],
    keep: impl Fn(&Point, &Point) -> bool,
) -> Option<Vector> {
    let mut best: Option<Coord> = None;
    for (i, x) in points.iter().enumerate() {
        for y in &points[i + 1..] {
            if !keep(x, y) {
                continue;
            }
            if let Some(s) = probe_param(low, high, x.pos(), y.pos()).filter(inside_unit) {
                if best.as_ref().map_or(true, |b| s < *b) {
                    best = Some(s);
                }
            }
        }
    }
    best.map(|s| low + &(high - low).scale(&s))
}

/// Small hand-checked instances.
pub mod fixtures {
    use std::sync::Arc;

    use crate::geom::{Color, Point, Segment};
    use crate::matching::BrMatching;
    use crate::pointset::PointSet;

    fn set(spec: &[(i64, i64, char)]) -> PointSet {
        let pts = spec
            .iter()
            .map(|&(x, y, c)| Point::from_ints(x, y, Color::from_char(c).expect("W or B")))
            .collect();
        PointSet::new(pts).expect("fixture is in general position")
    }

    fn matching(ps: PointSet, pairs: &[(usize, usize)]) -> BrMatching {
        let segs = pairs.iter().map(|&(w, b)| Segment::new(w, b)).collect();
        BrMatching::new(Arc::new(ps), segs).expect("fixture matching is valid")
    }

    /// Two parallel vertical segments: the smallest linear matching.
    pub fn f1() -> PointSet {
        set(&[(0, 0, 'W'), (0, 2, 'B'), (3, 0, 'W'), (3, 2, 'B')])
    }

    pub fn f1_matching() -> BrMatching {
        matching(f1(), &[(0, 1), (2, 3)])
    }

    /// Two antiparallel segments; two matchings.
    pub fn f2() -> PointSet {
        set(&[(0, 0, 'W'), (0, 2, 'B'), (3, 2, 'W'), (3, 0, 'B')])
    }

    pub fn f2_matching() -> BrMatching {
        matching(f2(), &[(0, 1), (2, 3)])
    }

    /// A 3-star: the black ends span a triangle around the white ends.
    pub fn f3() -> PointSet {
        set(&[(0, 1, 'W'), (0, 3, 'B'), (1, -1, 'W'), (3, -3, 'B'), (-1, -1, 'W'), (-3, -3, 'B')])
    }

    pub fn f3_matching() -> BrMatching {
        matching(f3(), &[(0, 1), (2, 3), (4, 5)])
    }

    /// Three upward segments side by side, listed out of order.
    pub fn parallel3() -> PointSet {
        set(&[(2, 0, 'W'), (2, 3, 'B'), (0, 0, 'W'), (0, 3, 'B'), (1, 1, 'W'), (1, 4, 'B')])
    }

    pub fn parallel3_matching() -> BrMatching {
        matching(parallel3(), &[(0, 1), (2, 3), (4, 5)])
    }

    /// F2 plus a third segment off to the right; still admits a cut.
    pub fn cut3() -> PointSet {
        set(&[(0, 0, 'W'), (0, 2, 'B'), (3, 2, 'W'), (3, 0, 'B'), (6, 1, 'W'), (7, 3, 'B')])
    }

    pub fn cut3_matching() -> BrMatching {
        matching(cut3(), &[(0, 1), (2, 3), (4, 5)])
    }

    /// A hull with four color intervals (sizes 1, 2 white and 2, 3 black).
    pub fn four_intervals() -> PointSet {
        set(&[
            (0, -10, 'W'),
            (7, -7, 'B'),
            (10, 0, 'B'),
            (7, 7, 'W'),
            (0, 10, 'W'),
            (-7, 7, 'B'),
            (-10, 0, 'B'),
            (-7, -7, 'B'),
            (1, 2, 'W'),
            (-2, 1, 'W'),
        ])
    }

    /// Named point sets with their reference matchings.
    pub fn all() -> Vec<(&'static str, BrMatching)> {
        vec![
            ("f1", f1_matching()),
            ("f2", f2_matching()),
            ("f3", f3_matching()),
            ("parallel3", parallel3_matching()),
            ("cut3", cut3_matching()),
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matching::{has_chromatic_cut, precedes};

    #[test]
    fn oracle_counts_on_fixtures() {
        let count = |ps: PointSet| enumerate_all_matchings(&Arc::new(ps)).unwrap().count;
        assert_eq!(count(fixtures::f1()), 1);
        assert_eq!(count(fixtures::f2()), 2);
        assert_eq!(count(fixtures::f3()), 3);
    }

    #[test]
    fn oracle_rejects_large_n() {
        let ps = Arc::new(gen_random(9, 1, 100));
        assert!(matches!(enumerate_all_matchings(&ps), Err(Error::Precondition(_))));
    }

    #[test]
    fn oracle_output_is_valid_and_distinct() {
        for seed in 0..20 {
            let ps = Arc::new(gen_random(5, seed, 50));
            let r = enumerate_all_matchings(&ps).unwrap();
            assert!(r.count >= 1);
            for (i, m) in r.all_matchings.iter().enumerate() {
                BrMatching::new(ps.clone(), m.segments().to_vec()).unwrap();
                if i > 0 {
                    assert!(r.all_matchings[i - 1].segments() < m.segments());
                }
            }
        }
    }

    #[test]
    fn parallel_two_is_f1() {
        let (ps, _) = gen_parallel(2, 3);
        assert_eq!(*ps, fixtures::f1());
    }

    #[test]
    fn parallel_is_in_general_position() {
        for n in 1..30 {
            let (ps, m) = gen_parallel(n, 1);
            PointSet::new(ps.points().to_vec()).unwrap();
            BrMatching::new(ps.clone(), m.segments().to_vec()).unwrap();
        }
    }

    #[test]
    fn radial_three_star() {
        let (_, m) = gen_radial(3, &[true; 3], &Coord::one(), &ratio(2, 1)).unwrap();
        assert!(precedes(m.points(), m.segment(0), m.segment(1)));
        assert!(precedes(m.points(), m.segment(1), m.segment(2)));
        assert!(precedes(m.points(), m.segment(2), m.segment(0)));
    }

    #[test]
    fn radial_rejects_bad_input() {
        assert!(gen_radial(2, &[true; 2], &Coord::one(), &ratio(2, 1)).is_err());
        assert!(gen_radial(4, &[true; 3], &Coord::one(), &ratio(2, 1)).is_err());
        assert!(gen_radial(4, &[true; 4], &ratio(2, 1), &Coord::one()).is_err());
    }

    #[test]
    fn duplication_keeps_originals() {
        let f3 = fixtures::f3();
        let (ps, m) = gen_duplication(&f3, &Vector::from_ints(1, 3), &ratio(1, 2)).unwrap();
        assert_eq!(ps.n(), 6);
        assert_eq!(&ps.points()[..6], f3.points());
        BrMatching::new(ps.clone(), m.segments().to_vec()).unwrap();
        assert_eq!(has_chromatic_cut(&m), None);
    }

    #[test]
    fn nonparallelizable_is_valid() {
        let (ps, m) = gen_nonparallelizable();
        PointSet::new(ps.points().to_vec()).unwrap();
        BrMatching::new(ps.clone(), m.segments().to_vec()).unwrap();
        let pts = m.points();
        // position order F, A, B, C, D, E
        let order = [5, 0, 1, 2, 3, 4];
        for i in 0..6 {
            for j in i + 1..6 {
                assert!(precedes(pts, m.segment(order[i]), m.segment(order[j])));
            }
        }
        let pos = |s: usize| order.iter().position(|&t| t == s).unwrap();
        for (x, y, w) in wedge_triples() {
            assert!(in_wedge(pts, m.segment(x), m.segment(y), m.segment(w), pos(x) < pos(y)));
        }
    }

    #[test]
    fn random_is_deterministic_and_valid() {
        let a = gen_random(4, 1, 100);
        assert_eq!(a, gen_random(4, 1, 100));
        assert_ne!(a, gen_random(4, 2, 100));
        PointSet::new(a.points().to_vec()).unwrap();
    }
}
