//! Witness lines for matchings that admit a chromatic cut, and the
//! lowest-crossing searches used to pick a point of a segment that lies on
//! no line through two other input points.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::geom::{angle_cmp, half, Color, Coord, DirectedLine, Point, Segment, Sign, Vector};
use crate::hull::convex_hull_of;
use crate::matching::{pair_geometry, BrMatching, PairGeometry, SidednessOutcome};

/// A line through the interiors of two segments that puts their black ends
/// on different sides.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChromaticCutWitness {
    pub line: DirectedLine,
    pub seg_a: Segment,
    pub seg_b: Segment,
}

/// A line avoiding every point, with equally many white and black points in
/// each open half-plane, crossing the interior of `crossed`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BalancedLine {
    pub line: DirectedLine,
    pub crossed: Segment,
}

/// Number of halvings tried when nudging a line off the input points.
const MAX_NUDGE: u32 = 160;

fn crosses_interior(points: &[Point], line: &DirectedLine, s: Segment) -> bool {
    let a = line.side_of(&points[s.white]);
    let b = line.side_of(&points[s.black]);
    a != Sign::Zero && b != Sign::Zero && a != b
}

fn avoids_points(points: &[Point], line: &DirectedLine) -> bool {
    points.iter().all(|p| line.side_of(p) != Sign::Zero)
}

/// Checks every condition on a chromatic-cut witness exactly.
pub fn is_chromatic_cut(points: &[Point], w: &ChromaticCutWitness) -> bool {
    avoids_points(points, &w.line)
        && crosses_interior(points, &w.line, w.seg_a)
        && crosses_interior(points, &w.line, w.seg_b)
        && w.line.side_of(&points[w.seg_a.black]) != w.line.side_of(&points[w.seg_b.black])
}

/// `#black − #white` strictly right of `line`, and whether some point lies
/// on it.
fn right_excess(points: &[Point], line: &DirectedLine) -> (i64, bool) {
    let mut excess = 0;
    let mut touches = false;
    for p in points {
        match line.side_of(p) {
            Sign::Negative => excess += color_weight(p.color()),
            Sign::Zero => touches = true,
            Sign::Positive => {}
        }
    }
    (excess, touches)
}

fn color_weight(c: Color) -> i64 {
    match c {
        Color::Black => 1,
        Color::White => -1,
    }
}

/// Equal color counts in both open half-planes and no point on the line.
/// Assumes the whole set is balanced.
pub fn is_balanced(points: &[Point], line: &DirectedLine) -> bool {
    let (excess, touches) = right_excess(points, line);
    excess == 0 && !touches
}

pub fn validate_balanced_line(points: &[Point], bl: &BalancedLine) -> std::result::Result<(), String> {
    let mut counts = [[0usize; 2]; 2];
    for (i, p) in points.iter().enumerate() {
        let side = match bl.line.side_of(p) {
            Sign::Positive => 0,
            Sign::Negative => 1,
            Sign::Zero => return Err(format!("point {i} lies on the line")),
        };
        counts[side][(p.color() == Color::Black) as usize] += 1;
    }
    if counts[0][0] != counts[0][1] || counts[1][0] != counts[1][1] {
        return Err(format!("unbalanced half-planes {counts:?}"));
    }
    if !crosses_interior(points, &bl.line, bl.crossed) {
        return Err("line misses the segment".into());
    }
    Ok(())
}

fn pow2_inv(k: u32) -> Coord {
    Coord::new(BigInt::one(), BigInt::one() << k)
}

/// The line through `pivot` with direction `dir`, then the same line turned
/// slightly either way, by shrinking amounts.
fn nudged(pivot: Vector, dir: Vector) -> impl Iterator<Item = DirectedLine> {
    let normal = dir.perp();
    let base = DirectedLine::new(pivot.clone(), dir.clone());
    std::iter::once(base).chain((1..=MAX_NUDGE).flat_map(move |k| {
        let tilt = normal.scale(&pow2_inv(k));
        [
            DirectedLine::new(pivot.clone(), &dir + &tilt),
            DirectedLine::new(pivot.clone(), &dir - &tilt),
        ]
    }))
}

/// A chromatic cut through the segments at positions `a` and `b`, which must
/// form a configuration that admits one.
pub fn chromatic_cut_from_pair(m: &BrMatching, a: usize, b: usize) -> Result<ChromaticCutWitness> {
    let points = m.points();
    let (sa, sb) = (m.segment(a), m.segment(b));
    let geo = pair_geometry(points, sa, sb);
    if !geo.certifies_cut() {
        return Err(Error::Precondition(format!("segments {a} and {b} form {geo:?}, which admits no chromatic cut")));
    }
    let (ma, mb) = (sa.midpoint(points), sb.midpoint(points));
    let through_mids = (ma.clone(), &mb - &ma);
    let along_a = (ma.clone(), sa.direction(points));
    let along_b = (mb.clone(), sb.direction(points));
    let bases = match geo {
        PairGeometry::RayCrossesSegment => [along_a, along_b, through_mids],
        _ => [through_mids, along_a, along_b],
    };
    for (pivot, dir) in bases {
        for line in nudged(pivot, dir) {
            let w = ChromaticCutWitness { line, seg_a: sa, seg_b: sb };
            if is_chromatic_cut(points, &w) {
                return Ok(w);
            }
        }
    }
    Err(Error::Internal(format!("no chromatic cut found for segments {a} and {b}")))
}

/// Parameter `s` with `low + s·(high − low)` on the line through `x` and
/// `y`, if the lines are not parallel.
pub(crate) fn probe_param(low: &Vector, high: &Vector, x: &Vector, y: &Vector) -> Option<Coord> {
    DirectedLine::through(low, high)
        .intersection_params(&DirectedLine::through(x, y))
        .map(|(s, _)| s)
}

pub(crate) fn inside_unit(s: &Coord) -> bool {
    s.is_positive() && *s < Coord::one()
}

fn lower(best: Option<Coord>, s: Option<Coord>) -> Option<Coord> {
    match (best, s) {
        (Some(a), Some(b)) => Some(if b < a { b } else { a }),
        (a, b) => a.or(b),
    }
}

fn point_at(low: &Vector, high: &Vector, s: &Coord) -> Vector {
    low + &(high - low).scale(s)
}

/// Lowest point of the segment from `low` to `high` hit by a segment
/// joining two of `points` that lie on opposite sides of its supporting
/// line. "Lowest" means closest to `low`.
pub fn lowest_crossing_spanning(low: &Vector, high: &Vector, points: &[Point]) -> Option<Vector> {
    spanning_param(low, high, points).map(|s| point_at(low, high, &s))
}

fn spanning_param(low: &Vector, high: &Vector, points: &[Point]) -> Option<Coord> {
    let probe = DirectedLine::through(low, high);
    let mut left = Vec::new();
    let mut right = Vec::new();
    for (i, p) in points.iter().enumerate() {
        match probe.side_of(p) {
            Sign::Positive => left.push(i),
            Sign::Negative => right.push(i),
            Sign::Zero => {}
        }
    }
    Spanning { low, high, points, up: high - low }.solve(left, right)
}

struct Spanning<'a> {
    low: &'a Vector,
    high: &'a Vector,
    points: &'a [Point],
    up: Vector,
}

impl Spanning<'_> {
    fn pair(&self, x: usize, y: usize) -> Option<Coord> {
        probe_param(self.low, self.high, self.points[x].pos(), self.points[y].pos()).filter(inside_unit)
    }

    fn solve(&self, left: Vec<usize>, right: Vec<usize>) -> Option<Coord> {
        if left.len().min(right.len()) <= 2 {
            let mut best = None;
            for &x in &left {
                for &y in &right {
                    best = lower(best, self.pair(x, y));
                }
            }
            return best;
        }
        let (mut big, small) = if left.len() >= right.len() { (left, right) } else { (right, left) };
        let low = self.low;
        let mid = big.len() / 2;
        big.select_nth_unstable_by(mid, |&x, &y| {
            let u = self.points[x].pos() - low;
            let v = self.points[y].pos() - low;
            Sign::of(&v.cross(&u)).as_i8().cmp(&0)
        });
        let pivot = big[mid];
        let k = self.points[pivot].pos() - low;
        let up_side = Sign::of(&k.cross(&self.up));
        let is_up = |i: usize| i == pivot || Sign::of(&k.cross(&(self.points[i].pos() - low))) == up_side;
        let (big_up, big_low): (Vec<usize>, Vec<usize>) = big.iter().partition(|&&i| is_up(i));
        let (small_up, small_low): (Vec<usize>, Vec<usize>) = small.iter().partition(|&&i| is_up(i));

        let mut best = self.hull_edge(&big_up, &small_up);
        best = lower(best, self.solve(big_up, small_low));
        lower(best, self.solve(big_low, small_up))
    }

    /// Lowest crossing among segments from `a` to `b` when every such
    /// segment crosses above `low`: the crossing hull edge of the union.
    fn hull_edge(&self, a: &[usize], b: &[usize]) -> Option<Coord> {
        if a.is_empty() || b.is_empty() {
            return None;
        }
        let union: Vec<usize> = a.iter().chain(b).copied().collect();
        let hull = convex_hull_of(self.points, &union);
        let probe = DirectedLine::through(self.low, self.high);
        let mut best: Option<Coord> = None;
        for i in 0..hull.len() {
            let (x, y) = (hull[i], hull[(i + 1) % hull.len()]);
            let sx = probe.side_of(&self.points[x]);
            let sy = probe.side_of(&self.points[y]);
            if sx != sy && sx != Sign::Zero && sy != Sign::Zero {
                if let Some(s) = probe_param(self.low, self.high, self.points[x].pos(), self.points[y].pos()) {
                    best = Some(match best {
                        Some(b) if b <= s => b,
                        _ => s,
                    });
                }
            }
        }
        best.filter(inside_unit)
    }
}

/// Lowest point of the segment from `low` to `high` hit by a line through
/// two of `points` on the same side of its supporting line. Only radially
/// adjacent pairs around `low` need to be examined.
pub fn lowest_crossing_one_sided(low: &Vector, high: &Vector, points: &[Point]) -> Option<Vector> {
    one_sided_param(low, high, points).map(|s| point_at(low, high, &s))
}

fn one_sided_param(low: &Vector, high: &Vector, points: &[Point]) -> Option<Coord> {
    let probe = DirectedLine::through(low, high);
    let mut best = None;
    for want in [Sign::Positive, Sign::Negative] {
        let mut dirs: Vec<Vector> =
            points.iter().filter(|p| probe.side_of(p) == want).map(|p| p.pos() - low).collect();
        // all within one open half-plane around `low`, so the cross
        // product orders them
        dirs.sort_by(|u, v| Sign::of(&v.cross(u)).as_i8().cmp(&0));
        for w in dirs.windows(2) {
            let (x, y) = (low + &w[0], low + &w[1]);
            best = lower(best, probe_param(low, high, &x, &y).filter(inside_unit));
        }
    }
    best
}

/// A point in the interior of `seg` that lies on no line through two of
/// the other points.
pub fn general_position_point(points: &[Point], seg: Segment) -> Vector {
    general_position_point_after(points, seg, points[seg.white].pos())
}

/// Like [`general_position_point`], but strictly between `start` (a point
/// of `seg` other than its black end) and the first crossing beyond it.
fn general_position_point_after(points: &[Point], seg: Segment, start: &Vector) -> Vector {
    let high = points[seg.black].pos();
    let others: Vec<Point> = points
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != seg.white && i != seg.black)
        .map(|(_, p)| p.clone())
        .collect();
    let s = lower(one_sided_param(start, high, &others), spanning_param(start, high, &others));
    let t = match s {
        Some(s) => s * half(),
        None => half(),
    };
    point_at(start, high, &t)
}

/// Where `line` meets the supporting line of `seg`.
fn meet(points: &[Point], line: &DirectedLine, seg: Segment) -> Vector {
    let (w, b) = (points[seg.white].pos(), points[seg.black].pos());
    let t = -line.direction.cross(&(w - &line.origin)) / line.direction.cross(&(b - w));
    point_at(w, b, &t)
}

/// A direction strictly between `u` and the next event direction `v`
/// counterclockwise.
fn inside_gap(u: &Vector, v: &Vector) -> Vector {
    if u.cross(v).is_positive() {
        u + v
    } else {
        u.perp()
    }
}

/// A balanced line through `pivot`, found by turning a directed line a full
/// circle about it and tracking `#black − #white` on its right.
pub fn balanced_line_through(points: &[Point], pivot: &Vector) -> Option<DirectedLine> {
    let mut events: Vec<(Vector, i64)> = Vec::with_capacity(2 * points.len());
    for p in points {
        let v = p.pos() - pivot;
        if v.is_zero() {
            return None;
        }
        let w = color_weight(p.color());
        events.push((-&v, -w));
        events.push((v, w));
    }
    events.sort_by(|a, b| angle_cmp(&a.0, &b.0));
    let mut groups: Vec<(Vector, i64)> = Vec::new();
    for (dir, w) in events {
        match groups.last_mut() {
            Some((d, acc)) if angle_cmp(d, &dir).is_eq() => *acc += w,
            _ => groups.push((dir, w)),
        }
    }
    let k = groups.len();
    if k < 2 {
        return None;
    }
    let first = DirectedLine::new(pivot.clone(), inside_gap(&groups[0].0, &groups[1].0));
    let (mut excess, _) = right_excess(points, &first);
    for i in 0..k {
        let next = &groups[(i + 1) % k];
        if excess == 0 {
            let line = DirectedLine::new(pivot.clone(), inside_gap(&groups[i].0, &next.0));
            if is_balanced(points, &line) {
                return Some(line);
            }
        }
        excess += next.1;
    }
    None
}

/// A balanced line crossing one of the segments at positions `a` and `b`,
/// which must be incomparable. A chromatic cut meets both segments; a line
/// is turned about a general-position point just above each meeting point.
pub fn balanced_line_for_matching(m: &BrMatching, a: usize, b: usize) -> Result<BalancedLine> {
    if !matches!(m.sidedness(a, b), SidednessOutcome::Incomparable(_)) {
        return Err(Error::Precondition(format!("segments {a} and {b} are comparable")));
    }
    let points = m.points();
    let cut = chromatic_cut_from_pair(m, a, b)?;
    for seg in [m.segment(a), m.segment(b)] {
        let p = general_position_point_after(points, seg, &meet(points, &cut.line, seg));
        if let Some(line) = balanced_line_through(points, &p) {
            let bl = BalancedLine { line, crossed: seg };
            validate_balanced_line(points, &bl).map_err(Error::Internal)?;
            return Ok(bl);
        }
    }
    Err(Error::Internal(format!("no balanced line through segments {a} or {b}")))
}

/// The four lines obtained from the line through points `x` and `y` by a
/// shift to either side and a turn either way about their midpoint, each
/// small enough that no other point changes side.
fn perturbations(points: &[Point], x: usize, y: usize) -> [DirectedLine; 4] {
    let (px, py) = (points[x].pos(), points[y].pos());
    let d = py - px;
    let normal = d.perp();
    let mid = px.midpoint(py);
    let mut shift = Coord::one();
    let mut turn = Coord::one();
    let two = Coord::from_integer(BigInt::from(2));
    for (i, p) in points.iter().enumerate() {
        if i == x || i == y {
            continue;
        }
        let c = d.cross(&(p.pos() - px)).abs();
        let bound = &c / (&d.dot(&d) * &two);
        if bound < shift {
            shift = bound;
        }
        let rel = p.pos() - &mid;
        let c_mid = d.cross(&rel).abs();
        let lever = normal.cross(&rel).abs();
        if !lever.is_zero() {
            let bound = &c_mid / (&lever * &two);
            if bound < turn {
                turn = bound;
            }
        }
    }
    let off = normal.scale(&shift);
    let tilt = normal.scale(&turn);
    [
        DirectedLine::new(px + &off, d.clone()),
        DirectedLine::new(px - &off, d.clone()),
        DirectedLine::new(mid.clone(), &d + &tilt),
        DirectedLine::new(mid, &d - &tilt),
    ]
}

/// Searches every combinatorially distinct line for a balanced one crossing
/// a segment of `m`. Quadratic in the number of candidates times `n`.
pub fn find_balanced_line_exhaustive(m: &BrMatching) -> Option<BalancedLine> {
    let points = m.points();
    for x in 0..points.len() {
        for y in x + 1..points.len() {
            for line in perturbations(points, x, y) {
                if !is_balanced(points, &line) {
                    continue;
                }
                if let Some(&crossed) = m.segments().iter().find(|&&s| crosses_interior(points, &line, s)) {
                    return Some(BalancedLine { line, crossed });
                }
            }
        }
    }
    None
}
