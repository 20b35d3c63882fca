//! Deciding uniqueness and sorting matchings into linear, circular and
//! cut-admitting ones.

use std::collections::HashSet;
use std::sync::Arc;

use num_traits::{Signed, Zero};

use crate::construct::build_matching;
use crate::error::{Error, Result};
use crate::geom::{Coord, Point, Segment, Sign, Vector};
use crate::hull::{convex_hull_of, Hull};
use crate::matching::{color_intervals, has_chromatic_cut, precedes, sidedness, BrMatching, SidednessOutcome};
use crate::pointset::PointSet;
use crate::sort::merge_sort_by;
use crate::testlab::gen_radial_unchecked;

/// What a matching is. Indices are segment positions in the matching.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// The segments in their unique `⊴` order.
    Linear { order: Vec<usize> },
    /// The canonical circular order, starting at segment 0.
    Circular { cycle: Vec<usize> },
    /// An incomparable pair.
    CutAdmitting { witness: (usize, usize) },
}

impl Verdict {
    pub fn name(&self) -> &'static str {
        match self {
            Verdict::Linear { .. } => "linear",
            Verdict::Circular { .. } => "circular",
            Verdict::CutAdmitting { .. } => "cut-admitting",
        }
    }
}

fn compare(points: &[Point], segs: &[Segment], a: usize, b: usize) -> std::result::Result<bool, (usize, usize)> {
    match sidedness(points, segs[a], segs[b]) {
        SidednessOutcome::LeftOfRight => Ok(true),
        SidednessOutcome::RightOfLeft => Ok(false),
        SidednessOutcome::Incomparable(_) => Err((a.min(b), a.max(b))),
    }
}

/// Merge-sorts the segments by `⊴`, aborting on the first incomparable
/// pair. Success does not mean the relation is a linear order: a cyclic
/// relation can slip through, and only the drum check rules that out.
pub fn sort_by_sidedness(m: &BrMatching) -> std::result::Result<Vec<usize>, (usize, usize)> {
    let items: Vec<usize> = (0..m.len()).collect();
    sort_subset(m.points(), m.segments(), &items)
}

fn sort_subset(
    points: &[Point],
    segs: &[Segment],
    items: &[usize],
) -> std::result::Result<Vec<usize>, (usize, usize)> {
    let sorted = merge_sort_by(items, |a, b| compare(points, segs, a, b))?;
    for w in sorted.windows(2) {
        compare(points, segs, w[0], w[1])?;
    }
    Ok(sorted)
}

/// Result of a drum check: the first failing position, if any.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DrumCheck {
    pub failed_at: Option<usize>,
}

impl DrumCheck {
    pub fn ok(self) -> bool {
        self.failed_at.is_none()
    }
}

const UNMATCHED: usize = usize::MAX;

fn partner_map(len: usize, ordered: &[Segment]) -> Vec<usize> {
    let mut partner = vec![UNMATCHED; len];
    for s in ordered {
        partner[s.white] = s.black;
        partner[s.black] = s.white;
    }
    partner
}

/// `first` and `last` are edges of the hull with vertices `verts`, and no
/// other segment is.
fn is_drum(verts: &[usize], partner: &[usize], first: Segment, last: Segment) -> bool {
    let k = verts.len();
    if k < 3 {
        return false;
    }
    let mut on_hull = 0;
    let mut ends = [false; 2];
    for i in 0..k {
        let (u, v) = (verts[i], verts[(i + 1) % k]);
        if partner[u] == v {
            on_hull += 1;
            for (flag, s) in ends.iter_mut().zip([first, last]) {
                *flag |= (s.white, s.black) == (u, v) || (s.white, s.black) == (v, u);
            }
        }
    }
    on_hull == 2 && ends[0] && ends[1]
}

fn consecutive_failure(points: &[Point], ordered: &[Segment]) -> Option<usize> {
    (1..ordered.len()).find(|&j| !precedes(points, ordered[j - 1], ordered[j]))
}

/// Prefix and suffix drums built incrementally. Each step starts its
/// tangent walk at the previous segment and only walks over vertices it
/// deletes, so a pass is linear in the number of segments.
pub fn drum_check_ordered(points: &[Point], ordered: &[Segment]) -> DrumCheck {
    if let Some(j) = consecutive_failure(points, ordered) {
        return DrumCheck { failed_at: Some(j) };
    }
    let n = ordered.len();
    let partner = partner_map(points.len(), ordered);
    let forward: Vec<usize> = (0..n).collect();
    let backward: Vec<usize> = (0..n).rev().collect();
    for seq in [forward, backward] {
        if let Some(k) = drum_pass(points, &partner, ordered, &seq) {
            return DrumCheck { failed_at: Some(seq[k]) };
        }
    }
    DrumCheck { failed_at: None }
}

fn drum_pass(points: &[Point], partner: &[usize], ordered: &[Segment], seq: &[usize]) -> Option<usize> {
    let Some(&s0) = seq.first() else {
        return None;
    };
    let first = ordered[s0];
    let mut hull = Hull::from_vertices(points.len(), &[first.white, first.black]);
    // directed hull edges `u -> next(u)` that are segments
    let mut on_hull: isize = 2;
    let edge = |u: usize, v: usize| (partner[u] == v) as isize;
    for k in 1..seq.len() {
        let prev = ordered[seq[k - 1]];
        let cur = ordered[seq[k]];
        let hints = [prev.white, prev.black];
        let (p, q, splice) = match hull.insert(points, cur.white, &hints) {
            Ok(sp) => (cur.white, cur.black, sp),
            Err(_) => match hull.insert(points, cur.black, &hints) {
                Ok(sp) => (cur.black, cur.white, sp),
                Err(_) => return Some(k),
            },
        };
        let Ok(second) = hull.insert(points, q, &[p]) else {
            return Some(k);
        };
        for (sp, x) in [(splice, p), (second, q)] {
            let chain: Vec<usize> =
                std::iter::once(sp.left).chain(sp.removed.iter().copied()).chain(std::iter::once(sp.right)).collect();
            on_hull -= chain.windows(2).map(|w| edge(w[0], w[1])).sum::<isize>();
            on_hull += edge(sp.left, x) + edge(x, sp.right);
        }
        if on_hull != 2 || !hull.has_edge(first.white, first.black) || !hull.has_edge(cur.white, cur.black) {
            return Some(k);
        }
    }
    None
}

/// The same condition checked from scratch for every prefix and suffix.
/// Quadratic; the reference the incremental check is tested against.
pub fn drum_check_by_definition(points: &[Point], ordered: &[Segment]) -> DrumCheck {
    if let Some(j) = consecutive_failure(points, ordered) {
        return DrumCheck { failed_at: Some(j) };
    }
    let n = ordered.len();
    let partner = partner_map(points.len(), ordered);
    let ends = |r: std::ops::Range<usize>| -> Vec<usize> { ordered[r].iter().flat_map(|s| s.endpoints()).collect() };
    for j in 1..n {
        if !is_drum(&convex_hull_of(points, &ends(0..j + 1)), &partner, ordered[0], ordered[j]) {
            return DrumCheck { failed_at: Some(j) };
        }
    }
    for i in (0..n.saturating_sub(1)).rev() {
        if !is_drum(&convex_hull_of(points, &ends(i..n)), &partner, ordered[i], ordered[n - 1]) {
            return DrumCheck { failed_at: Some(i) };
        }
    }
    DrumCheck { failed_at: None }
}

/// Drum check of the matching's segments taken in `order`.
pub fn drum_property_check(m: &BrMatching, order: &[usize]) -> DrumCheck {
    let ordered: Vec<Segment> = order.iter().map(|&k| m.segment(k)).collect();
    drum_check_ordered(m.points(), &ordered)
}

/// Outcome of sorting followed by the drum check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinearCheck {
    Linear(Vec<usize>),
    Incomparable(usize, usize),
    DrumFails { order: Vec<usize>, at: usize },
}

/// Sort, then drum: succeeds exactly for the matchings that are the only
/// matching of their point set.
pub fn check_linear(m: &BrMatching) -> LinearCheck {
    match sort_by_sidedness(m) {
        Err((a, b)) => LinearCheck::Incomparable(a, b),
        Ok(order) => match drum_property_check(m, &order).failed_at {
            None => LinearCheck::Linear(order),
            Some(at) => LinearCheck::DrumFails { order, at },
        },
    }
}

#[derive(Debug, Clone)]
pub struct UniqueReport {
    pub unique: bool,
    pub verdict: Verdict,
    pub matching: BrMatching,
}

/// Builds a matching and decides whether it is the only one.
pub fn is_unique(ps: &Arc<PointSet>) -> Result<UniqueReport> {
    let matching = build_matching(ps);
    let verdict = match check_linear(&matching) {
        LinearCheck::Linear(order) => Verdict::Linear { order },
        LinearCheck::Incomparable(a, b) => Verdict::CutAdmitting { witness: (a, b) },
        LinearCheck::DrumFails { .. } => classify(&matching)?,
    };
    Ok(UniqueReport { unique: matches!(verdict, Verdict::Linear { .. }), verdict, matching })
}

/// Full classification, cross-checked against the hull's color intervals.
pub fn classify(m: &BrMatching) -> Result<Verdict> {
    let verdict = match check_linear(m) {
        LinearCheck::Linear(order) => Verdict::Linear { order },
        LinearCheck::Incomparable(a, b) => Verdict::CutAdmitting { witness: (a, b) },
        LinearCheck::DrumFails { .. } => match is_circular(m) {
            Ok(cycle) => Verdict::Circular { cycle },
            Err(CircularFailure::Cut(a, b)) => Verdict::CutAdmitting { witness: (a, b) },
            Err(CircularFailure::NotMonochromatic) => match has_chromatic_cut(m) {
                Some(w) => Verdict::CutAdmitting { witness: w },
                None => {
                    return Err(Error::Internal(
                        "drum check failed on a cut-free matching with a two-colored hull".into(),
                    ))
                }
            },
        },
    };
    let intervals = color_intervals(m.base()).len();
    let consistent = match verdict {
        Verdict::Linear { .. } => intervals == 2 || m.len() == 1,
        Verdict::Circular { .. } => intervals == 1,
        Verdict::CutAdmitting { .. } => true,
    };
    if !consistent {
        return Err(Error::Internal(format!("{} verdict with {intervals} hull color intervals", verdict.name())));
    }
    Ok(verdict)
}

/// Why a matching is not circular.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CircularFailure {
    /// An incomparable pair of segment positions.
    Cut(usize, usize),
    /// The hull has points of both colors.
    NotMonochromatic,
}

/// Sides of `g(a)` for all of `items` (excluding `a`): left ones, right
/// ones, or a segment straddling the line.
fn split_by(
    points: &[Point],
    segs: &[Segment],
    a: usize,
    items: &[usize],
) -> std::result::Result<(Vec<usize>, Vec<usize>), (usize, usize)> {
    let line = segs[a];
    let mut left = Vec::new();
    let mut right = Vec::new();
    for &x in items {
        if x == a {
            continue;
        }
        let s = segs[x];
        let o1 = crate::geom::orient(&points[line.white], &points[line.black], &points[s.white]);
        let o2 = crate::geom::orient(&points[line.white], &points[line.black], &points[s.black]);
        match (o1, o2) {
            (Sign::Positive, Sign::Positive) => left.push(x),
            (Sign::Negative, Sign::Negative) => right.push(x),
            _ => return Err((a.min(x), a.max(x))),
        }
    }
    Ok((left, right))
}

/// The circular order obtained by splitting along `g(a0)`: `a0`, then the
/// segments right of it in `⊴` order, then those left of it.
pub fn candidate_cycle(m: &BrMatching, a0: usize) -> std::result::Result<Vec<usize>, CircularFailure> {
    let (pts, segs) = (m.points(), m.segments());
    let all: Vec<usize> = (0..m.len()).collect();
    let (left, right) = split_by(pts, segs, a0, &all).map_err(|(a, b)| CircularFailure::Cut(a, b))?;
    let right = sort_subset(pts, segs, &right).map_err(|(a, b)| CircularFailure::Cut(a, b))?;
    let left = sort_subset(pts, segs, &left).map_err(|(a, b)| CircularFailure::Cut(a, b))?;
    let mut cycle = Vec::with_capacity(m.len());
    cycle.push(a0);
    cycle.extend(right);
    cycle.extend(left);
    Ok(cycle)
}

/// Decides whether `m` is circular and returns its canonical cycle,
/// starting at segment 0. Divide and conquer: every pair of segments lands
/// together in one of six submatchings, four of which are checked for
/// linearity against the candidate order while the other two shrink by a
/// constant factor and recurse.
pub fn is_circular(m: &BrMatching) -> std::result::Result<Vec<usize>, CircularFailure> {
    if color_intervals(m.base()).len() != 1 {
        return Err(CircularFailure::NotMonochromatic);
    }
    let cycle = candidate_cycle(m, 0)?;
    let mut pos = vec![0usize; m.len()];
    for (i, &x) in cycle.iter().enumerate() {
        pos[x] = i;
    }
    let mut stack = vec![cycle.clone()];
    while let Some(set) = stack.pop() {
        for q in verify_cut_free(m, &pos, &set)? {
            stack.push(q);
        }
    }
    Ok(cycle)
}

/// Small sets are checked pair by pair.
const PAIRWISE_LIMIT: usize = 6;

/// `set` is sorted by cycle position. Checks the four linear parts and
/// returns the two recursive parts.
fn verify_cut_free(
    m: &BrMatching,
    pos: &[usize],
    set: &[usize],
) -> std::result::Result<Vec<Vec<usize>>, CircularFailure> {
    let (pts, segs) = (m.points(), m.segments());
    let cut = |(a, b): (usize, usize)| CircularFailure::Cut(a, b);
    if set.len() <= PAIRWISE_LIMIT {
        for (i, &a) in set.iter().enumerate() {
            for &b in &set[i + 1..] {
                compare(pts, segs, a, b).map_err(cut)?;
            }
        }
        return Ok(Vec::new());
    }
    let a = set[0];
    let (m1, m2) = halves(m, pos, set, a)?;
    let larger = if m1.len() >= m2.len() { &m1 } else { &m2 };
    let b = larger[larger.len() / 2];
    let b = if b == a { larger[(larger.len() / 2 + 1) % larger.len()] } else { b };
    let (n1, n2) = halves(m, pos, set, b)?;
    let in_set = |v: &[usize]| {
        let mut flags = vec![false; m.len()];
        for &x in v {
            flags[x] = true;
        }
        flags
    };
    let (f_m1, f_m2, f_n1, f_n2) = (in_set(&m1), in_set(&m2), in_set(&n1), in_set(&n2));
    let q1: Vec<usize> = set.iter().copied().filter(|&x| (f_m2[x] && f_n2[x]) || (f_m1[x] && f_n1[x])).collect();
    let q2: Vec<usize> = set.iter().copied().filter(|&x| (f_m1[x] && f_n2[x]) || (f_m2[x] && f_n1[x])).collect();
    let mut out = Vec::with_capacity(2);
    for q in [q1, q2] {
        if q.len() >= set.len() {
            // no progress: settle this part directly
            for (i, &x) in q.iter().enumerate() {
                for &y in &q[i + 1..] {
                    compare(pts, segs, x, y).map_err(cut)?;
                }
            }
        } else if q.len() >= 2 {
            out.push(q);
        }
    }
    Ok(out)
}

/// `M_a^{L+}` and `M_a^{R+}` within `set`, each in its linear order read off
/// the cycle, after checking that both are linear.
fn halves(
    m: &BrMatching,
    pos: &[usize],
    set: &[usize],
    a: usize,
) -> std::result::Result<(Vec<usize>, Vec<usize>), CircularFailure> {
    let (pts, segs) = (m.points(), m.segments());
    let (left, right) = split_by(pts, segs, a, set).map_err(|(x, y)| CircularFailure::Cut(x, y))?;
    let n = m.len();
    let from_a = |v: &mut Vec<usize>| v.sort_by_key(|&x| (pos[x] + n - pos[a]) % n);
    let mut l = left;
    let mut r = right;
    from_a(&mut l);
    from_a(&mut r);
    l.push(a);
    r.insert(0, a);
    for part in [&l, &r] {
        let ordered: Vec<Segment> = part.iter().map(|&k| segs[k]).collect();
        if !drum_check_ordered(pts, &ordered).ok() {
            let sub = BrMatching::new_unchecked(m.base().clone(), ordered);
            return Err(match has_chromatic_cut(&sub) {
                Some((i, j)) => CircularFailure::Cut(part[i].min(part[j]), part[i].max(part[j])),
                None => CircularFailure::Cut(part[0], part[part.len() - 1]),
            });
        }
    }
    Ok((l, r))
}

/// A direction onto which every segment projects forward and every pair of
/// supporting lines meets outside the pair's projection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReferenceDirection {
    pub direction: Vector,
}

fn l1(v: &Vector) -> Coord {
    v.x.abs() + v.y.abs()
}

/// Intersects the open half-circles of directions that make an acute
/// angle with each segment, takes the direction bisecting the result, and
/// validates it. Fails for every matching that is not linear.
pub fn reference_direction(m: &BrMatching) -> Result<ReferenceDirection> {
    let pts = m.points();
    let dirs: Vec<Vector> = m.segments().iter().map(|s| s.direction(pts)).collect();
    let Some(first) = dirs.first() else {
        return Err(Error::Precondition("empty matching".into()));
    };
    // most clockwise and most counterclockwise segment directions
    let (mut cw, mut ccw) = (first.clone(), first.clone());
    for d in &dirs[1..] {
        if cw.cross(d).is_negative() {
            cw = d.clone();
        }
        if ccw.cross(d).is_positive() {
            ccw = d.clone();
        }
    }
    // the bisector of the two extremes also bisects the feasible arc
    let u = &cw.scale(&l1(&cw).recip()) + &ccw.scale(&l1(&ccw).recip());
    if u.is_zero() {
        return Err(Error::Precondition("segment directions span a half-plane; not linear".into()));
    }
    validate_reference_direction(m, &u).map_err(Error::Precondition)?;
    Ok(ReferenceDirection { direction: u })
}

/// Checks the three conditions for `u` exactly; quadratic.
pub fn validate_reference_direction(m: &BrMatching, u: &Vector) -> std::result::Result<(), String> {
    let pts = m.points();
    let proj = |p: &Vector| p.dot(u);
    for (k, s) in m.segments().iter().enumerate() {
        let d = s.direction(pts);
        if d.dot(u).is_zero() {
            return Err(format!("segment {k} is perpendicular to the reference direction"));
        }
        if !d.dot(u).is_positive() {
            return Err(format!("segment {k} projects backwards"));
        }
    }
    let segs = m.segments();
    for i in 0..segs.len() {
        for j in i + 1..segs.len() {
            let (la, lb) = (segs[i].supporting_line(pts), segs[j].supporting_line(pts));
            let Some(x) = la.intersection(&lb) else {
                continue;
            };
            let px = proj(&x);
            let ps: Vec<Coord> = [segs[i], segs[j]]
                .iter()
                .flat_map(|s| s.endpoints())
                .map(|p| proj(pts[p].pos()))
                .collect();
            let lo = ps.iter().min().expect("four projections");
            let hi = ps.iter().max().expect("four projections");
            if &px >= lo && &px <= hi {
                return Err(format!("lines of segments {i} and {j} meet inside their projection"));
            }
        }
    }
    Ok(())
}

/// Antipodal pairs and twin classes of a circular matching.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TSetPartition {
    /// Maximal twin classes as runs of the cycle, in cycle order.
    pub blocks: Vec<Vec<usize>>,
    /// For each segment position, its antipodal pair of segment positions.
    pub antipodal: Vec<(usize, usize)>,
}

/// For each segment `x`, the adjacent cycle pair split by `g(x)`: the last
/// segment right of `x` and the first one left of it, walking on from `x`.
pub fn tset_partition(m: &BrMatching, cycle: &[usize]) -> Result<TSetPartition> {
    let n = cycle.len();
    if n < 3 || n != m.len() {
        return Err(Error::Precondition("a circular matching's full cycle is required".into()));
    }
    let pts = m.points();
    let right_of = |x: usize, y: usize| {
        let s = m.segment(x);
        crate::geom::orient(&pts[s.white], &pts[s.black], &pts[m.segment(y).white]) == Sign::Negative
    };
    let mut antipodal = vec![(0, 0); m.len()];
    for i in 0..n {
        let x = cycle[i];
        let mut found = None;
        for k in 1..n - 1 {
            let (y, z) = (cycle[(i + k) % n], cycle[(i + k + 1) % n]);
            if right_of(x, y) && !right_of(x, z) {
                if found.is_some() {
                    return Err(Error::Internal(format!("segment {x} has two antipodal pairs")));
                }
                found = Some((y, z));
            }
        }
        antipodal[x] = found.ok_or_else(|| Error::Internal(format!("segment {x} has no antipodal pair")))?;
    }
    let start = (0..n).find(|&i| antipodal[cycle[i]] != antipodal[cycle[(i + n - 1) % n]]).unwrap_or(0);
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for k in 0..n {
        let x = cycle[(start + k) % n];
        match blocks.last_mut() {
            Some(b) if antipodal[b[0]] == antipodal[x] => b.push(x),
            _ => blocks.push(vec![x]),
        }
    }
    let mut seen = HashSet::new();
    for b in &blocks {
        if !seen.insert(antipodal[b[0]]) {
            return Err(Error::Internal("twin class is not contiguous in the cycle".into()));
        }
    }
    Ok(TSetPartition { blocks, antipodal })
}

/// `[x, y, z]` in the canonical circular order, decided from `⊴` alone: at
/// least two of `x ⊴ y`, `y ⊴ z`, `z ⊴ x`. Checked against the positions
/// in `cycle`.
pub fn circular_triple(m: &BrMatching, cycle: &[usize], x: usize, y: usize, z: usize) -> Result<bool> {
    let held = [m.precedes(x, y), m.precedes(y, z), m.precedes(z, x)].iter().filter(|&&b| b).count();
    let by_relation = held >= 2;
    let n = cycle.len();
    let at = |s: usize| cycle.iter().position(|&t| t == s).ok_or_else(|| Error::Precondition(format!("{s} not in cycle")));
    let (px, py, pz) = (at(x)?, at(y)?, at(z)?);
    let by_position = (py + n - px) % n < (pz + n - px) % n;
    if by_relation != by_position {
        return Err(Error::Internal(format!("triple ({x}, {y}, {z}) disagrees with the cycle")));
    }
    Ok(by_relation)
}

/// Upper bound on the census size.
pub const CENSUS_MAX_N: usize = 20;

/// Number of distinct `⊴` relations of circular radial matchings on `n`
/// lines through a point (one segment per line, segment 0 fixed).
pub fn census_sidedness_relations(n: usize) -> Result<usize> {
    if !(3..=CENSUS_MAX_N).contains(&n) {
        return Err(Error::Precondition(format!("census needs 3 <= n <= {CENSUS_MAX_N}, got {n}")));
    }
    let (inner, outer) = (Coord::from_integer(1.into()), Coord::from_integer(2.into()));
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    for mask in 0u64..(1 << (n - 1)) {
        let occ: Vec<bool> = (0..n).map(|i| i == 0 || mask >> (i - 1) & 1 == 1).collect();
        let (_, m) = gen_radial_unchecked(n, &occ, &inner, &outer, 10_000);
        if !matches!(classify(&m)?, Verdict::Circular { .. }) {
            continue;
        }
        let rel: Vec<u64> = (0..n)
            .map(|i| (0..n).filter(|&j| j != i && m.precedes(i, j)).fold(0u64, |acc, j| acc | 1 << j))
            .collect();
        seen.insert(rel);
    }
    Ok(seen.len())
}
