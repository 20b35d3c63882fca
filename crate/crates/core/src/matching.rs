//! BR-matchings and the sidedness relation between their segments.

use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::geom::{orient, segments_cross, Color, Point, Segment, Sign};
use crate::hull::convex_hull;
use crate::pointset::PointSet;

/// A perfect, color-conforming, non-crossing matching of a point set.
/// Segments are addressed by their position in [`BrMatching::segments`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BrMatching {
    base: Arc<PointSet>,
    segments: Vec<Segment>,
}

impl BrMatching {
    /// Validates coverage, colors and pairwise non-crossing (quadratic).
    pub fn new(base: Arc<PointSet>, segments: Vec<Segment>) -> Result<BrMatching> {
        validate(&base, &segments)?;
        Ok(BrMatching { base, segments })
    }

    /// For matchings produced by this crate's own constructions.
    pub fn new_unchecked(base: Arc<PointSet>, segments: Vec<Segment>) -> BrMatching {
        BrMatching { base, segments }
    }

    pub fn base(&self) -> &Arc<PointSet> {
        &self.base
    }

    pub fn points(&self) -> &[Point] {
        self.base.points()
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn segment(&self, k: usize) -> Segment {
        self.segments[k]
    }

    pub fn len(&self) -> usize {
        self.segments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }

    /// Segments as a sorted set, for comparing matchings irrespective of
    /// segment order.
    pub fn canonical(&self) -> Vec<Segment> {
        let mut s = self.segments.clone();
        s.sort();
        s
    }

    pub fn same_segments(&self, other: &BrMatching) -> bool {
        self.canonical() == other.canonical()
    }

    /// Position of the segment with this white endpoint.
    pub fn position_of(&self, seg: Segment) -> Option<usize> {
        self.segments.iter().position(|&s| s == seg)
    }

    pub fn sidedness(&self, a: usize, b: usize) -> SidednessOutcome {
        sidedness(self.points(), self.segments[a], self.segments[b])
    }

    /// `a ⊴ b` in the full (four-test) sense.
    pub fn precedes(&self, a: usize, b: usize) -> bool {
        precedes(self.points(), self.segments[a], self.segments[b])
    }

    /// The segments at `positions` as a matching of their own endpoints.
    /// Segment `k` of the result is the segment at `positions[k]`; its white
    /// end is point `2k` and its black end point `2k + 1`.
    pub fn submatching(&self, positions: &[usize]) -> BrMatching {
        let mut pts = Vec::with_capacity(2 * positions.len());
        let mut segs = Vec::with_capacity(positions.len());
        for &k in positions {
            let s = self.segments[k];
            segs.push(Segment::new(pts.len(), pts.len() + 1));
            pts.push(self.points()[s.white].clone());
            pts.push(self.points()[s.black].clone());
        }
        BrMatching::new_unchecked(Arc::new(PointSet::new_unchecked(pts)), segs)
    }
}

pub(crate) fn validate(base: &PointSet, segments: &[Segment]) -> Result<()> {
    let pts = base.points();
    if segments.len() != base.n() {
        return Err(Error::InvalidMatching(format!(
            "expected {} segments, found {}",
            base.n(),
            segments.len()
        )));
    }
    let mut used = vec![false; pts.len()];
    for s in segments {
        for (idx, want) in [(s.white, Color::White), (s.black, Color::Black)] {
            if idx >= pts.len() {
                return Err(Error::InvalidMatching(format!("point index {idx} out of range")));
            }
            if pts[idx].color() != want {
                return Err(Error::InvalidMatching(format!(
                    "point {idx} is not {}",
                    if want == Color::White { "white" } else { "black" }
                )));
            }
            if used[idx] {
                return Err(Error::InvalidMatching(format!("point {idx} is matched twice")));
            }
            used[idx] = true;
        }
    }
    for i in 0..segments.len() {
        for j in i + 1..segments.len() {
            if segments_cross(pts, segments[i], segments[j]) {
                return Err(Error::InvalidMatching(format!("segments {i} and {j} cross")));
            }
        }
    }
    Ok(())
}

/// Which forbidden pair pattern an incomparable pair forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pattern {
    /// Outer rays of different colors meet.
    A,
    /// An outer ray crosses the other segment, or the segments are
    /// antiparallel.
    B,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SidednessOutcome {
    /// `A ⊴ B`.
    LeftOfRight,
    /// `B ⊴ A`.
    RightOfLeft,
    Incomparable(Pattern),
}

/// How the supporting lines of two segments meet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PairGeometry {
    Parallel,
    Antiparallel,
    /// The lines meet on the two outer rays of this color.
    CrossSameColorRays(Color),
    CrossDifferentColorRays,
    /// An outer ray of one segment crosses the other segment.
    RayCrossesSegment,
}

impl PairGeometry {
    /// Whether this configuration admits a chromatic cut through both
    /// segments.
    pub fn certifies_cut(self) -> bool {
        matches!(
            self,
            PairGeometry::Antiparallel | PairGeometry::CrossDifferentColorRays | PairGeometry::RayCrossesSegment
        )
    }
}

/// Both endpoints of `s` strictly on side `want` of the directed line `t`.
fn strictly_on(points: &[Point], line: Segment, s: Segment, want: Sign) -> bool {
    let (a, b) = (&points[line.white], &points[line.black]);
    let o1 = orient(a, b, &points[s.white]);
    let o2 = orient(a, b, &points[s.black]);
    debug_assert!(o1 != Sign::Zero && o2 != Sign::Zero, "degenerate sidedness test");
    o1 == want && o2 == want
}

/// `a ⊴ b`: `b` strictly right of `g(a)` and `a` strictly left of `g(b)`.
pub fn precedes(points: &[Point], a: Segment, b: Segment) -> bool {
    strictly_on(points, a, b, Sign::Negative) && strictly_on(points, b, a, Sign::Positive)
}

pub fn sidedness(points: &[Point], a: Segment, b: Segment) -> SidednessOutcome {
    if precedes(points, a, b) {
        SidednessOutcome::LeftOfRight
    } else if precedes(points, b, a) {
        SidednessOutcome::RightOfLeft
    } else {
        match pair_geometry(points, a, b) {
            PairGeometry::CrossDifferentColorRays => SidednessOutcome::Incomparable(Pattern::A),
            _ => SidednessOutcome::Incomparable(Pattern::B),
        }
    }
}

/// Decides `⊴` from a single half-plane test. Only meaningful when the
/// matching containing `a` and `b` has no chromatic cut.
pub fn sidedness_one_sided(points: &[Point], a: Segment, b: Segment) -> SidednessOutcome {
    match orient(&points[a.white], &points[a.black], &points[b.white]) {
        Sign::Negative => SidednessOutcome::LeftOfRight,
        _ => SidednessOutcome::RightOfLeft,
    }
}

pub fn pair_geometry(points: &[Point], a: Segment, b: Segment) -> PairGeometry {
    let la = a.supporting_line(points);
    let lb = b.supporting_line(points);
    match la.intersection_params(&lb) {
        None => {
            if la.direction.dot(&lb.direction).is_positive() {
                PairGeometry::Parallel
            } else {
                PairGeometry::Antiparallel
            }
        }
        Some((s, t)) => {
            let ray = |u: &num_rational::BigRational| -> Option<Color> {
                if u.is_negative() {
                    Some(Color::White)
                } else if *u > num_rational::BigRational::one() {
                    Some(Color::Black)
                } else {
                    debug_assert!(!u.is_zero() && !u.is_one(), "lines meet at an endpoint");
                    None
                }
            };
            match (ray(&s), ray(&t)) {
                (Some(x), Some(y)) if x == y => PairGeometry::CrossSameColorRays(x),
                (Some(_), Some(_)) => PairGeometry::CrossDifferentColorRays,
                _ => PairGeometry::RayCrossesSegment,
            }
        }
    }
}

/// First incomparable pair of segment positions, by quadratic scan.
pub fn has_chromatic_cut(m: &BrMatching) -> Option<(usize, usize)> {
    for i in 0..m.len() {
        for j in i + 1..m.len() {
            if let SidednessOutcome::Incomparable(_) = m.sidedness(i, j) {
                return Some((i, j));
            }
        }
    }
    None
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TriplePattern {
    LinearTriple,
    ThreeStar,
    HasCut,
}

pub fn triple_pattern(points: &[Point], a: Segment, b: Segment, c: Segment) -> TriplePattern {
    let rel = |x: Segment, y: Segment| match sidedness(points, x, y) {
        SidednessOutcome::LeftOfRight => Some(true),
        SidednessOutcome::RightOfLeft => Some(false),
        SidednessOutcome::Incomparable(_) => None,
    };
    let (Some(ab), Some(bc), Some(ca)) = (rel(a, b), rel(b, c), rel(c, a)) else {
        return TriplePattern::HasCut;
    };
    // a tournament on three vertices is cyclic iff all arcs point the same
    // way around
    if ab == bc && bc == ca {
        TriplePattern::ThreeStar
    } else {
        TriplePattern::LinearTriple
    }
}

/// Circular run-length encoding of hull colors, counterclockwise, starting
/// with the run that contains the lexicographically smallest hull vertex.
pub fn color_intervals(ps: &PointSet) -> Vec<(Color, usize)> {
    let hull = convex_hull(ps.points());
    let mut runs: Vec<(Color, usize)> = Vec::new();
    for &v in &hull {
        let c = ps.point(v).color();
        match runs.last_mut() {
            Some((rc, k)) if *rc == c => *k += 1,
            _ => runs.push((c, 1)),
        }
    }
    if runs.len() > 1 && runs[0].0 == runs[runs.len() - 1].0 {
        let (_, k) = runs.pop().unwrap();
        runs[0].1 += k;
    }
    runs
}

/// Segments `x` with `x ⊴ b` (`left`) or `b ⊴ x` (otherwise), as positions.
pub fn side_set(m: &BrMatching, b: usize, left: bool) -> Vec<usize> {
    (0..m.len())
        .filter(|&x| x != b && if left { m.precedes(x, b) } else { m.precedes(b, x) })
        .collect()
}
