//! Constructing matchings: ham-sandwich recursion, alternating paths and
//! alternative matchings for non-unique sets.

mod ham_sandwich;

use std::sync::Arc;

pub use ham_sandwich::HamSandwichCut;

use crate::classify::Verdict;
use crate::cut::BalancedLine;
use crate::error::{Error, Result};
use crate::geom::{segments_intersect, Color, Point, Segment, Sign};
use crate::matching::{validate, BrMatching};
use crate::pointset::PointSet;

/// A cut of the whole point set.
pub fn ham_sandwich(ps: &PointSet) -> HamSandwichCut {
    let all: Vec<usize> = (0..ps.len()).collect();
    ham_sandwich::ham_sandwich_of(ps.points(), &all).0
}

/// Some BR-matching of `ps`, by splitting along ham-sandwich cuts. Runs in
/// `O(n log n)` expected time and skips the quadratic validation.
pub fn build_matching(ps: &Arc<PointSet>) -> BrMatching {
    let all: Vec<usize> = (0..ps.len()).collect();
    let segs = build_on(ps.points(), all);
    BrMatching::new_unchecked(ps.clone(), segs)
}

/// Matching of the balanced subset `subset` of `points`.
pub(crate) fn build_on(points: &[Point], subset: Vec<usize>) -> Vec<Segment> {
    let mut out = Vec::with_capacity(subset.len() / 2);
    let mut stack = vec![subset];
    while let Some(sub) = stack.pop() {
        let m = sub.len() / 2;
        if m == 0 {
            continue;
        }
        if m == 1 {
            out.push(pair(points, sub[0], sub[1]));
            continue;
        }
        let (cut, sides) = ham_sandwich::ham_sandwich_of(points, &sub);
        let mut left = Vec::with_capacity(sub.len() / 2 + 1);
        let mut right = Vec::with_capacity(sub.len() / 2 + 1);
        for (&i, &s) in sub.iter().zip(&sides) {
            match s {
                Sign::Positive => left.push(i),
                Sign::Negative => right.push(i),
                Sign::Zero => {}
            }
        }
        if m % 2 == 1 {
            debug_assert_eq!(cut.on_line.len(), 2);
            out.push(pair(points, cut.on_line[0], cut.on_line[1]));
        } else {
            // the cut may touch up to two points; put each where its color
            // is short
            for &i in &cut.on_line {
                let c = points[i].color();
                let have = left.iter().filter(|&&j| points[j].color() == c).count();
                if have < m / 2 {
                    left.push(i);
                } else {
                    right.push(i);
                }
            }
        }
        stack.push(right);
        stack.push(left);
    }
    out
}

fn pair(points: &[Point], a: usize, b: usize) -> Segment {
    debug_assert_ne!(points[a].color(), points[b].color());
    if points[a].color() == Color::White {
        Segment::new(a, b)
    } else {
        Segment::new(b, a)
    }
}

/// A path whose vertices alternate colors and whose edges alternate between
/// matching segments and connectors, starting with a matching segment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlternatingPath {
    pub vertices: Vec<usize>,
}

impl AlternatingPath {
    /// Edges with a flag telling whether each belongs to the matching.
    pub fn edges(&self) -> Vec<(usize, usize, bool)> {
        self.vertices.windows(2).enumerate().map(|(k, w)| (w[0], w[1], k % 2 == 0)).collect()
    }

    /// No two non-adjacent edges meet.
    pub fn is_simple(&self, points: &[Point]) -> bool {
        let e = self.edges();
        for i in 0..e.len() {
            for j in i + 2..e.len() {
                let (a, b, _) = e[i];
                let (c, d, _) = e[j];
                if segments_intersect(&points[a], &points[b], &points[c], &points[d]) {
                    return false;
                }
            }
        }
        true
    }
}

/// The two alternating paths through a linear matching in its `⊴` order:
/// the first enters every segment at its white end, the second at its black
/// end.
pub fn build_alternating_paths(m: &BrMatching, verdict: &Verdict) -> Result<[AlternatingPath; 2]> {
    let Verdict::Linear { order } = verdict else {
        return Err(Error::Precondition("alternating paths need a linear matching".into()));
    };
    let mut from_white = Vec::with_capacity(2 * order.len());
    let mut from_black = Vec::with_capacity(2 * order.len());
    for &k in order {
        let s = m.segment(k);
        from_white.extend([s.white, s.black]);
        from_black.extend([s.black, s.white]);
    }
    Ok([AlternatingPath { vertices: from_white }, AlternatingPath { vertices: from_black }])
}

/// Two matchings disjoint from a circular matching `m` and from each other,
/// each compatible with `m`. Walking the canonical cycle, the connectors
/// from each black end to the next white end close an alternating polygon
/// through all of `m`; swapping along it gives the first matching, and the
/// reverse orientation the second.
pub fn alternative_matchings_circular(m: &BrMatching, verdict: &Verdict) -> Result<(BrMatching, BrMatching)> {
    let Verdict::Circular { cycle } = verdict else {
        return Err(Error::Precondition("circular alternatives need a circular matching".into()));
    };
    let n = cycle.len();
    let seg = |i: usize| m.segment(cycle[i % n]);
    let forward: Vec<Segment> = (0..n).map(|i| Segment::new(seg(i).white, seg(i + 1).black)).collect();
    let backward: Vec<Segment> = (0..n).map(|i| Segment::new(seg(i + 1).white, seg(i).black)).collect();
    let mut out = Vec::with_capacity(2);
    for segs in [forward, backward] {
        validate(m.base(), &segs).map_err(|e| Error::Internal(format!("alternative matching: {e}")))?;
        out.push(BrMatching::new_unchecked(m.base().clone(), segs));
    }
    let second = out.pop().expect("two matchings");
    let first = out.pop().expect("two matchings");
    Ok((first, second))
}

/// A matching built separately on the two sides of a balanced line. It
/// avoids the segment the line crosses.
pub fn alternative_matching_via_balanced_line(ps: &Arc<PointSet>, bl: &BalancedLine) -> Result<BrMatching> {
    let pts = ps.points();
    let mut left = Vec::new();
    let mut right = Vec::new();
    for (i, p) in pts.iter().enumerate() {
        match bl.line.side_of(p) {
            Sign::Positive => left.push(i),
            Sign::Negative => right.push(i),
            Sign::Zero => return Err(Error::Precondition(format!("balanced line passes through point {i}"))),
        }
    }
    for side in [&left, &right] {
        let w = side.iter().filter(|&&i| pts[i].color() == Color::White).count();
        if 2 * w != side.len() {
            return Err(Error::Precondition("line is not balanced".into()));
        }
    }
    let mut segs = build_on(pts, left);
    segs.extend(build_on(pts, right));
    Ok(BrMatching::new_unchecked(ps.clone(), segs))
}
