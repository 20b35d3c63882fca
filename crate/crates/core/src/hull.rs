//! Convex hulls: a static monotone-chain hull and the incremental
//! tangent-walk extension used by the drum check.

use crate::geom::{orient, Point, Sign};

/// Counterclockwise hull of `points[subset]`, returned as indices into
/// `points`, starting from the lexicographically smallest vertex.
/// Collinear boundary points are dropped.
pub fn convex_hull_of(points: &[Point], subset: &[usize]) -> Vec<usize> {
    let mut idx: Vec<usize> = subset.to_vec();
    idx.sort_by(|&a, &b| points[a].pos().lex_cmp(points[b].pos()));
    idx.dedup_by(|a, b| points[*a].pos() == points[*b].pos());
    if idx.len() <= 2 {
        return idx;
    }
    let mut lower: Vec<usize> = Vec::with_capacity(idx.len());
    for &i in &idx {
        while lower.len() >= 2
            && orient(&points[lower[lower.len() - 2]], &points[lower[lower.len() - 1]], &points[i]) != Sign::Positive
        {
            lower.pop();
        }
        lower.push(i);
    }
    let mut upper: Vec<usize> = Vec::with_capacity(idx.len());
    for &i in idx.iter().rev() {
        while upper.len() >= 2
            && orient(&points[upper[upper.len() - 2]], &points[upper[upper.len() - 1]], &points[i]) != Sign::Positive
        {
            upper.pop();
        }
        upper.push(i);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Counterclockwise hull of all of `points`.
pub fn convex_hull(points: &[Point]) -> Vec<usize> {
    let all: Vec<usize> = (0..points.len()).collect();
    convex_hull_of(points, &all)
}

const ABSENT: usize = usize::MAX;

/// A hull maintained incrementally as a doubly linked cycle of vertex
/// indices into an external point slice, counterclockwise. One and two
/// vertices are allowed (a point and a doubly traversed segment).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hull {
    next: Vec<usize>,
    prev: Vec<usize>,
    start: usize,
    size: usize,
}

/// The new point is not outside the current hull, or no edge at the hinted
/// vertices is visible from it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InsidePoint(pub usize);

/// What an insertion replaced: the chain `left, removed.., right` became
/// `left, p, right`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Splice {
    pub left: usize,
    pub removed: Vec<usize>,
    pub right: usize,
}

impl Hull {
    /// Empty hull over a point slice of length `capacity`.
    pub fn new(capacity: usize) -> Hull {
        Hull { next: vec![ABSENT; capacity], prev: vec![ABSENT; capacity], start: ABSENT, size: 0 }
    }

    /// Hull with the given counterclockwise vertices.
    pub fn from_vertices(capacity: usize, verts: &[usize]) -> Hull {
        let mut h = Hull::new(capacity);
        let k = verts.len();
        for (i, &v) in verts.iter().enumerate() {
            h.next[v] = verts[(i + 1) % k];
            h.prev[v] = verts[(i + k - 1) % k];
        }
        h.start = verts.first().copied().unwrap_or(ABSENT);
        h.size = k;
        h
    }

    pub fn vertices(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.size);
        if self.size == 0 {
            return out;
        }
        let mut v = self.start;
        loop {
            out.push(v);
            v = self.next[v];
            if v == self.start {
                break;
            }
        }
        out
    }

    pub fn len(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    pub fn contains_vertex(&self, v: usize) -> bool {
        self.next.get(v).is_some_and(|&n| n != ABSENT)
    }

    pub fn successor(&self, v: usize) -> usize {
        self.next[v]
    }

    /// `a` and `b` are adjacent on the hull.
    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.contains_vertex(a) && (self.next[a] == b || self.prev[a] == b)
    }

    /// Edge `u -> next(u)` is visible from `p` when `p` lies strictly right
    /// of it.
    fn edge_visible(&self, points: &[Point], u: usize, p: usize) -> bool {
        orient(&points[u], &points[self.next[u]], &points[p]) == Sign::Negative
    }

    /// Inserts a point outside the hull. The tangent walk starts at an edge
    /// incident to one of the `hints` vertices; if none of those edges is
    /// visible the insertion fails and the hull is left unchanged.
    pub fn insert(&mut self, points: &[Point], p: usize, hints: &[usize]) -> Result<Splice, InsidePoint> {
        if self.size < 2 {
            let only = self.start;
            if self.size == 0 {
                self.start = p;
                self.next[p] = p;
                self.prev[p] = p;
            } else {
                self.next[only] = p;
                self.prev[only] = p;
                self.next[p] = only;
                self.prev[p] = only;
            }
            self.size += 1;
            return Ok(Splice { left: only, removed: Vec::new(), right: only });
        }
        let seed = hints
            .iter()
            .filter(|&&h| self.contains_vertex(h))
            .flat_map(|&h| [h, self.prev[h]])
            .find(|&u| self.edge_visible(points, u, p))
            .ok_or(InsidePoint(p))?;
        let mut last = self.next[seed];
        let mut steps = 1;
        while steps < self.size && self.edge_visible(points, last, p) {
            last = self.next[last];
            steps += 1;
        }
        let mut first = seed;
        while steps < self.size && self.edge_visible(points, self.prev[first], p) {
            first = self.prev[first];
            steps += 1;
        }
        let mut removed = Vec::new();
        let mut v = self.next[first];
        while v != last {
            removed.push(v);
            let nx = self.next[v];
            self.next[v] = ABSENT;
            self.prev[v] = ABSENT;
            v = nx;
        }
        if removed.contains(&self.start) {
            self.start = p;
        }
        self.next[first] = p;
        self.prev[p] = first;
        self.next[p] = last;
        self.prev[last] = p;
        self.size = self.size + 1 - removed.len();
        Ok(Splice { left: first, removed, right: last })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Color;

    fn pts(coords: &[(i64, i64)]) -> Vec<Point> {
        coords.iter().map(|&(x, y)| Point::from_ints(x, y, Color::White)).collect()
    }

    fn canon(mut v: Vec<usize>) -> Vec<usize> {
        if v.is_empty() {
            return v;
        }
        let m = v.iter().enumerate().min_by_key(|(_, &x)| x).unwrap().0;
        v.rotate_left(m);
        v
    }

    #[test]
    fn square_hull() {
        let p = pts(&[(0, 0), (0, 2), (3, 0), (3, 2)]);
        assert_eq!(convex_hull(&p), vec![0, 2, 3, 1]);
    }

    #[test]
    fn f3_hull_is_black_triangle() {
        let p = pts(&[(0, 1), (0, 3), (1, -1), (3, -3), (-1, -1), (-3, -3)]);
        let mut h = convex_hull(&p);
        h.sort();
        assert_eq!(h, vec![1, 3, 5]);
    }

    #[test]
    fn single_point() {
        let p = pts(&[(4, 4)]);
        assert_eq!(convex_hull(&p), vec![0]);
    }

    #[test]
    fn extend_segment_to_quadrilateral() {
        let p = pts(&[(0, 0), (0, 2), (3, 0), (3, 2)]);
        let mut h = Hull::from_vertices(4, &[0, 1]);
        h.insert(&p, 2, &[1]).unwrap();
        h.insert(&p, 3, &[2]).unwrap();
        assert_eq!(canon(h.vertices()), canon(convex_hull(&p)));
        assert!(h.has_edge(0, 1) && h.has_edge(2, 3));
    }

    #[test]
    fn rejects_inside_point() {
        let p = pts(&[(0, 0), (4, 0), (0, 4), (1, 1)]);
        let mut h = Hull::from_vertices(4, &[0, 1, 2]);
        assert_eq!(h.insert(&p, 3, &[0]), Err(InsidePoint(3)));
        assert_eq!(h.vertices(), vec![0, 1, 2]);
    }

    #[test]
    fn removes_walked_vertices() {
        let p = pts(&[(0, 0), (4, 0), (5, 3), (4, 6), (0, 6), (20, 2), (20, 4)]);
        let mut h = Hull::from_vertices(7, &[0, 1, 2, 3, 4]);
        let splice = h.insert(&p, 5, &[2]).unwrap();
        assert_eq!(splice, Splice { left: 1, removed: vec![2], right: 3 });
        h.insert(&p, 6, &[5]).unwrap();
        assert_eq!(canon(h.vertices()), canon(convex_hull(&p)));
    }

    #[test]
    fn grows_from_nothing() {
        let p = pts(&[(0, 0), (5, 1), (2, 4), (-3, 2), (1, -6)]);
        let mut h = Hull::new(5);
        for i in 0..5 {
            let hint = if i == 0 { vec![] } else { vec![i - 1] };
            h.insert(&p, i, &hint).unwrap();
        }
        assert_eq!(canon(h.vertices()), canon(convex_hull(&p)));
    }

    proptest::proptest! {
        #[test]
        fn incremental_matches_static(raw in proptest::collection::vec((-40i64..40, -40i64..40), 3..25)) {
            let p = pts(&raw);
            if crate::pointset::find_collinear_brute(&p).is_some() {
                return Ok(());
            }
            // insert in order of distance from the first point's hull so
            // every new point is outside: sort by angle around a far point
            let mut order: Vec<usize> = (0..p.len()).collect();
            order.sort_by(|&a, &b| p[a].pos().lex_cmp(p[b].pos()));
            let mut h = Hull::new(p.len());
            for (k, &i) in order.iter().enumerate() {
                let hint: Vec<usize> = if k == 0 { vec![] } else { h.vertices() };
                h.insert(&p, i, &hint).unwrap();
            }
            proptest::prop_assert_eq!(canon(h.vertices()), canon(convex_hull(&p)));
        }
    }
}
