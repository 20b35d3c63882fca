//! Validated bichromatic point sets.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::geom::{angle_cmp, orient, Color, Point, Sign, Vector};

/// An (n+n) point set in general position. Point `i` is the `i`-th input
/// point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSet {
    points: Vec<Point>,
    n: usize,
}

/// Above this size the general-position scan sorts directions around each
/// point instead of testing all triples.
const BRUTE_FORCE_LIMIT: usize = 48;

impl PointSet {
    /// Validates color balance, distinctness and general position.
    pub fn new(points: Vec<Point>) -> Result<PointSet> {
        let white = points.iter().filter(|p| p.color() == Color::White).count();
        let black = points.len() - white;
        if white != black || white == 0 {
            return Err(Error::ColorCount { expected: points.len() / 2, white, black });
        }
        if let Some((i, j)) = find_duplicate(&points) {
            return Err(Error::DuplicatePoint(i, j));
        }
        if let Some((i, j, k)) = find_collinear_triple(&points) {
            return Err(Error::Collinear(i, j, k));
        }
        Ok(PointSet { n: white, points })
    }

    /// Skips validation. The caller guarantees balance, distinctness and
    /// general position (generators that hold these by construction).
    pub fn new_unchecked(points: Vec<Point>) -> PointSet {
        let n = points.len() / 2;
        PointSet { points, n }
    }

    /// Number of points of each color.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &Point {
        &self.points[i]
    }

    pub fn into_points(self) -> Vec<Point> {
        self.points
    }

    pub fn indices_of(&self, color: Color) -> Vec<usize> {
        (0..self.points.len()).filter(|&i| self.points[i].color() == color).collect()
    }
}

fn find_duplicate(points: &[Point]) -> Option<(usize, usize)> {
    let mut seen: HashMap<&Vector, usize> = HashMap::with_capacity(points.len());
    for (j, p) in points.iter().enumerate() {
        if let Some(&i) = seen.get(p.pos()) {
            return Some((i, j));
        }
        seen.insert(p.pos(), j);
    }
    None
}

/// Lexicographically smallest collinear index triple, if any.
pub fn find_collinear_triple(points: &[Point]) -> Option<(usize, usize, usize)> {
    if points.len() <= BRUTE_FORCE_LIMIT {
        find_collinear_brute(points)
    } else {
        find_collinear_sorted(points)
    }
}

pub(crate) fn find_collinear_brute(points: &[Point]) -> Option<(usize, usize, usize)> {
    let m = points.len();
    for i in 0..m {
        for j in i + 1..m {
            for k in j + 1..m {
                if orient(&points[i], &points[j], &points[k]) == Sign::Zero {
                    return Some((i, j, k));
                }
            }
        }
    }
    None
}

pub(crate) fn find_collinear_sorted(points: &[Point]) -> Option<(usize, usize, usize)> {
    let m = points.len();
    for i in 0..m {
        let mut dirs: Vec<(usize, Vector)> = (i + 1..m)
            .map(|j| (j, (points[j].pos() - points[i].pos()).line_direction()))
            .collect();
        dirs.sort_by(|a, b| angle_cmp(&a.1, &b.1).then(a.0.cmp(&b.0)));
        let mut best: Option<(usize, usize)> = None;
        let mut g = 0;
        while g < dirs.len() {
            let mut h = g + 1;
            while h < dirs.len() && angle_cmp(&dirs[g].1, &dirs[h].1).is_eq() {
                h += 1;
            }
            if h - g >= 2 {
                // indices within a group are ascending by the tie-break
                let cand = (dirs[g].0, dirs[g + 1].0);
                best = Some(best.map_or(cand, |b| b.min(cand)));
            }
            g = h;
        }
        if let Some((j, k)) = best {
            return Some((i, j, k));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: i64, y: i64, c: Color) -> Point {
        Point::from_ints(x, y, c)
    }

    #[test]
    fn rejects_collinear_triple() {
        let pts = vec![
            p(0, 0, Color::White),
            p(1, 1, Color::White),
            p(2, 2, Color::Black),
            p(3, 5, Color::Black),
        ];
        assert_eq!(PointSet::new(pts), Err(Error::Collinear(0, 1, 2)));
    }

    #[test]
    fn rejects_duplicate() {
        let pts = vec![p(0, 0, Color::White), p(0, 0, Color::Black)];
        assert_eq!(PointSet::new(pts), Err(Error::DuplicatePoint(0, 1)));
    }

    #[test]
    fn rejects_unbalanced() {
        let pts = vec![p(0, 0, Color::White), p(1, 0, Color::White)];
        assert!(matches!(PointSet::new(pts), Err(Error::ColorCount { .. })));
    }

    #[test]
    fn accepts_square() {
        let pts = vec![
            p(0, 0, Color::White),
            p(0, 2, Color::Black),
            p(3, 0, Color::White),
            p(3, 2, Color::Black),
        ];
        let ps = PointSet::new(pts).unwrap();
        assert_eq!(ps.n(), 2);
    }

    #[test]
    fn sorted_scan_agrees_with_brute_force() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let m = rng.gen_range(3..14);
            let pts: Vec<Point> = (0..m)
                .map(|_| p(rng.gen_range(-4..5), rng.gen_range(-4..5), Color::White))
                .collect();
            if find_duplicate(&pts).is_some() {
                continue;
            }
            assert_eq!(find_collinear_brute(&pts), find_collinear_sorted(&pts));
        }
    }
}
