//! Exact ham-sandwich cuts.
//!
//! In the dual, the point `(x, y)` becomes the line `c(t) = y - t·x`: the
//! intercept of the line of slope `t` through the point. For each color the
//! valid intercepts at slope `t` form the closed band between the lower and
//! upper median intercepts. A cut with slope `t` exists iff the two bands
//! meet, and the difference of band midpoints `φ(t)` is a continuous
//! piecewise-linear function that changes sign between `t = -∞` and
//! `t = +∞`. The search keeps an open slope interval with a sign change and
//! shrinks it at dual-line crossings until `φ` is linear on it.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::geom::{Color, Coord, DirectedLine, Point, Sign, Vector};

/// A line leaving at most `⌊n/2⌋` points of each color in each open
/// half-plane. `on_line` lists the (at most two) points it passes through.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HamSandwichCut {
    pub line: DirectedLine,
    pub on_line: Vec<usize>,
}

trait Exact: Clone + Ord + Signed {
    fn to_rational(&self) -> BigRational;
}

impl Exact for i128 {
    fn to_rational(&self) -> BigRational {
        BigRational::from_integer(BigInt::from(*self))
    }
}

impl Exact for BigRational {
    fn to_rational(&self) -> BigRational {
        self.clone()
    }
}

/// Integer coordinates below this bound keep every intermediate of the
/// search inside `i128`.
const I128_LIMIT: i64 = 1 << 60;

/// Ham-sandwich cut of `points[subset]`, with the side of each subset point
/// (positive = left). Indices in the cut are into `points`.
pub(crate) fn ham_sandwich_of(points: &[Point], subset: &[usize]) -> (HamSandwichCut, Vec<Sign>) {
    let small: Option<Vec<[i64; 2]>> = subset
        .iter()
        .map(|&i| points[i].small().filter(|v| v[0].abs() < I128_LIMIT && v[1].abs() < I128_LIMIT))
        .collect();
    let (line, sides) = match small {
        Some(s) => {
            let xs: Vec<i128> = s.iter().map(|v| v[0] as i128).collect();
            let ys: Vec<i128> = s.iter().map(|v| v[1] as i128).collect();
            Dual::new(points, subset, xs, ys).solve()
        }
        None => {
            let xs: Vec<BigRational> = subset.iter().map(|&i| points[i].x().clone()).collect();
            let ys: Vec<BigRational> = subset.iter().map(|&i| points[i].y().clone()).collect();
            Dual::new(points, subset, xs, ys).solve()
        }
    };
    let on_line = subset.iter().zip(&sides).filter(|(_, &s)| s == Sign::Zero).map(|(&i, _)| i).collect();
    (HamSandwichCut { line, on_line }, sides)
}

/// Slope as the fraction `p / q` with `q > 0`.
#[derive(Debug, Clone)]
struct Slope<T> {
    p: T,
    q: T,
}

impl<T: Exact> Slope<T> {
    fn new(p: T, q: T) -> Slope<T> {
        if q.is_negative() {
            Slope { p: -p, q: -q }
        } else {
            Slope { p, q }
        }
    }

    fn cmp(&self, other: &Slope<T>) -> Ordering {
        (self.p.clone() * other.q.clone()).cmp(&(other.p.clone() * self.q.clone()))
    }
}

struct Dual<T> {
    xs: Vec<T>,
    ys: Vec<T>,
    white: Vec<usize>,
    black: Vec<usize>,
}

/// The two ranks whose intercepts bound the valid band for `m` points.
fn band_ranks(m: usize) -> (usize, usize) {
    if m % 2 == 1 {
        ((m - 1) / 2, (m - 1) / 2)
    } else {
        (m / 2 - 1, m / 2)
    }
}

/// Element of rank `lo` and the next one up, under `cmp`.
fn select_band<F>(items: &[usize], cmp: F) -> (usize, usize)
where
    F: Fn(&usize, &usize) -> Ordering,
{
    let (lo, hi) = band_ranks(items.len());
    let mut v = items.to_vec();
    v.select_nth_unstable_by(lo, &cmp);
    let a = v[lo];
    if hi == lo {
        return (a, a);
    }
    let b = *v[lo + 1..].iter().min_by(|x, y| cmp(x, y)).expect("upper half is nonempty");
    (a, b)
}

impl<T: Exact> Dual<T> {
    fn new(points: &[Point], subset: &[usize], xs: Vec<T>, ys: Vec<T>) -> Self {
        let (white, black): (Vec<usize>, Vec<usize>) =
            (0..subset.len()).partition(|&j| points[subset[j]].color() == Color::White);
        debug_assert_eq!(white.len(), black.len());
        Dual { xs, ys, white, black }
    }

    fn key(&self, j: usize, t: &Slope<T>) -> T {
        t.q.clone() * self.ys[j].clone() - t.p.clone() * self.xs[j].clone()
    }

    fn solve(&self) -> (DirectedLine, Vec<Sign>) {
        if let Some(cut) = self.vertical_cut() {
            return cut;
        }
        self.sloped_cut()
    }

    fn vertical_cut(&self) -> Option<(DirectedLine, Vec<Sign>)> {
        let by_x = |a: &usize, b: &usize| self.xs[*a].cmp(&self.xs[*b]);
        let (wl, wh) = select_band(&self.white, by_x);
        let (bl, bh) = select_band(&self.black, by_x);
        let lo = (&self.xs[wl]).max(&self.xs[bl]).clone();
        let hi = (&self.xs[wh]).min(&self.xs[bh]).clone();
        if lo > hi {
            return None;
        }
        let sum = lo + hi;
        let sides = self.xs.iter().map(|x| Sign::of(&(sum.clone() - x.clone() - x.clone()))).collect();
        let c = sum.to_rational() / BigRational::from_integer(2.into());
        Some((DirectedLine::new(Vector::new(c, Coord::zero()), Vector::from_ints(0, 1)), sides))
    }

    /// Band-defining lines just right of `t` (`None` = just right of `-∞`).
    fn realizing(&self, t: Option<&Slope<T>>) -> [usize; 4] {
        let cmp = |a: &usize, b: &usize| -> Ordering {
            match t {
                None => self.xs[*a].cmp(&self.xs[*b]).then_with(|| self.ys[*a].cmp(&self.ys[*b])),
                // intercept, then its derivative `-x`
                Some(t) => self.key(*a, t).cmp(&self.key(*b, t)).then_with(|| self.xs[*b].cmp(&self.xs[*a])),
            }
        };
        let (wl, wh) = select_band(&self.white, cmp);
        let (bl, bh) = select_band(&self.black, cmp);
        [wl, wh, bl, bh]
    }

    /// `(Σy, Σx)` with `φ(t) ∝ Σy - t·Σx` on a piece where `lines` realize
    /// the bands.
    fn phi_coeffs(&self, lines: &[usize; 4]) -> (T, T) {
        let [wl, wh, bl, bh] = *lines;
        let sy = self.ys[wl].clone() + self.ys[wh].clone() - self.ys[bl].clone() - self.ys[bh].clone();
        let sx = self.xs[wl].clone() + self.xs[wh].clone() - self.xs[bl].clone() - self.xs[bh].clone();
        (sy, sx)
    }

    /// Sign of `φ` at a finite slope, from intercept values alone.
    fn phi_sign(&self, t: &Slope<T>) -> (Sign, T) {
        let by_key = |a: &usize, b: &usize| self.key(*a, t).cmp(&self.key(*b, t));
        let (wl, wh) = select_band(&self.white, by_key);
        let (bl, bh) = select_band(&self.black, by_key);
        let w = self.key(wl, t) + self.key(wh, t);
        let b = self.key(bl, t) + self.key(bh, t);
        (Sign::of(&(w.clone() - b)), w)
    }

    fn sloped_cut(&self) -> (DirectedLine, Vec<Sign>) {
        // with no vertical cut the x-bands are disjoint, so Σx ≠ 0 at -∞
        let first = self.realizing(None);
        let (_, sx) = self.phi_coeffs(&first);
        assert!(!sx.is_zero(), "ham-sandwich: no sign change at infinity");
        let left_sign = Sign::of(&sx);
        let mut lo: Option<Slope<T>> = None;
        let mut hi: Option<Slope<T>> = None;
        loop {
            let lines = self.realizing(lo.as_ref());
            let mut crossings: Vec<Slope<T>> = Vec::new();
            let mut seen: Vec<usize> = Vec::with_capacity(4);
            for &r in &lines {
                if seen.contains(&r) {
                    continue;
                }
                seen.push(r);
                let same = if self.white.contains(&r) { &self.white } else { &self.black };
                for &j in same {
                    if j == r || self.xs[j] == self.xs[r] {
                        continue;
                    }
                    let t = Slope::new(self.ys[r].clone() - self.ys[j].clone(), self.xs[r].clone() - self.xs[j].clone());
                    let above_lo = lo.as_ref().is_none_or(|l| t.cmp(l) == Ordering::Greater);
                    let below_hi = hi.as_ref().is_none_or(|h| t.cmp(h) == Ordering::Less);
                    if above_lo && below_hi {
                        crossings.push(t);
                    }
                }
            }
            if crossings.is_empty() {
                // φ is linear on (lo, hi) and changes sign there
                let (sy, sx) = self.phi_coeffs(&lines);
                let t = Slope::new(sy, sx);
                let [wl, wh, _, _] = lines;
                let sum = self.key(wl, &t) + self.key(wh, &t);
                return self.line_from(&t, &sum);
            }
            let mid = crossings.len() / 2;
            crossings.select_nth_unstable_by(mid, |a, b| a.cmp(b));
            let t = crossings.swap_remove(mid);
            let (s, sum) = self.phi_sign(&t);
            if s == Sign::Zero {
                return self.line_from(&t, &sum);
            }
            // φ keeps its sign at -∞ just right of every lower bound taken
            if s == left_sign {
                lo = Some(t);
            } else {
                hi = Some(t);
            }
        }
    }

    /// The line of slope `t` whose scaled intercept `q·c` equals `sum / 2`.
    fn line_from(&self, t: &Slope<T>, sum: &T) -> (DirectedLine, Vec<Sign>) {
        let sides = (0..self.xs.len())
            .map(|j| {
                let k = self.key(j, t);
                Sign::of(&(k.clone() + k - sum.clone()))
            })
            .collect();
        let p = t.p.to_rational();
        let q = t.q.to_rational();
        let c = sum.to_rational() / (q.clone() * BigRational::from_integer(2.into()));
        (DirectedLine::new(Vector::new(Coord::zero(), c), Vector::new(q, p)), sides)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_cut(points: &[Point], subset: &[usize], cut: &HamSandwichCut) {
        let n = subset.len() / 2;
        for color in [Color::White, Color::Black] {
            for want in [Sign::Positive, Sign::Negative] {
                let k = subset
                    .iter()
                    .filter(|&&i| points[i].color() == color && cut.line.side_of(&points[i]) == want)
                    .count();
                assert!(k <= n / 2, "{k} points of {color:?} on one side, n = {n}");
            }
        }
        assert!(cut.on_line.len() <= 2);
        if n % 2 == 1 {
            assert_eq!(cut.on_line.len(), 2);
        }
    }

    fn check_sides(points: &[Point], subset: &[usize], cut: &HamSandwichCut, sides: &[Sign]) {
        for (&i, &s) in subset.iter().zip(sides) {
            assert_eq!(cut.line.side_of(&points[i]), s);
        }
    }

    #[test]
    fn square_gets_vertical_cut() {
        let pts = vec![
            Point::from_ints(0, 0, Color::White),
            Point::from_ints(0, 2, Color::Black),
            Point::from_ints(3, 0, Color::White),
            Point::from_ints(3, 2, Color::Black),
        ];
        let all = [0, 1, 2, 3];
        let (cut, sides) = ham_sandwich_of(&pts, &all);
        check_sides(&pts, &all, &cut, &sides);
        assert_eq!(cut.line.origin.x, Coord::new(3.into(), 2.into()));
        assert!(cut.line.direction.x.is_zero());
        check_cut(&pts, &all, &cut);
    }

    #[test]
    fn one_plus_one_passes_through_both() {
        let pts = vec![Point::from_ints(0, 0, Color::White), Point::from_ints(5, 2, Color::Black)];
        let (cut, _) = ham_sandwich_of(&pts, &[0, 1]);
        assert_eq!(cut.on_line, vec![0, 1]);
    }

    #[test]
    fn random_sets_small_and_big_paths() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for trial in 0..300 {
            let n = rng.gen_range(1..9);
            let mut pts: Vec<Point> = Vec::new();
            while pts.len() < 2 * n {
                let c = if pts.len() < n { Color::White } else { Color::Black };
                let (x, y) = (rng.gen_range(-30..30), rng.gen_range(-30..30));
                let p = if trial % 2 == 0 {
                    Point::from_ints(x, y, c)
                } else {
                    Point::new(Coord::new(x.into(), 7.into()), Coord::new(y.into(), 3.into()), c)
                };
                let mut cand = pts.clone();
                cand.push(p.clone());
                if cand.len() >= 3 && crate::pointset::find_collinear_brute(&cand).is_some() {
                    continue;
                }
                if pts.iter().any(|q| q.pos() == p.pos()) {
                    continue;
                }
                pts.push(p);
            }
            let all: Vec<usize> = (0..pts.len()).collect();
            let (cut, sides) = ham_sandwich_of(&pts, &all);
        check_sides(&pts, &all, &cut, &sides);
            check_cut(&pts, &all, &cut);
        }
    }
}
