//! Exact planar primitives.
//!
//! Every coordinate is an arbitrary-precision rational. Points whose
//! coordinates are integers of moderate size additionally carry an `i64`
//! copy so the orientation test can run in `i128` without allocating.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact rational coordinate, always kept in lowest terms with a positive
/// denominator.
pub type Coord = BigRational;

/// Integers below this bound in absolute value take the `i128` fast path.
const SMALL_LIMIT: i64 = 1 << 62;

/// Parses `"17"`, `"-3"` or `"p/q"` into an exact coordinate.
pub fn parse_coord(text: &str) -> Option<Coord> {
    let text = text.trim();
    if text.is_empty() {
        return None;
    }
    match text.split_once('/') {
        None => BigInt::from_str(text).ok().map(Coord::from_integer),
        Some((num, den)) => {
            let num = BigInt::from_str(num).ok()?;
            let den = BigInt::from_str(den).ok()?;
            if den.is_zero() || den.is_negative() {
                return None;
            }
            Some(Coord::new(num, den))
        }
    }
}

/// Canonical text form: `p` for integers, `p/q` otherwise.
pub fn format_coord(c: &Coord) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Lossy conversion for display purposes only.
pub fn coord_to_f64(c: &Coord) -> f64 {
    c.to_f64().unwrap_or(f64::NAN)
}

pub(crate) fn small_int(c: &Coord) -> Option<i64> {
    if !c.is_integer() {
        return None;
    }
    let v = c.numer().to_i64()?;
    (v.abs() < SMALL_LIMIT).then_some(v)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Color {
    White,
    Black,
}

impl Color {
    pub fn other(self) -> Color {
        match self {
            Color::White => Color::Black,
            Color::Black => Color::White,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Color::White => 'W',
            Color::Black => 'B',
        }
    }

    pub fn from_char(c: char) -> Option<Color> {
        match c {
            'W' | 'w' => Some(Color::White),
            'B' | 'b' => Some(Color::Black),
            _ => None,
        }
    }
}

/// Sign of an exact determinant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of<T: Signed>(v: &T) -> Sign {
        if v.is_positive() {
            Sign::Positive
        } else if v.is_negative() {
            Sign::Negative
        } else {
            Sign::Zero
        }
    }

    pub fn from_ordering(o: Ordering) -> Sign {
        match o {
            Ordering::Less => Sign::Negative,
            Ordering::Equal => Sign::Zero,
            Ordering::Greater => Sign::Positive,
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }
}

/// An exact planar vector (also used for positions).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Vector {
    pub x: Coord,
    pub y: Coord,
}

impl Vector {
    pub fn new(x: Coord, y: Coord) -> Vector {
        Vector { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Vector {
        Vector::new(Coord::from_integer(x.into()), Coord::from_integer(y.into()))
    }

    pub fn zero() -> Vector {
        Vector::new(Coord::zero(), Coord::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn cross(&self, other: &Vector) -> Coord {
        &self.x * &other.y - &self.y * &other.x
    }

    pub fn dot(&self, other: &Vector) -> Coord {
        &self.x * &other.x + &self.y * &other.y
    }

    /// Counterclockwise quarter turn.
    pub fn perp(&self) -> Vector {
        Vector::new(-self.y.clone(), self.x.clone())
    }

    pub fn scale(&self, k: &Coord) -> Vector {
        Vector::new(&self.x * k, &self.y * k)
    }

    pub fn midpoint(&self, other: &Vector) -> Vector {
        let half = Coord::new(1.into(), 2.into());
        Vector::new((&self.x + &other.x) * &half, (&self.y + &other.y) * &half)
    }

    /// Lexicographic order on (x, y).
    pub fn lex_cmp(&self, other: &Vector) -> Ordering {
        self.x.cmp(&other.x).then_with(|| self.y.cmp(&other.y))
    }

    /// True for directions in the half-open upper half-plane
    /// `y > 0 || (y == 0 && x > 0)`.
    pub fn is_upper(&self) -> bool {
        self.y.is_positive() || (self.y.is_zero() && self.x.is_positive())
    }

    /// Direction of the undirected line spanned by `self`, folded into the
    /// half-open upper half-plane.
    pub fn line_direction(&self) -> Vector {
        if self.is_upper() {
            self.clone()
        } else {
            -self
        }
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", format_coord(&self.x), format_coord(&self.y))
    }
}

impl Add for &Vector {
    type Output = Vector;
    fn add(self, rhs: &Vector) -> Vector {
        Vector::new(&self.x + &rhs.x, &self.y + &rhs.y)
    }
}

impl Sub for &Vector {
    type Output = Vector;
    fn sub(self, rhs: &Vector) -> Vector {
        Vector::new(&self.x - &rhs.x, &self.y - &rhs.y)
    }
}

impl Neg for &Vector {
    type Output = Vector;
    fn neg(self) -> Vector {
        Vector::new(-self.x.clone(), -self.y.clone())
    }
}

impl Mul<&Coord> for &Vector {
    type Output = Vector;
    fn mul(self, rhs: &Coord) -> Vector {
        self.scale(rhs)
    }
}

/// Total order on nonzero directions by counterclockwise angle from the
/// positive x-axis, computed with signs only.
pub fn angle_cmp(u: &Vector, v: &Vector) -> Ordering {
    match (u.is_upper(), v.is_upper()) {
        (true, false) => Ordering::Less,
        (false, true) => Ordering::Greater,
        _ => match Sign::of(&u.cross(v)) {
            Sign::Positive => Ordering::Less,
            Sign::Negative => Ordering::Greater,
            Sign::Zero => Ordering::Equal,
        },
    }
}

/// A colored input point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Point {
    pos: Vector,
    color: Color,
    small: Option<[i64; 2]>,
    frac: Option<[i64; 3]>,
}

/// Bound on homogeneous entries so that a 3x3 determinant fits in `i128`.
const FRAC_LIMIT: i64 = 1 << 40;

/// `(x, y)` as `(X, Y, W)` with `x = X/W`, `y = Y/W` and `W > 0`, when the
/// entries are below `FRAC_LIMIT`.
fn homogeneous_small(x: &Coord, y: &Coord) -> Option<[i64; 3]> {
    let w = x.denom().lcm(y.denom());
    let xs = x.numer() * (&w / x.denom());
    let ys = y.numer() * (&w / y.denom());
    let fit = |v: &BigInt| v.to_i64().filter(|v| v.abs() < FRAC_LIMIT);
    Some([fit(&xs)?, fit(&ys)?, fit(&w)?])
}

impl Point {
    pub fn new(x: Coord, y: Coord, color: Color) -> Point {
        let small = match (small_int(&x), small_int(&y)) {
            (Some(a), Some(b)) => Some([a, b]),
            _ => None,
        };
        let frac = if small.is_some() { None } else { homogeneous_small(&x, &y) };
        Point { pos: Vector::new(x, y), color, small, frac }
    }

    pub fn from_ints(x: i64, y: i64, color: Color) -> Point {
        Point::new(Coord::from_integer(x.into()), Coord::from_integer(y.into()), color)
    }

    pub fn at(pos: Vector, color: Color) -> Point {
        Point::new(pos.x, pos.y, color)
    }

    pub fn x(&self) -> &Coord {
        &self.pos.x
    }

    pub fn y(&self) -> &Coord {
        &self.pos.y
    }

    pub fn pos(&self) -> &Vector {
        &self.pos
    }

    pub fn color(&self) -> Color {
        self.color
    }

    pub(crate) fn small(&self) -> Option<[i64; 2]> {
        self.small
    }

    /// Same position, other color.
    pub fn with_color(&self, color: Color) -> Point {
        Point { pos: self.pos.clone(), color, ..self.clone() }
    }
}

fn orient_small(a: [i64; 2], b: [i64; 2], c: [i64; 2]) -> Sign {
    let (ax, ay) = (a[0] as i128, a[1] as i128);
    let det = (b[0] as i128 - ax) * (c[1] as i128 - ay) - (b[1] as i128 - ay) * (c[0] as i128 - ax);
    Sign::from_ordering(det.cmp(&0))
}

/// Orientation of the triple `(a, b, c)`: positive when `c` lies strictly
/// left of the directed line `a -> b`.
pub fn orient(a: &Point, b: &Point, c: &Point) -> Sign {
    if let (Some(a), Some(b), Some(c)) = (a.small, b.small, c.small) {
        return orient_small(a, b, c);
    }
    let h = |p: &Point| p.frac.or(p.small.map(|[x, y]| [x, y, 1]));
    if let (Some(a), Some(b), Some(c)) = (h(a), h(b), h(c)) {
        if [a, b, c].iter().all(|v| v[0].abs() < FRAC_LIMIT && v[1].abs() < FRAC_LIMIT) {
            return orient_homogeneous(a, b, c);
        }
    }
    orient_vec(&a.pos, &b.pos, &c.pos)
}

fn orient_homogeneous(a: [i64; 3], b: [i64; 3], c: [i64; 3]) -> Sign {
    let [ax, ay, aw] = a.map(i128::from);
    let [bx, by, bw] = b.map(i128::from);
    let [cx, cy, cw] = c.map(i128::from);
    let det = ax * (by * cw - bw * cy) - ay * (bx * cw - bw * cx) + aw * (bx * cy - by * cx);
    Sign::from_ordering(det.cmp(&0))
}

pub fn orient_vec(a: &Vector, b: &Vector, c: &Vector) -> Sign {
    let det = (&b.x - &a.x) * (&c.y - &a.y) - (&b.y - &a.y) * (&c.x - &a.x);
    Sign::of(&det)
}

/// A directed line given by a point on it and a nonzero direction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectedLine {
    pub origin: Vector,
    pub direction: Vector,
}

impl DirectedLine {
    pub fn new(origin: Vector, direction: Vector) -> DirectedLine {
        assert!(!direction.is_zero(), "direction of a line must be nonzero");
        DirectedLine { origin, direction }
    }

    pub fn through(a: &Vector, b: &Vector) -> DirectedLine {
        DirectedLine::new(a.clone(), b - a)
    }

    /// Positive = strictly left, negative = strictly right.
    pub fn side(&self, p: &Vector) -> Sign {
        Sign::of(&self.direction.cross(&(p - &self.origin)))
    }

    pub fn side_of(&self, p: &Point) -> Sign {
        self.side(p.pos())
    }

    pub fn reversed(&self) -> DirectedLine {
        DirectedLine::new(self.origin.clone(), -&self.direction)
    }

    /// A second point on the line, `origin + direction`.
    pub fn second_point(&self) -> Vector {
        &self.origin + &self.direction
    }

    pub fn point_at(&self, t: &Coord) -> Vector {
        &self.origin + &self.direction.scale(t)
    }

    /// Parameter values `(s, t)` of the intersection `self(s) = other(t)`,
    /// or `None` for parallel lines.
    pub fn intersection_params(&self, other: &DirectedLine) -> Option<(Coord, Coord)> {
        let den = self.direction.cross(&other.direction);
        if den.is_zero() {
            return None;
        }
        let w = &other.origin - &self.origin;
        let s = w.cross(&other.direction) / &den;
        let t = w.cross(&self.direction) / &den;
        Some((s, t))
    }

    pub fn intersection(&self, other: &DirectedLine) -> Option<Vector> {
        self.intersection_params(other).map(|(s, _)| self.point_at(&s))
    }
}

impl fmt::Display for DirectedLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", self.origin, self.second_point())
    }
}

/// A matching segment as a pair of point indices, directed white to black.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Segment {
    pub white: usize,
    pub black: usize,
}

impl Segment {
    pub fn new(white: usize, black: usize) -> Segment {
        Segment { white, black }
    }

    pub fn endpoints(self) -> [usize; 2] {
        [self.white, self.black]
    }

    pub fn supporting_line(self, points: &[Point]) -> DirectedLine {
        DirectedLine::through(points[self.white].pos(), points[self.black].pos())
    }

    pub fn direction(self, points: &[Point]) -> Vector {
        points[self.black].pos() - points[self.white].pos()
    }

    pub fn midpoint(self, points: &[Point]) -> Vector {
        points[self.white].pos().midpoint(points[self.black].pos())
    }
}

/// Closed-segment intersection test for segments `ab` and `cd`.
pub fn segments_intersect(a: &Point, b: &Point, c: &Point, d: &Point) -> bool {
    let o1 = orient(a, b, c);
    let o2 = orient(a, b, d);
    let o3 = orient(c, d, a);
    let o4 = orient(c, d, b);
    let on = |p: &Point, q: &Point, r: &Point, o: Sign| {
        o == Sign::Zero && between(p.pos(), q.pos(), r.pos())
    };
    if on(a, b, c, o1) || on(a, b, d, o2) || on(c, d, a, o3) || on(c, d, b, o4) {
        return true;
    }
    o1.as_i8() * o2.as_i8() < 0 && o3.as_i8() * o4.as_i8() < 0
}

/// For collinear `p, q, r`: is `r` within the bounding box of `pq`?
fn between(p: &Vector, q: &Vector, r: &Vector) -> bool {
    let within = |a: &Coord, b: &Coord, v: &Coord| (a.min(b) <= v) && (v <= a.max(b));
    within(&p.x, &q.x, &r.x) && within(&p.y, &q.y, &r.y)
}

/// Do the two matching segments intersect (as closed segments)?
pub fn segments_cross(points: &[Point], s: Segment, t: Segment) -> bool {
    segments_intersect(&points[s.white], &points[s.black], &points[t.white], &points[t.black])
}

pub(crate) fn half() -> Coord {
    Coord::new(BigInt::one(), BigInt::from(2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn frac(n: i64, d: i64) -> Coord {
        Coord::new(n.into(), d.into())
    }

    proptest! {
        #[test]
        fn fractional_orientation_matches_rational(
            v in proptest::collection::vec((-2000i64..2000, 1i64..500), 6),
            big in any::<bool>(),
        ) {
            let scale = if big { 1i64 << 45 } else { 1 };
            let p: Vec<Point> = v
                .chunks(2)
                .map(|c| Point::new(frac(c[0].0 * scale, c[0].1), frac(c[1].0, c[1].1), Color::White))
                .collect();
            prop_assert_eq!(orient(&p[0], &p[1], &p[2]), orient_vec(p[0].pos(), p[1].pos(), p[2].pos()));
        }
    }

    #[test]
    fn collinear_fractions() {
        let p = |x: Coord, y: Coord| Point::new(x, y, Color::Black);
        let a = p(frac(1, 3), frac(2, 3));
        let b = p(frac(2, 7), frac(4, 7));
        let c = p(Coord::from_integer(5.into()), Coord::from_integer(10.into()));
        assert_eq!(orient(&a, &b, &c), Sign::Zero);
    }

    fn p(x: i64, y: i64) -> Point {
        Point::from_ints(x, y, Color::White)
    }

    #[test]
    fn orient_examples() {
        assert_eq!(orient(&p(0, 0), &p(1, 0), &p(0, 1)), Sign::Positive);
        assert_eq!(orient(&p(0, 0), &p(1, 0), &p(2, 0)), Sign::Zero);
        // det |(0,2), (3,1)| = 0*1 - 2*3 = -6
        assert_eq!(orient(&p(0, 0), &p(0, 2), &p(3, 1)), Sign::Negative);
    }

    #[test]
    fn orient_big_path_matches_small_path() {
        let q = |x: i64, y: i64| Point::new(Coord::new(x.into(), 3.into()) * Coord::from_integer(3.into()), Coord::from_integer(y.into()), Color::Black);
        for (a, b, c) in [((0, 0), (0, 2), (3, 1)), ((1, 5), (-2, 7), (4, 4)), ((0, 0), (1, 1), (2, 2))] {
            let small = orient(&p(a.0, a.1), &p(b.0, b.1), &p(c.0, c.1));
            let big = orient_vec(q(a.0, a.1).pos(), q(b.0, b.1).pos(), q(c.0, c.1).pos());
            assert_eq!(small, big);
        }
    }

    #[test]
    fn crossing_examples() {
        let pts = vec![
            Point::from_ints(0, 0, Color::White),
            Point::from_ints(0, 2, Color::Black),
            Point::from_ints(3, 0, Color::White),
            Point::from_ints(3, 2, Color::Black),
        ];
        assert!(!segments_cross(&pts, Segment::new(0, 1), Segment::new(2, 3)));
        assert!(segments_cross(&pts, Segment::new(0, 3), Segment::new(2, 1)));
        let f3 = vec![
            Point::from_ints(0, 1, Color::White),
            Point::from_ints(0, 3, Color::Black),
            Point::from_ints(1, -1, Color::White),
            Point::from_ints(3, -3, Color::Black),
        ];
        assert!(!segments_cross(&f3, Segment::new(0, 1), Segment::new(2, 3)));
    }

    #[test]
    fn coord_text_round_trip() {
        for s in ["0", "-7", "3/4", "-5/2", "123456789012345678901234567891/7"] {
            let c = parse_coord(s).unwrap();
            assert_eq!(format_coord(&c), s);
        }
        assert_eq!(format_coord(&parse_coord("6/4").unwrap()), "3/2");
        assert!(parse_coord("1/0").is_none());
        assert!(parse_coord("1/-2").is_none());
        assert!(parse_coord("x").is_none());
        assert!(parse_coord("").is_none());
    }

    #[test]
    fn angle_order() {
        let dirs = [(1, 0), (1, 1), (0, 1), (-1, 1), (-1, 0), (-1, -1), (0, -1), (1, -1)];
        for (i, a) in dirs.iter().enumerate() {
            for (j, b) in dirs.iter().enumerate() {
                let u = Vector::from_ints(a.0, a.1);
                let v = Vector::from_ints(b.0, b.1);
                assert_eq!(angle_cmp(&u, &v), i.cmp(&j));
            }
        }
    }

    #[test]
    fn line_intersection() {
        let l1 = DirectedLine::through(&Vector::from_ints(0, 0), &Vector::from_ints(0, 1));
        let l2 = DirectedLine::through(&Vector::from_ints(1, -1), &Vector::from_ints(3, -3));
        assert_eq!(l1.intersection(&l2), Some(Vector::from_ints(0, 0)));
        assert_eq!(l1.side(&Vector::from_ints(1, 5)), Sign::Negative);
    }
}
