//! Pieces, boards and the primitive lattice operations everything else is built on.
//!
//! A rider is described by its basic moves `m = (c, d)`; it attacks along every
//! integer multiple of each. Boards are rational convex polygons given by
//! boundary inequalities `a·x + b·y <= beta`, and at size parameter `n` the
//! playable cells are the integer points strictly inside the dilate `(n+1)·B`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Sub;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// An integer point of the plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Point {
    pub x: i64,
    pub y: i64,
}

impl Point {
    pub const fn new(x: i64, y: i64) -> Self {
        Point { x, y }
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, rhs: Point) -> Point {
        Point::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

/// A basic move `(c, d)`: nonzero, coprime, and stored with a canonical sign
/// (`c > 0`, or `c = 0` and `d = 1`) so each slope has one representative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Move {
    c: i64,
    d: i64,
}

impl Move {
    pub fn new(c: i64, d: i64) -> Result<Self> {
        if c == 0 && d == 0 {
            return Err(Error::ZeroMove(c, d));
        }
        if c.unsigned_abs().gcd(&d.unsigned_abs()) != 1 {
            return Err(Error::NotCoprime(c, d));
        }
        let (c, d) = if c < 0 || (c == 0 && d < 0) { (-c, -d) } else { (c, d) };
        Ok(Move { c, d })
    }

    pub fn c(&self) -> i64 {
        self.c
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    /// `m⊥ = (d, -c)`, the normal used for attack equations and side tests.
    pub fn perp(&self) -> (i64, i64) {
        (self.d, -self.c)
    }

    /// `p · m⊥`. Two points lie on a common line of this move iff their keys agree.
    #[inline]
    pub fn key(&self, p: Point) -> i64 {
        self.d * p.x - self.c * p.y
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.c, self.d)
    }
}

/// The basic moves of a piece, pairwise non-parallel.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MoveSet {
    moves: Vec<Move>,
    name: Option<String>,
}

impl MoveSet {
    /// Validates raw `(c, d)` pairs and normalizes each to its canonical slope representative.
    pub fn new(raw: &[(i64, i64)]) -> Result<Self> {
        if raw.is_empty() {
            return Err(Error::EmptyMoveSet);
        }
        let mut moves: Vec<Move> = Vec::with_capacity(raw.len());
        for &(c, d) in raw {
            let m = Move::new(c, d)?;
            if let Some(prev) = moves.iter().find(|p| **p == m) {
                return Err(Error::ParallelMoves(prev.c, prev.d, c, d));
            }
            moves.push(m);
        }
        Ok(MoveSet { moves, name: None })
    }

    pub fn from_moves(moves: Vec<Move>) -> Result<Self> {
        let raw: Vec<(i64, i64)> = moves.iter().map(|m| (m.c, m.d)).collect();
        Self::new(&raw)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn queen() -> Self {
        Self::new(&[(1, 0), (0, 1), (1, 1), (1, -1)]).unwrap().with_name("queen")
    }

    pub fn rook() -> Self {
        Self::new(&[(1, 0), (0, 1)]).unwrap().with_name("rook")
    }

    pub fn bishop() -> Self {
        Self::new(&[(1, 1), (1, -1)]).unwrap().with_name("bishop")
    }

    pub fn nightrider() -> Self {
        Self::new(&[(2, 1), (1, 2), (2, -1), (1, -2)]).unwrap().with_name("nightrider")
    }

    /// Rook moves plus one diagonal.
    pub fn semiqueen() -> Self {
        Self::new(&[(1, 0), (0, 1), (1, 1)]).unwrap().with_name("semiqueen")
    }

    pub fn preset(name: &str) -> Option<Self> {
        match name {
            "queen" => Some(Self::queen()),
            "rook" => Some(Self::rook()),
            "bishop" => Some(Self::bishop()),
            "nightrider" => Some(Self::nightrider()),
            "semiqueen" => Some(Self::semiqueen()),
            _ => None,
        }
    }

    pub fn moves(&self) -> &[Move] {
        &self.moves
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn label(&self) -> String {
        match &self.name {
            Some(n) => n.clone(),
            None => self.moves_string(),
        }
    }

    /// `c1,d1;c2,d2;...`
    pub fn moves_string(&self) -> String {
        let parts: Vec<String> = self.moves.iter().map(|m| format!("{},{}", m.c, m.d)).collect();
        parts.join(";")
    }
}

/// `a·x + b·y <= beta` with integral normal and rational right-hand side.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Inequality {
    pub a: i64,
    pub b: i64,
    pub beta: BigRational,
}

impl Inequality {
    pub fn new(a: i64, b: i64, beta: BigRational) -> Self {
        Inequality { a, b, beta }
    }

    fn lhs(&self, x: &BigRational, y: &BigRational) -> BigRational {
        x * BigRational::from_integer(self.a.into()) + y * BigRational::from_integer(self.b.into())
    }
}

pub type RationalPoint = (BigRational, BigRational);

/// A bounded, full-dimensional rational convex polygon.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoardPolygon {
    inequalities: Vec<Inequality>,
    /// Vertices in cyclic order.
    vertices: Vec<RationalPoint>,
}

fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

impl BoardPolygon {
    /// Builds the polygon from its boundary inequalities. Every inequality must
    /// support an edge; redundant, duplicate, infeasible and unbounded systems are rejected.
    pub fn from_inequalities(inequalities: Vec<Inequality>) -> Result<Self> {
        let w = inequalities.len();
        if w < 3 {
            return Err(Error::InvalidBoard(format!("need at least 3 inequalities, got {w}")));
        }
        if let Some(h) = inequalities.iter().find(|h| h.a == 0 && h.b == 0) {
            return Err(Error::InvalidBoard(format!("inequality with zero normal (0,0,{})", h.beta)));
        }
        let mut vertices: Vec<RationalPoint> = Vec::new();
        for j in 0..w {
            for k in j + 1..w {
                let (hj, hk) = (&inequalities[j], &inequalities[k]);
                let det = hj.a * hk.b - hk.a * hj.b;
                if det == 0 {
                    continue;
                }
                let det = int(det);
                let x = (&hj.beta * int(hk.b) - &hk.beta * int(hj.b)) / &det;
                let y = (&hk.beta * int(hj.a) - &hj.beta * int(hk.a)) / &det;
                if inequalities.iter().all(|h| h.lhs(&x, &y) <= h.beta) && !vertices.contains(&(x.clone(), y.clone())) {
                    vertices.push((x, y));
                }
            }
        }
        // Each inequality must be tight at exactly two vertices (one edge).
        let mut tight: Vec<[usize; 2]> = Vec::with_capacity(w);
        for (j, h) in inequalities.iter().enumerate() {
            let on: Vec<usize> = (0..vertices.len())
                .filter(|&v| h.lhs(&vertices[v].0, &vertices[v].1) == h.beta)
                .collect();
            if on.len() != 2 {
                return Err(Error::InvalidBoard(format!(
                    "inequality {} ({},{},{}) is not an edge of a bounded polygon",
                    j, h.a, h.b, h.beta
                )));
            }
            let pair = [on[0], on[1]];
            if tight.contains(&pair) {
                return Err(Error::InvalidBoard(format!("inequality {j} duplicates another edge")));
            }
            tight.push(pair);
        }
        if vertices.len() != w {
            return Err(Error::InvalidBoard("inequality system is not a simple polygon".into()));
        }
        // Walk the edge cycle to put vertices in boundary order.
        let mut order = Vec::with_capacity(w);
        let mut used = alloc::vec![false; w];
        let (mut cur, mut edge) = (tight[0][0], 0usize);
        for _ in 0..w {
            order.push(cur);
            used[edge] = true;
            let next = if tight[edge][0] == cur { tight[edge][1] } else { tight[edge][0] };
            cur = next;
            match (0..w).find(|&e| !used[e] && tight[e].contains(&cur)) {
                Some(e) => edge = e,
                None => break,
            }
        }
        if order.len() != w {
            return Err(Error::InvalidBoard("boundary is not a single cycle".into()));
        }
        let vertices: Vec<RationalPoint> = order.into_iter().map(|i| vertices[i].clone()).collect();
        let board = BoardPolygon { inequalities, vertices };
        if board.area().is_zero() {
            return Err(Error::InvalidBoard("polygon has zero area".into()));
        }
        Ok(board)
    }

    /// The unit square `[0,1]^2`.
    pub fn square() -> Self {
        Self::rectangle(int(1), int(1)).unwrap()
    }

    /// `[0,a] x [0,b]`, inequalities in the order `-x<=0, -y<=0, x<=a, y<=b`.
    pub fn rectangle(a: BigRational, b: BigRational) -> Result<Self> {
        if !a.is_positive() || !b.is_positive() {
            return Err(Error::InvalidBoard(format!("rectangle sides must be positive, got {a} x {b}")));
        }
        Self::from_inequalities(alloc::vec![
            Inequality::new(-1, 0, BigRational::zero()),
            Inequality::new(0, -1, BigRational::zero()),
            Inequality::new(1, 0, a),
            Inequality::new(0, 1, b),
        ])
    }

    pub fn inequalities(&self) -> &[Inequality] {
        &self.inequalities
    }

    pub fn vertices(&self) -> &[RationalPoint] {
        &self.vertices
    }

    /// Shoelace area.
    pub fn area(&self) -> BigRational {
        let k = self.vertices.len();
        let mut twice = BigRational::zero();
        for i in 0..k {
            let (x0, y0) = &self.vertices[i];
            let (x1, y1) = &self.vertices[(i + 1) % k];
            twice += x0 * y1 - x1 * y0;
        }
        twice.abs() / int(2)
    }

    pub fn has_integral_vertices(&self) -> bool {
        self.vertices.iter().all(|(x, y)| x.is_integer() && y.is_integer())
    }

    /// Least common denominator of the vertex coordinates.
    pub fn vertex_denominator(&self) -> BigInt {
        self.vertices
            .iter()
            .flat_map(|(x, y)| [x.denom().clone(), y.denom().clone()])
            .fold(BigInt::one(), |acc, d| acc.lcm(&d))
    }

    pub fn contains_closed(&self, p: &RationalPoint) -> bool {
        self.inequalities.iter().all(|h| h.lhs(&p.0, &p.1) <= h.beta)
    }

    /// Strict membership of an integer point in `t·B`.
    pub fn contains_strict_dilated(&self, t: u64, p: Point) -> bool {
        let t = BigInt::from(t);
        self.inequalities.iter().all(|h| {
            let lhs = BigInt::from(h.a) * p.x + BigInt::from(h.b) * p.y;
            lhs * h.beta.denom() < &t * h.beta.numer()
        })
    }

    /// Integer bounding box `(xmin, xmax, ymin, ymax)` of the closed dilate `t·B`.
    pub fn bounding_box_dilated(&self, t: u64) -> (i64, i64, i64, i64) {
        let t = int(t as i64);
        let xs = self.vertices.iter().map(|v| &v.0 * &t);
        let ys = self.vertices.iter().map(|v| &v.1 * &t);
        let to_i64 = |r: BigInt| -> i64 { i64::try_from(r).expect("board coordinate out of range") };
        let (mut xmin, mut xmax, mut ymin, mut ymax) = (i64::MAX, i64::MIN, i64::MAX, i64::MIN);
        for x in xs {
            xmin = xmin.min(to_i64(x.floor().to_integer()));
            xmax = xmax.max(to_i64(x.ceil().to_integer()));
        }
        for y in ys {
            ymin = ymin.min(to_i64(y.floor().to_integer()));
            ymax = ymax.max(to_i64(y.ceil().to_integer()));
        }
        (xmin, xmax, ymin, ymax)
    }

    /// Textual form accepted by the board parser.
    pub fn to_text(&self) -> String {
        if *self == Self::square() {
            return "square".into();
        }
        let h = &self.inequalities;
        if h.len() == 4
            && (h[0].a, h[0].b, h[1].a, h[1].b, h[2].a, h[2].b, h[3].a, h[3].b) == (-1, 0, 0, -1, 1, 0, 0, 1)
            && h[0].beta.is_zero()
            && h[1].beta.is_zero()
        {
            return format!("rect:{},{}", h[2].beta, h[3].beta);
        }
        let parts: Vec<String> = h.iter().map(|h| format!("{},{},{}", h.a, h.b, h.beta)).collect();
        format!("poly:{}", parts.join(";"))
    }
}

/// Integer points strictly inside `t·B`, sorted lexicographically by `(x, y)`.
pub fn interior_lattice_points(board: &BoardPolygon, t: u64) -> Vec<Point> {
    let (xmin, xmax, ymin, ymax) = board.bounding_box_dilated(t);
    // Pre-scale right-hand sides once: a·x + b·y < t·beta  <=>  (a·x + b·y)·den < t·num.
    let rows: Vec<(i128, i128, i128, i128)> = board
        .inequalities
        .iter()
        .map(|h| {
            let den = i128::try_from(h.beta.denom()).expect("denominator too large");
            let num = i128::try_from(h.beta.numer()).expect("numerator too large");
            (h.a as i128, h.b as i128, den, num * t as i128)
        })
        .collect();
    let mut out = Vec::new();
    for x in xmin..=xmax {
        for y in ymin..=ymax {
            if rows.iter().all(|&(a, b, den, rhs)| (a * x as i128 + b * y as i128) * den < rhs) {
                out.push(Point::new(x, y));
            }
        }
    }
    out
}

/// Whether two placed pieces attack each other. Coincident pieces always do.
pub fn attacks(zi: Point, zj: Point, ms: &MoveSet) -> bool {
    zi == zj || ms.moves().iter().any(|m| m.key(zj - zi) == 0)
}

fn two_move_det(m1: Move, m2: Move) -> Result<i64> {
    let det = m1.c * m2.d - m2.c * m1.d;
    if det == 0 {
        return Err(Error::ParallelMoves(m1.c, m1.d, m2.c, m2.d));
    }
    Ok(det)
}

/// Whether `delta` is an integral combination `k·m1 + l·m2`, i.e. whether a single piece
/// can travel by `delta` using only these two moves.
pub fn reachable_by_two_moves(m1: Move, m2: Move, delta: Point) -> Result<bool> {
    let det = two_move_det(m1, m2)?;
    // Cramer: k = det(delta, m2)/det, l = det(m1, delta)/det.
    let k = delta.x * m2.d - m2.c * delta.y;
    let l = m1.c * delta.y - delta.x * m1.d;
    Ok(k % det == 0 && l % det == 0)
}

/// `det(m1, m2)` divides both components of `delta`. Sufficient for
/// [`reachable_by_two_moves`], and the test used when scaling a whole walk.
pub fn det_divides(m1: Move, m2: Move, delta: Point) -> Result<bool> {
    let det = two_move_det(m1, m2)?;
    Ok(delta.x % det == 0 && delta.y % det == 0)
}

/// A placement of `q` pieces.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Configuration {
    pub positions: Vec<Point>,
    pub labelled: bool,
}

impl Configuration {
    pub fn new(positions: Vec<Point>) -> Self {
        Configuration { positions, labelled: true }
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    /// First attacking pair, if any.
    pub fn attacking_pair(&self, ms: &MoveSet) -> Option<(usize, usize)> {
        let p = &self.positions;
        (0..p.len())
            .flat_map(|i| (i + 1..p.len()).map(move |j| (i, j)))
            .find(|&(i, j)| attacks(p[i], p[j], ms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn move_set_normalizes_and_rejects() {
        let q = MoveSet::new(&[(1, 0), (0, 1), (1, 1), (1, -1)]).unwrap();
        assert_eq!(q.len(), 4);
        let n = MoveSet::new(&[(2, 1), (1, 2), (2, -1), (1, -2)]).unwrap();
        assert_eq!(n.len(), 4);
        assert_eq!(MoveSet::new(&[(2, 2)]), Err(Error::NotCoprime(2, 2)));
        assert!(matches!(MoveSet::new(&[(1, 1), (-1, -1)]), Err(Error::ParallelMoves(..))));
        assert_eq!(MoveSet::new(&[(0, 0)]), Err(Error::ZeroMove(0, 0)));
        assert_eq!(MoveSet::new(&[]), Err(Error::EmptyMoveSet));
        let m = MoveSet::new(&[(-1, 1), (0, -1)]).unwrap();
        assert_eq!(m.moves()[0], Move::new(1, -1).unwrap());
        assert_eq!((m.moves()[1].c(), m.moves()[1].d()), (0, 1));
    }

    #[test]
    fn square_interior_points() {
        let sq = BoardPolygon::square();
        let pts = interior_lattice_points(&sq, 4);
        assert_eq!(pts.len(), 9);
        assert_eq!(pts[0], Point::new(1, 1));
        assert_eq!(pts[8], Point::new(3, 3));
        assert!(interior_lattice_points(&sq, 1).is_empty());
    }

    #[test]
    fn rectangle_interior_points() {
        let rect = BoardPolygon::rectangle(r(3, 1), r(2, 1)).unwrap();
        let pts = interior_lattice_points(&rect, 2);
        assert_eq!(pts.len(), 15);
        assert!(pts.iter().all(|p| (1..=5).contains(&p.x) && (1..=3).contains(&p.y)));
    }

    #[test]
    fn board_geometry() {
        let sq = BoardPolygon::square();
        assert_eq!(sq.area(), r(1, 1));
        assert_eq!(sq.vertices().len(), 4);
        assert!(sq.has_integral_vertices());
        let tri = BoardPolygon::from_inequalities(alloc::vec![
            Inequality::new(-1, 0, r(0, 1)),
            Inequality::new(0, -1, r(0, 1)),
            Inequality::new(2, 3, r(1, 1)),
        ])
        .unwrap();
        assert_eq!(tri.area(), r(1, 12));
        assert_eq!(tri.vertex_denominator(), BigInt::from(6));
        assert!(!tri.has_integral_vertices());
    }

    #[test]
    fn board_rejects_bad_systems() {
        // unbounded wedge plus a parallel cap that leaves it open
        let open = BoardPolygon::from_inequalities(alloc::vec![
            Inequality::new(-1, 0, r(0, 1)),
            Inequality::new(0, -1, r(0, 1)),
            Inequality::new(1, 0, r(1, 1)),
        ]);
        assert!(open.is_err());
        // redundant fifth inequality
        let redundant = BoardPolygon::from_inequalities(alloc::vec![
            Inequality::new(-1, 0, r(0, 1)),
            Inequality::new(0, -1, r(0, 1)),
            Inequality::new(1, 0, r(1, 1)),
            Inequality::new(0, 1, r(1, 1)),
            Inequality::new(1, 1, r(5, 1)),
        ]);
        assert!(redundant.is_err());
        // duplicated edge
        let dup = BoardPolygon::from_inequalities(alloc::vec![
            Inequality::new(-1, 0, r(0, 1)),
            Inequality::new(0, -1, r(0, 1)),
            Inequality::new(1, 0, r(1, 1)),
            Inequality::new(2, 0, r(2, 1)),
            Inequality::new(0, 1, r(1, 1)),
        ]);
        assert!(dup.is_err());
        // infeasible
        let empty = BoardPolygon::from_inequalities(alloc::vec![
            Inequality::new(1, 0, r(-1, 1)),
            Inequality::new(-1, 0, r(-1, 1)),
            Inequality::new(0, 1, r(1, 1)),
        ]);
        assert!(empty.is_err());
        assert!(BoardPolygon::rectangle(r(0, 1), r(1, 1)).is_err());
    }

    #[test]
    fn attack_examples() {
        let q = MoveSet::queen();
        let n = MoveSet::nightrider();
        assert!(attacks(Point::new(1, 1), Point::new(3, 3), &q));
        assert!(!attacks(Point::new(1, 1), Point::new(2, 3), &q));
        assert!(attacks(Point::new(1, 1), Point::new(2, 3), &n));
        assert!(attacks(Point::new(5, 7), Point::new(5, 7), &MoveSet::rook()));
    }

    #[test]
    fn two_move_reachability() {
        let b1 = Move::new(1, 1).unwrap();
        let b2 = Move::new(1, -1).unwrap();
        assert!(reachable_by_two_moves(b1, b2, Point::new(2, 0)).unwrap());
        assert!(!reachable_by_two_moves(b1, b2, Point::new(1, 0)).unwrap());
        assert!(det_divides(b1, b2, Point::new(2, 0)).unwrap());
        assert!(!det_divides(b1, b2, Point::new(1, 0)).unwrap());
        let r1 = Move::new(1, 0).unwrap();
        let r2 = Move::new(0, 1).unwrap();
        for a in -3..=3 {
            for b in -3..=3 {
                assert!(reachable_by_two_moves(r1, r2, Point::new(a, b)).unwrap());
            }
        }
        assert!(reachable_by_two_moves(b1, b1, Point::new(0, 0)).is_err());
        // divisibility is sufficient but not necessary: (1,0) and (1,2) have det 2
        let m2 = Move::new(1, 2).unwrap();
        assert!(reachable_by_two_moves(r1, m2, Point::new(1, 0)).unwrap());
        assert!(!det_divides(r1, m2, Point::new(1, 0)).unwrap());
    }

    #[test]
    fn board_text_forms() {
        assert_eq!(BoardPolygon::square().to_text(), "square");
        assert_eq!(BoardPolygon::rectangle(r(3, 1), r(5, 2)).unwrap().to_text(), "rect:3,5/2");
    }
}
