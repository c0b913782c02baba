//! Lines of `Z_n x Z_n` and collinearity.
//!
//! A line is the image of an integer line `{(a + u k, b + v k)}` with
//! `gcd(u, v) = 1`, i.e. a coset of the cyclic subgroup generated by a
//! primitive direction. Two collinearity routes are provided:
//!
//! * [`collinear_det`], the determinant test, only valid for squarefree `n`;
//! * [`collinear`], valid for every `n`: the triple is split into its
//!   prime-power components, each checked by determinant (prime) or by a
//!   precomputed direction-membership table (higher prime power).
//!
//! [`LineTable`] enumerates every line explicitly and is the reference both
//! routes are tested against.

use std::collections::BTreeSet;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::modular::{det3_raw, gcd, project_raw, Modulus, Point, MAX_MODULUS};

/// A primitive direction `(u, v)`: `gcd(u, v, n) = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Direction {
    pub u: u32,
    pub v: u32,
    n: u32,
}

impl Direction {
    pub fn new(u: i64, v: i64, n: Modulus) -> Result<Self> {
        let p = n.point(u, v);
        let d = Direction { u: p.x, v: p.y, n: n.get() };
        if !d.is_primitive() {
            return Err(Error::NotPrimitive { u: d.u, v: d.v, n: d.n });
        }
        Ok(d)
    }

    fn is_primitive(&self) -> bool {
        gcd(gcd(self.u as u64, self.v as u64), self.n as u64) == 1
    }

    pub fn modulus(&self) -> u32 {
        self.n
    }

    /// The lexicographically least unit multiple `(w u, w v)`.
    pub fn canonical(&self) -> Direction {
        let n = self.n;
        (1..n)
            .filter(|&w| gcd(w as u64, n as u64) == 1)
            .map(|w| Direction { u: w * self.u % n, v: w * self.v % n, n })
            .min()
            .unwrap_or(*self)
    }

    pub fn is_canonical(&self) -> bool {
        self.canonical() == *self
    }
}

/// One representative per line through the origin, ascending.
pub fn primitive_directions(n: Modulus) -> Vec<Direction> {
    let m = n.get();
    let mut out = BTreeSet::new();
    for u in 0..m {
        for v in 0..m {
            let d = Direction { u, v, n: m };
            if d.is_primitive() {
                out.insert(d.canonical());
            }
        }
    }
    out.into_iter().collect()
}

/// A line of the torus. Equality and hashing look only at the point set.
#[derive(Clone, Debug)]
pub struct Line {
    pub base: Point,
    pub dir: Direction,
    points: Vec<Point>,
}

impl Line {
    /// Member points in lexicographic order.
    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.points.binary_search(p).is_ok()
    }
}

impl PartialEq for Line {
    fn eq(&self, other: &Self) -> bool {
        self.points == other.points
    }
}

impl Eq for Line {}

impl Hash for Line {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.points.hash(state);
    }
}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.points.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

/// `{base + k dir : k in Z_n}`.
pub fn line_from(base: Point, dir: Direction) -> Result<Line> {
    if base.modulus() != dir.n {
        return Err(Error::MixedModuli(base.modulus(), dir.n));
    }
    if !dir.is_primitive() {
        return Err(Error::NotPrimitive { u: dir.u, v: dir.v, n: dir.n });
    }
    let n = dir.n as i64;
    let mut points: Vec<Point> = (0..n).map(|k| base.translate(k * dir.u as i64, k * dir.v as i64)).collect();
    points.sort_unstable();
    points.dedup();
    Ok(Line { base, dir, points })
}

/// Every line of `Z_n x Z_n` with a point-to-line incidence index.
///
/// Line ids follow the lexicographic order of the sorted point sets.
pub struct LineTable {
    modulus: Modulus,
    lines: Vec<Line>,
    members: Vec<Vec<u64>>,
    incidence: Vec<Vec<u32>>,
}

pub fn enumerate_lines(n: Modulus) -> LineTable {
    let m = n.get();
    let mut seen: BTreeSet<Vec<Point>> = BTreeSet::new();
    let mut lines = Vec::new();
    for dir in primitive_directions(n) {
        for base in n.points() {
            let line = line_from(base, dir).expect("canonical directions are primitive");
            if seen.insert(line.points.clone()) {
                lines.push(line);
            }
        }
    }
    lines.sort_by(|a, b| a.points.cmp(&b.points));
    for line in &mut lines {
        line.base = line.points[0];
    }

    let cells = (m * m) as usize;
    let words = cells.div_ceil(64);
    let mut members = Vec::with_capacity(lines.len());
    let mut incidence = vec![Vec::new(); cells];
    for (id, line) in lines.iter().enumerate() {
        let mut bits = vec![0u64; words];
        for p in &line.points {
            bits[p.cell() / 64] |= 1 << (p.cell() % 64);
            incidence[p.cell()].push(id as u32);
        }
        members.push(bits);
    }
    LineTable { modulus: n, lines, members, incidence }
}

impl LineTable {
    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn lines(&self) -> &[Line] {
        &self.lines
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    /// Ids of the lines through `p`.
    pub fn lines_through(&self, p: Point) -> &[u32] {
        &self.incidence[p.cell()]
    }

    #[inline]
    fn has(&self, line: u32, p: Point) -> bool {
        let c = p.cell();
        self.members[line as usize][c / 64] >> (c % 64) & 1 == 1
    }

    /// Membership oracle: is there a line containing all three points?
    pub fn collinear(&self, a: Point, b: Point, c: Point) -> bool {
        self.lines_through(a).iter().any(|&l| self.has(l, b) && self.has(l, c))
    }

    /// Row-major membership mask of a line, one bit per cell.
    pub fn mask(&self, line: usize) -> &[u64] {
        &self.members[line]
    }
}

/// Determinant collinearity test. Sound only for squarefree `n`.
pub fn collinear_det(a: Point, b: Point, c: Point) -> Result<bool> {
    let det = crate::modular::det3(a, b, c)?;
    let n = Modulus::new(det.modulus() as i64)?;
    if !n.is_squarefree() {
        return Err(Error::NotSquarefree(n.get()));
    }
    Ok(det.value() == 0)
}

/// Bit table of pairs `(u, v)` lying on a common line through the origin of
/// `Z_q x Z_q`, for a prime power `q`.
struct OriginPairs {
    q: u32,
    bits: Vec<u64>,
}

impl OriginPairs {
    fn build(q: u32) -> Self {
        let modulus = Modulus::new(q as i64).expect("prime power within range");
        let cells = (q * q) as usize;
        let mut bits = vec![0u64; (cells * cells).div_ceil(64)];
        for dir in primitive_directions(modulus) {
            let line: Vec<usize> = (0..q).map(|k| ((k * dir.v % q) * q + k * dir.u % q) as usize).collect();
            for &u in &line {
                for &v in &line {
                    let i = u * cells + v;
                    bits[i / 64] |= 1 << (i % 64);
                }
            }
        }
        OriginPairs { q, bits }
    }

    #[inline]
    fn get(&self, u: Point, v: Point) -> bool {
        let cells = (self.q * self.q) as usize;
        let i = u.cell() * cells + v.cell();
        self.bits[i / 64] >> (i % 64) & 1 == 1
    }
}

fn origin_pairs(q: u32) -> &'static OriginPairs {
    static CACHE: [OnceLock<OriginPairs>; MAX_MODULUS as usize + 1] =
        [const { OnceLock::new() }; MAX_MODULUS as usize + 1];
    CACHE[q as usize].get_or_init(|| OriginPairs::build(q))
}

/// General collinearity, valid for every modulus.
///
/// Repeated points count as collinear: any two points share a line.
///
/// # Panics
/// If the points do not share one modulus.
pub fn collinear(a: Point, b: Point, c: Point) -> bool {
    assert!(a.modulus() == b.modulus() && b.modulus() == c.modulus(), "collinear: mixed moduli");
    let n = Modulus::new(a.modulus() as i64).expect("points carry a valid modulus");
    collinear_in(&n, a, b, c)
}

/// [`collinear`] with the factorization already at hand.
pub(crate) fn collinear_in(n: &Modulus, a: Point, b: Point, c: Point) -> bool {
    if n.is_squarefree() {
        return det3_raw(a, b, c) == 0;
    }
    n.prime_powers().all(|(_, e, q)| {
        let (a, b, c) = (project_raw(a, q), project_raw(b, q), project_raw(c, q));
        if e == 1 {
            det3_raw(a, b, c) == 0
        } else {
            origin_pairs(q).get(b - a, c - a)
        }
    })
}

/// How [`blocked_points`] decides collinearity.
#[derive(Clone, Copy)]
pub enum BlockMode<'a> {
    Table(&'a LineTable),
    Determinant,
}

/// Every `c` outside `{a, b}` collinear with `a` and `b`, ascending.
///
/// # Panics
/// If `a == b`.
pub fn blocked_points(a: Point, b: Point, mode: BlockMode<'_>) -> Result<Vec<Point>> {
    assert_ne!(a, b, "blocked_points needs two distinct points");
    if a.modulus() != b.modulus() {
        return Err(Error::MixedModuli(a.modulus(), b.modulus()));
    }
    let n = Modulus::new(a.modulus() as i64)?;
    let keep: Box<dyn Fn(Point) -> bool> = match mode {
        BlockMode::Determinant => {
            if !n.is_squarefree() {
                return Err(Error::NotSquarefree(n.get()));
            }
            Box::new(move |c| det3_raw(a, b, c) == 0)
        }
        BlockMode::Table(table) => Box::new(move |c| table.collinear(a, b, c)),
    };
    Ok(n.points().filter(|&c| c != a && c != b && keep(c)).collect())
}
