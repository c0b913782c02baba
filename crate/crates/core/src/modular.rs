//! Exact arithmetic over `Z_n` for the small moduli used on the torus grid.
//!
//! Every value is normalized into `[0, n)` when it is built, so equality is
//! plain structural equality.

use std::fmt;

use crate::error::{Error, Result};

/// Largest supported modulus. A torus row then fits one 64-bit mask.
pub const MAX_MODULUS: u32 = 64;

/// Extended Euclid: returns `(g, s, t)` with `g = gcd(a, b) = s*a + t*b` and `g >= 0`.
pub fn egcd(a: i64, b: i64) -> (i64, i64, i64) {
    if a == 0 && b == 0 {
        return (0, 0, 0);
    }
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i64, 0i64);
    let (mut old_t, mut t) = (0i64, 1i64);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Trial-division factorization into `(prime, exponent)` pairs, primes ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n) == [(n, 1)]
}

#[inline]
pub(crate) fn reduce(v: i64, n: u32) -> u32 {
    v.rem_euclid(n as i64) as u32
}

/// A modulus `2 <= n <= 64` together with its cached factorization.
///
/// No modulus in range has more than three distinct prime factors
/// (`2*3*5*7 > 64`), so the factorization is stored inline and the type is `Copy`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Modulus {
    n: u32,
    factors: [(u32, u32); 3],
    len: u8,
}

impl Modulus {
    pub fn new(n: i64) -> Result<Self> {
        if !(2..=MAX_MODULUS as i64).contains(&n) {
            return Err(Error::ModulusOutOfRange(n));
        }
        let mut factors = [(0, 0); 3];
        let list = factorize(n as u64);
        for (slot, &(p, e)) in factors.iter_mut().zip(&list) {
            *slot = (p as u32, e);
        }
        Ok(Modulus { n: n as u32, factors, len: list.len() as u8 })
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.n
    }

    pub fn factors(&self) -> &[(u32, u32)] {
        &self.factors[..self.len as usize]
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors().iter().all(|&(_, e)| e == 1)
    }

    pub fn is_prime(&self) -> bool {
        self.len == 1 && self.factors[0].1 == 1
    }

    /// The prime-power components `p^e` of `n`, ascending by prime.
    pub fn prime_powers(&self) -> impl Iterator<Item = (u32, u32, u32)> + '_ {
        self.factors().iter().map(|&(p, e)| (p, e, p.pow(e)))
    }

    #[inline]
    pub fn is_unit(&self, v: u32) -> bool {
        gcd(v as u64, self.n as u64) == 1
    }

    pub fn units(&self) -> impl Iterator<Item = u32> + '_ {
        (1..self.n).filter(move |&v| self.is_unit(v))
    }

    pub fn residue(&self, v: i64) -> Residue {
        Residue { value: reduce(v, self.n), n: self.n }
    }

    pub fn point(&self, x: i64, y: i64) -> Point {
        Point { x: reduce(x, self.n), y: reduce(y, self.n), n: self.n }
    }

    /// All `n^2` points in lexicographic `(x, y)` order.
    pub fn points(&self) -> impl Iterator<Item = Point> + '_ {
        let n = self.n;
        (0..n).flat_map(move |x| (0..n).map(move |y| Point { x, y, n }))
    }
}

impl fmt::Debug for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z_{}", self.n)
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.n)
    }
}

/// An element of `Z_n`, always in `[0, n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Residue {
    value: u32,
    n: u32,
}

impl Residue {
    pub fn new(value: i64, n: Modulus) -> Self {
        n.residue(value)
    }

    #[inline]
    pub fn value(self) -> u32 {
        self.value
    }

    #[inline]
    pub fn modulus(self) -> u32 {
        self.n
    }

    pub fn is_unit(self) -> bool {
        gcd(self.value as u64, self.n as u64) == 1
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// Multiplicative inverse of a unit.
pub fn mod_inv(a: Residue) -> Result<Residue> {
    let (g, s, _) = egcd(a.value as i64, a.n as i64);
    if g != 1 {
        return Err(Error::NotAUnit { value: a.value, n: a.n });
    }
    Ok(Residue { value: reduce(s, a.n), n: a.n })
}

/// Inverse of `v` modulo `n`, if it exists.
pub(crate) fn inv_mod(v: u32, n: u32) -> Option<u32> {
    let (g, s, _) = egcd(v as i64, n as i64);
    (g == 1).then(|| reduce(s, n))
}

/// A point of the torus `Z_n x Z_n`.
///
/// Ordering is lexicographic in `(x, y)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: u32,
    pub y: u32,
    n: u32,
}

impl Point {
    pub fn new(x: i64, y: i64, n: Modulus) -> Self {
        n.point(x, y)
    }

    #[inline]
    pub fn modulus(self) -> u32 {
        self.n
    }

    pub fn x(self) -> Residue {
        Residue { value: self.x, n: self.n }
    }

    pub fn y(self) -> Residue {
        Residue { value: self.y, n: self.n }
    }

    /// `self + v`, coordinatewise mod `n`.
    pub fn translate(self, dx: i64, dy: i64) -> Point {
        Point { x: reduce(self.x as i64 + dx, self.n), y: reduce(self.y as i64 + dy, self.n), n: self.n }
    }

    /// Row-major cell index `y * n + x`.
    #[inline]
    pub fn cell(self) -> usize {
        (self.y * self.n + self.x) as usize
    }

    pub(crate) fn from_cell(cell: usize, n: u32) -> Point {
        Point { x: cell as u32 % n, y: cell as u32 / n, n }
    }
}

/// Difference as a vector mod `n`.
impl std::ops::Sub for Point {
    type Output = Point;

    fn sub(self, other: Point) -> Point {
        debug_assert_eq!(self.n, other.n);
        self.translate(-(other.x as i64), -(other.y as i64))
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.x, self.y)
    }
}

fn same_modulus(points: &[Point]) -> Result<u32> {
    let n = points[0].n;
    match points.iter().find(|p| p.n != n) {
        Some(p) => Err(Error::MixedModuli(n, p.n)),
        None => Ok(n),
    }
}

/// The collinearity determinant `| 1 1 1 ; ax bx cx ; ay by cy |` reduced mod `n`,
/// computed through the translated 2x2 expansion.
pub fn det3(a: Point, b: Point, c: Point) -> Result<Residue> {
    let n = same_modulus(&[a, b, c])?;
    Ok(Residue { value: det3_raw(a, b, c), n })
}

#[inline]
pub(crate) fn det3_raw(a: Point, b: Point, c: Point) -> u32 {
    let (ax, ay) = (a.x as i64, a.y as i64);
    let d = (b.x as i64 - ax) * (c.y as i64 - ay) - (c.x as i64 - ax) * (b.y as i64 - ay);
    reduce(d, a.n)
}

/// Reduction `Z_n -> Z_m` for a divisor `m` of `n`, applied to both coordinates.
pub fn project(p: Point, m: u32) -> Result<Point> {
    if m == 0 || !p.n.is_multiple_of(m) {
        return Err(Error::NotADivisor { m, n: p.n });
    }
    Ok(Point { x: p.x % m, y: p.y % m, n: m })
}

/// Like [`project`] but into a modulus that may exceed the supported range,
/// used internally for prime-power components.
#[inline]
pub(crate) fn project_raw(p: Point, m: u32) -> Point {
    Point { x: p.x % m, y: p.y % m, n: m }
}
