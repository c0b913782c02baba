//! Arcs, complete arcs, affine automorphisms and the `Z_2p` machinery:
//! lifting maps from `Z_p` and `Z_2`, realizing a permutation of the four
//! parity classes by an automorphism, and normalizing a large arc of
//! `Z_2p x Z_2p` so that it contains `(0,0)`, `(1,0)` and `(0,1)`.

use std::fmt;

use crate::error::{Error, Result};
use crate::geometry::collinear_in;
use crate::modular::{inv_mod, is_prime, reduce, Modulus, Point};

/// A point set of one modulus, kept sorted and duplicate free.
///
/// Being an arc is a checked property ([`ArcSet::is_arc`]), not a type invariant.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ArcSet {
    modulus: Modulus,
    points: Vec<Point>,
}

impl ArcSet {
    pub fn new(modulus: Modulus, points: impl IntoIterator<Item = Point>) -> Result<Self> {
        let mut points: Vec<Point> = points.into_iter().collect();
        if let Some(p) = points.iter().find(|p| p.modulus() != modulus.get()) {
            return Err(Error::MixedModuli(modulus.get(), p.modulus()));
        }
        points.sort_unstable();
        if let Some(w) = points.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicatePoint(w[0].x, w[0].y));
        }
        Ok(ArcSet { modulus, points })
    }

    pub fn from_coords(modulus: Modulus, coords: &[(i64, i64)]) -> Result<Self> {
        Self::new(modulus, coords.iter().map(|&(x, y)| modulus.point(x, y)))
    }

    pub fn empty(modulus: Modulus) -> Self {
        ArcSet { modulus, points: Vec::new() }
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.points.binary_search(p).is_ok()
    }

    /// No three distinct members collinear.
    pub fn is_arc(&self) -> bool {
        let pts = &self.points;
        let n = &self.modulus;
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                for k in j + 1..pts.len() {
                    if collinear_in(n, pts[i], pts[j], pts[k]) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Every point outside the arc is collinear with two of its members.
    pub fn is_complete(&self) -> Result<bool> {
        if !self.is_arc() {
            return Err(Error::NotAnArc);
        }
        Ok(self.extensions().next().is_none())
    }

    /// Points that could be added while keeping the arc property.
    pub fn extensions(&self) -> impl Iterator<Item = Point> + '_ {
        let n = self.modulus;
        let cells = (n.get() * n.get()) as usize;
        let mut covered = vec![false; cells];
        for p in &self.points {
            covered[p.cell()] = true;
        }
        let pts = &self.points;
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                for c in n.points() {
                    if !covered[c.cell()] && collinear_in(&n, pts[i], pts[j], c) {
                        covered[c.cell()] = true;
                    }
                }
            }
        }
        n.points().filter(move |c| !covered[c.cell()]).collect::<Vec<_>>().into_iter()
    }
}

impl fmt::Debug for ArcSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ArcSet[{}]{{", self.modulus)?;
        for (i, p) in self.points.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "({p})")?;
        }
        f.write_str("}")
    }
}

/// `u -> M u + t` on column vectors, with `det M` a unit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AffineMap {
    /// Row-major `[[m00, m01], [m10, m11]]`.
    pub matrix: [[u32; 2]; 2],
    pub translation: [u32; 2],
    n: u32,
}

impl AffineMap {
    pub fn new(matrix: [[i64; 2]; 2], translation: [i64; 2], n: Modulus) -> Result<Self> {
        let m = n.get();
        let matrix = matrix.map(|row| row.map(|v| reduce(v, m)));
        let det = reduce(matrix[0][0] as i64 * matrix[1][1] as i64 - matrix[0][1] as i64 * matrix[1][0] as i64, m);
        if !n.is_unit(det) {
            return Err(Error::NotInvertible { det, n: m });
        }
        Ok(AffineMap { matrix, translation: translation.map(|v| reduce(v, m)), n: m })
    }

    pub fn identity(n: Modulus) -> Self {
        AffineMap { matrix: [[1, 0], [0, 1]], translation: [0, 0], n: n.get() }
    }

    pub fn linear(matrix: [[i64; 2]; 2], n: Modulus) -> Result<Self> {
        Self::new(matrix, [0, 0], n)
    }

    pub fn translation(dx: i64, dy: i64, n: Modulus) -> Self {
        AffineMap { matrix: [[1, 0], [0, 1]], translation: [reduce(dx, n.get()), reduce(dy, n.get())], n: n.get() }
    }

    pub fn modulus(&self) -> u32 {
        self.n
    }

    pub fn apply(&self, p: Point) -> Point {
        let [[a, b], [c, d]] = self.matrix.map(|r| r.map(|v| v as i64));
        let (x, y) = (p.x as i64, p.y as i64);
        Point::new(
            a * x + b * y + self.translation[0] as i64,
            c * x + d * y + self.translation[1] as i64,
            Modulus::new(self.n as i64).expect("valid modulus"),
        )
    }

    /// `self ∘ inner`: apply `inner` first.
    pub fn compose(&self, inner: &AffineMap) -> AffineMap {
        assert_eq!(self.n, inner.n, "compose: mixed moduli");
        let n = self.n as i64;
        let m = |r: usize, c: usize| self.matrix[r][c] as i64;
        let k = |r: usize, c: usize| inner.matrix[r][c] as i64;
        let mut matrix = [[0u32; 2]; 2];
        for (r, row) in matrix.iter_mut().enumerate() {
            for (c, slot) in row.iter_mut().enumerate() {
                *slot = (m(r, 0) * k(0, c) + m(r, 1) * k(1, c)).rem_euclid(n) as u32;
            }
        }
        let t = inner.translation.map(|v| v as i64);
        let translation =
            [0, 1].map(|r| (m(r, 0) * t[0] + m(r, 1) * t[1] + self.translation[r] as i64).rem_euclid(n) as u32);
        AffineMap { matrix, translation, n: self.n }
    }
}

pub fn apply_affine(f: &AffineMap, x: &ArcSet) -> Result<ArcSet> {
    if f.n != x.modulus.get() {
        return Err(Error::MixedModuli(f.n, x.modulus.get()));
    }
    ArcSet::new(x.modulus, x.points.iter().map(|&p| f.apply(p)))
}

fn odd_prime(p: u32) -> Result<()> {
    if p % 2 == 1 && is_prime(p as u64) {
        Ok(())
    } else {
        Err(Error::NotOddPrime(p))
    }
}

fn double_modulus(p: u32) -> Result<Modulus> {
    Modulus::new(2 * p as i64)
}

/// `(i, j) mod p  ->  (2i, 2j) mod 2p`.
pub fn alpha2_lift(x: &ArcSet) -> Result<ArcSet> {
    let p = x.modulus.get();
    odd_prime(p)?;
    if !x.is_arc() {
        return Err(Error::NotAnArc);
    }
    let big = double_modulus(p)?;
    ArcSet::new(big, x.points.iter().map(|q| big.point(2 * q.x as i64, 2 * q.y as i64)))
}

/// `(i, j) mod 2  ->  (p i, p j) mod 2p`, defined on the one complete arc of
/// `Z_2 x Z_2`, the whole plane.
pub fn alphap_lift(x: &ArcSet, p: u32) -> Result<ArcSet> {
    if x.modulus.get() != 2 {
        return Err(Error::MixedModuli(2, x.modulus.get()));
    }
    odd_prime(p)?;
    if x.len() != 4 {
        return Err(Error::NotComplete);
    }
    let big = double_modulus(p)?;
    let p = p as i64;
    ArcSet::new(big, x.points.iter().map(|q| big.point(p * q.x as i64, p * q.y as i64)))
}

/// Index of the parity class of a point of `Z_2p`: `2 (x mod 2) + (y mod 2)`,
/// so the classes `(0,0), (0,1), (1,0), (1,1)` are `0, 1, 2, 3`.
#[inline]
pub fn parity_class(p: Point) -> usize {
    (2 * (p.x % 2) + p.y % 2) as usize
}

/// A permutation of the four points of `Z_2 x Z_2`, by class index
/// (see [`parity_class`]): class `i` goes to `self.0[i]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ClassPermutation([usize; 4]);

impl ClassPermutation {
    pub const IDENTITY: ClassPermutation = ClassPermutation([0, 1, 2, 3]);

    pub fn new(images: [usize; 4]) -> Option<Self> {
        let mut seen = [false; 4];
        for &i in &images {
            if i > 3 || std::mem::replace(&mut seen[i], true) {
                return None;
            }
        }
        Some(ClassPermutation(images))
    }

    pub fn images(&self) -> [usize; 4] {
        self.0
    }

    pub fn apply(&self, class: usize) -> usize {
        self.0[class]
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &ClassPermutation) -> ClassPermutation {
        ClassPermutation(inner.0.map(|i| self.0[i]))
    }

    /// All 24 permutations in lexicographic order of their images.
    pub fn all() -> Vec<ClassPermutation> {
        let mut out = Vec::with_capacity(24);
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    for d in 0..4 {
                        if let Some(s) = ClassPermutation::new([a, b, c, d]) {
                            out.push(s);
                        }
                    }
                }
            }
        }
        out
    }

    /// The three generating transpositions: swap (0,0)/(0,1), (0,1)/(1,0), (1,0)/(1,1).
    pub const GENERATORS: [ClassPermutation; 3] =
        [ClassPermutation([1, 0, 2, 3]), ClassPermutation([0, 2, 1, 3]), ClassPermutation([0, 1, 3, 2])];

    /// Shortest word `g_{i1} ∘ ... ∘ g_{ik}` in [`Self::GENERATORS`] equal to
    /// `self`, found breadth first (ties resolved by generator order).
    pub fn generator_word(&self) -> Vec<usize> {
        use std::collections::{HashMap, VecDeque};
        let mut prev: HashMap<ClassPermutation, Option<(ClassPermutation, usize)>> = HashMap::new();
        let mut queue = VecDeque::from([Self::IDENTITY]);
        prev.insert(Self::IDENTITY, None);
        while let Some(cur) = queue.pop_front() {
            if cur == *self {
                break;
            }
            for (g, gen) in Self::GENERATORS.iter().enumerate() {
                // Extending the word on the right: cur ∘ gen.
                let next = cur.compose(gen);
                prev.entry(next).or_insert_with(|| {
                    queue.push_back(next);
                    Some((cur, g))
                });
            }
        }
        let mut word = Vec::new();
        let mut at = *self;
        while let Some(Some((before, g))) = prev.get(&at) {
            word.push(*g);
            at = *before;
        }
        word.reverse();
        word
    }
}

/// An automorphism `f` of `Z_2p x Z_2p` whose parity shadow is `sigma`:
/// `class(f(u)) = sigma(class(u))` for every `u`.
///
/// Built from one automorphism per generating transposition:
/// `f_A ∘ t_(0,1)`, `f_B` and `f_A`, with `A = [[1,0],[1,1]]`, `B = [[0,1],[1,0]]`.
pub fn realize_class_permutation(sigma: ClassPermutation, p: u32) -> Result<AffineMap> {
    odd_prime(p)?;
    let n = double_modulus(p)?;
    let f_a = AffineMap::linear([[1, 0], [1, 1]], n)?;
    let f_b = AffineMap::linear([[0, 1], [1, 0]], n)?;
    let generators = [f_a.compose(&AffineMap::translation(0, 1, n)), f_b, f_a];
    Ok(sigma.generator_word().into_iter().fold(AffineMap::identity(n), |acc, g| acc.compose(&generators[g])))
}

/// Moves an arc of `Z_2p x Z_2p` (`p >= 5` prime, more than `p + 3` points) by
/// an automorphism onto one containing `(0,0)`, `(1,0)` and `(0,1)`.
///
/// Steps: permute the parity classes so that classes (0,0), (0,1), (1,0) are
/// all occupied and (1,0) holds at least three points (lexicographically first
/// such permutation); translate the first class-(0,0) point to the origin;
/// take the first pair `a` in class (0,1), `b` in class (1,0) whose cross
/// determinant `a_x b_y - b_x a_y` is a unit and apply the linear map sending
/// `a -> (1,0)` and `b -> (0,1)`.
pub fn normalize_2p(x: &ArcSet) -> Result<(AffineMap, ArcSet)> {
    let n = x.modulus;
    let m = n.get();
    let p = m / 2;
    if !m.is_multiple_of(2) || p < 5 || !is_prime(p as u64) {
        return Err(Error::InvalidMode(format!("normalization needs n = 2p with p >= 5 prime, got n = {m}")));
    }
    if !x.is_arc() {
        return Err(Error::NotAnArc);
    }
    let limit = p as usize + 3;
    if x.len() <= limit {
        return Err(Error::TooSmall { size: x.len(), limit });
    }

    let mut counts = [0usize; 4];
    for &q in &x.points {
        counts[parity_class(q)] += 1;
    }
    let sigma = ClassPermutation::all()
        .into_iter()
        .find(|s| {
            let mut image = [0usize; 4];
            for c in 0..4 {
                image[s.apply(c)] += counts[c];
            }
            image[0] >= 1 && image[1] >= 1 && image[2] >= 3
        })
        .ok_or(Error::NotAnArc)?;
    let f_sigma = realize_class_permutation(sigma, p)?;
    let stage1 = apply_affine(&f_sigma, x)?;

    let origin =
        *stage1.points.iter().find(|q| parity_class(**q) == 0).expect("class (0,0) occupied after permutation");
    let shift = AffineMap::translation(-(origin.x as i64), -(origin.y as i64), n);
    let stage2 = apply_affine(&shift, &stage1)?;

    let class = |c: usize| stage2.points.iter().filter(move |q| parity_class(**q) == c);
    let (a, b, det) = class(1)
        .flat_map(|&a| class(2).map(move |&b| (a, b)))
        .find_map(|(a, b)| {
            let det = reduce(a.x as i64 * b.y as i64 - b.x as i64 * a.y as i64, m);
            n.is_unit(det).then_some((a, b, det))
        })
        .ok_or(Error::NoUnitPair)?;
    let inv = inv_mod(det, m).expect("unit") as i64;
    let (ax, ay, bx, by) = (a.x as i64, a.y as i64, b.x as i64, b.y as i64);
    let frame = AffineMap::linear([[inv * by, -inv * bx], [-inv * ay, inv * ax]], n)?;

    let f = frame.compose(&shift).compose(&f_sigma);
    let out = apply_affine(&f, x)?;
    Ok((f, out))
}
