//! Precomputed tables shared by every node of a search over one modulus.

use std::collections::BTreeMap;

use super::bits;
use crate::geometry::{enumerate_lines, LineTable};
use crate::modular::{Modulus, Point};

/// Dense pair tables are built while they stay under this many bytes.
const DENSE_LIMIT: usize = 48 << 20;

/// Extra exclusion rules applied whenever a point is selected.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rules {
    /// For `n = 2p`: selecting `a` also excludes `a + (p,0)`, `a + (0,p)` and
    /// `a + (p,p)`. Sound for arcs of more than `p + 3` points.
    pub half_translates: Option<u32>,
    /// Selecting `c` excludes every `e` with `det(a, c, e)` a unit for any
    /// selected `a`, restricting the search to arcs without unit triangles.
    pub no_unit_triangles: bool,
}

/// Lines, blocking tables and parallel classes for one modulus.
pub struct SearchContext {
    modulus: Modulus,
    n: usize,
    cells: usize,
    words: usize,
    table: LineTable,
    /// For each difference vector `d` (as a cell), the cells `c` other than
    /// `0, d` collinear with `0` and `d`, as offsets.
    rel_blocked: Vec<Vec<(u32, u32)>>,
    /// `dense[(a * cells + b) * words ..]`: the blocked mask of the pair `(a, b)`.
    dense: Option<Vec<u64>>,
    /// For each parallel class, its `n` line masks back to back.
    classes: Vec<Vec<u64>>,
    /// `unit[r]`: whether residue `r` is a unit.
    unit: Vec<bool>,
}

impl std::fmt::Debug for SearchContext {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SearchContext")
            .field("n", &self.n)
            .field("lines", &self.table.len())
            .field("dense", &self.dense.is_some())
            .finish()
    }
}

impl SearchContext {
    pub fn new(modulus: Modulus) -> Self {
        let n = modulus.get() as usize;
        let cells = n * n;
        let words = cells.div_ceil(64);
        let table = enumerate_lines(modulus);
        let origin = modulus.point(0, 0);

        let mut rel_sets: Vec<std::collections::BTreeSet<usize>> = vec![Default::default(); cells];
        for &l in table.lines_through(origin) {
            let pts = table.lines()[l as usize].points();
            for d in pts {
                for c in pts {
                    if c != d && *c != origin {
                        rel_sets[d.cell()].insert(c.cell());
                    }
                }
            }
        }
        let rel_blocked: Vec<Vec<(u32, u32)>> = rel_sets
            .into_iter()
            .enumerate()
            .map(|(d, set)| {
                if d == 0 {
                    return Vec::new();
                }
                set.into_iter().map(|c| ((c % n) as u32, (c / n) as u32)).collect()
            })
            .collect();

        let mut by_dir: BTreeMap<(u32, u32), Vec<usize>> = BTreeMap::new();
        for (id, line) in table.lines().iter().enumerate() {
            let d = line.dir.canonical();
            by_dir.entry((d.u, d.v)).or_default().push(id);
        }
        let classes =
            by_dir.into_values().map(|ids| ids.iter().flat_map(|&l| table.mask(l).iter().copied()).collect()).collect();

        let unit = (0..n as u32).map(|r| modulus.is_unit(r)).collect();

        let mut ctx = SearchContext { modulus, n, cells, words, table, rel_blocked, dense: None, classes, unit };
        if cells * cells * words * 8 <= DENSE_LIMIT {
            let mut dense = vec![0u64; cells * cells * words];
            for a in 0..cells {
                for b in 0..cells {
                    if a != b {
                        let slot = &mut dense[(a * cells + b) * words..][..words];
                        ctx.for_each_blocked(a, b, |c| bits::set(slot, c));
                    }
                }
            }
            ctx.dense = Some(dense);
        }
        ctx
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn lines(&self) -> &LineTable {
        &self.table
    }

    #[inline]
    pub(crate) fn cells(&self) -> usize {
        self.cells
    }

    #[inline]
    pub(crate) fn words(&self) -> usize {
        self.words
    }

    #[inline]
    fn offset(&self, a: usize, dx: u32, dy: u32) -> usize {
        let n = self.n;
        let (ax, ay) = (a % n, a / n);
        ((ay + dy as usize) % n) * n + (ax + dx as usize) % n
    }

    #[inline]
    fn difference(&self, a: usize, b: usize) -> usize {
        let n = self.n;
        let dx = (b % n + n - a % n) % n;
        let dy = (b / n + n - a / n) % n;
        dy * n + dx
    }

    fn for_each_blocked(&self, a: usize, b: usize, mut f: impl FnMut(usize)) {
        for &(dx, dy) in &self.rel_blocked[self.difference(a, b)] {
            f(self.offset(a, dx, dy));
        }
    }

    /// Removes from `free` every cell collinear with cells `a` and `b`.
    #[inline]
    pub(crate) fn block_pair(&self, free: &mut [u64], a: usize, b: usize) {
        match &self.dense {
            Some(dense) => {
                let w = self.words;
                bits::and_not(free, &dense[(a * self.cells + b) * w..][..w]);
            }
            None => self.for_each_blocked(a, b, |c| bits::clear(free, c)),
        }
    }

    /// Removes from `free` every `e` with `det(a, b, e)` a unit.
    pub(crate) fn block_unit_triangles(&self, free: &mut [u64], a: usize, b: usize) {
        let n = self.n;
        let d = self.difference(a, b);
        let (dx, dy) = (d % n, d / n);
        for ey in 0..n {
            for ex in 0..n {
                if self.unit[(dx * ey + n * n - dy * ex) % n] {
                    bits::clear(free, self.offset(a, ex as u32, ey as u32));
                }
            }
        }
    }

    pub(crate) fn apply_rules(&self, rules: Rules, free: &mut [u64], cell: usize) {
        if let Some(p) = rules.half_translates {
            for (dx, dy) in [(p, 0), (0, p), (p, p)] {
                bits::clear(free, self.offset(cell, dx, dy));
            }
        }
    }

    /// Upper bound from one parallel class: each of its lines holds at most
    /// two points of an arc. `avail` is the IN or FREE mask.
    #[inline]
    pub(crate) fn class_bound(&self, class: usize, avail: &[u64]) -> usize {
        let w = self.words;
        self.classes[class]
            .chunks_exact(w)
            .map(|line| {
                let c: u32 = line.iter().zip(avail).map(|(l, a)| (l & a).count_ones()).sum();
                c.min(2) as usize
            })
            .sum()
    }

    pub(crate) fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub(crate) fn point(&self, cell: usize) -> Point {
        Point::from_cell(cell, self.n as u32)
    }

    /// The cell of `(x, y)` reduced mod `n`.
    pub(crate) fn cell(&self, x: i64, y: i64) -> usize {
        let n = self.n as i64;
        (y.rem_euclid(n) * n + x.rem_euclid(n)) as usize
    }

    pub(crate) fn n(&self) -> usize {
        self.n
    }
}
