//! Search nodes: the IN set, the FREE mask and the exclusion rules in force.

use super::bits;
use super::context::{Rules, SearchContext};
use super::Mode;
use crate::arc::ArcSet;
use crate::error::{Error, Result};
use crate::modular::Point;

/// Symmetry images cleared after each attempt from a node.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Sym {
    None,
    /// The affine maps permuting `(0,0), (1,0), (0,1)`.
    SeedPermutations,
    /// `(x, y) -> (y, x)`.
    Transpose,
}

/// Seed triangles `(Q0, Q1, Q2)`; `u -> Q0 + u_x (Q1 - Q0) + u_y (Q2 - Q0)`
/// maps the seed onto itself. The identity is omitted.
const SEED_IMAGES: [[(i64, i64); 3]; 5] = [
    [(0, 0), (0, 1), (1, 0)],
    [(1, 0), (0, 0), (0, 1)],
    [(1, 0), (0, 1), (0, 0)],
    [(0, 1), (0, 0), (1, 0)],
    [(0, 1), (1, 0), (0, 0)],
];

#[derive(Clone, Debug)]
pub(crate) struct Frame {
    pub(crate) inm: Vec<u64>,
    pub(crate) free: Vec<u64>,
    /// Selected cells in selection order.
    pub(crate) ins: Vec<usize>,
    pub(crate) rules: Rules,
    pub(crate) sym: Sym,
}

impl Frame {
    pub(crate) fn empty(ctx: &SearchContext, rules: Rules) -> Self {
        let words = ctx.words();
        let mut free = vec![0u64; words];
        for c in 0..ctx.cells() {
            bits::set(&mut free, c);
        }
        Frame { inm: vec![0; words], free, ins: Vec::with_capacity(2 * ctx.n() + 2), rules, sym: Sym::None }
    }

    /// Copies `other` without reallocating; the copy carries no symmetry.
    #[inline]
    pub(crate) fn copy_from(&mut self, other: &Frame) {
        self.inm.copy_from_slice(&other.inm);
        self.free.copy_from_slice(&other.free);
        self.ins.clear();
        self.ins.extend_from_slice(&other.ins);
        self.rules = other.rules;
        self.sym = Sym::None;
    }

    /// Makes the FREE cell `cell` IN and excludes everything it conflicts with.
    #[inline]
    pub(crate) fn select(&mut self, ctx: &SearchContext, cell: usize) {
        debug_assert!(bits::test(&self.free, cell));
        for &a in &self.ins {
            ctx.block_pair(&mut self.free, a, cell);
            if self.rules.no_unit_triangles {
                ctx.block_unit_triangles(&mut self.free, a, cell);
            }
        }
        bits::clear(&mut self.free, cell);
        bits::set(&mut self.inm, cell);
        self.ins.push(cell);
        ctx.apply_rules(self.rules, &mut self.free, cell);
    }

    /// Excludes `cell` and, at a symmetric node, its images.
    pub(crate) fn reject(&mut self, ctx: &SearchContext, cell: usize) {
        bits::clear(&mut self.free, cell);
        let p = ctx.point(cell);
        let (x, y) = (p.x as i64, p.y as i64);
        match self.sym {
            Sym::None => {}
            Sym::Transpose => bits::clear(&mut self.free, ctx.cell(y, x)),
            Sym::SeedPermutations => {
                for [q0, q1, q2] in SEED_IMAGES {
                    let ix = q0.0 + x * (q1.0 - q0.0) + y * (q2.0 - q0.0);
                    let iy = q0.1 + x * (q1.1 - q0.1) + y * (q2.1 - q0.1);
                    bits::clear(&mut self.free, ctx.cell(ix, iy));
                }
            }
        }
    }

    #[inline]
    pub(crate) fn size(&self) -> usize {
        self.ins.len()
    }

    #[inline]
    pub(crate) fn free_count(&self) -> usize {
        bits::count(&self.free)
    }

    pub(crate) fn to_arc(&self, ctx: &SearchContext) -> ArcSet {
        ArcSet::new(ctx.modulus(), self.ins.iter().map(|&c| ctx.point(c))).expect("IN cells are distinct")
    }
}

/// Status of a cell during the search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CellStatus {
    In,
    Out,
    Free,
}

/// A search node that can be driven by hand.
///
/// Invariants: IN, OUT and FREE partition the `n^2` cells, and every cell
/// collinear with two IN cells is OUT.
#[derive(Clone, Debug)]
pub struct SearchState<'a> {
    ctx: &'a SearchContext,
    frame: Frame,
}

impl<'a> SearchState<'a> {
    /// An empty state. In [`Mode::Seeded2p`] every selection also excludes
    /// its three translates by the order-2 subgroup.
    pub fn new(ctx: &'a SearchContext, mode: Mode) -> Result<Self> {
        let rules = match mode {
            Mode::Generic => Rules::default(),
            Mode::Seeded2p => Rules { half_translates: Some(super::seeded_prime(ctx.modulus())?), ..Rules::default() },
        };
        Ok(SearchState { ctx, frame: Frame::empty(ctx, rules) })
    }

    pub fn select_point(&mut self, p: Point) -> Result<()> {
        if p.modulus() != self.ctx.modulus().get() {
            return Err(Error::MixedModuli(p.modulus(), self.ctx.modulus().get()));
        }
        let cell = p.cell();
        if !bits::test(&self.frame.free, cell) {
            return Err(Error::CellNotFree(p.x, p.y));
        }
        self.frame.select(self.ctx, cell);
        Ok(())
    }

    pub fn status(&self, p: Point) -> CellStatus {
        let cell = p.cell();
        if bits::test(&self.frame.inm, cell) {
            CellStatus::In
        } else if bits::test(&self.frame.free, cell) {
            CellStatus::Free
        } else {
            CellStatus::Out
        }
    }

    pub fn in_count(&self) -> usize {
        self.frame.size()
    }

    pub fn free_count(&self) -> usize {
        self.frame.free_count()
    }

    pub fn out_count(&self) -> usize {
        self.ctx.cells() - self.in_count() - self.free_count()
    }

    /// Selected points in selection order.
    pub fn solution(&self) -> Vec<Point> {
        self.frame.ins.iter().map(|&c| self.ctx.point(c)).collect()
    }

    pub fn to_arc(&self) -> ArcSet {
        self.frame.to_arc(self.ctx)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{blocked_points, enumerate_lines, BlockMode};
    use crate::modular::Modulus;

    #[test]
    fn select_examples() {
        let md = Modulus::new(6).unwrap();
        let ctx = SearchContext::new(md);
        let mut s = SearchState::new(&ctx, Mode::Generic).unwrap();
        s.select_point(md.point(0, 0)).unwrap();
        assert_eq!((s.in_count(), s.free_count(), s.out_count()), (1, 35, 0));
        s.select_point(md.point(1, 0)).unwrap();
        let table = enumerate_lines(md);
        let blocked = blocked_points(md.point(0, 0), md.point(1, 0), BlockMode::Table(&table)).unwrap();
        let out: Vec<Point> = md.points().filter(|&p| s.status(p) == CellStatus::Out).collect();
        assert_eq!(out, blocked);
        assert_eq!(s.in_count() + s.free_count() + s.out_count(), 36);
        assert!(matches!(s.select_point(md.point(3, 0)), Err(Error::CellNotFree(3, 0))));
        assert!(matches!(s.select_point(md.point(1, 0)), Err(Error::CellNotFree(1, 0))));
    }

    #[test]
    fn seeded_select_excludes_translates() {
        let md = Modulus::new(10).unwrap();
        let ctx = SearchContext::new(md);
        let mut s = SearchState::new(&ctx, Mode::Seeded2p).unwrap();
        for (x, y) in [(0, 0), (1, 0), (0, 1), (2, 3)] {
            s.select_point(md.point(x, y)).unwrap();
        }
        for (x, y) in [(7, 3), (2, 8), (7, 8)] {
            assert_eq!(s.status(md.point(x, y)), CellStatus::Out);
        }
        assert!(s.to_arc().is_arc());
    }

    #[test]
    fn seeded_requires_twice_a_prime() {
        for n in [6, 8, 9, 12, 20] {
            let ctx = SearchContext::new(Modulus::new(n).unwrap());
            assert!(matches!(SearchState::new(&ctx, Mode::Seeded2p), Err(Error::InvalidMode(_))));
        }
    }

    #[test]
    fn seed_images_fix_the_seed() {
        let md = Modulus::new(7).unwrap();
        let ctx = SearchContext::new(md);
        let seed = [ctx.cell(0, 0), ctx.cell(1, 0), ctx.cell(0, 1)];
        let mut f = Frame::empty(&ctx, Rules::default());
        f.sym = Sym::SeedPermutations;
        f.reject(&ctx, seed[0]);
        for c in seed {
            assert!(!bits::test(&f.free, c));
        }
        assert_eq!(f.free_count(), 46);
    }
}
