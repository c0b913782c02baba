//! Depth-first branch and bound over [`Frame`]s.

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};

use super::bits;
use super::context::SearchContext;
use super::state::Frame;
use super::Pruning;

const FLUSH: u64 = 256;
const LOG_EVERY: u64 = 1 << 22;

/// State shared by all jobs of one run.
pub(crate) struct Shared {
    pub(crate) nodes: AtomicU64,
    /// Largest arc size found by any job.
    pub(crate) global: AtomicUsize,
    pub(crate) abort: AtomicBool,
    pub(crate) budget: Option<u64>,
}

impl Shared {
    pub(crate) fn new(budget: Option<u64>, floor: usize) -> Self {
        Shared { nodes: AtomicU64::new(0), global: AtomicUsize::new(floor), abort: AtomicBool::new(false), budget }
    }
}

/// Best arc of one job: the first arc in search order of the largest size
/// this job reached, if that beats its starting floor.
pub(crate) struct Found {
    pub(crate) size: usize,
    pub(crate) cells: Option<Vec<usize>>,
}

pub(crate) struct Search<'a> {
    ctx: &'a SearchContext,
    shared: &'a Shared,
    pruning: Pruning,
    verify: bool,
    pending: u64,
    best: usize,
    cells: Option<Vec<usize>>,
}

impl<'a> Search<'a> {
    pub(crate) fn new(
        ctx: &'a SearchContext,
        shared: &'a Shared,
        pruning: Pruning,
        verify: bool,
        floor: usize,
    ) -> Self {
        Search { ctx, shared, pruning, verify, pending: 0, best: floor, cells: None }
    }

    pub(crate) fn finish(mut self) -> Found {
        self.flush();
        Found { size: self.best, cells: self.cells }
    }

    /// Smallest bound worth exploring. Equal to the global best is still
    /// explored so that each job reports its own first arc of that size.
    #[inline]
    fn need(&self) -> usize {
        (self.best + 1).max(self.shared.global.load(Ordering::Relaxed))
    }

    #[inline]
    fn tick(&mut self) {
        self.pending += 1;
        if self.pending >= FLUSH {
            self.flush();
        }
    }

    fn flush(&mut self) {
        if self.pending == 0 {
            return;
        }
        let before = self.shared.nodes.fetch_add(self.pending, Ordering::Relaxed);
        let after = before + self.pending;
        self.pending = 0;
        if before / LOG_EVERY != after / LOG_EVERY {
            log::info!("nodes={} best={}", after, self.shared.global.load(Ordering::Relaxed));
        }
        if self.shared.budget.is_some_and(|b| after >= b) {
            self.shared.abort.store(true, Ordering::Relaxed);
        }
    }

    #[inline]
    pub(crate) fn aborted(&self) -> bool {
        self.shared.abort.load(Ordering::Relaxed)
    }

    /// Counts a freshly selected node and records it on strict improvement.
    pub(crate) fn visit(&mut self, f: &Frame) {
        self.tick();
        if self.verify {
            assert!(f.to_arc(self.ctx).is_arc(), "IN set is not an arc: {:?}", f.ins);
        }
        if f.size() > self.best {
            self.best = f.size();
            self.cells = Some(f.ins.clone());
            self.shared.global.fetch_max(f.size(), Ordering::Relaxed);
        }
    }

    /// Whether the subtree of `f` can still hold an arc of `need()` points.
    fn promising(&self, f: &Frame, scratch: &mut [u64]) -> bool {
        let need = self.need();
        if self.pruning == Pruning::None {
            return true;
        }
        if f.size() + f.free_count() < need {
            return false;
        }
        if self.pruning == Pruning::LineClasses {
            for (s, (i, r)) in scratch.iter_mut().zip(f.inm.iter().zip(&f.free)) {
                *s = i | r;
            }
            for class in 0..self.ctx.class_count() {
                if self.ctx.class_bound(class, scratch) < need {
                    return false;
                }
            }
        }
        true
    }

    /// Explores every extension of `frames[0]` by its FREE cells.
    /// `frames[1..]` is scratch space, one frame per further depth.
    pub(crate) fn explore(&mut self, frames: &mut [Frame], scratch: &mut [u64]) {
        let (node, rest) = frames.split_first_mut().expect("frame stack exhausted");
        while let Some(cell) = bits::lowest(&node.free) {
            if self.aborted() {
                return;
            }
            if self.pruning != Pruning::None && node.size() + node.free_count() < self.need() {
                return;
            }
            let child = &mut rest[0];
            child.copy_from(node);
            child.select(self.ctx, cell);
            self.visit(child);
            if self.promising(child, scratch) {
                self.explore(rest, scratch);
            }
            node.reject(self.ctx, cell);
        }
    }

    /// Explores from `root` with a freshly allocated frame stack.
    pub(crate) fn run(&mut self, root: &Frame) {
        let depth = 2 * self.ctx.n() + 4;
        let mut frames = vec![root.clone(); depth];
        let mut scratch = vec![0u64; self.ctx.words()];
        if self.promising(root, &mut scratch) {
            self.explore(&mut frames, &mut scratch);
        }
    }
}
