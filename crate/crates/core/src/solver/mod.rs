//! Exact maximum-arc search.
//!
//! Depth-first search over cells in row-major order (`y` major, `x` minor).
//! Selecting a cell marks every cell on a line through it and an earlier
//! selection as OUT. A node is pruned when its IN and FREE cells cannot
//! beat the best arc found so far, either by plain count or by summing
//! `min(2, |line|)` over the lines of a parallel class.
//!
//! Generic search with symmetry splits into two roots:
//!
//! * arcs containing `(0,0), (1,0), (0,1)`; the fourth point is taken up to
//!   the six affine maps permuting those three points;
//! * arcs containing `(0,0)` with no triangle of unit determinant.
//!
//! Every arc either has a unit triangle, and is then an affine image of an
//! arc of the first kind, or is a translate of an arc of the second kind.
//!
//! Seeded search for `n = 2p` with `p >= 5` prime only looks for arcs of
//! more than `p + 3` points: those are affine images of arcs containing the
//! seed, and never contain two points differing by `(p,0)`, `(0,p)` or
//! `(p,p)`. If no such arc exists the search reruns in generic mode.

mod bits;
mod context;
mod engine;
mod state;

use std::time::{Duration, Instant};

use rayon::prelude::*;

pub use context::{Rules, SearchContext};
pub use state::{CellStatus, SearchState};

use crate::arc::ArcSet;
use crate::certificate::{Certificate, Claims};
use crate::error::{Error, Result};
use crate::modular::{Modulus, Point};
use engine::{Found, Search, Shared};
use state::{Frame, Sym};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Mode {
    #[default]
    Generic,
    /// `n = 2p`, `p >= 5` prime.
    Seeded2p,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Pruning {
    /// Exhaustive listing; nothing is cut.
    None,
    /// `|IN| + |FREE|` must exceed the best size.
    FreeCount,
    /// Free count, then the parallel-class bound.
    #[default]
    LineClasses,
}

#[derive(Clone, Debug)]
pub struct SearchOptions {
    pub mode: Mode,
    /// Worker threads; 1 runs serially.
    pub threads: usize,
    /// Stop after this many nodes, checked every 256 nodes.
    pub node_budget: Option<u64>,
    /// Only arcs larger than this are searched for.
    pub initial_best: Option<usize>,
    pub pruning: Pruning,
    /// Use the affine reductions of generic mode.
    pub symmetry: bool,
    /// Assert that every node's IN set is an arc.
    pub verify_nodes: bool,
    /// Depth of the job split; defaults to 0 serially and 2 in parallel.
    pub split_depth: Option<usize>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            mode: Mode::Generic,
            threads: 1,
            node_budget: None,
            initial_best: None,
            pruning: Pruning::LineClasses,
            symmetry: true,
            verify_nodes: false,
            split_depth: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Completed,
    BudgetExhausted,
}

#[derive(Clone, Debug)]
pub struct SearchResult {
    /// Empty when nothing beat `initial_best`.
    pub best: ArcSet,
    pub proven_optimal: bool,
    pub nodes: u64,
    pub elapsed: Duration,
    pub status: Status,
    /// Mode of the run that produced `best`.
    pub mode: Mode,
    /// A seeded run found nothing above `p + 3` and generic search took over.
    pub fell_back: bool,
}

/// One independent subtree of a run, in serial search order.
#[derive(Clone, Debug)]
pub struct Job {
    frame: Frame,
    expand: bool,
}

impl Job {
    /// Points fixed by this job, in selection order.
    pub fn prefix(&self, ctx: &SearchContext) -> Vec<Point> {
        self.frame.ins.iter().map(|&c| ctx.point(c)).collect()
    }

    /// False for jobs that only report their prefix.
    pub fn expands(&self) -> bool {
        self.expand
    }
}

/// `p` for `n = 2p` with `p >= 5` prime.
pub(crate) fn seeded_prime(n: Modulus) -> Result<u32> {
    let m = n.get();
    let p = m / 2;
    if m.is_multiple_of(2) && p >= 5 && crate::modular::is_prime(p as u64) {
        Ok(p)
    } else {
        Err(Error::InvalidMode(format!("seeded search needs n = 2p with p >= 5 prime, got n = {m}")))
    }
}

fn seeded_frame(ctx: &SearchContext, rules: Rules, sym: Sym) -> Frame {
    let mut f = Frame::empty(ctx, rules);
    for (x, y) in [(0, 0), (1, 0), (0, 1)] {
        f.select(ctx, ctx.cell(x, y));
    }
    f.sym = sym;
    f
}

fn roots(ctx: &SearchContext, opts: &SearchOptions) -> Result<Vec<Frame>> {
    Ok(match opts.mode {
        Mode::Seeded2p => {
            let rules = Rules { half_translates: Some(seeded_prime(ctx.modulus())?), ..Rules::default() };
            vec![seeded_frame(ctx, rules, Sym::Transpose)]
        }
        Mode::Generic if opts.symmetry && ctx.n() >= 2 => {
            let a = seeded_frame(ctx, Rules::default(), Sym::SeedPermutations);
            let mut b = Frame::empty(ctx, Rules { no_unit_triangles: true, ..Rules::default() });
            b.select(ctx, 0);
            vec![a, b]
        }
        Mode::Generic => vec![Frame::empty(ctx, Rules::default())],
    })
}

fn split(ctx: &SearchContext, mut frame: Frame, depth: usize, jobs: &mut Vec<Job>) {
    if depth == 0 {
        jobs.push(Job { frame, expand: true });
        return;
    }
    while let Some(cell) = bits::lowest(&frame.free) {
        let mut child = frame.clone();
        child.sym = Sym::None;
        child.select(ctx, cell);
        if depth > 1 {
            jobs.push(Job { frame: child.clone(), expand: false });
        }
        split(ctx, child, depth - 1, jobs);
        frame.reject(ctx, cell);
    }
}

/// Jobs whose union, run in order, is the serial search. Interior nodes
/// above `depth` become report-only jobs so their arcs are seen in order.
pub fn split_work(ctx: &SearchContext, opts: &SearchOptions, depth: usize) -> Result<Vec<Job>> {
    let mut jobs = Vec::new();
    for root in roots(ctx, opts)? {
        if depth > 0 {
            jobs.push(Job { frame: root.clone(), expand: false });
        }
        split(ctx, root, depth, &mut jobs);
    }
    Ok(jobs)
}

fn run_job(ctx: &SearchContext, shared: &Shared, opts: &SearchOptions, job: &Job, floor: usize) -> Found {
    let mut s = Search::new(ctx, shared, opts.pruning, opts.verify_nodes, floor);
    s.visit(&job.frame);
    if job.expand && !s.aborted() {
        s.run(&job.frame);
    }
    s.finish()
}

fn run(ctx: &SearchContext, opts: &SearchOptions) -> Result<SearchResult> {
    let start = Instant::now();
    let threads = opts.threads.max(1);
    let depth = opts.split_depth.unwrap_or(if threads > 1 { 2 } else { 0 });
    let jobs = split_work(ctx, opts, depth)?;
    let floor = opts.initial_best.unwrap_or(0);
    let shared = Shared::new(opts.node_budget, floor);

    let found: Vec<Found> = if threads == 1 {
        let mut floor = floor;
        jobs.iter()
            .map(|job| {
                let f = run_job(ctx, &shared, opts, job, floor);
                floor = floor.max(f.size);
                f
            })
            .collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| Error::InvalidMode(e.to_string()))?;
        pool.install(|| jobs.par_iter().map(|job| run_job(ctx, &shared, opts, job, floor)).collect())
    };

    // Largest size, then earliest job: the arc the serial search reports.
    let mut best: Option<(usize, &Vec<usize>)> = None;
    for f in &found {
        if let Some(cells) = &f.cells {
            if best.is_none_or(|(s, _)| f.size > s) {
                best = Some((f.size, cells));
            }
        }
    }
    let arc = match best {
        Some((_, cells)) => ArcSet::new(ctx.modulus(), cells.iter().map(|&c| ctx.point(c)))?,
        None => ArcSet::empty(ctx.modulus()),
    };
    let status = if shared.abort.load(std::sync::atomic::Ordering::Relaxed) {
        Status::BudgetExhausted
    } else {
        Status::Completed
    };
    Ok(SearchResult {
        proven_optimal: status == Status::Completed && best.is_some(),
        best: arc,
        nodes: shared.nodes.load(std::sync::atomic::Ordering::Relaxed),
        elapsed: start.elapsed(),
        status,
        mode: opts.mode,
        fell_back: false,
    })
}

/// Searches for a maximum arc of `Z_n x Z_n`.
pub fn solve(n: Modulus, opts: &SearchOptions) -> Result<SearchResult> {
    solve_in(&SearchContext::new(n), opts)
}

/// [`solve`] with a prebuilt context.
pub fn solve_in(ctx: &SearchContext, opts: &SearchOptions) -> Result<SearchResult> {
    let result = run(ctx, opts)?;
    if opts.mode != Mode::Seeded2p || result.status != Status::Completed {
        return Ok(result);
    }
    let p = seeded_prime(ctx.modulus())? as usize;
    if result.best.len() > p + 3 {
        return Ok(result);
    }
    log::info!("seeded best {} <= p + 3; rerunning generic search", result.best.len());
    let generic = SearchOptions { mode: Mode::Generic, ..opts.clone() };
    let mut rerun = run(ctx, &generic)?;
    rerun.nodes += result.nodes;
    rerun.elapsed += result.elapsed;
    rerun.fell_back = true;
    Ok(rerun)
}

/// A certificate for the best arc: it is an arc, completeness is checked
/// and maximality is claimed when the search was exhaustive.
pub fn certify(result: &SearchResult) -> Result<Certificate> {
    let complete = result.best.is_complete()?;
    let claims = Claims { arc: Some(true), complete: Some(complete), maximum: Some(result.proven_optimal) };
    Ok(Certificate::from_arc(&result.best, Some(claims)))
}
