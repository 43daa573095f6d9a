//! Variable reordering: the entropy-driven greedy order and two size-driven
//! baselines (sifting and window permutation).
//!
//! All methods work in place on the manager's registered roots through
//! adjacent level swaps, so root handles stay valid. Each call ends with an
//! equivalence check of every root against a snapshot taken before it started.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use itertools::Itertools;
use log::debug;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::bdd::{BddError, BddManager, NodeRef, VarId};
use crate::measures::{self, MeasureError, VarProbabilities};
use crate::oracle;

/// Scores closer than this are treated as equal; the smaller variable index wins.
pub const TIE_TOLERANCE: f64 = 1e-12;

/// Up to this many variables the equivalence check compares full truth tables.
const EXACT_CHECK_VARS: usize = 16;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ReorderError {
    #[error("window size {0} is not in 2..=4")]
    BadWindow(usize),
    #[error("root {0} changed its function during reordering")]
    EquivalenceViolation(usize),
    #[error(transparent)]
    Bdd(#[from] BddError),
    #[error(transparent)]
    Measure(#[from] MeasureError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    /// Keep the current order.
    None,
    /// Greedy minimal conditional entropy per level.
    Info,
    Sift,
    Window(usize),
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::None => "none",
            Method::Info => "info",
            Method::Sift => "sift",
            Method::Window(_) => "window",
        }
    }
}

/// `windowK` for window permutation, otherwise the bare name.
impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Method::Window(k) => write!(f, "window{k}"),
            m => f.write_str(m.name()),
        }
    }
}

impl FromStr for Method {
    type Err = String;

    /// Accepts `none`, `info`, `sift`, `window` (size 3) and `windowK`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "none" => Ok(Method::None),
            "info" => Ok(Method::Info),
            "sift" => Ok(Method::Sift),
            "window" => Ok(Method::Window(3)),
            _ => s
                .strip_prefix("window")
                .and_then(|k| k.parse().ok())
                .map(Method::Window)
                .ok_or_else(|| format!("unknown reordering method `{s}`")),
        }
    }
}

/// One level of the entropy-driven order.
#[derive(Clone, Debug, PartialEq)]
pub struct LevelChoice {
    pub level: usize,
    /// `(candidate, H(f | placed ∪ {candidate}))` summed over roots, by variable index.
    pub candidates: Vec<(VarId, f64)>,
    pub chosen: VarId,
    /// More than one candidate attained the minimum.
    pub tie: bool,
    /// Shared size after moving `chosen` to `level`.
    pub size_after: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReorderTrace {
    pub method: Method,
    pub initial_order: Vec<VarId>,
    pub final_order: Vec<VarId>,
    pub initial_size: usize,
    pub final_size: usize,
    /// Filled by [`Method::Info`] only.
    pub levels: Vec<LevelChoice>,
    pub swaps: usize,
    pub elapsed: Duration,
}

/// Applies `method` to the registered roots of `mgr` under uniform weights.
pub fn reorder(mgr: &mut BddManager, method: Method) -> Result<ReorderTrace, ReorderError> {
    match method {
        Method::None => {
            let start = Instant::now();
            let size = mgr.shared_size();
            Ok(ReorderTrace {
                method,
                initial_order: mgr.order().to_vec(),
                final_order: mgr.order().to_vec(),
                initial_size: size,
                final_size: size,
                levels: Vec::new(),
                swaps: 0,
                elapsed: start.elapsed(),
            })
        }
        Method::Info => info_reorder(mgr),
        Method::Sift => sift(mgr),
        Method::Window(k) => window_permute(mgr, k),
    }
}

/// Entropy-driven greedy reordering under uniform input weights.
pub fn info_reorder(mgr: &mut BddManager) -> Result<ReorderTrace, ReorderError> {
    let w = VarProbabilities::uniform(mgr.num_vars());
    info_reorder_with(mgr, &w)
}

/// Places, level by level, the remaining variable whose conditional entropy
/// given the already placed prefix is minimal, then moves it up with adjacent
/// swaps. With several roots the per-root entropies are summed.
pub fn info_reorder_with(mgr: &mut BddManager, w: &VarProbabilities) -> Result<ReorderTrace, ReorderError> {
    let mut run = Run::start(mgr, Method::Info);
    let n = mgr.num_vars();
    let roots = mgr.roots().to_vec();
    for level in 0..n {
        let mut candidates: Vec<(VarId, f64)> = (level..n).map(|l| (mgr.var_at_level(l), 0.0)).collect();
        for &root in &roots {
            let scores = measures::prefix_conditional_entropies(mgr, root, level, w)?;
            for (acc, (var, h)) in candidates.iter_mut().zip(scores) {
                debug_assert_eq!(acc.0, var);
                acc.1 += h;
            }
        }
        candidates.sort_by_key(|&(v, _)| v);
        let min = candidates.iter().map(|&(_, h)| h).fold(f64::INFINITY, f64::min);
        let mut best = candidates.iter().filter(|&&(_, h)| h <= min + TIE_TOLERANCE);
        let chosen = best.next().expect("at least one candidate").0;
        let tie = best.next().is_some();

        let from = mgr.level_of_var(chosen);
        for l in (level..from).rev() {
            mgr.swap_adjacent_levels(l)?;
            run.swaps += 1;
        }
        mgr.collect_garbage(&[]);
        let size_after = mgr.shared_size();
        debug!("info: level {level} <- x{} (size {size_after})", chosen.0);
        run.levels.push(LevelChoice {
            level,
            candidates,
            chosen,
            tie,
            size_after,
        });
    }
    run.finish(mgr)
}

/// Rudell sifting: each variable, most populous level first, visits every
/// level and is parked where the shared size was smallest.
pub fn sift(mgr: &mut BddManager) -> Result<ReorderTrace, ReorderError> {
    let mut run = Run::start(mgr, Method::Sift);
    let n = mgr.num_vars();
    let profile = mgr.level_profile(mgr.roots());
    let vars: Vec<VarId> = (0..n)
        .map(|l| (mgr.var_at_level(l), profile[l]))
        .sorted_by_key(|&(v, count)| (std::cmp::Reverse(count), v))
        .map(|(v, _)| v)
        .collect();

    for var in vars {
        let mut level = mgr.level_of_var(var);
        let mut best = (mgr.shared_size(), level);
        let ends = if level >= n / 2 { [n - 1, 0] } else { [0, n - 1] };
        for end in ends {
            while level != end {
                level = step(mgr, level, end, &mut run)?;
                let size = mgr.shared_size();
                if size < best.0 {
                    best = (size, level);
                }
            }
        }
        while level != best.1 {
            level = step(mgr, level, best.1, &mut run)?;
        }
        mgr.collect_garbage(&[]);
        debug!("sift: x{} parked at level {level} (size {})", var.0, best.0);
    }
    run.finish(mgr)
}

/// Moves the variable at `level` one step towards `target`.
fn step(mgr: &mut BddManager, level: usize, target: usize, run: &mut Run) -> Result<usize, BddError> {
    run.swaps += 1;
    if target > level {
        mgr.swap_adjacent_levels(level)?;
        Ok(level + 1)
    } else {
        mgr.swap_adjacent_levels(level - 1)?;
        Ok(level - 1)
    }
}

/// Window permutation: every `window` adjacent levels are tried in all orders
/// and the smallest arrangement is kept; sweeps repeat until one makes no
/// improvement. A window wider than the variable count is narrowed to it.
pub fn window_permute(mgr: &mut BddManager, window: usize) -> Result<ReorderTrace, ReorderError> {
    if !(2..=4).contains(&window) {
        return Err(ReorderError::BadWindow(window));
    }
    let mut run = Run::start(mgr, Method::Window(window));
    let n = mgr.num_vars();
    let window = window.min(n);
    if window < 2 {
        return run.finish(mgr);
    }
    let mut size = mgr.shared_size();
    loop {
        let mut improved = false;
        for start in 0..=n - window {
            let current: Vec<VarId> = mgr.order()[start..start + window].to_vec();
            let mut best = (size, current.clone());
            for perm in current.iter().copied().permutations(window).skip(1) {
                run.swaps += arrange(mgr, start, &perm)?;
                let s = mgr.shared_size();
                if s < best.0 {
                    best = (s, perm);
                }
            }
            run.swaps += arrange(mgr, start, &best.1)?;
            mgr.collect_garbage(&[]);
            if best.0 < size {
                size = best.0;
                improved = true;
            }
        }
        if !improved {
            break;
        }
    }
    run.finish(mgr)
}

/// Reorders levels `start..start + target.len()` to hold `target`.
fn arrange(mgr: &mut BddManager, start: usize, target: &[VarId]) -> Result<usize, BddError> {
    let mut swaps = 0;
    for (i, &v) in target.iter().enumerate() {
        let mut level = mgr.level_of_var(v);
        while level > start + i {
            mgr.swap_adjacent_levels(level - 1)?;
            level -= 1;
            swaps += 1;
        }
    }
    Ok(swaps)
}

/// Bookkeeping shared by all methods.
struct Run {
    method: Method,
    started: Instant,
    initial_order: Vec<VarId>,
    initial_size: usize,
    snapshot: Snapshot,
    levels: Vec<LevelChoice>,
    swaps: usize,
}

impl Run {
    fn start(mgr: &mut BddManager, method: Method) -> Self {
        mgr.collect_garbage(&[]);
        Run {
            method,
            started: Instant::now(),
            initial_order: mgr.order().to_vec(),
            initial_size: mgr.shared_size(),
            snapshot: Snapshot::take(mgr),
            levels: Vec::new(),
            swaps: 0,
        }
    }

    fn finish(self, mgr: &mut BddManager) -> Result<ReorderTrace, ReorderError> {
        mgr.collect_garbage(&[]);
        self.snapshot.verify(mgr)?;
        Ok(ReorderTrace {
            method: self.method,
            initial_order: self.initial_order,
            final_order: mgr.order().to_vec(),
            initial_size: self.initial_size,
            final_size: mgr.shared_size(),
            levels: self.levels,
            swaps: self.swaps,
            elapsed: self.started.elapsed(),
        })
    }
}

/// Pre-reordering fingerprint of every registered root: the full truth table
/// for small managers, otherwise output probabilities under a few fixed
/// pseudo-random input distributions.
enum Snapshot {
    Tables(Vec<oracle::TruthTable>),
    Signatures(Vec<VarProbabilities>, Vec<Vec<f64>>),
}

impl Snapshot {
    fn take(mgr: &BddManager) -> Self {
        let roots = mgr.roots();
        if mgr.num_vars() <= EXACT_CHECK_VARS {
            let tables = roots
                .iter()
                .map(|&r| oracle::enumerate(mgr, r).expect("registered roots are live"))
                .collect();
            return Snapshot::Tables(tables);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        let weights: Vec<VarProbabilities> = (0..4)
            .map(|_| {
                let pairs = (0..mgr.num_vars())
                    .map(|_| {
                        let p1: f64 = rng.gen_range(0.05..0.95);
                        (1.0 - p1, p1)
                    })
                    .collect();
                VarProbabilities::from_pairs(pairs).expect("pairs sum to one")
            })
            .collect();
        let sigs = signatures(mgr, roots, &weights);
        Snapshot::Signatures(weights, sigs)
    }

    fn verify(&self, mgr: &BddManager) -> Result<(), ReorderError> {
        let roots = mgr.roots();
        match self {
            Snapshot::Tables(tables) => {
                for (i, (&r, t)) in roots.iter().zip(tables).enumerate() {
                    if oracle::enumerate(mgr, r).map_err(|_| ReorderError::EquivalenceViolation(i))? != *t {
                        return Err(ReorderError::EquivalenceViolation(i));
                    }
                }
            }
            Snapshot::Signatures(weights, before) => {
                let after = signatures(mgr, roots, weights);
                for (i, (a, b)) in after.iter().zip(before).enumerate() {
                    if a.iter().zip(b).any(|(x, y)| (x - y).abs() > 1e-9) {
                        return Err(ReorderError::EquivalenceViolation(i));
                    }
                }
            }
        }
        Ok(())
    }
}

fn signatures(mgr: &BddManager, roots: &[NodeRef], weights: &[VarProbabilities]) -> Vec<Vec<f64>> {
    roots
        .iter()
        .map(|&r| {
            weights
                .iter()
                .map(|w| measures::weighted_sat_probability(mgr, r, w).expect("registered roots are live"))
                .collect()
        })
        .collect()
}
