//! Exact domination and strong domination numbers.
//!
//! Both predicates reduce to hitting: for each vertex `x` there is a mask of
//! vertices any valid set must intersect — `{x} ∪ N(x)` for domination,
//! `{x} ∪ {y ∈ N(x) : deg(y) ≥ deg(x)}` for strong domination. The oracle
//! enumerates subsets by cardinality then numeric bitmask order and returns
//! the first hit, so its witness is canonical; the branch-and-bound decides
//! one vertex per node with a greedy incumbent and a disjoint-cover lower
//! bound and must agree with the oracle everywhere.

use crate::graph::{Graph, VertexSet};
use std::time::{Duration, Instant};
use thiserror::Error;

/// Hard capacity of the exact path: a `VertexSet` is one machine word.
pub const MAX_EXACT_ORDER: usize = 64;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SolveError {
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("graph order {n} exceeds solver capacity {limit}")]
    TooLarge { n: usize, limit: usize },
}

#[derive(Debug, Clone, Copy)]
pub struct SolverConfig {
    /// Largest order the subset-enumeration oracle accepts.
    pub oracle_limit: usize,
    /// Wall-clock budget per branch-and-bound solve.
    pub timeout: Duration,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            oracle_limit: 20,
            timeout: Duration::from_secs(30),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SolveResult {
    pub value: usize,
    pub witness: VertexSet,
    pub nodes_explored: u64,
    pub elapsed: Duration,
    /// False only when the branch-and-bound hit its timeout; the value is
    /// then the best upper bound found, not necessarily exact.
    pub optimal: bool,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Predicate {
    Dominating,
    Strong,
}

pub fn is_dominating(g: &Graph, d: VertexSet) -> bool {
    valid(g, d, Predicate::Dominating)
}

pub fn is_strong_dominating(g: &Graph, d: VertexSet) -> bool {
    valid(g, d, Predicate::Strong)
}

fn valid(g: &Graph, d: VertexSet, pred: Predicate) -> bool {
    assert!(g.n() <= MAX_EXACT_ORDER, "predicate needs order ≤ 64");
    cover_masks(g, pred)
        .into_iter()
        .all(|c| c & d.bits() != 0)
}

/// Mask per vertex of the vertices a valid set must intersect on its behalf.
fn cover_masks(g: &Graph, pred: Predicate) -> Vec<u64> {
    let n = g.n();
    let degs: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    (0..n)
        .map(|x| {
            let mut mask = 1u64 << x;
            match pred {
                Predicate::Dominating => mask |= g.row64(x),
                Predicate::Strong => {
                    for y in g.neighbors(x) {
                        if degs[y] >= degs[x] {
                            mask |= 1u64 << y;
                        }
                    }
                }
            }
            mask
        })
        .collect()
}

pub fn gamma_st_oracle(g: &Graph) -> Result<SolveResult, SolveError> {
    oracle_solve(g, Predicate::Strong, &SolverConfig::default())
}

pub fn gamma_oracle(g: &Graph) -> Result<SolveResult, SolveError> {
    oracle_solve(g, Predicate::Dominating, &SolverConfig::default())
}

pub fn gamma_st_oracle_with(g: &Graph, cfg: &SolverConfig) -> Result<SolveResult, SolveError> {
    oracle_solve(g, Predicate::Strong, cfg)
}

pub fn gamma_oracle_with(g: &Graph, cfg: &SolverConfig) -> Result<SolveResult, SolveError> {
    oracle_solve(g, Predicate::Dominating, cfg)
}

pub fn gamma_st(g: &Graph) -> Result<SolveResult, SolveError> {
    bnb_solve(g, Predicate::Strong, &SolverConfig::default())
}

pub fn gamma(g: &Graph) -> Result<SolveResult, SolveError> {
    bnb_solve(g, Predicate::Dominating, &SolverConfig::default())
}

pub fn gamma_st_with(g: &Graph, cfg: &SolverConfig) -> Result<SolveResult, SolveError> {
    bnb_solve(g, Predicate::Strong, cfg)
}

pub fn gamma_with(g: &Graph, cfg: &SolverConfig) -> Result<SolveResult, SolveError> {
    bnb_solve(g, Predicate::Dominating, cfg)
}

fn oracle_solve(g: &Graph, pred: Predicate, cfg: &SolverConfig) -> Result<SolveResult, SolveError> {
    let n = g.n();
    if n == 0 {
        return Err(SolveError::EmptyGraph);
    }
    let limit = cfg.oracle_limit.min(MAX_EXACT_ORDER);
    if n > limit {
        return Err(SolveError::TooLarge { n, limit });
    }
    let start = Instant::now();
    let covers = cover_masks(g, pred);

    // Vertices whose cover mask is a singleton belong to every valid set
    // (isolated vertices for domination; also degree-dominant vertices with
    // no qualifying neighbor for strong domination). Pre-placing them skips
    // subsets that cannot validate without changing the first-hit witness.
    let forced: u64 = covers.iter().filter(|c| c.count_ones() == 1).fold(0, |a, c| a | c);
    let free: Vec<usize> = (0..n).filter(|&v| forced >> v & 1 == 0).collect();

    let mut nodes = 0u64;
    for k in 0..=free.len() {
        if forced == 0 && k == 0 {
            continue; // the empty set never dominates a nonempty graph
        }
        let mut found = None;
        for_each_k_subset(free.len(), k, |mask| {
            if found.is_some() {
                return false;
            }
            let d = forced | scatter(mask, &free);
            nodes += 1;
            if covers.iter().all(|c| c & d != 0) {
                found = Some(d);
                return false;
            }
            true
        });
        if let Some(d) = found {
            return Ok(SolveResult {
                value: d.count_ones() as usize,
                witness: VertexSet::from_bits(d),
                nodes_explored: nodes,
                elapsed: start.elapsed(),
                optimal: true,
            });
        }
    }
    unreachable!("the full vertex set always validates");
}

/// Call `f` on every `k`-subset of `0..n` as a bitmask in increasing numeric
/// order; stop early when `f` returns false.
fn for_each_k_subset(n: usize, k: usize, mut f: impl FnMut(u64) -> bool) {
    if k > n {
        return;
    }
    if k == 0 {
        f(0);
        return;
    }
    let top = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut mask = if k == 64 { u64::MAX } else { (1u64 << k) - 1 };
    loop {
        if !f(mask) {
            return;
        }
        // Gosper's hack: next mask with the same popcount
        let c = mask & mask.wrapping_neg();
        let r = mask.wrapping_add(c);
        if r < mask || r > top {
            return;
        }
        mask = r | (((mask ^ r) / c) >> 2);
        if mask > top {
            return;
        }
    }
}

/// Spread the bits of `mask` onto the vertex ids in `ids` (ascending), which
/// preserves numeric order between masks.
fn scatter(mask: u64, ids: &[usize]) -> u64 {
    let mut out = 0u64;
    let mut bits = mask;
    while bits != 0 {
        let i = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        out |= 1u64 << ids[i];
    }
    out
}

fn bnb_solve(g: &Graph, pred: Predicate, cfg: &SolverConfig) -> Result<SolveResult, SolveError> {
    let n = g.n();
    if n == 0 {
        return Err(SolveError::EmptyGraph);
    }
    if n > MAX_EXACT_ORDER {
        return Err(SolveError::TooLarge {
            n,
            limit: MAX_EXACT_ORDER,
        });
    }
    let start = Instant::now();
    let deadline = start + cfg.timeout;
    let covers = cover_masks(g, pred);
    let degs: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let forced: u64 = covers.iter().filter(|c| c.count_ones() == 1).fold(0, |a, c| a | c);

    let (greedy_val, greedy_set) = greedy_cover(&covers, forced, n);
    let mut search = Search {
        covers: &covers,
        degs: &degs,
        n,
        best_value: greedy_val,
        best_set: greedy_set,
        nodes: 0,
        deadline,
        timed_out: false,
    };
    search.descend(forced, 0);

    Ok(SolveResult {
        value: search.best_value,
        witness: VertexSet::from_bits(search.best_set),
        nodes_explored: search.nodes,
        elapsed: start.elapsed(),
        optimal: !search.timed_out,
    })
}

/// Greedy hitting set: repeatedly take the vertex covering the most still
/// unhit masks (ties to the lowest id). Always valid, used as the incumbent.
fn greedy_cover(covers: &[u64], forced: u64, n: usize) -> (usize, u64) {
    let mut d = forced;
    loop {
        let unhit: Vec<u64> = covers.iter().copied().filter(|c| c & d == 0).collect();
        if unhit.is_empty() {
            return (d.count_ones() as usize, d);
        }
        let mut best_v = 0;
        let mut best_count = 0;
        for v in 0..n {
            if d >> v & 1 == 1 {
                continue;
            }
            let count = unhit.iter().filter(|c| *c >> v & 1 == 1).count();
            if count > best_count {
                best_count = count;
                best_v = v;
            }
        }
        debug_assert!(best_count > 0);
        d |= 1u64 << best_v;
    }
}

struct Search<'a> {
    covers: &'a [u64],
    degs: &'a [usize],
    n: usize,
    best_value: usize,
    best_set: u64,
    nodes: u64,
    deadline: Instant,
    timed_out: bool,
}

impl Search<'_> {
    fn descend(&mut self, chosen: u64, excluded: u64) {
        if self.timed_out {
            return;
        }
        self.nodes += 1;
        if self.nodes & 0xff == 0 && Instant::now() >= self.deadline {
            self.timed_out = true;
            return;
        }

        // Options per unhit mask after exclusions; infeasible branch if empty.
        let mut relevant = 0u64;
        let mut lower = 0usize;
        let mut packed = 0u64;
        let mut any_unhit = false;
        for &c in self.covers {
            if c & chosen != 0 {
                continue;
            }
            any_unhit = true;
            let opts = c & !excluded;
            if opts == 0 {
                return;
            }
            relevant |= opts;
            if opts & packed == 0 {
                lower += 1;
                packed |= opts;
            }
        }
        if !any_unhit {
            let size = chosen.count_ones() as usize;
            if size < self.best_value {
                self.best_value = size;
                self.best_set = chosen;
            }
            return;
        }
        if chosen.count_ones() as usize + lower >= self.best_value {
            return;
        }

        // Branch vertex: maximum degree among relevant undecided, lowest id.
        let mut branch = usize::MAX;
        for v in 0..self.n {
            if relevant >> v & 1 == 1 && (branch == usize::MAX || self.degs[v] > self.degs[branch])
            {
                branch = v;
            }
        }
        debug_assert!(branch != usize::MAX);
        self.descend(chosen | 1u64 << branch, excluded);
        self.descend(chosen, excluded | 1u64 << branch);
    }
}
