//! Exact minimum vertex cover: the ground truth the distributed algorithms
//! are measured against.
//!
//! Two solvers certify each other: [`min_vertex_cover_enumerate`] checks
//! subsets in order of increasing size (guarded to 20 nodes), while
//! [`min_vertex_cover_bnb`] branches on the highest-degree vertex with
//! degree-1 reductions and a matching lower bound and scales to the graph
//! sizes the experiments use.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, NodeId};

/// Hard size cap for exhaustive enumeration.
pub const ENUMERATE_MAX_NODES: u64 = 20;
/// Bitset width cap for the branch-and-bound solver.
pub const BNB_MAX_NODES: u64 = 127;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("node {0} is not in the graph")]
    UnknownNode(NodeId),
    #[error(
        "exhaustive enumeration is limited to {ENUMERATE_MAX_NODES} nodes (got {0}); \
         use the branch-and-bound solver"
    )]
    EnumerationGuard(u64),
    #[error("branch-and-bound supports at most {BNB_MAX_NODES} nodes (got {0})")]
    BnbGuard(u64),
    #[error("optimum size must be at least 1")]
    ZeroOptimum,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolveMethod {
    Enumerate,
    BranchAndBound,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleResult {
    pub cover: BTreeSet<NodeId>,
    pub size: u64,
    /// Subsets tested (enumerate) or search-tree nodes visited (bnb).
    pub nodes_explored: u64,
    pub method: SolveMethod,
}

/// True iff every edge has at least one endpoint in `cover`. Errors when
/// `cover` mentions a node outside the graph.
pub fn is_vertex_cover(g: &Graph, cover: &BTreeSet<NodeId>) -> Result<bool, OracleError> {
    for &v in cover {
        if !g.contains(v) {
            return Err(OracleError::UnknownNode(v));
        }
    }
    Ok(covers_all_edges(g, cover))
}

fn covers_all_edges(g: &Graph, cover: &BTreeSet<NodeId>) -> bool {
    g.edges()
        .all(|(u, v)| cover.contains(&u) || cover.contains(&v))
}

/// Exhaustive search in order of increasing cover size. Among equal-size
/// optima, returns the lexicographically smallest ID set.
pub fn min_vertex_cover_enumerate(g: &Graph) -> Result<OracleResult, OracleError> {
    let n = g.node_count();
    if n > ENUMERATE_MAX_NODES {
        return Err(OracleError::EnumerationGuard(n));
    }
    let ids: Vec<NodeId> = g.nodes().collect();
    let index: BTreeMap<NodeId, usize> = ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let edge_masks: Vec<u32> = g
        .edges()
        .map(|(u, v)| (1u32 << index[&u]) | (1u32 << index[&v]))
        .collect();

    let mut explored = 0u64;
    for k in 0..=ids.len() {
        // Combinations are emitted in lexicographic position order, so the
        // first valid one is the lexicographically smallest ID set.
        for combo in (0..ids.len()).combinations(k) {
            explored += 1;
            let mask = combo.iter().fold(0u32, |m, &i| m | (1u32 << i));
            if edge_masks.iter().all(|&e| e & mask != 0) {
                return Ok(OracleResult {
                    cover: combo.into_iter().map(|i| ids[i]).collect(),
                    size: k as u64,
                    nodes_explored: explored,
                    method: SolveMethod::Enumerate,
                });
            }
        }
    }
    unreachable!("the full vertex set always covers")
}

struct BnbSolver {
    adj: Vec<u128>,
    best_size: u32,
    best_cover: u128,
    explored: u64,
}

impl BnbSolver {
    fn degree(&self, alive: u128, v: usize) -> u32 {
        (self.adj[v] & alive).count_ones()
    }

    /// Greedy maximal matching on the residual graph; its size lower-bounds
    /// the cover, and taking both endpoints gives a valid incumbent.
    fn maximal_matching(&self, alive: u128) -> (u32, u128) {
        let mut matched = 0u128;
        let mut size = 0u32;
        let mut rest = alive;
        while rest != 0 {
            let u = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if matched & (1u128 << u) != 0 {
                continue;
            }
            let candidates = self.adj[u] & alive & !matched;
            if candidates != 0 {
                let v = candidates.trailing_zeros() as usize;
                matched |= (1u128 << u) | (1u128 << v);
                size += 1;
            }
        }
        (size, matched)
    }

    /// Minimum cover of a residual graph that is a disjoint union of cycles
    /// (every alive degree is exactly 2): alternate vertices around each
    /// cycle, rounding up on odd lengths.
    fn cover_cycles(&self, mut alive: u128) -> (u32, u128) {
        let mut size = 0u32;
        let mut cover = 0u128;
        while alive != 0 {
            let start = alive.trailing_zeros() as usize;
            let mut walk = vec![start];
            let mut prev = usize::MAX;
            let mut cur = start;
            loop {
                let next_mask = self.adj[cur] & alive & !(1u128 << prev.min(127));
                let next = if prev == usize::MAX {
                    (self.adj[cur] & alive).trailing_zeros() as usize
                } else if next_mask == 0 {
                    break;
                } else {
                    next_mask.trailing_zeros() as usize
                };
                if next == start {
                    break;
                }
                walk.push(next);
                prev = cur;
                cur = next;
            }
            for (pos, &v) in walk.iter().enumerate() {
                alive &= !(1u128 << v);
                if pos % 2 == 0 {
                    cover |= 1u128 << v;
                    size += 1;
                }
            }
        }
        (size, cover)
    }

    fn solve(&mut self, mut alive: u128, mut picked: u32, mut cover: u128) {
        self.explored += 1;

        // Reductions to fixpoint: drop isolated vertices, resolve degree-1
        // vertices by taking their neighbor.
        loop {
            if picked >= self.best_size {
                return;
            }
            let mut changed = false;
            let mut rest = alive;
            while rest != 0 {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                match self.degree(alive, v) {
                    0 => {
                        alive &= !(1u128 << v);
                        changed = true;
                    }
                    1 => {
                        let u = (self.adj[v] & alive).trailing_zeros() as usize;
                        cover |= 1u128 << u;
                        picked += 1;
                        alive &= !((1u128 << v) | (1u128 << u));
                        changed = true;
                        break; // degrees shifted; rescan
                    }
                    _ => {}
                }
            }
            if !changed {
                break;
            }
        }

        if alive == 0 {
            if picked < self.best_size {
                self.best_size = picked;
                self.best_cover = cover;
            }
            return;
        }

        // Pick the branch vertex; if the residual maximum degree is 2 the
        // rest is a union of cycles with a closed-form optimum.
        let mut branch = usize::MAX;
        let mut branch_deg = 0;
        let mut rest = alive;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let d = self.degree(alive, v);
            if d > branch_deg {
                branch_deg = d;
                branch = v;
            }
        }
        if branch_deg <= 2 {
            let (extra, cycle_cover) = self.cover_cycles(alive);
            if picked + extra < self.best_size {
                self.best_size = picked + extra;
                self.best_cover = cover | cycle_cover;
            }
            return;
        }

        let (lower_bound, _) = self.maximal_matching(alive);
        if picked + lower_bound >= self.best_size {
            return;
        }

        // Branch: the vertex goes in, or its whole neighborhood does.
        self.solve(alive & !(1u128 << branch), picked + 1, cover | (1u128 << branch));
        let nbrs = self.adj[branch] & alive;
        self.solve(
            alive & !(nbrs | (1u128 << branch)),
            picked + nbrs.count_ones(),
            cover | nbrs,
        );
    }
}

/// Branch-and-bound exact solver. Matches the enumeration size on every
/// graph where both run; deterministic, though not pinned to the
/// lexicographically smallest optimum.
pub fn min_vertex_cover_bnb(g: &Graph) -> Result<OracleResult, OracleError> {
    let n = g.node_count();
    if n > BNB_MAX_NODES {
        return Err(OracleError::BnbGuard(n));
    }
    let ids: Vec<NodeId> = g.nodes().collect();
    let index: BTreeMap<NodeId, usize> = ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut adj = vec![0u128; ids.len()];
    for (u, v) in g.edges() {
        adj[index[&u]] |= 1u128 << index[&v];
        adj[index[&v]] |= 1u128 << index[&u];
    }
    let alive = ids
        .iter()
        .enumerate()
        .fold(0u128, |m, (i, _)| m | (1u128 << i));

    let mut solver = BnbSolver {
        adj,
        best_size: u32::MAX,
        best_cover: 0,
        explored: 0,
    };
    // Incumbent: both endpoints of a maximal matching form a valid cover.
    let (matching_size, matched) = solver.maximal_matching(alive);
    solver.best_size = 2 * matching_size;
    solver.best_cover = matched;
    solver.solve(alive, 0, 0);

    let cover: BTreeSet<NodeId> = ids
        .iter()
        .enumerate()
        .filter(|(i, _)| solver.best_cover & (1u128 << i) != 0)
        .map(|(_, &v)| v)
        .collect();
    debug_assert!(covers_all_edges(g, &cover));
    Ok(OracleResult {
        size: cover.len() as u64,
        cover,
        nodes_explored: solver.explored,
        method: SolveMethod::BranchAndBound,
    })
}

/// How an algorithm's cover compares against the optimum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ApproxReport {
    Valid {
        /// `|cover| - optimum`.
        deflection: i64,
        /// Exact `|cover| / optimum`.
        ratio: Ratio<u64>,
        /// The ratio rendered to three decimal places.
        rendered: String,
    },
    /// The cover misses at least one edge; a ratio would be meaningless.
    Invalid,
}

/// Compares `algo_cover` with a known optimum size. Invalid covers yield
/// [`ApproxReport::Invalid`] rather than a number.
pub fn approximation_report(
    g: &Graph,
    algo_cover: &BTreeSet<NodeId>,
    opt_size: u64,
) -> Result<ApproxReport, OracleError> {
    if opt_size == 0 {
        return Err(OracleError::ZeroOptimum);
    }
    if !is_vertex_cover(g, algo_cover)? {
        return Ok(ApproxReport::Invalid);
    }
    let size = algo_cover.len() as u64;
    Ok(ApproxReport::Valid {
        deflection: size as i64 - opt_size as i64,
        ratio: Ratio::new(size, opt_size),
        rendered: format_ratio_3dp(size, opt_size),
    })
}

/// Renders `num/den` with exactly three decimal places (half-up rounding,
/// dot separator).
pub fn format_ratio_3dp(num: u64, den: u64) -> String {
    assert!(den > 0, "denominator must be positive");
    let scaled = (num as u128 * 2000 + den as u128) / (2 * den as u128);
    format!("{}.{:03}", scaled / 1000, scaled % 1000)
}
