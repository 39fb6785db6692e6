//! The improvement loop: recursive local search over strong short segments,
//! plus the 2-ECSS clean-up passes.
//!
//! Starting from an inclusion-wise minimal 2-VCSS, the solver repeatedly
//! picks a strong short segment and one of its internal vertices `u`, adds a
//! critical edge set (one or two non-solution edges at `u`) and reverse-
//! deletes; the exchange is committed only when it strictly lowers the edge
//! count. When no direct exchange helps, the search recurses into the strong
//! short segments the added edges created. Each (segment, internal vertex)
//! pair is processed at most once per solve.

use std::collections::HashSet;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{
    blocks, is_2ecss, is_2vcss, is_feasible, is_feasible_minus_edge, ConnScratch, EdgeSet, Graph,
    Mode,
};
use crate::minimal::{deletion_pass, DeletionOrder};
use crate::segments::{classify, decompose, Decomposition, LengthClass, Segment, SegmentKey, Strength};

/// One or two edges outside the solution, all incident to the pivot vertex,
/// that an improvement operation adds.
#[derive(Clone, Debug)]
pub struct CriticalEdgeSet {
    pub pivot: u32,
    pub edges: Vec<u32>,
}

/// Memoization key: a segment's canonical identity plus the internal vertex
/// the improvement process was called on.
pub type MemoKey = (SegmentKey, u32);

/// Solver configuration.
#[derive(Clone, Debug)]
pub struct SolveConfig {
    pub mode: Mode,
    pub order: DeletionOrder,
    /// Remaining recursion depth for the improvement process; `None` means
    /// unbounded (memoization alone bounds the total work).
    pub max_depth: Option<u32>,
}

impl SolveConfig {
    pub fn new(mode: Mode) -> Self {
        SolveConfig {
            mode,
            order: DeletionOrder::Ascending,
            max_depth: None,
        }
    }
}

/// Everything a solve run reports. Serialization deliberately skips the
/// runtime so that identical (instance, seed, order) inputs produce
/// byte-identical JSON.
#[derive(Clone, Debug, Serialize)]
pub struct SolveReport {
    pub schema_version: u32,
    pub mode: Mode,
    pub n: usize,
    pub m: usize,
    pub cost: usize,
    pub initial_cost: usize,
    pub improvement_count: usize,
    pub lower_bound_n: usize,
    /// Solution edge ids, ascending.
    pub solution: Vec<u32>,
    /// The same edges as endpoint pairs.
    pub solution_edges: Vec<(u32, u32)>,
    /// Exact optimum, when an oracle was consulted (filled in by the caller).
    pub oracle_opt: Option<usize>,
    /// cost / oracle_opt as an exact reduced fraction "p/q".
    pub ratio_vs_oracle: Option<String>,
    pub seed: u64,
    pub order: String,
    #[serde(skip)]
    pub runtime: Duration,
}

impl SolveReport {
    /// Attaches an oracle optimum and the exact cost/opt ratio.
    pub fn with_oracle_opt(mut self, opt: usize) -> Self {
        self.ratio_vs_oracle = Some(format_ratio(self.cost, opt));
        self.oracle_opt = Some(opt);
        self
    }

    pub fn solution_set(&self) -> EdgeSet {
        EdgeSet::from_ids(self.m, self.solution.iter().copied())
    }
}

/// `cost / opt` as a reduced fraction string.
pub fn format_ratio(cost: usize, opt: usize) -> String {
    fn gcd(a: usize, b: usize) -> usize {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    let d = gcd(cost.max(1), opt.max(1));
    format!("{}/{}", cost / d, opt / d)
}

/// The critical edge sets at `u`: all singletons from `N(u)` in ascending
/// edge id, then all pairs in lexicographic edge-id order. `N(u)` is the set
/// of edges incident to `u` that are not in `f`.
fn critical_edge_sets(g: &Graph, f: &EdgeSet, u: u32) -> Vec<CriticalEdgeSet> {
    let candidates: Vec<u32> = g
        .neighbors(u)
        .iter()
        .map(|&(_, eid)| eid)
        .filter(|&eid| !f.contains(eid))
        .collect();
    let mut out = Vec::with_capacity(candidates.len() * (candidates.len() + 1) / 2);
    for &e in &candidates {
        out.push(CriticalEdgeSet { pivot: u, edges: vec![e] });
    }
    for i in 0..candidates.len() {
        for j in (i + 1)..candidates.len() {
            out.push(CriticalEdgeSet {
                pivot: u,
                edges: vec![candidates[i], candidates[j]],
            });
        }
    }
    out
}

/// Attempts a single improvement operation: add the critical edges, reverse-
/// delete everything else that can go, and accept iff the result is strictly
/// smaller than `f`. A strict decrease means at least `|I| + 1` solution
/// edges were removed, which is exactly the size-1/size-2 definition.
pub fn try_improvement(
    g: &Graph,
    f: &EdgeSet,
    crit: &CriticalEdgeSet,
    rank: &[u32],
) -> Option<EdgeSet> {
    debug_assert!(crit.edges.iter().all(|&e| !f.contains(e)));
    let mut work = f.clone();
    let mut protected = EdgeSet::empty(f.universe());
    for &e in &crit.edges {
        work.insert(e);
        protected.insert(e);
    }
    let better = deletion_pass(g, &work, &protected, rank);
    (better.len() < f.len()).then_some(better)
}

/// Strong short segments of `f` under 2-VCSS feasibility, paired with their
/// canonical keys, in deterministic order.
fn strong_short_segments(g: &Graph, f: &EdgeSet) -> Vec<Segment> {
    decompose(g, f)
        .segments()
        .iter()
        .filter(|s| {
            let cls = classify(g, f, s, Mode::TwoVcss);
            cls.length == LengthClass::Short && cls.strength == Strength::Strong
        })
        .cloned()
        .collect()
}

/// The recursive improvement process on segment `s` and internal vertex `u`.
///
/// Marks `(s, u)` as processed, tries every critical edge set at `u` for a
/// direct improvement, and otherwise recurses into the strong short segments
/// that appear on `f + I` but not on `f`. A recursive success is followed by
/// a deletion pass that keeps this level's critical edges; the combined
/// exchange is committed only if it beats `f`, otherwise the scratch state is
/// dropped and the search continues. Returns the (possibly improved)
/// solution and whether an improvement was committed; on `false` the returned
/// set equals the input.
pub fn improvement_process(
    g: &Graph,
    f: &EdgeSet,
    s: &Segment,
    u: u32,
    memo: &mut HashSet<MemoKey>,
    rank: &[u32],
    depth: Option<u32>,
) -> (EdgeSet, bool) {
    memo.insert((s.key(), u));
    let crit_sets = critical_edge_sets(g, f, u);
    for crit in &crit_sets {
        if let Some(better) = try_improvement(g, f, crit, rank) {
            return (better, true);
        }
    }
    if depth == Some(0) {
        return (f.clone(), false);
    }
    let child_depth = depth.map(|d| d - 1);
    let base_keys: HashSet<SegmentKey> = decompose(g, f)
        .segments()
        .iter()
        .map(|t| t.key())
        .collect();
    for crit in &crit_sets {
        let mut work = f.clone();
        for &e in &crit.edges {
            work.insert(e);
        }
        for t in strong_short_segments(g, &work) {
            if base_keys.contains(&t.key()) {
                continue;
            }
            let mut internals = t.internals().to_vec();
            internals.sort_unstable();
            for &v in &internals {
                if memo.contains(&(t.key(), v)) {
                    continue;
                }
                let (result, improved) =
                    improvement_process(g, &work, &t, v, memo, rank, child_depth);
                if improved {
                    let mut protected = EdgeSet::empty(f.universe());
                    for &e in &crit.edges {
                        if result.contains(e) {
                            protected.insert(e);
                        }
                    }
                    let after = deletion_pass(g, &result, &protected, rank);
                    if after.len() < f.len() {
                        return (after, true);
                    }
                    // The nested exchange did not pay for this level's added
                    // edges; drop it and keep searching.
                }
            }
        }
    }
    (f.clone(), false)
}

/// Cascading removal of redundant trivial edges: repeatedly delete the
/// smallest-id edge whose endpoints both have degree >= 3 and whose removal
/// keeps the solution a 2-ECSS. Afterwards no edge at all is removable,
/// since any removable edge of a 2-ECSS must lie between two high-degree
/// vertices.
pub fn cleanup_2ecss(g: &Graph, f: &EdgeSet) -> EdgeSet {
    let n = g.vertex_count();
    let mut cur = f.clone();
    let mut deg = vec![0u32; n];
    for id in cur.iter() {
        let (u, v) = g.edge(id);
        deg[u as usize] += 1;
        deg[v as usize] += 1;
    }
    let mut scratch = ConnScratch::new(n);
    loop {
        let mut removed_any = false;
        for id in cur.to_vec() {
            let (u, v) = g.edge(id);
            if deg[u as usize] >= 3
                && deg[v as usize] >= 3
                && is_feasible_minus_edge(g, &cur, id, Mode::TwoEcss, &mut scratch)
            {
                cur.remove(id);
                deg[u as usize] -= 1;
                deg[v as usize] -= 1;
                removed_any = true;
            }
        }
        if !removed_any {
            break;
        }
    }
    cur
}

/// Swaps away closed short segments of a 2-ECSS: while a closed short
/// segment with end vertex `v` exists, replace one of its edges `(u, v)`
/// (`u` internal) by a non-solution edge `(u, w)`, keeping the cost and
/// feasibility. The input graph being 2-connected (per block) guarantees a
/// feasible swap exists; failing to find one is an internal error.
pub fn eliminate_closed_short_segments(g: &Graph, f: &EdgeSet) -> Result<EdgeSet> {
    let mut cur = f.clone();
    loop {
        let segs = match decompose(g, &cur) {
            Decomposition::SpanningCycle => return Ok(cur),
            Decomposition::Segments(s) => s,
        };
        let closed_short = segs
            .into_iter()
            .find(|s| s.is_closed() && LengthClass::of(s.len()) == LengthClass::Short);
        let Some(seg) = closed_short else {
            return Ok(cur);
        };
        let v = seg.ends().0;
        // Only the first and last internal vertices touch the shared end.
        let mut touching = vec![
            (*seg.vertices.get(1).unwrap(), seg.edges[0]),
            (
                seg.vertices[seg.vertices.len() - 2],
                *seg.edges.last().unwrap(),
            ),
        ];
        touching.sort_unstable();
        touching.dedup();
        let mut swapped = false;
        'candidates: for &(u, end_edge) in &touching {
            debug_assert_eq!(g.edge(end_edge), (u.min(v), u.max(v)));
            for &(_, eid) in g.neighbors(u) {
                if cur.contains(eid) {
                    continue;
                }
                let mut candidate = cur.clone();
                candidate.remove(end_edge);
                candidate.insert(eid);
                if is_2ecss(g, &candidate) {
                    cur = candidate;
                    swapped = true;
                    break 'candidates;
                }
            }
        }
        if !swapped {
            return Err(Error::Internal(format!(
                "no feasible replacement edge for the closed short segment at vertex {v}"
            )));
        }
    }
}

/// Runs the full algorithm on a 2-connected graph (one block).
fn solve_block(
    g: &Graph,
    mode: Mode,
    rank: &[u32],
    max_depth: Option<u32>,
) -> Result<(EdgeSet, usize, usize)> {
    let mut f = minimal_2vcss_with_rank(g, rank)?;
    let initial_cost = f.len();
    let mut improvements = 0usize;
    let mut memo: HashSet<MemoKey> = HashSet::new();

    'outer: loop {
        let segs = match decompose(g, &f) {
            Decomposition::SpanningCycle => break,
            Decomposition::Segments(s) => s,
        };
        let mut called_any = false;
        for s in &segs {
            let cls = classify(g, &f, s, Mode::TwoVcss);
            debug_assert!(!cls.closed, "a 2-VCSS other than a cycle has no closed segment");
            if cls.length != LengthClass::Short || cls.strength != Strength::Strong {
                continue;
            }
            let mut internals = s.internals().to_vec();
            internals.sort_unstable();
            for &u in &internals {
                if memo.contains(&(s.key(), u)) {
                    continue;
                }
                called_any = true;
                let (next, improved) = improvement_process(g, &f, s, u, &mut memo, rank, max_depth);
                if improved {
                    debug_assert!(next.len() < f.len());
                    debug_assert!(is_2vcss(g, &next));
                    f = next;
                    improvements += 1;
                    continue 'outer;
                }
                debug_assert!(next == f, "an unimproved process must restore the solution");
            }
        }
        if !called_any {
            break;
        }
    }

    if mode == Mode::TwoEcss {
        loop {
            f = cleanup_2ecss(g, &f);
            let next = eliminate_closed_short_segments(g, &f)?;
            let changed = next != f;
            f = next;
            if !changed {
                break;
            }
        }
    }
    Ok((f, initial_cost, improvements))
}

fn minimal_2vcss_with_rank(g: &Graph, rank: &[u32]) -> Result<EdgeSet> {
    if g.vertex_count() < 3 {
        return Err(Error::TooFewVertices { n: g.vertex_count(), min: 3 });
    }
    let full = g.full_edge_set();
    if !is_2vcss(g, &full) {
        return Err(Error::NotTwoConnected);
    }
    Ok(deletion_pass(g, &full, &g.empty_edge_set(), rank))
}

/// Solves for a minimum-cardinality 2-ECSS or 2-VCSS approximation.
///
/// For 2-VCSS the input must be 2-connected. For 2-ECSS it must be
/// 2-edge-connected; if it has cut vertices the algorithm runs on each block
/// separately and returns the union. The result is always feasible for the
/// requested mode and inclusion-wise minimal, and is verified to be so
/// before the report is returned.
pub fn solve(g: &Graph, config: &SolveConfig) -> Result<SolveReport> {
    let start = Instant::now();
    let n = g.vertex_count();
    if n < 3 {
        return Err(Error::TooFewVertices { n, min: 3 });
    }
    let full = g.full_edge_set();
    let rank = config.order.ranks(g.edge_count());

    let (solution, initial_cost, improvements) = match config.mode {
        Mode::TwoVcss => {
            if !is_2vcss(g, &full) {
                return Err(Error::NotTwoConnected);
            }
            solve_block(g, config.mode, &rank, config.max_depth)?
        }
        Mode::TwoEcss => {
            if !is_2ecss(g, &full) {
                return Err(Error::Infeasible { mode: config.mode });
            }
            if is_2vcss(g, &full) {
                solve_block(g, config.mode, &rank, config.max_depth)?
            } else {
                solve_per_block(g, config)?
            }
        }
    };

    // Self-check before reporting: feasibility and inclusion-wise minimality.
    if !is_feasible(g, &solution, config.mode) {
        return Err(Error::Internal("solver output failed the feasibility check".into()));
    }
    let mut scratch = ConnScratch::new(n);
    for id in solution.iter() {
        if is_feasible_minus_edge(g, &solution, id, config.mode, &mut scratch) {
            return Err(Error::Internal(format!(
                "solver output is not minimal: edge {id} is removable"
            )));
        }
    }

    Ok(SolveReport {
        schema_version: 1,
        mode: config.mode,
        n,
        m: g.edge_count(),
        cost: solution.len(),
        initial_cost,
        improvement_count: improvements,
        lower_bound_n: n,
        solution: solution.to_vec(),
        solution_edges: solution.iter().map(|id| g.edge(id)).collect(),
        oracle_opt: None,
        ratio_vs_oracle: None,
        seed: config.order.seed(),
        order: config.order.label().to_string(),
        runtime: start.elapsed(),
    })
}

/// 2-ECSS on a 2-edge-connected graph with cut vertices: solve each block
/// (every block of a bridgeless graph is 2-connected) and take the union.
fn solve_per_block(g: &Graph, config: &SolveConfig) -> Result<(EdgeSet, usize, usize)> {
    let mut solution = g.empty_edge_set();
    let mut initial_cost = 0usize;
    let mut improvements = 0usize;
    for block in blocks(g) {
        debug_assert!(block.vertices.len() >= 3, "bridgeless graphs have no trivial blocks");
        let mut vertex_map = vec![u32::MAX; g.vertex_count()];
        for (new, &old) in block.vertices.iter().enumerate() {
            vertex_map[old as usize] = new as u32;
        }
        let block_edge_ids: Vec<u32> = block.edges.to_vec();
        let sub_edges: Vec<(u32, u32)> = block_edge_ids
            .iter()
            .map(|&id| {
                let (u, v) = g.edge(id);
                let (a, b) = (vertex_map[u as usize], vertex_map[v as usize]);
                (a.min(b), a.max(b))
            })
            .collect();
        let sub = Graph::new(block.vertices.len(), sub_edges)
            .map_err(|e| Error::Internal(format!("block extraction failed: {e}")))?;
        let sub_rank = config.order.ranks(sub.edge_count());
        let (sub_solution, sub_initial, sub_improvements) =
            solve_block(&sub, config.mode, &sub_rank, config.max_depth)?;
        for local in sub_solution.iter() {
            solution.insert(block_edge_ids[local as usize]);
        }
        initial_cost += sub_initial;
        improvements += sub_improvements;
    }
    Ok((solution, initial_cost, improvements))
}
