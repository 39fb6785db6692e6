//! Immutable simple-graph representation and the connectivity primitives
//! (spanning connectivity, bridges, cut vertices, blocks) everything else is
//! built on.

use crate::error::{Error, Result};
use serde::{Serialize, Serializer};

/// Which feasibility notion a solution is held to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    /// 2-edge-connected spanning subgraph.
    TwoEcss,
    /// 2-vertex-connected spanning subgraph.
    TwoVcss,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::TwoEcss => "2ecss",
            Mode::TwoVcss => "2vcss",
        }
    }
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "2ecss" => Ok(Mode::TwoEcss),
            "2vcss" => Ok(Mode::TwoVcss),
            other => Err(Error::InvalidParameter(format!(
                "unknown mode {other:?}, expected \"2ecss\" or \"2vcss\""
            ))),
        }
    }
}

impl Serialize for Mode {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

/// An undirected simple graph with dense vertex ids `0..n` and dense, stable
/// edge ids `0..m`. Immutable after construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(u32, u32)>,
    /// Per-vertex list of `(neighbor, edge id)`, ascending by edge id.
    adj: Vec<Vec<(u32, u32)>>,
}

impl Graph {
    /// Builds a graph from an edge list. Every pair must satisfy `u < v < n`;
    /// self-loops and duplicate edges are rejected.
    pub fn new(n: usize, edges: Vec<(u32, u32)>) -> Result<Self> {
        let mut seen = std::collections::HashSet::with_capacity(edges.len());
        for &(u, v) in &edges {
            if u == v {
                return Err(Error::InvalidParameter(format!("self-loop at vertex {u}")));
            }
            if u > v {
                return Err(Error::InvalidParameter(format!(
                    "edge ({u}, {v}) must be written with the smaller endpoint first"
                )));
            }
            if (v as usize) >= n {
                return Err(Error::InvalidParameter(format!(
                    "edge ({u}, {v}) references a vertex >= n = {n}"
                )));
            }
            if !seen.insert((u, v)) {
                return Err(Error::InvalidParameter(format!("duplicate edge ({u}, {v})")));
            }
        }
        let mut adj = vec![Vec::new(); n];
        for (id, &(u, v)) in edges.iter().enumerate() {
            adj[u as usize].push((v, id as u32));
            adj[v as usize].push((u, id as u32));
        }
        Ok(Graph { n, edges, adj })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Endpoints of edge `id`, smaller vertex first.
    pub fn edge(&self, id: u32) -> (u32, u32) {
        self.edges[id as usize]
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    /// Edge id for the pair `{u, v}` if present.
    pub fn edge_id(&self, u: u32, v: u32) -> Option<u32> {
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        self.adj[a as usize]
            .iter()
            .find(|&&(w, _)| w == b)
            .map(|&(_, id)| id)
    }

    /// `(neighbor, edge id)` pairs of `v`, ascending by edge id.
    pub fn neighbors(&self, v: u32) -> &[(u32, u32)] {
        &self.adj[v as usize]
    }

    pub fn degree(&self, v: u32) -> usize {
        self.adj[v as usize].len()
    }

    pub fn full_edge_set(&self) -> EdgeSet {
        EdgeSet::full(self.edges.len())
    }

    pub fn empty_edge_set(&self) -> EdgeSet {
        EdgeSet::empty(self.edges.len())
    }
}

/// A subset of a graph's edge ids, backed by a bitset. Iteration is always in
/// ascending edge-id order, which keeps every downstream scan deterministic.
#[derive(Clone, PartialEq, Eq)]
pub struct EdgeSet {
    words: Vec<u64>,
    universe: usize,
    len: usize,
}

impl EdgeSet {
    pub fn empty(universe: usize) -> Self {
        EdgeSet {
            words: vec![0; universe.div_ceil(64)],
            universe,
            len: 0,
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut s = Self::empty(universe);
        for id in 0..universe {
            s.insert(id as u32);
        }
        s
    }

    pub fn from_ids<I: IntoIterator<Item = u32>>(universe: usize, ids: I) -> Self {
        let mut s = Self::empty(universe);
        for id in ids {
            s.insert(id);
        }
        s
    }

    /// Number of edge ids the parent graph has (not the member count).
    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn contains(&self, id: u32) -> bool {
        let id = id as usize;
        debug_assert!(id < self.universe);
        self.words[id / 64] & (1 << (id % 64)) != 0
    }

    /// Inserts `id`; returns true if it was not already present.
    pub fn insert(&mut self, id: u32) -> bool {
        let id = id as usize;
        assert!(id < self.universe, "edge id {id} outside universe {}", self.universe);
        let word = &mut self.words[id / 64];
        let bit = 1 << (id % 64);
        if *word & bit == 0 {
            *word |= bit;
            self.len += 1;
            true
        } else {
            false
        }
    }

    /// Removes `id`; returns true if it was present.
    pub fn remove(&mut self, id: u32) -> bool {
        let id = id as usize;
        debug_assert!(id < self.universe);
        let word = &mut self.words[id / 64];
        let bit = 1 << (id % 64);
        if *word & bit != 0 {
            *word &= !bit;
            self.len -= 1;
            true
        } else {
            false
        }
    }

    pub fn is_subset_of(&self, other: &EdgeSet) -> bool {
        debug_assert_eq!(self.universe, other.universe);
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    /// Member edge ids in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &word)| {
            let mut w = word;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let bit = w.trailing_zeros();
                    w &= w - 1;
                    Some(wi as u32 * 64 + bit)
                }
            })
        })
    }

    pub fn to_vec(&self) -> Vec<u32> {
        self.iter().collect()
    }
}

impl std::fmt::Debug for EdgeSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Reusable buffers for the lowpoint scans so the hot paths allocate nothing.
pub(crate) struct ConnScratch {
    disc: Vec<u32>,
    low: Vec<u32>,
    frame_v: Vec<u32>,
    frame_pe: Vec<u32>, // parent edge id + 1; 0 = root
    frame_ix: Vec<u32>,
}

impl ConnScratch {
    pub(crate) fn new(n: usize) -> Self {
        ConnScratch {
            disc: vec![0; n],
            low: vec![0; n],
            frame_v: Vec::with_capacity(n),
            frame_pe: Vec::with_capacity(n),
            frame_ix: Vec::with_capacity(n),
        }
    }

    fn reset(&mut self, n: usize) {
        self.disc.clear();
        self.disc.resize(n, 0);
        self.low.clear();
        self.low.resize(n, 0);
        self.frame_v.clear();
        self.frame_pe.clear();
        self.frame_ix.clear();
    }
}

struct ScanOutcome {
    visited: usize,
    has_bridge: bool,
    has_cut: bool,
}

/// Iterative lowpoint DFS over the subgraph of `f`-edges restricted to
/// `active` vertices, skipping `skip_edge`, starting at `root`. Detects
/// bridges and cut vertices of the component of `root`; optionally collects
/// them.
#[allow(clippy::too_many_arguments)]
fn lowpoint_scan(
    g: &Graph,
    f: &EdgeSet,
    skip_edge: Option<u32>,
    active: Option<&[bool]>,
    scratch: &mut ConnScratch,
    root: u32,
    mut bridges: Option<&mut Vec<u32>>,
    mut cuts: Option<&mut Vec<u32>>,
) -> ScanOutcome {
    let is_active = |v: u32| active.is_none_or(|a| a[v as usize]);
    debug_assert!(is_active(root));
    debug_assert_eq!(scratch.disc[root as usize], 0);

    let mut time: u32 = 1;
    scratch.disc[root as usize] = 1;
    scratch.low[root as usize] = 1;
    scratch.frame_v.push(root);
    scratch.frame_pe.push(0);
    scratch.frame_ix.push(0);
    let mut visited = 1usize;
    let mut root_children = 0usize;
    let mut has_bridge = false;
    let mut has_cut = false;
    let mut root_cut_recorded = false;

    while let Some(&v) = scratch.frame_v.last() {
        let vi = v as usize;
        let depth = scratch.frame_v.len() - 1;
        let adjacency = &g.adj[vi];
        let mut ix = scratch.frame_ix[depth] as usize;
        let parent_edge = scratch.frame_pe[depth];
        let mut descended = false;
        while ix < adjacency.len() {
            let (w, eid) = adjacency[ix];
            ix += 1;
            if Some(eid) == skip_edge || !f.contains(eid) || !is_active(w) {
                continue;
            }
            if scratch.disc[w as usize] == 0 {
                time += 1;
                scratch.disc[w as usize] = time;
                scratch.low[w as usize] = time;
                visited += 1;
                scratch.frame_ix[depth] = ix as u32;
                scratch.frame_v.push(w);
                scratch.frame_pe.push(eid + 1);
                scratch.frame_ix.push(0);
                descended = true;
                break;
            } else if eid + 1 != parent_edge {
                // Back edge (the graph is simple, so at most one edge leads
                // to the DFS parent).
                scratch.low[vi] = scratch.low[vi].min(scratch.disc[w as usize]);
            }
        }
        if descended {
            continue;
        }
        scratch.frame_v.pop();
        let pe = scratch.frame_pe.pop().unwrap();
        scratch.frame_ix.pop();
        if let Some(&u) = scratch.frame_v.last() {
            let ui = u as usize;
            scratch.low[ui] = scratch.low[ui].min(scratch.low[vi]);
            if scratch.low[vi] > scratch.disc[ui] {
                has_bridge = true;
                if let Some(out) = bridges.as_deref_mut() {
                    out.push(pe - 1);
                }
            }
            if scratch.frame_v.len() == 1 {
                root_children += 1;
                if root_children >= 2 {
                    has_cut = true;
                    if !root_cut_recorded {
                        root_cut_recorded = true;
                        if let Some(out) = cuts.as_deref_mut() {
                            out.push(root);
                        }
                    }
                }
            } else if scratch.low[vi] >= scratch.disc[ui] {
                has_cut = true;
                if let Some(out) = cuts.as_deref_mut() {
                    out.push(u);
                }
            }
        }
    }

    ScanOutcome {
        visited,
        has_bridge,
        has_cut,
    }
}

/// True iff the subgraph `(V, f)` is connected and covers every vertex.
/// Empty and single-vertex graphs count as connected.
pub fn is_spanning_connected(g: &Graph, f: &EdgeSet) -> bool {
    if g.n <= 1 {
        return true;
    }
    let mut scratch = ConnScratch::new(g.n);
    let outcome = lowpoint_scan(g, f, None, None, &mut scratch, 0, None, None);
    outcome.visited == g.n
}

/// All edges of `f` whose removal disconnects their component of `(V, f)`.
pub fn find_bridges(g: &Graph, f: &EdgeSet) -> EdgeSet {
    let mut scratch = ConnScratch::new(g.n);
    scratch.reset(g.n);
    let mut out = Vec::new();
    for v in 0..g.n as u32 {
        if scratch.disc[v as usize] == 0 {
            lowpoint_scan(g, f, None, None, &mut scratch, v, Some(&mut out), None);
        }
    }
    EdgeSet::from_ids(g.edge_count(), out)
}

/// All cut vertices of the connected spanning subgraph `(V, f)`, ascending.
/// Errors if `(V, f)` is not connected.
pub fn find_cut_vertices(g: &Graph, f: &EdgeSet) -> Result<Vec<u32>> {
    if g.n <= 1 {
        return Ok(Vec::new());
    }
    let mut scratch = ConnScratch::new(g.n);
    let mut cuts = Vec::new();
    let outcome = lowpoint_scan(g, f, None, None, &mut scratch, 0, None, Some(&mut cuts));
    if outcome.visited != g.n {
        return Err(Error::Misuse(
            "find_cut_vertices requires a connected spanning subgraph".into(),
        ));
    }
    cuts.sort_unstable();
    cuts.dedup();
    Ok(cuts)
}

/// True iff `(V, f)` is a 2-edge-connected spanning subgraph: spanning,
/// connected, bridgeless, and `n >= 2`. A simple graph on two vertices can
/// never qualify (its single edge is a bridge).
pub fn is_2ecss(g: &Graph, f: &EdgeSet) -> bool {
    if g.n < 2 {
        return false;
    }
    let mut scratch = ConnScratch::new(g.n);
    let outcome = lowpoint_scan(g, f, None, None, &mut scratch, 0, None, None);
    outcome.visited == g.n && !outcome.has_bridge
}

/// True iff `(V, f)` is a 2-vertex-connected spanning subgraph: spanning,
/// connected, free of cut vertices, and `n >= 3`.
pub fn is_2vcss(g: &Graph, f: &EdgeSet) -> bool {
    if g.n < 3 {
        return false;
    }
    let mut scratch = ConnScratch::new(g.n);
    let outcome = lowpoint_scan(g, f, None, None, &mut scratch, 0, None, None);
    outcome.visited == g.n && !outcome.has_cut
}

/// Mode-dispatched feasibility predicate.
pub fn is_feasible(g: &Graph, f: &EdgeSet, mode: Mode) -> bool {
    match mode {
        Mode::TwoEcss => is_2ecss(g, f),
        Mode::TwoVcss => is_2vcss(g, f),
    }
}

/// Feasibility of `(V, f - e)` with reusable scratch; the hot path of every
/// deletion scan.
pub(crate) fn is_feasible_minus_edge(
    g: &Graph,
    f: &EdgeSet,
    e: u32,
    mode: Mode,
    scratch: &mut ConnScratch,
) -> bool {
    let min_n = match mode {
        Mode::TwoEcss => 2,
        Mode::TwoVcss => 3,
    };
    if g.n < min_n {
        return false;
    }
    scratch.reset(g.n);
    let outcome = lowpoint_scan(g, f, Some(e), None, scratch, 0, None, None);
    if outcome.visited != g.n {
        return false;
    }
    match mode {
        Mode::TwoEcss => !outcome.has_bridge,
        Mode::TwoVcss => !outcome.has_cut,
    }
}

/// Feasibility of `f` restricted to the `active` vertex set, under the same
/// small-size conventions as the spanning predicates. `n_active` must equal
/// the number of true entries in `active`.
pub(crate) fn is_feasible_on(
    g: &Graph,
    f: &EdgeSet,
    active: &[bool],
    n_active: usize,
    mode: Mode,
) -> bool {
    debug_assert_eq!(active.iter().filter(|&&a| a).count(), n_active);
    let min_n = match mode {
        Mode::TwoEcss => 2,
        Mode::TwoVcss => 3,
    };
    if n_active < min_n {
        return false;
    }
    let root = match active.iter().position(|&a| a) {
        Some(v) => v as u32,
        None => return false,
    };
    let mut scratch = ConnScratch::new(g.n);
    let outcome = lowpoint_scan(g, f, None, Some(active), &mut scratch, root, None, None);
    if outcome.visited != n_active {
        return false;
    }
    match mode {
        Mode::TwoEcss => !outcome.has_bridge,
        Mode::TwoVcss => !outcome.has_cut,
    }
}

/// A block (maximal 2-connected subgraph, or a single bridge edge) of a graph.
#[derive(Clone, Debug)]
pub struct Block {
    /// Vertices of the block, ascending.
    pub vertices: Vec<u32>,
    /// Edges of the block.
    pub edges: EdgeSet,
}

/// Block decomposition of the whole graph. The edge sets of the blocks
/// partition `E`; two blocks share at most one vertex. Blocks are returned
/// ordered by their smallest edge id.
pub fn blocks(g: &Graph) -> Vec<Block> {
    let n = g.n;
    let m = g.edge_count();
    let mut disc = vec![0u32; n];
    let mut low = vec![0u32; n];
    let mut time = 0u32;
    let mut edge_stack: Vec<u32> = Vec::new();
    let mut out: Vec<Vec<u32>> = Vec::new();

    // Iterative DFS frames: (vertex, parent edge + 1, adjacency index).
    let mut frame_v: Vec<u32> = Vec::new();
    let mut frame_pe: Vec<u32> = Vec::new();
    let mut frame_ix: Vec<u32> = Vec::new();

    for start in 0..n as u32 {
        if disc[start as usize] != 0 {
            continue;
        }
        time += 1;
        disc[start as usize] = time;
        low[start as usize] = time;
        frame_v.push(start);
        frame_pe.push(0);
        frame_ix.push(0);
        while let Some(&v) = frame_v.last() {
            let vi = v as usize;
            let depth = frame_v.len() - 1;
            let parent_edge = frame_pe[depth];
            let mut ix = frame_ix[depth] as usize;
            let mut descended = false;
            while ix < g.adj[vi].len() {
                let (w, eid) = g.adj[vi][ix];
                ix += 1;
                if eid + 1 == parent_edge {
                    continue;
                }
                if disc[w as usize] == 0 {
                    edge_stack.push(eid);
                    time += 1;
                    disc[w as usize] = time;
                    low[w as usize] = time;
                    frame_ix[depth] = ix as u32;
                    frame_v.push(w);
                    frame_pe.push(eid + 1);
                    frame_ix.push(0);
                    descended = true;
                    break;
                } else if disc[w as usize] < disc[vi] {
                    // Back edge, recorded once (towards the ancestor).
                    edge_stack.push(eid);
                    low[vi] = low[vi].min(disc[w as usize]);
                }
            }
            if descended {
                continue;
            }
            frame_v.pop();
            let pe = frame_pe.pop().unwrap();
            frame_ix.pop();
            if let Some(&u) = frame_v.last() {
                let ui = u as usize;
                low[ui] = low[ui].min(low[vi]);
                if low[vi] >= disc[ui] {
                    // `u` closes a block; pop everything up to the tree edge.
                    let mut block = Vec::new();
                    while let Some(&top) = edge_stack.last() {
                        edge_stack.pop();
                        block.push(top);
                        if top + 1 == pe {
                            break;
                        }
                    }
                    out.push(block);
                }
            }
        }
        debug_assert!(edge_stack.is_empty());
    }

    let mut result: Vec<Block> = out
        .into_iter()
        .map(|ids| {
            let mut vertices: Vec<u32> = ids
                .iter()
                .flat_map(|&id| {
                    let (u, v) = g.edge(id);
                    [u, v]
                })
                .collect();
            vertices.sort_unstable();
            vertices.dedup();
            Block {
                vertices,
                edges: EdgeSet::from_ids(m, ids),
            }
        })
        .collect();
    result.sort_by_key(|b| b.edges.iter().next());
    result
}
