//! Decomposition of a feasible solution into segments (maximal paths whose
//! internal vertices have degree 2 on the solution) and their classification.

use crate::error::{Error, Result};
use crate::graph::{is_2ecss, is_feasible_on, EdgeSet, Graph, Mode};

/// A maximal plain path of a solution. `vertices` lists the path in walk
/// order including both end vertices; for a closed segment the first and last
/// entries coincide. `edges` holds the edge ids in the same walk order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Segment {
    pub vertices: Vec<u32>,
    pub edges: Vec<u32>,
}

impl Segment {
    /// Number of edges.
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.edges.len() == 1
    }

    pub fn is_closed(&self) -> bool {
        self.vertices.first() == self.vertices.last()
    }

    pub fn ends(&self) -> (u32, u32) {
        (*self.vertices.first().unwrap(), *self.vertices.last().unwrap())
    }

    /// Internal vertices in walk order.
    pub fn internals(&self) -> &[u32] {
        &self.vertices[1..self.vertices.len() - 1]
    }

    pub fn min_edge_id(&self) -> u32 {
        *self.edges.iter().min().unwrap()
    }

    /// Structural identity of the segment: its vertex list sorted with
    /// multiplicity. Segments recreated across solutions compare equal iff
    /// they cover the same vertices, which is how "exists on F" is decided
    /// for emerging segments and how memoization keys are formed.
    pub fn key(&self) -> SegmentKey {
        let mut v = self.vertices.clone();
        v.sort_unstable();
        SegmentKey(v)
    }
}

/// Canonical segment identity, see [`Segment::key`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SegmentKey(pub Vec<u32>);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LengthClass {
    /// One edge.
    Trivial,
    /// Two or three edges.
    Short,
    /// Four or more edges.
    Long,
}

impl LengthClass {
    pub fn of(len: usize) -> Self {
        match len {
            0 => unreachable!("segments have at least one edge"),
            1 => LengthClass::Trivial,
            2 | 3 => LengthClass::Short,
            _ => LengthClass::Long,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strength {
    /// Removing the segment breaks feasibility of the remainder.
    Weak,
    /// The remainder stays feasible.
    Strong,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SegmentClass {
    pub length: LengthClass,
    pub strength: Strength,
    pub closed: bool,
}

/// Result of decomposing a solution into segments.
#[derive(Clone, Debug)]
pub enum Decomposition {
    /// Segments ordered by their smallest contained edge id.
    Segments(Vec<Segment>),
    /// The solution has no high-degree vertex, i.e. it is a single spanning
    /// cycle; the segment machinery does not apply.
    SpanningCycle,
}

impl Decomposition {
    pub fn segments(&self) -> &[Segment] {
        match self {
            Decomposition::Segments(s) => s,
            Decomposition::SpanningCycle => &[],
        }
    }
}

/// Splits a feasible solution into its segments. The segments partition the
/// edges of `f`; every degree-2 vertex is internal to exactly one segment and
/// every high-degree vertex appears only as an end.
pub fn decompose(g: &Graph, f: &EdgeSet) -> Decomposition {
    let n = g.vertex_count();
    let mut deg = vec![0u32; n];
    for id in f.iter() {
        let (u, v) = g.edge(id);
        deg[u as usize] += 1;
        deg[v as usize] += 1;
    }
    let has_high = deg.iter().any(|&d| d >= 3);
    if !has_high {
        if f.is_empty() {
            return Decomposition::Segments(Vec::new());
        }
        debug_assert!(deg.iter().all(|&d| d == 0 || d == 2));
        return Decomposition::SpanningCycle;
    }

    let mut assigned = vec![false; g.edge_count()];
    let mut segments = Vec::new();
    for v in 0..n as u32 {
        if deg[v as usize] < 3 {
            continue;
        }
        for &(first, eid) in g.neighbors(v) {
            if !f.contains(eid) || assigned[eid as usize] {
                continue;
            }
            let mut vertices = vec![v];
            let mut edges = Vec::new();
            let mut cur = first;
            let mut cur_edge = eid;
            loop {
                assigned[cur_edge as usize] = true;
                edges.push(cur_edge);
                vertices.push(cur);
                if deg[cur as usize] != 2 {
                    break;
                }
                let (next, next_edge) = g
                    .neighbors(cur)
                    .iter()
                    .copied()
                    .find(|&(_, e)| f.contains(e) && e != cur_edge)
                    .expect("degree-2 vertex has a second solution edge");
                cur = next;
                cur_edge = next_edge;
            }
            segments.push(Segment { vertices, edges });
        }
    }
    debug_assert_eq!(
        segments.iter().map(|s| s.len()).sum::<usize>(),
        f.len(),
        "segments must partition the solution edges"
    );
    segments.sort_by_key(|s| s.min_edge_id());
    Decomposition::Segments(segments)
}

/// Classifies a segment of `f`. The strength test removes the segment's
/// edges and its internal vertices and checks whether what remains is a
/// feasible solution on the remaining vertex set under `mode`; trivial
/// segments have no internal vertices, so only the edge is removed. End
/// vertices always stay.
pub fn classify(g: &Graph, f: &EdgeSet, s: &Segment, mode: Mode) -> SegmentClass {
    let mut rest = f.clone();
    for &e in &s.edges {
        let removed = rest.remove(e);
        debug_assert!(removed, "segment edge not in solution");
    }
    let mut active = vec![true; g.vertex_count()];
    for &v in s.internals() {
        active[v as usize] = false;
    }
    let n_active = g.vertex_count() - s.internals().len();
    let strength = if is_feasible_on(g, &rest, &active, n_active, mode) {
        Strength::Strong
    } else {
        Strength::Weak
    };
    SegmentClass {
        length: LengthClass::of(s.len()),
        strength,
        closed: s.is_closed(),
    }
}

/// All trivial-segment edges of the 2-ECSS `f` whose individual removal keeps
/// `f` a 2-ECSS, each judged against the original `f` (no cascading; that is
/// the clean-up pass's job). A trivial segment is exactly an edge both of
/// whose endpoints have degree >= 3 on `f`.
pub fn redundant_edges(g: &Graph, f: &EdgeSet) -> Result<EdgeSet> {
    if !is_2ecss(g, f) {
        return Err(Error::Misuse("redundant_edges requires a 2-ECSS".into()));
    }
    let mut deg = vec![0u32; g.vertex_count()];
    for id in f.iter() {
        let (u, v) = g.edge(id);
        deg[u as usize] += 1;
        deg[v as usize] += 1;
    }
    let mut out = g.empty_edge_set();
    let mut scratch = crate::graph::ConnScratch::new(g.vertex_count());
    for id in f.iter() {
        let (u, v) = g.edge(id);
        if deg[u as usize] >= 3
            && deg[v as usize] >= 3
            && crate::graph::is_feasible_minus_edge(g, f, id, Mode::TwoEcss, &mut scratch)
        {
            out.insert(id);
        }
    }
    Ok(out)
}
