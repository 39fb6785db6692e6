//! Deterministic instance generators and the shared edge-list text format.
//!
//! Format: line 1 is `n m`, followed by `m` lines `u v` with
//! `0 <= u < v < n`. Lines starting with `#` are comments; blank lines are
//! ignored. Duplicate edges and self-loops are parse errors.

use crate::error::{Error, Result};
use crate::graph::{EdgeSet, Graph};
use crate::rng::SplitMix64;

/// The cycle `C_n`, edges `(i, i+1 mod n)` in walk order.
pub fn gen_cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!("cycle needs n >= 3, got {n}")));
    }
    let edges = (0..n as u32)
        .map(|i| {
            let j = (i + 1) % n as u32;
            (i.min(j), i.max(j))
        })
        .collect();
    Graph::new(n, edges)
}

/// The complete graph `K_n`, edges in lexicographic order.
pub fn gen_complete(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!(
            "complete graph needs n >= 3, got {n}"
        )));
    }
    let mut edges = Vec::with_capacity(n * (n - 1) / 2);
    for u in 0..n as u32 {
        for v in (u + 1)..n as u32 {
            edges.push((u, v));
        }
    }
    Graph::new(n, edges)
}

/// Theta graph: hub vertices 0 and 1 joined by three internally disjoint
/// paths of `a`, `b`, `c` edges. At most one path may have length 1, else the
/// graph would need parallel edges.
pub fn gen_theta(a: usize, b: usize, c: usize) -> Result<Graph> {
    if a < 1 || b < 1 || c < 1 {
        return Err(Error::InvalidParameter("theta path lengths must be >= 1".into()));
    }
    if [a, b, c].iter().filter(|&&l| l == 1).count() > 1 {
        return Err(Error::InvalidParameter(
            "theta admits at most one length-1 path in a simple graph".into(),
        ));
    }
    let n = 2 + (a - 1) + (b - 1) + (c - 1);
    let mut edges = Vec::with_capacity(a + b + c);
    let mut next = 2u32;
    for len in [a, b, c] {
        let mut prev = 0u32;
        for step in 0..len {
            let cur = if step + 1 == len {
                1u32
            } else {
                let v = next;
                next += 1;
                v
            };
            edges.push((prev.min(cur), prev.max(cur)));
            prev = cur;
        }
    }
    Graph::new(n, edges)
}

/// Seeded random 2-connected instance: a Hamiltonian cycle on a shuffled
/// vertex order plus `extra_edges` distinct random chords. Cycle edges get
/// the low ids, chords follow in acceptance order.
pub fn gen_random_2connected(n: usize, extra_edges: usize, seed: u64) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!("need n >= 3, got {n}")));
    }
    let max_extra = n * (n - 1) / 2 - n;
    if extra_edges > max_extra {
        return Err(Error::InvalidParameter(format!(
            "extra_edges {extra_edges} exceeds maximum {max_extra} for n = {n}"
        )));
    }
    let mut rng = SplitMix64::new(seed);
    let mut perm: Vec<u32> = (0..n as u32).collect();
    rng.shuffle(&mut perm);
    let mut present = std::collections::HashSet::new();
    let mut edges = Vec::with_capacity(n + extra_edges);
    for i in 0..n {
        let u = perm[i];
        let v = perm[(i + 1) % n];
        let e = (u.min(v), u.max(v));
        present.insert(e);
        edges.push(e);
    }
    let mut added = 0;
    while added < extra_edges {
        let u = rng.below(n as u64) as u32;
        let v = rng.below(n as u64) as u32;
        if u == v {
            continue;
        }
        let e = (u.min(v), u.max(v));
        if present.insert(e) {
            edges.push(e);
            added += 1;
        }
    }
    Graph::new(n, edges)
}

/// The k-th member of the tight family: hubs `u = 0` and `w = 1` joined by
/// `k` internally disjoint paths of four edges each (vertices
/// `p_i = 3i-1, q_i = 3i, r_i = 3i+1`), plus a shortcut layer that makes a
/// Hamiltonian cycle possible: edge `(u, w)` and "jumper" edges
/// `(r_i, p_{i+1})`. The shortcut edges get the low ids so that greedy
/// deletion in ascending order strips them first and lands on the union of
/// the k long paths, a local optimum of cost `4k`; the optimum is the
/// Hamiltonian cycle of cost `3k + 2`. For `k = 1` the construction
/// degenerates to the 5-cycle, where the spanning cycle itself is optimal.
pub fn gen_tight(k: usize) -> Result<Graph> {
    if k < 1 {
        return Err(Error::InvalidParameter("tight family needs k >= 1".into()));
    }
    let n = 3 * k + 2;
    let mut edges = Vec::with_capacity(5 * k);
    edges.push((0u32, 1u32));
    for i in 1..k {
        // (r_i, p_{i+1})
        edges.push((3 * i as u32 + 1, 3 * i as u32 + 2));
    }
    for i in 1..=k {
        let p = 3 * i as u32 - 1;
        let q = 3 * i as u32;
        let r = 3 * i as u32 + 1;
        edges.push((0, p));
        edges.push((p, q));
        edges.push((q, r));
        edges.push((1, r));
    }
    Graph::new(n, edges)
}

/// The cost-4k local optimum of `gen_tight(k)`: the union of the k long
/// paths, the solution greedy deletion in ascending id order arrives at.
/// `None` for `k = 1`, where no 4-edge feasible solution exists.
pub fn tight_local_optimum(k: usize) -> Option<EdgeSet> {
    if k < 2 {
        return None;
    }
    let m = 5 * k;
    Some(EdgeSet::from_ids(m, (k as u32)..(m as u32)))
}

/// Parses the edge-list text format.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (first_no, header) = lines
        .next()
        .ok_or_else(|| Error::Parse { line: 1, msg: "missing header line \"n m\"".into() })?;
    let mut parts = header.split_whitespace();
    let parse_num = |tok: Option<&str>, what: &str, line: usize| -> Result<usize> {
        tok.ok_or_else(|| Error::Parse { line, msg: format!("missing {what}") })?
            .parse::<usize>()
            .map_err(|_| Error::Parse { line, msg: format!("invalid {what}") })
    };
    let n = parse_num(parts.next(), "vertex count", first_no)?;
    let m = parse_num(parts.next(), "edge count", first_no)?;
    if parts.next().is_some() {
        return Err(Error::Parse {
            line: first_no,
            msg: "header must be exactly \"n m\"".into(),
        });
    }
    let mut edges = Vec::with_capacity(m);
    let mut seen = std::collections::HashSet::new();
    for (line_no, line) in lines {
        if edges.len() == m {
            return Err(Error::Parse {
                line: line_no,
                msg: format!("more than the declared {m} edges"),
            });
        }
        let mut parts = line.split_whitespace();
        let u = parse_num(parts.next(), "endpoint", line_no)?;
        let v = parse_num(parts.next(), "endpoint", line_no)?;
        if parts.next().is_some() {
            return Err(Error::Parse {
                line: line_no,
                msg: "edge line must be exactly \"u v\"".into(),
            });
        }
        if u == v {
            return Err(Error::Parse { line: line_no, msg: format!("self-loop at vertex {u}") });
        }
        if u > v {
            return Err(Error::Parse {
                line: line_no,
                msg: format!("edge ({u}, {v}) must list the smaller endpoint first"),
            });
        }
        if v >= n {
            return Err(Error::Parse {
                line: line_no,
                msg: format!("vertex {v} out of range for n = {n}"),
            });
        }
        if !seen.insert((u, v)) {
            return Err(Error::Parse { line: line_no, msg: format!("duplicate edge ({u}, {v})") });
        }
        edges.push((u as u32, v as u32));
    }
    if edges.len() != m {
        return Err(Error::Parse {
            line: first_no,
            msg: format!("expected {m} edges, found {}", edges.len()),
        });
    }
    Graph::new(n, edges).map_err(|e| Error::Parse { line: first_no, msg: e.to_string() })
}

/// Serializes a graph in the edge-list format; `parse_graph` of the output
/// reproduces the graph with identical edge ids.
pub fn serialize_graph(g: &Graph) -> String {
    let mut out = String::new();
    out.push_str(&format!("{} {}\n", g.vertex_count(), g.edge_count()));
    for &(u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{is_2vcss, is_spanning_connected};

    #[test]
    fn cycle_and_complete_counts() {
        let c5 = gen_cycle(5).unwrap();
        assert_eq!(c5.vertex_count(), 5);
        assert_eq!(c5.edge_count(), 5);
        let k4 = gen_complete(4).unwrap();
        assert_eq!(k4.edge_count(), 6);
        // C_3 and K_3 are the same edge set (ids may differ).
        let mut a = gen_cycle(3).unwrap().edges().to_vec();
        let mut b = gen_complete(3).unwrap().edges().to_vec();
        a.sort_unstable();
        b.sort_unstable();
        assert_eq!(a, b);
    }

    #[test]
    fn theta_counts() {
        // Two hubs plus one internal vertex on each length-2 path: 4 vertices
        // and 1 + 2 + 2 = 5 edges.
        let t = gen_theta(1, 2, 2).unwrap();
        assert_eq!(t.vertex_count(), 4);
        assert_eq!(t.edge_count(), 5);
        assert_eq!(t.degree(0), 3);
        assert_eq!(t.degree(1), 3);
        assert!(is_2vcss(&t, &t.full_edge_set()));
        assert!(gen_theta(1, 1, 2).is_err());
        assert!(gen_theta(0, 2, 2).is_err());
    }

    #[test]
    fn random_instances_are_2connected_and_deterministic() {
        let g = gen_random_2connected(8, 4, 42).unwrap();
        assert_eq!(g.vertex_count(), 8);
        assert_eq!(g.edge_count(), 12);
        assert!(is_2vcss(&g, &g.full_edge_set()));
        assert_eq!(
            serialize_graph(&g),
            serialize_graph(&gen_random_2connected(8, 4, 42).unwrap())
        );
        assert_ne!(
            serialize_graph(&g),
            serialize_graph(&gen_random_2connected(8, 4, 43).unwrap())
        );
        // All chords added gives K_n.
        let full = gen_random_2connected(6, 9, 7).unwrap();
        assert_eq!(full.edge_count(), 15);
        // extra = 0 gives a bare cycle.
        let c = gen_random_2connected(5, 0, 3).unwrap();
        assert_eq!(c.edge_count(), 5);
        assert!(c.edges().iter().all(|&(u, v)| u != v));
    }

    #[test]
    fn tight_family_shape() {
        let g1 = gen_tight(1).unwrap();
        assert_eq!(g1.vertex_count(), 5);
        assert_eq!(g1.edge_count(), 5);
        assert!(is_2vcss(&g1, &g1.full_edge_set()));
        assert!(tight_local_optimum(1).is_none());

        for k in 2..=5 {
            let g = gen_tight(k).unwrap();
            assert_eq!(g.vertex_count(), 3 * k + 2);
            assert_eq!(g.edge_count(), 5 * k);
            assert!(is_2vcss(&g, &g.full_edge_set()));
            let local = tight_local_optimum(k).unwrap();
            assert_eq!(local.len(), 4 * k);
            assert!(is_2vcss(&g, &local));
            assert!(is_spanning_connected(&g, &local));
        }
    }

    #[test]
    fn parse_basics() {
        let g = parse_graph("3 3\n0 1\n0 2\n1 2").unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edges(), &[(0, 1), (0, 2), (1, 2)]);
        // Comments and blank lines are fine.
        let g = parse_graph("# triangle\n3 3\n\n0 1\n0 2\n# last\n1 2\n").unwrap();
        assert_eq!(g.edge_count(), 3);
    }

    #[test]
    fn parse_errors_are_distinct() {
        assert!(matches!(parse_graph("2 1\n0 0"), Err(Error::Parse { .. })));
        assert!(parse_graph("2 1\n1 0").is_err());
        assert!(parse_graph("2 1\n0 2").is_err());
        assert!(parse_graph("3 2\n0 1\n0 1").is_err());
        assert!(parse_graph("3 2\n0 1").is_err());
        assert!(parse_graph("3 1\n0 1\n1 2").is_err());
        assert!(parse_graph("").is_err());
    }

    #[test]
    fn round_trip_tight() {
        let g = gen_tight(2).unwrap();
        let text = serialize_graph(&g);
        let back = parse_graph(&text).unwrap();
        assert_eq!(g, back);
    }
}
