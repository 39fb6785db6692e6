//! Inclusion-wise minimal 2-VCSS computation by greedy deletion, and the
//! deletion pass shared with the local search.

use crate::error::{Error, Result};
use crate::graph::{is_2vcss, is_feasible_minus_edge, ConnScratch, EdgeSet, Graph, Mode};
use crate::rng::SplitMix64;

/// Order in which deletion candidates are scanned.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DeletionOrder {
    /// Ascending edge id (the default; fully deterministic).
    Ascending,
    /// A seeded permutation of the edge ids, for experiments.
    Shuffled { seed: u64 },
}

impl DeletionOrder {
    /// Scan rank per edge id; candidates are visited by ascending rank.
    pub fn ranks(&self, m: usize) -> Vec<u32> {
        match *self {
            DeletionOrder::Ascending => (0..m as u32).collect(),
            DeletionOrder::Shuffled { seed } => {
                let mut sequence: Vec<u32> = (0..m as u32).collect();
                SplitMix64::new(seed).shuffle(&mut sequence);
                let mut rank = vec![0u32; m];
                for (pos, &id) in sequence.iter().enumerate() {
                    rank[id as usize] = pos as u32;
                }
                rank
            }
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            DeletionOrder::Ascending => "ascending",
            DeletionOrder::Shuffled { .. } => "shuffled",
        }
    }

    pub fn seed(&self) -> u64 {
        match *self {
            DeletionOrder::Ascending => 0,
            DeletionOrder::Shuffled { seed } => seed,
        }
    }
}

/// Greedy feasibility-preserving deletion: scans the edges of `f` by
/// ascending `rank`, deleting each whose removal keeps the subgraph a
/// 2-VCSS, and repeats the scan until a full pass deletes nothing. Edges in
/// `protected` are never deleted (they are the critical edges an improvement
/// operation has committed to keeping). The result is feasible and
/// inclusion-wise minimal relative to the protected set.
pub fn deletion_pass(g: &Graph, f: &EdgeSet, protected: &EdgeSet, rank: &[u32]) -> EdgeSet {
    let n = g.vertex_count();
    let mut cur = f.clone();
    let mut deg = vec![0u32; n];
    for id in cur.iter() {
        let (u, v) = g.edge(id);
        deg[u as usize] += 1;
        deg[v as usize] += 1;
    }
    let mut scratch = ConnScratch::new(n);
    let mut candidates: Vec<u32> = cur.iter().filter(|&id| !protected.contains(id)).collect();
    candidates.sort_by_key(|&id| rank[id as usize]);
    loop {
        let mut changed = false;
        for &id in &candidates {
            if !cur.contains(id) {
                continue;
            }
            let (u, v) = g.edge(id);
            // A 2-VCSS needs minimum degree 2, so an edge at a degree-2
            // endpoint can never be deleted.
            if deg[u as usize] <= 2 || deg[v as usize] <= 2 {
                continue;
            }
            if is_feasible_minus_edge(g, &cur, id, Mode::TwoVcss, &mut scratch) {
                cur.remove(id);
                deg[u as usize] -= 1;
                deg[v as usize] -= 1;
                changed = true;
            }
        }
        if !changed {
            break;
        }
        candidates.retain(|&id| cur.contains(id));
    }
    cur
}

/// An inclusion-wise minimal 2-VCSS of `g`: start from all edges, delete in
/// the given order while feasibility survives.
pub fn minimal_2vcss(g: &Graph, order: DeletionOrder) -> Result<EdgeSet> {
    if g.vertex_count() < 3 {
        return Err(Error::TooFewVertices { n: g.vertex_count(), min: 3 });
    }
    let full = g.full_edge_set();
    if !is_2vcss(g, &full) {
        return Err(Error::NotTwoConnected);
    }
    let rank = order.ranks(g.edge_count());
    Ok(deletion_pass(g, &full, &g.empty_edge_set(), &rank))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::instances::{gen_complete, gen_cycle, gen_random_2connected};

    fn ranks(g: &Graph) -> Vec<u32> {
        DeletionOrder::Ascending.ranks(g.edge_count())
    }

    #[test]
    fn cycle_is_already_minimal() {
        let c = gen_cycle(9).unwrap();
        let f = minimal_2vcss(&c, DeletionOrder::Ascending).unwrap();
        assert_eq!(f, c.full_edge_set());
    }

    #[test]
    fn k4_ascending_order() {
        // Greedy deletion on K_4 with edges (0,1),(0,2),(0,3),(1,2),(1,3),(2,3)
        // first drops (0,1), then only (2,3) remains deletable, leaving the
        // 4-cycle {(0,2),(0,3),(1,2),(1,3)} = ids {1,2,3,4}.
        let g = gen_complete(4).unwrap();
        let f = minimal_2vcss(&g, DeletionOrder::Ascending).unwrap();
        assert_eq!(f.to_vec(), vec![1, 2, 3, 4]);
        assert_eq!(f.len(), 4);
        assert!(is_2vcss(&g, &f));
    }

    #[test]
    fn output_is_minimal_and_large_enough() {
        for seed in 0..20u64 {
            let g = gen_random_2connected(9, (seed % 6) as usize + 2, seed).unwrap();
            for order in [DeletionOrder::Ascending, DeletionOrder::Shuffled { seed }] {
                let f = minimal_2vcss(&g, order).unwrap();
                assert!(is_2vcss(&g, &f));
                // Every vertex needs degree >= 2.
                assert!(f.len() >= g.vertex_count());
                // Inclusion-wise minimal: removing any edge breaks feasibility.
                for id in f.iter() {
                    let mut smaller = f.clone();
                    smaller.remove(id);
                    assert!(!is_2vcss(&g, &smaller));
                }
            }
        }
    }

    #[test]
    fn determinism_per_order() {
        let g = gen_random_2connected(10, 8, 5).unwrap();
        let a = minimal_2vcss(&g, DeletionOrder::Shuffled { seed: 11 }).unwrap();
        let b = minimal_2vcss(&g, DeletionOrder::Shuffled { seed: 11 }).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn petersen_minimal_solution() {
        let mut edges = Vec::new();
        for i in 0..5u32 {
            edges.push((i.min((i + 1) % 5), i.max((i + 1) % 5)));
        }
        for i in 0..5u32 {
            edges.push((i, i + 5));
        }
        for i in 0..5u32 {
            let a = 5 + i;
            let b = 5 + (i + 2) % 5;
            edges.push((a.min(b), a.max(b)));
        }
        let g = Graph::new(10, edges).unwrap();
        let f = minimal_2vcss(&g, DeletionOrder::Ascending).unwrap();
        assert!(is_2vcss(&g, &f));
        assert!(f.len() >= 10);
    }

    #[test]
    fn protected_chord_is_kept() {
        // C_8 plus chord (0,3): no cycle edge can be deleted (an endpoint
        // would drop to degree 1), and the chord is protected, so the pass
        // returns the input unchanged.
        let mut edges: Vec<(u32, u32)> = (0..8u32)
            .map(|i| {
                let j = (i + 1) % 8;
                (i.min(j), i.max(j))
            })
            .collect();
        edges.push((0, 3));
        let g = Graph::new(8, edges).unwrap();
        let f = g.full_edge_set();
        let protected = EdgeSet::from_ids(9, [8u32]);
        let out = deletion_pass(&g, &f, &protected, &ranks(&g));
        assert_eq!(out, f);
        // Without protection the chord itself is deleted.
        let out = deletion_pass(&g, &f, &g.empty_edge_set(), &ranks(&g));
        assert_eq!(out.to_vec(), (0..8u32).collect::<Vec<_>>());
    }

    #[test]
    fn deletion_pass_agrees_with_minimal_on_k4() {
        let g = gen_complete(4).unwrap();
        let via_pass = deletion_pass(&g, &g.full_edge_set(), &g.empty_edge_set(), &ranks(&g));
        let via_minimal = minimal_2vcss(&g, DeletionOrder::Ascending).unwrap();
        assert_eq!(via_pass, via_minimal);
    }

    #[test]
    fn rejects_bad_inputs() {
        // Bowtie: 2-edge-connected but not 2-connected.
        let g = Graph::new(5, vec![(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)]).unwrap();
        assert!(matches!(
            minimal_2vcss(&g, DeletionOrder::Ascending),
            Err(Error::NotTwoConnected)
        ));
        let k2 = Graph::new(2, vec![(0, 1)]).unwrap();
        assert!(matches!(
            minimal_2vcss(&k2, DeletionOrder::Ascending),
            Err(Error::TooFewVertices { .. })
        ));
    }
}
