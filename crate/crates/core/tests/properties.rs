//! Property tests for the structural invariants.

use proptest::prelude::*;

use twoconn::instances::{gen_random_2connected, parse_graph, serialize_graph};
use twoconn::segments::{decompose, Decomposition};
use twoconn::{is_2ecss, is_2vcss, minimal_2vcss, DeletionOrder, EdgeSet};

fn instance_params() -> impl Strategy<Value = (usize, usize, u64)> {
    (4usize..=10).prop_flat_map(|n| {
        let max_extra = n * (n - 1) / 2 - n;
        (Just(n), 0..=max_extra.min(8), any::<u64>())
    })
}

proptest! {
    /// Vertex connectivity dominates edge connectivity on arbitrary subsets.
    #[test]
    fn vcss_implies_ecss((n, extra, seed) in instance_params(), mask in any::<u64>()) {
        let g = gen_random_2connected(n, extra, seed).unwrap();
        let f = EdgeSet::from_ids(
            g.edge_count(),
            (0..g.edge_count() as u32).filter(|id| mask >> (id % 64) & 1 == 1),
        );
        if is_2vcss(&g, &f) {
            prop_assert!(is_2ecss(&g, &f));
        }
    }

    /// Parse of serialize is the identity, with identical edge ids.
    #[test]
    fn edge_list_round_trip((n, extra, seed) in instance_params()) {
        let g = gen_random_2connected(n, extra, seed).unwrap();
        let text = serialize_graph(&g);
        let back = parse_graph(&text).unwrap();
        prop_assert_eq!(&g, &back);
        prop_assert_eq!(serialize_graph(&back), text);
    }

    /// Minimal solutions are feasible, minimal, and have at least n edges;
    /// their segments partition the edges with degree-2 internals.
    #[test]
    fn minimal_solution_invariants((n, extra, seed) in instance_params()) {
        let g = gen_random_2connected(n, extra, seed).unwrap();
        let f = minimal_2vcss(&g, DeletionOrder::Shuffled { seed }).unwrap();
        prop_assert!(is_2vcss(&g, &f));
        prop_assert!(f.len() >= n);
        for id in f.to_vec() {
            let mut smaller = f.clone();
            smaller.remove(id);
            prop_assert!(!is_2vcss(&g, &smaller));
        }
        match decompose(&g, &f) {
            Decomposition::SpanningCycle => prop_assert_eq!(f.len(), n),
            Decomposition::Segments(segs) => {
                let mut covered: Vec<u32> = segs.iter().flat_map(|s| s.edges.clone()).collect();
                covered.sort_unstable();
                prop_assert_eq!(covered, f.to_vec());
                let mut deg = vec![0u32; n];
                for id in f.iter() {
                    let (u, v) = g.edge(id);
                    deg[u as usize] += 1;
                    deg[v as usize] += 1;
                }
                for s in &segs {
                    let (a, b) = s.ends();
                    prop_assert!(deg[a as usize] >= 3);
                    prop_assert!(deg[b as usize] >= 3);
                    for &v in s.internals() {
                        prop_assert_eq!(deg[v as usize], 2);
                    }
                }
            }
        }
    }
}
