//! Ground truth for small instances: exact minimum solutions by
//! branch-and-bound, the singleton-cut lower bound, and verification of
//! lower-bound certificates for the dual of the cut LP relaxation.

pub use num::bigint::BigInt;
pub use num::rational::BigRational;

use num::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::{is_feasible, EdgeSet, Graph, Mode};
use crate::search::{solve, SolveConfig};

/// Search budget for [`exact_min`]. Exceeding it is an error, never a silent
/// approximation.
#[derive(Clone, Copy, Debug)]
pub struct Budget {
    pub max_nodes: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_nodes: 10_000_000 }
    }
}

/// The singleton-cut lower bound: every vertex needs two incident solution
/// edges, so any feasible solution has at least `n` edges.
pub fn degree_lower_bound(g: &Graph) -> usize {
    g.vertex_count()
}

struct Bnb<'a> {
    g: &'a Graph,
    mode: Mode,
    max_nodes: u64,
    nodes: u64,
    best: usize,
    best_set: EdgeSet,
    chosen: EdgeSet,
    available: EdgeSet,
    deg_chosen: Vec<u32>,
    deg_available: Vec<u32>,
    /// Sum over vertices of `max(0, 2 - deg_chosen)`.
    deficiency: usize,
}

impl<'a> Bnb<'a> {
    fn descend(&mut self, idx: usize) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            return Err(Error::BudgetExceeded { budget: self.max_nodes });
        }
        // Completing the degree deficiencies needs at least ceil(def / 2)
        // further edges.
        if self.chosen.len() + self.deficiency.div_ceil(2) >= self.best {
            return Ok(());
        }
        if self.deficiency == 0 && is_feasible(self.g, &self.chosen, self.mode) {
            // Any completion only adds edges, so this node is settled.
            self.best = self.chosen.len();
            self.best_set = self.chosen.clone();
            return Ok(());
        }
        if idx == self.g.edge_count() {
            return Ok(());
        }
        let id = idx as u32;
        let (u, v) = self.g.edge(id);
        let (ui, vi) = (u as usize, v as usize);

        // Include the edge.
        self.chosen.insert(id);
        for w in [ui, vi] {
            self.deg_chosen[w] += 1;
            if self.deg_chosen[w] <= 2 {
                self.deficiency -= 1;
            }
        }
        self.descend(idx + 1)?;
        self.chosen.remove(id);
        for w in [ui, vi] {
            if self.deg_chosen[w] <= 2 {
                self.deficiency += 1;
            }
            self.deg_chosen[w] -= 1;
        }

        // Exclude the edge; prune if no completion can stay feasible.
        self.available.remove(id);
        self.deg_available[ui] -= 1;
        self.deg_available[vi] -= 1;
        if self.deg_available[ui] >= 2
            && self.deg_available[vi] >= 2
            && is_feasible(self.g, &self.available, self.mode)
        {
            self.descend(idx + 1)?;
        }
        self.available.insert(id);
        self.deg_available[ui] += 1;
        self.deg_available[vi] += 1;
        Ok(())
    }
}

/// Exact minimum solution size and one optimal witness, by branch-and-bound
/// over the edges in ascending id order. The incumbent is seeded from the
/// approximation solver, the lower bound combines the chosen-edge count with
/// the remaining degree deficiencies, and partial sets whose remaining edges
/// cannot restore feasibility are pruned. Deterministic for a given input.
pub fn exact_min(g: &Graph, mode: Mode, budget: &Budget) -> Result<(usize, EdgeSet)> {
    let full = g.full_edge_set();
    if !is_feasible(g, &full, mode) {
        return Err(Error::Infeasible { mode });
    }
    let incumbent = solve(g, &SolveConfig::new(mode))?;
    let n = g.vertex_count();
    let mut deg_available = vec![0u32; n];
    for &(u, v) in g.edges() {
        deg_available[u as usize] += 1;
        deg_available[v as usize] += 1;
    }
    let mut bnb = Bnb {
        g,
        mode,
        max_nodes: budget.max_nodes,
        nodes: 0,
        best: incumbent.cost,
        best_set: incumbent.solution_set(),
        chosen: g.empty_edge_set(),
        available: full,
        deg_chosen: vec![0; n],
        deg_available,
        deficiency: 2 * n,
    };
    bnb.descend(0)?;
    Ok((bnb.best, bnb.best_set))
}

/// A lower-bound certificate for the cut LP dual: values `y_S >= 0` on proper
/// non-empty vertex subsets and `z_e >= 0` on edges. Feasibility requires
/// `sum over S separating e of y_S <= 1 + z_e` for every edge; the objective
/// `2 * sum y - sum z` then lower-bounds the LP optimum and hence the size of
/// every 2-ECSS, by weak duality.
#[derive(Clone, Debug, Default)]
pub struct DualCertificate {
    /// `(sorted vertex subset, value)` entries; subsets may repeat.
    pub y: Vec<(Vec<u32>, BigRational)>,
    /// `(edge id, value)` entries.
    pub z: Vec<(u32, BigRational)>,
}

impl DualCertificate {
    fn validate(&self, g: &Graph) -> Result<()> {
        let n = g.vertex_count();
        for (set, value) in &self.y {
            if set.is_empty() || set.len() >= n {
                return Err(Error::InvalidCertificate(
                    "y is only defined on proper non-empty vertex subsets".into(),
                ));
            }
            if set.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::InvalidCertificate(
                    "subset vertices must be strictly increasing".into(),
                ));
            }
            if set.last().copied().unwrap() as usize >= n {
                return Err(Error::InvalidCertificate("subset vertex out of range".into()));
            }
            if value.is_negative() {
                return Err(Error::InvalidCertificate("y values must be non-negative".into()));
            }
        }
        for &(e, ref value) in &self.z {
            if e as usize >= g.edge_count() {
                return Err(Error::InvalidCertificate(format!("unknown edge id {e}")));
            }
            if value.is_negative() {
                return Err(Error::InvalidCertificate("z values must be non-negative".into()));
            }
        }
        Ok(())
    }
}

/// Checks a dual certificate with exact rational arithmetic. Returns whether
/// every edge constraint holds and the certificate's objective value.
pub fn verify_dual(g: &Graph, cert: &DualCertificate) -> Result<(bool, BigRational)> {
    cert.validate(g)?;
    let mut slack: Vec<BigRational> = vec![BigRational::zero(); g.edge_count()];
    for (set, value) in &cert.y {
        for (id, &(u, v)) in g.edges().iter().enumerate() {
            let u_in = set.binary_search(&u).is_ok();
            let v_in = set.binary_search(&v).is_ok();
            if u_in != v_in {
                slack[id] += value;
            }
        }
    }
    let mut z_total: Vec<BigRational> = vec![BigRational::zero(); g.edge_count()];
    for &(e, ref value) in &cert.z {
        z_total[e as usize] += value;
    }
    let one = BigRational::one();
    let feasible = (0..g.edge_count()).all(|id| slack[id] <= &one + &z_total[id]);
    let y_sum: BigRational = cert.y.iter().map(|(_, v)| v.clone()).sum();
    let z_sum: BigRational = cert.z.iter().map(|(_, v)| v.clone()).sum();
    let objective = BigRational::from_integer(BigInt::from(2)) * y_sum - z_sum;
    Ok((feasible, objective))
}

/// Parses the certificate text format: lines `y v1,v2,...,vk p/q` and
/// `z u v p/q` (the edge given by its endpoints), `#` comments. Values are
/// exact rationals, `p` or `p/q`.
pub fn parse_certificate(text: &str, g: &Graph) -> Result<DualCertificate> {
    let mut cert = DualCertificate::default();
    for (line_no, raw) in text.lines().enumerate() {
        let line_no = line_no + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut parts = line.split_whitespace();
        let kind = parts.next().unwrap();
        match kind {
            "y" => {
                let set_str = parts.next().ok_or_else(|| Error::Parse {
                    line: line_no,
                    msg: "y line needs a vertex subset".into(),
                })?;
                let value_str = parts.next().ok_or_else(|| Error::Parse {
                    line: line_no,
                    msg: "y line needs a value".into(),
                })?;
                if parts.next().is_some() {
                    return Err(Error::Parse {
                        line: line_no,
                        msg: "y line must be \"y v1,...,vk p/q\"".into(),
                    });
                }
                let mut set = Vec::new();
                for tok in set_str.split(',') {
                    let v: u32 = tok.parse().map_err(|_| Error::Parse {
                        line: line_no,
                        msg: format!("invalid vertex {tok:?}"),
                    })?;
                    set.push(v);
                }
                set.sort_unstable();
                if set.windows(2).any(|w| w[0] == w[1]) {
                    return Err(Error::Parse {
                        line: line_no,
                        msg: "duplicate vertex in subset".into(),
                    });
                }
                cert.y.push((set, parse_rational(value_str, line_no)?));
            }
            "z" => {
                let u: u32 = parts
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| Error::Parse { line: line_no, msg: "z line needs \"z u v p/q\"".into() })?;
                let v: u32 = parts
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| Error::Parse { line: line_no, msg: "z line needs \"z u v p/q\"".into() })?;
                let value_str = parts.next().ok_or_else(|| Error::Parse {
                    line: line_no,
                    msg: "z line needs a value".into(),
                })?;
                if parts.next().is_some() {
                    return Err(Error::Parse {
                        line: line_no,
                        msg: "z line must be \"z u v p/q\"".into(),
                    });
                }
                let id = g.edge_id(u, v).ok_or_else(|| Error::Parse {
                    line: line_no,
                    msg: format!("({u}, {v}) is not an edge of the graph"),
                })?;
                cert.z.push((id, parse_rational(value_str, line_no)?));
            }
            other => {
                return Err(Error::Parse {
                    line: line_no,
                    msg: format!("unknown line kind {other:?}, expected \"y\" or \"z\""),
                });
            }
        }
    }
    Ok(cert)
}

fn parse_rational(tok: &str, line: usize) -> Result<BigRational> {
    let bad = |msg: &str| Error::Parse { line, msg: format!("{msg}: {tok:?}") };
    let (num_str, den_str) = match tok.split_once('/') {
        Some((n, d)) => (n, d),
        None => (tok, "1"),
    };
    let numer: BigInt = num_str.parse().map_err(|_| bad("invalid rational"))?;
    let denom: BigInt = den_str.parse().map_err(|_| bad("invalid rational"))?;
    if denom.is_zero() {
        return Err(bad("zero denominator"));
    }
    Ok(BigRational::new(numer, denom))
}

/// Renders a rational as `p/q` (always with an explicit denominator).
pub fn format_rational(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::is_2vcss;
    use crate::instances::{gen_complete, gen_cycle, gen_random_2connected, gen_tight, gen_theta};

    fn ratio(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn degree_bound_is_the_vertex_count() {
        assert_eq!(degree_lower_bound(&gen_cycle(7).unwrap()), 7);
        assert_eq!(degree_lower_bound(&gen_complete(4).unwrap()), 4);
        for k in 1..=4 {
            assert_eq!(degree_lower_bound(&gen_tight(k).unwrap()), 3 * k + 2);
        }
    }

    #[test]
    fn cycles_and_k4() {
        let c7 = gen_cycle(7).unwrap();
        for mode in [Mode::TwoEcss, Mode::TwoVcss] {
            let (opt, witness) = exact_min(&c7, mode, &Budget::default()).unwrap();
            assert_eq!(opt, 7);
            assert_eq!(witness.len(), 7);
        }
        let k4 = gen_complete(4).unwrap();
        for mode in [Mode::TwoEcss, Mode::TwoVcss] {
            let (opt, witness) = exact_min(&k4, mode, &Budget::default()).unwrap();
            assert_eq!(opt, 4);
            assert!(is_feasible(&k4, &witness, mode));
        }
    }

    #[test]
    fn tight_family_optimum() {
        for k in 1..=3 {
            let g = gen_tight(k).unwrap();
            for mode in [Mode::TwoEcss, Mode::TwoVcss] {
                let (opt, witness) = exact_min(&g, mode, &Budget::default()).unwrap();
                assert_eq!(opt, 3 * k + 2, "k={k} mode={mode}");
                assert!(is_feasible(&g, &witness, mode));
            }
        }
    }

    #[test]
    fn witness_is_minimal_and_modes_are_ordered() {
        for seed in 0..10u64 {
            let g = gen_random_2connected(7, 4, seed).unwrap();
            let (ecss, w_e) = exact_min(&g, Mode::TwoEcss, &Budget::default()).unwrap();
            let (vcss, w_v) = exact_min(&g, Mode::TwoVcss, &Budget::default()).unwrap();
            assert!(vcss >= ecss);
            assert!(ecss >= degree_lower_bound(&g));
            assert!(is_2vcss(&g, &w_v));
            for id in w_e.iter() {
                let mut smaller = w_e.clone();
                smaller.remove(id);
                assert!(!is_feasible(&g, &smaller, Mode::TwoEcss));
            }
        }
    }

    #[test]
    fn budget_is_enforced() {
        // theta(2,2,2) has optimum 6 > n = 5, so the root bound cannot prove
        // the incumbent optimal and the search must actually branch.
        let g = gen_theta(2, 2, 2).unwrap();
        let err = exact_min(&g, Mode::TwoEcss, &Budget { max_nodes: 5 });
        assert!(matches!(err, Err(Error::BudgetExceeded { budget: 5 })));
        let (opt, _) = exact_min(&g, Mode::TwoEcss, &Budget::default()).unwrap();
        assert_eq!(opt, 6);
    }

    #[test]
    fn infeasible_inputs_error() {
        let path = Graph::new(3, vec![(0, 1), (1, 2)]).unwrap();
        assert!(matches!(
            exact_min(&path, Mode::TwoEcss, &Budget::default()),
            Err(Error::Infeasible { .. })
        ));
        let bowtie = Graph::new(5, vec![(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)]).unwrap();
        assert!(matches!(
            exact_min(&bowtie, Mode::TwoVcss, &Budget::default()),
            Err(Error::Infeasible { .. })
        ));
        // ... but the bowtie has an exact 2-ECSS.
        let (opt, _) = exact_min(&bowtie, Mode::TwoEcss, &Budget::default()).unwrap();
        assert_eq!(opt, 6);
    }

    #[test]
    fn zero_certificate_is_feasible() {
        let g = gen_cycle(5).unwrap();
        let (feasible, objective) = verify_dual(&g, &DualCertificate::default()).unwrap();
        assert!(feasible);
        assert!(objective.is_zero());
    }

    #[test]
    fn singleton_certificate_on_cycles() {
        // y_{v} = 1/2 on every vertex: each edge lies in exactly two
        // singleton cuts, so every constraint is tight and the objective is n.
        let n = 6;
        let g = gen_cycle(n).unwrap();
        let cert = DualCertificate {
            y: (0..n as u32).map(|v| (vec![v], ratio(1, 2))).collect(),
            z: vec![],
        };
        let (feasible, objective) = verify_dual(&g, &cert).unwrap();
        assert!(feasible);
        assert_eq!(objective, ratio(n as i64, 1));
        // Weak duality against the exact optimum.
        let (opt, _) = exact_min(&g, Mode::TwoEcss, &Budget::default()).unwrap();
        assert!(objective <= ratio(opt as i64, 1));
    }

    #[test]
    fn infeasible_certificate_is_reported_not_errored() {
        let g = gen_cycle(4).unwrap();
        let cert = DualCertificate {
            y: (0..4u32).map(|v| (vec![v], ratio(2, 3))).collect(),
            z: vec![],
        };
        let (feasible, _) = verify_dual(&g, &cert).unwrap();
        assert!(!feasible);
        // Raising z on one edge repairs only that edge's constraint.
        let cert = DualCertificate {
            y: (0..4u32).map(|v| (vec![v], ratio(2, 3))).collect(),
            z: (0..4u32).map(|e| (e, ratio(1, 3))).collect(),
        };
        let (feasible, objective) = verify_dual(&g, &cert).unwrap();
        assert!(feasible);
        assert_eq!(objective, ratio(4, 1));
    }

    #[test]
    fn malformed_certificates_error() {
        let g = gen_cycle(4).unwrap();
        let empty_set = DualCertificate { y: vec![(vec![], ratio(1, 2))], z: vec![] };
        assert!(verify_dual(&g, &empty_set).is_err());
        let full_set = DualCertificate {
            y: vec![(vec![0, 1, 2, 3], ratio(1, 2))],
            z: vec![],
        };
        assert!(verify_dual(&g, &full_set).is_err());
        let negative = DualCertificate { y: vec![(vec![0], ratio(-1, 2))], z: vec![] };
        assert!(verify_dual(&g, &negative).is_err());
    }

    #[test]
    fn certificate_parsing_round_trip() {
        let g = gen_theta(1, 2, 2).unwrap();
        let text = "# lower bound for the theta graph\n\
                    y 0 1/2\n\
                    y 1 1/2\n\
                    y 2,3 1/4\n\
                    z 0 1 1/2\n";
        let cert = parse_certificate(text, &g).unwrap();
        assert_eq!(cert.y.len(), 3);
        assert_eq!(cert.z.len(), 1);
        let (feasible, objective) = verify_dual(&g, &cert).unwrap();
        assert!(feasible);
        assert_eq!(objective, ratio(2, 1));

        assert!(parse_certificate("y 0 1/0", &g).is_err());
        assert!(parse_certificate("z 2 3 1/2", &g).is_err()); // (2,3) is not an edge
        assert!(parse_certificate("w 0 1", &g).is_err());
        assert!(parse_certificate("y 0,0 1/2", &g).is_err());
    }

    #[test]
    fn segment_style_certificates() {
        // Segment-driven assignments: 3/4 on internal vertices of strong
        // short segments, z = 1/2 on the middle edge of each 3-segment, and
        // 1/2 on internal vertices of long segments.
        //
        // theta(2,2,2): three strong short 2-segments, internals 2, 3, 4.
        let g = gen_theta(2, 2, 2).unwrap();
        let cert = DualCertificate {
            y: [2u32, 3, 4].iter().map(|&v| (vec![v], ratio(3, 4))).collect(),
            z: vec![],
        };
        let (feasible, objective) = verify_dual(&g, &cert).unwrap();
        assert!(feasible);
        assert_eq!(objective, ratio(9, 2));
        let (opt, _) = exact_min(&g, Mode::TwoEcss, &Budget::default()).unwrap();
        assert_eq!(opt, 6);
        assert!(objective <= ratio(opt as i64, 1));

        // theta(3,3,2): the 3-segments need z = 1/2 on their middle edges to
        // keep the two adjacent 3/4 values feasible (3/2 <= 1 + 1/2, tight).
        let g = gen_theta(3, 3, 2).unwrap();
        let internals: Vec<u32> = (2..7).collect();
        let mid_a = g.edge_id(2, 3).unwrap();
        let mid_b = g.edge_id(4, 5).unwrap();
        let cert = DualCertificate {
            y: internals.iter().map(|&v| (vec![v], ratio(3, 4))).collect(),
            z: vec![(mid_a, ratio(1, 2)), (mid_b, ratio(1, 2))],
        };
        let (feasible, objective) = verify_dual(&g, &cert).unwrap();
        assert!(feasible);
        assert_eq!(objective, ratio(13, 2));
        let (opt, _) = exact_min(&g, Mode::TwoEcss, &Budget::default()).unwrap();
        assert_eq!(opt, 8); // every edge touches a degree-2 vertex
        assert!(objective <= ratio(opt as i64, 1));

        // Dropping the z values breaks feasibility on the middle edges.
        let cert = DualCertificate {
            y: internals.iter().map(|&v| (vec![v], ratio(3, 4))).collect(),
            z: vec![],
        };
        let (feasible, _) = verify_dual(&g, &cert).unwrap();
        assert!(!feasible);

        // Long segments take 1/2 per internal vertex: the cost-12 solution
        // of the k = 3 tight instance is three long segments whose nine
        // internals certify a bound of 9 <= opt = 11.
        let g = gen_tight(3).unwrap();
        let cert = DualCertificate {
            y: (2..11u32).map(|v| (vec![v], ratio(1, 2))).collect(),
            z: vec![],
        };
        let (feasible, objective) = verify_dual(&g, &cert).unwrap();
        assert!(feasible);
        assert_eq!(objective, ratio(9, 1));
        let (opt, _) = exact_min(&g, Mode::TwoEcss, &Budget::default()).unwrap();
        assert!(objective <= ratio(opt as i64, 1));
    }

    #[test]
    fn certificate_objective_respects_weak_duality() {
        // A mildly structured certificate on the k = 2 tight instance.
        let g = gen_tight(2).unwrap();
        let n = g.vertex_count() as u32;
        let cert = DualCertificate {
            y: (0..n).map(|v| (vec![v], ratio(1, 2))).collect(),
            z: vec![],
        };
        let (feasible, objective) = verify_dual(&g, &cert).unwrap();
        assert!(feasible);
        let (opt, _) = exact_min(&g, Mode::TwoEcss, &Budget::default()).unwrap();
        assert!(objective <= ratio(opt as i64, 1));
        assert_eq!(objective, ratio(8, 1)); // and here it is tight: opt = 8
    }
}
