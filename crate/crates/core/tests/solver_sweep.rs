//! Broad seeded sweep of the full solver on instances larger than the
//! oracle's reach: output feasibility, inclusion-wise minimality, telemetry
//! monotonicity, and cross-order sanity.

use twoconn::instances::gen_random_2connected;
use twoconn::rng::SplitMix64;
use twoconn::segments::{decompose, Decomposition, LengthClass};
use twoconn::{is_feasible, solve, DeletionOrder, Mode, SolveConfig};

#[test]
fn seeded_sweep_mixed_sizes_and_orders() {
    for i in 0..60u64 {
        let mut rng = SplitMix64::new(0x5EED_u64.wrapping_add(i));
        let n = 10 + rng.below(15) as usize; // 10..=24
        let max_extra = n * (n - 1) / 2 - n;
        let extra = (rng.below(2 * n as u64)) as usize;
        let extra = extra.min(max_extra);
        let g = gen_random_2connected(n, extra, rng.next_u64()).unwrap();
        for order in [
            DeletionOrder::Ascending,
            DeletionOrder::Shuffled { seed: i * 3 + 1 },
        ] {
            for mode in [Mode::TwoEcss, Mode::TwoVcss] {
                let config = SolveConfig { mode, order, max_depth: None };
                let report = solve(&g, &config).unwrap();
                let f = report.solution_set();
                assert!(is_feasible(&g, &f, mode));
                for id in report.solution.iter().copied() {
                    let mut smaller = f.clone();
                    smaller.remove(id);
                    assert!(
                        !is_feasible(&g, &smaller, mode),
                        "sweep {i} mode {mode}: edge {id} removable"
                    );
                }
                assert!(report.cost >= n);
                assert!(report.cost + report.improvement_count <= report.initial_cost);
                if mode == Mode::TwoEcss {
                    if let Decomposition::Segments(segs) = decompose(&g, &f) {
                        for s in &segs {
                            assert!(
                                !(s.is_closed() && LengthClass::of(s.len()) == LengthClass::Short)
                            );
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn depth_cap_still_produces_valid_solutions() {
    for i in 0..20u64 {
        let g = gen_random_2connected(12, 9, 0xD_E9_u64 + i).unwrap();
        for depth in [Some(0), Some(1), None] {
            let config = SolveConfig {
                mode: Mode::TwoVcss,
                order: DeletionOrder::Ascending,
                max_depth: depth,
            };
            let report = solve(&g, &config).unwrap();
            assert!(is_feasible(&g, &report.solution_set(), Mode::TwoVcss));
        }
    }
}
