//! Benchmark suites: per-instance rows plus exact-arithmetic ratio
//! aggregates. The run fails (nonzero exit) if any instance with a known
//! optimum exceeds the 4/3 ratio.

use std::process::ExitCode;
use std::time::Instant;

use serde::Serialize;

use twoconn::instances::{gen_cycle, gen_random_2connected, gen_tight};
use twoconn::oracle::{exact_min, Budget};
use twoconn::rng::SplitMix64;
use twoconn::{solve, Error, Graph, Mode, SolveConfig};

#[derive(Serialize)]
struct Row {
    label: String,
    mode: String,
    n: usize,
    m: usize,
    cost: usize,
    opt: Option<usize>,
    ratio: Option<String>,
    oracle_timeout: bool,
    time_ms: f64,
}

#[derive(Serialize)]
struct BenchReport {
    suite: String,
    seed: u64,
    rows: Vec<Row>,
    max_ratio: Option<String>,
    mean_ratio: Option<f64>,
    violations: usize,
    oracle_timeouts: usize,
}

struct Case {
    label: String,
    graph: Graph,
    mode: Mode,
    run_oracle: bool,
}

/// 300 seeded instances with n in [5, 10] and m <= 20, both modes each.
fn small_suite(seed: u64) -> Vec<Case> {
    let mut cases = Vec::new();
    for i in 0..300u64 {
        let mut rng = SplitMix64::new(seed.wrapping_add(i));
        let n = 5 + (rng.below(6)) as usize;
        let max_extra = (20 - n).min(n * (n - 1) / 2 - n);
        let extra = rng.below(max_extra as u64 + 1) as usize;
        let g = gen_random_2connected(n, extra, rng.next_u64()).expect("valid parameters");
        for mode in [Mode::TwoEcss, Mode::TwoVcss] {
            cases.push(Case {
                label: format!("small-{i:03}"),
                graph: g.clone(),
                mode,
                run_oracle: true,
            });
        }
    }
    cases
}

fn tight_suite() -> Vec<Case> {
    let mut cases = Vec::new();
    for k in 1..=4usize {
        let g = gen_tight(k).expect("k >= 1");
        for mode in [Mode::TwoEcss, Mode::TwoVcss] {
            cases.push(Case {
                label: format!("tight-k{k}"),
                graph: g.clone(),
                mode,
                run_oracle: true,
            });
        }
    }
    cases
}

fn scaling_suite(seed: u64) -> Vec<Case> {
    let mut cases = Vec::new();
    for n in [100usize, 250, 500, 1000] {
        cases.push(Case {
            label: format!("cycle-{n}"),
            graph: gen_cycle(n).expect("n >= 3"),
            mode: Mode::TwoEcss,
            run_oracle: false,
        });
    }
    cases.push(Case {
        label: "random-1000".into(),
        graph: gen_random_2connected(1000, 2000, seed).expect("valid parameters"),
        mode: Mode::TwoVcss,
        run_oracle: false,
    });
    cases
}

pub(crate) fn cmd_bench(suite: &str, seed: u64, json: bool) -> Result<ExitCode, Error> {
    let cases = match suite {
        "small" => small_suite(seed),
        "tight" => tight_suite(),
        "scaling" => scaling_suite(seed),
        other => {
            return Err(Error::InvalidParameter(format!(
                "unknown suite {other:?}; expected small, tight, or scaling"
            )))
        }
    };

    let mut rows = Vec::with_capacity(cases.len());
    let mut violations = 0usize;
    let mut timeouts = 0usize;
    for case in &cases {
        let start = Instant::now();
        let report = solve(&case.graph, &SolveConfig::new(case.mode))?;
        let (opt, oracle_timeout) = if case.run_oracle {
            match exact_min(&case.graph, case.mode, &Budget::default()) {
                Ok((opt, _)) => (Some(opt), false),
                Err(Error::BudgetExceeded { .. }) => {
                    timeouts += 1;
                    (None, true)
                }
                Err(e) => return Err(e),
            }
        } else {
            (None, false)
        };
        let time_ms = start.elapsed().as_secs_f64() * 1e3;
        let ratio = opt.map(|o| crate::ratio_string(report.cost, o));
        if let Some(o) = opt {
            if !crate::ratio_within_four_thirds(report.cost, o) {
                violations += 1;
            }
        }
        rows.push(Row {
            label: case.label.clone(),
            mode: case.mode.to_string(),
            n: case.graph.vertex_count(),
            m: case.graph.edge_count(),
            cost: report.cost,
            opt,
            ratio,
            oracle_timeout,
            time_ms,
        });
    }

    // Aggregates over rows with a known optimum, by exact comparison.
    let resolved: Vec<(usize, usize)> = rows
        .iter()
        .filter_map(|r| r.opt.map(|o| (r.cost, o)))
        .collect();
    let max_ratio = resolved
        .iter()
        .copied()
        .max_by(|&(c1, o1), &(c2, o2)| (c1 * o2).cmp(&(c2 * o1)))
        .map(|(c, o)| crate::ratio_string(c, o));
    let mean_ratio = if resolved.is_empty() {
        None
    } else {
        Some(
            resolved.iter().map(|&(c, o)| c as f64 / o as f64).sum::<f64>()
                / resolved.len() as f64,
        )
    };

    let report = BenchReport {
        suite: suite.to_string(),
        seed,
        rows,
        max_ratio,
        mean_ratio,
        violations,
        oracle_timeouts: timeouts,
    };

    if json {
        println!("{}", serde_json::to_string(&report).expect("report serializes"));
    } else {
        println!(
            "{:<14} {:<6} {:>5} {:>5} {:>5} {:>5} {:>8} {:>9}",
            "instance", "mode", "n", "m", "cost", "opt", "ratio", "time"
        );
        for r in &report.rows {
            println!(
                "{:<14} {:<6} {:>5} {:>5} {:>5} {:>5} {:>8} {:>7.1}ms",
                r.label,
                r.mode,
                r.n,
                r.m,
                r.cost,
                r.opt.map_or_else(
                    || if r.oracle_timeout { "t/o".into() } else { "-".to_string() },
                    |o| o.to_string()
                ),
                r.ratio.as_deref().unwrap_or("-"),
                r.time_ms,
            );
        }
        println!(
            "aggregate: {} rows, max ratio {}, mean ratio {}, {} violations, {} oracle timeouts",
            report.rows.len(),
            report.max_ratio.as_deref().unwrap_or("-"),
            report
                .mean_ratio
                .map_or_else(|| "-".to_string(), |m| format!("{m:.4}")),
            report.violations,
            report.oracle_timeouts,
        );
    }

    if report.violations > 0 {
        eprintln!("error: {} instances exceeded the 4/3 ratio", report.violations);
        return Ok(ExitCode::FAILURE);
    }
    Ok(ExitCode::SUCCESS)
}
