//! Acceptance suite: one test per criterion, each printing a PASS line
//! with the measured values behind it.
//!
//! Timing-based criteria share workload datasets (built once) and a
//! global lock so measurements never run concurrently with one another.

mod common;

use std::sync::{Mutex, MutexGuard, OnceLock};

use bdroute_core::bench::{
    run_plan, summarize, verify_equality, Bucket, DelayLevel, GroupBy, MeasurementRecord, Plan,
    RatioSummary,
};
use bdroute_core::csp::AlgorithmId;
use bdroute_core::engine::{
    bellman_ford, bounded_dijkstra, bounded_dijkstra_traced, chong_ksp, chong_ksp_traced,
    dijkstra, Bound, WeightFn,
};
use bdroute_core::graph::NodeId;
use common::{enumerated_distances, random_graph};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

static TIMING_LOCK: Mutex<()> = Mutex::new(());

fn timing_lock() -> MutexGuard<'static, ()> {
    TIMING_LOCK.lock().unwrap_or_else(|poisoned| poisoned.into_inner())
}

fn base_plan() -> Plan {
    Plan {
        master_seed: 2024,
        jobs: 1,
        progress: false,
        ..Plan::default()
    }
}

/// LDP over every grid size and level, distance aggregated (criteria 4, 5).
fn ldp_level_records() -> &'static Vec<MeasurementRecord> {
    static DS: OnceLock<Vec<MeasurementRecord>> = OnceLock::new();
    DS.get_or_init(|| {
        let plan = Plan {
            algorithms: vec![AlgorithmId::Ldp],
            grid_sizes: (6..=20).collect(),
            buckets: vec![Bucket::aggregate()],
            levels: DelayLevel::all(),
            aggregate_requests: 500,
            aggregate_warmup: 50,
            ..base_plan()
        };
        run_plan(&plan).expect("ldp level workload")
    })
}

/// LDP, IAK and DCUR over every grid size and level (criteria 6, 7).
fn trio_level_records() -> &'static Vec<MeasurementRecord> {
    static DS: OnceLock<Vec<MeasurementRecord>> = OnceLock::new();
    DS.get_or_init(|| {
        let plan = Plan {
            algorithms: vec![AlgorithmId::Ldp, AlgorithmId::Iak, AlgorithmId::Dcur],
            grid_sizes: (6..=20).collect(),
            buckets: vec![Bucket::aggregate()],
            levels: DelayLevel::all(),
            aggregate_requests: 300,
            aggregate_warmup: 30,
            ..base_plan()
        };
        run_plan(&plan).expect("trio level workload")
    })
}

/// The favorable case: n=20, 0-10% bucket, infeasible level (criterion 8).
fn favorable_records() -> &'static Vec<MeasurementRecord> {
    static DS: OnceLock<Vec<MeasurementRecord>> = OnceLock::new();
    DS.get_or_init(|| {
        let plan = Plan {
            algorithms: vec![AlgorithmId::Dcur, AlgorithmId::Iak, AlgorithmId::HMcop],
            grid_sizes: vec![20],
            buckets: vec![Bucket::new(0, 10).unwrap()],
            levels: vec![DelayLevel::Infeasible],
            requests_per_cell: 300,
            warmup_per_cell: 30,
            ..base_plan()
        };
        run_plan(&plan).expect("favorable workload")
    })
}

/// Aggregate-distance infeasible workload on n=20 (criterion 3).
fn infeasible_n20_records() -> &'static Vec<MeasurementRecord> {
    static DS: OnceLock<Vec<MeasurementRecord>> = OnceLock::new();
    DS.get_or_init(|| {
        let plan = Plan {
            algorithms: vec![AlgorithmId::Iak, AlgorithmId::Dcur, AlgorithmId::HMcop],
            grid_sizes: vec![20],
            buckets: vec![Bucket::aggregate()],
            levels: vec![DelayLevel::Infeasible],
            aggregate_requests: 200,
            aggregate_warmup: 20,
            ..base_plan()
        };
        run_plan(&plan).expect("infeasible n20 workload")
    })
}

fn mean_of(summaries: &[RatioSummary], alg: AlgorithmId, value: &str) -> f64 {
    summaries
        .iter()
        .find(|s| s.algorithm == alg && s.group_value == value)
        .unwrap_or_else(|| panic!("missing summary for {alg} {value}"))
        .mean
}

fn level_means(records: &[MeasurementRecord], alg: AlgorithmId) -> Vec<(String, f64)> {
    summarize(records, GroupBy::DelayLevel)
        .into_iter()
        .filter(|s| s.algorithm == alg)
        .map(|s| (s.group_value, s.mean))
        .collect()
}

#[test]
fn criterion_01_output_invariance_across_the_full_grid_workload() {
    let _guard = timing_lock();
    let plan = Plan {
        algorithms: AlgorithmId::ALL.to_vec(),
        grid_sizes: vec![6, 8, 10],
        buckets: Bucket::deciles(),
        levels: DelayLevel::all(),
        requests_per_cell: 200,
        warmup_per_cell: 0,
        jobs: 2,
        ..base_plan()
    };
    let records = run_plan(&plan).expect("invariance workload");
    let expected = 6 * 3 * 10 * 8 * 200;
    assert_eq!(records.len(), expected);
    let mismatches = verify_equality(&records);
    assert!(
        mismatches.is_empty(),
        "plain/bounded outputs diverged: {:?}",
        &mismatches[..mismatches.len().min(5)]
    );
    // Dominance is free to check here and must hold on every record.
    for r in &records {
        assert!(r.bounded_pushes <= r.plain_pushes && r.bounded_pops <= r.plain_pops);
    }
    println!(
        "criterion 1 PASS: {} records over 6 algorithms x n in {{6,8,10}} x 10 buckets x 8 levels, 0 mismatches",
        records.len()
    );
}

#[test]
fn criterion_02_bounded_search_equals_enumeration_oracle() {
    let mut rng = StdRng::seed_from_u64(0xacce);
    let mut sp_checked = 0u64;
    for _ in 0..2000 {
        let g = random_graph(&mut rng, 10);
        let root = NodeId(rng.random_range(0..g.node_count() as u32));
        let w = if rng.random_bool(0.5) { WeightFn::Cost } else { WeightFn::Delay };
        let oracle = enumerated_distances(&g, root, w);
        let finite_max = oracle
            .iter()
            .copied()
            .filter(|d| d.is_finite())
            .fold(0.0f64, f64::max);
        let bound = rng.random_range(0.0..finite_max.max(0.5) * 1.2);

        // SPT route: every node, exact filter semantics.
        let spt = bounded_dijkstra(&g, root, w, Bound::Finite(bound), None);
        for v in g.nodes() {
            let expected = if oracle[v.index()] <= bound {
                oracle[v.index()]
            } else {
                f64::INFINITY
            };
            assert_eq!(spt.dist(v), expected, "SPT node {v}");
        }

        // SP route: bounded target run against the enumerated optimum.
        let target = NodeId(rng.random_range(0..g.node_count() as u32));
        let sp = bounded_dijkstra(&g, root, w, Bound::Finite(bound), Some(target));
        if oracle[target.index()] <= bound {
            assert_eq!(sp.dist(target), oracle[target.index()]);
            assert!(sp.extract_path(target).is_some());
        } else {
            assert_eq!(sp.extract_path(target), None);
        }
        sp_checked += 1;
    }
    println!("criterion 2 PASS: 2000 random graphs, SP+SPT equal the enumeration oracle ({sp_checked} SP targets)");
}

#[test]
fn criterion_03_structural_dominance_and_infeasible_pop_savings() {
    let _guard = timing_lock();
    for dataset in [
        ldp_level_records(),
        trio_level_records(),
        favorable_records(),
        infeasible_n20_records(),
    ] {
        for r in dataset {
            assert!(
                r.bounded_pushes <= r.plain_pushes && r.bounded_pops <= r.plain_pops,
                "dominance violated: {r:?}"
            );
        }
    }
    let records = infeasible_n20_records();
    for alg in [AlgorithmId::Iak, AlgorithmId::Dcur, AlgorithmId::HMcop] {
        let ratios: Vec<f64> = records
            .iter()
            .filter(|r| r.algorithm == alg)
            .map(|r| r.plain_pops as f64 / (r.bounded_pops.max(1)) as f64)
            .collect();
        assert!(!ratios.is_empty());
        let mean = ratios.iter().sum::<f64>() / ratios.len() as f64;
        assert!(
            mean >= 3.0,
            "{alg}: mean pop ratio {mean:.2} below 3 at the infeasible level on n=20"
        );
        println!(
            "criterion 3 PASS ({alg}): mean plain/bounded pop ratio {mean:.1} >= 3 on n=20 infeasible"
        );
    }
}

#[test]
fn criterion_04_ldp_infeasible_speedup_dominates_feasible_levels() {
    let _guard = timing_lock();
    let means = level_means(ldp_level_records(), AlgorithmId::Ldp);
    let infeasible = means
        .iter()
        .find(|(v, _)| v == "infeasible")
        .map(|(_, m)| *m)
        .expect("infeasible summary");
    assert!(
        infeasible > 1.5,
        "LDP infeasible mean ratio {infeasible:.3} must exceed 1.5"
    );
    for (value, mean) in &means {
        if value != "infeasible" {
            assert!(
                infeasible > *mean,
                "LDP infeasible mean {infeasible:.3} not above level {value} mean {mean:.3}"
            );
        }
    }
    println!(
        "criterion 4 PASS: LDP infeasible mean ratio {infeasible:.2} > 1.5 and above all feasible levels ({:?})",
        means
            .iter()
            .filter(|(v, _)| v != "infeasible")
            .map(|(v, m)| format!("{v}:{m:.2}"))
            .collect::<Vec<_>>()
    );
}

#[test]
fn criterion_05_ldp_feasible_levels_are_timing_neutral() {
    let _guard = timing_lock();
    let means = level_means(ldp_level_records(), AlgorithmId::Ldp);
    for (value, mean) in &means {
        if value != "infeasible" {
            assert!(
                (0.7..=1.3).contains(mean),
                "LDP level {value} mean ratio {mean:.3} outside [0.7, 1.3]"
            );
        }
    }
    println!(
        "criterion 5 PASS: LDP feasible-level mean ratios within [0.7, 1.3]: {:?}",
        means
            .iter()
            .filter(|(v, _)| v != "infeasible")
            .map(|(v, m)| format!("{v}:{m:.2}"))
            .collect::<Vec<_>>()
    );
}

#[test]
fn criterion_06_spt_algorithms_benefit_more_than_sp_algorithms() {
    let _guard = timing_lock();
    let records = trio_level_records();
    let by_level = summarize(records, GroupBy::DelayLevel);
    let iak_inf = mean_of(&by_level, AlgorithmId::Iak, "infeasible");
    let ldp_inf = mean_of(&by_level, AlgorithmId::Ldp, "infeasible");
    assert!(
        iak_inf > ldp_inf,
        "IAK infeasible mean {iak_inf:.3} must exceed LDP's {ldp_inf:.3}"
    );

    let overall = summarize(records, GroupBy::All);
    let dcur = mean_of(&overall, AlgorithmId::Dcur, "all");
    let iak = mean_of(&overall, AlgorithmId::Iak, "all");
    let ldp = mean_of(&overall, AlgorithmId::Ldp, "all");
    assert!(
        dcur > iak && iak > ldp,
        "aggregated ordering violated: dcur {dcur:.3}, iak {iak:.3}, ldp {ldp:.3}"
    );
    println!(
        "criterion 6 PASS: infeasible IAK {iak_inf:.2} > LDP {ldp_inf:.2}; aggregated DCUR {dcur:.2} > IAK {iak:.2} > LDP {ldp:.2}"
    );
}

#[test]
fn criterion_07_iak_is_beneficial_at_every_level() {
    let _guard = timing_lock();
    let means = level_means(trio_level_records(), AlgorithmId::Iak);
    assert_eq!(means.len(), 8);
    for (value, mean) in &means {
        assert!(
            *mean > 1.0,
            "IAK mean ratio {mean:.3} at level {value} is not above 1.0"
        );
    }
    println!(
        "criterion 7 PASS: IAK mean ratio above 1.0 at every level: {:?}",
        means.iter().map(|(v, m)| format!("{v}:{m:.2}")).collect::<Vec<_>>()
    );
}

#[test]
fn criterion_08_favorable_case_amplification() {
    let _guard = timing_lock();
    let overall = summarize(favorable_records(), GroupBy::All);
    for alg in [AlgorithmId::Dcur, AlgorithmId::Iak, AlgorithmId::HMcop] {
        let mean = mean_of(&overall, alg, "all");
        assert!(
            mean >= 5.0,
            "{alg}: favorable-case mean ratio {mean:.2} below 5 (n=20, 0-10% bucket, infeasible)"
        );
        println!("criterion 8 PASS ({alg}): favorable-case mean ratio {mean:.1} >= 5");
    }
}

#[test]
fn criterion_09_ldp_benefit_decays_with_distance() {
    let _guard = timing_lock();
    let plan = Plan {
        algorithms: vec![AlgorithmId::Ldp],
        grid_sizes: (6..=20).collect(),
        buckets: vec![Bucket::new(0, 10).unwrap(), Bucket::new(80, 90).unwrap()],
        levels: vec![DelayLevel::Level(1)],
        requests_per_cell: 300,
        warmup_per_cell: 30,
        ..base_plan()
    };
    let records = run_plan(&plan).expect("distance workload");
    let by_bucket = summarize(&records, GroupBy::Bucket);
    let near = mean_of(&by_bucket, AlgorithmId::Ldp, "0-10");
    let far = mean_of(&by_bucket, AlgorithmId::Ldp, "80-90");
    assert!(
        near > far,
        "first-feasible-level LDP: near-bucket mean {near:.3} not above far-bucket mean {far:.3}"
    );
    println!("criterion 9 PASS: LDP level-1 mean ratio {near:.2} (0-10%) > {far:.2} (80-90%)");
}

#[test]
fn criterion_10_engine_agreement() {
    let mut rng = StdRng::seed_from_u64(0xe791);
    for _ in 0..1000 {
        let g = random_graph(&mut rng, 10);
        let root = NodeId(rng.random_range(0..g.node_count() as u32));
        let w = if rng.random_bool(0.5) { WeightFn::Cost } else { WeightFn::Delay };
        let bound = if rng.random_bool(0.5) {
            Bound::Finite(rng.random_range(0.5..6.0))
        } else {
            Bound::Unbounded
        };

        let dj = bounded_dijkstra(&g, root, w, bound, None);
        let bf = bellman_ford(&g, root, w, bound);
        for v in g.nodes() {
            assert_eq!(bf.dist(v), dj.dist(v), "bellman-ford vs dijkstra at {v}");
        }

        let k1 = chong_ksp(&g, root, 1, w, Bound::Unbounded, None);
        let plain = dijkstra(&g, root, w, None);
        for v in g.nodes() {
            let expected = if plain.reached(v) { vec![plain.dist(v)] } else { vec![] };
            assert_eq!(k1.dists(v), expected, "chong k=1 vs dijkstra at {v}");
        }

        for k in [2usize, 4] {
            let b = rng.random_range(0.5..6.0);
            let unbounded = chong_ksp(&g, root, k, w, Bound::Unbounded, None);
            let bounded = chong_ksp(&g, root, k, w, Bound::Finite(b), None);
            for v in g.nodes() {
                let expected: Vec<f64> =
                    unbounded.dists(v).into_iter().filter(|&d| d <= b).collect();
                assert_eq!(bounded.dists(v), expected, "chong k={k} filter at {v}");
            }
        }
    }
    println!("criterion 10 PASS: 1000 instances, Bellman-Ford/Dijkstra/Chong agreement exact");
}

#[test]
fn criterion_11_pop_order_monotonicity() {
    let mut rng = StdRng::seed_from_u64(0x9010);
    let mut per_engine = [0u32; 3];
    for _ in 0..1000 {
        let g = random_graph(&mut rng, 10);
        let root = NodeId(rng.random_range(0..g.node_count() as u32));
        let w = if rng.random_bool(0.5) { WeightFn::Cost } else { WeightFn::Delay };
        let target = if rng.random_bool(0.3) {
            Some(NodeId(rng.random_range(0..g.node_count() as u32)))
        } else {
            None
        };

        let (_, trace) = bounded_dijkstra_traced(&g, root, w, Bound::Unbounded, target);
        assert!(trace.windows(2).all(|p| p[0] <= p[1]), "dijkstra trace {trace:?}");
        per_engine[0] += 1;

        let (_, trace) =
            bounded_dijkstra_traced(&g, root, w, Bound::Finite(rng.random_range(0.5..6.0)), target);
        assert!(trace.windows(2).all(|p| p[0] <= p[1]), "bounded trace {trace:?}");
        per_engine[1] += 1;

        let (_, trace) = chong_ksp_traced(&g, root, 3, w, Bound::Unbounded, target);
        assert!(trace.windows(2).all(|p| p[0] <= p[1]), "chong trace {trace:?}");
        per_engine[2] += 1;
    }
    println!(
        "criterion 11 PASS: non-stale popped keys nondecreasing over {}/{}/{} searches (dijkstra/bounded/chong)",
        per_engine[0], per_engine[1], per_engine[2]
    );
}
