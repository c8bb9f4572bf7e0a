//! Timed execution of cells and whole plans.

use std::hint::black_box;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use crate::csp::{solve_instrumented, AlgorithmId, CspRequest, CspSolution, EngineMode, Telemetry};
use crate::graph::{build_grid, Graph};

use super::sample::RequestSampler;
use super::{derive_seed, grid_spec_for, BenchError, Bucket, DelayLevel, MeasurementRecord, Plan};

struct CellKey {
    grid_n: u32,
    bucket: Bucket,
    level: DelayLevel,
}

fn timed_solve(
    alg: AlgorithmId,
    g: &Graph,
    req: &CspRequest,
    mode: EngineMode,
) -> (Option<CspSolution>, Telemetry, u64) {
    let started = Instant::now();
    let out = black_box(solve_instrumented(alg, black_box(g), black_box(req), mode));
    let elapsed = started.elapsed().as_nanos().max(1) as u64;
    (out.0, out.1, elapsed)
}

fn run_requests(
    graphs: &[Graph],
    assignment: &[(usize, CspRequest)],
    alg: AlgorithmId,
    warmup: usize,
    key: &CellKey,
) -> Vec<MeasurementRecord> {
    let mut records = Vec::with_capacity(assignment.len().saturating_sub(warmup));
    for (i, (graph_idx, req)) in assignment.iter().enumerate() {
        let g = &graphs[*graph_idx];
        // Alternate which mode runs first so neither systematically
        // benefits from cache or frequency effects.
        let plain_first = i % 2 == 0;
        let first_mode = if plain_first { EngineMode::Plain } else { EngineMode::Bounded };
        let second_mode = if plain_first { EngineMode::Bounded } else { EngineMode::Plain };
        let first = timed_solve(alg, g, req, first_mode);
        let second = timed_solve(alg, g, req, second_mode);
        let (plain, bounded) = if plain_first { (first, second) } else { (second, first) };

        if i < warmup {
            continue;
        }
        let (plain_sol, plain_tel, t_plain_ns) = plain;
        let (bounded_sol, bounded_tel, t_bounded_ns) = bounded;
        let outputs_equal = match (&plain_sol, &bounded_sol) {
            (Some(a), Some(b)) => a.path == b.path,
            (None, None) => true,
            _ => false,
        };
        let attrs = bounded_sol.as_ref().map(|s| s.attrs);
        records.push(MeasurementRecord {
            algorithm: alg,
            grid_n: key.grid_n,
            bucket_lo_pct: key.bucket.lo_pct(),
            bucket_hi_pct: key.bucket.hi_pct(),
            delay_level: key.level,
            request_id: i as u64,
            src: req.src,
            dst: req.dst,
            delay_bound: req.delay_bound,
            t_plain_ns,
            t_bounded_ns,
            plain_pushes: plain_tel.stats.pushes,
            plain_pops: plain_tel.stats.pops,
            bounded_pushes: bounded_tel.stats.pushes,
            bounded_pops: bounded_tel.stats.pops,
            outputs_equal,
            path_cost: attrs.map(|a| a.cost),
            path_delay: attrs.map(|a| a.delay),
        });
    }
    records
}

/// Times one algorithm over one graph and request list (warm-up prefix
/// included); emits one record per post-warm-up request, tagged with the
/// given bucket and level. Timing runs strictly sequentially on the
/// calling thread.
pub fn run_cell(
    g: &Graph,
    alg: AlgorithmId,
    requests: &[CspRequest],
    warmup: usize,
    bucket: Bucket,
    level: DelayLevel,
) -> Vec<MeasurementRecord> {
    let spec = g.grid_spec().expect("cells run on grid graphs");
    let key = CellKey { grid_n: spec.n, bucket, level };
    let assignment: Vec<(usize, CspRequest)> = requests.iter().map(|r| (0, *r)).collect();
    run_requests(std::slice::from_ref(g), &assignment, alg, warmup, &key)
}

struct PreparedCell {
    key: CellKey,
    graphs: Vec<Graph>,
    assignment: Vec<(usize, CspRequest)>,
    warmup: usize,
}

fn prepare_cell(plan: &Plan, key: CellKey) -> Result<PreparedCell, BenchError> {
    let n = key.grid_n;
    let graphs = (0..plan.graphs_per_cell)
        .map(|gi| build_grid(grid_spec_for(plan.master_seed, n, gi)))
        .collect::<Result<Vec<_>, _>>()?;

    let salts = [
        u64::from(n),
        u64::from(key.bucket.lo_pct()),
        u64::from(key.bucket.hi_pct()),
        u64::from(key.level.code()),
    ];
    let mut sampler = RequestSampler::new(
        graphs[0].grid_spec().expect("grids carry their spec"),
        key.bucket,
        key.level,
        derive_seed(plan.master_seed, "pairs", &salts),
        derive_seed(plan.master_seed, "delta", &salts),
    )?;

    let (count, warmup) = plan.cell_counts(key.bucket);
    let mut budget = 10 * count;
    let mut assignment = Vec::with_capacity(count);
    while assignment.len() < count {
        let graph_idx = assignment.len() % plan.graphs_per_cell;
        let sampled = sampler.sample(&graphs[graph_idx], &mut budget)?;
        assignment.push((graph_idx, sampled.request));
    }
    Ok(PreparedCell { key, graphs, assignment, warmup })
}

/// Runs the whole plan: every (grid size, bucket, level) cell, every
/// algorithm. Cells are distributed over `plan.jobs` worker threads;
/// request generation is untimed and the two timed executions per request
/// stay sequential within their thread. Records come back in
/// deterministic cell-then-algorithm order regardless of thread count.
pub fn run_plan(plan: &Plan) -> Result<Vec<MeasurementRecord>, BenchError> {
    plan.validate()?;
    let mut cells = Vec::new();
    for &n in &plan.grid_sizes {
        for &bucket in &plan.buckets {
            for &level in &plan.levels {
                cells.push(CellKey { grid_n: n, bucket, level });
            }
        }
    }

    let total = cells.len();
    let next = AtomicUsize::new(0);
    let done = AtomicUsize::new(0);
    let results: Mutex<Vec<(usize, Vec<MeasurementRecord>)>> = Mutex::new(Vec::new());
    let failure: Mutex<Option<BenchError>> = Mutex::new(None);
    // At most one cell times per core; a cell's own timing is sequential.
    let cores = std::thread::available_parallelism().map(usize::from).unwrap_or(1);
    let workers = plan.jobs.min(cores).min(total.max(1));

    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let idx = next.fetch_add(1, Ordering::Relaxed);
                if idx >= total || failure.lock().unwrap().is_some() {
                    return;
                }
                let key = CellKey {
                    grid_n: cells[idx].grid_n,
                    bucket: cells[idx].bucket,
                    level: cells[idx].level,
                };
                match prepare_cell(plan, key) {
                    Ok(cell) => {
                        let mut records = Vec::new();
                        for &alg in &plan.algorithms {
                            records.extend(run_requests(
                                &cell.graphs,
                                &cell.assignment,
                                alg,
                                cell.warmup,
                                &cell.key,
                            ));
                        }
                        if plan.progress {
                            let finished = done.fetch_add(1, Ordering::Relaxed) + 1;
                            eprintln!(
                                "cell {finished}/{total}: n={} bucket={} level={} ({} records)",
                                cell.key.grid_n,
                                cell.key.bucket,
                                cell.key.level,
                                records.len()
                            );
                        }
                        results.lock().unwrap().push((idx, records));
                    }
                    Err(e) => {
                        failure.lock().unwrap().get_or_insert(e);
                        return;
                    }
                }
            });
        }
    });

    if let Some(e) = failure.into_inner().unwrap() {
        return Err(e);
    }
    let mut per_cell = results.into_inner().unwrap();
    per_cell.sort_by_key(|(idx, _)| *idx);
    Ok(per_cell.into_iter().flat_map(|(_, r)| r).collect())
}
