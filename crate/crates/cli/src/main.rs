//! Command-line front end: workload generation, paired benchmark runs,
//! ratio reports and output-equality verification.
//!
//! Exit codes: 0 on success (and all outputs equal), 1 on usage errors,
//! 2 on runtime or verification failures.

use std::fs::File;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use bdroute_core::bench::{
    derive_seed, grid_spec_for, read_measurements, run_plan, summarize, verify_equality,
    write_measurements, write_requests, write_summaries, Bucket, DelayLevel, GroupBy, Plan,
    RequestRecord, RequestSampler,
};
use bdroute_core::csp::AlgorithmId;
use bdroute_core::graph::{build_grid, save_graph};

#[derive(Parser)]
#[command(
    name = "bdroute",
    about = "Constrained shortest-path routing benchmark toolkit",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write grid graph files and, optionally, a request CSV.
    Gen(GenArgs),
    /// Time every algorithm in Plain and Bounded mode over a workload.
    Run(RunArgs),
    /// Summarize a measurement CSV into trimmed ratio statistics.
    Report(ReportArgs),
    /// Check that plain and bounded outputs were identical.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct GenArgs {
    /// Grid side length or range, e.g. `6` or `6..20`.
    #[arg(long, value_parser = parse_sizes)]
    n: Sizes,
    /// Master seed; all randomness derives from it.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output directory.
    #[arg(long, default_value = ".")]
    out: PathBuf,
    /// Distance bucket (`lo-hi` in percent, or `all` for the deciles)
    /// for request generation.
    #[arg(long, value_parser = parse_bucket_list)]
    bucket: Option<Buckets>,
    /// Delay level (`infeasible`, `1`..`7`, or `all`).
    #[arg(long, value_parser = parse_level_list)]
    level: Option<Levels>,
    /// Number of requests to generate per (n, bucket, level) cell.
    #[arg(long, default_value_t = 0)]
    count: usize,
}

#[derive(Args)]
struct RunArgs {
    /// Algorithm id (repeatable), or `all`.
    #[arg(long = "alg", required = true)]
    algorithms: Vec<String>,
    /// Grid side length or range, e.g. `6` or `6..20`.
    #[arg(long, value_parser = parse_sizes, default_value = "6..20")]
    n: Sizes,
    /// Distance bucket (repeatable): `lo-hi` in percent, `0-100` for
    /// random pairs, or `all` for the ten deciles.
    #[arg(long, value_parser = parse_bucket_list, default_values_t = vec![Buckets::all()])]
    bucket: Vec<Buckets>,
    /// Delay level (repeatable): `infeasible`, `1`..`7`, or `all`.
    #[arg(long, value_parser = parse_level_list, default_values_t = vec![Levels::all()])]
    level: Vec<Levels>,
    /// Requests per cell, warm-up included.
    #[arg(long)]
    requests: Option<usize>,
    /// Warm-up requests per cell (measured but discarded).
    #[arg(long)]
    warmup: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    graphs_per_cell: usize,
    /// Worker threads over cells.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Force fully sequential timing (equivalent to --jobs 1).
    #[arg(long)]
    strict_timing: bool,
    /// Measurement CSV path.
    #[arg(long, default_value = "measurements.csv")]
    out: PathBuf,
    /// Suppress per-cell progress output.
    #[arg(long)]
    quiet: bool,
}

#[derive(Args)]
struct ReportArgs {
    /// Measurement CSV produced by `run`.
    #[arg(long)]
    input: PathBuf,
    /// Grouping dimension: delay-level, bucket, grid-size or all.
    #[arg(long, default_value = "all", value_parser = parse_group_by)]
    group_by: GroupByArg,
    /// Summary CSV path, `-` for stdout.
    #[arg(long, default_value = "-")]
    out: PathBuf,
}

#[derive(Args)]
struct VerifyArgs {
    /// Measurement CSV produced by `run`.
    #[arg(long)]
    input: PathBuf,
}

#[derive(Clone, Debug)]
struct Sizes(Vec<u32>);

fn parse_sizes(s: &str) -> Result<Sizes, String> {
    let parse_one = |t: &str| -> Result<u32, String> {
        let v: u32 = t.trim().parse().map_err(|_| format!("invalid grid size `{t}`"))?;
        if v < 2 {
            return Err(format!("grid size {v} is too small (minimum 2)"));
        }
        Ok(v)
    };
    if let Some((a, b)) = s.split_once("..") {
        let (a, b) = (parse_one(a)?, parse_one(b)?);
        if a > b {
            return Err(format!("empty grid size range `{s}`"));
        }
        Ok(Sizes((a..=b).collect()))
    } else {
        Ok(Sizes(vec![parse_one(s)?]))
    }
}

/// One `--bucket` argument: a single range or the ten deciles.
#[derive(Clone, Debug)]
struct Buckets(Vec<Bucket>);

impl Buckets {
    fn all() -> Self {
        Buckets(Bucket::deciles())
    }
}

impl std::fmt::Display for Buckets {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.0.len() > 1 {
            f.write_str("all")
        } else {
            write!(f, "{}", self.0[0])
        }
    }
}

fn parse_bucket_list(s: &str) -> Result<Buckets, String> {
    if s == "all" {
        return Ok(Buckets::all());
    }
    s.parse::<Bucket>()
        .map(|b| Buckets(vec![b]))
        .map_err(|e| e.to_string())
}

#[derive(Clone, Debug)]
struct Levels(Vec<DelayLevel>);

impl Levels {
    fn all() -> Self {
        Levels(DelayLevel::all())
    }
}

impl std::fmt::Display for Levels {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.0.len() > 1 {
            f.write_str("all")
        } else {
            write!(f, "{}", self.0[0])
        }
    }
}

fn parse_level_list(s: &str) -> Result<Levels, String> {
    if s == "all" {
        return Ok(Levels::all());
    }
    s.parse::<DelayLevel>()
        .map(|l| Levels(vec![l]))
        .map_err(|e| e.to_string())
}

#[derive(Clone, Debug)]
struct GroupByArg(GroupBy);

fn parse_group_by(s: &str) -> Result<GroupByArg, String> {
    s.parse::<GroupBy>().map(GroupByArg).map_err(|e| e.to_string())
}

fn parse_algorithms(args: &[String]) -> Result<Vec<AlgorithmId>, String> {
    let mut out = Vec::new();
    for a in args {
        if a == "all" {
            out.extend(AlgorithmId::ALL);
        } else {
            out.push(a.parse::<AlgorithmId>().map_err(|e| e.to_string())?);
        }
    }
    out.dedup();
    Ok(out)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match execute(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn execute(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Gen(args) => cmd_gen(args),
        Command::Run(args) => cmd_run(args),
        Command::Report(args) => cmd_report(args),
        Command::Verify(args) => cmd_verify(args),
    }
}

fn cmd_gen(args: GenArgs) -> Result<ExitCode> {
    std::fs::create_dir_all(&args.out)
        .with_context(|| format!("creating output directory {}", args.out.display()))?;

    for &n in &args.n.0 {
        let g = build_grid(grid_spec_for(args.seed, n, 0))?;
        let path = args.out.join(format!("grid_n{n}.graph"));
        std::fs::write(&path, save_graph(&g))
            .with_context(|| format!("writing {}", path.display()))?;
        println!("wrote {}", path.display());
    }

    if args.count > 0 {
        let buckets = args.bucket.ok_or_else(|| anyhow::anyhow!("--count needs --bucket"))?;
        let levels = args.level.ok_or_else(|| anyhow::anyhow!("--count needs --level"))?;
        let mut rows = Vec::new();
        for &n in &args.n.0 {
            let g = build_grid(grid_spec_for(args.seed, n, 0))?;
            let spec = g.grid_spec().expect("generated grid");
            for &bucket in &buckets.0 {
                for &level in &levels.0 {
                    let salts = [
                        u64::from(n),
                        u64::from(bucket.lo_pct()),
                        u64::from(bucket.hi_pct()),
                        u64::from(level.code()),
                    ];
                    let mut sampler = RequestSampler::new(
                        spec,
                        bucket,
                        level,
                        derive_seed(args.seed, "pairs", &salts),
                        derive_seed(args.seed, "delta", &salts),
                    )?;
                    let mut budget = 10 * args.count;
                    for request_id in 0..args.count {
                        let sampled = sampler.sample(&g, &mut budget)?;
                        rows.push(RequestRecord {
                            grid_n: n,
                            bucket_lo_pct: bucket.lo_pct(),
                            bucket_hi_pct: bucket.hi_pct(),
                            delay_level: level,
                            request_id: request_id as u64,
                            src: sampled.request.src,
                            dst: sampled.request.dst,
                            delay_bound: sampled.request.delay_bound,
                        });
                    }
                }
            }
        }
        let path = args.out.join("requests.csv");
        let file = File::create(&path).with_context(|| format!("creating {}", path.display()))?;
        write_requests(file, &rows)?;
        println!("wrote {} ({} requests)", path.display(), rows.len());
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_run(args: RunArgs) -> Result<ExitCode> {
    let algorithms = parse_algorithms(&args.algorithms).map_err(|e| anyhow::anyhow!(e))?;
    let mut plan = Plan {
        algorithms,
        grid_sizes: args.n.0.clone(),
        buckets: args.bucket.iter().flat_map(|b| b.0.clone()).collect(),
        levels: args.level.iter().flat_map(|l| l.0.clone()).collect(),
        graphs_per_cell: args.graphs_per_cell,
        master_seed: args.seed,
        jobs: if args.strict_timing { 1 } else { args.jobs },
        progress: !args.quiet,
        ..Plan::default()
    };
    plan.buckets.dedup();
    plan.levels.dedup();
    if let Some(requests) = args.requests {
        plan.requests_per_cell = requests;
        plan.aggregate_requests = requests;
    }
    if let Some(warmup) = args.warmup {
        plan.warmup_per_cell = warmup;
        plan.aggregate_warmup = warmup;
    }

    let records = run_plan(&plan)?;
    let mismatches = verify_equality(&records);
    let file = File::create(&args.out)
        .with_context(|| format!("creating {}", args.out.display()))?;
    write_measurements(file, &records)?;
    eprintln!(
        "wrote {} ({} records, {} output mismatches)",
        args.out.display(),
        records.len(),
        mismatches.len()
    );
    if mismatches.is_empty() {
        Ok(ExitCode::SUCCESS)
    } else {
        for m in &mismatches {
            eprintln!("{m}");
        }
        Ok(ExitCode::from(2))
    }
}

fn open_measurements(path: &Path) -> Result<Vec<bdroute_core::bench::MeasurementRecord>> {
    let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    Ok(read_measurements(file)?)
}

fn cmd_report(args: ReportArgs) -> Result<ExitCode> {
    let records = open_measurements(&args.input)?;
    if records.is_empty() {
        bail!("no measurement records in {}", args.input.display());
    }
    let summaries = summarize(&records, args.group_by.0);
    if args.out.as_os_str() == "-" {
        write_summaries(io::stdout().lock(), &summaries)?;
    } else {
        let file = File::create(&args.out)
            .with_context(|| format!("creating {}", args.out.display()))?;
        write_summaries(file, &summaries)?;
        eprintln!("wrote {} ({} groups)", args.out.display(), summaries.len());
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(args: VerifyArgs) -> Result<ExitCode> {
    let records = open_measurements(&args.input)?;
    let mismatches = verify_equality(&records);
    let mut stdout = io::stdout().lock();
    if mismatches.is_empty() {
        writeln!(
            stdout,
            "ok: {} records, plain and bounded outputs identical",
            records.len()
        )?;
        Ok(ExitCode::SUCCESS)
    } else {
        for m in &mismatches {
            writeln!(stdout, "{m}")?;
        }
        writeln!(stdout, "{} mismatches in {} records", mismatches.len(), records.len())?;
        Ok(ExitCode::from(2))
    }
}
