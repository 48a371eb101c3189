//! The `nmroute` command line.

use std::path::{Path, PathBuf};
use std::time::Duration;

use anyhow::{bail, ensure, Context, Result};
use clap::{Args, Parser, Subcommand};
use nmroute_core::{ConstraintSpec, Graph, Objective, Outcome, RouteResult};

use crate::fixtures;
use crate::format::{read_graph, write_graph, write_requests};
use crate::report::{self, num};
use crate::services::{
    bench_scalability, energy, request_seed, route, te_greedy, vne_embed, vne_pool, Algorithm, BenchConfig, EnergyParams, RouteConfig,
};
use crate::topology::{generate, make_requests, GenSpec, Model, PairCount, Severity, SloPreset};

/// Environment variable naming the directory for relative output paths.
pub const OUT_DIR_ENV: &str = "NMROUTE_OUT_DIR";

pub mod exit {
    pub const FOUND: i32 = 0;
    pub const ERROR: i32 = 1;
    pub const NO_FEASIBLE: i32 = 2;
    pub const UNREACHABLE: i32 = 3;
    pub const TIMEOUT: i32 = 4;
    pub const NEGATIVE_CYCLE: i32 = 5;
}

#[derive(Debug, Parser)]
#[command(name = "nmroute", version, about = "Constrained shortest paths and routing experiments")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a random topology or write a built-in fixture.
    Gen(GenArgs),
    /// Answer one routing query.
    Route(RouteArgs),
    /// Scalability sweep over sizes, presets and algorithms.
    Bench(BenchArgs),
    /// Greedy max-min traffic engineering.
    Te(TeArgs),
    /// Two-stage virtual network embedding.
    Vne(VneArgs),
    /// Energy of a set of edge utilizations.
    Energy(EnergyArgs),
    /// Re-parse files written by this tool.
    Check(CheckArgs),
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long, default_value = "waxman")]
    pub model: Model,
    #[arg(long, default_value_t = 20)]
    pub n: usize,
    #[arg(long, default_value_t = 4.0)]
    pub deg: f64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Attribute ranges: plain, scalability, traffic or substrate.
    #[arg(long, default_value = "plain")]
    pub profile: String,
    #[arg(long, default_value_t = 1.0)]
    pub rate: f64,
    /// Write a built-in graph (figure3, figure1, disconnected) instead.
    #[arg(long)]
    pub fixture: Option<String>,
    /// Also write a request list here.
    #[arg(long)]
    pub requests: Option<PathBuf>,
    #[arg(long, default_value_t = 0.1)]
    pub fraction: f64,
    #[arg(long, default_value = "medium")]
    pub slo: Severity,
    #[arg(short, long, default_value = "graph.txt")]
    pub output: PathBuf,
}

#[derive(Debug, Args)]
pub struct RouteArgs {
    #[arg(long, conflicts_with = "fixture", required_unless_present = "fixture")]
    pub graph: Option<PathBuf>,
    #[arg(long)]
    pub fixture: Option<String>,
    /// Vertex name or index.
    #[arg(long)]
    pub src: String,
    #[arg(long)]
    pub dst: String,
    #[arg(long, default_value = "nm")]
    pub algo: Algorithm,
    /// Bandwidth demand reserved on every edge.
    #[arg(long, default_value_t = 1.0)]
    pub bw: f64,
    /// Bound on path metric 0.
    #[arg(long)]
    pub delay: Option<f64>,
    /// Bound on path metric 1.
    #[arg(long)]
    pub cost: Option<f64>,
    /// Bound on any path metric, as `index=value`.
    #[arg(long = "bound", value_name = "I=V")]
    pub bounds: Vec<String>,
    /// `cost` or `hops`.
    #[arg(long, default_value = "cost")]
    pub objective: String,
    #[arg(long, default_value_t = 1)]
    pub k: usize,
    #[arg(long)]
    pub no_dominance: bool,
    /// Seconds.
    #[arg(long)]
    pub timeout: Option<f64>,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, value_delimiter = ',', default_value = "10,100")]
    pub sizes: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_value = "medium")]
    pub preset: Vec<Severity>,
    #[arg(long, value_delimiter = ',', default_value = "nm,nm-lb,ebfs,ebfs-la")]
    pub algos: Vec<Algorithm>,
    /// Number of seeds, starting at `--seed`.
    #[arg(long, default_value_t = 1)]
    pub seeds: u64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value = "waxman")]
    pub model: Model,
    #[arg(long, default_value_t = 4.0)]
    pub deg: f64,
    #[arg(long, default_value_t = 0.1)]
    pub fraction: f64,
    /// Seconds per query.
    #[arg(long, default_value_t = 60.0)]
    pub timeout: f64,
    #[arg(short, long, default_value = "bench.csv")]
    pub output: PathBuf,
}

#[derive(Debug, Args)]
pub struct TeArgs {
    #[arg(long, default_value_t = 200)]
    pub n: usize,
    #[arg(long, default_value_t = 4.0)]
    pub deg: f64,
    #[arg(long, default_value_t = 100)]
    pub flows: usize,
    #[arg(long, default_value = "low")]
    pub slo: Severity,
    #[arg(long, default_value = "nm")]
    pub algo: Algorithm,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value_t = 1)]
    pub seeds: u64,
    #[arg(long, default_value_t = 1.0)]
    pub quantum: f64,
    #[arg(long, default_value = "waxman")]
    pub model: Model,
    #[arg(short, long, default_value = "te.csv")]
    pub output: PathBuf,
}

#[derive(Debug, Args)]
pub struct VneArgs {
    #[arg(long, default_value_t = 20)]
    pub n: usize,
    #[arg(long, default_value_t = 4.0)]
    pub deg: f64,
    #[arg(long, default_value_t = 40)]
    pub vns: usize,
    #[arg(long, default_value_t = 6)]
    pub vn_size: usize,
    /// Each virtual vertex links to this many successors (1 is a chain).
    #[arg(long, default_value_t = 1)]
    pub vn_degree: usize,
    #[arg(long, default_value = "nm")]
    pub algo: Algorithm,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value_t = 1)]
    pub seeds: u64,
    #[arg(long, default_value = "waxman")]
    pub model: Model,
    #[arg(short, long, default_value = "vne.csv")]
    pub output: PathBuf,
}

#[derive(Debug, Args)]
pub struct EnergyArgs {
    /// CSV with a `utilization` column.
    #[arg(long)]
    pub util: PathBuf,
    #[arg(long, default_value_t = 2.0)]
    pub max: f64,
    #[arg(long, default_value_t = 1.7)]
    pub idle: f64,
    #[arg(short, long, default_value = "energy.csv")]
    pub output: PathBuf,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[arg(required = true)]
    pub files: Vec<PathBuf>,
}

/// Parses arguments, runs the command and returns the process exit code.
pub fn main() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { exit::ERROR } else { exit::FOUND };
            let _ = e.print();
            return code;
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            exit::ERROR
        }
    }
}

pub fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Gen(a) => cmd_gen(a),
        Command::Route(a) => cmd_route(a),
        Command::Bench(a) => cmd_bench(a),
        Command::Te(a) => cmd_te(a),
        Command::Vne(a) => cmd_vne(a),
        Command::Energy(a) => cmd_energy(a),
        Command::Check(a) => cmd_check(a),
    }
}

/// Resolves a relative output path against the output directory variable.
pub fn out_path(p: &Path) -> PathBuf {
    match std::env::var_os(OUT_DIR_ENV) {
        Some(dir) if p.is_relative() && !dir.is_empty() => Path::new(&dir).join(p),
        _ => p.to_path_buf(),
    }
}

fn sibling(p: &Path, suffix: &str) -> PathBuf {
    let stem = p.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    p.with_file_name(format!("{stem}{suffix}"))
}

fn seeds(first: u64, count: u64) -> Vec<u64> {
    (0..count).map(|i| first + i).collect()
}

fn load_graph(path: &Path) -> Result<Graph> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    read_graph(&text).with_context(|| format!("parsing {}", path.display()))
}

fn fixture(name: &str) -> Result<Graph> {
    match fixtures::by_name(name) {
        Some(g) => Ok(g?),
        None => bail!("unknown fixture `{name}` (expected one of {})", fixtures::NAMES.join(", ")),
    }
}

fn gen_spec(a: &GenArgs) -> Result<GenSpec> {
    let mut spec = match a.profile.as_str() {
        "plain" => GenSpec::new(a.model, a.n, a.deg, a.seed),
        "scalability" => GenSpec::scalability(a.model, a.n, a.deg, a.seed),
        "traffic" => GenSpec::traffic(a.model, a.n, a.deg, a.seed),
        "substrate" => GenSpec::substrate(a.model, a.n, a.deg, a.seed),
        other => bail!("unknown profile `{other}`"),
    };
    spec.rate = a.rate;
    Ok(spec)
}

pub fn cmd_gen(a: GenArgs) -> Result<i32> {
    let g = match &a.fixture {
        Some(name) => fixture(name)?,
        None => generate(&gen_spec(&a)?)?,
    };
    let out = out_path(&a.output);
    report::write_file(&out, &write_graph(&g))?;
    println!(
        "n={} edges={} mean_degree={} -> {}",
        g.vertex_count(),
        g.edge_count(),
        num(g.mean_degree()),
        out.display()
    );
    if let Some(req) = &a.requests {
        let preset = SloPreset::scalability(a.slo)?;
        let reqs = make_requests(&g, PairCount::Fraction(a.fraction), &preset, request_seed(a.seed))?;
        let out = out_path(req);
        report::write_file(&out, &write_requests(&reqs))?;
        println!("requests={} -> {}", reqs.len(), out.display());
    }
    Ok(exit::FOUND)
}

fn route_spec(a: &RouteArgs, g: &Graph) -> Result<ConstraintSpec> {
    let p = g.path_arity();
    let mut bounds = vec![f64::INFINITY; p];
    let mut set = |i: usize, v: f64| -> Result<()> {
        ensure!(i < p, "path metric {i} does not exist (the graph has {p})");
        bounds[i] = v;
        Ok(())
    };
    if let Some(d) = a.delay {
        set(0, d)?;
    }
    if let Some(c) = a.cost {
        set(1, c)?;
    }
    for b in &a.bounds {
        let (i, v) = b.split_once('=').with_context(|| format!("bound `{b}` is not I=V"))?;
        set(i.trim().parse()?, v.trim().parse()?)?;
    }
    let bounds = if bounds.iter().all(|b| b.is_infinite()) { Vec::new() } else { bounds };
    Ok(ConstraintSpec::new(a.bw)?.with_path_bounds(bounds)?)
}

fn exit_code(outcome: Outcome) -> i32 {
    match outcome {
        Outcome::Found => exit::FOUND,
        Outcome::NoFeasiblePath => exit::NO_FEASIBLE,
        Outcome::Unreachable => exit::UNREACHABLE,
        Outcome::Timeout => exit::TIMEOUT,
        Outcome::NegativeCycle => exit::NEGATIVE_CYCLE,
    }
}

pub fn cmd_route(a: RouteArgs) -> Result<i32> {
    let g = match (&a.graph, &a.fixture) {
        (Some(p), _) => load_graph(p)?,
        (None, Some(name)) => fixture(name)?,
        (None, None) => bail!("give --graph or --fixture"),
    };
    let src = g.find_vertex(&a.src).with_context(|| format!("unknown vertex `{}`", a.src))?;
    let dst = g.find_vertex(&a.dst).with_context(|| format!("unknown vertex `{}`", a.dst))?;
    let spec = route_spec(&a, &g)?;
    let objective = match a.objective.as_str() {
        "cost" => Objective::Cost,
        "hops" => Objective::Hops,
        other => bail!("unknown objective `{other}` (expected cost or hops)"),
    };
    ensure!(a.k >= 1, "k must be at least 1");
    let cfg = RouteConfig {
        objective,
        dominance: !a.no_dominance,
        k: a.k,
        time_limit: a.timeout.map(Duration::from_secs_f64),
    };
    let r: RouteResult = route(a.algo, &g, src, dst, &spec, &cfg)?;
    let names = |p: &nmroute_core::PathLabel| p.vertices.iter().map(|&v| g.vertex_name(v)).collect::<Vec<_>>();
    for (i, p) in r.paths.iter().enumerate() {
        let dist: Vec<String> = p.path_dist.iter().map(|&d| num(d)).collect();
        println!(
            "path {}: {}  cost {}  hops {}  dist [{}]",
            i + 1,
            names(p).join(" "),
            num(p.cost),
            p.hop_count(),
            dist.join(", ")
        );
    }
    if r.paths.is_empty() {
        println!("no path: {}", r.outcome.as_str());
    }
    let c = &r.counters;
    println!(
        "traversed {}  dominance-pruned {}  infeasibility-pruned {}  neighborhoods {}  elapsed {}us",
        c.traversed_paths,
        c.dominance_pruned,
        c.infeasibility_pruned,
        c.neighborhoods_built,
        r.elapsed.as_micros()
    );
    let best = r.path();
    println!(
        "result outcome={} algo={} path={} cost={} hops={} traversed={}",
        r.outcome.as_str(),
        a.algo,
        best.map(|p| names(p).join(",")).unwrap_or_default(),
        best.map(|p| num(p.cost)).unwrap_or_default(),
        best.map(|p| p.hop_count().to_string()).unwrap_or_default(),
        c.traversed_paths
    );
    Ok(exit_code(r.outcome))
}

pub fn cmd_bench(a: BenchArgs) -> Result<i32> {
    ensure!(a.timeout > 0.0, "timeout must be positive");
    let cfg = BenchConfig {
        model: a.model,
        avg_degree: a.deg,
        sizes: a.sizes,
        presets: a.preset,
        algorithms: a.algos,
        seeds: seeds(a.seed, a.seeds),
        fraction: a.fraction,
        time_limit: Some(Duration::from_secs_f64(a.timeout)),
    };
    let records = bench_scalability(&cfg)?;
    let out = out_path(&a.output);
    report::write_file(&out, &report::bench_csv(&records)?)?;
    report::write_file(&sibling(&out, ".timing.csv"), &report::bench_timing_csv(&records)?)?;

    let mut series = Vec::new();
    for &preset in &cfg.presets {
        for &algo in &cfg.algorithms {
            let points = cfg
                .sizes
                .iter()
                .map(|&n| {
                    let per_seed = cfg
                        .seeds
                        .iter()
                        .filter_map(|&s| {
                            let xs: Vec<f64> = records
                                .iter()
                                .filter(|r| r.n == n && r.preset == preset && r.algorithm == algo && r.seed == s)
                                .map(|r| r.traversed_paths as f64)
                                .collect();
                            (!xs.is_empty()).then(|| xs.iter().sum::<f64>() / xs.len() as f64)
                        })
                        .collect();
                    (n as f64, per_seed)
                })
                .collect();
            series.push((format!("{algo} {preset} traversed_paths"), points));
        }
    }
    report::write_file(&sibling(&out, ".dat"), &report::dat(&series))?;
    let timeouts = records.iter().filter(|r| r.outcome == Outcome::Timeout).count();
    println!("records={} timeouts={} -> {}", records.len(), timeouts, out.display());
    Ok(exit::FOUND)
}

pub fn cmd_te(a: TeArgs) -> Result<i32> {
    let preset = SloPreset::traffic(a.slo, a.quantum);
    let mut flows_csv = String::new();
    let mut edges_csv = String::new();
    let mut totals = Vec::new();
    let mut hops = Vec::new();
    for seed in seeds(a.seed, a.seeds) {
        let mut g = generate(&GenSpec::traffic(a.model, a.n, a.deg, seed))?;
        let reqs = make_requests(&g, PairCount::Exact(a.flows), &preset, request_seed(seed))?;
        let out = te_greedy(&mut g, &reqs, a.algo, a.quantum, &RouteConfig::hops())?;
        let caps: Vec<f64> = g.edges().iter().map(|e| e.attr.capacity).collect();
        append_table(&mut flows_csv, &report::te_csv(seed, &out, |v| v.to_string())?);
        append_table(&mut edges_csv, &report::edges_csv(seed, &caps, g.residuals(), &out.utilizations)?);
        println!(
            "seed={seed} algo={} total={} mean_hops={}",
            a.algo,
            num(out.total),
            num(out.mean_hops())
        );
        totals.push(out.total);
        hops.push(out.mean_hops());
    }
    let out = out_path(&a.output);
    report::write_file(&out, &flows_csv)?;
    report::write_file(&sibling(&out, ".edges.csv"), &edges_csv)?;
    let series = vec![
        (format!("{} {} total_throughput", a.algo, a.slo), vec![(a.deg, totals)]),
        (format!("{} {} mean_hops", a.algo, a.slo), vec![(a.deg, hops)]),
    ];
    report::write_file(&sibling(&out, ".dat"), &report::dat(&series))?;
    Ok(exit::FOUND)
}

/// Appends a table, keeping the version line and header of the first only.
fn append_table(acc: &mut String, table: &str) {
    if acc.is_empty() {
        acc.push_str(table);
    } else {
        for line in table.lines().skip(2) {
            acc.push_str(line);
            acc.push('\n');
        }
    }
}

pub fn cmd_vne(a: VneArgs) -> Result<i32> {
    let mut rows = Vec::new();
    let mut ratios = Vec::new();
    let cfg = RouteConfig::hops();
    for seed in seeds(a.seed, a.seeds) {
        let mut g = generate(&GenSpec::substrate(a.model, a.n, a.deg, seed))?;
        let mut cpu = g.vertex_capacities().context("substrate without CPU")?.to_vec();
        let pool = vne_pool(&g, a.vns, a.vn_size, a.vn_degree, request_seed(seed))?;
        let mut accepted = 0;
        for (i, vn) in pool.iter().enumerate() {
            let e = vne_embed(&mut g, &mut cpu, vn, a.algo, &cfg)?;
            accepted += usize::from(e.accepted());
            rows.push((seed, i, e));
        }
        let ratio = if pool.is_empty() { 0.0 } else { accepted as f64 / pool.len() as f64 };
        println!("seed={seed} algo={} accepted={accepted}/{} ratio={}", a.algo, pool.len(), num(ratio));
        ratios.push(ratio);
    }
    let out = out_path(&a.output);
    report::write_file(&out, &report::vne_csv(&rows)?)?;
    let series = vec![(format!("{} acceptance_ratio", a.algo), vec![(a.vn_degree as f64, ratios)])];
    report::write_file(&sibling(&out, ".dat"), &report::dat(&series))?;
    Ok(exit::FOUND)
}

pub fn cmd_energy(a: EnergyArgs) -> Result<i32> {
    let mut r = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_path(&a.util)
        .with_context(|| format!("reading {}", a.util.display()))?;
    let col = r
        .headers()?
        .iter()
        .position(|h| h == "utilization")
        .context("no `utilization` column")?;
    let mut utils = Vec::new();
    for (i, rec) in r.records().enumerate() {
        let rec = rec?;
        let field = rec.get(col).with_context(|| format!("row {} is short", i + 1))?;
        utils.push(field.parse::<f64>().with_context(|| format!("row {}: bad utilization `{field}`", i + 1))?);
    }
    let e = energy(&utils, &EnergyParams { max: a.max, idle: a.idle })?;
    let out = out_path(&a.output);
    report::write_file(&out, &report::energy_csv(utils.len(), &e)?)?;
    println!("edges={} watts={} relative={}%", utils.len(), num(e.watts), num(e.relative));
    Ok(exit::FOUND)
}

pub fn cmd_check(a: CheckArgs) -> Result<i32> {
    for f in &a.files {
        let text = std::fs::read_to_string(f).with_context(|| format!("reading {}", f.display()))?;
        let what = report::check(&text).with_context(|| format!("checking {}", f.display()))?;
        println!("{}: {what:?}", f.display());
    }
    Ok(exit::FOUND)
}
