//! Acceptance checks. Prints one PASS or FAIL line per criterion and exits
//! non-zero when a criterion outside `EXPECTED_RED` fails.

use std::collections::BTreeMap;
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use nmroute_core::baselines::{ebfs, edijkstra, ibf, Metric};
use nmroute_core::csp::{backward_pass, build_neighborhoods, solve_csp};
use nmroute_core::fast::{solve_l, solve_l1};
use nmroute_core::{
    dominates, BoundKind, ConstraintSpec, EdgeAttr, Graph, Objective, Outcome, PathLabel, RouteResult, SearchOptions,
    VertexId,
};
use nmroute_lab::fixtures;
use nmroute_lab::services::{
    bench_scalability, energy, request_seed, te_greedy, vne_embed, vne_pool, Algorithm, BenchConfig, BenchRecord,
    EnergyParams, RouteConfig,
};
use nmroute_lab::topology::{generate, make_requests, GenSpec, Model, PairCount, Severity, SloPreset};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Criteria known not to hold on every instance.
const EXPECTED_RED: &[u32] = &[3];

const CORPUS: u64 = 300;

struct Instance {
    g: Graph,
    src: VertexId,
    dst: VertexId,
    spec: ConstraintSpec,
}

/// Undirected multigraph with 4 to 10 vertices and twice as many edges.
/// Link metric 0 is the bandwidth; path metrics are delay and cost.
fn instance(seed: u64) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE_0000 + seed);
    let n: usize = rng.gen_range(4..=10);
    let mut g = Graph::new(false, n, 1, 2);
    for _ in 0..2 * n {
        let u = rng.gen_range(0..n);
        let v = (u + rng.gen_range(1..n)) % n;
        let bw = f64::from(rng.gen_range(1u8..=10));
        let delay = f64::from(rng.gen_range(1u8..=10));
        let cost = f64::from(rng.gen_range(1u8..=10));
        g.add_edge(u, v, EdgeAttr::new(bw, vec![bw], vec![delay, cost], cost)).unwrap();
    }
    let src = rng.gen_range(0..n);
    let dst = (src + rng.gen_range(1..n)) % n;
    let demand = f64::from(rng.gen_range(1u8..=4));
    let spec = ConstraintSpec::new(demand)
        .unwrap()
        .with_link_bound(0, BoundKind::AtLeast, demand)
        .with_path_bounds(vec![f64::from(rng.gen_range(4u8..=25)), f64::from(rng.gen_range(4u8..=30))])
        .unwrap();
    Instance {
        g,
        src: VertexId::new(src),
        dst: VertexId::new(dst),
        spec,
    }
}

fn with_unit_costs(g: &Graph) -> Graph {
    let mut h = Graph::new(g.is_directed(), g.vertex_count(), g.link_arity(), g.path_arity());
    for e in g.edges() {
        let mut attr = e.attr.clone();
        attr.cost = 1.0;
        h.add_edge(e.tail.index(), e.head.index(), attr).unwrap();
    }
    h
}

/// Cheapest cost and fewest hops over all feasible simple paths, by plain
/// depth-first enumeration.
fn brute_force(g: &Graph, src: VertexId, dst: VertexId, spec: &ConstraintSpec) -> Option<(f64, usize)> {
    fn usable(g: &Graph, i: usize, spec: &ConstraintSpec) -> bool {
        let e = &g.edges()[i];
        g.residuals()[i] >= spec.demand()
            && spec.link_bounds().iter().all(|b| {
                let x = e.attr.link_metrics[b.metric];
                match b.kind {
                    BoundKind::AtLeast => x >= b.bound,
                    BoundKind::AtMost => x <= b.bound,
                }
            })
    }
    #[allow(clippy::too_many_arguments)]
    fn walk(
        g: &Graph,
        at: usize,
        dst: usize,
        spec: &ConstraintSpec,
        seen: &mut Vec<bool>,
        cost: f64,
        dist: &mut Vec<f64>,
        hops: usize,
        best: &mut Option<(f64, usize)>,
    ) {
        if at == dst {
            let ok = dist.iter().zip(spec.path_bounds()).all(|(d, b)| d <= b);
            if ok {
                let c = best.map_or(f64::INFINITY, |b| b.0);
                let h = best.map_or(usize::MAX, |b| b.1);
                *best = Some((c.min(cost), h.min(hops)));
            }
            return;
        }
        for (i, e) in g.edges().iter().enumerate() {
            let next = if e.tail.index() == at {
                e.head.index()
            } else if e.head.index() == at && !g.is_directed() {
                e.tail.index()
            } else {
                continue;
            };
            if seen[next] || !usable(g, i, spec) {
                continue;
            }
            seen[next] = true;
            for (d, m) in dist.iter_mut().zip(&e.attr.path_metrics) {
                *d += m;
            }
            walk(g, next, dst, spec, seen, cost + e.attr.cost, dist, hops + 1, best);
            for (d, m) in dist.iter_mut().zip(&e.attr.path_metrics) {
                *d -= m;
            }
            seen[next] = false;
        }
    }
    let mut seen = vec![false; g.vertex_count()];
    seen[src.index()] = true;
    let mut best = None;
    let mut dist = vec![0.0; g.path_arity()];
    walk(g, src.index(), dst.index(), spec, &mut seen, 0.0, &mut dist, 0, &mut best);
    best
}

fn cost_of(r: &RouteResult) -> Option<f64> {
    r.path().map(|p| p.cost)
}

fn hops_of(r: &RouteResult) -> Option<usize> {
    r.path().map(PathLabel::hop_count)
}

fn verdict(r: &RouteResult) -> bool {
    r.outcome == Outcome::Found
}

fn median(mut xs: Vec<f64>) -> f64 {
    if xs.is_empty() {
        return f64::NAN;
    }
    xs.sort_by(f64::total_cmp);
    let k = xs.len();
    if k % 2 == 1 {
        xs[k / 2]
    } else {
        (xs[k / 2 - 1] + xs[k / 2]) / 2.0
    }
}

fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

type Verdict = (bool, String);
type Criterion = (u32, &'static str, fn() -> Verdict);

fn oracle_exactness() -> Verdict {
    let start = Instant::now();
    let mut bad = Vec::new();
    let mut found = 0;
    for seed in 0..CORPUS {
        let inst = instance(seed);
        let r = solve_csp(&inst.g, inst.src, inst.dst, &inst.spec, &SearchOptions::default()).unwrap();
        let want = brute_force(&inst.g, inst.src, inst.dst, &inst.spec).map(|b| b.0);
        found += usize::from(want.is_some());
        if cost_of(&r) != want || verdict(&r) != want.is_some() {
            bad.push(seed);
        }
    }
    let secs = start.elapsed().as_secs_f64();
    (
        bad.is_empty() && secs < 60.0,
        format!(
            "{}/{CORPUS} instances match the enumeration ({found} feasible), mismatches {bad:?}, {secs:.2}s",
            CORPUS as usize - bad.len()
        ),
    )
}

fn regime_consistency() -> Verdict {
    let mut bad = Vec::new();
    for seed in 0..CORPUS {
        let inst = instance(seed);
        let unit = with_unit_costs(&inst.g);
        let delay_only = inst
            .spec
            .clone()
            .with_path_bounds(vec![inst.spec.path_bound(0), f64::INFINITY])
            .unwrap();
        let nm = solve_csp(&unit, inst.src, inst.dst, &delay_only, &SearchOptions::default()).unwrap();
        let l1 = solve_l1(&unit, inst.src, inst.dst, &delay_only).unwrap();
        let bf = ibf(&unit, inst.src, inst.dst, &delay_only).unwrap();
        let want = brute_force(&unit, inst.src, inst.dst, &delay_only).map(|b| b.1);
        let csp_ok = hops_of(&nm) == hops_of(&l1) && hops_of(&l1) == hops_of(&bf) && hops_of(&nm) == want;

        let link_only = inst.spec.clone().with_path_bounds(vec![]).unwrap();
        let l = solve_l(&inst.g, inst.src, inst.dst, &link_only, Objective::Hops).unwrap();
        let d = edijkstra(&inst.g, inst.src, inst.dst, &link_only, Metric::Hops).unwrap();
        let link_ok = hops_of(&l) == hops_of(&d) && verdict(&l) == verdict(&d);
        if !(csp_ok && link_ok) {
            bad.push(seed);
        }
    }
    (
        bad.is_empty(),
        format!("{}/{CORPUS} instances agree across regimes, mismatches {bad:?}", CORPUS as usize - bad.len()),
    )
}

fn pruning_soundness() -> Verdict {
    let mut toggle_bad = Vec::new();
    let (mut lb_over_nm, mut nm_over_ebfs) = (Vec::new(), Vec::new());
    let mut totals = (0u64, 0u64, 0u64);
    for seed in 0..CORPUS {
        let inst = instance(seed);
        let run = |o: SearchOptions| solve_csp(&inst.g, inst.src, inst.dst, &inst.spec, &o).unwrap();
        let base = run(SearchOptions::plain());
        for (dominance, look_back) in [(true, false), (false, true), (true, true)] {
            let r = run(SearchOptions::default().with_dominance(dominance).with_look_back(look_back));
            if cost_of(&r) != cost_of(&base) || verdict(&r) != verdict(&base) {
                toggle_bad.push(seed);
            }
        }
        let lb = run(SearchOptions::default().with_look_back(true)).counters.traversed_paths;
        let nm = run(SearchOptions::default()).counters.traversed_paths;
        let bfs = ebfs(&inst.g, inst.src, inst.dst, &inst.spec, &SearchOptions::default())
            .unwrap()
            .counters
            .traversed_paths;
        if lb > nm {
            lb_over_nm.push(seed);
        }
        if nm > bfs {
            nm_over_ebfs.push(seed);
        }
        totals.0 += lb;
        totals.1 += nm;
        totals.2 += bfs;
    }
    toggle_bad.dedup();
    let pass = toggle_bad.is_empty() && lb_over_nm.is_empty() && nm_over_ebfs.is_empty();
    (
        pass,
        format!(
            "toggles agree on {}/{CORPUS}; NM+LB <= NM on {}/{CORPUS}; NM <= EBFS on {}/{CORPUS}; \
             traversed totals NM+LB {} NM {} EBFS {}",
            CORPUS as usize - toggle_bad.len(),
            CORPUS as usize - lb_over_nm.len(),
            CORPUS as usize - nm_over_ebfs.len(),
            totals.0,
            totals.1,
            totals.2
        ),
    )
}

fn scalability_direction() -> Verdict {
    let start = Instant::now();
    let cfg = BenchConfig {
        model: Model::Waxman,
        avg_degree: 4.0,
        sizes: vec![1000],
        presets: vec![Severity::Medium],
        algorithms: vec![Algorithm::NmLb, Algorithm::Ebfs, Algorithm::EbfsLa],
        seeds: (1..=5).collect(),
        fraction: 0.1,
        time_limit: Some(Duration::from_secs(60)),
    };
    let records = bench_scalability(&cfg).unwrap();
    let by = |a: Algorithm, found_only: bool| -> Vec<&BenchRecord> {
        records
            .iter()
            .filter(|r| r.algorithm == a && (!found_only || r.outcome == Outcome::Found))
            .collect()
    };
    let traversed = |a, f| median(by(a, f).iter().map(|r| r.traversed_paths as f64).collect());
    let micros = |a| median(by(a, false).iter().map(|r| r.elapsed.as_secs_f64() * 1e6).collect());
    let ratio = |num: f64, den: f64| if den > 0.0 { num / den } else if num > 0.0 { f64::INFINITY } else { f64::NAN };

    let all = ratio(traversed(Algorithm::Ebfs, false), traversed(Algorithm::NmLb, false));
    let found = ratio(traversed(Algorithm::Ebfs, true), traversed(Algorithm::NmLb, true));
    let (lb_us, la_us) = (micros(Algorithm::NmLb), micros(Algorithm::EbfsLa));
    let timeouts = records.iter().filter(|r| r.outcome == Outcome::Timeout).count();
    let queries = by(Algorithm::NmLb, false).len();
    let found_queries = by(Algorithm::NmLb, true).len();
    let secs = start.elapsed().as_secs_f64();
    (
        all >= 5.0 && found >= 5.0 && lb_us < la_us && secs < 1800.0,
        format!(
            "{queries} queries ({found_queries} found, {timeouts} timeouts); traversed median EBFS/NM+LB {all:.1} over all \
             queries ({} vs {}), {found:.1} over found ({} vs {}); median elapsed NM+LB {lb_us:.0}us vs EBFS+LA \
             {la_us:.0}us; {secs:.1}s",
            traversed(Algorithm::Ebfs, false),
            traversed(Algorithm::NmLb, false),
            traversed(Algorithm::Ebfs, true),
            traversed(Algorithm::NmLb, true),
        ),
    )
}

fn worked_examples() -> Verdict {
    let g = fixtures::figure3().unwrap();
    let v = |name: &str| g.find_vertex(name).unwrap();
    let (x, a, b, y) = (v("X"), v("A"), v("B"), v("Y"));
    let spec = |bw: f64, bounds: Vec<f64>| {
        ConstraintSpec::new(bw)
            .unwrap()
            .with_link_bound(0, BoundKind::AtLeast, bw)
            .with_path_bounds(bounds)
            .unwrap()
    };
    let want = vec![x, b, a, y];
    let mut notes = Vec::new();

    let csp = solve_csp(&g, x, y, &spec(5.0, vec![5.0, 5.0]), &SearchOptions::default()).unwrap();
    let csp_ok = csp.path().map(|p| &p.vertices) == Some(&want);
    notes.push(format!("solve_csp {}", if csp_ok { "XBAY" } else { "wrong" }));

    let l1 = solve_l1(&g, x, y, &spec(5.0, vec![5.0, f64::INFINITY])).unwrap();
    let l1_ok = l1.path().map(|p| &p.vertices) == Some(&want);
    notes.push(format!("solve_l1 {}", if l1_ok { "XBAY" } else { "wrong" }));

    let label = |d: f64, c: f64| PathLabel {
        vertices: vec![x],
        edges: vec![],
        cost: c,
        path_dist: vec![d],
    };
    let dom_ok = dominates(&label(2.0, 5.0), &label(6.0, 5.0));
    notes.push(format!("dominates((2,5),(6,5)) = {dom_ok}"));

    // Bounds only: the A->Y suffix (delay 1) behind the 5-delay best from X
    // to A exceeds the delay bound of 5.
    let relaxed = spec(3.0, vec![5.0, 5.0]);
    let opts = SearchOptions::plain().with_look_back(true);
    let nh = build_neighborhoods(&g, x, y, &relaxed, &opts).unwrap();
    let ahead = nh.best_from_source(1, a).map(|d| d[0]);
    let ay = g.out_arcs(a).iter().find(|arc| arc.vertex == y).unwrap().edge;
    let suffix = g.edge(ay).attr.path_metrics[0];
    let kept: Vec<Vec<VertexId>> = backward_pass(&nh, &g).unwrap().into_iter().map(|c| c.vertices).collect();
    let lb_ok = ahead == Some(5.0) && suffix == 1.0 && kept == vec![vec![x, b, y]];
    notes.push(format!(
        "look-back {suffix}+{} > 5 pruned: {lb_ok}",
        ahead.map_or("?".into(), |d| d.to_string())
    ));

    (csp_ok && l1_ok && dom_ok && lb_ok, notes.join("; "))
}

fn te_gain() -> Verdict {
    let start = Instant::now();
    let preset = SloPreset::traffic(Severity::Low, 1.0);
    let (mut nm_total, mut dj_total, mut nm_hops, mut dj_hops) = (vec![], vec![], vec![], vec![]);
    for seed in 1..=20 {
        let g = generate(&GenSpec::traffic(Model::Waxman, 200, 4.0, seed)).unwrap();
        let reqs = make_requests(&g, PairCount::Exact(100), &preset, request_seed(seed)).unwrap();
        for (algo, total, hops) in [
            (Algorithm::Nm, &mut nm_total, &mut nm_hops),
            (Algorithm::DijkstraMetric, &mut dj_total, &mut dj_hops),
        ] {
            let out = te_greedy(&mut g.clone(), &reqs, algo, 1.0, &RouteConfig::hops()).unwrap();
            total.push(out.total);
            hops.push(out.mean_hops());
        }
    }
    let gain = mean(&nm_total) / mean(&dj_total);
    let (h_nm, h_dj) = (mean(&nm_hops), mean(&dj_hops));
    let secs = start.elapsed().as_secs_f64();
    (
        gain >= 1.05 && h_nm <= h_dj && secs < 600.0,
        format!(
            "20 seeds: mean throughput NM {:.1} vs Dijkstra-metric {:.1} ({gain:.3}x); mean hops {h_nm:.2} vs {h_dj:.2}; {secs:.1}s",
            mean(&nm_total),
            mean(&dj_total)
        ),
    )
}

fn energy_formula() -> Verdict {
    let p = EnergyParams { max: 2.0, idle: 1.7 };
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let len = rng.gen_range(1..200);
        let us: Vec<f64> = (0..len).map(|_| rng.gen_range(0.0..=1.0)).collect();
        let e = energy(&us, &p).unwrap();
        let direct: f64 = us.iter().rev().map(|u| 0.3 * u).sum::<f64>() + 1.7 * len as f64;
        let rel = (direct - 1.7 * len as f64) / (1.7 * len as f64) * 100.0;
        worst = worst.max((e.watts - direct).abs()).max((e.relative - rel).abs());
    }
    let idle = energy(&[0.0], &p).unwrap();
    let full = energy(&[1.0], &p).unwrap();
    let half = energy(&[0.5, 0.5], &p).unwrap();
    let round2 = |x: f64| (x * 100.0).round() / 100.0;
    let examples = idle.watts == 1.7
        && idle.relative == 0.0
        && full.watts == 2.0
        && round2(full.relative) == 17.65
        && (half.watts - 3.7).abs() < 1e-12
        && round2(half.relative) == 8.82;
    (
        worst <= 1e-12 && examples,
        format!(
            "max deviation from re-summation {worst:e}; examples {} W {}%, {} W {}%, {} W {}%",
            idle.watts,
            idle.relative,
            full.watts,
            round2(full.relative),
            half.watts,
            round2(half.relative)
        ),
    )
}

fn vne_direction() -> Verdict {
    let start = Instant::now();
    let mut ratios: BTreeMap<&str, Vec<f64>> = BTreeMap::new();
    for seed in 1..=20 {
        let base = generate(&GenSpec::substrate(Model::Waxman, 20, 4.0, seed)).unwrap();
        let pool = vne_pool(&base, 40, 6, 1, request_seed(seed)).unwrap();
        for algo in [Algorithm::Nm, Algorithm::DijkstraMetric] {
            let mut g = base.clone();
            let mut cpu = g.vertex_capacities().unwrap().to_vec();
            let accepted = pool
                .iter()
                .filter(|vn| vne_embed(&mut g, &mut cpu, vn, algo, &RouteConfig::hops()).unwrap().accepted())
                .count();
            ratios.entry(algo.id()).or_default().push(accepted as f64 / pool.len() as f64);
        }
    }
    let nm = mean(&ratios["nm"]);
    let dj = mean(&ratios["dijkstra-metric"]);
    let secs = start.elapsed().as_secs_f64();
    (
        nm >= dj && secs < 600.0,
        format!("20 seeds: mean acceptance NM {nm:.4} vs Dijkstra-metric {dj:.4}, margin {:+.4}; {secs:.1}s", nm - dj),
    )
}

fn run_cli(dir: &Path, args: &[&str]) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_nmroute"))
        .args(args)
        .current_dir(dir)
        .env_remove("NMROUTE_OUT_DIR")
        .output()
        .unwrap();
    (out.status.code().unwrap_or(-1), mask_elapsed(&out.stdout))
}

/// Stdout with wall-clock readings blanked.
fn mask_elapsed(stdout: &[u8]) -> Vec<u8> {
    let text = String::from_utf8_lossy(stdout);
    let mut words: Vec<&str> = Vec::new();
    let mut after_elapsed = false;
    for w in text.split(' ') {
        words.push(if after_elapsed { "_" } else { w });
        after_elapsed = w == "elapsed";
    }
    words.join(" ").into_bytes()
}

fn snapshot(dir: &Path) -> BTreeMap<String, Vec<u8>> {
    std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap())
        .map(|e| (e.file_name().to_string_lossy().into_owned(), std::fs::read(e.path()).unwrap()))
        .filter(|(name, _)| !name.ends_with(".timing.csv"))
        .collect()
}

fn determinism() -> Verdict {
    let commands: &[&[&str]] = &[
        &["gen", "--n", "60", "--seed", "7", "--requests", "req.txt", "-o", "graph.txt"],
        &["gen", "--model", "ba", "--n", "40", "--profile", "substrate", "--seed", "3", "-o", "ba.txt"],
        &["route", "--graph", "graph.txt", "--src", "0", "--dst", "5", "--delay", "9", "--cost", "40"],
        &["route", "--fixture", "figure3", "--src", "X", "--dst", "Y", "--bw", "5", "--delay", "5", "--cost", "5"],
        &["bench", "--sizes", "30,60", "--preset", "low,medium", "--seeds", "2", "-o", "bench.csv"],
        &["te", "--n", "40", "--flows", "20", "--seeds", "2", "-o", "te.csv"],
        &["vne", "--n", "20", "--vns", "10", "--seeds", "2", "-o", "vne.csv"],
        &["energy", "--util", "te.edges.csv", "-o", "energy.csv"],
    ];
    let runs: Vec<_> = (0..2)
        .map(|_| {
            let dir = tempfile::tempdir().unwrap();
            let outputs: Vec<(i32, Vec<u8>)> = commands.iter().map(|c| run_cli(dir.path(), c)).collect();
            (outputs, snapshot(dir.path()), dir)
        })
        .collect();
    let files = runs[0].1.len();
    let same_files = runs[0].1 == runs[1].1;
    let same_stdout = runs[0].0 == runs[1].0;
    let codes: Vec<i32> = runs[0].0.iter().map(|o| o.0).collect();
    let all_ran = codes.iter().all(|&c| c == 0 || c == 2 || c == 3);
    (
        same_files && same_stdout && all_ran && files >= 10,
        format!(
            "{} commands run twice: {files} output files identical {same_files}, stdout identical {same_stdout}, exit codes {codes:?}",
            commands.len()
        ),
    )
}

fn main() {
    let criteria: [Criterion; 9] = [
        (1, "oracle exactness", oracle_exactness),
        (2, "regime consistency", regime_consistency),
        (3, "pruning soundness", pruning_soundness),
        (4, "scalability direction", scalability_direction),
        (5, "worked examples", worked_examples),
        (6, "traffic engineering gain", te_gain),
        (7, "energy formula", energy_formula),
        (8, "embedding direction", vne_direction),
        (9, "determinism", determinism),
    ];
    let mut unexpected = Vec::new();
    for (id, name, check) in criteria {
        let (pass, detail) = check();
        println!("{} {id} {name}: {detail}", if pass { "PASS" } else { "FAIL" });
        if !pass && !EXPECTED_RED.contains(&id) {
            unexpected.push(id);
        }
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
}
