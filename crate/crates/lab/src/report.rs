//! CSV tables and `.dat` series written by the experiment commands.

use std::fmt::Write as _;
use std::io::Write;

use anyhow::{bail, ensure, Context, Result};

use crate::format;
use crate::services::{BenchRecord, Embedding, Energy, FlowState, TeOutcome};

/// Shortest round-trip text for a float.
pub fn num(x: f64) -> String {
    format!("{x}")
}

fn opt<T: ToString>(x: Option<T>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

fn csv_to_string(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.write_record(&row)?;
    }
    w.flush()?;
    let bytes = w.into_inner().context("flushing csv")?;
    Ok(format!("# format-version {}\n{}", format::VERSION, String::from_utf8(bytes)?))
}

pub const BENCH_HEADER: [&str; 9] = ["seed", "n", "preset", "query", "algorithm", "outcome", "hops", "cost", "traversed_paths"];

pub fn bench_csv(records: &[BenchRecord]) -> Result<String> {
    csv_to_string(
        &BENCH_HEADER,
        records.iter().map(|r| {
            vec![
                r.seed.to_string(),
                r.n.to_string(),
                r.preset.to_string(),
                r.query.to_string(),
                r.algorithm.to_string(),
                r.outcome.as_str().to_string(),
                opt(r.hops),
                r.cost.map(num).unwrap_or_default(),
                r.traversed_paths.to_string(),
            ]
        }),
    )
}

/// Wall-clock times, kept apart from the deterministic record table.
pub fn bench_timing_csv(records: &[BenchRecord]) -> Result<String> {
    csv_to_string(
        &["seed", "n", "preset", "query", "algorithm", "elapsed_us"],
        records.iter().map(|r| {
            vec![
                r.seed.to_string(),
                r.n.to_string(),
                r.preset.to_string(),
                r.query.to_string(),
                r.algorithm.to_string(),
                r.elapsed.as_micros().to_string(),
            ]
        }),
    )
}

pub fn te_csv(seed: u64, out: &TeOutcome, names: impl Fn(u32) -> String) -> Result<String> {
    let mut rows: Vec<Vec<String>> = out
        .flows
        .iter()
        .enumerate()
        .map(|(i, f): (usize, &FlowState)| {
            let path = f
                .current_path
                .as_ref()
                .map(|p| p.vertices.iter().map(|v| names(v.0)).collect::<Vec<_>>().join(" "))
                .unwrap_or_default();
            vec![
                seed.to_string(),
                i.to_string(),
                names(f.request.src.0),
                names(f.request.dst.0),
                num(f.allocated),
                f.grants.to_string(),
                f.mean_hops().map(num).unwrap_or_default(),
                path,
            ]
        })
        .collect();
    let grants: u64 = out.flows.iter().map(|f| f.grants).sum();
    rows.push(vec![
        seed.to_string(),
        "total".into(),
        String::new(),
        String::new(),
        num(out.total),
        grants.to_string(),
        num(out.mean_hops()),
        String::new(),
    ]);
    csv_to_string(&["seed", "flow", "src", "dst", "allocated", "grants", "mean_hops", "path"], rows)
}

pub fn edges_csv(seed: u64, capacities: &[f64], residuals: &[f64], utilizations: &[f64]) -> Result<String> {
    csv_to_string(
        &["seed", "edge", "capacity", "residual", "utilization"],
        (0..capacities.len()).map(|e| {
            vec![
                seed.to_string(),
                e.to_string(),
                num(capacities[e]),
                num(residuals[e]),
                num(utilizations[e]),
            ]
        }),
    )
}

pub fn vne_csv(rows: &[(u64, usize, Embedding)]) -> Result<String> {
    csv_to_string(
        &["seed", "vn", "accepted", "stage", "reason", "hosts"],
        rows.iter().map(|(seed, i, e)| {
            let (stage, reason) = match &e.rejected {
                Some((s, r)) => (s.to_string(), r.clone()),
                None => (String::new(), String::new()),
            };
            vec![
                seed.to_string(),
                i.to_string(),
                e.accepted().to_string(),
                stage,
                reason,
                e.hosts.iter().map(|h| h.0.to_string()).collect::<Vec<_>>().join(" "),
            ]
        }),
    )
}

pub fn energy_csv(edges: usize, e: &Energy) -> Result<String> {
    csv_to_string(
        &["edges", "watts", "relative_percent"],
        [vec![edges.to_string(), num(e.watts), num(e.relative)]],
    )
}

/// Mean and 95% half-width under the normal approximation.
pub fn mean_ci95(xs: &[f64]) -> (f64, f64) {
    let k = xs.len();
    if k == 0 {
        return (f64::NAN, 0.0);
    }
    let mean = xs.iter().sum::<f64>() / k as f64;
    if k < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (k - 1) as f64;
    (mean, 1.96 * var.sqrt() / (k as f64).sqrt())
}

/// A named series of `(x, samples)` points.
pub type Series = (String, Vec<(f64, Vec<f64>)>);

/// A `.dat` file of `x mean ci95` lines, one block per series, blocks
/// separated by two blank lines.
pub fn dat(series: &[Series]) -> String {
    let mut out = format!("# format-version {}\n", format::VERSION);
    for (i, (name, points)) in series.iter().enumerate() {
        if i > 0 {
            out.push_str("\n\n");
        }
        writeln!(out, "# {name}\n# x mean ci95").unwrap();
        for (x, ys) in points {
            let (m, ci) = mean_ci95(ys);
            writeln!(out, "{x} {m} {ci}").unwrap();
        }
    }
    out
}

/// What [`check`] recognized.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Checked {
    Graph { vertices: usize, edges: usize },
    Requests(usize),
    Table { columns: usize, rows: usize },
    Series(usize),
}

/// Re-parses a file written by this tool.
pub fn check(text: &str) -> Result<Checked> {
    let body: Vec<&str> = text
        .lines()
        .filter(|l| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .collect();
    let first = body.first().map(|l| l.split_whitespace().next().unwrap_or(""));
    match first {
        Some("graph") => {
            let g = format::read_graph(text)?;
            Ok(Checked::Graph {
                vertices: g.vertex_count(),
                edges: g.edge_count(),
            })
        }
        Some("req") => Ok(Checked::Requests(format::read_requests(text)?.len())),
        Some(line) if line.parse::<f64>().is_ok() => {
            for (i, l) in body.iter().enumerate() {
                let cols: Vec<&str> = l.split_whitespace().collect();
                ensure!(cols.len() == 3, "series line {} has {} columns", i + 1, cols.len());
                for c in cols {
                    c.parse::<f64>().with_context(|| format!("series line {}: bad number `{c}`", i + 1))?;
                }
            }
            Ok(Checked::Series(body.len()))
        }
        Some(_) => {
            let mut r = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(text.as_bytes());
            let columns = r.headers()?.len();
            let mut rows = 0;
            for rec in r.records() {
                ensure!(rec?.len() == columns, "row {} has a different column count", rows + 1);
                rows += 1;
            }
            Ok(Checked::Table { columns, rows })
        }
        None => bail!("file is empty"),
    }
}

pub fn write_file(path: &std::path::Path, text: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    let mut f = std::fs::File::create(path).with_context(|| format!("creating {}", path.display()))?;
    f.write_all(text.as_bytes())?;
    Ok(())
}
