//! Line-oriented text formats for graphs and request lists.
//!
//! ```text
//! # format-version 1
//! graph <directed|undirected> <n> <l> <p>
//! name <v> <label>
//! plane <rate>
//! pos <v> <x> <y>
//! vcap <v> <capacity>
//! edge <u> <v> <capacity> <link_1..l> <path_1..p> <cost>
//! ```
//!
//! A request list holds `req <src> <dst> <demand> <bound_1..p>` lines, each
//! optionally followed by `link <metric> <ge|le> <bound>` groups. Numbers are
//! written in shortest round-trip form, so reading a written file gives back
//! the same values bit for bit.

use std::fmt::Write as _;
use std::str::FromStr;

use nmroute_core::{BoundKind, ConstraintSpec, EdgeAttr, Graph, VertexId};

use crate::topology::Request;

pub const VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("line {line}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub msg: String,
}

fn fail<T>(line: usize, msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { line, msg: msg.into() })
}

fn num<T: FromStr>(line: usize, tok: Option<&str>, what: &str) -> Result<T, ParseError> {
    match tok {
        Some(t) => t.parse().or_else(|_| fail(line, format!("bad {what} `{t}`"))),
        None => fail(line, format!("missing {what}")),
    }
}

/// Checks a `# format-version` comment; other comments pass.
fn version(line: usize, text: &str) -> Result<(), ParseError> {
    if let Some(rest) = text.trim_start_matches('#').trim().strip_prefix("format-version") {
        let v: u32 = num(line, Some(rest.trim()), "format version")?;
        if v != VERSION {
            return fail(line, format!("unsupported format version {v}"));
        }
    }
    Ok(())
}

pub fn write_graph(g: &Graph) -> String {
    let mut out = String::new();
    let kind = if g.is_directed() { "directed" } else { "undirected" };
    writeln!(out, "# format-version {VERSION}").unwrap();
    writeln!(out, "graph {kind} {} {} {}", g.vertex_count(), g.link_arity(), g.path_arity()).unwrap();
    if let Some(names) = g.names() {
        for (i, name) in names.iter().enumerate() {
            writeln!(out, "name {i} {name}").unwrap();
        }
    }
    if let (Some(pos), Some(rate)) = (g.positions(), g.propagation_rate()) {
        writeln!(out, "plane {rate}").unwrap();
        for (i, (x, y)) in pos.iter().enumerate() {
            writeln!(out, "pos {i} {x} {y}").unwrap();
        }
    }
    if let Some(caps) = g.vertex_capacities() {
        for (i, c) in caps.iter().enumerate() {
            writeln!(out, "vcap {i} {c}").unwrap();
        }
    }
    for e in g.edges() {
        write!(out, "edge {} {} {}", e.tail.0, e.head.0, e.attr.capacity).unwrap();
        for x in e.attr.link_metrics.iter().chain(&e.attr.path_metrics) {
            write!(out, " {x}").unwrap();
        }
        writeln!(out, " {}", e.attr.cost).unwrap();
    }
    out
}

pub fn read_graph(text: &str) -> Result<Graph, ParseError> {
    let mut g: Option<Graph> = None;
    let mut names: Vec<Option<String>> = Vec::new();
    let mut rate: Option<f64> = None;
    let mut pos: Vec<Option<(f64, f64)>> = Vec::new();
    let mut caps: Vec<Option<f64>> = Vec::new();
    let mut last = 0;

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last = line;
        let raw = raw.trim();
        if raw.is_empty() {
            continue;
        }
        if raw.starts_with('#') {
            version(line, raw)?;
            continue;
        }
        let mut tok = raw.split_whitespace();
        let record = tok.next().unwrap();
        if record == "graph" {
            if g.is_some() {
                return fail(line, "second graph header");
            }
            let directed = match tok.next() {
                Some("directed") => true,
                Some("undirected") => false,
                other => return fail(line, format!("expected directed or undirected, found {other:?}")),
            };
            let n: usize = num(line, tok.next(), "vertex count")?;
            let l: usize = num(line, tok.next(), "link arity")?;
            let p: usize = num(line, tok.next(), "path arity")?;
            g = Some(Graph::new(directed, n, l, p));
            names = vec![None; n];
            pos = vec![None; n];
            caps = vec![None; n];
            continue;
        }
        let Some(graph) = g.as_mut() else {
            return fail(line, format!("`{record}` before the graph header"));
        };
        let n = graph.vertex_count();
        let vertex = |tok: Option<&str>| -> Result<usize, ParseError> {
            let v: usize = num(line, tok, "vertex")?;
            if v >= n {
                return fail(line, format!("vertex {v} out of range"));
            }
            Ok(v)
        };
        match record {
            "edge" => {
                let u = vertex(tok.next())?;
                let v = vertex(tok.next())?;
                let cap: f64 = num(line, tok.next(), "capacity")?;
                let link = (0..graph.link_arity())
                    .map(|_| num(line, tok.next(), "link metric"))
                    .collect::<Result<Vec<f64>, _>>()?;
                let path = (0..graph.path_arity())
                    .map(|_| num(line, tok.next(), "path metric"))
                    .collect::<Result<Vec<f64>, _>>()?;
                let cost: f64 = num(line, tok.next(), "cost")?;
                graph
                    .add_edge(u, v, EdgeAttr::new(cap, link, path, cost))
                    .or_else(|e| fail(line, e.to_string()))?;
            }
            "name" => {
                let v = vertex(tok.next())?;
                let Some(name) = tok.next() else {
                    return fail(line, "missing name");
                };
                names[v] = Some(name.to_string());
            }
            "plane" => rate = Some(num(line, tok.next(), "propagation rate")?),
            "pos" => {
                let v = vertex(tok.next())?;
                pos[v] = Some((num(line, tok.next(), "x")?, num(line, tok.next(), "y")?));
            }
            "vcap" => {
                let v = vertex(tok.next())?;
                caps[v] = Some(num(line, tok.next(), "vertex capacity")?);
            }
            other => return fail(line, format!("unknown record `{other}`")),
        }
        if let Some(extra) = tok.next() {
            return fail(line, format!("unexpected trailing `{extra}`"));
        }
    }

    let Some(mut g) = g else {
        return fail(last.max(1), "missing graph header");
    };
    let at = last.max(1);
    if names.iter().any(Option::is_some) {
        let all: Option<Vec<String>> = names.into_iter().collect();
        let all = all.ok_or_else(|| ParseError { line: at, msg: "names given for some vertices only".into() })?;
        g.set_names(all).or_else(|e| fail(at, e.to_string()))?;
    }
    if let Some(rate) = rate {
        let all: Option<Vec<(f64, f64)>> = pos.into_iter().collect();
        let all = all.ok_or_else(|| ParseError { line: at, msg: "positions missing for some vertices".into() })?;
        g.set_plane(all, rate).or_else(|e| fail(at, e.to_string()))?;
    }
    if caps.iter().any(Option::is_some) {
        let all: Option<Vec<f64>> = caps.into_iter().collect();
        let all = all.ok_or_else(|| ParseError { line: at, msg: "capacities given for some vertices only".into() })?;
        g.set_vertex_capacities(all).or_else(|e| fail(at, e.to_string()))?;
    }
    Ok(g)
}

pub fn write_requests(reqs: &[Request]) -> String {
    let mut out = format!("# format-version {VERSION}\n");
    for r in reqs {
        write!(out, "req {} {} {}", r.src.0, r.dst.0, r.spec.demand()).unwrap();
        for b in r.spec.path_bounds() {
            write!(out, " {b}").unwrap();
        }
        for b in r.spec.link_bounds() {
            let kind = match b.kind {
                BoundKind::AtLeast => "ge",
                BoundKind::AtMost => "le",
            };
            write!(out, " link {} {kind} {}", b.metric, b.bound).unwrap();
        }
        out.push('\n');
    }
    out
}

pub fn read_requests(text: &str) -> Result<Vec<Request>, ParseError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let raw = raw.trim();
        if raw.is_empty() {
            continue;
        }
        if raw.starts_with('#') {
            version(line, raw)?;
            continue;
        }
        let mut tok = raw.split_whitespace().peekable();
        if tok.next() != Some("req") {
            return fail(line, "expected a `req` record");
        }
        let src: u32 = num(line, tok.next(), "source")?;
        let dst: u32 = num(line, tok.next(), "destination")?;
        let demand: f64 = num(line, tok.next(), "demand")?;
        let mut bounds = Vec::new();
        while let Some(t) = tok.peek() {
            if *t == "link" {
                break;
            }
            bounds.push(num(line, tok.next(), "path bound")?);
        }
        let mut spec = ConstraintSpec::new(demand)
            .and_then(|s| s.with_path_bounds(bounds))
            .or_else(|e| fail(line, e.to_string()))?;
        while tok.next().is_some() {
            let metric: usize = num(line, tok.next(), "link metric index")?;
            let kind = match tok.next() {
                Some("ge") => BoundKind::AtLeast,
                Some("le") => BoundKind::AtMost,
                other => return fail(line, format!("expected ge or le, found {other:?}")),
            };
            spec = spec.with_link_bound(metric, kind, num(line, tok.next(), "link bound")?);
        }
        out.push(Request {
            src: VertexId(src),
            dst: VertexId(dst),
            spec,
        });
    }
    Ok(out)
}
