//! Plain-text graph and configuration formats and the JSON result record.
//!
//! Files use 1-based vertex labels; everything in memory is 0-based.
//!
//! * Edge list: a header `N M`, then `M` lines `i j`. Arc lists use the same
//!   layout with `i j` meaning `i → j`.
//! * Weights: `N` lines, one real per vertex.
//! * Configuration: `N` lines `i A_i` with `A_i = 0` for empty and `A_i = i`
//!   for a root.

use serde::{Deserialize, Serialize};

use crate::bpd::{BpdParams, FvsResult, Solver};
use crate::directed::DiGraph;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::model::{Configuration, VertexState};

fn parse_err<T>(line: usize, msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse {
        line,
        msg: msg.into(),
    })
}

/// Non-empty lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty())
}

fn parse_usize(tok: Option<&str>, line: usize, what: &str) -> Result<usize> {
    match tok {
        Some(t) => t
            .parse()
            .or_else(|_| parse_err(line, format!("{what}: expected a non-negative integer, got {t:?}"))),
        None => parse_err(line, format!("missing {what}")),
    }
}

fn parse_pairs(text: &str) -> Result<(usize, Vec<(usize, usize)>)> {
    let mut lines = content_lines(text);
    let Some((hl, header)) = lines.next() else {
        return parse_err(1, "empty file, expected header \"N M\"");
    };
    let mut toks = header.split_whitespace();
    let n = parse_usize(toks.next(), hl, "vertex count")?;
    let m = parse_usize(toks.next(), hl, "edge count")?;
    if toks.next().is_some() {
        return parse_err(hl, "header must be \"N M\"");
    }
    let mut pairs = Vec::with_capacity(m);
    for (ln, line) in lines {
        let mut toks = line.split_whitespace();
        let i = parse_usize(toks.next(), ln, "first endpoint")?;
        let j = parse_usize(toks.next(), ln, "second endpoint")?;
        if toks.next().is_some() {
            return parse_err(ln, "expected exactly two vertex labels");
        }
        if i == 0 || j == 0 || i > n || j > n {
            return parse_err(ln, format!("vertex labels must lie in 1..={n}, got {i} {j}"));
        }
        pairs.push((i - 1, j - 1));
    }
    if pairs.len() != m {
        return parse_err(hl, format!("header announces {m} edges, found {}", pairs.len()));
    }
    Ok((n, pairs))
}

fn parse_weight_lines(text: &str, n: usize) -> Result<Vec<f64>> {
    let mut weights = Vec::with_capacity(n);
    for (ln, line) in content_lines(text) {
        let w: f64 = line
            .parse()
            .or_else(|_| parse_err(ln, format!("expected a real weight, got {line:?}")))?;
        weights.push(w);
    }
    if weights.len() != n {
        return parse_err(1, format!("expected {n} weights, found {}", weights.len()));
    }
    Ok(weights)
}

/// Parses an edge list, with an optional weight file.
pub fn parse_graph(edges: &str, weights: Option<&str>) -> Result<Graph> {
    let (n, pairs) = parse_pairs(edges)?;
    let w = weights.map(|t| parse_weight_lines(t, n)).transpose()?;
    Graph::new(n, pairs, w)
}

pub fn parse_digraph(arcs: &str, weights: Option<&str>) -> Result<DiGraph> {
    let (n, pairs) = parse_pairs(arcs)?;
    let w = weights.map(|t| parse_weight_lines(t, n)).transpose()?;
    DiGraph::new(n, pairs, w)
}

fn write_pairs(n: usize, pairs: &[(usize, usize)]) -> String {
    let mut out = format!("{} {}\n", n, pairs.len());
    for &(i, j) in pairs {
        out.push_str(&format!("{} {}\n", i + 1, j + 1));
    }
    out
}

pub fn write_graph(g: &Graph) -> String {
    write_pairs(g.n(), g.edges())
}

pub fn write_digraph(g: &DiGraph) -> String {
    write_pairs(g.n(), g.arcs())
}

/// One weight per line in shortest round-trip form.
pub fn write_weights(weights: &[f64]) -> String {
    weights.iter().map(|w| format!("{w}\n")).collect()
}

pub fn write_configuration(g: &Graph, a: &Configuration) -> String {
    (0..g.n())
        .map(|i| {
            let label = match a.state(g, i) {
                VertexState::Empty => 0,
                VertexState::Root => i + 1,
                VertexState::Parent(j) => j + 1,
            };
            format!("{} {}\n", i + 1, label)
        })
        .collect()
}

pub fn parse_configuration(g: &Graph, text: &str) -> Result<Configuration> {
    let mut states = vec![None; g.n()];
    for (ln, line) in content_lines(text) {
        let mut toks = line.split_whitespace();
        let i = parse_usize(toks.next(), ln, "vertex")?;
        let a = parse_usize(toks.next(), ln, "state")?;
        if i == 0 || i > g.n() || a > g.n() {
            return parse_err(ln, format!("labels must lie in 1..={}", g.n()));
        }
        let state = match a {
            0 => VertexState::Empty,
            a if a == i => VertexState::Root,
            a => VertexState::Parent(a - 1),
        };
        if states[i - 1].replace(state).is_some() {
            return parse_err(ln, format!("vertex {i} listed twice"));
        }
    }
    let states: Vec<VertexState> = states
        .into_iter()
        .enumerate()
        .map(|(i, s)| s.ok_or_else(|| Error::Parse { line: 0, msg: format!("vertex {} missing", i + 1) }))
        .collect::<Result<_>>()?;
    Configuration::from_states(g, &states)
}

/// JSON form of a solver result. Vertex labels are 1-based.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FvsRecord {
    pub size: usize,
    pub weight: f64,
    pub vertices: Vec<usize>,
    pub verified: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub solver: Option<Solver>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params: Option<BpdParams>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl From<&FvsResult> for FvsRecord {
    fn from(r: &FvsResult) -> Self {
        Self {
            size: r.size(),
            weight: r.weight,
            vertices: r.gamma.iter().map(|v| v + 1).collect(),
            verified: r.verified,
            solver: Some(r.solver),
            params: r.params,
            seed: Some(r.seed),
        }
    }
}

pub fn fvs_to_json(r: &FvsResult) -> String {
    serde_json::to_string_pretty(&FvsRecord::from(r)).expect("serializable")
}

/// Reads a vertex set over `n` vertices from either an [`FvsRecord`] JSON
/// document or a whitespace-separated list of 1-based labels.
pub fn parse_vertex_set(text: &str, n: usize) -> Result<VertexSet> {
    let trimmed = text.trim_start();
    let labels: Vec<usize> = if trimmed.starts_with('{') {
        let rec: FvsRecord = serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            msg: e.to_string(),
        })?;
        rec.vertices
    } else {
        let mut v = Vec::new();
        for (ln, line) in content_lines(text) {
            for tok in line.split_whitespace() {
                v.push(parse_usize(Some(tok), ln, "vertex label")?);
            }
        }
        v
    };
    if let Some(&bad) = labels.iter().find(|&&l| l == 0 || l > n) {
        return parse_err(0, format!("vertex label {bad} outside 1..={n}"));
    }
    VertexSet::from_indices(n, labels.into_iter().map(|l| l - 1))
}
