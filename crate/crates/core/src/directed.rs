//! Height model for feedback vertex sets of directed graphs.
//!
//! Every vertex carries an integer height; `0` marks an empty vertex (in
//! the feedback set). An arc `i → j` between two occupied vertices is
//! satisfied only when `h_i < h_j`, so occupied vertices cannot contain a
//! directed cycle.

use std::collections::{HashSet, VecDeque};

use rand::Rng;

use crate::error::{param, Error, Result};
use crate::exact::subsets_of_size;
use crate::graph::{rng_from_seed, VertexSet};

/// Largest `(H + 1)^n` accepted by [`exact_directed_partition`].
pub const HEIGHT_ENUMERATION_CAP: f64 = 1e7;
pub const BRUTE_DIRECTED_MAX_N: usize = 20;

/// Simple directed graph: no self-arcs and no repeated arcs; antiparallel
/// pairs are allowed.
#[derive(Clone, Debug)]
pub struct DiGraph {
    n: usize,
    arcs: Vec<(usize, usize)>,
    weights: Vec<f64>,
    out: Vec<Vec<usize>>,
    inn: Vec<Vec<usize>>,
}

impl DiGraph {
    pub fn new(n: usize, arcs: Vec<(usize, usize)>, weights: Option<Vec<f64>>) -> Result<Self> {
        let weights = weights.unwrap_or_else(|| vec![1.0; n]);
        if weights.len() != n {
            return Err(Error::InvalidGraph(format!("{} weights for {n} vertices", weights.len())));
        }
        if weights.iter().any(|w| !(w.is_finite() && *w >= 0.0)) {
            return Err(Error::InvalidGraph("weights must be finite and non-negative".into()));
        }
        let mut seen = HashSet::with_capacity(arcs.len());
        let mut out = vec![Vec::new(); n];
        let mut inn = vec![Vec::new(); n];
        for &(i, j) in &arcs {
            if i >= n || j >= n {
                return Err(Error::InvalidGraph(format!("arc ({i}, {j}) out of range")));
            }
            if i == j {
                return Err(Error::InvalidGraph(format!("self-arc at vertex {i}")));
            }
            if !seen.insert((i, j)) {
                return Err(Error::InvalidGraph(format!("duplicate arc ({i}, {j})")));
            }
            out[i].push(j);
            inn[j].push(i);
        }
        Ok(Self {
            n,
            arcs,
            weights,
            out,
            inn,
        })
    }

    pub fn from_arcs(n: usize, arcs: Vec<(usize, usize)>) -> Result<Self> {
        Self::new(n, arcs, None)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.arcs.len()
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn successors(&self, i: usize) -> &[usize] {
        &self.out[i]
    }

    pub fn predecessors(&self, i: usize) -> &[usize] {
        &self.inn[i]
    }
}

/// Directed ER graph with `round(α·n)` distinct arcs, so that each vertex
/// has on average `α` incoming and `α` outgoing arcs.
pub fn gen_directed_er(n: usize, alpha: f64, seed: u64) -> Result<DiGraph> {
    if n < 2 {
        return param(format!("directed ER graph needs n >= 2, got {n}"));
    }
    if !(alpha.is_finite() && alpha >= 0.0) {
        return param(format!("alpha must be finite and >= 0, got {alpha}"));
    }
    let m = (alpha * n as f64).round() as usize;
    if m > n * (n - 1) {
        return param(format!("{m} arcs do not fit on {n} vertices"));
    }
    let mut rng = rng_from_seed(seed);
    let mut seen = HashSet::with_capacity(m);
    let mut arcs = Vec::with_capacity(m);
    while arcs.len() < m {
        let i = rng.random_range(0..n);
        let j = rng.random_range(0..n);
        if i != j && seen.insert((i, j)) {
            arcs.push((i, j));
        }
    }
    DiGraph::from_arcs(n, arcs)
}

/// Per-vertex heights; `0` is empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeightConfig {
    pub heights: Vec<u32>,
}

impl HeightConfig {
    pub fn occupied(&self) -> VertexSet {
        VertexSet::from_mask(self.heights.iter().map(|&h| h > 0).collect())
    }
}

/// Arc factor `C_{i→j}(h_i, h_j)`: satisfied if either end is empty or the
/// height strictly increases along the arc.
#[inline]
pub fn directed_edge_factor(h_i: u32, h_j: u32) -> bool {
    h_i == 0 || h_j == 0 || h_i < h_j
}

pub fn is_directed_solution(g: &DiGraph, h: &HeightConfig) -> bool {
    h.heights.len() == g.n
        && g.arcs
            .iter()
            .all(|&(i, j)| directed_edge_factor(h.heights[i], h.heights[j]))
}

/// Topological order of the subgraph induced by `keep`, or `None` if it
/// has a directed cycle.
fn topological_order(g: &DiGraph, keep: impl Fn(usize) -> bool) -> Option<Vec<usize>> {
    let mut indeg = vec![0usize; g.n];
    for &(i, j) in &g.arcs {
        if keep(i) && keep(j) {
            indeg[j] += 1;
        }
    }
    let mut queue: VecDeque<usize> = (0..g.n).filter(|&i| keep(i) && indeg[i] == 0).collect();
    let mut order = Vec::new();
    while let Some(v) = queue.pop_front() {
        order.push(v);
        for &u in &g.out[v] {
            if keep(u) {
                indeg[u] -= 1;
                if indeg[u] == 0 {
                    queue.push_back(u);
                }
            }
        }
    }
    let kept = (0..g.n).filter(|&i| keep(i)).count();
    (order.len() == kept).then_some(order)
}

/// True iff removing `gamma` leaves a directed acyclic graph.
pub fn verify_directed_fvs(g: &DiGraph, gamma: &VertexSet) -> bool {
    gamma.universe() == g.n && topological_order(g, |i| !gamma.contains(i)).is_some()
}

/// Heights `1 + depth` along a topological order of the subgraph induced by
/// `occupied`, with all other vertices empty. `None` if that subgraph has a
/// directed cycle.
pub fn heights_from_depth(g: &DiGraph, occupied: &VertexSet) -> Option<HeightConfig> {
    let order = topological_order(g, |i| occupied.contains(i))?;
    let mut heights = vec![0u32; g.n];
    for v in order {
        let depth = g.inn[v]
            .iter()
            .filter(|&&u| occupied.contains(u))
            .map(|&u| heights[u])
            .max()
            .unwrap_or(0);
        heights[v] = depth + 1;
    }
    Some(HeightConfig { heights })
}

/// Number of height configurations `(H + 1)^n`.
pub fn height_space_size(g: &DiGraph, max_height: u32) -> f64 {
    (max_height as f64 + 1.0).powi(g.n as i32)
}

/// `Z(x)` summed over all height configurations with heights in `0..=H`.
pub fn exact_directed_partition(g: &DiGraph, x: f64, max_height: u32) -> Result<f64> {
    let size = height_space_size(g, max_height);
    if size > HEIGHT_ENUMERATION_CAP {
        return Err(Error::Capacity(format!(
            "{size:.3e} height configurations exceeds the cap of {HEIGHT_ENUMERATION_CAP:.0e}"
        )));
    }
    let mut heights = vec![0u32; g.n];
    let mut z = 0.0;
    enumerate_heights(g, 0, max_height, &mut heights, &mut |h| {
        let w: f64 = h
            .iter()
            .zip(&g.weights)
            .filter(|(&hi, _)| hi > 0)
            .map(|(_, w)| w)
            .sum();
        z += (x * w).exp();
    });
    Ok(z)
}

/// Depth-first enumeration of satisfying height configurations; arcs are
/// checked as soon as both endpoints carry a height.
fn enumerate_heights(g: &DiGraph, v: usize, max_height: u32, heights: &mut [u32], f: &mut impl FnMut(&[u32])) {
    if v == g.n {
        f(heights);
        return;
    }
    for h in 0..=max_height {
        heights[v] = h;
        let ok = g.out[v].iter().filter(|&&u| u < v).all(|&u| directed_edge_factor(h, heights[u]))
            && g.inn[v].iter().filter(|&&u| u < v).all(|&u| directed_edge_factor(heights[u], h));
        if ok {
            enumerate_heights(g, v + 1, max_height, heights, f);
        }
    }
    heights[v] = 0;
}

/// Searches exhaustively for heights in `1..=max_height` on `occupied` (and
/// `0` elsewhere) satisfying every arc factor.
pub fn find_heights_exhaustive(g: &DiGraph, occupied: &VertexSet, max_height: u32) -> Option<HeightConfig> {
    let vertices: Vec<usize> = occupied.iter().collect();
    let mut heights = vec![0u32; g.n];
    fn go(g: &DiGraph, vs: &[usize], k: usize, max_height: u32, heights: &mut [u32]) -> bool {
        if k == vs.len() {
            return true;
        }
        let v = vs[k];
        for h in 1..=max_height {
            heights[v] = h;
            let ok = g.out[v].iter().all(|&u| directed_edge_factor(h, heights[u]))
                && g.inn[v].iter().all(|&u| directed_edge_factor(heights[u], h));
            if ok && go(g, vs, k + 1, max_height, heights) {
                return true;
            }
        }
        heights[v] = 0;
        false
    }
    go(g, &vertices, 0, max_height, &mut heights).then_some(HeightConfig { heights })
}

/// Minimum directed feedback vertex set by subset search in order of
/// increasing size.
pub fn brute_min_directed_fvs(g: &DiGraph) -> Result<(usize, VertexSet)> {
    let n = g.n;
    if n > BRUTE_DIRECTED_MAX_N {
        return Err(Error::Capacity(format!(
            "subset search over {n} vertices exceeds the limit of {BRUTE_DIRECTED_MAX_N}"
        )));
    }
    for k in 0..=n {
        for bits in subsets_of_size(n, k) {
            if topological_order(g, |i| bits >> i & 1 == 0).is_some() {
                let set = VertexSet::from_mask((0..n).map(|i| bits >> i & 1 == 1).collect());
                return Ok((k, set));
            }
        }
    }
    unreachable!("removing every vertex leaves an empty DAG")
}
