#![allow(dead_code)]

use fvs_core::directed::DiGraph;
use fvs_core::Graph;
use rand::seq::SliceRandom;
use rand::Rng;

/// Uniform random labelled tree by random attachment and relabelling.
pub fn random_tree(n: usize, rng: &mut impl Rng) -> Graph {
    let mut label: Vec<usize> = (0..n).collect();
    label.shuffle(rng);
    let edges = (1..n).map(|i| (label[rng.random_range(0..i)], label[i])).collect();
    Graph::from_edges(n, edges).unwrap()
}

pub fn random_gnp(n: usize, p: f64, rng: &mut impl Rng) -> Graph {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.random_bool(p) {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

pub fn cycle(n: usize) -> Graph {
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)).collect()).unwrap()
}

pub fn random_digraph(n: usize, p: f64, rng: &mut impl Rng) -> DiGraph {
    let mut arcs = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j && rng.random_bool(p) {
                arcs.push((i, j));
            }
        }
    }
    DiGraph::from_arcs(n, arcs).unwrap()
}

/// Digraph on `n` vertices whose arcs are the set bits of `mask` over the
/// `n(n-1)` ordered pairs.
pub fn digraph_from_mask(n: usize, mask: u64) -> DiGraph {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();
    let arcs = pairs
        .iter()
        .enumerate()
        .filter(|(k, _)| mask >> k & 1 == 1)
        .map(|(_, &a)| a)
        .collect();
    DiGraph::from_arcs(n, arcs).unwrap()
}

/// Acyclicity of the subgraph induced by `keep`, by transitive closure.
pub fn induced_is_dag(g: &DiGraph, keep: &[bool]) -> bool {
    let n = g.n();
    let mut reach = vec![vec![false; n]; n];
    for &(i, j) in g.arcs() {
        if keep[i] && keep[j] {
            reach[i][j] = true;
        }
    }
    for k in 0..n {
        for i in 0..n {
            if reach[i][k] {
                let row = reach[k].clone();
                for (r, via) in reach[i].iter_mut().zip(row) {
                    *r |= via;
                }
            }
        }
    }
    (0..n).all(|v| !reach[v][v])
}

/// Whether the subgraph induced by `keep` is a forest, by counting
/// components with a plain DFS (`|E| = |V| - #components`).
pub fn induced_is_forest(g: &Graph, keep: &[bool]) -> bool {
    let n = g.n();
    let vertices = keep.iter().filter(|&&k| k).count();
    let edges = g.edges().iter().filter(|&&(i, j)| keep[i] && keep[j]).count();
    let mut seen = vec![false; n];
    let mut comps = 0;
    for s in 0..n {
        if !keep[s] || seen[s] {
            continue;
        }
        comps += 1;
        let mut stack = vec![s];
        seen[s] = true;
        while let Some(v) = stack.pop() {
            for &u in g.neighbors(v) {
                if keep[u] && !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
    }
    edges + comps == vertices
}
