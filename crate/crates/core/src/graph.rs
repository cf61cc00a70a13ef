//! Undirected simple graphs, generators and structural queries.
//!
//! Vertices are indexed `0..n` internally. Adjacency is stored in compressed
//! form with every neighbor list sorted ascending, so that a vertex's `k`-th
//! neighbor and the half-edge `(i, k)` have a stable meaning for message
//! passing and for the compact configuration encoding.

use std::collections::{HashSet, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{param, Error, Result};

pub(crate) fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A subset of the vertices `0..n` of some graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VertexSet {
    mask: Vec<bool>,
    len: usize,
}

impl VertexSet {
    pub fn empty(n: usize) -> Self {
        Self {
            mask: vec![false; n],
            len: 0,
        }
    }

    pub fn full(n: usize) -> Self {
        Self {
            mask: vec![true; n],
            len: n,
        }
    }

    pub fn from_indices(n: usize, indices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut set = Self::empty(n);
        for i in indices {
            if i >= n {
                return Err(Error::Contract(format!(
                    "vertex {i} out of range for a graph with {n} vertices"
                )));
            }
            set.insert(i);
        }
        Ok(set)
    }

    pub fn from_mask(mask: Vec<bool>) -> Self {
        let len = mask.iter().filter(|&&b| b).count();
        Self { mask, len }
    }

    /// Size of the universe `0..n` this set lives in.
    pub fn universe(&self) -> usize {
        self.mask.len()
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn contains(&self, i: usize) -> bool {
        self.mask.get(i).copied().unwrap_or(false)
    }

    /// Returns `true` when `i` was not already present.
    pub fn insert(&mut self, i: usize) -> bool {
        if self.mask[i] {
            return false;
        }
        self.mask[i] = true;
        self.len += 1;
        true
    }

    pub fn remove(&mut self, i: usize) -> bool {
        if !self.mask[i] {
            return false;
        }
        self.mask[i] = false;
        self.len -= 1;
        true
    }

    pub fn mask(&self) -> &[bool] {
        &self.mask
    }

    /// Members in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.mask
            .iter()
            .enumerate()
            .filter_map(|(i, &b)| b.then_some(i))
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn complement(&self) -> Self {
        Self {
            mask: self.mask.iter().map(|b| !b).collect(),
            len: self.mask.len() - self.len,
        }
    }

    pub fn is_subset_of(&self, other: &VertexSet) -> bool {
        self.iter().all(|i| other.contains(i))
    }
}

/// Immutable undirected simple graph with non-negative vertex weights.
#[derive(Clone, Debug)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    weights: Vec<f64>,
    offsets: Vec<usize>,
    targets: Vec<usize>,
    // reverse[h] is the half-edge pointing back along h
    reverse: Vec<usize>,
}

impl Graph {
    /// Builds a graph, rejecting self-loops, duplicate edges, out-of-range
    /// endpoints and negative or non-finite weights. `weights = None` means
    /// unit weights.
    pub fn new(n: usize, edges: Vec<(usize, usize)>, weights: Option<Vec<f64>>) -> Result<Self> {
        let weights = match weights {
            Some(w) => {
                if w.len() != n {
                    return Err(Error::InvalidGraph(format!(
                        "{} weights given for {n} vertices",
                        w.len()
                    )));
                }
                if let Some((i, v)) = w.iter().enumerate().find(|(_, v)| !(v.is_finite() && **v >= 0.0)) {
                    return Err(Error::InvalidGraph(format!(
                        "weight of vertex {i} is {v}, must be finite and non-negative"
                    )));
                }
                w
            }
            None => vec![1.0; n],
        };

        let mut degree = vec![0usize; n];
        for &(i, j) in &edges {
            if i >= n || j >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({i}, {j}) references a vertex outside 0..{n}"
                )));
            }
            if i == j {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {i}")));
            }
            degree[i] += 1;
            degree[j] += 1;
        }

        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut fill = offsets[..n].to_vec();
        let mut targets = vec![0usize; offsets[n]];
        for &(i, j) in &edges {
            targets[fill[i]] = j;
            fill[i] += 1;
            targets[fill[j]] = i;
            fill[j] += 1;
        }
        for i in 0..n {
            let nb = &mut targets[offsets[i]..offsets[i + 1]];
            nb.sort_unstable();
            if let Some(w) = nb.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::InvalidGraph(format!(
                    "duplicate edge ({i}, {})",
                    w[0]
                )));
            }
        }

        let mut reverse = vec![0usize; targets.len()];
        for i in 0..n {
            for h in offsets[i]..offsets[i + 1] {
                let j = targets[h];
                let nb = &targets[offsets[j]..offsets[j + 1]];
                let k = nb.binary_search(&i).expect("adjacency is symmetric");
                reverse[h] = offsets[j] + k;
            }
        }

        Ok(Self {
            n,
            edges,
            weights,
            offsets,
            targets,
            reverse,
        })
    }

    /// Unit-weight graph.
    pub fn from_edges(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        Self::new(n, edges, None)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn weight(&self, i: usize) -> f64 {
        self.weights[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.offsets[i + 1] - self.offsets[i]
    }

    /// Sorted neighbor list of `i`.
    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.targets[self.offsets[i]..self.offsets[i + 1]]
    }

    /// Half-edge index range of the edges leaving `i`.
    pub fn half_edges(&self, i: usize) -> std::ops::Range<usize> {
        self.offsets[i]..self.offsets[i + 1]
    }

    pub fn half_edge_target(&self, h: usize) -> usize {
        self.targets[h]
    }

    pub fn reverse(&self, h: usize) -> usize {
        self.reverse[h]
    }

    pub fn num_half_edges(&self) -> usize {
        self.targets.len()
    }

    /// Position of `j` in the neighbor list of `i`, if adjacent.
    pub fn neighbor_index(&self, i: usize, j: usize) -> Option<usize> {
        self.neighbors(i).binary_search(&j).ok()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        i < self.n && j < self.n && self.neighbor_index(i, j).is_some()
    }

    pub fn is_unit_weight(&self) -> bool {
        self.weights.iter().all(|&w| w == 1.0)
    }

    pub fn total_weight(&self, set: &VertexSet) -> f64 {
        set.iter().map(|i| self.weights[i]).sum()
    }

    /// Subgraph induced by `keep`, together with the map from new indices to
    /// the original ones. Edge order follows the original edge list.
    pub fn induced_subgraph(&self, keep: &[bool]) -> (Graph, Vec<usize>) {
        let mut new_index = vec![usize::MAX; self.n];
        let mut map = Vec::new();
        for (i, &k) in keep.iter().enumerate() {
            if k {
                new_index[i] = map.len();
                map.push(i);
            }
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(i, j)| keep[i] && keep[j])
            .map(|&(i, j)| (new_index[i], new_index[j]))
            .collect();
        let weights = map.iter().map(|&i| self.weights[i]).collect();
        let g = Graph::new(map.len(), edges, Some(weights)).expect("induced subgraph of a simple graph");
        (g, map)
    }
}

/// Erdős–Rényi graph with exactly `round(c·n/2)` distinct edges, each drawn
/// as a uniformly random vertex pair; self-loops and repeated pairs are
/// discarded and redrawn.
pub fn gen_er(n: usize, c: f64, seed: u64) -> Result<Graph> {
    if n < 2 {
        return param(format!("ER graph needs n >= 2, got {n}"));
    }
    if !(c.is_finite() && c >= 0.0) {
        return param(format!("mean degree must be finite and >= 0, got {c}"));
    }
    let m = (c * n as f64 / 2.0).round() as usize;
    let max_m = n * (n - 1) / 2;
    if m > max_m {
        return param(format!(
            "mean degree {c} needs {m} edges but only {max_m} distinct pairs exist on {n} vertices"
        ));
    }
    let mut rng = rng_from_seed(seed);
    let mut seen = HashSet::with_capacity(m);
    let mut edges = Vec::with_capacity(m);
    while edges.len() < m {
        let i = rng.random_range(0..n);
        let j = rng.random_range(0..n);
        if i == j {
            continue;
        }
        if seen.insert((i.min(j), i.max(j))) {
            edges.push((i, j));
        }
    }
    Graph::from_edges(n, edges)
}

const RR_MAX_RESTARTS: usize = 100;

/// Random `k`-regular simple graph from the pairing model. Stubs are matched
/// one random pair at a time; a pair that would create a self-loop or a
/// duplicate edge is redrawn, and the whole pairing restarts when no legal
/// pair is left.
pub fn gen_rr(n: usize, k: usize, seed: u64) -> Result<Graph> {
    if (n * k) % 2 == 1 {
        return param(format!("n·K must be even, got n={n}, K={k}"));
    }
    if k >= n && !(n == 0 && k == 0) {
        return param(format!("degree K={k} must be smaller than n={n}"));
    }
    let mut rng = rng_from_seed(seed);
    for attempt in 0..RR_MAX_RESTARTS {
        if let Some(edges) = try_pairing(n, k, &mut rng) {
            if attempt > 0 {
                log::debug!("regular pairing succeeded after {attempt} restarts");
            }
            return Graph::from_edges(n, edges);
        }
    }
    Err(Error::Generation(format!(
        "pairing failed {RR_MAX_RESTARTS} times for n={n}, K={k}"
    )))
}

fn try_pairing(n: usize, k: usize, rng: &mut ChaCha8Rng) -> Option<Vec<(usize, usize)>> {
    let mut stubs: Vec<usize> = (0..n).flat_map(|i| std::iter::repeat_n(i, k)).collect();
    let mut seen: HashSet<(usize, usize)> = HashSet::with_capacity(n * k / 2);
    let mut edges = Vec::with_capacity(n * k / 2);
    let mut failures = 0usize;
    while !stubs.is_empty() {
        let len = stubs.len();
        let a = rng.random_range(0..len);
        let b = rng.random_range(0..len);
        let (u, v) = (stubs[a], stubs[b]);
        let ok = a != b && u != v && !seen.contains(&(u.min(v), u.max(v)));
        if ok {
            failures = 0;
            seen.insert((u.min(v), u.max(v)));
            edges.push((u, v));
            let (hi, lo) = if a > b { (a, b) } else { (b, a) };
            stubs.swap_remove(hi);
            stubs.swap_remove(lo);
            continue;
        }
        failures += 1;
        if failures > 64 + 4 * len {
            // few stubs left and most pairs illegal: pick among legal pairs directly
            let legal: Vec<(usize, usize)> = (0..len)
                .flat_map(|a| (a + 1..len).map(move |b| (a, b)))
                .filter(|&(a, b)| {
                    let (u, v) = (stubs[a], stubs[b]);
                    u != v && !seen.contains(&(u.min(v), u.max(v)))
                })
                .collect();
            if legal.is_empty() {
                return None;
            }
            let (a, b) = legal[rng.random_range(0..legal.len())];
            let (u, v) = (stubs[a], stubs[b]);
            seen.insert((u.min(v), u.max(v)));
            edges.push((u, v));
            stubs.swap_remove(b);
            stubs.swap_remove(a);
            failures = 0;
        }
    }
    Some(edges)
}

/// Periodic hyper-cubic lattice with side `l` in `d` dimensions. Vertex
/// indices are row-major in the coordinates (last coordinate fastest).
pub fn gen_lattice(d: usize, l: usize) -> Result<Graph> {
    if d == 0 {
        return param("lattice dimension must be >= 1");
    }
    if l < 3 {
        return param(format!(
            "lattice side must be >= 3 for periodic wrap without duplicate edges, got {l}"
        ));
    }
    let n = l
        .checked_pow(d as u32)
        .ok_or_else(|| Error::Parameter(format!("lattice {l}^{d} overflows")))?;
    let mut edges = Vec::with_capacity(n * d);
    for v in 0..n {
        let mut stride = 1;
        for _ in 0..d {
            let coord = (v / stride) % l;
            let next = if coord + 1 == l {
                v - coord * stride
            } else {
                v + stride
            };
            edges.push((v, next));
            stride *= l;
        }
    }
    Graph::from_edges(n, edges)
}

/// Result of recursive removal of vertices with degree 0 or 1.
#[derive(Clone, Debug)]
pub struct Pruned {
    /// The 2-core, re-indexed from 0.
    pub core: Graph,
    /// Map from core indices to original vertex indices.
    pub core_vertices: Vec<usize>,
    /// Original vertices removed by pruning (not including `removed_external`).
    pub pruned: VertexSet,
}

/// 2-core of `g` after deleting `removed_external`. Work is O(N + M) using
/// a queue of vertices whose degree dropped below 2.
pub fn prune_low_degree(g: &Graph, removed_external: &VertexSet) -> Result<Pruned> {
    if removed_external.universe() != g.n() {
        return Err(Error::Contract(format!(
            "removed set lives on {} vertices, graph has {}",
            removed_external.universe(),
            g.n()
        )));
    }
    let mut alive: Vec<bool> = removed_external.mask().iter().map(|b| !b).collect();
    let pruned = core_mask_in_place(g, &mut alive);
    let (core, core_vertices) = g.induced_subgraph(&alive);
    Ok(Pruned {
        core,
        core_vertices,
        pruned: VertexSet::from_indices(g.n(), pruned).expect("indices in range"),
    })
}

/// Shrinks `alive` to the 2-core of the subgraph it induces and returns the
/// vertices it removed.
pub(crate) fn core_mask_in_place(g: &Graph, alive: &mut [bool]) -> Vec<usize> {
    let mut deg: Vec<usize> = (0..g.n())
        .map(|i| {
            if alive[i] {
                g.neighbors(i).iter().filter(|&&j| alive[j]).count()
            } else {
                0
            }
        })
        .collect();
    let mut queue: VecDeque<usize> = (0..g.n()).filter(|&i| alive[i] && deg[i] < 2).collect();
    let mut removed = Vec::new();
    while let Some(v) = queue.pop_front() {
        if !alive[v] {
            continue;
        }
        alive[v] = false;
        removed.push(v);
        for &u in g.neighbors(v) {
            if alive[u] {
                deg[u] -= 1;
                if deg[u] == 1 {
                    queue.push_back(u);
                }
            }
        }
    }
    removed
}

/// Disjoint-set forest with path halving and union by size.
#[derive(Clone, Debug)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns `false` if `a` and `b` were already connected.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        true
    }
}

/// True iff `g` is a forest.
pub fn is_acyclic(g: &Graph) -> bool {
    acyclic_on(g, |_| true)
}

/// True iff the subgraph induced by the vertices with `keep(i)` is a forest.
pub(crate) fn acyclic_on(g: &Graph, keep: impl Fn(usize) -> bool) -> bool {
    let mut uf = UnionFind::new(g.n());
    g.edges()
        .iter()
        .filter(|&&(i, j)| keep(i) && keep(j))
        .all(|&(i, j)| uf.union(i, j))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ComponentKind {
    Tree,
    CTree,
    MultiCycle,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    /// Vertices in ascending order.
    pub vertices: Vec<usize>,
    pub edges: usize,
    pub kind: ComponentKind,
}

/// Connected components of a (possibly induced) subgraph.
#[derive(Clone, Debug)]
pub struct Components {
    /// Component index of each vertex, `None` for vertices outside the subgraph.
    pub label: Vec<Option<usize>>,
    pub components: Vec<Component>,
}

impl Components {
    pub fn all_trees(&self) -> bool {
        self.components.iter().all(|c| c.kind == ComponentKind::Tree)
    }

    /// Every component is a tree or a c-tree.
    pub fn is_legitimate(&self) -> bool {
        self.components
            .iter()
            .all(|c| c.kind != ComponentKind::MultiCycle)
    }
}

/// Labels each component of `g` as tree, c-tree (one cycle) or multi-cycle.
pub fn classify_components(g: &Graph) -> Components {
    classify_induced(g, &vec![true; g.n()])
}

/// Same as [`classify_components`] on the subgraph induced by `keep`.
pub fn classify_induced(g: &Graph, keep: &[bool]) -> Components {
    let n = g.n();
    let mut label = vec![None; n];
    let mut components = Vec::new();
    let mut stack = Vec::new();
    for s in 0..n {
        if !keep[s] || label[s].is_some() {
            continue;
        }
        let id = components.len();
        label[s] = Some(id);
        stack.push(s);
        let mut vertices = Vec::new();
        let mut degree_sum = 0;
        while let Some(v) = stack.pop() {
            vertices.push(v);
            for &u in g.neighbors(v) {
                if keep[u] {
                    degree_sum += 1;
                    if label[u].is_none() {
                        label[u] = Some(id);
                        stack.push(u);
                    }
                }
            }
        }
        vertices.sort_unstable();
        let edges = degree_sum / 2;
        let kind = match edges.cmp(&vertices.len()) {
            std::cmp::Ordering::Less => ComponentKind::Tree,
            std::cmp::Ordering::Equal => ComponentKind::CTree,
            std::cmp::Ordering::Greater => ComponentKind::MultiCycle,
        };
        components.push(Component {
            vertices,
            edges,
            kind,
        });
    }
    Components { label, components }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)).collect()).unwrap()
    }

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i)).collect()).unwrap()
    }

    fn k4() -> Graph {
        Graph::from_edges(4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn rejects_non_simple_input() {
        assert!(matches!(
            Graph::from_edges(3, vec![(0, 0)]),
            Err(Error::InvalidGraph(_))
        ));
        assert!(matches!(
            Graph::from_edges(3, vec![(0, 1), (1, 0)]),
            Err(Error::InvalidGraph(_))
        ));
        assert!(Graph::from_edges(2, vec![(0, 2)]).is_err());
        assert!(Graph::new(2, vec![(0, 1)], Some(vec![1.0, -0.5])).is_err());
    }

    #[test]
    fn half_edges_are_consistent() {
        let g = gen_er(50, 4.0, 3).unwrap();
        for i in 0..g.n() {
            assert_eq!(g.degree(i), g.edges().iter().filter(|&&(a, b)| a == i || b == i).count());
            for h in g.half_edges(i) {
                let j = g.half_edge_target(h);
                let r = g.reverse(h);
                assert_eq!(g.half_edge_target(r), i);
                assert!(g.half_edges(j).contains(&r));
                assert_eq!(g.reverse(r), h);
            }
        }
    }

    #[test]
    fn er_examples() {
        let g = gen_er(4, 3.0, 1).unwrap();
        assert_eq!(g.m(), 6);
        assert!((0..4).all(|i| g.degree(i) == 3));
        let g = gen_er(100, 0.0, 5).unwrap();
        assert_eq!(g.m(), 0);
        assert!(is_acyclic(&g));
        assert!(gen_er(4, 3.5, 1).is_err());
        assert!(gen_er(1, 1.0, 1).is_err());
        assert_eq!(gen_er(1000, 10.0, 9).unwrap().m(), 5000);
    }

    #[test]
    fn er_is_deterministic_per_seed() {
        let a = gen_er(200, 3.0, 42).unwrap();
        let b = gen_er(200, 3.0, 42).unwrap();
        let c = gen_er(200, 3.0, 43).unwrap();
        assert_eq!(a.edges(), b.edges());
        assert_ne!(a.edges(), c.edges());
    }

    #[test]
    fn rr_examples() {
        let g = gen_rr(4, 3, 7).unwrap();
        assert_eq!(g.m(), 6);
        let g = gen_rr(6, 2, 11).unwrap();
        assert!((0..6).all(|i| g.degree(i) == 2));
        let comps = classify_components(&g);
        assert!(comps.components.iter().all(|c| c.kind == ComponentKind::CTree));
        assert!(matches!(gen_rr(7, 3, 1), Err(Error::Parameter(_))));
        assert!(gen_rr(4, 4, 1).is_err());
        let g = gen_rr(10_000, 3, 5).unwrap();
        assert!((0..g.n()).all(|i| g.degree(i) == 3));
    }

    #[test]
    fn lattice_examples() {
        let g = gen_lattice(2, 3).unwrap();
        assert_eq!((g.n(), g.m()), (9, 18));
        assert!((0..9).all(|i| g.degree(i) == 4));
        let g = gen_lattice(3, 4).unwrap();
        assert_eq!((g.n(), g.m()), (64, 192));
        assert!((0..64).all(|i| g.degree(i) == 6));
        let g = gen_lattice(1, 5).unwrap();
        assert_eq!(g.m(), 5);
        let comps = classify_components(&g);
        assert_eq!(comps.components.len(), 1);
        assert_eq!(comps.components[0].kind, ComponentKind::CTree);
        assert!(gen_lattice(2, 2).is_err());
        // row-major: (1, 2) in a 2D 4x4 lattice is index 6, neighbors of (1,2)
        let g = gen_lattice(2, 4).unwrap();
        assert_eq!(g.neighbors(6), &[2, 5, 7, 10]);
    }

    #[test]
    fn pruning_examples() {
        let tree = path(6);
        let p = prune_low_degree(&tree, &VertexSet::empty(6)).unwrap();
        assert_eq!(p.core.n(), 0);
        assert_eq!(p.pruned.len(), 6);

        let mut edges: Vec<_> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
        edges.push((2, 5));
        let g = Graph::from_edges(6, edges).unwrap();
        let p = prune_low_degree(&g, &VertexSet::empty(6)).unwrap();
        assert_eq!(p.core_vertices, vec![0, 1, 2, 3, 4]);
        assert_eq!(p.core.m(), 5);
        assert_eq!(p.pruned.to_vec(), vec![5]);

        let p = prune_low_degree(&k4(), &VertexSet::empty(4)).unwrap();
        assert_eq!((p.core.n(), p.core.m()), (4, 6));

        let removed = VertexSet::from_indices(6, [0]).unwrap();
        let p = prune_low_degree(&g, &removed).unwrap();
        assert_eq!(p.core.n(), 0);
        assert!(!p.pruned.contains(0));
    }

    #[test]
    fn acyclicity_examples() {
        assert!(is_acyclic(&path(5)));
        assert!(!is_acyclic(&cycle(3)));
        let two = Graph::from_edges(6, vec![(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
        assert!(!is_acyclic(&two));
    }

    #[test]
    fn classification_examples() {
        let mut edges: Vec<_> = (0..4).map(|i| (i, (i + 1) % 4)).collect();
        edges.push((0, 4));
        let g = Graph::from_edges(5, edges).unwrap();
        let c = classify_components(&g);
        assert_eq!(c.components.len(), 1);
        assert_eq!(c.components[0].kind, ComponentKind::CTree);
        assert_eq!((c.components[0].vertices.len(), c.components[0].edges), (5, 5));

        let c = classify_components(&path(3));
        assert_eq!(c.components[0].kind, ComponentKind::Tree);

        let c = classify_components(&k4());
        assert_eq!(c.components[0].kind, ComponentKind::MultiCycle);
        assert!(!c.is_legitimate());
    }

    #[test]
    fn er_degrees_follow_poisson() {
        // chi-square against Poisson(c) pooled over seeds, tail bins merged
        let (n, c) = (10_000usize, 3.0f64);
        let mut hist = vec![0usize; 9];
        let seeds = 5;
        for seed in 0..seeds {
            let g = gen_er(n, c, seed).unwrap();
            for i in 0..n {
                hist[g.degree(i).min(8)] += 1;
            }
        }
        let total = (n * seeds as usize) as f64;
        let mut pmf = Vec::new();
        let mut p = (-c).exp();
        for d in 0..8 {
            pmf.push(p);
            p *= c / (d + 1) as f64;
        }
        pmf.push(1.0 - pmf.iter().sum::<f64>());
        let chi2: f64 = hist
            .iter()
            .zip(&pmf)
            .map(|(&o, &p)| (o as f64 - total * p).powi(2) / (total * p))
            .sum();
        // 8 degrees of freedom, 99.9% quantile is 26.1; the fixed-M model
        // is slightly less dispersed than Poisson, which only lowers chi2
        assert!(chi2 < 26.1, "chi2 = {chi2}, hist = {hist:?}");
    }
}
