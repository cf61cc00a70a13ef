//! The spin-glass model on an undirected graph.
//!
//! Each vertex `i` carries a state `A_i`: empty, root, or a pointer to one
//! neighbor (its parent). An edge is satisfied when either both endpoints are
//! empty, or an occupied endpoint does not point at an empty one, or exactly
//! one of two occupied endpoints is the parent of the other. Configurations
//! satisfying every edge are *solutions*; their occupied vertices induce a
//! disjoint union of trees and c-trees.
//!
//! States are stored compactly per vertex: `0` empty, `1` root, `2 + k` for
//! the parent `neighbors(i)[k]`.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{classify_induced, rng_from_seed, ComponentKind, Components, Graph, VertexSet};

pub const EMPTY: u32 = 0;
pub const ROOT: u32 = 1;

/// State of a single vertex, `A_i ∈ {0, i} ∪ ∂i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum VertexState {
    Empty,
    Root,
    Parent(usize),
}

/// A microscopic configuration in compact encoding.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Configuration {
    codes: Vec<u32>,
}

/// Number of possible states of vertex `i` (`d_i + 2`).
pub fn state_count(g: &Graph, i: usize) -> u32 {
    g.degree(i) as u32 + 2
}

fn encode(g: &Graph, i: usize, s: VertexState) -> Result<u32> {
    match s {
        VertexState::Empty => Ok(EMPTY),
        VertexState::Root => Ok(ROOT),
        VertexState::Parent(j) if j == i => Ok(ROOT),
        VertexState::Parent(j) => g
            .neighbor_index(i, j)
            .map(|k| 2 + k as u32)
            .ok_or_else(|| Error::Contract(format!("vertex {j} is not a neighbor of {i}"))),
    }
}

fn decode(g: &Graph, i: usize, code: u32) -> VertexState {
    match code {
        EMPTY => VertexState::Empty,
        ROOT => VertexState::Root,
        c => VertexState::Parent(g.neighbors(i)[(c - 2) as usize]),
    }
}

impl Configuration {
    pub fn all_empty(g: &Graph) -> Self {
        Self {
            codes: vec![EMPTY; g.n()],
        }
    }

    pub fn from_states(g: &Graph, states: &[VertexState]) -> Result<Self> {
        if states.len() != g.n() {
            return Err(Error::Contract(format!(
                "{} states for {} vertices",
                states.len(),
                g.n()
            )));
        }
        let codes = states
            .iter()
            .enumerate()
            .map(|(i, &s)| encode(g, i, s))
            .collect::<Result<_>>()?;
        Ok(Self { codes })
    }

    pub fn from_codes(g: &Graph, codes: Vec<u32>) -> Result<Self> {
        if codes.len() != g.n() {
            return Err(Error::Contract(format!(
                "{} states for {} vertices",
                codes.len(),
                g.n()
            )));
        }
        if let Some(i) = (0..g.n()).find(|&i| codes[i] >= state_count(g, i)) {
            return Err(Error::Contract(format!(
                "state code {} invalid for vertex {i} of degree {}",
                codes[i],
                g.degree(i)
            )));
        }
        Ok(Self { codes })
    }

    pub fn codes(&self) -> &[u32] {
        &self.codes
    }

    pub fn state(&self, g: &Graph, i: usize) -> VertexState {
        decode(g, i, self.codes[i])
    }

    pub fn states(&self, g: &Graph) -> Vec<VertexState> {
        (0..g.n()).map(|i| self.state(g, i)).collect()
    }

    pub fn is_occupied(&self, i: usize) -> bool {
        self.codes[i] != EMPTY
    }

    pub fn occupied(&self) -> VertexSet {
        VertexSet::from_mask(self.codes.iter().map(|&c| c != EMPTY).collect())
    }
}

/// Edge factor on compact codes; `(i, j)` must be an edge.
#[inline]
pub(crate) fn factor_codes(g: &Graph, i: usize, j: usize, ci: u32, cj: u32) -> bool {
    let points = |from: usize, code: u32, to: usize| code >= 2 && g.neighbors(from)[(code - 2) as usize] == to;
    let i_to_j = points(i, ci, j);
    let j_to_i = points(j, cj, i);
    match (ci == EMPTY, cj == EMPTY) {
        (true, true) => true,
        // an empty vertex cannot be anyone's parent
        (true, false) => !j_to_i,
        (false, true) => !i_to_j,
        // both occupied: exactly one is the parent of the other
        (false, false) => i_to_j != j_to_i,
    }
}

/// The edge factor `C_ij(A_i, A_j)`; `true` means the edge is satisfied.
pub fn edge_factor(g: &Graph, i: usize, j: usize, a_i: VertexState, a_j: VertexState) -> Result<bool> {
    if !g.has_edge(i, j) {
        return Err(Error::Contract(format!("({i}, {j}) is not an edge")));
    }
    let ci = encode(g, i, a_i)?;
    let cj = encode(g, j, a_j)?;
    Ok(factor_codes(g, i, j, ci, cj))
}

/// Numbers of occupied vertices and occupied edges.
pub fn occupied_counts(g: &Graph, a: &Configuration) -> (usize, usize) {
    let n_occ = a.codes.iter().filter(|&&c| c != EMPTY).count();
    let m_occ = g
        .edges()
        .iter()
        .filter(|&&(i, j)| a.is_occupied(i) && a.is_occupied(j))
        .count();
    (n_occ, m_occ)
}

pub fn is_solution(g: &Graph, a: &Configuration) -> bool {
    g.edges()
        .iter()
        .all(|&(i, j)| factor_codes(g, i, j, a.codes[i], a.codes[j]))
}

/// An occupied vertex set whose induced components are all trees or c-trees.
#[derive(Clone, Debug)]
pub struct LegitimateSubgraph {
    occupied: VertexSet,
    components: Components,
}

impl LegitimateSubgraph {
    /// Validates `occupied` against `g`.
    pub fn new(g: &Graph, occupied: VertexSet) -> Result<Self> {
        if occupied.universe() != g.n() {
            return Err(Error::Contract("vertex set does not match graph".into()));
        }
        let components = classify_induced(g, occupied.mask());
        if !components.is_legitimate() {
            return Err(Error::Contract(
                "occupied subgraph has a component with more than one cycle".into(),
            ));
        }
        Ok(Self {
            occupied,
            components,
        })
    }

    pub fn occupied(&self) -> &VertexSet {
        &self.occupied
    }

    pub fn components(&self) -> &Components {
        &self.components
    }

    pub fn c_tree_count(&self) -> usize {
        self.components
            .components
            .iter()
            .filter(|c| c.kind == ComponentKind::CTree)
            .count()
    }

    pub fn total_weight(&self, g: &Graph) -> f64 {
        g.total_weight(&self.occupied)
    }
}

/// The legitimate subgraph formed by the occupied vertices of a solution.
pub fn solution_to_subgraph(g: &Graph, a: &Configuration) -> Result<LegitimateSubgraph> {
    if !is_solution(g, a) {
        return Err(Error::Contract("configuration is not a solution".into()));
    }
    LegitimateSubgraph::new(g, a.occupied())
}

/// Whether every component induced by `occupied` is a tree or a c-tree.
pub fn check_legitimate(g: &Graph, occupied: &VertexSet) -> bool {
    occupied.universe() == g.n() && classify_induced(g, occupied.mask()).is_legitimate()
}

/// Number of solutions sharing the occupied set of `s`:
/// `2^{#c-trees} · Π_{trees} |t|`.
pub fn degeneracy(s: &LegitimateSubgraph) -> Result<u128> {
    let mut count: u128 = 1;
    for c in &s.components.components {
        let factor = match c.kind {
            ComponentKind::Tree => c.vertices.len() as u128,
            ComponentKind::CTree => 2,
            ComponentKind::MultiCycle => unreachable!("validated on construction"),
        };
        count = count
            .checked_mul(factor)
            .ok_or_else(|| Error::Numeric("degeneracy overflows u128".into()))?;
    }
    Ok(count)
}

/// Vertices on the unique cycle of a c-tree component.
fn cycle_of(g: &Graph, vertices: &[usize], inside: &[bool]) -> Vec<usize> {
    let mut alive = vec![false; g.n()];
    for &v in vertices {
        alive[v] = inside[v];
    }
    crate::graph::core_mask_in_place(g, &mut alive);
    vertices.iter().copied().filter(|&v| alive[v]).collect()
}

/// How [`decode_fvs`] picks the vertex removed from each c-tree cycle.
#[derive(Clone, Copy, Debug)]
pub enum CycleBreak {
    Random(u64),
    LowestIndex,
}

/// Feedback vertex set from a solution: all empty vertices plus one vertex
/// of each c-tree cycle, chosen uniformly at random with the given seed.
pub fn decode_fvs(g: &Graph, a: &Configuration, seed: u64) -> Result<VertexSet> {
    decode_fvs_with(g, a, CycleBreak::Random(seed))
}

pub fn decode_fvs_with(g: &Graph, a: &Configuration, rule: CycleBreak) -> Result<VertexSet> {
    let sub = solution_to_subgraph(g, a)?;
    let mut gamma = sub.occupied.complement();
    let mut rng = match rule {
        CycleBreak::Random(seed) => Some(rng_from_seed(seed)),
        CycleBreak::LowestIndex => None,
    };
    for comp in &sub.components.components {
        if comp.kind != ComponentKind::CTree {
            continue;
        }
        let cycle = cycle_of(g, &comp.vertices, sub.occupied.mask());
        let pick = match rng.as_mut() {
            Some(rng) => cycle[rng.random_range(0..cycle.len())],
            None => cycle[0],
        };
        gamma.insert(pick);
    }
    Ok(gamma)
}

/// True iff removing `gamma` leaves a forest.
pub fn verify_fvs(g: &Graph, gamma: &VertexSet) -> bool {
    gamma.universe() == g.n() && crate::graph::acyclic_on(g, |i| !gamma.contains(i))
}
