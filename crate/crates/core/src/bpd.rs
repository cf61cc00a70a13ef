//! Belief propagation-guided decimation and baseline heuristics.
//!
//! BPD alternates BP sweeps on the current 2-core with the removal of the
//! vertices most likely to be empty. Removed vertices form the feedback
//! vertex set; vertices that fall out of the 2-core afterwards are simply
//! dropped and never join the set.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bp::{iterate, BpState, MAX_X};
use crate::error::{param, Error, Result};
use crate::graph::{core_mask_in_place, Graph, UnionFind, VertexSet};
use crate::model::verify_fvs;

/// Recommended `x` on Erdős–Rényi graphs.
pub const DEFAULT_X_ER: f64 = 12.0;
/// Recommended `x` on regular random graphs and lattices.
pub const DEFAULT_X_REGULAR: f64 = 7.0;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BpdParams {
    pub x: f64,
    /// BP sweeps per decimation stage.
    pub rounds: usize,
    /// Fraction of the current 2-core decimated per stage.
    pub fraction: f64,
    /// A stage stops sweeping early once the largest message change drops below this.
    pub eps: f64,
    pub seed: u64,
}

impl Default for BpdParams {
    fn default() -> Self {
        Self {
            x: DEFAULT_X_ER,
            rounds: 500,
            fraction: 0.01,
            eps: 1e-8,
            seed: 1,
        }
    }
}

impl BpdParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.x > 0.0 && self.x <= MAX_X) {
            return param(format!("x must lie in (0, {MAX_X}], got {}", self.x));
        }
        if self.rounds == 0 {
            return param("rounds per stage must be >= 1");
        }
        if !(self.fraction > 0.0 && self.fraction <= 1.0) {
            return param(format!("decimation fraction must lie in (0, 1], got {}", self.fraction));
        }
        if self.eps.is_nan() || self.eps <= 0.0 {
            return param(format!("eps must be positive, got {}", self.eps));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Solver {
    Bpd,
    Greedy,
    Random,
}

/// A feedback vertex set together with how it was obtained.
#[derive(Clone, Debug)]
pub struct FvsResult {
    pub gamma: VertexSet,
    pub weight: f64,
    pub verified: bool,
    pub solver: Solver,
    pub params: Option<BpdParams>,
    pub seed: u64,
}

impl FvsResult {
    fn new(g: &Graph, gamma: VertexSet, solver: Solver, params: Option<BpdParams>, seed: u64) -> Self {
        let verified = verify_fvs(g, &gamma);
        Self {
            weight: g.total_weight(&gamma),
            gamma,
            verified,
            solver,
            params,
            seed,
        }
    }

    pub fn size(&self) -> usize {
        self.gamma.len()
    }

    pub fn fraction(&self) -> f64 {
        let n = self.gamma.universe();
        if n == 0 {
            0.0
        } else {
            self.size() as f64 / n as f64
        }
    }
}

/// One decimation stage of a BPD run.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct StageTrace {
    pub stage: usize,
    /// 2-core size at the start of the stage.
    pub remaining: usize,
    pub removed: usize,
    pub pruned: usize,
    pub bp_rounds: usize,
    pub max_delta: f64,
}

impl StageTrace {
    pub const CSV_HEADER: &'static str = "stage,remaining,removed,pruned,bp_rounds,max_delta";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{}",
            self.stage, self.remaining, self.removed, self.pruned, self.bp_rounds, self.max_delta
        )
    }
}

/// Indices of the `k` largest values, ties broken by ascending index,
/// returned in that order.
pub fn select_decimation_targets(empty_prob: &[f64], k: usize) -> Result<Vec<usize>> {
    if k == 0 || k > empty_prob.len() {
        return param(format!(
            "cannot select {k} of {} vertices",
            empty_prob.len()
        ));
    }
    let mut idx: Vec<usize> = (0..empty_prob.len()).collect();
    let cmp = |&a: &usize, &b: &usize| {
        empty_prob[b]
            .total_cmp(&empty_prob[a])
            .then(a.cmp(&b))
    };
    if k < idx.len() {
        idx.select_nth_unstable_by(k - 1, cmp);
        idx.truncate(k);
    }
    idx.sort_unstable_by(cmp);
    Ok(idx)
}

/// BPD with a stage trace.
pub fn bpd_traced(g: &Graph, p: &BpdParams) -> Result<(FvsResult, Vec<StageTrace>)> {
    p.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let mut gamma = VertexSet::empty(g.n());
    let mut trace = Vec::new();

    // vertices outside every cycle never matter; start from the 2-core
    let mut keep = vec![true; g.n()];
    core_mask_in_place(g, &mut keep);
    let (mut cur, mut map) = g.induced_subgraph(&keep);
    let mut state = BpState::random(&cur, p.x, &mut rng)?;

    while cur.n() > 0 {
        let remaining = cur.n();
        let bp_rounds = iterate(&cur, &mut state, p.rounds, p.eps, &mut rng);
        let q0 = state.empty_probabilities(&cur);
        let k = ((p.fraction * remaining as f64).ceil() as usize).clamp(1, remaining);
        let targets = select_decimation_targets(&q0, k)?;

        let mut alive = vec![true; remaining];
        for &t in &targets {
            alive[t] = false;
            gamma.insert(map[t]);
        }
        let pruned = core_mask_in_place(&cur, &mut alive).len();
        trace.push(StageTrace {
            stage: trace.len(),
            remaining,
            removed: k,
            pruned,
            bp_rounds,
            max_delta: state.last_sweep_delta,
        });
        log::debug!(
            "stage {}: core {remaining}, removed {k}, pruned {pruned}, rounds {bp_rounds}, delta {:.2e}",
            trace.len() - 1,
            state.last_sweep_delta
        );

        let (next, sub_map) = cur.induced_subgraph(&alive);
        state = state.restrict(&cur, &next, &sub_map);
        map = sub_map.iter().map(|&v| map[v]).collect();
        cur = next;
    }

    let result = FvsResult::new(g, gamma, Solver::Bpd, Some(*p), p.seed);
    if !result.verified {
        return Err(Error::Contract("BPD produced a set that is not a feedback vertex set".into()));
    }
    Ok((result, trace))
}

/// Belief propagation-guided decimation.
pub fn bpd(g: &Graph, p: &BpdParams) -> Result<FvsResult> {
    bpd_traced(g, p).map(|(r, _)| r)
}

/// Drops vertices from a feedback vertex set while the complement stays a
/// forest. Candidates are tried by ascending weight, then index.
pub fn redundancy_prune(g: &Graph, gamma: &VertexSet) -> Result<VertexSet> {
    if !verify_fvs(g, gamma) {
        return Err(Error::Contract("input is not a feedback vertex set".into()));
    }
    let mut out = gamma.clone();
    let mut uf = UnionFind::new(g.n());
    for &(i, j) in g.edges() {
        if !out.contains(i) && !out.contains(j) {
            uf.union(i, j);
        }
    }
    let mut order = gamma.to_vec();
    order.sort_by(|&a, &b| g.weight(a).total_cmp(&g.weight(b)).then(a.cmp(&b)));
    let mut roots = Vec::new();
    for v in order {
        roots.clear();
        for &u in g.neighbors(v) {
            if !out.contains(u) {
                roots.push(uf.find(u));
            }
        }
        roots.sort_unstable();
        let distinct = roots.windows(2).all(|w| w[0] != w[1]);
        if distinct {
            out.remove(v);
            for &u in g.neighbors(v) {
                if !out.contains(u) {
                    uf.union(v, u);
                }
            }
        }
    }
    Ok(out)
}

/// Incrementally maintained 2-core with O(1) uniform sampling of its
/// vertices.
struct Core<'a> {
    g: &'a Graph,
    alive: Vec<bool>,
    degree: Vec<usize>,
    members: Vec<usize>,
    position: Vec<usize>,
}

impl<'a> Core<'a> {
    fn new(g: &'a Graph) -> Self {
        let mut alive = vec![true; g.n()];
        core_mask_in_place(g, &mut alive);
        let degree = (0..g.n())
            .map(|i| {
                if alive[i] {
                    g.neighbors(i).iter().filter(|&&j| alive[j]).count()
                } else {
                    0
                }
            })
            .collect();
        let members: Vec<usize> = (0..g.n()).filter(|&i| alive[i]).collect();
        let mut position = vec![usize::MAX; g.n()];
        for (p, &v) in members.iter().enumerate() {
            position[v] = p;
        }
        Self {
            g,
            alive,
            degree,
            members,
            position,
        }
    }

    fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    fn detach(&mut self, v: usize) {
        self.alive[v] = false;
        let p = self.position[v];
        let last = *self.members.last().unwrap();
        self.members.swap_remove(p);
        if last != v {
            self.position[last] = p;
        }
        self.position[v] = usize::MAX;
    }

    /// Removes `v` and prunes the vertices that drop below degree 2. Calls
    /// `touched(u, new_degree)` for surviving vertices whose degree changed.
    fn remove(&mut self, v: usize, mut touched: impl FnMut(usize, usize)) {
        let mut stack = vec![v];
        self.detach(v);
        while let Some(w) = stack.pop() {
            for &u in self.g.neighbors(w) {
                if !self.alive[u] {
                    continue;
                }
                self.degree[u] -= 1;
                if self.degree[u] < 2 {
                    self.detach(u);
                    stack.push(u);
                } else {
                    touched(u, self.degree[u]);
                }
            }
        }
    }
}

/// Removes uniformly random 2-core vertices until no cycle is left.
pub fn random_fvs(g: &Graph, seed: u64) -> FvsResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut core = Core::new(g);
    let mut gamma = VertexSet::empty(g.n());
    while !core.is_empty() {
        let v = core.members[rng.random_range(0..core.members.len())];
        gamma.insert(v);
        core.remove(v, |_, _| {});
    }
    FvsResult::new(g, gamma, Solver::Random, None, seed)
}

/// Repeatedly removes a vertex of maximum current degree in the 2-core.
/// Ties between equal degrees are broken by a random per-vertex priority.
pub fn greedy_degree_fvs(g: &Graph, seed: u64) -> FvsResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let priority: Vec<u64> = (0..g.n()).map(|_| rng.random()).collect();
    let mut core = Core::new(g);
    let mut heap: BinaryHeap<(usize, u64, Reverse<usize>)> = core
        .members
        .iter()
        .map(|&v| (core.degree[v], priority[v], Reverse(v)))
        .collect();
    let mut gamma = VertexSet::empty(g.n());
    while let Some((d, _, Reverse(v))) = heap.pop() {
        if !core.alive[v] || core.degree[v] != d {
            continue;
        }
        gamma.insert(v);
        core.remove(v, |u, du| heap.push((du, priority[u], Reverse(u))));
    }
    FvsResult::new(g, gamma, Solver::Greedy, None, seed)
}
