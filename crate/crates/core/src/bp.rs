//! Belief propagation for the feedback vertex set model.
//!
//! A cavity message `i → j` is the distribution of `A_i` on the graph with
//! `j` removed. Only two of its components matter to the updates: the
//! probability `q0` that `i` is empty and the probability `qroot` that `i` is
//! a root. The remaining mass `1 - q0 - qroot` is spread over the parent
//! states and is never materialized.
//!
//! For a vertex with inbound messages `m_k` write `a_k = q0_k + qroot_k`
//! (the neighbor can attach to the vertex) and `r_k = (1 - q0_k) / a_k`.
//! With `E = e^{x w} Π a_k` and `R = Σ r_k` the normalization is
//! `z = 1 + E (1 + R)`, the empty probability `1 / z` and the root
//! probability `E / z`. Messages use the same formula with the target
//! neighbor left out of the products and sums.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use crate::error::{param, Error, Result};
use crate::graph::Graph;

/// Largest re-weighting parameter accepted by the message-passing code.
pub const MAX_X: f64 = 50.0;
pub const DEFAULT_EPS: f64 = 1e-8;
pub const DEFAULT_MAX_ROUNDS: usize = 1000;

/// `(q0, qroot)` summary of a cavity distribution.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Message {
    pub q0: f64,
    pub qroot: f64,
}

impl Message {
    pub fn new(q0: f64, qroot: f64) -> Self {
        Self { q0, qroot }
    }

    /// Message sent by a vertex without other neighbors.
    pub fn leaf(x: f64, weight: f64) -> Self {
        update_message(x, weight, &[])
    }

    /// Uniform draw of `(q0, qroot, rest)` on the 2-simplex.
    pub fn random(rng: &mut impl Rng) -> Self {
        let (u, v): (f64, f64) = (rng.random(), rng.random());
        let (lo, hi) = if u < v { (u, v) } else { (v, u) };
        Self {
            q0: lo,
            qroot: hi - lo,
        }
    }

    pub fn is_valid(&self) -> bool {
        self.q0 >= 0.0 && self.qroot >= 0.0 && self.q0 + self.qroot <= 1.0 + 1e-12
    }

    /// Probability that the sender can attach to the receiver: empty, or a
    /// root that re-points at the receiver.
    #[inline]
    pub(crate) fn attachable(&self) -> f64 {
        self.q0 + self.qroot
    }

    #[inline]
    fn distance(&self, other: &Message) -> f64 {
        (self.q0 - other.q0).abs().max((self.qroot - other.qroot).abs())
    }
}

/// Normalization pieces `(ln E, R)` for a vertex over the given inbound
/// messages, with `E = e^{x w} Π a_k`.
pub(crate) fn cavity_terms(xw: f64, inbound: &[Message]) -> (f64, f64) {
    let mut log_e = xw;
    let mut r = 0.0;
    for m in inbound {
        let a = m.attachable();
        log_e += a.ln();
        r += (1.0 - m.q0) / a;
    }
    (log_e, r)
}

#[inline]
fn message_from(e: f64, r: f64) -> Message {
    if e.is_finite() {
        let z = 1.0 + e * (1.0 + r);
        Message {
            q0: 1.0 / z,
            qroot: e / z,
        }
    } else {
        Message {
            q0: 0.0,
            qroot: 1.0 / (1.0 + r),
        }
    }
}

/// BP update for the message a vertex of weight `weight` sends to one
/// neighbor, given the messages from all its *other* neighbors.
pub fn update_message(x: f64, weight: f64, inbound: &[Message]) -> Message {
    let (log_e, r) = cavity_terms(x * weight, inbound);
    message_from(log_e.exp(), r)
}

/// Full marginal of a vertex.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Marginal {
    pub q0: f64,
    pub qroot: f64,
    /// Probability of pointing at each neighbor, in neighbor order.
    pub qparent: Vec<f64>,
}

impl Marginal {
    pub fn total(&self) -> f64 {
        self.q0 + self.qroot + self.qparent.iter().sum::<f64>()
    }
}

/// Marginal of a vertex from the messages of all its neighbors (in neighbor
/// order).
pub fn marginal(x: f64, weight: f64, inbound: &[Message]) -> Marginal {
    let (log_e, r) = cavity_terms(x * weight, inbound);
    let log_z = log_normalization(log_e, r);
    let q0 = (-log_z).exp();
    let qroot = (log_e - log_z).exp();
    let qparent = inbound
        .iter()
        .map(|m| {
            let a = m.attachable();
            ((1.0 - m.q0) / a) * (log_e - log_z).exp()
        })
        .collect();
    Marginal { q0, qroot, qparent }
}

/// Argument of the edge free-entropy term for the two messages crossing an edge.
pub(crate) fn edge_argument(mij: &Message, mji: &Message) -> f64 {
    mij.q0 * mji.q0 + (1.0 - mij.q0) * mji.attachable() + (1.0 - mji.q0) * mij.attachable()
}

/// `ln(1 + E (1 + R))` without overflow.
pub(crate) fn log_normalization(log_e: f64, r: f64) -> f64 {
    let inner = log_e + (1.0 + r).ln();
    if inner > 30.0 {
        inner + (-inner).exp().ln_1p()
    } else {
        inner.exp().ln_1p()
    }
}

/// Messages on every directed edge of a graph plus iteration metadata.
#[derive(Clone)]
pub struct BpState {
    x: f64,
    damping: f64,
    /// `messages[h]` travels along half-edge `h` (from its source to its target).
    messages: Vec<Message>,
    pub last_sweep_delta: f64,
    pub converged: bool,
    pub rounds: usize,
    order: Vec<usize>,
    kernel: Kernel,
}

/// Computes all outbound messages of one vertex in O(d) using prefix and
/// suffix products of the attach probabilities.
#[derive(Clone, Default)]
pub(crate) struct Kernel {
    a: Vec<f64>,
    r: Vec<f64>,
    pre_a: Vec<f64>,
    pre_r: Vec<f64>,
}

impl Kernel {
    pub(crate) fn load(&mut self, inbound: impl Iterator<Item = Message>) {
        self.a.clear();
        self.r.clear();
        for m in inbound {
            let a = m.attachable();
            self.a.push(a);
            self.r.push((1.0 - m.q0) / a);
        }
    }

    /// Calls `emit(t, message)` for the message towards each loaded
    /// neighbor `t`, in reverse order.
    pub(crate) fn outputs(&mut self, xw: f64, mut emit: impl FnMut(usize, Message)) {
        let d = self.a.len();
        let exw = xw.exp();
        self.pre_a.clear();
        self.pre_r.clear();
        let (mut pa, mut pr) = (1.0, 0.0);
        for t in 0..d {
            self.pre_a.push(pa);
            self.pre_r.push(pr);
            pa *= self.a[t];
            pr += self.r[t];
        }
        let (mut sa, mut sr) = (1.0, 0.0);
        for t in (0..d).rev() {
            let p = self.pre_a[t] * sa;
            let r = self.pre_r[t] + sr;
            let m = if exw.is_finite() {
                message_from(exw * p, r)
            } else {
                let log_p: f64 = (0..d).filter(|&k| k != t).map(|k| self.a[k].ln()).sum();
                message_from((xw + log_p).exp(), r)
            };
            emit(t, m);
            sa *= self.a[t];
            sr += self.r[t];
        }
    }
}

impl fmt::Debug for BpState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BpState")
            .field("x", &self.x)
            .field("damping", &self.damping)
            .field("messages", &self.messages.len())
            .field("last_sweep_delta", &self.last_sweep_delta)
            .field("converged", &self.converged)
            .field("rounds", &self.rounds)
            .finish()
    }
}

fn check_x(x: f64) -> Result<()> {
    if !(x > 0.0 && x <= MAX_X) {
        return param(format!("re-weighting parameter must lie in (0, {MAX_X}], got {x}"));
    }
    Ok(())
}

impl BpState {
    /// Every message drawn uniformly on the simplex.
    pub fn random(g: &Graph, x: f64, rng: &mut impl Rng) -> Result<Self> {
        check_x(x)?;
        let messages = (0..g.num_half_edges()).map(|_| Message::random(rng)).collect();
        Ok(Self::with_messages(g, x, messages))
    }

    pub fn uniform(g: &Graph, x: f64, m: Message) -> Result<Self> {
        check_x(x)?;
        Ok(Self::with_messages(g, x, vec![m; g.num_half_edges()]))
    }

    fn with_messages(g: &Graph, x: f64, messages: Vec<Message>) -> Self {
        Self {
            x,
            damping: 0.0,
            messages,
            last_sweep_delta: f64::INFINITY,
            converged: false,
            rounds: 0,
            order: (0..g.n()).collect(),
            kernel: Kernel::default(),
        }
    }

    /// Damping factor `λ`: each update stores `(1-λ)·new + λ·old`.
    pub fn set_damping(&mut self, damping: f64) -> Result<()> {
        if !(0.0..1.0).contains(&damping) {
            return param(format!("damping must lie in [0, 1), got {damping}"));
        }
        self.damping = damping;
        Ok(())
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn messages(&self) -> &[Message] {
        &self.messages
    }

    /// Message `i → j`.
    pub fn message(&self, g: &Graph, i: usize, j: usize) -> Option<Message> {
        g.neighbor_index(i, j)
            .map(|k| self.messages[g.half_edges(i).start + k])
    }

    pub fn set_message(&mut self, g: &Graph, i: usize, j: usize, m: Message) -> Result<()> {
        let k = g
            .neighbor_index(i, j)
            .ok_or_else(|| Error::Contract(format!("({i}, {j}) is not an edge")))?;
        self.messages[g.half_edges(i).start + k] = m;
        Ok(())
    }

    /// Messages arriving at `i`, in neighbor order.
    pub fn inbound(&self, g: &Graph, i: usize) -> Vec<Message> {
        g.half_edges(i)
            .map(|h| self.messages[g.reverse(h)])
            .collect()
    }

    /// Carries the messages over to an induced subgraph `sub` of `g`, where
    /// `map[v]` is the index in `g` of vertex `v` of `sub`.
    pub fn restrict(&self, g: &Graph, sub: &Graph, map: &[usize]) -> Self {
        let mut messages = Vec::with_capacity(sub.num_half_edges());
        for v in 0..sub.n() {
            let old_v = map[v];
            let base = g.half_edges(old_v).start;
            for &u in sub.neighbors(v) {
                let k = g
                    .neighbor_index(old_v, map[u])
                    .expect("sub is an induced subgraph");
                messages.push(self.messages[base + k]);
            }
        }
        Self {
            x: self.x,
            damping: self.damping,
            messages,
            last_sweep_delta: self.last_sweep_delta,
            converged: false,
            rounds: self.rounds,
            order: (0..sub.n()).collect(),
            kernel: Kernel::default(),
        }
    }

    /// Recomputes every outbound message of `i` from its current inbound
    /// messages; returns the largest component change.
    fn update_vertex(&mut self, g: &Graph, i: usize) -> f64 {
        let range = g.half_edges(i);
        if range.is_empty() {
            return 0.0;
        }
        let messages = &mut self.messages;
        self.kernel
            .load(range.clone().map(|h| messages[g.reverse(h)]));
        let lambda = self.damping;
        let mut delta = 0.0f64;
        self.kernel.outputs(self.x * g.weight(i), |t, new| {
            let h = range.start + t;
            let old = messages[h];
            let stored = if lambda > 0.0 {
                Message {
                    q0: (1.0 - lambda) * new.q0 + lambda * old.q0,
                    qroot: (1.0 - lambda) * new.qroot + lambda * old.qroot,
                }
            } else {
                new
            };
            delta = delta.max(stored.distance(&old));
            messages[h] = stored;
        });
        delta
    }

    /// Empty probability `q_i^0` of every vertex from the current messages.
    pub fn empty_probabilities(&self, g: &Graph) -> Vec<f64> {
        (0..g.n())
            .map(|i| {
                let (log_e, r) = self.vertex_terms(g, i);
                (-log_normalization(log_e, r)).exp()
            })
            .collect()
    }

    fn vertex_terms(&self, g: &Graph, i: usize) -> (f64, f64) {
        let mut log_e = self.x * g.weight(i);
        let mut r = 0.0;
        for h in g.half_edges(i) {
            let m = self.messages[g.reverse(h)];
            let a = m.attachable();
            log_e += a.ln();
            r += (1.0 - m.q0) / a;
        }
        (log_e, r)
    }

    pub fn marginals(&self, g: &Graph) -> Vec<Marginal> {
        (0..g.n())
            .map(|i| marginal(self.x, g.weight(i), &self.inbound(g, i)))
            .collect()
    }
}

/// One asynchronous round: vertices in uniformly random order, each
/// recomputing all of its outbound messages in place. Returns the largest
/// component change of any message.
pub fn bp_sweep(g: &Graph, state: &mut BpState, rng: &mut impl Rng) -> f64 {
    let mut order = std::mem::take(&mut state.order);
    if order.len() != g.n() {
        order = (0..g.n()).collect();
    }
    order.shuffle(rng);
    let mut delta = 0.0f64;
    for &i in &order {
        delta = delta.max(state.update_vertex(g, i));
    }
    state.order = order;
    state.last_sweep_delta = delta;
    state.rounds += 1;
    delta
}

/// Iteration controls for [`run_bp_with`].
#[derive(Clone, Copy, Debug)]
pub struct BpConfig {
    pub max_rounds: usize,
    pub eps: f64,
    pub damping: f64,
}

impl Default for BpConfig {
    fn default() -> Self {
        Self {
            max_rounds: DEFAULT_MAX_ROUNDS,
            eps: DEFAULT_EPS,
            damping: 0.0,
        }
    }
}

/// Random initialization followed by sweeps until the largest message
/// change drops below `eps` or `max_rounds` sweeps have run.
pub fn run_bp(g: &Graph, x: f64, max_rounds: usize, eps: f64, seed: u64) -> Result<BpState> {
    run_bp_with(
        g,
        x,
        &BpConfig {
            max_rounds,
            eps,
            damping: 0.0,
        },
        seed,
    )
}

pub fn run_bp_with(g: &Graph, x: f64, cfg: &BpConfig, seed: u64) -> Result<BpState> {
    if cfg.max_rounds == 0 {
        return param("max_rounds must be >= 1");
    }
    if cfg.eps.is_nan() || cfg.eps <= 0.0 {
        return param(format!("eps must be positive, got {}", cfg.eps));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut state = BpState::random(g, x, &mut rng)?;
    state.set_damping(cfg.damping)?;
    iterate(g, &mut state, cfg.max_rounds, cfg.eps, &mut rng);
    Ok(state)
}

/// Runs up to `rounds` sweeps, stopping early once a sweep changes no
/// message component by `eps` or more. Returns the number of sweeps run.
pub(crate) fn iterate(g: &Graph, state: &mut BpState, rounds: usize, eps: f64, rng: &mut impl Rng) -> usize {
    state.converged = false;
    for t in 0..rounds {
        let delta = bp_sweep(g, state, rng);
        if delta < eps {
            state.converged = true;
            return t + 1;
        }
    }
    rounds
}

/// Thermodynamic observables evaluated from a message state.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Observables {
    pub x: f64,
    /// Mean fraction of occupied vertices.
    pub rho: f64,
    /// Mean occupied weight per vertex.
    pub omega: f64,
    /// Free entropy density `(1/(xN)) ln Z`.
    pub phi: f64,
    /// Entropy density `x (phi - omega)`.
    pub s: f64,
    /// Bethe estimate of `ln Z`.
    pub log_z: f64,
    pub converged: bool,
    pub rounds: usize,
}

impl Observables {
    pub const CSV_HEADER: &'static str = "x,rho,omega,phi,s,converged,rounds";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}",
            self.x, self.rho, self.omega, self.phi, self.s, self.converged, self.rounds
        )
    }
}

/// `ρ`, `ω`, `φ` and `s` from the current messages. The state need not be
/// a fixed point; its convergence flag is carried through.
pub fn observables(g: &Graph, state: &BpState) -> Result<Observables> {
    let n = g.n();
    if n == 0 {
        return param("observables of an empty graph are undefined");
    }
    let x = state.x;
    let mut sum_q0 = 0.0;
    let mut sum_occ_w = 0.0;
    let mut log_z = 0.0;
    for i in 0..n {
        let (log_e, r) = state.vertex_terms(g, i);
        let lz = log_normalization(log_e, r);
        if !lz.is_finite() {
            return Err(Error::Numeric(format!("vertex {i}: normalization is not finite")));
        }
        let q0 = (-lz).exp();
        sum_q0 += q0;
        sum_occ_w += (1.0 - q0) * g.weight(i);
        log_z += lz;
    }
    for &(i, j) in g.edges() {
        let mij = state.message(g, i, j).expect("edge");
        let mji = state.message(g, j, i).expect("edge");
        let arg = edge_argument(&mij, &mji);
        if !(arg > 0.0 && arg.is_finite()) {
            return Err(Error::Numeric(format!(
                "edge ({i}, {j}): free entropy term has argument {arg}"
            )));
        }
        log_z -= arg.ln();
    }
    let nf = n as f64;
    let rho = 1.0 - sum_q0 / nf;
    let omega = sum_occ_w / nf;
    Ok(Observables {
        x,
        rho,
        omega,
        phi: log_z / (x * nf),
        s: log_z / nf - x * omega,
        log_z,
        converged: state.converged,
        rounds: state.rounds,
    })
}

/// Lower bound `1 - ρ` on the feedback vertex set fraction.
pub fn fvs_lower_bound_fraction(rho: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&rho) {
        return param(format!("occupation density must lie in [0, 1], got {rho}"));
    }
    Ok(1.0 - rho)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::gen_er;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn leaf_messages() {
        let x: f64 = 1.3;
        let m = update_message(x, 1.0, &[]);
        assert!(close(m.q0, 1.0 / (1.0 + x.exp()), 1e-15));
        assert!(close(m.qroot, x.exp() / (1.0 + x.exp()), 1e-15));
        let m = Message::leaf(1e-300, 1.0);
        assert!(close(m.q0, 0.5, 1e-15) && close(m.qroot, 0.5, 1e-15));
    }

    #[test]
    fn chain_center_message() {
        // P3 center c with ends a, b; message c -> b uses the leaf message a -> c.
        // With u = (q0, qr) of the leaf: z = 1 + e^x [ (q0 + qr) + (1 - q0) ],
        // q0' = 1 / z, qr' = e^x (q0 + qr) / z.
        let x: f64 = 1.0;
        let e = x.exp();
        let leaf_q0 = 1.0 / (1.0 + e);
        let leaf_qr = e / (1.0 + e);
        // a = 1, (1 - q0) = e/(1+e): z = 1 + e (1 + e/(1+e))
        let z = 1.0 + e * (1.0 + e / (1.0 + e));
        let m = update_message(x, 1.0, &[Message::new(leaf_q0, leaf_qr)]);
        assert!(close(m.q0, 1.0 / z, 1e-15));
        assert!(close(m.qroot, e / z, 1e-15));
        assert!(close(m.q0, 0.175_269_320_818_840_8, 1e-15));
        assert!(close(m.qroot, 0.476_431_409_868_213_6, 1e-15));
    }

    #[test]
    fn isolated_marginal() {
        let x: f64 = 0.7;
        let mg = marginal(x, 1.0, &[]);
        assert!(close(mg.q0, 1.0 / (1.0 + x.exp()), 1e-15));
        assert!(close(mg.qroot, x.exp() / (1.0 + x.exp()), 1e-15));
        assert!(mg.qparent.is_empty());
        let mg = marginal(1e-12, 1.0, &[]);
        assert!(close(mg.q0, 0.5, 1e-12));
    }

    #[test]
    fn marginals_normalize() {
        let g = gen_er(300, 4.0, 2).unwrap();
        let st = run_bp(&g, 3.0, 20, 1e-12, 1).unwrap();
        for mg in st.marginals(&g) {
            assert!(close(mg.total(), 1.0, 1e-10));
        }
    }

    #[test]
    fn extreme_inputs_stay_valid() {
        let tiny = Message::new(1e-300, 1e-300);
        let m = update_message(50.0, 1.0, &vec![tiny; 40]);
        assert!(m.is_valid(), "{m:?}");
        let m = update_message(50.0, 40.0, &[Message::new(0.3, 0.3)]);
        assert!(m.is_valid() && m.q0 == 0.0, "{m:?}");
        let mg = marginal(50.0, 40.0, &[Message::new(0.3, 0.3)]);
        assert!(close(mg.total(), 1.0, 1e-10));
    }

    #[test]
    fn fixed_point_has_zero_delta() {
        let g = Graph::from_edges(4, vec![(0, 1), (1, 2), (2, 3)]).unwrap();
        let mut st = run_bp(&g, 1.0, 100, 1e-15, 3).unwrap();
        assert!(st.converged);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        assert!(bp_sweep(&g, &mut st, &mut rng) < 1e-15);
    }

    #[test]
    fn sweeps_are_deterministic() {
        let g = gen_er(200, 5.0, 4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let base = BpState::random(&g, 4.0, &mut rng).unwrap();
        let (mut a, mut b) = (base.clone(), base);
        let da = bp_sweep(&g, &mut a, &mut ChaCha8Rng::seed_from_u64(5));
        let db = bp_sweep(&g, &mut b, &mut ChaCha8Rng::seed_from_u64(5));
        assert_eq!(da, db);
        assert_eq!(a.messages(), b.messages());
    }

    #[test]
    fn damping_still_converges() {
        let g = gen_er(200, 3.0, 8).unwrap();
        let st = run_bp_with(&g, 2.0, &BpConfig { max_rounds: 2000, eps: 1e-10, damping: 0.5 }, 1).unwrap();
        assert!(st.converged);
        let plain = run_bp(&g, 2.0, 2000, 1e-12, 1).unwrap();
        let (a, b) = (observables(&g, &st).unwrap(), observables(&g, &plain).unwrap());
        assert!(close(a.rho, b.rho, 1e-8));
    }

    #[test]
    fn unit_weight_omega_equals_rho() {
        let g = gen_er(300, 3.0, 6).unwrap();
        let st = run_bp(&g, 2.0, 200, 1e-10, 2).unwrap();
        let o = observables(&g, &st).unwrap();
        assert!(close(o.omega, o.rho, 1e-12));
        assert!(close(o.s, o.x * (o.phi - o.omega), 1e-10));
    }

    #[test]
    fn single_vertex_observables() {
        let g = Graph::from_edges(1, vec![]).unwrap();
        for x in [0.5f64, 2.0] {
            let st = run_bp(&g, x, 1, 1e-8, 0).unwrap();
            let o = observables(&g, &st).unwrap();
            assert!(close(o.phi, (1.0 + x.exp()).ln() / x, 1e-14));
            assert!(close(o.s, x * (o.phi - o.omega), 1e-14));
        }
        let st = run_bp(&g, 1e-6, 1, 1e-8, 0).unwrap();
        let o = observables(&g, &st).unwrap();
        assert!(close(o.s, 2f64.ln(), 1e-5));
    }

    #[test]
    fn parameter_checks() {
        let g = Graph::from_edges(2, vec![(0, 1)]).unwrap();
        assert!(run_bp(&g, 0.0, 10, 1e-8, 0).is_err());
        assert!(run_bp(&g, 51.0, 10, 1e-8, 0).is_err());
        assert!(run_bp(&g, 1.0, 0, 1e-8, 0).is_err());
        assert!(run_bp(&g, 1.0, 10, 0.0, 0).is_err());
        let mut st = run_bp(&g, 1.0, 10, 1e-8, 0).unwrap();
        assert!(st.set_damping(1.0).is_err());
    }

    #[test]
    fn lower_bound_fraction() {
        assert!(close(fvs_lower_bound_fraction(0.517).unwrap(), 0.483, 1e-15));
        assert_eq!(fvs_lower_bound_fraction(1.0).unwrap(), 0.0);
        assert_eq!(fvs_lower_bound_fraction(0.0).unwrap(), 1.0);
        assert!(fvs_lower_bound_fraction(1.5).is_err());
    }

    #[test]
    fn restrict_keeps_surviving_messages() {
        let g = gen_er(100, 4.0, 1).unwrap();
        let st = run_bp(&g, 2.0, 5, 1e-8, 2).unwrap();
        let keep: Vec<bool> = (0..100).map(|i| i % 3 != 0).collect();
        let (sub, map) = g.induced_subgraph(&keep);
        let r = st.restrict(&g, &sub, &map);
        for &(a, b) in sub.edges() {
            assert_eq!(r.message(&sub, a, b), st.message(&g, map[a], map[b]));
            assert_eq!(r.message(&sub, b, a), st.message(&g, map[b], map[a]));
        }
    }
}
