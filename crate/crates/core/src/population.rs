//! Population dynamics for the replica-symmetric theory on random-graph
//! ensembles.
//!
//! A large array of cavity messages stands for the messages on the edges of
//! an infinite random graph. Updates draw inbound messages from the array,
//! apply the BP equations, and write the results back at random positions.
//! Once the array is stationary, vertex and edge free-entropy terms are
//! sampled to estimate `ρ`, `ω`, `φ` and `s`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Poisson};
use serde::{Deserialize, Serialize};

use crate::bp::{cavity_terms, edge_argument, log_normalization, Kernel, Message, MAX_X};
use crate::error::{param, Error, Result};

pub const MIN_POPULATION: usize = 1000;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum Ensemble {
    /// Poisson degree distribution with mean `c`.
    ErdosRenyi { c: f64 },
    /// Every vertex has degree `k`.
    RandomRegular { k: usize },
}

impl Ensemble {
    pub fn mean_degree(&self) -> f64 {
        match *self {
            Ensemble::ErdosRenyi { c } => c,
            Ensemble::RandomRegular { k } => k as f64,
        }
    }

    fn validate(&self) -> Result<()> {
        match *self {
            Ensemble::ErdosRenyi { c } if !(c.is_finite() && c >= 0.0) => {
                param(format!("mean degree must be finite and >= 0, got {c}"))
            }
            Ensemble::RandomRegular { k: 0 } => param("regular degree must be >= 1"),
            _ => Ok(()),
        }
    }
}

/// How an ER population step generates messages.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ErScheme {
    /// Draw a vertex degree `d ~ Poisson(c)`, take `d` inbound messages, and
    /// write back all `d` outbound messages.
    #[default]
    VertexCentered,
    /// Draw an excess degree `d ~ Poisson(c)`, take `d` inbound messages, and
    /// write back the single message they determine.
    Cavity,
}

/// Poisson sampler by inversion of a tabulated CDF for `c <= 30`, falling
/// back to `rand_distr` beyond that.
#[derive(Clone, Debug)]
enum DegreeSampler {
    Fixed(usize),
    Table(Vec<f64>),
    Large(Poisson<f64>),
}

impl DegreeSampler {
    fn poisson(c: f64) -> Self {
        if c == 0.0 {
            return DegreeSampler::Fixed(0);
        }
        if c > 30.0 {
            return DegreeSampler::Large(Poisson::new(c).expect("positive finite mean"));
        }
        let mut cdf = Vec::new();
        let mut p = (-c).exp();
        let mut acc = 0.0;
        let mut d = 0usize;
        while acc < 1.0 - 1e-16 && d < 400 {
            acc += p;
            cdf.push(acc);
            d += 1;
            p *= c / d as f64;
        }
        DegreeSampler::Table(cdf)
    }

    fn sample(&self, rng: &mut impl Rng) -> usize {
        match self {
            DegreeSampler::Fixed(d) => *d,
            DegreeSampler::Table(cdf) => {
                let u: f64 = rng.random();
                cdf.partition_point(|&c| c <= u).min(cdf.len() - 1)
            }
            DegreeSampler::Large(p) => p.sample(rng) as usize,
        }
    }
}

/// Population of cavity messages for one ensemble at one `x`.
#[derive(Clone)]
pub struct Population {
    items: Vec<Message>,
    ensemble: Ensemble,
    scheme: ErScheme,
    x: f64,
    degree: DegreeSampler,
    rng: ChaCha8Rng,
    kernel: Kernel,
    inbound: Vec<Message>,
}

impl Population {
    pub fn new(ensemble: Ensemble, x: f64, size: usize, seed: u64) -> Result<Self> {
        Self::with_scheme(ensemble, x, size, seed, ErScheme::default())
    }

    pub fn with_scheme(ensemble: Ensemble, x: f64, size: usize, seed: u64, scheme: ErScheme) -> Result<Self> {
        ensemble.validate()?;
        if !(x > 0.0 && x <= MAX_X) {
            return param(format!("re-weighting parameter must lie in (0, {MAX_X}], got {x}"));
        }
        if size < MIN_POPULATION {
            return param(format!("population size must be >= {MIN_POPULATION}, got {size}"));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let items = (0..size).map(|_| Message::random(&mut rng)).collect();
        let degree = match ensemble {
            Ensemble::ErdosRenyi { c } => DegreeSampler::poisson(c),
            Ensemble::RandomRegular { k } => DegreeSampler::Fixed(k),
        };
        Ok(Self {
            items,
            ensemble,
            scheme,
            x,
            degree,
            rng,
            kernel: Kernel::default(),
            inbound: Vec::new(),
        })
    }

    pub fn items(&self) -> &[Message] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    fn draw_inbound(&mut self, count: usize) {
        let p = self.items.len();
        self.inbound.clear();
        for _ in 0..count {
            let idx = self.rng.random_range(0..p);
            self.inbound.push(self.items[idx]);
        }
    }

    /// One population update.
    pub fn step(&mut self) {
        let p = self.items.len();
        match (self.ensemble, self.scheme) {
            (Ensemble::ErdosRenyi { .. }, ErScheme::VertexCentered) => {
                let d = self.degree.sample(&mut self.rng);
                if d == 0 {
                    return;
                }
                self.draw_inbound(d);
                self.kernel.load(self.inbound.iter().copied());
                let (items, rng) = (&mut self.items, &mut self.rng);
                self.kernel.outputs(self.x, |_, m| {
                    let slot = rng.random_range(0..p);
                    items[slot] = m;
                });
            }
            (Ensemble::ErdosRenyi { .. }, ErScheme::Cavity) => {
                let d = self.degree.sample(&mut self.rng);
                self.emit_single(d);
            }
            (Ensemble::RandomRegular { k }, _) => self.emit_single(k - 1),
        }
    }

    fn emit_single(&mut self, inputs: usize) {
        self.draw_inbound(inputs);
        let (log_e, r) = cavity_terms(self.x, &self.inbound);
        let e = log_e.exp();
        let m = if e.is_finite() {
            let z = 1.0 + e * (1.0 + r);
            Message::new(1.0 / z, e / z)
        } else {
            Message::new(0.0, 1.0 / (1.0 + r))
        };
        let slot = self.rng.random_range(0..self.items.len());
        self.items[slot] = m;
    }

    /// `len()` steps.
    pub fn sweep(&mut self) {
        for _ in 0..self.items.len() {
            self.step();
        }
    }

    /// Samples one vertex: returns its empty probability and `ln z_i`.
    fn sample_vertex(&mut self) -> (f64, f64) {
        let d = self.degree.sample(&mut self.rng);
        self.draw_inbound(d);
        let (log_e, r) = cavity_terms(self.x, &self.inbound);
        let lz = log_normalization(log_e, r);
        ((-lz).exp(), lz)
    }

    /// Samples one edge: returns `ln z_ij`.
    fn sample_edge(&mut self) -> f64 {
        let p = self.items.len();
        let a = self.items[self.rng.random_range(0..p)];
        let b = self.items[self.rng.random_range(0..p)];
        edge_argument(&a, &b).ln()
    }
}

/// Run lengths for [`pd_run`]. One sweep is `size` population steps.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct PdParams {
    pub size: usize,
    pub burnin_sweeps: usize,
    pub measure_sweeps: usize,
    pub seed: u64,
    pub scheme: ErScheme,
}

impl Default for PdParams {
    fn default() -> Self {
        Self {
            size: 100_000,
            burnin_sweeps: 200,
            measure_sweeps: 300,
            seed: 1,
            scheme: ErScheme::VertexCentered,
        }
    }
}

/// Ensemble averages with standard errors over measurement sweeps.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PdEstimate {
    pub x: f64,
    pub rho: f64,
    pub omega: f64,
    pub phi: f64,
    pub s: f64,
    pub rho_err: f64,
    pub omega_err: f64,
    pub phi_err: f64,
    pub s_err: f64,
    pub sweeps: usize,
}

impl PdEstimate {
    pub const CSV_HEADER: &'static str = "x,rho,omega,phi,s,converged,rounds,rho_err,omega_err,phi_err,s_err";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},true,{},{},{},{},{}",
            self.x, self.rho, self.omega, self.phi, self.s, self.sweeps, self.rho_err, self.omega_err, self.phi_err, self.s_err
        )
    }
}

fn mean_and_err(v: &[f64]) -> (f64, f64) {
    let n = v.len() as f64;
    let mean = v.iter().sum::<f64>() / n;
    if v.len() < 2 {
        return (mean, f64::NAN);
    }
    let var = v.iter().map(|a| (a - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

/// Burn-in followed by measurement sweeps. Each measurement step samples
/// one vertex (degree from the ensemble) and one edge (two population
/// items); the free entropy is `⟨ln z_i⟩ - (c̄/2) ⟨ln z_ij⟩` over `x`.
/// Weights are 1, so `ω = ρ`.
pub fn pd_run(ensemble: Ensemble, x: f64, params: &PdParams) -> Result<PdEstimate> {
    if params.measure_sweeps == 0 {
        return param("at least one measurement sweep is required");
    }
    let mut pop = Population::with_scheme(ensemble, x, params.size, params.seed, params.scheme)?;
    for _ in 0..params.burnin_sweeps {
        pop.sweep();
    }
    let half_c = ensemble.mean_degree() / 2.0;
    let mut rho = Vec::with_capacity(params.measure_sweeps);
    let mut phi = Vec::with_capacity(params.measure_sweeps);
    let mut s = Vec::with_capacity(params.measure_sweeps);
    for _ in 0..params.measure_sweeps {
        let (mut sum_q0, mut sum_lz, mut sum_le) = (0.0, 0.0, 0.0);
        for _ in 0..pop.len() {
            pop.step();
            let (q0, lz) = pop.sample_vertex();
            sum_q0 += q0;
            sum_lz += lz;
            sum_le += pop.sample_edge();
        }
        let p = pop.len() as f64;
        let r = 1.0 - sum_q0 / p;
        let log_z = sum_lz / p - half_c * sum_le / p;
        if !log_z.is_finite() {
            return Err(Error::Numeric(format!("free entropy not finite at x = {x}")));
        }
        rho.push(r);
        phi.push(log_z / x);
        s.push(log_z - x * r);
    }
    let (rho_m, rho_e) = mean_and_err(&rho);
    let (phi_m, phi_e) = mean_and_err(&phi);
    let (s_m, s_e) = mean_and_err(&s);
    Ok(PdEstimate {
        x,
        rho: rho_m,
        omega: rho_m,
        phi: phi_m,
        s: s_m,
        rho_err: rho_e,
        omega_err: rho_e,
        phi_err: phi_e,
        s_err: s_e,
        sweeps: params.burnin_sweeps + params.measure_sweeps,
    })
}

/// Thermodynamic curve over a grid of `x` values, sorted by `x`.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct EnsembleCurve {
    pub rows: Vec<PdEstimate>,
}

impl EnsembleCurve {
    pub fn from_rows(mut rows: Vec<PdEstimate>) -> Self {
        rows.sort_by(|a, b| a.x.total_cmp(&b.x));
        Self { rows }
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(PdEstimate::CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            out.push_str(&r.csv_row());
            out.push('\n');
        }
        out
    }
}

/// Serial sweep of [`pd_run`] over `xs`, each grid point with its own seed
/// offset so that points are independent.
pub fn pd_curve(ensemble: Ensemble, xs: &[f64], params: &PdParams) -> Result<EnsembleCurve> {
    let rows = xs
        .iter()
        .enumerate()
        .map(|(k, &x)| {
            let p = PdParams {
                seed: params.seed.wrapping_add(k as u64),
                ..*params
            };
            pd_run(ensemble, x, &p)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(EnsembleCurve::from_rows(rows))
}

/// Maximal occupation density read off an ensemble curve.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Rho0 {
    pub rho0: f64,
    /// `1 - rho0`.
    pub min_fvs_fraction: f64,
    /// Interpolated `ρ` of every sign change of `s`, in grid order.
    pub crossings: Vec<f64>,
    /// Grid `x` bracketing each crossing (left end).
    pub crossing_x: Vec<f64>,
    /// More than one sign change was found.
    pub flagged: bool,
}

/// `ρ₀` is where the entropy density vanishes, by linear interpolation in
/// `(ρ, s)` between the grid points bracketing a sign change. Without a
/// sign change and with `s > 0` throughout, `ρ` at the largest `x` is used.
/// When several crossings exist all are reported, the largest `ρ` is used,
/// and the result is flagged.
pub fn extract_rho0(curve: &EnsembleCurve) -> Result<Rho0> {
    let rows = &curve.rows;
    if rows.is_empty() {
        return param("empty curve");
    }
    let mut crossings = Vec::new();
    let mut crossing_x = Vec::new();
    for w in rows.windows(2) {
        let (a, b) = (&w[0], &w[1]);
        if (a.s > 0.0) != (b.s > 0.0) {
            let rho = if b.s == a.s {
                a.rho
            } else {
                a.rho + (0.0 - a.s) * (b.rho - a.rho) / (b.s - a.s)
            };
            crossings.push(rho);
            crossing_x.push(a.x);
        }
    }
    let rho0 = if crossings.is_empty() {
        if rows.iter().all(|r| r.s > 0.0) {
            rows.last().unwrap().rho
        } else {
            return Err(Error::Contract(
                "entropy density is non-positive over the whole grid".into(),
            ));
        }
    } else {
        crossings.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    };
    Ok(Rho0 {
        rho0,
        min_fvs_fraction: 1.0 - rho0,
        flagged: crossings.len() > 1,
        crossings,
        crossing_x,
    })
}
