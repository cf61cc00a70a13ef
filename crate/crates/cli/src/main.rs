//! `fvs`: generate graphs, solve and verify feedback vertex sets, sweep
//! ensembles with population dynamics, and run the exact oracles.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::json;

use fvs_core::bp::{observables, run_bp_with, BpConfig, Observables, DEFAULT_EPS, DEFAULT_MAX_ROUNDS};
use fvs_core::bpd::{bpd_traced, greedy_degree_fvs, random_fvs, redundancy_prune, BpdParams, FvsResult, StageTrace};
use fvs_core::directed::{gen_directed_er, verify_directed_fvs};
use fvs_core::exact::{brute_min_fvs, exact_partition_states, exact_partition_subgraphs};
use fvs_core::io;
use fvs_core::population::{extract_rho0, pd_run, Ensemble, EnsembleCurve, ErScheme, PdEstimate, PdParams};
use fvs_core::{gen_er, gen_lattice, gen_rr, verify_fvs, Graph};

#[derive(Parser)]
#[command(name = "fvs", version, about = "Feedback vertex sets by message passing")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a random or lattice graph as an edge list.
    Generate {
        #[command(subcommand)]
        kind: GenerateKind,
    },
    /// Find a feedback vertex set and write it as JSON.
    Solve(SolveArgs),
    /// Check a vertex set. Exit 0 if it is a feedback vertex set, 1 if not,
    /// 2 on malformed input.
    Verify(VerifyArgs),
    /// Population-dynamics sweep over an x grid, written as CSV.
    Ensemble(EnsembleArgs),
    /// Exact partition function (both enumerations) and minimum FVS size.
    Oracle(OracleArgs),
    /// Run belief propagation on a graph for each x of a grid and write the
    /// observables as CSV.
    Bp(BpArgs),
}

#[derive(Subcommand)]
enum GenerateKind {
    /// Erdős–Rényi graph with round(cN/2) edges.
    Er {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        c: f64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Random K-regular graph.
    Rr {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Periodic D-dimensional lattice of side L.
    Lattice {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        l: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Directed random graph with round(alpha N) arcs, as an arc list.
    DirectedEr {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        alpha: f64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Algo {
    Bpd,
    Greedy,
    Random,
}

#[derive(Args)]
struct SolveArgs {
    /// Edge-list files; with more than one, --out names a directory.
    #[arg(required = true)]
    graphs: Vec<PathBuf>,
    #[arg(long, value_enum, default_value_t = Algo::Bpd)]
    algo: Algo,
    #[arg(long, default_value_t = fvs_core::bpd::DEFAULT_X_ER)]
    x: f64,
    /// BP sweeps per decimation stage.
    #[arg(long, default_value_t = 500)]
    t_rounds: usize,
    /// Fraction of the remaining 2-core fixed per stage.
    #[arg(long, default_value_t = 0.01)]
    f_frac: f64,
    #[arg(long, default_value_t = DEFAULT_EPS)]
    eps: f64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Vertex weight file (applies to every input graph).
    #[arg(long)]
    weights: Option<PathBuf>,
    /// Drop vertices whose return closes no cycle.
    #[arg(long)]
    redundancy_prune: bool,
    /// Write the per-stage BPD trace as CSV (single input only).
    #[arg(long)]
    trace: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    graph: PathBuf,
    /// JSON result from `solve`, or a whitespace-separated list of 1-based
    /// vertex labels.
    fvs: PathBuf,
    /// Treat the graph file as an arc list and check the directed property.
    #[arg(long)]
    directed: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum EnsembleKind {
    Er,
    Rr,
}

#[derive(Clone, Copy, ValueEnum)]
enum Scheme {
    Vertex,
    Cavity,
}

#[derive(Args)]
struct EnsembleArgs {
    #[arg(value_enum)]
    kind: EnsembleKind,
    /// Mean degree (ER).
    #[arg(long)]
    c: Option<f64>,
    /// Degree (RR).
    #[arg(long)]
    k: Option<usize>,
    /// Either `start:stop:step` or a comma-separated list.
    #[arg(long, default_value = "0.5:20:0.5")]
    x_grid: String,
    /// Population size.
    #[arg(long, default_value_t = 100_000)]
    size: usize,
    #[arg(long, default_value_t = 200)]
    burnin: usize,
    #[arg(long, default_value_t = 300)]
    measure: usize,
    #[arg(long, value_enum, default_value_t = Scheme::Vertex)]
    scheme: Scheme,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct OracleArgs {
    graph: PathBuf,
    #[arg(long, default_value_t = 1.0)]
    x: f64,
    #[arg(long)]
    weights: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BpArgs {
    graph: PathBuf,
    /// Either `start:stop:step` or a comma-separated list.
    #[arg(long, default_value = "1:10:1")]
    x_grid: String,
    #[arg(long, default_value_t = DEFAULT_MAX_ROUNDS)]
    t_rounds: usize,
    #[arg(long, default_value_t = DEFAULT_EPS)]
    eps: f64,
    #[arg(long, default_value_t = 0.0)]
    damping: f64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long)]
    weights: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_graph(path: &Path, weights: Option<&Path>) -> Result<Graph> {
    let w = weights.map(read).transpose()?;
    io::parse_graph(&read(path)?, w.as_deref()).with_context(|| format!("parsing {}", path.display()))
}

fn pool(jobs: usize) -> Result<rayon::ThreadPool> {
    if jobs == 0 {
        bail!("--jobs must be >= 1");
    }
    Ok(rayon::ThreadPoolBuilder::new().num_threads(jobs).build()?)
}

/// Parses `start:stop:step` (inclusive of `stop` up to rounding) or `a,b,c`.
fn parse_grid(grid: &str) -> Result<Vec<f64>> {
    let xs: Vec<f64> = if grid.contains(':') {
        let parts: Vec<f64> = grid
            .split(':')
            .map(|t| t.trim().parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .with_context(|| format!("bad grid {grid:?}"))?;
        let [start, stop, step] = parts[..] else {
            bail!("grid must be start:stop:step, got {grid:?}");
        };
        if step.is_nan() || step <= 0.0 || stop.is_nan() || stop < start {
            bail!("grid needs step > 0 and stop >= start, got {grid:?}");
        }
        let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
        (0..count).map(|k| start + step * k as f64).collect()
    } else {
        grid.split(',')
            .map(|t| t.trim().parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .with_context(|| format!("bad grid {grid:?}"))?
    };
    if xs.is_empty() || xs.iter().any(|x| !x.is_finite()) {
        bail!("grid {grid:?} is empty or not finite");
    }
    Ok(xs)
}

fn cmd_generate(kind: GenerateKind) -> Result<()> {
    let (text, out) = match kind {
        GenerateKind::Er { n, c, seed, out } => (io::write_graph(&gen_er(n, c, seed)?), out),
        GenerateKind::Rr { n, k, seed, out } => (io::write_graph(&gen_rr(n, k, seed)?), out),
        GenerateKind::Lattice { d, l, out } => (io::write_graph(&gen_lattice(d, l)?), out),
        GenerateKind::DirectedEr { n, alpha, seed, out } => (io::write_digraph(&gen_directed_er(n, alpha, seed)?), out),
    };
    emit(out.as_deref(), &text)
}

fn solve_one(g: &Graph, a: &SolveArgs) -> Result<(FvsResult, Vec<StageTrace>)> {
    let (mut result, trace) = match a.algo {
        Algo::Bpd => {
            let p = BpdParams {
                x: a.x,
                rounds: a.t_rounds,
                fraction: a.f_frac,
                eps: a.eps,
                seed: a.seed,
            };
            bpd_traced(g, &p)?
        }
        Algo::Greedy => (greedy_degree_fvs(g, a.seed), Vec::new()),
        Algo::Random => (random_fvs(g, a.seed), Vec::new()),
    };
    if a.redundancy_prune {
        result.gamma = redundancy_prune(g, &result.gamma)?;
        result.weight = g.total_weight(&result.gamma);
        result.verified = verify_fvs(g, &result.gamma);
    }
    if !result.verified {
        bail!("solver output failed verification");
    }
    Ok((result, trace))
}

fn cmd_solve(a: SolveArgs) -> Result<()> {
    let multi = a.graphs.len() > 1;
    if multi && a.trace.is_some() {
        bail!("--trace needs a single input graph");
    }
    let outdir = match (&a.out, multi) {
        (Some(d), true) => {
            fs::create_dir_all(d).with_context(|| format!("creating {}", d.display()))?;
            Some(d.clone())
        }
        (None, true) => bail!("--out DIR is required with several input graphs"),
        _ => None,
    };
    let results: Vec<Result<()>> = pool(a.jobs)?.install(|| {
        a.graphs
            .par_iter()
            .map(|path| {
                let g = load_graph(path, a.weights.as_deref())?;
                let (r, trace) = solve_one(&g, &a).with_context(|| format!("solving {}", path.display()))?;
                log::info!("{}: size {} of {} ({:.4})", path.display(), r.size(), g.n(), r.fraction());
                let json = io::fvs_to_json(&r) + "\n";
                match &outdir {
                    Some(d) => {
                        let stem = path.file_stem().unwrap_or_default().to_string_lossy();
                        emit(Some(&d.join(format!("{stem}.fvs.json"))), &json)?;
                    }
                    None => emit(a.out.as_deref(), &json)?,
                }
                if let Some(t) = &a.trace {
                    let mut csv = String::from(StageTrace::CSV_HEADER) + "\n";
                    for s in &trace {
                        csv += &(s.csv_row() + "\n");
                    }
                    emit(Some(t), &csv)?;
                }
                Ok(())
            })
            .collect()
    });
    results.into_iter().collect()
}

/// Ok(true) for a valid feedback vertex set, Ok(false) for an invalid one.
fn cmd_verify(a: &VerifyArgs) -> Result<bool> {
    let gtext = read(&a.graph)?;
    let stext = read(&a.fvs)?;
    let ok = if a.directed {
        let g = io::parse_digraph(&gtext, None).with_context(|| format!("parsing {}", a.graph.display()))?;
        let set = io::parse_vertex_set(&stext, g.n()).with_context(|| format!("parsing {}", a.fvs.display()))?;
        verify_directed_fvs(&g, &set)
    } else {
        let g = io::parse_graph(&gtext, None).with_context(|| format!("parsing {}", a.graph.display()))?;
        let set = io::parse_vertex_set(&stext, g.n()).with_context(|| format!("parsing {}", a.fvs.display()))?;
        verify_fvs(&g, &set)
    };
    Ok(ok)
}

fn cmd_ensemble(a: EnsembleArgs) -> Result<()> {
    let ensemble = match (a.kind, a.c, a.k) {
        (EnsembleKind::Er, Some(c), None) => Ensemble::ErdosRenyi { c },
        (EnsembleKind::Rr, None, Some(k)) => Ensemble::RandomRegular { k },
        (EnsembleKind::Er, _, _) => bail!("er needs --c and no --k"),
        (EnsembleKind::Rr, _, _) => bail!("rr needs --k and no --c"),
    };
    let xs = parse_grid(&a.x_grid)?;
    let params = PdParams {
        size: a.size,
        burnin_sweeps: a.burnin,
        measure_sweeps: a.measure,
        seed: a.seed,
        scheme: match a.scheme {
            Scheme::Vertex => ErScheme::VertexCentered,
            Scheme::Cavity => ErScheme::Cavity,
        },
    };
    // same per-point seeds as the serial sweep, so --jobs does not change output
    let rows: Vec<PdEstimate> = pool(a.jobs)?.install(|| {
        xs.par_iter()
            .enumerate()
            .map(|(k, &x)| {
                let p = PdParams {
                    seed: params.seed.wrapping_add(k as u64),
                    ..params
                };
                let e = pd_run(ensemble, x, &p)?;
                log::info!("x = {x}: rho {:.5} s {:.5}", e.rho, e.s);
                Ok(e)
            })
            .collect::<fvs_core::Result<_>>()
    })?;
    let curve = EnsembleCurve::from_rows(rows);
    emit(a.out.as_deref(), &curve.to_csv())?;
    match extract_rho0(&curve) {
        Ok(r) => eprintln!(
            "rho0 {:.5}  min FVS fraction {:.5}  crossings {}{}",
            r.rho0,
            r.min_fvs_fraction,
            r.crossings.len(),
            if r.flagged { "  (several sign changes of s; largest rho used)" } else { "" }
        ),
        Err(e) => eprintln!("no rho0: {e}"),
    }
    Ok(())
}

fn cmd_oracle(a: OracleArgs) -> Result<()> {
    let g = load_graph(&a.graph, a.weights.as_deref())?;
    let z_states = exact_partition_states(&g, a.x)?;
    let z_subgraphs = exact_partition_subgraphs(&g, a.x)?;
    let (min_fvs, witness) = brute_min_fvs(&g)?;
    let doc = json!({
        "x": a.x,
        "Z_states": z_states,
        "Z_subgraphs": z_subgraphs,
        "min_fvs": min_fvs,
        "min_fvs_vertices": witness.iter().map(|v| v + 1).collect::<Vec<_>>(),
    });
    emit(a.out.as_deref(), &(serde_json::to_string_pretty(&doc)? + "\n"))
}

fn cmd_bp(a: BpArgs) -> Result<()> {
    let g = load_graph(&a.graph, a.weights.as_deref())?;
    let xs = parse_grid(&a.x_grid)?;
    let cfg = BpConfig {
        max_rounds: a.t_rounds,
        eps: a.eps,
        damping: a.damping,
    };
    let rows: Vec<Observables> = pool(a.jobs)?.install(|| {
        xs.par_iter()
            .map(|&x| {
                let state = run_bp_with(&g, x, &cfg, a.seed)?;
                observables(&g, &state)
            })
            .collect::<fvs_core::Result<_>>()
    })?;
    let mut csv = String::from(Observables::CSV_HEADER) + "\n";
    for r in &rows {
        csv += &(r.csv_row() + "\n");
    }
    emit(a.out.as_deref(), &csv)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("FVS_LOG", "warn")).init();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Generate { kind } => cmd_generate(kind),
        Command::Solve(a) => cmd_solve(a),
        Command::Verify(a) => match cmd_verify(&a) {
            Ok(true) => {
                println!("valid");
                return ExitCode::SUCCESS;
            }
            Ok(false) => {
                println!("invalid");
                return ExitCode::from(1);
            }
            Err(e) => Err(e),
        },
        Command::Ensemble(a) => cmd_ensemble(a),
        Command::Oracle(a) => cmd_oracle(a),
        Command::Bp(a) => cmd_bp(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
