//! Feedback vertex sets through a spin-glass model.
//!
//! The library covers the undirected model (configurations, edge factor,
//! legitimate subgraphs), exact enumeration oracles, belief propagation and
//! its replica-symmetric observables, population dynamics for random-graph
//! ensembles, belief propagation-guided decimation with baseline
//! heuristics, and the height model for directed graphs.

pub mod bp;
pub mod bpd;
pub mod directed;
pub mod error;
pub mod exact;
pub mod graph;
pub mod io;
pub mod model;
pub mod population;

pub use bp::{observables, run_bp, BpState, Message, Observables};
pub use bpd::{bpd, greedy_degree_fvs, random_fvs, redundancy_prune, BpdParams, FvsResult, Solver};
pub use error::{Error, Result};
pub use graph::{gen_er, gen_lattice, gen_rr, Graph, VertexSet};
pub use model::{verify_fvs, Configuration, VertexState};
pub use population::{extract_rho0, pd_run, Ensemble, PdParams};
