//! Exhaustive oracles for desk-scale instances: the partition function
//! summed over state tuples and over legitimate subgraphs, exact marginals,
//! and the minimum feedback vertex set by subset search.

use crate::error::{Error, Result};
use crate::graph::{acyclic_on, Graph, VertexSet};
use crate::model::{degeneracy, factor_codes, state_count, LegitimateSubgraph, EMPTY};

/// Largest state space `Π (d_i + 2)` the state-sum oracles accept.
pub const STATE_ENUMERATION_CAP: f64 = 1e7;
/// Largest `N` for the `2^N` subgraph sum.
pub const SUBGRAPH_ENUMERATION_MAX_N: usize = 22;
/// Largest `N` for [`brute_min_fvs`].
pub const BRUTE_FVS_MAX_N: usize = 24;

/// Total number of state tuples `Π (d_i + 2)`.
pub fn state_space_size(g: &Graph) -> f64 {
    (0..g.n()).map(|i| state_count(g, i) as f64).product()
}

fn check_state_cap(g: &Graph) -> Result<()> {
    let size = state_space_size(g);
    log::debug!("state enumeration over {size:.0} configurations");
    if size > STATE_ENUMERATION_CAP {
        return Err(Error::Capacity(format!(
            "{size:.3e} state tuples exceeds the cap of {STATE_ENUMERATION_CAP:.0e}"
        )));
    }
    Ok(())
}

/// Calls `f` on the compact codes of every solution of `g`. Vertices are
/// assigned in index order and every edge is checked as soon as both of its
/// endpoints carry a state.
pub fn for_each_solution(g: &Graph, mut f: impl FnMut(&[u32])) -> Result<()> {
    check_state_cap(g)?;
    let mut codes = vec![EMPTY; g.n()];
    assign(g, 0, &mut codes, &mut f);
    Ok(())
}

fn assign(g: &Graph, v: usize, codes: &mut [u32], f: &mut impl FnMut(&[u32])) {
    if v == g.n() {
        f(codes);
        return;
    }
    for c in 0..state_count(g, v) {
        let ok = g
            .neighbors(v)
            .iter()
            .take_while(|&&u| u < v)
            .all(|&u| factor_codes(g, u, v, codes[u], c));
        if ok {
            codes[v] = c;
            assign(g, v + 1, codes, f);
        }
    }
    codes[v] = EMPTY;
}

/// `ln Z(x)` as a sum over state tuples.
pub fn log_partition_states(g: &Graph, x: f64) -> Result<f64> {
    Ok(exact_marginals(g, x)?.log_z)
}

/// `Z(x)` as a sum over state tuples.
pub fn exact_partition_states(g: &Graph, x: f64) -> Result<f64> {
    log_partition_states(g, x).map(f64::exp)
}

/// Exact single-vertex marginals from enumeration.
#[derive(Clone, Debug)]
pub struct ExactMarginals {
    pub log_z: f64,
    /// `probs[i][code]` with the compact state encoding of the model.
    pub probs: Vec<Vec<f64>>,
    pub solutions: u64,
}

impl ExactMarginals {
    pub fn empty_probability(&self, i: usize) -> f64 {
        self.probs[i][EMPTY as usize]
    }
}

pub fn exact_marginals(g: &Graph, x: f64) -> Result<ExactMarginals> {
    let total_w: f64 = g.weights().iter().sum();
    let mut z = 0.0;
    let mut solutions = 0u64;
    let mut acc: Vec<Vec<f64>> = (0..g.n()).map(|i| vec![0.0; state_count(g, i) as usize]).collect();
    for_each_solution(g, |codes| {
        // weights shifted by the all-occupied weight keep exponents <= 0
        let empty_w: f64 = codes
            .iter()
            .zip(g.weights())
            .filter(|(&c, _)| c == EMPTY)
            .map(|(_, w)| w)
            .sum();
        let weight = (-x * empty_w).exp();
        z += weight;
        solutions += 1;
        for (i, &c) in codes.iter().enumerate() {
            acc[i][c as usize] += weight;
        }
    })?;
    for row in &mut acc {
        for p in row.iter_mut() {
            *p /= z;
        }
    }
    Ok(ExactMarginals {
        log_z: x * total_w + z.ln(),
        probs: acc,
        solutions,
    })
}

/// `ln Z(x)` as `Σ_{legitimate G_T} 𝒞(G_T) e^{x W(G_T)}`.
pub fn log_partition_subgraphs(g: &Graph, x: f64) -> Result<f64> {
    let n = g.n();
    if n > SUBGRAPH_ENUMERATION_MAX_N {
        return Err(Error::Capacity(format!(
            "2^{n} subsets exceeds the limit of 2^{SUBGRAPH_ENUMERATION_MAX_N}"
        )));
    }
    let total_w: f64 = g.weights().iter().sum();
    let mut z = 0.0;
    for bits in 0u64..(1u64 << n) {
        let occupied = VertexSet::from_mask((0..n).map(|i| bits >> i & 1 == 1).collect());
        let Ok(sub) = LegitimateSubgraph::new(g, occupied) else {
            continue;
        };
        let count = degeneracy(&sub)? as f64;
        let w = sub.total_weight(g);
        z += count * (x * (w - total_w)).exp();
    }
    Ok(x * total_w + z.ln())
}

pub fn exact_partition_subgraphs(g: &Graph, x: f64) -> Result<f64> {
    log_partition_subgraphs(g, x).map(f64::exp)
}

/// Minimum-cardinality feedback vertex set by enumerating subsets in order
/// of increasing size. Returns the size and the first witness found.
pub fn brute_min_fvs(g: &Graph) -> Result<(usize, VertexSet)> {
    let n = g.n();
    if n > BRUTE_FVS_MAX_N {
        return Err(Error::Capacity(format!(
            "subset search over {n} vertices exceeds the limit of {BRUTE_FVS_MAX_N}"
        )));
    }
    for k in 0..=n {
        if let Some(bits) = subsets_of_size(n, k).find(|&bits| acyclic_on(g, |i| bits >> i & 1 == 0)) {
            let set = VertexSet::from_mask((0..n).map(|i| bits >> i & 1 == 1).collect());
            return Ok((k, set));
        }
    }
    unreachable!("removing every vertex leaves an empty forest")
}

/// All `n`-bit masks with exactly `k` bits set, in increasing order.
pub(crate) fn subsets_of_size(n: usize, k: usize) -> impl Iterator<Item = u64> {
    let limit = 1u64 << n;
    let first = if k == 0 { 0 } else { (1u64 << k) - 1 };
    let mut next = Some(first);
    std::iter::from_fn(move || {
        let cur = next?;
        if cur >= limit {
            return None;
        }
        next = if cur == 0 {
            None
        } else {
            // Gosper's hack
            let c = cur & cur.wrapping_neg();
            let r = cur + c;
            Some((((r ^ cur) >> 2) / c) | r)
        };
        Some(cur)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::is_acyclic;

    fn close(a: f64, b: f64, rel: f64) -> bool {
        (a - b).abs() <= rel * a.abs().max(b.abs())
    }

    #[test]
    fn gosper_enumerates_binomial_counts() {
        for n in 0..8 {
            for k in 0..=n {
                let all: Vec<u64> = subsets_of_size(n, k).collect();
                assert!(all.iter().all(|b| b.count_ones() as usize == k));
                let expected = (0u64..1 << n).filter(|b| b.count_ones() as usize == k).count();
                assert_eq!(all.len(), expected, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn single_vertex_partition() {
        let g = Graph::from_edges(1, vec![]).unwrap();
        for x in [0.0, 0.5, 2.0] {
            assert!(close(exact_partition_states(&g, x).unwrap(), 1.0 + x.exp(), 1e-12));
        }
    }

    #[test]
    fn single_edge_partition() {
        let g = Graph::from_edges(2, vec![(0, 1)]).unwrap();
        for x in [0.0f64, 1.0, 1.7] {
            let expected = 1.0 + 2.0 * x.exp() + 2.0 * (2.0 * x).exp();
            assert!(close(exact_partition_states(&g, x).unwrap(), expected, 1e-12));
            assert!(close(exact_partition_subgraphs(&g, x).unwrap(), expected, 1e-12));
        }
    }

    #[test]
    fn triangle_solution_count() {
        // subsets: empty 1, singles 3·1, pairs 3·2, triangle 2 (c-tree)
        let g = Graph::from_edges(3, vec![(0, 1), (1, 2), (2, 0)]).unwrap();
        let z0 = exact_partition_states(&g, 0.0).unwrap();
        assert!(close(z0, 12.0, 1e-12));
        assert_eq!(exact_marginals(&g, 0.0).unwrap().solutions, 12);
    }

    #[test]
    fn edgeless_partition() {
        let g = Graph::from_edges(5, vec![]).unwrap();
        let x: f64 = 0.8;
        let expected = (1.0 + x.exp()).powi(5);
        assert!(close(exact_partition_subgraphs(&g, x).unwrap(), expected, 1e-12));
        assert!(close(exact_partition_states(&g, x).unwrap(), expected, 1e-12));
    }

    #[test]
    fn weighted_partition_routes_agree() {
        let g = Graph::new(4, vec![(0, 1), (1, 2), (2, 0), (2, 3)], Some(vec![0.5, 1.0, 2.0, 0.0])).unwrap();
        let a = log_partition_states(&g, 1.3).unwrap();
        let b = log_partition_subgraphs(&g, 1.3).unwrap();
        assert!(close(a, b, 1e-12));
    }

    #[test]
    fn capacity_errors() {
        let g = crate::graph::gen_er(30, 6.0, 1).unwrap();
        assert!(matches!(exact_partition_states(&g, 1.0), Err(Error::Capacity(_))));
        assert!(matches!(exact_partition_subgraphs(&g, 1.0), Err(Error::Capacity(_))));
        assert!(matches!(brute_min_fvs(&g), Err(Error::Capacity(_))));
    }

    #[test]
    fn brute_min_examples() {
        let c6 = Graph::from_edges(6, (0..6).map(|i| (i, (i + 1) % 6)).collect()).unwrap();
        assert_eq!(brute_min_fvs(&c6).unwrap().0, 1);
        let k4 = Graph::from_edges(4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let (size, witness) = brute_min_fvs(&k4).unwrap();
        assert_eq!(size, 2);
        assert!(crate::model::verify_fvs(&k4, &witness));
        let k5_edges = (0..5).flat_map(|i| (i + 1..5).map(move |j| (i, j))).collect();
        assert_eq!(brute_min_fvs(&Graph::from_edges(5, k5_edges).unwrap()).unwrap().0, 3);
        let tree = Graph::from_edges(5, vec![(0, 1), (0, 2), (2, 3), (2, 4)]).unwrap();
        assert_eq!(brute_min_fvs(&tree).unwrap().0, 0);
        assert!(is_acyclic(&tree));
    }
}
