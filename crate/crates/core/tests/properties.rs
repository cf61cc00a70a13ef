mod common;

use std::collections::HashMap;

use fvs_core::bp::{marginal, update_message, Message};
use fvs_core::bpd::{redundancy_prune, select_decimation_targets};
use fvs_core::directed::{directed_edge_factor, exact_directed_partition, DiGraph};
use fvs_core::exact::{brute_min_fvs, exact_partition_states, exact_partition_subgraphs, for_each_solution};
use fvs_core::graph::{prune_low_degree, Graph, VertexSet};
use fvs_core::io::{parse_graph, write_graph, write_weights};
use fvs_core::model::{decode_fvs, degeneracy, solution_to_subgraph, Configuration, LegitimateSubgraph};
use fvs_core::verify_fvs;
use proptest::prelude::*;

use common::*;

fn small_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut k = 0;
            for i in 0..n {
                for j in i + 1..n {
                    if bits[k] {
                        edges.push((i, j));
                    }
                    k += 1;
                }
            }
            Graph::from_edges(n, edges).unwrap()
        })
    })
}

fn weighted(g: Graph, ws: Vec<f64>) -> Graph {
    let n = g.n();
    Graph::new(n, g.edges().to_vec(), Some(ws[..n].to_vec())).unwrap()
}

fn message() -> impl Strategy<Value = Message> {
    (0.0..=1.0f64, 0.0..=1.0f64).prop_map(|(a, b)| Message::new(a.min(b), (a.max(b) - a.min(b)).max(0.0)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn partition_identity(g in small_graph(6), ws in proptest::collection::vec(0.0..2.0f64, 6), x in 0.0..2.0f64) {
        let g = weighted(g, ws);
        let a = exact_partition_states(&g, x).unwrap();
        let b = exact_partition_subgraphs(&g, x).unwrap();
        prop_assert!((a - b).abs() <= 1e-9 * b, "{a} vs {b}");
    }

    #[test]
    fn degeneracy_counts_solutions(g in small_graph(6)) {
        let mut count: HashMap<Vec<bool>, u128> = HashMap::new();
        let mut subs: HashMap<Vec<bool>, LegitimateSubgraph> = HashMap::new();
        for_each_solution(&g, |codes| {
            let a = Configuration::from_codes(&g, codes.to_vec()).unwrap();
            let s = solution_to_subgraph(&g, &a).unwrap();
            let key = s.occupied().mask().to_vec();
            *count.entry(key.clone()).or_default() += 1;
            subs.entry(key).or_insert(s);
        }).unwrap();
        for (key, c) in count {
            prop_assert_eq!(degeneracy(&subs[&key]).unwrap(), c);
        }
    }

    #[test]
    fn decoded_sets_are_feedback_sets(g in small_graph(6), seed in any::<u64>()) {
        let mut configs = Vec::new();
        for_each_solution(&g, |codes| configs.push(codes.to_vec())).unwrap();
        for codes in configs.into_iter().step_by(7) {
            let a = Configuration::from_codes(&g, codes).unwrap();
            let gamma = decode_fvs(&g, &a, seed).unwrap();
            prop_assert!(verify_fvs(&g, &gamma));
            let keep = gamma.complement();
            prop_assert!(induced_is_forest(&g, keep.mask()));
        }
    }

    #[test]
    fn brute_minimum_is_zero_iff_forest(g in small_graph(9)) {
        let (k, set) = brute_min_fvs(&g).unwrap();
        prop_assert_eq!(k == 0, induced_is_forest(&g, &vec![true; g.n()]));
        prop_assert_eq!(set.len(), k);
        prop_assert!(induced_is_forest(&g, set.complement().mask()));
    }

    #[test]
    fn pruning_reaches_a_fixed_point(g in small_graph(10), removed in proptest::collection::vec(any::<bool>(), 10)) {
        let removed = VertexSet::from_mask(removed[..g.n()].to_vec());
        let p = prune_low_degree(&g, &removed).unwrap();
        prop_assert!((0..p.core.n()).all(|v| p.core.degree(v) >= 2));
        let again = prune_low_degree(&p.core, &VertexSet::empty(p.core.n())).unwrap();
        prop_assert_eq!(again.core.n(), p.core.n());
        prop_assert!(again.pruned.is_empty());
        for (k, &v) in p.core_vertices.iter().enumerate() {
            prop_assert!(!removed.contains(v) && !p.pruned.contains(v));
            prop_assert_eq!(p.core.degree(k), g.neighbors(v).iter().filter(|&&u| p.core_vertices.contains(&u)).count());
        }
        prop_assert_eq!(p.core.n() + p.pruned.len() + removed.len(), g.n());
    }

    #[test]
    fn messages_stay_normalized(x in 0.01..50.0f64, w in 0.0..3.0f64, inbound in proptest::collection::vec(message(), 0..40)) {
        let out = update_message(x, w, &inbound);
        prop_assert!(out.is_valid(), "{out:?}");
        let m = marginal(x, w, &inbound);
        prop_assert!((m.total() - 1.0).abs() < 1e-9);
        prop_assert!(m.qparent.iter().all(|&p| (0.0..=1.0).contains(&p)));
    }

    #[test]
    fn edge_list_round_trip(g in small_graph(12), ws in proptest::collection::vec(0.0..1e6f64, 12)) {
        let g = weighted(g, ws);
        let text = write_graph(&g);
        let wtext = write_weights(g.weights());
        let back = parse_graph(&text, Some(&wtext)).unwrap();
        prop_assert_eq!(write_graph(&back), text);
        prop_assert_eq!(back.weights(), g.weights());
    }

    #[test]
    fn redundancy_prune_keeps_a_feedback_set(g in small_graph(10), extra in proptest::collection::vec(any::<bool>(), 10)) {
        let (_, opt) = brute_min_fvs(&g).unwrap();
        let mut start = opt.clone();
        for (v, &e) in extra[..g.n()].iter().enumerate() {
            if e {
                start.insert(v);
            }
        }
        let pruned = redundancy_prune(&g, &start).unwrap();
        prop_assert!(verify_fvs(&g, &pruned));
        prop_assert!(pruned.is_subset_of(&start));
        prop_assert!(pruned.len() >= opt.len());
        // every kept vertex closes a cycle when returned
        for v in pruned.iter() {
            let mut keep = pruned.complement().mask().to_vec();
            keep[v] = true;
            prop_assert!(!induced_is_forest(&g, &keep));
        }
    }

    #[test]
    fn decimation_targets_match_a_full_sort(q in proptest::collection::vec(prop_oneof![Just(0.5), 0.0..1.0f64], 1..60), k in 1usize..60) {
        let k = k.min(q.len());
        let mut idx: Vec<usize> = (0..q.len()).collect();
        idx.sort_by(|&a, &b| q[b].partial_cmp(&q[a]).unwrap().then(a.cmp(&b)));
        prop_assert_eq!(select_decimation_targets(&q, k).unwrap(), idx[..k].to_vec());
    }

    #[test]
    fn directed_partition_matches_brute_force(n in 1usize..=4, mask in any::<u64>(), h in 1u32..=3, x in 0.0..1.5f64) {
        let g = digraph_from_mask(n, mask & ((1 << (n * (n - 1))) - 1));
        prop_assert!((exact_directed_partition(&g, x, h).unwrap() - brute_directed_z(&g, x, h)).abs() < 1e-9);
    }
}

/// Sum over every height vector in `0..=h`, with no pruning.
fn brute_directed_z(g: &DiGraph, x: f64, h: u32) -> f64 {
    let n = g.n();
    let base = h as usize + 1;
    let mut z = 0.0;
    for code in 0..base.pow(n as u32) {
        let heights: Vec<u32> = (0..n).map(|v| (code / base.pow(v as u32) % base) as u32).collect();
        if g.arcs().iter().all(|&(i, j)| directed_edge_factor(heights[i], heights[j])) {
            z += (x * heights.iter().filter(|&&t| t > 0).count() as f64).exp();
        }
    }
    z
}
