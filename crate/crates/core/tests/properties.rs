//! Randomized invariants: solver agreement, composition degree
//! bookkeeping, bound validity on sampled instances, and construction
//! soundness.

use proptest::prelude::*;
use strongdom::bounds::{self, evaluate, EvalError, Theorem, TheoremInstance};
use strongdom::campaign::{instance_rng, sample_instance, CampaignConfig};
use strongdom::compose::{self, GluingSpec};
use strongdom::construct;
use strongdom::graph::{emit_edge_list, parse_edge_list, Graph, VertexSet};
use strongdom::solver::{self, SolverConfig};

fn graph_from_bits(n: usize, bits: &[bool]) -> Graph {
    let mut edges = Vec::new();
    let mut k = 0;
    for u in 0..n {
        for v in (u + 1)..n {
            if bits[k] {
                edges.push((u, v));
            }
            k += 1;
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

fn arb_graph(lo: usize, hi: usize) -> impl Strategy<Value = Graph> {
    (lo..=hi).prop_flat_map(|n| {
        proptest::collection::vec(proptest::bool::weighted(0.5), n * (n - 1) / 2)
            .prop_map(move |bits| graph_from_bits(n, &bits))
    })
}

fn arb_connected(lo: usize, hi: usize) -> impl Strategy<Value = Graph> {
    arb_graph(lo.max(2), hi).prop_filter("connected", |g| g.is_connected())
}

/// Connected graph plus an ordered pair of distinct vertices.
fn arb_connected_with_pair(hi: usize) -> impl Strategy<Value = (Graph, usize, usize)> {
    arb_connected(2, hi).prop_flat_map(|g| {
        let n = g.n();
        (Just(g), 0..n, 0..n - 1).prop_map(|(g, a, b)| {
            let b = if b >= a { b + 1 } else { b };
            (g, a, b)
        })
    })
}

/// Connected graph plus one of its edges.
fn arb_connected_with_edge(hi: usize) -> impl Strategy<Value = (Graph, (usize, usize))> {
    arb_connected(2, hi).prop_flat_map(|g| {
        let count = g.edges().len();
        (Just(g), 0..count).prop_map(|(g, i)| {
            let e = g.edges()[i];
            (g, e)
        })
    })
}

fn min_strong_set(g: &Graph) -> VertexSet {
    solver::gamma_st(g).unwrap().witness
}

// ---- graph representation ------------------------------------------------

proptest! {
    #[test]
    fn adjacency_is_symmetric_and_degrees_sum_to_twice_the_edges(g in arb_graph(1, 12)) {
        let n = g.n();
        let mut degree_sum = 0;
        for u in 0..n {
            prop_assert!(!g.has_edge(u, u));
            prop_assert_eq!(g.neighbors(u).count(), g.degree(u));
            degree_sum += g.degree(u);
            for v in 0..n {
                prop_assert_eq!(g.has_edge(u, v), g.has_edge(v, u));
            }
        }
        prop_assert_eq!(degree_sum, 2 * g.edge_count());
    }

    #[test]
    fn edge_list_text_round_trips(g in arb_graph(1, 12)) {
        let text = emit_edge_list(&g);
        let back = parse_edge_list(&text).unwrap();
        prop_assert_eq!(&back, &g);
        prop_assert_eq!(emit_edge_list(&back), text);
    }
}

// ---- solver --------------------------------------------------------------

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn subset_enumeration_and_branch_and_bound_agree(g in arb_graph(1, 8)) {
        let cfg = SolverConfig::default();
        prop_assert_eq!(
            solver::gamma_st_oracle_with(&g, &cfg).unwrap().value,
            solver::gamma_st_with(&g, &cfg).unwrap().value
        );
        prop_assert_eq!(
            solver::gamma_oracle_with(&g, &cfg).unwrap().value,
            solver::gamma_with(&g, &cfg).unwrap().value
        );
    }

    #[test]
    fn plain_domination_never_exceeds_strong_domination(g in arb_graph(1, 10)) {
        let plain = solver::gamma(&g).unwrap().value;
        let strong = solver::gamma_st(&g).unwrap().value;
        prop_assert!(plain <= strong);
    }

    #[test]
    fn regular_graphs_have_equal_domination_numbers(n in 5usize..=10, k in 1usize..=2) {
        // Circulant on offsets {1, …, k}: 2k-regular since k < n/2.
        let mut edges = Vec::new();
        for s in 1..=k {
            for i in 0..n {
                edges.push((i, (i + s) % n));
            }
        }
        let g = Graph::from_edges(n, &edges).unwrap();
        for v in 0..n {
            prop_assert_eq!(g.degree(v), 2 * k);
        }
        prop_assert_eq!(
            solver::gamma(&g).unwrap().value,
            solver::gamma_st(&g).unwrap().value
        );
    }

    #[test]
    fn every_strong_witness_verifies(g in arb_graph(1, 10)) {
        let r = solver::gamma_st(&g).unwrap();
        prop_assert!(solver::is_strong_dominating(&g, r.witness));
        prop_assert!(solver::is_dominating(&g, r.witness));
    }
}

// ---- composition degree bookkeeping --------------------------------------

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn vertex_sum_merges_attachment_degrees(
        (g1, a1, _) in arb_connected_with_pair(6),
        (g2, a2, _) in arb_connected_with_pair(6),
    ) {
        let graphs = [g1, g2];
        let composed = compose::vertex_sum(&graphs, &[a1, a2]).unwrap();
        let merged = composed.special[0];
        prop_assert_eq!(
            composed.graph.degree(merged),
            graphs[0].degree(a1) + graphs[1].degree(a2)
        );
        for (i, g) in graphs.iter().enumerate() {
            for v in 0..g.n() {
                if v == [a1, a2][i] {
                    continue;
                }
                prop_assert_eq!(composed.graph.degree(composed.map(i, v)), g.degree(v));
            }
        }
    }

    #[test]
    fn edge_gluing_merges_endpoint_degrees(
        (g1, e1) in arb_connected_with_edge(6),
        (g2, e2) in arb_connected_with_edge(6),
    ) {
        let spec = GluingSpec { r: 2, q1: vec![e1.0, e1.1], q2: vec![e2.0, e2.1] };
        let composed = compose::r_glue(&g1, &g2, &spec).unwrap();
        // Each glued vertex keeps both components' neighbors, minus the
        // shared edge counted twice.
        prop_assert_eq!(
            composed.graph.degree(composed.special[0]),
            g1.degree(e1.0) + g2.degree(e2.0) - 1
        );
        prop_assert_eq!(
            composed.graph.degree(composed.special[1]),
            g1.degree(e1.1) + g2.degree(e2.1) - 1
        );
        for v in 0..g1.n() {
            if v != e1.0 && v != e1.1 {
                prop_assert_eq!(composed.graph.degree(composed.map(0, v)), g1.degree(v));
            }
        }
        for v in 0..g2.n() {
            if v != e2.0 && v != e2.1 {
                prop_assert_eq!(composed.graph.degree(composed.map(1, v)), g2.degree(v));
            }
        }
    }

    #[test]
    fn chain_junctions_add_their_two_sides(
        parts in proptest::collection::vec(arb_connected_with_pair(5), 2..=4)
    ) {
        let graphs: Vec<Graph> = parts.iter().map(|(g, _, _)| g.clone()).collect();
        let attach: Vec<(usize, usize)> = parts.iter().map(|&(_, x, y)| (x, y)).collect();
        let composed = compose::chain(&graphs, &attach).unwrap();
        let n = graphs.len();
        for j in 0..n - 1 {
            prop_assert_eq!(
                composed.graph.degree(composed.special[j]),
                graphs[j].degree(attach[j].1) + graphs[j + 1].degree(attach[j + 1].0)
            );
        }
        // Vertices away from the merged junctions keep their degrees.
        for (i, g) in graphs.iter().enumerate() {
            for v in 0..g.n() {
                let merged_down = i < n - 1 && v == attach[i].1;
                let merged_up = i > 0 && v == attach[i].0;
                if !merged_down && !merged_up {
                    prop_assert_eq!(composed.graph.degree(composed.map(i, v)), g.degree(v));
                }
            }
        }
    }

    #[test]
    fn link_bridges_add_one_to_each_endpoint(
        parts in proptest::collection::vec(arb_connected_with_pair(5), 2..=4)
    ) {
        let graphs: Vec<Graph> = parts.iter().map(|(g, _, _)| g.clone()).collect();
        let attach: Vec<(usize, usize)> = parts.iter().map(|&(_, x, y)| (x, y)).collect();
        let composed = compose::link(&graphs, &attach).unwrap();
        let n = graphs.len();
        for (i, g) in graphs.iter().enumerate() {
            for v in 0..g.n() {
                let mut expected = g.degree(v);
                if i < n - 1 && v == attach[i].1 {
                    expected += 1;
                }
                if i > 0 && v == attach[i].0 {
                    expected += 1;
                }
                prop_assert_eq!(composed.graph.degree(composed.map(i, v)), expected);
            }
        }
    }

    #[test]
    fn circuit_attachments_gain_the_two_ring_edges(
        parts in proptest::collection::vec(arb_connected_with_pair(5), 3..=5)
    ) {
        let graphs: Vec<Graph> = parts.iter().map(|(g, _, _)| g.clone()).collect();
        let attach: Vec<usize> = parts.iter().map(|&(_, x, _)| x).collect();
        let composed = compose::circuit(&graphs, &attach).unwrap();
        for (i, g) in graphs.iter().enumerate() {
            for v in 0..g.n() {
                let expected = g.degree(v) + if v == attach[i] { 2 } else { 0 };
                prop_assert_eq!(composed.graph.degree(composed.map(i, v)), expected);
            }
        }
    }
}

// ---- invariant arithmetic ------------------------------------------------

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn strong_domination_adds_over_disjoint_union(
        g1 in arb_graph(1, 7),
        g2 in arb_graph(1, 7),
    ) {
        let union = compose::disjoint_union(&g1, &g2);
        prop_assert_eq!(
            solver::gamma_st(&union.graph).unwrap().value,
            solver::gamma_st(&g1).unwrap().value + solver::gamma_st(&g2).unwrap().value
        );
    }

    #[test]
    fn conjectured_clique_lower_collapses_to_the_edge_lower_at_r_two(
        gst1 in 1usize..20,
        gst2 in 1usize..20,
        psi_a in 0usize..30,
        psi_b in 0usize..30,
    ) {
        prop_assert_eq!(
            bounds::kr_glue_conjectured_lower(gst1, gst2, 2, [psi_a, psi_b]),
            bounds::edge_glue_lower(gst1, gst2, psi_a + psi_b)
        );
    }
}

// ---- theorem bounds on sampled instances ---------------------------------

fn sampler_config() -> CampaignConfig {
    CampaignConfig {
        max_order: 6,
        max_count: 3,
        max_composed_order: 16,
        ..CampaignConfig::default()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn proven_bounds_hold_on_sampled_instances(
        which in 0..Theorem::PROVEN.len(),
        k in 0usize..10_000,
    ) {
        let theorem = Theorem::PROVEN[which];
        let cfg = sampler_config();
        let mut rng = instance_rng(0xfeed, theorem, k);
        let inst = sample_instance(theorem, &cfg, &mut rng);
        match evaluate(theorem, &inst, &SolverConfig::default()) {
            Ok(rep) => prop_assert!(rep.holds(), "violated: {rep:?}"),
            Err(EvalError::Timeout) => {}
            Err(e) => prop_assert!(false, "sampler produced a bad instance: {e}"),
        }
    }
}

// ---- construction recipes ------------------------------------------------

fn minimum_sets(graphs: &[&Graph]) -> Vec<VertexSet> {
    graphs.iter().map(|g| min_strong_set(g)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn edge_gluing_recipe_is_valid_and_matches_the_clique_recipe(k in 0usize..10_000) {
        let cfg = sampler_config();
        let mut rng = instance_rng(0x91ae, Theorem::EdgeGluingUpper, k);
        let inst = sample_instance(Theorem::EdgeGluingUpper, &cfg, &mut rng);
        let TheoremInstance::EdgeGluing { components, edges } = inst else {
            panic!("sampler kind mismatch");
        };
        let (g1, g2) = (&components[0], &components[1]);
        let (d1, d2) = (min_strong_set(g1), min_strong_set(g2));

        let by_edge = construct::edge_glue(g1, d1, edges[0], g2, d2, edges[1]).unwrap();
        prop_assert!(by_edge.valid);
        prop_assert!(by_edge.size <= by_edge.claimed_upper);
        prop_assert_eq!(by_edge.claimed_upper, d1.card() + d2.card() + 1);

        let spec = GluingSpec {
            r: 2,
            q1: vec![edges[0].0, edges[0].1],
            q2: vec![edges[1].0, edges[1].1],
        };
        let by_clique = construct::clique_glue(g1, d1, g2, d2, &spec).unwrap();
        prop_assert_eq!(by_clique.set, by_edge.set);
    }

    #[test]
    fn clique_gluing_recipe_is_valid(k in 0usize..10_000) {
        let cfg = sampler_config();
        let mut rng = instance_rng(0xc1ea, Theorem::CliqueGluingUpper, k);
        let inst = sample_instance(Theorem::CliqueGluingUpper, &cfg, &mut rng);
        let TheoremInstance::CliqueGluing { components, r, clique1, clique2 } = inst else {
            panic!("sampler kind mismatch");
        };
        let (g1, g2) = (&components[0], &components[1]);
        let (d1, d2) = (min_strong_set(g1), min_strong_set(g2));
        let spec = GluingSpec { r, q1: clique1, q2: clique2 };
        let res = construct::clique_glue(g1, d1, g2, d2, &spec).unwrap();
        prop_assert!(res.valid);
        prop_assert!(res.size <= res.claimed_upper);
        prop_assert_eq!(res.claimed_upper, d1.card() + d2.card() + 1);
    }

    #[test]
    fn chain_recipe_is_valid(k in 0usize..10_000) {
        let cfg = sampler_config();
        let mut rng = instance_rng(0xc4a1, Theorem::Chain, k);
        let inst = sample_instance(Theorem::Chain, &cfg, &mut rng);
        let TheoremInstance::Chain { components, attachments } = inst else {
            panic!("sampler kind mismatch");
        };
        let sets = minimum_sets(&components.iter().collect::<Vec<_>>());
        let res = construct::chain(&components, &sets, &attachments).unwrap();
        prop_assert!(res.valid);
        prop_assert!(res.size <= res.claimed_upper);
    }

    #[test]
    fn link_recipe_is_valid(k in 0usize..10_000) {
        let cfg = sampler_config();
        let mut rng = instance_rng(0x11e4, Theorem::Link, k);
        let inst = sample_instance(Theorem::Link, &cfg, &mut rng);
        let TheoremInstance::Link { components, attachments } = inst else {
            panic!("sampler kind mismatch");
        };
        let sets = minimum_sets(&components.iter().collect::<Vec<_>>());
        let res = construct::link(&components, &sets, &attachments).unwrap();
        prop_assert!(res.valid);
        prop_assert!(res.size <= res.claimed_upper);
    }

    #[test]
    fn circuit_recipe_is_valid(k in 0usize..10_000) {
        let cfg = sampler_config();
        let mut rng = instance_rng(0xc1bc, Theorem::Circuit, k);
        let inst = sample_instance(Theorem::Circuit, &cfg, &mut rng);
        let TheoremInstance::Circuit { components, attachments } = inst else {
            panic!("sampler kind mismatch");
        };
        let sets = minimum_sets(&components.iter().collect::<Vec<_>>());
        let res = construct::circuit(&components, &sets, &attachments).unwrap();
        prop_assert!(res.valid);
        prop_assert!(res.size <= res.claimed_upper);
        let total: usize = sets.iter().map(|s| s.card()).sum();
        prop_assert_eq!(res.claimed_upper, total + components.len() / 2);
    }
}
