//! Randomized invariant suites: whatever instance the generators produce,
//! transition distributions normalize, pheromone and device states respect
//! their bounds, DC solutions obey the circuit laws, the two compilation
//! modes agree, runs are reproducible, and the shortest-path oracle matches
//! exhaustive enumeration.

use memaco_core::aco::{
    self, deposit_and_evaporate, integrate_parallel_paths, run_colony, transition_probabilities,
    AcoParams, ColonyRunSpec, PheromoneState,
};
use memaco_core::graph::{enumerate_simple_paths, shortest_path_oracle, Graph};
use memaco_core::memnet::{self, solve_dc, CompileMode, DeviceParams, Network};
use proptest::collection::vec;
use proptest::prelude::*;

/// Connected graph: a source-to-target spine through every node plus a few
/// extra edges (self-loops dropped).
fn build_graph(n: usize, spine: &[f64], extra: &[(usize, usize, f64)]) -> Graph {
    let names: Vec<String> = (0..n).map(|i| format!("N{i}")).collect();
    let mut edges: Vec<(&str, &str, f64)> = Vec::new();
    for (i, &len) in spine.iter().enumerate() {
        edges.push((&names[i], &names[i + 1], len));
    }
    for &(u, v, len) in extra {
        if u != v {
            edges.push((&names[u], &names[v], len));
        }
    }
    Graph::build(&edges, &names[0], &names[n - 1]).expect("spine connects the terminals")
}

// Length and conductance-ratio ranges are deliberately moderate: KCL is
// checked at 1e-10 of the injection, and the achievable residual scales
// with conductance spread times voltage scale, so wilder ranges would test
// f64 instead of the solver.
prop_compose! {
    fn arb_real_graph()
        (n in 2usize..=6)
        (spine in vec(0.5f64..2.0, n - 1),
         extra in vec((0usize..n, 0usize..n, 0.5f64..2.0), 0..=5),
         n in Just(n))
        -> Graph {
        build_graph(n, &spine, &extra)
    }
}

prop_compose! {
    fn arb_integer_graph()
        (n in 2usize..=5)
        (spine in vec((1u32..=3).prop_map(f64::from), n - 1),
         extra in vec((0usize..n, 0usize..n, (1u32..=3).prop_map(f64::from)), 0..=4),
         n in Just(n))
        -> Graph {
        build_graph(n, &spine, &extra)
    }
}

prop_compose! {
    fn arb_params()
        (alpha in 0.0f64..=3.0,
         beta in 0.0f64..=3.0,
         evaporation in 0.0f64..=1.0,
         deposit in 0.0f64..=5.0,
         injection_rate in 0.0f64..=5.0,
         initial_pheromone in 0.01f64..=2.0)
        -> AcoParams {
        AcoParams { alpha, beta, evaporation, deposit, injection_rate, initial_pheromone }
    }
}

prop_compose! {
    fn arb_device()
        (off_exp in -5.0f64..=-3.0,
         ratio in 10.0f64..=1000.0,
         drive in 0.1f64..=5.0,
         relaxation in 0.0f64..=1.0,
         threshold in 0.0f64..=0.02)
        -> DeviceParams {
        let sigma_off = 10f64.powf(off_exp);
        DeviceParams {
            sigma_on: sigma_off * ratio,
            sigma_off,
            drive,
            relaxation,
            threshold,
        }
    }
}

proptest! {
    #[test]
    fn transition_distribution_normalizes(
        g in arb_real_graph(),
        p in arb_params(),
        raw_tau in vec(0.0f64..10.0, 32),
        node_pick in 0usize..6,
    ) {
        let node = node_pick % g.node_count();
        let tau = PheromoneState::from_levels(raw_tau[..g.edge_count()].to_vec());
        let mut forbidden = vec![false; g.node_count()];
        forbidden[node] = true;
        let moves = transition_probabilities(&g, &tau, &p, node, &forbidden).unwrap();
        let total: f64 = moves.iter().map(|(_, p)| p).sum();
        prop_assert!((total - 1.0).abs() < 1e-12, "sum = {total}");
        for (eid, prob) in moves {
            prop_assert!(prob >= 0.0);
            prop_assert!(g.edge(eid).touches(node));
        }
    }

    #[test]
    fn transition_distribution_ignores_pheromone_scale(
        g in arb_real_graph(),
        p in arb_params(),
        raw_tau in vec(0.01f64..10.0, 32),
        scale in 0.1f64..10.0,
    ) {
        let node = g.source();
        let mut forbidden = vec![false; g.node_count()];
        forbidden[node] = true;
        let tau = PheromoneState::from_levels(raw_tau[..g.edge_count()].to_vec());
        let scaled = PheromoneState::from_levels(
            raw_tau[..g.edge_count()].iter().map(|t| t * scale).collect(),
        );
        let a = transition_probabilities(&g, &tau, &p, node, &forbidden).unwrap();
        let b = transition_probabilities(&g, &scaled, &p, node, &forbidden).unwrap();
        for ((e1, p1), (e2, p2)) in a.iter().zip(&b) {
            prop_assert_eq!(e1, e2);
            prop_assert!((p1 - p2).abs() < 1e-12);
        }
    }

    #[test]
    fn pheromone_update_is_exact_per_edge(
        g in arb_real_graph(),
        p in arb_params(),
        raw_tau in vec(0.0f64..10.0, 32),
    ) {
        let before = raw_tau[..g.edge_count()].to_vec();
        let mut tau = PheromoneState::from_levels(before.clone());
        let path = shortest_path_oracle(&g);
        deposit_and_evaporate(&mut tau, Some(&path), &p);
        let keep = 1.0 - p.evaporation;
        let gain = p.deposit / path.total_length();
        for e in 0..g.edge_count() {
            let expected = if path.edge_ids().contains(&e) {
                before[e] * keep + gain
            } else {
                before[e] * keep
            };
            prop_assert_eq!(tau.level(e), expected);
            prop_assert!(tau.level(e) >= 0.0);
        }
    }

    #[test]
    fn dc_solution_obeys_the_circuit_laws(
        g in arb_real_graph(),
        d in arb_device(),
        raw_states in vec(0.0f64..=1.0, 32),
        i0 in 0.001f64..=1.0,
    ) {
        let net = Network::compile(&g, d, CompileMode::Lumped, i0).unwrap();
        let states = raw_states[..net.branch_count()].to_vec();
        let op = solve_dc(&net, &states).unwrap();
        let tol = 1e-10 * i0;
        for r in op.kcl_residuals(&net) {
            prop_assert!(r.abs() <= tol, "residual {r} above {tol}");
        }
        let input = i0 * op.terminal_voltage(&net);
        prop_assert!(input > 0.0);
        prop_assert!((op.dissipated_power() - input).abs() <= 1e-9 * input);
        for gb in &op.branch_conductances {
            prop_assert!(*gb > 0.0);
        }
    }

    #[test]
    fn mean_field_two_paths_keep_the_short_path_ahead(
        l1 in 0.5f64..=3.0,
        gap in 0.1f64..=3.0,
        evaporation in 0.01f64..=1.0,
        deposit in 0.1f64..=5.0,
        injection_rate in 0.1f64..=5.0,
        initial_pheromone in 0.1f64..=2.0,
    ) {
        let params = AcoParams {
            alpha: 1.0,
            beta: 1.0,
            evaporation,
            deposit,
            injection_rate,
            initial_pheromone,
        };
        let t = integrate_parallel_paths(&[l1, l1 + gap], &params, 5.0, 1e-2, 50).unwrap();
        for row in &t.edge_states {
            prop_assert!(row[0] >= row[1]);
            prop_assert!(row[0] >= 0.0 && row[1] >= 0.0);
        }
        let last = t.final_edge_states();
        prop_assert!(last[0] > last[1]);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn simulated_states_stay_in_the_unit_box(
        g in arb_real_graph(),
        d in arb_device(),
        i0 in 0.001f64..=1.0,
    ) {
        let net = Network::compile(&g, d, CompileMode::Lumped, i0).unwrap();
        let t = memnet::simulate(&net, 0.5, 1e-2, 10).unwrap();
        for row in &t.edge_states {
            for &x in row {
                prop_assert!((0.0..=1.0).contains(&x), "state {x} escaped");
            }
        }
    }

    #[test]
    fn chain_and_lumped_compilations_agree(
        g in arb_integer_graph(),
        d in arb_device(),
        i0 in 0.01f64..=1.0,
    ) {
        let chain = Network::compile(&g, d, CompileMode::Chain, i0).unwrap();
        let lumped = Network::compile(&g, d, CompileMode::Lumped, i0).unwrap();
        let tc = memnet::simulate(&chain, 0.5, 1e-2, 10).unwrap();
        let tl = memnet::simulate(&lumped, 0.5, 1e-2, 10).unwrap();
        prop_assert_eq!(&tc.index, &tl.index);
        for (rc, rl) in tc.edge_states.iter().zip(&tl.edge_states) {
            for (a, b) in rc.iter().zip(rl) {
                prop_assert!((a - b).abs() < 1e-9, "modes diverged: {a} vs {b}");
            }
        }
    }

    #[test]
    fn colony_runs_are_reproducible(
        g in arb_integer_graph(),
        seed in any::<u64>(),
    ) {
        let params = AcoParams {
            alpha: 1.0,
            beta: 1.0,
            evaporation: 0.1,
            deposit: 1.0,
            injection_rate: 1.0,
            initial_pheromone: 0.5,
        };
        let spec = ColonyRunSpec { ants: 50, realizations: 2, seed, record_every: 10 };
        let a = run_colony(&g, &params, &spec).unwrap();
        let b = run_colony(&g, &params, &spec).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn oracle_agrees_with_exhaustive_enumeration(g in arb_integer_graph()) {
        let paths = enumerate_simple_paths(&g, 12);
        prop_assume!(paths.is_ok());
        let paths = paths.unwrap();
        prop_assert!(!paths.is_empty());
        for pair in paths.windows(2) {
            prop_assert!(pair[0].total_length() <= pair[1].total_length());
        }
        let oracle = shortest_path_oracle(&g);
        // Integer lengths make the comparison exact.
        prop_assert_eq!(oracle.total_length(), paths[0].total_length());
        let oracle_edges = oracle.edge_ids();
        prop_assert!(paths.iter().any(|p| p.edge_ids() == oracle_edges));
    }

    #[test]
    fn discrete_colony_respects_aco_invariants(
        g in arb_integer_graph(),
        seed in any::<u64>(),
    ) {
        let params = AcoParams {
            alpha: 1.0,
            beta: 2.0,
            evaporation: 0.05,
            deposit: 0.5,
            injection_rate: 1.0,
            initial_pheromone: 0.5,
        };
        let spec = ColonyRunSpec { ants: 40, realizations: 1, seed, record_every: 5 };
        let t = aco::run_colony_realization(&g, &params, &spec, 0).unwrap();
        for row in &t.edge_states {
            for &tau in row {
                prop_assert!(tau >= 0.0 && tau.is_finite());
            }
        }
        prop_assert_eq!(t.index[0], 0.0);
        prop_assert_eq!(*t.index.last().unwrap(), 40.0);
    }
}
