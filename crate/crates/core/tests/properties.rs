mod common;

use common::{random_ast, random_graph};
use dks_core::block_cut::{build_block_cut_tree, is_block_graph};
use dks_core::block_dp::{knapsack_merge, solve_block_weighted, PreparedBlockGraph};
use dks_core::cw::{
    cograph_to_expression, emit_expression, parse_expression, solve_cw_weighted, CliqueWidthSolver, CwExpression, Node,
};
use dks_core::deletion::{solve_with_deletion_set, solve_with_deletion_set_weighted};
use dks_core::generate::{generate, InstanceKind, InstanceSpec};
use dks_core::graph::{parse_weighted_edge_list, write_edge_list};
use dks_core::nd::{build_type_graph, compute_nd_partition, emit_iqp, materialize, NdPartition};
use dks_core::oracle::brute_force_solve;
use dks_core::params::{is_twin_cover, is_vertex_cover, min_twin_cover, non_twin_edges};
use dks_core::strategy::{solve, Strategy as Solver};
use dks_core::{Graph, Objective, VertexWeights, Weights};
use num_rational::Rational64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn objective() -> impl Strategy<Value = Objective> {
    prop_oneof![Just(Objective::Densest), Just(Objective::Sparsest)]
}

fn weights(rng: &mut ChaCha8Rng, n: usize) -> Weights {
    VertexWeights::new((0..n).map(|_| rng.gen_range(0..=5)).collect()).unwrap()
}

fn instance(kind: InstanceKind, seed: u64) -> dks_core::generate::Instance {
    generate(&InstanceSpec::new(kind, seed)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn complement_is_an_involution(seed in any::<u64>(), n in 0usize..12) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_graph(&mut rng, n, 0.4);
        let h = g.complement();
        prop_assert_eq!(g.m() + h.m(), n * n.saturating_sub(1) / 2);
        prop_assert_eq!(h.complement(), g);
    }

    #[test]
    fn edge_list_round_trip(seed in any::<u64>(), n in 1usize..15) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_graph(&mut rng, n, 0.3);
        let w = weights(&mut rng, n);
        let text = write_edge_list(&g, Some(&w), &["generated".to_string()]);
        let (g2, w2) = parse_weighted_edge_list::<i64>(&text).unwrap();
        prop_assert_eq!(g2, g);
        prop_assert_eq!(w2, w);
    }

    #[test]
    fn block_cut_tree_invariants(seed in any::<u64>(), n in 1usize..40, c in 2usize..6) {
        let g = instance(InstanceKind::BlockGraph { n, max_clique: c }, seed).graph;
        let t = build_block_cut_tree(&g);
        // every edge lies in exactly one block
        let mut covered = 0;
        for b in t.blocks() {
            covered += b.len() * (b.len() - 1) / 2;
            for (i, &u) in b.iter().enumerate() {
                for &v in &b[i + 1..] {
                    prop_assert!(g.has_edge(u, v));
                }
            }
        }
        prop_assert_eq!(covered, g.m());
        // a forest: nodes minus edges equals the component count
        let nodes = t.blocks().len() + t.cut_vertices().len();
        prop_assert_eq!(nodes - t.tree_edges().len(), g.components().len());
    }

    #[test]
    fn block_dp_matches_oracle(seed in any::<u64>(), n in 1usize..12, c in 2usize..6, obj in objective()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = instance(InstanceKind::BlockGraph { n, max_clique: c }, seed).graph;
        let w = weights(&mut rng, n);
        for k in 0..=n {
            let r = solve_block_weighted(&g, &w, k, obj).unwrap();
            r.verify(&g, &w).unwrap();
            prop_assert_eq!(r.value, brute_force_solve(&g, &w, k, obj).unwrap().value);
        }
    }

    #[test]
    fn block_dp_table_is_the_per_size_optimum(seed in any::<u64>(), n in 1usize..12, obj in objective()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = instance(InstanceKind::BlockGraph { n, max_clique: 4 }, seed).graph;
        let w = weights(&mut rng, n);
        let table = PreparedBlockGraph::new(&g).unwrap().table(&w, n, obj).unwrap();
        for (k, &best) in table.iter().enumerate() {
            prop_assert_eq!(best, Some(brute_force_solve(&g, &w, k, obj).unwrap().value));
        }
    }

    #[test]
    fn block_dp_rational_weights(seed in any::<u64>(), n in 1usize..10) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = instance(InstanceKind::BlockGraph { n, max_clique: 4 }, seed).graph;
        let w = VertexWeights::new(
            (0..n).map(|_| Rational64::new(rng.gen_range(0..12), rng.gen_range(1..5))).collect(),
        ).unwrap();
        for k in 0..=n {
            let r = solve_block_weighted(&g, &w, k, Objective::Densest).unwrap();
            prop_assert_eq!(r.value, brute_force_solve(&g, &w, k, Objective::Densest).unwrap().value);
        }
    }

    #[test]
    fn knapsack_merge_matches_direct_search(
        a in prop::collection::vec(prop::option::of(0i64..20), 1..6),
        b in prop::collection::vec(prop::option::of(0i64..20), 1..6),
        cap in 0usize..10,
        obj in objective(),
    ) {
        let merged = knapsack_merge(&a, &b, cap, obj);
        prop_assert_eq!(merged.len(), cap + 1);
        for (l, got) in merged.iter().enumerate() {
            let mut want: Option<i64> = None;
            for i in 0..=l {
                let (Some(Some(x)), Some(Some(y))) = (a.get(i), b.get(l - i)) else { continue };
                if want.is_none_or(|w| obj.improves(&(x + y), &w)) {
                    want = Some(x + y);
                }
            }
            prop_assert_eq!(*got, want);
        }
    }

    #[test]
    fn deletion_framework_matches_oracle(seed in any::<u64>(), n in 5usize..12, d in 1usize..4, obj in objective()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let inst = instance(InstanceKind::Planted { n, d, max_clique: 4, p: 0.5 }, seed);
        let g = inst.graph;
        let planted = inst.planted.unwrap();
        let w = weights(&mut rng, n);
        for k in 0..=n {
            let r = solve_with_deletion_set_weighted(&g, &w, &planted, k, obj, &dks_core::block_dp::BlockDpSolver).unwrap();
            r.verify(&g, &w).unwrap();
            prop_assert_eq!(r.value, brute_force_solve(&g, &w, k, obj).unwrap().value);
        }
    }

    #[test]
    fn deletion_framework_over_cographs(seed in any::<u64>(), n in 1usize..11, obj in objective()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_graph(&mut rng, n, 0.5);
        let d = dks_core::params::min_cograph_deletion_set(&g, n).unwrap();
        for k in 0..=n {
            let r = solve_with_deletion_set::<i64>(&g, &d, k, obj, &CliqueWidthSolver::default()).unwrap();
            prop_assert_eq!(r.value, brute_force_solve(&g, &Weights::zeros(n), k, obj).unwrap().value);
        }
    }

    #[test]
    fn cw_dp_matches_oracle(seed in any::<u64>(), n in 1usize..12, c in 1u32..=4, obj in objective()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let inst = instance(InstanceKind::RandomExpression { n, labels: c }, seed);
        let e = inst.expression.unwrap();
        let w = weights(&mut rng, n);
        for k in 0..=n {
            let r = solve_cw_weighted(&e, &w, k, obj).unwrap();
            r.verify(&inst.graph, &w).unwrap();
            prop_assert_eq!(r.value, brute_force_solve(&inst.graph, &w, k, obj).unwrap().value);
        }
    }

    #[test]
    fn adding_a_join_never_lowers_the_densest_value(seed in any::<u64>(), n in 2usize..10) {
        let inst = instance(InstanceKind::RandomExpression { n, labels: 3 }, seed);
        let e = inst.expression.unwrap();
        let labels = e.realize().labels;
        let (i, j) = (labels[0], labels[n - 1]);
        prop_assume!(i != j);
        let joined = CwExpression::join(i, j, e.clone()).unwrap();
        prop_assume!(joined.first_redundant_join().is_none());
        let w = Weights::zeros(n);
        for k in 0..=n {
            let before = solve_cw_weighted(&e, &w, k, Objective::Densest).unwrap().value;
            let after = solve_cw_weighted(&joined, &w, k, Objective::Densest).unwrap().value;
            prop_assert!(after >= before);
        }
    }

    #[test]
    fn expressions_round_trip(seed in any::<u64>(), c in 1u32..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let e = random_ast(&mut rng, 8, c);
        let text = emit_expression(&e);
        prop_assert!(!text.contains(char::is_whitespace));
        let parsed = parse_expression(&text).unwrap();
        prop_assert_eq!(&parsed, &e);
        let introduces = e.nodes().iter().filter(|n| matches!(n, Node::Introduce(_))).count();
        prop_assert_eq!(introduces, e.realize().graph.n());
    }

    #[test]
    fn cographs_get_two_label_expressions(seed in any::<u64>(), n in 1usize..13) {
        let g = instance(InstanceKind::Cograph { n }, seed).graph;
        let (e, map) = cograph_to_expression(&g).unwrap();
        prop_assert!(e.label_count() <= 2);
        prop_assert!(e.first_redundant_join().is_none());
        let h = e.realize().graph;
        let mapped: Vec<(usize, usize)> = h.edges().map(|(u, v)| (map[u].min(map[v]), map[u].max(map[v]))).collect();
        let mut mapped = mapped;
        mapped.sort_unstable();
        prop_assert_eq!(mapped, g.edges().collect::<Vec<_>>());
    }

    #[test]
    fn nd_witness_matches_program_value(seed in any::<u64>(), n in 1usize..12, k_frac in 0.0f64..1.0) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_graph(&mut rng, n, 0.5);
        let p = compute_nd_partition(&g);
        let tg = build_type_graph(&g, &p).unwrap();
        let k = ((n as f64) * k_frac) as usize;
        let iqp = emit_iqp(&p, &tg, k, Objective::Densest).unwrap();
        // a random feasible composition
        let mut x = vec![0usize; p.len()];
        let mut left = k;
        while left > 0 {
            let i = rng.gen_range(0..p.len());
            if x[i] < p.modules()[i].len() {
                x[i] += 1;
                left -= 1;
            }
        }
        prop_assert!(iqp.is_feasible(&x));
        let s = materialize(&p, &x);
        prop_assert_eq!(g.edge_count_within(&s).unwrap() as i64, iqp.objective(&x));
        prop_assert_eq!(iqp.doubled_objective(&x) % 2, 0);
        // swapping a chosen vertex for an unchosen one of its module keeps the value
        for (i, m) in p.modules().iter().enumerate() {
            if x[i] > 0 && x[i] < m.len() {
                let mut t = s.clone();
                let at = t.iter().position(|&v| v == m[0]).unwrap();
                t[at] = m[x[i]];
                t.sort_unstable();
                prop_assert_eq!(g.edge_count_within(&t).unwrap(), g.edge_count_within(&s).unwrap());
            }
        }
    }

    #[test]
    fn nd_solver_matches_oracle(seed in any::<u64>(), n in 1usize..12, obj in objective()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = rng.gen_range(0.1..0.9);
        let g = random_graph(&mut rng, n, p);
        for k in 0..=n {
            let r = dks_core::nd::solve_nd(&g, k, obj).unwrap();
            prop_assert_eq!(r.value, brute_force_solve(&g, &Weights::zeros(n), k, obj).unwrap().value);
        }
    }

    #[test]
    fn twin_cover_is_a_cover_of_non_twin_edges(seed in any::<u64>(), n in 1usize..10) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_graph(&mut rng, n, 0.5);
        let tc = min_twin_cover(&g, n).unwrap();
        prop_assert!(is_twin_cover(&g, &tc));
        let h = Graph::from_edges(n, non_twin_edges(&g)).unwrap();
        // the two definitions agree on every subset
        for mask in 0u32..(1 << n) {
            let x: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            prop_assert_eq!(is_twin_cover(&g, &x), is_vertex_cover(&h, &x));
        }
    }

    #[test]
    fn strategies_agree(seed in any::<u64>(), n in 1usize..10, obj in objective()) {
        let inst = instance(InstanceKind::Planted { n: n.max(4), d: 2, max_clique: 3, p: 0.5 }, seed);
        let g = inst.graph;
        let strategies = [
            Solver::DeletionBlock { deletion_set: inst.planted.clone() },
            Solver::DeletionCw { deletion_set: None, expression: None },
            Solver::NdEnum,
        ];
        for k in 0..=g.n() {
            let want = solve(&g, k, obj, &Solver::Oracle).unwrap().value;
            for s in &strategies {
                match solve(&g, k, obj, s) {
                    Ok(r) => prop_assert_eq!(r.value, want),
                    Err(e) => prop_assert!(matches!(e, dks_core::Error::StrategyNotApplicable { .. }), "{}", e),
                }
            }
        }
    }
}

/// Twin modules are the fewest possible: no partition into fewer sets of
/// mutual twins exists. Checked over all set partitions for n <= 7.
#[test]
fn nd_partition_is_minimum() {
    fn partitions(n: usize) -> Vec<Vec<usize>> {
        // restricted growth strings
        let mut out = Vec::new();
        let mut a = vec![0usize; n];
        loop {
            out.push(a.clone());
            let mut i = n;
            loop {
                if i <= 1 {
                    return out;
                }
                i -= 1;
                let max_prev = a[..i].iter().copied().max().unwrap_or(0);
                if a[i] <= max_prev {
                    a[i] += 1;
                    for x in &mut a[i + 1..] {
                        *x = 0;
                    }
                    break;
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for _ in 0..30 {
        let n = rng.gen_range(1..=7);
        let p = rng.gen_range(0.2..0.8);
        let g = random_graph(&mut rng, n, p);
        let best = partitions(n)
            .into_iter()
            .filter_map(|rgs| {
                let t = rgs.iter().max().unwrap() + 1;
                let modules: Vec<Vec<usize>> = (0..t).map(|c| (0..n).filter(|&v| rgs[v] == c).collect()).collect();
                NdPartition::from_modules(&g, modules).ok().map(|p| p.len())
            })
            .min()
            .unwrap();
        assert_eq!(compute_nd_partition(&g).len(), best);
    }
}

#[test]
fn block_graph_generator_output_is_recognized() {
    for seed in 0..50 {
        let g = instance(InstanceKind::BlockGraph { n: 60, max_clique: 7 }, seed).graph;
        assert!(is_block_graph(&g));
    }
}
