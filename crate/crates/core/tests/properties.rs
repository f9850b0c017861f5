use groupie::generate::{generate, ModelParams, RngSeed};
use groupie::oracle::{verify_groupie_existence, verify_pair_equivalence, verify_statistic_equivalence};
use groupie::{
    gen_bipartite, gen_gnp, groupie_report, is_groupie, load_edge_list, neighborhood_stats,
    pair_partition_stats, pair_statistics, single_vertex_statistic, Graph,
};
use proptest::prelude::*;

fn arb_params() -> impl Strategy<Value = ModelParams> {
    prop_oneof![
        (1usize..40, 0.0f64..=1.0).prop_map(|(n, p)| ModelParams::Gnp { n, p }),
        (1usize..20, 1usize..20, 0.0f64..=1.0).prop_map(|(n1, n2, p)| ModelParams::Bipartite { n1, n2, p }),
    ]
}

proptest! {
    #[test]
    fn generated_graphs_are_simple_and_reproducible(params in arb_params(), seed in any::<u64>()) {
        let g = generate(params, RngSeed(seed)).unwrap();
        g.check_invariants().unwrap();
        prop_assert_eq!(g.vertex_count(), params.vertex_count());
        prop_assert_eq!(&g, &generate(params, RngSeed(seed)).unwrap());
        if let ModelParams::Bipartite { n1, .. } = params {
            for (u, v) in g.edges() {
                prop_assert!(u < n1 && v >= n1);
            }
        }
    }

    #[test]
    fn neighbor_degree_sums_total_degree_squares(params in arb_params(), seed in any::<u64>()) {
        let g = generate(params, RngSeed(seed)).unwrap();
        let squares: u64 = g.degrees().iter().map(|&d| d as u64 * d as u64).sum();
        prop_assert_eq!(g.neighbor_degree_sums().iter().sum::<u64>(), squares);
        for v in 0..g.vertex_count() {
            prop_assert_eq!(g.neighbor_degree_sum(v).unwrap(), g.neighbor_degree_sums()[v]);
        }
    }

    #[test]
    fn report_counts_and_existence(n in 1usize..30, p in 0.0f64..=1.0, seed in any::<u64>()) {
        let g = gen_gnp(n, p, RngSeed(seed)).unwrap();
        let r = groupie_report(&g).unwrap();
        prop_assert_eq!(r.count, r.flags.iter().filter(|&&f| f).count());
        prop_assert!(r.count >= 1);
        if n >= 2 {
            prop_assert!(r.count >= 2);
        }
        for v in 0..n {
            prop_assert_eq!(r.flags[v], is_groupie(&g, v).unwrap());
        }
    }

    #[test]
    fn statistics_match_predicate_on_random_graphs(n in 2usize..25, p in 0.05f64..0.95, seed in any::<u64>()) {
        let g = gen_gnp(n, p, RngSeed(seed)).unwrap();
        for v in 0..n {
            let s = neighborhood_stats(&g, v).unwrap();
            prop_assert_eq!(s.degree + s.e1 + s.e2 + s.e3, g.edge_count());
            let i = s.degree;
            let rest = (n - 1) as u64 - i;
            prop_assert!(s.e1 <= i * i.saturating_sub(1) / 2);
            prop_assert!(s.e2 <= rest * rest.saturating_sub(1) / 2);
            prop_assert!(s.e3 <= i * rest);
            if i > 0 {
                prop_assert_eq!(is_groupie(&g, v).unwrap(), single_vertex_statistic(&s, n) >= 0);
            }
        }
        for (v1, v2) in g.edges() {
            let stats = pair_partition_stats(&g, v1, v2).unwrap();
            prop_assert_eq!(stats.total_edges(), g.edge_count());
            let (b1, b2) = pair_statistics(&stats, n).unwrap();
            let both = is_groupie(&g, v1).unwrap() && is_groupie(&g, v2).unwrap();
            prop_assert_eq!(b1 >= 0 && b2 >= 0, both);
            let swapped = pair_statistics(&pair_partition_stats(&g, v2, v1).unwrap(), n).unwrap();
            prop_assert_eq!(swapped, (b2, b1));
        }
    }

    #[test]
    fn edge_list_round_trip(n in 1usize..30, p in 0.0f64..=1.0, seed in any::<u64>()) {
        let g = gen_gnp(n, p, RngSeed(seed)).unwrap();
        prop_assert_eq!(load_edge_list(&g.to_edge_list()).unwrap(), g);
    }
}

#[test]
fn exhaustive_suites_up_to_six_vertices() {
    for suite in [
        verify_statistic_equivalence(6).unwrap(),
        verify_pair_equivalence(6).unwrap(),
        verify_groupie_existence(6, 10_000, RngSeed(2)).unwrap(),
    ] {
        assert!(suite.passed(), "{suite:?}");
    }
}

#[test]
fn dense_and_sparse_samplers_share_edge_density() {
    // Bin(4950, p) edge counts averaged over 400 seeds, within 5 standard errors.
    for p in [0.1, 0.2, 0.3, 0.6] {
        let runs = 400;
        let total: u64 = (0..runs).map(|s| gen_gnp(100, p, RngSeed(s)).unwrap().edge_count()).sum();
        let mean = total as f64 / runs as f64;
        let se = (4950.0 * p * (1.0 - p) / runs as f64).sqrt();
        assert!((mean - 4950.0 * p).abs() <= 5.0 * se, "p={p}: mean {mean}");
    }
    let runs = 400;
    let total: u64 = (0..runs).map(|s| gen_bipartite(30, 40, 0.15, RngSeed(s)).unwrap().edge_count()).sum();
    let se = (1200.0 * 0.15 * 0.85 / runs as f64).sqrt();
    assert!((total as f64 / runs as f64 - 180.0).abs() <= 5.0 * se);
}

#[test]
fn each_pair_appears_with_probability_p() {
    // Marginal frequency of every individual pair over many seeds.
    let (n, p, runs) = (8usize, 0.15, 20_000u64);
    let mut hits = vec![0u32; n * n];
    for s in 0..runs {
        for (u, v) in gen_gnp(n, p, RngSeed(s)).unwrap().edges() {
            hits[u * n + v] += 1;
        }
    }
    let se = (p * (1.0 - p) / runs as f64).sqrt();
    for u in 0..n {
        for v in u + 1..n {
            let f = hits[u * n + v] as f64 / runs as f64;
            assert!((f - p).abs() <= 5.0 * se, "pair ({u},{v}) frequency {f}");
        }
    }
}

#[test]
fn two_disjoint_copies_keep_the_degree_identity() {
    let g = gen_gnp(20, 0.3, RngSeed(8)).unwrap();
    let n = g.vertex_count();
    let doubled = Graph::from_edges(2 * n, g.edges().chain(g.edges().map(|(u, v)| (u + n, v + n)))).unwrap();
    let squares: u64 = doubled.degrees().iter().map(|&d| d as u64 * d as u64).sum();
    assert_eq!(doubled.neighbor_degree_sums().iter().sum::<u64>(), squares);
    assert_eq!(groupie_report(&doubled).unwrap().count, 2 * groupie_report(&g).unwrap().count);
}
