mod common;

use steiner_core::constructions::{build_auto, build_binary, build_from_meta, build_product};
use steiner_core::counting::{count_zero_sum_subsets, density_report, DEFAULT_ZERO_SUM_BUDGET};
use steiner_core::edgelist::EdgeListFile;
use steiner_core::verifier::{check_forbidden, check_linear, check_sparse3, naive_check, DEFAULT_NAIVE_BUDGET};
use steiner_core::{Error, ForbiddenFamily, Hypergraph};

#[test]
fn auto_construction_round_trips_and_rebuilds() {
    for (r, n) in [(4, 6), (4, 31), (5, 64), (5, 100), (6, 80)] {
        let (h, meta) = build_auto(r, n).unwrap();
        assert_eq!(build_from_meta(&meta).unwrap(), h);
        let text = EdgeListFile::new(h.clone(), Some(meta)).unwrap().to_text();
        let back = EdgeListFile::parse(&text).unwrap();
        assert_eq!(back.hypergraph, h);
        assert_eq!(back.to_text(), text);
        assert_eq!(build_from_meta(&back.meta.unwrap()).unwrap(), h);
    }
}

#[test]
fn product_matches_brute_force_at_r6() {
    let h = build_product(6, 2, 4).unwrap();
    assert_eq!(h.len(), 32 * 448);
    assert!(check_linear(&h).passed());
    assert!(check_sparse3(&h).passed());
    let report = density_report(&h, None).unwrap();
    assert_eq!(report.predicted, None);
    assert!(report.within_upper_bound());
    assert_eq!(common::edges_of(&build_binary(6, 4).unwrap()), common::binary(6, 4));
}

#[test]
fn zero_sum_counts() {
    let pinned = [(2, 3, 1), (3, 3, 7), (3, 4, 14), (3, 5, 7), (4, 3, 35), (4, 4, 140), (4, 5, 273), (5, 4, 1240), (5, 5, 6293)];
    for (d, k, count) in pinned {
        assert_eq!(count_zero_sum_subsets(d, k, DEFAULT_ZERO_SUM_BUDGET).unwrap().count, count, "d={d} k={k}");
    }
    assert!(matches!(count_zero_sum_subsets(20, 6, 1000), Err(Error::BudgetExceeded { .. })));
}

#[test]
fn pruned_check_finds_planted_configuration() {
    // four edges on 8 vertices planted into the mod-sum graph on 12 vertices
    let (h, _) = build_auto(4, 12).unwrap();
    let mut edges: Vec<Vec<u32>> = common::edges_of(&h);
    let planted = [[0, 1, 2, 3], [0, 1, 4, 5], [2, 3, 6, 7], [4, 5, 6, 7]];
    for e in planted {
        if h.position(&e).is_none() {
            edges.push(e.to_vec());
        }
    }
    let g = Hypergraph::new(4, 12, edges).unwrap();
    let family = ForbiddenFamily::new(8, 4);
    let pruned = check_forbidden(&g, family).unwrap();
    let naive = naive_check(&g, family, DEFAULT_NAIVE_BUDGET).unwrap();
    assert!(!pruned.passed());
    assert_eq!(pruned, naive);
    assert!(pruned.certificates.iter().all(|c| c.is_violation(&g, family)));
}
