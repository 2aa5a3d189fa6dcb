mod common;

use genturan::counting::{
    automorphism_count, contains_disjoint_cliques, count_cliques, count_copies, find_disjoint_cliques, list_cliques,
};
use genturan::{bits, join, make_turan, Graph, Hypergraph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn hg(g: &Graph) -> Hypergraph {
    Hypergraph::from_graph(g).unwrap()
}

#[test]
fn worked_examples() {
    assert_eq!(count_cliques(&hg(&make_turan(6, 3)), 3), 8);
    assert_eq!(count_cliques(&hg(&make_turan(7, 3)), 3), 12);
    assert_eq!(count_cliques(&hg(&Graph::cycle(5)), 3), 0);
    assert_eq!(list_cliques(&hg(&Graph::complete(4)), 3).len(), 4);
    assert!(list_cliques(&hg(&make_turan(4, 2)), 3).is_empty());
    assert_eq!(list_cliques(&Hypergraph::complete(5, 3).unwrap(), 4).len(), 5);
    assert_eq!(automorphism_count(&hg(&Graph::complete(3))).unwrap(), 6);
    assert_eq!(automorphism_count(&hg(&Graph::path(3))).unwrap(), 2);
    assert_eq!(automorphism_count(&hg(&Graph::cycle(4))).unwrap(), 8);
    assert_eq!(count_copies(&hg(&Graph::cycle(4)), &hg(&Graph::complete(4))).unwrap(), 3);
    assert_eq!(count_copies(&hg(&Graph::path(3)), &hg(&Graph::complete(3))).unwrap(), 3);
    assert!(contains_disjoint_cliques(&hg(&Graph::complete(6)), 2, 3));
    assert!(!contains_disjoint_cliques(&hg(&Graph::complete(5)), 2, 3));
}

#[test]
fn apex_over_bipartite_has_no_two_triangles() {
    for n in 2..=30 {
        let g = hg(&join(&Graph::complete(1), &make_turan(n - 1, 2)));
        assert!(!contains_disjoint_cliques(&g, 2, 3), "n={n}");
    }
}

#[test]
fn copies_of_cliques_are_cliques() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..200 {
        let p = rng.gen_range(2..=3);
        let n = rng.gen_range(p..=9);
        let density = rng.gen_range(0.2..0.9);
        let h = common::random_hypergraph(&mut rng, n, p, density);
        let q = rng.gen_range(p..=5);
        assert_eq!(count_copies(&Hypergraph::complete(q, p).unwrap(), &h).unwrap(), count_cliques(&h, q));
    }
}

#[test]
fn copies_match_subset_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..120 {
        let p = if rng.gen_bool(0.7) { 2 } else { 3 };
        let n = rng.gen_range(p..=if p == 2 { 9 } else { 7 });
        let k = rng.gen_range(1..=5.min(n));
        let density = rng.gen_range(0.3..0.9);
        let host = common::random_hypergraph(&mut rng, n, p, density);
        let pattern = common::random_hypergraph(&mut rng, k, p, 0.6);
        assert_eq!(count_copies(&pattern, &host).unwrap(), common::naive_copies(&pattern, &host), "{pattern:?} in {host:?}");
    }
}

#[test]
fn cliques_match_subset_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..150 {
        let p = rng.gen_range(2..=4);
        let n = rng.gen_range(p..=10);
        let density = rng.gen_range(0.3..0.95);
        let h = common::random_hypergraph(&mut rng, n, p, density);
        for q in 0..=n.min(7) {
            let naive = common::subsets(n, q).into_iter().filter(|s| common::is_clique(&h, s)).count() as u64;
            assert_eq!(count_cliques(&h, q), naive);
        }
        let r = rng.gen_range(p..=n.min(6));
        let listed: Vec<Vec<usize>> = list_cliques(&h, r).lists();
        assert_eq!(listed, common::naive_cliques(&h, r));
    }
}

#[test]
fn packings_match_naive_search() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..300 {
        let p = if rng.gen_bool(0.75) { 2 } else { 3 };
        let n = rng.gen_range(p..=12);
        let density = rng.gen_range(0.3..0.95);
        let h = common::random_hypergraph(&mut rng, n, p, density);
        let t = rng.gen_range(1..=4);
        let r = rng.gen_range(p..=4);
        let found = find_disjoint_cliques(&h, t, r);
        assert_eq!(found.is_some(), common::naive_packing(&h, t, r), "t={t} r={r} {h:?}");
        if let Some(pack) = found {
            let mut used = 0u64;
            for c in pack {
                assert!(common::is_clique(&h, &bits::to_vec(c)) && bits::size(c) == r && c & used == 0);
                used |= c;
            }
        }
    }
}

#[test]
fn packings_in_constructions_match_naive_search() {
    for n in 1..=12 {
        for apex in 0..=5.min(n) {
            for k in 1..=4 {
                let g = hg(&join(&Graph::complete(apex), &make_turan(n - apex, k)));
                for t in 1..=3 {
                    for r in 2..=5 {
                        assert_eq!(contains_disjoint_cliques(&g, t, r), common::naive_packing(&g, t, r));
                    }
                }
            }
        }
    }
}

#[test]
fn single_clique_packing_is_clique_existence() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for _ in 0..200 {
        let n = rng.gen_range(2..=10);
        let density = rng.gen_range(0.2..0.9);
        let h = common::random_hypergraph(&mut rng, n, 2, density);
        for r in 2..=5 {
            assert_eq!(contains_disjoint_cliques(&h, 1, r), count_cliques(&h, r) > 0);
        }
    }
}

#[test]
fn adding_edges_is_monotone() {
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    for _ in 0..100 {
        let p = rng.gen_range(2..=3);
        let n = rng.gen_range(p + 1..=9);
        let mut edges: Vec<u64> = Vec::new();
        let mut slots = bits::k_subsets(n, p);
        // random insertion order
        for i in (1..slots.len()).rev() {
            slots.swap(i, rng.gen_range(0..=i));
        }
        let (t, r, q) = (2, p + 1, p + 1);
        let mut last = (0, false);
        for e in slots {
            edges.push(e);
            let h = Hypergraph::new(n, p, edges.clone()).unwrap();
            let now = (count_cliques(&h, q), contains_disjoint_cliques(&h, t, r));
            assert!(now.0 >= last.0 && (now.1 || !last.1));
            last = now;
        }
    }
}

#[test]
fn host_trait_agrees_with_edge_lists() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let h = common::random_hypergraph(&mut rng, 8, 3, 0.5);
    for e in common::subsets(8, 3) {
        assert_eq!(common::has_edge_list(&h, &e), h.edge_lists().contains(&e));
    }
}
