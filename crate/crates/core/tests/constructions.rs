mod common;

use genturan::bits;
use genturan::counting::count_cliques_graph;
use genturan::{hyper_join, join, make_turan, partial_blowup, Graph, Host, Hypergraph};
use proptest::prelude::*;

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2).prop_map(move |flags| {
            let mut g = Graph::empty(n);
            let mut k = 0;
            for i in 0..n {
                for j in i + 1..n {
                    if flags[k] {
                        g.set_edge(i, j);
                    }
                    k += 1;
                }
            }
            g
        })
    })
}

fn arb_hypergraph(max_n: usize, p: usize) -> impl Strategy<Value = Hypergraph> {
    (p..=max_n).prop_flat_map(move |n| {
        let slots = bits::k_subsets(n, p);
        proptest::collection::vec(any::<bool>(), slots.len())
            .prop_map(move |flags| Hypergraph::new(n, p, slots.iter().zip(&flags).filter(|(_, &f)| f).map(|(&e, _)| e)).unwrap())
    })
}

#[test]
fn turan_graphs_avoid_the_next_clique() {
    for m in 0..=40 {
        for k in 1..=m.min(12) {
            let g = make_turan(m, k);
            assert_eq!(count_cliques_graph(&g, k + 1), 0, "T({m},{k})");
            if m >= k {
                assert!(count_cliques_graph(&g, k) > 0);
            }
        }
    }
}

#[test]
fn hyper_join_examples() {
    let k33 = Hypergraph::complete(3, 3).unwrap();
    let j = hyper_join(&Hypergraph::empty(1, 3).unwrap(), &k33).unwrap();
    assert_eq!(j, Hypergraph::complete(4, 3).unwrap());
    let j = hyper_join(&Hypergraph::empty(1, 3).unwrap(), &Hypergraph::empty(2, 3).unwrap()).unwrap();
    assert_eq!(j.edge_lists(), vec![vec![0, 1, 2]]);
    assert!(hyper_join(&k33, &Hypergraph::empty(2, 2).unwrap()).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn join_edge_count(g in arb_graph(12), h in arb_graph(12)) {
        let j = join(&g, &h);
        prop_assert_eq!(j.edge_count(), g.edge_count() + h.edge_count() + g.order() * h.order());
    }

    #[test]
    fn hyper_join_matches_graph_join(g in arb_graph(10), h in arb_graph(10)) {
        let hg = |x: &Graph| Hypergraph::from_graph(x).unwrap();
        prop_assert_eq!(hyper_join(&hg(&g), &hg(&h)).unwrap(), hg(&join(&g, &h)));
    }

    #[test]
    fn hyper_join_with_nothing_is_identity(h in arb_hypergraph(7, 3)) {
        prop_assert_eq!(hyper_join(&h, &Hypergraph::empty(0, 3).unwrap()).unwrap(), h);
    }

    #[test]
    fn blowup_with_multiplicity_one(h in arb_hypergraph(7, 2), u in any::<u64>()) {
        let blown = u & bits::low_mask(h.order());
        let b = partial_blowup(&h, blown, 1).unwrap();
        // same graph after moving the blown vertices to the end
        let kept: Vec<usize> = (0..h.order()).filter(|&v| blown >> v & 1 == 0).collect();
        let moved: Vec<usize> = (0..h.order()).filter(|&v| blown >> v & 1 == 1).collect();
        let mut perm = vec![0; h.order()];
        for (i, &v) in kept.iter().chain(&moved).enumerate() {
            perm[v] = i;
        }
        prop_assert_eq!(b, h.permuted(&perm));
    }

    #[test]
    fn blowup_edge_count(h in arb_hypergraph(6, 3), u in any::<u64>(), m in 1usize..4) {
        let blown = u & bits::low_mask(h.order());
        let b = partial_blowup(&h, blown, m).unwrap();
        let expected: usize = h.edges().iter().map(|&e| m.pow(bits::size(e & blown) as u32)).sum();
        prop_assert_eq!(b.edge_count(), expected);
        prop_assert_eq!(b.order(), h.order() + (m - 1) * bits::size(blown));
    }

    #[test]
    fn blowup_clone_edges_are_all_present(h in arb_hypergraph(6, 2), u in any::<u64>(), m in 1usize..4) {
        // every edge of the blowup projects onto an edge of the original;
        // with the edge count above this pins the blowup down
        let blown = u & bits::low_mask(h.order());
        let b = partial_blowup(&h, blown, m).unwrap();
        let kept = h.order() - bits::size(blown);
        let mut origin = Vec::new();
        let mut next = 0;
        for v in 0..h.order() {
            if blown >> v & 1 == 0 {
                origin.push((next, v));
                next += 1;
            }
        }
        let mut block = kept;
        for v in 0..h.order() {
            if blown >> v & 1 == 1 {
                for c in 0..m {
                    origin.push((block + c, v));
                }
                block += m;
            }
        }
        origin.sort_unstable();
        for e in b.edge_lists() {
            let src: Vec<usize> = e.iter().map(|&x| origin[x].1).collect();
            let mut sorted = src.clone();
            sorted.sort_unstable();
            prop_assert!(src[0] != src[1] && common::has_edge_list(&h, &sorted));
        }
    }
}
