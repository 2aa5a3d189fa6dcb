//! Brute-force reference implementations. Deliberately naive: plain subset
//! and permutation enumeration, no shared code with the library beyond the
//! data types.
#![allow(dead_code)]

use std::collections::HashSet;

use genturan::{Host, Hypergraph};

pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            cur.push(v);
            go(v + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

pub fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

fn edge_set(h: &Hypergraph) -> HashSet<Vec<usize>> {
    h.edge_lists().into_iter().collect()
}

fn sorted(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable();
    v
}

/// Copies of `pattern` in `host`: for every vertex subset of the right size,
/// the distinct edge sets obtained by mapping the pattern onto it.
pub fn naive_copies(pattern: &Hypergraph, host: &Hypergraph) -> u64 {
    let k = pattern.order();
    let host_edges = edge_set(host);
    let mut total = 0;
    for s in subsets(host.order(), k) {
        let mut images: HashSet<Vec<Vec<usize>>> = HashSet::new();
        for perm in permutations(&s) {
            let mut image: Vec<Vec<usize>> =
                pattern.edge_lists().into_iter().map(|e| sorted(e.into_iter().map(|v| perm[v]).collect())).collect();
            if image.iter().all(|e| host_edges.contains(e)) {
                image.sort();
                images.insert(image);
            }
        }
        total += images.len() as u64;
    }
    total
}

pub fn is_clique(h: &Hypergraph, set: &[usize]) -> bool {
    let edges = edge_set(h);
    let p = h.uniformity();
    if set.len() < p {
        return true;
    }
    subsets(set.len(), p).into_iter().all(|idx| edges.contains(&idx.iter().map(|&i| set[i]).collect::<Vec<_>>()))
}

pub fn naive_cliques(h: &Hypergraph, r: usize) -> Vec<Vec<usize>> {
    subsets(h.order(), r).into_iter().filter(|s| is_clique(h, s)).collect()
}

/// Whether `t` pairwise disjoint `r`-cliques exist, by trying all increasing
/// `t`-tuples of cliques.
pub fn naive_packing(h: &Hypergraph, t: usize, r: usize) -> bool {
    let cliques = naive_cliques(h, r);
    fn go(cliques: &[Vec<usize>], from: usize, used: &mut Vec<bool>, left: usize) -> bool {
        if left == 0 {
            return true;
        }
        for i in from..cliques.len() {
            if cliques[i].iter().all(|&v| !used[v]) {
                cliques[i].iter().for_each(|&v| used[v] = true);
                let ok = go(cliques, i + 1, used, left - 1);
                cliques[i].iter().for_each(|&v| used[v] = false);
                if ok {
                    return true;
                }
            }
        }
        false
    }
    go(&cliques, 0, &mut vec![false; h.order()], t)
}

/// Largest number of pairwise disjoint sets, over all subfamilies.
pub fn naive_matching_number(members: &[u64]) -> usize {
    let m = members.len();
    (0u32..1 << m)
        .filter(|&mask| {
            let chosen: Vec<u64> = (0..m).filter(|&i| mask >> i & 1 == 1).map(|i| members[i]).collect();
            chosen.iter().enumerate().all(|(i, a)| chosen[i + 1..].iter().all(|b| a & b == 0))
        })
        .map(|mask| mask.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

/// Rainbow matching of size `t` by trying every `t`-set of matchings and
/// every choice of one member from each.
pub fn naive_rainbow(matchings: &[Vec<u64>], t: usize) -> bool {
    fn pick(pools: &[&Vec<u64>], used: u64) -> bool {
        match pools.split_first() {
            None => true,
            Some((first, rest)) => first.iter().any(|&m| m & used == 0 && pick(rest, used | m)),
        }
    }
    subsets(matchings.len(), t).into_iter().any(|chosen| {
        let pools: Vec<&Vec<u64>> = chosen.iter().map(|&m| &matchings[m]).collect();
        pick(&pools, 0)
    })
}

/// Simple random `p`-graph with edge probability `density`.
pub fn random_hypergraph(rng: &mut impl rand::Rng, n: usize, p: usize, density: f64) -> Hypergraph {
    let edges: Vec<Vec<usize>> = subsets(n, p).into_iter().filter(|_| rng.gen_bool(density)).collect();
    Hypergraph::from_lists(n, p, &edges).unwrap()
}

pub fn has_edge_list(h: &Hypergraph, e: &[usize]) -> bool {
    h.has_edge(e.iter().fold(0u64, |m, &v| m | 1 << v))
}
