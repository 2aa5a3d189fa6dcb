//! Exact clique counting, pattern copy counting, and detection of vertex
//! disjoint clique packings.

use serde::{Deserialize, Serialize};

use crate::bits::{self, above, bit, Bits};
use crate::canon::twin_classes;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::hypergraph::{Host, Hypergraph};

/// Patterns are small enough that automorphisms are found by brute force.
pub const MAX_PATTERN_VERTICES: usize = 10;

/// Vertex sets of all copies of `K_q^p` in some host, lexicographically sorted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliqueFamily {
    pub n: usize,
    pub q: usize,
    pub sets: Vec<u64>,
}

impl CliqueFamily {
    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn lists(&self) -> Vec<Vec<usize>> {
        self.sets.iter().map(|&s| bits::to_vec(s)).collect()
    }
}

/// Calls `f` on every `k`-subset of `mask`.
fn for_each_subset(mask: u64, k: usize, f: &mut impl FnMut(u64)) {
    fn go(rest: u64, k: usize, acc: u64, f: &mut impl FnMut(u64)) {
        if k == 0 {
            f(acc);
            return;
        }
        if bits::size(rest) < k {
            return;
        }
        let v = rest.trailing_zeros() as usize;
        let rest = rest & !bit(v);
        go(rest, k - 1, acc | bit(v), f);
        go(rest, k, acc, f);
    }
    go(mask, k, 0, f);
}

/// Vertices `y` for which every `(p-1)`-set of `clique + w` through `w`
/// extends by `y` to an edge. `clique` is assumed to be a clique already.
#[inline]
fn extension<H: Host + ?Sized>(h: &H, clique: u64, w: usize) -> u64 {
    let p = h.uniformity();
    match p {
        2 => h.link(bit(w)),
        3 => Bits(clique).fold(u64::MAX, |acc, u| acc & h.link(bit(u) | bit(w))),
        _ => {
            let mut acc = u64::MAX;
            if bits::size(clique) >= p - 2 {
                for_each_subset(clique, p - 2, &mut |t| acc &= h.link(t | bit(w)));
            }
            acc
        }
    }
}

/// Number of `q`-sets all of whose `p`-subsets are edges.
pub fn count_cliques<H: Host + ?Sized>(h: &H, q: usize) -> u64 {
    let n = h.order();
    if q < h.uniformity() {
        return bits::binomial(n, q);
    }
    fn go<H: Host + ?Sized>(h: &H, clique: u64, cand: u64, left: usize) -> u64 {
        if left == 1 {
            return cand.count_ones() as u64;
        }
        let mut total = 0;
        let mut rest = cand;
        while bits::size(rest) >= left {
            let w = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            total += go(h, clique | bit(w), rest & extension(h, clique, w), left - 1);
        }
        total
    }
    go(h, 0, bits::low_mask(n), q)
}

/// All `K_q^p` vertex sets, lexicographic.
pub fn list_cliques<H: Host + ?Sized>(h: &H, q: usize) -> CliqueFamily {
    let mut sets = Vec::new();
    fn go<H: Host + ?Sized>(h: &H, clique: u64, cand: u64, left: usize, out: &mut Vec<u64>) {
        if left == 0 {
            out.push(clique);
            return;
        }
        let mut rest = cand;
        while bits::size(rest) >= left {
            let w = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            go(h, clique | bit(w), rest & extension(h, clique, w), left - 1, out);
        }
    }
    go(h, 0, bits::low_mask(h.order()), q, &mut sets);
    CliqueFamily { n: h.order(), q, sets }
}

/// Clique counting on a graph of any order, over multi-word adjacency rows.
pub fn count_cliques_graph(g: &Graph, q: usize) -> u64 {
    let n = g.order();
    if q == 0 {
        return 1;
    }
    let words = g.row_words();
    let mut cand = vec![0u64; words];
    for v in 0..n {
        cand[v / 64] |= 1 << (v % 64);
    }
    fn popcount(s: &[u64]) -> u64 {
        s.iter().map(|w| w.count_ones() as u64).sum()
    }
    fn go(g: &Graph, cand: &[u64], left: usize) -> u64 {
        if left == 1 {
            return popcount(cand);
        }
        let mut total = 0;
        let mut rest = cand.to_vec();
        for wi in 0..rest.len() {
            while rest[wi] != 0 {
                if popcount(&rest) < left as u64 {
                    return total;
                }
                let b = rest[wi].trailing_zeros() as usize;
                rest[wi] &= rest[wi] - 1;
                let v = wi * 64 + b;
                let next: Vec<u64> = rest.iter().zip(g.row(v)).map(|(a, b)| a & b).collect();
                total += go(g, &next, left - 1);
            }
        }
        total
    }
    go(g, &cand, q)
}

/// Search plan for injective homomorphisms: pattern vertices in the order they
/// are placed, and for each step the faces (as step indices) whose images must
/// link to the new vertex.
struct EmbeddingPlan {
    order: Vec<usize>,
    faces: Vec<Vec<Vec<usize>>>,
}

impl EmbeddingPlan {
    fn new(pattern: &Hypergraph) -> Self {
        let k = pattern.order();
        let mut placed = 0u64;
        let mut order = Vec::with_capacity(k);
        let mut faces = Vec::with_capacity(k);
        let mut step_of = vec![usize::MAX; k];
        for _ in 0..k {
            // most constrained next: completes the most edges, then highest degree
            let next = (0..k)
                .filter(|&v| placed & bit(v) == 0)
                .max_by_key(|&v| {
                    let closes = pattern.edges().iter().filter(|&&e| e & bit(v) != 0 && e & !bit(v) & !placed == 0).count();
                    (closes, pattern.degree(v), std::cmp::Reverse(v))
                })
                .unwrap();
            let mut fs = Vec::new();
            for &e in pattern.edges() {
                if e & bit(next) != 0 && e & !bit(next) & !placed == 0 {
                    fs.push(Bits(e & !bit(next)).map(|u| step_of[u]).collect());
                }
            }
            step_of[next] = order.len();
            order.push(next);
            faces.push(fs);
            placed |= bit(next);
        }
        EmbeddingPlan { order, faces }
    }
}

/// Number of injective maps `V(pattern) -> V(host)` sending edges to edges.
pub fn injective_homomorphisms<H: Host + ?Sized>(pattern: &Hypergraph, host: &H) -> Result<u64> {
    check_pattern(pattern, host)?;
    if pattern.order() > host.order() {
        return Ok(0);
    }
    if pattern.order() == 0 {
        return Ok(1);
    }
    let plan = EmbeddingPlan::new(pattern);
    let mut image = vec![0usize; pattern.order()];
    Ok(embed(&plan, host, 0, bits::low_mask(host.order()), &mut image))
}

fn embed<H: Host + ?Sized>(plan: &EmbeddingPlan, host: &H, step: usize, free: u64, image: &mut [usize]) -> u64 {
    let mut cand = free;
    for face in &plan.faces[step] {
        let f = face.iter().fold(0u64, |m, &s| m | bit(image[s]));
        cand &= host.link(f);
        if cand == 0 {
            return 0;
        }
    }
    if step + 1 == plan.order.len() {
        return cand.count_ones() as u64;
    }
    let mut total = 0;
    for w in Bits(cand) {
        image[step] = w;
        total += embed(plan, host, step + 1, free & !bit(w), image);
    }
    total
}

fn check_pattern<H: Host + ?Sized>(pattern: &Hypergraph, host: &H) -> Result<()> {
    if pattern.uniformity() != host.uniformity() {
        return Err(Error::UniformityMismatch { left: pattern.uniformity(), right: host.uniformity() });
    }
    if pattern.order() > MAX_PATTERN_VERTICES {
        return Err(Error::PatternTooLarge { got: pattern.order(), max: MAX_PATTERN_VERTICES });
    }
    Ok(())
}

/// `|Aut(pattern)|`.
pub fn automorphism_count(pattern: &Hypergraph) -> Result<u64> {
    injective_homomorphisms(pattern, pattern)
}

/// Number of (not necessarily induced) sub-hypergraphs of `host` isomorphic
/// to `pattern`.
pub fn count_copies<H: Host + ?Sized>(pattern: &Hypergraph, host: &H) -> Result<u64> {
    let homs = injective_homomorphisms(pattern, host)?;
    if homs == 0 {
        return Ok(0);
    }
    Ok(homs / automorphism_count(pattern)?)
}

/// Searches for `t` pairwise vertex-disjoint copies of `K_r^p`; returns their
/// vertex sets in the order found, or `None` if the host has no such packing.
///
/// Branches on the lowest available vertex: either it starts a clique or it
/// (together with its remaining twins) is left out. Twins are
/// interchangeable, so cliques only ever take the lowest available members of
/// each twin class.
pub fn find_disjoint_cliques<H: Host + ?Sized>(h: &H, t: usize, r: usize) -> Option<Vec<u64>> {
    let mut out = Vec::with_capacity(t);
    if t == 0 {
        return Some(out);
    }
    let twins = twin_classes(h);
    let avail = bits::low_mask(h.order());
    if pack(h, &twins, avail, t, r, &mut out) {
        Some(out)
    } else {
        None
    }
}

pub fn contains_disjoint_cliques<H: Host + ?Sized>(h: &H, t: usize, r: usize) -> bool {
    find_disjoint_cliques(h, t, r).is_some()
}

fn pack<H: Host + ?Sized>(h: &H, twins: &[u64], avail: u64, need: usize, r: usize, out: &mut Vec<u64>) -> bool {
    if need == 0 {
        return true;
    }
    if bits::size(avail) < need * r {
        return false;
    }
    let v = avail.trailing_zeros() as usize;
    let found = cliques_through(h, twins, avail, v, r, &mut |clique| {
        out.push(clique);
        if pack(h, twins, avail & !clique, need - 1, r, out) {
            return true;
        }
        out.pop();
        false
    });
    found || pack(h, twins, avail & !twins[v], need, r, out)
}

/// Enumerates the canonical `r`-cliques inside `avail` whose lowest vertex is
/// `v`, stopping as soon as `f` returns true.
fn cliques_through<H: Host + ?Sized>(
    h: &H,
    twins: &[u64],
    avail: u64,
    v: usize,
    r: usize,
    f: &mut dyn FnMut(u64) -> bool,
) -> bool {
    fn go<H: Host + ?Sized>(
        h: &H,
        twins: &[u64],
        avail: u64,
        clique: u64,
        cand: u64,
        left: usize,
        f: &mut dyn FnMut(u64) -> bool,
    ) -> bool {
        if left == 0 {
            return f(clique);
        }
        let mut rest = cand;
        while bits::size(rest) >= left {
            let w = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            // lower available twins of w must already be in the clique
            if twins[w] & avail & bits::low_mask(w) & !clique != 0 {
                continue;
            }
            if go(h, twins, avail, clique | bit(w), rest & extension(h, clique, w), left - 1, f) {
                return true;
            }
        }
        false
    }
    if r == 0 {
        return false;
    }
    let cand = avail & above(v) & extension(h, 0, v);
    go(h, twins, avail, bit(v), cand, r - 1, f)
}

/// Whether the edge `edge` of `h` lies in some `K_r^p`. Adding an edge to a
/// packing-free host can only create a packing if this holds afterwards.
pub fn edge_in_clique<H: Host + ?Sized>(h: &H, edge: u64, r: usize) -> bool {
    let p = h.uniformity();
    if r < p {
        return true;
    }
    // candidates: vertices extending `edge` to a (p+1)-clique
    let mut cand = bits::low_mask(h.order()) & !edge;
    let mut clique = 0u64;
    for w in Bits(edge) {
        cand &= extension(h, clique, w);
        clique |= bit(w);
    }
    fn go<H: Host + ?Sized>(h: &H, clique: u64, cand: u64, left: usize) -> bool {
        if left == 0 {
            return true;
        }
        let mut rest = cand;
        while bits::size(rest) >= left {
            let w = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if go(h, clique | bit(w), rest & extension(h, clique, w), left - 1) {
                return true;
            }
        }
        false
    }
    go(h, clique, cand, r - p)
}
