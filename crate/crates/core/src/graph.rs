//! Simple undirected graphs on dense adjacency bit rows.

use std::fmt;

use crate::error::{Error, Result};

const WORD: usize = 64;

/// Simple undirected graph. Row `i` holds the neighbours of vertex `i`, packed
/// into `words` 64-bit words.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    adj: Vec<u64>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        let words = n.div_ceil(WORD).max(1);
        Graph { n, words, adj: vec![0; n * words] }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.set_edge(u, v);
            }
        }
        g
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::Invalid(format!("edge ({u},{v}) out of range for {n} vertices")));
            }
            if u == v {
                return Err(Error::Invalid(format!("loop at vertex {u}")));
            }
            g.set_edge(u, v);
        }
        Ok(g)
    }

    /// Cycle `0-1-...-(n-1)-0`; needs `n >= 3`.
    pub fn cycle(n: usize) -> Self {
        let mut g = Graph::empty(n);
        if n >= 3 {
            for v in 0..n {
                g.set_edge(v, (v + 1) % n);
            }
        }
        g
    }

    /// Path `0-1-...-(n-1)`.
    pub fn path(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for v in 1..n {
            g.set_edge(v - 1, v);
        }
        g
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    /// Number of 64-bit words per adjacency row.
    #[inline]
    pub fn row_words(&self) -> usize {
        self.words
    }

    #[inline]
    pub fn row(&self, v: usize) -> &[u64] {
        &self.adj[v * self.words..(v + 1) * self.words]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u * self.words + v / WORD] >> (v % WORD) & 1 == 1
    }

    /// Adds `{u, v}`. Panics on a loop or an out-of-range vertex.
    pub fn set_edge(&mut self, u: usize, v: usize) {
        assert!(u != v && u < self.n && v < self.n, "bad edge ({u},{v})");
        self.adj[u * self.words + v / WORD] |= 1 << (v % WORD);
        self.adj[v * self.words + u / WORD] |= 1 << (u % WORD);
    }

    pub fn clear_edge(&mut self, u: usize, v: usize) {
        assert!(u < self.n && v < self.n);
        self.adj[u * self.words + v / WORD] &= !(1 << (v % WORD));
        self.adj[v * self.words + u / WORD] &= !(1 << (u % WORD));
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        (0..self.n).filter(|&u| self.has_edge(v, u)).collect()
    }

    /// Vertices adjacent to every other vertex.
    pub fn universal_vertices(&self) -> Vec<usize> {
        (0..self.n).filter(|&v| self.degree(v) + 1 == self.n).collect()
    }

    /// Disjoint union, `other` shifted after `self`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let mut g = Graph::empty(self.n + other.n);
        for (u, v) in self.edges() {
            g.set_edge(u, v);
        }
        for (u, v) in other.edges() {
            g.set_edge(self.n + u, self.n + v);
        }
        g
    }

    /// Subgraph induced by `keep`, relabelled in increasing order.
    pub fn induced(&self, keep: &[usize]) -> Graph {
        let mut g = Graph::empty(keep.len());
        for (i, &u) in keep.iter().enumerate() {
            for (j, &v) in keep.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.set_edge(i, j);
                }
            }
        }
        g
    }

    /// Graph with vertex `v` renamed `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let mut g = Graph::empty(self.n);
        for (u, v) in self.edges() {
            g.set_edge(perm[u], perm[v]);
        }
        g
    }

    fn check_invariants(&self) -> bool {
        (0..self.n).all(|u| !self.has_edge(u, u) && (0..self.n).all(|v| self.has_edge(u, v) == self.has_edge(v, u)))
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

/// Turán graph `T(m, k)`: complete `k`-partite on `m` vertices with parts as
/// equal as possible, larger parts first on contiguous index ranges.
///
/// `T(m, 0)` is the edgeless graph on `m` vertices.
pub fn make_turan(m: usize, k: usize) -> Graph {
    let parts = turan_part_sizes(m, k);
    let mut part_of = Vec::with_capacity(m);
    for (i, &size) in parts.iter().enumerate() {
        part_of.extend(std::iter::repeat(i).take(size));
    }
    let mut g = Graph::empty(m);
    if k == 0 {
        return g;
    }
    for u in 0..m {
        for v in u + 1..m {
            if part_of[u] != part_of[v] {
                g.set_edge(u, v);
            }
        }
    }
    debug_assert!(g.check_invariants());
    g
}

/// Part sizes of `T(m, k)`, largest first. Empty for `k = 0`; may contain
/// zero-sized parts when `k > m`.
pub fn turan_part_sizes(m: usize, k: usize) -> Vec<usize> {
    if k == 0 {
        return Vec::new();
    }
    let (q, rem) = (m / k, m % k);
    (0..k).map(|i| if i < rem { q + 1 } else { q }).collect()
}

/// Join `g + h`: disjoint union plus every edge between the two sides; `g`
/// keeps indices `0..g.order()`.
pub fn join(g: &Graph, h: &Graph) -> Graph {
    let mut out = g.disjoint_union(h);
    for u in 0..g.order() {
        for v in 0..h.order() {
            out.set_edge(u, g.order() + v);
        }
    }
    out
}
