//! `p`-uniform hypergraphs over at most 64 vertices, and the operations that
//! build new ones from old: join and partial blowup.

use std::fmt;
use std::hash::{Hash, Hasher};

use crate::bits::{self, binomial, bit, colex_rank, lex_cmp, Bits, MAX_VERTICES};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Anything that can answer link queries: for a `(p-1)`-set `face`, which
/// vertices complete it to an edge. Counting and packing code is written
/// against this so that it runs on both frozen hypergraphs and the oracle's
/// mutable scratch hosts.
pub trait Host {
    fn order(&self) -> usize;
    fn uniformity(&self) -> usize;
    fn link(&self, face: u64) -> u64;

    #[inline]
    fn has_edge(&self, edge: u64) -> bool {
        let v = edge.trailing_zeros() as usize;
        self.link(edge & !bit(v)) & bit(v) != 0
    }
}

/// Link table of a `p`-graph: one vertex mask per `(p-1)`-subset, indexed by
/// colex rank. For `p = 2` this is exactly the adjacency matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct LinkTable {
    n: usize,
    p: usize,
    links: Vec<u64>,
    edges: usize,
}

/// Upper bound on link table entries, about 32 MiB.
const MAX_LINK_ENTRIES: u64 = 1 << 22;

impl LinkTable {
    pub fn new(n: usize, p: usize) -> Result<Self> {
        if p < 2 {
            return Err(Error::Invalid(format!("uniformity {p} < 2")));
        }
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices { what: "hypergraph", got: n, max: MAX_VERTICES });
        }
        let entries = binomial(n, p - 1);
        if entries > MAX_LINK_ENTRIES {
            return Err(Error::Guard(format!("link table for n={n}, p={p} has {entries} entries")));
        }
        Ok(LinkTable { n, p, links: vec![0; entries as usize], edges: 0 })
    }

    /// Adds a `p`-set; returns false if it was already present.
    pub fn insert(&mut self, edge: u64) -> bool {
        debug_assert_eq!(bits::size(edge), self.p);
        if self.has_edge(edge) {
            return false;
        }
        for v in Bits(edge) {
            self.links[colex_rank(edge & !bit(v))] |= bit(v);
        }
        self.edges += 1;
        true
    }

    pub fn remove(&mut self, edge: u64) -> bool {
        if !self.has_edge(edge) {
            return false;
        }
        for v in Bits(edge) {
            self.links[colex_rank(edge & !bit(v))] &= !bit(v);
        }
        self.edges -= 1;
        true
    }

    pub fn edge_count(&self) -> usize {
        self.edges
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.edges);
        for face in bits::k_subsets(self.n, self.p - 1) {
            let top = 63 - face.leading_zeros() as usize;
            // each edge once, from the face that omits its largest vertex
            let extra = self.links[colex_rank(face)] & bits::above(top);
            for v in Bits(extra) {
                out.push(face | bit(v));
            }
        }
        out.sort_unstable_by(|a, b| lex_cmp(*a, *b));
        out
    }
}

impl Host for LinkTable {
    #[inline]
    fn order(&self) -> usize {
        self.n
    }

    #[inline]
    fn uniformity(&self) -> usize {
        self.p
    }

    #[inline]
    fn link(&self, face: u64) -> u64 {
        self.links[colex_rank(face)]
    }
}

/// A `p`-uniform hypergraph with edges stored as vertex masks in lexicographic
/// order.
#[derive(Clone)]
pub struct Hypergraph {
    edges: Vec<u64>,
    table: LinkTable,
}

impl Hypergraph {
    pub fn new(n: usize, p: usize, edges: impl IntoIterator<Item = u64>) -> Result<Self> {
        let mut table = LinkTable::new(n, p)?;
        let mut list = Vec::new();
        for e in edges {
            if bits::size(e) != p {
                return Err(Error::Invalid(format!("edge {:?} does not have {p} vertices", bits::to_vec(e))));
            }
            if e & !bits::low_mask(n) != 0 {
                return Err(Error::Invalid(format!("edge {:?} out of range for {n} vertices", bits::to_vec(e))));
            }
            if !table.insert(e) {
                return Err(Error::Invalid(format!("duplicate edge {:?}", bits::to_vec(e))));
            }
            list.push(e);
        }
        list.sort_unstable_by(|a, b| lex_cmp(*a, *b));
        Ok(Hypergraph { edges: list, table })
    }

    pub fn from_lists(n: usize, p: usize, edges: &[Vec<usize>]) -> Result<Self> {
        let mut masks = Vec::with_capacity(edges.len());
        for e in edges {
            if let Some(&v) = e.iter().find(|&&v| v >= n) {
                return Err(Error::Invalid(format!("vertex {v} out of range for {n} vertices")));
            }
            let m = bits::from_slice(e);
            if bits::size(m) != e.len() {
                return Err(Error::Invalid(format!("edge {e:?} repeats a vertex")));
            }
            masks.push(m);
        }
        Hypergraph::new(n, p, masks)
    }

    pub fn empty(n: usize, p: usize) -> Result<Self> {
        Hypergraph::new(n, p, [])
    }

    /// `K_n^p`.
    pub fn complete(n: usize, p: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices { what: "hypergraph", got: n, max: MAX_VERTICES });
        }
        Hypergraph::new(n, p, bits::k_subsets(n, p))
    }

    pub fn from_table(table: LinkTable) -> Self {
        Hypergraph { edges: table.edges(), table }
    }

    pub fn from_graph(g: &Graph) -> Result<Self> {
        if g.order() > MAX_VERTICES {
            return Err(Error::TooManyVertices { what: "graph", got: g.order(), max: MAX_VERTICES });
        }
        Hypergraph::new(g.order(), 2, g.edges().into_iter().map(|(u, v)| bit(u) | bit(v)))
    }

    pub fn to_graph(&self) -> Result<Graph> {
        if self.uniformity() != 2 {
            return Err(Error::UniformityMismatch { left: self.uniformity(), right: 2 });
        }
        let mut g = Graph::empty(self.order());
        for &e in &self.edges {
            let mut it = Bits(e);
            let (u, v) = (it.next().unwrap(), it.next().unwrap());
            g.set_edge(u, v);
        }
        Ok(g)
    }

    pub fn edges(&self) -> &[u64] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as sorted vertex lists.
    pub fn edge_lists(&self) -> Vec<Vec<usize>> {
        self.edges.iter().map(|&e| bits::to_vec(e)).collect()
    }

    pub fn table(&self) -> &LinkTable {
        &self.table
    }

    pub fn vertex_mask(&self) -> u64 {
        bits::low_mask(self.order())
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&e| e & bit(v) != 0).count()
    }

    /// Vertices lying in every `p`-set through them.
    pub fn universal_vertices(&self) -> Vec<usize> {
        let full = binomial(self.order().saturating_sub(1), self.uniformity() - 1) as usize;
        (0..self.order()).filter(|&v| self.degree(v) == full).collect()
    }

    /// Sub-hypergraph induced on `keep`, relabelled in increasing order.
    pub fn induced(&self, keep: u64) -> Hypergraph {
        let verts = bits::to_vec(keep & self.vertex_mask());
        let mut index = [usize::MAX; MAX_VERTICES];
        for (i, &v) in verts.iter().enumerate() {
            index[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&e| e & !keep == 0)
            .map(|&e| Bits(e).fold(0u64, |m, v| m | bit(index[v])));
        Hypergraph::new(verts.len(), self.uniformity(), edges).expect("induced sub-hypergraph is valid")
    }

    /// Hypergraph with vertex `v` renamed `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Hypergraph {
        assert_eq!(perm.len(), self.order());
        let edges = self.edges.iter().map(|&e| Bits(e).fold(0u64, |m, v| m | bit(perm[v])));
        Hypergraph::new(self.order(), self.uniformity(), edges).expect("permutation preserves validity")
    }

    /// Same edges on `n` vertices, `n >= order()`.
    pub fn with_order(&self, n: usize) -> Result<Hypergraph> {
        if n < self.order() {
            return Err(Error::Invalid(format!("cannot shrink {} vertices to {n}", self.order())));
        }
        Hypergraph::new(n, self.uniformity(), self.edges.iter().copied())
    }

    /// Disjoint union, `other` shifted after `self`.
    pub fn disjoint_union(&self, other: &Hypergraph) -> Result<Hypergraph> {
        check_uniformity(self, other)?;
        let shift = self.order();
        let n = shift + other.order();
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices { what: "union", got: n, max: MAX_VERTICES });
        }
        let edges = self.edges.iter().copied().chain(other.edges.iter().map(|&e| e << shift));
        Hypergraph::new(n, self.uniformity(), edges)
    }
}

impl Host for Hypergraph {
    #[inline]
    fn order(&self) -> usize {
        self.table.n
    }

    #[inline]
    fn uniformity(&self) -> usize {
        self.table.p
    }

    #[inline]
    fn link(&self, face: u64) -> u64 {
        self.table.link(face)
    }
}

impl PartialEq for Hypergraph {
    fn eq(&self, other: &Self) -> bool {
        self.order() == other.order() && self.uniformity() == other.uniformity() && self.edges == other.edges
    }
}

impl Eq for Hypergraph {}

impl Hash for Hypergraph {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.order().hash(state);
        self.uniformity().hash(state);
        self.edges.hash(state);
    }
}

impl fmt::Debug for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Hypergraph(n={}, p={}, edges={:?})", self.order(), self.uniformity(), self.edge_lists())
    }
}

fn check_uniformity(a: &Hypergraph, b: &Hypergraph) -> Result<()> {
    if a.uniformity() != b.uniformity() {
        return Err(Error::UniformityMismatch { left: a.uniformity(), right: b.uniformity() });
    }
    Ok(())
}

/// Hypergraph join: both sides plus every `p`-set meeting both of them.
pub fn hyper_join(h: &Hypergraph, h2: &Hypergraph) -> Result<Hypergraph> {
    check_uniformity(h, h2)?;
    let n = h.order() + h2.order();
    if n > MAX_VERTICES {
        return Err(Error::TooManyVertices { what: "join", got: n, max: MAX_VERTICES });
    }
    let left = h.vertex_mask();
    let right = bits::low_mask(n) & !left;
    let crossing = bits::k_subsets(n, h.uniformity()).into_iter().filter(|&s| s & left != 0 && s & right != 0);
    let edges = h.edges.iter().copied().chain(h2.edges.iter().map(|&e| e << h.order())).chain(crossing);
    Hypergraph::new(n, h.uniformity(), edges)
}

/// Where a partial blowup puts each original vertex: non-blown vertices keep
/// their relative order first, then the `m` copies of each blown vertex in
/// consecutive blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlowupLayout {
    /// For each original vertex, the mask of its images.
    pub images: Vec<u64>,
    pub order: usize,
}

impl BlowupLayout {
    pub fn new(n: usize, blown: u64, m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::Invalid("blowup multiplicity must be at least 1".into()));
        }
        if blown & !bits::low_mask(n) != 0 {
            return Err(Error::Invalid(format!("blown set {:?} not inside the vertex set", bits::to_vec(blown))));
        }
        let order = n + (m - 1) * bits::size(blown);
        if order > MAX_VERTICES {
            return Err(Error::TooManyVertices { what: "blowup", got: order, max: MAX_VERTICES });
        }
        let kept = n - bits::size(blown);
        let mut images = vec![0u64; n];
        let mut next_kept = 0;
        let mut next_block = kept;
        for (v, image) in images.iter_mut().enumerate() {
            if blown & bit(v) == 0 {
                *image = bit(next_kept);
                next_kept += 1;
            } else {
                *image = bits::low_mask(m) << next_block;
                next_block += m;
            }
        }
        Ok(BlowupLayout { images, order })
    }
}

/// Partial `(m, U)`-blowup: every vertex of `blown` becomes `m` copies and an
/// edge meeting `blown` in `q` vertices becomes the `m^q` edges choosing one
/// copy of each.
pub fn partial_blowup(h: &Hypergraph, blown: u64, m: usize) -> Result<Hypergraph> {
    let layout = BlowupLayout::new(h.order(), blown, m)?;
    let mut edges = Vec::new();
    for &e in h.edges() {
        let fixed = Bits(e & !blown).fold(0u64, |acc, v| acc | layout.images[v]);
        let mut partial = vec![fixed];
        for v in Bits(e & blown) {
            partial = partial
                .iter()
                .flat_map(|&base| Bits(layout.images[v]).map(move |c| base | bit(c)))
                .collect();
        }
        edges.extend(partial);
    }
    Hypergraph::new(layout.order, h.uniformity(), edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{join, make_turan};

    fn edges_of(h: &Hypergraph) -> Vec<Vec<usize>> {
        h.edge_lists()
    }

    #[test]
    fn construction_validates() {
        assert!(Hypergraph::new(3, 3, [0b111, 0b111]).is_err());
        assert!(Hypergraph::new(3, 3, [0b1011]).is_err());
        assert!(Hypergraph::new(4, 3, [0b11]).is_err());
        assert!(Hypergraph::new(65, 2, []).is_err());
        assert!(Hypergraph::new(4, 1, []).is_err());
        let h = Hypergraph::new(4, 2, [0b1001, 0b0110, 0b0011]).unwrap();
        assert_eq!(edges_of(&h), vec![vec![0, 1], vec![0, 3], vec![1, 2]]);
    }

    #[test]
    fn link_table_round_trip() {
        let h = Hypergraph::complete(7, 3).unwrap();
        assert_eq!(h.table().edges(), h.edges());
        let mut t = LinkTable::new(6, 4).unwrap();
        assert!(t.insert(0b1111));
        assert!(!t.insert(0b1111));
        assert!(t.has_edge(0b1111));
        assert!(!t.has_edge(0b10111));
        assert!(t.remove(0b1111));
        assert_eq!(t.edge_count(), 0);
    }

    #[test]
    fn graph_round_trip() {
        let g = make_turan(9, 3);
        let h = Hypergraph::from_graph(&g).unwrap();
        assert_eq!(h.edge_count(), 27);
        assert_eq!(h.to_graph().unwrap(), g);
        assert!(Hypergraph::complete(4, 3).unwrap().to_graph().is_err());
    }

    #[test]
    fn hyper_join_examples() {
        let k1 = Hypergraph::empty(1, 3).unwrap();
        let k3 = Hypergraph::complete(3, 3).unwrap();
        assert_eq!(hyper_join(&k1, &k3).unwrap(), Hypergraph::complete(4, 3).unwrap());

        let h = Hypergraph::complete(5, 3).unwrap();
        let nothing = Hypergraph::empty(0, 3).unwrap();
        assert_eq!(hyper_join(&h, &nothing).unwrap(), h);

        let two = Hypergraph::empty(2, 3).unwrap();
        let j = hyper_join(&k1, &two).unwrap();
        assert_eq!(edges_of(&j), vec![vec![0, 1, 2]]);

        assert!(matches!(
            hyper_join(&k1, &Hypergraph::empty(2, 2).unwrap()),
            Err(Error::UniformityMismatch { .. })
        ));
    }

    #[test]
    fn hyper_join_agrees_with_graph_join() {
        let a = make_turan(4, 2);
        let b = Graph::cycle(5);
        let via_graph = Hypergraph::from_graph(&join(&a, &b)).unwrap();
        let via_hyper =
            hyper_join(&Hypergraph::from_graph(&a).unwrap(), &Hypergraph::from_graph(&b).unwrap()).unwrap();
        assert_eq!(via_graph, via_hyper);
    }

    #[test]
    fn blowup_examples() {
        let k3 = Hypergraph::complete(3, 2).unwrap();
        assert_eq!(partial_blowup(&k3, 0, 3).unwrap(), k3);

        let k2 = Hypergraph::complete(2, 2).unwrap();
        let b = partial_blowup(&k2, 0b11, 2).unwrap();
        assert_eq!(b.order(), 4);
        assert_eq!(edges_of(&b), vec![vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3]]);

        // vertex 2 is kept and becomes index 0; copies of 0 are {1,2}, of 1 are {3,4}
        let b = partial_blowup(&k3, 0b011, 2).unwrap();
        assert_eq!(b.order(), 5);
        assert_eq!(b.edge_count(), 8);
        assert_eq!(b.degree(0), 4);
        assert!(!b.has_edge(0b00110));
        assert!(!b.has_edge(0b11000));
    }

    #[test]
    fn blowup_with_multiplicity_one_is_a_relabelling() {
        let h = Hypergraph::new(5, 3, [0b00111, 0b01101, 0b11010]).unwrap();
        let u = 0b01010;
        let b = partial_blowup(&h, u, 1).unwrap();
        let layout = BlowupLayout::new(5, u, 1).unwrap();
        let perm: Vec<usize> = layout.images.iter().map(|m| m.trailing_zeros() as usize).collect();
        assert_eq!(b, h.permuted(&perm));
    }

    #[test]
    fn blowup_guards() {
        let k2 = Hypergraph::complete(2, 2).unwrap();
        assert!(partial_blowup(&k2, 0b100, 2).is_err());
        assert!(partial_blowup(&k2, 0b1, 0).is_err());
        assert!(partial_blowup(&k2, 0b11, 40).is_err());
    }

    #[test]
    fn induced_and_universal() {
        let h = hyper_join(&Hypergraph::complete(1, 3).unwrap(), &Hypergraph::empty(4, 3).unwrap()).unwrap();
        assert_eq!(h.universal_vertices(), vec![0]);
        let sub = h.induced(0b11110);
        assert_eq!(sub.edge_count(), 0);
        assert_eq!(sub.order(), 4);
    }
}
