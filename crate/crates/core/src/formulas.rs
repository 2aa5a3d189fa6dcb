//! Closed-form values and the extremal constructions for `ex(n, K_s^p, tK_r^p)`,
//! plus the deletion-class expansion `x(G) = Σ α_i 𝒩(H_i, G)`.

use crate::bits::{self, binomial_u64, bit, Bits};
use crate::canon;
use crate::counting::{self, MAX_PATTERN_VERTICES};
use crate::error::{Error, Result};
use crate::graph::turan_part_sizes;
use crate::hypergraph::{hyper_join, Host, Hypergraph};
use crate::{make_turan, Graph};

/// The parameters `(n, s, r, t, p)` of `ex(n, K_s^p, tK_r^p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ProblemParams {
    pub n: usize,
    pub s: usize,
    pub r: usize,
    pub t: usize,
    pub p: usize,
}

impl ProblemParams {
    pub fn new(n: usize, s: usize, r: usize, t: usize, p: usize) -> Result<Self> {
        let params = ProblemParams { n, s, r, t, p };
        params.validate()?;
        Ok(params)
    }

    /// Graph case, `p = 2`.
    pub fn graph(n: usize, s: usize, r: usize, t: usize) -> Result<Self> {
        Self::new(n, s, r, t, 2)
    }

    pub fn validate(&self) -> Result<()> {
        let ProblemParams { s, r, t, p, .. } = *self;
        if p < 2 {
            return Err(Error::Invalid(format!("uniformity p = {p} must be at least 2")));
        }
        if r < p {
            return Err(Error::Invalid(format!("clique order r = {r} below uniformity p = {p}")));
        }
        if s < p {
            return Err(Error::Invalid(format!("clique order s = {s} below uniformity p = {p}")));
        }
        if t < 1 {
            return Err(Error::Invalid("t must be at least 1".into()));
        }
        Ok(())
    }
}

/// `⌈(tr − s)/(t − 1)⌉ − 1`, for `t ≥ 2` and `r ≤ s < tr`.
pub fn x_exponent(s: usize, r: usize, t: usize) -> Result<usize> {
    if t < 2 {
        return Err(Error::Precondition(format!("x is undefined for t = {t}; it divides by t - 1")));
    }
    if s < r {
        return Err(Error::Precondition(format!("x needs s >= r (s = {s}, r = {r})")));
    }
    if s >= t * r {
        return Err(Error::Precondition(format!("s = {s} >= tr = {}: every K_s contains tK_r", t * r)));
    }
    Ok((t * r - s).div_ceil(t - 1) - 1)
}

/// Exponent used by the construction: `x_exponent` where defined, and `r − 1`
/// when `s < r` (the apex then has `t − 1` vertices, the Moon-type graph).
fn construction_exponent(s: usize, r: usize, t: usize) -> Result<usize> {
    if s < r && t >= 2 {
        return Ok(r - 1);
    }
    x_exponent(s, r, t)
}

/// The tail of a construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tail {
    /// `T(m, x)`; for `p ≥ 3` only the edgeless case `x = 0` is available.
    Turan { m: usize, x: usize },
    Supplied(Hypergraph),
}

/// `K_apex^p + tail`. When `x = 0` the tail is a set of isolated vertices
/// that is *not* joined to the apex: no clique may use a tail vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructionSpec {
    pub p: usize,
    pub x: usize,
    pub apex: usize,
    pub tail: Tail,
}

impl ConstructionSpec {
    pub fn tail_order(&self) -> usize {
        match &self.tail {
            Tail::Turan { m, .. } => *m,
            Tail::Supplied(h) => h.order(),
        }
    }

    pub fn order(&self) -> usize {
        self.apex + self.tail_order()
    }

    pub fn realize(&self) -> Result<Hypergraph> {
        let apex = Hypergraph::complete(self.apex, self.p)?;
        let tail = match &self.tail {
            Tail::Turan { m, x } if self.p == 2 => Hypergraph::from_graph(&make_turan(*m, *x))?,
            Tail::Turan { m, x: 0 } => Hypergraph::empty(*m, self.p)?,
            Tail::Turan { .. } => {
                return Err(Error::Invalid(format!("no Turán tail for p = {} beyond the edgeless one", self.p)))
            }
            Tail::Supplied(h) => h.clone(),
        };
        if self.x == 0 {
            apex.disjoint_union(&tail)
        } else {
            hyper_join(&apex, &tail)
        }
    }
}

/// Callback `(m, x, p)` producing a `K_{x+1}^p`-free tail on `m` vertices.
pub type TailSupplier<'a> = &'a dyn Fn(usize, usize, usize) -> Result<Hypergraph>;

/// Declarative form of the extremal construction `K_{t(r−x)−1}^p + 𝒯`.
pub fn construction_spec(params: &ProblemParams, supplier: Option<TailSupplier>) -> Result<ConstructionSpec> {
    params.validate()?;
    let ProblemParams { n, s, r, t, p } = *params;
    let x = construction_exponent(s, r, t)?;
    let apex = t * (r - x) - 1;
    if n < apex {
        return Err(Error::Precondition(format!("n = {n} is below the apex size t(r - x) - 1 = {apex}")));
    }
    let m = n - apex;
    if p == 2 || x == 0 {
        return Ok(ConstructionSpec { p, x, apex, tail: Tail::Turan { m, x } });
    }
    let supplier = supplier.ok_or_else(|| Error::Precondition(format!("p = {p} needs a tail supplier")))?;
    let tail = supplier(m, x, p)?;
    if tail.order() != m || tail.uniformity() != p {
        return Err(Error::Invalid(format!(
            "supplied tail has n = {}, p = {}; expected n = {m}, p = {p}",
            tail.order(),
            tail.uniformity()
        )));
    }
    if counting::count_cliques(&tail, x + 1) != 0 {
        return Err(Error::Invalid(format!("supplied tail contains K_{}^{p}", x + 1)));
    }
    Ok(ConstructionSpec { p, x, apex, tail: Tail::Supplied(tail) })
}

/// `K_{t(r−x)−1}^p + 𝒯` on `n` vertices.
pub fn extremal_construction(params: &ProblemParams, supplier: Option<TailSupplier>) -> Result<Hypergraph> {
    construction_spec(params, supplier)?.realize()
}

/// Elementary symmetric polynomial `e_j` of `sizes`, i.e. the number of
/// `K_j` in the complete multipartite graph with these parts.
fn elementary_symmetric(sizes: &[usize], j: usize) -> Option<u64> {
    let mut e = vec![0u64; j + 1];
    e[0] = 1;
    for &a in sizes {
        for k in (1..=j).rev() {
            e[k] = e[k].checked_add(e[k - 1].checked_mul(a as u64)?)?;
        }
    }
    Some(e[j])
}

/// `𝒩(K_j, T(m, k))` from part sizes.
pub fn turan_clique_count(m: usize, k: usize, j: usize) -> Result<u64> {
    elementary_symmetric(&turan_part_sizes(m, k), j).ok_or(Error::Overflow("Turán clique count"))
}

/// The value `𝒩(K_s, K_{t(r−x)−1} + T(n − t(r−x) + 1, x))`, made total:
/// `s ≥ tr` gives 0, `t = 1` gives Zykov's `𝒩(K_s, T(n, r − 1))`, and
/// `n` below the apex size gives `C(n, s)` (then `K_n` itself is
/// `tK_r`-free).
pub fn ex_closed_value(params: &ProblemParams) -> Result<u64> {
    params.validate()?;
    let ProblemParams { n, s, r, t, p } = *params;
    if p != 2 {
        return Err(Error::Precondition(format!("the closed form is for graphs, got p = {p}")));
    }
    if s >= t * r {
        return Ok(0);
    }
    if t == 1 {
        return turan_clique_count(n, r - 1, s);
    }
    let x = construction_exponent(s, r, t)?;
    let apex = t * (r - x) - 1;
    if n < apex {
        return binomial_u64(n as u64, s as u64).ok_or(Error::Overflow("binomial"));
    }
    let sizes = turan_part_sizes(n - apex, x);
    let mut total = 0u64;
    for j in 0..=s {
        let c = binomial_u64(apex as u64, (s - j) as u64).ok_or(Error::Overflow("binomial"))?;
        if c == 0 {
            continue;
        }
        let e = elementary_symmetric(&sizes, j).ok_or(Error::Overflow("Turán clique count"))?;
        total = c.checked_mul(e).and_then(|v| total.checked_add(v)).ok_or(Error::Overflow("closed value"))?;
    }
    Ok(total)
}

/// `C(tr − 1, s)`, the value for `s > t(r − 1)` and `n ≥ tr − 1`.
pub fn lemma_hgt_value(s: usize, r: usize, t: usize) -> Result<u64> {
    if t < 1 || r < 1 || s <= t * (r - 1) {
        return Err(Error::Precondition(format!("needs s > t(r - 1); got s = {s}, r = {r}, t = {t}")));
    }
    binomial_u64((t * r - 1) as u64, s as u64).ok_or(Error::Overflow("binomial"))
}

/// One deletion class: `graph ≅ H − D` for `deletions` distinct sets `D`
/// with `|D| = removed`, and `alpha` copies of `H` in `K_{t−1} + graph`
/// that contain all vertices and edges of `graph`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaEntry {
    pub graph: Hypergraph,
    pub removed: usize,
    pub deletions: usize,
    pub alpha: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaTable {
    pub t: usize,
    pub entries: Vec<AlphaEntry>,
}

/// Groups `H − D` over all `D` with `|D| ≤ t − 1` by isomorphism type and
/// computes each class's `α`. Then `Σ α_i 𝒩(H_i, G) = 𝒩(H, K_{t−1} + G)`.
pub fn alpha_coefficients(h: &Hypergraph, t: usize) -> Result<AlphaTable> {
    if t < 2 {
        return Err(Error::Precondition(format!("deletion classes need t >= 2, got {t}")));
    }
    let k = h.order();
    if k > MAX_PATTERN_VERTICES {
        return Err(Error::PatternTooLarge { got: k, max: MAX_PATTERN_VERTICES });
    }
    let all = bits::low_mask(k);
    let aut = counting::automorphism_count(h)?;
    let mut entries: Vec<(canon::CanonCode, AlphaEntry)> = Vec::new();
    for removed in 0..=(t - 1).min(k) {
        for d in bits::subsets_of_size(all, removed) {
            let sub = h.induced(all & !d);
            let code = canon::canonical_code(&sub)?;
            if let Some((_, e)) = entries.iter_mut().find(|(c, e)| *c == code && e.removed == removed) {
                e.deletions += 1;
                continue;
            }
            let alpha = anchored_copies(h, &sub, t - 1, aut)?;
            entries.push((code, AlphaEntry { graph: canon::canonical_form(&sub)?, removed, deletions: 1, alpha }));
        }
    }
    Ok(AlphaTable { t, entries: entries.into_iter().map(|(_, e)| e).collect() })
}

/// Copies of `h` in `K_apex + sub` containing every vertex and edge of `sub`.
fn anchored_copies(h: &Hypergraph, sub: &Hypergraph, apex: usize, aut: u64) -> Result<u64> {
    let extra = h.order() - sub.order();
    if extra > apex {
        return Ok(0);
    }
    // the copy uses `extra` apex vertices; all choices are symmetric
    let host = hyper_join(&Hypergraph::complete(extra, h.uniformity())?, sub)?;
    let required: Vec<u64> = sub.edges().iter().map(|&e| e << extra).collect();
    let mut image = vec![0usize; h.order()];
    let maps = bijections(h, &host, &required, 0, 0, &mut image);
    let ways = bits::binomial_u64(apex as u64, extra as u64).ok_or(Error::Overflow("binomial"))?;
    (maps / aut).checked_mul(ways).ok_or(Error::Overflow("alpha"))
}

/// Edge-preserving bijections `V(h) → V(host)` whose edge image covers
/// `required`.
fn bijections(h: &Hypergraph, host: &Hypergraph, required: &[u64], v: usize, used: u64, image: &mut [usize]) -> u64 {
    if v == h.order() {
        let covered = |e: &u64| h.edges().iter().any(|&f| Bits(f).fold(0u64, |m, u| m | bit(image[u])) == *e);
        return required.iter().all(covered) as u64;
    }
    let mut total = 0;
    for w in Bits(bits::low_mask(host.order()) & !used) {
        image[v] = w;
        let ok = h
            .edges()
            .iter()
            .filter(|&&e| e & bits::above(v) == 0 && e & bit(v) != 0)
            .all(|&e| host.has_edge(Bits(e).fold(0u64, |m, u| m | bit(image[u]))));
        if ok {
            total += bijections(h, host, required, v + 1, used | bit(w), image);
        }
    }
    total
}

/// `x(G) = Σ α_i 𝒩(H_i, G)`.
pub fn reduced_objective(table: &AlphaTable, g: &Hypergraph) -> Result<u64> {
    let mut total = 0u64;
    for e in &table.entries {
        let copies = counting::count_copies(&e.graph, g)?;
        total = e.alpha.checked_mul(copies).and_then(|v| total.checked_add(v)).ok_or(Error::Overflow("x(G)"))?;
    }
    Ok(total)
}

/// [`reduced_objective`] on a graph.
pub fn reduced_objective_graph(table: &AlphaTable, g: &Graph) -> Result<u64> {
    reduced_objective(table, &Hypergraph::from_graph(g)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::join;

    fn hg(g: &Graph) -> Hypergraph {
        Hypergraph::from_graph(g).unwrap()
    }

    #[test]
    fn exponent_examples() {
        assert_eq!(x_exponent(3, 3, 2).unwrap(), 2);
        for r in 2..6 {
            for t in 2..5 {
                assert_eq!(x_exponent(r, r, t).unwrap(), r - 1);
                assert_eq!(x_exponent(t * r - 1, r, t).unwrap(), 0);
            }
        }
        assert!(x_exponent(3, 3, 1).is_err());
        assert!(x_exponent(6, 3, 2).is_err());
        assert!(x_exponent(2, 3, 2).is_err());
    }

    #[test]
    fn construction_examples() {
        let g = extremal_construction(&ProblemParams::graph(10, 3, 3, 2).unwrap(), None).unwrap();
        assert_eq!(g, hg(&join(&Graph::complete(1), &make_turan(9, 2))));
        let g = extremal_construction(&ProblemParams::graph(9, 2, 2, 3).unwrap(), None).unwrap();
        assert_eq!(g, hg(&join(&Graph::complete(2), &Graph::empty(7))));
        let g = extremal_construction(&ProblemParams::graph(9, 5, 3, 2).unwrap(), None).unwrap();
        assert_eq!(g, hg(&Graph::complete(5).disjoint_union(&Graph::empty(4))));
        assert!(extremal_construction(&ProblemParams::graph(4, 5, 3, 2).unwrap(), None).is_err());
        assert!(extremal_construction(&ProblemParams::new(8, 4, 4, 2, 3).unwrap(), None).is_err());
    }

    #[test]
    fn closed_value_examples() {
        assert_eq!(ex_closed_value(&ProblemParams::graph(7, 3, 3, 2).unwrap()).unwrap(), 9);
        assert_eq!(ex_closed_value(&ProblemParams::graph(10, 6, 3, 2).unwrap()).unwrap(), 0);
        assert_eq!(ex_closed_value(&ProblemParams::graph(6, 3, 4, 1).unwrap()).unwrap(), 8);
        // n below the apex: K_n itself is 2K_3-free
        assert_eq!(ex_closed_value(&ProblemParams::graph(4, 5, 3, 2).unwrap()).unwrap(), 0);
        assert_eq!(ex_closed_value(&ProblemParams::graph(4, 4, 3, 2).unwrap()).unwrap(), 1);
        assert!(ex_closed_value(&ProblemParams::new(7, 3, 3, 2, 3).unwrap()).is_err());
    }

    #[test]
    fn lemma_values() {
        assert_eq!(lemma_hgt_value(3, 2, 2).unwrap(), 1);
        assert_eq!(lemma_hgt_value(5, 3, 2).unwrap(), 1);
        assert_eq!(lemma_hgt_value(7, 3, 3).unwrap(), 8);
        assert!(lemma_hgt_value(4, 3, 2).is_err());
    }

    fn entry_alphas(table: &AlphaTable) -> Vec<(usize, usize, u64)> {
        table.entries.iter().map(|e| (e.graph.order(), e.graph.edge_count(), e.alpha)).collect()
    }

    #[test]
    fn alpha_examples() {
        let k2 = hg(&Graph::complete(2));
        assert_eq!(entry_alphas(&alpha_coefficients(&k2, 2).unwrap()), vec![(2, 1, 1), (1, 0, 1)]);
        let k3 = hg(&Graph::complete(3));
        assert_eq!(entry_alphas(&alpha_coefficients(&k3, 2).unwrap()), vec![(3, 3, 1), (2, 1, 1)]);
        // 2K_1: the copy through a fixed vertex of K_2 is that K_2 minus its
        // edge, and there is exactly one
        let e2 = hg(&Graph::empty(2));
        let table = alpha_coefficients(&e2, 2).unwrap();
        assert_eq!(entry_alphas(&table), vec![(2, 0, 1), (1, 0, 1)]);
        assert_eq!(table.entries[1].deletions, 2);
    }

    #[test]
    fn reduced_objective_examples() {
        let table = alpha_coefficients(&hg(&Graph::complete(2)), 2).unwrap();
        for n in 2..12 {
            let g = make_turan(n - 1, 2);
            let value = reduced_objective_graph(&table, &g).unwrap();
            assert_eq!(value as usize, g.edge_count() + g.order());
            assert_eq!(value as usize, join(&Graph::complete(1), &g).edge_count());
        }
        let p3 = hg(&Graph::path(3));
        let table = alpha_coefficients(&p3, 3).unwrap();
        let value = reduced_objective_graph(&table, &Graph::empty(4)).unwrap();
        assert_eq!(value, 24);
        let host = hg(&join(&Graph::complete(2), &Graph::empty(4)));
        assert_eq!(counting::count_copies(&p3, &host).unwrap(), value);
    }
}
