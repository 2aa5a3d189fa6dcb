//! The growth exponent `b(H)`: the largest `U ⊆ V(H)` whose partial
//! `(t, U)`-blowup stays `tK_r^p`-free.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::bits;
use crate::canon::twin_classes;
use crate::counting::{self, MAX_PATTERN_VERTICES};
use crate::error::{Error, Result};
use crate::hypergraph::{partial_blowup, Host, Hypergraph};

/// A `(b+1)`-set together with a packing in its blowup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockedSet {
    pub set: u64,
    pub packing: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlowupCertificate {
    /// Lexicographically smallest maximum free set.
    pub u: u64,
    pub multiplicity: usize,
    /// One entry per set of size `b + 1`, in lexicographic order.
    pub blocked: Vec<BlockedSet>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BParameter {
    /// `-1` when the pattern itself contains `tK_r^p`.
    pub b: i64,
    /// The pattern already contains `tK_r^p`, so no host has a copy.
    pub saturated: bool,
    pub certificate: Option<BlowupCertificate>,
}

/// `b(H, t, r)` using blowups of multiplicity `t`.
pub fn b_parameter(h: &Hypergraph, t: usize, r: usize) -> Result<BParameter> {
    b_parameter_with(h, t, r, t)
}

/// `b(H, t, r)` with an explicit blowup multiplicity `m`.
pub fn b_parameter_with(h: &Hypergraph, t: usize, r: usize, m: usize) -> Result<BParameter> {
    if t < 1 {
        return Err(Error::Precondition("t must be at least 1".into()));
    }
    if r < h.uniformity() {
        return Err(Error::Precondition(format!("r = {r} below the uniformity {}", h.uniformity())));
    }
    if h.order() > MAX_PATTERN_VERTICES {
        return Err(Error::PatternTooLarge { got: h.order(), max: MAX_PATTERN_VERTICES });
    }
    if counting::contains_disjoint_cliques(h, t, r) {
        return Ok(BParameter { b: -1, saturated: true, certificate: None });
    }
    let k = h.order();
    let all = bits::low_mask(k);
    // swapping twins of H maps one blowup onto another, so freeness depends
    // only on how many vertices of each twin class are blown
    let classes = twin_reps(h);
    let key = |u: u64| -> Vec<usize> { classes.iter().map(|&c| bits::size(u & c)).collect() };
    let mut memo: HashMap<Vec<usize>, bool> = HashMap::new();
    for size in (0..=k).rev() {
        let sets = bits::subsets_of_size(all, size);
        let mut fresh: Vec<(Vec<usize>, u64)> = Vec::new();
        for &u in &sets {
            let kk = key(u);
            if !memo.contains_key(&kk) && !fresh.iter().any(|(f, _)| *f == kk) {
                fresh.push((kk, u));
            }
        }
        let results: Vec<Result<bool>> = fresh.par_iter().map(|(_, u)| blowup_is_free(h, *u, t, r, m)).collect();
        for ((kk, _), free) in fresh.into_iter().zip(results) {
            memo.insert(kk, free?);
        }
        if let Some(&u) = sets.iter().find(|&&u| memo[&key(u)]) {
            let blocked = if size == k { Vec::new() } else { blocked_sets(h, all, size + 1, t, r, m)? };
            let certificate = BlowupCertificate { u, multiplicity: m, blocked };
            return Ok(BParameter { b: size as i64, saturated: false, certificate: Some(certificate) });
        }
    }
    unreachable!("the empty set is free once the pattern is")
}

fn twin_reps(h: &Hypergraph) -> Vec<u64> {
    let mut classes = twin_classes(h);
    classes.sort_unstable();
    classes.dedup();
    classes
}

fn blowup_is_free(h: &Hypergraph, u: u64, t: usize, r: usize, m: usize) -> Result<bool> {
    Ok(!counting::contains_disjoint_cliques(&partial_blowup(h, u, m)?, t, r))
}

fn blocked_sets(h: &Hypergraph, all: u64, size: usize, t: usize, r: usize, m: usize) -> Result<Vec<BlockedSet>> {
    bits::subsets_of_size(all, size)
        .into_par_iter()
        .map(|w| {
            let packing = counting::find_disjoint_cliques(&partial_blowup(h, w, m)?, t, r)
                .ok_or_else(|| Error::Invalid(format!("blowup at {:?} unexpectedly free", bits::to_vec(w))))?;
            Ok(BlockedSet { set: w, packing })
        })
        .collect()
}

/// Independent check of a certificate: the blowup at `U` is free, and every
/// listed packing is `t` disjoint cliques of the blowup at its set.
pub fn verify_certificate(h: &Hypergraph, t: usize, r: usize, result: &BParameter) -> Result<bool> {
    let Some(cert) = &result.certificate else {
        return Ok(result.saturated && counting::contains_disjoint_cliques(h, t, r));
    };
    let b = result.b as usize;
    if bits::size(cert.u) != b || !blowup_is_free(h, cert.u, t, r, cert.multiplicity)? {
        return Ok(false);
    }
    let expected = if b == h.order() { 0 } else { bits::binomial(h.order(), b + 1) as usize };
    if cert.blocked.len() != expected {
        return Ok(false);
    }
    for entry in &cert.blocked {
        if bits::size(entry.set) != b + 1 || entry.packing.len() != t {
            return Ok(false);
        }
        let blown = partial_blowup(h, entry.set, cert.multiplicity)?;
        let mut used = 0u64;
        for &c in &entry.packing {
            let is_clique = bits::size(c) == r
                && bits::subsets_of_size(c, blown.uniformity()).into_iter().all(|e| blown.has_edge(e));
            if !is_clique || c & used != 0 {
                return Ok(false);
            }
            used |= c;
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formulas::x_exponent;
    use crate::Graph;

    fn hg(g: &Graph) -> Hypergraph {
        Hypergraph::from_graph(g).unwrap()
    }

    #[test]
    fn triangle_with_two_disjoint_triangles() {
        let res = b_parameter(&hg(&Graph::complete(3)), 2, 3).unwrap();
        assert_eq!(res.b, 2);
        let cert = res.certificate.as_ref().unwrap();
        assert_eq!(cert.u, 0b011);
        assert_eq!(cert.blocked.len(), 1);
        assert!(verify_certificate(&hg(&Graph::complete(3)), 2, 3, &res).unwrap());
    }

    #[test]
    fn edgeless_patterns_blow_up_fully() {
        for k in 1..6 {
            let res = b_parameter(&hg(&Graph::empty(k)), 2, 3).unwrap();
            assert_eq!(res.b, k as i64);
            assert!(res.certificate.unwrap().blocked.is_empty());
        }
    }

    #[test]
    fn cliques_match_the_exponent() {
        for (s, r, t) in [(3, 3, 2), (4, 3, 2), (5, 3, 2), (4, 4, 2), (3, 3, 3)] {
            let res = b_parameter(&hg(&Graph::complete(s)), t, r).unwrap();
            assert_eq!(res.b, x_exponent(s, r, t).unwrap() as i64, "s={s} r={r} t={t}");
        }
    }

    #[test]
    fn saturated_pattern() {
        let res = b_parameter(&hg(&Graph::complete(6)), 2, 3).unwrap();
        assert!(res.saturated);
        assert_eq!(res.b, -1);
        assert!(verify_certificate(&hg(&Graph::complete(6)), 2, 3, &res).unwrap());
    }
}
