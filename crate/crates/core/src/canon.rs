//! Canonical forms for small hypergraphs.
//!
//! A labelled hypergraph on `n` vertices is encoded as a bit string with one
//! bit per `p`-subset (indexed by colex rank). The canonical code is the
//! smallest encoding over all relabellings that respect an
//! isomorphism-invariant colour refinement; twins are interchangeable, so
//! only one arrangement per twin class is tried.

use crate::bits::{self, bit, colex_rank, Bits};
use crate::error::{Error, Result};
use crate::hypergraph::{Host, Hypergraph};

pub type CanonCode = u128;

/// Largest number of `p`-subsets a code can hold.
pub const MAX_CODE_BITS: u64 = 128;

/// Equivalence classes of the twin relation: `u ~ v` when swapping `u` and `v`
/// is an automorphism. Entry `v` is the mask of `v`'s class.
pub fn twin_classes<H: Host + ?Sized>(h: &H) -> Vec<u64> {
    let n = h.order();
    let p = h.uniformity();
    let all = bits::low_mask(n);
    let twins = |u: usize, v: usize| -> bool {
        if p == 2 {
            let du = h.link(bit(u)) & !(bit(u) | bit(v));
            let dv = h.link(bit(v)) & !(bit(u) | bit(v));
            du == dv
        } else {
            bits::subsets_of_size(all & !(bit(u) | bit(v)), p - 1).into_iter().all(|f| {
                let l = h.link(f);
                (l >> u & 1) == (l >> v & 1)
            })
        }
    };
    let mut reps: Vec<usize> = Vec::new();
    let mut class_of = vec![0usize; n];
    let mut masks: Vec<u64> = Vec::new();
    for v in 0..n {
        match reps.iter().position(|&r| twins(r, v)) {
            Some(c) => {
                class_of[v] = c;
                masks[c] |= bit(v);
            }
            None => {
                class_of[v] = reps.len();
                reps.push(v);
                masks.push(bit(v));
            }
        }
    }
    class_of.into_iter().map(|c| masks[c]).collect()
}

/// Colour refinement; returns a colour per vertex, colours numbered
/// `0..k` in an isomorphism-invariant order.
fn refine(h: &Hypergraph) -> Vec<u32> {
    let n = h.order();
    let mut colour: Vec<u32> = (0..n).map(|v| h.degree(v) as u32).collect();
    let mut classes = distinct(&colour);
    loop {
        let sigs: Vec<(u32, Vec<Vec<u32>>)> = (0..n)
            .map(|v| {
                let mut around: Vec<Vec<u32>> = h
                    .edges()
                    .iter()
                    .filter(|&&e| e & bit(v) != 0)
                    .map(|&e| {
                        let mut c: Vec<u32> = Bits(e & !bit(v)).map(|u| colour[u]).collect();
                        c.sort_unstable();
                        c
                    })
                    .collect();
                around.sort_unstable();
                (colour[v], around)
            })
            .collect();
        let mut sorted = sigs.clone();
        sorted.sort();
        sorted.dedup();
        let next: Vec<u32> = sigs.iter().map(|s| sorted.binary_search(s).unwrap() as u32).collect();
        let k = sorted.len();
        colour = next;
        if k == classes {
            return colour;
        }
        classes = k;
    }
}

fn distinct(c: &[u32]) -> usize {
    let mut v = c.to_vec();
    v.sort_unstable();
    v.dedup();
    v.len()
}

fn check_size(n: usize, p: usize) -> Result<()> {
    if bits::binomial(n, p) > MAX_CODE_BITS {
        return Err(Error::Guard(format!("canonical codes need C(n,p) <= {MAX_CODE_BITS}; got n={n}, p={p}")));
    }
    Ok(())
}

/// Encoding of `h` under the identity labelling.
pub fn encode(h: &Hypergraph) -> Result<CanonCode> {
    check_size(h.order(), h.uniformity())?;
    Ok(h.edges().iter().fold(0u128, |c, &e| c | 1u128 << colex_rank(e)))
}

/// Inverse of [`encode`].
pub fn decode(n: usize, p: usize, code: CanonCode) -> Result<Hypergraph> {
    check_size(n, p)?;
    let edges = bits::k_subsets(n, p).into_iter().filter(|&s| code >> colex_rank(s) & 1 == 1);
    Hypergraph::new(n, p, edges)
}

/// Canonical code together with a labelling attaining it (`perm[v]` is the
/// new name of `v`).
pub fn canonical_labelling(h: &Hypergraph) -> Result<(CanonCode, Vec<usize>)> {
    let n = h.order();
    check_size(n, h.uniformity())?;
    let colour = refine(h);
    let twins = twin_classes(h);
    let ncolours = colour.iter().map(|&c| c as usize + 1).max().unwrap_or(0);

    // cells in colour order; within a cell, one label per twin class
    let mut cells: Vec<Vec<usize>> = vec![Vec::new(); ncolours];
    for v in 0..n {
        cells[colour[v] as usize].push(v);
    }
    let mut plan: Vec<CellPlan> = Vec::with_capacity(ncolours);
    let mut start = 0;
    for cell in &cells {
        let mut groups: Vec<Vec<usize>> = Vec::new();
        for &v in cell {
            match groups.iter_mut().find(|g| twins[g[0]] & bit(v) != 0) {
                Some(g) => g.push(v),
                None => groups.push(vec![v]),
            }
        }
        let mut labels: Vec<usize> = Vec::with_capacity(cell.len());
        for (i, g) in groups.iter().enumerate() {
            labels.extend(std::iter::repeat(i).take(g.len()));
        }
        plan.push(CellPlan { start, groups, labels });
        start += cell.len();
    }

    let mut best: Option<(CanonCode, Vec<usize>)> = None;
    let mut perm = vec![0usize; n];
    search(h, &mut plan, 0, &mut perm, &mut best);
    Ok(best.unwrap_or((0, Vec::new())))
}

struct CellPlan {
    start: usize,
    groups: Vec<Vec<usize>>,
    labels: Vec<usize>,
}

fn search(h: &Hypergraph, plan: &mut [CellPlan], idx: usize, perm: &mut [usize], best: &mut Option<(CanonCode, Vec<usize>)>) {
    if idx == plan.len() {
        let code = h
            .edges()
            .iter()
            .fold(0u128, |c, &e| c | 1u128 << colex_rank(Bits(e).fold(0u64, |m, v| m | bit(perm[v]))));
        if best.as_ref().is_none_or(|(b, _)| code < *b) {
            *best = Some((code, perm.to_vec()));
        }
        return;
    }
    plan[idx].labels.sort_unstable();
    loop {
        {
            let cell = &plan[idx];
            let mut next_in_group = vec![0usize; cell.groups.len()];
            for (offset, &g) in cell.labels.iter().enumerate() {
                let v = cell.groups[g][next_in_group[g]];
                next_in_group[g] += 1;
                perm[v] = cell.start + offset;
            }
        }
        search(h, plan, idx + 1, perm, best);
        if !next_permutation(&mut plan[idx].labels) {
            break;
        }
    }
}

fn next_permutation(a: &mut [usize]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let mut i = a.len() - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = a.len() - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

pub fn canonical_code(h: &Hypergraph) -> Result<CanonCode> {
    canonical_labelling(h).map(|(c, _)| c)
}

/// The canonical representative of `h`'s isomorphism class.
pub fn canonical_form(h: &Hypergraph) -> Result<Hypergraph> {
    let code = canonical_code(h)?;
    decode(h.order(), h.uniformity(), code)
}

pub fn isomorphic(a: &Hypergraph, b: &Hypergraph) -> Result<bool> {
    if a.order() != b.order() || a.uniformity() != b.uniformity() || a.edge_count() != b.edge_count() {
        return Ok(false);
    }
    Ok(canonical_code(a)? == canonical_code(b)?)
}
