//! Covers of set families without `t` pairwise disjoint members: a set `A` of
//! at most `t − 1` vertices and a set `B` of at most `r(2t − 2)` vertices such
//! that every member meets `A` or has two elements in `B`. Also exact
//! matching-number and rainbow-matching searches.

use serde::{Deserialize, Serialize};

use crate::bits::{self, lex_cmp};
use crate::error::{Error, Result};

/// An `r`-uniform family on the ground set `0..n`, members sorted
/// lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetFamily {
    n: usize,
    r: usize,
    members: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SetFamilyJson {
    n: usize,
    r: usize,
    members: Vec<Vec<usize>>,
}

impl SetFamily {
    pub fn new(n: usize, r: usize, members: impl IntoIterator<Item = u64>) -> Result<Self> {
        if n > bits::MAX_VERTICES {
            return Err(Error::TooManyVertices { what: "set family", got: n, max: bits::MAX_VERTICES });
        }
        let mut members: Vec<u64> = members.into_iter().collect();
        for &m in &members {
            if bits::size(m) != r {
                return Err(Error::Invalid(format!("member {:?} does not have {r} elements", bits::to_vec(m))));
            }
            if m & !bits::low_mask(n) != 0 {
                return Err(Error::Invalid(format!("member {:?} outside 0..{n}", bits::to_vec(m))));
            }
        }
        members.sort_unstable_by(|&a, &b| lex_cmp(a, b));
        if let Some(w) = members.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Invalid(format!("duplicate member {:?}", bits::to_vec(w[0]))));
        }
        Ok(SetFamily { n, r, members })
    }

    pub fn from_lists(n: usize, r: usize, members: &[Vec<usize>]) -> Result<Self> {
        let mut masks = Vec::with_capacity(members.len());
        for m in members {
            if let Some(&v) = m.iter().find(|&&v| v >= n) {
                return Err(Error::Invalid(format!("element {v} outside 0..{n}")));
            }
            let mask = bits::from_slice(m);
            if bits::size(mask) != m.len() {
                return Err(Error::Invalid(format!("member {m:?} repeats an element")));
            }
            masks.push(mask);
        }
        Self::new(n, r, masks)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: SetFamilyJson = serde_json::from_str(text)
            .map_err(|e| Error::Parse { offset: crate::codec::json_offset(text, &e), message: e.to_string() })?;
        Self::from_lists(doc.n, doc.r, &doc.members)
    }

    pub fn to_json(&self) -> String {
        let doc = SetFamilyJson { n: self.n, r: self.r, members: self.lists() };
        serde_json::to_string(&doc).expect("plain data serializes")
    }

    pub fn ground(&self) -> usize {
        self.n
    }

    pub fn uniformity(&self) -> usize {
        self.r
    }

    pub fn members(&self) -> &[u64] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn lists(&self) -> Vec<Vec<usize>> {
        self.members.iter().map(|&m| bits::to_vec(m)).collect()
    }

    pub fn is_matching(&self) -> bool {
        pairwise_disjoint(&self.members)
    }
}

fn pairwise_disjoint(sets: &[u64]) -> bool {
    let mut used = 0u64;
    sets.iter().all(|&s| {
        let ok = s & used == 0;
        used |= s;
        ok
    })
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverPair {
    pub a: u64,
    pub b: u64,
}

/// A lexicographically first family of `min(cap, ν)` pairwise disjoint
/// members among those of maximum size found.
pub fn max_packing(f: &SetFamily, cap: usize) -> Vec<u64> {
    fn go(members: &[u64], from: usize, used: u64, cap: usize, cur: &mut Vec<u64>, best: &mut Vec<u64>) {
        if cur.len() > best.len() {
            *best = cur.clone();
        }
        if best.len() >= cap {
            return;
        }
        for i in from..members.len() {
            if cur.len() + members.len() - i <= best.len() {
                return;
            }
            if members[i] & used == 0 {
                cur.push(members[i]);
                go(members, i + 1, used | members[i], cap, cur, best);
                cur.pop();
                if best.len() >= cap {
                    return;
                }
            }
        }
    }
    let mut best = Vec::new();
    go(&f.members, 0, 0, cap, &mut Vec::new(), &mut best);
    best
}

/// `min(cap, ν(F))`.
pub fn matching_number(f: &SetFamily, cap: usize) -> usize {
    max_packing(f, cap).len()
}

/// The three cover conditions, checked directly.
pub fn verify_cover(f: &SetFamily, t: usize, pair: &CoverPair) -> bool {
    let sizes_ok = bits::size(pair.a) + 1 <= t.max(1) && bits::size(pair.b) <= f.r * (2 * t).saturating_sub(2);
    sizes_ok && f.members.iter().all(|&m| m & pair.a != 0 || bits::size(m & pair.b) >= 2)
}

/// Constructive cover following the inductive argument.
///
/// Returns `Precondition` if the family has `t` pairwise disjoint members;
/// the message lists them.
pub fn cover_decomposition(f: &SetFamily, t: usize) -> Result<CoverPair> {
    if t == 0 {
        return Err(Error::Precondition("t must be at least 1".into()));
    }
    let packing = max_packing(f, t);
    if packing.len() >= t {
        return Err(too_many(&packing));
    }
    decompose(f, t)
}

fn too_many(packing: &[u64]) -> Error {
    let sets: Vec<Vec<usize>> = packing.iter().map(|&s| bits::to_vec(s)).collect();
    Error::Precondition(format!("family contains {} pairwise disjoint members: {sets:?}", packing.len()))
}

fn decompose(f: &SetFamily, t: usize) -> Result<CoverPair> {
    let k = t - 1;
    if k == 0 {
        // ν = 0: the family is empty
        return Ok(CoverPair::default());
    }
    let mut h = max_packing(f, k);
    if h.len() < k {
        return decompose(f, t - 1);
    }
    let mut acc = h.iter().fold(0u64, |a, &s| a | s);
    let mut us = 0u64;
    let mut h2: Vec<u64> = Vec::with_capacity(k);
    for i in 0..=k {
        let avoiding: Vec<u64> = f.members.iter().copied().filter(|&m| m & us == 0).collect();
        if avoiding.is_empty() {
            return Ok(CoverPair { a: us, b: 0 });
        }
        let Some(&next) = avoiding.iter().find(|&&m| bits::size(m & acc) < 2) else {
            if i < k {
                return Ok(CoverPair { a: us, b: acc });
            }
            return Ok(fallback(f, t, &h, &h2, &avoiding)
                .or_else(|| smaller_cover(f, t))
                .unwrap_or(CoverPair { a: us, b: acc }));
        };
        // every member meets the packing, so `next` meets `acc` in exactly one
        // vertex, and that vertex lies in some H_j
        let u = next & acc;
        let j = h.iter().position(|&s| s & u != 0).expect("members meet the packing");
        if j < i {
            // H_1..H_{j-1}, H'_j, H_{j+1}..H_{t-1} and `next` are disjoint
            let mut witness = h.clone();
            witness[j] = h2[j];
            witness.push(next);
            debug_assert!(pairwise_disjoint(&witness));
            return Err(too_many(&witness));
        }
        h.swap(i, j);
        h2.push(next);
        us |= u;
        acc |= next;
    }
    unreachable!("step k either returns or finds t disjoint members")
}

/// A member `H` avoiding every `u_i` meets both `H_i` and `H'_i` for some
/// `i`; then `A' = {u_j : j != i}` with `B' = H_i ∪ H'_i ∪ H` should cover.
fn fallback(f: &SetFamily, t: usize, h: &[u64], h2: &[u64], avoiding: &[u64]) -> Option<CoverPair> {
    let us = h.iter().zip(h2).fold(0u64, |a, (&x, &y)| a | (x & y));
    avoiding.iter().find_map(|&m| {
        (0..h.len()).filter(|&i| m & h[i] != 0 && m & h2[i] != 0).find_map(|i| {
            let pair = CoverPair { a: us & !(h[i] & h2[i]), b: h[i] | h2[i] | m };
            verify_cover(f, t, &pair).then_some(pair)
        })
    })
}

/// The transcribed fallback can miss (a member avoiding `A'` may meet `H_j`
/// and `H'_j` for another `j`), so search exactly for a pair with
/// `|A| ≤ t − 2`: each candidate `A` in lexicographic order, then a bounded
/// branching search for `B`.
fn smaller_cover(f: &SetFamily, t: usize) -> Option<CoverPair> {
    let budget = f.r * (2 * t - 2);
    (0..=t.saturating_sub(2)).find_map(|size| {
        bits::subsets_of_size(bits::low_mask(f.n), size).into_iter().find_map(|a| {
            let rest: Vec<u64> = f.members.iter().copied().filter(|&m| m & a == 0).collect();
            double_hitting_set(&rest, 0, budget).map(|b| CoverPair { a, b })
        })
    })
}

/// A set of at most `budget` vertices containing two elements of every
/// member, extending `b`.
fn double_hitting_set(members: &[u64], b: u64, budget: usize) -> Option<u64> {
    let Some(&m) = members.iter().find(|&&m| bits::size(m & b) < 2) else {
        return Some(b);
    };
    let missing = m & !b;
    let need = 2 - bits::size(m & b);
    if bits::size(b) + need > budget {
        return None;
    }
    bits::subsets_of_size(missing, need).into_iter().find_map(|add| double_hitting_set(members, b | add, budget))
}

/// `t` pairwise disjoint members from `t` distinct matchings, as
/// `(matching index, member)` pairs, or `None`.
pub fn rainbow_matching(matchings: &[SetFamily], t: usize) -> Result<Option<Vec<(usize, u64)>>> {
    if let Some(i) = matchings.iter().position(|m| !m.is_matching()) {
        return Err(Error::Invalid(format!("family {i} is not a matching")));
    }
    fn go(ms: &[SetFamily], from: usize, used: u64, need: usize, out: &mut Vec<(usize, u64)>) -> bool {
        if need == 0 {
            return true;
        }
        if ms.len() - from < need {
            return false;
        }
        for &m in &ms[from].members {
            if m & used == 0 {
                out.push((from, m));
                if go(ms, from + 1, used | m, need - 1, out) {
                    return true;
                }
                out.pop();
            }
        }
        go(ms, from + 1, used, need, out)
    }
    let mut out = Vec::with_capacity(t);
    Ok(go(matchings, 0, 0, t, &mut out).then_some(out))
}
