//! Vertex-set bitmasks and the small combinatorial helpers built on them.
//!
//! A vertex set over at most 64 vertices is a `u64` with bit `i` standing for
//! vertex `i`.

use std::cmp::Ordering;

/// Largest vertex count representable by a single-word vertex set.
pub const MAX_VERTICES: usize = 64;

const fn build_binomials() -> [[u64; 65]; 65] {
    let mut table = [[0u64; 65]; 65];
    let mut n = 0;
    while n <= 64 {
        table[n][0] = 1;
        let mut k = 1;
        while k <= n {
            // C(64, 32) < 2^63, so nothing here overflows.
            table[n][k] = table[n - 1][k - 1] + if k < n { table[n - 1][k] } else { 0 };
            k += 1;
        }
        n += 1;
    }
    table
}

static BINOMIALS: [[u64; 65]; 65] = build_binomials();

/// `C(n, k)` for `n <= 64`; zero when `k > n`.
#[inline]
pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        0
    } else {
        BINOMIALS[n][k]
    }
}

/// `C(n, k)` for arbitrary `n`, `None` on overflow.
pub fn binomial_u64(n: u64, k: u64) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * u128::from(n - i) / u128::from(i + 1);
        if acc > u128::from(u64::MAX) {
            return None;
        }
    }
    Some(acc as u64)
}

#[inline]
pub fn bit(v: usize) -> u64 {
    1u64 << v
}

/// Mask with the low `n` bits set.
#[inline]
pub fn low_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Vertices strictly above `v`.
#[inline]
pub fn above(v: usize) -> u64 {
    if v >= 63 {
        0
    } else {
        u64::MAX << (v + 1)
    }
}

#[inline]
pub fn size(mask: u64) -> usize {
    mask.count_ones() as usize
}

/// Iterator over the set bits of a mask, lowest first.
#[derive(Clone, Copy, Debug)]
pub struct Bits(pub u64);

impl Iterator for Bits {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let k = self.0.count_ones() as usize;
        (k, Some(k))
    }
}

impl ExactSizeIterator for Bits {}

pub fn to_vec(mask: u64) -> Vec<usize> {
    Bits(mask).collect()
}

pub fn from_slice(vertices: &[usize]) -> u64 {
    vertices.iter().fold(0, |m, &v| m | bit(v))
}

/// Lexicographic order of the sorted vertex lists of two sets.
///
/// For sets of equal size this is decided by the lowest vertex in their
/// symmetric difference: whichever set contains it comes first.
#[inline]
pub fn lex_cmp(a: u64, b: u64) -> Ordering {
    let diff = a ^ b;
    if diff == 0 {
        return Ordering::Equal;
    }
    let low = diff.trailing_zeros() as usize;
    // Below `low` both lists agree; the one holding `low` wins unless the other
    // has run out of elements, making it a proper prefix.
    let rest = !low_mask(low);
    if a & (1u64 << low) != 0 {
        if b & rest == 0 {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    } else if a & rest == 0 {
        Ordering::Less
    } else {
        Ordering::Greater
    }
}

/// Rank of a vertex set among all sets of the same size in colexicographic
/// order (combinatorial number system).
#[inline]
pub fn colex_rank(mask: u64) -> usize {
    let mut rank = 0u64;
    for (i, v) in Bits(mask).enumerate() {
        rank += binomial(v, i + 1);
    }
    rank as usize
}

/// All `k`-subsets of the vertices in `ground`, in lexicographic order.
pub fn subsets_of_size(ground: u64, k: usize) -> Vec<u64> {
    let verts = to_vec(ground);
    let n = verts.len();
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.iter().fold(0, |m, &i| m | bit(verts[i])));
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return out;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// All `k`-subsets of `0..n`, lexicographic.
pub fn k_subsets(n: usize, k: usize) -> Vec<u64> {
    subsets_of_size(low_mask(n), k)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lex_vec(a: u64, b: u64) -> Ordering {
        to_vec(a).cmp(&to_vec(b))
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(64, 32), 1_832_624_140_942_590_534);
        assert_eq!(binomial(3, 4), 0);
        assert_eq!(binomial_u64(40, 20), Some(137_846_528_820));
        assert_eq!(binomial_u64(200, 100), None);
    }

    #[test]
    fn lex_cmp_matches_vector_order() {
        let sets: Vec<u64> = (0u64..256).collect();
        for &a in &sets {
            for &b in &sets {
                assert_eq!(lex_cmp(a, b), lex_vec(a, b), "{a:b} vs {b:b}");
            }
        }
    }

    #[test]
    fn subsets_are_lexicographic_and_complete() {
        for n in 0..8 {
            for k in 0..=n + 1 {
                let subs = k_subsets(n, k);
                assert_eq!(subs.len() as u64, binomial(n, k));
                for w in subs.windows(2) {
                    assert_eq!(lex_cmp(w[0], w[1]), Ordering::Less);
                }
                assert!(subs.iter().all(|&s| size(s) == k));
            }
        }
    }

    #[test]
    fn colex_rank_is_a_bijection() {
        let n = 9;
        for k in 0..=n {
            let mut ranks: Vec<usize> = k_subsets(n, k).into_iter().map(colex_rank).collect();
            ranks.sort_unstable();
            assert_eq!(ranks, (0..binomial(n, k) as usize).collect::<Vec<_>>());
        }
    }
}
