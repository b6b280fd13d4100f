//! Strictly increasing multi-indices over `{1, ..., n}` as bitmasks.

use std::fmt;

/// A strictly increasing tuple of indices in `1..=n`, stored as a bitmask
/// (bit `i-1` set iff index `i` is present).  Supports `n <= 64`.
///
/// The ordering is degree-first, then lexicographic on the index tuple;
/// this is the canonical term order used for printing and pivoting.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct MultiIndex(u64);

impl MultiIndex {
    pub const EMPTY: MultiIndex = MultiIndex(0);

    /// Build from an arbitrary index list.  Returns the sorted multi-index
    /// together with the sign of the sorting permutation, or `None` when an
    /// index repeats.
    pub fn from_indices(indices: &[u32]) -> Option<(MultiIndex, i8)> {
        let mut mask = 0u64;
        let mut sign = 1i8;
        for (pos, &i) in indices.iter().enumerate() {
            assert!((1..=64).contains(&i), "index {i} out of range 1..=64");
            let bit = 1u64 << (i - 1);
            if mask & bit != 0 {
                return None;
            }
            // Parity of the number of already-placed indices larger than i.
            let larger = (mask >> (i - 1)).count_ones() as usize;
            debug_assert!(larger <= pos);
            if larger % 2 == 1 {
                sign = -sign;
            }
            mask |= bit;
        }
        Some((MultiIndex(mask), sign))
    }

    /// Sorted indices, assumed strictly increasing (sign must be +1).
    pub fn from_sorted(indices: &[u32]) -> MultiIndex {
        let (mi, sign) = Self::from_indices(indices).expect("repeated index");
        assert!(sign == 1, "indices not strictly increasing");
        mi
    }

    pub fn from_mask(mask: u64) -> MultiIndex {
        MultiIndex(mask)
    }

    pub fn mask(self) -> u64 {
        self.0
    }

    pub fn degree(self) -> u32 {
        self.0.count_ones()
    }

    pub fn contains(self, index: u32) -> bool {
        self.0 & (1 << (index - 1)) != 0
    }

    pub fn indices(self) -> impl Iterator<Item = u32> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let tz = rest.trailing_zeros();
                rest &= rest - 1;
                Some(tz + 1)
            }
        })
    }

    pub fn max_index(self) -> u32 {
        64 - self.0.leading_zeros()
    }

    /// Complementary multi-index inside `{1, ..., n}`.
    pub fn complement(self, n: u32) -> MultiIndex {
        let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        MultiIndex(full & !self.0)
    }

    /// Sign of `theta^self ∧ theta^other`, or `None` when they overlap.
    /// The sign is the parity of `#{(i, j) in self x other : i > j}`.
    pub fn wedge_sign(self, other: MultiIndex) -> Option<i8> {
        if self.0 & other.0 != 0 {
            return None;
        }
        let mut inv = 0u32;
        for i in self.indices() {
            inv += (other.0 & low_mask(i)).count_ones();
        }
        Some(if inv % 2 == 0 { 1 } else { -1 })
    }

    pub fn union(self, other: MultiIndex) -> MultiIndex {
        MultiIndex(self.0 | other.0)
    }

    /// Interior contraction by a single index: sign and remaining indices,
    /// or `None` if the index is absent.  The sign is `(-1)^k` with `k` the
    /// position of `index` inside the tuple.
    pub fn contract(self, index: u32) -> Option<(MultiIndex, i8)> {
        let bit = 1u64 << (index - 1);
        if self.0 & bit == 0 {
            return None;
        }
        let before = (self.0 & low_mask(index)).count_ones();
        let sign = if before % 2 == 0 { 1 } else { -1 };
        Some((MultiIndex(self.0 & !bit), sign))
    }

    /// Iterate all degree-`p` multi-indices in `{1, ..., n}` in canonical order.
    pub fn all(n: u32, p: u32) -> Vec<MultiIndex> {
        let mut out = Vec::new();
        if p > n {
            return out;
        }
        let mut idx: Vec<u32> = (1..=p).collect();
        loop {
            out.push(MultiIndex::from_sorted(&idx));
            // next combination
            let mut i = p as i64 - 1;
            while i >= 0 && idx[i as usize] == n - (p - 1 - i as u32) {
                i -= 1;
            }
            if i < 0 {
                break;
            }
            idx[i as usize] += 1;
            for j in (i as usize + 1)..p as usize {
                idx[j] = idx[j - 1] + 1;
            }
        }
        out
    }
}

fn low_mask(index: u32) -> u64 {
    (1u64 << (index - 1)) - 1
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            if self.0 == other.0 {
                return std::cmp::Ordering::Equal;
            }
            // Lexicographic on tuples: at the lowest differing bit, the
            // index present there comes first.
            let low = (self.0 ^ other.0).trailing_zeros();
            if self.0 & (1 << low) != 0 {
                std::cmp::Ordering::Less
            } else {
                std::cmp::Ordering::Greater
            }
        })
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return write!(f, "()");
        }
        let digits: Vec<String> = self.indices().map(|i| i.to_string()).collect();
        if self.max_index() <= 9 {
            write!(f, "{}", digits.join(""))
        } else {
            write!(f, "({})", digits.join(","))
        }
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sign_normalization() {
        let (m, s) = MultiIndex::from_indices(&[2, 1, 3]).unwrap();
        assert_eq!(m, MultiIndex::from_sorted(&[1, 2, 3]));
        assert_eq!(s, -1);
        let (m, s) = MultiIndex::from_indices(&[3, 1, 2]).unwrap();
        assert_eq!(m, MultiIndex::from_sorted(&[1, 2, 3]));
        assert_eq!(s, 1);
        assert!(MultiIndex::from_indices(&[1, 1]).is_none());
    }

    #[test]
    fn wedge_signs() {
        let i = MultiIndex::from_sorted(&[3, 7]);
        let j = MultiIndex::from_sorted(&[2, 4, 6]);
        // 4 inversions -> +1
        assert_eq!(i.wedge_sign(j), Some(1));
        let i = MultiIndex::from_sorted(&[2, 3]);
        let j = MultiIndex::from_sorted(&[1]);
        assert_eq!(i.wedge_sign(j), Some(1));
        let j2 = MultiIndex::from_sorted(&[2]);
        assert_eq!(i.wedge_sign(j2), None);
    }

    #[test]
    fn contraction_signs() {
        let m = MultiIndex::from_sorted(&[2, 3, 7]);
        let (rest, s) = m.contract(3).unwrap();
        assert_eq!(rest, MultiIndex::from_sorted(&[2, 7]));
        assert_eq!(s, -1);
        assert_eq!(m.contract(5), None);
    }

    #[test]
    fn canonical_order_is_degree_then_lex() {
        let a = MultiIndex::from_sorted(&[1, 4]);
        let b = MultiIndex::from_sorted(&[2, 3]);
        assert!(a < b);
        let c = MultiIndex::from_sorted(&[1, 2, 4]);
        let d = MultiIndex::from_sorted(&[1, 3, 4]);
        assert!(c < d);
        assert!(b < c);
        let all = MultiIndex::all(4, 2);
        assert_eq!(all.len(), 6);
        let mut sorted = all.clone();
        sorted.sort();
        assert_eq!(all, sorted);
    }
}
