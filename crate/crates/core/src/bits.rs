//! Small bitmask and counting helpers shared by the rest of the crate.

/// Binomial coefficient `C(n, k)`, zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as u64
}

/// Binomial coefficient for possibly negative arguments, zero outside `0 <= k <= n`.
pub fn binomial_i(n: i64, k: i64) -> i64 {
    if n < 0 || k < 0 || k > n {
        0
    } else {
        binomial(n as usize, k as usize) as i64
    }
}

/// Iterate over the set bits of a mask, lowest first.
pub fn ones(mut mask: u128) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}

/// Iterate over the set bits of a 64-bit mask, lowest first.
pub fn ones64(mask: u64) -> impl Iterator<Item = usize> {
    ones(mask as u128)
}

/// Mask with the lowest `n` bits set.
pub fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// All `k`-element subsets of `{0..n}` as masks, in colex order.
///
/// Colex order (compare largest elements first) is the order in which
/// basis-indicator strings list their subsets.
pub fn k_subsets(n: usize, k: usize) -> KSubsets {
    assert!(n <= 63, "k_subsets supports at most 63 elements");
    KSubsets {
        next: if k > n { None } else { Some(full_mask(k)) },
        limit: 1u64 << n,
    }
}

pub struct KSubsets {
    next: Option<u64>,
    limit: u64,
}

impl Iterator for KSubsets {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        let cur = self.next?;
        if cur == 0 {
            self.next = None;
            return Some(0);
        }
        // Gosper's hack: next larger integer with the same popcount.
        let c = cur & cur.wrapping_neg();
        let r = cur + c;
        let nxt = (((r ^ cur) >> 2) / c) | r;
        self.next = if nxt < self.limit && nxt > cur { Some(nxt) } else { None };
        Some(cur)
    }
}

/// All submasks of `mask` (including `0` and `mask` itself).
pub fn submasks(mask: u128) -> impl Iterator<Item = u128> {
    let mut sub = Some(mask);
    std::iter::from_fn(move || {
        let cur = sub?;
        sub = if cur == 0 { None } else { Some((cur - 1) & mask) };
        Some(cur)
    })
}

/// Position of a `k`-subset in colex order among all `k`-subsets.
pub fn colex_rank(mask: u64) -> u64 {
    ones64(mask)
        .enumerate()
        .map(|(j, s)| binomial(s, j + 1))
        .sum()
}

/// Mask from a list of element indices.
pub fn mask_of(elements: &[usize]) -> u64 {
    elements.iter().fold(0u64, |m, &e| m | (1u64 << e))
}

/// Sorted element list of a mask.
pub fn elements_of(mask: u64) -> Vec<usize> {
    ones64(mask).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(4, 0), 1);
        assert_eq!(binomial(3, 4), 0);
        assert_eq!(binomial_i(-1, 0), 0);
        assert_eq!(binomial_i(3, -1), 0);
    }

    #[test]
    fn colex_enumeration_is_ranked_consecutively() {
        for n in 0..8 {
            for k in 0..=n {
                let subsets: Vec<u64> = k_subsets(n, k).collect();
                assert_eq!(subsets.len() as u64, binomial(n, k));
                for (i, s) in subsets.iter().enumerate() {
                    assert_eq!(s.count_ones() as usize, k);
                    assert_eq!(colex_rank(*s), i as u64);
                }
            }
        }
        assert_eq!(k_subsets(3, 4).count(), 0);
    }

    #[test]
    fn submask_count() {
        assert_eq!(submasks(0b1011).count(), 8);
        assert_eq!(submasks(0).count(), 1);
    }
}
