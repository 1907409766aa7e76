//! Lexicographic `k`-subset enumeration and exact binomials.

use num_bigint::BigUint;

/// Calls `f` on every `k`-subset of `items`, taken in position order, in
/// lexicographic order of positions.
pub fn for_each_k_subset<T: Copy, F: FnMut(&[T])>(items: &[T], k: usize, mut f: F) {
    let n = items.len();
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    let mut buf: Vec<T> = idx.iter().map(|&i| items[i]).collect();
    loop {
        f(&buf);
        // rightmost position that can still advance
        let Some(i) = (0..k).rev().find(|&i| idx[i] < n - k + i) else {
            return;
        };
        idx[i] += 1;
        buf[i] = items[idx[i]];
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
            buf[j] = items[idx[j]];
        }
    }
}

/// Calls `f` on every `k`-subset of `lo..hi` in lexicographic order.
pub fn for_each_k_subset_of_range<F: FnMut(&[u32])>(lo: u32, hi: u32, k: usize, mut f: F) {
    if hi < lo || k > (hi - lo) as usize {
        return;
    }
    let mut cur: Vec<u32> = (lo..lo + k as u32).collect();
    loop {
        f(&cur);
        let Some(i) = (0..k).rev().find(|&i| cur[i] < hi - (k - i) as u32) else {
            return;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// `C(n, k)` if it fits in a `u128`.
pub fn binomial_u128(n: u64, k: u64) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) is exact at every step
        acc = acc.checked_mul((n - i) as u128)? / (i as u128 + 1);
    }
    Some(acc)
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    let k = k.min(n - k);
    let mut acc = BigUint::from(1u32);
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Whether sorted slice `sub` is contained in sorted slice `sup`.
pub(crate) fn is_sorted_subset(sub: &[u32], sup: &[u32]) -> bool {
    let mut it = sup.iter();
    'outer: for &x in sub {
        for &y in it.by_ref() {
            if y == x {
                continue 'outer;
            }
            if y > x {
                return false;
            }
        }
        return false;
    }
    true
}
