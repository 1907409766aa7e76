//! Brute-force reference constructions built straight from the definitions.

#![allow(dead_code)]

use std::collections::HashSet;

use steiner_core::subsets::for_each_k_subset_of_range;
use steiner_core::Hypergraph;

fn xor(items: &[u32]) -> u32 {
    items.iter().fold(0, |a, &b| a ^ b)
}

/// Whether some `k` distinct members of `set` XOR to zero.
pub fn has_zero_sum_subset(set: &[u32], k: usize) -> bool {
    if k == 0 || k > set.len() {
        return false;
    }
    let mut found = false;
    for_each_k_subset_of_range(0, set.len() as u32, k, |pos| {
        if !found && pos.iter().fold(0, |a, &p| a ^ set[p as usize]) == 0 {
            found = true;
        }
    });
    found
}

/// Every 4-subset of `Z_n` summing to 1 mod `n`.
pub fn mod_sum(n: u32) -> Vec<Vec<u32>> {
    let mut edges = Vec::new();
    for_each_k_subset_of_range(0, n, 4, |s| {
        if s.iter().map(|&x| x as u64).sum::<u64>() % n as u64 == 1 % n as u64 {
            edges.push(s.to_vec());
        }
    });
    edges
}

/// Every zero-sum `r`-subset of `Z_2^d` with no zero-sum subset of size 4 or
/// `r - 4`.
pub fn binary(r: usize, d: u32) -> Vec<Vec<u32>> {
    let mut edges = Vec::new();
    for_each_k_subset_of_range(0, 1 << d, r, |s| {
        if xor(s) == 0 && !has_zero_sum_subset(s, 4) && !has_zero_sum_subset(s, r - 4) {
            edges.push(s.to_vec());
        }
    });
    edges
}

/// Every `r`-subset of `Z_m + Z_2^d` (index `x * 2^d + y`) whose cyclic parts
/// sum to zero and whose binary parts are distinct and form a binary edge.
pub fn product(r: usize, m: u32, d: u32) -> Vec<Vec<u32>> {
    let shadows: HashSet<Vec<u32>> = binary(r, d).into_iter().collect();
    let mask = (1u32 << d) - 1;
    let mut edges = Vec::new();
    for_each_k_subset_of_range(0, m << d, r, |s| {
        let cyclic: u64 = s.iter().map(|&v| (v >> d) as u64).sum();
        if !cyclic.is_multiple_of(m as u64) {
            return;
        }
        let mut shadow: Vec<u32> = s.iter().map(|&v| v & mask).collect();
        shadow.sort_unstable();
        if shadows.contains(&shadow) {
            edges.push(s.to_vec());
        }
    });
    edges
}

/// Number of `k`-subsets of `0..h.n()` contained in no edge.
pub fn zero_degree(h: &Hypergraph, k: usize) -> u64 {
    let mut covered: HashSet<Vec<u32>> = HashSet::new();
    for e in h.edges() {
        for_each_k_subset_of_range(0, e.len() as u32, k, |pos| {
            covered.insert(pos.iter().map(|&p| e[p as usize]).collect());
        });
    }
    let mut zero = 0;
    for_each_k_subset_of_range(0, h.n(), k, |s| {
        if !covered.contains(s) {
            zero += 1;
        }
    });
    zero
}

pub fn edges_of(h: &Hypergraph) -> Vec<Vec<u32>> {
    h.edges().map(<[u32]>::to_vec).collect()
}
