//! Zero-sum constructions of sparse partial Steiner systems.
//!
//! * mod-sum (`r = 4`): vertices `Z_n`, `n` even; four distinct residues form
//!   an edge when they sum to 1.
//! * binary (`r > 4`): vertices `Z_2^d`; an `r`-set is an edge when it sums
//!   to zero and contains no zero-sum subset of size 4 or `r - 4`.
//! * product (`r > 4`): vertices `Z_m + Z_2^d`; an `r`-set is an edge when
//!   its cyclic parts sum to zero and its binary parts (the shadow) form an
//!   edge of the binary construction.
//!
//! The mod-sum and binary builders enumerate `(r-1)`-subsets and complete
//! each with the unique vertex that fixes the sum, keeping the edge only when
//! that vertex is larger than the subset's maximum. The product builder lifts
//! every shadow edge over all zero-sum assignments of cyclic parts.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::groups::GroupSpec;
use crate::hypergraph::Hypergraph;
use crate::par;
use crate::subsets::{binomial_u128, for_each_k_subset_of_range};

/// Largest number of vertex slots (`edges * r`) a builder will materialize.
const MAX_FLAT_LEN: u128 = 1 << 31;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConstructionKind {
    ModSum,
    Binary,
    Product,
}

impl ConstructionKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            ConstructionKind::ModSum => "mod-sum",
            ConstructionKind::Binary => "binary",
            ConstructionKind::Product => "product",
        }
    }
}

impl fmt::Display for ConstructionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ConstructionKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mod-sum" => Ok(ConstructionKind::ModSum),
            "binary" => Ok(ConstructionKind::Binary),
            "product" => Ok(ConstructionKind::Product),
            _ => Err(Error::usage(format!("unknown construction {s:?}"))),
        }
    }
}

/// Where a hypergraph came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConstructionMeta {
    pub kind: ConstructionKind,
    pub group: GroupSpec,
    pub r: usize,
    pub requested_n: u64,
    pub used_n: u32,
}

impl ConstructionMeta {
    /// Checks that `kind`, `group` and `r` describe one of the constructions.
    pub fn new(kind: ConstructionKind, group: GroupSpec, r: usize, requested_n: u64) -> Result<Self> {
        let consistent = match (kind, group) {
            (ConstructionKind::ModSum, GroupSpec::Cyclic { n }) => r == 4 && n % 2 == 0,
            (ConstructionKind::Binary, GroupSpec::Binary { .. }) => r > 4,
            (ConstructionKind::Product, GroupSpec::Product { .. }) => r > 4,
            _ => false,
        };
        if !consistent {
            return Err(Error::usage(format!(
                "construction {kind} with group {group} is not valid for r={r}"
            )));
        }
        let used_n = group.order();
        if (used_n as u64) > requested_n {
            return Err(Error::usage(format!(
                "group {group} has more than the requested {requested_n} vertices"
            )));
        }
        Ok(ConstructionMeta {
            kind,
            group,
            r,
            requested_n,
            used_n,
        })
    }
}

/// Parameters `(d, m)` with `m * 2^d` vertices, for a requested `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParamChoice {
    pub d: u32,
    pub m: u64,
    pub n_used: u64,
}

/// The mod-sum 4-graph on `Z_n`.
pub fn build_mod_sum(n: u32) -> Result<Hypergraph> {
    if n < 4 || !n.is_multiple_of(2) {
        return Err(Error::domain(format!(
            "mod-sum construction requires an even n >= 4 (got n={n})"
        )));
    }
    let group = GroupSpec::cyclic(n)?;
    let target = 1 % n;
    Ok(complete_forced_vertex(group, 4, target, |_| true))
}

/// The binary `r`-graph on `Z_2^d`.
pub fn build_binary(r: usize, d: u32) -> Result<Hypergraph> {
    check_large_uniformity(r)?;
    let group = GroupSpec::binary(d)?;
    if (group.order() as usize) < r {
        return Err(Error::domain(format!(
            "binary construction needs 2^d >= r (got r={r}, d={d})"
        )));
    }
    if binomial_u128(group.order() as u64, r as u64 - 1).is_none_or(|c| c > 1 << 40) {
        return Err(Error::domain(format!(
            "binary construction with r={r}, d={d} is too large to enumerate"
        )));
    }
    Ok(complete_forced_vertex(group, r, 0, |edge| {
        !has_zero_sum_quadruple(edge)
    }))
}

/// The product `r`-graph on `Z_m + Z_2^d`; `m = 1` is the binary graph.
pub fn build_product(r: usize, m: u32, d: u32) -> Result<Hypergraph> {
    check_large_uniformity(r)?;
    let group = GroupSpec::product(m, d)?;
    let shadows = build_binary(r, d)?;
    if m == 1 {
        return Ok(shadows);
    }
    let lifts = (m as u128).pow(r as u32 - 1);
    if lifts * shadows.len() as u128 * r as u128 > MAX_FLAT_LEN {
        return Err(Error::domain(format!(
            "product construction with r={r}, m={m}, d={d} has too many edges to hold in memory"
        )));
    }
    let lifts = lifts as usize;
    let flat = par::flat_map_indices(shadows.len(), |i| {
        let shadow = shadows.edge(i);
        let mut out = Vec::with_capacity(lifts * r);
        let mut xs = vec![0u32; r];
        let mut edge = vec![0u32; r];
        for _ in 0..lifts {
            // last cyclic part is forced by the zero-sum condition
            let partial = xs[..r - 1].iter().fold(0u64, |a, &x| a + x as u64);
            xs[r - 1] = ((m as u64 - partial % m as u64) % m as u64) as u32;
            for (slot, (&x, &y)) in edge.iter_mut().zip(xs.iter().zip(shadow)) {
                *slot = (x << d) | y;
            }
            edge.sort_unstable();
            out.extend_from_slice(&edge);
            // odometer over the first r-1 cyclic parts
            for x in xs[..r - 1].iter_mut() {
                *x += 1;
                if *x < m {
                    break;
                }
                *x = 0;
            }
        }
        out
    });
    Ok(Hypergraph::from_sorted_edges(r, group.order(), flat))
}

/// `d = floor(log2 sqrt(n))`, `m = floor(n / 2^d)`.
pub fn select_params(r: usize, n: u64) -> Result<ParamChoice> {
    check_large_uniformity(r)?;
    let choice = raw_params(n);
    if choice.m == 0 || choice.d == 0 || choice.n_used < r as u64 {
        let min_n = (1..).find(|&k| {
            let c = raw_params(k);
            c.d > 0 && c.n_used >= r as u64
        });
        return Err(Error::domain(format!(
            "n={n} is too small for r={r}; the smallest feasible n is {}",
            min_n.unwrap_or(u64::MAX)
        )));
    }
    Ok(choice)
}

fn raw_params(n: u64) -> ParamChoice {
    // largest d with 4^d <= n
    let d = if n == 0 { 0 } else { n.ilog2() / 2 };
    let m = n >> d;
    ParamChoice {
        d,
        m,
        n_used: m << d,
    }
}

/// Picks the construction for `(r, n)` and builds it on at most `n` vertices.
pub fn build_auto(r: usize, n: u64) -> Result<(Hypergraph, ConstructionMeta)> {
    match r {
        0..=3 => Err(Error::Unsupported(format!(
            "no explicit construction is provided for r={r}; r must be at least 4"
        ))),
        4 => {
            let even = n & !1;
            let used = u32::try_from(even).map_err(|_| {
                Error::domain(format!("n={n} exceeds the supported vertex range"))
            })?;
            let h = build_mod_sum(used)?;
            let meta = ConstructionMeta::new(
                ConstructionKind::ModSum,
                GroupSpec::cyclic(used)?,
                4,
                n,
            )?;
            Ok((h, meta))
        }
        _ => {
            let p = select_params(r, n)?;
            let m = u32::try_from(p.m)
                .map_err(|_| Error::domain(format!("n={n} exceeds the supported vertex range")))?;
            let group = GroupSpec::product(m, p.d)?;
            let h = build_product(r, m, p.d)?;
            let meta = ConstructionMeta::new(ConstructionKind::Product, group, r, n)?;
            Ok((h, meta))
        }
    }
}

/// Rebuilds the hypergraph a [`ConstructionMeta`] describes.
pub fn build_from_meta(meta: &ConstructionMeta) -> Result<Hypergraph> {
    match (meta.kind, meta.group) {
        (ConstructionKind::ModSum, GroupSpec::Cyclic { n }) => build_mod_sum(n),
        (ConstructionKind::Binary, GroupSpec::Binary { d }) => build_binary(meta.r, d),
        (ConstructionKind::Product, GroupSpec::Product { m, d }) => build_product(meta.r, m, d),
        _ => Err(Error::usage("construction and group do not match")),
    }
}

fn check_large_uniformity(r: usize) -> Result<()> {
    if r <= 4 {
        return Err(Error::domain(format!(
            "binary and product constructions require r > 4 (got r={r}); use mod-sum for r=4"
        )));
    }
    if r > 64 {
        return Err(Error::usage(format!("uniformity {r} is above the supported 64")));
    }
    Ok(())
}

/// Enumerates `(r-1)`-subsets `S` in parallel by smallest element, completes
/// each with `v = target - sum(S)` and keeps `S + {v}` when `v > max(S)` and
/// `keep` accepts the sorted edge.
fn complete_forced_vertex<K>(group: GroupSpec, r: usize, target: u32, keep: K) -> Hypergraph
where
    K: Fn(&[u32]) -> bool + Sync + Send,
{
    let n = group.order();
    let flat = par::flat_map_indices(n as usize, |first| {
        let first = first as u32;
        let mut out = Vec::new();
        let mut edge = vec![0u32; r];
        edge[0] = first;
        for_each_k_subset_of_range(first + 1, n, r - 2, |rest| {
            edge[1..r - 1].copy_from_slice(rest);
            let s = group.sum_raw(&edge[..r - 1]);
            let v = group.add_raw(target, group.neg_raw(s));
            if v > edge[r - 2] {
                edge[r - 1] = v;
                if keep(&edge) {
                    out.extend_from_slice(&edge);
                }
            }
        });
        out
    });
    Hypergraph::from_sorted_edges(r, n, flat)
}

/// Whether some four elements of `set` (distinct elements of `Z_2^d`) XOR to
/// zero. Two distinct pairs with equal XOR are necessarily disjoint, so this
/// is a duplicate search among pairwise XORs.
fn has_zero_sum_quadruple(set: &[u32]) -> bool {
    let mut xors = Vec::with_capacity(set.len() * (set.len() - 1) / 2);
    for (i, &a) in set.iter().enumerate() {
        for &b in &set[i + 1..] {
            xors.push(a ^ b);
        }
    }
    xors.sort_unstable();
    xors.windows(2).any(|w| w[0] == w[1])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subsets::for_each_k_subset;

    fn edges(h: &Hypergraph) -> Vec<Vec<u32>> {
        h.edges().map(<[u32]>::to_vec).collect()
    }

    fn naive_mod_sum(n: u32) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        for_each_k_subset_of_range(0, n, 4, |s| {
            if s.iter().sum::<u32>() % n == 1 {
                out.push(s.to_vec());
            }
        });
        out
    }

    fn has_zero_sum_subset(set: &[u32], k: usize) -> bool {
        let mut found = false;
        for_each_k_subset(set, k, |s| found |= s.iter().fold(0, |a, &b| a ^ b) == 0);
        found
    }

    #[test]
    fn mod_sum_examples() {
        assert!(build_mod_sum(4).unwrap().is_empty());
        assert_eq!(edges(&build_mod_sum(6).unwrap()), vec![vec![0, 1, 2, 4], vec![1, 3, 4, 5]]);
        assert_eq!(build_mod_sum(8).unwrap().len(), 8);
        for n in [4, 6, 8, 10, 12, 14, 16, 30] {
            assert_eq!(edges(&build_mod_sum(n).unwrap()), naive_mod_sum(n), "n={n}");
        }
    }

    #[test]
    fn mod_sum_domain() {
        for n in [0, 1, 2, 3, 5, 7, 13] {
            assert!(matches!(build_mod_sum(n), Err(Error::Domain(_))), "n={n}");
        }
    }

    #[test]
    fn quadruple_shortcut_matches_two_condition_filter() {
        for d in [3, 4] {
            for r in 5..=9usize {
                if r > 1 << d {
                    continue;
                }
                for_each_k_subset_of_range(0, 1 << d, r, |a| {
                    if a.iter().fold(0, |x, &y| x ^ y) != 0 {
                        return;
                    }
                    let direct = has_zero_sum_subset(a, 4) || has_zero_sum_subset(a, r - 4);
                    assert_eq!(has_zero_sum_quadruple(a), direct, "{a:?}");
                });
            }
        }
    }

    #[test]
    fn binary_small_cases() {
        // pinned from a naive enumeration of all r-subsets
        for (r, d, expected) in [(5, 3, 0), (6, 3, 0), (5, 4, 168), (6, 4, 448), (7, 4, 0), (8, 4, 0)] {
            assert_eq!(build_binary(r, d).unwrap().len(), expected, "r={r} d={d}");
        }
        for d in 3..=5 {
            let h = build_binary(5, d).unwrap();
            assert!(h.edges().all(|e| e[0] != 0), "vertex 0 must be isolated at r=5");
        }
    }

    #[test]
    fn binary_domain() {
        assert!(matches!(build_binary(4, 3), Err(Error::Domain(_))));
        assert!(matches!(build_binary(3, 3), Err(Error::Domain(_))));
        assert!(matches!(build_binary(9, 3), Err(Error::Domain(_))));
        assert!(build_binary(5, 0).is_err());
    }

    #[test]
    fn product_delegates_and_multiplies() {
        assert_eq!(build_product(5, 1, 3).unwrap(), build_binary(5, 3).unwrap());
        assert_eq!(build_product(5, 1, 4).unwrap(), build_binary(5, 4).unwrap());
        assert_eq!(build_product(5, 2, 4).unwrap().len(), 16 * 168);
        assert_eq!(build_product(6, 2, 4).unwrap().len(), 32 * 448);
        assert_eq!(build_product(5, 3, 4).unwrap().len(), 81 * 168);
        assert!(matches!(build_product(4, 2, 3), Err(Error::Domain(_))));
    }

    #[test]
    fn product_edges_satisfy_definition() {
        let (m, d, r) = (3u32, 4u32, 5usize);
        let h = build_product(r, m, d).unwrap();
        let binary = build_binary(r, d).unwrap();
        let mask = (1 << d) - 1;
        for e in h.edges() {
            let xsum: u32 = e.iter().map(|&v| v >> d).sum();
            assert_eq!(xsum % m, 0);
            let mut shadow: Vec<u32> = e.iter().map(|&v| v & mask).collect();
            shadow.sort_unstable();
            assert!(binary.position(&shadow).is_some());
        }
    }

    #[test]
    fn select_params_examples() {
        assert_eq!(select_params(5, 100).unwrap(), ParamChoice { d: 3, m: 12, n_used: 96 });
        assert_eq!(select_params(5, 64).unwrap(), ParamChoice { d: 3, m: 8, n_used: 64 });
        assert_eq!(select_params(5, 1024).unwrap(), ParamChoice { d: 5, m: 32, n_used: 1024 });
        for n in 6..5000u64 {
            let p = select_params(5, n).unwrap();
            let pow = 1u64 << p.d;
            assert!(n - p.m * pow < pow);
            assert!(pow * pow <= n);
            assert!(4 * pow * pow > n, "d must be maximal");
        }
    }

    #[test]
    fn select_params_reports_minimum() {
        let err = select_params(9, 8).unwrap_err();
        assert!(matches!(err, Error::Domain(_)));
        assert!(err.to_string().contains("smallest feasible n is 10"), "{err}");
        assert!(select_params(5, 4).is_err());
        assert!(select_params(4, 100).is_err());
    }

    #[test]
    fn auto_dispatch() {
        let (h, meta) = build_auto(4, 13).unwrap();
        assert_eq!(meta.kind, ConstructionKind::ModSum);
        assert_eq!((meta.requested_n, meta.used_n, h.n()), (13, 12, 12));

        let (h, meta) = build_auto(5, 100).unwrap();
        assert_eq!(meta.kind, ConstructionKind::Product);
        assert_eq!(meta.group, GroupSpec::Product { m: 12, d: 3 });
        assert_eq!((meta.requested_n, meta.used_n, h.n()), (100, 96, 96));

        assert!(matches!(build_auto(3, 10), Err(Error::Unsupported(_))));
        assert!(matches!(build_auto(4, 3), Err(Error::Domain(_))));
    }

    #[test]
    fn meta_consistency() {
        let z8 = GroupSpec::cyclic(8).unwrap();
        assert!(ConstructionMeta::new(ConstructionKind::ModSum, z8, 4, 8).is_ok());
        assert!(ConstructionMeta::new(ConstructionKind::ModSum, z8, 5, 8).is_err());
        assert!(ConstructionMeta::new(ConstructionKind::ModSum, z8, 4, 7).is_err());
        assert!(ConstructionMeta::new(ConstructionKind::Binary, z8, 5, 8).is_err());
        let b = GroupSpec::binary(3).unwrap();
        let meta = ConstructionMeta::new(ConstructionKind::Binary, b, 5, 8).unwrap();
        assert_eq!(build_from_meta(&meta).unwrap(), build_binary(5, 3).unwrap());
    }
}
