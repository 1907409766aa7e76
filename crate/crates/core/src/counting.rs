//! Closed-form edge counts and density statistics in exact arithmetic.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::constructions::{build_binary, ConstructionKind, ConstructionMeta};
use crate::error::{Error, Result};
use crate::groups::GroupSpec;
use crate::hypergraph::Hypergraph;
use crate::par;
use crate::subsets::{binomial, binomial_u128, for_each_k_subset, for_each_k_subset_of_range};

/// Largest number of `k`-subsets [`count_zero_sum_subsets`] will enumerate.
pub const DEFAULT_ZERO_SUM_BUDGET: u128 = 1 << 32;

/// Edges per work item when packing subset keys.
const CHUNK: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountReport {
    pub r: usize,
    pub n: u32,
    pub actual: u64,
    /// Closed-form edge count, when the construction has one.
    pub predicted: Option<BigUint>,
    /// `C(n, r-1) / r`.
    pub upper_bound: BigRational,
    /// `actual / upper_bound`, or 0 when the bound is 0.
    pub density: BigRational,
    /// Number of `(r-1)`-subsets of vertices lying in no edge.
    pub zero_degree: BigUint,
}

impl CountReport {
    /// `Some(true)` when a prediction exists and matches the actual count.
    pub fn prediction_holds(&self) -> Option<bool> {
        self.predicted
            .as_ref()
            .map(|p| *p == BigUint::from(self.actual))
    }

    /// Whether `actual <= C(n, r-1) / r` (exact comparison).
    pub fn within_upper_bound(&self) -> bool {
        BigRational::from_integer(BigInt::from(self.actual)) <= self.upper_bound
    }

    pub fn density_f64(&self) -> f64 {
        self.density.to_f64().unwrap_or(f64::NAN)
    }
}

fn check_mod_sum_n(n: u64) -> Result<()> {
    if n < 4 || !n.is_multiple_of(2) {
        return Err(Error::domain(format!(
            "mod-sum counts require an even n >= 4 (got n={n})"
        )));
    }
    Ok(())
}

/// `C(n,3)/4 - n(n-2)/8` for even `n >= 4`.
pub fn predicted_mod_sum_edges(n: u64) -> Result<BigUint> {
    check_mod_sum_n(n)?;
    // (2 C(n,3) - n(n-2)) / 8, an integer for even n
    let twice = binomial(n, 3) * 2u32;
    let numerator = twice - BigUint::from(n) * BigUint::from(n - 2);
    debug_assert!((&numerator % 8u32).is_zero());
    Ok(numerator / 8u32)
}

/// `n(n-2)/2` for even `n >= 4`.
pub fn predicted_mod_sum_zero_triples(n: u64) -> Result<BigUint> {
    check_mod_sum_n(n)?;
    Ok(BigUint::from(n) * BigUint::from(n - 2) / 2u32)
}

/// `C(n, r-1) / r`, unreduced by flooring.
pub fn linear_upper_bound(r: usize, n: u64) -> BigRational {
    assert!(r >= 1, "uniformity must be positive");
    BigRational::new(
        BigInt::from(binomial(n, r as u64 - 1)),
        BigInt::from(r as u64),
    )
}

/// Number of `k`-subsets of vertices contained in at least one edge.
pub fn covered_subsets(h: &Hypergraph, k: usize) -> Result<u64> {
    if k == 0 || k > h.r() {
        return Err(Error::usage(format!("subset size {k} must lie in 1..={}", h.r())));
    }
    let bits = 32 - h.n().saturating_sub(1).leading_zeros();
    if (k as u32) * bits.max(1) > 64 {
        return Ok(h.build_index(k)?.len() as u64);
    }
    // pack each subset into a u64 key
    let positions: Vec<usize> = (0..h.r()).collect();
    let mut choices: Vec<Vec<usize>> = Vec::new();
    for_each_k_subset(&positions, k, |c| choices.push(c.to_vec()));
    let chunks = h.len().div_ceil(CHUNK);
    let mut keys: Vec<u64> = par::flat_map_indices(chunks, |c| {
        let end = ((c + 1) * CHUNK).min(h.len());
        let mut out = Vec::with_capacity((end - c * CHUNK) * choices.len());
        for i in c * CHUNK..end {
            let e = h.edge(i);
            for choice in &choices {
                out.push(choice.iter().fold(0u64, |acc, &p| (acc << bits) | e[p] as u64));
            }
        }
        out
    });
    par::sort_unstable(&mut keys);
    let distinct = keys.windows(2).filter(|w| w[0] != w[1]).count() + usize::from(!keys.is_empty());
    Ok(distinct as u64)
}

/// Number of `k`-subsets of vertices lying in no edge.
pub fn zero_degree_subsets(h: &Hypergraph, k: usize) -> Result<BigUint> {
    let covered = covered_subsets(h, k)?;
    Ok(binomial(h.n() as u64, k as u64) - BigUint::from(covered))
}

/// Assembles a [`CountReport`]. `meta` is `None` for hypergraphs of unknown
/// origin, which then carry no prediction.
pub fn density_report(h: &Hypergraph, meta: Option<&ConstructionMeta>) -> Result<CountReport> {
    let r = h.r();
    let n = h.n();
    let predicted = match meta {
        Some(meta) => predicted_edges(meta)?,
        None => None,
    };
    let upper_bound = linear_upper_bound(r, n as u64);
    let actual = BigRational::from_integer(BigInt::from(h.len()));
    let density = if upper_bound.is_zero() {
        BigRational::zero()
    } else {
        actual / &upper_bound
    };
    Ok(CountReport {
        r,
        n,
        actual: h.len() as u64,
        predicted,
        upper_bound,
        density,
        zero_degree: zero_degree_subsets(h, r - 1)?,
    })
}

fn predicted_edges(meta: &ConstructionMeta) -> Result<Option<BigUint>> {
    Ok(match (meta.kind, meta.group) {
        (ConstructionKind::ModSum, GroupSpec::Cyclic { n }) => {
            Some(predicted_mod_sum_edges(n as u64)?)
        }
        (ConstructionKind::Product, GroupSpec::Product { m, d }) => {
            let shadows = build_binary(meta.r, d)?.len();
            Some(BigUint::from(m).pow(meta.r as u32 - 1) * BigUint::from(shadows))
        }
        _ => None,
    })
}

/// Exact count of zero-sum `k`-subsets of `Z_2^d`, next to the heuristic
/// `C(2^d, k) / 2^d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZeroSumCount {
    pub d: u32,
    pub k: usize,
    pub count: u64,
    pub heuristic: BigRational,
}

impl ZeroSumCount {
    /// `count / heuristic`; 0 when the heuristic is 0.
    pub fn ratio(&self) -> BigRational {
        if self.heuristic.is_zero() {
            BigRational::zero()
        } else {
            BigRational::from_integer(BigInt::from(self.count)) / &self.heuristic
        }
    }
}

pub fn count_zero_sum_subsets(d: u32, k: usize, budget: u128) -> Result<ZeroSumCount> {
    let order = GroupSpec::binary(d)?.order();
    let needed = binomial_u128(order as u64, k as u64).unwrap_or(u128::MAX);
    if needed > budget {
        return Err(Error::BudgetExceeded {
            what: "zero-sum subset enumeration",
            needed,
            budget,
        });
    }
    let count = if k == 0 {
        1
    } else {
        let per_first = par::flat_map_indices(order as usize, |first| {
            let mut c = 0u64;
            for_each_k_subset_of_range(first as u32 + 1, order, k - 1, |rest| {
                if rest.iter().fold(first as u32, |a, &b| a ^ b) == 0 {
                    c += 1;
                }
            });
            vec![c]
        });
        per_first.iter().sum()
    };
    Ok(ZeroSumCount {
        d,
        k,
        count,
        heuristic: BigRational::new(
            BigInt::from(binomial(order as u64, k as u64)),
            BigInt::from(order),
        ),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{build_auto, build_mod_sum, build_product};

    fn ratio(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn mod_sum_formulas() {
        for (n, edges, zeros) in [(4u64, 0u32, 4u32), (6, 2, 12), (8, 8, 24)] {
            assert_eq!(predicted_mod_sum_edges(n).unwrap(), BigUint::from(edges));
            assert_eq!(predicted_mod_sum_zero_triples(n).unwrap(), BigUint::from(zeros));
        }
        assert!(matches!(predicted_mod_sum_edges(7), Err(Error::Domain(_))));
        assert!(predicted_mod_sum_zero_triples(2).is_err());
        // n=4: no edges, so all C(4,3) triples have degree 0
        let h = build_mod_sum(4).unwrap();
        assert_eq!(zero_degree_subsets(&h, 3).unwrap(), BigUint::from(4u32));
    }

    #[test]
    fn upper_bound_examples() {
        assert_eq!(linear_upper_bound(4, 6), ratio(5, 1));
        assert_eq!(linear_upper_bound(5, 8), ratio(14, 1));
        assert_eq!(linear_upper_bound(5, 9), ratio(126, 5));
        assert_eq!(linear_upper_bound(3, 7), ratio(7, 1));
        assert_eq!(linear_upper_bound(4, 8), ratio(14, 1));
    }

    #[test]
    fn report_for_mod_sum() {
        let (h, meta) = build_auto(4, 8).unwrap();
        let rep = density_report(&h, Some(&meta)).unwrap();
        assert_eq!(rep.actual, 8);
        assert_eq!(rep.predicted, Some(BigUint::from(8u32)));
        assert_eq!(rep.upper_bound, ratio(14, 1));
        assert_eq!(rep.density, ratio(4, 7));
        assert_eq!(rep.zero_degree, BigUint::from(24u32));
        assert_eq!(rep.prediction_holds(), Some(true));
        assert!(rep.within_upper_bound());
    }

    #[test]
    fn report_for_product_and_empty() {
        let h = build_product(5, 2, 4).unwrap();
        let meta = ConstructionMeta::new(
            ConstructionKind::Product,
            GroupSpec::product(2, 4).unwrap(),
            5,
            32,
        )
        .unwrap();
        let rep = density_report(&h, Some(&meta)).unwrap();
        assert_eq!(rep.predicted, Some(BigUint::from(16u32 * 168)));
        assert_eq!(rep.prediction_holds(), Some(true));

        let empty = Hypergraph::empty(4, 10).unwrap();
        let rep = density_report(&empty, None).unwrap();
        assert!(rep.density.is_zero());
        assert_eq!(rep.predicted, None);
        assert_eq!(rep.zero_degree, BigUint::from(120u32));
    }

    #[test]
    fn covered_subsets_fast_path_matches_index() {
        for h in [build_mod_sum(20).unwrap(), build_product(5, 2, 4).unwrap()] {
            for k in 1..=h.r() {
                let via_index = h.build_index(k).unwrap().len() as u64;
                assert_eq!(covered_subsets(&h, k).unwrap(), via_index);
            }
        }
        // 64-bit packing does not fit 3 vertices of 22 bits: index path
        let big = Hypergraph::new(3, 1 << 22, [[0, 1, (1 << 22) - 1], [0, 2, 5]]).unwrap();
        assert_eq!(covered_subsets(&big, 3).unwrap(), 2);
        assert_eq!(covered_subsets(&big, 2).unwrap(), 6);
    }

    #[test]
    fn zero_sum_examples() {
        let c = count_zero_sum_subsets(2, 3, 1 << 20).unwrap();
        assert_eq!(c.count, 1);
        for d in 1..=5 {
            assert_eq!(count_zero_sum_subsets(d, 1, 1 << 20).unwrap().count, 1);
            assert_eq!(count_zero_sum_subsets(d, 2, 1 << 20).unwrap().count, 0);
        }
        // pinned from a separate enumeration
        assert_eq!(count_zero_sum_subsets(4, 4, 1 << 20).unwrap().count, 140);
        assert_eq!(count_zero_sum_subsets(5, 5, 1 << 20).unwrap().count, 6293);
        assert_eq!(count_zero_sum_subsets(3, 4, 1 << 20).unwrap().ratio(), ratio(8, 5));
        assert!(matches!(
            count_zero_sum_subsets(10, 5, 1000),
            Err(Error::BudgetExceeded { .. })
        ));
    }
}
