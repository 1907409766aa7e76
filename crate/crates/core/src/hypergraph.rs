//! `r`-uniform hypergraphs with canonical edge order, and subset indexes.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::par;
use crate::subsets::{for_each_k_subset, is_sorted_subset};

/// An `r`-uniform hypergraph on vertices `0..n`.
///
/// Edges are stored flat, `r` vertices per edge, each edge strictly
/// increasing and the edge list sorted lexicographically without duplicates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Hypergraph {
    r: usize,
    n: u32,
    flat: Vec<u32>,
}

impl Hypergraph {
    pub fn empty(r: usize, n: u32) -> Result<Self> {
        check_uniformity(r)?;
        Ok(Hypergraph {
            r,
            n,
            flat: Vec::new(),
        })
    }

    /// Builds a hypergraph from edges given in any order; each edge may list
    /// its vertices in any order.
    pub fn new<I, E>(r: usize, n: u32, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = E>,
        E: AsRef<[u32]>,
    {
        check_uniformity(r)?;
        let mut flat = Vec::new();
        for edge in edges {
            let edge = edge.as_ref();
            if edge.len() != r {
                return Err(Error::usage(format!(
                    "edge {edge:?} has {} vertices, expected {r}",
                    edge.len()
                )));
            }
            let start = flat.len();
            flat.extend_from_slice(edge);
            let e = &mut flat[start..];
            e.sort_unstable();
            if let Some(&v) = e.iter().find(|&&v| v >= n) {
                return Err(Error::usage(format!("vertex {v} out of range 0..{n}")));
            }
            if e.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::usage(format!("edge {edge:?} repeats a vertex")));
            }
        }
        let mut h = Hypergraph { r, n, flat };
        h.canonicalize();
        if let Some(i) = (1..h.len()).find(|&i| h.edge(i - 1) == h.edge(i)) {
            return Err(Error::usage(format!("duplicate edge {:?}", h.edge(i))));
        }
        Ok(h)
    }

    /// Wraps flat storage whose edges are already strictly increasing, in
    /// range and pairwise distinct; only the edge order is normalized.
    pub(crate) fn from_sorted_edges(r: usize, n: u32, flat: Vec<u32>) -> Self {
        debug_assert_eq!(flat.len() % r, 0);
        let mut h = Hypergraph { r, n, flat };
        h.canonicalize();
        debug_assert!((1..h.len()).all(|i| h.edge(i - 1) < h.edge(i)));
        h
    }

    fn canonicalize(&mut self) {
        let r = self.r;
        let m = self.flat.len() / r;
        if (1..m).all(|i| self.flat[(i - 1) * r..i * r] < self.flat[i * r..(i + 1) * r]) {
            return;
        }
        let mut order: Vec<u32> = (0..m as u32).collect();
        let flat = &self.flat;
        par::sort_unstable_by(&mut order, |&a, &b| {
            let (a, b) = (a as usize * r, b as usize * r);
            flat[a..a + r].cmp(&flat[b..b + r])
        });
        let mut out = Vec::with_capacity(self.flat.len());
        for i in order {
            let i = i as usize * r;
            out.extend_from_slice(&self.flat[i..i + r]);
        }
        self.flat = out;
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        self.flat.len() / self.r
    }

    pub fn is_empty(&self) -> bool {
        self.flat.is_empty()
    }

    pub fn edge(&self, i: usize) -> &[u32] {
        &self.flat[i * self.r..(i + 1) * self.r]
    }

    pub fn edges(&self) -> std::slice::ChunksExact<'_, u32> {
        self.flat.chunks_exact(self.r)
    }

    /// Position of `edge` (sorted) in the canonical edge list.
    pub fn position(&self, edge: &[u32]) -> Option<usize> {
        if edge.len() != self.r {
            return None;
        }
        let (mut lo, mut hi) = (0, self.len());
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.edge(mid).cmp(edge) {
                Ordering::Less => lo = mid + 1,
                Ordering::Greater => hi = mid,
                Ordering::Equal => return Some(mid),
            }
        }
        None
    }

    /// Number of edges containing every vertex of `subset`.
    pub fn degree(&self, subset: &[u32]) -> Result<usize> {
        let s = self.check_subset(subset)?;
        Ok(self.edges().filter(|e| is_sorted_subset(&s, e)).count())
    }

    fn check_subset(&self, subset: &[u32]) -> Result<Vec<u32>> {
        if subset.len() > self.r {
            return Err(Error::usage(format!(
                "subset of size {} exceeds uniformity {}",
                subset.len(),
                self.r
            )));
        }
        let mut s = subset.to_vec();
        s.sort_unstable();
        if let Some(&v) = s.iter().find(|&&v| v >= self.n) {
            return Err(Error::usage(format!("vertex {v} out of range 0..{}", self.n)));
        }
        if s.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::usage("subset repeats a vertex"));
        }
        Ok(s)
    }

    /// Indexes every `k`-subset that occurs in some edge.
    pub fn build_index(&self, k: usize) -> Result<SubsetIndex> {
        if k == 0 || k > self.r {
            return Err(Error::usage(format!(
                "subset size {k} must lie in 1..={}",
                self.r
            )));
        }
        let r = self.r;
        // (edge, positions inside the edge) for every k-subset of every edge
        let positions: Vec<usize> = (0..r).collect();
        let mut choices: Vec<Vec<u8>> = Vec::new();
        for_each_k_subset(&positions, k, |c| {
            choices.push(c.iter().map(|&p| p as u8).collect())
        });
        let mut entries: Vec<(u32, u32)> = par::flat_map_indices(self.len(), |e| {
            (0..choices.len() as u32).map(|c| (e as u32, c)).collect()
        });
        let key = |&(e, c): &(u32, u32)| {
            let edge = self.edge(e as usize);
            choices[c as usize].iter().map(move |&p| edge[p as usize])
        };
        par::sort_unstable_by(&mut entries, |a, b| {
            key(a).cmp(key(b)).then(a.0.cmp(&b.0))
        });

        let mut index = SubsetIndex {
            k,
            subsets: Vec::new(),
            offsets: vec![0],
            postings: Vec::with_capacity(entries.len()),
        };
        for (i, entry) in entries.iter().enumerate() {
            if i == 0 || key(&entries[i - 1]).ne(key(entry)) {
                if i > 0 {
                    index.offsets.push(index.postings.len());
                }
                index.subsets.extend(key(entry));
            }
            index.postings.push(entry.0);
        }
        if !entries.is_empty() {
            index.offsets.push(index.postings.len());
        }
        Ok(index)
    }
}

fn check_uniformity(r: usize) -> Result<()> {
    if !(2..=64).contains(&r) {
        return Err(Error::usage(format!("uniformity {r} must lie in 2..=64")));
    }
    Ok(())
}

/// Map from each `k`-subset occurring in some edge to the positions of the
/// edges containing it. Subsets iterate in lexicographic order and each
/// posting list is increasing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetIndex {
    k: usize,
    subsets: Vec<u32>,
    offsets: Vec<usize>,
    postings: Vec<u32>,
}

impl SubsetIndex {
    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of distinct indexed subsets.
    pub fn len(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn subset(&self, i: usize) -> &[u32] {
        &self.subsets[i * self.k..(i + 1) * self.k]
    }

    pub fn postings(&self, i: usize) -> &[u32] {
        &self.postings[self.offsets[i]..self.offsets[i + 1]]
    }

    /// Edge positions containing the sorted subset `s`; empty when absent.
    pub fn get(&self, s: &[u32]) -> &[u32] {
        if s.len() != self.k {
            return &[];
        }
        let (mut lo, mut hi) = (0, self.len());
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.subset(mid).cmp(s) {
                Ordering::Less => lo = mid + 1,
                Ordering::Greater => hi = mid,
                Ordering::Equal => return self.postings(mid),
            }
        }
        &[]
    }

    pub fn degree(&self, s: &[u32]) -> usize {
        self.get(s).len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&[u32], &[u32])> + '_ {
        (0..self.len()).map(move |i| (self.subset(i), self.postings(i)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn h6() -> Hypergraph {
        Hypergraph::new(4, 6, [[0, 1, 2, 4], [1, 3, 4, 5]]).unwrap()
    }

    #[test]
    fn degree_examples() {
        let h = Hypergraph::new(4, 5, [[0, 1, 2, 3]]).unwrap();
        assert_eq!(h.degree(&[1, 2]).unwrap(), 1);
        assert_eq!(h.degree(&[0, 4]).unwrap(), 0);
        assert_eq!(h.degree(&[]).unwrap(), 1);
        assert_eq!(h6().degree(&[1, 4]).unwrap(), 2);
        assert_eq!(h6().degree(&[4, 1]).unwrap(), 2);
    }

    #[test]
    fn degree_rejects_bad_subsets() {
        let h = h6();
        assert!(matches!(h.degree(&[6]), Err(Error::Usage(_))));
        assert!(h.degree(&[1, 1]).is_err());
        assert!(h.degree(&[0, 1, 2, 3, 4]).is_err());
    }

    #[test]
    fn construction_validates_edges() {
        assert!(Hypergraph::new(4, 6, [[0, 1, 2]]).is_err());
        assert!(Hypergraph::new(3, 6, [[0, 1, 6]]).is_err());
        assert!(Hypergraph::new(3, 6, [[0, 1, 1]]).is_err());
        assert!(Hypergraph::new(3, 6, [[0, 1, 2], [2, 1, 0]]).is_err());
        assert!(Hypergraph::empty(1, 3).is_err());
        let h = Hypergraph::new(3, 6, [[5, 1, 2], [0, 4, 3]]).unwrap();
        assert_eq!(h.edge(0), &[0, 3, 4]);
        assert_eq!(h.edge(1), &[1, 2, 5]);
        assert_eq!(h.position(&[1, 2, 5]), Some(1));
        assert_eq!(h.position(&[1, 2, 4]), None);
    }

    #[test]
    fn index_examples() {
        let empty = Hypergraph::empty(4, 10).unwrap();
        assert!(empty.build_index(2).unwrap().is_empty());

        let single = Hypergraph::new(3, 3, [[0, 1, 2]]).unwrap();
        let idx = single.build_index(2).unwrap();
        assert_eq!(idx.len(), 3);
        assert!(idx.iter().all(|(_, p)| p == [0]));
        assert_eq!(idx.subset(0), &[0, 1]);
        assert_eq!(idx.subset(2), &[1, 2]);

        let idx = h6().build_index(3).unwrap();
        assert_eq!(idx.len(), 8);
        assert!(idx.iter().all(|(_, p)| p.len() == 1));
        let idx2 = h6().build_index(2).unwrap();
        assert_eq!(idx2.get(&[1, 4]), &[0, 1]);
        assert_eq!(idx2.degree(&[0, 5]), 0);
        assert!(h6().build_index(0).is_err());
        assert!(h6().build_index(5).is_err());
    }

    fn arb_hypergraph() -> impl Strategy<Value = (Hypergraph, Vec<Vec<u32>>)> {
        (3usize..=5, 6u32..=10).prop_flat_map(|(r, n)| {
            let edge = proptest::sample::subsequence((0..n).collect::<Vec<_>>(), r);
            proptest::collection::btree_set(edge, 0..14).prop_map(move |set| {
                let edges: Vec<Vec<u32>> = set.into_iter().collect();
                (Hypergraph::new(r, n, &edges).unwrap(), edges)
            })
        })
    }

    proptest! {
        #[test]
        fn double_counting((h, _) in arb_hypergraph()) {
            let r = h.r();
            let idx = h.build_index(r - 1).unwrap();
            let total: usize = idx.iter().map(|(_, p)| p.len()).sum();
            prop_assert_eq!(total, r * h.len());
            for (s, p) in idx.iter() {
                prop_assert_eq!(h.degree(s).unwrap(), p.len());
            }
        }

        #[test]
        fn insertion_order_is_irrelevant((h, mut edges) in arb_hypergraph(), seed in any::<u64>()) {
            use rand::seq::SliceRandom;
            use rand::SeedableRng;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            edges.shuffle(&mut rng);
            for e in edges.iter_mut() {
                e.shuffle(&mut rng);
            }
            let again = Hypergraph::new(h.r(), h.n(), &edges).unwrap();
            prop_assert_eq!(again, h);
        }

        #[test]
        fn index_covers_every_subset((h, _) in arb_hypergraph(), k in 1usize..=3) {
            let idx = h.build_index(k).unwrap();
            for (pos, e) in h.edges().enumerate() {
                for_each_k_subset(e, k, |s| {
                    assert!(idx.get(s).contains(&(pos as u32)));
                });
            }
        }
    }
}
