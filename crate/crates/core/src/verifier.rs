//! Forbidden-configuration checks.
//!
//! `F_r(v, e)` is the family of all `r`-graphs with `e` edges on at most `v`
//! vertices. A hypergraph contains a member of it exactly when some `e` of its
//! edges have a union of at most `v` vertices, so every check here reduces to
//! searching for such edge sets. Certificates are edge positions in the
//! canonical edge order.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::par;
use crate::subsets::{binomial_u128, for_each_k_subset, for_each_k_subset_of_range};

/// Certificates kept per report unless the caller asks otherwise.
pub const DEFAULT_CERT_CAP: usize = 100;
/// Largest number of edge subsets [`naive_check`] will enumerate.
pub const DEFAULT_NAIVE_BUDGET: u128 = 50_000_000;
/// Largest number of candidate edges `C(n, r)` [`max_search`] accepts.
pub const DEFAULT_SEARCH_BUDGET: u128 = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ForbiddenFamily {
    /// Maximum number of vertices spanned.
    pub v: usize,
    /// Number of edges.
    pub e: usize,
}

impl ForbiddenFamily {
    pub fn new(v: usize, e: usize) -> Self {
        ForbiddenFamily { v, e }
    }

    /// `F_r(r+1, 2)`: two edges sharing `r - 1` vertices.
    pub fn linear(r: usize) -> Self {
        ForbiddenFamily::new(r + 1, 2)
    }

    /// `F_r(r+2, 3)`: three edges on at most `r + 2` vertices.
    pub fn sparse3(r: usize) -> Self {
        ForbiddenFamily::new(r + 2, 3)
    }

    pub fn validate(&self, r: usize) -> Result<()> {
        if self.e < 2 {
            return Err(Error::usage(format!("family {self}: e must be at least 2")));
        }
        if self.v < r + 1 || self.v > self.e * r {
            return Err(Error::usage(format!(
                "family {self}: v must lie in {}..={} for r={r}",
                r + 1,
                self.e * r
            )));
        }
        Ok(())
    }
}

impl fmt::Display for ForbiddenFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.v, self.e)
    }
}

impl FromStr for ForbiddenFamily {
    type Err = Error;

    /// Parses `v,e`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::usage(format!("expected `v,e`, got {s:?}"));
        let (v, e) = s.split_once(',').ok_or_else(bad)?;
        Ok(ForbiddenFamily::new(
            v.trim().parse().map_err(|_| bad())?,
            e.trim().parse().map_err(|_| bad())?,
        ))
    }
}

/// A set of edges (by position, increasing) spanning at most `v` vertices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Certificate {
    pub edges: Vec<usize>,
    pub union_size: usize,
}

impl Certificate {
    /// Recomputes the union from scratch and checks it against `family`.
    pub fn is_violation(&self, h: &Hypergraph, family: ForbiddenFamily) -> bool {
        let distinct: BTreeSet<usize> = self.edges.iter().copied().collect();
        distinct.len() == family.e
            && distinct.len() == self.edges.len()
            && self.edges.iter().all(|&i| i < h.len())
            && union_size(self.edges.iter().map(|&i| h.edge(i))) == self.union_size
            && self.union_size <= family.v
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ViolationReport {
    pub family: ForbiddenFamily,
    /// The lexicographically smallest certificates, at most `cap` of them.
    pub certificates: Vec<Certificate>,
    /// Number of violations found, including those not stored.
    pub total: u64,
    pub cap: usize,
}

impl ViolationReport {
    pub fn passed(&self) -> bool {
        self.total == 0
    }

    pub fn is_truncated(&self) -> bool {
        self.total > self.certificates.len() as u64
    }
}

/// Bounded, ordered certificate collector.
#[derive(Debug)]
struct Sink {
    cap: usize,
    certs: BTreeSet<Certificate>,
    total: u64,
}

impl Sink {
    fn new(cap: usize) -> Self {
        Sink {
            cap,
            certs: BTreeSet::new(),
            total: 0,
        }
    }

    fn push(&mut self, edges: Vec<usize>, union_size: usize) {
        self.total += 1;
        if self.cap == 0 {
            return;
        }
        let cert = Certificate { edges, union_size };
        if self.certs.len() < self.cap {
            self.certs.insert(cert);
        } else if self.certs.last().is_some_and(|last| cert < *last) {
            self.certs.insert(cert);
            self.certs.pop_last();
        }
    }

    fn merge(mut self, other: Sink) -> Sink {
        self.total += other.total;
        self.certs.extend(other.certs);
        while self.certs.len() > self.cap {
            self.certs.pop_last();
        }
        self
    }

    fn into_report(self, family: ForbiddenFamily) -> ViolationReport {
        ViolationReport {
            family,
            certificates: self.certs.into_iter().collect(),
            total: self.total,
            cap: self.cap,
        }
    }
}

/// Writes the union and the intersection of two sorted sets.
fn merge_sorted(a: &[u32], b: &[u32], union: &mut Vec<u32>, shared: &mut Vec<u32>) {
    union.clear();
    shared.clear();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                union.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                union.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                union.push(a[i]);
                shared.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    union.extend_from_slice(&a[i..]);
    union.extend_from_slice(&b[j..]);
}

fn union_size<'a>(edges: impl Iterator<Item = &'a [u32]>) -> usize {
    let mut all: Vec<u32> = edges.flatten().copied().collect();
    all.sort_unstable();
    all.dedup();
    all.len()
}

pub fn check_linear(h: &Hypergraph) -> ViolationReport {
    check_linear_capped(h, DEFAULT_CERT_CAP)
}

/// Reports every pair of edges that share an `(r-1)`-subset, i.e. every
/// `(r-1)`-subset of degree at least 2 (as the pairs of edges over it).
pub fn check_linear_capped(h: &Hypergraph, cap: usize) -> ViolationReport {
    let r = h.r();
    let family = ForbiddenFamily::linear(r);
    let index = h
        .build_index(r - 1)
        .expect("r - 1 lies in 1..=r for r >= 2");
    let sink = par::fold_indices(
        index.len(),
        || Sink::new(cap),
        |mut sink, i| {
            let p = index.postings(i);
            for (a, &x) in p.iter().enumerate() {
                for &y in &p[a + 1..] {
                    sink.push(vec![x as usize, y as usize], r + 1);
                }
            }
            sink
        },
        Sink::merge,
    );
    sink.into_report(family)
}

pub fn check_sparse3(h: &Hypergraph) -> ViolationReport {
    check_sparse3_capped(h, DEFAULT_CERT_CAP)
}

/// Reports every triple of edges spanning at most `r + 2` vertices.
///
/// Each pair in such a triple shares at least `r - 2` vertices, so pairs are
/// drawn from the `(r-2)`-subset index. A pair sharing exactly `r - 2`
/// vertices has a union `U` of `r + 2` vertices, and the third edge is `U`
/// minus two vertices of the intersection; those are direct lookups. Pairs
/// sharing `r - 1` vertices are searched generally, and a triple is reported
/// only from the smallest such pair it contains.
pub fn check_sparse3_capped(h: &Hypergraph, cap: usize) -> ViolationReport {
    let r = h.r();
    let family = ForbiddenFamily::sparse3(r);
    if r == 2 {
        return check_forbidden_capped(h, family, cap).expect("r+2 <= 3r for r = 2");
    }
    let index = h.build_index(r - 2).expect("r - 2 lies in 1..=r");
    let (light, mut heavy) = par::fold_indices(
        index.len(),
        || (Sink::new(cap), Vec::new()),
        |(mut sink, mut heavy), i| {
            let p = index.postings(i);
            let mut union = Vec::with_capacity(r + 2);
            let mut shared = Vec::with_capacity(r);
            let mut third = Vec::with_capacity(r);
            for (k, &a) in p.iter().enumerate() {
                for &b in &p[k + 1..] {
                    let (ea, eb) = (h.edge(a as usize), h.edge(b as usize));
                    merge_sorted(ea, eb, &mut union, &mut shared);
                    if shared.len() > r - 2 {
                        heavy.push((a, b));
                        continue;
                    }
                    for_each_k_subset(&shared, 2, |drop| {
                        third.clear();
                        third.extend(union.iter().filter(|v| !drop.contains(v)));
                        if let Some(c) = h.position(&third) {
                            if c > b as usize {
                                sink.push(vec![a as usize, b as usize, c], r + 2);
                            }
                        }
                    });
                }
            }
            (sink, heavy)
        },
        |(s1, mut h1), (s2, h2)| {
            h1.extend(h2);
            (s1.merge(s2), h1)
        },
    );
    par::sort_unstable(&mut heavy);
    heavy.dedup();

    let is_heavy = |x: usize, y: usize| {
        let (x, y) = (x.min(y), x.max(y));
        heavy.binary_search(&(x as u32, y as u32)).is_ok()
    };
    let sink = par::fold_indices(
        heavy.len(),
        || Sink::new(cap),
        |mut sink, i| {
            let (a, b) = (heavy[i].0 as usize, heavy[i].1 as usize);
            let mut candidates: Vec<u32> = Vec::new();
            for_each_k_subset(h.edge(a), r - 2, |s| candidates.extend_from_slice(index.get(s)));
            candidates.sort_unstable();
            candidates.dedup();
            for &c in &candidates {
                let c = c as usize;
                if c == a || c == b {
                    continue;
                }
                let size = union_size([a, b, c].iter().map(|&x| h.edge(x)));
                if size > r + 2 {
                    continue;
                }
                let mut t = [a, b, c];
                t.sort_unstable();
                // smallest heavy pair of the triple, in lexicographic order
                let first = [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])]
                    .into_iter()
                    .find(|&(x, y)| is_heavy(x, y));
                if first == Some((a, b)) {
                    sink.push(t.to_vec(), size);
                }
            }
            sink
        },
        Sink::merge,
    );
    sink.merge(light).into_report(family)
}

pub fn check_forbidden(h: &Hypergraph, family: ForbiddenFamily) -> Result<ViolationReport> {
    check_forbidden_capped(h, family, DEFAULT_CERT_CAP)
}

/// Reports every `e`-set of edges whose union has at most `v` vertices.
///
/// Depth-first over edges in increasing position. Whenever the remaining
/// vertex slack is below `r`, the next edge has to meet the current union, so
/// candidates come from the incidence lists of the union's vertices.
pub fn check_forbidden_capped(
    h: &Hypergraph,
    family: ForbiddenFamily,
    cap: usize,
) -> Result<ViolationReport> {
    family.validate(h.r())?;
    let mut incidence: Vec<Vec<u32>> = vec![Vec::new(); h.n() as usize];
    for (pos, e) in h.edges().enumerate() {
        for &x in e {
            incidence[x as usize].push(pos as u32);
        }
    }
    let search = ExtensionSearch {
        h,
        family,
        incidence: &incidence,
    };
    let sink = par::fold_indices(
        h.len(),
        || (Sink::new(cap), Scratch::new(h.n())),
        |(mut sink, mut scratch), first| {
            scratch.add(h.edge(first));
            scratch.chosen.push(first);
            search.extend(&mut scratch, &mut sink);
            scratch.chosen.pop();
            scratch.remove(h.edge(first), 0);
            (sink, scratch)
        },
        |(a, s), (b, _)| (a.merge(b), s),
    )
    .0;
    Ok(sink.into_report(family))
}

struct Scratch {
    counts: Vec<u32>,
    members: Vec<u32>,
    chosen: Vec<usize>,
}

impl Scratch {
    fn new(n: u32) -> Self {
        Scratch {
            counts: vec![0; n as usize],
            members: Vec::new(),
            chosen: Vec::new(),
        }
    }

    fn add(&mut self, edge: &[u32]) {
        for &x in edge {
            let c = &mut self.counts[x as usize];
            *c += 1;
            if *c == 1 {
                self.members.push(x);
            }
        }
    }

    /// Undoes `add(edge)`; `before` is the union size prior to that call.
    fn remove(&mut self, edge: &[u32], before: usize) {
        for &x in edge {
            self.counts[x as usize] -= 1;
        }
        self.members.truncate(before);
    }
}

struct ExtensionSearch<'a> {
    h: &'a Hypergraph,
    family: ForbiddenFamily,
    incidence: &'a [Vec<u32>],
}

impl ExtensionSearch<'_> {
    fn extend(&self, s: &mut Scratch, sink: &mut Sink) {
        let ForbiddenFamily { v, e } = self.family;
        if s.chosen.len() == e {
            sink.push(s.chosen.clone(), s.members.len());
            return;
        }
        let m = self.h.len();
        let last = *s.chosen.last().expect("search starts from one edge");
        if m - last - 1 < e - s.chosen.len() {
            return;
        }
        let slack = v - s.members.len();
        let candidates: Vec<usize> = if slack < self.h.r() {
            let mut c: Vec<usize> = s
                .members
                .iter()
                .flat_map(|&x| {
                    let inc = &self.incidence[x as usize];
                    let from = inc.partition_point(|&p| p as usize <= last);
                    inc[from..].iter().map(|&p| p as usize)
                })
                .collect();
            c.sort_unstable();
            c.dedup();
            c
        } else {
            (last + 1..m).collect()
        };
        for c in candidates {
            let edge = self.h.edge(c);
            let before = s.members.len();
            s.add(edge);
            if s.members.len() <= v {
                s.chosen.push(c);
                self.extend(s, sink);
                s.chosen.pop();
            }
            s.remove(edge, before);
        }
    }
}

/// Plain enumeration of all `e`-subsets of the edge list; the reference the
/// pruned checks are tested against.
pub fn naive_check(h: &Hypergraph, family: ForbiddenFamily, budget: u128) -> Result<ViolationReport> {
    naive_check_capped(h, family, budget, DEFAULT_CERT_CAP)
}

pub fn naive_check_capped(
    h: &Hypergraph,
    family: ForbiddenFamily,
    budget: u128,
    cap: usize,
) -> Result<ViolationReport> {
    family.validate(h.r())?;
    let m = h.len();
    let needed = binomial_u128(m as u64, family.e as u64).unwrap_or(u128::MAX);
    if needed > budget {
        return Err(Error::BudgetExceeded {
            what: "naive check edge subsets",
            needed,
            budget,
        });
    }
    let mut sink = Sink::new(cap);
    for_each_k_subset_of_range(0, m as u32, family.e, |set| {
        let size = union_size(set.iter().map(|&i| h.edge(i as usize)));
        if size <= family.v {
            sink.push(set.iter().map(|&i| i as usize).collect(), size);
        }
    });
    Ok(sink.into_report(family))
}

/// Exact `ex(n, F)` for tiny instances: the largest number of edges of an
/// `r`-graph on `n` vertices avoiding every family in `families`, with one
/// extremal witness.
///
/// Branch and bound over all `C(n, r)` candidate edges in lexicographic
/// order: include-first, pruned when the chosen edges plus all remaining
/// candidates cannot beat the best found so far.
pub fn max_search(
    r: usize,
    n: u32,
    families: &[ForbiddenFamily],
    budget: u128,
) -> Result<(usize, Hypergraph)> {
    for f in families {
        f.validate(r)?;
    }
    Hypergraph::empty(r, n)?;
    let needed = binomial_u128(n as u64, r as u64).unwrap_or(u128::MAX);
    if needed > budget {
        return Err(Error::BudgetExceeded {
            what: "extremal search candidate edges",
            needed,
            budget,
        });
    }
    let mut candidates = Vec::new();
    for_each_k_subset_of_range(0, n, r, |s| candidates.push(s.to_vec()));
    let mut bnb = BranchAndBound {
        candidates: &candidates,
        families,
        chosen: Vec::new(),
        best: Vec::new(),
    };
    bnb.run(0);
    let witness = Hypergraph::new(r, n, bnb.best.iter().map(|&i| &candidates[i]))?;
    Ok((witness.len(), witness))
}

struct BranchAndBound<'a> {
    candidates: &'a [Vec<u32>],
    families: &'a [ForbiddenFamily],
    chosen: Vec<usize>,
    best: Vec<usize>,
}

impl BranchAndBound<'_> {
    fn run(&mut self, i: usize) {
        let remaining = self.candidates.len() - i;
        if self.chosen.len() + remaining <= self.best.len() {
            return;
        }
        if i == self.candidates.len() {
            self.best = self.chosen.clone();
            return;
        }
        if self.compatible(i) {
            self.chosen.push(i);
            self.run(i + 1);
            self.chosen.pop();
        }
        self.run(i + 1);
    }

    /// Whether adding candidate `i` keeps every family absent.
    fn compatible(&self, i: usize) -> bool {
        let new = &self.candidates[i];
        self.families.iter().all(|f| {
            if self.chosen.len() + 1 < f.e {
                return true;
            }
            let mut hit = false;
            for_each_k_subset(&self.chosen, f.e - 1, |others| {
                if !hit {
                    let size = union_size(
                        others
                            .iter()
                            .map(|&j| self.candidates[j].as_slice())
                            .chain(std::iter::once(new.as_slice())),
                    );
                    hit = size <= f.v;
                }
            });
            !hit
        })
    }
}
