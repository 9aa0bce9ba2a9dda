//! Core data model: hypergraphs with explicit edge sets, integer vertex
//! labelings, elimination orders, r-sequences, and matchings.
//!
//! Vertices are 1-based ids `1..=n`. Edges are strictly ascending tuples of
//! distinct vertex ids, so edge sets have a canonical form and compare as
//! sets. Labels are arbitrary-precision integers because the standard
//! labeling of an ordered hypergraph uses `±2^i` and the exact LP recognizer
//! can emit large numerators.

use std::borrow::Borrow;
use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;
use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// Default cap on the number of k-subsets enumerated by [`materialize`].
/// Equals C(30,3), so explicit materialization is allowed up to n = 30 for
/// k = 3.
pub const DEFAULT_SUBSET_LIMIT: u64 = 4060;

/// C(n, k), saturating at `u64::MAX`.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// A hyperedge: a strictly ascending tuple of distinct 1-based vertex ids.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge(Vec<u32>);

impl Edge {
    /// Builds an edge from vertices in any order. Rejects duplicates and the
    /// id 0.
    pub fn new(mut vertices: Vec<u32>) -> Result<Self> {
        vertices.sort_unstable();
        if vertices.first() == Some(&0) {
            return Err(Error::Invalid("vertex ids are 1-based, found 0".into()));
        }
        if vertices.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Invalid(format!(
                "duplicate vertex in edge {vertices:?}"
            )));
        }
        Ok(Edge(vertices))
    }

    pub fn vertices(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: u32) -> bool {
        self.0.binary_search(&v).is_ok()
    }
}

impl Borrow<[u32]> for Edge {
    fn borrow(&self) -> &[u32] {
        &self.0
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.0.iter().join(","))
    }
}

/// A k-hypergraph: an explicit set of k-element edges over vertices `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypergraph {
    k: usize,
    n: usize,
    edges: BTreeSet<Edge>,
}

impl Hypergraph {
    pub fn new(k: usize, n: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        if k == 0 {
            return Err(Error::Invalid(
                "edge cardinality k must be at least 1".into(),
            ));
        }
        let mut set = BTreeSet::new();
        for e in edges {
            if e.len() != k {
                return Err(Error::Invalid(format!(
                    "edge {e} has {} vertices, expected k = {k}",
                    e.len()
                )));
            }
            if let Some(&max) = e.vertices().last() {
                if max as usize > n {
                    return Err(Error::VertexOutOfRange { vertex: max, n });
                }
            }
            set.insert(e);
        }
        Ok(Hypergraph { k, n, edges: set })
    }

    /// The hypergraph with no edges.
    pub fn empty(k: usize, n: usize) -> Self {
        Hypergraph::new(k, n, []).expect("k >= 1")
    }

    /// The complete k-hypergraph: every k-subset of `1..=n` is an edge.
    pub fn complete(k: usize, n: usize) -> Self {
        let edges = (1..=n as u32)
            .combinations(k)
            .map(|c| Edge::new(c).expect("combinations are duplicate-free"));
        Hypergraph::new(k, n, edges).expect("k >= 1")
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = &Edge> {
        self.edges.iter()
    }

    /// Membership query for an ascending k-tuple.
    pub fn contains(&self, sorted_vertices: &[u32]) -> bool {
        debug_assert!(sorted_vertices.windows(2).all(|w| w[0] < w[1]));
        self.edges.contains(sorted_vertices)
    }
}

/// Role of a vertex within an elimination order: every k-set through a
/// dominating vertex inside its prefix is an edge; through an isolating
/// vertex, none is.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VertexRole {
    Dominating,
    Isolating,
}

impl fmt::Display for VertexRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexRole::Dominating => write!(f, "D"),
            VertexRole::Isolating => write!(f, "I"),
        }
    }
}

/// A permutation of `1..=n` in which every vertex carries a role. Positions
/// are 1-based to match the usual subscripts `v_1, ..., v_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EliminationOrder {
    entries: Vec<(u32, VertexRole)>,
}

impl EliminationOrder {
    /// Validates that the vertices form a permutation of `1..=len`.
    pub fn new(entries: Vec<(u32, VertexRole)>) -> Result<Self> {
        let n = entries.len();
        let mut seen = vec![false; n];
        for &(v, _) in &entries {
            if v == 0 || v as usize > n {
                return Err(Error::Invalid(format!(
                    "order mentions vertex {v}, outside 1..={n}"
                )));
            }
            if std::mem::replace(&mut seen[v as usize - 1], true) {
                return Err(Error::Invalid(format!("vertex {v} appears twice in order")));
            }
        }
        Ok(EliminationOrder { entries })
    }

    /// The identity order `1, 2, ..., n` with the given roles.
    pub fn from_roles(roles: &[VertexRole]) -> Self {
        let entries = roles
            .iter()
            .enumerate()
            .map(|(i, &r)| (i as u32 + 1, r))
            .collect();
        EliminationOrder { entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[(u32, VertexRole)] {
        &self.entries
    }

    /// Vertex at 1-based position `pos`.
    pub fn vertex(&self, pos: usize) -> u32 {
        self.entries[pos - 1].0
    }

    /// Role at 1-based position `pos`.
    pub fn role(&self, pos: usize) -> VertexRole {
        self.entries[pos - 1].1
    }

    pub fn roles(&self) -> impl Iterator<Item = VertexRole> + '_ {
        self.entries.iter().map(|e| e.1)
    }
}

/// An integer labeling of vertices. The labeling induces the implicit
/// hypergraph of all k-sets with nonnegative label sum, see [`materialize`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Labeling {
    k: usize,
    a: Vec<BigInt>,
}

impl Labeling {
    pub fn new(k: usize, a: Vec<BigInt>) -> Result<Self> {
        if k == 0 {
            return Err(Error::Invalid(
                "edge cardinality k must be at least 1".into(),
            ));
        }
        Ok(Labeling { k, a })
    }

    pub fn from_i64(k: usize, a: &[i64]) -> Result<Self> {
        Labeling::new(k, a.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }

    /// Label of the 1-based vertex `v`.
    pub fn label(&self, v: u32) -> Result<&BigInt> {
        if v == 0 || v as usize > self.a.len() {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.a.len(),
            });
        }
        Ok(&self.a[v as usize - 1])
    }

    pub fn labels(&self) -> &[BigInt] {
        &self.a
    }

    /// Unary encoding size `sum of |a(v)| + n`, the measure under which the
    /// matching problem over these instances stays hard.
    pub fn unary_size(&self) -> BigUint {
        let mut size = BigUint::from(self.a.len());
        for x in &self.a {
            size += x.magnitude();
        }
        size
    }
}

/// Sum of labels over a set of vertices; the empty sum is 0.
pub fn subset_sum(lab: &Labeling, subset: &[u32]) -> Result<BigInt> {
    let mut sum = BigInt::zero();
    for &v in subset {
        sum += lab.label(v)?;
    }
    Ok(sum)
}

/// The explicit hypergraph `{E : |E| = k, a(E) >= 0}` induced by a labeling,
/// built by enumerating all C(n,k) subsets. Refuses instances with more than
/// [`DEFAULT_SUBSET_LIMIT`] subsets; use [`materialize_with_limit`] to raise
/// the guard deliberately.
pub fn materialize(lab: &Labeling) -> Result<Hypergraph> {
    materialize_with_limit(lab, DEFAULT_SUBSET_LIMIT)
}

pub fn materialize_with_limit(lab: &Labeling, max_subsets: u64) -> Result<Hypergraph> {
    let n = lab.n();
    let k = lab.k();
    let count = binomial(n as u64, k as u64);
    if count > max_subsets {
        return Err(Error::TooLarge(format!(
            "materializing n={n}, k={k} needs {count} subsets (limit {max_subsets})"
        )));
    }
    let mut edges = Vec::new();
    for combo in (1..=n as u32).combinations(k) {
        let sum = subset_sum(lab, &combo)?;
        if !sum.is_negative() {
            edges.push(Edge(combo));
        }
    }
    Hypergraph::new(k, n, edges)
}

/// A set of pairwise-disjoint edges. Disjointness is enforced on
/// construction; perfection is relative to a hypergraph, see
/// [`is_perfect_matching`].
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Matching {
    edges: BTreeSet<Edge>,
}

impl Matching {
    pub fn new(edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        let mut covered = BTreeSet::new();
        let mut set = BTreeSet::new();
        for e in edges {
            for &v in e.vertices() {
                if !covered.insert(v) {
                    return Err(Error::Invalid(format!(
                        "matching edges overlap at vertex {v}"
                    )));
                }
            }
            set.insert(e);
        }
        Ok(Matching { edges: set })
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edges(&self) -> impl Iterator<Item = &Edge> {
        self.edges.iter()
    }

    pub fn covered_vertices(&self) -> BTreeSet<u32> {
        self.edges
            .iter()
            .flat_map(|e| e.vertices().iter().copied())
            .collect()
    }
}

/// True iff every member of `m` is an edge of `h`, members are pairwise
/// disjoint, and their union is exactly `1..=n`.
pub fn is_perfect_matching(h: &Hypergraph, m: &Matching) -> bool {
    let mut covered = 0usize;
    for e in m.edges() {
        if !h.contains(e.vertices()) {
            return false;
        }
        if e.vertices().last().is_some_and(|&v| v as usize > h.n()) {
            return false;
        }
        covered += e.len();
    }
    // Disjointness holds by the Matching invariant, so covering n vertices
    // within 1..=n means covering all of them.
    covered == h.n()
}

/// The integers `r_1..r_n` of the matching criterion for orderable
/// hypergraphs: starting from `r_{n+1} = 0`, each dominating position adds
/// k-1 and each isolating position subtracts 1, going backwards.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RSequence {
    values: Vec<i64>,
}

impl RSequence {
    pub fn new(values: Vec<i64>) -> Self {
        RSequence { values }
    }

    /// `r_j` for 1-based `j`; `r_{n+1}` is 0 by convention.
    pub fn r(&self, j: usize) -> i64 {
        if j == self.values.len() + 1 {
            0
        } else {
            self.values[j - 1]
        }
    }

    /// Values `r_1, ..., r_n` in index order.
    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn all_nonnegative(&self) -> bool {
        self.values.iter().all(|&r| r >= 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn binomial_small_table() {
        assert_eq!(binomial(5, 3), 10);
        assert_eq!(binomial(30, 3), DEFAULT_SUBSET_LIMIT);
        assert_eq!(binomial(4, 5), 0);
        assert_eq!(binomial(0, 0), 1);
    }

    #[test]
    fn edge_canonicalizes_and_rejects_duplicates() {
        let e = Edge::new(vec![3, 1, 2]).unwrap();
        assert_eq!(e.vertices(), &[1, 2, 3]);
        assert!(Edge::new(vec![1, 1, 2]).is_err());
        assert!(Edge::new(vec![0, 1]).is_err());
    }

    #[test]
    fn hypergraph_rejects_bad_edges() {
        let e = Edge::new(vec![1, 2]).unwrap();
        assert!(Hypergraph::new(3, 4, [e.clone()]).is_err());
        assert!(Hypergraph::new(2, 1, [e]).is_err());
        assert!(Hypergraph::new(0, 1, []).is_err());
    }

    #[test]
    fn subset_sum_examples() {
        let lab = Labeling::from_i64(3, &[0, 1, 1, -2]).unwrap();
        assert_eq!(subset_sum(&lab, &[1, 2, 4]).unwrap(), BigInt::from(-1));
        assert_eq!(subset_sum(&lab, &[]).unwrap(), BigInt::zero());
        let sym = Labeling::from_i64(2, &[5, -5]).unwrap();
        assert_eq!(subset_sum(&sym, &[1, 2]).unwrap(), BigInt::zero());
        assert!(subset_sum(&lab, &[5]).is_err());
    }

    #[test]
    fn materialize_examples() {
        let lab = Labeling::from_i64(3, &[0, 1, 1, -2]).unwrap();
        let h = materialize(&lab).unwrap();
        let want = Hypergraph::new(
            3,
            4,
            [
                Edge::new(vec![1, 2, 3]).unwrap(),
                Edge::new(vec![2, 3, 4]).unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(h, want);

        let all = materialize(&Labeling::from_i64(2, &[1, 1, 1]).unwrap()).unwrap();
        assert_eq!(all, Hypergraph::complete(2, 3));

        let none = materialize(&Labeling::from_i64(3, &[-1, -1, -1, -1]).unwrap()).unwrap();
        assert_eq!(none.edge_count(), 0);
    }

    #[test]
    fn materialize_guard_trips() {
        let lab = Labeling::new(3, vec![BigInt::zero(); 31]).unwrap();
        assert!(matches!(materialize(&lab), Err(Error::TooLarge(_))));
    }

    #[test]
    fn matching_rejects_overlap() {
        // Overlapping edge sets are unrepresentable as a Matching, which is
        // how "{{1,2},{1,3}} is not a perfect matching" is expressed here.
        let err = Matching::new([
            Edge::new(vec![1, 2]).unwrap(),
            Edge::new(vec![1, 3]).unwrap(),
        ]);
        assert!(err.is_err());
    }

    #[test]
    fn perfect_matching_needs_full_cover() {
        let h = Hypergraph::complete(3, 3);
        assert!(!is_perfect_matching(&h, &Matching::new([]).unwrap()));
        let m = Matching::new([Edge::new(vec![1, 2, 3]).unwrap()]).unwrap();
        assert!(is_perfect_matching(&h, &m));
        // Edge not in H.
        let empty = Hypergraph::empty(3, 3);
        assert!(!is_perfect_matching(&empty, &m));
    }

    #[test]
    fn elimination_order_must_be_permutation() {
        use VertexRole::*;
        assert!(EliminationOrder::new(vec![(1, Dominating), (1, Isolating)]).is_err());
        assert!(EliminationOrder::new(vec![(2, Dominating)]).is_err());
        let o = EliminationOrder::new(vec![(2, Dominating), (1, Isolating)]).unwrap();
        assert_eq!(o.vertex(1), 2);
        assert_eq!(o.role(2), Isolating);
    }

    #[test]
    fn rsequence_accessors() {
        let r = RSequence::new(vec![3, 1, -1]);
        assert_eq!(r.r(1), 3);
        assert_eq!(r.r(4), 0);
        assert!(!r.all_nonnegative());
    }

    proptest! {
        /// Raising a single label never removes an edge.
        #[test]
        fn materialize_is_monotone(
            labels in proptest::collection::vec(-6i64..=6, 1..7),
            bump_idx in 0usize..7,
            bump in 1i64..5,
        ) {
            let n = labels.len();
            let idx = bump_idx % n;
            let lab = Labeling::from_i64(3, &labels).unwrap();
            let mut raised = labels.clone();
            raised[idx] += bump;
            let lab2 = Labeling::from_i64(3, &raised).unwrap();
            let h1 = materialize(&lab).unwrap();
            let h2 = materialize(&lab2).unwrap();
            for e in h1.edges() {
                prop_assert!(h2.contains(e.vertices()));
            }
        }

        /// A perfect matching always has exactly n/k edges.
        #[test]
        fn perfect_matching_size(seed_edges in proptest::collection::vec(
            proptest::collection::vec(1u32..=9, 3), 0..6))
        {
            let edges: Vec<Edge> = seed_edges
                .into_iter()
                .filter_map(|vs| Edge::new(vs).ok())
                .filter(|e| e.len() == 3)
                .collect();
            let h = Hypergraph::new(3, 9, edges).unwrap();
            // Try to assemble any perfect matching greedily over all triples.
            let all: Vec<&Edge> = h.edges().collect();
            for (i, a) in all.iter().enumerate() {
                for (j, b) in all.iter().enumerate().skip(i + 1) {
                    for c in all.iter().skip(j + 1) {
                        if let Ok(m) = Matching::new([(*a).clone(), (*b).clone(), (*c).clone()]) {
                            if is_perfect_matching(&h, &m) {
                                prop_assert_eq!(m.len(), h.n() / h.k());
                            }
                        }
                    }
                }
            }
        }
    }
}
