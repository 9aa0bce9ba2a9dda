//! Exponential-time ground-truth deciders, used to validate the polynomial
//! algorithms on small instances. Hard size limits, never silent truncation.

use std::collections::HashSet;

use itertools::Itertools;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::model::{subset_sum, Edge, Hypergraph, Labeling, Matching};
use crate::orderable::{classify_in, Classification};

/// A total edge-membership view over the k-subsets of `1..=n`, backed either
/// by an explicit hypergraph or by a labeling read implicitly (nonnegative
/// sums, or exact-zero sums for the 3-partition variant). Lets the matcher
/// run without materializing.
#[derive(Clone, Copy, Debug)]
pub enum MembershipOracle<'a> {
    Hypergraph(&'a Hypergraph),
    LabelingGeq(&'a Labeling),
    LabelingEq(&'a Labeling),
}

impl MembershipOracle<'_> {
    pub fn n(&self) -> usize {
        match self {
            MembershipOracle::Hypergraph(h) => h.n(),
            MembershipOracle::LabelingGeq(l) | MembershipOracle::LabelingEq(l) => l.n(),
        }
    }

    pub fn k(&self) -> usize {
        match self {
            MembershipOracle::Hypergraph(h) => h.k(),
            MembershipOracle::LabelingGeq(l) | MembershipOracle::LabelingEq(l) => l.k(),
        }
    }

    /// Membership of an ascending k-tuple within `1..=n`.
    pub fn is_edge(&self, sorted_vertices: &[u32]) -> bool {
        match self {
            MembershipOracle::Hypergraph(h) => h.contains(sorted_vertices),
            MembershipOracle::LabelingGeq(l) => {
                let sum = subset_sum(l, sorted_vertices).expect("subset within 1..=n");
                !sum.is_negative()
            }
            MembershipOracle::LabelingEq(l) => {
                let sum = subset_sum(l, sorted_vertices).expect("subset within 1..=n");
                sum == num_bigint::BigInt::from(0)
            }
        }
    }
}

/// Largest n the subset DP accepts per edge cardinality.
pub fn matching_limit(k: usize) -> usize {
    match k {
        1 | 2 => 20,
        3 => 18,
        4 => 16,
        _ => 15,
    }
}

const ORDERABLE_LIMIT: usize = 8;
const SEPARABLE_N_LIMIT: usize = 5;
const SEPARABLE_BOUND_LIMIT: i64 = 8;

/// Finds a perfect matching by dynamic programming over vertex subsets, or
/// proves none exists.
///
/// States are bitmasks of matched vertices. A reachable state is extended by
/// matching its lowest unmatched vertex with every (k-1)-subset of the
/// remaining vertices that completes an edge; this visits each subset once
/// and kills the symmetry over edge orderings. One witness is reconstructed
/// on success.
pub fn brute_force_matching(oracle: &MembershipOracle) -> Result<Option<Matching>> {
    let n = oracle.n();
    let k = oracle.k();
    if n > matching_limit(k) {
        return Err(Error::TooLarge(format!(
            "subset DP accepts n <= {} for k = {k}, got {n}",
            matching_limit(k)
        )));
    }
    if !n.is_multiple_of(k) {
        return Ok(None);
    }
    if n == 0 {
        return Ok(Some(Matching::default()));
    }

    // One pass over all k-subsets builds the edge masks, grouped by lowest
    // vertex.
    let mut by_lowest: Vec<Vec<u32>> = vec![Vec::new(); n];
    for combo in (1..=n as u32).combinations(k) {
        if oracle.is_edge(&combo) {
            let mask = combo.iter().fold(0u32, |m, &v| m | 1 << (v - 1));
            by_lowest[combo[0] as usize - 1].push(mask);
        }
    }

    let full: u32 = (1u32 << n) - 1;
    // parent[state] = the edge mask that reached it; MAX marks unreached.
    let mut parent = vec![u32::MAX; 1 << n];
    parent[0] = 0;
    for mask in 0..full {
        if parent[mask as usize] == u32::MAX && mask != 0 {
            continue;
        }
        let lowest = (!mask).trailing_zeros() as usize;
        for &emask in &by_lowest[lowest] {
            if emask & mask == 0 {
                let next = (mask | emask) as usize;
                if parent[next] == u32::MAX {
                    parent[next] = emask;
                }
            }
        }
    }

    if parent[full as usize] == u32::MAX {
        return Ok(None);
    }
    let mut edges = Vec::with_capacity(n / k);
    let mut cur = full;
    while cur != 0 {
        let emask = parent[cur as usize];
        let vs: Vec<u32> = (0..n as u32)
            .filter(|&v| emask & (1 << v) != 0)
            .map(|v| v + 1)
            .collect();
        edges.push(Edge::new(vs)?);
        cur &= !emask;
    }
    Ok(Some(Matching::new(edges)?))
}

/// Exhaustive orderability check by backtracking over the choice of last
/// vertex: a set is orderable iff some vertex classifies dominating,
/// isolating, or vacuous over it and the rest stays orderable. This explores
/// every suffix choice (unlike the greedy recognizer, which commits to one),
/// and is equivalent to trying all n! orders; a unit test checks that
/// equivalence directly for n <= 5.
pub fn brute_force_orderable(h: &Hypergraph) -> Result<bool> {
    if h.n() > ORDERABLE_LIMIT {
        return Err(Error::TooLarge(format!(
            "exhaustive orderability accepts n <= {ORDERABLE_LIMIT}, got {}",
            h.n()
        )));
    }
    let mut remaining: Vec<u32> = (1..=h.n() as u32).collect();
    let mut dead: HashSet<u32> = HashSet::new();
    Ok(search_orderable(h, &mut remaining, &mut dead))
}

fn search_orderable(h: &Hypergraph, remaining: &mut Vec<u32>, dead: &mut HashSet<u32>) -> bool {
    if remaining.len() <= h.k() {
        return true;
    }
    let mask = remaining.iter().fold(0u32, |m, &v| m | 1 << (v - 1));
    if dead.contains(&mask) {
        return false;
    }
    for idx in 0..remaining.len() {
        let v = remaining[idx];
        let (class, _) = classify_in(h, v, remaining);
        if class != Classification::Neither {
            remaining.remove(idx);
            let ok = search_orderable(h, remaining, dead);
            remaining.insert(idx, v);
            if ok {
                return true;
            }
        }
    }
    dead.insert(mask);
    false
}

/// Searches for an integer labeling with all coordinates in `[-bound, bound]`
/// whose materialization equals `h`. `None` does not prove non-separability
/// (a separator might need larger labels); it is meaningful only next to the
/// LP certificate.
pub fn brute_force_separable(h: &Hypergraph, bound: i64) -> Result<Option<Labeling>> {
    if h.n() > SEPARABLE_N_LIMIT {
        return Err(Error::TooLarge(format!(
            "bounded separator search accepts n <= {SEPARABLE_N_LIMIT}, got {}",
            h.n()
        )));
    }
    if !(0..=SEPARABLE_BOUND_LIMIT).contains(&bound) {
        return Err(Error::TooLarge(format!(
            "bound must lie in 0..={SEPARABLE_BOUND_LIMIT}, got {bound}"
        )));
    }
    let n = h.n();
    let k = h.k();
    // Constraints indexed by their largest vertex, so partial assignments
    // are checked as soon as they are decided.
    let mut groups: Vec<Vec<(Vec<u32>, bool)>> = vec![Vec::new(); n + 1];
    for combo in (1..=n as u32).combinations(k) {
        let is_edge = h.contains(&combo);
        let max = *combo.last().unwrap() as usize;
        groups[max].push((combo, is_edge));
    }

    let mut labels = vec![0i64; n];
    if assign(&mut labels, 0, bound, &groups) {
        return Ok(Some(Labeling::from_i64(k, &labels)?));
    }
    Ok(None)
}

fn assign(labels: &mut [i64], depth: usize, bound: i64, groups: &[Vec<(Vec<u32>, bool)>]) -> bool {
    if depth == labels.len() {
        return true;
    }
    for val in -bound..=bound {
        labels[depth] = val;
        let consistent = groups[depth + 1].iter().all(|(subset, is_edge)| {
            let sum: i64 = subset.iter().map(|&v| labels[v as usize - 1]).sum();
            (sum >= 0) == *is_edge
        });
        if consistent && assign(labels, depth + 1, bound, groups) {
            return true;
        }
    }
    false
}
