//! Recognition of orderable hypergraphs and the r-sequence perfect-matching
//! criterion.
//!
//! A hypergraph is orderable when its vertices admit an elimination order in
//! which every vertex is dominating or isolating with respect to its prefix.
//! Recognition works by repeatedly extracting a vertex that is dominating or
//! isolating over the whole remaining set; such a vertex can always be moved
//! to the end of an elimination order, so greedy extraction is complete.
//! Once an order is found, the r-sequence decides existence of a perfect
//! matching, and a backward traversal constructs one.

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::model::{
    is_perfect_matching, Edge, EliminationOrder, Hypergraph, Matching, RSequence, VertexRole,
};

/// How a vertex relates to the k-sets through it inside a ground set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Classification {
    /// Every k-set through the vertex inside the ground set is an edge.
    Dominating,
    /// No k-set through the vertex inside the ground set is an edge.
    Isolating,
    /// Some k-sets are edges and some are not.
    Neither,
    /// Vacuous: the ground set is too small to contain any k-set through the
    /// vertex.
    Both,
}

/// Result of running the recognizer, with the number of edge-membership
/// queries it performed (the measure the n^(k+1) bound is stated in).
#[derive(Clone, Debug)]
pub struct Recognition {
    pub outcome: RecognitionOutcome,
    pub membership_tests: u64,
}

#[derive(Clone, Debug)]
pub enum RecognitionOutcome {
    Orderable(EliminationOrder),
    /// No vertex of `stuck` is dominating or isolating over `stuck`.
    NotOrderable {
        stuck: Vec<u32>,
    },
}

impl Recognition {
    pub fn order(&self) -> Option<&EliminationOrder> {
        match &self.outcome {
            RecognitionOutcome::Orderable(o) => Some(o),
            RecognitionOutcome::NotOrderable { .. } => None,
        }
    }

    pub fn is_orderable(&self) -> bool {
        self.order().is_some()
    }
}

/// Classifies `v` against all k-sets `E` with `v ∈ E ⊆ ground`, counting one
/// membership test per k-set examined (at most C(|ground|-1, k-1); fewer when
/// both an edge and a non-edge are seen early).
pub fn classify_vertex(h: &Hypergraph, v: u32, ground: &[u32]) -> Result<(Classification, u64)> {
    if !ground.contains(&v) {
        return Err(Error::Invalid(format!("vertex {v} not in ground set")));
    }
    let mut seen = vec![false; h.n()];
    for &u in ground {
        if u == 0 || u as usize > h.n() {
            return Err(Error::VertexOutOfRange {
                vertex: u,
                n: h.n(),
            });
        }
        if std::mem::replace(&mut seen[u as usize - 1], true) {
            return Err(Error::Invalid(format!("ground set repeats vertex {u}")));
        }
    }
    Ok(classify_in(h, v, ground))
}

/// Classification core; callers guarantee `v ∈ ground ⊆ 1..=n`.
pub(crate) fn classify_in(h: &Hypergraph, v: u32, ground: &[u32]) -> (Classification, u64) {
    let k = h.k();
    let others: Vec<u32> = ground
        .iter()
        .copied()
        .filter(|&u| u != v)
        .sorted()
        .collect();
    if others.len() < k - 1 {
        return (Classification::Both, 0);
    }
    let mut tests = 0u64;
    let mut saw_edge = false;
    let mut saw_non_edge = false;
    for combo in others.into_iter().combinations(k - 1) {
        let mut e = combo;
        let pos = e.partition_point(|&u| u < v);
        e.insert(pos, v);
        tests += 1;
        if h.contains(&e) {
            saw_edge = true;
        } else {
            saw_non_edge = true;
        }
        if saw_edge && saw_non_edge {
            return (Classification::Neither, tests);
        }
    }
    let class = if saw_edge {
        Classification::Dominating
    } else {
        Classification::Isolating
    };
    (class, tests)
}

/// Recognizes an orderable hypergraph and returns an elimination order, or
/// the residual vertex set at which no vertex is dominating or isolating.
///
/// The recognizer scans the remaining vertices in descending id order and
/// extracts the first eligible one, which lands at the last open position.
/// Once at most k vertices remain the hypergraph is orderable by definition;
/// the remaining vertices are placed in ascending order, all positions below
/// k are vacuous and recorded as dominating, and when exactly k remain the
/// last vertex is classified by whether the remaining set itself is an edge.
pub fn find_elimination_order(h: &Hypergraph) -> Recognition {
    let k = h.k();
    let n = h.n();
    let mut remaining: Vec<u32> = (1..=n as u32).collect();
    let mut tests = 0u64;
    // Extraction order; first entry ends up at position n.
    let mut tail: Vec<(u32, VertexRole)> = Vec::new();

    while remaining.len() > k {
        let mut chosen = None;
        for idx in (0..remaining.len()).rev() {
            let v = remaining[idx];
            let (class, t) = classify_in(h, v, &remaining);
            tests += t;
            match class {
                Classification::Dominating | Classification::Both => {
                    chosen = Some((idx, VertexRole::Dominating));
                    break;
                }
                Classification::Isolating => {
                    chosen = Some((idx, VertexRole::Isolating));
                    break;
                }
                Classification::Neither => {}
            }
        }
        match chosen {
            Some((idx, role)) => {
                let v = remaining.remove(idx);
                tail.push((v, role));
            }
            None => {
                return Recognition {
                    outcome: RecognitionOutcome::NotOrderable { stuck: remaining },
                    membership_tests: tests,
                };
            }
        }
    }

    let mut entries: Vec<(u32, VertexRole)> = Vec::with_capacity(n);
    if remaining.len() == k {
        tests += 1;
        let last_role = if h.contains(&remaining) {
            VertexRole::Dominating
        } else {
            VertexRole::Isolating
        };
        for (i, &v) in remaining.iter().enumerate() {
            let role = if i + 1 == k {
                last_role
            } else {
                VertexRole::Dominating
            };
            entries.push((v, role));
        }
    } else {
        // Fewer than k vertices left: every position is vacuous.
        entries.extend(remaining.iter().map(|&v| (v, VertexRole::Dominating)));
    }
    entries.extend(tail.into_iter().rev());

    debug_assert!(tests <= (n.max(1) as u128).pow(k as u32 + 1) as u64);
    let order = EliminationOrder::new(entries).expect("recognizer builds a permutation");
    Recognition {
        outcome: RecognitionOutcome::Orderable(order),
        membership_tests: tests,
    }
}

/// Checks that each position's role is consistent with its prefix. Vacuous
/// positions (prefix smaller than k) accept either role. Returns the verdict
/// and the number of membership tests spent.
pub fn verify_elimination_order(h: &Hypergraph, order: &EliminationOrder) -> (bool, u64) {
    let k = h.k();
    let mut tests = 0u64;
    if order.len() != h.n() {
        return (false, tests);
    }
    for i in 1..=order.len() {
        let v = order.vertex(i);
        let role = order.role(i);
        let before: Vec<u32> = order.entries()[..i - 1].iter().map(|e| e.0).collect();
        if before.len() < k - 1 {
            continue;
        }
        for combo in before.iter().copied().combinations(k - 1) {
            let mut e = combo;
            e.push(v);
            e.sort_unstable();
            tests += 1;
            let is_edge = h.contains(&e);
            let ok = match role {
                VertexRole::Dominating => is_edge,
                VertexRole::Isolating => !is_edge,
            };
            if !ok {
                return (false, tests);
            }
        }
    }
    (true, tests)
}

/// Role used by the r-sequence and the matching construction: positions
/// `j <= k-1` are vacuous and always counted as dominating.
fn effective_role(order: &EliminationOrder, k: usize, pos: usize) -> VertexRole {
    if pos < k {
        VertexRole::Dominating
    } else {
        order.role(pos)
    }
}

/// Computes `r_n, ..., r_1` backwards from `r_{n+1} = 0`: a dominating
/// position contributes +(k-1), an isolating one -1. Equivalently
/// `r_j = (k-1) d_j - i_j` with `d_j`, `i_j` the dominating/isolating counts
/// at positions >= j.
pub fn compute_r_sequence(order: &EliminationOrder, k: usize) -> RSequence {
    let n = order.len();
    let mut values = vec![0i64; n];
    let mut r_next = 0i64;
    for j in (1..=n).rev() {
        let r_j = match effective_role(order, k, j) {
            VertexRole::Dominating => r_next + (k as i64 - 1),
            VertexRole::Isolating => r_next - 1,
        };
        values[j - 1] = r_j;
        r_next = r_j;
    }
    RSequence::new(values)
}

/// Decides perfect matching for an orderable hypergraph: true iff k divides
/// n and all r_j of the recognizer's order are nonnegative. Errors when the
/// input is not orderable.
pub fn decide_matching_orderable(h: &Hypergraph) -> Result<bool> {
    let rec = find_elimination_order(h);
    match rec.outcome {
        RecognitionOutcome::NotOrderable { stuck } => Err(Error::NotOrderable { stuck }),
        RecognitionOutcome::Orderable(order) => {
            if !h.n().is_multiple_of(h.k()) {
                return Ok(false);
            }
            Ok(compute_r_sequence(&order, h.k()).all_nonnegative())
        }
    }
}

/// Constructs a perfect matching of an orderable hypergraph, or `None` when
/// the r-criterion rejects.
///
/// The construction traverses the recognizer's order backwards keeping the
/// unmatched dominating and isolating vertices in `D` and `I`. A dominating
/// vertex joins `D`; when an isolating vertex arrives and `|I| = k-2`, the
/// edge `I ∪ {v_i, v_r}` is emitted with `v_r` the member of `D` of largest
/// position. After the traversal the partial `I` is completed with the
/// `k - |I|` largest-position members of `D`, and the rest of `D` is split
/// into ascending k-blocks. Every emitted k-set is checked to be an edge.
pub fn construct_matching_orderable(h: &Hypergraph) -> Result<Option<Matching>> {
    let k = h.k();
    let n = h.n();
    let rec = find_elimination_order(h);
    let order = match rec.outcome {
        RecognitionOutcome::NotOrderable { stuck } => return Err(Error::NotOrderable { stuck }),
        RecognitionOutcome::Orderable(order) => order,
    };
    if !n.is_multiple_of(k) || !compute_r_sequence(&order, k).all_nonnegative() {
        return Ok(None);
    }

    let mut edges: Vec<Edge> = Vec::with_capacity(n / k);
    if k == 1 {
        // All positions dominating, so every singleton is an edge.
        edges.extend((1..=n as u32).map(|v| Edge::new(vec![v]).expect("singleton")));
    } else {
        // Positions, kept descending: the earliest pushed is the largest.
        let mut dom: Vec<usize> = Vec::new();
        let mut iso: Vec<usize> = Vec::new();
        for j in (1..=n).rev() {
            match effective_role(&order, k, j) {
                VertexRole::Dominating => dom.push(j),
                VertexRole::Isolating => {
                    if iso.len() < k - 2 {
                        iso.push(j);
                    } else {
                        assert!(
                            !dom.is_empty(),
                            "nonnegative r-sequence guarantees an unmatched dominating vertex"
                        );
                        let r = dom.remove(0);
                        let mut vs: Vec<u32> = iso.drain(..).map(|p| order.vertex(p)).collect();
                        vs.push(order.vertex(j));
                        vs.push(order.vertex(r));
                        edges.push(Edge::new(vs)?);
                    }
                }
            }
        }
        if !dom.is_empty() {
            let take = k - iso.len();
            assert!(dom.len() >= take && (dom.len() - take).is_multiple_of(k));
            let mut vs: Vec<u32> = iso.drain(..).map(|p| order.vertex(p)).collect();
            for _ in 0..take {
                vs.push(order.vertex(dom.remove(0)));
            }
            edges.push(Edge::new(vs)?);
            dom.reverse();
            for chunk in dom.chunks(k) {
                edges.push(Edge::new(chunk.iter().map(|&p| order.vertex(p)).collect())?);
            }
        } else {
            assert!(
                iso.is_empty(),
                "leftover isolating vertices without dominating ones"
            );
        }
    }

    let matching = Matching::new(edges)?;
    assert!(
        is_perfect_matching(h, &matching),
        "constructed matching failed self-validation"
    );
    Ok(Some(matching))
}
