//! Separable hypergraphs: LP-based recognition, conversions between
//! elimination orders and separating labelings, and the separable but not
//! orderable witness family for k >= 3.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::model::{materialize, subset_sum, EliminationOrder, Hypergraph, Labeling, VertexRole};
use crate::simplex::{
    build_system_with_limit, solve_phase1, LpOutcome, LpSystem, DEFAULT_LP_ROW_LIMIT,
};

/// Outcome of separability recognition.
#[derive(Clone, Debug)]
pub enum Separability {
    /// An integer labeling whose materialization is exactly the input.
    Separable(Labeling),
    /// Proof of infeasibility of the defining linear system.
    NotSeparable(DualCertificate),
}

impl Separability {
    pub fn labeling(&self) -> Option<&Labeling> {
        match self {
            Separability::Separable(l) => Some(l),
            Separability::NotSeparable(_) => None,
        }
    }
}

/// Farkas multipliers for the infeasible system, one per k-subset row in
/// lexicographic subset order. Checkable without re-running the solver.
#[derive(Clone, Debug)]
pub struct DualCertificate {
    pub multipliers: Vec<BigRational>,
}

/// Decides separability by exact LP feasibility.
///
/// On success the rational solution is scaled by the least common multiple
/// of its denominators, so the returned labeling is integral and satisfies
/// every edge row >= 0 and every non-edge row <= -1 exactly; the
/// materialization is checked to reproduce the input before returning.
pub fn find_separating_labeling(h: &Hypergraph) -> Result<Separability> {
    find_separating_labeling_with_limit(h, DEFAULT_LP_ROW_LIMIT)
}

pub fn find_separating_labeling_with_limit(h: &Hypergraph, max_rows: u64) -> Result<Separability> {
    let sys = build_system_with_limit(h, max_rows)?;
    match solve_phase1(&sys) {
        LpOutcome::Feasible(x) => {
            let lab = scale_to_integers(h.k(), &x)?;
            assert_separates(&sys, &lab)?;
            Ok(Separability::Separable(lab))
        }
        LpOutcome::Infeasible(multipliers) => {
            Ok(Separability::NotSeparable(DualCertificate { multipliers }))
        }
    }
}

fn scale_to_integers(k: usize, x: &[BigRational]) -> Result<Labeling> {
    let scale = x.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    let labels = x
        .iter()
        .map(|r| (r * BigRational::from_integer(scale.clone())).to_integer())
        .collect();
    Labeling::new(k, labels)
}

/// Soundness check run on every successful recognition: the labeling must
/// classify every k-subset exactly as the input does, with non-edges at
/// sum <= -1.
fn assert_separates(sys: &LpSystem, lab: &Labeling) -> Result<()> {
    for row in &sys.rows {
        let sum = subset_sum(lab, &row.subset)?;
        let ok = if row.is_edge {
            !sum.is_negative()
        } else {
            sum <= BigInt::from(-1)
        };
        assert!(
            ok,
            "LP labeling fails on subset {:?} (edge: {})",
            row.subset, row.is_edge
        );
    }
    Ok(())
}

/// Labels an ordered hypergraph by position: `+2^i` at dominating positions,
/// `-2^i` at isolating ones. The materialization of the result is exactly
/// the hypergraph the order eliminates, since the highest position in any
/// k-set decides the sign of its label sum.
pub fn order_to_labeling(order: &EliminationOrder, k: usize) -> Result<Labeling> {
    let n = order.len();
    let mut labels = vec![BigInt::zero(); n];
    for pos in 1..=n {
        let v = order.vertex(pos) as usize - 1;
        let magnitude = BigInt::one() << pos;
        labels[v] = match order.role(pos) {
            VertexRole::Dominating => magnitude,
            VertexRole::Isolating => -magnitude,
        };
    }
    Labeling::new(k, labels)
}

/// Builds an elimination order for the hypergraph materialized from a
/// labeling, for k <= 2 where separable and orderable coincide.
///
/// Repeatedly extracts a vertex `w` to the last open position: either
/// `a(w) >= 0` dominates every remaining magnitude (role dominating), or
/// `a(w) < 0` with `|a(w)|` strictly above every remaining label (role
/// isolating). Ties prefer the largest label, then the smallest vertex id.
pub fn labeling_to_order_k2(lab: &Labeling) -> Result<EliminationOrder> {
    let k = lab.k();
    if k > 2 {
        return Err(Error::UnsupportedK {
            k,
            reason: "separable coincides with orderable only for k <= 2".into(),
        });
    }
    if k == 1 {
        // Any order works; roles read directly off the label signs.
        let entries = (1..=lab.n() as u32)
            .map(|v| {
                let role = if lab.label(v).unwrap().is_negative() {
                    VertexRole::Isolating
                } else {
                    VertexRole::Dominating
                };
                (v, role)
            })
            .collect();
        return EliminationOrder::new(entries);
    }

    let mut remaining: Vec<u32> = (1..=lab.n() as u32).collect();
    let mut tail: Vec<(u32, VertexRole)> = Vec::new();
    while !remaining.is_empty() {
        let max_abs = remaining
            .iter()
            .map(|&v| lab.label(v).unwrap().abs())
            .max()
            .expect("nonempty");
        let max_label = remaining
            .iter()
            .map(|&v| lab.label(v).unwrap().clone())
            .max()
            .expect("nonempty");

        // Dominating candidates all carry label exactly +max_abs.
        let dominating = remaining
            .iter()
            .copied()
            .find(|&v| *lab.label(v).unwrap() == max_abs);
        let (w, role) = if let Some(w) = dominating {
            (w, VertexRole::Dominating)
        } else {
            // All maximal-magnitude labels are negative here, so a qualifying
            // isolating vertex exists; among them take the largest label,
            // then the smallest id (remaining is ascending).
            let w = remaining
                .iter()
                .copied()
                .filter(|&v| {
                    let a = lab.label(v).unwrap();
                    a.is_negative() && a.abs() > max_label
                })
                .max_by(|&x, &y| {
                    lab.label(x)
                        .unwrap()
                        .cmp(lab.label(y).unwrap())
                        .then(y.cmp(&x))
                })
                .expect("the dichotomy always yields a vertex");
            (w, VertexRole::Isolating)
        };
        remaining.retain(|&v| v != w);
        tail.push((w, role));
    }
    tail.reverse();
    EliminationOrder::new(tail)
}

/// The separable but not orderable witness: labels
/// `0, 1, ..., 1, -(k-1)` on the first k+1 vertices and `-k` on the rest.
/// The materialization has exactly the two edges `{1..k}` and `{2..k+1}`,
/// which is asserted after construction.
pub fn counterexample(k: usize, n: usize) -> Result<Labeling> {
    if k < 3 {
        return Err(Error::UnsupportedK {
            k,
            reason: "separable-not-orderable witnesses need k >= 3".into(),
        });
    }
    if n < k + 1 {
        return Err(Error::Invalid(format!(
            "witness needs n >= k+1 = {}, got {n}",
            k + 1
        )));
    }
    let mut labels = Vec::with_capacity(n);
    labels.push(BigInt::zero());
    labels.extend(std::iter::repeat_n(BigInt::one(), k - 1));
    labels.push(BigInt::from(-((k as i64) - 1)));
    labels.extend(std::iter::repeat_n(BigInt::from(-(k as i64)), n - k - 1));
    let lab = Labeling::new(k, labels)?;

    let h = materialize(&lab)?;
    let first: Vec<u32> = (1..=k as u32).collect();
    let second: Vec<u32> = (2..=k as u32 + 1).collect();
    assert!(
        h.edge_count() == 2 && h.contains(&first) && h.contains(&second),
        "witness materialization must be exactly the two prescribed edges"
    );
    Ok(lab)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{materialize, Edge};
    use crate::oracle::brute_force_separable;
    use crate::orderable::{find_elimination_order, verify_elimination_order, RecognitionOutcome};
    use crate::simplex::{build_system, check_dual_certificate};
    use proptest::prelude::*;

    fn p4() -> Hypergraph {
        Hypergraph::new(
            2,
            4,
            [
                Edge::new(vec![1, 2]).unwrap(),
                Edge::new(vec![2, 3]).unwrap(),
                Edge::new(vec![3, 4]).unwrap(),
            ],
        )
        .unwrap()
    }

    #[test]
    fn recognizes_two_edge_instance() {
        let h = materialize(&Labeling::from_i64(3, &[0, 1, 1, -2]).unwrap()).unwrap();
        match find_separating_labeling(&h).unwrap() {
            Separability::Separable(lab) => {
                assert_eq!(materialize(&lab).unwrap(), h);
            }
            Separability::NotSeparable(_) => panic!("instance is separable"),
        }
    }

    #[test]
    fn complete_hypergraph_is_separable() {
        let h = Hypergraph::complete(3, 5);
        assert!(matches!(
            find_separating_labeling(&h).unwrap(),
            Separability::Separable(_)
        ));
    }

    #[test]
    fn p4_rejected_with_valid_certificate() {
        let sys = build_system(&p4()).unwrap();
        match find_separating_labeling(&p4()).unwrap() {
            Separability::Separable(_) => panic!("P4 must be rejected"),
            Separability::NotSeparable(cert) => {
                assert!(check_dual_certificate(&sys, &cert.multipliers));
            }
        }
        // Bounded search agrees.
        assert!(brute_force_separable(&p4(), 8).unwrap().is_none());
    }

    #[test]
    fn order_to_labeling_example1() {
        use crate::gen::orderable_from_roles;
        let roles: Vec<VertexRole> = "DDDDIDIIIDIIDID"
            .chars()
            .map(|c| {
                if c == 'D' {
                    VertexRole::Dominating
                } else {
                    VertexRole::Isolating
                }
            })
            .collect();
        let h = orderable_from_roles(&roles, 3).unwrap();
        let order = EliminationOrder::from_roles(&roles);
        let lab = order_to_labeling(&order, 3).unwrap();
        for (pos, role) in roles.iter().enumerate() {
            let expect = BigInt::one() << (pos + 1);
            let got = lab.label(pos as u32 + 1).unwrap();
            match role {
                VertexRole::Dominating => assert_eq!(*got, expect),
                VertexRole::Isolating => assert_eq!(*got, -expect),
            }
        }
        assert_eq!(materialize(&lab).unwrap(), h);
    }

    #[test]
    fn order_to_labeling_trivia() {
        use VertexRole::{Dominating as D, Isolating as I};
        let all_dom = EliminationOrder::from_roles(&[D, D, D]);
        let lab = order_to_labeling(&all_dom, 3).unwrap();
        let vals: Vec<BigInt> = lab.labels().to_vec();
        assert_eq!(
            vals,
            vec![BigInt::from(2), BigInt::from(4), BigInt::from(8)]
        );
        assert_eq!(materialize(&lab).unwrap(), Hypergraph::complete(3, 3));

        let all_iso = EliminationOrder::from_roles(&[I, I, I]);
        let lab2 = order_to_labeling(&all_iso, 2).unwrap();
        assert_eq!(
            lab2.labels().to_vec(),
            vec![BigInt::from(-2), BigInt::from(-4), BigInt::from(-8)]
        );
        assert_eq!(materialize(&lab2).unwrap().edge_count(), 0);
    }

    #[test]
    fn k2_extraction_follows_dichotomy() {
        let lab = Labeling::from_i64(2, &[3, -1, 0]).unwrap();
        let order = labeling_to_order_k2(&lab).unwrap();
        let h = materialize(&lab).unwrap();
        // Edges are {1,2} and {1,3}; vertex 1 has the dominant label and
        // goes last.
        assert_eq!(order.vertex(3), 1);
        assert_eq!(order.role(3), VertexRole::Dominating);
        assert!(verify_elimination_order(&h, &order).0);
    }

    #[test]
    fn k1_roles_follow_signs() {
        let lab = Labeling::from_i64(1, &[-4, 0, 7]).unwrap();
        let order = labeling_to_order_k2(&lab).unwrap();
        assert_eq!(order.role(1), VertexRole::Isolating);
        assert_eq!(order.role(2), VertexRole::Dominating);
        assert_eq!(order.role(3), VertexRole::Dominating);
        let h = materialize(&lab).unwrap();
        assert!(verify_elimination_order(&h, &order).0);
    }

    #[test]
    fn k2_all_zero_pair() {
        let lab = Labeling::from_i64(2, &[0, 0]).unwrap();
        let order = labeling_to_order_k2(&lab).unwrap();
        assert!(order.roles().all(|r| r == VertexRole::Dominating));
        let h = materialize(&lab).unwrap();
        assert_eq!(h.edge_count(), 1);
        assert!(verify_elimination_order(&h, &order).0);
    }

    #[test]
    fn k3_labelings_are_rejected() {
        let lab = Labeling::from_i64(3, &[1, 2, 3]).unwrap();
        assert!(matches!(
            labeling_to_order_k2(&lab),
            Err(Error::UnsupportedK { .. })
        ));
    }

    #[test]
    fn counterexample_family() {
        let w34 = counterexample(3, 4).unwrap();
        assert_eq!(
            w34.labels().to_vec(),
            vec![
                BigInt::from(0),
                BigInt::from(1),
                BigInt::from(1),
                BigInt::from(-2)
            ]
        );
        let h = materialize(&w34).unwrap();
        assert_eq!(h.edge_count(), 2);
        assert!(matches!(
            find_elimination_order(&h).outcome,
            RecognitionOutcome::NotOrderable { .. }
        ));

        let w45 = counterexample(4, 5).unwrap();
        assert_eq!(
            w45.labels().to_vec(),
            vec![
                BigInt::from(0),
                BigInt::from(1),
                BigInt::from(1),
                BigInt::from(1),
                BigInt::from(-3)
            ]
        );
        assert_eq!(materialize(&w45).unwrap().edge_count(), 2);

        // Padding with -k keeps exactly two edges and non-orderability.
        let w36 = counterexample(3, 6).unwrap();
        let h36 = materialize(&w36).unwrap();
        assert_eq!(h36.edge_count(), 2);
        assert!(matches!(
            find_elimination_order(&h36).outcome,
            RecognitionOutcome::NotOrderable { .. }
        ));

        assert!(counterexample(2, 4).is_err());
        assert!(counterexample(3, 3).is_err());
    }

    #[test]
    fn scaled_labeling_is_integral_and_exact() {
        // A labeling whose LP solution will typically involve fractions.
        let h = materialize(&Labeling::from_i64(2, &[2, -1, 0, 1]).unwrap()).unwrap();
        match find_separating_labeling(&h).unwrap() {
            Separability::Separable(lab) => {
                assert_eq!(materialize(&lab).unwrap(), h);
            }
            Separability::NotSeparable(_) => panic!("threshold graph expected"),
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        /// LP recognition is sound on arbitrary small hypergraphs, and
        /// rejections carry checkable certificates.
        #[test]
        fn lp_soundness_small(
            edge_bits in 0u16..1024,
            k in 2usize..4,
        ) {
            let n = 5;
            let all: Vec<Vec<u32>> = {
                use itertools::Itertools;
                (1..=n as u32).combinations(k).collect()
            };
            let edges = all
                .iter()
                .enumerate()
                .filter(|(i, _)| edge_bits & (1 << (i % 16)) != 0 || *i >= 16)
                .map(|(_, c)| Edge::new(c.clone()).unwrap());
            let h = Hypergraph::new(k, n, edges).unwrap();
            let sys = build_system(&h).unwrap();
            match find_separating_labeling(&h).unwrap() {
                Separability::Separable(lab) => {
                    prop_assert_eq!(materialize(&lab).unwrap(), h);
                }
                Separability::NotSeparable(cert) => {
                    prop_assert!(check_dual_certificate(&sys, &cert.multipliers));
                }
            }
        }

        /// For k = 2, separable implies orderable and the extraction order
        /// verifies.
        #[test]
        fn k2_separable_is_orderable(
            labels in proptest::collection::vec(-8i64..=8, 1..7),
        ) {
            let lab = Labeling::from_i64(2, &labels).unwrap();
            let h = materialize(&lab).unwrap();
            let rec = find_elimination_order(&h);
            prop_assert!(rec.is_orderable());
            let order = labeling_to_order_k2(&lab).unwrap();
            prop_assert!(verify_elimination_order(&h, &order).0);
        }
    }
}
