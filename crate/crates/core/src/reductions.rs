//! The hardness reductions: 3-partition to perfect matching over separable
//! 3-hypergraphs, and the lift from separable 3-hypergraphs to separable
//! k-hypergraphs for k >= 4, with matching certificates mapped in both
//! directions.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::model::{subset_sum, Edge, Labeling, Matching};

/// Why a reduction short-circuited to a decided NO instead of emitting an
/// instance. Trivial-NO inputs map to a decidable answer, never to an error.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ShortcutReason {
    /// The labels do not sum to zero, so zero-sum triples cannot cover V.
    NonzeroTotal,
    /// The vertex count is not a multiple of 3.
    NotDivisibleBy3,
    /// The induced hypergraph has no edges at all.
    EmptyHypergraph,
}

impl std::fmt::Display for ShortcutReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ShortcutReason::NonzeroTotal => write!(f, "labels do not sum to zero"),
            ShortcutReason::NotDivisibleBy3 => write!(f, "vertex count is not a multiple of 3"),
            ShortcutReason::EmptyHypergraph => write!(f, "induced hypergraph has no edges"),
        }
    }
}

#[derive(Clone, Debug)]
pub enum ThreePartitionOutcome {
    /// The same labeling, now read as the instance `{E : |E|=3, a(E) >= 0}`.
    /// Zero-sum triples cover V iff nonnegative-sum triples do.
    Geq(Labeling),
    NoMatching(ShortcutReason),
}

/// Maps a 3-partition instance (triples of sum exactly zero) to the
/// separable instance over nonnegative-sum triples. When the total is
/// nonzero or 3 does not divide n the input is a trivial NO and is reported
/// as such.
pub fn three_partition_to_geq(lab: &Labeling) -> Result<ThreePartitionOutcome> {
    if lab.k() != 3 {
        return Err(Error::UnsupportedK {
            k: lab.k(),
            reason: "3-partition instances have k = 3".into(),
        });
    }
    if !lab.n().is_multiple_of(3) {
        return Ok(ThreePartitionOutcome::NoMatching(
            ShortcutReason::NotDivisibleBy3,
        ));
    }
    let all: Vec<u32> = (1..=lab.n() as u32).collect();
    if !subset_sum(lab, &all)?.is_zero() {
        return Ok(ThreePartitionOutcome::NoMatching(
            ShortcutReason::NonzeroTotal,
        ));
    }
    Ok(ThreePartitionOutcome::Geq(lab.clone()))
}

/// `b := 1 + max{a(E) : E ⊆ V, |E| <= k}`. The maximum is attained by the
/// largest positive labels (at most k of them, none when all are negative,
/// the empty set contributing 0), so a greedy sum suffices; a test
/// cross-checks against subset enumeration.
pub fn compute_b(lab: &Labeling, k: usize) -> BigInt {
    let mut positives: Vec<&BigInt> = lab.labels().iter().filter(|x| x.is_positive()).collect();
    positives.sort_unstable_by(|a, b| b.cmp(a));
    let top: BigInt = positives.into_iter().take(k).sum();
    top + BigInt::one()
}

/// The lifted instance over `n' = 3m + (k_target - 3) m` vertices: original
/// vertices keep their ids and get labels `k a(v) - (k-3) b`, the new
/// padding vertices get `3 b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftedInstance {
    pub original_n: usize,
    pub k_target: usize,
    pub b: BigInt,
    pub labeling_prime: Labeling,
}

impl LiftedInstance {
    pub fn lifted_n(&self) -> usize {
        self.labeling_prime.n()
    }

    /// Recovers the original 3-hypergraph labeling from the lifted one via
    /// `a(v) = (a'(v) + (k-3) b) / k`; division is exact for instances built
    /// by [`lift_to_k`], and inexactness flags a malformed instance.
    pub fn original_labeling(&self) -> Result<Labeling> {
        let k = BigInt::from(self.k_target as i64);
        let shift = BigInt::from((self.k_target - 3) as i64) * &self.b;
        let mut labels = Vec::with_capacity(self.original_n);
        for v in 1..=self.original_n as u32 {
            let a_prime = self.labeling_prime.label(v)?;
            let numer = a_prime + &shift;
            let (q, r) = num_integer::Integer::div_rem(&numer, &k);
            if !r.is_zero() {
                return Err(Error::MalformedLift(format!(
                    "label a'({v}) = {a_prime} does not decode to an integer"
                )));
            }
            labels.push(q);
        }
        Labeling::new(3, labels)
    }
}

#[derive(Clone, Debug)]
pub enum LiftOutcome {
    Lifted(LiftedInstance),
    NoMatching(ShortcutReason),
}

/// Lifts a separable 3-hypergraph instance to edge cardinality `k_target`.
/// Instances with `3 ∤ n` or an empty hypergraph are trivial NOs and are
/// reported as shortcuts rather than lifted.
pub fn lift_to_k(lab: &Labeling, k_target: usize) -> Result<LiftOutcome> {
    if lab.k() != 3 {
        return Err(Error::UnsupportedK {
            k: lab.k(),
            reason: "the lift starts from 3-hypergraph instances".into(),
        });
    }
    if k_target < 4 {
        return Err(Error::Invalid(format!(
            "lift target must satisfy k >= 4, got {k_target}"
        )));
    }
    let n = lab.n();
    if !n.is_multiple_of(3) {
        return Ok(LiftOutcome::NoMatching(ShortcutReason::NotDivisibleBy3));
    }
    // Nonempty iff the three largest labels have nonnegative sum. The n = 0
    // instance is vacuously matchable and lifts to the empty instance, so
    // only nonempty vertex sets can shortcut here.
    let mut sorted: Vec<&BigInt> = lab.labels().iter().collect();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    let top3: BigInt = sorted.into_iter().take(3).sum();
    if n > 0 && top3.is_negative() {
        return Ok(LiftOutcome::NoMatching(ShortcutReason::EmptyHypergraph));
    }

    let m = n / 3;
    let b = compute_b(lab, k_target);
    let k = BigInt::from(k_target as i64);
    let shift = BigInt::from((k_target - 3) as i64) * &b;
    let mut labels: Vec<BigInt> = lab.labels().iter().map(|a| &k * a - &shift).collect();
    let pad = BigInt::from(3) * &b;
    labels.extend(std::iter::repeat_n(pad, (k_target - 3) * m));
    let labeling_prime = Labeling::new(k_target, labels)?;
    Ok(LiftOutcome::Lifted(LiftedInstance {
        original_n: n,
        k_target,
        b,
        labeling_prime,
    }))
}

/// Checks that `m` perfectly matches the implicit hypergraph of a labeling
/// (edges = subsets of the given size with the given sum condition).
fn check_perfect_implicit(m: &Matching, lab: &Labeling, edge_len: usize, what: &str) -> Result<()> {
    let mut covered = 0usize;
    for e in m.edges() {
        if e.len() != edge_len {
            return Err(Error::NotPerfect(format!(
                "{what}: edge {e} has size {}, expected {edge_len}",
                e.len()
            )));
        }
        let sum = subset_sum(lab, e.vertices())
            .map_err(|_| Error::NotPerfect(format!("{what}: edge {e} leaves 1..={}", lab.n())))?;
        if sum.is_negative() {
            return Err(Error::NotPerfect(format!(
                "{what}: edge {e} has negative label sum {sum}"
            )));
        }
        covered += e.len();
    }
    if covered != lab.n() {
        return Err(Error::NotPerfect(format!(
            "{what}: covers {covered} of {} vertices",
            lab.n()
        )));
    }
    Ok(())
}

/// Pushes a perfect matching of the original 3-hypergraph forward through a
/// lift: the padding vertices are split into ascending consecutive
/// `(k-3)`-blocks and appended to the matching edges in their set order.
/// Every lifted edge has label sum `k * a(E) >= 0`.
pub fn push_forward_matching(m: &Matching, lift: &LiftedInstance) -> Result<Matching> {
    let original = lift.original_labeling()?;
    check_perfect_implicit(m, &original, 3, "push_forward input")?;

    let k = lift.k_target;
    let pad_per_edge = k - 3;
    let mut next_pad = lift.original_n as u32 + 1;
    let mut lifted = Vec::with_capacity(m.len());
    for e in m.edges() {
        let mut vs = e.vertices().to_vec();
        vs.extend(next_pad..next_pad + pad_per_edge as u32);
        next_pad += pad_per_edge as u32;
        lifted.push(Edge::new(vs)?);
    }
    Matching::new(lifted)
}

/// Pulls a perfect matching of the lifted hypergraph back: intersect every
/// edge with the original vertex set. The lift construction guarantees each
/// intersection has exactly 3 vertices; anything else means the instance or
/// matching is malformed.
pub fn pull_back_matching(m_prime: &Matching, lift: &LiftedInstance) -> Result<Matching> {
    check_perfect_implicit(
        m_prime,
        &lift.labeling_prime,
        lift.k_target,
        "pull_back input",
    )?;

    let mut original = Vec::with_capacity(m_prime.len());
    for e in m_prime.edges() {
        let vs: Vec<u32> = e
            .vertices()
            .iter()
            .copied()
            .filter(|&v| v as usize <= lift.original_n)
            .collect();
        if vs.len() != 3 {
            return Err(Error::MalformedLift(format!(
                "edge {e} meets the original vertices in {} vertices, expected 3",
                vs.len()
            )));
        }
        original.push(Edge::new(vs)?);
    }
    Matching::new(original)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{brute_force_matching, MembershipOracle};
    use itertools::Itertools;
    use proptest::prelude::*;

    fn lab3(labels: &[i64]) -> Labeling {
        Labeling::from_i64(3, labels).unwrap()
    }

    #[test]
    fn three_partition_examples() {
        let ok = lab3(&[1, 1, -2, 2, -1, -1]);
        match three_partition_to_geq(&ok).unwrap() {
            ThreePartitionOutcome::Geq(l) => {
                // Both the zero-sum and the nonnegative-sum hypergraphs admit
                // {{1,2,3},{4,5,6}}.
                let eq = brute_force_matching(&MembershipOracle::LabelingEq(&l)).unwrap();
                let geq = brute_force_matching(&MembershipOracle::LabelingGeq(&l)).unwrap();
                assert!(eq.is_some() && geq.is_some());
            }
            ThreePartitionOutcome::NoMatching(_) => panic!("valid instance"),
        }

        assert!(matches!(
            three_partition_to_geq(&lab3(&[1, 0, 0])).unwrap(),
            ThreePartitionOutcome::NoMatching(ShortcutReason::NonzeroTotal)
        ));
        assert!(matches!(
            three_partition_to_geq(&lab3(&[0, 0])).unwrap(),
            ThreePartitionOutcome::NoMatching(ShortcutReason::NotDivisibleBy3)
        ));
        assert!(matches!(
            three_partition_to_geq(&lab3(&[0, 0, 0])).unwrap(),
            ThreePartitionOutcome::Geq(_)
        ));
        assert!(three_partition_to_geq(&Labeling::from_i64(2, &[0, 0]).unwrap()).is_err());
    }

    #[test]
    fn compute_b_examples() {
        assert_eq!(compute_b(&lab3(&[0, 0, 0]), 4), BigInt::from(1));
        assert_eq!(compute_b(&lab3(&[1, 1, -2, 2, -1, -1]), 4), BigInt::from(5));
        assert_eq!(compute_b(&lab3(&[-5, -5, -5]), 3), BigInt::from(1));
    }

    #[test]
    fn compute_b_matches_enumeration() {
        let cases: Vec<Vec<i64>> = vec![
            vec![1, 1, -2, 2, -1, -1],
            vec![0, 0, 0],
            vec![-5, -5, -5],
            vec![3, -1, 4, 1, -5, 9, -2, 6],
            vec![7],
        ];
        for labels in cases {
            for k in 1..=5 {
                let lab = lab3(&labels);
                let n = lab.n();
                let mut best = BigInt::zero(); // empty set
                for size in 1..=k.min(n) {
                    for combo in (1..=n as u32).combinations(size) {
                        let s = subset_sum(&lab, &combo).unwrap();
                        if s > best {
                            best = s;
                        }
                    }
                }
                assert_eq!(
                    compute_b(&lab, k),
                    best + BigInt::one(),
                    "labels {labels:?} k {k}"
                );
            }
        }
    }

    #[test]
    fn lift_smallest_example() {
        let lab = lab3(&[0, 0, 0]);
        let lift = match lift_to_k(&lab, 4).unwrap() {
            LiftOutcome::Lifted(l) => l,
            LiftOutcome::NoMatching(_) => panic!("liftable"),
        };
        assert_eq!(lift.b, BigInt::from(1));
        assert_eq!(lift.lifted_n(), 4);
        let expect: Vec<BigInt> = [-1i64, -1, -1, 3]
            .iter()
            .map(|&x| BigInt::from(x))
            .collect();
        assert_eq!(lift.labeling_prime.labels().to_vec(), expect);
        // The only 4-set sums to 0, so H' = {{1,2,3,4}}.
        let h = crate::model::materialize(&lift.labeling_prime).unwrap();
        assert_eq!(h.edge_count(), 1);
        assert_eq!(lift.original_labeling().unwrap(), lab);
    }

    #[test]
    fn lift_k5_example() {
        let lab = lab3(&[1, 1, -2, 2, -1, -1]);
        let lift = match lift_to_k(&lab, 5).unwrap() {
            LiftOutcome::Lifted(l) => l,
            LiftOutcome::NoMatching(_) => panic!("liftable"),
        };
        assert_eq!(lift.b, BigInt::from(5));
        assert_eq!(lift.lifted_n(), 10);
        for (v, a) in lab.labels().iter().enumerate() {
            let expect = BigInt::from(5) * a - BigInt::from(10);
            assert_eq!(lift.labeling_prime.labels()[v], expect);
        }
        for u in 6..10 {
            assert_eq!(lift.labeling_prime.labels()[u], BigInt::from(15));
        }
        assert_eq!(lift.original_labeling().unwrap(), lab);
    }

    #[test]
    fn lift_shortcuts_and_errors() {
        assert!(matches!(
            lift_to_k(&lab3(&[-1, -1, -1]), 4).unwrap(),
            LiftOutcome::NoMatching(ShortcutReason::EmptyHypergraph)
        ));
        assert!(matches!(
            lift_to_k(&lab3(&[0, 0]), 4).unwrap(),
            LiftOutcome::NoMatching(ShortcutReason::NotDivisibleBy3)
        ));
        assert!(lift_to_k(&lab3(&[0, 0, 0]), 3).is_err());
        assert!(lift_to_k(&Labeling::from_i64(2, &[0, 0, 0]).unwrap(), 4).is_err());
    }

    #[test]
    fn push_forward_examples() {
        let lab = lab3(&[0, 0, 0]);
        let lift = match lift_to_k(&lab, 4).unwrap() {
            LiftOutcome::Lifted(l) => l,
            _ => unreachable!(),
        };
        let m = Matching::new([Edge::new(vec![1, 2, 3]).unwrap()]).unwrap();
        let pushed = push_forward_matching(&m, &lift).unwrap();
        let got: Vec<Vec<u32>> = pushed.edges().map(|e| e.vertices().to_vec()).collect();
        assert_eq!(got, vec![vec![1, 2, 3, 4]]);

        let lab2 = lab3(&[1, 1, -2, 2, -1, -1]);
        let lift2 = match lift_to_k(&lab2, 4).unwrap() {
            LiftOutcome::Lifted(l) => l,
            _ => unreachable!(),
        };
        let m2 = Matching::new([
            Edge::new(vec![1, 2, 3]).unwrap(),
            Edge::new(vec![4, 5, 6]).unwrap(),
        ])
        .unwrap();
        let pushed2 = push_forward_matching(&m2, &lift2).unwrap();
        let got2: Vec<Vec<u32>> = pushed2.edges().map(|e| e.vertices().to_vec()).collect();
        assert_eq!(got2, vec![vec![1, 2, 3, 7], vec![4, 5, 6, 8]]);
        // Both lifted edges satisfy a'(E') = k a(E) >= 0.
        for e in pushed2.edges() {
            let s = subset_sum(&lift2.labeling_prime, e.vertices()).unwrap();
            assert!(!s.is_negative());
        }

        // Imperfect input is rejected.
        let partial = Matching::new([Edge::new(vec![1, 2, 3]).unwrap()]).unwrap();
        assert!(matches!(
            push_forward_matching(&partial, &lift2),
            Err(Error::NotPerfect(_))
        ));

        // Vacuous case: the empty instance lifts, and the empty matching
        // pushes forward to the empty matching.
        let empty = Labeling::from_i64(3, &[]).unwrap();
        let lift0 = match lift_to_k(&empty, 4).unwrap() {
            LiftOutcome::Lifted(l) => l,
            LiftOutcome::NoMatching(r) => panic!("n = 0 must lift, got {r}"),
        };
        assert_eq!(lift0.lifted_n(), 0);
        let pushed0 = push_forward_matching(&Matching::default(), &lift0).unwrap();
        assert!(pushed0.is_empty());
    }

    #[test]
    fn pull_back_examples() {
        let lab = lab3(&[1, 1, -2, 2, -1, -1]);
        let lift = match lift_to_k(&lab, 4).unwrap() {
            LiftOutcome::Lifted(l) => l,
            _ => unreachable!(),
        };
        let m_prime = Matching::new([
            Edge::new(vec![1, 2, 3, 7]).unwrap(),
            Edge::new(vec![4, 5, 6, 8]).unwrap(),
        ])
        .unwrap();
        let pulled = pull_back_matching(&m_prime, &lift).unwrap();
        let got: Vec<Vec<u32>> = pulled.edges().map(|e| e.vertices().to_vec()).collect();
        assert_eq!(got, vec![vec![1, 2, 3], vec![4, 5, 6]]);

        // A matching missing a vertex is not perfect.
        let short = Matching::new([Edge::new(vec![1, 2, 3, 7]).unwrap()]).unwrap();
        assert!(matches!(
            pull_back_matching(&short, &lift),
            Err(Error::NotPerfect(_))
        ));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        /// pull_back(push_forward(M)) is the identity, and the lifted
        /// matching is perfect for the lifted labeling.
        #[test]
        fn push_pull_roundtrip(
            raw in proptest::collection::vec(-4i64..=4, 3..=9),
            k_target in 4usize..=5,
        ) {
            let mut labels = raw;
            labels.truncate(labels.len() / 3 * 3);
            let total: i64 = labels.iter().sum();
            let last = labels.len() - 1;
            labels[last] -= total;
            let lab = lab3(&labels);
            if let LiftOutcome::Lifted(lift) = lift_to_k(&lab, k_target).unwrap() {
                let found = brute_force_matching(&MembershipOracle::LabelingGeq(&lab)).unwrap();
                if let Some(m) = found {
                    let pushed = push_forward_matching(&m, &lift).unwrap();
                    let pulled = pull_back_matching(&pushed, &lift).unwrap();
                    prop_assert_eq!(pulled, m);
                }
            }
        }

        /// Unary size of the lifted labeling stays within 4·k·n·size of the
        /// input's unary size.
        #[test]
        fn lift_unary_size_is_polynomial(
            raw in proptest::collection::vec(-6i64..=6, 3..=12),
            k_target in 4usize..=6,
        ) {
            let mut labels = raw;
            labels.truncate(labels.len() / 3 * 3);
            let lab = lab3(&labels);
            if let LiftOutcome::Lifted(lift) = lift_to_k(&lab, k_target).unwrap() {
                use num_bigint::BigUint;
                let size = lab.unary_size();
                let size_prime = lift.labeling_prime.unary_size();
                let bound = BigUint::from(4usize)
                    * BigUint::from(k_target)
                    * BigUint::from(lab.n())
                    * &size;
                prop_assert!(size_prime <= bound, "{size_prime} > {bound}");
            }
        }
    }
}
