//! Seeded instance generators. Callers supply the RNG, so a fixed seed gives
//! byte-identical instances.

use rand::Rng;

use crate::error::Result;
use crate::model::{materialize, Hypergraph, Labeling, VertexRole};
use crate::separable::order_to_labeling;

/// A random role sequence with the first k-1 positions forced dominating.
pub fn random_roles(n: usize, k: usize, p_dominating: f64, rng: &mut impl Rng) -> Vec<VertexRole> {
    (1..=n)
        .map(|pos| {
            if pos < k || rng.random_bool(p_dominating) {
                VertexRole::Dominating
            } else {
                VertexRole::Isolating
            }
        })
        .collect()
}

/// The orderable hypergraph whose identity-order roles are as given: label
/// position i with ±2^i and materialize.
pub fn orderable_from_roles(roles: &[VertexRole], k: usize) -> Result<Hypergraph> {
    let order = crate::model::EliminationOrder::from_roles(roles);
    let lab = order_to_labeling(&order, k)?;
    materialize(&lab)
}

/// A random orderable hypergraph on n vertices.
pub fn random_orderable(
    n: usize,
    k: usize,
    p_dominating: f64,
    rng: &mut impl Rng,
) -> Result<Hypergraph> {
    let roles = random_roles(n, k, p_dominating, rng);
    orderable_from_roles(&roles, k)
}

/// A random labeling with coordinates in `[-range, range]`.
pub fn random_labeling(n: usize, k: usize, range: i64, rng: &mut impl Rng) -> Result<Labeling> {
    let labels: Vec<i64> = (0..n).map(|_| rng.random_range(-range..=range)).collect();
    Labeling::from_i64(k, &labels)
}

/// A random 3-partition instance on 3m vertices: labels drawn from
/// `[-range, range]`, then the last label adjusted so the total is zero.
pub fn random_three_partition(m: usize, range: i64, rng: &mut impl Rng) -> Result<Labeling> {
    let n = 3 * m;
    let mut labels: Vec<i64> = (0..n).map(|_| rng.random_range(-range..=range)).collect();
    let total: i64 = labels.iter().sum();
    if let Some(last) = labels.last_mut() {
        *last -= total;
    }
    Labeling::from_i64(3, &labels)
}

/// A random explicit hypergraph: each k-subset is an edge independently with
/// probability `edge_prob`. Used by the verification harness.
pub fn random_hypergraph(
    n: usize,
    k: usize,
    edge_prob: f64,
    rng: &mut impl Rng,
) -> Result<Hypergraph> {
    use itertools::Itertools;
    let edges = (1..=n as u32)
        .combinations(k)
        .filter(|_| rng.random_bool(edge_prob))
        .map(|c| crate::model::Edge::new(c).expect("combinations are valid edges"));
    Hypergraph::new(k, n, edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn fixed_seed_reproduces_instances() {
        let mut a = ChaCha8Rng::seed_from_u64(42);
        let mut b = ChaCha8Rng::seed_from_u64(42);
        let ha = random_orderable(10, 3, 0.5, &mut a).unwrap();
        let hb = random_orderable(10, 3, 0.5, &mut b).unwrap();
        assert_eq!(ha, hb);
    }

    #[test]
    fn three_partition_sums_to_zero() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let lab = random_three_partition(3, 5, &mut rng).unwrap();
            let total: num_bigint::BigInt = lab.labels().iter().sum();
            assert!(total.is_zero());
            assert_eq!(lab.n(), 9);
        }
    }

    #[test]
    fn generated_orderable_instances_verify() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10 {
            let h = random_orderable(8, 3, 0.5, &mut rng).unwrap();
            let rec = crate::orderable::find_elimination_order(&h);
            assert!(rec.is_orderable());
        }
    }
}
