//! Exact rational phase-1 simplex for the separability feasibility system.
//!
//! The system has one row per k-subset of the vertices: label sums must be
//! nonnegative on edges and at most -1 on non-edges. Feasibility of this
//! system over the rationals is equivalent to separability, and any rational
//! solution scales to an integer one. The solver keeps a dense tableau of
//! `BigRational` entries and pivots with Bland's least-index rule, which
//! cannot cycle, so termination is unconditional. On infeasible systems it
//! returns the final simplex multipliers as a Farkas certificate: a
//! nonnegative combination of rows whose variable coefficients cancel and
//! whose right-hand sides sum to at least 1.

use itertools::Itertools;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::model::{binomial, Hypergraph};

/// Default cap on LP rows (= k-subsets). A dense exact tableau grows with
/// rows^2, so this sits well below the materialization guard.
pub const DEFAULT_LP_ROW_LIMIT: u64 = 512;

/// One inequality of the feasibility system.
#[derive(Clone, Debug)]
pub struct LpRow {
    /// The k-subset the row constrains, ascending.
    pub subset: Vec<u32>,
    /// Edge rows demand sum >= 0; non-edge rows demand sum <= -1.
    pub is_edge: bool,
}

/// The full system: exactly one row per k-subset of `1..=n`.
#[derive(Clone, Debug)]
pub struct LpSystem {
    pub n: usize,
    pub k: usize,
    pub rows: Vec<LpRow>,
}

pub fn build_system(h: &Hypergraph) -> Result<LpSystem> {
    build_system_with_limit(h, DEFAULT_LP_ROW_LIMIT)
}

pub fn build_system_with_limit(h: &Hypergraph, max_rows: u64) -> Result<LpSystem> {
    let n = h.n();
    let k = h.k();
    let count = binomial(n as u64, k as u64);
    if count > max_rows {
        return Err(Error::TooLarge(format!(
            "LP for n={n}, k={k} needs {count} rows (limit {max_rows})"
        )));
    }
    let rows = (1..=n as u32)
        .combinations(k)
        .map(|subset| LpRow {
            is_edge: h.contains(&subset),
            subset,
        })
        .collect();
    Ok(LpSystem { n, k, rows })
}

#[derive(Clone, Debug)]
pub enum LpOutcome {
    /// A rational labeling satisfying every row.
    Feasible(Vec<BigRational>),
    /// Farkas multipliers, one per row, normalized so the non-edge rows sum
    /// to exactly 1.
    Infeasible(Vec<BigRational>),
}

/// Decides feasibility of the system exactly.
///
/// Internally each free label is split into a difference of nonnegative
/// variables, every row is rewritten as an equality with a slack or surplus
/// variable, and artificial variables on the non-edge rows give the phase-1
/// objective. Feasible iff the phase-1 minimum is zero.
pub fn solve_phase1(sys: &LpSystem) -> LpOutcome {
    let n = sys.n;
    let m = sys.rows.len();

    // Column layout: x+ | x- | s (one per row) | z (one per non-edge row).
    let xp = |v: usize| v;
    let xm = |v: usize| n + v;
    let s_col = |i: usize| 2 * n + i;
    let z_cols: Vec<Option<usize>> = {
        let mut next = 2 * n + m;
        sys.rows
            .iter()
            .map(|row| {
                if row.is_edge {
                    None
                } else {
                    let c = next;
                    next += 1;
                    Some(c)
                }
            })
            .collect()
    };
    let width = 2 * n + m + z_cols.iter().flatten().count();

    let mut tableau: Vec<Vec<BigRational>> = vec![vec![BigRational::zero(); width]; m];
    let mut rhs: Vec<BigRational> = vec![BigRational::zero(); m];
    let mut basis: Vec<usize> = vec![0; m];

    for (i, row) in sys.rows.iter().enumerate() {
        for &v in &row.subset {
            let v = v as usize - 1;
            // Rows are stored in >=-negated equality form, so the label
            // coefficients are -1 on x+ and +1 on x-.
            tableau[i][xp(v)] = -BigRational::one();
            tableau[i][xm(v)] = BigRational::one();
        }
        if row.is_edge {
            // sum >= 0  <=>  -sum + s = 0
            tableau[i][s_col(i)] = BigRational::one();
            basis[i] = s_col(i);
        } else {
            // sum <= -1  <=>  -sum - s + z = 1
            tableau[i][s_col(i)] = -BigRational::one();
            let z = z_cols[i].expect("non-edge rows carry an artificial");
            tableau[i][z] = BigRational::one();
            rhs[i] = BigRational::one();
            basis[i] = z;
        }
    }

    // Phase-1 reduced costs: cost 1 on artificials, then zero out the basic
    // artificial columns by subtracting their rows.
    let mut obj: Vec<BigRational> = vec![BigRational::zero(); width];
    let mut value = BigRational::zero();
    for (i, z) in z_cols.iter().enumerate() {
        if let Some(z) = z {
            obj[*z] = BigRational::one();
            for j in 0..width {
                if !tableau[i][j].is_zero() {
                    let t = &obj[j] - &tableau[i][j];
                    obj[j] = t;
                }
            }
            value += &rhs[i];
        }
    }

    // Bland: entering column = least index with negative reduced cost.
    while let Some(enter) = (0..width).find(|&j| obj[j].is_negative()) {
        // Ratio test; ties go to the row whose basic variable has the least
        // index (the other half of Bland's rule).
        let mut leave: Option<usize> = None;
        let mut best: Option<BigRational> = None;
        for i in 0..m {
            if tableau[i][enter].is_positive() {
                let ratio = &rhs[i] / &tableau[i][enter];
                let better = match &best {
                    None => true,
                    Some(b) => ratio < *b || (ratio == *b && basis[i] < basis[leave.unwrap()]),
                };
                if better {
                    best = Some(ratio);
                    leave = Some(i);
                }
            }
        }
        let leave = leave.expect("phase-1 objective is bounded below, a pivot row must exist");

        // Normalize the pivot row.
        let pivot = tableau[leave][enter].clone();
        let prow = {
            let mut prow = std::mem::take(&mut tableau[leave]);
            for e in prow.iter_mut() {
                if !e.is_zero() {
                    *e /= &pivot;
                }
            }
            prow
        };
        let prhs = {
            let mut r = std::mem::take(&mut rhs[leave]);
            r /= &pivot;
            r
        };

        // Eliminate the entering column elsewhere.
        for i in 0..m {
            if i == leave {
                continue;
            }
            let factor = tableau[i][enter].clone();
            if factor.is_zero() {
                continue;
            }
            for (j, pe) in prow.iter().enumerate() {
                if !pe.is_zero() {
                    let t = &tableau[i][j] - &(pe * &factor);
                    tableau[i][j] = t;
                }
            }
            let t = &rhs[i] - &(&prhs * &factor);
            rhs[i] = t;
        }
        let factor = obj[enter].clone();
        value += &factor * &prhs;
        for (j, pe) in prow.iter().enumerate() {
            if !pe.is_zero() {
                let t = &obj[j] - &(pe * &factor);
                obj[j] = t;
            }
        }

        tableau[leave] = prow;
        rhs[leave] = prhs;
        basis[leave] = enter;
    }

    if value.is_zero() {
        let mut x = vec![BigRational::zero(); n];
        for i in 0..m {
            let b = basis[i];
            if b < n {
                x[b] += &rhs[i];
            } else if b < 2 * n {
                x[b - n] -= &rhs[i];
            }
        }
        LpOutcome::Feasible(x)
    } else {
        // Reduced costs on the slack/surplus columns are exactly the Farkas
        // multipliers of the original rows (edge rows were negated, which
        // flips the sign back); normalizing by the optimum makes the
        // non-edge multipliers sum to 1.
        let dual: Vec<BigRational> = (0..m).map(|i| &obj[s_col(i)] / &value).collect();
        debug_assert!(check_dual_certificate(sys, &dual));
        LpOutcome::Infeasible(dual)
    }
}

/// Verifies a Farkas certificate against the system without re-solving:
/// all multipliers nonnegative, the per-vertex edge and non-edge
/// contributions cancel, and the non-edge multipliers sum to at least 1.
pub fn check_dual_certificate(sys: &LpSystem, dual: &[BigRational]) -> bool {
    if dual.len() != sys.rows.len() {
        return false;
    }
    if dual.iter().any(|y| y.is_negative()) {
        return false;
    }
    let mut balance = vec![BigRational::zero(); sys.n];
    let mut rhs_sum = BigRational::zero();
    for (row, y) in sys.rows.iter().zip(dual) {
        for &v in &row.subset {
            if row.is_edge {
                balance[v as usize - 1] += y;
            } else {
                balance[v as usize - 1] -= y;
            }
        }
        if !row.is_edge {
            rhs_sum += y;
        }
    }
    balance.iter().all(|b| b.is_zero()) && rhs_sum >= BigRational::one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{subset_sum, Edge, Labeling};
    use num_bigint::BigInt;

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
    fn system_has_one_row_per_subset() {
        let sys = build_system(&p4()).unwrap();
        assert_eq!(sys.rows.len(), 6);
        assert_eq!(sys.rows.iter().filter(|r| r.is_edge).count(), 3);
    }

    #[test]
    fn row_limit_guard() {
        let h = Hypergraph::empty(3, 20); // C(20,3) = 1140 > 512
        assert!(matches!(build_system(&h), Err(Error::TooLarge(_))));
    }

    #[test]
    fn feasible_two_edge_instance() {
        let lab = Labeling::from_i64(3, &[0, 1, 1, -2]).unwrap();
        let h = crate::model::materialize(&lab).unwrap();
        let sys = build_system(&h).unwrap();
        match solve_phase1(&sys) {
            LpOutcome::Feasible(x) => {
                for row in &sys.rows {
                    let sum: BigRational =
                        row.subset.iter().map(|&v| x[v as usize - 1].clone()).sum();
                    if row.is_edge {
                        assert!(!sum.is_negative());
                    } else {
                        assert!(sum <= -BigRational::one());
                    }
                }
            }
            LpOutcome::Infeasible(_) => panic!("separable instance reported infeasible"),
        }
    }

    #[test]
    fn complete_hypergraph_is_feasible_with_no_nonedge_rows() {
        let h = Hypergraph::complete(3, 5);
        let sys = build_system(&h).unwrap();
        match solve_phase1(&sys) {
            LpOutcome::Feasible(x) => {
                // No non-edge rows, so the trivial all-zero point works and
                // phase-1 never needs a pivot.
                assert!(x.iter().all(|r| r.is_zero()));
            }
            LpOutcome::Infeasible(_) => panic!("complete hypergraph is separable"),
        }
    }

    #[test]
    fn p4_is_infeasible_with_checkable_certificate() {
        let sys = build_system(&p4()).unwrap();
        match solve_phase1(&sys) {
            LpOutcome::Feasible(_) => panic!("P4 is not a threshold graph"),
            LpOutcome::Infeasible(dual) => {
                assert!(check_dual_certificate(&sys, &dual));
            }
        }
    }

    #[test]
    fn certificate_checker_rejects_junk() {
        let sys = build_system(&p4()).unwrap();
        let junk = vec![BigRational::from_integer(BigInt::from(1)); sys.rows.len()];
        assert!(!check_dual_certificate(&sys, &junk));
        assert!(!check_dual_certificate(&sys, &[]));
    }

    #[test]
    fn paper_witness_satisfies_all_rows() {
        // The witness (0,1,1,-2) for the two-edge instance: edge sums 2 and
        // 0, non-edge sums -1 and -1.
        let lab = Labeling::from_i64(3, &[0, 1, 1, -2]).unwrap();
        let h = crate::model::materialize(&lab).unwrap();
        let sys = build_system(&h).unwrap();
        for row in &sys.rows {
            let sum = subset_sum(&lab, &row.subset).unwrap();
            if row.is_edge {
                assert!(sum >= BigInt::from(0));
            } else {
                assert!(sum <= BigInt::from(-1));
            }
        }
    }
}
