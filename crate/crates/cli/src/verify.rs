//! Cross-oracle property suites behind `hypermatch verify`.
//!
//! Every polynomial algorithm is replayed against its exponential oracle on
//! seeded random instances at desk scale. A violated property dumps a
//! counterexample instance (edge-minimized where that makes sense) and the
//! whole run exits 1.

use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hypermatch::json::{hypergraph_json, labeling_json};
use hypermatch::model::materialize;
use hypermatch::oracle::{
    brute_force_matching, brute_force_orderable, brute_force_separable, MembershipOracle,
};
use hypermatch::simplex::{build_system, check_dual_certificate};
use hypermatch::{
    compute_r_sequence, construct_matching_orderable, counterexample, decide_matching_orderable,
    find_elimination_order, find_separating_labeling, is_perfect_matching, labeling_to_order_k2,
    lift_to_k, order_to_labeling, pull_back_matching, push_forward_matching,
    three_partition_to_geq, verify_elimination_order, Hypergraph, Labeling, LiftOutcome,
    RecognitionOutcome, Separability, ThreePartitionOutcome, VertexRole,
};

use crate::Suite;

struct PropertyResult {
    name: &'static str,
    passed: u64,
    total: u64,
    counterexample: Option<PathBuf>,
}

impl PropertyResult {
    fn ok(&self) -> bool {
        self.passed == self.total && self.counterexample.is_none()
    }
}

pub fn run_suites(suite: Suite, trials: u64, seed: u64, out_dir: &Path) -> anyhow::Result<u8> {
    let mut results: Vec<PropertyResult> = Vec::new();
    let run_orderable = matches!(suite, Suite::Orderable | Suite::All);
    let run_separable = matches!(suite, Suite::Separable | Suite::All);
    let run_reductions = matches!(suite, Suite::Reductions | Suite::All);

    if run_orderable {
        results.push(recognition_matches_oracle(trials, seed, out_dir)?);
        results.push(decide_matches_matching_oracle(trials, seed, out_dir)?);
        results.push(membership_budget(trials, seed)?);
        results.push(r_sequence_identity(trials, seed)?);
        results.push(append_dominating_preserves(trials, seed)?);
    }
    if run_separable {
        results.push(lp_sound_and_complete_small(trials, seed, out_dir)?);
        results.push(orderable_contained_in_separable(trials, seed, out_dir)?);
        results.push(k2_separable_equals_orderable(trials, seed)?);
        results.push(strict_containment_witnesses()?);
    }
    if run_reductions {
        results.push(three_partition_equivalence(trials, seed, out_dir)?);
        results.push(lift_equivalence(trials, seed, out_dir)?);
        results.push(lift_roundtrip_and_shape(trials, seed)?);
    }

    let mut all_ok = true;
    for r in &results {
        let verdict = if r.ok() { "PASS" } else { "FAIL" };
        match &r.counterexample {
            None => println!("{verdict} {}: {}/{}", r.name, r.passed, r.total),
            Some(path) => println!(
                "{verdict} {}: {}/{} (counterexample: {})",
                r.name,
                r.passed,
                r.total,
                path.display()
            ),
        }
        all_ok &= r.ok();
    }
    Ok(if all_ok { 0 } else { 1 })
}

/// Shrinks a failing hypergraph by deleting edges while the failure
/// persists, then dumps it.
fn dump_hypergraph(
    out_dir: &Path,
    name: &str,
    h: &Hypergraph,
    fails: impl Fn(&Hypergraph) -> bool,
) -> anyhow::Result<PathBuf> {
    let mut current = h.clone();
    loop {
        let mut shrunk = None;
        for e in current.edges() {
            let edges = current.edges().filter(|x| *x != e).cloned();
            let candidate = Hypergraph::new(current.k(), current.n(), edges)?;
            if fails(&candidate) {
                shrunk = Some(candidate);
                break;
            }
        }
        match shrunk {
            Some(c) => current = c,
            None => break,
        }
    }
    let path = out_dir.join(format!("counterexample-{name}.json"));
    std::fs::write(&path, format!("{}\n", hypergraph_json(&current)))?;
    Ok(path)
}

fn dump_labeling(out_dir: &Path, name: &str, lab: &Labeling) -> anyhow::Result<PathBuf> {
    let path = out_dir.join(format!("counterexample-{name}.json"));
    std::fs::write(&path, format!("{}\n", labeling_json(lab)))?;
    Ok(path)
}

fn recognition_matches_oracle(
    trials: u64,
    seed: u64,
    out_dir: &Path,
) -> anyhow::Result<PropertyResult> {
    let name = "orderable/recognition-vs-oracle";
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut passed = 0;
    for t in 0..trials {
        let k = if rng.random_bool(0.5) { 2 } else { 3 };
        let n = rng.random_range(k + 1..=7);
        let p = rng.random_range(0.15..0.85);
        let h = hypermatch::gen::random_hypergraph(n, k, p, &mut rng)?;
        let mismatch = |h: &Hypergraph| {
            let rec = find_elimination_order(h);
            let truth = brute_force_orderable(h).expect("n <= 7");
            if rec.is_orderable() != truth {
                return true;
            }
            rec.order()
                .is_some_and(|o| !verify_elimination_order(h, o).0)
        };
        if mismatch(&h) {
            let path = dump_hypergraph(out_dir, "recognition", &h, mismatch)?;
            return Ok(PropertyResult {
                name,
                passed,
                total: trials - t,
                counterexample: Some(path),
            });
        }
        passed += 1;
    }
    Ok(PropertyResult {
        name,
        passed,
        total: trials,
        counterexample: None,
    })
}

fn decide_matches_matching_oracle(
    trials: u64,
    seed: u64,
    out_dir: &Path,
) -> anyhow::Result<PropertyResult> {
    let name = "orderable/decide-vs-matching-oracle";
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x6f72_6462);
    let mut passed = 0;
    for t in 0..trials {
        let n = *[9usize, 12, 15].get(rng.random_range(0..3)).unwrap();
        let p = rng.random_range(0.2..0.8);
        let h = hypermatch::gen::random_orderable(n, 3, p, &mut rng)?;
        let bad = |h: &Hypergraph| {
            let Ok(decided) = decide_matching_orderable(h) else {
                return true;
            };
            let truth = brute_force_matching(&MembershipOracle::Hypergraph(h))
                .expect("n within DP limit")
                .is_some();
            if decided != truth {
                return true;
            }
            match construct_matching_orderable(h) {
                Ok(Some(m)) => !is_perfect_matching(h, &m),
                Ok(None) => decided,
                Err(_) => true,
            }
        };
        if bad(&h) {
            let path = dump_hypergraph(out_dir, "decide", &h, bad)?;
            return Ok(PropertyResult {
                name,
                passed,
                total: trials - t,
                counterexample: Some(path),
            });
        }
        passed += 1;
    }
    Ok(PropertyResult {
        name,
        passed,
        total: trials,
        counterexample: None,
    })
}

fn membership_budget(trials: u64, seed: u64) -> anyhow::Result<PropertyResult> {
    let name = "orderable/membership-budget";
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x6275_6467);
    let mut passed = 0;
    for _ in 0..trials {
        let k = rng.random_range(2..=3);
        let orderable = rng.random_bool(0.5);
        let n = rng.random_range(k + 1..=10);
        let h = if orderable {
            hypermatch::gen::random_orderable(n, k, 0.5, &mut rng)?
        } else {
            hypermatch::gen::random_hypergraph(n, k, 0.4, &mut rng)?
        };
        let rec = find_elimination_order(&h);
        let budget = (n as u64).pow(k as u32 + 1);
        anyhow::ensure!(
            rec.membership_tests <= budget,
            "recognizer spent {} membership tests on n={n}, k={k} (budget {budget})",
            rec.membership_tests
        );
        passed += 1;
    }
    Ok(PropertyResult {
        name,
        passed,
        total: trials,
        counterexample: None,
    })
}

fn r_sequence_identity(trials: u64, seed: u64) -> anyhow::Result<PropertyResult> {
    let name = "orderable/r-identity";
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x7273_6571);
    let mut passed = 0;
    for _ in 0..trials {
        let k = rng.random_range(1..=5);
        let n = rng.random_range(1..=20);
        let roles = hypermatch::gen::random_roles(n, k, 0.5, &mut rng);
        let order = hypermatch::EliminationOrder::from_roles(&roles);
        let r = compute_r_sequence(&order, k);
        for j in 1..=n {
            let mut d = 0i64;
            let mut i = 0i64;
            for pos in j..=n {
                let role = if pos < k {
                    VertexRole::Dominating
                } else {
                    roles[pos - 1]
                };
                match role {
                    VertexRole::Dominating => d += 1,
                    VertexRole::Isolating => i += 1,
                }
            }
            anyhow::ensure!(
                r.r(j) == (k as i64 - 1) * d - i,
                "r_{j} != (k-1)d - i for roles {roles:?}, k={k}"
            );
        }
        passed += 1;
    }
    Ok(PropertyResult {
        name,
        passed,
        total: trials,
        counterexample: None,
    })
}

fn append_dominating_preserves(trials: u64, seed: u64) -> anyhow::Result<PropertyResult> {
    let name = "orderable/append-dominating";
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x6170_7064);
    let mut passed = 0;
    for _ in 0..trials {
        use itertools::Itertools;
        let k = rng.random_range(2..=3);
        let n = rng.random_range(k..=8);
        let h = hypermatch::gen::random_orderable(n, k, 0.5, &mut rng)?;
        let v = n as u32 + 1;
        let mut edges: Vec<hypermatch::Edge> = h.edges().cloned().collect();
        for combo in (1..=n as u32).combinations(k - 1) {
            let mut vs = combo;
            vs.push(v);
            edges.push(hypermatch::Edge::new(vs)?);
        }
        let bigger = Hypergraph::new(k, n + 1, edges)?;
        let rec = find_elimination_order(&bigger);
        anyhow::ensure!(
            rec.is_orderable(),
            "appending a dominating vertex broke orderability"
        );
        passed += 1;
    }
    Ok(PropertyResult {
        name,
        passed,
        total: trials,
        counterexample: None,
    })
}

fn lp_sound_and_complete_small(
    trials: u64,
    seed: u64,
    out_dir: &Path,
) -> anyhow::Result<PropertyResult> {
    let name = "separable/lp-vs-bounded-search";
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x6c70_736d);
    let mut passed = 0;
    for t in 0..trials {
        let k = rng.random_range(2..=3);
        let n = rng.random_range(k..=5);
        let p = rng.random_range(0.2..0.8);
        let h = hypermatch::gen::random_hypergraph(n, k, p, &mut rng)?;
        let bad = |h: &Hypergraph| match find_separating_labeling(h) {
            Ok(Separability::Separable(lab)) => materialize(&lab).map(|m| m != *h).unwrap_or(true),
            Ok(Separability::NotSeparable(cert)) => {
                let sys = build_system(h).expect("within row limit");
                if !check_dual_certificate(&sys, &cert.multipliers) {
                    return true;
                }
                // LP says no, so no bounded separator may exist.
                brute_force_separable(h, 8).expect("n <= 5").is_some()
            }
            Err(_) => true,
        };
        if bad(&h) {
            let path = dump_hypergraph(out_dir, "lp-small", &h, bad)?;
            return Ok(PropertyResult {
                name,
                passed,
                total: trials - t,
                counterexample: Some(path),
            });
        }
        passed += 1;
    }
    Ok(PropertyResult {
        name,
        passed,
        total: trials,
        counterexample: None,
    })
}

fn orderable_contained_in_separable(
    trials: u64,
    seed: u64,
    out_dir: &Path,
) -> anyhow::Result<PropertyResult> {
    let name = "separable/orderable-is-separable";
    // LP instances up to n = 12 are exact rational solves; cap the trial
    // count so the suite stays at desk scale.
    let trials = trials.min(40);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x636f_6e74);
    let mut passed = 0;
    for t in 0..trials {
        let k = rng.random_range(2..=3);
        let n = rng.random_range(k + 1..=12);
        let h = hypermatch::gen::random_orderable(n, k, 0.5, &mut rng)?;
        let bad = |h: &Hypergraph| {
            let rec = find_elimination_order(h);
            let Some(order) = rec.order() else {
                return true;
            };
            let lab = order_to_labeling(order, h.k()).expect("k >= 1");
            if materialize(&lab).map(|m| m != *h).unwrap_or(true) {
                return true;
            }
            !matches!(find_separating_labeling(h), Ok(Separability::Separable(_)))
        };
        if bad(&h) {
            let path = dump_hypergraph(out_dir, "containment", &h, bad)?;
            return Ok(PropertyResult {
                name,
                passed,
                total: trials - t,
                counterexample: Some(path),
            });
        }
        passed += 1;
    }
    Ok(PropertyResult {
        name,
        passed,
        total: trials,
        counterexample: None,
    })
}

fn k2_separable_equals_orderable(trials: u64, seed: u64) -> anyhow::Result<PropertyResult> {
    let name = "separable/k2-equivalence";
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x6b32_6532);
    let mut passed = 0;
    for _ in 0..trials {
        let k = rng.random_range(1..=2);
        let n = rng.random_range(1..=8);
        let lab = hypermatch::gen::random_labeling(n, k, 8, &mut rng)?;
        let h = materialize(&lab)?;
        anyhow::ensure!(
            find_elimination_order(&h).is_orderable(),
            "separable k={k} instance not recognized as orderable: {:?}",
            lab.labels()
        );
        let order = labeling_to_order_k2(&lab)?;
        anyhow::ensure!(
            verify_elimination_order(&h, &order).0,
            "extraction order rejected for labels {:?}",
            lab.labels()
        );
        passed += 1;
    }
    Ok(PropertyResult {
        name,
        passed,
        total: trials,
        counterexample: None,
    })
}

fn strict_containment_witnesses() -> anyhow::Result<PropertyResult> {
    let name = "separable/strictness-witnesses";
    let mut passed = 0;
    let mut total = 0;
    for k in 3..=5 {
        for n in k + 1..=k + 4 {
            total += 1;
            let lab = counterexample(k, n)?;
            let h = materialize(&lab)?;
            anyhow::ensure!(
                h.edge_count() == 2,
                "witness k={k} n={n} has {} edges",
                h.edge_count()
            );
            anyhow::ensure!(
                matches!(
                    find_elimination_order(&h).outcome,
                    RecognitionOutcome::NotOrderable { .. }
                ),
                "witness k={k} n={n} was recognized orderable"
            );
            anyhow::ensure!(
                matches!(find_separating_labeling(&h)?, Separability::Separable(_)),
                "witness k={k} n={n} was rejected by the LP"
            );
            passed += 1;
        }
    }
    Ok(PropertyResult {
        name,
        passed,
        total,
        counterexample: None,
    })
}

fn three_partition_equivalence(
    trials: u64,
    seed: u64,
    out_dir: &Path,
) -> anyhow::Result<PropertyResult> {
    let name = "reductions/3-partition-equivalence";
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x3370_6172);
    let mut passed = 0;
    for t in 0..trials {
        let m = rng.random_range(1..=4);
        let lab = hypermatch::gen::random_three_partition(m, 6, &mut rng)?;
        match three_partition_to_geq(&lab)? {
            ThreePartitionOutcome::Geq(instance) => {
                let eq = brute_force_matching(&MembershipOracle::LabelingEq(&instance))?;
                let geq = brute_force_matching(&MembershipOracle::LabelingGeq(&instance))?;
                if eq.is_some() != geq.is_some() {
                    let path = dump_labeling(out_dir, "3-partition", &lab)?;
                    return Ok(PropertyResult {
                        name,
                        passed,
                        total: trials - t,
                        counterexample: Some(path),
                    });
                }
            }
            ThreePartitionOutcome::NoMatching(_) => {
                anyhow::bail!("generator produced a shortcut instance");
            }
        }
        passed += 1;
    }
    Ok(PropertyResult {
        name,
        passed,
        total: trials,
        counterexample: None,
    })
}

fn lift_equivalence(trials: u64, seed: u64, out_dir: &Path) -> anyhow::Result<PropertyResult> {
    let name = "reductions/lift-equivalence";
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x6c69_6674);
    let mut passed = 0;
    for t in 0..trials {
        let m = rng.random_range(1..=3);
        let k_target = rng.random_range(4..=5);
        let lab = hypermatch::gen::random_labeling(3 * m, 3, 4, &mut rng)?;
        let original_yes = brute_force_matching(&MembershipOracle::LabelingGeq(&lab))?.is_some();
        match lift_to_k(&lab, k_target)? {
            LiftOutcome::Lifted(lift) => {
                let lifted_yes =
                    brute_force_matching(&MembershipOracle::LabelingGeq(&lift.labeling_prime))?
                        .is_some();
                if original_yes != lifted_yes {
                    let path = dump_labeling(out_dir, "lift", &lab)?;
                    return Ok(PropertyResult {
                        name,
                        passed,
                        total: trials - t,
                        counterexample: Some(path),
                    });
                }
            }
            LiftOutcome::NoMatching(_) => {
                // The shortcut must agree with the oracle.
                if original_yes {
                    let path = dump_labeling(out_dir, "lift-shortcut", &lab)?;
                    return Ok(PropertyResult {
                        name,
                        passed,
                        total: trials - t,
                        counterexample: Some(path),
                    });
                }
            }
        }
        passed += 1;
    }
    Ok(PropertyResult {
        name,
        passed,
        total: trials,
        counterexample: None,
    })
}

fn lift_roundtrip_and_shape(trials: u64, seed: u64) -> anyhow::Result<PropertyResult> {
    use itertools::Itertools;
    let name = "reductions/lift-shape-and-roundtrip";
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x7368_6170);
    let mut passed = 0;
    for _ in 0..trials {
        let m = rng.random_range(1..=3);
        let k_target = rng.random_range(4..=5);
        let lab = hypermatch::gen::random_three_partition(m, 4, &mut rng)?;
        let LiftOutcome::Lifted(lift) = lift_to_k(&lab, k_target)? else {
            passed += 1;
            continue;
        };
        // Every edge of the lifted hypergraph meets the original vertex set
        // in at most 3 vertices.
        let n_prime = lift.lifted_n();
        for combo in (1..=n_prime as u32).combinations(k_target) {
            if MembershipOracle::LabelingGeq(&lift.labeling_prime).is_edge(&combo) {
                let inside = combo
                    .iter()
                    .filter(|&&v| v as usize <= lift.original_n)
                    .count();
                anyhow::ensure!(
                    inside <= 3,
                    "lifted edge {combo:?} meets V in {inside} vertices"
                );
            }
        }
        // Unary size stays polynomial in the input's unary size.
        {
            use num_bigint::BigUint;
            let size = lab.unary_size();
            let bound =
                BigUint::from(4usize) * BigUint::from(k_target) * BigUint::from(lab.n()) * &size;
            anyhow::ensure!(
                lift.labeling_prime.unary_size() <= bound,
                "unary size blow-up"
            );
        }
        if let Some(matching) = brute_force_matching(&MembershipOracle::LabelingGeq(&lab))? {
            let pushed = push_forward_matching(&matching, &lift)?;
            let pulled = pull_back_matching(&pushed, &lift)?;
            anyhow::ensure!(pulled == matching, "pull∘push is not the identity");
        }
        passed += 1;
    }
    Ok(PropertyResult {
        name,
        passed,
        total: trials,
        counterexample: None,
    })
}
