//! Canonical JSON formats for instances and certificates.
//!
//! Instances are tagged objects:
//!
//! ```json
//! {"type":"hypergraph","k":3,"n":15,"edges":[[1,2,3],[2,3,4]]}
//! {"type":"labeling","k":3,"n":4,"a":[0,1,1,-2]}
//! {"type":"matching","k":3,"n":15,"edges":[[1,2,3]]}
//! ```
//!
//! Labels are JSON integers while they fit in 64 bits and decimal strings
//! beyond that; both forms parse back.

use std::path::Path;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Edge, EliminationOrder, Hypergraph, Labeling, Matching, VertexRole};
use crate::reductions::LiftedInstance;
use crate::separable::DualCertificate;

/// An integer that serializes as a JSON number when it fits in i64 and as a
/// decimal string otherwise.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum JsonInt {
    Small(i64),
    Big(String),
}

impl JsonInt {
    pub fn from_bigint(x: &BigInt) -> Self {
        match i64::try_from(x) {
            Ok(v) => JsonInt::Small(v),
            Err(_) => JsonInt::Big(x.to_string()),
        }
    }

    pub fn to_bigint(&self) -> Result<BigInt> {
        match self {
            JsonInt::Small(v) => Ok(BigInt::from(*v)),
            JsonInt::Big(s) => BigInt::from_str(s)
                .map_err(|_| Error::Invalid(format!("not a decimal integer: {s:?}"))),
        }
    }
}

/// Wire form of the three instance kinds.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum InstanceDoc {
    Hypergraph {
        k: usize,
        n: usize,
        edges: Vec<Vec<u32>>,
    },
    Labeling {
        k: usize,
        n: usize,
        a: Vec<JsonInt>,
    },
    Matching {
        k: usize,
        n: usize,
        edges: Vec<Vec<u32>>,
    },
}

/// A parsed and validated instance.
#[derive(Clone, Debug)]
pub enum Instance {
    Hypergraph(Hypergraph),
    Labeling(Labeling),
    Matching {
        k: usize,
        n: usize,
        matching: Matching,
    },
}

impl Instance {
    pub fn kind(&self) -> &'static str {
        match self {
            Instance::Hypergraph(_) => "hypergraph",
            Instance::Labeling(_) => "labeling",
            Instance::Matching { .. } => "matching",
        }
    }
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    let doc: InstanceDoc = serde_json::from_str(text)?;
    match doc {
        InstanceDoc::Hypergraph { k, n, edges } => {
            let edges = edges
                .into_iter()
                .map(Edge::new)
                .collect::<Result<Vec<_>>>()?;
            Ok(Instance::Hypergraph(Hypergraph::new(k, n, edges)?))
        }
        InstanceDoc::Labeling { k, n, a } => {
            if a.len() != n {
                return Err(Error::Invalid(format!(
                    "labeling declares n={n} but carries {} labels",
                    a.len()
                )));
            }
            let labels = a
                .iter()
                .map(JsonInt::to_bigint)
                .collect::<Result<Vec<_>>>()?;
            Ok(Instance::Labeling(Labeling::new(k, labels)?))
        }
        InstanceDoc::Matching { k, n, edges } => {
            let edges = edges
                .into_iter()
                .map(Edge::new)
                .collect::<Result<Vec<_>>>()?;
            for e in &edges {
                if e.len() != k {
                    return Err(Error::Invalid(format!(
                        "matching edge {e} is not a {k}-set"
                    )));
                }
                if e.vertices().last().is_some_and(|&v| v as usize > n) {
                    return Err(Error::Invalid(format!("matching edge {e} leaves 1..={n}")));
                }
            }
            Ok(Instance::Matching {
                k,
                n,
                matching: Matching::new(edges)?,
            })
        }
    }
}

pub fn read_instance(path: &Path) -> Result<Instance> {
    parse_instance(&std::fs::read_to_string(path)?)
}

pub fn hypergraph_json(h: &Hypergraph) -> String {
    let doc = InstanceDoc::Hypergraph {
        k: h.k(),
        n: h.n(),
        edges: h.edges().map(|e| e.vertices().to_vec()).collect(),
    };
    serde_json::to_string(&doc).expect("instance docs serialize")
}

pub fn labeling_json(lab: &Labeling) -> String {
    let doc = InstanceDoc::Labeling {
        k: lab.k(),
        n: lab.n(),
        a: lab.labels().iter().map(JsonInt::from_bigint).collect(),
    };
    serde_json::to_string(&doc).expect("instance docs serialize")
}

pub fn matching_json(k: usize, n: usize, m: &Matching) -> String {
    let doc = InstanceDoc::Matching {
        k,
        n,
        edges: m.edges().map(|e| e.vertices().to_vec()).collect(),
    };
    serde_json::to_string(&doc).expect("instance docs serialize")
}

/// Elimination-order certificate: `{"order":[v,...],"roles":["D"|"I",...]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OrderCertificateDoc {
    pub order: Vec<u32>,
    pub roles: Vec<String>,
}

pub fn order_certificate_json(order: &EliminationOrder) -> String {
    let doc = OrderCertificateDoc {
        order: order.entries().iter().map(|e| e.0).collect(),
        roles: order.roles().map(|r| r.to_string()).collect(),
    };
    serde_json::to_string(&doc).expect("certificates serialize")
}

pub fn parse_order_certificate(text: &str) -> Result<EliminationOrder> {
    let doc: OrderCertificateDoc = serde_json::from_str(text)?;
    if doc.order.len() != doc.roles.len() {
        return Err(Error::Invalid("order and roles lengths differ".into()));
    }
    let entries = doc
        .order
        .iter()
        .zip(&doc.roles)
        .map(|(&v, r)| {
            let role = match r.as_str() {
                "D" => VertexRole::Dominating,
                "I" => VertexRole::Isolating,
                other => return Err(Error::Invalid(format!("unknown role {other:?}"))),
            };
            Ok((v, role))
        })
        .collect::<Result<Vec<_>>>()?;
    EliminationOrder::new(entries)
}

/// Infeasibility certificate: `{"infeasible":true,"dual":["p/q",...]}` with
/// one multiplier per k-subset row in lexicographic order.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DualCertificateDoc {
    pub infeasible: bool,
    pub dual: Vec<String>,
}

pub fn dual_certificate_json(cert: &DualCertificate) -> String {
    let doc = DualCertificateDoc {
        infeasible: true,
        dual: cert.multipliers.iter().map(|r| r.to_string()).collect(),
    };
    serde_json::to_string(&doc).expect("certificates serialize")
}

pub fn parse_dual_certificate(text: &str) -> Result<DualCertificate> {
    let doc: DualCertificateDoc = serde_json::from_str(text)?;
    let multipliers = doc
        .dual
        .iter()
        .map(|s| {
            BigRational::from_str(s).map_err(|_| Error::Invalid(format!("not a rational: {s:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(DualCertificate { multipliers })
}

/// Wire form of a lifted instance:
/// `{"original_n":..,"k":..,"b":"<decimal>","a_prime":[...]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LiftedInstanceDoc {
    pub original_n: usize,
    pub k: usize,
    pub b: String,
    pub a_prime: Vec<JsonInt>,
}

pub fn lifted_instance_json(lift: &LiftedInstance) -> String {
    let doc = LiftedInstanceDoc {
        original_n: lift.original_n,
        k: lift.k_target,
        b: lift.b.to_string(),
        a_prime: lift
            .labeling_prime
            .labels()
            .iter()
            .map(JsonInt::from_bigint)
            .collect(),
    };
    serde_json::to_string(&doc).expect("instance docs serialize")
}

pub fn parse_lifted_instance(text: &str) -> Result<LiftedInstance> {
    let doc: LiftedInstanceDoc = serde_json::from_str(text)?;
    let b = BigInt::from_str(&doc.b)
        .map_err(|_| Error::Invalid(format!("not a decimal integer: {:?}", doc.b)))?;
    let labels = doc
        .a_prime
        .iter()
        .map(JsonInt::to_bigint)
        .collect::<Result<Vec<_>>>()?;
    Ok(LiftedInstance {
        original_n: doc.original_n,
        k_target: doc.k,
        b,
        labeling_prime: Labeling::new(doc.k, labels)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_canonical_forms() {
        let h = parse_instance(r#"{"type":"hypergraph","k":3,"n":4,"edges":[[1,2,3],[2,3,4]]}"#)
            .unwrap();
        match h {
            Instance::Hypergraph(h) => assert_eq!(h.edge_count(), 2),
            _ => panic!("expected hypergraph"),
        }
        let l = parse_instance(r#"{"type":"labeling","k":3,"n":4,"a":[0,1,1,-2]}"#).unwrap();
        match l {
            Instance::Labeling(l) => assert_eq!(l.n(), 4),
            _ => panic!("expected labeling"),
        }
        let m = parse_instance(r#"{"type":"matching","k":2,"n":4,"edges":[[1,2],[3,4]]}"#).unwrap();
        match m {
            Instance::Matching { matching, .. } => assert_eq!(matching.len(), 2),
            _ => panic!("expected matching"),
        }
    }

    #[test]
    fn big_labels_round_trip_as_strings() {
        let huge: BigInt = BigInt::from(1) << 100;
        let lab = Labeling::new(3, vec![huge.clone(), -huge.clone(), BigInt::from(1)]).unwrap();
        let text = labeling_json(&lab);
        assert!(text.contains('"'));
        match parse_instance(&text).unwrap() {
            Instance::Labeling(back) => assert_eq!(back, lab),
            _ => panic!("expected labeling"),
        }
    }

    #[test]
    fn rejects_mismatched_labeling_length() {
        assert!(parse_instance(r#"{"type":"labeling","k":3,"n":5,"a":[1,2]}"#).is_err());
    }

    #[test]
    fn order_certificate_round_trip() {
        use VertexRole::{Dominating as D, Isolating as I};
        let o = EliminationOrder::new(vec![(2, D), (1, I), (3, D)]).unwrap();
        let text = order_certificate_json(&o);
        let back = parse_order_certificate(&text).unwrap();
        assert_eq!(back, o);
    }

    #[test]
    fn dual_certificate_round_trip() {
        use num_bigint::BigInt;
        let cert = DualCertificate {
            multipliers: vec![
                BigRational::new(BigInt::from(1), BigInt::from(2)),
                BigRational::from_integer(BigInt::from(3)),
            ],
        };
        let text = dual_certificate_json(&cert);
        let back = parse_dual_certificate(&text).unwrap();
        assert_eq!(back.multipliers, cert.multipliers);
    }

    proptest! {
        /// Serialize-then-parse is the identity on hypergraph instances.
        #[test]
        fn hypergraph_round_trip(
            n in 1usize..8,
            k in 1usize..4,
            picks in proptest::collection::vec(proptest::bits::u32::ANY, 0..12),
        ) {
            use itertools::Itertools;
            let k = k.min(n);
            let all: Vec<Vec<u32>> = (1..=n as u32).combinations(k).collect();
            let edges = picks
                .iter()
                .map(|p| all[*p as usize % all.len()].clone())
                .map(|c| Edge::new(c).unwrap());
            let h = Hypergraph::new(k, n, edges).unwrap();
            let text = hypergraph_json(&h);
            match parse_instance(&text).unwrap() {
                Instance::Hypergraph(back) => prop_assert_eq!(back, h),
                _ => prop_assert!(false, "wrong kind"),
            }
        }

        /// Serialize-then-parse is the identity on labelings.
        #[test]
        fn labeling_round_trip(labels in proptest::collection::vec(-100i64..=100, 0..10)) {
            let lab = Labeling::from_i64(3, &labels).unwrap();
            let text = labeling_json(&lab);
            match parse_instance(&text).unwrap() {
                Instance::Labeling(back) => prop_assert_eq!(back, lab),
                _ => prop_assert!(false, "wrong kind"),
            }
        }
    }
}
