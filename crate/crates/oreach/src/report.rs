//! Machine-readable verification reports. Field order is fixed by the
//! struct layout and every map is ordered, so equal verdicts serialize to
//! identical bytes.

use std::collections::BTreeMap;

use oreach_core::breach::{Status, Verdict};
use oreach_core::oracle::Elem;
use oreach_core::sas::ArtifactSystem;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub step: usize,
    pub transition: String,
}

/// Variable values before step `step` (after the previous transition),
/// and the parameters of the transition taken from there.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepAssignment {
    pub step: usize,
    pub transition: Option<String>,
    pub state: BTreeMap<String, Elem>,
    pub params: BTreeMap<String, Elem>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub domain: Vec<Elem>,
    pub concepts: BTreeMap<String, Vec<Elem>>,
    pub roles: BTreeMap<String, Vec<(Elem, Elem)>>,
    pub constants: BTreeMap<String, Elem>,
    pub assignments: Vec<StepAssignment>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceReport {
    pub status: String,
    pub iterations: usize,
    pub trace: Vec<TraceStep>,
    /// The unrolled run formula of an unsafe trace.
    pub formula: Option<String>,
    pub witness: Option<WitnessReport>,
}

fn names<V: Copy>(m: &BTreeMap<oreach_core::logic::Name, V>) -> BTreeMap<String, V> {
    m.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

impl TraceReport {
    pub fn from_verdict(s: &ArtifactSystem, v: &Verdict) -> Self {
        let Some(tr) = v.trace.as_ref().filter(|_| v.status == Status::Unsafe) else {
            return TraceReport {
                status: v.status.to_string(),
                iterations: v.iterations,
                trace: Vec::new(),
                formula: None,
                witness: None,
            };
        };
        let trace =
            tr.names.iter().enumerate().map(|(i, n)| TraceStep { step: i, transition: n.to_string() }).collect();
        let witness = tr.witness.as_ref().map(|run| {
            let m = &run.model;
            let assignments = run
                .states
                .iter()
                .enumerate()
                .map(|(h, st)| StepAssignment {
                    step: h,
                    transition: tr.transitions.get(h).map(|&j| s.transitions[j].name.to_string()),
                    state: names(st),
                    params: run.params.get(h).map(names).unwrap_or_default(),
                })
                .collect();
            WitnessReport {
                domain: m.domain.clone(),
                concepts: m.concepts.iter().map(|(c, ext)| (c.to_string(), ext.iter().copied().collect())).collect(),
                roles: m.roles.iter().map(|(r, ext)| (r.to_string(), ext.iter().copied().collect())).collect(),
                constants: names(&m.constants),
                assignments,
            }
        });
        TraceReport {
            status: v.status.to_string(),
            iterations: v.iterations,
            trace,
            formula: Some(tr.formula.to_string()),
            witness,
        }
    }

    pub fn inconclusive(iterations: usize) -> Self {
        TraceReport { status: String::from("inconclusive"), iterations, trace: Vec::new(), formula: None, witness: None }
    }

    /// Pretty-printed JSON, newline-terminated.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports always serialize");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_order_and_round_trip() {
        let r = TraceReport {
            status: "unsafe".into(),
            iterations: 2,
            trace: vec![TraceStep { step: 0, transition: "t1".into() }],
            formula: Some("x@0 = u".into()),
            witness: Some(WitnessReport {
                domain: vec![0, 1],
                concepts: [("User".to_string(), vec![1])].into_iter().collect(),
                roles: [("r".to_string(), vec![(0, 1)])].into_iter().collect(),
                constants: [("u".to_string(), 0)].into_iter().collect(),
                assignments: vec![],
            }),
        };
        let json = r.to_json();
        assert!(json.ends_with("}\n"));
        let keys = ["\"status\"", "\"iterations\"", "\"trace\"", "\"formula\"", "\"witness\"", "\"domain\"", "\"concepts\""];
        let pos: Vec<usize> = keys.iter().map(|k| json.find(k).unwrap()).collect();
        assert!(pos.windows(2).all(|w| w[0] < w[1]));
        let back: TraceReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
        assert!(TraceReport::inconclusive(3).to_json().contains("\"witness\": null"));
    }
}
