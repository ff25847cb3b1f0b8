//! Safety verification for data-aware processes over RDFS+ ontologies.
//!
//! The crate is `no_std` and needs only `alloc`. It contains the logic
//! kernel, the ontology translation into a universal theory, a CDCL SAT
//! core, grounding-based satisfiability, quantifier elimination in the
//! model completion, the artifact-system model, the backward reachability
//! engine and a brute-force semantic oracle. File formats and the command
//! line driver live in the `oreach` crate.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod breach;
pub mod cover;
pub mod ground;
pub mod logic;
pub mod ontology;
pub mod oracle;
pub mod sas;
pub mod sat;

pub use breach::{breach, BreachError, Limits, Status, UnsafeTrace, Verdict};
pub use cover::{eliminate, eliminate_qff, CoverResult};
pub use ground::{entails, sat_qff, GroundError, SatVerdict};
pub use logic::{Atom, Clause, Constraint, Formula, Literal, Name, Signature, Term};
pub use ontology::{standard_translate, Ontology, UniversalTheory};
pub use sas::ArtifactSystem;
