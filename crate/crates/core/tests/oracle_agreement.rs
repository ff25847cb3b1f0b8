mod common;

use std::time::Instant;

use common::checks::{amalgamation, case_elimination, faithfulness, qe_contract, sat_exactness, Outcome};
use oreach_core::ontology::hiring_ontology;

fn report(what: &str, o: &Outcome, start: Instant) {
    eprintln!("{what}: {} cases, {:?}, {}", o.cases, start.elapsed(), o.notes.join("; "));
    assert!(o.ok(), "{what}: {:#?}", o.failures);
}

#[test]
fn translation_is_faithful_on_small_models() {
    let start = Instant::now();
    report("faithfulness", &faithfulness(&hiring_ontology(), 3), start);
}

#[test]
fn random_ontologies_are_translated_faithfully() {
    use common::{ontology, rng, Vocab};
    let mut r = rng(11);
    for _ in 0..40 {
        let v = Vocab::random(&mut r, 2, 1, 1);
        let o = ontology(&mut r, &v, 4, 2);
        let start = Instant::now();
        let out = faithfulness(&o, 2);
        assert!(out.ok(), "{o:?}: {:#?} ({:?})", out.failures, start.elapsed());
    }
}

#[test]
fn grounding_agrees_with_the_oracle() {
    let start = Instant::now();
    report("sat", &sat_exactness(600, 5), start);
}

#[test]
fn elimination_is_sound_and_strongest() {
    let start = Instant::now();
    report("qe", &qe_contract(250, 4), start);
}

#[test]
fn case_elimination_preserves_steps() {
    let start = Instant::now();
    report("case elimination", &case_elimination(120, 7, 1.0), start);
}

#[test]
fn amalgams_are_models() {
    let start = Instant::now();
    report("amalgamation", &amalgamation(250, 8), start);
}
