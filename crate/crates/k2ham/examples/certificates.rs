//! Issue a machine-checkable certificate, replay it, then tamper with
//! it and watch the replay refuse. Certificates carry one witness cycle
//! per required deletion; validation re-checks every cycle against the
//! embedded graph6 subject and demands exact coverage, so a verifier
//! needs no search engine — only adjacency lookups.
//!
//! Run with `cargo run --example certificates`.

use k2ham::certificate::{certify, Certificate, Claim};
use k2ham::named;

fn main() {
    let g = named::petersen();

    let cert = certify(&g, Claim::K2Hamiltonian).expect("the claim is true");
    println!("subject: {}", cert.graph6);
    println!("claim:   {}", cert.claim);
    println!("witnesses: {} (one per edge)", cert.witnesses.len());
    println!("issued by: {} in {} ms", cert.tool, cert.elapsed_ms);
    println!();

    // Round-trip through JSON and replay.
    let json = cert.to_json();
    let replayed = Certificate::from_json(&json).expect("self-produced JSON parses");
    let report = replayed.validate().expect("honest certificates replay");
    println!("replay: {} witnesses checked", report.witnesses_replayed);
    if let Some(note) = &report.unreplayed {
        println!("not replayable from witnesses alone: {note}");
    }
    println!();

    // Sabotage: swap two vertices inside the first witness cycle. The
    // cycle stops being a cycle of the subject, and replay catches it.
    let mut forged = replayed;
    forged.witnesses[0].vertices.swap(0, 2);
    match forged.validate() {
        Ok(_) => unreachable!("a forged witness must not replay"),
        Err(e) => println!("tampered copy is rejected: {e}"),
    }
}
