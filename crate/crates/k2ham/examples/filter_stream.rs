//! Use the stream filter as a library: pipe a graph6 stream through a
//! predicate on several threads and collect the survivors, the way the
//! `k2ham filter` subcommand does — order-preserving and byte-stable no
//! matter the job count.
//!
//! Run with `cargo run --example filter_stream`.

use k2ham::formats::encode_graph6;
use k2ham::named;
use k2ham::pipeline::{run_filter, FilterSpec, OutputMode, PredicateKind};

fn main() {
    // Build a small in-memory census: every named graph we ship.
    let inventory = [
        ("petersen", named::petersen()),
        ("K4", named::complete(4).unwrap()),
        ("Q3", named::hypercube(3).unwrap()),
        ("coxeter", named::coxeter()),
        ("GP(11,2)", named::generalized_petersen(11, 2).unwrap()),
        ("J5", named::flower_snark(5).unwrap()),
        ("J7", named::flower_snark(7).unwrap()),
        ("prism", named::prism()),
        ("dodecahedron", named::dodecahedron()),
    ];
    let stream: String = inventory
        .iter()
        .map(|(_, g)| format!("{}\n", encode_graph6(g)))
        .collect();

    for kind in [
        PredicateKind::Hamiltonian,
        PredicateKind::Hypohamiltonian,
        PredicateKind::K2Hypohamiltonian,
        PredicateKind::Snark,
    ] {
        let spec = FilterSpec {
            kind,
            negate: false,
            jobs: 4,
            mode: OutputMode::Graphs,
        };
        let mut survivors = Vec::new();
        let summary = run_filter(
            stream.as_bytes(),
            &spec,
            true, // strict: this stream had better be well-formed
            None, // no node budget
            &mut survivors,
            &mut std::io::sink(),
        )
        .expect("well-formed stream");

        // Map the surviving graph6 lines back to their names.
        let survivors = String::from_utf8(survivors).expect("graph6 is ascii");
        let names: Vec<&str> = survivors
            .lines()
            .map(|line| {
                inventory
                    .iter()
                    .find(|(_, g)| encode_graph6(g) == line)
                    .map(|(name, _)| *name)
                    .unwrap_or("?")
            })
            .collect();
        println!(
            "{kind}: {}/{} match — {}",
            summary.matched,
            summary.total,
            names.join(", ")
        );
    }
}
