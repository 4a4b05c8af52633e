//! Delete a cubic vertex from each of two Petersen graphs and glue the
//! two 9-vertex fragments along their degree-2 attachment triples. The
//! join has 15 vertices and is simultaneously hypohamiltonian and
//! K2-hypohamiltonian — the smallest order where the two families meet.
//!
//! Run with `cargo run --example glue_fragments`.

use k2ham::constructions::{fragment_from_cubic_vertex, glue};
use k2ham::formats::encode_graph6;
use k2ham::named;
use k2ham::predicates::{is_hypohamiltonian, is_k2_hypohamiltonian};

fn main() {
    let p = named::petersen();

    // Any cubic vertex works; the attachment triple is its old
    // neighborhood, kept in a fixed order so gluing is reproducible.
    let f1 = fragment_from_cubic_vertex(&p, 0).expect("vertex 0 is cubic");
    let f2 = fragment_from_cubic_vertex(&p, 7).expect("vertex 7 is cubic");
    for (name, f) in [("f1", &f1), ("f2", &f2)] {
        println!(
            "{name}: n = {}, attachments {:?}, trivial: {}",
            f.graph().n(),
            f.attachments(),
            f.is_trivial()
        );
    }

    let glued = glue(&f1, &f2).expect("matching attachment arities");
    let g = &glued.graph;
    println!();
    println!("glued: n = {}, m = {}  {}", g.n(), g.m(), encode_graph6(g));
    println!("both fragments trivial: {}", glued.both_trivial);
    println!();
    println!("hypohamiltonian      {}", is_hypohamiltonian(g).verdict);
    println!("K2-hypohamiltonian   {}", is_k2_hypohamiltonian(g).verdict);
}
