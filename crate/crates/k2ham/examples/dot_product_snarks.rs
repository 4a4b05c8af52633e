//! Two dot products, two different outcomes.
//!
//! The dot product G·H removes an independent edge pair ab, cd from G
//! and two adjacent vertices x, y from H, then wires the four loose ends
//! of G to the four degree-2 vertices of H. It preserves snarkness and,
//! with the right labels, K2-hypohamiltonicity:
//!
//! * Petersen·Petersen is an 18-vertex snark — hypohamiltonian but
//!   *not* K2-hamiltonian, showing that K2-hypohamiltonicity needs more
//!   than the bare construction;
//! * J5·J5 over labels found by the bundled search is a 38-vertex
//!   K2-hypohamiltonian snark.
//!
//! Run with `cargo run --release --example dot_product_snarks`.

use k2ham::constructions::{dot_product, find_dot_labels_g, find_dot_labels_h, DotSpec};
use k2ham::formats::encode_graph6;
use k2ham::named;
use k2ham::predicates::{is_hypohamiltonian, is_k2_hamiltonian, is_k2_hypohamiltonian, is_snark};

fn main() {
    // --- Petersen · Petersen, fixed labels --------------------------------
    let p = named::petersen();
    let spec = DotSpec::new(&p, &p, (0, 1), (7, 9), 0, 1).expect("valid labels");
    let (pa, pb, pc, pd) = spec.primed();
    println!("P·P: primed labels a'={pa} b'={pb} c'={pc} d'={pd}");

    let pp = dot_product(&p, &p, &spec).expect("spec already validated");
    println!("P·P: n = {}  {}", pp.n(), encode_graph6(&pp));
    println!("  snark              {}", is_snark(&pp).verdict);
    println!("  hypohamiltonian    {}", is_hypohamiltonian(&pp).verdict);
    println!("  K2-hamiltonian     {}", is_k2_hamiltonian(&pp).verdict);
    println!();

    // --- J5 · J5, labels found automatically ------------------------------
    let j5 = named::flower_snark(5).expect("k = 5 is odd and at least 3");
    let (a, b, c, d) = find_dot_labels_g(&j5).expect("J5 admits G-side labels");
    let (x, y) = find_dot_labels_h(&j5).expect("J5 admits H-side labels");
    println!("J5 labels: ab = ({a},{b}), cd = ({c},{d}), xy = ({x},{y})");

    let spec = DotSpec::new(&j5, &j5, (a, b), (c, d), x, y).expect("found labels validate");
    let big = dot_product(&j5, &j5, &spec).expect("spec already validated");
    println!("J5·J5: n = {}  {}", big.n(), encode_graph6(&big));
    println!("  snark              {}", is_snark(&big).verdict);
    println!("  K2-hypohamiltonian {}", is_k2_hypohamiltonian(&big).verdict);
}
