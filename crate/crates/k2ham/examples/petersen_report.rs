//! Full hamiltonicity profile of the Petersen graph: the smallest graph
//! that is hypohamiltonian, K1-hamiltonian, K2-hamiltonian, and
//! K2-hypohamiltonian all at once — and a snark on top.
//!
//! Run with `cargo run --example petersen_report`.

use k2ham::engine::{count_hamiltonian_cycles, find_hamiltonian_cycle, SearchConstraints};
use k2ham::formats::encode_graph6;
use k2ham::named;
use k2ham::predicates::{
    exceptional_vertices, is_hypohamiltonian, is_k1_hamiltonian, is_k2_hamiltonian,
    is_k2_hypohamiltonian, is_snark,
};

fn main() {
    let g = named::petersen();
    println!("Petersen graph  {}  (n = {}, m = {})", encode_graph6(&g), g.n(), g.m());
    println!("girth {:?}, cubic: {}", g.girth(), g.is_cubic());
    println!();

    let hamiltonian = find_hamiltonian_cycle(&g, &SearchConstraints::none())
        .expect("no constraints")
        .is_found();
    println!("hamiltonian          {hamiltonian}");
    println!("K1-hamiltonian       {}", is_k1_hamiltonian(&g).verdict);
    println!("K2-hamiltonian       {}", is_k2_hamiltonian(&g).verdict);
    println!("hypohamiltonian      {}", is_hypohamiltonian(&g).verdict);
    println!("K2-hypohamiltonian   {}", is_k2_hypohamiltonian(&g).verdict);
    println!("snark                {}", is_snark(&g).verdict);

    // Being hypohamiltonian means no vertex is exceptional: deleting any
    // one vertex leaves a hamiltonian graph.
    let exc = exceptional_vertices(&g);
    println!("exceptional vertices {:?}", exc.set.iter().collect::<Vec<_>>());
    println!();

    // The sharpest corner of the profile: G - {u,v} has *exactly one*
    // hamiltonian cycle for every edge uv.
    println!("cycle counts after deleting each adjacent pair:");
    for row in g.edges().chunks(5) {
        let cells: Vec<String> = row
            .iter()
            .map(|&(u, v)| {
                let (reduced, _) = g.delete(&[u, v]).expect("valid vertices");
                format!("-{{{u},{v}}}: {}", count_hamiltonian_cycles(&reduced))
            })
            .collect();
        println!("  {}", cells.join("   "));
    }
}
