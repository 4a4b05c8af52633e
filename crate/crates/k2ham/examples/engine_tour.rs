//! A tour of the search engine: plain cycles, edge constraints, node
//! budgets, st-paths, and the two-disjoint-spanning-paths search that
//! the cell machinery leans on.
//!
//! Run with `cargo run --example engine_tour`.

use k2ham::engine::{
    count_hamiltonian_cycles, find_disjoint_spanning_paths, find_hamiltonian_cycle,
    find_hamiltonian_path, Search, SearchConstraints,
};
use k2ham::named;

fn main() {
    let dodeca = named::dodecahedron();

    // 1. Unconstrained: any hamiltonian cycle will do.
    let witness = match find_hamiltonian_cycle(&dodeca, &SearchConstraints::none()) {
        Ok(Search::Found(w)) => w,
        other => panic!("the dodecahedron is hamiltonian, got {other:?}"),
    };
    println!("dodecahedron cycle: {:?}", witness.vertices());
    println!("cycle count: {}", count_hamiltonian_cycles(&dodeca));

    // 2. Steer the search: insist on one edge, outlaw another. Edge
    //    constraints compose; contradictory ones report themselves.
    let steered = SearchConstraints::none().require(0, 1).forbid(2, 3);
    if let Ok(Search::Found(w)) = find_hamiltonian_cycle(&dodeca, &steered) {
        assert!(w.contains_edge(0, 1));
        assert!(!w.contains_edge(2, 3));
        println!("steered cycle uses (0,1), avoids (2,3): {:?}", w.vertices());
    }

    // 3. Budgets make expensive questions interruptible: a starved search
    //    may return Undecided, never a wrong answer.
    let starved = SearchConstraints::none().budget(3);
    let verdict = find_hamiltonian_cycle(&named::coxeter(), &starved).expect("valid constraints");
    println!("coxeter under a 3-node budget — undecided: {}", verdict.is_undecided());

    // 4. Hamiltonian st-paths. In a non-hamiltonian graph no such path
    //    joins *adjacent* vertices (it would close into a cycle), so the
    //    answers here differ: 0–1 is an edge of the Petersen graph, 0–2
    //    is not.
    let p = named::petersen();
    for (s, t) in [(0usize, 1usize), (0, 2)] {
        let found = find_hamiltonian_path(&p, s, t, &SearchConstraints::none())
            .expect("valid endpoints")
            .is_found();
        println!("petersen hamiltonian {s}–{t} path: {found}");
    }

    // 5. Two vertex-disjoint paths covering everything, with prescribed
    //    endpoint pairs — the workhorse question behind K2-cell checks.
    let (j18, (a, b, c, d)) = (named::j18(), named::j18_outer());
    let split = find_disjoint_spanning_paths(&j18, (a, c), (b, d), &SearchConstraints::none())
        .expect("valid endpoints");
    println!("J18 spanning ({a}..{c}) + ({b}..{d}) paths: {}", split.is_found());
    let split = find_disjoint_spanning_paths(&j18, (a, b), (c, d), &SearchConstraints::none())
        .expect("valid endpoints");
    if let Search::Found((p1, p2)) = split {
        println!(
            "J18 spanning ({a}..{b}) + ({c}..{d}) paths: lengths {} and {}",
            p1.len(),
            p2.len()
        );
    }
}
