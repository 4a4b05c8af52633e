//! Grinberg's criterion from both directions.
//!
//! For a hamiltonian cycle in a plane graph, Σ (fᵢ - 2)(aᵢ - bᵢ) = 0,
//! where aᵢ and bᵢ count i-gonal faces inside and outside the cycle.
//! The dodecahedron passes on all of its hamiltonian cycles, as any
//! hamiltonian plane graph must. Conversely, a face profile in which
//! exactly one face size is ≢ 2 (mod 3) forces σ ≢ 0 for *every*
//! candidate cycle — a purely arithmetic proof of non-hamiltonicity
//! that the search engine then confirms the hard way.
//!
//! Run with `cargo run --example grinberg_obstruction`.

use k2ham::engine::{enumerate_hamiltonian_cycles, find_hamiltonian_path, SearchConstraints};
use k2ham::named;
use k2ham::planar::{
    dodecahedron_embedding, faces, grinberg_sum, grinbergian_obstruction, j18_plus_ad_embedding,
};

fn main() {
    // --- σ = 0 on every hamiltonian cycle of the dodecahedron -------------
    let (dodeca, embedding) = dodecahedron_embedding();
    let face_set = faces(&embedding).expect("valid rotation system");
    println!(
        "dodecahedron: {} faces, size profile {:?}",
        face_set.len(),
        face_set.size_profile()
    );

    let cycles = enumerate_hamiltonian_cycles(&dodeca, &SearchConstraints::none())
        .expect("no constraints");
    println!("hamiltonian cycles: {}", cycles.len());
    for cycle in &cycles {
        let g = grinberg_sum(&face_set, cycle, None).expect("cycle fits the embedding");
        assert_eq!(g.sigma, 0, "Grinberg's identity must hold");
    }
    println!("σ = 0 on all of them, with consistent inside/outside splits");
    println!();

    // --- the one-exceptional-face obstruction ------------------------------
    // The 18-vertex cell plus its ad-chord embeds with nine pentagons,
    // one quadrilateral, and one octagon: the quadrilateral is the only
    // face with size ≢ 2 (mod 3), so no hamiltonian cycle can exist.
    let (_, embedding) = j18_plus_ad_embedding();
    let face_set = faces(&embedding).expect("valid rotation system");
    println!(
        "J18 + ad: {} faces, size profile {:?}",
        face_set.len(),
        face_set.size_profile()
    );
    println!("grinbergian obstruction: {}", grinbergian_obstruction(&face_set));

    // The same fact by exhaustive search: a hamiltonian cycle of J18+ad
    // through the chord ad is exactly a hamiltonian ad-path of J18.
    let j18 = named::j18();
    let (a, _, _, d) = named::j18_outer();
    let path = find_hamiltonian_path(&j18, a, d, &SearchConstraints::none())
        .expect("no constraints");
    println!("engine finds a hamiltonian {a}–{d} path in the bare cell: {}", path.is_found());
}
