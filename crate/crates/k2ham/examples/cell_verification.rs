//! Verify, property by property, that the 18-vertex graph bundled as
//! `named::j18()` is a suitable cell, a K1-cell, and a K2-cell with
//! respect to its outer quadruple (a, b, c, d) = (5, 8, 2, 0).
//!
//! Suitable cells are the raw material of the chained construction in
//! the `gamma_chain` example: stitching 2k+1 of them in a ring yields
//! K2-hamiltonian graphs with prescribed defects.
//!
//! Run with `cargo run --example cell_verification`.

use k2ham::cells::{check_k1_cell, check_k2_cell, Cell};
use k2ham::named;

fn main() {
    let g = named::j18();
    let (a, b, c, d) = named::j18_outer();
    println!(
        "cell: n = {}, m = {}, outer quadruple (a,b,c,d) = ({a},{b},{c},{d})",
        g.n(),
        g.m()
    );
    println!();

    let cell = Cell::new(g, a, b, c, d).expect("distinct in-range labels");

    // `check_k1_cell` covers the suitability properties plus the K1 ones;
    // `check_k2_cell` covers suitability plus the K2 ones.
    let k1 = check_k1_cell(&cell);
    let k2 = check_k2_cell(&cell);

    // Both reports repeat the shared suitability properties; print each
    // property once.
    let mut seen = std::collections::BTreeSet::new();
    for property in k1.properties.iter().chain(&k2.properties) {
        if seen.insert(property.name.clone()) {
            let mark = if property.pass { '✓' } else { '✗' };
            println!("  {mark} {}", property.name);
        }
    }
    println!();
    println!(
        "suitable: {}   K1-cell: {:?}   K2-cell: {:?}",
        k1.suitable, k1.k1, k2.k2
    );
}
