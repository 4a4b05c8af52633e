//! Hunt for extendable 5-cycles: a 5-cycle C in a cubic graph G such
//! that G - V(C) has a hamiltonian path between every two of the five
//! "shadow" vertices left by C's attachments. Their presence certifies
//! room for local surgery; their absence is itself structural data.
//!
//! GP(11,2) has eleven of them (one per rotational image); the Petersen
//! graph's twelve 5-cycles all qualify; the flower snark J5 and the
//! 19-vertex wheel-like fixture have none.
//!
//! Run with `cargo run --release --example extendable_cycles`.

use k2ham::constructions::find_extendable_5_cycles;
use k2ham::named;

fn main() {
    let candidates = [
        ("petersen", named::petersen()),
        ("GP(11,2)", named::generalized_petersen(11, 2).expect("gcd fine")),
        ("flower J5", named::flower_snark(5).expect("odd k")),
        ("wheel19", named::wheel19()),
    ];

    for (name, g) in candidates {
        let found = find_extendable_5_cycles(&g);
        println!("{name}: {} extendable 5-cycles", found.len());
        for cycle in found.iter().take(3) {
            println!("  {:?}", cycle.cycle);
        }
        if found.len() > 3 {
            println!("  ...");
        }
    }
}
