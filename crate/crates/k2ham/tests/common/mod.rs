//! Brute-force oracles and deterministic graph generators shared by the
//! integration suites. Everything here enumerates permutations outright —
//! slow, simple, and independent of the search engine it cross-checks.

// Each test binary compiles this module separately and uses a different
// subset of it.
#![allow(dead_code)]

use k2ham::Graph;
use rand::Rng;

/// Hamiltonicity by trying every cyclic order: fix vertex 0, permute the
/// rest, accept on the first closed adjacent tour.
pub fn oracle_is_hamiltonian(g: &Graph) -> bool {
    let n = g.n();
    if n < 3 {
        return false;
    }
    let mut rest: Vec<usize> = (1..n).collect();
    fn go(g: &Graph, prev: usize, rest: &mut Vec<usize>, k: usize) -> bool {
        if k == rest.len() {
            return g.has_edge(prev, 0);
        }
        for i in k..rest.len() {
            rest.swap(k, i);
            let ok = g.has_edge(prev, rest[k]) && go(g, rest[k], rest, k + 1);
            rest.swap(k, i);
            if ok {
                return true;
            }
        }
        false
    }
    go(g, 0, &mut rest, 0)
}

/// Number of distinct hamiltonian cycles (as vertex sets of edges, i.e.
/// up to rotation and reflection), by full enumeration with vertex 0
/// pinned first; every cycle is met twice, once per direction.
pub fn oracle_cycle_count(g: &Graph) -> u64 {
    let n = g.n();
    if n < 3 {
        return 0;
    }
    let mut rest: Vec<usize> = (1..n).collect();
    fn go(g: &Graph, prev: usize, rest: &mut Vec<usize>, k: usize) -> u64 {
        if k == rest.len() {
            return u64::from(g.has_edge(prev, 0));
        }
        let mut total = 0;
        for i in k..rest.len() {
            rest.swap(k, i);
            if g.has_edge(prev, rest[k]) {
                total += go(g, rest[k], rest, k + 1);
            }
            rest.swap(k, i);
        }
        total
    }
    let directed = go(g, 0, &mut rest, 0);
    debug_assert_eq!(directed % 2, 0);
    directed / 2
}

/// A labeled graph on `n` vertices with independent edge probability `p`,
/// drawn from the given generator.
pub fn random_graph(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).expect("n >= 1")
}

/// Every labeled graph on `n` vertices, as an iterator over edge masks.
pub fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> =
        (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let count = 1u64 << pairs.len();
    (0..count).map(move |mask| {
        let edges: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| (mask >> i) & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        Graph::from_edges(n, &edges).expect("n >= 1")
    })
}
