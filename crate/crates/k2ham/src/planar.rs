//! Face extraction from rotation systems, Grinberg's identity for a given
//! hamiltonian cycle, and the mod-3 obstruction it yields when all but one
//! face size is ≡ 2 (mod 3).
//!
//! A rotation system determines a face set by the next-edge rule: entering
//! vertex `v` along the directed edge `u→v`, leave along the neighbor that
//! follows `u` in the cyclic order at `v`. Every directed edge lies on
//! exactly one face walk, and for a plane embedding of a connected graph
//! Euler's relation `V − E + F = 2` holds; [`faces`] enforces both and
//! rejects anything else.
//!
//! Grinberg's criterion: if a plane graph has a hamiltonian cycle, then
//! `σ = Σ_s (s − 2)(f_s − f′_s) = 0`, where `f_s` and `f′_s` count the
//! faces of size `s` inside and outside the cycle. [`grinberg_sum`]
//! evaluates σ, computing the interior/exterior split from the embedding
//! itself when no manual assignment is given. When every face size but one
//! satisfies `s ≡ 2 (mod 3)`, the identity is unsatisfiable and
//! [`grinbergian_obstruction`] certifies non-hamiltonicity outright.

use std::collections::HashMap;

use thiserror::Error;

use crate::engine::CycleWitness;
use crate::formats::{decode_embedding, EmbeddingInput};
use crate::graph::{Graph, VertexSet};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum PlanarError {
    #[error("embedding describes a disconnected graph")]
    Disconnected,
    #[error("Euler relation violated: V−E+F = {n}−{m}+{f} ≠ 2 (not a plane embedding)")]
    EulerViolation { n: usize, m: usize, f: usize },
    #[error("the given cycle is not a hamiltonian cycle of the embedded graph")]
    NotHamiltonianCycle,
    #[error("side assignment has {got} entries for {expected} faces")]
    SidesLength { expected: usize, got: usize },
    #[error("embedding admits no two-sided face split along this cycle")]
    SideAssignment,
}

/// Which side of a hamiltonian cycle a face lies on. Which of the two
/// regions is called "interior" is a convention (face 0's side); swapping
/// the names only flips the sign of σ.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Interior,
    Exterior,
}

impl Side {
    fn flip(self) -> Side {
        match self {
            Side::Interior => Side::Exterior,
            Side::Exterior => Side::Interior,
        }
    }

    fn sign(self) -> i64 {
        match self {
            Side::Interior => 1,
            Side::Exterior => -1,
        }
    }
}

/// The face structure of a plane embedding: boundary walks, with each
/// directed edge covered exactly once, Euler-checked at construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceSet {
    n: usize,
    m: usize,
    walks: Vec<Vec<usize>>,
    /// Face id on whose walk each directed edge appears.
    face_of_dart: HashMap<(usize, usize), usize>,
}

impl FaceSet {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn len(&self) -> usize {
        self.walks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.walks.is_empty()
    }

    /// Boundary walks; walk `i` is face id `i`.
    pub fn walks(&self) -> &[Vec<usize>] {
        &self.walks
    }

    pub fn size(&self, face: usize) -> usize {
        self.walks[face].len()
    }

    /// Face sizes in ascending order.
    pub fn size_profile(&self) -> Vec<usize> {
        let mut sizes: Vec<usize> = self.walks.iter().map(Vec::len).collect();
        sizes.sort_unstable();
        sizes
    }

    /// Residue class of a face: its size mod 3.
    pub fn residue(&self, face: usize) -> usize {
        self.size(face) % 3
    }

    /// The two faces flanking an undirected edge (equal only at a bridge).
    fn flanking(&self, u: usize, v: usize) -> Option<(usize, usize)> {
        let a = *self.face_of_dart.get(&(u, v))?;
        let b = *self.face_of_dart.get(&(v, u))?;
        Some((a, b))
    }
}

/// Trace the faces of a rotation system.
///
/// Fails if the underlying graph is disconnected or the walk count violates
/// Euler's relation (a consistent rotation system of a non-planar drawing
/// does that — it has positive genus).
pub fn faces(emb: &EmbeddingInput) -> Result<FaceSet, PlanarError> {
    let n = emb.n();
    let rotations = emb.rotations();
    // Connectivity over the adjacency the rotations describe.
    let mut seen = VertexSet::single(0);
    let mut queue = vec![0usize];
    while let Some(v) = queue.pop() {
        for &w in &rotations[v] {
            if !seen.contains(w) {
                seen.insert(w);
                queue.push(w);
            }
        }
    }
    if seen.len() != n {
        return Err(PlanarError::Disconnected);
    }

    let m = rotations.iter().map(Vec::len).sum::<usize>() / 2;
    // Successor of each directed edge under the next-edge rule.
    let mut succ: HashMap<(usize, usize), (usize, usize)> = HashMap::with_capacity(2 * m);
    for (v, rot) in rotations.iter().enumerate() {
        let d = rot.len();
        for (i, &u) in rot.iter().enumerate() {
            succ.insert((u, v), (v, rot[(i + 1) % d]));
        }
    }
    let mut face_of_dart: HashMap<(usize, usize), usize> = HashMap::with_capacity(2 * m);
    let mut walks: Vec<Vec<usize>> = Vec::new();
    // Deterministic orbit order: darts by tail label, then rotation position.
    for (v, rot) in rotations.iter().enumerate() {
        for &w in rot {
            if face_of_dart.contains_key(&(v, w)) {
                continue;
            }
            let id = walks.len();
            let mut walk = Vec::new();
            let start = (v, w);
            let mut cur = start;
            loop {
                walk.push(cur.0);
                let stale = face_of_dart.insert(cur, id);
                debug_assert!(stale.is_none(), "dart traversed twice");
                cur = succ[&cur];
                if cur == start {
                    break;
                }
            }
            walks.push(walk);
        }
    }
    debug_assert_eq!(face_of_dart.len(), 2 * m, "double cover of directed edges");
    let f = walks.len();
    if n + f != m + 2 {
        return Err(PlanarError::EulerViolation { n, m, f });
    }
    Ok(FaceSet { n, m, walks, face_of_dart })
}

/// Grinberg evaluation for one hamiltonian cycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grinberg {
    /// `Σ_s (s − 2)(f_s − f′_s)` under the realized side assignment.
    pub sigma: i64,
    /// Whether the assignment is geometrically possible: faces flanking a
    /// cycle edge on opposite sides, faces flanking a non-cycle edge on the
    /// same side. The automatic assignment is consistent by construction;
    /// a manual one is evaluated as given and flagged here.
    pub consistent: bool,
    /// Side of each face, indexed by face id.
    pub sides: Vec<Side>,
}

/// Evaluate Grinberg's sum σ for a hamiltonian cycle of the embedded graph.
///
/// With `sides: None` the interior/exterior split is derived from the
/// embedding: cutting the sphere along the cycle leaves two regions, and
/// faces are two-colored by walking across non-cycle edges. Passing a
/// manual assignment instead evaluates σ under it verbatim, reporting in
/// [`Grinberg::consistent`] whether it is realizable.
pub fn grinberg_sum(
    fs: &FaceSet,
    cycle: &CycleWitness,
    sides: Option<&[Side]>,
) -> Result<Grinberg, PlanarError> {
    // The cycle must visit every vertex exactly once, along embedded edges.
    if cycle.len() != fs.n {
        return Err(PlanarError::NotHamiltonianCycle);
    }
    let span: VertexSet = cycle.vertices().iter().copied().collect();
    if span != VertexSet::full(fs.n) {
        return Err(PlanarError::NotHamiltonianCycle);
    }
    let cycle_edges = cycle.edges();
    for &(u, v) in &cycle_edges {
        if !fs.face_of_dart.contains_key(&(u, v)) {
            return Err(PlanarError::NotHamiltonianCycle);
        }
    }
    let on_cycle = |u: usize, v: usize| cycle_edges.contains(&(u.min(v), u.max(v)));

    // Every undirected edge once, with its two flanking faces.
    let mut edge_faces: Vec<(usize, usize, usize, usize)> = Vec::with_capacity(fs.m);
    for (&(u, v), &fa) in &fs.face_of_dart {
        if u < v {
            let (_, fb) = fs.flanking(u, v).expect("reverse dart exists");
            edge_faces.push((u, v, fa, fb));
        }
    }

    let realized: Vec<Side> = match sides {
        Some(given) => {
            if given.len() != fs.len() {
                return Err(PlanarError::SidesLength { expected: fs.len(), got: given.len() });
            }
            given.to_vec()
        }
        None => {
            // Two-color faces: same side across non-cycle edges, opposite
            // across cycle edges. Face 0 is called interior.
            let mut assigned: Vec<Option<Side>> = vec![None; fs.len()];
            assigned[0] = Some(Side::Interior);
            let mut queue = vec![0usize];
            // Face adjacency lists, labeled by the edge kind.
            let mut adj: Vec<Vec<(usize, bool)>> = vec![Vec::new(); fs.len()];
            for &(u, v, fa, fb) in &edge_faces {
                let crossing = on_cycle(u, v);
                adj[fa].push((fb, crossing));
                adj[fb].push((fa, crossing));
            }
            while let Some(f) = queue.pop() {
                let side = assigned[f].expect("queued faces are assigned");
                for &(g, crossing) in &adj[f] {
                    let want = if crossing { side.flip() } else { side };
                    match assigned[g] {
                        None => {
                            assigned[g] = Some(want);
                            queue.push(g);
                        }
                        Some(have) if have != want => {
                            return Err(PlanarError::SideAssignment);
                        }
                        Some(_) => {}
                    }
                }
            }
            if assigned.iter().any(Option::is_none) {
                // Unreachable for a face set that passed the Euler gate on a
                // connected graph, kept as a guard.
                return Err(PlanarError::SideAssignment);
            }
            assigned.into_iter().map(|s| s.expect("checked")).collect()
        }
    };

    let consistent = edge_faces.iter().all(|&(u, v, fa, fb)| {
        if on_cycle(u, v) {
            realized[fa] != realized[fb]
        } else {
            realized[fa] == realized[fb]
        }
    });
    let sigma = realized
        .iter()
        .enumerate()
        .map(|(f, side)| side.sign() * (fs.size(f) as i64 - 2))
        .sum();
    Ok(Grinberg { sigma, consistent, sides: realized })
}

/// The one-exceptional-face obstruction: if exactly one face has
/// `(size − 2) ≢ 0 (mod 3)`, then σ ≡ ±(size − 2) ≢ 0 (mod 3) for every
/// conceivable side assignment, so no hamiltonian cycle exists.
pub fn grinbergian_obstruction(fs: &FaceSet) -> bool {
    let exceptional =
        fs.walks().iter().filter(|walk| (walk.len() as i64 - 2).rem_euclid(3) != 0).count();
    exceptional == 1
}

// ---------------------------------------------------------------------------
// Embedded fixtures
// ---------------------------------------------------------------------------

fn fixture(text: &str) -> (Graph, EmbeddingInput) {
    decode_embedding(text).expect("shipped embedding fixtures parse")
}

/// The dodecahedron in its generalized-Petersen GP(10,2) labeling, with a
/// plane rotation system (twelve pentagonal faces).
pub fn dodecahedron_embedding() -> (Graph, EmbeddingInput) {
    fixture(include_str!("../fixtures/dodecahedron.rot"))
}

/// The 18-vertex graph obtained from the dodecahedron by deleting two
/// adjacent vertices, embedded with eight pentagons and one decagon; the
/// four degree-two vertices lie on the decagon.
pub fn j18_embedding() -> (Graph, EmbeddingInput) {
    fixture(include_str!("../fixtures/j18.rot"))
}

/// The same embedding with the outer chord `0–5` added across the decagon,
/// splitting it into a quadrilateral and an octagon. All faces but the
/// quadrilateral have size ≡ 2 (mod 3), so the Grinberg obstruction applies.
pub fn j18_plus_ad_embedding() -> (Graph, EmbeddingInput) {
    fixture(include_str!("../fixtures/j18_plus_ad.rot"))
}

/// K₄ with its four triangular faces.
pub fn k4_embedding() -> (Graph, EmbeddingInput) {
    fixture(include_str!("../fixtures/k4.rot"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{enumerate_hamiltonian_cycles, find_hamiltonian_cycle, SearchConstraints};
    use crate::named;

    #[test]
    fn fixture_faces_have_expected_profiles() {
        let (g, emb) = dodecahedron_embedding();
        assert_eq!(g, named::dodecahedron());
        let fs = faces(&emb).unwrap();
        assert_eq!(fs.size_profile(), vec![5; 12]);

        let (g, emb) = k4_embedding();
        assert_eq!(g, named::complete(4).unwrap());
        assert_eq!(faces(&emb).unwrap().size_profile(), vec![3, 3, 3, 3]);

        let (g, emb) = j18_embedding();
        assert_eq!(g, named::j18());
        let fs = faces(&emb).unwrap();
        assert_eq!(fs.size_profile(), vec![5, 5, 5, 5, 5, 5, 5, 5, 10]);
        // The four degree-two vertices share the decagonal face.
        let (a, b, c, d) = named::j18_outer();
        let decagon = fs.walks().iter().find(|w| w.len() == 10).unwrap();
        for v in [a, b, c, d] {
            assert!(decagon.contains(&v));
        }

        let (g, emb) = j18_plus_ad_embedding();
        let (a, _, _, d) = named::j18_outer();
        assert_eq!(g, named::j18().with_edge(a, d).unwrap());
        let fs = faces(&emb).unwrap();
        assert_eq!(fs.size_profile(), vec![4, 5, 5, 5, 5, 5, 5, 5, 5, 8]);
    }

    #[test]
    fn face_walks_double_cover_directed_edges() {
        for (g, emb) in [
            dodecahedron_embedding(),
            j18_embedding(),
            j18_plus_ad_embedding(),
            k4_embedding(),
        ] {
            let fs = faces(&emb).unwrap();
            let total: usize = fs.walks().iter().map(Vec::len).sum();
            assert_eq!(total, 2 * g.m());
            assert_eq!(fs.n(), g.n());
            assert_eq!(fs.m(), g.m());
            for (u, v) in g.edges() {
                let (fa, fb) = fs.flanking(u, v).unwrap();
                assert!(fa < fs.len() && fb < fs.len());
            }
        }
    }

    #[test]
    fn faces_rejects_broken_embeddings() {
        // Two disjoint triangles: consistent rotations, disconnected graph.
        let text = "0: 1 2\n1: 2 0\n2: 0 1\n3: 4 5\n4: 5 3\n5: 3 4\n";
        let (_, emb) = crate::formats::decode_embedding(text).unwrap();
        assert_eq!(faces(&emb), Err(PlanarError::Disconnected));

        // K₅ has no plane embedding: any rotation system fails Euler.
        let mut lines = String::new();
        for v in 0..5 {
            let nbrs: Vec<String> =
                (0..5).filter(|&w| w != v).map(|w| w.to_string()).collect();
            lines.push_str(&format!("{v}: {}\n", nbrs.join(" ")));
        }
        let (_, emb) = crate::formats::decode_embedding(&lines).unwrap();
        assert!(matches!(faces(&emb), Err(PlanarError::EulerViolation { .. })));
    }

    #[test]
    fn grinberg_sum_vanishes_on_every_fixture_cycle() {
        let none = SearchConstraints::none();
        let (g, emb) = dodecahedron_embedding();
        let fs = faces(&emb).unwrap();
        let cycles = enumerate_hamiltonian_cycles(&g, &none).unwrap();
        assert_eq!(cycles.len(), 30);
        for cycle in &cycles {
            let gr = grinberg_sum(&fs, cycle, None).unwrap();
            assert_eq!(gr.sigma, 0);
            assert!(gr.consistent);
            // All pentagons: σ = 3(f − f′) = 0 forces a six/six split.
            let interior =
                gr.sides.iter().filter(|s| matches!(s, Side::Interior)).count();
            assert_eq!(interior, 6);
        }

        let (g, emb) = k4_embedding();
        let fs = faces(&emb).unwrap();
        for cycle in enumerate_hamiltonian_cycles(&g, &none).unwrap() {
            assert_eq!(grinberg_sum(&fs, &cycle, None).unwrap().sigma, 0);
        }
    }

    #[test]
    fn manual_side_assignment_is_checked_not_trusted() {
        let none = SearchConstraints::none();
        let (g, emb) = dodecahedron_embedding();
        let fs = faces(&emb).unwrap();
        let cycle = find_hamiltonian_cycle(&g, &none).unwrap().into_found().unwrap();
        let auto = grinberg_sum(&fs, &cycle, None).unwrap();
        let replay = grinberg_sum(&fs, &cycle, Some(&auto.sides)).unwrap();
        assert_eq!(replay.sigma, 0);
        assert!(replay.consistent);

        // Perturb one face's side: σ moves off zero and the flag trips.
        let mut bad = auto.sides.clone();
        bad[3] = bad[3].flip();
        let wrong = grinberg_sum(&fs, &cycle, Some(&bad)).unwrap();
        assert_ne!(wrong.sigma, 0);
        assert!(!wrong.consistent);

        let short = vec![Side::Interior; 3];
        assert_eq!(
            grinberg_sum(&fs, &cycle, Some(&short)),
            Err(PlanarError::SidesLength { expected: 12, got: 3 })
        );
    }

    #[test]
    fn grinberg_sum_rejects_non_cycles() {
        let (_, emb) = dodecahedron_embedding();
        let fs = faces(&emb).unwrap();
        // A hamiltonian cycle of a different graph of the same order.
        let other = named::cycle(20).unwrap();
        let cycle = find_hamiltonian_cycle(&other, &SearchConstraints::none())
            .unwrap()
            .into_found()
            .unwrap();
        assert_eq!(grinberg_sum(&fs, &cycle, None), Err(PlanarError::NotHamiltonianCycle));
    }

    #[test]
    fn obstruction_flags_exactly_the_one_exceptional_face_case() {
        let (_, emb) = dodecahedron_embedding();
        assert!(!grinbergian_obstruction(&faces(&emb).unwrap()));
        let (_, emb) = k4_embedding();
        assert!(!grinbergian_obstruction(&faces(&emb).unwrap()));
        // Eight pentagons and a decagon: the decagon is the lone face with
        // size ≢ 2 (mod 3), so the graph cannot be hamiltonian …
        let (g, emb) = j18_embedding();
        assert!(grinbergian_obstruction(&faces(&emb).unwrap()));
        assert!(find_hamiltonian_cycle(&g, &SearchConstraints::none())
            .unwrap()
            .is_absent());
        // … and likewise after the chord splits it into a 4-gon + 8-gon.
        let (g, emb) = j18_plus_ad_embedding();
        assert!(grinbergian_obstruction(&faces(&emb).unwrap()));
        assert!(find_hamiltonian_cycle(&g, &SearchConstraints::none())
            .unwrap()
            .is_absent());
    }
}
