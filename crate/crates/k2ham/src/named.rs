//! Named graph constructors used throughout the crate and exposed by the CLI.
//!
//! Labelings are fixed (not merely up-to-isomorphism) so that frozen test
//! values, witnesses and certificates stay stable across releases.

use crate::graph::{Graph, GraphError};

/// Petersen graph = generalized Petersen graph GP(5,2).
/// Outer cycle 0..4, inner vertices 5..9, spokes i - (i+5).
pub fn petersen() -> Graph {
    generalized_petersen(5, 2).expect("static parameters")
}

/// Generalized Petersen graph GP(n,k): outer n-cycle `0..n`, inner vertices
/// `n..2n` with `n+i ~ n+((i+k) mod n)`, spokes `i ~ n+i`. Requires n > 2k >= 2.
pub fn generalized_petersen(n: usize, k: usize) -> Result<Graph, GraphError> {
    if k < 1 || n <= 2 * k {
        return Err(GraphError::Parameter(format!(
            "generalized Petersen graph needs n > 2k >= 2, got n={n}, k={k}"
        )));
    }
    let mut edges = Vec::with_capacity(3 * n);
    for i in 0..n {
        edges.push((i, (i + 1) % n));
        edges.push((i, n + i));
        edges.push((n + i, n + (i + k) % n));
    }
    Graph::from_edges(2 * n, &edges)
}

/// Dodecahedral graph, alias for GP(10,2).
pub fn dodecahedron() -> Graph {
    generalized_petersen(10, 2).expect("static parameters")
}

/// Flower snark J_k for odd k >= 5.
///
/// Vertices: hubs `c_i = i`, star tips `x_i = k+i` forming a k-cycle, and a
/// 2k-cycle `y_0..y_{k-1} z_0..z_{k-1}` with `y_i = 2k+i`, `z_i = 3k+i`.
/// Each hub i is adjacent to x_i, y_i, z_i.
pub fn flower_snark(k: usize) -> Result<Graph, GraphError> {
    if k.is_multiple_of(2) {
        return Err(GraphError::Parameter(format!(
            "flower snark parameter must be odd, got {k}"
        )));
    }
    if k < 5 {
        return Err(GraphError::Parameter(format!(
            "flower snark parameter must be at least 5, got {k}"
        )));
    }
    let (x, y, z) = (k, 2 * k, 3 * k);
    let mut edges = Vec::with_capacity(6 * k);
    for i in 0..k {
        edges.push((i, x + i));
        edges.push((i, y + i));
        edges.push((i, z + i));
        edges.push((x + i, x + (i + 1) % k));
    }
    // The 2k-cycle y_0 .. y_{k-1} z_0 .. z_{k-1} y_0.
    for i in 0..k - 1 {
        edges.push((y + i, y + i + 1));
        edges.push((z + i, z + i + 1));
    }
    edges.push((y + k - 1, z));
    edges.push((z + k - 1, y));
    Graph::from_edges(4 * k, &edges)
}

/// d-dimensional hypercube: vertices are bitstrings, edges flip one bit.
pub fn hypercube(d: usize) -> Result<Graph, GraphError> {
    if d < 1 {
        return Err(GraphError::Parameter("hypercube dimension must be >= 1".into()));
    }
    let n = 1usize
        .checked_shl(d as u32)
        .ok_or(GraphError::TooLarge(usize::MAX))?;
    let mut edges = Vec::new();
    for v in 0..n {
        for b in 0..d {
            let w = v ^ (1 << b);
            if w > v {
                edges.push((v, w));
            }
        }
    }
    Graph::from_edges(n, &edges)
}

/// Coxeter graph on 28 vertices: three concentric heptagons with step 1, 2
/// and 3 plus a central 7-star. Vertex blocks: a_i = i, b_i = 7+i,
/// c_i = 14+i, hubs h_i = 21+i.
pub fn coxeter() -> Graph {
    let mut edges = Vec::with_capacity(42);
    for i in 0..7 {
        edges.push((i, (i + 1) % 7));
        edges.push((7 + i, 7 + (i + 2) % 7));
        edges.push((14 + i, 14 + (i + 3) % 7));
        edges.push((21 + i, i));
        edges.push((21 + i, 7 + i));
        edges.push((21 + i, 14 + i));
    }
    Graph::from_edges(28, &edges).expect("static edge list")
}

/// The 18-vertex graph obtained from the dodecahedron by deleting two
/// adjacent vertices, with the labeling of the reference drawing shifted
/// down by one (drawing vertex k is vertex k-1 here).
pub fn j18() -> Graph {
    const EDGES_1_INDEXED: [(usize, usize); 25] = [
        (1, 2),
        (1, 4),
        (2, 3),
        (2, 11),
        (3, 7),
        (4, 5),
        (4, 13),
        (5, 6),
        (5, 14),
        (6, 10),
        (7, 8),
        (7, 15),
        (8, 9),
        (8, 16),
        (9, 10),
        (10, 12),
        (11, 13),
        (11, 15),
        (12, 14),
        (12, 16),
        (13, 17),
        (14, 17),
        (15, 18),
        (16, 18),
        (17, 18),
    ];
    let edges: Vec<(usize, usize)> =
        EDGES_1_INDEXED.iter().map(|&(u, v)| (u - 1, v - 1)).collect();
    Graph::from_edges(18, &edges).expect("static edge list")
}

/// The degree-two vertices of [`j18`] in their cell roles `(a, b, c, d)`.
/// In the drawing's 1-indexed labels this quadruple reads (6, 9, 3, 1).
pub fn j18_outer() -> (usize, usize, usize, usize) {
    (5, 8, 2, 0)
}

/// K4 with every vertex expanded into a triangle (the truncated
/// tetrahedron). Original vertex v becomes the triangle {3v, 3v+1, 3v+2};
/// corner j of triangle v carries the edge towards the j-th neighbor of v.
pub fn triangle_replaced_k4() -> Graph {
    let mut edges = Vec::with_capacity(18);
    for v in 0..4usize {
        edges.push((3 * v, 3 * v + 1));
        edges.push((3 * v, 3 * v + 2));
        edges.push((3 * v + 1, 3 * v + 2));
    }
    for u in 0..4usize {
        for w in u + 1..4 {
            // Corner of u pointing at w, and vice versa.
            let cu = (0..4).filter(|&x| x != u).position(|x| x == w).unwrap();
            let cw = (0..4).filter(|&x| x != w).position(|x| x == u).unwrap();
            edges.push((3 * u + cu, 3 * w + cw));
        }
    }
    Graph::from_edges(12, &edges).expect("static edge list")
}

/// A 19-vertex graph: a 15-cycle v_0..v_14 (labels 0..14), a hub h = 15
/// adjacent to three spoke vertices s_0 = 16, s_1 = 17, s_2 = 18, where s_j
/// is adjacent to every v_i with i = j (mod 3).
pub fn wheel19() -> Graph {
    let mut edges = Vec::with_capacity(33);
    for i in 0..15 {
        edges.push((i, (i + 1) % 15));
        edges.push((16 + i % 3, i));
    }
    for j in 0..3 {
        edges.push((15, 16 + j));
    }
    Graph::from_edges(19, &edges).expect("static edge list")
}

/// Complete graph K_n.
pub fn complete(n: usize) -> Result<Graph, GraphError> {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u, v));
        }
    }
    Graph::from_edges(n, &edges)
}

/// Cycle C_n (n >= 3).
pub fn cycle(n: usize) -> Result<Graph, GraphError> {
    if n < 3 {
        return Err(GraphError::Parameter(format!("cycle needs n >= 3, got {n}")));
    }
    let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::from_edges(n, &edges)
}

/// Triangular prism C3 x K2: triangles {0,1,2} and {3,4,5} plus rungs.
pub fn prism() -> Graph {
    Graph::from_edges(
        6,
        &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)],
    )
    .expect("static edge list")
}

/// Parse a catalog name such as `petersen`, `gp(11,2)`, `flower(5)`,
/// `cube(3)`, `coxeter`, `j18`, `triangle_replaced_k4`, `wheel19`,
/// `dodecahedron`, `k(4)`, `cycle(6)`, `prism`.
pub fn from_name(name: &str) -> Result<Graph, GraphError> {
    let name = name.trim();
    let (head, args) = match name.find('(') {
        Some(i) if name.ends_with(')') => {
            let inner = &name[i + 1..name.len() - 1];
            let args: Result<Vec<usize>, _> =
                inner.split(',').map(|s| s.trim().parse::<usize>()).collect();
            (
                &name[..i],
                args.map_err(|_| {
                    GraphError::Parameter(format!("bad numeric arguments in {name:?}"))
                })?,
            )
        }
        _ => (name, Vec::new()),
    };
    let arity = |want: usize, args: &[usize]| -> Result<(), GraphError> {
        if args.len() == want {
            Ok(())
        } else {
            Err(GraphError::Parameter(format!(
                "{head} takes {want} parameter(s), got {}",
                args.len()
            )))
        }
    };
    match head {
        "petersen" => arity(0, &args).map(|_| petersen()),
        "gp" => arity(2, &args).and_then(|_| generalized_petersen(args[0], args[1])),
        "flower" => arity(1, &args).and_then(|_| flower_snark(args[0])),
        "cube" => arity(1, &args).and_then(|_| hypercube(args[0])),
        "coxeter" => arity(0, &args).map(|_| coxeter()),
        "j18" => arity(0, &args).map(|_| j18()),
        "triangle_replaced_k4" => arity(0, &args).map(|_| triangle_replaced_k4()),
        "wheel19" => arity(0, &args).map(|_| wheel19()),
        "dodecahedron" => arity(0, &args).map(|_| dodecahedron()),
        "k" => arity(1, &args).and_then(|_| complete(args[0])),
        "cycle" => arity(1, &args).and_then(|_| cycle(args[0])),
        "prism" => arity(0, &args).map(|_| prism()),
        _ => Err(GraphError::Parameter(format!("unknown graph name {name:?}"))),
    }
}
