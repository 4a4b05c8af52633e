//! Small immutable simple graphs with bitset adjacency.
//!
//! Everything in this crate works on graphs of at most [`MAX_VERTICES`]
//! vertices, stored as one adjacency bitset per vertex (two 64-bit words).
//! Graphs are immutable after construction; "mutations" such as
//! [`Graph::without_edge`] or [`Graph::delete_vertices`] return fresh copies,
//! which keeps the search engine free to share a graph across threads.

use std::fmt;

use thiserror::Error;

/// Hard capacity of the representation: two 64-bit words per adjacency row.
pub const MAX_VERTICES: usize = 128;

const WORDS: usize = 2;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph order {0} exceeds capacity {MAX_VERTICES}")]
    TooLarge(usize),
    #[error("graph must have at least one vertex")]
    Empty,
    #[error("vertex {0} out of range for order {1}")]
    VertexRange(usize, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("edge {0}-{1} already present")]
    EdgeExists(usize, usize),
    #[error("edge {0}-{1} not present")]
    EdgeMissing(usize, usize),
    #[error("vertex deletion must leave at least one vertex")]
    DeletesEverything,
    #[error("operation requires a connected graph")]
    Disconnected,
    #[error("vertex connectivity checks support k in 1..=3, got {0}")]
    UnsupportedK(usize),
    #[error("invalid parameter: {0}")]
    Parameter(String),
}

/// A set of vertices, stored as a 128-bit mask.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct VertexSet {
    words: [u64; WORDS],
}

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet { words: [0; WORDS] };

    pub fn empty() -> Self {
        Self::EMPTY
    }

    /// The set {0, 1, .., n-1}.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_VERTICES);
        let mut s = Self::EMPTY;
        for v in 0..n {
            s.insert(v);
        }
        s
    }

    pub fn single(v: usize) -> Self {
        let mut s = Self::EMPTY;
        s.insert(v);
        s
    }

    #[inline]
    pub fn insert(&mut self, v: usize) {
        debug_assert!(v < MAX_VERTICES);
        self.words[v >> 6] |= 1u64 << (v & 63);
    }

    #[inline]
    pub fn remove(&mut self, v: usize) {
        debug_assert!(v < MAX_VERTICES);
        self.words[v >> 6] &= !(1u64 << (v & 63));
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        debug_assert!(v < MAX_VERTICES);
        self.words[v >> 6] >> (v & 63) & 1 != 0
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    #[inline]
    pub fn union(&self, other: &VertexSet) -> VertexSet {
        VertexSet {
            words: [self.words[0] | other.words[0], self.words[1] | other.words[1]],
        }
    }

    #[inline]
    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        VertexSet {
            words: [self.words[0] & other.words[0], self.words[1] & other.words[1]],
        }
    }

    #[inline]
    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        VertexSet {
            words: [self.words[0] & !other.words[0], self.words[1] & !other.words[1]],
        }
    }

    pub fn is_subset_of(&self, other: &VertexSet) -> bool {
        self.difference(other).is_empty()
    }

    /// Smallest member, if any. Takes `self` by value so the inherent
    /// method wins the probe against `Ord::min`.
    pub fn min(self) -> Option<usize> {
        for (i, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(i * 64 + w.trailing_zeros() as usize);
            }
        }
        None
    }

    pub fn iter(&self) -> VertexSetIter {
        VertexSetIter { words: self.words }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = Self::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub struct VertexSetIter {
    words: [u64; WORDS],
}

impl Iterator for VertexSetIter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        for i in 0..WORDS {
            if self.words[i] != 0 {
                let b = self.words[i].trailing_zeros() as usize;
                self.words[i] &= self.words[i] - 1;
                return Some(i * 64 + b);
            }
        }
        None
    }
}

impl IntoIterator for &VertexSet {
    type Item = usize;
    type IntoIter = VertexSetIter;

    fn into_iter(self) -> VertexSetIter {
        self.iter()
    }
}

/// Order-preserving vertex relabeling produced by [`Graph::delete_vertices`].
///
/// Surviving vertices keep their relative order and are packed down to
/// `0..new_n`; `to_new` maps an original label to its new one (death is
/// `None`), `to_old` maps back.
#[derive(Clone, Debug)]
pub struct Relabeling {
    old_of_new: Vec<usize>,
    new_of_old: Vec<Option<usize>>,
}

impl Relabeling {
    pub fn to_new(&self, old: usize) -> Option<usize> {
        self.new_of_old.get(old).copied().flatten()
    }

    pub fn to_old(&self, new: usize) -> usize {
        self.old_of_new[new]
    }

    /// Translate a vertex sequence in the reduced graph back to original labels.
    pub fn sequence_to_old(&self, seq: &[usize]) -> Vec<usize> {
        seq.iter().map(|&v| self.to_old(v)).collect()
    }
}

/// An immutable simple undirected graph on `1..=MAX_VERTICES` vertices.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<VertexSet>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, m={}, edges={:?})", self.n, self.m(), self.edges())
    }
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Graph, GraphError> {
        if n == 0 {
            return Err(GraphError::Empty);
        }
        if n > MAX_VERTICES {
            return Err(GraphError::TooLarge(n));
        }
        Ok(Graph { n, adj: vec![VertexSet::EMPTY; n] })
    }

    /// Build from an explicit edge list; rejects loops, duplicates and
    /// out-of-range endpoints.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            g.add_edge_mut(u, v)?;
        }
        Ok(g)
    }

    fn add_edge_mut(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        if u >= self.n {
            return Err(GraphError::VertexRange(u, self.n));
        }
        if v >= self.n {
            return Err(GraphError::VertexRange(v, self.n));
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        if self.adj[u].contains(v) {
            return Err(GraphError::DuplicateEdge(u.min(v), u.max(v)));
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        Ok(())
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.adj.iter().map(|row| row.len()).sum::<usize>() / 2
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u].contains(v)
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> {
        0..self.n
    }

    /// Edges as ascending `(u, v)` pairs with `u < v`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m());
        for u in 0..self.n {
            for v in self.adj[u].iter() {
                if v > u {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn is_cubic(&self) -> bool {
        (0..self.n).all(|v| self.degree(v) == 3)
    }

    pub fn is_regular(&self, k: usize) -> bool {
        (0..self.n).all(|v| self.degree(v) == k)
    }

    /// Copy with one extra edge.
    pub fn with_edge(&self, u: usize, v: usize) -> Result<Graph, GraphError> {
        let mut g = self.clone();
        match g.add_edge_mut(u, v) {
            Err(GraphError::DuplicateEdge(a, b)) => Err(GraphError::EdgeExists(a, b)),
            other => other.map(|()| g),
        }
    }

    /// Copy with one edge removed.
    pub fn without_edge(&self, u: usize, v: usize) -> Result<Graph, GraphError> {
        if u >= self.n {
            return Err(GraphError::VertexRange(u, self.n));
        }
        if v >= self.n {
            return Err(GraphError::VertexRange(v, self.n));
        }
        if !self.adj[u].contains(v) {
            return Err(GraphError::EdgeMissing(u.min(v), u.max(v)));
        }
        let mut g = self.clone();
        g.adj[u].remove(v);
        g.adj[v].remove(u);
        Ok(g)
    }

    /// Delete a set of vertices, packing the survivors down to `0..new_n`
    /// in their original order. Deleting every vertex is an error.
    pub fn delete_vertices(&self, dead: &VertexSet) -> Result<(Graph, Relabeling), GraphError> {
        for v in dead.iter() {
            if v >= self.n {
                return Err(GraphError::VertexRange(v, self.n));
            }
        }
        let mut old_of_new = Vec::with_capacity(self.n);
        let mut new_of_old = vec![None; self.n];
        for (old, slot) in new_of_old.iter_mut().enumerate() {
            if !dead.contains(old) {
                *slot = Some(old_of_new.len());
                old_of_new.push(old);
            }
        }
        if old_of_new.is_empty() {
            return Err(GraphError::DeletesEverything);
        }
        let mut g = Graph::empty(old_of_new.len())?;
        for (new_u, &old_u) in old_of_new.iter().enumerate() {
            for old_v in self.adj[old_u].iter() {
                if old_v > old_u && !dead.contains(old_v) {
                    let new_v = new_of_old[old_v].unwrap();
                    g.adj[new_u].insert(new_v);
                    g.adj[new_v].insert(new_u);
                }
            }
        }
        Ok((g, Relabeling { old_of_new, new_of_old }))
    }

    /// Convenience wrapper: delete the listed vertices.
    pub fn delete(&self, vs: &[usize]) -> Result<(Graph, Relabeling), GraphError> {
        self.delete_vertices(&vs.iter().copied().collect())
    }

    /// Vertices reachable from `start` without entering `blocked`.
    fn reachable(&self, start: usize, blocked: &VertexSet) -> VertexSet {
        let mut seen = VertexSet::single(start);
        let mut frontier = vec![start];
        while let Some(u) = frontier.pop() {
            for v in self.adj[u].difference(blocked).iter() {
                if !seen.contains(v) {
                    seen.insert(v);
                    frontier.push(v);
                }
            }
        }
        seen
    }

    pub fn is_connected(&self) -> bool {
        self.reachable(0, &VertexSet::EMPTY).len() == self.n
    }

    /// Vertex `k`-connectivity for `k` in `1..=3`: `n > k` and no vertex set
    /// of size `< k` disconnects the graph.
    pub fn is_k_connected(&self, k: usize) -> Result<bool, GraphError> {
        if !(1..=3).contains(&k) {
            return Err(GraphError::UnsupportedK(k));
        }
        if self.n <= k {
            return Ok(false);
        }
        let mut cuts: Vec<VertexSet> = vec![VertexSet::EMPTY];
        if k >= 2 {
            cuts.extend((0..self.n).map(VertexSet::single));
        }
        if k >= 3 {
            for u in 0..self.n {
                for v in u + 1..self.n {
                    let mut s = VertexSet::single(u);
                    s.insert(v);
                    cuts.push(s);
                }
            }
        }
        for cut in cuts {
            let alive = VertexSet::full(self.n).difference(&cut);
            let start = alive.min().expect("n > k >= |cut|");
            if self.reachable(start, &cut).len() != alive.len() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Length of a shortest cycle; `None` for forests.
    ///
    /// For every edge `uv`, measure the shortest `u`-`v` path avoiding that
    /// edge; the minimum over all edges, plus one, is the girth.
    pub fn girth(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for (u, v) in self.edges() {
            if let Some(d) = self.distance_avoiding_edge(u, v) {
                let cyc = d + 1;
                if best.is_none_or(|b| cyc < b) {
                    best = Some(cyc);
                }
            }
        }
        best
    }

    fn distance_avoiding_edge(&self, u: usize, v: usize) -> Option<usize> {
        let mut dist = vec![usize::MAX; self.n];
        dist[u] = 0;
        let mut queue = std::collections::VecDeque::from([u]);
        while let Some(x) = queue.pop_front() {
            for y in self.adj[x].iter() {
                if (x == u && y == v) || (x == v && y == u) {
                    continue;
                }
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    if y == v {
                        return Some(dist[y]);
                    }
                    queue.push_back(y);
                }
            }
        }
        None
    }

    /// Bipartiteness and part balance. Rejects disconnected input: balance is
    /// only meaningful per component, and every caller here wants the whole
    /// graph.
    pub fn bipartiteness(&self) -> Result<Bipartiteness, GraphError> {
        if !self.is_connected() {
            return Err(GraphError::Disconnected);
        }
        let mut color = vec![None; self.n];
        color[0] = Some(false);
        let mut queue = std::collections::VecDeque::from([0usize]);
        while let Some(u) = queue.pop_front() {
            for v in self.adj[u].iter() {
                match color[v] {
                    None => {
                        color[v] = Some(!color[u].unwrap());
                        queue.push_back(v);
                    }
                    Some(c) if c == color[u].unwrap() => return Ok(Bipartiteness::No),
                    _ => {}
                }
            }
        }
        let part0 = color.iter().filter(|c| **c == Some(false)).count();
        Ok(Bipartiteness::Yes { balanced: 2 * part0 == self.n })
    }
}

/// Result of [`Graph::bipartiteness`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Bipartiteness {
    No,
    Yes { balanced: bool },
}

impl Bipartiteness {
    pub fn is_bipartite(&self) -> bool {
        matches!(self, Bipartiteness::Yes { .. })
    }

    pub fn is_balanced(&self) -> bool {
        matches!(self, Bipartiteness::Yes { balanced: true })
    }
}
