//! Backtracking search for hamiltonian cycles, hamiltonian st-paths and
//! disjoint spanning path pairs, under required/forbidden edge constraints.
//!
//! All searches share one core: a path grown at a single designated end.
//! A cycle search seeds the path with two edges centered on a vertex of
//! minimum degree; an st-path search seeds it with `s` and keeps `t` out of
//! the path until the final step. Two prunes are applied incrementally:
//!
//! * rule A — the non-growing end must keep at least one neighbor outside
//!   the path while the path is incomplete;
//! * rule B — every vertex outside the path must keep at least two
//!   neighbors that are not interior path vertices (one suffices for a
//!   vertex that will end up as a path endpoint).
//!
//! Both are maintained as per-vertex counters so a step costs O(degree),
//! not a rescan. Searches are exhaustive unless a node budget is set, in
//! which case running out yields the distinct [`Search::Undecided`]
//! outcome — never a false negative. Neighbor expansion is in ascending
//! label order, so repeated calls return byte-identical witnesses.

use thiserror::Error;

use crate::graph::{Graph, VertexSet};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum EngineError {
    #[error("constraint edge {0}-{1} is malformed for this graph")]
    BadEdge(usize, usize),
    #[error("vertex {0} out of range for order {1}")]
    VertexRange(usize, usize),
    #[error("path endpoints must be distinct")]
    EndpointCollision,
}

/// Edge constraints for a search, plus an optional node-expansion budget.
///
/// Forbidding an edge is equivalent to deleting it from the graph for the
/// duration of the search; requiring an edge demands that it appear in the
/// returned cycle or path(s).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SearchConstraints {
    pub required: Vec<(usize, usize)>,
    pub forbidden: Vec<(usize, usize)>,
    /// Maximum number of path extensions before the search gives up and
    /// reports [`Search::Undecided`]. `None` means search to completion.
    pub node_budget: Option<u64>,
}

impl SearchConstraints {
    pub fn none() -> Self {
        Self::default()
    }

    pub fn require(mut self, u: usize, v: usize) -> Self {
        self.required.push((u, v));
        self
    }

    pub fn forbid(mut self, u: usize, v: usize) -> Self {
        self.forbidden.push((u, v));
        self
    }

    pub fn budget(mut self, nodes: u64) -> Self {
        self.node_budget = Some(nodes);
        self
    }
}

/// Outcome of a search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Search<T> {
    Found(T),
    /// Complete search, no solution.
    Absent,
    /// No solution, and the constraints alone already rule one out
    /// (required degree above two, a required edge missing or forbidden, …).
    Contradictory,
    /// The node budget ran out before the search completed.
    Undecided,
}

impl<T> Search<T> {
    pub fn is_found(&self) -> bool {
        matches!(self, Search::Found(_))
    }

    /// Definitely no solution (by exhaustion or by contradiction).
    pub fn is_absent(&self) -> bool {
        matches!(self, Search::Absent | Search::Contradictory)
    }

    pub fn is_undecided(&self) -> bool {
        matches!(self, Search::Undecided)
    }

    pub fn found(&self) -> Option<&T> {
        match self {
            Search::Found(t) => Some(t),
            _ => None,
        }
    }

    pub fn into_found(self) -> Option<T> {
        match self {
            Search::Found(t) => Some(t),
            _ => None,
        }
    }

    /// `Some(true)` found, `Some(false)` definitely absent, `None` undecided.
    pub fn decided(&self) -> Option<bool> {
        match self {
            Search::Found(_) => Some(true),
            Search::Absent | Search::Contradictory => Some(false),
            Search::Undecided => None,
        }
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> Search<U> {
        match self {
            Search::Found(t) => Search::Found(f(t)),
            Search::Absent => Search::Absent,
            Search::Contradictory => Search::Contradictory,
            Search::Undecided => Search::Undecided,
        }
    }
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum WitnessError {
    #[error("witness repeats or omits vertices")]
    NotSpanning,
    #[error("witness uses non-edge {0}-{1}")]
    NonAdjacent(usize, usize),
    #[error("witness endpoints do not match the query")]
    WrongEndpoints,
    #[error("witness uses forbidden edge {0}-{1}")]
    ForbiddenUsed(usize, usize),
    #[error("witness misses required edge {0}-{1}")]
    RequiredMissing(usize, usize),
}

/// A hamiltonian cycle in canonical form: the smallest vertex first,
/// followed by the smaller of its two cycle neighbors.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CycleWitness {
    vertices: Vec<usize>,
}

impl CycleWitness {
    /// Canonicalize an arbitrary traversal of the cycle.
    pub(crate) fn from_traversal(seq: &[usize]) -> CycleWitness {
        let n = seq.len();
        debug_assert!(n >= 3);
        let start = (0..n).min_by_key(|&i| seq[i]).unwrap();
        let fwd = seq[(start + 1) % n];
        let bwd = seq[(start + n - 1) % n];
        let mut vertices = Vec::with_capacity(n);
        if fwd <= bwd {
            vertices.extend((0..n).map(|k| seq[(start + k) % n]));
        } else {
            vertices.extend((0..n).map(|k| seq[(start + n - k) % n]));
        }
        CycleWitness { vertices }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Successive pairs, including the closing edge.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.vertices.len();
        (0..n)
            .map(|i| {
                let (u, v) = (self.vertices[i], self.vertices[(i + 1) % n]);
                (u.min(v), u.max(v))
            })
            .collect()
    }

    pub fn contains_edge(&self, u: usize, v: usize) -> bool {
        let key = (u.min(v), u.max(v));
        self.edges().contains(&key)
    }

    /// Express a witness found in a reduced graph in the labels of the
    /// original one, re-canonicalizing. `to_old` must be strictly monotone,
    /// which [`crate::graph::Relabeling`] guarantees.
    pub fn relabel(&self, to_old: impl Fn(usize) -> usize) -> CycleWitness {
        let mapped: Vec<usize> = self.vertices.iter().map(|&v| to_old(v)).collect();
        CycleWitness::from_traversal(&mapped)
    }

    /// Check this is a hamiltonian cycle of `g` restricted to `alive`,
    /// meeting the constraints.
    pub fn validate_on(
        &self,
        g: &Graph,
        alive: &VertexSet,
        c: &SearchConstraints,
    ) -> Result<(), WitnessError> {
        let visited: VertexSet = self.vertices.iter().copied().collect();
        if visited != *alive || self.vertices.len() != alive.len() || self.vertices.len() < 3 {
            return Err(WitnessError::NotSpanning);
        }
        let edges = self.edges();
        for &(u, v) in &edges {
            if !g.has_edge(u, v) {
                return Err(WitnessError::NonAdjacent(u, v));
            }
        }
        check_constraint_edges(&edges, c)
    }

    pub fn validate(&self, g: &Graph, c: &SearchConstraints) -> Result<(), WitnessError> {
        self.validate_on(g, &VertexSet::full(g.n()), c)
    }
}

/// A hamiltonian st-path; the query's `s` comes first.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PathWitness {
    vertices: Vec<usize>,
}

impl PathWitness {
    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn endpoints(&self) -> (usize, usize) {
        (self.vertices[0], *self.vertices.last().unwrap())
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.vertices
            .windows(2)
            .map(|w| (w[0].min(w[1]), w[0].max(w[1])))
            .collect()
    }

    pub fn contains_edge(&self, u: usize, v: usize) -> bool {
        self.edges().contains(&(u.min(v), u.max(v)))
    }

    pub fn contains_vertex(&self, v: usize) -> bool {
        self.vertices.contains(&v)
    }

    pub fn relabel(&self, to_old: impl Fn(usize) -> usize) -> PathWitness {
        PathWitness { vertices: self.vertices.iter().map(|&v| to_old(v)).collect() }
    }

    /// Check this is a hamiltonian path of `g` restricted to `alive` with
    /// the stated endpoints, meeting the constraints.
    pub fn validate_on(
        &self,
        g: &Graph,
        alive: &VertexSet,
        s: usize,
        t: usize,
        c: &SearchConstraints,
    ) -> Result<(), WitnessError> {
        let visited: VertexSet = self.vertices.iter().copied().collect();
        if visited != *alive || self.vertices.len() != alive.len() || self.vertices.len() < 2 {
            return Err(WitnessError::NotSpanning);
        }
        if self.endpoints() != (s, t) {
            return Err(WitnessError::WrongEndpoints);
        }
        let edges = self.edges();
        for &(u, v) in &edges {
            if !g.has_edge(u, v) {
                return Err(WitnessError::NonAdjacent(u, v));
            }
        }
        check_constraint_edges(&edges, c)
    }

    pub fn validate(
        &self,
        g: &Graph,
        s: usize,
        t: usize,
        c: &SearchConstraints,
    ) -> Result<(), WitnessError> {
        self.validate_on(g, &VertexSet::full(g.n()), s, t, c)
    }
}

fn check_constraint_edges(
    edges: &[(usize, usize)],
    c: &SearchConstraints,
) -> Result<(), WitnessError> {
    for &(u, v) in &c.forbidden {
        if edges.contains(&(u.min(v), u.max(v))) {
            return Err(WitnessError::ForbiddenUsed(u, v));
        }
    }
    for &(u, v) in &c.required {
        if !edges.contains(&(u.min(v), u.max(v))) {
            return Err(WitnessError::RequiredMissing(u, v));
        }
    }
    Ok(())
}

/// Validate a disjoint spanning path pair against its query.
pub fn validate_disjoint_pair(
    g: &Graph,
    alive: &VertexSet,
    p1: (usize, usize),
    p2: (usize, usize),
    c: &SearchConstraints,
    w: &(PathWitness, PathWitness),
) -> Result<(), WitnessError> {
    let set1: VertexSet = w.0.vertices().iter().copied().collect();
    let set2: VertexSet = w.1.vertices().iter().copied().collect();
    if !set1.intersection(&set2).is_empty() || set1.union(&set2) != *alive {
        return Err(WitnessError::NotSpanning);
    }
    if set1.len() != w.0.len() || set2.len() != w.1.len() {
        return Err(WitnessError::NotSpanning);
    }
    if w.0.endpoints() != p1 || w.1.endpoints() != p2 {
        return Err(WitnessError::WrongEndpoints);
    }
    let mut edges = w.0.edges();
    edges.extend(w.1.edges());
    for &(u, v) in &edges {
        if !g.has_edge(u, v) {
            return Err(WitnessError::NonAdjacent(u, v));
        }
    }
    check_constraint_edges(&edges, c)
}

// ---------------------------------------------------------------------------
// Search core
// ---------------------------------------------------------------------------

/// Flow control for the recursive extension.
#[derive(PartialEq, Eq, Clone, Copy, Debug)]
enum Flow {
    Continue,
    StopFound,
    StopBudget,
}

struct Searcher {
    n: usize,
    /// Working adjacency: input minus forbidden edges.
    work: Vec<VertexSet>,
    /// Required adjacency per vertex.
    req: Vec<VertexSet>,
    path: Vec<usize>,
    in_path: VertexSet,
    /// Number of neighbors that are not interior path vertices.
    avail: Vec<i32>,
    /// Minimum `avail` demanded of a vertex outside the path.
    threshold: Vec<i32>,
    nodes: u64,
    budget: Option<u64>,
    budget_hit: bool,
}

/// Preprocessed constraints or an early contradiction.
enum Prepared {
    Ok { work: Vec<VertexSet>, req: Vec<VertexSet> },
    Contradictory,
}

fn prepare(
    g: &Graph,
    c: &SearchConstraints,
    endpoint_cap_one: &[usize],
) -> Result<Prepared, EngineError> {
    let n = g.n();
    let check = |u: usize, v: usize| -> Result<(), EngineError> {
        if u >= n || v >= n || u == v {
            Err(EngineError::BadEdge(u, v))
        } else {
            Ok(())
        }
    };
    let mut work: Vec<VertexSet> = (0..n).map(|v| *g.neighbors(v)).collect();
    for &(u, v) in &c.forbidden {
        check(u, v)?;
        work[u].remove(v);
        work[v].remove(u);
    }
    let mut req = vec![VertexSet::EMPTY; n];
    for &(u, v) in &c.required {
        check(u, v)?;
        if !work[u].contains(v) {
            // Required edge absent from the graph or also forbidden.
            return Ok(Prepared::Contradictory);
        }
        req[u].insert(v);
        req[v].insert(u);
    }
    if req.iter().any(|r| r.len() > 2) {
        return Ok(Prepared::Contradictory);
    }
    for &e in endpoint_cap_one {
        if req[e].len() > 1 {
            return Ok(Prepared::Contradictory);
        }
    }
    Ok(Prepared::Ok { work, req })
}

impl Searcher {
    fn new(n: usize, work: Vec<VertexSet>, req: Vec<VertexSet>, budget: Option<u64>) -> Searcher {
        Searcher {
            n,
            work,
            req,
            path: Vec::with_capacity(n),
            in_path: VertexSet::EMPTY,
            avail: vec![0; n],
            threshold: vec![2; n],
            nodes: 0,
            budget,
            budget_hit: false,
        }
    }

    /// Required edges of `v` must lie within its realized path edges.
    #[inline]
    fn closure_ok(&self, v: usize, prev: Option<usize>, next: usize) -> bool {
        let mut allowed = VertexSet::single(next);
        if let Some(p) = prev {
            allowed.insert(p);
        }
        self.req[v].is_subset_of(&allowed)
    }

    /// One-off scan used before descending: no outside vertex may already be
    /// starved.
    fn initial_feasible(&self) -> bool {
        (0..self.n)
            .all(|v| self.in_path.contains(v) || self.avail[v] >= self.threshold[v])
    }

    /// Push `z`, decrementing availability around the vertex that just
    /// became interior (the previous growing end). Returns `false` and
    /// undoes nothing if the push is vetoed before mutation (closure).
    fn try_push(&mut self, z: usize) -> bool {
        let end = *self.path.last().unwrap();
        let prev = if self.path.len() >= 2 { Some(self.path[self.path.len() - 2]) } else { None };
        if !self.closure_ok(end, prev, z) {
            return false;
        }
        self.path.push(z);
        self.in_path.insert(z);
        for x in self.work[end].iter() {
            self.avail[x] -= 1;
        }
        true
    }

    fn undo_push(&mut self) {
        let z = self.path.pop().unwrap();
        self.in_path.remove(z);
        let end = *self.path.last().unwrap();
        for x in self.work[end].iter() {
            self.avail[x] += 1;
        }
    }

    /// Rule B over the vertices whose counters just changed.
    #[inline]
    fn rule_b_ok(&self, interiorized: usize) -> bool {
        for x in self.work[interiorized].iter() {
            if !self.in_path.contains(x) && self.avail[x] < self.threshold[x] {
                return false;
            }
        }
        true
    }

    #[inline]
    fn spend_node(&mut self) -> bool {
        self.nodes += 1;
        if let Some(b) = self.budget {
            if self.nodes > b {
                self.budget_hit = true;
                return false;
            }
        }
        true
    }

    // -- cycle search -------------------------------------------------------

    /// Visit every hamiltonian cycle through the seeded pair, growing at the
    /// last element. `first` is the fixed non-growing end.
    fn extend_cycle(&mut self, first: usize, visit: &mut dyn FnMut(&[usize]) -> bool) -> Flow {
        if self.path.len() == self.n {
            let end = *self.path.last().unwrap();
            let prev_end = self.path[self.path.len() - 2];
            let second = self.path[1];
            if self.work[end].contains(first)
                && self.closure_ok(end, Some(prev_end), first)
                && self.closure_ok(first, Some(second), end)
                && visit(&self.path) {
                    return Flow::StopFound;
                }
            return Flow::Continue;
        }
        let end = *self.path.last().unwrap();
        let candidates = self.work[end].difference(&self.in_path);
        for z in candidates.iter() {
            if !self.try_push(z) {
                continue;
            }
            if !self.spend_node() {
                self.undo_push();
                return Flow::StopBudget;
            }
            // `end` just became interior: rule B around it, rule A at `first`.
            let feasible = self.rule_b_ok(end)
                && (self.path.len() == self.n
                    || !self.work[first].difference(&self.in_path).is_empty());
            if feasible {
                match self.extend_cycle(first, visit) {
                    Flow::Continue => {}
                    stop => {
                        self.undo_push();
                        return stop;
                    }
                }
            }
            self.undo_push();
        }
        Flow::Continue
    }

    fn run_cycles(&mut self, visit: &mut dyn FnMut(&[usize]) -> bool) -> Flow {
        // Seed at a vertex of minimum working degree (smallest label wins).
        let root = (0..self.n)
            .min_by_key(|&v| (self.work[v].len(), v))
            .expect("n >= 3");
        if self.work[root].len() < 2 {
            return Flow::Continue;
        }
        let nbrs: Vec<usize> = self.work[root].iter().collect();
        for (i, &u) in nbrs.iter().enumerate() {
            for &w in &nbrs[i + 1..] {
                // The cycle's two edges at the root are fixed by the seed.
                let mut seed_edges = VertexSet::single(u);
                seed_edges.insert(w);
                if !self.req[root].is_subset_of(&seed_edges) {
                    continue;
                }
                self.path.clear();
                self.path.extend([u, root, w]);
                self.in_path = VertexSet::single(u);
                self.in_path.insert(root);
                self.in_path.insert(w);
                for v in 0..self.n {
                    self.avail[v] =
                        self.work[v].len() as i32 - i32::from(self.work[v].contains(root));
                }
                if !self.initial_feasible() {
                    continue;
                }
                if self.n > 3 && self.work[u].difference(&self.in_path).is_empty() {
                    continue; // rule A already starves the fixed end
                }
                match self.extend_cycle(u, visit) {
                    Flow::Continue => {}
                    stop => return stop,
                }
            }
        }
        Flow::Continue
    }

    // -- path search --------------------------------------------------------

    /// Visit every hamiltonian path from the seeded start to `target`.
    fn extend_path(&mut self, target: usize, visit: &mut dyn FnMut(&[usize]) -> bool) -> Flow {
        let end = *self.path.last().unwrap();
        if self.path.len() == self.n - 1 {
            let prev = if self.path.len() >= 2 {
                Some(self.path[self.path.len() - 2])
            } else {
                None
            };
            if self.work[end].contains(target)
                && self.closure_ok(end, prev, target)
                && self.req[target].is_subset_of(&VertexSet::single(end))
            {
                self.path.push(target);
                let stop = visit(&self.path);
                self.path.pop();
                if stop {
                    return Flow::StopFound;
                }
            }
            return Flow::Continue;
        }
        let mut candidates = self.work[end].difference(&self.in_path);
        candidates.remove(target);
        for z in candidates.iter() {
            if !self.try_push(z) {
                continue;
            }
            if !self.spend_node() {
                self.undo_push();
                return Flow::StopBudget;
            }
            if self.rule_b_ok(end) {
                match self.extend_path(target, visit) {
                    Flow::Continue => {}
                    stop => {
                        self.undo_push();
                        return stop;
                    }
                }
            }
            self.undo_push();
        }
        Flow::Continue
    }

    fn run_paths(
        &mut self,
        s: usize,
        t: usize,
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> Flow {
        self.path.clear();
        self.path.push(s);
        self.in_path = VertexSet::single(s);
        for v in 0..self.n {
            self.avail[v] = self.work[v].len() as i32;
        }
        self.threshold[t] = 1;
        if !self.initial_feasible() {
            return Flow::Continue;
        }
        self.extend_path(t, visit)
    }
}

// ---------------------------------------------------------------------------
// Public searches
// ---------------------------------------------------------------------------

/// Find one hamiltonian cycle satisfying the constraints, in canonical form.
pub fn find_hamiltonian_cycle(
    g: &Graph,
    c: &SearchConstraints,
) -> Result<Search<CycleWitness>, EngineError> {
    let n = g.n();
    if n < 3 {
        return Ok(Search::Absent);
    }
    let (work, req) = match prepare(g, c, &[])? {
        Prepared::Ok { work, req } => (work, req),
        Prepared::Contradictory => return Ok(Search::Contradictory),
    };
    let mut s = Searcher::new(n, work, req, c.node_budget);
    let mut found: Option<CycleWitness> = None;
    let flow = s.run_cycles(&mut |path| {
        found = Some(CycleWitness::from_traversal(path));
        true
    });
    Ok(finish(flow, s.budget_hit, found, |w| {
        debug_assert!(w.validate(g, c).is_ok());
    }))
}

/// Count distinct hamiltonian cycles (cyclic sequences up to rotation and
/// reflection). Runs to completion.
pub fn count_hamiltonian_cycles(g: &Graph) -> u64 {
    if g.n() < 3 {
        return 0;
    }
    let c = SearchConstraints::none();
    let (work, req) = match prepare(g, &c, &[]).expect("no constraints") {
        Prepared::Ok { work, req } => (work, req),
        Prepared::Contradictory => unreachable!("no constraints"),
    };
    let mut s = Searcher::new(g.n(), work, req, None);
    let mut count = 0u64;
    s.run_cycles(&mut |_| {
        count += 1;
        false
    });
    count
}

/// Collect every hamiltonian cycle satisfying the constraints, in canonical
/// form, in deterministic search order. Ignores any node budget.
pub fn enumerate_hamiltonian_cycles(
    g: &Graph,
    c: &SearchConstraints,
) -> Result<Vec<CycleWitness>, EngineError> {
    if g.n() < 3 {
        return Ok(Vec::new());
    }
    let (work, req) = match prepare(g, c, &[])? {
        Prepared::Ok { work, req } => (work, req),
        Prepared::Contradictory => return Ok(Vec::new()),
    };
    let mut s = Searcher::new(g.n(), work, req, None);
    let mut out = Vec::new();
    s.run_cycles(&mut |path| {
        out.push(CycleWitness::from_traversal(path));
        false
    });
    if cfg!(debug_assertions) {
        for w in &out {
            debug_assert!(w.validate(g, c).is_ok());
        }
    }
    Ok(out)
}

/// Find one hamiltonian st-path satisfying the constraints.
pub fn find_hamiltonian_path(
    g: &Graph,
    s: usize,
    t: usize,
    c: &SearchConstraints,
) -> Result<Search<PathWitness>, EngineError> {
    let n = g.n();
    if s >= n {
        return Err(EngineError::VertexRange(s, n));
    }
    if t >= n {
        return Err(EngineError::VertexRange(t, n));
    }
    if s == t {
        return Err(EngineError::EndpointCollision);
    }
    let (work, req) = match prepare(g, c, &[s, t])? {
        Prepared::Ok { work, req } => (work, req),
        Prepared::Contradictory => return Ok(Search::Contradictory),
    };
    let mut searcher = Searcher::new(n, work, req, c.node_budget);
    let mut found: Option<PathWitness> = None;
    let flow = searcher.run_paths(s, t, &mut |path| {
        found = Some(PathWitness { vertices: path.to_vec() });
        true
    });
    Ok(finish(flow, searcher.budget_hit, found, |w| {
        debug_assert!(w.validate(g, s, t, c).is_ok());
    }))
}

/// Find vertex-disjoint paths, one from `p1.0` to `p1.1` and one from `p2.0`
/// to `p2.1`, that together cover every vertex of `g`.
pub fn find_disjoint_spanning_paths(
    g: &Graph,
    p1: (usize, usize),
    p2: (usize, usize),
    c: &SearchConstraints,
) -> Result<Search<(PathWitness, PathWitness)>, EngineError> {
    disjoint_spanning_paths_inner(g, p1, p2, c, None)
}

/// As [`find_disjoint_spanning_paths`], but additionally demand that the two
/// vertices of `sep` end up on different paths.
pub fn find_disjoint_spanning_paths_separating(
    g: &Graph,
    p1: (usize, usize),
    p2: (usize, usize),
    c: &SearchConstraints,
    sep: (usize, usize),
) -> Result<Search<(PathWitness, PathWitness)>, EngineError> {
    disjoint_spanning_paths_inner(g, p1, p2, c, Some(sep))
}

fn disjoint_spanning_paths_inner(
    g: &Graph,
    p1: (usize, usize),
    p2: (usize, usize),
    c: &SearchConstraints,
    sep: Option<(usize, usize)>,
) -> Result<Search<(PathWitness, PathWitness)>, EngineError> {
    let n = g.n();
    let (s1, t1) = p1;
    let (s2, t2) = p2;
    for v in [s1, t1, s2, t2] {
        if v >= n {
            return Err(EngineError::VertexRange(v, n));
        }
    }
    let endpoints = [s1, t1, s2, t2];
    for i in 0..4 {
        for j in i + 1..4 {
            if endpoints[i] == endpoints[j] {
                return Err(EngineError::EndpointCollision);
            }
        }
    }
    if let Some((x, y)) = sep {
        for v in [x, y] {
            if v >= n {
                return Err(EngineError::VertexRange(v, n));
            }
        }
        if x == y {
            return Err(EngineError::EndpointCollision);
        }
    }
    if n < 4 {
        return Ok(Search::Absent);
    }
    let (work, req) = match prepare(g, c, &endpoints)? {
        Prepared::Ok { work, req } => (work, req),
        Prepared::Contradictory => return Ok(Search::Contradictory),
    };
    let mut pair = PairSearcher {
        inner: Searcher::new(n, work, req, c.node_budget),
        s2,
        t2,
        sep,
        budget: c.node_budget,
        undecided: false,
        found: None,
    };
    pair.inner.threshold[t1] = 1;
    pair.inner.threshold[s2] = 1;
    pair.inner.threshold[t2] = 1;
    let flow = pair.run(s1, t1);
    let outcome = match (flow, pair.found.take()) {
        (_, Some(w)) => Search::Found(w),
        (Flow::StopBudget, None) => Search::Undecided,
        (_, None) if pair.undecided || pair.inner.budget_hit => Search::Undecided,
        (_, None) => Search::Absent,
    };
    if let Search::Found(w) = &outcome {
        debug_assert!(
            validate_disjoint_pair(g, &VertexSet::full(n), p1, p2, c, w).is_ok()
        );
    }
    Ok(outcome)
}

struct PairSearcher {
    inner: Searcher,
    s2: usize,
    t2: usize,
    sep: Option<(usize, usize)>,
    budget: Option<u64>,
    undecided: bool,
    found: Option<(PathWitness, PathWitness)>,
}

impl PairSearcher {
    fn run(&mut self, s1: usize, t1: usize) -> Flow {
        self.inner.path.clear();
        self.inner.path.push(s1);
        self.inner.in_path = VertexSet::single(s1);
        for v in 0..self.inner.n {
            self.inner.avail[v] = self.inner.work[v].len() as i32;
        }
        if !self.inner.initial_feasible() {
            return Flow::Continue;
        }
        if self.inner.in_path.contains(self.s2) || self.inner.in_path.contains(self.t2) {
            return Flow::Continue;
        }
        self.grow(t1)
    }

    /// DFS over the first path. Reaching `t1` freezes path one and hands the
    /// leftover vertices to a nested st-path search.
    fn grow(&mut self, t1: usize) -> Flow {
        let end = *self.inner.path.last().unwrap();
        let candidates = self.inner.work[end].difference(&self.inner.in_path);
        for z in candidates.iter() {
            if z == self.s2 || z == self.t2 {
                continue;
            }
            if z == t1 {
                // Close the first path here (t1 is never grown through).
                let prev = if self.inner.path.len() >= 2 {
                    Some(self.inner.path[self.inner.path.len() - 2])
                } else {
                    None
                };
                if !self.inner.closure_ok(end, prev, t1)
                    || !self.inner.req[t1].is_subset_of(&VertexSet::single(end))
                {
                    continue;
                }
                self.inner.path.push(t1);
                let flow = self.complete_first_path();
                self.inner.path.pop();
                if flow != Flow::Continue {
                    return flow;
                }
                continue;
            }
            if !self.inner.try_push(z) {
                continue;
            }
            if !self.inner.spend_node() {
                self.inner.undo_push();
                return Flow::StopBudget;
            }
            // Separation: both marked vertices inside path one is dead.
            let sep_ok = self.sep.is_none_or(|(x, y)| {
                !(self.inner.in_path.contains(x) && self.inner.in_path.contains(y))
            });
            if sep_ok && self.inner.rule_b_ok(end) {
                match self.grow(t1) {
                    Flow::Continue => {}
                    stop => {
                        self.inner.undo_push();
                        return stop;
                    }
                }
            }
            self.inner.undo_push();
        }
        Flow::Continue
    }

    fn complete_first_path(&mut self) -> Flow {
        let path1: Vec<usize> = self.inner.path.clone();
        let mut set1 = VertexSet::EMPTY;
        for &v in &path1 {
            set1.insert(v);
        }
        if let Some((x, y)) = self.sep {
            if set1.contains(x) == set1.contains(y) {
                return Flow::Continue; // must be split across the two paths
            }
        }
        // Required edges with exactly one endpoint on path one can never be
        // realized; edges inside path one were enforced by closure checks.
        let mut residual_required: Vec<(usize, usize)> = Vec::new();
        for v in 0..self.inner.n {
            for w in self.inner.req[v].iter() {
                if w <= v {
                    continue;
                }
                match (set1.contains(v), set1.contains(w)) {
                    (true, true) => {}
                    (false, false) => residual_required.push((v, w)),
                    _ => return Flow::Continue,
                }
            }
        }
        let rest = VertexSet::full(self.inner.n).difference(&set1);
        debug_assert!(rest.contains(self.s2) && rest.contains(self.t2));
        if rest.len() < 2 {
            return Flow::Continue;
        }
        // Induced subsearch on the leftover, with labels packed down.
        let alive: Vec<usize> = rest.iter().collect();
        let mut new_of_old = vec![usize::MAX; self.inner.n];
        for (new, &old) in alive.iter().enumerate() {
            new_of_old[old] = new;
        }
        let work: Vec<VertexSet> = alive
            .iter()
            .map(|&old| {
                self.inner.work[old]
                    .intersection(&rest)
                    .iter()
                    .map(|x| new_of_old[x])
                    .collect()
            })
            .collect();
        let mut req = vec![VertexSet::EMPTY; alive.len()];
        for &(v, w) in &residual_required {
            req[new_of_old[v]].insert(new_of_old[w]);
            req[new_of_old[w]].insert(new_of_old[v]);
        }
        let sub_budget = self.budget.map(|b| b.saturating_sub(self.inner.nodes));
        let mut sub = Searcher::new(alive.len(), work, req, sub_budget);
        let mut found2: Option<Vec<usize>> = None;
        let flow = sub.run_paths(new_of_old[self.s2], new_of_old[self.t2], &mut |p| {
            found2 = Some(p.to_vec());
            true
        });
        self.inner.nodes += sub.nodes;
        if sub.budget_hit {
            self.undecided = true;
        }
        match found2 {
            Some(p2_new) => {
                let p2: Vec<usize> = p2_new.iter().map(|&v| alive[v]).collect();
                self.found = Some((
                    PathWitness { vertices: path1 },
                    PathWitness { vertices: p2 },
                ));
                Flow::StopFound
            }
            None => {
                if flow == Flow::StopBudget {
                    Flow::StopBudget
                } else {
                    Flow::Continue
                }
            }
        }
    }
}

fn finish<T>(
    flow: Flow,
    budget_hit: bool,
    found: Option<T>,
    check: impl FnOnce(&T),
) -> Search<T> {
    match found {
        Some(w) => {
            check(&w);
            Search::Found(w)
        }
        None if flow == Flow::StopBudget || budget_hit => Search::Undecided,
        None => Search::Absent,
    }
}
