//! Constructions that manufacture larger graphs from smaller ones while
//! controlling hamiltonicity: gluing 3-fragments, the dot product with its
//! sufficient-condition checkers, the iterative-lemma bullet checks, and
//! extendable 5-cycles.

use std::collections::BTreeSet;

use rayon::prelude::*;
use thiserror::Error;

use crate::engine::{
    find_disjoint_spanning_paths, find_disjoint_spanning_paths_separating,
    find_hamiltonian_cycle, find_hamiltonian_path, CycleWitness, PathWitness,
    SearchConstraints,
};
use crate::graph::{Graph, GraphError, Relabeling};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("vertex {0} is not cubic")]
    NonCubic(usize),
    #[error("vertices {0} and {1} are not adjacent")]
    NotAdjacent(usize, usize),
    #[error("{0}-{1} is not an edge")]
    NotAnEdge(usize, usize),
    #[error("the edges ab and cd must be independent")]
    SharedEndpoint,
    #[error("side condition violated: {0}")]
    SideCondition(String),
    #[error("the dot product needs graphs on at least six vertices, got {0}")]
    TooSmall(usize),
    #[error("a fragment needs at least four vertices, got {0}")]
    FragmentTooSmall(usize),
    #[error("attachments must be pairwise distinct")]
    AttachmentCollision,
    #[error("attachment {0} out of range for order {1}")]
    AttachmentRange(usize, usize),
    #[error("the closed neighbourhoods of {0} and {1} must avoid a, b, c and d")]
    LabelClash(usize, usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

// ---------------------------------------------------------------------------
// Fragments and gluing
// ---------------------------------------------------------------------------

/// A 3-fragment: a graph with an ordered triple of attachment vertices.
/// Trivial fragments have exactly four vertices (the attachments plus one).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fragment {
    graph: Graph,
    attachments: [usize; 3],
}

impl Fragment {
    pub fn new(graph: Graph, attachments: [usize; 3]) -> Result<Fragment, ConstructionError> {
        let n = graph.n();
        if n < 4 {
            return Err(ConstructionError::FragmentTooSmall(n));
        }
        for &x in &attachments {
            if x >= n {
                return Err(ConstructionError::AttachmentRange(x, n));
            }
        }
        if attachments[0] == attachments[1]
            || attachments[0] == attachments[2]
            || attachments[1] == attachments[2]
        {
            return Err(ConstructionError::AttachmentCollision);
        }
        Ok(Fragment { graph, attachments })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn attachments(&self) -> [usize; 3] {
        self.attachments
    }

    pub fn is_trivial(&self) -> bool {
        self.graph.n() == 4
    }
}

/// The fragment a cubic vertex cuts off: `g − v` with the neighbors of `v`
/// (in ascending label order) as attachments.
pub fn fragment_from_cubic_vertex(g: &Graph, v: usize) -> Result<Fragment, ConstructionError> {
    if v >= g.n() {
        return Err(ConstructionError::AttachmentRange(v, g.n()));
    }
    if g.degree(v) != 3 {
        return Err(ConstructionError::NonCubic(v));
    }
    let (rest, map) = g.delete(&[v])?;
    let mut attachments = [0usize; 3];
    for (slot, w) in g.neighbors(v).iter().enumerate() {
        attachments[slot] = map.to_new(w).expect("neighbors of v survive");
    }
    Fragment::new(rest, attachments)
}

/// Result of gluing two fragments, with provenance: `maps[i][v]` is the
/// label fragment `i`'s vertex `v` carries in the glued graph.
#[derive(Clone, Debug)]
pub struct Glued {
    pub graph: Graph,
    pub maps: [Vec<usize>; 2],
    /// Both inputs were trivial; the hypohamiltonicity lemmas need at
    /// least one non-trivial fragment, so treat the result with care.
    pub both_trivial: bool,
}

/// Identify the i-th attachment of `f1` with the i-th attachment of `f2`.
/// `f1` keeps its labels; the rest of `f2` is packed after it in ascending
/// order. An edge present between attachments on both sides collapses to
/// one (the result stays simple).
pub fn glue(f1: &Fragment, f2: &Fragment) -> Result<Glued, ConstructionError> {
    let n1 = f1.graph.n();
    let map1: Vec<usize> = (0..n1).collect();
    let mut map2 = vec![usize::MAX; f2.graph.n()];
    for i in 0..3 {
        map2[f2.attachments[i]] = f1.attachments[i];
    }
    let mut next = n1;
    for slot in map2.iter_mut() {
        if *slot == usize::MAX {
            *slot = next;
            next += 1;
        }
    }
    let mut edges = BTreeSet::new();
    for (u, v) in f1.graph.edges() {
        edges.insert((u.min(v), u.max(v)));
    }
    for (u, v) in f2.graph.edges() {
        let (nu, nv) = (map2[u], map2[v]);
        edges.insert((nu.min(nv), nu.max(nv)));
    }
    let order = n1 + f2.graph.n() - 3;
    debug_assert_eq!(next, order);
    let edge_list: Vec<(usize, usize)> = edges.into_iter().collect();
    Ok(Glued {
        graph: Graph::from_edges(order, &edge_list)?,
        maps: [map1, map2],
        both_trivial: f1.is_trivial() && f2.is_trivial(),
    })
}

// ---------------------------------------------------------------------------
// Dot product
// ---------------------------------------------------------------------------

/// Validated labels for a dot product `G · H`: independent edges `ab`, `cd`
/// in `G`, adjacent cubic `x`, `y` in `H`, and the derived neighbors
/// `a′, b′` of `x` in `H − y` and `c′, d′` of `y` in `H − x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DotSpec {
    ab: (usize, usize),
    cd: (usize, usize),
    x: usize,
    y: usize,
    primed: [usize; 4],
}

impl DotSpec {
    pub fn new(
        g: &Graph,
        h: &Graph,
        ab: (usize, usize),
        cd: (usize, usize),
        x: usize,
        y: usize,
    ) -> Result<DotSpec, ConstructionError> {
        validate_g_labels(g, ab, cd)?;
        if h.n() < 6 {
            return Err(ConstructionError::TooSmall(h.n()));
        }
        if x >= h.n() || y >= h.n() || !h.has_edge(x, y) {
            return Err(ConstructionError::NotAdjacent(x, y));
        }
        for v in [x, y] {
            if h.degree(v) != 3 {
                return Err(ConstructionError::NonCubic(v));
            }
        }
        let primed = primed_labels(h, x, y);
        let [pa, pb, pc, pd] = primed;
        if h.has_edge(pa, pb) {
            return Err(ConstructionError::SideCondition(format!(
                "a' = {pa} is adjacent to b' = {pb}"
            )));
        }
        if h.has_edge(pc, pd) {
            return Err(ConstructionError::SideCondition(format!(
                "c' = {pc} is adjacent to d' = {pd}"
            )));
        }
        Ok(DotSpec { ab, cd, x, y, primed })
    }

    pub fn ab(&self) -> (usize, usize) {
        self.ab
    }

    pub fn cd(&self) -> (usize, usize) {
        self.cd
    }

    pub fn xy(&self) -> (usize, usize) {
        (self.x, self.y)
    }

    /// `(a′, b′, c′, d′)`.
    pub fn primed(&self) -> (usize, usize, usize, usize) {
        let [pa, pb, pc, pd] = self.primed;
        (pa, pb, pc, pd)
    }
}

fn validate_g_labels(
    g: &Graph,
    ab: (usize, usize),
    cd: (usize, usize),
) -> Result<(), ConstructionError> {
    if g.n() < 6 {
        return Err(ConstructionError::TooSmall(g.n()));
    }
    for (u, v) in [ab, cd] {
        if u >= g.n() || v >= g.n() || !g.has_edge(u, v) {
            return Err(ConstructionError::NotAnEdge(u, v));
        }
    }
    let (a, b) = ab;
    let (c, d) = cd;
    if a == c || a == d || b == c || b == d {
        return Err(ConstructionError::SharedEndpoint);
    }
    for s in [a, b] {
        for t in [c, d] {
            if g.has_edge(s, t) {
                return Err(ConstructionError::SideCondition(format!(
                    "{s} (in ab) is adjacent to {t} (in cd)"
                )));
            }
        }
    }
    Ok(())
}

/// Ascending neighbors of `x` in `H − y` followed by those of `y` in `H − x`.
fn primed_labels(h: &Graph, x: usize, y: usize) -> [usize; 4] {
    let of = |v: usize, other: usize| {
        let two: Vec<usize> = h.neighbors(v).iter().filter(|&w| w != other).collect();
        debug_assert_eq!(two.len(), 2, "cubic vertex has two neighbors besides the other");
        (two[0], two[1])
    };
    let (pa, pb) = of(x, y);
    let (pc, pd) = of(y, x);
    [pa, pb, pc, pd]
}

/// `G · H`: delete the edges `ab`, `cd` from `G` and the vertices `x`, `y`
/// from `H`, then join `aa′`, `bb′`, `cc′`, `dd′`. `G` keeps its labels;
/// `H − x − y` is packed after it in ascending order.
pub fn dot_product(g: &Graph, h: &Graph, spec: &DotSpec) -> Result<Graph, ConstructionError> {
    // Revalidate against these particular graphs.
    let spec = DotSpec::new(g, h, spec.ab, spec.cd, spec.x, spec.y)?;
    let gn = g.n();
    let (hp, hmap) = h.delete(&[spec.x, spec.y])?;
    let offset = |v: usize| gn + hmap.to_new(v).expect("survives x,y deletion");
    let mut edges: Vec<(usize, usize)> = g
        .edges()
        .into_iter()
        .filter(|&(u, v)| {
            let e = (u.min(v), u.max(v));
            let ab = (spec.ab.0.min(spec.ab.1), spec.ab.0.max(spec.ab.1));
            let cd = (spec.cd.0.min(spec.cd.1), spec.cd.0.max(spec.cd.1));
            e != ab && e != cd
        })
        .collect();
    for (u, v) in hp.edges() {
        edges.push((gn + u, gn + v));
    }
    let [pa, pb, pc, pd] = spec.primed;
    edges.push((spec.ab.0, offset(pa)));
    edges.push((spec.ab.1, offset(pb)));
    edges.push((spec.cd.0, offset(pc)));
    edges.push((spec.cd.1, offset(pd)));
    Ok(Graph::from_edges(gn + h.n() - 2, &edges)?)
}

// ---------------------------------------------------------------------------
// Condition reports
// ---------------------------------------------------------------------------

/// Witness backing a passed clause.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Evidence {
    Path(PathWitness),
    Pair(PathWitness, PathWitness),
    Cycle(CycleWitness),
}

#[derive(Clone, Debug)]
pub struct ClauseOutcome {
    /// Which condition and which instance, e.g. `"(i) edge 3-7"`.
    pub clause: String,
    pub pass: bool,
    /// Present on passing clauses whose requirement is an existence claim.
    pub evidence: Option<Evidence>,
}

/// Clause-by-clause verdicts for one side of the dot product theorem or
/// for the iterative lemma's bullets.
#[derive(Clone, Debug, Default)]
pub struct ConditionReport {
    pub clauses: Vec<ClauseOutcome>,
}

impl ConditionReport {
    pub fn all_pass(&self) -> bool {
        self.clauses.iter().all(|c| c.pass)
    }

    /// Do all clauses of one condition (by label prefix) pass?
    pub fn condition_pass(&self, prefix: &str) -> bool {
        let mut seen = false;
        for clause in &self.clauses {
            if clause.clause.starts_with(prefix) {
                seen = true;
                if !clause.pass {
                    return false;
                }
            }
        }
        seen
    }

    pub fn first_failure(&self) -> Option<&ClauseOutcome> {
        self.clauses.iter().find(|c| !c.pass)
    }

    fn push(&mut self, clause: String, found: Option<Evidence>) {
        self.clauses.push(ClauseOutcome { clause, pass: found.is_some(), evidence: found });
    }
}

fn translated_pair(map: &Relabeling, (u, v): (usize, usize)) -> Option<(usize, usize)> {
    Some((map.to_new(u)?, map.to_new(v)?))
}

/// Hamiltonian `uv`-path in `g`, optionally forbidding edges, as evidence.
fn path_evidence(g: &Graph, u: usize, v: usize, c: &SearchConstraints) -> Option<Evidence> {
    find_hamiltonian_path(g, u, v, c)
        .ok()?
        .into_found()
        .map(Evidence::Path)
}

fn pair_evidence(
    g: &Graph,
    p1: (usize, usize),
    p2: (usize, usize),
    c: &SearchConstraints,
) -> Option<Evidence> {
    find_disjoint_spanning_paths(g, p1, p2, c)
        .ok()?
        .into_found()
        .map(|(p, q)| Evidence::Pair(p, q))
}

fn cycle_evidence(g: &Graph, c: &SearchConstraints) -> Option<Evidence> {
    find_hamiltonian_cycle(g, c)
        .expect("constraint edges are validated by callers")
        .into_found()
        .map(Evidence::Cycle)
}

/// Relabel whatever the deleted-graph search produced back to `g` labels.
fn lift(evidence: Evidence, map: &Relabeling) -> Evidence {
    match evidence {
        Evidence::Path(p) => Evidence::Path(p.relabel(|x| map.to_old(x))),
        Evidence::Pair(p, q) => {
            Evidence::Pair(p.relabel(|x| map.to_old(x)), q.relabel(|x| map.to_old(x)))
        }
        Evidence::Cycle(c) => Evidence::Cycle(c.relabel(|x| map.to_old(x))),
    }
}

// ---------------------------------------------------------------------------
// Theorem conditions (i)–(iii) on G
// ---------------------------------------------------------------------------

/// In `sub` (a deleted copy of the original), look for a hamiltonian
/// `st`-path whose original endpoints are `st`, forbidding the original
/// edge `forbid` when it survived. `None` when an endpoint was deleted.
fn reduced_path(
    sub: &Graph,
    map: &Relabeling,
    st: (usize, usize),
    forbid: (usize, usize),
) -> Option<Evidence> {
    let (s, t) = translated_pair(map, st)?;
    let mut c = SearchConstraints::none();
    if let Some((fu, fv)) = translated_pair(map, forbid) {
        c = c.forbid(fu, fv);
    }
    path_evidence(sub, s, t, &c).map(|e| lift(e, map))
}

/// Condition (i)–(iii) checks for the `G` side of the dot product.
///
/// * (i) — for every edge `vw` other than `ab` and `cd`, the graph
///   `G − v − w` has a hamiltonian `ab`-path avoiding `cd`, or a
///   hamiltonian `cd`-path avoiding `ab`, or disjoint spanning paths
///   pairing `{a,b}` with `{c,d}` (both pairings tried).
/// * (ii) — for every `s ∈ {a,b}`, `t ∈ {c,d}`, a hamiltonian `st`-path
///   of `G` avoiding both `ab` and `cd`; plus disjoint spanning `ab`- and
///   `cd`-paths avoiding both.
/// * (iii) — hamiltonian cycles of `G − a` and `G − b` through `cd`, and
///   of `G − c` and `G − d` through `ab`.
pub fn check_dot_conditions_g(
    g: &Graph,
    a: usize,
    b: usize,
    c: usize,
    d: usize,
) -> Result<ConditionReport, ConstructionError> {
    validate_g_labels(g, (a, b), (c, d))?;
    let mut report = ConditionReport::default();

    let mut cond_i_edges: Vec<(usize, usize)> = g
        .edges()
        .into_iter()
        .filter(|&(u, v)| {
            let e = (u.min(v), u.max(v));
            e != (a.min(b), a.max(b)) && e != (c.min(d), c.max(d))
        })
        .collect();
    cond_i_edges.sort_unstable();
    let cond_i: Vec<(String, Option<Evidence>)> = cond_i_edges
        .into_par_iter()
        .map(|(v, w)| {
            let (sub, map) = g.delete(&[v, w]).expect("more than two vertices");
            let found = reduced_path(&sub, &map, (a, b), (c, d))
                .or_else(|| reduced_path(&sub, &map, (c, d), (a, b)))
                .or_else(|| {
                    [((a, c), (b, d)), ((a, d), (b, c))].into_iter().find_map(|(p1, p2)| {
                        let q1 = translated_pair(&map, p1)?;
                        let q2 = translated_pair(&map, p2)?;
                        pair_evidence(&sub, q1, q2, &SearchConstraints::none())
                            .map(|e| lift(e, &map))
                    })
                });
            (format!("(i) edge {v}-{w}"), found)
        })
        .collect();
    for (clause, found) in cond_i {
        report.push(clause, found);
    }

    let avoid_both = SearchConstraints::none().forbid(a, b).forbid(c, d);
    for s in [a, b] {
        for t in [c, d] {
            let found = path_evidence(g, s, t, &avoid_both);
            report.push(format!("(ii) path {s}-{t}"), found);
        }
    }
    report.push(
        "(ii) disjoint ab and cd paths".to_string(),
        pair_evidence(g, (a, b), (c, d), &avoid_both),
    );

    for (gone, through) in [(a, (c, d)), (b, (c, d)), (c, (a, b)), (d, (a, b))] {
        let (sub, map) = g.delete(&[gone]).expect("nonempty remainder");
        let (ru, rv) = translated_pair(&map, through).expect("through edge survives");
        let found =
            cycle_evidence(&sub, &SearchConstraints::none().require(ru, rv))
                .map(|e| lift(e, &map));
        report.push(format!("(iii) cycle through {}-{} in G-{gone}", through.0, through.1), found);
    }
    Ok(report)
}

// ---------------------------------------------------------------------------
// Theorem conditions (iv)–(vi) on H
// ---------------------------------------------------------------------------

/// Condition (iv)–(vi) checks for the `H` side of the dot product, with
/// `a′, b′, c′, d′` derived from the cubic adjacent pair `x`, `y`.
///
/// * (iv) — `H − x` and `H − y` hamiltonian; `H − x − y` has disjoint
///   spanning `a′b′`- and `c′d′`-paths.
/// * (v) — for every edge `vw` of `H` avoiding `x` and `y`, the graph
///   `H − x − y − v − w` has a hamiltonian path from `{a′,b′}` to
///   `{c′,d′}`, or disjoint spanning paths pairing `{a′,b′}` with
///   `{c′,d′}` (both pairings tried).
/// * (vi) — `H − x − a′`, `H − x − b′`, `H − y − c′`, `H − y − d′` all
///   hamiltonian.
pub fn check_dot_conditions_h(
    h: &Graph,
    x: usize,
    y: usize,
) -> Result<ConditionReport, ConstructionError> {
    if h.n() < 6 {
        return Err(ConstructionError::TooSmall(h.n()));
    }
    if x >= h.n() || y >= h.n() || !h.has_edge(x, y) {
        return Err(ConstructionError::NotAdjacent(x, y));
    }
    for v in [x, y] {
        if h.degree(v) != 3 {
            return Err(ConstructionError::NonCubic(v));
        }
    }
    let [pa, pb, pc, pd] = primed_labels(h, x, y);
    if h.has_edge(pa, pb) {
        return Err(ConstructionError::SideCondition(format!(
            "a' = {pa} is adjacent to b' = {pb}"
        )));
    }
    if h.has_edge(pc, pd) {
        return Err(ConstructionError::SideCondition(format!(
            "c' = {pc} is adjacent to d' = {pd}"
        )));
    }
    let mut report = ConditionReport::default();

    for gone in [x, y] {
        let (sub, map) = h.delete(&[gone]).expect("nonempty remainder");
        let found =
            cycle_evidence(&sub, &SearchConstraints::none()).map(|e| lift(e, &map));
        report.push(format!("(iv) H-{gone} hamiltonian"), found);
    }
    {
        let (sub, map) = h.delete(&[x, y]).expect("nonempty remainder");
        let q1 = translated_pair(&map, (pa, pb)).expect("primed labels survive");
        let q2 = translated_pair(&map, (pc, pd)).expect("primed labels survive");
        let found =
            pair_evidence(&sub, q1, q2, &SearchConstraints::none()).map(|e| lift(e, &map));
        report.push("(iv) disjoint a'b' and c'd' paths in H-x-y".to_string(), found);
    }

    let mut cond_v_edges: Vec<(usize, usize)> = h
        .edges()
        .into_iter()
        .filter(|&(u, v)| u != x && u != y && v != x && v != y)
        .collect();
    cond_v_edges.sort_unstable();
    let cond_v: Vec<(String, Option<Evidence>)> = cond_v_edges
        .into_par_iter()
        .map(|(v, w)| {
            let (sub, map) = h.delete(&[x, y, v, w]).expect("enough vertices");
            let mut found = None;
            for s in [pa, pb] {
                for t in [pc, pd] {
                    if found.is_some() {
                        break;
                    }
                    if let Some((rs, rt)) = translated_pair(&map, (s, t)) {
                        found = path_evidence(&sub, rs, rt, &SearchConstraints::none())
                            .map(|e| lift(e, &map));
                    }
                }
            }
            if found.is_none() {
                found = [((pa, pc), (pb, pd)), ((pa, pd), (pb, pc))]
                    .into_iter()
                    .find_map(|(p1, p2)| {
                        let q1 = translated_pair(&map, p1)?;
                        let q2 = translated_pair(&map, p2)?;
                        pair_evidence(&sub, q1, q2, &SearchConstraints::none())
                            .map(|e| lift(e, &map))
                    });
            }
            (format!("(v) edge {v}-{w}"), found)
        })
        .collect();
    for (clause, found) in cond_v {
        report.push(clause, found);
    }

    for (gone1, gone2) in [(x, pa), (x, pb), (y, pc), (y, pd)] {
        let (sub, map) = h.delete(&[gone1, gone2]).expect("nonempty remainder");
        let found =
            cycle_evidence(&sub, &SearchConstraints::none()).map(|e| lift(e, &map));
        report.push(format!("(vi) H-{gone1}-{gone2} hamiltonian"), found);
    }
    Ok(report)
}

// ---------------------------------------------------------------------------
// Label discovery
// ---------------------------------------------------------------------------

/// First (by edge order) pair of independent edges of `g` passing the side
/// conditions and all of (i)–(iii), as `(a, b, c, d)`.
pub fn find_dot_labels_g(g: &Graph) -> Option<(usize, usize, usize, usize)> {
    let edges = g.edges();
    for (i, &(a, b)) in edges.iter().enumerate() {
        for &(c, d) in &edges[i + 1..] {
            if validate_g_labels(g, (a, b), (c, d)).is_err() {
                continue;
            }
            let report = check_dot_conditions_g(g, a, b, c, d).expect("labels validated");
            if report.all_pass() {
                return Some((a, b, c, d));
            }
        }
    }
    None
}

/// First (by edge order) adjacent cubic pair of `h` passing the side
/// conditions and all of (iv)–(vi), as `(x, y)`.
pub fn find_dot_labels_h(h: &Graph) -> Option<(usize, usize)> {
    for (x, y) in h.edges() {
        if h.degree(x) != 3 || h.degree(y) != 3 {
            continue;
        }
        let Ok(report) = check_dot_conditions_h(h, x, y) else {
            continue;
        };
        if report.all_pass() {
            return Some((x, y));
        }
    }
    None
}

// ---------------------------------------------------------------------------
// Iterative lemma bullets
// ---------------------------------------------------------------------------

/// The three bullets that let an edge `x_G y_G` of `G` serve as the next
/// dot product's `(x, y)` inside `G · H`:
///
/// * `G − x_G` has a hamiltonian `ab`-path avoiding `cd` or a hamiltonian
///   `cd`-path avoiding `ab`;
/// * the same for `G − y_G`;
/// * `G` has disjoint spanning `ab`- and `cd`-paths, one containing `x_G`
///   and the other `y_G`.
///
/// Preconditions: `x_G y_G` is an edge of cubic vertices whose closed
/// neighbourhoods avoid `{a, b, c, d}`, and the labels satisfy the dot
/// product's side conditions on `G`.
pub fn check_iterative_bullets(
    g: &Graph,
    a: usize,
    b: usize,
    c: usize,
    d: usize,
    xg: usize,
    yg: usize,
) -> Result<ConditionReport, ConstructionError> {
    validate_g_labels(g, (a, b), (c, d))?;
    if xg >= g.n() || yg >= g.n() || !g.has_edge(xg, yg) {
        return Err(ConstructionError::NotAnEdge(xg, yg));
    }
    for v in [xg, yg] {
        if g.degree(v) != 3 {
            return Err(ConstructionError::NonCubic(v));
        }
    }
    let labels = [a, b, c, d];
    for v in [xg, yg] {
        if labels.contains(&v) || g.neighbors(v).iter().any(|w| labels.contains(&w)) {
            return Err(ConstructionError::LabelClash(xg, yg));
        }
    }
    let mut report = ConditionReport::default();
    for (bullet, gone) in [(1, xg), (2, yg)] {
        let (sub, map) = g.delete(&[gone]).expect("nonempty remainder");
        let found = reduced_path(&sub, &map, (a, b), (c, d))
            .or_else(|| reduced_path(&sub, &map, (c, d), (a, b)));
        report.push(format!("bullet {bullet}: G-{gone}"), found);
    }
    let found = find_disjoint_spanning_paths_separating(
        g,
        (a, b),
        (c, d),
        &SearchConstraints::none(),
        (xg, yg),
    )
    .expect("distinct validated endpoints")
    .into_found()
    .map(|(p, q)| Evidence::Pair(p, q));
    report.push("bullet 3: separated spanning paths".to_string(), found);
    Ok(report)
}

/// First edge of `g` (ascending) whose endpoints qualify for and satisfy
/// all three iterative bullets.
pub fn find_iterative_edge(
    g: &Graph,
    a: usize,
    b: usize,
    c: usize,
    d: usize,
) -> Option<(usize, usize)> {
    g.edges().into_iter().find(|&(xg, yg)| {
        check_iterative_bullets(g, a, b, c, d, xg, yg)
            .map(|r| r.all_pass())
            .unwrap_or(false)
    })
}

// ---------------------------------------------------------------------------
// Extendable 5-cycles
// ---------------------------------------------------------------------------

/// One position `i` of an extendable 5-cycle: the deleted cycle vertex,
/// its off-cycle neighbor, and the two hamiltonian cycles the definition
/// demands (in original labels; each misses exactly the deleted vertex).
#[derive(Clone, Debug)]
pub struct ExtendableStep {
    /// `vᵢ`.
    pub deleted: usize,
    /// `v′ᵢ`, the unique neighbor of `vᵢ` off the cycle.
    pub off_neighbor: usize,
    /// Hamiltonian cycle of `G − vᵢ` avoiding the opposite edge
    /// `v_{i−2} v_{i+2}`.
    pub avoiding: CycleWitness,
    /// Hamiltonian cycle of `G − v′ᵢ` through the four cycle edges that
    /// remain around `vᵢ`, avoiding the opposite edge.
    pub through: CycleWitness,
}

/// A 5-cycle of cubic vertices together with all ten witnesses that make
/// it extendable.
#[derive(Clone, Debug)]
pub struct ExtendableCycle {
    /// Cyclic order `v₀ … v₄`, minimum vertex first, smaller neighbor
    /// second.
    pub cycle: [usize; 5],
    /// One entry per position `i`.
    pub around: Vec<ExtendableStep>,
}

fn five_cycles(g: &Graph) -> Vec<[usize; 5]> {
    let mut cycles = Vec::new();
    for v0 in g.vertices() {
        for v1 in g.neighbors(v0).iter() {
            if v1 <= v0 {
                continue;
            }
            for v2 in g.neighbors(v1).iter() {
                if v2 <= v0 || v2 == v1 {
                    continue;
                }
                for v3 in g.neighbors(v2).iter() {
                    if v3 <= v0 || v3 == v1 || v3 == v2 {
                        continue;
                    }
                    for v4 in g.neighbors(v3).iter() {
                        // v4 > v1 picks one of the two directions.
                        if v4 <= v0 || v4 == v1 || v4 == v2 || v4 == v3 || v4 < v1 {
                            continue;
                        }
                        if g.has_edge(v4, v0) {
                            cycles.push([v0, v1, v2, v3, v4]);
                        }
                    }
                }
            }
        }
    }
    cycles
}

fn extendable_steps(g: &Graph, cycle: [usize; 5]) -> Option<Vec<ExtendableStep>> {
    // Gate: every cycle vertex cubic, with its third neighbor off the
    // cycle (a chord would make condition (ii) unsatisfiable anyway).
    let mut offs = [0usize; 5];
    for i in 0..5 {
        let v = cycle[i];
        if g.degree(v) != 3 {
            return None;
        }
        let (prev, next) = (cycle[(i + 4) % 5], cycle[(i + 1) % 5]);
        let off = g
            .neighbors(v)
            .iter()
            .find(|&w| w != prev && w != next)
            .expect("cubic vertex has a third neighbor");
        if cycle.contains(&off) {
            return None;
        }
        offs[i] = off;
    }
    let mut around = Vec::with_capacity(5);
    for i in 0..5 {
        let v = cycle[i];
        let (m2, m1, p1, p2) = (
            cycle[(i + 3) % 5],
            cycle[(i + 4) % 5],
            cycle[(i + 1) % 5],
            cycle[(i + 2) % 5],
        );
        let (sub, map) = g.delete(&[v]).expect("nonempty remainder");
        let (ou, ov) = (map.to_new(m2).unwrap(), map.to_new(p2).unwrap());
        let avoiding = find_hamiltonian_cycle(&sub, &SearchConstraints::none().forbid(ou, ov))
            .expect("valid edge")
            .into_found()?
            .relabel(|x| map.to_old(x));
        let (sub, map) = g.delete(&[offs[i]]).expect("nonempty remainder");
        let t = |u: usize| map.to_new(u).expect("cycle vertices survive");
        let constraints = SearchConstraints::none()
            .require(t(m2), t(m1))
            .require(t(m1), t(v))
            .require(t(v), t(p1))
            .require(t(p1), t(p2))
            .forbid(t(p2), t(m2));
        let through = find_hamiltonian_cycle(&sub, &constraints)
            .expect("valid edges")
            .into_found()?
            .relabel(|x| map.to_old(x));
        around.push(ExtendableStep { deleted: v, off_neighbor: offs[i], avoiding, through });
    }
    Some(around)
}

/// All extendable 5-cycles of `g`: 5-cycles of cubic vertices where, for
/// every position `i`, `G − vᵢ` has a hamiltonian cycle avoiding the
/// opposite cycle edge and `G − v′ᵢ` has one whose intersection with the
/// 5-cycle is exactly the path around `vᵢ`.
pub fn find_extendable_5_cycles(g: &Graph) -> Vec<ExtendableCycle> {
    five_cycles(g)
        .into_par_iter()
        .filter_map(|cycle| {
            extendable_steps(g, cycle).map(|around| ExtendableCycle { cycle, around })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::Search;
    use crate::named;
    use crate::predicates::{is_hypohamiltonian, is_k2_hamiltonian, is_k2_hypohamiltonian, is_snark};

    fn star() -> Graph {
        Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap()
    }

    #[test]
    fn fragment_basics() {
        let f = fragment_from_cubic_vertex(&named::petersen(), 0).unwrap();
        assert_eq!(f.graph().n(), 9);
        assert!(!f.is_trivial());
        for x in f.attachments() {
            assert_eq!(f.graph().degree(x), 2);
        }
        // Attachments are the (relabeled) neighbors of 0, i.e. 1, 4, 5
        // shifted down by one.
        assert_eq!(f.attachments(), [0, 3, 4]);

        assert!(Fragment::new(star(), [1, 2, 3]).unwrap().is_trivial());
        assert_eq!(
            fragment_from_cubic_vertex(&named::cycle(5).unwrap(), 0).unwrap_err(),
            ConstructionError::NonCubic(0)
        );
        assert_eq!(
            Fragment::new(star(), [1, 2, 2]).unwrap_err(),
            ConstructionError::AttachmentCollision
        );

        // Any cubic inner vertex of J18 cuts off a 17-vertex fragment.
        let j = named::j18();
        let inner_cubic = (0..18).find(|&v| j.degree(v) == 3).unwrap();
        let f = fragment_from_cubic_vertex(&j, inner_cubic).unwrap();
        assert_eq!(f.graph().n(), 17);
    }

    #[test]
    fn gluing_the_trivial_fragment_reinserts_the_vertex() {
        let p = named::petersen();
        let f = fragment_from_cubic_vertex(&p, 0).unwrap();
        let trivial = Fragment::new(star(), [1, 2, 3]).unwrap();
        let glued = glue(&f, &trivial).unwrap();
        assert_eq!(glued.graph.n(), 9 + 4 - 3);
        assert!(!glued.both_trivial);
        // The result is Petersen with vertex 0 moved to label 9.
        let relabeled: Vec<(usize, usize)> = p
            .edges()
            .into_iter()
            .map(|(u, v)| {
                let f = |w: usize| if w == 0 { 9 } else { w - 1 };
                (f(u), f(v))
            })
            .collect();
        let expected = Graph::from_edges(10, &relabeled).unwrap();
        assert_eq!(glued.graph, expected);
        // Both-trivial gluings are flagged.
        assert!(glue(&trivial, &trivial).unwrap().both_trivial);
    }

    #[test]
    fn glued_petersen_fragments_are_k2_hypohamiltonian() {
        let f = fragment_from_cubic_vertex(&named::petersen(), 0).unwrap();
        let glued = glue(&f, &f).unwrap();
        assert_eq!(glued.graph.n(), 15, "order p + q - 5 with p = q = 10");
        let report = is_hypohamiltonian(&glued.graph);
        assert!(report.verdict, "{:?}", report.counterexample);
        let report = is_k2_hypohamiltonian(&glued.graph);
        assert!(report.verdict, "{:?}", report.counterexample);
    }

    #[test]
    fn dot_spec_validation() {
        let p = named::petersen();
        let j5 = named::flower_snark(5).unwrap();
        // 0-2 is not an edge of Petersen.
        assert_eq!(
            DotSpec::new(&p, &j5, (0, 2), (7, 9), 0, 5).unwrap_err(),
            ConstructionError::NotAnEdge(0, 2)
        );
        // Shared endpoint.
        assert_eq!(
            DotSpec::new(&p, &j5, (0, 1), (1, 2), 0, 5).unwrap_err(),
            ConstructionError::SharedEndpoint
        );
        // 1 (in ab) is adjacent to 2 (in cd).
        assert!(matches!(
            DotSpec::new(&p, &j5, (0, 1), (2, 7), 0, 5).unwrap_err(),
            ConstructionError::SideCondition(_)
        ));
        // x and y must be adjacent in H.
        assert_eq!(
            DotSpec::new(&p, &j5, (0, 1), (7, 9), 0, 2).unwrap_err(),
            ConstructionError::NotAdjacent(0, 2)
        );
        // Order floor.
        let c5 = named::cycle(5).unwrap();
        assert_eq!(
            DotSpec::new(&c5, &j5, (0, 1), (2, 3), 0, 5).unwrap_err(),
            ConstructionError::TooSmall(5)
        );
    }

    #[test]
    fn petersen_dot_petersen_is_a_hypohamiltonian_snark() {
        let p = named::petersen();
        let spec = DotSpec::new(&p, &p, (0, 1), (7, 9), 0, 1).unwrap();
        assert_eq!(spec.primed(), (4, 5, 2, 6));
        let gh = dot_product(&p, &p, &spec).unwrap();
        assert_eq!(gh.n(), 18);
        assert!(gh.is_cubic(), "dot product of cubic graphs is cubic");
        let snark = is_snark(&gh);
        assert!(snark.verdict, "{:?}", snark.parts);
        assert!(is_hypohamiltonian(&gh).verdict);
        // Consistent with the known census: no K2-hypohamiltonian graph
        // of order 18 arises this way.
        assert!(!is_k2_hamiltonian(&gh).verdict);
    }

    #[test]
    fn q3_fails_condition_iv() {
        // Deleting one vertex of a bipartite graph with balanced classes
        // leaves an odd graph, so H - x is never hamiltonian.
        let report = check_dot_conditions_h(&named::hypercube(3).unwrap(), 0, 1).unwrap();
        assert!(!report.all_pass());
        assert!(!report.condition_pass("(iv)"));
        assert!(report.first_failure().unwrap().clause.starts_with("(iv)"));
    }

    #[test]
    fn flower5_passes_all_dot_conditions_at_the_frozen_labels() {
        let j5 = named::flower_snark(5).unwrap();
        let (a, b, c, d) = FLOWER5_G_LABELS;
        let g_report = check_dot_conditions_g(&j5, a, b, c, d).unwrap();
        assert!(g_report.all_pass(), "{:?}", g_report.first_failure());
        for prefix in ["(i)", "(ii)", "(iii)"] {
            assert!(g_report.condition_pass(prefix));
        }
        let (x, y) = FLOWER5_H_LABELS;
        let h_report = check_dot_conditions_h(&j5, x, y).unwrap();
        assert!(h_report.all_pass(), "{:?}", h_report.first_failure());
        for prefix in ["(iv)", "(v)", "(vi)"] {
            assert!(h_report.condition_pass(prefix));
        }
        // Witnesses accompany every passing clause.
        assert!(g_report.clauses.iter().all(|c| c.evidence.is_some()));
    }

    #[test]
    fn flower5_iterative_bullets_hold_at_the_frozen_edge() {
        let j5 = named::flower_snark(5).unwrap();
        let (a, b, c, d) = FLOWER5_G_LABELS;
        let (xg, yg) = FLOWER5_ITER_EDGE;
        let report = check_iterative_bullets(&j5, a, b, c, d, xg, yg).unwrap();
        assert!(report.all_pass(), "{:?}", report.first_failure());
        assert_eq!(find_iterative_edge(&j5, a, b, c, d), Some((xg, yg)));
        // Bullet 3's witness really separates the edge's endpoints.
        let Some(Evidence::Pair(p, q)) = &report.clauses[2].evidence else {
            panic!("bullet 3 carries a pair witness");
        };
        assert_ne!(p.contains_vertex(xg), q.contains_vertex(xg));
        assert_ne!(p.contains_vertex(yg), q.contains_vertex(yg));
    }

    #[test]
    fn iterative_bullet_preconditions() {
        let j5 = named::flower_snark(5).unwrap();
        let (a, b, c, d) = FLOWER5_G_LABELS;
        // An edge whose closed neighbourhood touches a label is rejected.
        let (xg, yg) = {
            let bad = j5
                .edges()
                .into_iter()
                .find(|&(u, v)| u == a || v == a)
                .unwrap();
            (bad.0, bad.1)
        };
        assert!(matches!(
            check_iterative_bullets(&j5, a, b, c, d, xg, yg).unwrap_err(),
            ConstructionError::LabelClash(..)
        ));
        // Non-cubic endpoints are rejected (C12 has none cubic).
        let c12 = named::cycle(12).unwrap();
        assert_eq!(
            check_iterative_bullets(&c12, 0, 1, 6, 7, 3, 4).unwrap_err(),
            ConstructionError::NonCubic(3)
        );
        // Non-edges are rejected.
        assert_eq!(
            check_iterative_bullets(&j5, a, b, c, d, 0, 2).unwrap_err(),
            ConstructionError::NotAnEdge(0, 2)
        );
    }

    #[test]
    fn extendable_5_cycles_on_gp_11_2() {
        let g = named::generalized_petersen(11, 2).unwrap();
        let found = find_extendable_5_cycles(&g);
        assert_eq!(found.len(), 11, "one extendable 5-cycle per outer position");
        for ext in &found {
            assert_eq!(ext.around.len(), 5);
            for (i, step) in ext.around.iter().enumerate() {
                let v = ext.cycle[i];
                assert_eq!(step.deleted, v);
                assert!(g.has_edge(v, step.off_neighbor));
                // Re-validate both witnesses against their constraints.
                let m2 = ext.cycle[(i + 3) % 5];
                let m1 = ext.cycle[(i + 4) % 5];
                let p1 = ext.cycle[(i + 1) % 5];
                let p2 = ext.cycle[(i + 2) % 5];
                let mut alive = crate::graph::VertexSet::full(g.n());
                alive.remove(v);
                step.avoiding
                    .validate_on(&g, &alive, &SearchConstraints::none().forbid(m2, p2))
                    .unwrap();
                let mut alive = crate::graph::VertexSet::full(g.n());
                alive.remove(step.off_neighbor);
                let constraints = SearchConstraints::none()
                    .require(m2, m1)
                    .require(m1, v)
                    .require(v, p1)
                    .require(p1, p2)
                    .forbid(p2, m2);
                step.through.validate_on(&g, &alive, &constraints).unwrap();
            }
        }
    }

    #[test]
    fn extendable_5_cycles_empty_cases() {
        // K5: plenty of 5-cycles, but no cubic vertex.
        assert!(find_extendable_5_cycles(&named::complete(5).unwrap()).is_empty());
        // Q3: bipartite, so no 5-cycles at all.
        assert!(find_extendable_5_cycles(&named::hypercube(3).unwrap()).is_empty());
        // The wheel: every 5-cycle passes through the high-degree hub.
        assert!(find_extendable_5_cycles(&named::wheel19()).is_empty());
        // The flower snark has girth 5 yet none of its 5-cycles extend.
        assert!(find_extendable_5_cycles(&named::flower_snark(5).unwrap()).is_empty());
    }

    #[test]
    fn every_petersen_5_cycle_is_extendable() {
        assert_eq!(find_extendable_5_cycles(&named::petersen()).len(), 12);
    }

    #[test]
    fn dot_product_revalidates_against_its_inputs() {
        let p = named::petersen();
        let j5 = named::flower_snark(5).unwrap();
        let spec = DotSpec::new(&p, &p, (0, 1), (7, 9), 0, 1).unwrap();
        // The same spec against a different H re-validates from scratch:
        // 0 and 1 are not adjacent in the flower snark.
        assert_eq!(
            dot_product(&p, &j5, &spec).unwrap_err(),
            ConstructionError::NotAdjacent(0, 1)
        );
        // For adjacent cubic x, y the edge count drops by deg x + deg y - 1
        // on the H side and by two on the G side, then four joins return.
        let gh = dot_product(&p, &p, &spec).unwrap();
        assert_eq!(gh.m(), p.m() + p.m() - 3);
    }

    // Labels found by the bundled exhaustive searches below (first hits in
    // edge order); frozen so the expensive discovery runs once.
    const FLOWER5_G_LABELS: (usize, usize, usize, usize) = (0, 5, 1, 11);
    const FLOWER5_H_LABELS: (usize, usize) = (0, 5);
    const FLOWER5_ITER_EDGE: (usize, usize) = (2, 7);

    #[test]
    #[ignore = "dev-run that discovers the frozen label constants"]
    fn discover_flower5_labels() {
        let j5 = named::flower_snark(5).unwrap();
        let g = find_dot_labels_g(&j5);
        println!("G labels: {g:?}");
        let h = find_dot_labels_h(&j5);
        println!("H labels: {h:?}");
        if let Some((a, b, c, d)) = g {
            println!("iterative edge: {:?}", find_iterative_edge(&j5, a, b, c, d));
        }
    }

    #[test]
    fn flower5_dot_flower5_order_and_regularity() {
        let j5 = named::flower_snark(5).unwrap();
        let (a, b, c, d) = FLOWER5_G_LABELS;
        let (x, y) = FLOWER5_H_LABELS;
        let spec = DotSpec::new(&j5, &j5, (a, b), (c, d), x, y).unwrap();
        let gh = dot_product(&j5, &j5, &spec).unwrap();
        assert_eq!(gh.n(), 38);
        assert!(gh.is_cubic());
        assert_eq!(
            find_hamiltonian_cycle(&gh, &SearchConstraints::none()).unwrap(),
            Search::Absent,
            "dot product of non-hamiltonian graphs is non-hamiltonian"
        );
    }
}
