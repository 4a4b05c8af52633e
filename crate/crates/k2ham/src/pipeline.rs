//! Streaming filters over graph6/sparse6 collections, as produced by the
//! usual generators.
//!
//! [`run_filter`] reads one graph per line, evaluates a predicate on each
//! in parallel, and emits the survivors — echoed lines, a count, or
//! certificates — in input order regardless of the job count, so a given
//! input and flag set always produces byte-identical output. Summary
//! counts go to the error stream; standard output carries only machine
//! output.
//!
//! Malformed lines are reported with their line numbers and skipped, or
//! abort the run under strict mode. Budget-limited (undecided) verdicts
//! are never silently dropped: they are excluded from the survivors,
//! counted in the summary, and strict mode turns a nonzero undecided
//! count into a failure exit at the CLI layer.

use std::collections::BTreeMap;
use std::io::{BufRead, Write};
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use thiserror::Error;

use crate::cells::has_suitable_cell;
use crate::certificate::{assemble, Certificate, Claim};
use crate::engine::{find_hamiltonian_cycle, CycleWitness, Search, SearchConstraints};
use crate::formats::{decode_graph6, decode_sparse6, FormatError};
use crate::graph::Graph;
use crate::predicates::{
    deletion_family_search, is_snark, one_per_vertex, two_per_edge, Deletion, FamilyOutcome,
};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum PipelineError {
    #[error("unknown predicate {0:?} (catalog: hamiltonian, k1, k2, hypo, k2hypo, snark, girth>=G, cell-suitable)")]
    UnknownPredicate(String),
    #[error("job count must be at least 1")]
    NoJobs,
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("certificates are only emitted for positive hamiltonicity-family predicates, not {0}")]
    NoCertificates(String),
    #[error("worker pool: {0}")]
    Pool(String),
    #[error("write: {0}")]
    Write(String),
}

/// The closed predicate catalog understood by the filter and check
/// commands. Parsed with [`FromStr`]; [`std::fmt::Display`] gives back
/// the exact token.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PredicateKind {
    Hamiltonian,
    K1Hamiltonian,
    K2Hamiltonian,
    Hypohamiltonian,
    K2Hypohamiltonian,
    Snark,
    /// `girth>=g`; an acyclic graph (infinite girth) passes every bound.
    GirthAtLeast(usize),
    /// Some outer labeling makes the graph a suitable cell.
    CellSuitable,
}

impl FromStr for PredicateKind {
    type Err = PipelineError;

    fn from_str(s: &str) -> Result<Self, PipelineError> {
        match s {
            "hamiltonian" => Ok(PredicateKind::Hamiltonian),
            "k1" => Ok(PredicateKind::K1Hamiltonian),
            "k2" => Ok(PredicateKind::K2Hamiltonian),
            "hypo" => Ok(PredicateKind::Hypohamiltonian),
            "k2hypo" => Ok(PredicateKind::K2Hypohamiltonian),
            "snark" => Ok(PredicateKind::Snark),
            "cell-suitable" => Ok(PredicateKind::CellSuitable),
            _ => match s.strip_prefix("girth>=").and_then(|g| g.parse().ok()) {
                Some(g) => Ok(PredicateKind::GirthAtLeast(g)),
                None => Err(PipelineError::UnknownPredicate(s.to_string())),
            },
        }
    }
}

impl std::fmt::Display for PredicateKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PredicateKind::Hamiltonian => f.write_str("hamiltonian"),
            PredicateKind::K1Hamiltonian => f.write_str("k1"),
            PredicateKind::K2Hamiltonian => f.write_str("k2"),
            PredicateKind::Hypohamiltonian => f.write_str("hypo"),
            PredicateKind::K2Hypohamiltonian => f.write_str("k2hypo"),
            PredicateKind::Snark => f.write_str("snark"),
            PredicateKind::GirthAtLeast(g) => write!(f, "girth>={g}"),
            PredicateKind::CellSuitable => f.write_str("cell-suitable"),
        }
    }
}

impl PredicateKind {
    /// The certificate claim this predicate corresponds to, when it has
    /// one (the hamiltonicity family does; structural predicates do not).
    pub fn claim(self) -> Option<Claim> {
        match self {
            PredicateKind::Hamiltonian => Some(Claim::Hamiltonian),
            PredicateKind::K1Hamiltonian => Some(Claim::K1Hamiltonian),
            PredicateKind::K2Hamiltonian => Some(Claim::K2Hamiltonian),
            PredicateKind::Hypohamiltonian => Some(Claim::Hypohamiltonian),
            PredicateKind::K2Hypohamiltonian => Some(Claim::K2Hypohamiltonian),
            _ => None,
        }
    }
}

/// What the filter writes for each survivor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum OutputMode {
    /// Echo the survivor's input line verbatim.
    #[default]
    Graphs,
    /// No per-graph output; print the match count at the end.
    Count,
    /// One single-line JSON certificate per survivor.
    Certificates,
}

/// A filter invocation: which predicate, negated or not, how many worker
/// threads, and what to emit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FilterSpec {
    pub kind: PredicateKind,
    pub negate: bool,
    pub jobs: usize,
    pub mode: OutputMode,
}

impl FilterSpec {
    pub fn new(kind: PredicateKind) -> Self {
        FilterSpec { kind, negate: false, jobs: 1, mode: OutputMode::Graphs }
    }

    fn check(&self) -> Result<(), PipelineError> {
        if self.jobs == 0 {
            return Err(PipelineError::NoJobs);
        }
        if self.mode == OutputMode::Certificates && (self.negate || self.kind.claim().is_none()) {
            let what =
                if self.negate { format!("not {}", self.kind) } else { self.kind.to_string() };
            return Err(PipelineError::NoCertificates(what));
        }
        Ok(())
    }
}

/// A three-valued predicate outcome: budget-limited searches may give up.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    True,
    False,
    Undecided,
}

impl Verdict {
    fn negate(self, negate: bool) -> Verdict {
        match (self, negate) {
            (Verdict::True, true) => Verdict::False,
            (Verdict::False, true) => Verdict::True,
            (v, _) => v,
        }
    }

    fn from_bool(b: bool) -> Verdict {
        if b {
            Verdict::True
        } else {
            Verdict::False
        }
    }
}

/// Evaluate one catalog predicate on one graph. `budget` bounds each
/// hamiltonicity search (per deletion); `None` searches to completion,
/// so only budgeted runs can come back [`Verdict::Undecided`]. The
/// hamiltonicity-family cases agree exactly with the predicates module,
/// including its small-graph conventions.
pub fn evaluate(g: &Graph, kind: PredicateKind, budget: Option<u64>) -> Verdict {
    decide(g, kind, budget).0
}

/// Like [`evaluate`], but keeps the witness cycles when the verdict is
/// true and the predicate is in the hamiltonicity family — enough to
/// assemble a certificate without a second search.
fn decide(
    g: &Graph,
    kind: PredicateKind,
    budget: Option<u64>,
) -> (Verdict, BTreeMap<Deletion, CycleWitness>) {
    let none = BTreeMap::new;
    match kind {
        PredicateKind::Hamiltonian => match hamiltonian(g, budget) {
            Search::Found(w) => (Verdict::True, BTreeMap::from([(Deletion::None, w)])),
            Search::Absent | Search::Contradictory => (Verdict::False, none()),
            Search::Undecided => (Verdict::Undecided, none()),
        },
        PredicateKind::K1Hamiltonian => k1_family(g, budget),
        PredicateKind::K2Hamiltonian => k2_family(g, budget),
        PredicateKind::Hypohamiltonian => match hamiltonian(g, budget) {
            Search::Found(_) => (Verdict::False, none()),
            Search::Undecided => (Verdict::Undecided, none()),
            Search::Absent | Search::Contradictory => k1_family(g, budget),
        },
        PredicateKind::K2Hypohamiltonian => match hamiltonian(g, budget) {
            Search::Found(_) => (Verdict::False, none()),
            Search::Undecided => (Verdict::Undecided, none()),
            Search::Absent | Search::Contradictory => k2_family(g, budget),
        },
        PredicateKind::Snark => (Verdict::from_bool(is_snark(g).verdict), none()),
        PredicateKind::GirthAtLeast(bound) => {
            (Verdict::from_bool(g.girth().is_none_or(|girth| girth >= bound)), none())
        }
        PredicateKind::CellSuitable => (Verdict::from_bool(has_suitable_cell(g)), none()),
    }
}

fn hamiltonian(g: &Graph, budget: Option<u64>) -> Search<CycleWitness> {
    let mut constraints = SearchConstraints::none();
    constraints.node_budget = budget;
    find_hamiltonian_cycle(g, &constraints).expect("no constraint edges")
}

fn k1_family(g: &Graph, budget: Option<u64>) -> (Verdict, BTreeMap<Deletion, CycleWitness>) {
    if g.n() == 1 {
        return (Verdict::False, BTreeMap::new());
    }
    family(g, one_per_vertex(g), budget)
}

fn k2_family(g: &Graph, budget: Option<u64>) -> (Verdict, BTreeMap<Deletion, CycleWitness>) {
    if g.n() <= 3 {
        return (Verdict::from_bool(g.m() == 0), BTreeMap::new());
    }
    family(g, two_per_edge(g), budget)
}

fn family(
    g: &Graph,
    deletions: Vec<Deletion>,
    budget: Option<u64>,
) -> (Verdict, BTreeMap<Deletion, CycleWitness>) {
    match deletion_family_search(g, &deletions, budget) {
        FamilyOutcome::AllFound(witnesses) => (Verdict::True, witnesses),
        FamilyOutcome::Failing(..) => (Verdict::False, BTreeMap::new()),
        FamilyOutcome::Undecided(_) => (Verdict::Undecided, BTreeMap::new()),
    }
}

/// Totals reported after a filter run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct FilterSummary {
    /// Successfully decoded graphs.
    pub total: usize,
    /// Graphs on which the (possibly negated) predicate came out true.
    pub matched: usize,
    /// Graphs the budget did not suffice to decide.
    pub undecided: usize,
    /// Skipped input lines that decoded as neither graph6 nor sparse6.
    pub malformed: usize,
}

/// Decode one stream line: sparse6 if it starts with `:`, graph6
/// otherwise. Generator headers (`>>graph6<<`, `>>sparse6<<`) should be
/// filtered out before calling this.
pub fn decode_line(line: &str) -> Result<Graph, FormatError> {
    if line.starts_with(':') {
        decode_sparse6(line.as_bytes())
    } else {
        decode_graph6(line.as_bytes())
    }
}

fn is_header(line: &str) -> bool {
    line.starts_with(">>graph6<<") || line.starts_with(">>sparse6<<")
}

struct Evaluated {
    line: String,
    verdict: Verdict,
    certificate: Option<Certificate>,
}

/// Run a filter over a graph stream. Survivor output goes to `out`, the
/// per-line malformed reports and the final summary to `err`. The worker
/// pool is private to this call and sized by `spec.jobs`; results are
/// merged back in input order. `budget` is the per-search node budget
/// handed to [`evaluate`].
pub fn run_filter(
    input: impl BufRead,
    spec: &FilterSpec,
    strict: bool,
    budget: Option<u64>,
    mut out: impl Write,
    mut err: impl Write,
) -> Result<FilterSummary, PipelineError> {
    spec.check()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(spec.jobs)
        .build()
        .map_err(|e| PipelineError::Pool(e.to_string()))?;
    let window = spec.jobs * 8;
    let mut summary = FilterSummary::default();
    let mut batch: Vec<(usize, String, Graph)> = Vec::with_capacity(window);
    let mut abort: Option<PipelineError> = None;

    for (index, line) in input.lines().enumerate() {
        let number = index + 1;
        let line = line.map_err(|e| PipelineError::Malformed {
            line: number,
            message: e.to_string(),
        })?;
        let trimmed = line.trim_end();
        if trimmed.is_empty() || is_header(trimmed) {
            continue;
        }
        match decode_line(trimmed) {
            Ok(g) => batch.push((number, trimmed.to_string(), g)),
            Err(e) => {
                summary.malformed += 1;
                writeln!(err, "line {number}: {e}").map_err(write_error)?;
                if strict {
                    abort = Some(PipelineError::Malformed {
                        line: number,
                        message: e.to_string(),
                    });
                    break;
                }
            }
        }
        if batch.len() == window {
            drain(&pool, &mut batch, spec, budget, &mut summary, &mut out)?;
        }
    }
    // Graphs read before a strict abort still get their results.
    drain(&pool, &mut batch, spec, budget, &mut summary, &mut out)?;
    if let Some(error) = abort {
        return Err(error);
    }

    if spec.mode == OutputMode::Count {
        writeln!(out, "{}", summary.matched).map_err(write_error)?;
    }
    writeln!(
        err,
        "summary: total={} matched={} undecided={} malformed={}",
        summary.total, summary.matched, summary.undecided, summary.malformed
    )
    .map_err(write_error)?;
    Ok(summary)
}

fn write_error(e: std::io::Error) -> PipelineError {
    PipelineError::Write(e.to_string())
}

/// Evaluate the buffered window in parallel and emit results in input
/// order.
fn drain(
    pool: &rayon::ThreadPool,
    batch: &mut Vec<(usize, String, Graph)>,
    spec: &FilterSpec,
    budget: Option<u64>,
    summary: &mut FilterSummary,
    out: &mut impl Write,
) -> Result<(), PipelineError> {
    let want_certificates = spec.mode == OutputMode::Certificates;
    let results: Vec<Evaluated> = pool.install(|| {
        batch
            .par_drain(..)
            .map(|(_, line, g)| {
                let start = Instant::now();
                let (raw, witnesses) = decide(&g, spec.kind, budget);
                let verdict = raw.negate(spec.negate);
                let certificate = (want_certificates && verdict == Verdict::True).then(|| {
                    let claim = spec.kind.claim().expect("checked in FilterSpec::check");
                    assemble(&g, claim, &witnesses, start.elapsed().as_millis() as u64)
                });
                Evaluated { line, verdict, certificate }
            })
            .collect()
    });
    for result in results {
        summary.total += 1;
        match result.verdict {
            Verdict::Undecided => summary.undecided += 1,
            Verdict::False => {}
            Verdict::True => {
                summary.matched += 1;
                match spec.mode {
                    OutputMode::Graphs => {
                        writeln!(out, "{}", result.line).map_err(write_error)?;
                    }
                    OutputMode::Certificates => {
                        let cert = result.certificate.expect("built for every match");
                        writeln!(out, "{}", cert.to_json()).map_err(write_error)?;
                    }
                    OutputMode::Count => {}
                }
            }
        }
    }
    Ok(())
}
