//! Machine-checkable certificates for the positive half of the
//! hamiltonicity predicates.
//!
//! A [`Certificate`] packages a subject graph (as graph6), a [`Claim`],
//! and one hamiltonian cycle per deletion that the claim requires. The
//! JSON schema is versioned ([`SCHEMA`]); vertex sequences use the
//! subject's own graph6 labeling, so a certificate is meaningful on its
//! own, away from whatever produced it.
//!
//! [`Certificate::validate`] replays every witness by pure checking — it
//! decodes the graph, walks each cycle edge by edge, and compares the
//! set of deletions against what the claim demands. No search is run, so
//! the negative half of a hypohamiltonicity claim (the subject itself
//! having no hamiltonian cycle) cannot be replayed; the report says so
//! instead of pretending otherwise.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::engine::{find_hamiltonian_cycle, CycleWitness, Search, SearchConstraints};
use crate::formats::{decode_graph6, encode_graph6, FormatError};
use crate::graph::Graph;
use crate::predicates::{
    is_k1_hamiltonian, is_k2_hamiltonian, is_hypohamiltonian, is_k2_hypohamiltonian, Deletion,
};

/// Schema tag carried by every certificate this build emits.
pub const SCHEMA: &str = "k2ham.certificate/1";

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum CertificateError {
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error("JSON: {0}")]
    Json(String),
    #[error("unknown schema {0:?} (this build reads {SCHEMA:?})")]
    SchemaMismatch(String),
    #[error("the claim does not hold on the subject graph: {0}")]
    ClaimFalse(String),
    #[error("witness {index}: {reason}")]
    BadWitness { index: usize, reason: String },
    #[error("coverage: {0}")]
    Coverage(String),
}

/// What a certificate asserts about its subject graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Claim {
    #[serde(rename = "hamiltonian")]
    Hamiltonian,
    #[serde(rename = "k1-hamiltonian")]
    K1Hamiltonian,
    #[serde(rename = "k2-hamiltonian")]
    K2Hamiltonian,
    #[serde(rename = "hypohamiltonian")]
    Hypohamiltonian,
    #[serde(rename = "k2-hypohamiltonian")]
    K2Hypohamiltonian,
}

impl Claim {
    pub fn as_str(self) -> &'static str {
        match self {
            Claim::Hamiltonian => "hamiltonian",
            Claim::K1Hamiltonian => "k1-hamiltonian",
            Claim::K2Hamiltonian => "k2-hamiltonian",
            Claim::Hypohamiltonian => "hypohamiltonian",
            Claim::K2Hypohamiltonian => "k2-hypohamiltonian",
        }
    }

    /// Does the claim include "the subject itself is non-hamiltonian"?
    /// That half is established by exhaustive search and has no replayable
    /// positive witness.
    fn asserts_non_hamiltonian(self) -> bool {
        matches!(self, Claim::Hypohamiltonian | Claim::K2Hypohamiltonian)
    }
}

impl std::fmt::Display for Claim {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One replayed fact: `subject − deleted` has the hamiltonian cycle
/// `vertices`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessEntry {
    /// Deleted vertices, ascending; empty for the subject itself.
    pub deleted: Vec<usize>,
    /// Witness shape; always `"cycle"` in this schema version.
    pub kind: String,
    /// The cycle in canonical traversal order (subject labels).
    pub vertices: Vec<usize>,
}

/// A self-contained, replayable record of a positive predicate verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub schema: String,
    pub graph6: String,
    pub claim: Claim,
    pub witnesses: Vec<WitnessEntry>,
    pub tool: String,
    pub elapsed_ms: u64,
}

/// What a successful replay covered — and what it could not.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReplayReport {
    pub witnesses_replayed: usize,
    /// Present when part of the claim is a non-existence statement that
    /// pure replay cannot re-establish.
    pub unreplayed: Option<String>,
}

/// Assemble a certificate from already-verified witnesses. The map comes
/// straight out of a predicate report, so entries arrive sorted by
/// deletion.
pub(crate) fn assemble(
    g: &Graph,
    claim: Claim,
    witnesses: &BTreeMap<Deletion, CycleWitness>,
    elapsed_ms: u64,
) -> Certificate {
    let witnesses = witnesses
        .iter()
        .map(|(d, w)| {
            let mut deleted = d.vertices();
            deleted.sort_unstable();
            WitnessEntry {
                deleted,
                kind: "cycle".to_string(),
                vertices: w.vertices().to_vec(),
            }
        })
        .collect();
    Certificate {
        schema: SCHEMA.to_string(),
        graph6: encode_graph6(g),
        claim,
        witnesses,
        tool: format!("k2ham {}", env!("CARGO_PKG_VERSION")),
        elapsed_ms,
    }
}

/// Prove `claim` on `g` and package the evidence. Runs the relevant
/// predicate to completion; a false claim is an error, not a certificate.
pub fn certify(g: &Graph, claim: Claim) -> Result<Certificate, CertificateError> {
    let start = Instant::now();
    let witnesses = match claim {
        Claim::Hamiltonian => {
            match find_hamiltonian_cycle(g, &SearchConstraints::none())
                .expect("no constraint edges")
            {
                Search::Found(w) => BTreeMap::from([(Deletion::None, w)]),
                _ => {
                    return Err(CertificateError::ClaimFalse(format!(
                        "{claim} fails on the graph itself"
                    )))
                }
            }
        }
        Claim::K1Hamiltonian => report_witnesses(claim, is_k1_hamiltonian(g))?,
        Claim::K2Hamiltonian => report_witnesses(claim, is_k2_hamiltonian(g))?,
        Claim::Hypohamiltonian => report_witnesses(claim, is_hypohamiltonian(g))?,
        Claim::K2Hypohamiltonian => report_witnesses(claim, is_k2_hypohamiltonian(g))?,
    };
    let elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(assemble(g, claim, &witnesses, elapsed_ms))
}

fn report_witnesses(
    claim: Claim,
    report: crate::predicates::PredicateReport,
) -> Result<BTreeMap<Deletion, CycleWitness>, CertificateError> {
    if report.verdict {
        Ok(report.witnesses)
    } else {
        let at = report
            .counterexample
            .map_or_else(|| "a subcondition".to_string(), |d| format!("deletion {d}"));
        Err(CertificateError::ClaimFalse(format!("{claim} fails at {at}")))
    }
}

impl Certificate {
    /// Single-line JSON, suitable for one-certificate-per-line streams.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }

    /// Indented JSON for files meant to be read.
    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    pub fn from_json(text: &str) -> Result<Certificate, CertificateError> {
        serde_json::from_str(text).map_err(|e| CertificateError::Json(e.to_string()))
    }

    /// Replay every witness against the subject graph by pure checking:
    /// decode, walk each cycle, and compare the deletion set against the
    /// claim's coverage requirement. Succeeds only if all of it holds.
    pub fn validate(&self) -> Result<ReplayReport, CertificateError> {
        if self.schema != SCHEMA {
            return Err(CertificateError::SchemaMismatch(self.schema.clone()));
        }
        let g = decode_graph6(self.graph6.as_bytes())?;
        let mut seen: Vec<Vec<usize>> = Vec::with_capacity(self.witnesses.len());
        for (index, entry) in self.witnesses.iter().enumerate() {
            replay_entry(&g, entry)
                .map_err(|reason| CertificateError::BadWitness { index, reason })?;
            let mut deleted = entry.deleted.clone();
            deleted.sort_unstable();
            if seen.contains(&deleted) {
                return Err(CertificateError::BadWitness {
                    index,
                    reason: format!("duplicate witness for deletion {deleted:?}"),
                });
            }
            seen.push(deleted);
        }
        check_coverage(&g, self.claim, &seen)?;
        Ok(ReplayReport {
            witnesses_replayed: self.witnesses.len(),
            unreplayed: self.claim.asserts_non_hamiltonian().then(|| {
                "non-hamiltonicity of the subject is established by search, \
                 not replayable from witnesses"
                    .to_string()
            }),
        })
    }
}

/// Check one entry: the deletion is well-formed for the claim family and
/// `vertices` is a hamiltonian cycle of the subject minus the deletion.
fn replay_entry(g: &Graph, entry: &WitnessEntry) -> Result<(), String> {
    if entry.kind != "cycle" {
        return Err(format!("unknown witness kind {:?}", entry.kind));
    }
    let n = g.n();
    for &v in &entry.deleted {
        if v >= n {
            return Err(format!("deleted vertex {v} out of range (n = {n})"));
        }
    }
    match entry.deleted.as_slice() {
        [] | [_] => {}
        [u, v] => {
            if u == v {
                return Err(format!("deleted pair repeats vertex {u}"));
            }
            if !g.has_edge(*u, *v) {
                return Err(format!("deleted pair {{{u},{v}}} is not an edge"));
            }
        }
        more => return Err(format!("{} deleted vertices; at most 2 supported", more.len())),
    }
    let cycle = &entry.vertices;
    if cycle.len() + entry.deleted.len() != n {
        return Err(format!(
            "cycle covers {} vertices, expected {}",
            cycle.len(),
            n - entry.deleted.len().min(n)
        ));
    }
    if cycle.len() < 3 {
        return Err(format!("a cycle needs at least 3 vertices, got {}", cycle.len()));
    }
    let mut used = vec![false; n];
    for &v in cycle {
        if v >= n {
            return Err(format!("cycle vertex {v} out of range (n = {n})"));
        }
        if entry.deleted.contains(&v) {
            return Err(format!("cycle visits deleted vertex {v}"));
        }
        if used[v] {
            return Err(format!("cycle visits vertex {v} twice"));
        }
        used[v] = true;
    }
    for i in 0..cycle.len() {
        let u = cycle[i];
        let v = cycle[(i + 1) % cycle.len()];
        if !g.has_edge(u, v) {
            return Err(format!("consecutive vertices {u},{v} are not adjacent"));
        }
    }
    Ok(())
}

/// The witnesses as a whole must cover exactly what the claim demands:
/// one per vertex for K₁ claims, one per edge for K₂ claims, the single
/// undeleted graph for plain hamiltonicity.
fn check_coverage(g: &Graph, claim: Claim, seen: &[Vec<usize>]) -> Result<(), CertificateError> {
    let mut required: Vec<Vec<usize>> = match claim {
        Claim::Hamiltonian => vec![Vec::new()],
        Claim::K1Hamiltonian | Claim::Hypohamiltonian => (0..g.n()).map(|v| vec![v]).collect(),
        Claim::K2Hamiltonian | Claim::K2Hypohamiltonian => {
            g.edges().into_iter().map(|(u, v)| vec![u, v]).collect()
        }
    };
    required.sort();
    let mut got = seen.to_vec();
    got.sort();
    if got != required {
        let missing = required.iter().find(|d| !got.contains(d));
        let extra = got.iter().find(|d| !required.contains(d));
        let mut parts = Vec::new();
        if let Some(d) = missing {
            parts.push(format!("missing witness for deletion {d:?}"));
        }
        if let Some(d) = extra {
            parts.push(format!("unexpected witness for deletion {d:?}"));
        }
        return Err(CertificateError::Coverage(parts.join("; ")));
    }
    Ok(())
}
