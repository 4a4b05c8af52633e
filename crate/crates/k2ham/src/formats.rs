//! Codecs for graph interchange: graph6 and sparse6 (bit-exact per the
//! published `formats.txt` specification), a plain edge-list text format,
//! and a rotation-system embedding format for planar work.
//!
//! graph6 supports the one-byte (n ≤ 62) and four-byte (n ≤ 258047) size
//! headers; the eight-byte form is unreachable at our 128-vertex capacity
//! and is rejected. Decoders are strict: every byte must be in `63..=126`,
//! the payload length must be exact, and graph6 padding bits must be zero.
//!
//! The edge-list and embedding formats are this crate's own. Both are
//! line-oriented, accept LF or CRLF, ignore blank lines, and treat lines
//! whose first non-space character is `#` as comments.

use thiserror::Error;

use crate::graph::{Graph, GraphError, MAX_VERTICES};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum FormatError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("input is empty")]
    EmptyInput,
    #[error("byte {byte:#04x} at position {pos} outside the printable range 63..=126")]
    BadByte { pos: usize, byte: u8 },
    #[error("input ends early: expected {expected} payload bytes, found {got}")]
    Truncated { expected: usize, got: usize },
    #[error("{0} unexpected trailing bytes")]
    TrailingBytes(usize),
    #[error("padding bits past the adjacency data are not zero")]
    NonzeroPadding,
    #[error("the eight-byte graph6 size header exceeds this build's capacity")]
    HugeSizeHeader,
    #[error("sparse6 data must start with ':'")]
    MissingSparse6Colon,
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("declared {declared} edges but found {found}")]
    EdgeCountMismatch { declared: usize, found: usize },
    #[error("rotation at vertex {at} lists {listed}, but not vice versa")]
    InconsistentRotation { at: usize, listed: usize },
}

/// A rotation system as parsed from the embedding text format: for each
/// vertex, its neighbors in clockwise cyclic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddingInput {
    rotations: Vec<Vec<usize>>,
}

impl EmbeddingInput {
    pub fn n(&self) -> usize {
        self.rotations.len()
    }

    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rotations[v]
    }

    pub fn rotations(&self) -> &[Vec<usize>] {
        &self.rotations
    }
}

// ---------------------------------------------------------------------------
// graph6
// ---------------------------------------------------------------------------

const G6_HEADER: &[u8] = b">>graph6<<";
const S6_HEADER: &[u8] = b">>sparse6<<";

/// Trim one trailing LF or CRLF.
fn strip_eol(line: &[u8]) -> &[u8] {
    let line = line.strip_suffix(b"\n").unwrap_or(line);
    line.strip_suffix(b"\r").unwrap_or(line)
}

fn payload_byte(bytes: &[u8], pos: usize) -> Result<u64, FormatError> {
    let byte = bytes[pos];
    if !(63..=126).contains(&byte) {
        return Err(FormatError::BadByte { pos, byte });
    }
    Ok(u64::from(byte - 63))
}

/// Decode the size field; returns (n, bytes consumed).
fn read_size(bytes: &[u8], offset: usize) -> Result<(usize, usize), FormatError> {
    if bytes.len() <= offset {
        return Err(FormatError::EmptyInput);
    }
    let b0 = payload_byte(bytes, offset)?;
    if b0 < 63 {
        return Ok((b0 as usize, 1));
    }
    // b0 == 63 is the escape byte 126 ('~').
    if bytes.len() < offset + 2 {
        return Err(FormatError::Truncated { expected: 4, got: bytes.len() - offset });
    }
    if bytes[offset + 1] == 126 {
        return Err(FormatError::HugeSizeHeader);
    }
    if bytes.len() < offset + 4 {
        return Err(FormatError::Truncated { expected: 4, got: bytes.len() - offset });
    }
    let mut n = 0u64;
    for i in 1..4 {
        n = (n << 6) | payload_byte(bytes, offset + i)?;
    }
    Ok((n as usize, 4))
}

fn encode_size(n: usize, out: &mut Vec<u8>) {
    if n <= 62 {
        out.push(63 + n as u8);
    } else {
        // 63 ≤ n ≤ 258047: '~' then three 6-bit groups, most significant
        // first. The eight-byte form would start at 258048, far beyond the
        // 128-vertex capacity.
        out.push(126);
        out.push(63 + ((n >> 12) & 63) as u8);
        out.push(63 + ((n >> 6) & 63) as u8);
        out.push(63 + (n & 63) as u8);
    }
}

/// Read one line of graph6 data into a graph. A leading `>>graph6<<` header
/// and a trailing newline are tolerated.
pub fn decode_graph6(line: &[u8]) -> Result<Graph, FormatError> {
    let mut bytes = strip_eol(line);
    if let Some(rest) = bytes.strip_prefix(G6_HEADER) {
        bytes = rest;
    }
    if bytes.is_empty() {
        return Err(FormatError::EmptyInput);
    }
    let (n, consumed) = read_size(bytes, 0)?;
    if n == 0 {
        return Err(FormatError::Graph(GraphError::Empty));
    }
    if n > MAX_VERTICES {
        return Err(FormatError::Graph(GraphError::TooLarge(n)));
    }
    let nbits = n * (n - 1) / 2;
    let nbytes = nbits.div_ceil(6);
    let body = &bytes[consumed..];
    if body.len() < nbytes {
        return Err(FormatError::Truncated { expected: nbytes, got: body.len() });
    }
    if body.len() > nbytes {
        return Err(FormatError::TrailingBytes(body.len() - nbytes));
    }
    let mut edges = Vec::new();
    let mut bit = 0usize;
    for j in 1..n {
        for i in 0..j {
            let group = payload_byte(bytes, consumed + bit / 6)?;
            if (group >> (5 - bit % 6)) & 1 == 1 {
                edges.push((i, j));
            }
            bit += 1;
        }
    }
    // Unused low bits of the final byte must be zero.
    while bit < 6 * nbytes {
        let group = payload_byte(bytes, consumed + bit / 6)?;
        if (group >> (5 - bit % 6)) & 1 == 1 {
            return Err(FormatError::NonzeroPadding);
        }
        bit += 1;
    }
    Ok(Graph::from_edges(n, &edges)?)
}

/// Encode a graph as one graph6 line (without a trailing newline).
/// Byte-deterministic: equal graphs give equal strings.
pub fn encode_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::new();
    encode_size(n, &mut out);
    let mut group = 0u8;
    let mut filled = 0u8;
    for j in 1..n {
        for i in 0..j {
            group = (group << 1) | u8::from(g.has_edge(i, j));
            filled += 1;
            if filled == 6 {
                out.push(63 + group);
                group = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(63 + (group << (6 - filled)));
    }
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}

// ---------------------------------------------------------------------------
// sparse6
// ---------------------------------------------------------------------------

/// Big-endian reader over the 6-bit payload groups of a sparse6 body.
struct BitReader<'a> {
    bytes: &'a [u8],
    offset: usize,
    pos: usize,
}

impl BitReader<'_> {
    fn remaining(&self) -> usize {
        6 * (self.bytes.len() - self.offset) - self.pos
    }

    fn take(&mut self, width: usize) -> Result<u64, FormatError> {
        let mut out = 0u64;
        for _ in 0..width {
            let group = payload_byte(self.bytes, self.offset + self.pos / 6)?;
            out = (out << 1) | ((group >> (5 - self.pos % 6)) & 1);
            self.pos += 1;
        }
        Ok(out)
    }
}

/// Read one line of sparse6 data into a graph. A leading `>>sparse6<<`
/// header and a trailing newline are tolerated. Sparse6 can express loops
/// and multi-edges; those are rejected here because [`Graph`] is simple.
pub fn decode_sparse6(line: &[u8]) -> Result<Graph, FormatError> {
    let mut bytes = strip_eol(line);
    if let Some(rest) = bytes.strip_prefix(S6_HEADER) {
        bytes = rest;
    }
    if bytes.is_empty() {
        return Err(FormatError::EmptyInput);
    }
    if bytes[0] != b':' {
        return Err(FormatError::MissingSparse6Colon);
    }
    let (n, consumed) = read_size(bytes, 1)?;
    if n == 0 {
        return Err(FormatError::Graph(GraphError::Empty));
    }
    if n > MAX_VERTICES {
        return Err(FormatError::Graph(GraphError::TooLarge(n)));
    }
    let k = {
        let mut k = 1;
        while (1usize << k) < n {
            k += 1;
        }
        k
    };
    let mut reader = BitReader { bytes, offset: 1 + consumed, pos: 0 };
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut v = 0usize;
    // Pairs (b, x): b bumps the current vertex, x either jumps it forward
    // or names the other endpoint of an edge. Padding is all-ones and is
    // absorbed by the v ≥ n stop.
    while reader.remaining() > k {
        let b = reader.take(1)?;
        let x = reader.take(k)? as usize;
        if b == 1 {
            v += 1;
        }
        if x >= n || v >= n {
            break;
        }
        if x > v {
            v = x;
        } else {
            edges.push((x, v));
        }
    }
    Ok(Graph::from_edges(n, &edges)?)
}

// ---------------------------------------------------------------------------
// Edge-list text
// ---------------------------------------------------------------------------

/// Content lines of a text: (1-based line number, trimmed text), with blank
/// and `#`-comment lines dropped.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, raw)| (i + 1, raw.trim()))
        .filter(|(_, s)| !s.is_empty() && !s.starts_with('#'))
}

fn syntax(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Syntax { line, msg: msg.into() }
}

fn parse_usize(line: usize, token: &str, what: &str) -> Result<usize, FormatError> {
    token
        .parse::<usize>()
        .map_err(|_| syntax(line, format!("expected {what}, found {token:?}")))
}

/// Parse the edge-list format: a header line `n m`, then `m` lines `u v`
/// with 0-indexed endpoints.
pub fn decode_edge_list(text: &str) -> Result<Graph, FormatError> {
    let mut lines = content_lines(text);
    let (lno, header) = lines.next().ok_or(FormatError::EmptyInput)?;
    let mut it = header.split_whitespace();
    let n = parse_usize(lno, it.next().ok_or_else(|| syntax(lno, "expected `n m`"))?, "n")?;
    let m = parse_usize(lno, it.next().ok_or_else(|| syntax(lno, "expected `n m`"))?, "m")?;
    if it.next().is_some() {
        return Err(syntax(lno, "expected exactly `n m`"));
    }
    let mut edges = Vec::with_capacity(m);
    for (lno, line) in lines {
        if edges.len() == m {
            return Err(FormatError::EdgeCountMismatch { declared: m, found: edges.len() + 1 });
        }
        let mut it = line.split_whitespace();
        let u = parse_usize(lno, it.next().unwrap(), "endpoint")?;
        let v =
            parse_usize(lno, it.next().ok_or_else(|| syntax(lno, "expected `u v`"))?, "endpoint")?;
        if it.next().is_some() {
            return Err(syntax(lno, "expected exactly `u v`"));
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(FormatError::EdgeCountMismatch { declared: m, found: edges.len() });
    }
    Ok(Graph::from_edges(n, &edges)?)
}

// ---------------------------------------------------------------------------
// Embedding text
// ---------------------------------------------------------------------------

/// Parse the embedding format: one line per vertex, `v: w₁ w₂ … w_d`, the
/// neighbors in clockwise order. Every vertex 0..n−1 must appear exactly
/// once (in any line order); rotations must be mutually consistent.
pub fn decode_embedding(text: &str) -> Result<(Graph, EmbeddingInput), FormatError> {
    let mut entries: Vec<(usize, usize, Vec<usize>)> = Vec::new();
    for (lno, line) in content_lines(text) {
        let (head, tail) = line
            .split_once(':')
            .ok_or_else(|| syntax(lno, "expected `v: w₁ w₂ …`"))?;
        let v = parse_usize(lno, head.trim(), "vertex")?;
        let mut nbrs = Vec::new();
        for token in tail.split_whitespace() {
            nbrs.push(parse_usize(lno, token, "neighbor")?);
        }
        entries.push((lno, v, nbrs));
    }
    let n = entries.len();
    if n == 0 {
        return Err(FormatError::EmptyInput);
    }
    let mut rotations: Vec<Option<(usize, Vec<usize>)>> = vec![None; n];
    for (lno, v, nbrs) in entries {
        if v >= n {
            return Err(syntax(lno, format!("vertex {v} out of range for {n} lines")));
        }
        if rotations[v].is_some() {
            return Err(syntax(lno, format!("vertex {v} listed twice")));
        }
        rotations[v] = Some((lno, nbrs));
    }
    let mut edges = Vec::new();
    for (v, slot) in rotations.iter().enumerate() {
        let (lno, nbrs) = slot.as_ref().expect("all slots filled by counting");
        let mut seen = crate::graph::VertexSet::EMPTY;
        for &w in nbrs {
            if w >= n {
                return Err(syntax(*lno, format!("neighbor {w} out of range")));
            }
            if w == v {
                return Err(FormatError::Graph(GraphError::SelfLoop(v)));
            }
            if seen.contains(w) {
                return Err(FormatError::Graph(GraphError::DuplicateEdge(v, w)));
            }
            seen.insert(w);
            if v < w {
                edges.push((v, w));
            }
        }
    }
    let rotations: Vec<Vec<usize>> =
        rotations.into_iter().map(|slot| slot.expect("filled").1).collect();
    let graph = Graph::from_edges(n, &edges)?;
    // Mutual consistency: each listed arc must be listed back.
    for v in 0..n {
        for &w in &rotations[v] {
            if !rotations[w].contains(&v) {
                return Err(FormatError::InconsistentRotation { at: v, listed: w });
            }
        }
    }
    Ok((graph, EmbeddingInput { rotations }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named;

    #[test]
    fn graph6_known_vectors() {
        let k4 = decode_graph6(b"C~").unwrap();
        assert_eq!(k4, named::complete(4).unwrap());
        assert_eq!(encode_graph6(&k4), "C~");

        let k1 = decode_graph6(b"@").unwrap();
        assert_eq!(k1.n(), 1);
        assert_eq!(k1.m(), 0);

        let e4 = decode_graph6(b"C?").unwrap();
        assert_eq!((e4.n(), e4.m()), (4, 0));

        let k3 = decode_graph6(b"Bw").unwrap();
        assert_eq!(k3, named::complete(3).unwrap());

        // Header and newline tolerance.
        assert_eq!(decode_graph6(b">>graph6<<C~\n").unwrap(), k4);
        assert_eq!(decode_graph6(b"C~\r\n").unwrap(), k4);
    }

    #[test]
    fn graph6_rejects_malformed_input() {
        assert_eq!(decode_graph6(b""), Err(FormatError::EmptyInput));
        assert_eq!(
            decode_graph6(b"C"),
            Err(FormatError::Truncated { expected: 1, got: 0 })
        );
        assert_eq!(decode_graph6(b"C~~"), Err(FormatError::TrailingBytes(1)));
        assert!(matches!(
            decode_graph6(b"C\x1f"),
            Err(FormatError::BadByte { pos: 1, byte: 0x1f })
        ));
        // K3 with a nonzero bit in the padding area.
        assert_eq!(decode_graph6(b"Bx"), Err(FormatError::NonzeroPadding));
        // n = 0 is not a graph here.
        assert_eq!(decode_graph6(b"?"), Err(FormatError::Graph(GraphError::Empty)));
        // Four-byte size header declaring n = 200 exceeds capacity.
        let mut big = vec![126u8];
        big.extend([63, 66, 71]); // n = 200 = 3·64 + 8, offset by 63
        assert_eq!(
            decode_graph6(&big),
            Err(FormatError::Graph(GraphError::TooLarge(200)))
        );
        // Eight-byte form is out of scope by design.
        assert_eq!(decode_graph6(b"~~A???"), Err(FormatError::HugeSizeHeader));
    }

    #[test]
    fn graph6_round_trip_is_identity_for_all_small_graphs() {
        // Every labeled graph on up to 5 vertices.
        for n in 1..=5usize {
            let slots: Vec<(usize, usize)> =
                (1..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
            for mask in 0..(1u32 << slots.len()) {
                let edges: Vec<(usize, usize)> = slots
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| (mask >> k) & 1 == 1)
                    .map(|(_, &e)| e)
                    .collect();
                let g = Graph::from_edges(n, &edges).unwrap();
                let line = encode_graph6(&g);
                assert_eq!(decode_graph6(line.as_bytes()).unwrap(), g, "n={n} mask={mask}");
            }
        }
    }

    #[test]
    fn graph6_round_trips_named_and_large_graphs() {
        for g in [
            named::petersen(),
            named::j18(),
            named::coxeter(),
            named::flower_snark(7).unwrap(),
            named::hypercube(6).unwrap(),
            named::wheel19(),
        ] {
            let line = encode_graph6(&g);
            assert_eq!(decode_graph6(line.as_bytes()).unwrap(), g);
        }
        // The four-byte size header kicks in at n = 63.
        let c63 = named::cycle(63).unwrap();
        let line = encode_graph6(&c63);
        assert!(line.starts_with('~'));
        assert_eq!(decode_graph6(line.as_bytes()).unwrap(), c63);
        let c128 = named::cycle(128).unwrap();
        assert_eq!(decode_graph6(encode_graph6(&c128).as_bytes()).unwrap(), c128);
    }

    #[test]
    fn graph6_encoding_is_deterministic() {
        let a = encode_graph6(&named::petersen());
        let b = encode_graph6(&named::petersen());
        assert_eq!(a, b);
        // Ten vertices and fifteen edges come back; structure intact.
        let g = decode_graph6(a.as_bytes()).unwrap();
        assert!(g.is_cubic());
        assert_eq!(g.girth(), Some(5));
    }

    #[test]
    fn sparse6_decodes_external_vector() {
        // Our Petersen labeling, written as sparse6 by networkx 3.4.2.
        let g = decode_sparse6(b">>sparse6<<:I`ES@obGkqegW~\n").unwrap();
        assert_eq!(g, named::petersen());
        let g = decode_sparse6(b":I`ES@obGkqegW~").unwrap();
        assert_eq!(g, named::petersen());
    }

    #[test]
    fn sparse6_rejects_malformed_input() {
        assert_eq!(decode_sparse6(b"C~"), Err(FormatError::MissingSparse6Colon));
        assert_eq!(decode_sparse6(b""), Err(FormatError::EmptyInput));
        // A loop: n = 2, pair (b=0, x=0) with v = 0 adds {0,0}.
        // Bits 0,0 then all-zero padding.
        assert_eq!(
            decode_sparse6(b":A?"),
            Err(FormatError::Graph(GraphError::SelfLoop(0)))
        );
    }

    #[test]
    fn edge_list_parses_and_validates() {
        let c3 = decode_edge_list("3 3\n0 1\n1 2\n2 0\n").unwrap();
        assert_eq!(c3, named::cycle(3).unwrap());
        // Comments, blank lines, CRLF, stray spaces.
        let text = "# a triangle\r\n\r\n  3 3\r\n0 1\r\n  1 2\r\n2 0\r\n";
        assert_eq!(decode_edge_list(text).unwrap(), c3);

        assert_eq!(
            decode_edge_list("3 2\n0 1\n"),
            Err(FormatError::EdgeCountMismatch { declared: 2, found: 1 })
        );
        assert_eq!(
            decode_edge_list("3 1\n0 1\n1 2\n"),
            Err(FormatError::EdgeCountMismatch { declared: 1, found: 2 })
        );
        assert_eq!(
            decode_edge_list("3 1\n0 3\n"),
            Err(FormatError::Graph(GraphError::VertexRange(3, 3)))
        );
        assert_eq!(
            decode_edge_list("3 1\n1 1\n"),
            Err(FormatError::Graph(GraphError::SelfLoop(1)))
        );
        assert_eq!(
            decode_edge_list("3 2\n0 1\n0 1\n"),
            Err(FormatError::Graph(GraphError::DuplicateEdge(0, 1)))
        );
        assert!(matches!(decode_edge_list("3\n"), Err(FormatError::Syntax { .. })));
        assert!(matches!(decode_edge_list("3 1\n0 x\n"), Err(FormatError::Syntax { .. })));
        assert_eq!(decode_edge_list("# only comments\n"), Err(FormatError::EmptyInput));
    }

    #[test]
    fn embedding_parses_k4_and_enforces_consistency() {
        let text = "0: 1 2 3\n1: 0 3 2\n2: 0 1 3\n3: 0 2 1\n";
        let (g, emb) = decode_embedding(text).unwrap();
        assert_eq!(g, named::complete(4).unwrap());
        assert_eq!(emb.rotation(1), &[0, 3, 2]);
        assert_eq!(emb.n(), 4);

        // Line order is immaterial.
        let shuffled = "3: 0 2 1\n0: 1 2 3\n2: 0 1 3\n1: 0 3 2\n";
        assert_eq!(decode_embedding(shuffled).unwrap().1, emb);

        // Drop one arc: 2 lists 1, but 1 no longer lists 2.
        let bad = "0: 1 2 3\n1: 0 3\n2: 0 1 3\n3: 0 2 1\n";
        assert_eq!(
            decode_embedding(bad),
            Err(FormatError::InconsistentRotation { at: 2, listed: 1 })
        );
        let dup = "0: 1 1\n1: 0 0\n";
        assert_eq!(
            decode_embedding(dup),
            Err(FormatError::Graph(GraphError::DuplicateEdge(0, 1)))
        );
        assert!(matches!(
            decode_embedding("0: 1\n0: 1\n"),
            Err(FormatError::Syntax { .. })
        ));
    }
}
