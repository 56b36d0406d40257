//! Graph ingestion and serialization.
//!
//! Three formats are supported:
//!
//! * graph6, McKay's printable ASCII encoding. The order is stored as
//!   N(n): one byte `n+63` for n <= 62, `~` plus three 6-bit bytes for
//!   n <= 258047, `~~` plus six 6-bit bytes beyond that. The upper
//!   triangle of the adjacency matrix is then packed column by column,
//!   bit x(i,j) for j = 1..n, i = 0..j, six bits per byte, each byte
//!   offset by 63. Encoding is bit-exact.
//! * DIMACS, `p edge <n> <m>` header plus `e <u> <v>` lines, 1-based.
//! * plain whitespace edge lists, 0-based.
//!
//! Strict mode rejects loops and parallel edges with the byte offset of
//! the offending token; lenient mode collapses them and records a warning.

use crate::graph::Graph;
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Graph6,
    Dimacs,
    EdgeList,
}

impl Format {
    pub fn from_name(name: &str) -> Option<Format> {
        match name {
            "graph6" | "g6" => Some(Format::Graph6),
            "dimacs" => Some(Format::Dimacs),
            "edgelist" | "edge-list" => Some(Format::EdgeList),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParseMode {
    Strict,
    Lenient,
}

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("byte {offset}: {message}")]
    Malformed { offset: usize, message: String },
    #[error("byte {offset}: vertex {id} out of range (n = {n})")]
    VertexOutOfRange { offset: usize, id: usize, n: usize },
    #[error("byte {offset}: loop at vertex {v} rejected in strict mode")]
    LoopRejected { offset: usize, v: usize },
    #[error("byte {offset}: parallel edge {u}-{v} rejected in strict mode")]
    ParallelEdge { offset: usize, u: usize, v: usize },
}

fn malformed(offset: usize, message: impl Into<String>) -> FormatError {
    FormatError::Malformed {
        offset,
        message: message.into(),
    }
}

/// A parsed graph plus any lenient-mode warnings.
#[derive(Debug)]
pub struct Parsed {
    pub graph: Graph,
    pub warnings: Vec<String>,
}

pub fn parse_graph(input: &[u8], format: Format, mode: ParseMode) -> Result<Parsed, FormatError> {
    match format {
        Format::Graph6 => parse_graph6(input).map(|graph| Parsed {
            graph,
            warnings: Vec::new(),
        }),
        Format::Dimacs => parse_dimacs(input, mode),
        Format::EdgeList => parse_edge_list(input, mode),
    }
}

pub fn serialize_graph(g: &Graph, format: Format) -> String {
    match format {
        Format::Graph6 => to_graph6(g),
        Format::Dimacs => to_dimacs(g),
        Format::EdgeList => to_edge_list(g),
    }
}

// ---------------------------------------------------------------------------
// graph6

const G6_HEADER: &[u8] = b">>graph6<<";

/// Decodes one graph6 line. An optional `>>graph6<<` header and trailing
/// newline are accepted; anything else must be part of the encoding.
pub fn parse_graph6(input: &[u8]) -> Result<Graph, FormatError> {
    let mut data = input;
    let mut base = 0usize;
    if data.starts_with(G6_HEADER) {
        data = &data[G6_HEADER.len()..];
        base += G6_HEADER.len();
    }
    while data.last() == Some(&b'\n') || data.last() == Some(&b'\r') {
        data = &data[..data.len() - 1];
    }
    if data.is_empty() {
        return Err(malformed(base, "empty graph6 data"));
    }

    let (n, consumed) = decode_g6_order(data, base)?;
    let body = &data[consumed..];
    let bits_needed = n * n.saturating_sub(1) / 2;
    let bytes_needed = (bits_needed + 5) / 6;
    if body.len() != bytes_needed {
        return Err(malformed(
            base + consumed,
            format!(
                "expected {} edge bytes for n = {}, found {}",
                bytes_needed,
                n,
                body.len()
            ),
        ));
    }

    let mut g = Graph::new(n);
    let mut bit_index = 0usize;
    'outer: for j in 1..n {
        for i in 0..j {
            let byte = body[bit_index / 6];
            if !(63..=126).contains(&byte) {
                return Err(malformed(
                    base + consumed + bit_index / 6,
                    format!("invalid graph6 byte 0x{byte:02x}"),
                ));
            }
            let value = byte - 63;
            let bit = (value >> (5 - (bit_index % 6))) & 1;
            if bit == 1 {
                g.add_edge(i, j);
            }
            bit_index += 1;
            if bit_index == bits_needed {
                break 'outer;
            }
        }
    }
    // Padding bits must be zero for a canonical encoding; tolerate them
    // silently, serialization always re-pads with zeros.
    Ok(g)
}

fn decode_g6_order(data: &[u8], base: usize) -> Result<(usize, usize), FormatError> {
    let b0 = data[0];
    if b0 != b'~' {
        if !(63..=126).contains(&b0) {
            return Err(malformed(base, format!("invalid graph6 order byte 0x{b0:02x}")));
        }
        return Ok(((b0 - 63) as usize, 1));
    }
    if data.len() >= 2 && data[1] == b'~' {
        if data.len() < 8 {
            return Err(malformed(base, "truncated graph6 long order"));
        }
        let mut n: usize = 0;
        for (i, &b) in data[2..8].iter().enumerate() {
            if !(63..=126).contains(&b) {
                return Err(malformed(base + 2 + i, "invalid graph6 order byte"));
            }
            n = (n << 6) | (b - 63) as usize;
        }
        Ok((n, 8))
    } else {
        if data.len() < 4 {
            return Err(malformed(base, "truncated graph6 medium order"));
        }
        let mut n: usize = 0;
        for (i, &b) in data[1..4].iter().enumerate() {
            if !(63..=126).contains(&b) {
                return Err(malformed(base + 1 + i, "invalid graph6 order byte"));
            }
            n = (n << 6) | (b - 63) as usize;
        }
        Ok((n, 4))
    }
}

pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::new();
    if n <= 62 {
        out.push(63 + n as u8);
    } else if n <= 258_047 {
        out.push(b'~');
        for shift in [12, 6, 0] {
            out.push(63 + ((n >> shift) & 0x3f) as u8);
        }
    } else {
        out.push(b'~');
        out.push(b'~');
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(63 + ((n >> shift) & 0x3f) as u8);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0u8;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(63 + acc);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        acc <<= 6 - filled;
        out.push(63 + acc);
    }
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}

// ---------------------------------------------------------------------------
// DIMACS

fn parse_dimacs(input: &[u8], mode: ParseMode) -> Result<Parsed, FormatError> {
    let text = std::str::from_utf8(input).map_err(|e| malformed(e.valid_up_to(), "not UTF-8"))?;
    let mut graph: Option<Graph> = None;
    let mut declared_edges = 0usize;
    let mut seen_edges = 0usize;
    let mut warnings = Vec::new();
    let mut offset = 0usize;

    for line in text.split_inclusive('\n') {
        let line_offset = offset;
        offset += line.len();
        let line = line.trim_end();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        match fields[0] {
            "p" => {
                if graph.is_some() {
                    return Err(malformed(line_offset, "duplicate problem line"));
                }
                if fields.len() != 4 || (fields[1] != "edge" && fields[1] != "col") {
                    return Err(malformed(line_offset, "expected `p edge <n> <m>`"));
                }
                let n: usize = fields[2]
                    .parse()
                    .map_err(|_| malformed(line_offset, "bad vertex count"))?;
                declared_edges = fields[3]
                    .parse()
                    .map_err(|_| malformed(line_offset, "bad edge count"))?;
                graph = Some(Graph::new(n));
            }
            "e" => {
                let g = graph
                    .as_mut()
                    .ok_or_else(|| malformed(line_offset, "edge before problem line"))?;
                if fields.len() != 3 {
                    return Err(malformed(line_offset, "expected `e <u> <v>`"));
                }
                let u: usize = fields[1]
                    .parse()
                    .map_err(|_| malformed(line_offset, "bad endpoint"))?;
                let v: usize = fields[2]
                    .parse()
                    .map_err(|_| malformed(line_offset, "bad endpoint"))?;
                if u == 0 || v == 0 || u > g.n() || v > g.n() {
                    return Err(FormatError::VertexOutOfRange {
                        offset: line_offset,
                        id: if u == 0 || u > g.n() { u } else { v },
                        n: g.n(),
                    });
                }
                let (u, v) = (u - 1, v - 1);
                if u == v {
                    match mode {
                        ParseMode::Strict => {
                            return Err(FormatError::LoopRejected {
                                offset: line_offset,
                                v: u,
                            })
                        }
                        ParseMode::Lenient => {
                            warnings.push(format!("dropped loop at vertex {u}"));
                            continue;
                        }
                    }
                }
                if g.has_edge(u, v) {
                    match mode {
                        ParseMode::Strict => {
                            return Err(FormatError::ParallelEdge {
                                offset: line_offset,
                                u,
                                v,
                            })
                        }
                        ParseMode::Lenient => {
                            warnings.push(format!("collapsed parallel edge {u}-{v}"));
                            continue;
                        }
                    }
                }
                g.add_edge(u, v);
                seen_edges += 1;
            }
            other => {
                return Err(malformed(
                    line_offset,
                    format!("unknown DIMACS line type `{other}`"),
                ))
            }
        }
    }

    let graph = graph.ok_or_else(|| malformed(0, "missing problem line"))?;
    if seen_edges != declared_edges {
        let note = format!("header declares {declared_edges} edges, file has {seen_edges}");
        match mode {
            ParseMode::Strict => return Err(malformed(0, note)),
            ParseMode::Lenient => warnings.push(note),
        }
    }
    Ok(Parsed { graph, warnings })
}

fn to_dimacs(g: &Graph) -> String {
    let mut out = format!("p edge {} {}\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        out.push_str(&format!("e {} {}\n", u + 1, v + 1));
    }
    out
}

// ---------------------------------------------------------------------------
// edge list

fn parse_edge_list(input: &[u8], mode: ParseMode) -> Result<Parsed, FormatError> {
    let text = std::str::from_utf8(input).map_err(|e| malformed(e.valid_up_to(), "not UTF-8"))?;
    let mut edges: Vec<(usize, usize, usize)> = Vec::new();
    let mut max_id = None::<usize>;
    let mut pending: Option<(usize, usize)> = None;

    let mut cursor = 0usize;
    for token in text.split_whitespace() {
        let tok_offset = text[cursor..]
            .find(token)
            .map(|p| cursor + p)
            .unwrap_or(cursor);
        cursor = tok_offset + token.len();
        let id: usize = token
            .parse()
            .map_err(|_| malformed(tok_offset, format!("bad vertex id `{token}`")))?;
        max_id = Some(max_id.map_or(id, |m| m.max(id)));
        pending = match pending {
            None => Some((id, tok_offset)),
            Some((u, u_off)) => {
                edges.push((u, id, u_off));
                None
            }
        };
    }
    if let Some((_, off)) = pending {
        return Err(malformed(off, "odd number of vertex ids"));
    }

    let n = max_id.map_or(0, |m| m + 1);
    let mut g = Graph::new(n);
    let mut warnings = Vec::new();
    for (u, v, off) in edges {
        if u == v {
            match mode {
                ParseMode::Strict => return Err(FormatError::LoopRejected { offset: off, v: u }),
                ParseMode::Lenient => {
                    warnings.push(format!("dropped loop at vertex {u}"));
                    continue;
                }
            }
        }
        if g.has_edge(u, v) {
            match mode {
                ParseMode::Strict => return Err(FormatError::ParallelEdge { offset: off, u, v }),
                ParseMode::Lenient => {
                    warnings.push(format!("collapsed parallel edge {u}-{v}"));
                    continue;
                }
            }
        }
        g.add_edge(u, v);
    }
    Ok(Parsed { graph: g, warnings })
}

fn to_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}
