//! Bit-exact codecs for the two persisted graph formats: short-form graph6
//! (n ≤ 62) and a plain edge-list format with an explicit order header.

use thiserror::Error;

use crate::graph::{Graph, GraphError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FormatError {
    #[error("graph6: empty input")]
    Graph6Empty,
    #[error("graph6: byte {byte:#04x} at offset {offset} outside printable range 63..=126")]
    Graph6ByteOutOfRange { byte: u8, offset: usize },
    #[error("graph6: extended size header at offset 0 not supported (only n <= 62)")]
    Graph6ExtendedSize,
    #[error("graph6: graph of order 0 rejected")]
    Graph6ZeroOrder,
    #[error("graph6: expected {expected} data bytes for n={n}, found {found}")]
    Graph6BadLength {
        n: usize,
        expected: usize,
        found: usize,
    },
    #[error("graph6: nonzero padding bits in final byte at offset {offset}")]
    Graph6Padding { offset: usize },
    #[error("graph6: cannot encode {n} vertices in short form (n <= 62)")]
    Graph6Oversize { n: usize },
    #[error("edge list: line {line}: {message}")]
    EdgeList { line: usize, message: String },
    #[error("edge list: missing \"n <count>\" header")]
    EdgeListMissingHeader,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// The persisted formats.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphFormat {
    Graph6,
    EdgeList,
}

impl std::str::FromStr for GraphFormat {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "graph6" | "g6" => Ok(GraphFormat::Graph6),
            "edgelist" | "edge-list" => Ok(GraphFormat::EdgeList),
            other => Err(format!("unknown graph format '{other}'")),
        }
    }
}

/// One graph serialized in one of the supported formats.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphText {
    pub format: GraphFormat,
    pub payload: Vec<u8>,
}

impl GraphText {
    pub fn encode(format: GraphFormat, g: &Graph) -> Result<Self, FormatError> {
        let payload = match format {
            GraphFormat::Graph6 => emit_graph6(g)?,
            GraphFormat::EdgeList => emit_edge_list(g).into_bytes(),
        };
        Ok(GraphText { format, payload })
    }

    pub fn decode(&self) -> Result<Graph, FormatError> {
        parse(self.format, &self.payload)
    }
}

pub fn parse(format: GraphFormat, bytes: &[u8]) -> Result<Graph, FormatError> {
    match format {
        GraphFormat::Graph6 => parse_graph6(bytes),
        GraphFormat::EdgeList => parse_edge_list(bytes),
    }
}

pub fn emit(format: GraphFormat, g: &Graph) -> Result<Vec<u8>, FormatError> {
    Ok(GraphText::encode(format, g)?.payload)
}

/// Upper-triangle bit positions in graph6 order: column-major, i.e. the pair
/// stream (0,1), (0,2), (1,2), (0,3), (1,3), (2,3), ...
fn graph6_pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..n).flat_map(move |j| (0..j).map(move |i| (i, j)))
}

/// Decode one short-form graph6 line (optionally newline-terminated).
pub fn parse_graph6(line: &[u8]) -> Result<Graph, FormatError> {
    let mut data = line;
    while let [rest @ .., b'\n' | b'\r'] = data {
        data = rest;
    }
    let (&head, body) = data.split_first().ok_or(FormatError::Graph6Empty)?;
    if head == 126 {
        return Err(FormatError::Graph6ExtendedSize);
    }
    if !(63..=126).contains(&head) {
        return Err(FormatError::Graph6ByteOutOfRange {
            byte: head,
            offset: 0,
        });
    }
    let n = (head - 63) as usize;
    if n == 0 {
        return Err(FormatError::Graph6ZeroOrder);
    }
    let nbits = n * (n - 1) / 2;
    let expected = nbits.div_ceil(6);
    if body.len() != expected {
        return Err(FormatError::Graph6BadLength {
            n,
            expected,
            found: body.len(),
        });
    }
    let mut edges = Vec::new();
    for (k, (i, j)) in graph6_pairs(n).enumerate() {
        let byte = body[k / 6];
        if !(63..=126).contains(&byte) {
            return Err(FormatError::Graph6ByteOutOfRange {
                byte,
                offset: 1 + k / 6,
            });
        }
        if (byte - 63) >> (5 - k % 6) & 1 == 1 {
            edges.push((i, j));
        }
    }
    // emit() zero-pads, so a strict parse keeps round-trips byte-identical
    if !nbits.is_multiple_of(6) {
        let last = body[expected - 1] - 63;
        if last & ((1 << (6 - nbits % 6)) - 1) != 0 {
            return Err(FormatError::Graph6Padding { offset: expected });
        }
    }
    Ok(Graph::from_edges(n, &edges)?)
}

/// Encode a graph as one short-form graph6 line (no trailing newline).
pub fn emit_graph6(g: &Graph) -> Result<Vec<u8>, FormatError> {
    let n = g.order();
    if n > 62 {
        return Err(FormatError::Graph6Oversize { n });
    }
    let nbits = n * (n - 1) / 2;
    let mut out = vec![63 + n as u8];
    out.resize(1 + nbits.div_ceil(6), 63);
    for (k, (i, j)) in graph6_pairs(n).enumerate() {
        if g.has_edge(i, j) {
            out[1 + k / 6] += 1 << (5 - k % 6);
        }
    }
    Ok(out)
}

pub fn emit_graph6_string(g: &Graph) -> Result<String, FormatError> {
    emit_graph6(g).map(|b| String::from_utf8(b).expect("graph6 bytes are printable ascii"))
}

/// Parse the edge-list format: a header line `n <count>`, then one `u v` line
/// per edge. Blank lines and lines starting with '#' are ignored.
pub fn parse_edge_list(text: &[u8]) -> Result<Graph, FormatError> {
    let text = String::from_utf8_lossy(text);
    let mut n: Option<usize> = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut tokens = trimmed.split_whitespace();
        match n {
            None => {
                if tokens.next() != Some("n") {
                    return Err(FormatError::EdgeList {
                        line,
                        message: format!("expected header \"n <count>\", got {trimmed:?}"),
                    });
                }
                let count = tokens
                    .next()
                    .and_then(|t| t.parse::<usize>().ok())
                    .ok_or_else(|| FormatError::EdgeList {
                        line,
                        message: "bad vertex count in header".into(),
                    })?;
                if tokens.next().is_some() {
                    return Err(FormatError::EdgeList {
                        line,
                        message: "trailing tokens after header".into(),
                    });
                }
                n = Some(count);
            }
            Some(count) => {
                let parse_endpoint = |t: Option<&str>| {
                    t.and_then(|t| t.parse::<usize>().ok())
                        .ok_or_else(|| FormatError::EdgeList {
                            line,
                            message: format!("expected \"u v\", got {trimmed:?}"),
                        })
                };
                let u = parse_endpoint(tokens.next())?;
                let v = parse_endpoint(tokens.next())?;
                if tokens.next().is_some() {
                    return Err(FormatError::EdgeList {
                        line,
                        message: "trailing tokens after edge".into(),
                    });
                }
                if u >= count || v >= count {
                    return Err(FormatError::EdgeList {
                        line,
                        message: format!("edge ({u}, {v}) out of range for {count} vertices"),
                    });
                }
                if u == v {
                    return Err(FormatError::EdgeList {
                        line,
                        message: format!("loop edge ({u}, {v})"),
                    });
                }
                edges.push((u, v));
            }
        }
    }
    let n = n.ok_or(FormatError::EdgeListMissingHeader)?;
    Ok(Graph::from_edges(n, &edges)?)
}

pub fn emit_edge_list(g: &Graph) -> String {
    let mut out = format!("n {}\n", g.order());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{named_family, Family};

    #[test]
    fn parse_graph6_hand_decoded_examples() {
        // 'B' - 63 = 3 vertices, 'w' - 63 = 56 = 111000b: pairs (0,1),(0,2),(1,2)
        let k3 = parse_graph6(b"Bw").unwrap();
        assert_eq!(k3, named_family(Family::Complete, 3).unwrap());

        // '?' - 63 = 0: no edges on 2 vertices
        let e2 = parse_graph6(b"A?").unwrap();
        assert_eq!(e2, named_family(Family::Empty, 2).unwrap());

        // '_' - 63 = 32 = 100000b: bit (0,1) set
        let k2 = parse_graph6(b"A_").unwrap();
        assert_eq!(k2, named_family(Family::Complete, 2).unwrap());
    }

    #[test]
    fn emit_graph6_inverse_examples() {
        assert_eq!(
            emit_graph6(&named_family(Family::Complete, 3).unwrap()).unwrap(),
            b"Bw"
        );
        assert_eq!(
            emit_graph6(&named_family(Family::Empty, 2).unwrap()).unwrap(),
            b"A?"
        );
        assert_eq!(
            emit_graph6(&named_family(Family::Complete, 2).unwrap()).unwrap(),
            b"A_"
        );
    }

    #[test]
    fn parse_graph6_accepts_trailing_newline() {
        assert_eq!(parse_graph6(b"Bw\n").unwrap(), parse_graph6(b"Bw").unwrap());
        assert_eq!(
            parse_graph6(b"Bw\r\n").unwrap(),
            parse_graph6(b"Bw").unwrap()
        );
    }

    #[test]
    fn parse_graph6_rejects_malformed_input() {
        assert_eq!(parse_graph6(b""), Err(FormatError::Graph6Empty));
        assert_eq!(
            parse_graph6(b"B"),
            Err(FormatError::Graph6BadLength {
                n: 3,
                expected: 1,
                found: 0
            })
        );
        assert_eq!(
            parse_graph6(b"Bww"),
            Err(FormatError::Graph6BadLength {
                n: 3,
                expected: 1,
                found: 2
            })
        );
        assert_eq!(
            parse_graph6(b"B\x20"),
            Err(FormatError::Graph6ByteOutOfRange {
                byte: 0x20,
                offset: 1
            })
        );
        assert_eq!(parse_graph6(b"~??"), Err(FormatError::Graph6ExtendedSize));
        assert_eq!(parse_graph6(b"?"), Err(FormatError::Graph6ZeroOrder));
        // K3 needs only 3 of the 6 bits; a set padding bit must be rejected
        assert_eq!(
            parse_graph6(&[b'B', 63 + 57]),
            Err(FormatError::Graph6Padding { offset: 1 })
        );
    }

    #[test]
    fn parse_edge_list_examples() {
        let k3 = parse_edge_list(b"n 3\n0 1\n1 2\n0 2\n").unwrap();
        assert_eq!(k3, named_family(Family::Complete, 3).unwrap());

        let e2 = parse_edge_list(b"n 2\n").unwrap();
        assert_eq!(e2, named_family(Family::Empty, 2).unwrap());

        let p4 = parse_edge_list(b"n 4\n# path\n0 1\n1 2\n2 3\n").unwrap();
        assert_eq!(p4, named_family(Family::Path, 4).unwrap());
    }

    #[test]
    fn parse_edge_list_reports_line_numbers() {
        let err = parse_edge_list(b"n 3\n0 1\nbogus\n").unwrap_err();
        assert!(
            matches!(err, FormatError::EdgeList { line: 3, .. }),
            "{err}"
        );

        let err = parse_edge_list(b"n 2\n0 5\n").unwrap_err();
        assert!(
            matches!(err, FormatError::EdgeList { line: 2, .. }),
            "{err}"
        );

        let err = parse_edge_list(b"# only a comment\n").unwrap_err();
        assert_eq!(err, FormatError::EdgeListMissingHeader);
    }

    #[test]
    fn edge_list_round_trip() {
        let g = Graph::from_edges(5, &[(0, 4), (1, 3), (2, 3)]).unwrap();
        assert_eq!(parse_edge_list(emit_edge_list(&g).as_bytes()).unwrap(), g);
    }

    #[test]
    fn graph_text_round_trip() {
        let g = named_family(Family::Cycle, 5).unwrap();
        for format in [GraphFormat::Graph6, GraphFormat::EdgeList] {
            let text = GraphText::encode(format, &g).unwrap();
            assert_eq!(text.decode().unwrap(), g);
        }
    }
}
