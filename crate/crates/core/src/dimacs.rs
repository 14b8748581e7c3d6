//! Reader and writer for the DIMACS shortest-path `.gr` format.
//!
//! ```text
//! c comment
//! p sp <n> <m>
//! a <tail> <head> <weight>
//! ```
//! Vertices are 1-indexed in the file and 0-indexed in memory.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use crate::error::DimacsError;
use crate::graph::{Edge, Graph, VertexId, Weight};

pub fn parse_dimacs<R: BufRead>(mut reader: R) -> Result<Graph, DimacsError> {
    let mut vertex_count: Option<usize> = None;
    let mut edges = Vec::new();
    let mut buf = String::new();
    let mut line_no = 0;
    loop {
        buf.clear();
        if reader.read_line(&mut buf)? == 0 {
            break;
        }
        line_no += 1;
        let line = buf.trim();
        let mut fields = line.split_ascii_whitespace();
        let Some(tag) = fields.next() else { continue };
        match tag {
            "c" => {}
            "p" => {
                if vertex_count.is_some() {
                    return Err(malformed(line_no, "duplicate problem line"));
                }
                if fields.next() != Some("sp") {
                    return Err(malformed(line_no, "expected `p sp <n> <m>`"));
                }
                let n = parse_field(fields.next(), line_no, "vertex count")?;
                let m = parse_field(fields.next(), line_no, "edge count")?;
                expect_end(fields.next(), line_no)?;
                let n = usize::try_from(n).map_err(|_| malformed(line_no, "vertex count too large"))?;
                if n > VertexId::MAX as usize {
                    return Err(malformed(line_no, "vertex count exceeds 32-bit ids"));
                }
                edges.reserve(m.min(1 << 26) as usize);
                vertex_count = Some(n);
            }
            "a" => {
                let n = vertex_count.ok_or_else(|| malformed(line_no, "arc before problem line"))?;
                let tail = parse_vertex(fields.next(), line_no, n)?;
                let head = parse_vertex(fields.next(), line_no, n)?;
                let raw = fields.next().ok_or_else(|| malformed(line_no, "missing weight"))?;
                let weight: i64 = raw
                    .parse()
                    .map_err(|_| malformed(line_no, "weight is not an integer"))?;
                if weight < 0 {
                    return Err(DimacsError::NegativeWeight { line: line_no, weight });
                }
                let weight = Weight::try_from(weight).map_err(|_| malformed(line_no, "weight exceeds 32 bits"))?;
                expect_end(fields.next(), line_no)?;
                edges.push(Edge::new(tail, head, weight));
            }
            other => {
                return Err(malformed(line_no, &format!("unknown line type `{other}`")));
            }
        }
    }
    let n = vertex_count.ok_or(DimacsError::MissingProblemLine)?;
    Ok(Graph::from_edges(n, edges)?)
}

pub fn parse_dimacs_str(text: &str) -> Result<Graph, DimacsError> {
    parse_dimacs(text.as_bytes())
}

pub fn read_dimacs_file(path: impl AsRef<Path>) -> Result<Graph, DimacsError> {
    let file = File::open(path)?;
    parse_dimacs(BufReader::with_capacity(1 << 20, file))
}

pub fn write_dimacs<W: Write>(graph: &Graph, writer: W) -> std::io::Result<()> {
    let mut out = BufWriter::new(writer);
    writeln!(out, "p sp {} {}", graph.vertex_count(), graph.edge_count())?;
    for e in graph.edges() {
        writeln!(out, "a {} {} {}", e.tail + 1, e.head + 1, e.weight)?;
    }
    out.flush()
}

pub fn write_dimacs_file(graph: &Graph, path: impl AsRef<Path>) -> std::io::Result<()> {
    write_dimacs(graph, File::create(path)?)
}

pub fn to_dimacs_string(graph: &Graph) -> String {
    let mut buf = Vec::new();
    write_dimacs(graph, &mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("ascii output")
}

fn malformed(line: usize, message: &str) -> DimacsError {
    DimacsError::Malformed {
        line,
        message: message.to_string(),
    }
}

fn parse_field(field: Option<&str>, line: usize, what: &str) -> Result<u64, DimacsError> {
    let field = field.ok_or_else(|| malformed(line, &format!("missing {what}")))?;
    field
        .parse()
        .map_err(|_| malformed(line, &format!("{what} is not a non-negative integer")))
}

fn parse_vertex(field: Option<&str>, line: usize, n: usize) -> Result<VertexId, DimacsError> {
    let raw = parse_field(field, line, "vertex id")?;
    if raw == 0 || raw > n as u64 {
        return Err(DimacsError::VertexRange {
            line,
            vertex: raw,
            vertex_count: n,
        });
    }
    Ok((raw - 1) as VertexId)
}

fn expect_end(field: Option<&str>, line: usize) -> Result<(), DimacsError> {
    match field {
        None => Ok(()),
        Some(extra) => Err(malformed(line, &format!("unexpected trailing field `{extra}`"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_simple_path() {
        let g = parse_dimacs_str("c test\np sp 3 2\na 1 2 5\na 2 3 7\n").unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(
            g.edges().collect::<Vec<_>>(),
            vec![Edge::new(0, 1, 5), Edge::new(1, 2, 7)]
        );
    }

    #[test]
    fn parallel_arcs_keep_minimum() {
        let g = parse_dimacs_str("p sp 2 2\na 1 2 4\na 1 2 9\n").unwrap();
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![Edge::new(0, 1, 4)]);
    }

    #[test]
    fn empty_graph() {
        let g = parse_dimacs_str("p sp 0 0\n").unwrap();
        assert_eq!(g.vertex_count(), 0);
        assert_eq!(g.edge_count(), 0);
        assert_eq!(to_dimacs_string(&g), "p sp 0 0\n");
    }

    #[test]
    fn writes_one_arc_line() {
        let g = Graph::from_edges(2, [Edge::new(0, 1, 3)]).unwrap();
        assert_eq!(to_dimacs_string(&g), "p sp 2 1\na 1 2 3\n");
    }

    #[test]
    fn self_loops_dropped() {
        let g = parse_dimacs_str("p sp 2 2\na 1 1 4\na 2 1 1\n").unwrap();
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![Edge::new(1, 0, 1)]);
    }

    #[test]
    fn reports_line_numbers() {
        let err = parse_dimacs_str("p sp 2 1\nc ok\na 1 x 3\n").unwrap_err();
        assert!(matches!(err, DimacsError::Malformed { line: 3, .. }), "{err}");
        let err = parse_dimacs_str("p sp 2 1\na 1 3 3\n").unwrap_err();
        assert!(matches!(err, DimacsError::VertexRange { line: 2, vertex: 3, .. }));
        let err = parse_dimacs_str("p sp 2 1\na 0 1 3\n").unwrap_err();
        assert!(matches!(err, DimacsError::VertexRange { vertex: 0, .. }));
        let err = parse_dimacs_str("p sp 2 1\na 1 2 -3\n").unwrap_err();
        assert!(matches!(err, DimacsError::NegativeWeight { line: 2, weight: -3 }));
        let err = parse_dimacs_str("a 1 2 3\n").unwrap_err();
        assert!(matches!(err, DimacsError::Malformed { line: 1, .. }));
        assert!(matches!(
            parse_dimacs_str("c nothing\n").unwrap_err(),
            DimacsError::MissingProblemLine
        ));
        assert!(parse_dimacs_str("p sp 2 1\np sp 2 1\n").is_err());
        assert!(parse_dimacs_str("p sp 2 1\nx 1 2\n").is_err());
        assert!(parse_dimacs_str("p sp 2 1\na 1 2 3 4\n").is_err());
    }
}
