//! The plain-text triangulation format.
//!
//! A document is a header line `n <vertex-count>` followed by one interior
//! edge per line, written `<u> <v>` with `u < v` and the lines sorted.
//! Everything from `#` to the end of a line is a comment; blank lines are
//! ignored. [`serialize`] always emits the canonical form (no comments,
//! sorted edges), so `parse` followed by `serialize` reproduces a canonical
//! document byte for byte.

use crate::error::{Error, Result};
use crate::polygon::{Edge, PolygonDim, Vertex};
use crate::triangulation::CsTriangulation;

fn parse_error(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

/// Parses and validates a triangulation document. Errors name the offending
/// line (1-based, counting comment and blank lines).
pub fn parse(input: &str) -> Result<CsTriangulation> {
    let mut dim: Option<PolygonDim> = None;
    let mut edges: Vec<Edge> = Vec::new();
    for (idx, raw) in input.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut tokens = content.split_whitespace();
        match dim {
            None => {
                if tokens.next() != Some("n") {
                    return Err(parse_error(line, "expected header `n <vertex-count>`"));
                }
                let count: u32 = tokens
                    .next()
                    .ok_or_else(|| parse_error(line, "missing vertex count"))?
                    .parse()
                    .map_err(|_| parse_error(line, "vertex count is not a number"))?;
                if tokens.next().is_some() {
                    return Err(parse_error(line, "trailing tokens after vertex count"));
                }
                if count < 4 || count % 2 != 0 {
                    return Err(parse_error(
                        line,
                        format!("vertex count must be even and at least 4, got {count}"),
                    ));
                }
                dim = Some(PolygonDim::new(((count - 2) / 2) as u16)?);
            }
            Some(dim) => {
                let mut vertex = |name| -> Result<Vertex> {
                    let v: u16 = tokens
                        .next()
                        .ok_or_else(|| parse_error(line, format!("missing vertex {name}")))?
                        .parse()
                        .map_err(|_| parse_error(line, format!("vertex {name} is not a number")))?;
                    dim.check_vertex(Vertex(v))
                        .map_err(|_| parse_error(line, format!("vertex {v} is out of range")))
                };
                let u = vertex("u")?;
                let v = vertex("v")?;
                if tokens.next().is_some() {
                    return Err(parse_error(line, "trailing tokens after edge"));
                }
                if u == v {
                    return Err(parse_error(line, format!("degenerate edge {u} {v}")));
                }
                let e = Edge::new(u, v);
                if edges.contains(&e) {
                    return Err(parse_error(line, format!("duplicate edge {e}")));
                }
                edges.push(e);
            }
        }
    }
    let dim = dim.ok_or_else(|| parse_error(input.lines().count() + 1, "empty document"))?;
    let t = CsTriangulation::new(dim, edges);
    t.validate().into_result()?;
    Ok(t)
}

/// Writes the canonical document for a triangulation.
pub fn serialize(t: &CsTriangulation) -> String {
    let mut out = format!("n {}\n", t.dim().n());
    for e in t.interior() {
        out.push_str(&format!("{} {}\n", e.lo(), e.hi()));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::enumerate_cs;
    use crate::triangulation::triangulation;

    #[test]
    fn canonical_document_round_trips() {
        let t = triangulation(PolygonDim::new(2).unwrap(), &[(0, 2), (0, 3), (3, 5)]);
        let doc = serialize(&t);
        assert_eq!(doc, "n 6\n0 2\n0 3\n3 5\n");
        assert_eq!(parse(&doc).unwrap(), t);
        assert_eq!(serialize(&parse(&doc).unwrap()), doc);
    }

    #[test]
    fn every_state_round_trips() {
        for d in 1..=4 {
            let dim = PolygonDim::new(d).unwrap();
            for t in enumerate_cs(dim, 1 << 20).unwrap() {
                assert_eq!(parse(&serialize(&t)).unwrap(), t);
            }
        }
    }

    #[test]
    fn comments_blanks_and_order_are_tolerated() {
        let doc = "# a hexagon\n\nn 6   # vertex count\n3 5\n0 3\n2 0 # unsorted pair\n";
        let t = parse(doc).unwrap();
        assert_eq!(
            t,
            triangulation(PolygonDim::new(2).unwrap(), &[(0, 2), (0, 3), (3, 5)])
        );
    }

    #[test]
    fn errors_name_the_line() {
        let cases = [
            ("0 2\n", 1, "expected header"),
            ("n 6\n0 2\n0 three\n", 3, "not a number"),
            ("n 6\n0 2\n0 9\n", 3, "out of range"),
            ("n 6\n0 0\n", 2, "degenerate"),
            ("n 6\n0 2\n2 0\n", 3, "duplicate"),
            ("n 7\n", 1, "even"),
            ("n 6 6\n", 1, "trailing"),
            ("n 6\n0 2 4\n", 2, "trailing"),
            ("n 6\n0\n", 2, "missing vertex v"),
            ("# nothing\n", 2, "empty document"),
        ];
        for (doc, want_line, want_msg) in cases {
            match parse(doc) {
                Err(Error::Parse { line, msg }) => {
                    assert_eq!(line, want_line, "in {doc:?}");
                    assert!(msg.contains(want_msg), "{msg:?} missing {want_msg:?}");
                }
                other => panic!("expected parse error for {doc:?}, got {other:?}"),
            }
        }
    }

    #[test]
    fn structurally_broken_sets_fail_validation() {
        assert!(matches!(
            parse("n 6\n0 2\n"),
            Err(Error::InvalidTriangulation(_))
        ));
        assert!(matches!(
            parse("n 6\n0 2\n1 3\n3 5\n"),
            Err(Error::InvalidTriangulation(_))
        ));
    }
}
