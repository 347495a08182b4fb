use super::{Graph, GraphError, MAX_VERTICES};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("graph6: malformed header: {0}")]
    MalformedHeader(String),
    #[error("graph6: truncated adjacency data (need {need} bytes, found {found})")]
    Truncated { need: usize, found: usize },
    #[error("graph6: character {ch:?} at byte {pos} outside the printable range 63..=126")]
    BadChar { pos: usize, ch: char },
    #[error("graph6: {0} unexpected trailing bytes")]
    TrailingData(usize),
    #[error("edge list line {line}: bad token {token:?}")]
    BadToken { line: usize, token: String },
    #[error("edge list line {line}: expected two vertex ids")]
    BadLine { line: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn g6_byte(pos: usize, b: u8) -> Result<u8, ParseError> {
    if (63..=126).contains(&b) {
        Ok(b - 63)
    } else {
        Err(ParseError::BadChar { pos, ch: b as char })
    }
}

/// Decodes one graph6 line (an optional `>>graph6<<` prefix is accepted).
pub fn parse_graph6(text: &str) -> Result<Graph, ParseError> {
    let line = text.trim_end_matches(['\n', '\r']);
    let line = line.strip_prefix(">>graph6<<").unwrap_or(line);
    let bytes = line.as_bytes();
    let Some(&first) = bytes.first() else {
        return Err(ParseError::MalformedHeader("empty input".into()));
    };
    let (n, body_start) = if first == 126 {
        if bytes.get(1) == Some(&126) {
            return Err(ParseError::MalformedHeader(
                "8-byte size field exceeds supported graph size".into(),
            ));
        }
        if bytes.len() < 4 {
            return Err(ParseError::MalformedHeader(
                "short 4-byte size field".into(),
            ));
        }
        let mut n = 0usize;
        for (i, &b) in bytes[1..4].iter().enumerate() {
            n = (n << 6) | g6_byte(i + 1, b)? as usize;
        }
        (n, 4)
    } else {
        (g6_byte(0, first)? as usize, 1)
    };
    if n > MAX_VERTICES {
        return Err(ParseError::MalformedHeader(format!(
            "{n} vertices exceeds the supported {MAX_VERTICES}"
        )));
    }
    let bits = n * n.saturating_sub(1) / 2;
    let need = bits.div_ceil(6);
    let body = &bytes[body_start..];
    if body.len() < need {
        return Err(ParseError::Truncated {
            need,
            found: body.len(),
        });
    }
    if body.len() > need {
        return Err(ParseError::TrailingData(body.len() - need));
    }
    let mut data = Vec::with_capacity(need);
    for (i, &b) in body.iter().enumerate() {
        data.push(g6_byte(body_start + i, b)?);
    }
    let bit = |k: usize| (data[k / 6] >> (5 - k % 6)) & 1 == 1;
    let mut g = Graph::new(n)?;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                g.add_edge(i, j)?;
            }
            k += 1;
        }
    }
    Ok(g)
}

/// Encodes `g` in graph6 (no trailing newline).
pub fn emit_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("ascii")
}

fn parse_pair(line_no: usize, line: &str) -> Result<(usize, usize), ParseError> {
    let mut it = line.split_whitespace();
    let mut next = || -> Result<usize, ParseError> {
        let tok = it.next().ok_or(ParseError::BadLine { line: line_no })?;
        tok.parse().map_err(|_| ParseError::BadToken {
            line: line_no,
            token: tok.to_string(),
        })
    };
    let a = next()?;
    let b = next()?;
    if it.next().is_some() {
        return Err(ParseError::BadLine { line: line_no });
    }
    Ok((a, b))
}

/// Parses whitespace-separated `u v` lines. Blank lines and `#` comments are
/// skipped.
///
/// The first line is read as an `n m` header when `n > 0`, exactly `m` edge
/// lines follow and every id is below `n`; otherwise it is an ordinary edge
/// and `n` is one more than the largest id.
pub fn parse_edge_list(text: &str) -> Result<Graph, ParseError> {
    let mut pairs = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        pairs.push((i + 1, parse_pair(i + 1, line)?));
    }
    let header = match pairs.first() {
        Some(&(_, (n, m))) => {
            let rest = &pairs[1..];
            let fits = rest.iter().all(|&(_, (u, v))| u < n && v < n);
            // A lone "0 0" is a self-loop, not an empty header.
            (rest.len() == m && fits && n > 0).then_some(n)
        }
        None => None,
    };
    let (n, body) = match header {
        Some(n) => (n, &pairs[1..]),
        None => {
            let n = pairs
                .iter()
                .map(|&(_, (u, v))| u.max(v) + 1)
                .max()
                .unwrap_or(0);
            (n, &pairs[..])
        }
    };
    let mut g = Graph::new(n)?;
    for &(_, (u, v)) in body {
        g.add_edge(u, v)?;
    }
    Ok(g)
}

/// Edge-list text with an `n m` header line.
pub fn emit_edge_list(g: &Graph) -> String {
    let mut s = format!("{} {}\n", g.n(), g.m());
    for &(u, v) in g.edges() {
        s.push_str(&format!("{u} {v}\n"));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    /// Independent decoder: reads the bit vector as one big string of '0'/'1'.
    fn oracle_decode(s: &str) -> (usize, Vec<(usize, usize)>) {
        let b = s.as_bytes();
        let n = (b[0] - 63) as usize;
        let bits: String = b[1..].iter().map(|c| format!("{:06b}", c - 63)).collect();
        let mut edges = Vec::new();
        let mut k = 0;
        for j in 0..n {
            for i in 0..j {
                if bits.as_bytes()[k] == b'1' {
                    edges.push((i, j));
                }
                k += 1;
            }
        }
        edges.sort();
        (n, edges)
    }

    #[test]
    fn k4_from_graph6() {
        let g = parse_graph6("C~").unwrap();
        assert_eq!((g.n(), g.m()), (4, 6));
        let (n, edges) = oracle_decode("C~");
        let mut mine = g.edges().to_vec();
        mine.sort();
        assert_eq!((n, edges), (4, mine));
        assert_eq!(emit_graph6(&g), "C~");
    }

    #[test]
    fn single_vertex() {
        let g = parse_graph6("@").unwrap();
        assert_eq!((g.n(), g.m()), (1, 0));
    }

    #[test]
    fn graph6_errors() {
        assert!(matches!(
            parse_graph6("D?"),
            Err(ParseError::Truncated { need: 2, found: 1 })
        ));
        assert_eq!(parse_graph6("D??").unwrap().n(), 5);
        assert!(matches!(
            parse_graph6(""),
            Err(ParseError::MalformedHeader(_))
        ));
        assert!(matches!(
            parse_graph6("C!"),
            Err(ParseError::BadChar { pos: 1, .. })
        ));
        assert!(matches!(
            parse_graph6("C~~"),
            Err(ParseError::TrailingData(1))
        ));
        assert!(matches!(
            parse_graph6(" "),
            Err(ParseError::BadChar { pos: 0, .. })
        ));
    }

    #[test]
    fn graph6_known_codes() {
        // Petersen-free sanity: K5 and C5 codes as produced by nauty's geng.
        assert_eq!(emit_graph6(&named::complete(5)), "D~{");
        assert_eq!(emit_graph6(&named::path(3)), "Bg");
        let c5 = parse_graph6("Dhc").unwrap();
        assert_eq!(c5.m(), 5);
        assert!((0..5).all(|v| c5.degree(v) == 2));
    }

    #[test]
    fn edge_list_examples() {
        let g = parse_edge_list("0 1\n1 2").unwrap();
        assert_eq!((g.n(), g.m()), (3, 2));
        assert_eq!(
            parse_edge_list("0 0"),
            Err(ParseError::Graph(GraphError::SelfLoop(0)))
        );
        assert_eq!(
            parse_edge_list("0 1\n0 1"),
            Err(ParseError::Graph(GraphError::DuplicateEdge(0, 1)))
        );
        assert!(matches!(
            parse_edge_list("0 x"),
            Err(ParseError::BadToken { line: 1, .. })
        ));
        let h = parse_edge_list("5 1\n0 4\n").unwrap();
        assert_eq!((h.n(), h.m()), (5, 1));
        let k = named::complete(4);
        assert_eq!(parse_edge_list(&emit_edge_list(&k)).unwrap(), k);
        let iso = Graph::new(3).unwrap();
        assert_eq!(parse_edge_list(&emit_edge_list(&iso)).unwrap().n(), 3);
    }
}
