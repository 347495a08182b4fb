use super::DrawError;
use crate::graph::Graph;
use std::fmt;

/// A 1- or 2-page book drawing: a spine order plus a page per edge.
///
/// The spine is read cyclically, so rotations and reflections of `spine`
/// describe the same drawing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BookDrawing {
    pub spine: Vec<usize>,
    /// Page of each edge, indexed by edge id.
    pub pages: Vec<u8>,
    pub page_count: u8,
}

impl BookDrawing {
    pub fn one_page(g: &Graph, spine: Vec<usize>) -> Self {
        BookDrawing {
            spine,
            pages: vec![0; g.m()],
            page_count: 1,
        }
    }

    pub fn two_page(spine: Vec<usize>, pages: Vec<u8>) -> Self {
        BookDrawing {
            spine,
            pages,
            page_count: 2,
        }
    }

    pub fn validate(&self, g: &Graph) -> Result<(), DrawError> {
        if !(1..=2).contains(&self.page_count) {
            return Err(DrawError::Invalid(format!(
                "page count {}",
                self.page_count
            )));
        }
        if self.spine.len() != g.n() {
            return Err(DrawError::Invalid(format!(
                "spine has {} vertices, graph has {}",
                self.spine.len(),
                g.n()
            )));
        }
        let mut seen = vec![false; g.n()];
        for &v in &self.spine {
            if v >= g.n() || std::mem::replace(&mut seen[v], true) {
                return Err(DrawError::Invalid("spine is not a permutation".into()));
            }
        }
        if self.pages.len() != g.m() {
            return Err(DrawError::Invalid(
                "page map does not cover every edge".into(),
            ));
        }
        if let Some(p) = self.pages.iter().find(|&&p| p >= self.page_count) {
            return Err(DrawError::Invalid(format!("edge on page {p}")));
        }
        Ok(())
    }

    /// Spine position of every vertex.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.spine.len()];
        for (i, &v) in self.spine.iter().enumerate() {
            pos[v] = i;
        }
        pos
    }

    /// Parses the `order: ... / page0: u-v ... / page1: u-v ...` text form.
    pub fn parse(g: &Graph, text: &str) -> Result<Self, DrawError> {
        let mut spine = None;
        let mut pages = vec![u8::MAX; g.m()];
        let mut page_count = 1;
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
            let (key, rest) = line
                .split_once(':')
                .ok_or_else(|| DrawError::Parse(format!("missing ':' in {line:?}")))?;
            match key.trim() {
                "order" => {
                    let ids: Result<Vec<usize>, _> =
                        rest.split_whitespace().map(str::parse).collect();
                    spine = Some(ids.map_err(|e| DrawError::Parse(e.to_string()))?);
                }
                k @ ("page0" | "page1") => {
                    let page = if k == "page0" { 0 } else { 1 };
                    if page == 1 {
                        page_count = 2;
                    }
                    for tok in rest.split_whitespace() {
                        let (a, b) = tok
                            .split_once('-')
                            .ok_or_else(|| DrawError::Parse(format!("bad edge {tok:?}")))?;
                        let u: usize = a.parse().map_err(|_| DrawError::Parse(tok.into()))?;
                        let v: usize = b.parse().map_err(|_| DrawError::Parse(tok.into()))?;
                        let e = g
                            .edge_id(u, v)
                            .ok_or_else(|| DrawError::Parse(format!("no edge {tok}")))?;
                        pages[e] = page;
                    }
                }
                other => return Err(DrawError::Parse(format!("unknown key {other:?}"))),
            }
        }
        if pages.contains(&u8::MAX) {
            return Err(DrawError::Parse("some edge has no page".into()));
        }
        let d = BookDrawing {
            spine: spine.ok_or_else(|| DrawError::Parse("missing order line".into()))?,
            pages,
            page_count,
        };
        d.validate(g)?;
        Ok(d)
    }

    pub fn display<'a>(&'a self, g: &'a Graph) -> impl fmt::Display + 'a {
        DrawingText { d: self, g }
    }
}

struct DrawingText<'a> {
    d: &'a BookDrawing,
    g: &'a Graph,
}

impl fmt::Display for DrawingText<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let order: Vec<String> = self.d.spine.iter().map(|v| v.to_string()).collect();
        writeln!(f, "order: {}", order.join(" "))?;
        for page in 0..self.d.page_count {
            let es: Vec<String> = self
                .g
                .edges()
                .iter()
                .zip(&self.d.pages)
                .filter(|(_, &p)| p == page)
                .map(|(&(u, v), _)| format!("{u}-{v}"))
                .collect();
            writeln!(f, "page{page}: {}", es.join(" "))?;
        }
        Ok(())
    }
}

/// Whether chords `(a, b)` and `(c, d)` interleave, given spine positions.
/// Chords sharing an endpoint never interleave.
#[inline]
pub fn interleaved(a: usize, b: usize, c: usize, d: usize) -> bool {
    let (a, b) = if a < b { (a, b) } else { (b, a) };
    let inside = |x: usize| a < x && x < b;
    if a == c || a == d || b == c || b == d {
        return false;
    }
    inside(c) != inside(d)
}

/// Number of same-page pairs of edges whose endpoints interleave on the spine.
pub fn crossings(g: &Graph, d: &BookDrawing) -> Result<usize, DrawError> {
    d.validate(g)?;
    let pos = d.positions();
    let edges = g.edges();
    let mut count = 0;
    for i in 0..edges.len() {
        let (a, b) = edges[i];
        for j in i + 1..edges.len() {
            if d.pages[i] != d.pages[j] {
                continue;
            }
            let (c, e) = edges[j];
            if interleaved(pos[a], pos[b], pos[c], pos[e]) {
                count += 1;
            }
        }
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    #[test]
    fn crossing_examples() {
        let k4 = named::complete(4);
        let d = BookDrawing::one_page(&k4, vec![0, 1, 2, 3]);
        assert_eq!(crossings(&k4, &d).unwrap(), 1);

        let c4 = named::cycle(4);
        assert_eq!(
            crossings(&c4, &BookDrawing::one_page(&c4, vec![0, 1, 2, 3])).unwrap(),
            0
        );

        let mut pages = vec![0; 6];
        pages[k4.edge_id(1, 3).unwrap()] = 1;
        let d2 = BookDrawing::two_page(vec![0, 1, 2, 3], pages);
        assert_eq!(crossings(&k4, &d2).unwrap(), 0);
    }

    #[test]
    fn invalid_drawings() {
        let k4 = named::complete(4);
        assert!(crossings(&k4, &BookDrawing::one_page(&k4, vec![0, 1, 1, 3])).is_err());
        assert!(crossings(&k4, &BookDrawing::one_page(&k4, vec![0, 1, 2])).is_err());
        let bad = BookDrawing {
            spine: vec![0, 1, 2, 3],
            pages: vec![1; 6],
            page_count: 1,
        };
        assert!(crossings(&k4, &bad).is_err());
    }

    #[test]
    fn text_round_trip() {
        let k4 = named::complete(4);
        let mut pages = vec![0; 6];
        pages[k4.edge_id(1, 3).unwrap()] = 1;
        let d = BookDrawing::two_page(vec![2, 0, 1, 3], pages);
        let text = d.display(&k4).to_string();
        assert_eq!(BookDrawing::parse(&k4, &text).unwrap(), d);
    }
}
