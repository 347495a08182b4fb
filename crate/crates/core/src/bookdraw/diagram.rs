use super::{interleaved, DrawError};
use std::collections::BTreeMap;
use std::fmt;

pub const DEFAULT_MAX_DIAGRAM_K: usize = 2;

/// Chords between points `0..points` placed around a circle in index order,
/// optionally coloured by page.
///
/// Two chords cross iff their endpoints interleave (and, with colours, they
/// share a page). Chords sharing an endpoint never cross.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CrossingDiagram {
    pub points: usize,
    /// Chords with `a < b`.
    pub segments: Vec<(usize, usize)>,
    pub colors: Option<Vec<u8>>,
}

impl CrossingDiagram {
    pub fn empty(pages: u8) -> Self {
        CrossingDiagram {
            points: 0,
            segments: Vec::new(),
            colors: (pages == 2).then(Vec::new),
        }
    }

    pub fn pages(&self) -> u8 {
        if self.colors.is_some() {
            2
        } else {
            1
        }
    }

    pub fn color(&self, s: usize) -> u8 {
        self.colors.as_ref().map_or(0, |c| c[s])
    }

    /// Whether segments `s` and `t` cross.
    pub fn cross(&self, s: usize, t: usize) -> bool {
        let (a, b) = self.segments[s];
        let (c, d) = self.segments[t];
        self.color(s) == self.color(t) && interleaved(a, b, c, d)
    }

    /// All crossing pairs `(s, t)` with `s < t`.
    pub fn crossing_pairs(&self) -> Vec<(usize, usize)> {
        let r = self.segments.len();
        (0..r)
            .flat_map(|s| (s + 1..r).map(move |t| (s, t)))
            .filter(|&(s, t)| self.cross(s, t))
            .collect()
    }

    pub fn crossing_count(&self) -> usize {
        self.crossing_pairs().len()
    }

    /// Checks the diagram invariants: chords are proper and distinct, every
    /// point is used and every chord is crossed.
    pub fn validate(&self) -> Result<(), DrawError> {
        let bad = |msg: &str| Err(DrawError::Invalid(msg.to_string()));
        if let Some(c) = &self.colors {
            if c.len() != self.segments.len() || c.iter().any(|&x| x > 1) {
                return bad("colour map does not match the segments");
            }
        }
        let mut used = vec![false; self.points];
        for (i, &(a, b)) in self.segments.iter().enumerate() {
            if a >= b || b >= self.points {
                return bad("segment endpoints out of order or range");
            }
            if self.segments[..i].contains(&(a, b)) {
                return bad("repeated segment");
            }
            used[a] = true;
            used[b] = true;
        }
        if used.contains(&false) {
            return bad("point without a segment");
        }
        let r = self.segments.len();
        if (0..r).any(|s| !(0..r).any(|t| t != s && self.cross(s, t))) {
            return bad("uncrossed segment");
        }
        Ok(())
    }

    fn rotated_triples(&self, r: usize) -> Vec<(usize, usize, u8)> {
        let p = self.points;
        let mut out: Vec<_> = self
            .segments
            .iter()
            .enumerate()
            .map(|(i, &(a, b))| {
                let (x, y) = ((a + r) % p, (b + r) % p);
                (x.min(y), x.max(y), self.color(i))
            })
            .collect();
        out.sort_unstable();
        out
    }

    /// Rotation-minimal encoding; equal keys mean the diagrams differ only by
    /// a rotation of the circle.
    pub fn canonical_key(&self) -> Vec<u8> {
        let encode = |t: Vec<(usize, usize, u8)>| {
            let mut key = vec![self.pages(), self.points as u8];
            for (a, b, c) in t {
                key.extend([a as u8, b as u8, c]);
            }
            key
        };
        (0..self.points.max(1))
            .map(|r| encode(self.rotated_triples(r)))
            .min()
            .expect("at least one rotation")
    }

    /// The rotation attaining the canonical key, with segments sorted.
    pub fn canonical(&self) -> CrossingDiagram {
        let best = (0..self.points.max(1))
            .min_by_key(|&r| {
                self.rotated_triples(r)
                    .into_iter()
                    .flat_map(|(a, b, c)| [a as u8, b as u8, c])
                    .collect::<Vec<u8>>()
            })
            .unwrap_or(0);
        let t = if self.points == 0 {
            Vec::new()
        } else {
            self.rotated_triples(best)
        };
        CrossingDiagram {
            points: self.points,
            segments: t.iter().map(|&(a, b, _)| (a, b)).collect(),
            colors: self
                .colors
                .as_ref()
                .map(|_| t.iter().map(|x| x.2).collect()),
        }
    }
}

impl fmt::Display for CrossingDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "points={}", self.points)?;
        for (i, &(a, b)) in self.segments.iter().enumerate() {
            match &self.colors {
                Some(c) => write!(f, " {a}-{b}/{}", c[i])?,
                None => write!(f, " {a}-{b}")?,
            }
        }
        Ok(())
    }
}

fn check_k(k: usize) -> Result<(), DrawError> {
    if k > DEFAULT_MAX_DIAGRAM_K {
        Err(DrawError::KOverLimit {
            k,
            limit: DEFAULT_MAX_DIAGRAM_K,
        })
    } else {
        Ok(())
    }
}

/// Canonical diagrams with exactly `k` crossings, sorted by key.
///
/// Each crossing involves two segments and each segment is crossed, so at
/// most `2k` segments and `4k` points occur.
pub fn enumerate_crossing_diagrams(k: usize, pages: u8) -> Result<Vec<CrossingDiagram>, DrawError> {
    check_k(k)?;
    if !(1..=2).contains(&pages) {
        return Err(DrawError::Invalid(format!("{pages} pages")));
    }
    let mut found: BTreeMap<Vec<u8>, CrossingDiagram> = BTreeMap::new();
    if k == 0 {
        let d = CrossingDiagram::empty(pages);
        found.insert(d.canonical_key(), d);
    }
    for p in 4..=4 * k {
        let chords: Vec<(usize, usize)> = (0..p)
            .flat_map(|a| (a + 1..p).map(move |b| (a, b)))
            .collect();
        let mut pick = Vec::new();
        choose(&chords, 0, 2 * k, &mut pick, &mut |segs| {
            if segs.len() < 2 || 2 * segs.len() < p {
                return;
            }
            let color_count = if pages == 2 { 1u32 << segs.len() } else { 1 };
            for mask in 0..color_count {
                let d = CrossingDiagram {
                    points: p,
                    segments: segs.to_vec(),
                    colors: (pages == 2)
                        .then(|| (0..segs.len()).map(|i| (mask >> i & 1) as u8).collect()),
                };
                if d.crossing_count() == k && d.validate().is_ok() {
                    found
                        .entry(d.canonical_key())
                        .or_insert_with(|| d.canonical());
                }
            }
        });
    }
    Ok(found.into_values().collect())
}

/// Diagrams with at most `k` crossings, grouped by increasing count.
pub fn enumerate_crossing_diagrams_up_to(
    k: usize,
    pages: u8,
) -> Result<Vec<CrossingDiagram>, DrawError> {
    check_k(k)?;
    let mut out = Vec::new();
    for j in 0..=k {
        out.extend(enumerate_crossing_diagrams(j, pages)?);
    }
    Ok(out)
}

fn choose(
    items: &[(usize, usize)],
    start: usize,
    max: usize,
    pick: &mut Vec<(usize, usize)>,
    visit: &mut dyn FnMut(&[(usize, usize)]),
) {
    visit(pick);
    if pick.len() == max {
        return;
    }
    for i in start..items.len() {
        pick.push(items[i]);
        choose(items, i + 1, max, pick, visit);
        pick.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_crossing_diagrams(0, 1).unwrap().len(), 1);
        assert_eq!(enumerate_crossing_diagrams(0, 2).unwrap().len(), 1);
        assert_eq!(enumerate_crossing_diagrams(1, 1).unwrap().len(), 1);
        assert_eq!(enumerate_crossing_diagrams(1, 2).unwrap().len(), 2);
        assert!(matches!(
            enumerate_crossing_diagrams(3, 1),
            Err(DrawError::KOverLimit { k: 3, .. })
        ));
    }

    #[test]
    fn emitted_diagrams_are_valid_and_distinct() {
        for pages in [1, 2] {
            let ds = enumerate_crossing_diagrams(2, pages).unwrap();
            let mut keys: Vec<_> = ds.iter().map(|d| d.canonical_key()).collect();
            keys.sort();
            keys.dedup();
            assert_eq!(keys.len(), ds.len());
            for d in &ds {
                d.validate().unwrap();
                assert_eq!(d.crossing_count(), 2);
                assert_eq!(d.canonical(), *d);
            }
        }
    }

    #[test]
    fn rotation_shares_a_key() {
        let d = CrossingDiagram {
            points: 5,
            segments: vec![(0, 2), (1, 3), (1, 4)],
            colors: None,
        };
        let r = CrossingDiagram {
            points: 5,
            segments: vec![(1, 3), (2, 4), (0, 2)],
            colors: None,
        };
        assert_eq!(d.canonical_key(), r.canonical_key());
    }
}
