//! Treewidth against the square root of the 1-page crossing number over a
//! corpus of small graphs. The table is descriptive: no bound is asserted.

use crate::bookdraw::{cr1_exact, DrawError};
use crate::corpus::all_graphs_up_to;
use crate::treewidth::treewidth_exact;
use std::collections::BTreeMap;
use std::fmt;

/// Graphs sharing one 1-page crossing number.
#[derive(Debug, Clone, PartialEq)]
pub struct ReportRow {
    pub cr1: usize,
    pub graphs: usize,
    pub max_treewidth: usize,
    pub mean_treewidth: f64,
    /// `max_treewidth / √cr1`, or `None` when `cr1 = 0`.
    pub ratio: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub max_n: usize,
    pub rows: Vec<ReportRow>,
}

/// Builds the table over every graph with at most `max_n` vertices.
pub fn treewidth_cr1_report(max_n: usize) -> Result<Report, DrawError> {
    let mut by_cr: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for g in all_graphs_up_to(max_n) {
        let (cr, _) = cr1_exact(&g)?;
        let (tw, _) = treewidth_exact(&g).map_err(|e| DrawError::Invalid(e.to_string()))?;
        by_cr.entry(cr).or_default().push(tw);
    }
    let rows = by_cr
        .into_iter()
        .map(|(cr1, tws)| {
            let max_treewidth = *tws.iter().max().expect("non-empty group");
            ReportRow {
                cr1,
                graphs: tws.len(),
                max_treewidth,
                mean_treewidth: tws.iter().sum::<usize>() as f64 / tws.len() as f64,
                ratio: (cr1 > 0).then(|| max_treewidth as f64 / (cr1 as f64).sqrt()),
            }
        })
        .collect();
    Ok(Report { max_n, rows })
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "# treewidth vs sqrt(cr1), all graphs with n <= {}",
            self.max_n
        )?;
        writeln!(f, "cr1\tgraphs\tmax_tw\tmean_tw\tsqrt_cr1\tmax_tw/sqrt_cr1")?;
        for r in &self.rows {
            let ratio = r.ratio.map_or("-".to_string(), |x| format!("{x:.3}"));
            writeln!(
                f,
                "{}\t{}\t{}\t{:.3}\t{:.3}\t{}",
                r.cr1,
                r.graphs,
                r.max_treewidth,
                r.mean_treewidth,
                (r.cr1 as f64).sqrt(),
                ratio
            )?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_report() {
        let r = treewidth_cr1_report(4).unwrap();
        assert_eq!(
            r.rows.iter().map(|x| x.graphs).sum::<usize>(),
            all_graphs_up_to(4).len()
        );
        // K4 is the only graph on ≤ 4 vertices with a crossing.
        assert_eq!(r.rows.last().unwrap().cr1, 1);
        assert_eq!(r.rows.last().unwrap().max_treewidth, 3);
        assert!(r.to_string().lines().count() >= 3);
    }
}
