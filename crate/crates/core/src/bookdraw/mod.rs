//! Book drawings on a cyclic spine: crossing counts, exact solvers and
//! crossing diagrams.

mod diagram;
mod drawing;
mod solve;
mod svg;

pub use diagram::{
    enumerate_crossing_diagrams, enumerate_crossing_diagrams_up_to, CrossingDiagram,
    DEFAULT_MAX_DIAGRAM_K,
};
pub use drawing::{crossings, interleaved, BookDrawing};
pub use solve::{
    best_page_assignment, conflict_graph, cr1_exact, cr1_exact_with_limit, cr2_exact,
    cr2_exact_with_limit, is_2page_planar, is_2page_planar_with_limit, DEFAULT_CR1_MAX_N,
    DEFAULT_CR2_MAX_N,
};
pub use svg::render_svg;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DrawError {
    #[error("invalid drawing: {0}")]
    Invalid(String),
    #[error("cannot parse drawing: {0}")]
    Parse(String),
    #[error("graph has {n} vertices, solver limit is {limit}")]
    SizeLimit { n: usize, limit: usize },
    #[error("k = {k} exceeds the limit {limit}")]
    KOverLimit { k: usize, limit: usize },
}
