//! Typed MSO₂ formulas over graphs: syntax tree, S-expression text form,
//! sort checking, relativization and a library of formula builders.

pub mod book;
pub mod build;
mod random;
mod relativize;
mod sorts;
mod text;

pub use random::random_formula;
pub use relativize::{relativize, relativize_edges};
pub use sorts::{check_sorts, free_variables};
pub use text::{parse_formula, parse_formula_with};

use crate::bookdraw::CrossingDiagram;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sort {
    Vertex,
    Edge,
    VertexSet,
    EdgeSet,
}

impl Sort {
    pub fn is_set(self) -> bool {
        matches!(self, Sort::VertexSet | Sort::EdgeSet)
    }

    /// Set sort holding elements of this sort, or the element sort of a set.
    pub fn element(self) -> Option<Sort> {
        match self {
            Sort::VertexSet => Some(Sort::Vertex),
            Sort::EdgeSet => Some(Sort::Edge),
            _ => None,
        }
    }

    fn tag(self) -> &'static str {
        match self {
            Sort::Vertex => "v",
            Sort::Edge => "e",
            Sort::VertexSet => "V",
            Sort::EdgeSet => "E",
        }
    }
}

impl fmt::Display for Sort {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sort::Vertex => "vertex",
            Sort::Edge => "edge",
            Sort::VertexSet => "vertex-set",
            Sort::EdgeSet => "edge-set",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Quantifier {
    Forall,
    Exists,
}

/// Graph rewrites an `Interpreted` node applies before evaluating its body.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Transform {
    /// Merge two vertices. Args: two vertices. The body sees every outer
    /// variable, carried across the merge.
    Identify,
    /// Add a fresh vertex adjacent to two given ones. Args: two vertices;
    /// binds the new vertex. Outer variables stay visible.
    Ear,
    /// Split every vertex into one copy per page. Args: two edge sets (the
    /// pages). The body is closed.
    Separate,
    /// Replace crossing edges by paths through new degree-4 vertices, as
    /// prescribed by the diagram. Args: one vertex per diagram point, then
    /// one edge per segment. Binds the new vertices and the new edges of
    /// page 0 and page 1.
    Planarize(CrossingDiagram),
}

impl Transform {
    /// Sorts of the argument list.
    pub fn arg_sorts(&self) -> Vec<Sort> {
        match self {
            Transform::Identify | Transform::Ear => vec![Sort::Vertex; 2],
            Transform::Separate => vec![Sort::EdgeSet; 2],
            Transform::Planarize(d) => {
                let mut s = vec![Sort::Vertex; d.points];
                s.extend(vec![Sort::Edge; d.segments.len()]);
                s
            }
        }
    }

    /// Sorts of the variables the body receives.
    pub fn bind_sorts(&self) -> Vec<Sort> {
        match self {
            Transform::Identify | Transform::Separate => vec![],
            Transform::Ear => vec![Sort::Vertex],
            Transform::Planarize(_) => vec![Sort::VertexSet, Sort::EdgeSet, Sort::EdgeSet],
        }
    }

    /// Whether the body may refer to variables bound outside the node.
    pub fn sees_outer(&self) -> bool {
        matches!(self, Transform::Identify | Transform::Ear)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    True,
    False,
    Eq(String, String),
    /// Element, set.
    In(String, String),
    /// Edge, vertex.
    Inc(String, String),
    Not(Box<Formula>),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Quant {
        q: Quantifier,
        sort: Sort,
        var: String,
        body: Box<Formula>,
    },
    Interpreted {
        transform: Transform,
        args: Vec<String>,
        binds: Vec<String>,
        body: Box<Formula>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MsoError {
    #[error("syntax error at token {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown operator {0:?}")]
    UnknownOperator(String),
    #[error("unbound variable {0:?}")]
    Unbound(String),
    #[error("sort mismatch for {var:?}: expected {expected}, found {found}")]
    SortMismatch {
        var: String,
        expected: Sort,
        found: Sort,
    },
    #[error("cannot infer the sort of {0:?}")]
    Ambiguous(String),
    #[error("{0}")]
    Arity(String),
    #[error("variable {0:?} would be captured")]
    Capture(String),
    #[error("unknown builder {0:?}")]
    UnknownBuilder(String),
    #[error("k = {k} exceeds the limit {limit}")]
    KOverLimit { k: usize, limit: usize },
}

impl Formula {
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn eq(a: &str, b: &str) -> Formula {
        Formula::Eq(a.into(), b.into())
    }

    pub fn mem(x: &str, set: &str) -> Formula {
        Formula::In(x.into(), set.into())
    }

    pub fn inc(e: &str, v: &str) -> Formula {
        Formula::Inc(e.into(), v.into())
    }

    pub fn quant(q: Quantifier, sort: Sort, var: &str, body: Formula) -> Formula {
        Formula::Quant {
            q,
            sort,
            var: var.into(),
            body: Box::new(body),
        }
    }

    pub fn exists(sort: Sort, var: &str, body: Formula) -> Formula {
        Formula::quant(Quantifier::Exists, sort, var, body)
    }

    pub fn forall(sort: Sort, var: &str, body: Formula) -> Formula {
        Formula::quant(Quantifier::Forall, sort, var, body)
    }

    /// Conjunction, flattening nested conjunctions and dropping `True`.
    pub fn and(parts: impl IntoIterator<Item = Formula>) -> Formula {
        let mut out = Vec::new();
        for p in parts {
            match p {
                Formula::True => {}
                Formula::And(xs) => out.extend(xs),
                other => out.push(other),
            }
        }
        match out.len() {
            0 => Formula::True,
            1 => out.pop().expect("one element"),
            _ => Formula::And(out),
        }
    }

    /// Disjunction, flattening nested disjunctions and dropping `False`.
    pub fn or(parts: impl IntoIterator<Item = Formula>) -> Formula {
        let mut out = Vec::new();
        for p in parts {
            match p {
                Formula::False => {}
                Formula::Or(xs) => out.extend(xs),
                other => out.push(other),
            }
        }
        match out.len() {
            0 => Formula::False,
            1 => out.pop().expect("one element"),
            _ => Formula::Or(out),
        }
    }

    /// Maximum nesting depth of quantifiers; transforms do not add depth.
    pub fn quantifier_rank(&self) -> usize {
        match self {
            Formula::True | Formula::False => 0,
            Formula::Eq(..) | Formula::In(..) | Formula::Inc(..) => 0,
            Formula::Not(f) => f.quantifier_rank(),
            Formula::And(fs) | Formula::Or(fs) => {
                fs.iter().map(Formula::quantifier_rank).max().unwrap_or(0)
            }
            Formula::Implies(a, b) => a.quantifier_rank().max(b.quantifier_rank()),
            Formula::Quant { body, .. } => 1 + body.quantifier_rank(),
            Formula::Interpreted { body, .. } => body.quantifier_rank(),
        }
    }

    /// Number of syntax-tree nodes.
    pub fn size(&self) -> usize {
        1 + match self {
            Formula::Not(f) => f.size(),
            Formula::And(fs) | Formula::Or(fs) => fs.iter().map(Formula::size).sum(),
            Formula::Implies(a, b) => a.size() + b.size(),
            Formula::Quant { body, .. } | Formula::Interpreted { body, .. } => body.size(),
            _ => 0,
        }
    }

    pub fn has_interpreted(&self) -> bool {
        match self {
            Formula::Interpreted { .. } => true,
            Formula::Not(f) => f.has_interpreted(),
            Formula::And(fs) | Formula::Or(fs) => fs.iter().any(Formula::has_interpreted),
            Formula::Implies(a, b) => a.has_interpreted() || b.has_interpreted(),
            Formula::Quant { body, .. } => body.has_interpreted(),
            _ => false,
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        text::write_formula(self, f)
    }
}
