//! Model checking of MSO₂ formulas on graphs.
//!
//! Two engines: [`eval_naive`] follows the semantics directly (with bounded
//! set quantifiers and memoisation), [`eval_courcelle`] runs a dynamic
//! program over a nice tree decomposition. [`model_check`] picks one.

mod courcelle;
mod intrinsic;
mod naive;

pub use intrinsic::{eval_intrinsic, Intrinsic, SmallMinor};

use crate::graph::{EdgeSet, Graph, VertexSet};
use crate::mso::{check_sorts, Formula, MsoError, Sort};
use crate::treewidth::{make_nice, treewidth_upperbound, NiceTreeDecomposition};
use std::cell::Cell;
use std::collections::BTreeMap;
use std::time::{Duration, Instant};
use thiserror::Error;

pub const DEFAULT_RANK_LIMIT: usize = 3;
pub const DEFAULT_WIDTH_LIMIT: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Engine {
    Naive,
    Courcelle,
    #[default]
    Auto,
}

/// Resource limits and engine choice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvalBudget {
    /// Set-quantifier expansions (naive) or state transitions (courcelle).
    pub max_expansions: u64,
    pub max_time: Option<Duration>,
    pub engine: Engine,
    /// Evaluate recognised library subformulas by direct algorithms.
    pub intrinsics: bool,
    pub rank_limit: usize,
    pub width_limit: usize,
}

impl Default for EvalBudget {
    fn default() -> Self {
        EvalBudget {
            max_expansions: 500_000_000,
            max_time: Some(Duration::from_secs(60)),
            engine: Engine::Auto,
            intrinsics: true,
            rank_limit: DEFAULT_RANK_LIMIT,
            width_limit: DEFAULT_WIDTH_LIMIT,
        }
    }
}

impl EvalBudget {
    pub fn with_engine(mut self, engine: Engine) -> Self {
        self.engine = engine;
        self
    }

    pub fn without_intrinsics(mut self) -> Self {
        self.intrinsics = false;
        self
    }
}

/// Value of a free variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Value {
    Vertex(usize),
    Edge(usize),
    VertexSet(VertexSet),
    EdgeSet(EdgeSet),
}

impl Value {
    pub fn sort(&self) -> Sort {
        match self {
            Value::Vertex(_) => Sort::Vertex,
            Value::Edge(_) => Sort::Edge,
            Value::VertexSet(_) => Sort::VertexSet,
            Value::EdgeSet(_) => Sort::EdgeSet,
        }
    }

    fn raw(&self) -> u128 {
        match *self {
            Value::Vertex(v) | Value::Edge(v) => v as u128,
            Value::VertexSet(s) => s.0 as u128,
            Value::EdgeSet(s) => s.0,
        }
    }

    fn fits(&self, g: &Graph) -> bool {
        match *self {
            Value::Vertex(v) => v < g.n(),
            Value::Edge(e) => e < g.m(),
            Value::VertexSet(s) => s.is_subset(g.vertices()),
            Value::EdgeSet(s) => s.is_subset(g.all_edges()),
        }
    }
}

pub type Assignment = BTreeMap<String, Value>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CheckError {
    #[error("evaluation budget exhausted")]
    Budget,
    #[error(transparent)]
    Mso(#[from] MsoError),
    #[error("free variable {0:?} has no value")]
    Unassigned(String),
    #[error("{var:?} is a {expected} variable but was given a {found}")]
    WrongSort {
        var: String,
        expected: Sort,
        found: Sort,
    },
    #[error("value of {0:?} is outside the graph")]
    OutOfRange(String),
    #[error("formula has free variables: {0:?}")]
    NotClosed(Vec<String>),
    #[error("quantifier rank {rank} exceeds the limit {limit}")]
    RankOverLimit { rank: usize, limit: usize },
    #[error("decomposition width {width} exceeds the limit {limit}")]
    WidthOverLimit { width: usize, limit: usize },
    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(String),
    #[error("transform failed: {0}")]
    Transform(String),
    #[error("the selected engine does not support this formula")]
    Unsupported,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    True,
    False,
    Unsupported,
}

impl From<bool> for Verdict {
    fn from(b: bool) -> Self {
        if b {
            Verdict::True
        } else {
            Verdict::False
        }
    }
}

/// Shared work counter.
pub(crate) struct Meter {
    expansions: Cell<u64>,
    limit: u64,
    ticks: Cell<u32>,
    deadline: Option<Instant>,
}

impl Meter {
    pub(crate) fn new(budget: &EvalBudget) -> Self {
        Meter {
            expansions: Cell::new(0),
            limit: budget.max_expansions,
            ticks: Cell::new(0),
            deadline: budget.max_time.map(|t| Instant::now() + t),
        }
    }

    /// Cheap periodic clock check.
    pub(crate) fn poll(&self) -> Result<(), CheckError> {
        let t = self.ticks.get().wrapping_add(1);
        self.ticks.set(t);
        if t % 4096 == 0 {
            if let Some(d) = self.deadline {
                if Instant::now() > d {
                    return Err(CheckError::Budget);
                }
            }
        }
        Ok(())
    }

    pub(crate) fn expand(&self) -> Result<(), CheckError> {
        let e = self.expansions.get() + 1;
        self.expansions.set(e);
        if e > self.limit {
            return Err(CheckError::Budget);
        }
        self.poll()
    }
}

fn ensure_closed(f: &Formula) -> Result<(), CheckError> {
    let mut free = std::collections::BTreeSet::new();
    naive::free_names(f, &mut Vec::new(), &mut free);
    if !free.is_empty() {
        return Err(CheckError::NotClosed(free.into_iter().collect()));
    }
    check_sorts(f, &BTreeMap::new(), false)?;
    Ok(())
}

/// Evaluates `f` on `g` under `assignment` by direct recursion.
pub fn eval_naive(
    g: &Graph,
    f: &Formula,
    assignment: &Assignment,
    budget: &EvalBudget,
) -> Result<bool, CheckError> {
    let declared: BTreeMap<String, Sort> = assignment
        .iter()
        .map(|(k, v)| (k.clone(), v.sort()))
        .collect();
    let free = check_sorts(f, &declared, false)?;
    let prog = naive::compile(f, free, budget.intrinsics)?;
    let vals = prog.load(g, assignment)?;
    let meter = Meter::new(budget);
    naive::Eval::new(&prog, g, vals, &meter).run()
}

/// Evaluates the closed formula `f` by dynamic programming over `td`.
pub fn eval_courcelle(
    g: &Graph,
    f: &Formula,
    td: &NiceTreeDecomposition,
    budget: &EvalBudget,
) -> Result<Verdict, CheckError> {
    ensure_closed(f)?;
    if f.has_interpreted() {
        return Ok(Verdict::Unsupported);
    }
    let rank = f.quantifier_rank();
    if rank > budget.rank_limit {
        return Err(CheckError::RankOverLimit {
            rank,
            limit: budget.rank_limit,
        });
    }
    td.check(g)
        .map_err(|e| CheckError::InvalidDecomposition(e.to_string()))?;
    if td.width() > budget.width_limit {
        return Err(CheckError::WidthOverLimit {
            width: td.width(),
            limit: budget.width_limit,
        });
    }
    let meter = Meter::new(budget);
    courcelle::run(g, f, td, &meter).map(Verdict::from)
}

/// Decides the closed formula `f` on `g`, using the decomposition engine
/// when it applies and falling back to direct evaluation otherwise.
pub fn model_check(g: &Graph, f: &Formula, budget: &EvalBudget) -> Result<bool, CheckError> {
    model_check_reporting(g, f, budget).map(|(r, _)| r)
}

/// Like [`model_check`], also naming the engine that produced the answer.
pub fn model_check_reporting(
    g: &Graph,
    f: &Formula,
    budget: &EvalBudget,
) -> Result<(bool, Engine), CheckError> {
    ensure_closed(f)?;
    let courcelle = || -> Result<Verdict, CheckError> {
        let (_, td) = treewidth_upperbound(g);
        let nice = make_nice(&td).map_err(|e| CheckError::InvalidDecomposition(e.to_string()))?;
        eval_courcelle(g, f, &nice, budget)
    };
    let naive = || eval_naive(g, f, &Assignment::new(), budget).map(|r| (r, Engine::Naive));
    match budget.engine {
        Engine::Naive => naive(),
        Engine::Courcelle => match courcelle()? {
            Verdict::True => Ok((true, Engine::Courcelle)),
            Verdict::False => Ok((false, Engine::Courcelle)),
            Verdict::Unsupported => Err(CheckError::Unsupported),
        },
        Engine::Auto => {
            let applicable = !f.has_interpreted() && f.quantifier_rank() <= budget.rank_limit;
            if applicable {
                match courcelle() {
                    Ok(Verdict::True) => return Ok((true, Engine::Courcelle)),
                    Ok(Verdict::False) => return Ok((false, Engine::Courcelle)),
                    Ok(Verdict::Unsupported)
                    | Err(CheckError::Budget)
                    | Err(CheckError::WidthOverLimit { .. })
                    | Err(CheckError::RankOverLimit { .. }) => {}
                    Err(e) => return Err(e),
                }
            }
            naive()
        }
    }
}
