//! Reference evaluator: direct recursive semantics over compiled formulas.
//!
//! Set quantifiers whose body starts with `∀x (x ∈ X → ψ)` (and optionally
//! `∀x (ψ' → x ∈ X)`) with `X` absent from `ψ`, `ψ'` only range over sets
//! between those bounds; element quantifiers guarded by membership or
//! incidence only range over the guard. Both are plain rewrites of the same
//! semantics. Results of set quantifiers are memoised on the values of
//! their free variables.

use super::intrinsic::{eval_intrinsic, match_intrinsic, size, Intrinsic};
use super::{CheckError, Meter, Value};
use crate::graph::{add_ear, identify_with_maps, Graph};
use crate::mso::{Formula, Quantifier, Sort, Transform};
use std::collections::{BTreeMap, BTreeSet, HashMap};

type Id = usize;

#[derive(Debug, Clone, Copy)]
enum Range {
    All,
    Members(usize),
    Ends(usize),
    Incident(usize),
}

#[derive(Debug)]
enum Node {
    Const(bool),
    Eq(usize, usize),
    In(usize, usize),
    Inc(usize, usize),
    Not(Id),
    And(Vec<Id>),
    Or(Vec<Id>),
    Implies(Id, Id),
    Elem {
        exists: bool,
        sort: Sort,
        slot: usize,
        range: Range,
        body: Id,
    },
    Set {
        exists: bool,
        sort: Sort,
        slot: usize,
        upper: Option<(usize, Id)>,
        lower: Option<(usize, Id)>,
        body: Id,
        key: Vec<usize>,
    },
    Interp {
        transform: Transform,
        args: Vec<usize>,
        binds: Vec<usize>,
        body: Id,
        carried: Vec<usize>,
    },
    Builtin {
        kind: Intrinsic,
        args: Vec<usize>,
    },
}

/// A compiled formula.
pub(super) struct Program {
    nodes: Vec<Node>,
    sorts: Vec<Sort>,
    free: BTreeMap<String, usize>,
    root: Id,
}

struct Compiler {
    nodes: Vec<Node>,
    sorts: Vec<Sort>,
    scope: Vec<(String, usize)>,
    floor: usize,
    free_sorts: BTreeMap<String, Sort>,
    free: BTreeMap<String, usize>,
    intrinsics: bool,
}

type Compiled = Result<(Id, BTreeSet<usize>), CheckError>;

/// Whether `name` occurs free in `f`.
fn mentions(f: &Formula, name: &str) -> bool {
    match f {
        Formula::True | Formula::False => false,
        Formula::Eq(a, b) | Formula::In(a, b) | Formula::Inc(a, b) => a == name || b == name,
        Formula::Not(g) => mentions(g, name),
        Formula::And(gs) | Formula::Or(gs) => gs.iter().any(|g| mentions(g, name)),
        Formula::Implies(a, b) => mentions(a, name) || mentions(b, name),
        Formula::Quant { var, body, .. } => var != name && mentions(body, name),
        Formula::Interpreted {
            transform,
            args,
            binds,
            body,
        } => {
            args.iter().any(|a| a == name)
                || (transform.sees_outer()
                    && !binds.iter().any(|b| b == name)
                    && mentions(body, name))
        }
    }
}

/// Names occurring free in `f`.
pub(super) fn free_names(f: &Formula, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
    let mut note = |n: &String, bound: &Vec<String>| {
        if !bound.contains(n) {
            out.insert(n.clone());
        }
    };
    match f {
        Formula::True | Formula::False => {}
        Formula::Eq(a, b) | Formula::In(a, b) | Formula::Inc(a, b) => {
            note(a, bound);
            note(b, bound);
        }
        Formula::Not(g) => free_names(g, bound, out),
        Formula::And(gs) | Formula::Or(gs) => gs.iter().for_each(|g| free_names(g, bound, out)),
        Formula::Implies(a, b) => {
            free_names(a, bound, out);
            free_names(b, bound, out);
        }
        Formula::Quant { var, body, .. } => {
            bound.push(var.clone());
            free_names(body, bound, out);
            bound.pop();
        }
        Formula::Interpreted {
            transform,
            args,
            binds,
            body,
        } => {
            args.iter().for_each(|a| note(a, bound));
            let mut inner = if transform.sees_outer() {
                bound.clone()
            } else {
                Vec::new()
            };
            inner.extend(binds.iter().cloned());
            let mut seen = BTreeSet::new();
            free_names(body, &mut inner, &mut seen);
            if transform.sees_outer() {
                out.extend(seen);
            } else if let Some(n) = seen.into_iter().next() {
                // A closed body cannot refer outward; let sort checking report it.
                out.insert(n);
            }
        }
    }
}

/// `∀x (x ∈ set → ψ)` with `set` absent from `ψ`: returns `(x, ψ)`.
fn upper_bound<'f>(f: &'f Formula, set: &str, elem: Sort) -> Option<(&'f str, &'f Formula)> {
    let Formula::Quant {
        q: Quantifier::Forall,
        sort,
        var,
        body,
    } = f
    else {
        return None;
    };
    let Formula::Implies(p, psi) = body.as_ref() else {
        return None;
    };
    match p.as_ref() {
        Formula::In(x, s)
            if x == var && s == set && *sort == elem && var != set && !mentions(psi, set) =>
        {
            Some((var, psi))
        }
        _ => None,
    }
}

/// `∀x (ψ → x ∈ set)` with `set` absent from `ψ`.
fn lower_bound<'f>(f: &'f Formula, set: &str, elem: Sort) -> Option<(&'f str, &'f Formula)> {
    let Formula::Quant {
        q: Quantifier::Forall,
        sort,
        var,
        body,
    } = f
    else {
        return None;
    };
    let Formula::Implies(psi, c) = body.as_ref() else {
        return None;
    };
    match c.as_ref() {
        Formula::In(x, s)
            if x == var && s == set && *sort == elem && var != set && !mentions(psi, set) =>
        {
            Some((var, psi))
        }
        _ => None,
    }
}

fn conjuncts(f: &Formula) -> &[Formula] {
    match f {
        Formula::And(parts) => parts,
        other => std::slice::from_ref(other),
    }
}

impl Compiler {
    fn push(&mut self, node: Node) -> Id {
        self.nodes.push(node);
        self.nodes.len() - 1
    }

    fn slot(&mut self, sort: Sort) -> usize {
        self.sorts.push(sort);
        self.sorts.len() - 1
    }

    fn lookup(&mut self, name: &str) -> Result<usize, CheckError> {
        if let Some((_, s)) = self.scope[self.floor..]
            .iter()
            .rev()
            .find(|(n, _)| n == name)
        {
            return Ok(*s);
        }
        if self.floor > 0 {
            return Err(CheckError::Mso(crate::mso::MsoError::Unbound(
                name.to_string(),
            )));
        }
        if let Some(&s) = self.free.get(name) {
            return Ok(s);
        }
        let sort = *self
            .free_sorts
            .get(name)
            .ok_or_else(|| CheckError::Mso(crate::mso::MsoError::Unbound(name.to_string())))?;
        let s = self.slot(sort);
        self.free.insert(name.to_string(), s);
        Ok(s)
    }

    fn and_of(&mut self, parts: &[Formula]) -> Compiled {
        match parts {
            [] => Ok((self.push(Node::Const(true)), BTreeSet::new())),
            [one] => self.compile(one),
            _ => {
                let mut ids = Vec::new();
                let mut free = BTreeSet::new();
                for p in parts {
                    let (id, fr) = self.compile(p)?;
                    ids.push(id);
                    free.extend(fr);
                }
                Ok((self.push(Node::And(ids)), free))
            }
        }
    }

    fn implies_of(&mut self, premise: &[Formula], concl: &Formula) -> Compiled {
        if premise.is_empty() {
            return self.compile(concl);
        }
        let (p, mut fp) = self.and_of(premise)?;
        let (c, fc) = self.compile(concl)?;
        fp.extend(fc);
        Ok((self.push(Node::Implies(p, c)), fp))
    }

    /// Guard of an element quantifier over `var`, if `f` is one.
    fn guard(&mut self, f: &Formula, var: &str, sort: Sort) -> Result<Option<Range>, CheckError> {
        Ok(match (f, sort) {
            (Formula::In(x, s), _) if x == var && s != var => Some(Range::Members(self.lookup(s)?)),
            (Formula::Inc(e, v), Sort::Vertex) if v == var && e != var => {
                Some(Range::Ends(self.lookup(e)?))
            }
            (Formula::Inc(e, v), Sort::Edge) if e == var && v != var => {
                Some(Range::Incident(self.lookup(v)?))
            }
            _ => None,
        })
    }

    fn compile(&mut self, f: &Formula) -> Compiled {
        if self.intrinsics
            && !matches!(
                f,
                Formula::True
                    | Formula::False
                    | Formula::Eq(..)
                    | Formula::In(..)
                    | Formula::Inc(..)
            )
        {
            if let Some((kind, names)) = match_intrinsic(f, size(f)) {
                let args = names
                    .iter()
                    .map(|n| self.lookup(n))
                    .collect::<Result<Vec<_>, _>>()?;
                let free = args.iter().copied().collect();
                return Ok((self.push(Node::Builtin { kind, args }), free));
            }
        }
        match f {
            Formula::True => Ok((self.push(Node::Const(true)), BTreeSet::new())),
            Formula::False => Ok((self.push(Node::Const(false)), BTreeSet::new())),
            Formula::Eq(a, b) | Formula::In(a, b) | Formula::Inc(a, b) => {
                let (x, y) = (self.lookup(a)?, self.lookup(b)?);
                if x == y && matches!(f, Formula::Eq(..)) {
                    // Reflexive equality: true, and it must not pin memo keys.
                    return Ok((self.push(Node::Const(true)), BTreeSet::new()));
                }
                let node = match f {
                    Formula::Eq(..) => Node::Eq(x, y),
                    Formula::In(..) => Node::In(x, y),
                    _ => Node::Inc(x, y),
                };
                Ok((self.push(node), [x, y].into_iter().collect()))
            }
            Formula::Not(g) => {
                let (id, free) = self.compile(g)?;
                Ok((self.push(Node::Not(id)), free))
            }
            Formula::And(gs) | Formula::Or(gs) => {
                let mut ids = Vec::new();
                let mut free = BTreeSet::new();
                for g in gs {
                    let (id, fr) = self.compile(g)?;
                    ids.push(id);
                    free.extend(fr);
                }
                let node = if matches!(f, Formula::And(_)) {
                    Node::And(ids)
                } else {
                    Node::Or(ids)
                };
                Ok((self.push(node), free))
            }
            Formula::Implies(a, b) => self.implies_of(std::slice::from_ref(a), b),
            Formula::Quant { q, sort, var, body } => {
                let exists = *q == Quantifier::Exists;
                let slot = self.slot(*sort);
                self.scope.push((var.clone(), slot));
                let r = if sort.is_set() {
                    self.compile_set(exists, *sort, var, slot, body)
                } else {
                    self.compile_elem(exists, *sort, var, slot, body)
                };
                self.scope.pop();
                r
            }
            Formula::Interpreted {
                transform,
                args,
                binds,
                body,
            } => {
                let arg_slots = args
                    .iter()
                    .map(|a| self.lookup(a))
                    .collect::<Result<Vec<_>, _>>()?;
                let saved = self.floor;
                let mark = self.scope.len();
                if !transform.sees_outer() {
                    self.floor = mark;
                }
                let bind_slots: Vec<usize> = binds
                    .iter()
                    .zip(transform.bind_sorts())
                    .map(|(b, s)| {
                        let slot = self.slot(s);
                        self.scope.push((b.clone(), slot));
                        slot
                    })
                    .collect();
                let r = self.compile(body);
                self.scope.truncate(mark);
                self.floor = saved;
                let (body_id, body_free) = r?;
                let carried: Vec<usize> = if transform.sees_outer() {
                    body_free
                        .iter()
                        .copied()
                        .filter(|s| !bind_slots.contains(s))
                        .collect()
                } else {
                    Vec::new()
                };
                let mut free: BTreeSet<usize> = arg_slots.iter().copied().collect();
                free.extend(carried.iter().copied());
                let node = Node::Interp {
                    transform: transform.clone(),
                    args: arg_slots,
                    binds: bind_slots,
                    body: body_id,
                    carried,
                };
                Ok((self.push(node), free))
            }
        }
    }

    fn compile_elem(
        &mut self,
        exists: bool,
        sort: Sort,
        var: &str,
        slot: usize,
        body: &Formula,
    ) -> Compiled {
        let (range, body) = if exists {
            let parts = conjuncts(body);
            match parts
                .first()
                .map(|p| self.guard(p, var, sort))
                .transpose()?
                .flatten()
            {
                Some(r) => (r, self.and_of(&parts[1..])?),
                None => (Range::All, self.compile(body)?),
            }
        } else {
            match body {
                Formula::Implies(p, c) => {
                    let ps = conjuncts(p);
                    match ps
                        .first()
                        .map(|x| self.guard(x, var, sort))
                        .transpose()?
                        .flatten()
                    {
                        Some(r) => (r, self.implies_of(&ps[1..], c)?),
                        None => (Range::All, self.compile(body)?),
                    }
                }
                _ => (Range::All, self.compile(body)?),
            }
        };
        let (body, mut free) = body;
        if let Range::Members(s) | Range::Ends(s) | Range::Incident(s) = range {
            free.insert(s);
        }
        free.remove(&slot);
        Ok((
            self.push(Node::Elem {
                exists,
                sort,
                slot,
                range,
                body,
            }),
            free,
        ))
    }

    fn compile_set(
        &mut self,
        exists: bool,
        sort: Sort,
        var: &str,
        slot: usize,
        body: &Formula,
    ) -> Compiled {
        let elem = sort.element().expect("set sort");
        let (parts, concl): (&[Formula], Option<&Formula>) = if exists {
            (conjuncts(body), None)
        } else {
            match body {
                Formula::Implies(p, c) => (conjuncts(p), Some(c.as_ref())),
                _ => (&[], Some(body)),
            }
        };
        let mut i = 0;
        let mut free = BTreeSet::new();
        let mut bound = |c: &mut Compiler,
                         found: Option<(&str, &Formula)>|
         -> Result<Option<(usize, Id)>, CheckError> {
            let Some((x, psi)) = found else {
                return Ok(None);
            };
            let xs = c.slot(elem);
            c.scope.push((x.to_string(), xs));
            let r = c.compile(psi);
            c.scope.pop();
            let (id, mut fr) = r?;
            fr.remove(&xs);
            free.extend(fr);
            Ok(Some((xs, id)))
        };
        let upper = bound(self, parts.get(i).and_then(|p| upper_bound(p, var, elem)))?;
        if upper.is_some() {
            i += 1;
        }
        let lower = bound(self, parts.get(i).and_then(|p| lower_bound(p, var, elem)))?;
        if lower.is_some() {
            i += 1;
        }
        let (body, fr) = match concl {
            None => self.and_of(&parts[i..])?,
            Some(c) => self.implies_of(&parts[i..], c)?,
        };
        free.extend(fr);
        free.remove(&slot);
        let key = free.iter().copied().collect();
        Ok((
            self.push(Node::Set {
                exists,
                sort,
                slot,
                upper,
                lower,
                body,
                key,
            }),
            free,
        ))
    }
}

pub(super) fn compile(
    f: &Formula,
    free_sorts: BTreeMap<String, Sort>,
    intrinsics: bool,
) -> Result<Program, CheckError> {
    let mut c = Compiler {
        nodes: Vec::new(),
        sorts: Vec::new(),
        scope: Vec::new(),
        floor: 0,
        free_sorts,
        free: BTreeMap::new(),
        intrinsics,
    };
    let (root, _) = c.compile(f)?;
    Ok(Program {
        nodes: c.nodes,
        sorts: c.sorts,
        free: c.free,
        root,
    })
}

impl Program {
    /// Initial slot values from an assignment of the free variables.
    pub(super) fn load(
        &self,
        g: &Graph,
        a: &BTreeMap<String, Value>,
    ) -> Result<Vec<u128>, CheckError> {
        let mut vals = vec![0u128; self.sorts.len()];
        for (name, &slot) in &self.free {
            let v = a
                .get(name)
                .ok_or_else(|| CheckError::Unassigned(name.clone()))?;
            if v.sort() != self.sorts[slot] {
                return Err(CheckError::WrongSort {
                    var: name.clone(),
                    expected: self.sorts[slot],
                    found: v.sort(),
                });
            }
            if !v.fits(g) {
                return Err(CheckError::OutOfRange(name.clone()));
            }
            vals[slot] = v.raw();
        }
        Ok(vals)
    }
}

fn full(count: usize) -> u128 {
    if count >= 128 {
        u128::MAX
    } else {
        (1u128 << count) - 1
    }
}

fn bits(mut x: u128) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if x == 0 {
            return None;
        }
        let i = x.trailing_zeros() as usize;
        x &= x - 1;
        Some(i)
    })
}

pub(super) struct Eval<'a> {
    prog: &'a Program,
    g: &'a Graph,
    vals: Vec<u128>,
    memo: HashMap<(Id, Vec<u128>), bool>,
    meter: &'a Meter,
}

impl<'a> Eval<'a> {
    pub(super) fn new(prog: &'a Program, g: &'a Graph, vals: Vec<u128>, meter: &'a Meter) -> Self {
        Eval {
            prog,
            g,
            vals,
            memo: HashMap::new(),
            meter,
        }
    }

    pub(super) fn run(&mut self) -> Result<bool, CheckError> {
        self.eval(self.prog.root)
    }

    fn universe(&self, sort: Sort) -> u128 {
        match sort {
            Sort::Vertex | Sort::VertexSet => full(self.g.n()),
            Sort::Edge | Sort::EdgeSet => full(self.g.m()),
        }
    }

    fn eval(&mut self, id: Id) -> Result<bool, CheckError> {
        let prog = self.prog;
        match &prog.nodes[id] {
            Node::Const(b) => Ok(*b),
            Node::Eq(a, b) => Ok(self.vals[*a] == self.vals[*b]),
            Node::In(x, s) => Ok((self.vals[*s] >> self.vals[*x]) & 1 == 1),
            Node::Inc(e, v) => {
                let (a, b) = self.g.edge(self.vals[*e] as usize);
                let v = self.vals[*v] as usize;
                Ok(v == a || v == b)
            }
            Node::Not(x) => Ok(!self.eval(*x)?),
            Node::And(xs) => {
                for &x in xs {
                    if !self.eval(x)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            Node::Or(xs) => {
                for &x in xs {
                    if self.eval(x)? {
                        return Ok(true);
                    }
                }
                Ok(false)
            }
            Node::Implies(a, b) => Ok(!self.eval(*a)? || self.eval(*b)?),
            Node::Elem {
                exists,
                sort,
                slot,
                range,
                body,
            } => {
                self.meter.poll()?;
                let candidates: u128 = match *range {
                    Range::All => self.universe(*sort),
                    Range::Members(s) => self.vals[s] & self.universe(*sort),
                    Range::Ends(e) => {
                        let (a, b) = self.g.edge(self.vals[e] as usize);
                        (1u128 << a) | (1u128 << b)
                    }
                    Range::Incident(v) => self.g.incident(self.vals[v] as usize).0,
                };
                for c in bits(candidates) {
                    self.vals[*slot] = c as u128;
                    if self.eval(*body)? == *exists {
                        return Ok(*exists);
                    }
                }
                Ok(!*exists)
            }
            Node::Set {
                exists,
                sort,
                slot,
                upper,
                lower,
                body,
                key,
            } => {
                let k = (id, key.iter().map(|&s| self.vals[s]).collect::<Vec<_>>());
                if let Some(&r) = self.memo.get(&k) {
                    return Ok(r);
                }
                let elem = sort.element().expect("set sort");
                let uni = self.universe(*sort);
                let collect = |this: &mut Self,
                               bound: &Option<(usize, Id)>,
                               default: u128|
                 -> Result<u128, CheckError> {
                    let Some((x, psi)) = *bound else {
                        return Ok(default);
                    };
                    let mut acc = 0u128;
                    for i in bits(this.universe(elem)) {
                        this.vals[x] = i as u128;
                        if this.eval(psi)? {
                            acc |= 1 << i;
                        }
                    }
                    Ok(acc)
                };
                let hi = collect(self, upper, uni)?;
                let lo = collect(self, lower, 0)?;
                let mut result = !*exists;
                if lo & !hi == 0 {
                    let spare = hi & !lo;
                    let mut sub = 0u128;
                    loop {
                        self.meter.expand()?;
                        self.vals[*slot] = lo | sub;
                        if self.eval(*body)? == *exists {
                            result = *exists;
                            break;
                        }
                        if sub == spare {
                            break;
                        }
                        sub = sub.wrapping_sub(spare) & spare;
                    }
                }
                self.memo.insert(k, result);
                Ok(result)
            }
            Node::Builtin { kind, args } => {
                let vals: Vec<u128> = args.iter().map(|&s| self.vals[s]).collect();
                let k = (id, vals);
                if let Some(&r) = self.memo.get(&k) {
                    return Ok(r);
                }
                self.meter.poll()?;
                let r = eval_intrinsic(*kind, self.g, &k.1);
                self.memo.insert(k, r);
                Ok(r)
            }
            Node::Interp {
                transform,
                args,
                binds,
                body,
                carried,
            } => self.interp(id, transform, args, binds, *body, carried),
        }
    }

    fn interp(
        &mut self,
        id: Id,
        transform: &Transform,
        args: &[usize],
        binds: &[usize],
        body: Id,
        carried: &[usize],
    ) -> Result<bool, CheckError> {
        let argv: Vec<u128> = args.iter().map(|&s| self.vals[s]).collect();
        let key = (id, argv.clone());
        let closed = !transform.sees_outer();
        if closed {
            if let Some(&r) = self.memo.get(&key) {
                return Ok(r);
            }
        }
        let bad = |m: String| CheckError::Transform(m);
        let mut vals = self.vals.clone();
        let g2 = match transform {
            Transform::Identify => {
                let (a, b) = (argv[0] as usize, argv[1] as usize);
                if a == b {
                    self.g.clone()
                } else {
                    let id = identify_with_maps(self.g, a, b).map_err(|e| bad(e.to_string()))?;
                    for &s in carried {
                        let v = self.vals[s];
                        vals[s] = match self.prog.sorts[s] {
                            Sort::Vertex => id.vertex_map[v as usize] as u128,
                            Sort::VertexSet => {
                                bits(v).fold(0, |acc, x| acc | 1u128 << id.vertex_map[x])
                            }
                            Sort::Edge => id.edge_map[v as usize].ok_or_else(|| {
                                bad(format!("edge {v} disappears when merging {a} and {b}"))
                            })? as u128,
                            Sort::EdgeSet => bits(v)
                                .filter_map(|x| id.edge_map[x])
                                .fold(0, |acc, x| acc | 1u128 << x),
                        };
                    }
                    id.graph
                }
            }
            Transform::Ear => {
                let (a, b) = (argv[0] as usize, argv[1] as usize);
                let g2 = if a == b {
                    let mut h = self.g.clone();
                    let mut h2 = Graph::new(h.n() + 1).map_err(|e| bad(e.to_string()))?;
                    for &(u, v) in h.edges() {
                        h2.add_edge(u, v).expect("simple");
                    }
                    h2.add_edge(a, h.n()).expect("fresh vertex");
                    h = h2;
                    h
                } else {
                    add_ear(self.g, a, b).map_err(|e| bad(e.to_string()))?
                };
                vals[binds[0]] = self.g.n() as u128;
                g2
            }
            Transform::Separate => {
                let n = self.g.n();
                let mut s = Graph::new(2 * n).map_err(|e| bad(e.to_string()))?;
                for v in 0..n {
                    s.add_edge(v, n + v).expect("fresh");
                }
                for (page, shift) in [(argv[0], 0), (argv[1], n)] {
                    for e in bits(page) {
                        let (u, v) = self.g.edge(e);
                        s.add_edge(u + shift, v + shift).expect("simple");
                    }
                }
                s
            }
            Transform::Planarize(d) => {
                let p = d.points;
                let points: Vec<usize> = argv[..p].iter().map(|&x| x as usize).collect();
                let map: Vec<usize> = argv[p..].iter().map(|&x| x as usize).collect();
                let pg = crate::pagechar::planarize(self.g, d, &points, &map)
                    .map_err(|e| bad(e.to_string()))?;
                vals[binds[0]] = pg.crossing.0 as u128;
                vals[binds[1]] = pg.page_edges[0].0;
                vals[binds[2]] = pg.page_edges[1].0;
                pg.graph
            }
        };
        let r = Eval::new(self.prog, &g2, vals, self.meter).eval(body)?;
        if closed {
            self.memo.insert(key, r);
        }
        Ok(r)
    }
}
