use super::{Formula, MsoError, Sort};
use std::collections::BTreeMap;

struct Checker<'a> {
    declared: &'a BTreeMap<String, Sort>,
    /// In strict mode only `!`-prefixed or declared names may be free.
    strict: bool,
    inferred: BTreeMap<String, Sort>,
    /// Pairs of free names that must share a sort.
    pending_eq: Vec<(String, String)>,
    scope: Vec<(String, Sort)>,
    /// Scope entries below this index are hidden (closed transform bodies).
    floor: usize,
    hidden: bool,
}

enum Lookup {
    Bound(Sort),
    Free(Option<Sort>),
}

impl Checker<'_> {
    fn lookup(&self, name: &str) -> Result<Lookup, MsoError> {
        if let Some((_, s)) = self.scope[self.floor..]
            .iter()
            .rev()
            .find(|(n, _)| n == name)
        {
            return Ok(Lookup::Bound(*s));
        }
        let visible_free = !self.hidden
            && (self.declared.contains_key(name) || !self.strict || name.starts_with('!'));
        if !visible_free {
            return Err(MsoError::Unbound(name.to_string()));
        }
        Ok(Lookup::Free(
            self.declared
                .get(name)
                .or_else(|| self.inferred.get(name))
                .copied(),
        ))
    }

    fn sort_of(&self, name: &str) -> Result<Option<Sort>, MsoError> {
        Ok(match self.lookup(name)? {
            Lookup::Bound(s) => Some(s),
            Lookup::Free(s) => s,
        })
    }

    fn require(&mut self, name: &str, want: Sort) -> Result<(), MsoError> {
        match self.sort_of(name)? {
            Some(found) if found != want => Err(MsoError::SortMismatch {
                var: name.to_string(),
                expected: want,
                found,
            }),
            Some(_) => Ok(()),
            None => {
                self.inferred.insert(name.to_string(), want);
                Ok(())
            }
        }
    }

    fn walk(&mut self, f: &Formula) -> Result<(), MsoError> {
        match f {
            Formula::True | Formula::False => Ok(()),
            Formula::Eq(a, b) => match (self.sort_of(a)?, self.sort_of(b)?) {
                (Some(s), _) => self.require(b, s),
                (None, Some(s)) => self.require(a, s),
                (None, None) => {
                    self.pending_eq.push((a.clone(), b.clone()));
                    Ok(())
                }
            },
            Formula::In(x, set) => match (self.sort_of(x)?, self.sort_of(set)?) {
                (_, Some(s)) => {
                    let elem = s.element().ok_or_else(|| MsoError::SortMismatch {
                        var: set.clone(),
                        expected: Sort::VertexSet,
                        found: s,
                    })?;
                    self.require(x, elem)
                }
                (Some(Sort::Vertex), None) => self.require(set, Sort::VertexSet),
                (Some(Sort::Edge), None) => self.require(set, Sort::EdgeSet),
                (Some(s), None) => Err(MsoError::SortMismatch {
                    var: x.clone(),
                    expected: Sort::Vertex,
                    found: s,
                }),
                (None, None) => Err(MsoError::Ambiguous(x.clone())),
            },
            Formula::Inc(e, v) => {
                self.require(e, Sort::Edge)?;
                self.require(v, Sort::Vertex)
            }
            Formula::Not(g) => self.walk(g),
            Formula::And(gs) | Formula::Or(gs) => gs.iter().try_for_each(|g| self.walk(g)),
            Formula::Implies(a, b) => {
                self.walk(a)?;
                self.walk(b)
            }
            Formula::Quant {
                sort, var, body, ..
            } => {
                self.scope.push((var.clone(), *sort));
                let r = self.walk(body);
                self.scope.pop();
                r
            }
            Formula::Interpreted {
                transform,
                args,
                binds,
                body,
            } => {
                let want = transform.arg_sorts();
                if want.len() != args.len() {
                    return Err(MsoError::Arity(format!(
                        "transform takes {} arguments, got {}",
                        want.len(),
                        args.len()
                    )));
                }
                for (a, s) in args.iter().zip(want) {
                    self.require(a, s)?;
                }
                let bind_sorts = transform.bind_sorts();
                if bind_sorts.len() != binds.len() {
                    return Err(MsoError::Arity(format!(
                        "transform binds {} variables, got {}",
                        bind_sorts.len(),
                        binds.len()
                    )));
                }
                let saved = (self.floor, self.hidden);
                let mark = self.scope.len();
                if !transform.sees_outer() {
                    self.floor = mark;
                    self.hidden = true;
                }
                self.scope.extend(binds.iter().cloned().zip(bind_sorts));
                let r = self.walk(body);
                self.scope.truncate(mark);
                (self.floor, self.hidden) = saved;
                r
            }
        }
    }
}

/// Sort-checks `f`, returning the sorts of its free variables. `declared`
/// fixes sorts up front; with `strict`, every other free name must begin
/// with `!`.
pub fn check_sorts(
    f: &Formula,
    declared: &BTreeMap<String, Sort>,
    strict: bool,
) -> Result<BTreeMap<String, Sort>, MsoError> {
    let mut c = Checker {
        declared,
        strict,
        inferred: BTreeMap::new(),
        pending_eq: Vec::new(),
        scope: Vec::new(),
        floor: 0,
        hidden: false,
    };
    c.walk(f)?;
    // Free equalities resolve once either side is known.
    loop {
        let before = c.pending_eq.len();
        let pending = std::mem::take(&mut c.pending_eq);
        for (a, b) in pending {
            let known = |n: &str| c.declared.get(n).or_else(|| c.inferred.get(n)).copied();
            match (known(&a), known(&b)) {
                (Some(s), _) => c.require(&b, s)?,
                (None, Some(s)) => c.require(&a, s)?,
                (None, None) => c.pending_eq.push((a, b)),
            }
        }
        if c.pending_eq.is_empty() {
            break;
        }
        if c.pending_eq.len() == before {
            return Err(MsoError::Ambiguous(c.pending_eq[0].0.clone()));
        }
    }
    let mut used = BTreeMap::new();
    collect_free(f, &mut Vec::new(), &mut used, &c);
    Ok(used)
}

fn collect_free(
    f: &Formula,
    bound: &mut Vec<String>,
    out: &mut BTreeMap<String, Sort>,
    c: &Checker,
) {
    let mut note = |n: &String, bound: &Vec<String>| {
        if !bound.contains(n) {
            if let Some(s) = c.declared.get(n).or_else(|| c.inferred.get(n)) {
                out.insert(n.clone(), *s);
            }
        }
    };
    match f {
        Formula::True | Formula::False => {}
        Formula::Eq(a, b) | Formula::In(a, b) | Formula::Inc(a, b) => {
            note(a, bound);
            note(b, bound);
        }
        Formula::Not(g) => collect_free(g, bound, out, c),
        Formula::And(gs) | Formula::Or(gs) => {
            gs.iter().for_each(|g| collect_free(g, bound, out, c))
        }
        Formula::Implies(a, b) => {
            collect_free(a, bound, out, c);
            collect_free(b, bound, out, c);
        }
        Formula::Quant { var, body, .. } => {
            bound.push(var.clone());
            collect_free(body, bound, out, c);
            bound.pop();
        }
        Formula::Interpreted {
            transform,
            args,
            binds,
            body,
        } => {
            for a in args {
                note(a, bound);
            }
            if transform.sees_outer() {
                let mark = bound.len();
                bound.extend(binds.iter().cloned());
                collect_free(body, bound, out, c);
                bound.truncate(mark);
            }
        }
    }
}

/// Free variables of `f` with their inferred sorts; any name may be free.
pub fn free_variables(f: &Formula) -> Result<BTreeMap<String, Sort>, MsoError> {
    check_sorts(f, &BTreeMap::new(), false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mso::parse_formula;

    #[test]
    fn closed_bodies_hide_outer_variables() {
        let bad = "(exists-E A (exists-E B (exists-v u (interpreted separate (A B) (= u u)))))";
        assert!(matches!(parse_formula(bad), Err(MsoError::Unbound(_))));
        let ok =
            "(exists-v a (exists-v b (exists-V U (interpreted ear (a b) (binds z) (in z U)))))";
        assert!(parse_formula(ok).is_ok());
    }

    #[test]
    fn equality_chains_resolve() {
        let f = parse_formula("(and (= !a !b) (= !b !c) (inc !e !c))").unwrap();
        let free = free_variables(&f).unwrap();
        assert_eq!(free["!a"], Sort::Vertex);
        assert!(matches!(
            parse_formula("(= !a !b)"),
            Err(MsoError::Ambiguous(_))
        ));
    }
}
