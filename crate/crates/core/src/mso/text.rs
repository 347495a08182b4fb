//! S-expression syntax:
//! `(forall-v u φ)`, `(exists-E F φ)`, `(= a b)`, `(in x S)`, `(inc e v)`,
//! `(not φ)`, `(and φ…)`, `(or φ…)`, `(-> φ ψ)`, `true`, `false`, and
//! `(interpreted <id> (args…) [(binds…)] φ)`.

use super::{check_sorts, Formula, MsoError, Quantifier, Sort, Transform};
use crate::bookdraw::CrossingDiagram;
use std::collections::BTreeMap;
use std::fmt;

pub(super) fn write_formula(f: &Formula, out: &mut fmt::Formatter<'_>) -> fmt::Result {
    match f {
        Formula::True => out.write_str("true"),
        Formula::False => out.write_str("false"),
        Formula::Eq(a, b) => write!(out, "(= {a} {b})"),
        Formula::In(a, b) => write!(out, "(in {a} {b})"),
        Formula::Inc(a, b) => write!(out, "(inc {a} {b})"),
        Formula::Not(g) => write!(out, "(not {g})"),
        Formula::And(gs) | Formula::Or(gs) => {
            out.write_str(if matches!(f, Formula::And(_)) {
                "(and"
            } else {
                "(or"
            })?;
            for g in gs {
                write!(out, " {g}")?;
            }
            out.write_str(")")
        }
        Formula::Implies(a, b) => write!(out, "(-> {a} {b})"),
        Formula::Quant { q, sort, var, body } => {
            let q = match q {
                Quantifier::Forall => "forall",
                Quantifier::Exists => "exists",
            };
            write!(out, "({q}-{} {var} {body})", sort.tag())
        }
        Formula::Interpreted {
            transform,
            args,
            binds,
            body,
        } => {
            write!(
                out,
                "(interpreted {} ({})",
                transform_id(transform),
                args.join(" ")
            )?;
            if !binds.is_empty() {
                write!(out, " (binds {})", binds.join(" "))?;
            }
            write!(out, " {body})")
        }
    }
}

fn transform_id(t: &Transform) -> String {
    match t {
        Transform::Identify => "identify".into(),
        Transform::Ear => "ear".into(),
        Transform::Separate => "separate".into(),
        Transform::Planarize(d) => {
            let mut s = format!("planarize[p={}", d.points);
            for (i, &(a, b)) in d.segments.iter().enumerate() {
                s.push_str(&format!(";{a}-{b}"));
                if let Some(c) = &d.colors {
                    s.push_str(&format!("@{}", c[i]));
                }
            }
            s.push(']');
            s
        }
    }
}

fn parse_transform(id: &str, pos: usize) -> Result<Transform, MsoError> {
    let syntax = |msg: &str| MsoError::Syntax {
        pos,
        msg: msg.to_string(),
    };
    match id {
        "identify" => return Ok(Transform::Identify),
        "ear" => return Ok(Transform::Ear),
        "separate" => return Ok(Transform::Separate),
        _ => {}
    }
    let inner = id
        .strip_prefix("planarize[")
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| MsoError::UnknownOperator(id.to_string()))?;
    let mut parts = inner.split(';');
    let points = parts
        .next()
        .and_then(|p| p.strip_prefix("p="))
        .and_then(|p| p.parse().ok())
        .ok_or_else(|| syntax("planarize needs p=<points>"))?;
    let mut segments = Vec::new();
    let mut colors = Vec::new();
    for seg in parts {
        let (pair, color) = match seg.split_once('@') {
            Some((p, c)) => (p, Some(c.parse::<u8>().map_err(|_| syntax("bad colour"))?)),
            None => (seg, None),
        };
        let (a, b) = pair.split_once('-').ok_or_else(|| syntax("bad segment"))?;
        let a = a.parse().map_err(|_| syntax("bad segment"))?;
        let b = b.parse().map_err(|_| syntax("bad segment"))?;
        segments.push((a, b));
        colors.push(color);
    }
    let colors = if colors.iter().all(Option::is_some) && !colors.is_empty() {
        Some(colors.into_iter().map(|c| c.expect("checked")).collect())
    } else if colors.iter().all(Option::is_none) {
        None
    } else {
        return Err(syntax("colour every segment or none"));
    };
    let d = CrossingDiagram {
        points,
        segments,
        colors,
    };
    d.validate().map_err(|e| syntax(&e.to_string()))?;
    Ok(Transform::Planarize(d))
}

enum Sexp {
    Atom(String, usize),
    List(Vec<Sexp>, usize),
}

impl Sexp {
    fn pos(&self) -> usize {
        match self {
            Sexp::Atom(_, p) | Sexp::List(_, p) => *p,
        }
    }
}

fn tokenize(text: &str) -> Vec<String> {
    let mut toks = Vec::new();
    let mut cur = String::new();
    for ch in text.chars() {
        if ch == '(' || ch == ')' || ch.is_whitespace() {
            if !cur.is_empty() {
                toks.push(std::mem::take(&mut cur));
            }
            if !ch.is_whitespace() {
                toks.push(ch.to_string());
            }
        } else {
            cur.push(ch);
        }
    }
    if !cur.is_empty() {
        toks.push(cur);
    }
    toks
}

fn read(toks: &[String], i: &mut usize) -> Result<Sexp, MsoError> {
    let pos = *i;
    let t = toks.get(pos).ok_or(MsoError::Syntax {
        pos,
        msg: "unexpected end of input".into(),
    })?;
    *i += 1;
    match t.as_str() {
        "(" => {
            let mut items = Vec::new();
            loop {
                match toks.get(*i).map(String::as_str) {
                    Some(")") => {
                        *i += 1;
                        return Ok(Sexp::List(items, pos));
                    }
                    Some(_) => items.push(read(toks, i)?),
                    None => {
                        return Err(MsoError::Syntax {
                            pos,
                            msg: "unclosed '('".into(),
                        })
                    }
                }
            }
        }
        ")" => Err(MsoError::Syntax {
            pos,
            msg: "unexpected ')'".into(),
        }),
        atom => Ok(Sexp::Atom(atom.to_string(), pos)),
    }
}

fn atom(s: &Sexp) -> Result<&str, MsoError> {
    match s {
        Sexp::Atom(a, _) => Ok(a),
        Sexp::List(_, pos) => Err(MsoError::Syntax {
            pos: *pos,
            msg: "expected a name".into(),
        }),
    }
}

fn names(s: &Sexp) -> Result<Vec<String>, MsoError> {
    match s {
        Sexp::List(items, _) => items.iter().map(|x| atom(x).map(str::to_string)).collect(),
        Sexp::Atom(_, pos) => Err(MsoError::Syntax {
            pos: *pos,
            msg: "expected a list".into(),
        }),
    }
}

fn convert(s: &Sexp) -> Result<Formula, MsoError> {
    let (items, pos) = match s {
        Sexp::Atom(a, pos) => {
            return match a.as_str() {
                "true" => Ok(Formula::True),
                "false" => Ok(Formula::False),
                _ => Err(MsoError::Syntax {
                    pos: *pos,
                    msg: format!("stray atom {a:?}"),
                }),
            }
        }
        Sexp::List(items, pos) => (items, *pos),
    };
    let head = items.first().ok_or(MsoError::Syntax {
        pos,
        msg: "empty list".into(),
    })?;
    let op = atom(head)?;
    let args = &items[1..];
    let arity = |n: usize| {
        if args.len() == n {
            Ok(())
        } else {
            Err(MsoError::Arity(format!(
                "{op} takes {n} arguments, got {}",
                args.len()
            )))
        }
    };
    let binary = |make: fn(String, String) -> Formula| -> Result<Formula, MsoError> {
        arity(2)?;
        Ok(make(
            atom(&args[0])?.to_string(),
            atom(&args[1])?.to_string(),
        ))
    };
    match op {
        "=" => binary(Formula::Eq),
        "in" => binary(Formula::In),
        "inc" => binary(Formula::Inc),
        "not" => {
            arity(1)?;
            Ok(Formula::not(convert(&args[0])?))
        }
        "and" => Ok(Formula::And(
            args.iter().map(convert).collect::<Result<_, _>>()?,
        )),
        "or" => Ok(Formula::Or(
            args.iter().map(convert).collect::<Result<_, _>>()?,
        )),
        "->" => {
            arity(2)?;
            Ok(Formula::implies(convert(&args[0])?, convert(&args[1])?))
        }
        "interpreted" => {
            if args.len() != 3 && args.len() != 4 {
                return Err(MsoError::Arity(
                    "interpreted takes an id, arguments, optional binds and a body".into(),
                ));
            }
            let transform = parse_transform(atom(&args[0])?, args[0].pos())?;
            let call_args = names(&args[1])?;
            let binds = if args.len() == 4 {
                let mut b = names(&args[2])?;
                if b.first().map(String::as_str) != Some("binds") {
                    return Err(MsoError::Syntax {
                        pos: args[2].pos(),
                        msg: "expected (binds …)".into(),
                    });
                }
                b.remove(0);
                b
            } else {
                Vec::new()
            };
            Ok(Formula::Interpreted {
                transform,
                args: call_args,
                binds,
                body: Box::new(convert(args.last().expect("checked arity"))?),
            })
        }
        _ => {
            let (q, tag) = op
                .split_once('-')
                .ok_or_else(|| MsoError::UnknownOperator(op.to_string()))?;
            let q = match q {
                "forall" => Quantifier::Forall,
                "exists" => Quantifier::Exists,
                _ => return Err(MsoError::UnknownOperator(op.to_string())),
            };
            let sort = match tag {
                "v" => Sort::Vertex,
                "e" => Sort::Edge,
                "V" => Sort::VertexSet,
                "E" => Sort::EdgeSet,
                _ => return Err(MsoError::UnknownOperator(op.to_string())),
            };
            arity(2)?;
            Ok(Formula::quant(q, sort, atom(&args[0])?, convert(&args[1])?))
        }
    }
}

fn parse_syntax(text: &str) -> Result<Formula, MsoError> {
    let toks = tokenize(text);
    let mut i = 0;
    let s = read(&toks, &mut i)?;
    if i != toks.len() {
        return Err(MsoError::Syntax {
            pos: i,
            msg: "trailing input".into(),
        });
    }
    convert(&s)
}

/// Parses and sort-checks a formula. Free variables must start with `!`;
/// their sorts are inferred from use.
pub fn parse_formula(text: &str) -> Result<Formula, MsoError> {
    parse_formula_with(text, &[])
}

/// Like [`parse_formula`], with additional declared free variables.
pub fn parse_formula_with(text: &str, free: &[(&str, Sort)]) -> Result<Formula, MsoError> {
    let f = parse_syntax(text)?;
    let declared: BTreeMap<String, Sort> = free.iter().map(|&(n, s)| (n.to_string(), s)).collect();
    check_sorts(&f, &declared, true)?;
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let f = parse_formula("(exists-v u (inc !e u))").unwrap();
        let free = crate::mso::free_variables(&f).unwrap();
        assert_eq!(
            free.into_iter().collect::<Vec<_>>(),
            vec![("!e".to_string(), Sort::Edge)]
        );

        let err = parse_formula_with("(in u F)", &[("u", Sort::Vertex), ("F", Sort::EdgeSet)]);
        assert!(matches!(err, Err(MsoError::SortMismatch { .. })));
        assert!(matches!(
            parse_formula("(exists-v u (in u F))"),
            Err(MsoError::Unbound(_))
        ));
        assert!(matches!(
            parse_formula("(frob x)"),
            Err(MsoError::UnknownOperator(_))
        ));
        assert!(parse_formula("(and true").is_err());
    }

    #[test]
    fn round_trip_with_transforms() {
        let text =
            "(exists-e a (exists-e b (interpreted planarize[p=4;0-2@0;1-3@0] (!w !x !y !z a b) \
                    (binds X P Q) (exists-v v (in v X)))))";
        let f = parse_formula(text).unwrap();
        assert_eq!(parse_formula(&f.to_string()).unwrap(), f);
        let g = parse_formula("(interpreted identify (!a !b) (exists-v u (= u !a)))").unwrap();
        assert_eq!(parse_formula(&g.to_string()).unwrap(), g);
    }
}
