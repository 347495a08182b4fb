//! Random closed formulas for engine cross-checks.

use super::{Formula, Quantifier, Sort};
use rand::seq::SliceRandom;
use rand::Rng;

const SORTS: [Sort; 4] = [Sort::Vertex, Sort::Edge, Sort::VertexSet, Sort::EdgeSet];

/// Random closed transform-free formula of quantifier rank at most `rank`.
pub fn random_formula<R: Rng>(rng: &mut R, rank: usize) -> Formula {
    let mut counter = 0;
    let mut scope = Vec::new();
    quantified(rng, rank.max(1), 6, &mut scope, &mut counter)
}

fn quantified<R: Rng>(
    rng: &mut R,
    rank: usize,
    size: usize,
    scope: &mut Vec<(String, Sort)>,
    counter: &mut usize,
) -> Formula {
    let sort = *SORTS.choose(rng).expect("non-empty");
    let q = if rng.gen_bool(0.5) {
        Quantifier::Exists
    } else {
        Quantifier::Forall
    };
    let var = format!("x{}", *counter);
    *counter += 1;
    scope.push((var.clone(), sort));
    let body = node(rng, rank - 1, size, scope, counter);
    scope.pop();
    Formula::quant(q, sort, &var, body)
}

fn node<R: Rng>(
    rng: &mut R,
    rank: usize,
    size: usize,
    scope: &mut Vec<(String, Sort)>,
    counter: &mut usize,
) -> Formula {
    let roll: f64 = rng.gen();
    if rank > 0 && roll < 0.4 {
        return quantified(rng, rank, size, scope, counter);
    }
    if size > 0 && roll < 0.75 {
        let half = size / 2;
        return match rng.gen_range(0..4) {
            0 => Formula::not(node(rng, rank, size - 1, scope, counter)),
            1 => Formula::And(vec![
                node(rng, rank, half, scope, counter),
                node(rng, rank, half, scope, counter),
            ]),
            2 => Formula::Or(vec![
                node(rng, rank, half, scope, counter),
                node(rng, rank, half, scope, counter),
            ]),
            _ => Formula::implies(
                node(rng, rank, half, scope, counter),
                node(rng, rank, half, scope, counter),
            ),
        };
    }
    atom(rng, scope)
}

fn atom<R: Rng>(rng: &mut R, scope: &[(String, Sort)]) -> Formula {
    let mut options = Vec::new();
    for (a, sa) in scope {
        for (b, sb) in scope {
            if sa == sb {
                options.push(Formula::eq(a, b));
            }
            if sb.element() == Some(*sa) {
                options.push(Formula::mem(a, b));
            }
            if *sa == Sort::Edge && *sb == Sort::Vertex {
                options.push(Formula::inc(a, b));
            }
        }
    }
    // Prefer atoms relating distinct variables.
    options.retain(|f| !matches!(f, Formula::Eq(a, b) if a == b) || rng.gen_bool(0.2));
    options.choose(rng).cloned().unwrap_or_else(|| {
        if rng.gen_bool(0.5) {
            Formula::True
        } else {
            Formula::False
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mso::{check_sorts, parse_formula};
    use rand::rngs::StdRng;
    use rand::SeedableRng;
    use std::collections::BTreeMap;

    #[test]
    fn generated_formulas_are_closed_and_bounded() {
        let mut rng = StdRng::seed_from_u64(3);
        for rank in 1..=3 {
            for _ in 0..200 {
                let f = random_formula(&mut rng, rank);
                assert!(f.quantifier_rank() <= rank && f.quantifier_rank() >= 1);
                assert!(!f.has_interpreted());
                assert!(check_sorts(&f, &BTreeMap::new(), true).unwrap().is_empty());
                assert_eq!(parse_formula(&f.to_string()).unwrap(), f);
            }
        }
    }
}
