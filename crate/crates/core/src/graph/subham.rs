use super::{is_planar, next_permutation, Graph};

/// Whether `g` is a subgraph of a planar Hamiltonian graph.
pub fn is_subhamiltonian(g: &Graph) -> bool {
    subhamiltonian_order(g).is_some()
}

/// A cyclic vertex order whose Hamilton cycle can be added to `g` keeping it
/// planar, if one exists.
///
/// Orders start at vertex 0 and each reflection is tried once, so
/// `(n-1)!/2` candidates are examined. Graphs with fewer than three vertices
/// trivially qualify.
pub fn subhamiltonian_order(g: &Graph) -> Option<Vec<usize>> {
    let n = g.n();
    if n < 3 {
        return Some((0..n).collect());
    }
    if !is_planar(g) {
        return None;
    }
    let mut rest: Vec<usize> = (1..n).collect();
    loop {
        if rest[0] < rest[n - 2] {
            let order: Vec<usize> = std::iter::once(0).chain(rest.iter().copied()).collect();
            let mut h = g.clone();
            for i in 0..n {
                let (u, v) = (order[i], order[(i + 1) % n]);
                if !h.has_edge(u, v) {
                    h.add_edge(u, v).expect("simple");
                }
            }
            if is_planar(&h) {
                return Some(order);
            }
        }
        if !next_permutation(&mut rest) {
            return None;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    #[test]
    fn examples() {
        assert!(is_subhamiltonian(&named::complete(4)));
        assert!(!is_subhamiltonian(&named::complete(5)));
        let k23 = named::complete_bipartite(2, 3);
        let order = subhamiltonian_order(&k23).unwrap();
        assert_eq!(order.len(), 5);
        assert!(is_subhamiltonian(&named::cube()));
    }
}
