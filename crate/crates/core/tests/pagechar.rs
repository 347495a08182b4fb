//! Partition checks: the one-crossing conditions with an empty diagram
//! against the plain two-page conditions.

use bookcross::bookdraw::CrossingDiagram;
use bookcross::corpus::all_graphs_up_to;
use bookcross::graph::{is_outerplanar, EdgeSet, Graph};
use bookcross::pagechar::{check_lemma8, check_lemma9, find_lemma8_witness, Partition6};

/// Every way to put each edge into one of the six parts.
fn partitions(m: usize) -> impl Iterator<Item = Partition6> {
    (0..6usize.pow(m as u32)).map(move |mut code| {
        let mut parts = [EdgeSet::empty(); 6];
        for e in 0..m {
            parts[code % 6].insert(e);
            code /= 6;
        }
        Partition6::from_parts(parts)
    })
}

#[test]
fn empty_diagram_agrees_on_four_vertices() {
    let empty = CrossingDiagram::empty(2);
    let mut checked = 0;
    for g in all_graphs_up_to(4) {
        for p in partitions(g.m()) {
            let plain = check_lemma8(&g, &p).unwrap();
            let degenerate = check_lemma9(&g, &empty, &[], &[], &p).unwrap();
            assert_eq!(plain, degenerate, "{g:?} {p:?}");
            checked += 1;
        }
    }
    assert!(checked > 50_000);
}

#[test]
fn empty_diagram_drops_outerplanarity() {
    // K_{1,1,3}: the hub edge 0-1 plus both hubs joined to 2, 3, 4. All
    // degrees are even, so the whole edge set is a union of cycles, but
    // the graph contains K_{2,3} and is not outerplanar.
    let g =
        Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]).unwrap();
    assert!(!is_outerplanar(&g));
    let p = Partition6 {
        ac: g.all_edges(),
        ..Default::default()
    };
    assert!(!check_lemma8(&g, &p).unwrap());
    assert!(check_lemma9(&g, &CrossingDiagram::empty(2), &[], &[], &p).unwrap());
    // The graph is still two-page planar, through a different partition.
    let w = find_lemma8_witness(&g)
        .unwrap()
        .expect("K_{1,1,3} is planar and subhamiltonian");
    assert!(check_lemma8(&g, &w).unwrap());
}
