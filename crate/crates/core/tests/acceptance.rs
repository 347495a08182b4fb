//! Acceptance gate: every criterion is checked against an independent
//! brute-force oracle at zero tolerance. Prints one PASS/FAIL line per
//! criterion and exits non-zero if any fails.

use bookcross::bookdraw::{cr1_exact, cr2_exact, enumerate_crossing_diagrams, BookDrawing};
use bookcross::checker::{eval_courcelle, eval_naive, Assignment, EvalBudget, Verdict};
use bookcross::corpus::{
    all_graphs_up_to, connected_graphs_up_to, random_graph, random_partial_ktree,
};
use bookcross::graph::{
    clique_sum, is_minor, is_outerplanar, is_planar, is_subhamiltonian, named,
    subhamiltonian_order, EdgeSet, Graph,
};
use bookcross::mso::book::{build_onepage, build_twopage, build_zeta};
use bookcross::mso::build::build_basic;
use bookcross::mso::random_formula;
use bookcross::pagechar::{check_lemma5, check_lemma8, find_lemma5_witness, find_lemma8_witness};
use bookcross::report::treewidth_cr1_report;
use bookcross::treewidth::{make_nice, treewidth_exact};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

type Outcome = Result<String, String>;

// ---------------------------------------------------------------- oracles

/// Whether chords `(a, b)` and `(c, d)` cross when vertices sit at `pos`
/// around a circle (or on a line: the test is the same).
fn cross(pos: &[usize], (a, b): (usize, usize), (c, d): (usize, usize)) -> bool {
    if a == c || a == d || b == c || b == d {
        return false;
    }
    let (lo, hi) = (pos[a].min(pos[b]), pos[a].max(pos[b]));
    let inside = |x: usize| lo < pos[x] && pos[x] < hi;
    inside(c) != inside(d)
}

fn positions(order: &[usize]) -> Vec<usize> {
    let mut pos = vec![0; order.len()];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    pos
}

/// Every permutation of `0..n` starting with vertex 0.
fn rooted_orders(n: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, left: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left.is_empty() {
            out.push(cur.clone());
            return;
        }
        for i in 0..left.len() {
            let v = left.remove(i);
            cur.push(v);
            rec(cur, left, out);
            cur.pop();
            left.insert(i, v);
        }
    }
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    rec(&mut vec![0], &mut (1..n).collect(), &mut out);
    out
}

fn conflicts(g: &Graph, order: &[usize]) -> Vec<u128> {
    let pos = positions(order);
    let es = g.edges();
    (0..es.len())
        .map(|i| {
            (0..es.len())
                .filter(|&j| cross(&pos, es[i], es[j]))
                .fold(0u128, |m, j| m | 1 << j)
        })
        .collect()
}

fn brute_cr1(g: &Graph) -> usize {
    rooted_orders(g.n())
        .iter()
        .map(|o| {
            conflicts(g, o)
                .iter()
                .map(|c| c.count_ones() as usize)
                .sum::<usize>()
                / 2
        })
        .min()
        .unwrap_or(0)
}

/// Minimum over spine orders and page assignments (edge 0 on page 0).
fn brute_cr2(g: &Graph) -> usize {
    let m = g.m();
    let mut best = usize::MAX;
    for o in rooted_orders(g.n()) {
        let c = conflicts(g, &o);
        let full: u128 = if m == 0 { 0 } else { (1u128 << m) - 1 };
        for mask in 0..(1u128 << m.saturating_sub(1)) {
            let a = mask << 1 & full;
            let b = full & !a;
            let mut cr = 0;
            for (e, ce) in c.iter().enumerate() {
                let same = if a >> e & 1 == 1 { a } else { b };
                cr += (ce & same).count_ones() as usize;
            }
            best = best.min(cr / 2);
        }
        if best == 0 {
            break;
        }
    }
    if best == usize::MAX {
        0
    } else {
        best
    }
}

fn drawing_crossings(g: &Graph, d: &BookDrawing) -> usize {
    let pos = positions(&d.spine);
    let es = g.edges();
    let mut count = 0;
    for i in 0..es.len() {
        for j in i + 1..es.len() {
            if d.pages[i] == d.pages[j] && cross(&pos, es[i], es[j]) {
                count += 1;
            }
        }
    }
    count
}

fn brute_hamiltonian(g: &Graph) -> bool {
    g.n() >= 3
        && rooted_orders(g.n())
            .iter()
            .any(|o| (0..o.len()).all(|i| g.has_edge(o[i], o[(i + 1) % o.len()])))
}

fn brute_colorable(g: &Graph, k: usize) -> bool {
    let n = g.n() as u32;
    (0..(k as u64).pow(n)).any(|code| {
        let color = |v: usize| (code / (k as u64).pow(v as u32)) % k as u64;
        g.edges().iter().all(|&(u, v)| color(u) != color(v))
    })
}

fn brute_connected(g: &Graph) -> bool {
    if g.n() == 0 {
        return true;
    }
    let mut seen = vec![false; g.n()];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(u) = stack.pop() {
        for &(a, b) in g.edges() {
            for (x, y) in [(a, b), (b, a)] {
                if x == u && !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
    }
    seen.iter().all(|&s| s)
}

// ---------------------------------------------------------------- criteria

fn c1_cr1() -> Outcome {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(1);
    let mut suite: Vec<Graph> = (0..200)
        .map(|_| {
            let n = rng.gen_range(1..=7);
            let p = rng.gen_range(0.2..0.9);
            random_graph(&mut rng, n, p)
        })
        .collect();
    let fixed = [
        (named::complete(4), Some(1)),
        (named::complete(5), Some(5)),
        (named::complete_bipartite(2, 3), None),
        (named::cycle(3), Some(0)),
        (named::cycle(5), Some(0)),
        (named::cycle(7), Some(0)),
    ];
    for (g, want) in &fixed {
        let (k, _) = cr1_exact(g).map_err(|e| e.to_string())?;
        if let Some(w) = want {
            if k != *w {
                return Err(format!("{g:?}: got {k}, expected {w}"));
            }
        }
        suite.push(g.clone());
    }
    for g in &suite {
        let (k, d) = cr1_exact(g).map_err(|e| e.to_string())?;
        let oracle = brute_cr1(g);
        if k != oracle || drawing_crossings(g, &d) != k {
            return Err(format!(
                "{g:?}: solver {k}, oracle {oracle}, witness {}",
                drawing_crossings(g, &d)
            ));
        }
    }
    let t = start.elapsed();
    if t > Duration::from_secs(60) {
        return Err(format!("took {t:?}"));
    }
    Ok(format!("{} graphs", suite.len()))
}

fn c2_cr2() -> Outcome {
    let start = Instant::now();
    for (g, want) in [(named::complete(5), 1), (named::complete(4), 0)] {
        let (k, _) = cr2_exact(&g).map_err(|e| e.to_string())?;
        if k != want {
            return Err(format!("{g:?}: got {k}, expected {want}"));
        }
    }
    let suite = connected_graphs_up_to(6);
    for g in &suite {
        let (k, d) = cr2_exact(g).map_err(|e| e.to_string())?;
        let oracle = brute_cr2(g);
        if k != oracle || drawing_crossings(g, &d) != k {
            return Err(format!("{g:?}: solver {k}, oracle {oracle}"));
        }
    }
    let t = start.elapsed();
    if t > Duration::from_secs(600) {
        return Err(format!("took {t:?}"));
    }
    Ok(format!("{} connected graphs", suite.len()))
}

fn c3_subhamiltonian() -> Outcome {
    let suite = connected_graphs_up_to(6);
    for g in &suite {
        let zero = cr2_exact(g).map_err(|e| e.to_string())?.0 == 0;
        if zero != is_subhamiltonian(g) {
            return Err(format!("{g:?}: cr2=0 is {zero}"));
        }
        if let Some(order) = subhamiltonian_order(g) {
            let mut h = g.clone();
            for i in 0..order.len() {
                let (u, v) = (order[i], order[(i + 1) % order.len()]);
                if u != v && !h.has_edge(u, v) {
                    h.add_edge(u, v).map_err(|e| e.to_string())?;
                }
            }
            if !is_planar(&h) {
                return Err(format!(
                    "{g:?}: order {order:?} does not close a planar cycle"
                ));
            }
        }
    }
    Ok(format!("{} connected graphs", suite.len()))
}

fn c4_two_page_witness() -> Outcome {
    let start = Instant::now();
    let mut suite = connected_graphs_up_to(5);
    suite.extend([
        named::complete(4),
        named::complete(5),
        named::complete_bipartite(2, 3),
        named::complete_bipartite(3, 3),
        named::cube(),
        named::prism(),
        named::wheel(5),
    ]);
    for g in &suite {
        let w = find_lemma8_witness(g).map_err(|e| e.to_string())?;
        if let Some(p) = &w {
            if !check_lemma8(g, p).map_err(|e| e.to_string())? {
                return Err(format!("{g:?}: returned partition fails the check"));
            }
        }
        let s = is_subhamiltonian(g);
        let z = brute_or_exact_cr2(g)? == 0;
        if !(w.is_some() == s && s == z) {
            return Err(format!(
                "{g:?}: witness {} subham {s} cr2=0 {z}",
                w.is_some()
            ));
        }
    }
    let t = start.elapsed();
    if t > Duration::from_secs(900) {
        return Err(format!("took {t:?}"));
    }
    Ok(format!("{} graphs", suite.len()))
}

fn brute_or_exact_cr2(g: &Graph) -> Result<usize, String> {
    if g.n() <= 6 {
        Ok(brute_cr2(g))
    } else {
        cr2_exact(g).map(|x| x.0).map_err(|e| e.to_string())
    }
}

fn c5_one_page_witness() -> Outcome {
    let suite = all_graphs_up_to(6);
    for g in &suite {
        let cr = brute_cr1(g);
        for k in 0..=2 {
            let w = find_lemma5_witness(g, k).map_err(|e| e.to_string())?;
            if let Some(w) = &w {
                if !check_lemma5(g, w, k).map_err(|e| e.to_string())? {
                    return Err(format!("{g:?} k={k}: returned witness fails the check"));
                }
            }
            if w.is_some() != (cr <= k) {
                return Err(format!("{g:?} k={k}: witness {} but cr1={cr}", w.is_some()));
            }
        }
    }
    Ok(format!("{} graphs x 3 values of k", suite.len()))
}

fn c6_formula_semantics() -> Outcome {
    let budget = EvalBudget::default().without_intrinsics();
    let a = Assignment::new();
    let suite = all_graphs_up_to(6);
    let k3 = named::complete(3);
    let k4 = named::complete(4);
    let k23 = named::complete_bipartite(2, 3);
    let direct: Vec<(&str, Box<dyn Fn(&Graph) -> bool>)> = vec![
        ("hamiltonian", Box::new(brute_hamiltonian)),
        ("color-2", Box::new(|g| brute_colorable(g, 2))),
        ("color-3", Box::new(|g| brute_colorable(g, 3))),
        ("connected", Box::new(brute_connected)),
        ("planar", Box::new(is_planar)),
        ("outerplanar", Box::new(is_outerplanar)),
        ("minor-K3", Box::new(move |g| is_minor(g, &k3))),
        ("minor-K4", Box::new(move |g| is_minor(g, &k4))),
        ("minor-K2,3", Box::new(move |g| is_minor(g, &k23))),
    ];
    for (name, oracle) in &direct {
        let f = build_basic(name).map_err(|e| e.to_string())?;
        for g in &suite {
            let got =
                eval_naive(g, &f, &a, &budget).map_err(|e| format!("{name} on {g:?}: {e}"))?;
            if got != oracle(g) {
                return Err(format!("{name} on {g:?}: formula {got}"));
            }
        }
    }
    Ok(format!(
        "{} properties x {} graphs",
        direct.len(),
        suite.len()
    ))
}

fn c7_onepage_formula() -> Outcome {
    let budget = EvalBudget::default();
    let suite = all_graphs_up_to(6);
    for k in 0..=1 {
        let f = build_onepage(k).map_err(|e| e.to_string())?;
        for g in &suite {
            let got = eval_naive(g, &f, &Assignment::new(), &budget)
                .map_err(|e| format!("k={k} {g:?}: {e}"))?;
            if got != (brute_cr1(g) <= k) {
                return Err(format!("k={k} {g:?}: formula {got}"));
            }
        }
    }
    Ok(format!("{} graphs x k in {{0,1}}", suite.len()))
}

fn c8_twopage_formula() -> Outcome {
    let f = build_twopage();
    let mut suite = all_graphs_up_to(5);
    suite.extend([
        named::complete(4),
        named::complete(5),
        named::complete_bipartite(2, 3),
        named::complete_bipartite(3, 3),
    ]);
    for g in &suite {
        let got = eval_naive(g, &f, &Assignment::new(), &EvalBudget::default())
            .map_err(|e| format!("{g:?}: {e}"))?;
        if got != (brute_cr2(g) == 0) {
            return Err(format!("{g:?}: formula {got}"));
        }
    }
    Ok(format!("{} graphs", suite.len()))
}

fn c9_zeta1() -> Outcome {
    let f = build_zeta(1).map_err(|e| e.to_string())?;
    let mut suite = vec![
        named::complete(5),
        named::complete(6),
        named::complete(4),
        named::complete_bipartite(3, 3),
        named::complete_bipartite(2, 3),
        named::wheel(5),
        named::prism(),
        named::complete_bipartite(3, 4),
        {
            let k6 = named::complete(6);
            let kept: Vec<_> = k6.edges()[1..].to_vec();
            Graph::from_edges(6, &kept).expect("subgraph of K6")
        },
    ];
    let mut rng = StdRng::seed_from_u64(9);
    while suite.len() < 30 {
        let n = rng.gen_range(3..=5);
        let p = rng.gen_range(0.4..1.0);
        suite.push(random_graph(&mut rng, n, p));
    }
    let mut positives = 0;
    for g in &suite {
        let got = eval_naive(g, &f, &Assignment::new(), &EvalBudget::default())
            .map_err(|e| format!("{g:?}: {e}"))?;
        let want = brute_cr2(g) <= 1;
        if got != want {
            return Err(format!("{g:?}: formula {got}, cr2<=1 is {want}"));
        }
        positives += want as usize;
    }
    Ok(format!(
        "{} graphs ({positives} with cr2 <= 1)",
        suite.len()
    ))
}

fn c10_engines() -> Outcome {
    let mut rng = StdRng::seed_from_u64(10);
    let budget = EvalBudget::default();
    let mut trues = 0;
    for i in 0..100 {
        let n = rng.gen_range(1..=10);
        let k = rng.gen_range(1..=3);
        let keep = rng.gen_range(0.5..1.0);
        let g = random_partial_ktree(&mut rng, n, k, keep);
        let f = random_formula(&mut rng, 3);
        let (tw, td) = treewidth_exact(&g).map_err(|e| e.to_string())?;
        if tw > 3 || f.quantifier_rank() > 3 || f.has_interpreted() {
            return Err(format!("generator broke its contract on pair {i}"));
        }
        let nice = make_nice(&td).map_err(|e| e.to_string())?;
        let naive = eval_naive(&g, &f, &Assignment::new(), &budget).map_err(|e| e.to_string())?;
        let dp = eval_courcelle(&g, &f, &nice, &budget).map_err(|e| format!("pair {i}: {e}"))?;
        if dp != Verdict::from(naive) {
            return Err(format!(
                "pair {i}: {g:?}\n{f}\nnaive {naive}, decomposition {dp:?}"
            ));
        }
        trues += naive as usize;
    }
    Ok(format!("100 pairs ({trues} true)"))
}

fn cliques(g: &Graph, size: usize) -> Vec<Vec<usize>> {
    (0u64..1 << g.n())
        .filter(|m| m.count_ones() as usize == size)
        .map(|m| (0..g.n()).filter(|&v| m >> v & 1 == 1).collect::<Vec<_>>())
        .filter(|vs| {
            vs.iter()
                .enumerate()
                .all(|(i, &u)| vs[i + 1..].iter().all(|&v| g.has_edge(u, v)))
        })
        .collect()
}

fn c11_clique_sums() -> Outcome {
    let mut rng = StdRng::seed_from_u64(11);
    let mut done = 0;
    let mut dropped = 0;
    while done < 100 {
        let parts: Vec<Graph> = (0..2)
            .map(|_| {
                let n = rng.gen_range(1..=7);
                let k = rng.gen_range(1..=3);
                let keep = rng.gen_range(0.6..1.0);
                random_partial_ktree(&mut rng, n, k, keep)
            })
            .collect();
        let size = rng.gen_range(1..=4);
        let (c1, c2) = (cliques(&parts[0], size), cliques(&parts[1], size));
        let (Some(a), Some(b)) = (c1.choose(&mut rng), c2.choose(&mut rng)) else {
            continue;
        };
        let mut b = b.clone();
        b.shuffle(&mut rng);
        let map: Vec<(usize, usize)> = a.iter().copied().zip(b).collect();
        let mut drop = EdgeSet::empty();
        for (i, &u) in a.iter().enumerate() {
            for &v in &a[i + 1..] {
                if rng.gen_bool(0.3) {
                    drop.insert(parts[0].edge_id(u, v).expect("clique edge"));
                }
            }
        }
        dropped += drop.len();
        let sum = clique_sum(&parts[0], &parts[1], &map, drop).map_err(|e| e.to_string())?;
        let w: Vec<usize> = parts
            .iter()
            .map(|p| treewidth_exact(p).map(|x| x.0))
            .collect::<Result<_, _>>()
            .map_err(|e| e.to_string())?;
        if w.iter().any(|&x| x > 3) {
            return Err("generated part has width above 3".into());
        }
        let ws = treewidth_exact(&sum).map_err(|e| e.to_string())?.0;
        if ws > w[0].max(w[1]) {
            return Err(format!("sum width {ws} above parts {w:?}: {sum:?}"));
        }
        done += 1;
    }
    Ok(format!("100 sums ({dropped} clique edges dropped)"))
}

type Triple = (usize, usize, u8);

/// Independent count of diagrams with exactly `k` crossings: all chord sets
/// on up to `4k` points, all colourings, deduplicated by rotation.
fn brute_diagram_count(k: usize, pages: u8) -> usize {
    if k == 0 {
        return 1;
    }
    let mut seen: BTreeSet<(usize, Vec<Triple>)> = BTreeSet::new();
    for p in 4..=4 * k {
        let chords: Vec<(usize, usize)> = (0..p)
            .flat_map(|a| (a + 1..p).map(move |b| (a, b)))
            .collect();
        for mask in 0u64..1 << chords.len() {
            let r = mask.count_ones() as usize;
            if r < 2 || r > 2 * k {
                continue;
            }
            let segs: Vec<(usize, usize)> = (0..chords.len())
                .filter(|&i| mask >> i & 1 == 1)
                .map(|i| chords[i])
                .collect();
            let mut used = vec![false; p];
            for &(a, b) in &segs {
                used[a] = true;
                used[b] = true;
            }
            if used.contains(&false) {
                continue;
            }
            let colourings = if pages == 2 { 1u32 << r } else { 1 };
            for col in 0..colourings {
                let c = |i: usize| (col >> i & 1) as u8;
                let ident: Vec<usize> = (0..p).collect();
                let crosses = |i: usize, j: usize| c(i) == c(j) && cross(&ident, segs[i], segs[j]);
                let count = (0..r)
                    .flat_map(|i| (i + 1..r).map(move |j| (i, j)))
                    .filter(|&(i, j)| crosses(i, j))
                    .count();
                if count != k || (0..r).any(|i| !(0..r).any(|j| j != i && crosses(i, j))) {
                    continue;
                }
                let canon = (0..p)
                    .map(|rot| {
                        let mut t: Vec<Triple> = segs
                            .iter()
                            .enumerate()
                            .map(|(i, &(a, b))| {
                                let (x, y) = ((a + rot) % p, (b + rot) % p);
                                (x.min(y), x.max(y), c(i))
                            })
                            .collect();
                        t.sort();
                        t
                    })
                    .min()
                    .expect("p >= 4");
                seen.insert((p, canon));
            }
        }
    }
    seen.len()
}

fn c12_diagrams() -> Outcome {
    let mut counts = BTreeMap::new();
    for k in 0..=2 {
        for pages in 1..=2u8 {
            let ds = enumerate_crossing_diagrams(k, pages).map_err(|e| e.to_string())?;
            let keys: BTreeSet<Vec<u8>> = ds.iter().map(|d| d.canonical_key()).collect();
            if keys.len() != ds.len() {
                return Err(format!("k={k} pages={pages}: duplicate canonical keys"));
            }
            if let Some(d) = ds
                .iter()
                .find(|d| d.validate().is_err() || d.crossing_count() != k)
            {
                return Err(format!("k={k} pages={pages}: invalid diagram {d}"));
            }
            counts.insert((k, pages), ds.len());
        }
    }
    let fixed = [((0, 1), 1), ((0, 2), 1), ((1, 1), 1), ((1, 2), 2)];
    for (key, want) in fixed {
        if counts[&key] != want {
            return Err(format!(
                "k={} pages={}: {} diagrams, expected {want}",
                key.0, key.1, counts[&key]
            ));
        }
    }
    for pages in 1..=2u8 {
        let want = brute_diagram_count(2, pages);
        if counts[&(2, pages)] != want {
            return Err(format!(
                "k=2 pages={pages}: {} diagrams, brute force {want}",
                counts[&(2, pages)]
            ));
        }
    }
    Ok(format!(
        "k=2: {} one-page, {} two-page",
        counts[&(2, 1)],
        counts[&(2, 2)]
    ))
}

fn c13_report() -> Outcome {
    let r = treewidth_cr1_report(7).map_err(|e| e.to_string())?;
    print!("{r}");
    Ok(format!("{} rows", r.rows.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 13] = [
        ("1-page solver vs exhaustive orders", c1_cr1),
        ("2-page solver vs exhaustive orders x pages", c2_cr2),
        ("cr2 = 0 iff subhamiltonian", c3_subhamiltonian),
        (
            "2-page witness search three-way equivalence",
            c4_two_page_witness,
        ),
        ("1-page witness iff cr1 <= k", c5_one_page_witness),
        (
            "library formulas vs direct algorithms",
            c6_formula_semantics,
        ),
        ("onepage_k formula iff cr1 <= k", c7_onepage_formula),
        ("twopage formula iff cr2 = 0", c8_twopage_formula),
        ("zeta_1 formula iff cr2 <= 1", c9_zeta1),
        ("decomposition engine vs naive engine", c10_engines),
        ("clique-sum treewidth bound", c11_clique_sums),
        ("crossing diagram enumeration", c12_diagrams),
        ("treewidth vs sqrt(cr1) report", c13_report),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let r = run();
        let secs = t.elapsed().as_secs_f64();
        match r {
            Ok(detail) => println!(
                "criterion {:>2} PASS  {name} [{detail}] ({secs:.1}s)",
                i + 1
            ),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why} ({secs:.1}s)", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
