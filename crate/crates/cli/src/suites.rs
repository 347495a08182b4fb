//! Corpus verifications behind `bookcross verify`. Each suite checks one
//! claim against the brute-force references in `bookcross::oracle`; the
//! per-graph work fans out over rayon and failures are reported for the
//! first offending graph in corpus order, so output is deterministic.

use bookcross::bookdraw::{cr1_exact, cr2_exact, enumerate_crossing_diagrams};
use bookcross::checker::{eval_courcelle, eval_naive, Assignment, EvalBudget, Verdict};
use bookcross::corpus::{
    all_graphs_up_to, connected_graphs_up_to, random_graph, random_partial_ktree,
};
use bookcross::graph::{
    clique_sum, emit_graph6, is_minor, is_outerplanar, is_planar, is_subhamiltonian, named,
    EdgeSet, Graph,
};
use bookcross::mso::book::{build_onepage, build_twopage, build_zeta};
use bookcross::mso::build::build_basic;
use bookcross::mso::random_formula;
use bookcross::oracle;
use bookcross::pagechar::{check_lemma5, check_lemma8, find_lemma5_witness, find_lemma8_witness};
use bookcross::report::treewidth_cr1_report;
use bookcross::treewidth::{make_nice, treewidth_exact};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use std::collections::BTreeSet;
use std::time::Duration;

pub struct Options {
    /// Overrides the corpus order bound of graph-enumerating suites.
    pub max_n: Option<usize>,
    /// Per-evaluation time budget for formula suites.
    pub budget: Option<Duration>,
}

impl Options {
    fn n(&self, default: usize) -> usize {
        self.max_n.unwrap_or(default)
    }

    fn eval_budget(&self) -> EvalBudget {
        let mut b = EvalBudget::default();
        if self.budget.is_some() {
            b.max_time = self.budget;
        }
        b
    }
}

type Outcome = Result<String, String>;

pub struct Suite {
    pub name: &'static str,
    pub about: &'static str,
    check: fn(&Options) -> Outcome,
}

pub const SUITES: &[Suite] = &[
    Suite {
        name: "cr1-exact",
        about: "1-page solver vs exhaustive orders",
        check: cr1_exact_suite,
    },
    Suite {
        name: "cr2-exact",
        about: "2-page solver vs exhaustive orders and pages",
        check: cr2_exact_suite,
    },
    Suite {
        name: "subhamiltonian",
        about: "cr2 = 0 iff subhamiltonian",
        check: subhamiltonian,
    },
    Suite {
        name: "two-page-witness",
        about: "2-page witness iff subhamiltonian iff cr2 = 0",
        check: two_page_witness,
    },
    Suite {
        name: "one-page-witness",
        about: "1-page witness iff cr1 <= k",
        check: one_page_witness,
    },
    Suite {
        name: "formula-semantics",
        about: "library formulas vs direct algorithms",
        check: formula_semantics,
    },
    Suite {
        name: "onepage-formula",
        about: "onepage_k formula iff cr1 <= k",
        check: onepage_formula,
    },
    Suite {
        name: "twopage-formula",
        about: "twopage formula iff cr2 = 0",
        check: twopage_formula,
    },
    Suite {
        name: "zeta1-formula",
        about: "zeta_1 formula iff cr2 <= 1",
        check: zeta1_formula,
    },
    Suite {
        name: "engine-agreement",
        about: "decomposition engine vs naive engine",
        check: engine_agreement,
    },
    Suite {
        name: "clique-sum",
        about: "clique sums keep the larger treewidth",
        check: clique_sums,
    },
    Suite {
        name: "diagrams",
        about: "crossing diagram enumeration",
        check: diagrams,
    },
    Suite {
        name: "lemma4-report",
        about: "treewidth vs sqrt(cr1) report",
        check: lemma4_report,
    },
];

/// Runs a suite and prints its table row; returns whether it passed.
pub fn run(s: &Suite, opts: &Options) -> bool {
    match (s.check)(opts) {
        Ok(detail) => {
            say!("{}\tPASS\t{}\t{detail}", s.name, s.about);
            true
        }
        Err(why) => {
            say!("{}\tFAIL\t{}\t{why}", s.name, s.about);
            false
        }
    }
}

/// Checks every item in parallel; the reported error is the first in input order.
fn each<T: Sync>(
    items: &[T],
    f: impl Fn(&T) -> Result<(), String> + Sync + Send,
) -> Result<usize, String> {
    let results: Vec<Result<(), String>> = items.par_iter().map(f).collect();
    results.into_iter().collect::<Result<Vec<()>, String>>()?;
    Ok(items.len())
}

fn g6(g: &Graph) -> String {
    emit_graph6(g)
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn cr1_exact_suite(o: &Options) -> Outcome {
    let mut rng = StdRng::seed_from_u64(1);
    let max_n = o.n(7);
    let mut suite: Vec<Graph> = (0..200)
        .map(|_| {
            let n = rng.gen_range(1..=max_n);
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
        let k = cr1_exact(g).map_err(err)?.0;
        if want.is_some_and(|w| w != k) {
            return Err(format!("{}: got {k}, expected {want:?}", g6(g)));
        }
        suite.push(g.clone());
    }
    let n = each(&suite, |g| {
        let (k, d) = cr1_exact(g).map_err(err)?;
        let (want, shown) = (oracle::cr1(g), oracle::drawing_crossings(g, &d));
        if k != want || shown != k {
            return Err(format!(
                "{}: solver {k}, reference {want}, witness {shown}",
                g6(g)
            ));
        }
        Ok(())
    })?;
    Ok(format!("{n} graphs"))
}

fn cr2_exact_suite(o: &Options) -> Outcome {
    for (g, want) in [(named::complete(5), 1), (named::complete(4), 0)] {
        let k = cr2_exact(&g).map_err(err)?.0;
        if k != want {
            return Err(format!("{}: got {k}, expected {want}", g6(&g)));
        }
    }
    let suite = connected_graphs_up_to(o.n(6));
    let n = each(&suite, |g| {
        let (k, d) = cr2_exact(g).map_err(err)?;
        let (want, shown) = (oracle::cr2(g), oracle::drawing_crossings(g, &d));
        if k != want || shown != k {
            return Err(format!(
                "{}: solver {k}, reference {want}, witness {shown}",
                g6(g)
            ));
        }
        Ok(())
    })?;
    Ok(format!("{n} connected graphs"))
}

fn subhamiltonian(o: &Options) -> Outcome {
    let suite = connected_graphs_up_to(o.n(6));
    let n = each(&suite, |g| {
        let zero = cr2_exact(g).map_err(err)?.0 == 0;
        if zero != is_subhamiltonian(g) {
            return Err(format!("{}: cr2=0 is {zero}", g6(g)));
        }
        Ok(())
    })?;
    Ok(format!("{n} connected graphs"))
}

fn two_page_witness(o: &Options) -> Outcome {
    let mut suite = connected_graphs_up_to(o.n(5));
    suite.extend([
        named::complete(4),
        named::complete(5),
        named::complete_bipartite(2, 3),
        named::complete_bipartite(3, 3),
        named::cube(),
        named::prism(),
        named::wheel(5),
    ]);
    let n = each(&suite, |g| {
        let w = find_lemma8_witness(g).map_err(err)?;
        if let Some(p) = &w {
            if !check_lemma8(g, p).map_err(err)? {
                return Err(format!("{}: returned partition fails the check", g6(g)));
            }
        }
        let s = is_subhamiltonian(g);
        let z = cr2_exact(g).map_err(err)?.0 == 0;
        if w.is_some() != s || s != z {
            return Err(format!(
                "{}: witness {} subhamiltonian {s} cr2=0 {z}",
                g6(g),
                w.is_some()
            ));
        }
        Ok(())
    })?;
    Ok(format!("{n} graphs"))
}

fn one_page_witness(o: &Options) -> Outcome {
    let suite = all_graphs_up_to(o.n(6));
    let n = each(&suite, |g| {
        let cr = oracle::cr1(g);
        for k in 0..=2 {
            let w = find_lemma5_witness(g, k).map_err(err)?;
            if let Some(w) = &w {
                if !check_lemma5(g, w, k).map_err(err)? {
                    return Err(format!("{} k={k}: returned witness fails the check", g6(g)));
                }
            }
            if w.is_some() != (cr <= k) {
                return Err(format!(
                    "{} k={k}: witness {} but cr1={cr}",
                    g6(g),
                    w.is_some()
                ));
            }
        }
        Ok(())
    })?;
    Ok(format!("{n} graphs x k in {{0,1,2}}"))
}

fn formula_semantics(o: &Options) -> Outcome {
    let budget = o.eval_budget().without_intrinsics();
    let suite = all_graphs_up_to(o.n(6));
    let (k3, k4, k23) = (
        named::complete(3),
        named::complete(4),
        named::complete_bipartite(2, 3),
    );
    type Direct<'a> = (&'static str, Box<dyn Fn(&Graph) -> bool + Sync + 'a>);
    let direct: Vec<Direct> = vec![
        ("hamiltonian", Box::new(oracle::hamiltonian)),
        ("color-2", Box::new(|g| oracle::colorable(g, 2))),
        ("color-3", Box::new(|g| oracle::colorable(g, 3))),
        ("connected", Box::new(oracle::connected)),
        ("planar", Box::new(is_planar)),
        ("outerplanar", Box::new(is_outerplanar)),
        ("minor-K3", Box::new(|g| is_minor(g, &k3))),
        ("minor-K4", Box::new(|g| is_minor(g, &k4))),
        ("minor-K2,3", Box::new(|g| is_minor(g, &k23))),
    ];
    for (name, reference) in &direct {
        let f = build_basic(name).map_err(err)?;
        each(&suite, |g| {
            let got = eval_naive(g, &f, &Assignment::new(), &budget)
                .map_err(|e| format!("{name} on {}: {e}", g6(g)))?;
            if got != reference(g) {
                return Err(format!("{name} on {}: formula says {got}", g6(g)));
            }
            Ok(())
        })?;
    }
    Ok(format!(
        "{} properties x {} graphs",
        direct.len(),
        suite.len()
    ))
}

fn onepage_formula(o: &Options) -> Outcome {
    let budget = o.eval_budget();
    let suite = all_graphs_up_to(o.n(6));
    for k in 0..=1 {
        let f = build_onepage(k).map_err(err)?;
        each(&suite, |g| {
            let got = eval_naive(g, &f, &Assignment::new(), &budget)
                .map_err(|e| format!("k={k} {}: {e}", g6(g)))?;
            if got != (oracle::cr1(g) <= k) {
                return Err(format!("k={k} {}: formula says {got}", g6(g)));
            }
            Ok(())
        })?;
    }
    Ok(format!("{} graphs x k in {{0,1}}", suite.len()))
}

fn twopage_formula(o: &Options) -> Outcome {
    let budget = o.eval_budget();
    let f = build_twopage();
    let mut suite = all_graphs_up_to(o.n(5));
    suite.extend([
        named::complete(4),
        named::complete(5),
        named::complete_bipartite(2, 3),
        named::complete_bipartite(3, 3),
    ]);
    let n = each(&suite, |g| {
        let got = eval_naive(g, &f, &Assignment::new(), &budget)
            .map_err(|e| format!("{}: {e}", g6(g)))?;
        if got != (oracle::cr2(g) == 0) {
            return Err(format!("{}: formula says {got}", g6(g)));
        }
        Ok(())
    })?;
    Ok(format!("{n} graphs"))
}

fn zeta1_formula(o: &Options) -> Outcome {
    let budget = o.eval_budget();
    let f = build_zeta(1).map_err(err)?;
    let k6 = named::complete(6);
    let mut suite = vec![
        named::complete(5),
        k6.clone(),
        named::complete(4),
        named::complete_bipartite(3, 3),
        named::complete_bipartite(2, 3),
        named::wheel(5),
        named::prism(),
        named::complete_bipartite(3, 4),
        Graph::from_edges(6, &k6.edges()[1..]).map_err(err)?,
    ];
    let mut rng = StdRng::seed_from_u64(9);
    while suite.len() < 30 {
        let n = rng.gen_range(3..=o.n(5).max(3));
        let p = rng.gen_range(0.4..1.0);
        suite.push(random_graph(&mut rng, n, p));
    }
    let n = each(&suite, |g| {
        let got = eval_naive(g, &f, &Assignment::new(), &budget)
            .map_err(|e| format!("{}: {e}", g6(g)))?;
        let want = cr2_exact(g).map_err(err)?.0 <= 1;
        if got != want {
            return Err(format!("{}: formula says {got}, cr2<=1 is {want}", g6(g)));
        }
        Ok(())
    })?;
    Ok(format!("{n} graphs"))
}

fn engine_agreement(o: &Options) -> Outcome {
    let budget = o.eval_budget();
    let mut rng = StdRng::seed_from_u64(10);
    let max_n = o.n(10);
    let pairs: Vec<_> = (0..100)
        .map(|_| {
            let n = rng.gen_range(1..=max_n);
            let k = rng.gen_range(1..=3);
            let keep = rng.gen_range(0.5..1.0);
            let g = random_partial_ktree(&mut rng, n, k, keep);
            (g, random_formula(&mut rng, 3))
        })
        .collect();
    let n = each(&pairs, |(g, f)| {
        let (tw, td) = treewidth_exact(g).map_err(err)?;
        if tw > 3 || f.quantifier_rank() > 3 || f.has_interpreted() {
            return Err(format!("{}: generator exceeded its bounds", g6(g)));
        }
        let nice = make_nice(&td).map_err(err)?;
        let naive =
            eval_naive(g, f, &Assignment::new(), &budget).map_err(|e| format!("{}: {e}", g6(g)))?;
        let dp = eval_courcelle(g, f, &nice, &budget).map_err(|e| format!("{}: {e}", g6(g)))?;
        if dp != Verdict::from(naive) {
            return Err(format!(
                "{} {f}: naive {naive}, decomposition {dp:?}",
                g6(g)
            ));
        }
        Ok(())
    })?;
    Ok(format!("{n} pairs"))
}

fn clique_sums(o: &Options) -> Outcome {
    let mut rng = StdRng::seed_from_u64(11);
    let max_n = o.n(7);
    let mut cases = Vec::new();
    while cases.len() < 100 {
        let parts: Vec<Graph> = (0..2)
            .map(|_| {
                let n = rng.gen_range(1..=max_n);
                let k = rng.gen_range(1..=3);
                let keep = rng.gen_range(0.6..1.0);
                random_partial_ktree(&mut rng, n, k, keep)
            })
            .collect();
        let size = rng.gen_range(1..=4);
        let (c1, c2) = (
            oracle::cliques(&parts[0], size),
            oracle::cliques(&parts[1], size),
        );
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
        cases.push((parts, map, drop));
    }
    let n = each(&cases, |(parts, map, drop)| {
        let sum = clique_sum(&parts[0], &parts[1], map, *drop).map_err(err)?;
        let w0 = treewidth_exact(&parts[0]).map_err(err)?.0;
        let w1 = treewidth_exact(&parts[1]).map_err(err)?.0;
        let ws = treewidth_exact(&sum).map_err(err)?.0;
        if w0.max(w1) > 3 {
            return Err("generated part has width above 3".into());
        }
        if ws > w0.max(w1) {
            return Err(format!("{}: width {ws} above parts {w0}, {w1}", g6(&sum)));
        }
        Ok(())
    })?;
    Ok(format!("{n} sums"))
}

fn diagrams(_: &Options) -> Outcome {
    let mut summary = Vec::new();
    for k in 0..=2 {
        for pages in 1..=2u8 {
            let ds = enumerate_crossing_diagrams(k, pages).map_err(err)?;
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
            let want = oracle::diagram_count(k, pages);
            if ds.len() != want {
                return Err(format!(
                    "k={k} pages={pages}: {} diagrams, reference {want}",
                    ds.len()
                ));
            }
            summary.push(format!("k={k}/p={pages}:{}", ds.len()));
        }
    }
    Ok(summary.join(" "))
}

fn lemma4_report(o: &Options) -> Outcome {
    let r = treewidth_cr1_report(o.n(7)).map_err(err)?;
    for line in r.to_string().lines() {
        if line.starts_with('#') {
            say!("{line}");
        } else {
            say!("# {line}");
        }
    }
    Ok(format!("{} rows", r.rows.len()))
}
