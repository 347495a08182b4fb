use bookcross::mso::build::build_basic;
use bookcross::mso::parse_formula;
use std::io::Write;
use std::process::{Command, Output, Stdio};

const K5: &str = "0 1\n0 2\n0 3\n0 4\n1 2\n1 3\n1 4\n2 3\n2 4\n3 4\n";

fn run(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_bookcross"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn tmp(name: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("bookcross-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn cr1_of_k4_from_graph6() {
    let o = run(&["cr1", "--format", "graph6", "-"], "C~\n");
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "k=1\n");
}

#[test]
fn cr_commands_write_witnesses() {
    let path = tmp("k5.drawing");
    let o = run(&["cr2", "--out", path.to_str().unwrap(), "--cut", "3"], K5);
    assert_eq!(stdout(&o), "k=1\n");
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("order: 3 "), "{text}");
}

#[test]
fn planar2_on_k5() {
    let o = run(&["planar2", "--format", "edgelist"], K5);
    assert_eq!((stdout(&o).as_str(), o.status.code()), ("no\n", Some(0)));
    let o = run(&["planar2", "--strict"], K5);
    assert_eq!((stdout(&o).as_str(), o.status.code()), ("no\n", Some(1)));
    let o = run(&["planar2", "--strict"], "C~");
    assert_eq!((stdout(&o).as_str(), o.status.code()), ("yes\n", Some(0)));
}

#[test]
fn formula_round_trips() {
    let o = run(&["formula", "--name", "hamiltonian"], "");
    assert_eq!(o.status.code(), Some(0));
    let parsed = parse_formula(stdout(&o).trim()).expect("parseable");
    assert_eq!(parsed, build_basic("hamiltonian").unwrap());
}

#[test]
fn mso_check_reports_engine() {
    let o = run(&["mso-check", "--name", "twopage"], "C~");
    assert_eq!(stdout(&o), "true\nengine=naive\n");
    let path = tmp("connected.mso");
    std::fs::write(
        &path,
        "(forall-v x (forall-v y (exists-e e (or (= x y) (not (= x y))))))",
    )
    .unwrap();
    let o = run(&["mso-check", "--formula", path.to_str().unwrap()], "C~");
    assert_eq!(stdout(&o), "true\nengine=courcelle\n");
    let o = run(
        &[
            "mso-check",
            "--name",
            "hamiltonian",
            "--engine",
            "courcelle",
            "--rank",
            "1",
        ],
        "C~",
    );
    assert_eq!(stdout(&o), "unsupported\nengine=courcelle\n");
    let o = run(&["mso-check", "--name", "outerplanar", "--strict"], "C~");
    assert_eq!(
        (stdout(&o).as_str(), o.status.code()),
        ("false\nengine=naive\n", Some(1))
    );
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["frobnicate"], "").status.code(), Some(2));
    assert_eq!(
        run(&["cr1", "--format", "dimacs"], "C~").status.code(),
        Some(2)
    );
    assert_eq!(run(&["cr1", "--max-n", "3"], "C~").status.code(), Some(2));
    assert_eq!(run(&["cr1"], "not a graph at all").status.code(), Some(2));
    assert_eq!(
        run(&["formula", "--name", "zeta-2"], "").status.code(),
        Some(2)
    );
    assert_eq!(run(&["verify", "no-such-suite"], "").status.code(), Some(2));
    let o = run(
        &[
            "mso-check",
            "--name",
            "onepage-1",
            "--engine",
            "naive",
            "--budget-ms",
            "1",
            "--no-intrinsics",
        ],
        "K~~~~~~~~~~~",
    );
    assert_eq!(o.status.code(), Some(3), "{}", stdout(&o));
}

#[test]
fn diagrams_are_listed_canonically() {
    let o = run(&["diagrams", "--max-k", "1"], "");
    let lines: Vec<String> = stdout(&o).lines().map(String::from).collect();
    assert_eq!(lines.len(), 3);
    assert!(lines[0].starts_with("k=0"));
    let o = run(&["diagrams", "--max-k", "1", "--pages", "1"], "");
    assert_eq!(stdout(&o).lines().count(), 2);
}

#[test]
fn render_writes_svg() {
    let path = tmp("k4.svg");
    let o = run(
        &["render", "--pages", "2", "--out", path.to_str().unwrap()],
        "C~",
    );
    assert_eq!(o.status.code(), Some(0));
    assert!(std::fs::read_to_string(&path).unwrap().starts_with("<svg"));
}

#[test]
fn treewidth_and_outerplanar() {
    assert_eq!(stdout(&run(&["treewidth"], "C~")), "tw=3\n");
    assert_eq!(
        stdout(&run(&["outerplanar"], "0 1\n1 2\n2 3\n3 0\n")),
        "yes\n"
    );
}

#[test]
fn verify_suites() {
    let o = run(&["verify", "--list"], "");
    assert_eq!(stdout(&o).lines().count(), 13);
    let o = run(&["verify", "lemma4-report"], "");
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(
        out.lines().any(|l| l.starts_with("lemma4-report\tPASS")),
        "{out}"
    );
    let o = run(&["verify", "diagrams"], "");
    assert!(stdout(&o).contains("diagrams\tPASS"));
}

#[test]
fn output_is_deterministic() {
    let a = stdout(&run(&["verify", "subhamiltonian", "--max-n", "5"], ""));
    let b = stdout(&run(&["verify", "subhamiltonian", "--max-n", "5"], ""));
    assert_eq!(a, b);
    assert!(a.contains("subhamiltonian\tPASS"));
}
