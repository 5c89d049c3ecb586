//! End-to-end tests running the built binary: exit codes, report fields,
//! output determinism, and file round-trips.

use std::path::PathBuf;
use std::process::{Command, Output};
use std::sync::atomic::{AtomicUsize, Ordering};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_sigmarho")
}

static DIR_SEQ: AtomicUsize = AtomicUsize::new(0);

/// Scratch directory removed on drop.
struct Scratch(PathBuf);

impl Scratch {
    fn new() -> Scratch {
        let d = std::env::temp_dir().join(format!(
            "sigmarho-cli-test-{}-{}",
            std::process::id(),
            DIR_SEQ.fetch_add(1, Ordering::Relaxed)
        ));
        std::fs::create_dir_all(&d).unwrap();
        Scratch(d)
    }

    fn file(&self, name: &str, content: &str) -> String {
        let p = self.0.join(name);
        std::fs::write(&p, content).unwrap();
        p.to_str().unwrap().to_string()
    }

    fn path(&self, name: &str) -> String {
        self.0.join(name).to_str().unwrap().to_string()
    }
}

impl Drop for Scratch {
    fn drop(&mut self) {
        let _ = std::fs::remove_dir_all(&self.0);
    }
}

fn run(args: &[&str]) -> Output {
    Command::new(bin()).args(args).output().unwrap()
}

fn run_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(bin());
    cmd.args(args);
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("process exited")
}

fn field<'a>(report: &'a str, key: &str) -> Option<&'a str> {
    let prefix = format!("{key}: ");
    report.lines().find_map(|l| l.strip_prefix(prefix.as_str()))
}

const C5: &str = "p edge 5 5\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 1\n";
const P5: &str = "p edge 5 4\ne 1 2\ne 2 3\ne 3 4\ne 4 5\n";
const K33: &str = "p edge 6 9\ne 1 4\ne 1 5\ne 1 6\ne 2 4\ne 2 5\ne 2 6\ne 3 4\ne 3 5\ne 3 6\n";

#[test]
fn solve_p5_distance_two_dominating_set() {
    let s = Scratch::new();
    let g = s.file("p5.gr", P5);
    let o = run(&[
        "solve",
        "--graph",
        &g,
        "--problem",
        "dominating-set",
        "--distance",
        "2",
        "--dec-order",
        "1,2,3,4,5",
    ]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let rep = stdout(&o);
    assert_eq!(field(&rep, "feasible"), Some("yes"));
    assert_eq!(field(&rep, "value"), Some("1"));
    // the radius-2 center, reported 1-based
    assert_eq!(field(&rep, "witness"), Some("3"));
}

#[test]
fn solve_c5_perfect_code_infeasible() {
    let s = Scratch::new();
    let g = s.file("c5.gr", C5);
    let o = run(&[
        "solve", "--graph", &g, "--problem", "perfect-code", "--dec-order", "1..5",
    ]);
    assert_eq!(code(&o), 1);
    assert_eq!(field(&stdout(&o), "feasible"), Some("no"));
}

#[test]
fn distance_one_flag_is_identity() {
    let s = Scratch::new();
    let g = s.file("c5.gr", C5);
    let base = &[
        "solve", "--graph", &g, "--problem", "independent-set", "--dec-order", "1..5",
    ];
    let with_flag: Vec<&str> = base
        .iter()
        .copied()
        .chain(["--distance", "1"])
        .collect();
    assert_eq!(stdout(&run(base)), stdout(&run(&with_flag)));
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let s = Scratch::new();
    let g = s.file("c5.gr", C5);
    for args in [
        vec![
            "solve", "--graph", &g, "--problem", "dominating-set", "--dec-order", "1..5",
            "--stats",
        ],
        vec!["mimw", "--graph", &g, "--dec-order", "1..5"],
        vec!["oracle", "--graph", &g, "--problem", "dominating-set"],
    ] {
        let a = run(&args);
        let b = run(&args);
        assert_eq!(stdout(&a), stdout(&b));
        assert!(!stdout(&a).is_empty());
    }
}

#[test]
fn mimw_values_and_budget() {
    let s = Scratch::new();
    let k33 = s.file("k33.gr", K33);
    let o = run(&["mimw", "--graph", &k33, "--dec-order", "1..6"]);
    assert_eq!(code(&o), 0);
    assert_eq!(field(&stdout(&o), "mimw"), Some("1"));

    let c5 = s.file("c5.gr", C5);
    let o = run(&["mimw", "--graph", &c5, "--dec-order", "1..5"]);
    assert_eq!(field(&stdout(&o), "mimw"), Some("2"));

    // threads must not change the report
    let t4 = run(&["mimw", "--graph", &c5, "--dec-order", "1..5", "--threads", "4"]);
    let t1 = run(&["mimw", "--graph", &c5, "--dec-order", "1..5"]);
    assert_eq!(stdout(&t1), stdout(&t4));

    let o = run_env(
        &["mimw", "--graph", &c5, "--dec-order", "1..5"],
        &[("MIMW_BUDGET", "0")],
    );
    assert_eq!(code(&o), 3);

    let o = run_env(
        &["mimw", "--graph", &c5, "--dec-order", "1..5"],
        &[("MIMW_BUDGET", "pony")],
    );
    assert_eq!(code(&o), 2);
}

#[test]
fn power_round_trips() {
    let s = Scratch::new();
    let g = s.file("c5.gr", C5);
    // stdout form parses directly as a graph file: C5^2 = K5
    let o = run(&["power", "--graph", &g, "-k", "2"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.starts_with("# command: power"));
    let edge_lines = text.lines().filter(|l| l.starts_with("e ")).count();
    assert_eq!(edge_lines, 10);

    // file form
    let out = s.path("c5sq.gr");
    let o = run(&["power", "--graph", &g, "-k", "2", "-o", &out]);
    assert_eq!(code(&o), 0);
    let written = std::fs::read_to_string(&out).unwrap();
    assert!(written.contains("p edge 5 10"));

    // identity and bad exponent
    let o = run(&["power", "--graph", &g, "-k", "1"]);
    assert_eq!(stdout(&o).lines().filter(|l| l.starts_with("e ")).count(), 5);
    let o = run(&["power", "--graph", &g, "-k", "0"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn oracle_matches_known_c5_values() {
    let s = Scratch::new();
    let g = s.file("c5.gr", C5);
    let o = run(&["oracle", "--graph", &g, "--problem", "dominating-set"]);
    assert_eq!(code(&o), 0);
    let rep = stdout(&o);
    assert_eq!(field(&rep, "min"), Some("2"));
    assert_eq!(field(&rep, "max"), Some("5"));
    assert_eq!(field(&rep, "feasible-sizes"), Some("001111"));

    // flag-compatible with solve: decomposition flags accepted, unused
    let o = run(&[
        "oracle", "--graph", &g, "--problem", "dominating-set", "--dec-order", "1..5",
    ]);
    assert_eq!(code(&o), 0);
    assert_eq!(field(&stdout(&o), "min"), Some("2"));
}

#[test]
fn solve_and_oracle_agree_on_value() {
    let s = Scratch::new();
    let g = s.file("p5.gr", P5);
    for problem in ["independent-set", "total-dominating-set", "induced-matching"] {
        let sv = run(&[
            "solve", "--graph", &g, "--problem", problem, "--dec-order", "1..5",
        ]);
        let or = run(&["oracle", "--graph", &g, "--problem", problem]);
        let sv_rep = stdout(&sv);
        let or_rep = stdout(&or);
        assert_eq!(field(&sv_rep, "feasible"), field(&or_rep, "feasible"));
        let objective = field(&sv_rep, "objective").unwrap();
        let key = if objective == "max" { "max" } else { "min" };
        assert_eq!(field(&sv_rep, "value"), field(&or_rep, key), "{problem}");
    }
}

#[test]
fn gen_clique_gadget_emits_target_and_roles() {
    let s = Scratch::new();
    let prefix = s.path("cg");
    let o = run(&[
        "gen",
        "clique-gadget",
        "--k",
        "3",
        "--p",
        "2",
        "--d",
        "1",
        "--edge-prob",
        "1.0",
        "--seed",
        "7",
        "-o",
        &prefix,
    ]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let rep = stdout(&o);
    assert_eq!(field(&rep, "target"), Some("12"));
    assert_eq!(field(&rep, "expected"), Some("yes"));

    let meta = std::fs::read_to_string(s.path("cg.meta")).unwrap();
    assert!(meta.contains("construction clique-gadget"));
    assert!(meta.contains("target 12"));
    assert!(meta.contains("role 1 z[1][1]"));

    let graph_text = std::fs::read_to_string(s.path("cg.gr")).unwrap();
    let n: usize = field(&rep, "vertices").unwrap().parse().unwrap();
    assert!(graph_text.starts_with(&format!("p edge {n} ")));
    let role_lines = meta.lines().filter(|l| l.starts_with("role ")).count();
    assert_eq!(role_lines, n);
}

#[test]
fn gen_interval_output_solves_with_width_one() {
    let s = Scratch::new();
    let prefix = s.path("iv");
    let o = run(&["gen", "interval", "--n", "10", "--seed", "5", "-o", &prefix]);
    assert_eq!(code(&o), 0);
    let gr = s.path("iv.gr");
    let iv = s.path("iv.iv");
    let o = run(&["mimw", "--graph", &gr, "--dec-interval", &iv]);
    assert_eq!(code(&o), 0);
    let w: usize = field(&stdout(&o), "mimw").unwrap().parse().unwrap();
    assert!(w <= 1);

    let o = run(&[
        "solve", "--graph", &gr, "--problem", "dominating-set", "--dec-interval", &iv,
    ]);
    assert_eq!(code(&o), 0);
}

#[test]
fn gen_dec_validates_against_graph() {
    let s = Scratch::new();
    let g = s.file("c5.gr", C5);
    let prefix = s.path("t");
    run(&["gen", "dec", "--n", "5", "--seed", "3", "-o", &prefix]);
    let dec = s.path("t.dec");
    let o = run(&[
        "solve", "--graph", &g, "--problem", "independent-set", "--dec", &dec,
    ]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert_eq!(field(&stdout(&o), "value"), Some("2"));
}

#[test]
fn catalog_lists_all_rows() {
    let o = run(&["catalog"]);
    assert_eq!(code(&o), 0);
    let rep = stdout(&o);
    assert_eq!(field(&rep, "rows"), Some("16"));
    assert_eq!(
        field(&rep, "row dominating-set"),
        Some("sigma=N rho=N+ d=1 objective=min")
    );
    assert_eq!(
        field(&rep, "row d-dominating-set"),
        Some("sigma=N rho=>=2 d=2 objective=min param=d default=2")
    );
}

#[test]
fn matrix_solving_and_conflicts() {
    let s = Scratch::new();
    let g = s.file("c5.gr", C5);
    let col3 = s.file("col3.mat", "lcvp 3 1\n{0} N N\nN {0} N\nN N {0}\n");
    let col2 = s.file("col2.mat", "lcvp 2 1\n{0} N\nN {0}\n");

    let o = run(&["solve", "--graph", &g, "--matrix", &col3, "--dec-order", "1..5"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let labels = field(&stdout(&o), "labels").unwrap().to_string();
    assert_eq!(labels.split_whitespace().count(), 5);

    let o = run(&["solve", "--graph", &g, "--matrix", &col2, "--dec-order", "1..5"]);
    assert_eq!(code(&o), 1);

    // the matrix header carries the distance; the flag is rejected
    let o = run(&[
        "solve", "--graph", &g, "--matrix", &col3, "--dec-order", "1..5", "--distance", "2",
    ]);
    assert_eq!(code(&o), 2);
}

#[test]
fn custom_sigma_rho_flags() {
    let s = Scratch::new();
    let g = s.file("c5.gr", C5);
    // independent set spelled out by hand
    let o = run(&[
        "solve", "--graph", &g, "--sigma", "{0}", "--rho", "N", "--objective", "max",
        "--dec-order", "1..5",
    ]);
    assert_eq!(code(&o), 0);
    let rep = stdout(&o);
    assert_eq!(field(&rep, "problem"), Some("custom"));
    assert_eq!(field(&rep, "value"), Some("2"));
}

#[test]
fn usage_errors_exit_two() {
    let s = Scratch::new();
    let g = s.file("c5.gr", C5);
    // no decomposition source
    let o = run(&["solve", "--graph", &g, "--problem", "dominating-set"]);
    assert_eq!(code(&o), 2);
    // sigma without rho (clap-level requires)
    let o = run(&["solve", "--graph", &g, "--sigma", "{0}", "--dec-order", "1..5"]);
    assert_eq!(code(&o), 2);
    // two decomposition sources at once
    let o = run(&[
        "solve", "--graph", &g, "--problem", "dominating-set", "--dec-order", "1..5",
        "--dec", "x.dec",
    ]);
    assert_eq!(code(&o), 2);
    // unknown problem name
    let o = run(&["solve", "--graph", &g, "--problem", "nope", "--dec-order", "1..5"]);
    assert_eq!(code(&o), 2);
    // missing graph file
    let o = run(&[
        "solve", "--graph", &s.path("absent.gr"), "--problem", "dominating-set",
        "--dec-order", "1..5",
    ]);
    assert_eq!(code(&o), 2);
    // malformed order
    let o = run(&[
        "solve", "--graph", &g, "--problem", "dominating-set", "--dec-order", "1,2",
    ]);
    assert_eq!(code(&o), 2);
}

#[test]
fn stats_flag_adds_class_counts() {
    let s = Scratch::new();
    let g = s.file("p5.gr", P5);
    let o = run(&[
        "solve", "--graph", &g, "--problem", "dominating-set", "--dec-order", "1..5",
        "--stats",
    ]);
    let rep = stdout(&o);
    assert!(field(&rep, "max-inner-classes").is_some());
    assert!(field(&rep, "classes 1").is_some());
    let without = run(&[
        "solve", "--graph", &g, "--problem", "dominating-set", "--dec-order", "1..5",
    ]);
    assert!(field(&stdout(&without), "classes 1").is_none());
}
