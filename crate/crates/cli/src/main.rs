//! Command line front end: solving, brute-force oracles, width
//! measurement, graph powers, instance generation and the problem catalog.
//!
//! All vertex, tree-node and class indices printed or accepted here are
//! 1-based, matching the file formats. Reports are `key: value` lines on
//! stdout and are byte-identical across reruns on the same inputs; timing
//! goes to stderr.

use clap::{ArgGroup, Args, Parser, Subcommand};
use sigmarho::decomposition::{
    caterpillar_from_order, cut_mim_with_budget, interval_decomposition, parse_intervals,
    write_intervals, DecompositionTree, DEFAULT_MIM_BUDGET,
};
use sigmarho::generators::{
    d_domination_gadget, dominating_set_gadget, max_domination_gadget, random_decomposition,
    random_graph, random_interval_graph, random_partitioned_graph, total_dominating_set_gadget,
    GadgetInstance,
};
use sigmarho::graph::Graph;
use sigmarho::oracle::{brute_lcvp, brute_sigma_rho};
use sigmarho::problems::{
    catalog, catalog_lookup, ConstraintMatrix, Objective, Problem, SetSpec,
};
use sigmarho::solver::{DpEngine, LcvpEngine, LcvpObjective, SolveStats, SolverError};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

const EXIT_OK: u8 = 0;
const EXIT_INFEASIBLE: u8 = 1;
const EXIT_ERROR: u8 = 2;
const EXIT_BUDGET: u8 = 3;

enum CliError {
    /// Bad input or usage: exit 2.
    Msg(String),
    /// A search or table budget ran out: exit 3.
    Budget(String),
}

fn msg<T>(m: impl Into<String>) -> Result<T, CliError> {
    Err(CliError::Msg(m.into()))
}

impl From<SolverError> for CliError {
    fn from(e: SolverError) -> CliError {
        match e {
            SolverError::Budget(b) => CliError::Budget(b.to_string()),
            other => CliError::Msg(other.to_string()),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "sigmarho",
    version,
    about = "Neighborhood-constrained domination and vertex partitioning on decomposition trees"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve a problem on a graph along a decomposition tree
    Solve(SolveArgs),
    /// Brute-force reference answers for small graphs (same problem flags
    /// as solve; decomposition flags are accepted but unused)
    Oracle(SolveArgs),
    /// Per-cut induced matching sizes and their maximum
    Mimw(MimwArgs),
    /// Write the k-th power of a graph
    Power(PowerArgs),
    /// Generate instances
    Gen(GenArgs),
    /// List the built-in problem catalog
    Catalog,
}

#[derive(Args)]
#[command(group(ArgGroup::new("problemsrc").required(true).args(["problem", "sigma", "matrix"])))]
struct SolveArgs {
    /// Graph file
    #[arg(long, value_name = "FILE")]
    graph: PathBuf,
    /// Catalog problem name (see the catalog subcommand)
    #[arg(long, value_name = "NAME")]
    problem: Option<String>,
    /// Degree parameter for parameterized catalog rows
    #[arg(long, value_name = "D", requires = "problem")]
    param: Option<usize>,
    /// Count set for selected vertices: N, N+, {0,2}, co{1}, >=2
    #[arg(long, value_name = "SET", requires = "rho")]
    sigma: Option<String>,
    /// Count set for unselected vertices
    #[arg(long, value_name = "SET", requires = "sigma")]
    rho: Option<String>,
    /// Constraint matrix file for partition problems
    #[arg(long, value_name = "FILE")]
    matrix: Option<PathBuf>,
    /// min | max | exists (with --matrix: exists | min-class-1 | max-class-1)
    #[arg(long, value_name = "OBJ")]
    objective: Option<String>,
    /// Neighborhood distance r >= 1 (default 1; fixed by the file with --matrix)
    #[arg(long, value_name = "R")]
    distance: Option<usize>,
    /// Decomposition tree file
    #[arg(long, value_name = "FILE", group = "decsrc")]
    dec: Option<PathBuf>,
    /// Caterpillar vertex order, e.g. 3,1,2 or 1..8 (1-based)
    #[arg(long, value_name = "ORDER", group = "decsrc")]
    dec_order: Option<String>,
    /// Interval representation file; builds the caterpillar from it
    #[arg(long, value_name = "FILE", group = "decsrc")]
    dec_interval: Option<PathBuf>,
    /// Report equivalence-class counts per tree node
    #[arg(long)]
    stats: bool,
}

#[derive(Args)]
struct MimwArgs {
    /// Graph file
    #[arg(long, value_name = "FILE")]
    graph: PathBuf,
    /// Decomposition tree file
    #[arg(long, value_name = "FILE", group = "decsrc")]
    dec: Option<PathBuf>,
    /// Caterpillar vertex order, e.g. 3,1,2 or 1..8 (1-based)
    #[arg(long, value_name = "ORDER", group = "decsrc")]
    dec_order: Option<String>,
    /// Interval representation file; builds the caterpillar from it
    #[arg(long, value_name = "FILE", group = "decsrc")]
    dec_interval: Option<PathBuf>,
    /// Worker threads for the per-cut searches (output is unaffected)
    #[arg(long, value_name = "N", default_value_t = 1)]
    threads: usize,
}

#[derive(Args)]
struct PowerArgs {
    /// Graph file
    #[arg(long, value_name = "FILE")]
    graph: PathBuf,
    /// Power exponent, k >= 1
    #[arg(short, long)]
    k: usize,
    /// Output file; without it the graph goes to stdout after the
    /// '#'-prefixed report
    #[arg(short, long, value_name = "FILE")]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct GenArgs {
    #[command(subcommand)]
    what: GenCommand,
}

#[derive(Args)]
struct SourceArgs {
    /// Number of classes in the multicolored source
    #[arg(long, value_name = "K")]
    k: usize,
    /// Vertices per class
    #[arg(long, value_name = "P")]
    p: usize,
    /// Probability of each cross-class source edge
    #[arg(long, value_name = "Q", default_value_t = 0.5)]
    edge_prob: f64,
    /// Random seed
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output path prefix (writes PREFIX.gr and PREFIX.meta)
    #[arg(short, long, value_name = "PREFIX")]
    output: PathBuf,
}

#[derive(Subcommand)]
enum GenCommand {
    /// Maximum-domination instance from a multicolored clique source
    CliqueGadget {
        #[command(flatten)]
        source: SourceArgs,
        /// Degree parameter d >= 1 of the produced instance
        #[arg(long, default_value_t = 1)]
        d: usize,
    },
    /// Dominating-set instance from a multicolored independent-set source
    DomsetGadget {
        #[command(flatten)]
        source: SourceArgs,
    },
    /// Total-dominating-set instance from an independent-set source
    TotalDomsetGadget {
        #[command(flatten)]
        source: SourceArgs,
    },
    /// Distance-degree domination instance from an independent-set source
    DdomGadget {
        #[command(flatten)]
        source: SourceArgs,
        /// Degree parameter d >= 2 of the produced instance
        #[arg(long, default_value_t = 2)]
        d: usize,
    },
    /// Random graph (writes PREFIX.gr)
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long, value_name = "Q", default_value_t = 0.5)]
        edge_prob: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long, value_name = "PREFIX")]
        output: PathBuf,
    },
    /// Random interval graph (writes PREFIX.gr and PREFIX.iv)
    Interval {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long, value_name = "PREFIX")]
        output: PathBuf,
    },
    /// Random subcubic decomposition tree (writes PREFIX.dec)
    Dec {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long, value_name = "PREFIX")]
        output: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let result = match &cli.command {
        Command::Solve(a) => cmd_solve(a, false),
        Command::Oracle(a) => cmd_solve(a, true),
        Command::Mimw(a) => cmd_mimw(a),
        Command::Power(a) => cmd_power(a),
        Command::Gen(a) => cmd_gen(a),
        Command::Catalog => cmd_catalog(),
    };
    match result {
        Ok((report, code)) => {
            print!("{report}");
            eprintln!("elapsed: {:?}", start.elapsed());
            ExitCode::from(code)
        }
        Err(CliError::Msg(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_ERROR)
        }
        Err(CliError::Budget(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_BUDGET)
        }
    }
}

fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

fn line(out: &mut String, key: &str, value: impl std::fmt::Display) {
    writeln!(out, "{key}: {value}").unwrap();
}

fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).or_else(|e| msg(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, content: &str) -> Result<(), CliError> {
    std::fs::write(path, content).or_else(|e| msg(format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path, out: &mut String) -> Result<Graph, CliError> {
    let text = read_file(path)?;
    let g = Graph::parse(&text).or_else(|e| msg(format!("{}: {e}", path.display())))?;
    line(out, "graph", path.display());
    line(out, "graph-digest", format_args!("{:016x}", fnv1a64(text.as_bytes())));
    line(out, "vertices", g.n());
    line(out, "edges", g.m());
    Ok(g)
}

/// Expand an order spec: comma-separated 1-based vertices or a..b ranges
/// (descending when a > b), forming a permutation of 1..n.
fn parse_order(spec: &str, n: usize) -> Result<Vec<usize>, CliError> {
    let mut order = Vec::new();
    let mut push = |v: usize| -> Result<(), CliError> {
        if v == 0 || v > n {
            return msg(format!("order vertex {v} out of range 1..{n}"));
        }
        order.push(v - 1);
        Ok(())
    };
    for token in spec.split(',') {
        let token = token.trim();
        if let Some((a, b)) = token.split_once("..") {
            let a: usize = a.trim().parse().or_else(|_| msg(format!("bad range start {a:?}")))?;
            let b: usize = b.trim().parse().or_else(|_| msg(format!("bad range end {b:?}")))?;
            if a <= b {
                for v in a..=b {
                    push(v)?;
                }
            } else {
                for v in (b..=a).rev() {
                    push(v)?;
                }
            }
        } else {
            let v: usize = token.parse().or_else(|_| msg(format!("bad order token {token:?}")))?;
            push(v)?;
        }
    }
    Ok(order)
}

struct DecSource<'a> {
    dec: &'a Option<PathBuf>,
    dec_order: &'a Option<String>,
    dec_interval: &'a Option<PathBuf>,
}

/// Resolve the decomposition tree from whichever flag was given, reporting
/// its source and the digest of its canonical serialization.
fn resolve_dec(src: &DecSource, g: &Graph, out: &mut String) -> Result<DecompositionTree, CliError> {
    let dec = if let Some(path) = src.dec {
        let text = read_file(path)?;
        let dec = DecompositionTree::parse(&text)
            .or_else(|e| msg(format!("{}: {e}", path.display())))?;
        line(out, "dec-source", format_args!("file {}", path.display()));
        dec
    } else if let Some(spec) = src.dec_order {
        let order = parse_order(spec, g.n())?;
        let dec = caterpillar_from_order(&order).or_else(|e| msg(e.to_string()))?;
        line(out, "dec-source", format_args!("order {spec}"));
        dec
    } else if let Some(path) = src.dec_interval {
        let text = read_file(path)?;
        let intervals =
            parse_intervals(&text).or_else(|e| msg(format!("{}: {e}", path.display())))?;
        let dec = interval_decomposition(g, &intervals)
            .or_else(|e| msg(format!("{}: {e}", path.display())))?;
        line(out, "dec-source", format_args!("interval {}", path.display()));
        dec
    } else {
        return msg("one of --dec, --dec-order, --dec-interval is required");
    };
    dec.validate(g).or_else(|e| msg(e.to_string()))?;
    line(out, "dec-digest", format_args!("{:016x}", fnv1a64(dec.write().as_bytes())));
    Ok(dec)
}

enum Task {
    SigmaRho(Problem),
    Lcvp(ConstraintMatrix, LcvpObjective),
}

fn resolve_task(args: &SolveArgs, out: &mut String) -> Result<Task, CliError> {
    if let Some(path) = &args.matrix {
        if args.distance.is_some() {
            return msg("--distance conflicts with --matrix; the matrix header fixes the distance");
        }
        let text = read_file(path)?;
        let matrix =
            ConstraintMatrix::parse(&text).or_else(|e| msg(format!("{}: {e}", path.display())))?;
        let objective = match &args.objective {
            None => LcvpObjective::Exists,
            Some(s) => s.parse().map_err(|e| CliError::Msg(format!("{e}")))?,
        };
        line(out, "problem", "matrix");
        line(out, "matrix", path.display());
        line(out, "q", matrix.q());
        line(out, "objective", objective);
        line(out, "distance", matrix.r());
        line(out, "d", matrix.d_value());
        return Ok(Task::Lcvp(matrix, objective));
    }

    let objective: Option<Objective> = match &args.objective {
        None => None,
        Some(s) => Some(s.parse().map_err(|e| CliError::Msg(format!("{e}")))?),
    };
    let problem = if let Some(name) = &args.problem {
        let mut p = catalog_lookup(name, args.param).or_else(|e| msg(e.to_string()))?;
        if let Some(o) = objective {
            p.objective = o;
        }
        p
    } else {
        let sigma: SetSpec = args
            .sigma
            .as_deref()
            .unwrap()
            .parse()
            .map_err(|e| CliError::Msg(format!("--sigma: {e}")))?;
        let rho: SetSpec = args
            .rho
            .as_deref()
            .unwrap()
            .parse()
            .map_err(|e| CliError::Msg(format!("--rho: {e}")))?;
        Problem::new(sigma, rho, objective.unwrap_or(Objective::Minimize))
    };
    let r = args.distance.unwrap_or(1);
    if r < 1 {
        return msg("distance must be at least 1");
    }
    line(out, "problem", problem.name.as_deref().unwrap_or("custom"));
    line(out, "sigma", &problem.sigma);
    line(out, "rho", &problem.rho);
    line(out, "objective", problem.objective);
    line(out, "distance", r);
    line(out, "d", problem.d_value());
    Ok(Task::SigmaRho(problem))
}

fn fmt_vertices(vs: impl IntoIterator<Item = usize>) -> String {
    vs.into_iter()
        .map(|v| (v + 1).to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn emit_stats(out: &mut String, stats: &SolveStats, counts: &[(usize, usize)]) {
    line(out, "tree-nodes", stats.nodes);
    line(out, "max-inner-classes", stats.max_inner_classes);
    line(out, "max-outer-classes", stats.max_outer_classes);
    line(out, "total-inner-classes", stats.total_inner_classes);
    line(out, "total-outer-classes", stats.total_outer_classes);
    for (i, (inner, outer)) in counts.iter().enumerate() {
        line(out, &format!("classes {}", i + 1), format_args!("{inner} {outer}"));
    }
}

fn cmd_solve(args: &SolveArgs, brute: bool) -> Result<(String, u8), CliError> {
    let mut out = String::new();
    line(&mut out, "command", if brute { "oracle" } else { "solve" });
    let g = load_graph(&args.graph, &mut out)?;

    let dec = if brute {
        if args.dec.is_some() || args.dec_order.is_some() || args.dec_interval.is_some() {
            eprintln!("note: the oracle ignores decomposition flags");
        }
        None
    } else {
        let src = DecSource {
            dec: &args.dec,
            dec_order: &args.dec_order,
            dec_interval: &args.dec_interval,
        };
        Some(resolve_dec(&src, &g, &mut out)?)
    };

    let task = resolve_task(args, &mut out)?;
    let code = match task {
        Task::SigmaRho(p) => {
            let r = args.distance.unwrap_or(1);
            if brute {
                let o = brute_sigma_rho(&g, &p.sigma, &p.rho, r)
                    .map_err(|e| CliError::Budget(e.to_string()))?;
                line(&mut out, "feasible", if o.exists { "yes" } else { "no" });
                match o.min {
                    Some(v) => line(&mut out, "min", v),
                    None => line(&mut out, "min", "-"),
                }
                match o.max {
                    Some(v) => line(&mut out, "max", v),
                    None => line(&mut out, "max", "-"),
                }
                if let Some(w) = &o.min_witness {
                    line(&mut out, "min-witness", fmt_vertices(w.iter()));
                }
                if let Some(w) = &o.max_witness {
                    line(&mut out, "max-witness", fmt_vertices(w.iter()));
                }
                let sizes: String = o
                    .feasible_sizes
                    .iter()
                    .map(|&b| if b { '1' } else { '0' })
                    .collect();
                line(&mut out, "feasible-sizes", sizes);
                if o.exists {
                    EXIT_OK
                } else {
                    EXIT_INFEASIBLE
                }
            } else {
                let power;
                let g2 = if r > 1 {
                    power = g.power(r);
                    &power
                } else {
                    &g
                };
                let dec = dec.as_ref().unwrap();
                let engine = DpEngine::new(g2, dec, p.d_value())?;
                let sol = engine.solve(&p.sigma, &p.rho, p.objective);
                line(&mut out, "feasible", if sol.feasible { "yes" } else { "no" });
                if let Some(v) = sol.value {
                    line(&mut out, "value", v);
                }
                if let Some(w) = &sol.witness {
                    line(&mut out, "witness", fmt_vertices(w.iter()));
                }
                if args.stats {
                    emit_stats(&mut out, engine.stats(), &engine.class_counts());
                }
                if sol.feasible {
                    EXIT_OK
                } else {
                    EXIT_INFEASIBLE
                }
            }
        }
        Task::Lcvp(matrix, objective) => {
            if brute {
                let o = brute_lcvp(&g, &matrix)
                    .map_err(|e| CliError::Budget(e.to_string()))?;
                line(&mut out, "feasible", if o.exists { "yes" } else { "no" });
                match o.min {
                    Some(v) => line(&mut out, "min-class-1", v),
                    None => line(&mut out, "min-class-1", "-"),
                }
                match o.max {
                    Some(v) => line(&mut out, "max-class-1", v),
                    None => line(&mut out, "max-class-1", "-"),
                }
                if let Some(w) = &o.min_witness {
                    line(&mut out, "min-labels", fmt_vertices(w.iter().copied()));
                }
                if let Some(w) = &o.max_witness {
                    line(&mut out, "max-labels", fmt_vertices(w.iter().copied()));
                }
                if o.exists {
                    EXIT_OK
                } else {
                    EXIT_INFEASIBLE
                }
            } else {
                let power;
                let g2 = if matrix.r() > 1 {
                    power = g.power(matrix.r());
                    &power
                } else {
                    &g
                };
                let dec = dec.as_ref().unwrap();
                let engine = LcvpEngine::new(g2, dec, matrix.q(), matrix.d_value())?;
                let sol = engine.solve(&matrix, objective);
                line(&mut out, "feasible", if sol.feasible { "yes" } else { "no" });
                if let Some(v) = sol.value {
                    line(&mut out, "class-1-size", v);
                }
                if let Some(labels) = &sol.witness {
                    line(&mut out, "labels", fmt_vertices(labels.iter().copied()));
                }
                if args.stats {
                    emit_stats(&mut out, engine.stats(), &engine.class_counts());
                }
                if sol.feasible {
                    EXIT_OK
                } else {
                    EXIT_INFEASIBLE
                }
            }
        }
    };
    line(&mut out, "exit", code);
    Ok((out, code))
}

fn mimw_budget() -> Result<u64, CliError> {
    match std::env::var("MIMW_BUDGET") {
        Ok(s) => s
            .parse()
            .or_else(|_| msg(format!("MIMW_BUDGET must be an integer, got {s:?}"))),
        Err(_) => Ok(DEFAULT_MIM_BUDGET),
    }
}

fn cmd_mimw(args: &MimwArgs) -> Result<(String, u8), CliError> {
    let mut out = String::new();
    line(&mut out, "command", "mimw");
    let g = load_graph(&args.graph, &mut out)?;
    let src = DecSource {
        dec: &args.dec,
        dec_order: &args.dec_order,
        dec_interval: &args.dec_interval,
    };
    let dec = resolve_dec(&src, &g, &mut out)?;
    let budget = mimw_budget()?;
    line(&mut out, "budget", budget);
    if args.threads < 1 {
        return msg("--threads must be at least 1");
    }

    let compute = |edge: &(usize, usize)| -> Result<usize, CliError> {
        let side = dec.cut_of_edge(*edge);
        cut_mim_with_budget(&g, &side, budget).map_err(|e| CliError::Budget(e.to_string()))
    };
    let mims: Vec<usize> = if args.threads == 1 {
        let mut v = Vec::with_capacity(dec.edges().len());
        for edge in dec.edges() {
            v.push(compute(edge)?);
        }
        v
    } else {
        use rayon::prelude::*;
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(args.threads)
            .build()
            .or_else(|e| msg(e.to_string()))?;
        pool.install(|| dec.edges().par_iter().map(compute).collect::<Result<_, _>>())?
    };

    let mut mimw = 0;
    for (edge, mim) in dec.edges().iter().zip(&mims) {
        line(
            &mut out,
            &format!("cut {}-{}", edge.0 + 1, edge.1 + 1),
            mim,
        );
        mimw = mimw.max(*mim);
    }
    line(&mut out, "mimw", mimw);
    line(&mut out, "exit", EXIT_OK);
    Ok((out, EXIT_OK))
}

fn cmd_power(args: &PowerArgs) -> Result<(String, u8), CliError> {
    let mut out = String::new();
    line(&mut out, "command", "power");
    let g = load_graph(&args.graph, &mut out)?;
    if args.k < 1 {
        return msg("power exponent must be at least 1");
    }
    let p = g.power(args.k);
    line(&mut out, "k", args.k);
    line(&mut out, "power-edges", p.m());
    let text = p.write();
    match &args.output {
        Some(path) => {
            write_file(path, &text)?;
            line(&mut out, "wrote", path.display());
            line(&mut out, "exit", EXIT_OK);
            Ok((out, EXIT_OK))
        }
        None => {
            line(&mut out, "exit", EXIT_OK);
            // report as comment lines, then the graph itself: the output
            // stream parses directly as a graph file
            let mut full = String::new();
            for l in out.lines() {
                writeln!(full, "# {l}").unwrap();
            }
            full.push_str(&text);
            Ok((full, EXIT_OK))
        }
    }
}

fn emit_gadget(
    out: &mut String,
    construction: &str,
    inst: &GadgetInstance,
    d: Option<usize>,
    source: &SourceArgs,
) -> Result<(), CliError> {
    line(out, "construction", construction);
    line(out, "k", inst.k);
    line(out, "p", inst.p);
    if let Some(d) = d {
        line(out, "d", d);
    }
    line(out, "seed", source.seed);
    line(out, "edge-prob", source.edge_prob);
    line(out, "vertices", inst.graph.n());
    line(out, "edges", inst.graph.m());
    line(out, "sigma", &inst.sigma);
    line(out, "rho", &inst.rho);
    line(out, "target", inst.target_size);
    line(out, "expected", if inst.expected { "yes" } else { "no" });

    let gr_path = source.output.with_extension("gr");
    write_file(&gr_path, &inst.graph.write())?;
    line(out, "wrote", gr_path.display());

    let mut meta = String::new();
    writeln!(meta, "construction {construction}").unwrap();
    writeln!(meta, "k {}", inst.k).unwrap();
    writeln!(meta, "p {}", inst.p).unwrap();
    if let Some(d) = d {
        writeln!(meta, "d {d}").unwrap();
    }
    writeln!(meta, "sigma {}", inst.sigma).unwrap();
    writeln!(meta, "rho {}", inst.rho).unwrap();
    writeln!(meta, "target {}", inst.target_size).unwrap();
    writeln!(meta, "expected {}", if inst.expected { "yes" } else { "no" }).unwrap();
    for (v, role) in inst.roles.iter().enumerate() {
        writeln!(meta, "role {} {role}", v + 1).unwrap();
    }
    let meta_path = source.output.with_extension("meta");
    write_file(&meta_path, &meta)?;
    line(out, "wrote", meta_path.display());
    Ok(())
}

fn cmd_gen(args: &GenArgs) -> Result<(String, u8), CliError> {
    let mut out = String::new();
    line(&mut out, "command", "gen");
    match &args.what {
        GenCommand::CliqueGadget { source, d } => {
            let pg = random_partitioned_graph(&vec![source.p; source.k], source.edge_prob, source.seed);
            let inst = max_domination_gadget(&pg, *d).or_else(|e| msg(e.to_string()))?;
            emit_gadget(&mut out, "clique-gadget", &inst, Some(*d), source)?;
        }
        GenCommand::DomsetGadget { source } => {
            let pg = random_partitioned_graph(&vec![source.p; source.k], source.edge_prob, source.seed);
            let inst = dominating_set_gadget(&pg).or_else(|e| msg(e.to_string()))?;
            emit_gadget(&mut out, "domset-gadget", &inst, None, source)?;
        }
        GenCommand::TotalDomsetGadget { source } => {
            let pg = random_partitioned_graph(&vec![source.p; source.k], source.edge_prob, source.seed);
            let inst = total_dominating_set_gadget(&pg).or_else(|e| msg(e.to_string()))?;
            emit_gadget(&mut out, "total-domset-gadget", &inst, None, source)?;
        }
        GenCommand::DdomGadget { source, d } => {
            let pg = random_partitioned_graph(&vec![source.p; source.k], source.edge_prob, source.seed);
            let inst = d_domination_gadget(&pg, *d).or_else(|e| msg(e.to_string()))?;
            emit_gadget(&mut out, "ddom-gadget", &inst, Some(*d), source)?;
        }
        GenCommand::Random {
            n,
            edge_prob,
            seed,
            output,
        } => {
            let g = random_graph(*n, *edge_prob, *seed);
            line(&mut out, "construction", "random");
            line(&mut out, "seed", seed);
            line(&mut out, "edge-prob", edge_prob);
            line(&mut out, "vertices", g.n());
            line(&mut out, "edges", g.m());
            let path = output.with_extension("gr");
            write_file(&path, &g.write())?;
            line(&mut out, "wrote", path.display());
        }
        GenCommand::Interval { n, seed, output } => {
            let (g, intervals) = random_interval_graph(*n, *seed);
            line(&mut out, "construction", "interval");
            line(&mut out, "seed", seed);
            line(&mut out, "vertices", g.n());
            line(&mut out, "edges", g.m());
            let path = output.with_extension("gr");
            write_file(&path, &g.write())?;
            line(&mut out, "wrote", path.display());
            let iv_path = output.with_extension("iv");
            write_file(&iv_path, &write_intervals(&intervals))?;
            line(&mut out, "wrote", iv_path.display());
        }
        GenCommand::Dec { n, seed, output } => {
            if *n < 1 {
                return msg("decomposition needs at least one vertex");
            }
            let dec = random_decomposition(*n, *seed);
            line(&mut out, "construction", "dec");
            line(&mut out, "seed", seed);
            line(&mut out, "vertices", n);
            line(&mut out, "tree-nodes", dec.num_nodes());
            let path = output.with_extension("dec");
            write_file(&path, &dec.write())?;
            line(&mut out, "wrote", path.display());
        }
    }
    line(&mut out, "exit", EXIT_OK);
    Ok((out, EXIT_OK))
}

fn cmd_catalog() -> Result<(String, u8), CliError> {
    let mut out = String::new();
    line(&mut out, "command", "catalog");
    line(&mut out, "rows", catalog().len());
    for row in catalog() {
        let p = catalog_lookup(row.name, None).expect("catalog row resolves");
        let mut value = format!(
            "sigma={} rho={} d={} objective={}",
            p.sigma,
            p.rho,
            p.d_value(),
            p.objective
        );
        if row.parameterized {
            write!(value, " param=d default={}", row.default_param).unwrap();
        }
        line(&mut out, &format!("row {}", row.name), value);
    }
    line(&mut out, "exit", EXIT_OK);
    Ok((out, EXIT_OK))
}
