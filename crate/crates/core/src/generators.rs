//! Instance builders: hardness-gadget reductions from multicolored clique
//! and multicolored independent set, plus seeded random graphs,
//! decompositions and interval representations.

use crate::decomposition::DecompositionTree;
use crate::graph::{Graph, VertexSet};
use crate::problems::SetSpec;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Error, Debug, PartialEq, Eq)]
pub enum GeneratorError {
    #[error("classes do not partition the vertex set")]
    NotAPartition,
    #[error("construction needs at least {min} classes, got {k}")]
    TooFewClasses { k: usize, min: usize },
    #[error("construction needs degree parameter at least {min}, got {d}")]
    DegreeTooSmall { d: usize, min: usize },
    #[error("every class must be nonempty")]
    EmptyClass,
}

/// A graph with its vertex set split into labeled classes, the shape both
/// multicolored source problems work on.
#[derive(Debug, Clone)]
pub struct PartitionedGraph {
    pub graph: Graph,
    pub classes: Vec<VertexSet>,
}

impl PartitionedGraph {
    pub fn new(graph: Graph, classes: Vec<VertexSet>) -> Result<PartitionedGraph, GeneratorError> {
        let mut seen = VertexSet::empty(graph.n());
        for c in &classes {
            if c.intersects(&seen) {
                return Err(GeneratorError::NotAPartition);
            }
            seen.union_with(c);
        }
        if seen.len() != graph.n() {
            return Err(GeneratorError::NotAPartition);
        }
        Ok(PartitionedGraph { graph, classes })
    }

    pub fn k(&self) -> usize {
        self.classes.len()
    }
}

/// How padding vertices attach when classes are brought to equal size.
/// Isolated pads never join a multicolored clique; pads adjacent to every
/// vertex of the other classes never join a multicolored independent set.
/// Either way the source answer is preserved.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PadMode {
    Isolated,
    CrossAdjacent,
}

/// Grow every class to the size of the largest one by appending fresh
/// vertices wired according to the mode.
pub fn pad_partition(pg: &PartitionedGraph, mode: PadMode) -> PartitionedGraph {
    let p = pg.classes.iter().map(|c| c.len()).max().unwrap_or(0);
    let extra: usize = pg.classes.iter().map(|c| p - c.len()).sum();
    let n = pg.graph.n() + extra;
    let mut g = Graph::empty(n);
    for (u, v) in pg.graph.edges() {
        g.add_edge(u, v);
    }
    let mut classes: Vec<VertexSet> = pg
        .classes
        .iter()
        .map(|c| VertexSet::from_iter(n, c.iter()))
        .collect();
    let mut next = pg.graph.n();
    for i in 0..classes.len() {
        while classes[i].len() < p {
            if mode == PadMode::CrossAdjacent {
                for (j, other) in classes.iter().enumerate() {
                    if j != i {
                        for u in other.iter() {
                            g.add_edge(next, u);
                        }
                    }
                }
            }
            classes[i].insert(next);
            next += 1;
        }
    }
    PartitionedGraph { graph: g, classes }
}

/// Does the graph contain a clique picking exactly one vertex per class?
/// Plain enumeration of all one-per-class tuples.
pub fn has_multicolored_clique(pg: &PartitionedGraph) -> bool {
    multicolored_search(pg, true)
}

/// Does the graph contain an independent set picking exactly one vertex per
/// class?
pub fn has_multicolored_independent_set(pg: &PartitionedGraph) -> bool {
    multicolored_search(pg, false)
}

fn multicolored_search(pg: &PartitionedGraph, want_adjacent: bool) -> bool {
    fn rec(pg: &PartitionedGraph, want: bool, chosen: &mut Vec<usize>) -> bool {
        let i = chosen.len();
        if i == pg.classes.len() {
            return true;
        }
        for v in pg.classes[i].iter() {
            if chosen.iter().all(|&u| pg.graph.adjacent(u, v) == want) {
                chosen.push(v);
                if rec(pg, want, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    let mut chosen = Vec::new();
    rec(pg, want_adjacent, &mut chosen)
}

/// The shared core of all reductions: a selector clique Z(i) per class, an
/// edge-selector clique R(i,j) per class pair holding one vertex for each
/// cross edge, and the crossing adjacency z_h ~ r_(s,t) exactly when the
/// selector index differs (h != s on the i side, h != t on the j side).
struct Core {
    graph: Graph,
    roles: Vec<String>,
    /// z[i][s]: vertex of the s-th member of class i
    z: Vec<Vec<usize>>,
    /// one entry per class pair i < j in lex order: the pair and its
    /// edge-selector vertices with their (s, t) indices
    r_sets: Vec<((usize, usize), Vec<(usize, usize, usize)>)>,
}

fn build_core(pg: &PartitionedGraph) -> Core {
    let k = pg.k();
    let members: Vec<Vec<usize>> = pg.classes.iter().map(|c| c.to_vec()).collect();
    let p = members[0].len();

    let mut roles = Vec::new();
    let mut z = vec![vec![0; p]; k];
    for (i, zi) in z.iter_mut().enumerate() {
        for (s, slot) in zi.iter_mut().enumerate() {
            *slot = roles.len();
            roles.push(format!("z[{}][{}]", i + 1, s + 1));
        }
    }
    let mut r_sets = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            let mut set = Vec::new();
            for s in 0..p {
                for t in 0..p {
                    if pg.graph.adjacent(members[i][s], members[j][t]) {
                        set.push((s, t, roles.len()));
                        roles.push(format!("r[{},{}][{},{}]", i + 1, j + 1, s + 1, t + 1));
                    }
                }
            }
            r_sets.push(((i, j), set));
        }
    }

    let mut g = Graph::empty(roles.len());
    for zi in &z {
        for a in 0..p {
            for b in a + 1..p {
                g.add_edge(zi[a], zi[b]);
            }
        }
    }
    for ((i, j), set) in &r_sets {
        for a in 0..set.len() {
            for b in a + 1..set.len() {
                g.add_edge(set[a].2, set[b].2);
            }
        }
        for &(s, t, rv) in set {
            for h in 0..p {
                if h != s {
                    g.add_edge(z[*i][h], rv);
                }
                if h != t {
                    g.add_edge(z[*j][h], rv);
                }
            }
        }
    }
    Core {
        graph: g,
        roles,
        z,
        r_sets,
    }
}

/// Which reduction produced an instance, with its parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GadgetKind {
    MaxDomination { d: usize },
    DominatingSet,
    TotalDominatingSet,
    DDomination { d: usize },
}

impl GadgetKind {
    pub fn name(&self) -> &'static str {
        match self {
            GadgetKind::MaxDomination { .. } => "max-domination",
            GadgetKind::DominatingSet => "dominating-set",
            GadgetKind::TotalDominatingSet => "total-dominating-set",
            GadgetKind::DDomination { .. } => "d-domination",
        }
    }
}

/// A finished reduction instance: the graph, a printable role per vertex,
/// the problem to solve on it, the solution size that encodes a yes, and
/// the source answer from direct enumeration.
#[derive(Debug, Clone)]
pub struct GadgetInstance {
    pub graph: Graph,
    pub roles: Vec<String>,
    pub kind: GadgetKind,
    pub k: usize,
    pub p: usize,
    pub sigma: SetSpec,
    pub rho: SetSpec,
    /// Feasibility at exactly this size is equivalent to a yes source.
    pub target_size: usize,
    pub expected: bool,
}

fn check_classes(pg: &PartitionedGraph, min_k: usize) -> Result<(), GeneratorError> {
    if pg.k() < min_k {
        return Err(GeneratorError::TooFewClasses {
            k: pg.k(),
            min: min_k,
        });
    }
    if pg.classes.iter().any(|c| c.is_empty()) {
        return Err(GeneratorError::EmptyClass);
    }
    Ok(())
}

/// Reduction from multicolored clique to maximum ({d}, N>=d+1) domination.
/// Every selector and edge-selector clique X gets a K_{d,d-1} whose d-side
/// is complete to X; a feasible set of size 2d(k + C(k,2)) picks all gadget
/// vertices plus one consistent selector per clique.
pub fn max_domination_gadget(
    pg: &PartitionedGraph,
    d: usize,
) -> Result<GadgetInstance, GeneratorError> {
    check_classes(pg, 3)?;
    if d < 1 {
        return Err(GeneratorError::DegreeTooSmall { d, min: 1 });
    }
    let expected = has_multicolored_clique(pg);
    let padded = pad_partition(pg, PadMode::Isolated);
    let core = build_core(&padded);
    let k = padded.k();
    let p = padded.classes[0].len();

    let units: Vec<(String, Vec<usize>)> = core
        .z
        .iter()
        .enumerate()
        .map(|(i, zi)| (format!("{}", i + 1), zi.clone()))
        .chain(core.r_sets.iter().map(|((i, j), set)| {
            (
                format!("{},{}", i + 1, j + 1),
                set.iter().map(|&(_, _, v)| v).collect(),
            )
        }))
        .collect();

    let mut n = core.graph.n();
    let mut roles = core.roles.clone();
    let mut b1 = Vec::new();
    let mut b2 = Vec::new();
    for (tag, _) in &units {
        let start1 = n;
        for h in 0..d {
            roles.push(format!("b1[{}][{}]", tag, h + 1));
        }
        n += d;
        let start2 = n;
        for h in 0..d - 1 {
            roles.push(format!("b2[{}][{}]", tag, h + 1));
        }
        n += d - 1;
        b1.push(start1);
        b2.push(start2);
    }

    let mut g = Graph::empty(n);
    for (u, v) in core.graph.edges() {
        g.add_edge(u, v);
    }
    for (u, (_, members)) in units.iter().enumerate() {
        for h in 0..d {
            for h2 in 0..d - 1 {
                g.add_edge(b1[u] + h, b2[u] + h2);
            }
            for &x in members {
                g.add_edge(b1[u] + h, x);
            }
        }
    }

    let unit_count = k + k * (k - 1) / 2;
    Ok(GadgetInstance {
        graph: g,
        roles,
        kind: GadgetKind::MaxDomination { d },
        k,
        p,
        sigma: SetSpec::singleton(d),
        rho: SetSpec::at_least(d + 1),
        target_size: 2 * d * unit_count,
        expected,
    })
}

/// Reduction from multicolored independent set to minimum dominating set:
/// the core plus one guard vertex per class adjacent to its selector
/// clique. A dominating set of size exactly k picks one selector per class
/// that leaves no edge-selector undominated.
pub fn dominating_set_gadget(pg: &PartitionedGraph) -> Result<GadgetInstance, GeneratorError> {
    check_classes(pg, 2)?;
    let expected = has_multicolored_independent_set(pg);
    let padded = pad_partition(pg, PadMode::CrossAdjacent);
    let core = build_core(&padded);
    let k = padded.k();
    let p = padded.classes[0].len();

    let mut n = core.graph.n();
    let mut roles = core.roles.clone();
    let mut g = Graph::empty(n + k);
    for (u, v) in core.graph.edges() {
        g.add_edge(u, v);
    }
    for (i, zi) in core.z.iter().enumerate() {
        for &zv in zi {
            g.add_edge(n, zv);
        }
        roles.push(format!("b[{}]", i + 1));
        n += 1;
    }

    Ok(GadgetInstance {
        graph: g,
        roles,
        kind: GadgetKind::DominatingSet,
        k,
        p,
        sigma: SetSpec::naturals(),
        rho: SetSpec::positives(),
        target_size: k,
        expected,
    })
}

/// Total domination variant: each guard gains a pendant, forcing guards
/// into every solution, so a yes instance is one with a total dominating
/// set of size exactly 2k.
pub fn total_dominating_set_gadget(
    pg: &PartitionedGraph,
) -> Result<GadgetInstance, GeneratorError> {
    check_classes(pg, 2)?;
    let expected = has_multicolored_independent_set(pg);
    let padded = pad_partition(pg, PadMode::CrossAdjacent);
    let core = build_core(&padded);
    let k = padded.k();
    let p = padded.classes[0].len();

    let base = core.graph.n();
    let mut roles = core.roles.clone();
    let mut g = Graph::empty(base + 2 * k);
    for (u, v) in core.graph.edges() {
        g.add_edge(u, v);
    }
    for (i, zi) in core.z.iter().enumerate() {
        let b = base + 2 * i;
        let c = base + 2 * i + 1;
        for &zv in zi {
            g.add_edge(b, zv);
        }
        g.add_edge(b, c);
        roles.push(format!("b[{}]", i + 1));
        roles.push(format!("c[{}]", i + 1));
    }

    Ok(GadgetInstance {
        graph: g,
        roles,
        kind: GadgetKind::TotalDominatingSet,
        k,
        p,
        sigma: SetSpec::positives(),
        rho: SetSpec::positives(),
        target_size: 2 * k,
        expected,
    })
}

/// Reduction from multicolored independent set to ({0,1,d-1}, {d,d+1})
/// domination for d >= 2: per class a K_{d,d} whose first d-1 left vertices
/// cover the selector clique and all later edge-selector cliques, plus a
/// satellite forcing a selector choice. Yes instances have a feasible set
/// of size exactly k(d+1).
pub fn d_domination_gadget(
    pg: &PartitionedGraph,
    d: usize,
) -> Result<GadgetInstance, GeneratorError> {
    check_classes(pg, 2)?;
    if d < 2 {
        return Err(GeneratorError::DegreeTooSmall { d, min: 2 });
    }
    let expected = has_multicolored_independent_set(pg);
    let padded = pad_partition(pg, PadMode::CrossAdjacent);
    let core = build_core(&padded);
    let k = padded.k();
    let p = padded.classes[0].len();

    let base = core.graph.n();
    let mut roles = core.roles.clone();
    // per class: d left vertices, d right vertices, one satellite
    let n = base + k * (2 * d + 1);
    let mut g = Graph::empty(n);
    for (u, v) in core.graph.edges() {
        g.add_edge(u, v);
    }
    for i in 0..k {
        let c1 = base + i * (2 * d + 1);
        let c2 = c1 + d;
        let sat = c2 + d;
        for h in 0..d {
            roles.push(format!("c1[{}][{}]", i + 1, h + 1));
        }
        for h in 0..d {
            roles.push(format!("c2[{}][{}]", i + 1, h + 1));
        }
        roles.push(format!("sat[{}]", i + 1));
        for h1 in 0..d {
            for h2 in 0..d {
                g.add_edge(c1 + h1, c2 + h2);
            }
        }
        for h in 0..d - 1 {
            for &zv in &core.z[i] {
                g.add_edge(c1 + h, zv);
            }
            for ((a, _), set) in &core.r_sets {
                if *a == i {
                    for &(_, _, rv) in set {
                        g.add_edge(c1 + h, rv);
                    }
                }
            }
        }
        for &zv in &core.z[i] {
            g.add_edge(sat, zv);
        }
        for h in 0..d {
            g.add_edge(sat, c1 + h);
        }
    }

    Ok(GadgetInstance {
        graph: g,
        roles,
        kind: GadgetKind::DDomination { d },
        k,
        p,
        sigma: SetSpec::finite(vec![0, 1, d - 1]),
        rho: SetSpec::finite(vec![d, d + 1]),
        target_size: k * (d + 1),
        expected,
    })
}

/// Seeded Erdos-Renyi graph.
pub fn random_graph(n: usize, edge_prob: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(edge_prob) {
                g.add_edge(u, v);
            }
        }
    }
    g
}

/// Seeded partitioned source instance with the given class sizes; only
/// cross-class edges are drawn, which is all the multicolored problems see.
pub fn random_partitioned_graph(sizes: &[usize], edge_prob: f64, seed: u64) -> PartitionedGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n: usize = sizes.iter().sum();
    let mut g = Graph::empty(n);
    let mut classes = Vec::new();
    let mut start = 0;
    for &s in sizes {
        classes.push(VertexSet::from_iter(n, start..start + s));
        start += s;
    }
    for i in 0..classes.len() {
        for j in i + 1..classes.len() {
            for u in classes[i].to_vec() {
                for v in classes[j].to_vec() {
                    if rng.random_bool(edge_prob) {
                        g.add_edge(u, v);
                    }
                }
            }
        }
    }
    PartitionedGraph { graph: g, classes }
}

/// Seeded interval graph from a uniform pairing of 2n endpoint slots.
/// Returns the graph and its representation.
pub fn random_interval_graph(n: usize, seed: u64) -> (Graph, Vec<(i64, i64)>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut slots: Vec<usize> = (0..2 * n).collect();
    slots.shuffle(&mut rng);
    let intervals: Vec<(i64, i64)> = (0..n)
        .map(|v| {
            let a = slots[2 * v] as i64;
            let b = slots[2 * v + 1] as i64;
            (a.min(b), a.max(b))
        })
        .collect();
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if intervals[u].0 <= intervals[v].1 && intervals[v].0 <= intervals[u].1 {
                g.add_edge(u, v);
            }
        }
    }
    (g, intervals)
}

/// Seeded random subcubic decomposition tree: grow by subdividing a random
/// tree edge and hanging the next leaf off the subdivision point, then
/// match leaves to vertices in creation order.
pub fn random_decomposition(n: usize, seed: u64) -> DecompositionTree {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match n {
        0 => panic!("decomposition of an empty graph"),
        1 => return DecompositionTree::new(1, vec![], vec![(0, 0)]),
        2 => return DecompositionTree::new(2, vec![(0, 1)], vec![(0, 0), (1, 1)]),
        _ => {}
    }
    let mut edges: Vec<(usize, usize)> = vec![(0, 1)];
    let mut leaves = vec![0, 1];
    let mut next = 2;
    for _ in 2..n {
        let ei = rng.random_range(0..edges.len());
        let (a, b) = edges.swap_remove(ei);
        let mid = next;
        let leaf = next + 1;
        next += 2;
        edges.push((a, mid));
        edges.push((mid, b));
        edges.push((mid, leaf));
        leaves.push(leaf);
    }
    let leaf_map = leaves.iter().enumerate().map(|(v, &t)| (t, v)).collect();
    DecompositionTree::new(next, edges, leaf_map)
}
