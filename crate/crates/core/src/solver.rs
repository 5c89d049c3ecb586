//! Dynamic programming over a rooted branch decomposition.
//!
//! Tables are indexed by d-neighborhood classes on both sides of each cut:
//! an inner class for the partial solution below a node and an outer class
//! standing in for the undecided rest. Combining children only needs class
//! ids, so all set arithmetic happens once per engine, not once per problem.

use crate::decomposition::{DecompositionError, DecompositionTree};
use crate::equivalence::{
    neighborhood_vector, truncated_sum, EquivClassTable, DEFAULT_CLASS_CAP,
};
use crate::graph::{Graph, VertexSet};
use crate::problems::{ConstraintMatrix, Objective, Problem, SetSpec};
use crate::BudgetExceeded;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Error, Debug, PartialEq, Eq)]
pub enum SolverError {
    #[error(transparent)]
    Decomposition(#[from] DecompositionError),
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
}

#[derive(Debug, Clone, Copy)]
enum Node {
    Leaf { vertex: usize },
    Internal { left: usize, right: usize },
}

/// Binary rooted form of a decomposition tree: the lexicographically
/// smallest tree edge is subdivided and the new node becomes the root, so
/// every cut of the original tree survives unchanged. Nodes with a single
/// child (degree-2 tree nodes) are spliced out because their cut duplicates
/// the child's.
#[derive(Debug, Clone)]
pub struct RootedDecomposition {
    nodes: Vec<Node>,
    below: Vec<VertexSet>,
    root: usize,
    n: usize,
}

impl RootedDecomposition {
    pub fn new(g: &Graph, dec: &DecompositionTree) -> Result<RootedDecomposition, SolverError> {
        dec.validate(g)?;
        let n = g.n();
        let vertex_of_node = dec.vertex_of_node();
        if dec.num_nodes() == 1 {
            let v = vertex_of_node[0].unwrap();
            return Ok(RootedDecomposition {
                nodes: vec![Node::Leaf { vertex: v }],
                below: vec![VertexSet::from_iter(n, [v])],
                root: 0,
                n,
            });
        }

        let sub = dec.edges()[0];
        let mut adj = dec.adjacency();
        let rootid = dec.num_nodes();
        adj.push(vec![sub.0, sub.1]);
        for (x, y) in [(sub.0, sub.1), (sub.1, sub.0)] {
            let nbrs = &mut adj[x];
            let pos = nbrs.iter().position(|&z| z == y).unwrap();
            nbrs[pos] = rootid;
        }

        struct Builder<'a> {
            adj: &'a [Vec<usize>],
            vertex_of_node: &'a [Option<usize>],
            n: usize,
            nodes: Vec<Node>,
            below: Vec<VertexSet>,
        }
        impl Builder<'_> {
            // returns the new id of the subtree root, splicing single-child chains
            fn build(&mut self, node: usize, parent: usize) -> usize {
                let kids: Vec<usize> = self.adj[node]
                    .iter()
                    .copied()
                    .filter(|&x| x != parent)
                    .collect();
                match kids.len() {
                    0 => {
                        let v = self.vertex_of_node[node].unwrap();
                        self.nodes.push(Node::Leaf { vertex: v });
                        self.below.push(VertexSet::from_iter(self.n, [v]));
                        self.nodes.len() - 1
                    }
                    1 => self.build(kids[0], node),
                    2 => {
                        let left = self.build(kids[0], node);
                        let right = self.build(kids[1], node);
                        let mut below = self.below[left].clone();
                        below.union_with(&self.below[right]);
                        self.nodes.push(Node::Internal { left, right });
                        self.below.push(below);
                        self.nodes.len() - 1
                    }
                    _ => unreachable!("validated tree is subcubic"),
                }
            }
        }
        let mut b = Builder {
            adj: &adj,
            vertex_of_node: &vertex_of_node,
            n,
            nodes: Vec::new(),
            below: Vec::new(),
        };
        let root = b.build(rootid, usize::MAX);
        Ok(RootedDecomposition {
            nodes: b.nodes,
            below: b.below,
            root,
            n,
        })
    }

    pub fn num_nodes(&self) -> usize {
        self.nodes.len()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn below(&self, w: usize) -> &VertexSet {
        &self.below[w]
    }
}

/// Class counts actually realized by an engine, one entry per rooted node.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SolveStats {
    pub nodes: usize,
    pub max_inner_classes: usize,
    pub max_outer_classes: usize,
    pub total_inner_classes: u64,
    pub total_outer_classes: u64,
}

#[derive(Debug, Clone, Copy)]
pub struct DpLimits {
    pub class_cap: usize,
}

impl Default for DpLimits {
    fn default() -> Self {
        DpLimits {
            class_cap: DEFAULT_CLASS_CAP,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub feasible: bool,
    pub value: Option<usize>,
    pub witness: Option<VertexSet>,
    pub stats: SolveStats,
}

struct JoinTables {
    join: Vec<u32>,     // ra * ib + rb -> inner class at w
    up_left: Vec<u32>,  // rb * ow + ro -> outer class at left child
    up_right: Vec<u32>, // ra * ow + ro -> outer class at right child
}

/// All problem-independent machinery for one (graph, decomposition, d)
/// triple: equivalence tables per node and the class-composition tables.
/// One engine serves every (sigma, rho, objective) with d-value <= d.
pub struct DpEngine<'g> {
    g: &'g Graph,
    rooted: RootedDecomposition,
    d: usize,
    inner: Vec<EquivClassTable>,
    outer: Vec<EquivClassTable>,
    joins: Vec<Option<JoinTables>>,
    stats: SolveStats,
}

fn better(objective: Objective, cand: u32, cur: u32) -> bool {
    match objective {
        Objective::Minimize | Objective::Exists => cand < cur,
        Objective::Maximize => cand > cur,
    }
}

impl<'g> DpEngine<'g> {
    pub fn new(g: &'g Graph, dec: &DecompositionTree, d: usize) -> Result<Self, SolverError> {
        Self::with_limits(g, dec, d, DpLimits::default())
    }

    pub fn with_limits(
        g: &'g Graph,
        dec: &DecompositionTree,
        d: usize,
        limits: DpLimits,
    ) -> Result<Self, SolverError> {
        let rooted = RootedDecomposition::new(g, dec)?;
        let m = rooted.num_nodes();
        let mut inner = Vec::with_capacity(m);
        let mut outer = Vec::with_capacity(m);
        for w in 0..m {
            let side = rooted.below(w);
            inner.push(EquivClassTable::build(g, side, d, limits.class_cap)?);
            outer.push(EquivClassTable::build(
                g,
                &side.complement(),
                d,
                limits.class_cap,
            )?);
        }

        let mut joins: Vec<Option<JoinTables>> = Vec::with_capacity(m);
        for w in 0..m {
            let Node::Internal { left, right } = rooted.nodes[w] else {
                joins.push(None);
                continue;
            };
            let (ia, ib) = (inner[left].num_classes(), inner[right].num_classes());
            let ow = outer[w].num_classes();

            // vectors of child representatives over the outside of w
            let out_w = inner[w].outside().clone();
            let va: Vec<Vec<u32>> = (0..ia)
                .map(|r| neighborhood_vector(g, d, inner[left].rep(r), &out_w))
                .collect();
            let vb: Vec<Vec<u32>> = (0..ib)
                .map(|r| neighborhood_vector(g, d, inner[right].rep(r), &out_w))
                .collect();
            let mut join = vec![0u32; ia * ib];
            for (ra, va) in va.iter().enumerate() {
                for (rb, vb) in vb.iter().enumerate() {
                    let v = truncated_sum(d, va, vb);
                    join[ra * ib + rb] = inner[w]
                        .class_of_vector(&v)
                        .expect("join class missing from closure")
                        as u32;
                }
            }

            // vectors over each child's own side, for the child's outer class
            let up = |child: usize, sibling: usize| -> Vec<u32> {
                let side = rooted.below(child);
                let is = inner[sibling].num_classes();
                let ws: Vec<Vec<u32>> = (0..is)
                    .map(|r| neighborhood_vector(g, d, inner[sibling].rep(r), side))
                    .collect();
                let wo: Vec<Vec<u32>> = (0..ow)
                    .map(|r| neighborhood_vector(g, d, outer[w].rep(r), side))
                    .collect();
                let mut table = vec![0u32; is * ow];
                for (rs, ws) in ws.iter().enumerate() {
                    for (ro, wo) in wo.iter().enumerate() {
                        let v = truncated_sum(d, ws, wo);
                        table[rs * ow + ro] = outer[child]
                            .class_of_vector(&v)
                            .expect("up class missing from closure")
                            as u32;
                    }
                }
                table
            };
            let up_left = up(left, right);
            let up_right = up(right, left);
            joins.push(Some(JoinTables {
                join,
                up_left,
                up_right,
            }));
        }

        let mut stats = SolveStats {
            nodes: m,
            ..Default::default()
        };
        for w in 0..m {
            let (i, o) = (inner[w].num_classes(), outer[w].num_classes());
            stats.max_inner_classes = stats.max_inner_classes.max(i);
            stats.max_outer_classes = stats.max_outer_classes.max(o);
            stats.total_inner_classes += i as u64;
            stats.total_outer_classes += o as u64;
        }

        Ok(DpEngine {
            g,
            rooted,
            d,
            inner,
            outer,
            joins,
            stats,
        })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn stats(&self) -> &SolveStats {
        &self.stats
    }

    /// Class counts (inner, outer) per tree node in evaluation order.
    pub fn class_counts(&self) -> Vec<(usize, usize)> {
        (0..self.rooted.num_nodes())
            .map(|w| (self.inner[w].num_classes(), self.outer[w].num_classes()))
            .collect()
    }

    /// Run the table computation for one problem. The engine's d must cover
    /// the problem's; a larger d only refines classes and stays correct.
    pub fn solve(&self, sigma: &SetSpec, rho: &SetSpec, objective: Objective) -> Solution {
        assert!(
            sigma.d_value().max(rho.d_value()) <= self.d,
            "engine built with too small a d"
        );
        let m = self.rooted.num_nodes();
        let mut vals: Vec<Vec<Option<u32>>> = vec![Vec::new(); m];
        let mut leaf_pick: Vec<Vec<u8>> = vec![Vec::new(); m];
        let mut pair_pick: Vec<Vec<(u32, u32)>> = vec![Vec::new(); m];

        // nodes were numbered in postorder by construction
        for w in 0..m {
            let iw = self.inner[w].num_classes();
            let ow = self.outer[w].num_classes();
            let mut t = vec![None; iw * ow];
            match self.rooted.nodes[w] {
                Node::Leaf { vertex } => {
                    let mut pick = vec![0u8; iw * ow];
                    let empty = VertexSet::empty(self.rooted.n);
                    let single = VertexSet::from_iter(self.rooted.n, [vertex]);
                    let cls_empty = self.inner[w].class_of(self.g, &empty);
                    let cls_single = self.inner[w].class_of(self.g, &single);
                    for ro in 0..ow {
                        // the outer table's outside is exactly {vertex}
                        let c = self.outer[w].vector(ro)[0] as usize;
                        let mut fold = |cls: usize, val: u32, take: u8| {
                            let slot = &mut t[cls * ow + ro];
                            if slot.is_none() || better(objective, val, slot.unwrap()) {
                                *slot = Some(val);
                                pick[cls * ow + ro] = take;
                            }
                        };
                        if rho.truncated_member(c, self.d) {
                            fold(cls_empty, 0, 0);
                        }
                        if sigma.truncated_member(c, self.d) {
                            fold(cls_single, 1, 1);
                        }
                    }
                    leaf_pick[w] = pick;
                }
                Node::Internal { left, right } => {
                    let jt = self.joins[w].as_ref().unwrap();
                    let ib = self.inner[right].num_classes();
                    let oa = self.outer[left].num_classes();
                    let ob = self.outer[right].num_classes();
                    let mut pick = vec![(0u32, 0u32); iw * ow];
                    let ta = &vals[left];
                    let tb = &vals[right];
                    for ra in 0..self.inner[left].num_classes() {
                        for rb in 0..ib {
                            let rw = jt.join[ra * ib + rb] as usize;
                            for ro in 0..ow {
                                let roa = jt.up_left[rb * ow + ro] as usize;
                                let rob = jt.up_right[ra * ow + ro] as usize;
                                let (Some(x), Some(y)) =
                                    (ta[ra * oa + roa], tb[rb * ob + rob])
                                else {
                                    continue;
                                };
                                let val = x + y;
                                let slot = &mut t[rw * ow + ro];
                                if slot.is_none() || better(objective, val, slot.unwrap()) {
                                    *slot = Some(val);
                                    pick[rw * ow + ro] = (ra as u32, rb as u32);
                                }
                            }
                        }
                    }
                    pair_pick[w] = pick;
                }
            }
            vals[w] = t;
        }

        // the root's outside is empty: one outer class, reps checked in full
        let root = self.rooted.root();
        let ow = self.outer[root].num_classes();
        debug_assert_eq!(ow, 1);
        let mut best: Option<(u32, usize)> = None;
        for rw in 0..self.inner[root].num_classes() {
            if let Some(v) = vals[root][rw * ow] {
                if best.is_none() || better(objective, v, best.unwrap().0) {
                    best = Some((v, rw));
                }
            }
        }

        let Some((value, rw)) = best else {
            return Solution {
                feasible: false,
                value: None,
                witness: None,
                stats: self.stats.clone(),
            };
        };

        let mut witness = VertexSet::empty(self.rooted.n);
        self.reconstruct(&leaf_pick, &pair_pick, root, rw, 0, &mut witness);
        Solution {
            feasible: true,
            value: Some(value as usize),
            witness: Some(witness),
            stats: self.stats.clone(),
        }
    }

    fn reconstruct(
        &self,
        leaf_pick: &[Vec<u8>],
        pair_pick: &[Vec<(u32, u32)>],
        w: usize,
        rw: usize,
        ro: usize,
        out: &mut VertexSet,
    ) {
        let ow = self.outer[w].num_classes();
        match self.rooted.nodes[w] {
            Node::Leaf { vertex } => {
                if leaf_pick[w][rw * ow + ro] == 1 {
                    out.insert(vertex);
                }
            }
            Node::Internal { left, right } => {
                let jt = self.joins[w].as_ref().unwrap();
                let (ra, rb) = pair_pick[w][rw * ow + ro];
                let roa = jt.up_left[rb as usize * ow + ro] as usize;
                let rob = jt.up_right[ra as usize * ow + ro] as usize;
                self.reconstruct(leaf_pick, pair_pick, left, ra as usize, roa, out);
                self.reconstruct(leaf_pick, pair_pick, right, rb as usize, rob, out);
            }
        }
    }
}

/// One-shot solve at distance 1.
pub fn solve_sigma_rho(
    g: &Graph,
    dec: &DecompositionTree,
    problem: &Problem,
) -> Result<Solution, SolverError> {
    let engine = DpEngine::new(g, dec, problem.d_value())?;
    Ok(engine.solve(&problem.sigma, &problem.rho, problem.objective))
}

/// Distance-r solve: replace the graph by its r-th power, keep the same
/// decomposition tree, and run the distance-1 computation unchanged.
pub fn solve_distance_r(
    g: &Graph,
    dec: &DecompositionTree,
    problem: &Problem,
    r: usize,
) -> Result<Solution, SolverError> {
    assert!(r >= 1, "distance must be at least 1");
    if r == 1 {
        return solve_sigma_rho(g, dec, problem);
    }
    let power = g.power(r);
    let engine = DpEngine::new(&power, dec, problem.d_value())?;
    Ok(engine.solve(&problem.sigma, &problem.rho, problem.objective))
}

/// Exact check of a claimed solution, over the original graph with full
/// untruncated counts.
pub fn verify_witness(
    g: &Graph,
    sigma: &SetSpec,
    rho: &SetSpec,
    r: usize,
    s: &VertexSet,
) -> bool {
    (0..g.n()).all(|v| {
        let count = g.r_neighborhood(v, r).intersection_size(s);
        if s.contains(v) {
            sigma.contains(count)
        } else {
            rho.contains(count)
        }
    })
}

/// d-neighborhood classes of ordered q-partitions of a side: two partitions
/// are equivalent when, class by class, every outside vertex sees the same
/// truncated neighbor count. Built by assigning the side's vertices one at
/// a time in ascending order and deduplicating states, which reaches every
/// partition's vector tuple.
#[derive(Debug, Clone)]
pub struct PartitionClassTable {
    outside: VertexSet,
    d: usize,
    q: usize,
    reps: Vec<Vec<VertexSet>>,
    vectors: Vec<Vec<u32>>,
    map: HashMap<Vec<u32>, usize>,
}

fn partition_vector(g: &Graph, d: usize, parts: &[VertexSet], outside: &VertexSet) -> Vec<u32> {
    let mut out = Vec::with_capacity(parts.len() * outside.len());
    for p in parts {
        out.extend(neighborhood_vector(g, d, p, outside));
    }
    out
}

impl PartitionClassTable {
    pub fn build(
        g: &Graph,
        side: &VertexSet,
        q: usize,
        d: usize,
        cap: usize,
    ) -> Result<PartitionClassTable, BudgetExceeded> {
        let outside = side.complement();
        let empty_parts = vec![VertexSet::empty(g.n()); q];
        let mut states: Vec<Vec<VertexSet>> = vec![empty_parts.clone()];
        let mut vectors: Vec<Vec<u32>> = vec![partition_vector(g, d, &empty_parts, &outside)];
        let mut map: HashMap<Vec<u32>, usize> = HashMap::new();
        map.insert(vectors[0].clone(), 0);

        for v in side.iter() {
            let mut next_states = Vec::new();
            let mut next_vectors = Vec::new();
            let mut next_map = HashMap::new();
            for (parts, vec) in states.iter().zip(&vectors) {
                for c in 0..q {
                    let mut nv = vec.clone();
                    let seg = c * outside.len();
                    for (i, u) in outside.iter().enumerate() {
                        if g.adjacent(u, v) {
                            nv[seg + i] = (nv[seg + i] + 1).min(d as u32);
                        }
                    }
                    if next_map.contains_key(&nv) {
                        continue;
                    }
                    if next_states.len() >= cap {
                        return Err(BudgetExceeded {
                            what: "partition classes",
                            budget: cap as u64,
                        });
                    }
                    let mut np = parts.clone();
                    np[c].insert(v);
                    next_map.insert(nv.clone(), next_states.len());
                    next_states.push(np);
                    next_vectors.push(nv);
                }
            }
            states = next_states;
            vectors = next_vectors;
            map = next_map;
        }
        Ok(PartitionClassTable {
            outside,
            d,
            q,
            reps: states,
            vectors,
            map,
        })
    }

    pub fn num_classes(&self) -> usize {
        self.reps.len()
    }

    pub fn rep(&self, class: usize) -> &[VertexSet] {
        &self.reps[class]
    }

    pub fn vector(&self, class: usize) -> &[u32] {
        &self.vectors[class]
    }

    pub fn outside(&self) -> &VertexSet {
        &self.outside
    }

    pub fn class_of_vector(&self, vec: &[u32]) -> Option<usize> {
        self.map.get(vec).copied()
    }

    pub fn class_of(&self, g: &Graph, parts: &[VertexSet]) -> usize {
        debug_assert_eq!(parts.len(), self.q);
        let vec = partition_vector(g, self.d, parts, &self.outside);
        match self.map.get(&vec) {
            Some(&id) => id,
            None => panic!("partition vector missing from closure"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LcvpObjective {
    Exists,
    MinFirstClass,
    MaxFirstClass,
}

impl fmt::Display for LcvpObjective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LcvpObjective::Exists => "exists",
            LcvpObjective::MinFirstClass => "min-class-1",
            LcvpObjective::MaxFirstClass => "max-class-1",
        })
    }
}

#[derive(Error, Debug, PartialEq, Eq)]
#[error("unknown partition objective `{0}`, expected exists, min-class-1 or max-class-1")]
pub struct LcvpObjectiveParseError(String);

impl FromStr for LcvpObjective {
    type Err = LcvpObjectiveParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "exists" => Ok(LcvpObjective::Exists),
            "min-class-1" => Ok(LcvpObjective::MinFirstClass),
            "max-class-1" => Ok(LcvpObjective::MaxFirstClass),
            other => Err(LcvpObjectiveParseError(other.to_string())),
        }
    }
}

fn lcvp_better(objective: LcvpObjective, cand: u32, cur: u32) -> bool {
    match objective {
        LcvpObjective::MinFirstClass | LcvpObjective::Exists => cand < cur,
        LcvpObjective::MaxFirstClass => cand > cur,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LcvpSolution {
    pub feasible: bool,
    /// Size of the first class in the reported labeling.
    pub value: Option<usize>,
    /// Class index per vertex.
    pub witness: Option<Vec<usize>>,
    pub stats: SolveStats,
}

/// Partition analogue of `DpEngine`: one engine per (graph, decomposition,
/// q, d), reusable for every constraint matrix with matching shape.
pub struct LcvpEngine<'g> {
    g: &'g Graph,
    rooted: RootedDecomposition,
    d: usize,
    q: usize,
    inner: Vec<PartitionClassTable>,
    outer: Vec<PartitionClassTable>,
    joins: Vec<Option<JoinTables>>,
    stats: SolveStats,
}

impl<'g> LcvpEngine<'g> {
    pub fn new(
        g: &'g Graph,
        dec: &DecompositionTree,
        q: usize,
        d: usize,
    ) -> Result<Self, SolverError> {
        Self::with_limits(g, dec, q, d, DpLimits::default())
    }

    pub fn with_limits(
        g: &'g Graph,
        dec: &DecompositionTree,
        q: usize,
        d: usize,
        limits: DpLimits,
    ) -> Result<Self, SolverError> {
        assert!(q >= 1);
        let rooted = RootedDecomposition::new(g, dec)?;
        let m = rooted.num_nodes();
        let mut inner = Vec::with_capacity(m);
        let mut outer = Vec::with_capacity(m);
        for w in 0..m {
            let side = rooted.below(w);
            inner.push(PartitionClassTable::build(
                g,
                side,
                q,
                d,
                limits.class_cap,
            )?);
            outer.push(PartitionClassTable::build(
                g,
                &side.complement(),
                q,
                d,
                limits.class_cap,
            )?);
        }

        let mut joins: Vec<Option<JoinTables>> = Vec::with_capacity(m);
        for w in 0..m {
            let Node::Internal { left, right } = rooted.nodes[w] else {
                joins.push(None);
                continue;
            };
            let (ia, ib) = (inner[left].num_classes(), inner[right].num_classes());
            let ow = outer[w].num_classes();

            let out_w = rooted.below(w).complement();
            let va: Vec<Vec<u32>> = (0..ia)
                .map(|r| partition_vector(g, d, inner[left].rep(r), &out_w))
                .collect();
            let vb: Vec<Vec<u32>> = (0..ib)
                .map(|r| partition_vector(g, d, inner[right].rep(r), &out_w))
                .collect();
            let mut join = vec![0u32; ia * ib];
            for (ra, va) in va.iter().enumerate() {
                for (rb, vb) in vb.iter().enumerate() {
                    let v = truncated_sum(d, va, vb);
                    join[ra * ib + rb] = inner[w]
                        .class_of_vector(&v)
                        .expect("join class missing from closure")
                        as u32;
                }
            }

            let up = |child: usize, sibling: usize| -> Vec<u32> {
                let side = rooted.below(child);
                let is = inner[sibling].num_classes();
                let ws: Vec<Vec<u32>> = (0..is)
                    .map(|r| partition_vector(g, d, inner[sibling].rep(r), side))
                    .collect();
                let wo: Vec<Vec<u32>> = (0..ow)
                    .map(|r| partition_vector(g, d, outer[w].rep(r), side))
                    .collect();
                let mut table = vec![0u32; is * ow];
                for (rs, ws) in ws.iter().enumerate() {
                    for (ro, wo) in wo.iter().enumerate() {
                        let v = truncated_sum(d, ws, wo);
                        table[rs * ow + ro] = outer[child]
                            .class_of_vector(&v)
                            .expect("up class missing from closure")
                            as u32;
                    }
                }
                table
            };
            let up_left = up(left, right);
            let up_right = up(right, left);
            joins.push(Some(JoinTables {
                join,
                up_left,
                up_right,
            }));
        }

        let mut stats = SolveStats {
            nodes: m,
            ..Default::default()
        };
        for w in 0..m {
            let (i, o) = (inner[w].num_classes(), outer[w].num_classes());
            stats.max_inner_classes = stats.max_inner_classes.max(i);
            stats.max_outer_classes = stats.max_outer_classes.max(o);
            stats.total_inner_classes += i as u64;
            stats.total_outer_classes += o as u64;
        }

        Ok(LcvpEngine {
            g,
            rooted,
            d,
            q,
            inner,
            outer,
            joins,
            stats,
        })
    }

    pub fn stats(&self) -> &SolveStats {
        &self.stats
    }

    /// Class counts (inner, outer) per tree node in evaluation order.
    pub fn class_counts(&self) -> Vec<(usize, usize)> {
        (0..self.rooted.num_nodes())
            .map(|w| (self.inner[w].num_classes(), self.outer[w].num_classes()))
            .collect()
    }

    pub fn solve(&self, matrix: &ConstraintMatrix, objective: LcvpObjective) -> LcvpSolution {
        assert_eq!(matrix.q(), self.q, "engine built for a different q");
        assert!(
            matrix.d_value() <= self.d,
            "engine built with too small a d"
        );
        let m = self.rooted.num_nodes();
        let mut vals: Vec<Vec<Option<u32>>> = vec![Vec::new(); m];
        let mut leaf_pick: Vec<Vec<u8>> = vec![Vec::new(); m];
        let mut pair_pick: Vec<Vec<(u32, u32)>> = vec![Vec::new(); m];

        for w in 0..m {
            let iw = self.inner[w].num_classes();
            let ow = self.outer[w].num_classes();
            let mut t = vec![None; iw * ow];
            match self.rooted.nodes[w] {
                Node::Leaf { vertex } => {
                    let mut pick = vec![0u8; iw * ow];
                    // inner classes of "vertex alone in class c"
                    let classes: Vec<usize> = (0..self.q)
                        .map(|c| {
                            let mut parts = vec![VertexSet::empty(self.rooted.n); self.q];
                            parts[c].insert(vertex);
                            self.inner[w].class_of(self.g, &parts)
                        })
                        .collect();
                    for ro in 0..ow {
                        let vec = self.outer[w].vector(ro);
                        // outer's outside is {vertex}: entry j is the count
                        // of class-j neighbors
                        for (c, &cls) in classes.iter().enumerate() {
                            let ok = (0..self.q).all(|j| {
                                matrix.entry(c, j).truncated_member(vec[j] as usize, self.d)
                            });
                            if !ok {
                                continue;
                            }
                            let val = (c == 0) as u32;
                            let slot = &mut t[cls * ow + ro];
                            if slot.is_none() || lcvp_better(objective, val, slot.unwrap()) {
                                *slot = Some(val);
                                pick[cls * ow + ro] = c as u8;
                            }
                        }
                    }
                    leaf_pick[w] = pick;
                }
                Node::Internal { left, right } => {
                    let jt = self.joins[w].as_ref().unwrap();
                    let ib = self.inner[right].num_classes();
                    let oa = self.outer[left].num_classes();
                    let ob = self.outer[right].num_classes();
                    let mut pick = vec![(0u32, 0u32); iw * ow];
                    let ta = &vals[left];
                    let tb = &vals[right];
                    for ra in 0..self.inner[left].num_classes() {
                        for rb in 0..ib {
                            let rw = jt.join[ra * ib + rb] as usize;
                            for ro in 0..ow {
                                let roa = jt.up_left[rb * ow + ro] as usize;
                                let rob = jt.up_right[ra * ow + ro] as usize;
                                let (Some(x), Some(y)) =
                                    (ta[ra * oa + roa], tb[rb * ob + rob])
                                else {
                                    continue;
                                };
                                let val = x + y;
                                let slot = &mut t[rw * ow + ro];
                                if slot.is_none() || lcvp_better(objective, val, slot.unwrap()) {
                                    *slot = Some(val);
                                    pick[rw * ow + ro] = (ra as u32, rb as u32);
                                }
                            }
                        }
                    }
                    pair_pick[w] = pick;
                }
            }
            vals[w] = t;
        }

        let root = self.rooted.root();
        let ow = self.outer[root].num_classes();
        debug_assert_eq!(ow, 1);
        let mut best: Option<(u32, usize)> = None;
        for rw in 0..self.inner[root].num_classes() {
            if let Some(v) = vals[root][rw * ow] {
                if best.is_none() || lcvp_better(objective, v, best.unwrap().0) {
                    best = Some((v, rw));
                }
            }
        }

        let Some((value, rw)) = best else {
            return LcvpSolution {
                feasible: false,
                value: None,
                witness: None,
                stats: self.stats.clone(),
            };
        };

        let mut labels = vec![0usize; self.rooted.n];
        self.reconstruct(&leaf_pick, &pair_pick, root, rw, 0, &mut labels);
        LcvpSolution {
            feasible: true,
            value: Some(value as usize),
            witness: Some(labels),
            stats: self.stats.clone(),
        }
    }

    fn reconstruct(
        &self,
        leaf_pick: &[Vec<u8>],
        pair_pick: &[Vec<(u32, u32)>],
        w: usize,
        rw: usize,
        ro: usize,
        labels: &mut Vec<usize>,
    ) {
        let ow = self.outer[w].num_classes();
        match self.rooted.nodes[w] {
            Node::Leaf { vertex } => {
                labels[vertex] = leaf_pick[w][rw * ow + ro] as usize;
            }
            Node::Internal { left, right } => {
                let jt = self.joins[w].as_ref().unwrap();
                let (ra, rb) = pair_pick[w][rw * ow + ro];
                let roa = jt.up_left[rb as usize * ow + ro] as usize;
                let rob = jt.up_right[ra as usize * ow + ro] as usize;
                self.reconstruct(leaf_pick, pair_pick, left, ra as usize, roa, labels);
                self.reconstruct(leaf_pick, pair_pick, right, rb as usize, rob, labels);
            }
        }
    }
}

/// Solve a vertex partitioning instance at the matrix's own distance:
/// power the graph, keep the decomposition, run at distance 1.
pub fn solve_lcvp(
    g: &Graph,
    dec: &DecompositionTree,
    matrix: &ConstraintMatrix,
    objective: LcvpObjective,
) -> Result<LcvpSolution, SolverError> {
    let d = matrix.d_value();
    if matrix.r() == 1 {
        let engine = LcvpEngine::new(g, dec, matrix.q(), d)?;
        return Ok(engine.solve(matrix, objective));
    }
    let power = g.power(matrix.r());
    let engine = LcvpEngine::new(&power, dec, matrix.q(), d)?;
    Ok(engine.solve(matrix, objective))
}

/// Exact check of a claimed labeling against every matrix cell, over the
/// original graph at the matrix's distance, untruncated.
pub fn verify_lcvp_witness(g: &Graph, matrix: &ConstraintMatrix, labels: &[usize]) -> bool {
    if labels.len() != g.n() || labels.iter().any(|&l| l >= matrix.q()) {
        return false;
    }
    let q = matrix.q();
    let classes: Vec<VertexSet> = (0..q)
        .map(|c| {
            VertexSet::from_iter(
                g.n(),
                labels
                    .iter()
                    .enumerate()
                    .filter(|(_, &l)| l == c)
                    .map(|(v, _)| v),
            )
        })
        .collect();
    (0..g.n()).all(|v| {
        let nbh = g.r_neighborhood(v, matrix.r());
        (0..q).all(|j| {
            matrix
                .entry(labels[v], j)
                .contains(nbh.intersection_size(&classes[j]))
        })
    })
}
