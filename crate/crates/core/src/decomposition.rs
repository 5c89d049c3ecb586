//! Branch decomposition trees, the cuts they induce, and exact maximum
//! induced matching sizes across cuts (mim-width).

use crate::graph::{Graph, VertexSet};
use crate::BudgetExceeded;
use std::collections::HashSet;
use thiserror::Error;

pub const DEFAULT_MIM_BUDGET: u64 = 10_000_000;

#[derive(Error, Debug, PartialEq, Eq)]
pub enum DecompositionError {
    #[error("tree has {edges} edges for {nodes} nodes, not a tree")]
    WrongEdgeCount { nodes: usize, edges: usize },
    #[error("tree is disconnected")]
    Disconnected,
    #[error("duplicate tree edge ({a}, {b})")]
    DuplicateEdge { a: usize, b: usize },
    #[error("tree edge ({a}, {a}) is a self-loop")]
    SelfLoopEdge { a: usize },
    #[error("tree node {node} has degree {degree} > 3")]
    NotSubcubic { node: usize, degree: usize },
    #[error("tree node {node} is mapped to a vertex but is not a leaf")]
    MappedNodeNotLeaf { node: usize },
    #[error("leaf node {node} has no assigned vertex")]
    UnmappedLeaf { node: usize },
    #[error("tree node {node} assigned more than one vertex")]
    NodeMappedTwice { node: usize },
    #[error("graph vertex {vertex} assigned to more than one leaf")]
    VertexMappedTwice { vertex: usize },
    #[error("decomposition covers {mapped} vertices but the graph has {n}")]
    VertexCountMismatch { mapped: usize, n: usize },
    #[error("order is not a permutation of the vertices")]
    NotAPermutation,
}

#[derive(Error, Debug, PartialEq, Eq)]
pub enum DecParseError {
    #[error("line {line}: missing or malformed header, expected `dec <num_nodes>`")]
    MalformedHeader { line: usize },
    #[error("line {line}: malformed line, expected `te <a> <b>` or `leaf <node> <vertex>`")]
    MalformedLine { line: usize },
    #[error("line {line}: tree node {node} out of range 1..={num_nodes}")]
    NodeOutOfRange {
        line: usize,
        node: usize,
        num_nodes: usize,
    },
    #[error("line {line}: unknown directive `{tag}`")]
    UnknownDirective { line: usize, tag: String },
    #[error("no header line found")]
    MissingHeader,
}

/// A subcubic tree whose leaves are labeled bijectively with graph vertices.
/// Every tree edge splits the leaves in two, inducing a cut of the graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionTree {
    num_nodes: usize,
    edges: Vec<(usize, usize)>,
    leaf_map: Vec<(usize, usize)>, // (tree node, graph vertex)
}

impl DecompositionTree {
    /// Edges are normalized to (min, max) and sorted; indices are checked,
    /// structural soundness is left to `validate`.
    pub fn new(
        num_nodes: usize,
        edges: Vec<(usize, usize)>,
        leaf_map: Vec<(usize, usize)>,
    ) -> DecompositionTree {
        let mut edges: Vec<(usize, usize)> = edges
            .into_iter()
            .map(|(a, b)| {
                assert!(a < num_nodes && b < num_nodes, "tree edge out of range");
                (a.min(b), a.max(b))
            })
            .collect();
        edges.sort_unstable();
        for &(node, _) in &leaf_map {
            assert!(node < num_nodes, "leaf node out of range");
        }
        DecompositionTree {
            num_nodes,
            edges,
            leaf_map,
        }
    }

    pub fn num_nodes(&self) -> usize {
        self.num_nodes
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Number of graph vertices the tree is built for.
    pub fn n(&self) -> usize {
        self.leaf_map.len()
    }

    pub fn leaf_map(&self) -> &[(usize, usize)] {
        &self.leaf_map
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.num_nodes];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }

    /// Graph vertex at each tree node, if it is a mapped leaf.
    pub fn vertex_of_node(&self) -> Vec<Option<usize>> {
        let mut out = vec![None; self.num_nodes];
        for &(node, v) in &self.leaf_map {
            out[node] = Some(v);
        }
        out
    }

    /// Checks: connected acyclic tree, max degree 3, and the leaf labeling is
    /// a bijection between tree leaves and the graph's vertices.
    pub fn validate(&self, g: &Graph) -> Result<(), DecompositionError> {
        if self.edges.len() + 1 != self.num_nodes {
            return Err(DecompositionError::WrongEdgeCount {
                nodes: self.num_nodes,
                edges: self.edges.len(),
            });
        }
        let mut seen = HashSet::new();
        for &(a, b) in &self.edges {
            if a == b {
                return Err(DecompositionError::SelfLoopEdge { a });
            }
            if !seen.insert((a, b)) {
                return Err(DecompositionError::DuplicateEdge { a, b });
            }
        }
        let adj = self.adjacency();
        for (node, nbrs) in adj.iter().enumerate() {
            if nbrs.len() > 3 {
                return Err(DecompositionError::NotSubcubic {
                    node,
                    degree: nbrs.len(),
                });
            }
        }
        // edge count is right, so connectivity rules out cycles
        let mut reach = vec![false; self.num_nodes];
        let mut stack = vec![0];
        reach[0] = true;
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if !reach[y] {
                    reach[y] = true;
                    stack.push(y);
                }
            }
        }
        if reach.iter().any(|r| !r) {
            return Err(DecompositionError::Disconnected);
        }

        if self.leaf_map.len() != g.n() {
            return Err(DecompositionError::VertexCountMismatch {
                mapped: self.leaf_map.len(),
                n: g.n(),
            });
        }
        let mut node_used = vec![false; self.num_nodes];
        let mut vertex_used = vec![false; g.n()];
        for &(node, v) in &self.leaf_map {
            if adj[node].len() > 1 {
                return Err(DecompositionError::MappedNodeNotLeaf { node });
            }
            if node_used[node] {
                return Err(DecompositionError::NodeMappedTwice { node });
            }
            if v >= g.n() || vertex_used[v] {
                return Err(DecompositionError::VertexMappedTwice { vertex: v });
            }
            node_used[node] = true;
            vertex_used[v] = true;
        }
        for (node, nbrs) in adj.iter().enumerate() {
            if nbrs.len() <= 1 && !node_used[node] {
                return Err(DecompositionError::UnmappedLeaf { node });
            }
        }
        Ok(())
    }

    /// The cut induced by a tree edge: A holds the graph vertices whose
    /// leaves land in the component of T - e containing tree node 0, the
    /// fixed orientation convention.
    pub fn cut_of_edge(&self, edge: (usize, usize)) -> VertexSet {
        let e = (edge.0.min(edge.1), edge.0.max(edge.1));
        assert!(self.edges.contains(&e), "no tree edge {e:?}");
        let adj = self.adjacency();
        let mut reach = vec![false; self.num_nodes];
        let mut stack = vec![0];
        reach[0] = true;
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if (x, y) == e || (y, x) == e {
                    continue;
                }
                if !reach[y] {
                    reach[y] = true;
                    stack.push(y);
                }
            }
        }
        let mut a = VertexSet::empty(self.leaf_map.len());
        for &(node, v) in &self.leaf_map {
            if reach[node] {
                a.insert(v);
            }
        }
        a
    }

    /// Parse the tree format: `dec <num_nodes>` header, `te <a> <b>` edges,
    /// `leaf <node> <vertex>` assignments, all 1-indexed. `#` comments and
    /// blank lines are skipped.
    pub fn parse(text: &str) -> Result<DecompositionTree, DecParseError> {
        let mut num_nodes: Option<usize> = None;
        let mut edges = Vec::new();
        let mut leaf_map = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let tokens: Vec<&str> = content.split_whitespace().collect();
            let two = || -> Option<(usize, usize)> {
                if tokens.len() != 3 {
                    return None;
                }
                Some((tokens[1].parse().ok()?, tokens[2].parse().ok()?))
            };
            match tokens[0] {
                "dec" => {
                    if num_nodes.is_some() || tokens.len() != 2 {
                        return Err(DecParseError::MalformedHeader { line });
                    }
                    match tokens[1].parse::<usize>() {
                        Ok(k) if k >= 1 => num_nodes = Some(k),
                        _ => return Err(DecParseError::MalformedHeader { line }),
                    }
                }
                "te" => {
                    let nn = num_nodes.ok_or(DecParseError::MissingHeader)?;
                    let (a, b) = two().ok_or(DecParseError::MalformedLine { line })?;
                    for x in [a, b] {
                        if x < 1 || x > nn {
                            return Err(DecParseError::NodeOutOfRange {
                                line,
                                node: x,
                                num_nodes: nn,
                            });
                        }
                    }
                    edges.push((a - 1, b - 1));
                }
                "leaf" => {
                    let nn = num_nodes.ok_or(DecParseError::MissingHeader)?;
                    let (node, v) = two().ok_or(DecParseError::MalformedLine { line })?;
                    if node < 1 || node > nn {
                        return Err(DecParseError::NodeOutOfRange {
                            line,
                            node,
                            num_nodes: nn,
                        });
                    }
                    if v < 1 {
                        return Err(DecParseError::MalformedLine { line });
                    }
                    leaf_map.push((node - 1, v - 1));
                }
                tag => {
                    return Err(DecParseError::UnknownDirective {
                        line,
                        tag: tag.to_string(),
                    })
                }
            }
        }
        let num_nodes = num_nodes.ok_or(DecParseError::MissingHeader)?;
        Ok(DecompositionTree::new(num_nodes, edges, leaf_map))
    }

    pub fn write(&self) -> String {
        let mut out = format!("dec {}\n", self.num_nodes);
        for &(a, b) in &self.edges {
            out.push_str(&format!("te {} {}\n", a + 1, b + 1));
        }
        for &(node, v) in &self.leaf_map {
            out.push_str(&format!("leaf {} {}\n", node + 1, v + 1));
        }
        out
    }
}

/// Caterpillar decomposition realizing a linear order: spine nodes come
/// first (so prefix sides contain tree node 0), then one leaf per vertex in
/// order. Cuts across spine edges are exactly the proper prefixes of the
/// order (sizes 2..n-2); pendant edges give singleton cuts.
pub fn caterpillar_from_order(order: &[usize]) -> Result<DecompositionTree, DecompositionError> {
    let n = order.len();
    let mut seen = vec![false; n];
    for &v in order {
        if v >= n || seen[v] {
            return Err(DecompositionError::NotAPermutation);
        }
        seen[v] = true;
    }
    match n {
        0 => Err(DecompositionError::NotAPermutation),
        1 => Ok(DecompositionTree::new(1, vec![], vec![(0, order[0])])),
        2 => Ok(DecompositionTree::new(
            2,
            vec![(0, 1)],
            vec![(0, order[0]), (1, order[1])],
        )),
        _ => {
            let spine = n - 2;
            let leaf = |i: usize| spine + i;
            let mut edges: Vec<(usize, usize)> = (1..spine).map(|i| (i - 1, i)).collect();
            edges.push((0, leaf(0)));
            for i in 1..=n - 2 {
                edges.push((i - 1, leaf(i)));
            }
            edges.push((spine - 1, leaf(n - 1)));
            let leaf_map = (0..n).map(|i| (leaf(i), order[i])).collect();
            Ok(DecompositionTree::new(spine + n, edges, leaf_map))
        }
    }
}

#[derive(Error, Debug, PartialEq, Eq)]
pub enum IntervalError {
    #[error("expected {n} intervals, got {got}")]
    WrongCount { n: usize, got: usize },
    #[error("interval {index} has left endpoint {l} > right endpoint {r}")]
    Inverted { index: usize, l: i64, r: i64 },
    #[error("intervals disagree with the graph at pair ({u}, {v}): graph edge {edge}, intervals intersect {intersect}")]
    Inconsistent {
        u: usize,
        v: usize,
        edge: bool,
        intersect: bool,
    },
}

pub fn intervals_intersect(a: (i64, i64), b: (i64, i64)) -> bool {
    a.0 <= b.1 && b.0 <= a.1
}

/// Caterpillar decomposition over the interval order (left endpoint, right
/// endpoint, vertex index). The representation is checked against the graph
/// edge by edge first.
pub fn interval_decomposition(
    g: &Graph,
    intervals: &[(i64, i64)],
) -> Result<DecompositionTree, IntervalError> {
    let n = g.n();
    if intervals.len() != n {
        return Err(IntervalError::WrongCount {
            n,
            got: intervals.len(),
        });
    }
    for (i, &(l, r)) in intervals.iter().enumerate() {
        if l > r {
            return Err(IntervalError::Inverted { index: i, l, r });
        }
    }
    for u in 0..n {
        for v in u + 1..n {
            let edge = g.adjacent(u, v);
            let intersect = intervals_intersect(intervals[u], intervals[v]);
            if edge != intersect {
                return Err(IntervalError::Inconsistent {
                    u,
                    v,
                    edge,
                    intersect,
                });
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (intervals[v].0, intervals[v].1, v));
    Ok(caterpillar_from_order(&order).unwrap())
}

#[derive(Error, Debug, PartialEq, Eq)]
pub enum IntervalParseError {
    #[error("line {line}: missing or malformed header, expected `intervals <n>`")]
    MalformedHeader { line: usize },
    #[error("line {line}: malformed line, expected `iv <vertex> <left> <right>`")]
    MalformedLine { line: usize },
    #[error("line {line}: vertex {v} out of range 1..={n}")]
    VertexOutOfRange { line: usize, v: usize, n: usize },
    #[error("line {line}: vertex {v} given twice")]
    DuplicateVertex { line: usize, v: usize },
    #[error("vertex {v} has no interval")]
    MissingVertex { v: usize },
    #[error("line {line}: unknown directive `{tag}`")]
    UnknownDirective { line: usize, tag: String },
    #[error("no header line found")]
    MissingHeader,
}

/// Parse `intervals <n>` followed by `iv <vertex> <left> <right>` lines,
/// vertices 1-indexed, each exactly once.
pub fn parse_intervals(text: &str) -> Result<Vec<(i64, i64)>, IntervalParseError> {
    let mut n: Option<usize> = None;
    let mut out: Vec<Option<(i64, i64)>> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut it = content.split_whitespace();
        match it.next().unwrap() {
            "intervals" => {
                if n.is_some() {
                    return Err(IntervalParseError::MalformedHeader { line });
                }
                match (it.next().and_then(|t| t.parse::<usize>().ok()), it.next()) {
                    (Some(k), None) => {
                        n = Some(k);
                        out = vec![None; k];
                    }
                    _ => return Err(IntervalParseError::MalformedHeader { line }),
                }
            }
            "iv" => {
                let n = n.ok_or(IntervalParseError::MissingHeader)?;
                let v = it.next().and_then(|t| t.parse::<usize>().ok());
                let l = it.next().and_then(|t| t.parse::<i64>().ok());
                let r = it.next().and_then(|t| t.parse::<i64>().ok());
                let (v, l, r) = match (v, l, r, it.next()) {
                    (Some(v), Some(l), Some(r), None) => (v, l, r),
                    _ => return Err(IntervalParseError::MalformedLine { line }),
                };
                if v < 1 || v > n {
                    return Err(IntervalParseError::VertexOutOfRange { line, v, n });
                }
                if out[v - 1].is_some() {
                    return Err(IntervalParseError::DuplicateVertex { line, v });
                }
                out[v - 1] = Some((l, r));
            }
            tag => {
                return Err(IntervalParseError::UnknownDirective {
                    line,
                    tag: tag.to_string(),
                })
            }
        }
    }
    if n.is_none() {
        return Err(IntervalParseError::MissingHeader);
    }
    out.into_iter()
        .enumerate()
        .map(|(v, iv)| iv.ok_or(IntervalParseError::MissingVertex { v: v + 1 }))
        .collect()
}

pub fn write_intervals(intervals: &[(i64, i64)]) -> String {
    let mut out = format!("intervals {}\n", intervals.len());
    for (v, &(l, r)) in intervals.iter().enumerate() {
        out.push_str(&format!("iv {} {} {}\n", v + 1, l, r));
    }
    out
}

/// Crossing edges of the cut (A, complement), as (a, b) pairs with a in A,
/// listed a-ascending then b-ascending.
pub fn crossing_edges(g: &Graph, a: &VertexSet) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for u in a.iter() {
        for v in g.neighborhood(u).iter() {
            if !a.contains(v) {
                out.push((u, v));
            }
        }
    }
    out
}

fn conflict(g: &Graph, e1: (usize, usize), e2: (usize, usize)) -> bool {
    e1.0 == e2.0 || e1.1 == e2.1 || g.adjacent(e1.0, e2.1) || g.adjacent(e2.0, e1.1)
}

/// Exact maximum induced matching size among the crossing edges of the cut
/// (A, complement): the largest set of crossing edges that are pairwise
/// disjoint and not joined by any further crossing edge. Edges inside A or
/// inside the complement never disqualify a pair.
///
/// Branch and bound over the conflict graph of crossing edges, highest
/// conflict degree first, greedy incumbent, remaining-count bound. The node
/// budget turns runaway searches into an explicit error.
pub fn cut_mim_with_budget(
    g: &Graph,
    a: &VertexSet,
    budget: u64,
) -> Result<usize, BudgetExceeded> {
    let edges = crossing_edges(g, a);
    let k = edges.len();
    if k == 0 {
        return Ok(0);
    }
    let blocks = k.div_ceil(64);
    let mut conf = vec![vec![0u64; blocks]; k];
    for i in 0..k {
        for j in i + 1..k {
            if conflict(g, edges[i], edges[j]) {
                conf[i][j / 64] |= 1 << (j % 64);
                conf[j][i / 64] |= 1 << (i % 64);
            }
        }
    }
    let degree = |i: usize| conf[i].iter().map(|b| b.count_ones() as usize).sum::<usize>();
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by_key(|&i| (std::cmp::Reverse(degree(i)), i));

    let mut remaining = vec![u64::MAX; blocks];
    let spare = blocks * 64 - k;
    if spare > 0 {
        remaining[blocks - 1] = u64::MAX >> spare;
    }

    // greedy incumbent: walk the static order, take whatever still fits
    let mut best = 0usize;
    {
        let mut avail = remaining.clone();
        for &i in &order {
            if avail[i / 64] >> (i % 64) & 1 == 1 {
                best += 1;
                avail[i / 64] &= !(1 << (i % 64));
                for b in 0..blocks {
                    avail[b] &= !conf[i][b];
                }
            }
        }
    }

    struct Search<'a> {
        conf: &'a [Vec<u64>],
        order: &'a [usize],
        blocks: usize,
        budget: u64,
        nodes: u64,
        best: usize,
    }

    impl Search<'_> {
        fn run(&mut self, remaining: &[u64], chosen: usize) -> Result<(), BudgetExceeded> {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(BudgetExceeded {
                    what: "cut-mim search nodes",
                    budget: self.budget,
                });
            }
            let live: usize = remaining.iter().map(|b| b.count_ones() as usize).sum();
            if chosen + live <= self.best {
                return Ok(());
            }
            let Some(&v) = self
                .order
                .iter()
                .find(|&&v| remaining[v / 64] >> (v % 64) & 1 == 1)
            else {
                self.best = self.best.max(chosen);
                return Ok(());
            };
            // include v
            let mut with: Vec<u64> = remaining.to_vec();
            with[v / 64] &= !(1 << (v % 64));
            for b in 0..self.blocks {
                with[b] &= !self.conf[v][b];
            }
            self.best = self.best.max(chosen + 1);
            self.run(&with, chosen + 1)?;
            // exclude v
            let mut without: Vec<u64> = remaining.to_vec();
            without[v / 64] &= !(1 << (v % 64));
            self.run(&without, chosen)
        }
    }

    let mut search = Search {
        conf: &conf,
        order: &order,
        blocks,
        budget,
        nodes: 0,
        best,
    };
    search.run(&remaining, 0)?;
    Ok(search.best)
}

pub fn cut_mim(g: &Graph, a: &VertexSet) -> Result<usize, BudgetExceeded> {
    cut_mim_with_budget(g, a, DEFAULT_MIM_BUDGET)
}

#[derive(Debug, Clone)]
pub struct CutInfo {
    pub edge: (usize, usize),
    pub side: VertexSet,
    pub mim: usize,
}

#[derive(Debug, Clone)]
pub struct CutReport {
    pub cuts: Vec<CutInfo>,
    pub mimw: usize,
}

#[derive(Error, Debug, PartialEq, Eq)]
pub enum MimWidthError {
    #[error(transparent)]
    Invalid(#[from] DecompositionError),
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
}

/// Mim-width of the graph under the given decomposition: cut_mim of every
/// tree edge, reported per cut with the maximum.
pub fn mim_width(g: &Graph, dec: &DecompositionTree) -> Result<CutReport, MimWidthError> {
    mim_width_with_budget(g, dec, DEFAULT_MIM_BUDGET)
}

pub fn mim_width_with_budget(
    g: &Graph,
    dec: &DecompositionTree,
    budget: u64,
) -> Result<CutReport, MimWidthError> {
    dec.validate(g)?;
    let mut cuts = Vec::with_capacity(dec.edges().len());
    let mut mimw = 0;
    for &edge in dec.edges() {
        let side = dec.cut_of_edge(edge);
        let mim = cut_mim_with_budget(g, &side, budget)?;
        mimw = mimw.max(mim);
        cuts.push(CutInfo { edge, side, mim });
    }
    Ok(CutReport { cuts, mimw })
}

#[derive(Error, Debug, PartialEq, Eq)]
pub enum LinearMimError {
    #[error("exhaustive linear mim-width only runs for n <= {limit}, graph has {n}")]
    TooLarge { n: usize, limit: usize },
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
}

const LINEAR_MIMW_LIMIT: usize = 9;

/// Exhaustive optimal linear mim-width over all vertex orders (n <= 9),
/// pruning orders whose running prefix maximum already reaches the
/// incumbent and skipping each order's reversal. Returns the value and a
/// caterpillar achieving it.
pub fn optimal_linear_mimw(g: &Graph) -> Result<(usize, DecompositionTree), LinearMimError> {
    let n = g.n();
    if n > LINEAR_MIMW_LIMIT {
        return Err(LinearMimError::TooLarge {
            n,
            limit: LINEAR_MIMW_LIMIT,
        });
    }
    if n <= 1 {
        let order: Vec<usize> = (0..n).collect();
        return Ok((0, caterpillar_from_order(&order).unwrap()));
    }

    struct Dfs<'a> {
        g: &'a Graph,
        n: usize,
        prefix: Vec<usize>,
        side: VertexSet,
        used: Vec<bool>,
        best: usize,
        best_order: Vec<usize>,
    }

    impl Dfs<'_> {
        fn go(&mut self, running: usize) -> Result<(), BudgetExceeded> {
            if self.prefix.len() == self.n - 1 {
                let last = (0..self.n).find(|&v| !self.used[v]).unwrap();
                if self.prefix[0] > last {
                    return Ok(()); // reversal already covered
                }
                if running < self.best {
                    self.best = running;
                    self.best_order = self.prefix.clone();
                    self.best_order.push(last);
                }
                return Ok(());
            }
            for v in 0..self.n {
                if self.used[v] {
                    continue;
                }
                self.used[v] = true;
                self.prefix.push(v);
                self.side.insert(v);
                let cm = cut_mim(self.g, &self.side)?;
                let next = running.max(cm);
                if next < self.best {
                    self.go(next)?;
                }
                self.side.remove(v);
                self.prefix.pop();
                self.used[v] = false;
            }
            Ok(())
        }
    }

    let mut dfs = Dfs {
        g,
        n,
        prefix: Vec::new(),
        side: VertexSet::empty(n),
        used: vec![false; n],
        best: usize::MAX,
        best_order: Vec::new(),
    };
    dfs.go(0)?;
    Ok((dfs.best, caterpillar_from_order(&dfs.best_order).unwrap()))
}
