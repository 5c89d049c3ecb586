//! Undirected graphs over a fixed vertex universe, their file format,
//! BFS distances, powers and r-neighborhoods.

use std::fmt;
use thiserror::Error;

/// Set of vertices out of a fixed universe `0..universe`, stored as a bitmask.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    universe: usize,
    blocks: Vec<u64>,
}

impl VertexSet {
    pub fn empty(universe: usize) -> Self {
        VertexSet {
            universe,
            blocks: vec![0; universe.div_ceil(64)],
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut s = Self::empty(universe);
        for v in 0..universe {
            s.insert(v);
        }
        s
    }

    pub fn from_iter<I: IntoIterator<Item = usize>>(universe: usize, it: I) -> Self {
        let mut s = Self::empty(universe);
        for v in it {
            s.insert(v);
        }
        s
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn insert(&mut self, v: usize) {
        assert!(v < self.universe, "vertex {v} outside universe {}", self.universe);
        self.blocks[v / 64] |= 1 << (v % 64);
    }

    pub fn remove(&mut self, v: usize) {
        assert!(v < self.universe);
        self.blocks[v / 64] &= !(1 << (v % 64));
    }

    pub fn contains(&self, v: usize) -> bool {
        v < self.universe && self.blocks[v / 64] >> (v % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.blocks.iter().map(|b| b.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.iter().all(|&b| b == 0)
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        assert_eq!(self.universe, other.universe);
        VertexSet {
            universe: self.universe,
            blocks: self
                .blocks
                .iter()
                .zip(&other.blocks)
                .map(|(a, b)| a | b)
                .collect(),
        }
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        assert_eq!(self.universe, other.universe);
        for (a, b) in self.blocks.iter_mut().zip(&other.blocks) {
            *a |= b;
        }
    }

    /// |self ∩ other|, the workhorse of every truncated neighborhood count.
    pub fn intersection_size(&self, other: &VertexSet) -> usize {
        assert_eq!(self.universe, other.universe);
        self.blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn intersects(&self, other: &VertexSet) -> bool {
        self.blocks.iter().zip(&other.blocks).any(|(a, b)| a & b != 0)
    }

    pub fn is_subset_of(&self, other: &VertexSet) -> bool {
        assert_eq!(self.universe, other.universe);
        self.blocks.iter().zip(&other.blocks).all(|(a, b)| a & !b == 0)
    }

    pub fn complement(&self) -> VertexSet {
        let mut out = VertexSet {
            universe: self.universe,
            blocks: self.blocks.iter().map(|b| !b).collect(),
        };
        // mask off bits beyond the universe
        let spare = out.blocks.len() * 64 - self.universe;
        if spare > 0 {
            let last = out.blocks.len() - 1;
            out.blocks[last] &= u64::MAX >> spare;
        }
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.blocks.iter().enumerate().flat_map(|(i, &b)| {
            let mut bits = b;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let t = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i * 64 + t)
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Order by sorted-vertex-list lexicographic comparison: the set owning
    /// the smallest vertex on which they differ comes first; a strict prefix
    /// comes before its extensions.
    pub fn cmp_lex(&self, other: &VertexSet) -> std::cmp::Ordering {
        use std::cmp::Ordering;
        let mut a = self.iter();
        let mut b = other.iter();
        loop {
            match (a.next(), b.next()) {
                (None, None) => return Ordering::Equal,
                (None, Some(_)) => return Ordering::Less,
                (Some(_), None) => return Ordering::Greater,
                (Some(x), Some(y)) if x != y => return x.cmp(&y),
                _ => {}
            }
        }
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[derive(Error, Debug, PartialEq, Eq)]
pub enum GraphParseError {
    #[error("line {line}: missing or malformed header, expected `p edge <n> <m>`")]
    MalformedHeader { line: usize },
    #[error("line {line}: duplicate header")]
    DuplicateHeader { line: usize },
    #[error("line {line}: malformed edge line, expected `e <u> <v>`")]
    MalformedEdge { line: usize },
    #[error("line {line}: vertex {v} out of range 1..={n}")]
    VertexOutOfRange { line: usize, v: usize, n: usize },
    #[error("line {line}: self-loop at vertex {v}")]
    SelfLoop { line: usize, v: usize },
    #[error("line {line}: unknown directive `{tag}`")]
    UnknownDirective { line: usize, tag: String },
    #[error("no header line found")]
    MissingHeader,
}

/// Simple undirected graph on vertices `0..n` (files are 1-indexed).
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<VertexSet>,
    m: usize,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            adj: vec![VertexSet::empty(n); n],
            m: 0,
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn path(n: usize) -> Self {
        Graph::from_edges(n, &(1..n).map(|v| (v - 1, v)).collect::<Vec<_>>())
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3);
        let mut g = Graph::path(n);
        g.add_edge(n - 1, 0);
        g
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u < self.n && v < self.n, "edge ({u},{v}) outside universe {}", self.n);
        assert_ne!(u, v, "self-loop at {u}");
        if !self.adj[u].contains(v) {
            self.adj[u].insert(v);
            self.adj[v].insert(u);
            self.m += 1;
        }
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn neighborhood(&self, u: usize) -> &VertexSet {
        &self.adj[u]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].len()
    }

    /// Edges as (u, v) with u < v, ascending.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m);
        for u in 0..self.n {
            for v in self.adj[u].iter() {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Parse the line-oriented edge format: a `p edge <n> <m>` header followed
    /// by `e <u> <v>` lines, 1-indexed. `#` starts a comment, blank lines are
    /// skipped, duplicate edge lines collapse. The header's m is not enforced.
    pub fn parse(text: &str) -> Result<Graph, GraphParseError> {
        let mut g: Option<Graph> = None;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let mut it = content.split_whitespace();
            let tag = it.next().unwrap();
            match tag {
                "p" => {
                    if g.is_some() {
                        return Err(GraphParseError::DuplicateHeader { line });
                    }
                    let kind = it.next();
                    let n = it.next().and_then(|t| t.parse::<usize>().ok());
                    let m = it.next().and_then(|t| t.parse::<usize>().ok());
                    match (kind, n, m, it.next()) {
                        (Some("edge"), Some(n), Some(_), None) => g = Some(Graph::empty(n)),
                        _ => return Err(GraphParseError::MalformedHeader { line }),
                    }
                }
                "e" => {
                    let g = g.as_mut().ok_or(GraphParseError::MissingHeader)?;
                    let u = it.next().and_then(|t| t.parse::<usize>().ok());
                    let v = it.next().and_then(|t| t.parse::<usize>().ok());
                    let (u, v) = match (u, v, it.next()) {
                        (Some(u), Some(v), None) => (u, v),
                        _ => return Err(GraphParseError::MalformedEdge { line }),
                    };
                    for w in [u, v] {
                        if w < 1 || w > g.n {
                            return Err(GraphParseError::VertexOutOfRange { line, v: w, n: g.n });
                        }
                    }
                    if u == v {
                        return Err(GraphParseError::SelfLoop { line, v: u });
                    }
                    g.add_edge(u - 1, v - 1);
                }
                _ => {
                    return Err(GraphParseError::UnknownDirective {
                        line,
                        tag: tag.to_string(),
                    })
                }
            }
        }
        g.ok_or(GraphParseError::MissingHeader)
    }

    /// Inverse of `parse`: header plus sorted `e u v` lines (u < v, 1-indexed).
    pub fn write(&self) -> String {
        let mut out = format!("p edge {} {}\n", self.n, self.m);
        for (u, v) in self.edges() {
            out.push_str(&format!("e {} {}\n", u + 1, v + 1));
        }
        out
    }

    /// BFS distances from `u`; `None` means unreachable.
    pub fn bfs_distances(&self, u: usize) -> Vec<Option<usize>> {
        assert!(u < self.n);
        let mut dist = vec![None; self.n];
        dist[u] = Some(0);
        let mut queue = std::collections::VecDeque::from([u]);
        while let Some(x) = queue.pop_front() {
            let dx = dist[x].unwrap();
            for y in self.adj[x].iter() {
                if dist[y].is_none() {
                    dist[y] = Some(dx + 1);
                    queue.push_back(y);
                }
            }
        }
        dist
    }

    pub fn distance(&self, u: usize, v: usize) -> Option<usize> {
        self.bfs_distances(u)[v]
    }

    /// Vertices at distance 1..=r from `u`; excludes `u` itself.
    pub fn r_neighborhood(&self, u: usize, r: usize) -> VertexSet {
        let mut out = VertexSet::empty(self.n);
        if r == 0 {
            return out;
        }
        let dist = self.bfs_distances(u);
        for v in 0..self.n {
            if v != u {
                if let Some(d) = dist[v] {
                    if d <= r {
                        out.insert(v);
                    }
                }
            }
        }
        out
    }

    /// Graph power: same vertices, uv an edge iff 1 <= dist(u,v) <= k.
    pub fn power(&self, k: usize) -> Graph {
        assert!(k >= 1, "graph power needs k >= 1");
        if k == 1 {
            return self.clone();
        }
        let mut g = Graph::empty(self.n);
        for u in 0..self.n {
            for v in self.r_neighborhood(u, k).iter() {
                if u < v {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, m={}, edges={:?})", self.n, self.m, self.edges())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vertex_set_basics() {
        let mut s = VertexSet::empty(70);
        assert!(s.is_empty());
        s.insert(0);
        s.insert(65);
        s.insert(3);
        assert_eq!(s.len(), 3);
        assert!(s.contains(65) && !s.contains(64));
        assert_eq!(s.to_vec(), vec![0, 3, 65]);
        s.remove(3);
        assert_eq!(s.to_vec(), vec![0, 65]);
        let c = s.complement();
        assert_eq!(c.len(), 68);
        assert!(!c.contains(0) && c.contains(3) && !c.contains(65));
    }

    #[test]
    fn vertex_set_ops() {
        let a = VertexSet::from_iter(10, [1, 2, 5]);
        let b = VertexSet::from_iter(10, [2, 5, 7]);
        assert_eq!(a.intersection_size(&b), 2);
        assert_eq!(a.union(&b).to_vec(), vec![1, 2, 5, 7]);
        assert!(VertexSet::from_iter(10, [2, 5]).is_subset_of(&a));
        assert!(!a.is_subset_of(&b));
    }

    #[test]
    fn lex_order() {
        use std::cmp::Ordering::*;
        let s = |v: &[usize]| VertexSet::from_iter(8, v.iter().copied());
        assert_eq!(s(&[0, 5]).cmp_lex(&s(&[1, 2])), Less);
        assert_eq!(s(&[1, 2]).cmp_lex(&s(&[1, 3])), Less);
        assert_eq!(s(&[1]).cmp_lex(&s(&[1, 2])), Less);
        assert_eq!(s(&[1, 2]).cmp_lex(&s(&[1, 2])), Equal);
    }

    #[test]
    fn parse_k2_with_duplicate_edge() {
        let g = Graph::parse("p edge 2 1\ne 1 2\ne 2 1\n").unwrap();
        assert_eq!(g.n(), 2);
        assert_eq!(g.m(), 1);
        assert!(g.adjacent(0, 1));
    }

    #[test]
    fn parse_comments_and_blanks() {
        let g = Graph::parse("# a graph\np edge 3 1\n\ne 1 3  # chord\n").unwrap();
        assert_eq!(g.edges(), vec![(0, 2)]);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        assert_eq!(
            Graph::parse("p edge 2 1\ne 1 1\n"),
            Err(GraphParseError::SelfLoop { line: 2, v: 1 })
        );
        assert_eq!(
            Graph::parse("p edge 2 1\ne 1 3\n"),
            Err(GraphParseError::VertexOutOfRange { line: 2, v: 3, n: 2 })
        );
        assert_eq!(
            Graph::parse("p edge x 1\n"),
            Err(GraphParseError::MalformedHeader { line: 1 })
        );
        assert_eq!(Graph::parse("e 1 2\n"), Err(GraphParseError::MissingHeader));
        assert_eq!(
            Graph::parse("p edge 2 1\nq 1 2\n"),
            Err(GraphParseError::UnknownDirective { line: 2, tag: "q".into() })
        );
    }

    #[test]
    fn write_round_trips() {
        let g = Graph::from_edges(3, &[(0, 1)]);
        assert_eq!(g.write(), "p edge 3 1\ne 1 2\n");
        let empty = Graph::empty(3);
        assert_eq!(empty.write(), "p edge 3 0\n");
        for g in [g, empty, Graph::cycle(6), Graph::complete(5)] {
            assert_eq!(Graph::parse(&g.write()).unwrap(), g);
        }
    }

    #[test]
    fn distances() {
        let p5 = Graph::path(5);
        assert_eq!(p5.distance(0, 4), Some(4));
        assert_eq!(p5.distance(2, 2), Some(0));
        let two = Graph::empty(2);
        assert_eq!(two.distance(0, 1), None);
    }

    #[test]
    fn p5_squared() {
        let p5 = Graph::path(5);
        let sq = p5.power(2);
        assert_eq!(
            sq.edges(),
            vec![(0, 1), (0, 2), (1, 2), (1, 3), (2, 3), (2, 4), (3, 4)]
        );
    }

    #[test]
    fn power_one_is_identity() {
        let g = Graph::cycle(7);
        assert_eq!(g.power(1), g);
    }

    #[test]
    fn power_saturates_at_diameter() {
        let p4 = Graph::path(4);
        assert_eq!(p4.power(3), Graph::complete(4));
        assert_eq!(p4.power(9), Graph::complete(4));
    }

    #[test]
    #[should_panic]
    fn power_zero_rejected() {
        Graph::path(3).power(0);
    }

    #[test]
    fn r_neighborhood_excludes_center() {
        let p5 = Graph::path(5);
        assert_eq!(p5.r_neighborhood(2, 2).to_vec(), vec![0, 1, 3, 4]);
        assert_eq!(p5.r_neighborhood(0, 1).to_vec(), vec![1]);
        assert!(p5.r_neighborhood(0, 0).is_empty());
    }
}
