//! d-neighborhood equivalence of subsets across a cut.
//!
//! Two subsets X, Y of a side A are d-equivalent when every vertex v outside
//! A satisfies min(d, |N(v) ∩ X|) = min(d, |N(v) ∩ Y|). Classes are keyed by
//! that truncated count vector.

use crate::graph::{Graph, VertexSet};
use crate::BudgetExceeded;
use std::collections::HashMap;

pub const DEFAULT_CLASS_CAP: usize = 1_000_000;

/// Truncated neighborhood counts of X, one entry per vertex of `outside` in
/// ascending order.
pub fn neighborhood_vector(g: &Graph, d: usize, x: &VertexSet, outside: &VertexSet) -> Vec<u32> {
    outside
        .iter()
        .map(|v| {
            let c = g.neighborhood(v).intersection_size(x);
            c.min(d) as u32
        })
        .collect()
}

/// Componentwise min(d, a + b). For disjoint X and Y this turns the vectors
/// of X and Y into the vector of X ∪ Y: truncation loses nothing because
/// any truncated summand already pins the sum at d.
pub fn truncated_sum(d: usize, a: &[u32], b: &[u32]) -> Vec<u32> {
    debug_assert_eq!(a.len(), b.len());
    let d = d as u32;
    a.iter().zip(b).map(|(&x, &y)| (x + y).min(d)).collect()
}

/// All d-neighborhood classes of subsets of `side`, with one canonical
/// representative each: the first subset reaching the class in a
/// breadth-first closure from the empty set that grows representatives one
/// vertex at a time, smaller representatives first.
#[derive(Debug, Clone)]
pub struct EquivClassTable {
    side: VertexSet,
    outside: VertexSet,
    d: usize,
    reps: Vec<VertexSet>,
    vectors: Vec<Vec<u32>>,
    map: HashMap<Vec<u32>, usize>,
}

impl EquivClassTable {
    pub fn build(
        g: &Graph,
        side: &VertexSet,
        d: usize,
        cap: usize,
    ) -> Result<EquivClassTable, BudgetExceeded> {
        let outside = side.complement();
        let mut reps: Vec<VertexSet> = Vec::new();
        let mut vectors: Vec<Vec<u32>> = Vec::new();
        let mut map: HashMap<Vec<u32>, usize> = HashMap::new();

        let empty = VertexSet::empty(g.n());
        let vec0 = neighborhood_vector(g, d, &empty, &outside);
        map.insert(vec0.clone(), 0);
        reps.push(empty);
        vectors.push(vec0);

        let mut frontier: Vec<usize> = vec![0];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for &cls in &frontier {
                let rep = reps[cls].clone();
                for v in side.iter() {
                    if rep.contains(v) {
                        continue;
                    }
                    let mut ext = rep.clone();
                    ext.insert(v);
                    let vec = neighborhood_vector(g, d, &ext, &outside);
                    if map.contains_key(&vec) {
                        continue;
                    }
                    let id = reps.len();
                    if id >= cap {
                        return Err(BudgetExceeded {
                            what: "equivalence classes",
                            budget: cap as u64,
                        });
                    }
                    map.insert(vec.clone(), id);
                    reps.push(ext);
                    vectors.push(vec);
                    next.push(id);
                }
            }
            frontier = next;
        }
        Ok(EquivClassTable {
            side: side.clone(),
            outside,
            d,
            reps,
            vectors,
            map,
        })
    }

    pub fn num_classes(&self) -> usize {
        self.reps.len()
    }

    pub fn side(&self) -> &VertexSet {
        &self.side
    }

    pub fn outside(&self) -> &VertexSet {
        &self.outside
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn rep(&self, class: usize) -> &VertexSet {
        &self.reps[class]
    }

    pub fn vector(&self, class: usize) -> &[u32] {
        &self.vectors[class]
    }

    pub fn class_of_vector(&self, vec: &[u32]) -> Option<usize> {
        self.map.get(vec).copied()
    }

    /// Class of an arbitrary subset of the side. Panics if the closure never
    /// produced the subset's vector; the closure is expected to be complete.
    pub fn class_of(&self, g: &Graph, x: &VertexSet) -> usize {
        debug_assert!(x.is_subset_of(&self.side));
        let vec = neighborhood_vector(g, self.d, x, &self.outside);
        match self.map.get(&vec) {
            Some(&id) => id,
            None => panic!("subset vector missing from equivalence closure"),
        }
    }
}
