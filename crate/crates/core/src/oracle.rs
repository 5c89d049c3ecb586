//! Brute-force baselines. Everything here enumerates candidate solutions
//! directly and checks constraints with untruncated counts, deliberately
//! sharing no machinery with the dynamic programming solver.

use crate::graph::{Graph, VertexSet};
use crate::problems::{ConstraintMatrix, SetSpec};
use thiserror::Error;

pub const MAX_ORACLE_VERTICES: usize = 22;
pub const MAX_ORACLE_STATES: u64 = 10_000_000;
pub const MAX_ORACLE_CROSSING_EDGES: usize = 40;

#[derive(Error, Debug, PartialEq, Eq)]
pub enum OracleError {
    #[error("subset oracle only runs for n <= {limit}, graph has {n}")]
    TooManyVertices { n: usize, limit: usize },
    #[error("partition oracle needs q^n <= {limit}, instance has {states}")]
    TooManyStates { states: u128, limit: u64 },
    #[error("cut oracle only runs for <= {limit} crossing edges, cut has {count}")]
    TooManyCrossingEdges { count: usize, limit: usize },
}

/// Everything a subset enumeration learns: existence, extremal sizes with
/// the first (lowest-encoding) witness of each, and per-size feasibility.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    pub exists: bool,
    pub min: Option<usize>,
    pub max: Option<usize>,
    pub min_witness: Option<VertexSet>,
    pub max_witness: Option<VertexSet>,
    pub feasible_sizes: Vec<bool>,
}

/// Enumerate all 2^n subsets in ascending mask order and test the distance-r
/// domination constraints exactly: the witness kept for each size is the
/// first feasible set of that size.
pub fn brute_sigma_rho(
    g: &Graph,
    sigma: &SetSpec,
    rho: &SetSpec,
    r: usize,
) -> Result<OracleResult, OracleError> {
    assert!(r >= 1, "distance must be at least 1");
    let n = g.n();
    if n > MAX_ORACLE_VERTICES {
        return Err(OracleError::TooManyVertices {
            n,
            limit: MAX_ORACLE_VERTICES,
        });
    }
    let nbr: Vec<u32> = (0..n)
        .map(|v| {
            let mut m = 0u32;
            for u in g.r_neighborhood(v, r).iter() {
                m |= 1 << u;
            }
            m
        })
        .collect();

    let mut first_of_size: Vec<Option<u32>> = vec![None; n + 1];
    for mask in 0u32..1u32 << n {
        let mut ok = true;
        for v in 0..n {
            let count = (nbr[v] & mask).count_ones() as usize;
            let inside = mask >> v & 1 == 1;
            let spec = if inside { sigma } else { rho };
            if !spec.contains(count) {
                ok = false;
                break;
            }
        }
        if ok {
            let size = mask.count_ones() as usize;
            if first_of_size[size].is_none() {
                first_of_size[size] = Some(mask);
            }
        }
    }

    let to_set = |mask: u32| VertexSet::from_iter(n, (0..n).filter(|&v| mask >> v & 1 == 1));
    let min = first_of_size.iter().position(|w| w.is_some());
    let max = first_of_size.iter().rposition(|w| w.is_some());
    Ok(OracleResult {
        exists: min.is_some(),
        min,
        max,
        min_witness: min.map(|s| to_set(first_of_size[s].unwrap())),
        max_witness: max.map(|s| to_set(first_of_size[s].unwrap())),
        feasible_sizes: first_of_size.iter().map(|w| w.is_some()).collect(),
    })
}

/// Partition oracle outcome. Sizes and witnesses refer to the first class
/// of the matrix; a witness maps each vertex to its class index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LcvpOracleResult {
    pub exists: bool,
    pub min: Option<usize>,
    pub max: Option<usize>,
    pub min_witness: Option<Vec<usize>>,
    pub max_witness: Option<Vec<usize>>,
}

/// Enumerate all q^n labelings in ascending base-q order (vertex 0 is the
/// least significant digit) and test every matrix cell exactly at the
/// matrix's own distance.
pub fn brute_lcvp(g: &Graph, matrix: &ConstraintMatrix) -> Result<LcvpOracleResult, OracleError> {
    let n = g.n();
    let q = matrix.q();
    let states = (q as u128).pow(n as u32);
    if states > MAX_ORACLE_STATES as u128 {
        return Err(OracleError::TooManyStates {
            states,
            limit: MAX_ORACLE_STATES,
        });
    }
    let nbr: Vec<u32> = (0..n)
        .map(|v| {
            let mut m = 0u32;
            for u in g.r_neighborhood(v, matrix.r()).iter() {
                m |= 1 << u;
            }
            m
        })
        .collect();

    let mut exists = false;
    let mut min: Option<(usize, Vec<usize>)> = None;
    let mut max: Option<(usize, Vec<usize>)> = None;
    let mut label = vec![0usize; n];
    for code in 0..states as u64 {
        let mut c = code;
        for slot in label.iter_mut() {
            *slot = (c % q as u64) as usize;
            c /= q as u64;
        }
        let mut class_mask = vec![0u32; q];
        for (v, &l) in label.iter().enumerate() {
            class_mask[l] |= 1 << v;
        }
        let mut ok = true;
        'outer: for (v, &l) in label.iter().enumerate() {
            for j in 0..q {
                let count = (nbr[v] & class_mask[j]).count_ones() as usize;
                if !matrix.entry(l, j).contains(count) {
                    ok = false;
                    break 'outer;
                }
            }
        }
        if !ok {
            continue;
        }
        exists = true;
        let size = class_mask[0].count_ones() as usize;
        if min.as_ref().is_none_or(|(s, _)| size < *s) {
            min = Some((size, label.clone()));
        }
        if max.as_ref().is_none_or(|(s, _)| size > *s) {
            max = Some((size, label.clone()));
        }
    }
    Ok(LcvpOracleResult {
        exists,
        min: min.as_ref().map(|(s, _)| *s),
        max: max.as_ref().map(|(s, _)| *s),
        min_witness: min.map(|(_, w)| w),
        max_witness: max.map(|(_, w)| w),
    })
}

/// Exact maximum induced matching across a cut by plain take-or-skip
/// recursion over the crossing edges in input order, pruned only by the
/// count of edges left. Small cuts only; independent of the search the
/// solver uses.
pub fn brute_cut_mim(g: &Graph, a: &VertexSet) -> Result<usize, OracleError> {
    let edges: Vec<(usize, usize)> = {
        let mut out = Vec::new();
        for u in a.iter() {
            for v in g.neighborhood(u).iter() {
                if !a.contains(v) {
                    out.push((u, v));
                }
            }
        }
        out
    };
    if edges.len() > MAX_ORACLE_CROSSING_EDGES {
        return Err(OracleError::TooManyCrossingEdges {
            count: edges.len(),
            limit: MAX_ORACLE_CROSSING_EDGES,
        });
    }

    fn compatible(g: &Graph, e: (usize, usize), f: (usize, usize)) -> bool {
        e.0 != f.0 && e.1 != f.1 && !g.adjacent(e.0, f.1) && !g.adjacent(f.0, e.1)
    }

    fn rec(
        g: &Graph,
        edges: &[(usize, usize)],
        i: usize,
        chosen: &mut Vec<(usize, usize)>,
        best: &mut usize,
    ) {
        if chosen.len() + (edges.len() - i) <= *best {
            return;
        }
        if i == edges.len() {
            *best = chosen.len();
            return;
        }
        let e = edges[i];
        if chosen.iter().all(|&f| compatible(g, e, f)) {
            chosen.push(e);
            rec(g, edges, i + 1, chosen, best);
            chosen.pop();
        }
        rec(g, edges, i + 1, chosen, best);
    }

    let mut best = 0;
    let mut chosen = Vec::new();
    rec(g, &edges, 0, &mut chosen, &mut best);
    Ok(best)
}
