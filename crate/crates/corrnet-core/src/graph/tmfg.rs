//! Triangulated maximally filtered graph.
//!
//! Start from the tetrahedron over the four nodes closest to everything
//! (smallest dissimilarity row sums), then repeatedly insert the
//! (vertex, triangular face) pair with the smallest sum of dissimilarities to
//! the face's corners, splitting that face into three. Each step adds one
//! vertex, three edges and nets two faces; the result is a planar chordal
//! triangulation with 3n-6 edges and exactly n-3 four-cliques.

use alloc::vec::Vec;

use crate::corr::{CorrelationMatrix, DissimilarityMatrix};

use super::{check_universe, make_edge, FilterKind, FilteredGraph, GraphError};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TmfgInsertion {
    pub vertex: usize,
    /// the face consumed by this insertion, corners ascending
    pub face: [usize; 3],
}

/// Construction record: enough to replay the face bookkeeping.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TmfgTrace {
    pub seed: [usize; 4],
    pub insertions: Vec<TmfgInsertion>,
}

pub fn build_tmfg(
    dissim: &DissimilarityMatrix,
    corr: &CorrelationMatrix,
) -> Result<FilteredGraph, GraphError> {
    build_tmfg_traced(dissim, corr).map(|(g, _)| g)
}

pub fn build_tmfg_traced(
    dissim: &DissimilarityMatrix,
    corr: &CorrelationMatrix,
) -> Result<(FilteredGraph, TmfgTrace), GraphError> {
    check_universe(dissim, corr)?;
    let n = dissim.n();
    if n < 4 {
        return Err(GraphError::TooFewNodes { n, required: 4 });
    }

    // seed tetrahedron: smallest row sums, index as tie-break
    let mut by_sum: Vec<(f64, usize)> = (0..n)
        .map(|i| ((0..n).map(|j| dissim.value(i, j)).sum(), i))
        .collect();
    by_sum.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    let mut seed = [by_sum[0].1, by_sum[1].1, by_sum[2].1, by_sum[3].1];
    seed.sort_unstable();

    let mut edges = Vec::with_capacity(3 * n - 6);
    for a in 0..4 {
        for b in (a + 1)..4 {
            edges.push(make_edge(seed[a], seed[b], corr, dissim));
        }
    }
    let mut faces: Vec<[usize; 3]> = alloc::vec![
        [seed[0], seed[1], seed[2]],
        [seed[0], seed[1], seed[3]],
        [seed[0], seed[2], seed[3]],
        [seed[1], seed[2], seed[3]],
    ];

    let mut outside: Vec<usize> = (0..n).filter(|v| !seed.contains(v)).collect();
    let mut insertions = Vec::with_capacity(n - 4);
    while !outside.is_empty() {
        let mut best: Option<(f64, usize, usize)> = None; // (cost, outside idx, face idx)
        for (oi, &v) in outside.iter().enumerate() {
            for (fi, f) in faces.iter().enumerate() {
                let cost =
                    dissim.value(v, f[0]) + dissim.value(v, f[1]) + dissim.value(v, f[2]);
                let candidate = (cost, oi, fi);
                let better = match best {
                    None => true,
                    Some((bc, boi, bfi)) => {
                        cost < bc
                            || (cost == bc && (outside[oi] < outside[boi]
                                || (outside[oi] == outside[boi] && fi < bfi)))
                    }
                };
                if better {
                    best = Some(candidate);
                }
            }
        }
        let (_, oi, fi) = best.expect("faces and outside vertices are non-empty");
        let v = outside.remove(oi);
        let face = faces[fi];
        for &corner in &face {
            edges.push(make_edge(v.min(corner), v.max(corner), corr, dissim));
        }
        // split: consumed face replaced in place, two siblings appended
        let mut f0 = [face[0], face[1], v];
        let mut f1 = [face[0], face[2], v];
        let mut f2 = [face[1], face[2], v];
        f0.sort_unstable();
        f1.sort_unstable();
        f2.sort_unstable();
        faces[fi] = f0;
        faces.push(f1);
        faces.push(f2);
        insertions.push(TmfgInsertion { vertex: v, face });
    }

    debug_assert_eq!(edges.len(), 3 * n - 6);
    debug_assert_eq!(faces.len(), 2 * n - 4);
    let graph = FilteredGraph::new(FilterKind::Tmfg, dissim.symbols().to_vec(), edges);
    Ok((graph, TmfgTrace { seed, insertions }))
}

/// Replays a trace's face bookkeeping, asserting every insertion consumed a
/// live face and added exactly three edges and two faces. Returns false on
/// any inconsistency. Used by tests as an independent structural check.
pub fn trace_is_consistent(n: usize, trace: &TmfgTrace) -> bool {
    let s = trace.seed;
    if s.windows(2).any(|w| w[0] >= w[1]) || s[3] >= n {
        return false;
    }
    let mut faces = alloc::vec![
        [s[0], s[1], s[2]],
        [s[0], s[1], s[3]],
        [s[0], s[2], s[3]],
        [s[1], s[2], s[3]],
    ];
    let mut present = alloc::vec![false; n];
    for v in s {
        present[v] = true;
    }
    for ins in &trace.insertions {
        if ins.vertex >= n || present[ins.vertex] {
            return false;
        }
        let Some(fi) = faces.iter().position(|f| *f == ins.face) else {
            return false; // consumed face was not live
        };
        let faces_before = faces.len();
        let f = faces.swap_remove(fi);
        let v = ins.vertex;
        let mut add = [[f[0], f[1], v], [f[0], f[2], v], [f[1], f[2], v]];
        for a in &mut add {
            a.sort_unstable();
        }
        faces.extend_from_slice(&add);
        present[v] = true;
        if faces.len() != faces_before + 2 {
            return false;
        }
    }
    present.iter().all(|&p| p) && faces.len() == 2 * n - 4
}
