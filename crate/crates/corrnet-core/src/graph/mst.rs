//! Minimum spanning tree over the dissimilarity matrix.
//!
//! Ascending edge scan with cycle rejection (Kruskal): every pair is a
//! candidate, so the result always spans and has exactly n-1 edges.

use crate::corr::{CorrelationMatrix, DissimilarityMatrix};

use super::union_find::UnionFind;
use super::{check_universe, make_edge, sorted_candidates, FilterKind, FilteredGraph, GraphError};

pub fn build_mst(
    dissim: &DissimilarityMatrix,
    corr: &CorrelationMatrix,
) -> Result<FilteredGraph, GraphError> {
    check_universe(dissim, corr)?;
    let n = dissim.n();
    if n < 2 {
        return Err(GraphError::TooFewNodes { n, required: 2 });
    }
    let mut uf = UnionFind::new(n);
    let mut edges = alloc::vec::Vec::with_capacity(n - 1);
    for (_, i, j) in sorted_candidates(dissim) {
        if uf.union(i, j) {
            edges.push(make_edge(i, j, corr, dissim));
            if edges.len() == n - 1 {
                break;
            }
        }
    }
    debug_assert_eq!(edges.len(), n - 1);
    Ok(FilteredGraph::new(FilterKind::Mst, dissim.symbols().to_vec(), edges))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corr::{pearson_matrix, to_dissimilarity, DissimilarityKind};
    use crate::graph::testutil::{matrices, random_panel};
    use alloc::vec::Vec;

    #[test]
    fn tree_shape() {
        let (d, c) = matrices(7, 12);
        let g = build_mst(&d, &c).unwrap();
        assert_eq!(g.edge_count(), 11);
        // spanning: one component
        let mut uf = UnionFind::new(12);
        for e in g.edges() {
            assert!(uf.union(e.i, e.j), "tree has no cycles");
        }
        for v in 1..12 {
            assert_eq!(uf.find(0), uf.find(v));
        }
    }

    #[test]
    fn total_weight_matches_exhaustive_minimum() {
        // every spanning tree of K6 enumerated as 5-edge subsets
        for seed in [1u64, 2, 3] {
            let n = 6;
            let (d, c) = matrices(seed, n);
            let g = build_mst(&d, &c).unwrap();
            let got: f64 = g.edges().iter().map(|e| e.dissimilarity).sum();

            let mut pairs = Vec::new();
            for i in 0..n {
                for j in (i + 1)..n {
                    pairs.push((i, j));
                }
            }
            let mut best = f64::INFINITY;
            let m = pairs.len();
            // all 5-subsets of the 15 pairs
            let mut idx = [0usize; 5];
            fn rec(
                pairs: &[(usize, usize)],
                d: &DissimilarityMatrix,
                idx: &mut [usize; 5],
                depth: usize,
                start: usize,
                m: usize,
                n: usize,
                best: &mut f64,
            ) {
                if depth == 5 {
                    let mut uf = UnionFind::new(n);
                    let mut acyclic = true;
                    let mut w = 0.0;
                    for &k in idx.iter() {
                        let (i, j) = pairs[k];
                        if !uf.union(i, j) {
                            acyclic = false;
                            break;
                        }
                        w += d.value(i, j);
                    }
                    if acyclic && w < *best {
                        *best = w;
                    }
                    return;
                }
                for k in start..m {
                    idx[depth] = k;
                    rec(pairs, d, idx, depth + 1, k + 1, m, n, best);
                }
            }
            rec(&pairs, &d, &mut idx, 0, 0, m, n, &mut best);
            assert!((got - best).abs() < 1e-12, "kruskal {got} vs exhaustive {best}");
        }
    }

    #[test]
    fn too_few_nodes() {
        let (d, c) = matrices(1, 12);
        // shrink is not possible through the public API; check the n=1 guard
        // through a 1-asset panel instead
        drop((d, c));
        let corr = pearson_matrix(&random_panel(4, 1, 32)).unwrap();
        let dis = to_dissimilarity(&corr, DissimilarityKind::Power);
        assert_eq!(
            build_mst(&dis, &corr).unwrap_err(),
            GraphError::TooFewNodes { n: 1, required: 2 }
        );
    }

    #[test]
    fn mismatched_universes_rejected() {
        let (d, _) = matrices(1, 6);
        let (_, c) = matrices(1, 7);
        assert_eq!(build_mst(&d, &c).unwrap_err(), GraphError::DimensionMismatch);
    }
}
