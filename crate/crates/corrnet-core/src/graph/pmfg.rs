//! Planar maximally filtered graph.
//!
//! Ascending edge scan; an edge is kept iff the accepted set stays planar.
//! The scan ends once 3(n-2) edges are in, which is the edge count of any
//! maximal planar graph, so the result is always a triangulation. Planarity
//! is re-tested from scratch per candidate; the O(n) left-right test keeps
//! whole-matrix rebuilds comfortable for a few hundred nodes.

use alloc::vec::Vec;

use crate::corr::{CorrelationMatrix, DissimilarityMatrix};

use super::planarity::is_planar;
use super::{check_universe, make_edge, sorted_candidates, FilterKind, FilteredGraph, GraphError};

pub fn build_pmfg(
    dissim: &DissimilarityMatrix,
    corr: &CorrelationMatrix,
) -> Result<FilteredGraph, GraphError> {
    check_universe(dissim, corr)?;
    let n = dissim.n();
    if n < 3 {
        return Err(GraphError::TooFewNodes { n, required: 3 });
    }
    let target = 3 * (n - 2);
    let mut accepted: Vec<(usize, usize)> = Vec::with_capacity(target);
    let mut edges = Vec::with_capacity(target);
    for (_, i, j) in sorted_candidates(dissim) {
        accepted.push((i, j));
        if is_planar(n, &accepted) {
            edges.push(make_edge(i, j, corr, dissim));
            if edges.len() == target {
                break;
            }
        } else {
            accepted.pop();
        }
    }
    debug_assert_eq!(edges.len(), target);
    Ok(FilteredGraph::new(FilterKind::Pmfg, dissim.symbols().to_vec(), edges))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::mst::build_mst;
    use crate::graph::planarity::{check_planarity, PlanarityCheck};
    use crate::graph::testutil::matrices;

    #[test]
    fn reaches_the_triangulation_edge_count() {
        for &(seed, n) in &[(11u64, 5usize), (12, 9), (13, 16)] {
            let (d, c) = matrices(seed, n);
            let g = build_pmfg(&d, &c).unwrap();
            assert_eq!(g.edge_count(), 3 * (n - 2));
            match check_planarity(n, &g.index_pairs()) {
                PlanarityCheck::Planar(emb) => {
                    assert!(emb.euler_formula_holds());
                    // a triangulation has 2n - 4 faces
                    assert_eq!(emb.face_count(), 2 * n - 4);
                }
                PlanarityCheck::NonPlanar(_) => panic!("PMFG must be planar"),
            }
        }
    }

    #[test]
    fn contains_the_mst() {
        for seed in 20..25u64 {
            let (d, c) = matrices(seed, 12);
            let mst = build_mst(&d, &c).unwrap();
            let pmfg = build_pmfg(&d, &c).unwrap();
            for e in mst.edges() {
                assert!(pmfg.contains_edge(e.i, e.j), "MST edge ({},{}) missing", e.i, e.j);
            }
        }
    }

    #[test]
    fn rejects_tiny_universes() {
        let (d, c) = matrices(1, 2);
        assert_eq!(
            build_pmfg(&d, &c).unwrap_err(),
            GraphError::TooFewNodes { n: 2, required: 3 }
        );
    }
}
