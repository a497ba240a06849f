//! Correlation-network filters and their structural verifiers.
//!
//! All three filters consume the same inputs (a dissimilarity matrix plus the
//! correlation matrix it came from) and emit a [`FilteredGraph`] whose edge
//! sequence is deterministic: candidate edges are scanned in ascending
//! (dissimilarity, i, j) order, so equal inputs give byte-equal outputs.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::corr::{CorrelationMatrix, DissimilarityMatrix};

pub(crate) mod bitset;
pub mod chordal;
pub mod cliques;
pub mod mst;
pub mod planarity;
pub mod pmfg;
#[cfg(test)]
pub(crate) mod testutil;
pub mod tmfg;
pub(crate) mod union_find;

pub use chordal::{check_chordality, is_chordal, ChordalityCheck};
pub use cliques::{enumerate_cliques, CliqueReport};
pub use mst::build_mst;
pub use planarity::{check_planarity, is_planar, Embedding, KuratowskiKind, KuratowskiWitness, PlanarityCheck};
pub use pmfg::build_pmfg;
pub use tmfg::{build_tmfg, build_tmfg_traced, TmfgTrace};

/// Builds the filter selected by `kind` — the common entry point for callers
/// that treat the filter as configuration (pipeline, bootstrap replicas).
pub fn build_filtered(
    kind: FilterKind,
    dissim: &DissimilarityMatrix,
    corr: &CorrelationMatrix,
) -> Result<FilteredGraph, GraphError> {
    match kind {
        FilterKind::Mst => build_mst(dissim, corr),
        FilterKind::Pmfg => build_pmfg(dissim, corr),
        FilterKind::Tmfg => build_tmfg(dissim, corr),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum FilterKind {
    Mst,
    Pmfg,
    Tmfg,
}

impl FilterKind {
    pub fn name(self) -> &'static str {
        match self {
            FilterKind::Mst => "mst",
            FilterKind::Pmfg => "pmfg",
            FilterKind::Tmfg => "tmfg",
        }
    }

    /// Edge count the filter produces on n nodes.
    pub fn expected_edges(self, n: usize) -> usize {
        match self {
            FilterKind::Mst => n.saturating_sub(1),
            FilterKind::Pmfg | FilterKind::Tmfg => 3 * n.saturating_sub(2),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GraphEdge {
    pub i: usize,
    pub j: usize,
    pub correlation: f64,
    pub dissimilarity: f64,
    /// true when the underlying correlation is negative (rendered dashed in
    /// exports)
    pub negative: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphError {
    /// correlation and dissimilarity inputs disagree on the symbol universe
    DimensionMismatch,
    TooFewNodes { n: usize, required: usize },
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::DimensionMismatch => {
                write!(f, "correlation and dissimilarity matrices describe different universes")
            }
            GraphError::TooFewNodes { n, required } => {
                write!(f, "filter needs at least {required} nodes, got {n}")
            }
        }
    }
}

impl core::error::Error for GraphError {}

/// A filtered network over the panel's assets. Edges appear in the order the
/// filter accepted them; `i < j` within each edge.
#[derive(Clone, Debug, PartialEq)]
pub struct FilteredGraph {
    pub kind: FilterKind,
    symbols: Vec<String>,
    edges: Vec<GraphEdge>,
}

impl FilteredGraph {
    pub(crate) fn new(kind: FilterKind, symbols: Vec<String>, edges: Vec<GraphEdge>) -> Self {
        let n = symbols.len();
        if cfg!(debug_assertions) {
            for (k, e) in edges.iter().enumerate() {
                debug_assert!(e.i < e.j && e.j < n);
                debug_assert!(
                    !edges[..k].iter().any(|p| (p.i, p.j) == (e.i, e.j)),
                    "duplicate edge"
                );
            }
        }
        FilteredGraph { kind, symbols, edges }
    }

    pub fn n(&self) -> usize {
        self.symbols.len()
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn edges(&self) -> &[GraphEdge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn index_pairs(&self) -> Vec<(usize, usize)> {
        self.edges.iter().map(|e| (e.i, e.j)).collect()
    }

    pub fn contains_edge(&self, i: usize, j: usize) -> bool {
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        self.edges.iter().any(|e| e.i == a && e.j == b)
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = alloc::vec![0usize; self.n()];
        for e in &self.edges {
            deg[e.i] += 1;
            deg[e.j] += 1;
        }
        deg
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = alloc::vec![Vec::new(); self.n()];
        for e in &self.edges {
            adj[e.i].push(e.j);
            adj[e.j].push(e.i);
        }
        for nbrs in &mut adj {
            nbrs.sort_unstable();
        }
        adj
    }
}

/// Validates that both matrices talk about the same symbols in the same
/// order.
pub(crate) fn check_universe(
    dissim: &DissimilarityMatrix,
    corr: &CorrelationMatrix,
) -> Result<(), GraphError> {
    if dissim.n() != corr.n() || dissim.symbols() != corr.symbols() {
        return Err(GraphError::DimensionMismatch);
    }
    Ok(())
}

/// All unordered pairs ascending by (dissimilarity, i, j). The index
/// tie-break pins the scan order when dissimilarities collide.
pub(crate) fn sorted_candidates(dissim: &DissimilarityMatrix) -> Vec<(f64, usize, usize)> {
    let n = dissim.n();
    let mut out = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in (i + 1)..n {
            out.push((dissim.value(i, j), i, j));
        }
    }
    out.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
    out
}

pub(crate) fn make_edge(
    i: usize,
    j: usize,
    corr: &CorrelationMatrix,
    dissim: &DissimilarityMatrix,
) -> GraphEdge {
    let rho = corr.value(i, j);
    GraphEdge { i, j, correlation: rho, dissimilarity: dissim.value(i, j), negative: rho < 0.0 }
}
