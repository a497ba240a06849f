//! Descriptive network statistics and cross-horizon correlation curves.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::corr::{pearson_matrix, CorrError};
use crate::graph::{FilterKind, FilteredGraph};
use crate::returns::ReturnPanel;
use crate::summary::{group_summary, pairwise_summary, summarize_values, CorrelationSummary, SummaryError};
use crate::validation::{BootstrapReport, SignificanceAnnotation};

#[derive(Clone, Debug, PartialEq)]
pub enum AnalysisError {
    EmptyGroup,
    /// group covers every node, leaving nothing to connect to
    GroupIsEntireGraph,
    Disconnected,
    EdgelessGraph,
    /// panels disagree on the symbol universe
    InconsistentUniverse,
    Summary(SummaryError),
    Correlation(CorrError),
}

impl fmt::Display for AnalysisError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnalysisError::EmptyGroup => write!(f, "group is empty"),
            AnalysisError::GroupIsEntireGraph => write!(f, "group covers the whole graph"),
            AnalysisError::Disconnected => write!(f, "graph is not connected"),
            AnalysisError::EdgelessGraph => write!(f, "graph has no edges"),
            AnalysisError::InconsistentUniverse => {
                write!(f, "panels do not share one symbol universe")
            }
            AnalysisError::Summary(e) => write!(f, "summary failed: {e}"),
            AnalysisError::Correlation(e) => write!(f, "correlation failed: {e}"),
        }
    }
}

impl core::error::Error for AnalysisError {}

impl From<SummaryError> for AnalysisError {
    fn from(e: SummaryError) -> Self {
        AnalysisError::Summary(e)
    }
}

impl From<CorrError> for AnalysisError {
    fn from(e: CorrError) -> Self {
        AnalysisError::Correlation(e)
    }
}

/// Degree of each node divided by n−1, indexed like the graph's symbols.
pub fn degree_centrality(graph: &FilteredGraph) -> Vec<f64> {
    let n = graph.n();
    assert!(n >= 2, "centrality needs at least two nodes");
    let degrees = graph.degrees();
    debug_assert_eq!(degrees.iter().sum::<usize>(), 2 * graph.edge_count());
    degrees.iter().map(|&d| d as f64 / (n - 1) as f64).collect()
}

/// Fraction of non-group nodes adjacent to at least one group node.
pub fn group_degree_centrality(
    graph: &FilteredGraph,
    group: &[usize],
) -> Result<f64, AnalysisError> {
    if group.is_empty() {
        return Err(AnalysisError::EmptyGroup);
    }
    let n = graph.n();
    let mut in_group = alloc::vec![false; n];
    for &v in group {
        assert!(v < n, "group member out of range");
        in_group[v] = true;
    }
    let outside = in_group.iter().filter(|&&g| !g).count();
    if outside == 0 {
        return Err(AnalysisError::GroupIsEntireGraph);
    }
    let mut touched = alloc::vec![false; n];
    for e in graph.edges() {
        if in_group[e.i] && !in_group[e.j] {
            touched[e.j] = true;
        }
        if in_group[e.j] && !in_group[e.i] {
            touched[e.i] = true;
        }
    }
    let connected = touched.iter().filter(|&&t| t).count();
    Ok(connected as f64 / outside as f64)
}

/// Mean hop-count distance over all unordered node pairs.
pub fn average_shortest_path(graph: &FilteredGraph) -> Result<f64, AnalysisError> {
    let n = graph.n();
    assert!(n >= 2, "path length needs at least two nodes");
    let adj = graph.adjacency();
    let mut total = 0u64;
    let mut dist = alloc::vec![usize::MAX; n];
    let mut queue = alloc::collections::VecDeque::new();
    for src in 0..n {
        dist.iter_mut().for_each(|d| *d = usize::MAX);
        dist[src] = 0;
        queue.clear();
        queue.push_back(src);
        let mut reached = 1;
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    reached += 1;
                    // each unordered pair counted once, from its smaller end
                    if w > src {
                        total += dist[w] as u64;
                    }
                    queue.push_back(w);
                }
            }
        }
        if reached != n {
            return Err(AnalysisError::Disconnected);
        }
    }
    let pairs = (n * (n - 1) / 2) as f64;
    Ok(total as f64 / pairs)
}

/// Summary of the correlation coefficients surviving the filter.
pub fn filtered_correlation_summary(
    graph: &FilteredGraph,
    percentile_levels: &[f64],
) -> Result<CorrelationSummary, AnalysisError> {
    if graph.edge_count() == 0 {
        return Err(AnalysisError::EdgelessGraph);
    }
    let values: Vec<f64> = graph.edges().iter().map(|e| e.correlation).collect();
    Ok(summarize_values(&values, percentile_levels)?)
}

/// One point of the horizon-vs-correlation curve.
#[derive(Clone, Debug, PartialEq)]
pub struct EppsPoint {
    pub horizon_s: u32,
    pub pairwise: CorrelationSummary,
    /// effective sector groups with at least one intra-sector pair
    pub per_sector: Vec<(String, CorrelationSummary)>,
}

/// Pairwise and per-sector correlation summaries per horizon, ordered by
/// horizon. All panels must share one symbol universe; sector groups come
/// from each panel's taxonomy with singleton sectors folded together.
pub fn epps_curve(
    panels: &[ReturnPanel],
    percentile_levels: &[f64],
) -> Result<Vec<EppsPoint>, AnalysisError> {
    assert!(panels.len() >= 2, "a curve needs at least two horizons");
    let universe = panels[0].symbols();
    if panels[1..].iter().any(|p| p.symbols() != universe) {
        return Err(AnalysisError::InconsistentUniverse);
    }

    let mut order: Vec<usize> = (0..panels.len()).collect();
    order.sort_by_key(|&k| panels[k].horizon_s());
    let mut out = Vec::with_capacity(panels.len());
    for k in order {
        let panel = &panels[k];
        let corr = pearson_matrix(panel)?;
        let pairwise = pairwise_summary(&corr, percentile_levels)?;
        let mut per_sector = Vec::new();
        for (sector, members) in panel.taxonomy().effective_groups(panel.symbols()) {
            if members.len() < 2 {
                continue;
            }
            per_sector.push((sector, group_summary(&corr, &members, percentile_levels)?));
        }
        out.push(EppsPoint { horizon_s: panel.horizon_s(), pairwise, per_sector });
    }
    Ok(out)
}

/// Per-filter statistics bundle for one horizon.
#[derive(Clone, Debug, PartialEq)]
pub struct GraphStats {
    pub kind: FilterKind,
    pub avg_shortest_path: f64,
    pub degree_centrality: Vec<f64>,
    pub raw_degrees: Vec<usize>,
    pub filtered_correlation: CorrelationSummary,
    pub significance: SignificanceAnnotation,
    pub bootstrap: BootstrapReport,
}

/// Everything the pipeline reports about one horizon.
#[derive(Clone, Debug, PartialEq)]
pub struct HorizonReport {
    pub horizon_s: u32,
    pub pairwise: CorrelationSummary,
    pub per_sector: Vec<(String, CorrelationSummary)>,
    pub graphs: Vec<GraphStats>,
}
