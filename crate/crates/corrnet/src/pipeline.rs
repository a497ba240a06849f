//! End-to-end orchestration: ingest CSVs → per-horizon panels → correlation
//! and dissimilarity matrices → filtered graphs → validation → reports.
//!
//! Horizons are processed on independent threads; determinism is preserved
//! because every horizon derives its own RNG seeds from the master seed and
//! writes only its own files, and results are merged in horizon order.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use chrono::{SecondsFormat, TimeZone, Utc};
use corrnet_core::adf::{adf_test, AdfResult};
use corrnet_core::analysis::{
    average_shortest_path, degree_centrality, filtered_correlation_summary,
    group_degree_centrality, AnalysisError, GraphStats, HorizonReport,
};
use corrnet_core::bars::{fill_gaps, resample, BarSeries, OhlcvBar};
use corrnet_core::corr::{pearson_matrix, to_dissimilarity, CorrelationMatrix};
use corrnet_core::graph::build_filtered;
use corrnet_core::returns::{log_returns, ReturnPanel};
use corrnet_core::summary::{group_summary, pairwise_summary, summarize_values, CorrelationSummary};
use corrnet_core::validation::{annotate_significance, bootstrap_stability, shuffle_null};
use thiserror::Error;

use crate::config::{ConfigError, GapFillStage, PipelineConfig};
use crate::export::{export_graph_view, ExportError, ExportFormat, GraphView};
use crate::manifest::{GraphArtifact, HorizonArtifacts, ManifestError, RunManifest};
use crate::ohlcv::{read_ohlcv_file, OhlcvError};
use crate::report::{
    report_tables, write_report, BootstrapDto, EdgeDto, EnvelopeDto, GraphReportDto,
    HorizonReportDto, ReportError, SignificanceDto, SummaryDto,
};
use crate::taxonomy_io::{read_taxonomy_file, TaxonomyIoError};

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Taxonomy(#[from] TaxonomyIoError),
    #[error(transparent)]
    Ohlcv(#[from] OhlcvError),
    #[error("no data for {symbol} at horizon {horizon_s}s: expected {path}")]
    MissingData { symbol: String, horizon_s: u32, path: PathBuf },
    #[error("symbol series share no common time window")]
    NoCommonWindow,
    #[error("horizon {horizon_s}s, {stage}: {detail}")]
    Module { horizon_s: u32, stage: &'static str, detail: String },
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Export(#[from] ExportError),
    #[error(transparent)]
    Manifest(#[from] ManifestError),
    #[error(transparent)]
    Report(#[from] ReportError),
}

fn module_err<E: std::fmt::Display>(
    horizon_s: u32,
    stage: &'static str,
) -> impl FnOnce(E) -> PipelineError {
    move |e| PipelineError::Module { horizon_s, stage, detail: e.to_string() }
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> PipelineError + '_ {
    move |source| PipelineError::Io { path: path.to_path_buf(), source }
}

/// splitmix64; spreads structured (master, horizon, purpose) labels into
/// decorrelated seeds for the per-stage RNG streams.
fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

fn derive_seed(master: u64, horizon_s: u32, purpose: u64) -> u64 {
    splitmix64(master ^ splitmix64((u64::from(horizon_s) << 8) | purpose))
}

/// One symbol's ADF outcome; failures are recorded, not fatal — coarse
/// horizons can legitimately leave too few observations for the regression.
#[derive(Clone, Debug)]
pub struct AdfRecord {
    pub symbol: String,
    pub outcome: Result<AdfResult, String>,
}

#[derive(Clone, Debug)]
pub struct IngestedHorizon {
    pub horizon_s: u32,
    pub panel: ReturnPanel,
    pub adf: Vec<AdfRecord>,
    /// gap slots filled per symbol while building this horizon
    pub filled_slots: BTreeMap<String, usize>,
}

#[derive(Clone, Debug)]
pub struct IngestStats {
    /// shared window endpoints at the base horizon, unix seconds
    pub window_start: i64,
    pub window_end: i64,
}

fn trim_window(series: &BarSeries, start: i64, end: i64) -> Result<BarSeries, PipelineError> {
    let bars: Vec<OhlcvBar> =
        series.bars().iter().copied().filter(|b| (start..=end).contains(&b.timestamp)).collect();
    if bars.is_empty() {
        return Err(PipelineError::NoCommonWindow);
    }
    Ok(BarSeries::new(series.symbol().to_string(), series.horizon_s(), bars)
        .expect("a contiguous slice of a valid series stays valid"))
}

fn common_window(series: &[BarSeries]) -> Result<(i64, i64), PipelineError> {
    let start = series.iter().map(|s| s.bars()[0].timestamp).max().expect("nonempty universe");
    let end = series
        .iter()
        .map(|s| s.bars().last().expect("parser rejects empty series").timestamp)
        .min()
        .expect("nonempty universe");
    if start > end {
        return Err(PipelineError::NoCommonWindow);
    }
    Ok((start, end))
}

fn align_to_window(series: &mut Vec<BarSeries>) -> Result<(i64, i64), PipelineError> {
    let (start, end) = common_window(series)?;
    for s in series.iter_mut() {
        *s = trim_window(s, start, end)?;
    }
    Ok((start, end))
}

/// Reads every taxonomy symbol's base-horizon CSV and builds one synchronous
/// return panel per configured horizon, gap-filling at the stage the config
/// selects. Horizons come back sorted ascending.
pub fn ingest_panels(
    config: &PipelineConfig,
) -> Result<(Vec<IngestedHorizon>, IngestStats), PipelineError> {
    config.validate()?;
    let base = config.base_horizon_s;
    let taxonomy = read_taxonomy_file(&config.taxonomy_path)?;
    let symbols: Vec<String> = taxonomy.iter().map(|(s, _)| s.to_string()).collect();

    let mut base_series = Vec::with_capacity(symbols.len());
    let mut base_fills: BTreeMap<String, usize> = BTreeMap::new();
    for symbol in &symbols {
        let path = config.data_dir.join(format!("{symbol}.csv"));
        if !path.is_file() {
            return Err(PipelineError::MissingData {
                symbol: symbol.clone(),
                horizon_s: base,
                path,
            });
        }
        let series = read_ohlcv_file(&path, symbol, base)?;
        match config.gap_fill {
            GapFillStage::Base => {
                let (filled, count) = fill_gaps(&series).map_err(module_err(base, "gap_fill"))?;
                base_fills.insert(symbol.clone(), count);
                base_series.push(filled);
            }
            GapFillStage::Target => base_series.push(series),
        }
    }
    let (window_start, window_end) = align_to_window(&mut base_series)?;

    let mut horizons = config.horizons_s.clone();
    horizons.sort_unstable();

    let mut out = Vec::with_capacity(horizons.len());
    for &h in &horizons {
        let mut filled_slots: BTreeMap<String, usize> = BTreeMap::new();
        let mut at_horizon = Vec::with_capacity(base_series.len());
        for series in &base_series {
            let resampled = if h == base {
                series.clone()
            } else {
                resample(series, h).map_err(module_err(h, "resample"))?
            };
            match config.gap_fill {
                GapFillStage::Base => {
                    // already gapless at base; resampling a gapless window
                    // cannot create empty bins
                    filled_slots.insert(series.symbol().to_string(), if h == base {
                        *base_fills.get(series.symbol()).unwrap_or(&0)
                    } else {
                        0
                    });
                    at_horizon.push(resampled);
                }
                GapFillStage::Target => {
                    let (filled, count) =
                        fill_gaps(&resampled).map_err(module_err(h, "gap_fill"))?;
                    filled_slots.insert(series.symbol().to_string(), count);
                    at_horizon.push(filled);
                }
            }
        }
        if config.gap_fill == GapFillStage::Target {
            // per-symbol fills can end on different grid spans; re-align
            align_to_window(&mut at_horizon)?;
        }

        let grid_len = at_horizon[0].len();
        let grid_start = at_horizon[0].bars()[0].timestamp;
        if at_horizon.iter().any(|s| s.len() != grid_len || s.bars()[0].timestamp != grid_start) {
            return Err(PipelineError::Module {
                horizon_s: h,
                stage: "align",
                detail: "symbol grids diverge after resampling".to_string(),
            });
        }

        let mut rows = Vec::with_capacity(at_horizon.len());
        let mut adf = Vec::with_capacity(at_horizon.len());
        for series in &at_horizon {
            let returns = log_returns(&series.closes()).map_err(|e| PipelineError::Module {
                horizon_s: h,
                stage: "log_returns",
                detail: format!("{}: {e}", series.symbol()),
            })?;
            adf.push(AdfRecord {
                symbol: series.symbol().to_string(),
                outcome: adf_test(&returns, None).map_err(|e| e.to_string()),
            });
            rows.push(returns);
        }
        let panel = ReturnPanel::new(h, symbols.clone(), rows, taxonomy.clone())
            .map_err(module_err(h, "panel"))?;
        out.push(IngestedHorizon { horizon_s: h, panel, adf, filled_slots });
    }
    Ok((out, IngestStats { window_start, window_end }))
}

fn float_cell(v: f64) -> String {
    format!("{v}")
}

fn matrix_csv(symbols: &[String], value: impl Fn(usize, usize) -> f64) -> String {
    let n = symbols.len();
    let mut out = symbols.join(",");
    out.push('\n');
    for i in 0..n {
        let row: Vec<String> = (0..n).map(|j| float_cell(value(i, j))).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

fn correlation_json(corr: &CorrelationMatrix) -> String {
    let n = corr.n();
    let values: Vec<Vec<f64>> =
        (0..n).map(|i| (0..n).map(|j| corr.value(i, j)).collect()).collect();
    serde_json::to_string_pretty(&serde_json::json!({
        "symbols": corr.symbols(),
        "t_len": corr.t_len(),
        "values": values,
    }))
    .expect("matrix json")
}

fn adf_csv(records: &[AdfRecord]) -> String {
    let mut out =
        String::from("symbol,lag_order,n_obs,statistic,crit_1pct,crit_5pct,crit_10pct,reject_5pct,note\n");
    for r in records {
        match &r.outcome {
            Ok(a) => {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{},{},{},",
                    r.symbol,
                    a.lag_order,
                    a.n_obs,
                    float_cell(a.statistic),
                    float_cell(a.crit_1pct),
                    float_cell(a.crit_5pct),
                    float_cell(a.crit_10pct),
                    a.reject_5pct
                );
            }
            Err(detail) => {
                let _ = writeln!(out, "{},,,,,,,,{}", r.symbol, detail.replace(',', ";"));
            }
        }
    }
    out
}

/// The configured percentile levels plus the quartiles Table 2 needs,
/// ascending and deduplicated.
fn with_quartiles(levels: &[f64]) -> Vec<f64> {
    let mut out = levels.to_vec();
    for q in [25.0, 75.0] {
        if !out.iter().any(|l| (l - q).abs() < 1e-9) {
            out.push(q);
        }
    }
    out.sort_by(f64::total_cmp);
    out
}

fn abs_summary(
    values: &[f64],
    levels: &[f64],
    horizon_s: u32,
) -> Result<CorrelationSummary, PipelineError> {
    let abs: Vec<f64> = values.iter().map(|v| v.abs()).collect();
    summarize_values(&abs, levels).map_err(module_err(horizon_s, "summary"))
}

struct HorizonOutput {
    artifacts: HorizonArtifacts,
    elapsed_ms: u64,
}

fn process_horizon(
    config: &PipelineConfig,
    ingested: &IngestedHorizon,
    root: &Path,
) -> Result<HorizonOutput, PipelineError> {
    let started = Instant::now();
    let h = ingested.horizon_s;
    let panel = &ingested.panel;
    let master = config.master_seed;
    let dir_rel = PathBuf::from(format!("horizon_{h}"));
    let dir = root.join(&dir_rel);
    fs::create_dir_all(&dir).map_err(io_err(&dir))?;

    let corr = pearson_matrix(panel).map_err(module_err(h, "correlation"))?;
    let dissim = to_dissimilarity(&corr, config.dissimilarity_kind);

    let write_file = |name: &str, text: &str| -> Result<PathBuf, PipelineError> {
        let full = dir.join(name);
        fs::write(&full, text).map_err(io_err(&full))?;
        Ok(dir_rel.join(name))
    };
    let correlation_csv = write_file("correlation.csv", &matrix_csv(corr.symbols(), |i, j| corr.value(i, j)))?;
    let correlation_json_path = write_file("correlation.json", &correlation_json(&corr))?;
    let dissimilarity_csv =
        write_file("dissimilarity.csv", &matrix_csv(dissim.symbols(), |i, j| dissim.value(i, j)))?;
    let adf_path = write_file("adf.csv", &adf_csv(&ingested.adf))?;

    let envelope = shuffle_null(panel, config.shuffle_count, derive_seed(master, h, 0), false)
        .map_err(module_err(h, "shuffle_null"))?;
    let all_coeffs: Vec<f64> = corr.upper_triangle().map(|(_, _, v)| v).collect();
    let matrix_sig =
        annotate_significance(&all_coeffs, &envelope).map_err(module_err(h, "significance"))?;

    let levels = &config.percentile_levels;
    let abs_levels = with_quartiles(levels);
    let pairwise = pairwise_summary(&corr, levels).map_err(module_err(h, "summary"))?;
    let pairwise_abs = abs_summary(&all_coeffs, &abs_levels, h)?;

    let groups = panel.taxonomy().effective_groups(panel.symbols());
    let mut per_sector_core: Vec<(String, CorrelationSummary)> = Vec::new();
    for (sector, members) in &groups {
        if members.len() < 2 {
            continue;
        }
        let summary = group_summary(&corr, members, levels).map_err(module_err(h, "summary"))?;
        per_sector_core.push((sector.clone(), summary));
    }

    let mut graph_stats: Vec<GraphStats> = Vec::new();
    let mut graph_dtos: Vec<GraphReportDto> = Vec::new();
    let mut graph_artifacts: Vec<GraphArtifact> = Vec::new();
    for (filter_idx, &kind) in config.filters.iter().enumerate() {
        let graph = build_filtered(kind, &dissim, &corr).map_err(module_err(h, "filter"))?;
        let view = GraphView::from_filtered(&graph, panel.taxonomy());

        let graphml_rel = dir_rel.join(format!("graph_{}.graphml", kind.name()));
        let dot_rel = dir_rel.join(format!("graph_{}.dot", kind.name()));
        export_graph_view(&view, ExportFormat::GraphMl, &root.join(&graphml_rel))?;
        export_graph_view(&view, ExportFormat::Dot, &root.join(&dot_rel))?;
        graph_artifacts.push(GraphArtifact {
            kind: kind.name().to_string(),
            graphml: graphml_rel,
            dot: dot_rel,
        });

        let centrality = degree_centrality(&graph);
        let raw_degrees = graph.degrees();
        let avg_path = average_shortest_path(&graph).map_err(module_err(h, "shortest_path"))?;
        let filtered_corr =
            filtered_correlation_summary(&graph, levels).map_err(module_err(h, "summary"))?;
        let edge_corrs: Vec<f64> = graph.edges().iter().map(|e| e.correlation).collect();
        let edge_abs = abs_summary(&edge_corrs, &abs_levels, h)?;
        let significance =
            annotate_significance(&edge_corrs, &envelope).map_err(module_err(h, "significance"))?;
        let bootstrap = bootstrap_stability(
            panel,
            kind,
            config.dissimilarity_kind,
            config.bootstrap_replicas,
            config.bootstrap_threshold,
            derive_seed(master, h, 1 + filter_idx as u64),
        )
        .map_err(module_err(h, "bootstrap"))?;

        let mut group_centrality = BTreeMap::new();
        for (sector, members) in &groups {
            match group_degree_centrality(&graph, members) {
                Ok(v) => {
                    group_centrality.insert(sector.clone(), v);
                }
                // a universe with a single (folded) sector has no outside
                // nodes to reach; the figure simply omits that group
                Err(AnalysisError::GroupIsEntireGraph) => {}
                Err(e) => return Err(module_err(h, "group_centrality")(e)),
            }
        }

        let symbols = panel.symbols();
        graph_dtos.push(GraphReportDto {
            kind: kind.name().to_string(),
            edge_count: graph.edge_count(),
            edges: graph
                .edges()
                .iter()
                .map(|e| EdgeDto {
                    a: symbols[e.i].clone(),
                    b: symbols[e.j].clone(),
                    correlation: e.correlation,
                    dissimilarity: e.dissimilarity,
                    negative: e.negative,
                })
                .collect(),
            avg_shortest_path: avg_path,
            degree_centrality: symbols
                .iter()
                .cloned()
                .zip(centrality.iter().copied())
                .collect(),
            raw_degree: symbols.iter().cloned().zip(raw_degrees.iter().copied()).collect(),
            group_centrality,
            filtered_correlation: SummaryDto::from_core(&filtered_corr),
            edge_abs: SummaryDto::from_core(&edge_abs),
            significance: SignificanceDto::from_core(&significance),
            bootstrap: BootstrapDto::from_core(&bootstrap, symbols),
        });
        graph_stats.push(GraphStats {
            kind,
            avg_shortest_path: avg_path,
            degree_centrality: centrality,
            raw_degrees,
            filtered_correlation: filtered_corr,
            significance,
            bootstrap,
        });
    }

    // the core bundle is assembled even though only its DTO leaves the
    // process: it runs the same invariant debug-asserts the library's own
    // consumers rely on
    let core_report = HorizonReport {
        horizon_s: h,
        pairwise,
        per_sector: per_sector_core,
        graphs: graph_stats,
    };

    let dto = HorizonReportDto {
        horizon_s: h,
        t_len: panel.t_len(),
        symbols: panel.symbols().to_vec(),
        sectors: panel
            .symbols()
            .iter()
            .map(|s| panel.taxonomy().sector_of(s).unwrap_or("unassigned").to_string())
            .collect(),
        pairwise: SummaryDto::from_core(&core_report.pairwise),
        pairwise_abs: SummaryDto::from_core(&pairwise_abs),
        per_sector: core_report
            .per_sector
            .iter()
            .map(|(sector, summary)| (sector.clone(), SummaryDto::from_core(summary)))
            .collect(),
        envelope: EnvelopeDto::from_core(&envelope),
        matrix_significance: SignificanceDto::from_core(&matrix_sig),
        graphs: graph_dtos,
    };
    let report_rel = dir_rel.join("report.json");
    write_report(&root.join(&report_rel), &dto)?;

    Ok(HorizonOutput {
        artifacts: HorizonArtifacts {
            horizon_s: h,
            report_json: report_rel,
            correlation_csv,
            correlation_json: correlation_json_path,
            dissimilarity_csv,
            adf_csv: adf_path,
            graphs: graph_artifacts,
        },
        elapsed_ms: started.elapsed().as_millis() as u64,
    })
}

fn now_utc() -> String {
    Utc::now().to_rfc3339_opts(SecondsFormat::Millis, true)
}

/// Runs the full pipeline and writes `manifest.json` last. On a per-horizon
/// failure the manifest is still written, marked incomplete, before the
/// error propagates.
pub fn run_pipeline(config: &PipelineConfig) -> Result<RunManifest, PipelineError> {
    let total_start = Instant::now();
    config.validate()?;
    let root = config.output_dir.clone();
    fs::create_dir_all(&root).map_err(io_err(&root))?;

    let ingest_start = Instant::now();
    let (ingested, _stats) = ingest_panels(config)?;
    let ingest_ms = ingest_start.elapsed().as_millis() as u64;

    let results: Vec<Result<HorizonOutput, PipelineError>> = std::thread::scope(|scope| {
        let handles: Vec<_> = ingested
            .iter()
            .map(|horizon| scope.spawn(|| process_horizon(config, horizon, &root)))
            .collect();
        handles.into_iter().map(|handle| handle.join().expect("horizon worker panicked")).collect()
    });

    let mut timings_ms = BTreeMap::from([("ingest".to_string(), ingest_ms)]);
    let mut horizons = Vec::new();
    let mut first_error = None;
    for (ingested_horizon, result) in ingested.iter().zip(results) {
        match result {
            Ok(output) => {
                timings_ms
                    .insert(format!("horizon_{}", ingested_horizon.horizon_s), output.elapsed_ms);
                horizons.push(output.artifacts);
            }
            Err(e) => {
                if first_error.is_none() {
                    first_error = Some(e);
                }
            }
        }
    }

    let mut manifest = RunManifest {
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        created_utc: now_utc(),
        master_seed: config.master_seed,
        complete: first_error.is_none(),
        incomplete_reason: first_error.as_ref().map(|e| e.to_string()),
        config: config.clone(),
        horizons,
        tables: Vec::new(),
        timings_ms,
    };
    if let Some(error) = first_error {
        let _ = manifest.write(&root);
        return Err(error);
    }

    let tables_start = Instant::now();
    match report_tables(&manifest, &root) {
        Ok(tables) => manifest.tables = tables,
        Err(e) => {
            manifest.complete = false;
            manifest.incomplete_reason = Some(e.to_string());
            let _ = manifest.write(&root);
            return Err(e.into());
        }
    }
    manifest.timings_ms.insert("reports".to_string(), tables_start.elapsed().as_millis() as u64);
    manifest.timings_ms.insert("total".to_string(), total_start.elapsed().as_millis() as u64);
    manifest.write(&root)?;
    Ok(manifest)
}

fn panel_csv(panel: &ReturnPanel) -> String {
    let mut out = panel.symbols().join(",");
    out.push('\n');
    for t in 0..panel.t_len() {
        let row: Vec<String> = (0..panel.n_assets()).map(|i| float_cell(panel.row(i)[t])).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

fn format_utc(ts: i64) -> String {
    Utc.timestamp_opt(ts, 0)
        .single()
        .expect("window endpoints are valid unix seconds")
        .to_rfc3339_opts(SecondsFormat::Secs, true)
}

/// The `ingest` verb: validates and aligns the raw data, then writes the
/// per-horizon return panels, ADF logs, and an ingest summary.
pub fn run_ingest(config: &PipelineConfig) -> Result<Vec<PathBuf>, PipelineError> {
    config.validate()?;
    let root = config.output_dir.clone();
    let panels_dir = root.join("panels");
    fs::create_dir_all(&panels_dir).map_err(io_err(&panels_dir))?;

    let (ingested, stats) = ingest_panels(config)?;
    let mut written = Vec::new();
    let mut panel_meta = Vec::new();
    for horizon in &ingested {
        let h = horizon.horizon_s;
        let panel_rel = PathBuf::from(format!("panels/panel_{h}.csv"));
        let adf_rel = PathBuf::from(format!("panels/adf_{h}.csv"));
        fs::write(root.join(&panel_rel), panel_csv(&horizon.panel))
            .map_err(io_err(&root.join(&panel_rel)))?;
        fs::write(root.join(&adf_rel), adf_csv(&horizon.adf))
            .map_err(io_err(&root.join(&adf_rel)))?;
        panel_meta.push(serde_json::json!({
            "horizon_s": h,
            "t_len": horizon.panel.t_len(),
            "panel_csv": panel_rel,
            "adf_csv": adf_rel,
            "filled_slots": horizon.filled_slots,
        }));
        written.push(panel_rel);
        written.push(adf_rel);
    }

    let summary = serde_json::json!({
        "window_start_utc": format_utc(stats.window_start),
        "window_end_utc": format_utc(stats.window_end),
        "gap_fill": config.gap_fill,
        "panels": panel_meta,
    });
    let summary_rel = PathBuf::from("ingest.json");
    fs::write(
        root.join(&summary_rel),
        serde_json::to_string_pretty(&summary).expect("summary json"),
    )
    .map_err(io_err(&root.join(&summary_rel)))?;
    written.push(summary_rel);
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derived_seeds_are_stable_and_distinct() {
        let a = derive_seed(7, 15, 0);
        assert_eq!(a, derive_seed(7, 15, 0));
        assert_ne!(a, derive_seed(7, 15, 1));
        assert_ne!(a, derive_seed(7, 60, 0));
        assert_ne!(a, derive_seed(8, 15, 0));
    }

    #[test]
    fn quartiles_are_added_once_and_sorted() {
        assert_eq!(with_quartiles(&[10.0, 50.0, 90.0]), vec![10.0, 25.0, 50.0, 75.0, 90.0]);
        assert_eq!(with_quartiles(&[75.0, 25.0]), vec![25.0, 75.0]);
    }

    #[test]
    fn matrix_csv_header_is_exactly_the_symbols() {
        let text = matrix_csv(&["A".to_string(), "B".to_string()], |i, j| {
            if i == j {
                1.0
            } else {
                0.5
            }
        });
        assert_eq!(text, "A,B\n1,0.5\n0.5,1\n");
    }

    #[test]
    fn adf_csv_quarantines_error_notes_from_the_delimiter() {
        let records = vec![AdfRecord {
            symbol: "X".to_string(),
            outcome: Err("too short, need 15".to_string()),
        }];
        let text = adf_csv(&records);
        let data_line = text.lines().nth(1).unwrap();
        assert_eq!(data_line.split(',').count(), 9, "{data_line}");
        assert!(data_line.ends_with("too short; need 15"), "{data_line}");
    }
}
