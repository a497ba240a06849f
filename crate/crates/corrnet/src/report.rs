//! Per-horizon report documents (JSON) and the cross-horizon tables and
//! figure series derived from them.
//!
//! The report JSON is the durable record: it carries enough structure
//! (node sectors, edge lists, summaries) to rebuild every table, figure, and
//! graph export without rerunning the pipeline.
//!
//! Emitted tables:
//! - `table2.csv` — per horizon: mean |ρ| with significance stars, and the
//!   25th/75th percentiles of |ρ|, for the full matrix (`C`) and each filter.
//! - `table3.csv` — per horizon: percentage of filtered edges whose
//!   bootstrap support exceeds the configured threshold.
//! - `table_a4.csv` — per horizon: how many links fall inside the shuffle
//!   null envelope, for the full matrix and each filter.
//!
//! Figure series (JSON): correlation-vs-horizon curves (`fig3_epps`), degree
//! centrality trajectories (`fig4_degree_centrality`), average shortest path
//! (`fig5_path_length`), and sector group centrality (`fig6_group_centrality`).

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use corrnet_core::summary::CorrelationSummary;
use corrnet_core::validation::{BootstrapReport, NullEnvelope, SignificanceAnnotation};
use serde::{Deserialize, Serialize};
use serde_json::json;
use thiserror::Error;

use crate::manifest::RunManifest;

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Json { path: PathBuf, source: serde_json::Error },
    #[error("manifest is incomplete: {reason}")]
    IncompleteManifest { reason: String },
    #[error("report for horizon {horizon_s}s lacks the {level}th percentile")]
    MissingPercentile { horizon_s: u32, level: f64 },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SummaryDto {
    pub mean: f64,
    pub mean_abs: f64,
    /// (level in percent, value) in ascending level order
    pub percentiles: Vec<(f64, f64)>,
    pub count: usize,
}

impl SummaryDto {
    pub fn from_core(summary: &CorrelationSummary) -> Self {
        SummaryDto {
            mean: summary.mean,
            mean_abs: summary.mean_abs,
            percentiles: summary.percentiles.clone(),
            count: summary.count,
        }
    }

    pub fn percentile(&self, level: f64) -> Option<f64> {
        self.percentiles
            .iter()
            .find(|(l, _)| (l - level).abs() < 1e-9)
            .map(|&(_, v)| v)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnvelopeDto {
    pub shuffle_count: usize,
    pub min_coeff: f64,
    pub max_coeff: f64,
}

impl EnvelopeDto {
    pub fn from_core(envelope: &NullEnvelope) -> Self {
        EnvelopeDto {
            shuffle_count: envelope.shuffle_count,
            min_coeff: envelope.min_coeff,
            max_coeff: envelope.max_coeff,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SignificanceDto {
    pub links_within_envelope: usize,
    pub total_links: usize,
    pub p_value: f64,
    /// "", "*", "**", or "***"
    pub stars: String,
}

impl SignificanceDto {
    pub fn from_core(sig: &SignificanceAnnotation) -> Self {
        SignificanceDto {
            links_within_envelope: sig.links_within_envelope,
            total_links: sig.total_links,
            p_value: sig.p_value,
            stars: sig.stars.label().to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EdgeDto {
    pub a: String,
    pub b: String,
    pub correlation: f64,
    pub dissimilarity: f64,
    pub negative: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EdgeSupportDto {
    pub a: String,
    pub b: String,
    pub support: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BootstrapDto {
    pub replica_count: usize,
    pub threshold: f64,
    pub frac_edges_above_threshold: f64,
    pub per_edge_support: Vec<EdgeSupportDto>,
}

impl BootstrapDto {
    pub fn from_core(report: &BootstrapReport, symbols: &[String]) -> Self {
        BootstrapDto {
            replica_count: report.replica_count,
            threshold: report.threshold,
            frac_edges_above_threshold: report.frac_edges_above_threshold,
            per_edge_support: report
                .per_edge_support
                .iter()
                .map(|(&(i, j), &support)| EdgeSupportDto {
                    a: symbols[i].clone(),
                    b: symbols[j].clone(),
                    support,
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GraphReportDto {
    pub kind: String,
    pub edge_count: usize,
    pub edges: Vec<EdgeDto>,
    pub avg_shortest_path: f64,
    pub degree_centrality: BTreeMap<String, f64>,
    pub raw_degree: BTreeMap<String, usize>,
    /// sector group → fraction of non-members adjacent to the group
    pub group_centrality: BTreeMap<String, f64>,
    /// signed summary over edge coefficients at the configured levels
    pub filtered_correlation: SummaryDto,
    /// summary over |coefficient| with the 25th/75th percentiles included
    pub edge_abs: SummaryDto,
    pub significance: SignificanceDto,
    pub bootstrap: BootstrapDto,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HorizonReportDto {
    pub horizon_s: u32,
    pub t_len: usize,
    pub symbols: Vec<String>,
    /// sector per symbol, aligned with `symbols`
    pub sectors: Vec<String>,
    /// signed summary over all off-diagonal coefficients
    pub pairwise: SummaryDto,
    /// summary over |coefficient| with the 25th/75th percentiles included
    pub pairwise_abs: SummaryDto,
    pub per_sector: BTreeMap<String, SummaryDto>,
    pub envelope: EnvelopeDto,
    /// significance of the full coefficient set against the envelope
    pub matrix_significance: SignificanceDto,
    pub graphs: Vec<GraphReportDto>,
}

pub fn read_report(path: &Path) -> Result<HorizonReportDto, ReportError> {
    let text =
        fs::read_to_string(path).map_err(|source| ReportError::Io { path: path.to_path_buf(), source })?;
    serde_json::from_str(&text).map_err(|source| ReportError::Json { path: path.to_path_buf(), source })
}

pub fn write_report(path: &Path, report: &HorizonReportDto) -> Result<(), ReportError> {
    let text = serde_json::to_string_pretty(report)
        .map_err(|source| ReportError::Json { path: path.to_path_buf(), source })?;
    fs::write(path, text).map_err(|source| ReportError::Io { path: path.to_path_buf(), source })
}

fn write_under(root: &Path, rel: &str, text: &str) -> Result<PathBuf, ReportError> {
    let full = root.join(rel);
    if let Some(parent) = full.parent() {
        fs::create_dir_all(parent)
            .map_err(|source| ReportError::Io { path: parent.to_path_buf(), source })?;
    }
    fs::write(&full, text).map_err(|source| ReportError::Io { path: full.clone(), source })?;
    Ok(PathBuf::from(rel))
}

fn abs_percentile(dto: &SummaryDto, horizon_s: u32, level: f64) -> Result<f64, ReportError> {
    dto.percentile(level).ok_or(ReportError::MissingPercentile { horizon_s, level })
}

fn table2(reports: &[HorizonReportDto], kinds: &[String]) -> Result<String, ReportError> {
    let mut out = String::from("delta_t_s,C_mean_abs,C_p25,C_p75");
    for kind in kinds {
        let _ = write!(out, ",{kind}_mean_abs,{kind}_p25,{kind}_p75");
    }
    out.push('\n');
    for r in reports {
        let _ = write!(
            out,
            "{},{:.4}{},{:.4},{:.4}",
            r.horizon_s,
            r.pairwise_abs.mean,
            r.matrix_significance.stars,
            abs_percentile(&r.pairwise_abs, r.horizon_s, 25.0)?,
            abs_percentile(&r.pairwise_abs, r.horizon_s, 75.0)?,
        );
        for kind in kinds {
            let g = r.graphs.iter().find(|g| &g.kind == kind).expect("kind set is uniform");
            let _ = write!(
                out,
                ",{:.4}{},{:.4},{:.4}",
                g.edge_abs.mean,
                g.significance.stars,
                abs_percentile(&g.edge_abs, r.horizon_s, 25.0)?,
                abs_percentile(&g.edge_abs, r.horizon_s, 75.0)?,
            );
        }
        out.push('\n');
    }
    Ok(out)
}

fn table3(reports: &[HorizonReportDto], kinds: &[String]) -> String {
    let mut out = String::from("delta_t_s,support_threshold");
    for kind in kinds {
        let _ = write!(out, ",{kind}_pct_edges_above");
    }
    out.push('\n');
    for r in reports {
        let threshold = r.graphs.first().map_or(0.0, |g| g.bootstrap.threshold);
        let _ = write!(out, "{},{}", r.horizon_s, threshold);
        for kind in kinds {
            let g = r.graphs.iter().find(|g| &g.kind == kind).expect("kind set is uniform");
            let _ = write!(out, ",{:.1}", 100.0 * g.bootstrap.frac_edges_above_threshold);
        }
        out.push('\n');
    }
    out
}

fn table_a4(reports: &[HorizonReportDto], kinds: &[String]) -> String {
    let mut out = String::from("delta_t_s,C_links_within,C_links_total");
    for kind in kinds {
        let _ = write!(out, ",{kind}_links_within,{kind}_links_total");
    }
    out.push('\n');
    for r in reports {
        let _ = write!(
            out,
            "{},{},{}",
            r.horizon_s, r.matrix_significance.links_within_envelope, r.matrix_significance.total_links
        );
        for kind in kinds {
            let g = r.graphs.iter().find(|g| &g.kind == kind).expect("kind set is uniform");
            let _ = write!(
                out,
                ",{},{}",
                g.significance.links_within_envelope, g.significance.total_links
            );
        }
        out.push('\n');
    }
    out
}

fn summary_point(horizon_s: u32, dto: &SummaryDto) -> serde_json::Value {
    json!({
        "horizon_s": horizon_s,
        "mean": dto.mean,
        "mean_abs": dto.mean_abs,
        "percentiles": dto.percentiles,
        "count": dto.count,
    })
}

fn fig3(reports: &[HorizonReportDto]) -> serde_json::Value {
    let pairwise: Vec<_> = reports.iter().map(|r| summary_point(r.horizon_s, &r.pairwise)).collect();
    let mut sectors: BTreeMap<String, Vec<serde_json::Value>> = BTreeMap::new();
    for r in reports {
        for (sector, dto) in &r.per_sector {
            sectors.entry(sector.clone()).or_default().push(summary_point(r.horizon_s, dto));
        }
    }
    json!({ "pairwise": pairwise, "per_sector": sectors })
}

fn per_filter_series(
    reports: &[HorizonReportDto],
    kinds: &[String],
    mut point: impl FnMut(&HorizonReportDto, &GraphReportDto) -> serde_json::Value,
) -> serde_json::Value {
    let mut filters = BTreeMap::new();
    for kind in kinds {
        let series: Vec<_> = reports
            .iter()
            .map(|r| {
                let g = r.graphs.iter().find(|g| &g.kind == kind).expect("kind set is uniform");
                point(r, g)
            })
            .collect();
        filters.insert(kind.clone(), series);
    }
    json!({ "filters": filters })
}

/// Derives every table and figure from the horizon reports a manifest lists,
/// writing them under `root`. Returns the relative paths written.
pub fn report_tables(manifest: &RunManifest, root: &Path) -> Result<Vec<PathBuf>, ReportError> {
    if !manifest.complete {
        return Err(ReportError::IncompleteManifest {
            reason: manifest
                .incomplete_reason
                .clone()
                .unwrap_or_else(|| "marked incomplete".to_string()),
        });
    }
    if manifest.horizons.is_empty() {
        return Err(ReportError::IncompleteManifest { reason: "no horizons".to_string() });
    }

    let mut reports = Vec::with_capacity(manifest.horizons.len());
    for h in &manifest.horizons {
        reports.push(read_report(&root.join(&h.report_json))?);
    }
    reports.sort_by_key(|r| r.horizon_s);

    if reports.iter().any(|r| r.graphs.is_empty()) {
        return Err(ReportError::IncompleteManifest {
            reason: "a horizon report has no filtered graphs".to_string(),
        });
    }
    let kinds: Vec<String> = reports[0].graphs.iter().map(|g| g.kind.clone()).collect();

    let pretty = |v: serde_json::Value| serde_json::to_string_pretty(&v).expect("json value");
    let written = vec![
        write_under(root, "tables/table2.csv", &table2(&reports, &kinds)?)?,
        write_under(root, "tables/table3.csv", &table3(&reports, &kinds))?,
        write_under(root, "tables/table_a4.csv", &table_a4(&reports, &kinds))?,
        write_under(root, "figures/fig3_epps.json", &pretty(fig3(&reports)))?,
        write_under(
            root,
            "figures/fig4_degree_centrality.json",
            &pretty(per_filter_series(&reports, &kinds, |r, g| {
                json!({ "horizon_s": r.horizon_s, "centrality": g.degree_centrality })
            })),
        )?,
        write_under(
            root,
            "figures/fig5_path_length.json",
            &pretty(per_filter_series(&reports, &kinds, |r, g| {
                json!({ "horizon_s": r.horizon_s, "avg_shortest_path": g.avg_shortest_path })
            })),
        )?,
        write_under(
            root,
            "figures/fig6_group_centrality.json",
            &pretty(per_filter_series(&reports, &kinds, |r, g| {
                json!({ "horizon_s": r.horizon_s, "groups": g.group_centrality })
            })),
        )?,
    ];
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::PipelineConfig;
    use crate::manifest::{GraphArtifact, HorizonArtifacts};

    fn summary(mean: f64, with_quartiles: bool) -> SummaryDto {
        let percentiles = if with_quartiles {
            vec![(10.0, mean - 0.2), (25.0, mean - 0.1), (50.0, mean), (75.0, mean + 0.1), (90.0, mean + 0.2)]
        } else {
            vec![(10.0, mean - 0.2), (50.0, mean), (90.0, mean + 0.2)]
        };
        SummaryDto { mean, mean_abs: mean.abs(), percentiles, count: 3 }
    }

    fn graph_dto(kind: &str, stars: &str, frac_above: f64) -> GraphReportDto {
        GraphReportDto {
            kind: kind.to_string(),
            edge_count: 1,
            edges: vec![EdgeDto {
                a: "A".into(),
                b: "B".into(),
                correlation: 0.5,
                dissimilarity: 0.75,
                negative: false,
            }],
            avg_shortest_path: 1.5,
            degree_centrality: BTreeMap::from([("A".to_string(), 1.0), ("B".to_string(), 1.0)]),
            raw_degree: BTreeMap::from([("A".to_string(), 1), ("B".to_string(), 1)]),
            group_centrality: BTreeMap::from([("s".to_string(), 0.5)]),
            filtered_correlation: summary(0.5, false),
            edge_abs: summary(0.35, true),
            significance: SignificanceDto {
                links_within_envelope: 0,
                total_links: 1,
                p_value: 0.0,
                stars: stars.to_string(),
            },
            bootstrap: BootstrapDto {
                replica_count: 10,
                threshold: 0.95,
                frac_edges_above_threshold: frac_above,
                per_edge_support: vec![EdgeSupportDto { a: "A".into(), b: "B".into(), support: 1.0 }],
            },
        }
    }

    fn report_dto(horizon_s: u32) -> HorizonReportDto {
        HorizonReportDto {
            horizon_s,
            t_len: 100,
            symbols: vec!["A".into(), "B".into()],
            sectors: vec!["s".into(), "s".into()],
            pairwise: summary(0.4, false),
            pairwise_abs: summary(0.45, true),
            per_sector: BTreeMap::from([("s".to_string(), summary(0.4, false))]),
            envelope: EnvelopeDto { shuffle_count: 5, min_coeff: -0.1, max_coeff: 0.1 },
            matrix_significance: SignificanceDto {
                links_within_envelope: 1,
                total_links: 3,
                p_value: 1.0 / 3.0,
                stars: String::new(),
            },
            graphs: vec![graph_dto("mst", "***", 0.625), graph_dto("tmfg", "*", 0.5)],
        }
    }

    fn manifest_for(root: &Path, reports: &[HorizonReportDto], complete: bool) -> RunManifest {
        let mut horizons = Vec::new();
        for r in reports {
            let dir = format!("horizon_{}", r.horizon_s);
            fs::create_dir_all(root.join(&dir)).unwrap();
            let rel = PathBuf::from(format!("{dir}/report.json"));
            write_report(&root.join(&rel), r).unwrap();
            for stem in ["correlation.csv", "correlation.json", "dissimilarity.csv", "adf.csv"] {
                fs::write(root.join(&dir).join(stem), "x").unwrap();
            }
            horizons.push(HorizonArtifacts {
                horizon_s: r.horizon_s,
                report_json: rel,
                correlation_csv: PathBuf::from(format!("{dir}/correlation.csv")),
                correlation_json: PathBuf::from(format!("{dir}/correlation.json")),
                dissimilarity_csv: PathBuf::from(format!("{dir}/dissimilarity.csv")),
                adf_csv: PathBuf::from(format!("{dir}/adf.csv")),
                graphs: Vec::<GraphArtifact>::new(),
            });
        }
        RunManifest {
            tool_version: "0.1.0".into(),
            created_utc: "2024-01-01T00:00:00Z".into(),
            master_seed: 0,
            complete,
            incomplete_reason: if complete { None } else { Some("aborted".into()) },
            config: PipelineConfig::from_toml_str(
                "data_dir = \"d\"\ntaxonomy_path = \"t\"\n",
                Path::new("c.toml"),
            )
            .unwrap(),
            horizons,
            tables: Vec::new(),
            timings_ms: BTreeMap::new(),
        }
    }

    #[test]
    fn table2_appends_stars_and_quartiles_per_structure() {
        let dir = tempfile::tempdir().unwrap();
        let reports = [report_dto(60), report_dto(15)];
        let manifest = manifest_for(dir.path(), &reports, true);
        report_tables(&manifest, dir.path()).unwrap();

        let text = fs::read_to_string(dir.path().join("tables/table2.csv")).unwrap();
        let mut lines = text.lines();
        assert_eq!(
            lines.next().unwrap(),
            "delta_t_s,C_mean_abs,C_p25,C_p75,mst_mean_abs,mst_p25,mst_p75,tmfg_mean_abs,tmfg_p25,tmfg_p75"
        );
        // horizons come out ascending regardless of manifest order
        let first = lines.next().unwrap();
        assert!(first.starts_with("15,"), "{first}");
        assert!(first.contains("0.3500***"), "{first}");
        assert!(first.contains("0.3500*"), "{first}");
        assert!(first.contains(",0.2500,0.4500"), "{first}");
    }

    #[test]
    fn table3_reports_percentages() {
        let dir = tempfile::tempdir().unwrap();
        let manifest = manifest_for(dir.path(), &[report_dto(15)], true);
        report_tables(&manifest, dir.path()).unwrap();
        let text = fs::read_to_string(dir.path().join("tables/table3.csv")).unwrap();
        assert_eq!(text, "delta_t_s,support_threshold,mst_pct_edges_above,tmfg_pct_edges_above\n15,0.95,62.5,50.0\n");
    }

    #[test]
    fn table_a4_reports_envelope_counts() {
        let dir = tempfile::tempdir().unwrap();
        let manifest = manifest_for(dir.path(), &[report_dto(15)], true);
        report_tables(&manifest, dir.path()).unwrap();
        let text = fs::read_to_string(dir.path().join("tables/table_a4.csv")).unwrap();
        assert_eq!(
            text,
            "delta_t_s,C_links_within,C_links_total,mst_links_within,mst_links_total,tmfg_links_within,tmfg_links_total\n\
             15,1,3,0,1,0,1\n"
        );
    }

    #[test]
    fn figures_carry_per_filter_series() {
        let dir = tempfile::tempdir().unwrap();
        let manifest = manifest_for(dir.path(), &[report_dto(15), report_dto(60)], true);
        let written = report_tables(&manifest, dir.path()).unwrap();
        assert_eq!(written.len(), 7);

        let fig5: serde_json::Value =
            serde_json::from_str(&fs::read_to_string(dir.path().join("figures/fig5_path_length.json")).unwrap())
                .unwrap();
        let mst = fig5["filters"]["mst"].as_array().unwrap();
        assert_eq!(mst.len(), 2);
        assert_eq!(mst[0]["horizon_s"], 15);
        assert_eq!(mst[0]["avg_shortest_path"], 1.5);

        let fig3: serde_json::Value =
            serde_json::from_str(&fs::read_to_string(dir.path().join("figures/fig3_epps.json")).unwrap())
                .unwrap();
        assert_eq!(fig3["pairwise"].as_array().unwrap().len(), 2);
        assert!(fig3["per_sector"]["s"].is_array());
    }

    #[test]
    fn incomplete_manifest_is_refused() {
        let dir = tempfile::tempdir().unwrap();
        let manifest = manifest_for(dir.path(), &[report_dto(15)], false);
        assert!(matches!(
            report_tables(&manifest, dir.path()),
            Err(ReportError::IncompleteManifest { .. })
        ));
    }

    #[test]
    fn report_without_graphs_is_refused() {
        let dir = tempfile::tempdir().unwrap();
        let mut report = report_dto(15);
        report.graphs.clear();
        let manifest = manifest_for(dir.path(), &[report], true);
        assert!(matches!(
            report_tables(&manifest, dir.path()),
            Err(ReportError::IncompleteManifest { .. })
        ));
    }

    #[test]
    fn report_json_round_trips() {
        let dir = tempfile::tempdir().unwrap();
        let report = report_dto(900);
        let path = dir.path().join("report.json");
        write_report(&path, &report).unwrap();
        assert_eq!(read_report(&path).unwrap(), report);
    }
}
