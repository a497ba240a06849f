use std::collections::BTreeMap;
use std::error::Error;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use corrnet::config::{load_config, CliOverrides, PipelineConfig};
use corrnet::export::{export_graph_view, EdgeView, ExportFormat, GraphView};
use corrnet::manifest::RunManifest;
use corrnet::pipeline::{run_ingest, run_pipeline};
use corrnet::report::{read_report, HorizonReportDto};
use corrnet::synth_io::{emit_synth_csvs, SynthSpecFile};

#[derive(Parser)]
#[command(
    name = "corrnet",
    version,
    about = "correlation-filtered networks (MST/PMFG/TMFG) over multi-horizon return panels"
)]
struct Cli {
    /// pipeline configuration file (TOML)
    #[arg(long, global = true, default_value = "corrnet.toml")]
    config: PathBuf,
    /// override the master seed
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// override the horizon list, comma-separated seconds (e.g. 15,60,900)
    #[arg(long, global = true, value_delimiter = ',')]
    horizons: Option<Vec<u32>>,
    /// override the filter list, comma-separated (mst, pmfg, tmfg)
    #[arg(long, global = true, value_delimiter = ',')]
    filters: Option<Vec<String>>,
    /// override the output directory
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand)]
enum Verb {
    /// parse, align, and resample raw OHLCV data; write per-horizon return panels
    Ingest,
    /// run the full pipeline: panels, matrices, filtered graphs, validation, reports
    Analyze,
    /// generate synthetic OHLCV CSVs plus a taxonomy from a generator spec (TOML)
    Synth {
        /// generator spec file
        spec: PathBuf,
    },
    /// re-export every graph of a finished run from its manifest
    Export {
        /// path to a run's manifest.json
        manifest: PathBuf,
    },
}

fn effective_config(cli: &Cli) -> Result<PipelineConfig, Box<dyn Error>> {
    let mut config = load_config(&cli.config)?;
    config.apply_cli_overrides(&CliOverrides {
        seed: cli.seed,
        horizons: cli.horizons.clone(),
        filters: cli.filters.clone(),
        out: cli.out.clone(),
    })?;
    Ok(config)
}

fn view_from_report(report: &HorizonReportDto, kind: &str) -> Option<GraphView> {
    let index: BTreeMap<&str, usize> =
        report.symbols.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
    let graph = report.graphs.iter().find(|g| g.kind == kind)?;
    let edges = graph
        .edges
        .iter()
        .map(|e| EdgeView {
            i: index[e.a.as_str()],
            j: index[e.b.as_str()],
            correlation: e.correlation,
            dissimilarity: e.dissimilarity,
            negative: e.negative,
        })
        .collect();
    Some(GraphView {
        kind: kind.to_string(),
        symbols: report.symbols.clone(),
        sectors: report.sectors.clone(),
        edges,
    })
}

fn run_export(manifest_path: &Path, out: Option<&Path>) -> Result<(), Box<dyn Error>> {
    let manifest = RunManifest::read(manifest_path)?;
    let root = manifest_path.parent().unwrap_or_else(|| Path::new(".")).to_path_buf();
    let dest = out.map(Path::to_path_buf).unwrap_or_else(|| root.clone());
    let mut written = 0usize;
    for horizon in &manifest.horizons {
        let report = read_report(&root.join(&horizon.report_json))?;
        for artifact in &horizon.graphs {
            let view = view_from_report(&report, &artifact.kind).ok_or_else(|| {
                format!(
                    "report {} has no {} graph",
                    horizon.report_json.display(),
                    artifact.kind
                )
            })?;
            for (format, rel) in
                [(ExportFormat::GraphMl, &artifact.graphml), (ExportFormat::Dot, &artifact.dot)]
            {
                let path = dest.join(rel);
                if let Some(parent) = path.parent() {
                    std::fs::create_dir_all(parent)?;
                }
                export_graph_view(&view, format, &path)?;
                println!("{}", path.display());
                written += 1;
            }
        }
    }
    if written == 0 {
        return Err("manifest lists no graphs to export".into());
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<(), Box<dyn Error>> {
    match &cli.verb {
        Verb::Ingest => {
            let config = effective_config(cli)?;
            let written = run_ingest(&config)?;
            for rel in written {
                println!("{}", config.output_dir.join(rel).display());
            }
        }
        Verb::Analyze => {
            let config = effective_config(cli)?;
            let manifest = run_pipeline(&config)?;
            for horizon in &manifest.horizons {
                println!(
                    "horizon {:>6}s: report {}",
                    horizon.horizon_s,
                    config.output_dir.join(&horizon.report_json).display()
                );
            }
            for table in &manifest.tables {
                println!("table: {}", config.output_dir.join(table).display());
            }
            println!("manifest: {}", config.output_dir.join("manifest.json").display());
        }
        Verb::Synth { spec } => {
            let text = std::fs::read_to_string(spec)
                .map_err(|e| format!("read {}: {e}", spec.display()))?;
            let parsed: SynthSpecFile = toml::from_str(&text)?;
            let dest = cli.out.clone().unwrap_or_else(|| PathBuf::from("synth_out"));
            let output = emit_synth_csvs(&parsed, &dest)?;
            for path in &output.csv_paths {
                println!("{}", path.display());
            }
            println!("taxonomy: {}", output.taxonomy_path.display());
            println!(
                "hint: set data_dir = {:?}, taxonomy_path = {:?}, base_horizon_s = {}",
                output.data_dir, output.taxonomy_path, output.base_horizon_s
            );
        }
        Verb::Export { manifest } => run_export(manifest, cli.out.as_deref())?,
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            // most of our errors embed their cause in the message already;
            // only surface chain links that add something
            let mut shown = e.to_string();
            let mut source = e.source();
            while let Some(inner) = source {
                let text = inner.to_string();
                if !shown.contains(&text) {
                    eprintln!("  caused by: {text}");
                }
                shown = text;
                source = inner.source();
            }
            ExitCode::FAILURE
        }
    }
}
