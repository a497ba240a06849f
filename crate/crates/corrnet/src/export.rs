//! Graph exports: GraphML and DOT with symbol/sector node attributes,
//! correlation/dissimilarity edge attributes, dashed styling for negative
//! links, and hub flags on nodes whose degree exceeds the 90th percentile.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use corrnet_core::graph::FilteredGraph;
use corrnet_core::summary::quantile;
use corrnet_core::taxonomy::SectorTaxonomy;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ExportError {
    #[error("write {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("DOT line {line}: {detail}")]
    DotParse { line: usize, detail: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExportFormat {
    GraphMl,
    Dot,
}

impl ExportFormat {
    pub fn extension(self) -> &'static str {
        match self {
            ExportFormat::GraphMl => "graphml",
            ExportFormat::Dot => "dot",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EdgeView {
    pub i: usize,
    pub j: usize,
    pub correlation: f64,
    pub dissimilarity: f64,
    pub negative: bool,
}

/// Everything an export needs, decoupled from the core graph type so graphs
/// can be re-exported from serialized reports.
#[derive(Clone, Debug, PartialEq)]
pub struct GraphView {
    /// graph id in the output ("mst" | "pmfg" | "tmfg")
    pub kind: String,
    pub symbols: Vec<String>,
    /// sector per node, aligned with `symbols`
    pub sectors: Vec<String>,
    pub edges: Vec<EdgeView>,
}

impl GraphView {
    pub fn from_filtered(graph: &FilteredGraph, taxonomy: &SectorTaxonomy) -> Self {
        GraphView {
            kind: graph.kind.name().to_string(),
            symbols: graph.symbols().to_vec(),
            sectors: graph
                .symbols()
                .iter()
                .map(|s| taxonomy.sector_of(s).unwrap_or("unassigned").to_string())
                .collect(),
            edges: graph
                .edges()
                .iter()
                .map(|e| EdgeView {
                    i: e.i,
                    j: e.j,
                    correlation: e.correlation,
                    dissimilarity: e.dissimilarity,
                    negative: e.negative,
                })
                .collect(),
        }
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut degrees = vec![0usize; self.symbols.len()];
        for e in &self.edges {
            degrees[e.i] += 1;
            degrees[e.j] += 1;
        }
        degrees
    }

    /// Hub rule: degree strictly above the 90th percentile of the degree
    /// distribution. In a star only the center clears it.
    pub fn hub_flags(&self) -> Vec<bool> {
        let degrees = self.degrees();
        let mut sorted: Vec<f64> = degrees.iter().map(|&d| d as f64).collect();
        sorted.sort_by(f64::total_cmp);
        if sorted.is_empty() {
            return Vec::new();
        }
        let cutoff = quantile(&sorted, 0.9);
        degrees.iter().map(|&d| (d as f64) > cutoff).collect()
    }
}

fn xml_escape(raw: &str) -> String {
    let mut out = String::with_capacity(raw.len());
    for c in raw.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            _ => out.push(c),
        }
    }
    out
}

fn dot_escape(raw: &str) -> String {
    raw.replace('\\', "\\\\").replace('"', "\\\"")
}

pub fn render_graphml(view: &GraphView) -> String {
    let hubs = view.hub_flags();
    let degrees = view.degrees();
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    out.push_str("<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n");
    out.push_str("  <key id=\"sector\" for=\"node\" attr.name=\"sector\" attr.type=\"string\"/>\n");
    out.push_str("  <key id=\"degree\" for=\"node\" attr.name=\"degree\" attr.type=\"int\"/>\n");
    out.push_str("  <key id=\"hub\" for=\"node\" attr.name=\"hub\" attr.type=\"boolean\"/>\n");
    out.push_str(
        "  <key id=\"correlation\" for=\"edge\" attr.name=\"correlation\" attr.type=\"double\"/>\n",
    );
    out.push_str(
        "  <key id=\"dissimilarity\" for=\"edge\" attr.name=\"dissimilarity\" attr.type=\"double\"/>\n",
    );
    out.push_str("  <key id=\"negative\" for=\"edge\" attr.name=\"negative\" attr.type=\"boolean\"/>\n");
    out.push_str("  <key id=\"style\" for=\"edge\" attr.name=\"style\" attr.type=\"string\"/>\n");
    let _ = writeln!(
        out,
        "  <graph id=\"{}\" edgedefault=\"undirected\">",
        xml_escape(&view.kind)
    );
    for (idx, symbol) in view.symbols.iter().enumerate() {
        let _ = writeln!(out, "    <node id=\"{}\">", xml_escape(symbol));
        let _ = writeln!(out, "      <data key=\"sector\">{}</data>", xml_escape(&view.sectors[idx]));
        let _ = writeln!(out, "      <data key=\"degree\">{}</data>", degrees[idx]);
        let _ = writeln!(out, "      <data key=\"hub\">{}</data>", hubs[idx]);
        out.push_str("    </node>\n");
    }
    for e in &view.edges {
        let _ = writeln!(
            out,
            "    <edge source=\"{}\" target=\"{}\">",
            xml_escape(&view.symbols[e.i]),
            xml_escape(&view.symbols[e.j])
        );
        let _ = writeln!(out, "      <data key=\"correlation\">{}</data>", e.correlation);
        let _ = writeln!(out, "      <data key=\"dissimilarity\">{}</data>", e.dissimilarity);
        let _ = writeln!(out, "      <data key=\"negative\">{}</data>", e.negative);
        let style = if e.negative { "dashed" } else { "solid" };
        let _ = writeln!(out, "      <data key=\"style\">{style}</data>");
        out.push_str("    </edge>\n");
    }
    out.push_str("  </graph>\n</graphml>\n");
    out
}

pub fn render_dot(view: &GraphView) -> String {
    let hubs = view.hub_flags();
    let degrees = view.degrees();
    let mut out = String::new();
    let _ = writeln!(out, "graph {} {{", view.kind);
    for (idx, symbol) in view.symbols.iter().enumerate() {
        let _ = writeln!(
            out,
            "  \"{}\" [sector=\"{}\", degree={}, hub={}];",
            dot_escape(symbol),
            dot_escape(&view.sectors[idx]),
            degrees[idx],
            hubs[idx]
        );
    }
    for e in &view.edges {
        let style = if e.negative { "dashed" } else { "solid" };
        let _ = writeln!(
            out,
            "  \"{}\" -- \"{}\" [correlation={}, dissimilarity={}, style={}];",
            dot_escape(&view.symbols[e.i]),
            dot_escape(&view.symbols[e.j]),
            e.correlation,
            e.dissimilarity,
            style
        );
    }
    out.push_str("}\n");
    out
}

pub fn export_graph_view(view: &GraphView, format: ExportFormat, path: &Path) -> Result<(), ExportError> {
    let text = match format {
        ExportFormat::GraphMl => render_graphml(view),
        ExportFormat::Dot => render_dot(view),
    };
    fs::write(path, text).map_err(|source| ExportError::Io { path: path.to_path_buf(), source })
}

pub fn export_graph(
    graph: &FilteredGraph,
    taxonomy: &SectorTaxonomy,
    format: ExportFormat,
    path: &Path,
) -> Result<(), ExportError> {
    export_graph_view(&GraphView::from_filtered(graph, taxonomy), format, path)
}

/// Reads a quoted DOT identifier starting at `text[start]` (which must be
/// `"`), honoring backslash escapes. Returns (identifier, index past the
/// closing quote).
fn read_quoted(text: &str, start: usize, line: usize) -> Result<(String, usize), ExportError> {
    let bytes = text.as_bytes();
    debug_assert_eq!(bytes[start], b'"');
    let mut out = String::new();
    let mut idx = start + 1;
    while idx < bytes.len() {
        match bytes[idx] {
            b'\\' if idx + 1 < bytes.len() => {
                out.push(bytes[idx + 1] as char);
                idx += 2;
            }
            b'"' => return Ok((out, idx + 1)),
            c => {
                out.push(c as char);
                idx += 1;
            }
        }
    }
    Err(ExportError::DotParse { line, detail: "unterminated quoted identifier".to_string() })
}

/// Minimal reader for the DOT this module writes: extracts the undirected
/// edge list (`"A" -- "B"`), ignoring node statements and attributes.
pub fn parse_dot_edges(text: &str) -> Result<Vec<(String, String)>, ExportError> {
    let mut edges = Vec::new();
    for (line_idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let line_no = line_idx + 1;
        if !line.starts_with('"') {
            continue;
        }
        let (first, after_first) = read_quoted(line, 0, line_no)?;
        let rest = line[after_first..].trim_start();
        if !rest.starts_with("--") {
            continue; // node statement
        }
        let rest = rest[2..].trim_start();
        if !rest.starts_with('"') {
            return Err(ExportError::DotParse {
                line: line_no,
                detail: "expected quoted node after --".to_string(),
            });
        }
        let (second, _) = read_quoted(rest, 0, line_no)?;
        edges.push((first, second));
    }
    Ok(edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn star(n: usize) -> GraphView {
        GraphView {
            kind: "mst".to_string(),
            symbols: (0..n).map(|i| format!("N{i}")).collect(),
            sectors: (0..n).map(|_| "s".to_string()).collect(),
            edges: (1..n)
                .map(|j| EdgeView { i: 0, j, correlation: 0.5, dissimilarity: 0.75, negative: false })
                .collect(),
        }
    }

    #[test]
    fn star_center_is_the_only_hub() {
        let hubs = star(8).hub_flags();
        assert!(hubs[0]);
        assert!(hubs[1..].iter().all(|&h| !h));
    }

    #[test]
    fn equal_degrees_mean_no_hubs() {
        // a triangle: every degree equals the 90th percentile, none above
        let view = GraphView {
            kind: "tmfg".to_string(),
            symbols: vec!["A".into(), "B".into(), "C".into()],
            sectors: vec!["s".into(); 3],
            edges: vec![
                EdgeView { i: 0, j: 1, correlation: 0.1, dissimilarity: 0.99, negative: false },
                EdgeView { i: 0, j: 2, correlation: 0.2, dissimilarity: 0.96, negative: false },
                EdgeView { i: 1, j: 2, correlation: 0.3, dissimilarity: 0.91, negative: false },
            ],
        };
        assert!(view.hub_flags().iter().all(|&h| !h));
    }

    #[test]
    fn negative_edges_render_dashed_in_both_formats() {
        let mut view = star(3);
        view.edges[0].correlation = -0.5;
        view.edges[0].negative = true;
        let dot = render_dot(&view);
        assert!(dot.contains("style=dashed"), "{dot}");
        assert!(dot.contains("style=solid"), "{dot}");
        let gml = render_graphml(&view);
        assert!(gml.contains("<data key=\"style\">dashed</data>"), "{gml}");
        assert!(gml.contains("<data key=\"correlation\">-0.5</data>"), "{gml}");
    }

    #[test]
    fn graphml_escapes_xml_metacharacters() {
        let mut view = star(2);
        view.symbols[1] = "A&B<C>".to_string();
        view.sectors[1] = "\"q\"".to_string();
        let gml = render_graphml(&view);
        assert!(gml.contains("A&amp;B&lt;C&gt;"), "{gml}");
        assert!(gml.contains("&quot;q&quot;"), "{gml}");
        assert!(!gml.contains("A&B"), "{gml}");
    }

    #[test]
    fn dot_round_trips_its_edge_set() {
        let mut view = star(6);
        view.symbols[3] = "WEIRD\"NAME".to_string();
        view.edges[1].negative = true;
        let dot = render_dot(&view);
        let parsed = parse_dot_edges(&dot).unwrap();
        let expected: Vec<(String, String)> = view
            .edges
            .iter()
            .map(|e| (view.symbols[e.i].clone(), view.symbols[e.j].clone()))
            .collect();
        assert_eq!(parsed, expected);
    }

    #[test]
    fn node_only_dot_lines_are_not_edges() {
        let dot = "graph g {\n  \"A\" [sector=\"x\"];\n}\n";
        assert!(parse_dot_edges(dot).unwrap().is_empty());
    }

    #[test]
    fn unterminated_quote_is_a_parse_error() {
        let dot = "graph g {\n  \"A\" -- \"B;\n}\n";
        assert!(parse_dot_edges(dot).is_err());
    }
}
