//! Sector taxonomy CSV: header `symbol,sector`, one asset per row.

use std::collections::BTreeMap;
use std::fmt;
use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use corrnet_core::taxonomy::SectorTaxonomy;
use csv::ReaderBuilder;

pub const TAXONOMY_HEADER: [&str; 2] = ["symbol", "sector"];

#[derive(Debug)]
pub struct TaxonomyIoError {
    pub file: Option<PathBuf>,
    pub line: Option<u64>,
    pub kind: TaxonomyIoErrorKind,
}

#[derive(Debug)]
pub enum TaxonomyIoErrorKind {
    Io(std::io::Error),
    Csv(csv::Error),
    BadHeader { found: String },
    EmptyInput,
    /// symbol or sector cell is blank
    BlankField { column: &'static str },
    /// the same symbol mapped twice (even to the same sector)
    DuplicateSymbol { symbol: String },
}

impl TaxonomyIoError {
    fn at(line: Option<u64>, kind: TaxonomyIoErrorKind) -> Self {
        TaxonomyIoError { file: None, line, kind }
    }

    pub fn in_file(mut self, path: &Path) -> Self {
        self.file = Some(path.to_path_buf());
        self
    }
}

impl fmt::Display for TaxonomyIoError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.file {
            Some(p) => write!(f, "{}", p.display())?,
            None => write!(f, "<input>")?,
        }
        if let Some(line) = self.line {
            write!(f, ", line {line}")?;
        }
        write!(f, ": ")?;
        match &self.kind {
            TaxonomyIoErrorKind::Io(e) => write!(f, "{e}"),
            TaxonomyIoErrorKind::Csv(e) => write!(f, "{e}"),
            TaxonomyIoErrorKind::BadHeader { found } => {
                write!(f, "header must be `{}`, found `{found}`", TAXONOMY_HEADER.join(","))
            }
            TaxonomyIoErrorKind::EmptyInput => write!(f, "no taxonomy rows"),
            TaxonomyIoErrorKind::BlankField { column } => write!(f, "column {column} is blank"),
            TaxonomyIoErrorKind::DuplicateSymbol { symbol } => {
                write!(f, "symbol {symbol} is assigned more than once")
            }
        }
    }
}

impl std::error::Error for TaxonomyIoError {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match &self.kind {
            TaxonomyIoErrorKind::Io(e) => Some(e),
            TaxonomyIoErrorKind::Csv(e) => Some(e),
            _ => None,
        }
    }
}

impl From<std::io::Error> for TaxonomyIoError {
    fn from(e: std::io::Error) -> Self {
        Self::at(None, TaxonomyIoErrorKind::Io(e))
    }
}

pub fn parse_taxonomy<R: Read>(input: R) -> Result<SectorTaxonomy, TaxonomyIoError> {
    let mut reader = ReaderBuilder::new().has_headers(true).flexible(false).from_reader(input);

    let header = reader
        .headers()
        .map_err(|e| TaxonomyIoError::at(None, TaxonomyIoErrorKind::Csv(e)))?
        .clone();
    let mut fields: Vec<&str> = header.iter().map(|s| s.trim()).collect();
    if let Some(first) = fields.first_mut() {
        *first = first.trim_start_matches('\u{feff}');
    }
    if fields != TAXONOMY_HEADER {
        return Err(TaxonomyIoError::at(
            None,
            TaxonomyIoErrorKind::BadHeader { found: header.iter().collect::<Vec<_>>().join(",") },
        ));
    }

    let mut assignments: BTreeMap<String, String> = BTreeMap::new();
    for record in reader.records() {
        let record = record.map_err(|e| TaxonomyIoError::at(None, TaxonomyIoErrorKind::Csv(e)))?;
        let line = record.position().map(|p| p.line());
        let symbol = record.get(0).unwrap_or("").trim();
        let sector = record.get(1).unwrap_or("").trim();
        if symbol.is_empty() {
            return Err(TaxonomyIoError::at(line, TaxonomyIoErrorKind::BlankField { column: "symbol" }));
        }
        if sector.is_empty() {
            return Err(TaxonomyIoError::at(line, TaxonomyIoErrorKind::BlankField { column: "sector" }));
        }
        if assignments.insert(symbol.to_string(), sector.to_string()).is_some() {
            return Err(TaxonomyIoError::at(
                line,
                TaxonomyIoErrorKind::DuplicateSymbol { symbol: symbol.to_string() },
            ));
        }
    }
    if assignments.is_empty() {
        return Err(TaxonomyIoError::at(None, TaxonomyIoErrorKind::EmptyInput));
    }
    Ok(SectorTaxonomy::new(assignments))
}

pub fn read_taxonomy_file(path: &Path) -> Result<SectorTaxonomy, TaxonomyIoError> {
    let file = File::open(path).map_err(|e| TaxonomyIoError::from(e).in_file(path))?;
    parse_taxonomy(BufReader::new(file)).map_err(|e| e.in_file(path))
}

pub fn write_taxonomy<W: Write>(taxonomy: &SectorTaxonomy, out: W) -> std::io::Result<()> {
    let mut out = BufWriter::new(out);
    writeln!(out, "{}", TAXONOMY_HEADER.join(","))?;
    for (symbol, sector) in taxonomy.iter() {
        writeln!(out, "{symbol},{sector}")?;
    }
    out.flush()
}

pub fn write_taxonomy_file(path: &Path, taxonomy: &SectorTaxonomy) -> Result<(), TaxonomyIoError> {
    let file = File::create(path).map_err(|e| TaxonomyIoError::from(e).in_file(path))?;
    write_taxonomy(taxonomy, file).map_err(|e| TaxonomyIoError::from(e).in_file(path))
}
