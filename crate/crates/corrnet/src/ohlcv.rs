//! OHLCV CSV files: one file per symbol, header exactly
//! `timestamp,open,high,low,close,volume`, timestamps ISO-8601 UTC.
//!
//! Parsing reports the file, line, and column of the first offending cell.
//! Writing uses the shortest float representation that round-trips, so
//! parse → write → parse is bit-identical on every price field.

use std::fmt;
use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use chrono::{DateTime, SecondsFormat, TimeZone, Utc};
use corrnet_core::bars::{BarError, BarSeries, OhlcvBar};
use csv::ReaderBuilder;

pub const OHLCV_HEADER: [&str; 6] = ["timestamp", "open", "high", "low", "close", "volume"];

/// Parse or IO failure located as precisely as the failure allows.
#[derive(Debug)]
pub struct OhlcvError {
    /// source file; `None` when parsing from memory
    pub file: Option<PathBuf>,
    /// 1-based line in the file (the header is line 1); `None` for
    /// whole-file conditions
    pub line: Option<u64>,
    pub kind: OhlcvErrorKind,
}

#[derive(Debug)]
pub enum OhlcvErrorKind {
    Io(std::io::Error),
    Csv(csv::Error),
    BadHeader { found: String },
    /// a header but zero data rows
    EmptyInput,
    MalformedField { column: &'static str, value: String, detail: String },
    /// two rows share a timestamp (sorting repairs order, not duplicates)
    NonMonotonicTimestamps { timestamp: i64 },
    OhlcInconsistent,
    MisalignedTimestamp { timestamp: i64, horizon_s: u32 },
    Bar(BarError),
}

impl OhlcvError {
    fn at(line: Option<u64>, kind: OhlcvErrorKind) -> Self {
        OhlcvError { file: None, line, kind }
    }

    fn whole_file(kind: OhlcvErrorKind) -> Self {
        Self::at(None, kind)
    }

    /// Attach the source path (kept by `read_ohlcv_file`).
    pub fn in_file(mut self, path: &Path) -> Self {
        self.file = Some(path.to_path_buf());
        self
    }
}

impl fmt::Display for OhlcvError {
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
            OhlcvErrorKind::Io(e) => write!(f, "{e}"),
            OhlcvErrorKind::Csv(e) => write!(f, "{e}"),
            OhlcvErrorKind::BadHeader { found } => {
                write!(f, "header must be `{}`, found `{found}`", OHLCV_HEADER.join(","))
            }
            OhlcvErrorKind::EmptyInput => write!(f, "no data rows"),
            OhlcvErrorKind::MalformedField { column, value, detail } => {
                write!(f, "column {column}: cannot parse `{value}` ({detail})")
            }
            OhlcvErrorKind::NonMonotonicTimestamps { timestamp } => {
                write!(f, "duplicate timestamp {timestamp}")
            }
            OhlcvErrorKind::OhlcInconsistent => {
                write!(f, "OHLC invariants violated (high/low must bracket open/close)")
            }
            OhlcvErrorKind::MisalignedTimestamp { timestamp, horizon_s } => {
                write!(f, "timestamp {timestamp} is off the {horizon_s}s grid")
            }
            OhlcvErrorKind::Bar(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for OhlcvError {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match &self.kind {
            OhlcvErrorKind::Io(e) => Some(e),
            OhlcvErrorKind::Csv(e) => Some(e),
            OhlcvErrorKind::Bar(e) => Some(e),
            _ => None,
        }
    }
}

impl From<std::io::Error> for OhlcvError {
    fn from(e: std::io::Error) -> Self {
        Self::whole_file(OhlcvErrorKind::Io(e))
    }
}

fn parse_price(raw: &str, column: &'static str, line: Option<u64>) -> Result<f64, OhlcvError> {
    let bad = |detail: &str| {
        OhlcvError::at(
            line,
            OhlcvErrorKind::MalformedField {
                column,
                value: raw.to_string(),
                detail: detail.to_string(),
            },
        )
    };
    let v: f64 = raw.trim().parse().map_err(|_| bad("not a number"))?;
    if !v.is_finite() {
        return Err(bad("not finite"));
    }
    Ok(v)
}

fn parse_timestamp(raw: &str, line: Option<u64>) -> Result<i64, OhlcvError> {
    let bad = |detail: &str| {
        OhlcvError::at(
            line,
            OhlcvErrorKind::MalformedField {
                column: "timestamp",
                value: raw.to_string(),
                detail: detail.to_string(),
            },
        )
    };
    let dt = DateTime::parse_from_rfc3339(raw.trim()).map_err(|e| bad(&e.to_string()))?;
    if dt.timestamp_subsec_nanos() != 0 {
        return Err(bad("sub-second timestamps are not representable on the bin grid"));
    }
    Ok(dt.with_timezone(&Utc).timestamp())
}

/// Parses one symbol's CSV into a validated `BarSeries`. Rows may arrive
/// out of order (they are sorted by timestamp); duplicate timestamps are an
/// error. Every bar must sit on the `horizon_s` grid.
pub fn parse_ohlcv<R: Read>(input: R, symbol: &str, horizon_s: u32) -> Result<BarSeries, OhlcvError> {
    let mut reader = ReaderBuilder::new().has_headers(true).flexible(false).from_reader(input);

    let header = reader
        .headers()
        .map_err(|e| OhlcvError::whole_file(OhlcvErrorKind::Csv(e)))?
        .clone();
    let mut fields: Vec<&str> = header.iter().map(|s| s.trim()).collect();
    // a UTF-8 BOM attaches to the first header field
    if let Some(first) = fields.first_mut() {
        *first = first.trim_start_matches('\u{feff}');
    }
    if fields != OHLCV_HEADER {
        return Err(OhlcvError::whole_file(OhlcvErrorKind::BadHeader {
            found: header.iter().collect::<Vec<_>>().join(","),
        }));
    }

    // (bar, source line) so post-sort errors still point at the file
    let mut rows: Vec<(OhlcvBar, u64)> = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| OhlcvError::whole_file(OhlcvErrorKind::Csv(e)))?;
        let line = record.position().map(|p| p.line());
        let field = |idx: usize| record.get(idx).unwrap_or("");

        let timestamp = parse_timestamp(field(0), line)?;
        if timestamp.rem_euclid(i64::from(horizon_s)) != 0 {
            return Err(OhlcvError::at(
                line,
                OhlcvErrorKind::MisalignedTimestamp { timestamp, horizon_s },
            ));
        }
        let bar = OhlcvBar {
            timestamp,
            open: parse_price(field(1), "open", line)?,
            high: parse_price(field(2), "high", line)?,
            low: parse_price(field(3), "low", line)?,
            close: parse_price(field(4), "close", line)?,
            volume: parse_price(field(5), "volume", line)?,
        };
        if !bar.is_consistent() {
            return Err(OhlcvError::at(line, OhlcvErrorKind::OhlcInconsistent));
        }
        rows.push((bar, line.unwrap_or(0)));
    }

    if rows.is_empty() {
        return Err(OhlcvError::whole_file(OhlcvErrorKind::EmptyInput));
    }
    rows.sort_by_key(|(bar, _)| bar.timestamp);
    for pair in rows.windows(2) {
        if pair[0].0.timestamp == pair[1].0.timestamp {
            let line = pair[0].1.max(pair[1].1);
            return Err(OhlcvError::at(
                Some(line),
                OhlcvErrorKind::NonMonotonicTimestamps { timestamp: pair[1].0.timestamp },
            ));
        }
    }

    let bars = rows.into_iter().map(|(bar, _)| bar).collect();
    BarSeries::new(symbol.to_string(), horizon_s, bars)
        .map_err(|e| OhlcvError::whole_file(OhlcvErrorKind::Bar(e)))
}

pub fn read_ohlcv_file(path: &Path, symbol: &str, horizon_s: u32) -> Result<BarSeries, OhlcvError> {
    let file = File::open(path).map_err(|e| OhlcvError::from(e).in_file(path))?;
    parse_ohlcv(BufReader::new(file), symbol, horizon_s).map_err(|e| e.in_file(path))
}

fn format_timestamp(ts: i64) -> String {
    Utc.timestamp_opt(ts, 0)
        .single()
        .expect("bar timestamps are valid unix seconds")
        .to_rfc3339_opts(SecondsFormat::Secs, true)
}

pub fn write_ohlcv<W: Write>(series: &BarSeries, out: W) -> std::io::Result<()> {
    let mut out = BufWriter::new(out);
    writeln!(out, "{}", OHLCV_HEADER.join(","))?;
    for bar in series.bars() {
        writeln!(
            out,
            "{},{},{},{},{},{}",
            format_timestamp(bar.timestamp),
            bar.open,
            bar.high,
            bar.low,
            bar.close,
            bar.volume
        )?;
    }
    out.flush()
}

pub fn write_ohlcv_file(path: &Path, series: &BarSeries) -> Result<(), OhlcvError> {
    let file = File::create(path).map_err(|e| OhlcvError::from(e).in_file(path))?;
    write_ohlcv(series, file).map_err(|e| OhlcvError::from(e).in_file(path))
}
