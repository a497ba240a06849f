//! OHLCV bar series: validation, horizon resampling, gap repair.
//!
//! Timestamps are unix seconds (UTC) at the *start* of each bar and must sit
//! on the horizon grid (`ts % horizon_s == 0`). Bin edges are anchored at the
//! unix epoch so resampling the same data twice in steps or in one jump lands
//! on identical bins.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OhlcvBar {
    pub timestamp: i64,
    pub open: f64,
    pub high: f64,
    pub low: f64,
    pub close: f64,
    pub volume: f64,
}

impl OhlcvBar {
    /// Price sanity: positive prices, `low <= min(open, close)`,
    /// `high >= max(open, close)`, non-negative volume.
    pub fn is_consistent(&self) -> bool {
        self.open > 0.0
            && self.high > 0.0
            && self.low > 0.0
            && self.close > 0.0
            && self.low <= self.open.min(self.close)
            && self.high >= self.open.max(self.close)
            && self.volume >= 0.0
            && self.open.is_finite()
            && self.high.is_finite()
            && self.low.is_finite()
            && self.close.is_finite()
            && self.volume.is_finite()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BarSeries {
    symbol: String,
    horizon_s: u32,
    bars: Vec<OhlcvBar>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BarError {
    EmptyInput,
    /// `row` is the 0-based bar index within the series.
    NonMonotonicTimestamps { row: usize },
    OhlcInconsistent { row: usize },
    MisalignedTimestamp { row: usize },
    /// target horizon is not a multiple of the source horizon
    NonDivisibleHorizon { source_s: u32, target_s: u32 },
    /// nothing to fill from: the series has no valid bars
    AllMissing,
    ZeroHorizon,
}

impl fmt::Display for BarError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BarError::EmptyInput => write!(f, "bar series is empty"),
            BarError::NonMonotonicTimestamps { row } => {
                write!(f, "timestamp at bar {row} does not increase")
            }
            BarError::OhlcInconsistent { row } => {
                write!(f, "OHLC invariants violated at bar {row}")
            }
            BarError::MisalignedTimestamp { row } => {
                write!(f, "timestamp at bar {row} is off the horizon grid")
            }
            BarError::NonDivisibleHorizon { source_s, target_s } => {
                write!(f, "target horizon {target_s}s is not a multiple of source {source_s}s")
            }
            BarError::AllMissing => write!(f, "series has no bars to fill gaps from"),
            BarError::ZeroHorizon => write!(f, "horizon must be positive"),
        }
    }
}

impl core::error::Error for BarError {}

impl BarSeries {
    /// Validates bar order, grid alignment and OHLC sanity.
    pub fn new(symbol: String, horizon_s: u32, bars: Vec<OhlcvBar>) -> Result<Self, BarError> {
        if horizon_s == 0 {
            return Err(BarError::ZeroHorizon);
        }
        if bars.is_empty() {
            return Err(BarError::EmptyInput);
        }
        let h = horizon_s as i64;
        for (row, bar) in bars.iter().enumerate() {
            if !bar.is_consistent() {
                return Err(BarError::OhlcInconsistent { row });
            }
            if bar.timestamp.rem_euclid(h) != 0 {
                return Err(BarError::MisalignedTimestamp { row });
            }
            if row > 0 && bar.timestamp <= bars[row - 1].timestamp {
                return Err(BarError::NonMonotonicTimestamps { row });
            }
        }
        Ok(BarSeries { symbol, horizon_s, bars })
    }

    pub fn symbol(&self) -> &str {
        &self.symbol
    }

    pub fn horizon_s(&self) -> u32 {
        self.horizon_s
    }

    pub fn bars(&self) -> &[OhlcvBar] {
        &self.bars
    }

    pub fn len(&self) -> usize {
        self.bars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bars.is_empty()
    }

    pub fn closes(&self) -> Vec<f64> {
        self.bars.iter().map(|b| b.close).collect()
    }

    /// True when consecutive timestamps differ by exactly one horizon step,
    /// i.e. the series has no holes.
    pub fn is_gapless(&self) -> bool {
        let h = self.horizon_s as i64;
        self.bars.windows(2).all(|w| w[1].timestamp - w[0].timestamp == h)
    }
}

/// Aggregates bars into coarser epoch-anchored bins. Source bins that fall in
/// an empty target bin simply produce no output bar; `fill_gaps` on the
/// result (or on the source beforehand) closes the holes.
///
/// open = first open, close = last close, high = max, low = min,
/// volume = sum, all over the bin's constituent source bars.
pub fn resample(series: &BarSeries, target_horizon_s: u32) -> Result<BarSeries, BarError> {
    if target_horizon_s == 0 {
        return Err(BarError::ZeroHorizon);
    }
    if target_horizon_s % series.horizon_s != 0 {
        return Err(BarError::NonDivisibleHorizon {
            source_s: series.horizon_s,
            target_s: target_horizon_s,
        });
    }
    if target_horizon_s == series.horizon_s {
        return Ok(series.clone());
    }
    let th = target_horizon_s as i64;
    let mut out: Vec<OhlcvBar> = Vec::new();
    for bar in &series.bars {
        let bin_start = bar.timestamp.div_euclid(th) * th;
        match out.last_mut() {
            Some(agg) if agg.timestamp == bin_start => {
                agg.high = agg.high.max(bar.high);
                agg.low = agg.low.min(bar.low);
                agg.close = bar.close;
                agg.volume += bar.volume;
            }
            _ => out.push(OhlcvBar { timestamp: bin_start, ..*bar }),
        }
    }
    BarSeries::new(series.symbol.clone(), target_horizon_s, out)
}

/// Fills holes in the horizon grid between the first and last bar. A filled
/// slot carries flat OHLC at the close of the nearest real bar (ties resolve
/// toward the earlier bar) and zero volume. Returns the repaired series and
/// the number of slots that were synthesized.
pub fn fill_gaps(series: &BarSeries) -> Result<(BarSeries, usize), BarError> {
    if series.bars.is_empty() {
        return Err(BarError::AllMissing);
    }
    let h = series.horizon_s as i64;
    let first = series.bars[0].timestamp;
    let last = series.bars[series.bars.len() - 1].timestamp;
    let slots = ((last - first) / h + 1) as usize;
    let mut out = Vec::with_capacity(slots);
    let mut filled = 0usize;
    let mut idx = 0usize; // next real bar
    let mut ts = first;
    while ts <= last {
        if series.bars[idx].timestamp == ts {
            out.push(series.bars[idx]);
            idx += 1;
        } else {
            // idx > 0 here: the first slot always matches a real bar
            let prev = &series.bars[idx - 1];
            let next = &series.bars[idx];
            let src = if ts - prev.timestamp <= next.timestamp - ts { prev } else { next };
            out.push(OhlcvBar {
                timestamp: ts,
                open: src.close,
                high: src.close,
                low: src.close,
                close: src.close,
                volume: 0.0,
            });
            filled += 1;
        }
        ts += h;
    }
    let repaired = BarSeries::new(series.symbol.clone(), series.horizon_s, out)?;
    Ok((repaired, filled))
}
