//! Log-return series and the aligned multi-asset panel.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::taxonomy::SectorTaxonomy;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReturnError {
    /// `index` points at the offending price.
    NonPositivePrice { index: usize },
    /// fewer than two prices, no return can be formed
    TooShort,
    EmptyPanel,
    /// series `symbol_index` does not match the panel's length
    LengthMismatch { symbol_index: usize },
    DuplicateSymbol { symbol_index: usize },
    NonFinite { symbol_index: usize },
}

impl fmt::Display for ReturnError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReturnError::NonPositivePrice { index } => {
                write!(f, "price at position {index} is not strictly positive")
            }
            ReturnError::TooShort => write!(f, "need at least two prices to form a return"),
            ReturnError::EmptyPanel => write!(f, "panel has no series"),
            ReturnError::LengthMismatch { symbol_index } => {
                write!(f, "series {symbol_index} length differs from the rest of the panel")
            }
            ReturnError::DuplicateSymbol { symbol_index } => {
                write!(f, "symbol at position {symbol_index} appears more than once")
            }
            ReturnError::NonFinite { symbol_index } => {
                write!(f, "series {symbol_index} contains a non-finite return")
            }
        }
    }
}

impl core::error::Error for ReturnError {}

/// `out[t] = ln(p[t+1]) - ln(p[t])`; one element shorter than the input.
pub fn log_returns(prices: &[f64]) -> Result<Vec<f64>, ReturnError> {
    if prices.len() < 2 {
        return Err(ReturnError::TooShort);
    }
    if let Some(index) = prices.iter().position(|&p| !(p > 0.0) || !p.is_finite()) {
        return Err(ReturnError::NonPositivePrice { index });
    }
    Ok(prices.windows(2).map(|w| libm::log(w[1]) - libm::log(w[0])).collect())
}

/// Return series for every asset over one shared time grid, rows in symbol
/// order. All rows have the same length.
#[derive(Clone, Debug, PartialEq)]
pub struct ReturnPanel {
    horizon_s: u32,
    symbols: Vec<String>,
    rows: Vec<Vec<f64>>,
    taxonomy: SectorTaxonomy,
}

impl ReturnPanel {
    pub fn new(
        horizon_s: u32,
        symbols: Vec<String>,
        rows: Vec<Vec<f64>>,
        taxonomy: SectorTaxonomy,
    ) -> Result<Self, ReturnError> {
        if symbols.is_empty() || rows.is_empty() {
            return Err(ReturnError::EmptyPanel);
        }
        assert_eq!(symbols.len(), rows.len(), "one return row per symbol");
        let t_len = rows[0].len();
        for (i, row) in rows.iter().enumerate() {
            if row.len() != t_len || t_len == 0 {
                return Err(ReturnError::LengthMismatch { symbol_index: i });
            }
            if row.iter().any(|v| !v.is_finite()) {
                return Err(ReturnError::NonFinite { symbol_index: i });
            }
        }
        for i in 1..symbols.len() {
            if symbols[..i].contains(&symbols[i]) {
                return Err(ReturnError::DuplicateSymbol { symbol_index: i });
            }
        }
        Ok(ReturnPanel { horizon_s, symbols, rows, taxonomy })
    }

    pub fn horizon_s(&self) -> u32 {
        self.horizon_s
    }

    pub fn n_assets(&self) -> usize {
        self.symbols.len()
    }

    pub fn t_len(&self) -> usize {
        self.rows[0].len()
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    pub fn taxonomy(&self) -> &SectorTaxonomy {
        &self.taxonomy
    }

    /// Same panel restricted to the given time indices (used by bootstrap
    /// resampling; indices may repeat).
    pub fn select_times(&self, picks: &[usize]) -> ReturnPanel {
        let rows = self
            .rows
            .iter()
            .map(|row| picks.iter().map(|&t| row[t]).collect())
            .collect();
        ReturnPanel {
            horizon_s: self.horizon_s,
            symbols: self.symbols.clone(),
            rows,
            taxonomy: self.taxonomy.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    #[test]
    fn log_returns_basic() {
        let r = log_returns(&[100.0, 110.0, 99.0]).unwrap();
        assert_eq!(r.len(), 2);
        assert!((r[0] - (110.0f64 / 100.0).ln()).abs() < 1e-15);
        assert!((r[1] - (99.0f64 / 110.0).ln()).abs() < 1e-15);
    }

    #[test]
    fn log_returns_rejects_bad_input() {
        assert_eq!(log_returns(&[100.0]).unwrap_err(), ReturnError::TooShort);
        assert_eq!(
            log_returns(&[100.0, 0.0, 1.0]).unwrap_err(),
            ReturnError::NonPositivePrice { index: 1 }
        );
        assert_eq!(
            log_returns(&[100.0, -3.0]).unwrap_err(),
            ReturnError::NonPositivePrice { index: 1 }
        );
    }

    #[test]
    fn log_returns_invariant_under_price_rescaling() {
        let p = [100.0, 103.0, 101.5, 108.0];
        let scaled: Vec<f64> = p.iter().map(|x| x * 7.25).collect();
        let a = log_returns(&p).unwrap();
        let b = log_returns(&scaled).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn panel_validates_shape() {
        let tax = SectorTaxonomy::default();
        let err = ReturnPanel::new(
            60,
            vec!["A".to_string(), "B".to_string()],
            vec![vec![0.1, 0.2], vec![0.1]],
            tax.clone(),
        );
        assert_eq!(err.unwrap_err(), ReturnError::LengthMismatch { symbol_index: 1 });

        let err = ReturnPanel::new(
            60,
            vec!["A".to_string(), "A".to_string()],
            vec![vec![0.1], vec![0.2]],
            tax,
        );
        assert_eq!(err.unwrap_err(), ReturnError::DuplicateSymbol { symbol_index: 1 });
    }

    #[test]
    fn select_times_repeats_columns() {
        let tax = SectorTaxonomy::default();
        let p = ReturnPanel::new(
            60,
            vec!["A".to_string()],
            vec![vec![1.0, 2.0, 3.0]],
            tax,
        )
        .unwrap();
        let q = p.select_times(&[2, 0, 2]);
        assert_eq!(q.row(0), &[3.0, 1.0, 3.0]);
    }
}
