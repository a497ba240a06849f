//! Distribution summaries of correlation coefficients.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::corr::CorrelationMatrix;
use crate::taxonomy::SectorTaxonomy;

#[derive(Clone, Debug, PartialEq)]
pub enum SummaryError {
    EmptyPercentileList,
    /// levels must lie strictly inside (0, 100)
    InvalidPercentile { level: f64 },
    UnknownSector { sector: String },
    /// fewer than two members, no pair to summarize
    SectorTooSmall { sector: String, members: usize },
}

impl fmt::Display for SummaryError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SummaryError::EmptyPercentileList => write!(f, "percentile list is empty"),
            SummaryError::InvalidPercentile { level } => {
                write!(f, "percentile level {level} outside (0, 100)")
            }
            SummaryError::UnknownSector { sector } => write!(f, "sector {sector:?} is not in the taxonomy"),
            SummaryError::SectorTooSmall { sector, members } => {
                write!(f, "sector {sector:?} has {members} member(s), need at least 2")
            }
        }
    }
}

impl core::error::Error for SummaryError {}

/// Mean, mean of absolute values and selected percentiles of a coefficient
/// sample. Percentiles are computed on the signed values; `mean_abs` carries
/// the magnitude view.
#[derive(Clone, Debug, PartialEq)]
pub struct CorrelationSummary {
    pub mean: f64,
    pub mean_abs: f64,
    /// (level in percent, value), in the caller's level order
    pub percentiles: Vec<(f64, f64)>,
    pub count: usize,
}

/// Linear-interpolation quantile (the "type 7" estimator shared by numpy and
/// R defaults). `sorted` must be ascending and non-empty, `q` in [0, 1].
pub fn quantile(sorted: &[f64], q: f64) -> f64 {
    assert!(!sorted.is_empty());
    assert!((0.0..=1.0).contains(&q));
    let h = (sorted.len() - 1) as f64 * q;
    let lo = libm::floor(h) as usize;
    if lo + 1 >= sorted.len() {
        return sorted[sorted.len() - 1];
    }
    let frac = h - lo as f64;
    sorted[lo] + frac * (sorted[lo + 1] - sorted[lo])
}

/// Summary of an arbitrary coefficient sample; `values` must be non-empty.
pub fn summarize_values(values: &[f64], levels: &[f64]) -> Result<CorrelationSummary, SummaryError> {
    if levels.is_empty() {
        return Err(SummaryError::EmptyPercentileList);
    }
    for &level in levels {
        if !(level > 0.0 && level < 100.0) {
            return Err(SummaryError::InvalidPercentile { level });
        }
    }
    assert!(!values.is_empty(), "caller guarantees a non-empty sample");
    let count = values.len();
    let mean = values.iter().sum::<f64>() / count as f64;
    let mean_abs = values.iter().map(|v| libm::fabs(*v)).sum::<f64>() / count as f64;
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let percentiles = levels.iter().map(|&l| (l, quantile(&sorted, l / 100.0))).collect();
    Ok(CorrelationSummary { mean, mean_abs, percentiles, count })
}

/// Summary over the strict upper triangle: n*(n-1)/2 coefficients.
pub fn pairwise_summary(
    corr: &CorrelationMatrix,
    levels: &[f64],
) -> Result<CorrelationSummary, SummaryError> {
    let values: Vec<f64> = corr.upper_triangle().map(|(_, _, rho)| rho).collect();
    summarize_values(&values, levels)
}

/// Summary restricted to index pairs within `members` (sorted node indices).
pub fn group_summary(
    corr: &CorrelationMatrix,
    members: &[usize],
    levels: &[f64],
) -> Result<CorrelationSummary, SummaryError> {
    let mut values = Vec::with_capacity(members.len() * (members.len() - 1) / 2);
    for (a, &i) in members.iter().enumerate() {
        for &j in &members[a + 1..] {
            values.push(corr.value(i, j));
        }
    }
    summarize_values(&values, levels)
}

/// Summary over pairs whose symbols both carry `sector` in the taxonomy.
pub fn sector_summary(
    corr: &CorrelationMatrix,
    taxonomy: &SectorTaxonomy,
    sector: &str,
    levels: &[f64],
) -> Result<CorrelationSummary, SummaryError> {
    if !taxonomy.iter().any(|(_, g)| g == sector) {
        return Err(SummaryError::UnknownSector { sector: sector.into() });
    }
    let members: Vec<usize> = corr
        .symbols()
        .iter()
        .enumerate()
        .filter(|(_, sym)| taxonomy.sector_of(sym) == Some(sector))
        .map(|(i, _)| i)
        .collect();
    if members.len() < 2 {
        return Err(SummaryError::SectorTooSmall { sector: sector.into(), members: members.len() });
    }
    group_summary(corr, &members, levels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    #[test]
    fn quantile_interpolates_like_numpy() {
        assert_eq!(quantile(&[0.1, 0.2, 0.3], 0.5), 0.2);
        // numpy.percentile([1,2,3,4], 25) == 1.75
        assert!((quantile(&[1.0, 2.0, 3.0, 4.0], 0.25) - 1.75).abs() < 1e-15);
        assert_eq!(quantile(&[1.0, 2.0, 3.0, 4.0], 0.0), 1.0);
        assert_eq!(quantile(&[1.0, 2.0, 3.0, 4.0], 1.0), 4.0);
        assert_eq!(quantile(&[7.0], 0.9), 7.0);
    }

    fn square(symbols: &[&str], vals: &[f64]) -> CorrelationMatrix {
        CorrelationMatrix::from_values(
            symbols.iter().map(|s| s.to_string()).collect(),
            10,
            vals.to_vec(),
        )
    }

    #[test]
    fn pairwise_counts_strict_upper_triangle() {
        #[rustfmt::skip]
        let corr = square(&["A", "B", "C"], &[
            1.0, 0.5, -0.2,
            0.5, 1.0, 0.1,
            -0.2, 0.1, 1.0,
        ]);
        let s = pairwise_summary(&corr, &[50.0]).unwrap();
        assert_eq!(s.count, 3);
        assert!((s.mean - (0.5 - 0.2 + 0.1) / 3.0).abs() < 1e-15);
        assert!((s.mean_abs - (0.5 + 0.2 + 0.1) / 3.0).abs() < 1e-15);
        assert_eq!(s.percentiles, vec![(50.0, 0.1)]);
    }

    #[test]
    fn rejects_bad_percentile_lists() {
        let corr = square(&["A", "B"], &[1.0, 0.4, 0.4, 1.0]);
        assert_eq!(pairwise_summary(&corr, &[]).unwrap_err(), SummaryError::EmptyPercentileList);
        assert_eq!(
            pairwise_summary(&corr, &[0.0]).unwrap_err(),
            SummaryError::InvalidPercentile { level: 0.0 }
        );
        assert_eq!(
            pairwise_summary(&corr, &[100.0]).unwrap_err(),
            SummaryError::InvalidPercentile { level: 100.0 }
        );
    }

    #[test]
    fn sector_summary_restricts_to_members() {
        #[rustfmt::skip]
        let corr = square(&["A", "B", "C"], &[
            1.0, 0.9, 0.0,
            0.9, 1.0, 0.0,
            0.0, 0.0, 1.0,
        ]);
        let tax = SectorTaxonomy::new(
            [("A", "x"), ("B", "x"), ("C", "y")]
                .iter()
                .map(|(s, g)| (s.to_string(), g.to_string()))
                .collect(),
        );
        let s = sector_summary(&corr, &tax, "x", &[50.0]).unwrap();
        assert_eq!(s.count, 1);
        assert_eq!(s.mean, 0.9);

        assert_eq!(
            sector_summary(&corr, &tax, "zzz", &[50.0]).unwrap_err(),
            SummaryError::UnknownSector { sector: "zzz".to_string() }
        );
        assert_eq!(
            sector_summary(&corr, &tax, "y", &[50.0]).unwrap_err(),
            SummaryError::SectorTooSmall { sector: "y".to_string(), members: 1 }
        );
    }
}
