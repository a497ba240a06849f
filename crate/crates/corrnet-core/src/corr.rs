//! Pearson correlation matrices and the dissimilarity transforms fed to the
//! network filters.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::returns::ReturnPanel;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CorrError {
    /// need at least 3 observations
    TooFewSamples { t_len: usize },
    ZeroVariance { series_index: usize },
}

impl fmt::Display for CorrError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CorrError::TooFewSamples { t_len } => {
                write!(f, "{t_len} samples is too few for a correlation estimate")
            }
            CorrError::ZeroVariance { series_index } => {
                write!(f, "series {series_index} has zero variance")
            }
        }
    }
}

impl core::error::Error for CorrError {}

/// Symmetric matrix with an exact unit diagonal; off-diagonal entries are
/// clamped to [-1, 1].
#[derive(Clone, Debug, PartialEq)]
pub struct CorrelationMatrix {
    symbols: Vec<String>,
    t_len: usize,
    values: Vec<f64>, // n*n row-major
}

impl CorrelationMatrix {
    pub fn n(&self) -> usize {
        self.symbols.len()
    }

    pub fn t_len(&self) -> usize {
        self.t_len
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn value(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.n() + j]
    }

    /// (i, j, rho) for i < j.
    pub fn upper_triangle(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        let n = self.n();
        (0..n).flat_map(move |i| ((i + 1)..n).map(move |j| (i, j, self.value(i, j))))
    }

    /// Test/report constructor from precomputed entries; validates shape,
    /// symmetry, range and unit diagonal.
    pub fn from_values(symbols: Vec<String>, t_len: usize, values: Vec<f64>) -> Self {
        let n = symbols.len();
        assert_eq!(values.len(), n * n);
        for i in 0..n {
            assert_eq!(values[i * n + i], 1.0, "diagonal must be exactly 1");
            for j in 0..n {
                let v = values[i * n + j];
                assert!((-1.0..=1.0).contains(&v));
                assert_eq!(v, values[j * n + i], "matrix must be symmetric");
            }
        }
        CorrelationMatrix { symbols, t_len, values }
    }
}

/// Pearson estimator with population (1/T) normalization on both the
/// covariance and the standard deviations; the ratio is what matters and it
/// is invariant to that shared choice. Summation order is fixed, so the
/// result is bit-reproducible.
pub fn pearson_matrix(panel: &ReturnPanel) -> Result<CorrelationMatrix, CorrError> {
    let n = panel.n_assets();
    let t_len = panel.t_len();
    if t_len < 3 {
        return Err(CorrError::TooFewSamples { t_len });
    }
    let tf = t_len as f64;

    let mut centered: Vec<Vec<f64>> = Vec::with_capacity(n);
    let mut stds = Vec::with_capacity(n);
    for i in 0..n {
        let row = panel.row(i);
        let mean: f64 = row.iter().sum::<f64>() / tf;
        let c: Vec<f64> = row.iter().map(|v| v - mean).collect();
        let var: f64 = c.iter().map(|v| v * v).sum::<f64>() / tf;
        if !(var > 0.0) {
            return Err(CorrError::ZeroVariance { series_index: i });
        }
        centered.push(c);
        stds.push(libm::sqrt(var));
    }

    let mut values = vec![0.0; n * n];
    for i in 0..n {
        values[i * n + i] = 1.0;
        for j in (i + 1)..n {
            let cov: f64 =
                centered[i].iter().zip(&centered[j]).map(|(a, b)| a * b).sum::<f64>() / tf;
            let rho = (cov / (stds[i] * stds[j])).clamp(-1.0, 1.0);
            values[i * n + j] = rho;
            values[j * n + i] = rho;
        }
    }
    Ok(CorrelationMatrix { symbols: panel.symbols().to_vec(), t_len, values })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DissimilarityKind {
    /// sqrt(2 * (1 - rho)), range [0, 2]
    Euclidean,
    /// 1 - rho^2, range [0, 1]; treats strong negative ties as close
    Power,
}

impl DissimilarityKind {
    pub fn apply(self, rho: f64) -> f64 {
        match self {
            DissimilarityKind::Euclidean => libm::sqrt(2.0 * (1.0 - rho)),
            DissimilarityKind::Power => 1.0 - rho * rho,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            DissimilarityKind::Euclidean => "euclidean",
            DissimilarityKind::Power => "power",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DissimilarityMatrix {
    pub kind: DissimilarityKind,
    symbols: Vec<String>,
    values: Vec<f64>,
}

impl DissimilarityMatrix {
    pub fn n(&self) -> usize {
        self.symbols.len()
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn value(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.n() + j]
    }
}

pub fn to_dissimilarity(corr: &CorrelationMatrix, kind: DissimilarityKind) -> DissimilarityMatrix {
    let n = corr.n();
    let mut values = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            // rho is clamped, so the sqrt argument is never negative
            values[i * n + j] = if i == j { 0.0 } else { kind.apply(corr.value(i, j)) };
        }
    }
    DissimilarityMatrix { kind, symbols: corr.symbols().to_vec(), values }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::taxonomy::SectorTaxonomy;

    fn panel(rows: Vec<Vec<f64>>) -> ReturnPanel {
        let symbols = (0..rows.len()).map(|i| alloc::format!("S{i}")).collect();
        ReturnPanel::new(60, symbols, rows, SectorTaxonomy::default()).unwrap()
    }

    #[test]
    fn matches_directly_computed_coefficient() {
        let x = vec![1.0, 2.0, 3.0, 4.0];
        let y = vec![1.0, 2.0, 4.0, 8.0];
        let corr = pearson_matrix(&panel(vec![x.clone(), y.clone()])).unwrap();

        // independent computation, straight from the definition
        let t = x.len() as f64;
        let mx = x.iter().sum::<f64>() / t;
        let my = y.iter().sum::<f64>() / t;
        let cov = x.iter().zip(&y).map(|(a, b)| (a - mx) * (b - my)).sum::<f64>() / t;
        let vx = x.iter().map(|a| (a - mx) * (a - mx)).sum::<f64>() / t;
        let vy = y.iter().map(|b| (b - my) * (b - my)).sum::<f64>() / t;
        let expected = cov / (vx.sqrt() * vy.sqrt());

        assert!((corr.value(0, 1) - expected).abs() < 1e-15);
        assert!(expected > 0.9 && expected < 1.0);
    }

    #[test]
    fn affine_relations_hit_the_boundaries() {
        let x = vec![0.0, 1.0, 2.0, 5.0];
        let up: Vec<f64> = x.iter().map(|v| 2.0 * v + 1.0).collect();
        let down: Vec<f64> = x.iter().map(|v| -0.5 * v + 3.0).collect();
        let corr = pearson_matrix(&panel(vec![x, up, down])).unwrap();
        assert_eq!(corr.value(0, 1), 1.0);
        assert_eq!(corr.value(0, 2), -1.0);
    }

    #[test]
    fn diagonal_and_symmetry_are_exact() {
        let corr = pearson_matrix(&panel(vec![
            vec![0.3, -0.1, 0.25, 0.07, -0.4],
            vec![0.1, 0.2, -0.3, 0.4, 0.0],
            vec![-0.2, 0.05, 0.11, -0.09, 0.3],
        ]))
        .unwrap();
        for i in 0..3 {
            assert_eq!(corr.value(i, i), 1.0);
            for j in 0..3 {
                assert_eq!(corr.value(i, j).to_bits(), corr.value(j, i).to_bits());
                assert!(corr.value(i, j) >= -1.0 && corr.value(i, j) <= 1.0);
            }
        }
    }

    #[test]
    fn reports_zero_variance_series() {
        let err = pearson_matrix(&panel(vec![
            vec![0.1, 0.2, 0.3],
            vec![5.0, 5.0, 5.0],
        ]))
        .unwrap_err();
        assert_eq!(err, CorrError::ZeroVariance { series_index: 1 });
    }

    #[test]
    fn rejects_too_few_samples() {
        let err = pearson_matrix(&panel(vec![vec![0.1, 0.2], vec![0.3, 0.1]])).unwrap_err();
        assert_eq!(err, CorrError::TooFewSamples { t_len: 2 });
    }

    #[test]
    fn dissimilarity_formulas() {
        assert!((DissimilarityKind::Euclidean.apply(0.6) - (0.8f64).sqrt()).abs() < 1e-15);
        assert!((DissimilarityKind::Power.apply(0.6) - 0.64).abs() < 1e-15);
        // ranges at the extremes
        assert_eq!(DissimilarityKind::Euclidean.apply(1.0), 0.0);
        assert_eq!(DissimilarityKind::Euclidean.apply(-1.0), 2.0);
        assert_eq!(DissimilarityKind::Power.apply(1.0), 0.0);
        assert_eq!(DissimilarityKind::Power.apply(-1.0), 0.0);
        assert_eq!(DissimilarityKind::Power.apply(0.0), 1.0);
    }

    #[test]
    fn dissimilarity_matrix_has_zero_diagonal() {
        let corr = pearson_matrix(&panel(vec![
            vec![0.3, -0.1, 0.25, 0.07],
            vec![0.1, 0.2, -0.3, 0.4],
        ]))
        .unwrap();
        for kind in [DissimilarityKind::Euclidean, DissimilarityKind::Power] {
            let d = to_dissimilarity(&corr, kind);
            assert_eq!(d.value(0, 0), 0.0);
            assert_eq!(d.value(1, 1), 0.0);
            assert_eq!(d.value(0, 1), d.value(1, 0));
            let hi = if kind == DissimilarityKind::Euclidean { 2.0 } else { 1.0 };
            assert!(d.value(0, 1) >= 0.0 && d.value(0, 1) <= hi);
        }
    }
}
