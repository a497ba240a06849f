//! Shared fixtures for graph-module tests.

use alloc::vec::Vec;

use crate::corr::{pearson_matrix, to_dissimilarity, CorrelationMatrix, DissimilarityKind, DissimilarityMatrix};
use crate::returns::ReturnPanel;
use crate::rng::{standard_normal, Streams};
use crate::taxonomy::SectorTaxonomy;

pub(crate) fn random_panel(seed: u64, n: usize, t_len: usize) -> ReturnPanel {
    let mut rng = Streams::new(seed).stream(0);
    let rows: Vec<Vec<f64>> =
        (0..n).map(|_| (0..t_len).map(|_| standard_normal(&mut rng)).collect()).collect();
    let symbols = (0..n).map(|i| alloc::format!("S{i:02}")).collect();
    ReturnPanel::new(60, symbols, rows, SectorTaxonomy::default()).unwrap()
}

pub(crate) fn matrices(seed: u64, n: usize) -> (DissimilarityMatrix, CorrelationMatrix) {
    let corr = pearson_matrix(&random_panel(seed, n, 64)).unwrap();
    (to_dissimilarity(&corr, DissimilarityKind::Power), corr)
}
