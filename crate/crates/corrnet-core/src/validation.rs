//! Statistical robustness checks for filtered networks.
//!
//! Two complementary procedures: bootstrap resampling of time rows measures
//! how stable each filtered link is under sampling noise, and a
//! shuffled-returns null model brackets the correlation range compatible with
//! "no cross-dependence at all". Links are then annotated by how many of them
//! the null range can explain.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use crate::corr::{pearson_matrix, to_dissimilarity, CorrError, DissimilarityKind};
use crate::graph::{build_filtered, FilterKind, GraphError};
use crate::returns::ReturnPanel;
use crate::rng::{shuffle, uniform_index, Streams};

/// Consecutive degenerate redraws tolerated per replica before giving up.
const DEGENERATE_RETRY_CAP: usize = 100;

#[derive(Clone, Debug, PartialEq)]
pub enum ValidationError {
    Correlation(CorrError),
    Graph(GraphError),
    /// a bootstrap replica kept producing zero-variance series
    DegenerateReplica { replica: usize, attempts: usize },
    EmptyLinkList,
}

impl fmt::Display for ValidationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValidationError::Correlation(e) => write!(f, "correlation failed: {e}"),
            ValidationError::Graph(e) => write!(f, "filter failed: {e}"),
            ValidationError::DegenerateReplica { replica, attempts } => write!(
                f,
                "bootstrap replica {replica} still degenerate after {attempts} redraws"
            ),
            ValidationError::EmptyLinkList => write!(f, "no links to annotate"),
        }
    }
}

impl core::error::Error for ValidationError {}

impl From<CorrError> for ValidationError {
    fn from(e: CorrError) -> Self {
        ValidationError::Correlation(e)
    }
}

impl From<GraphError> for ValidationError {
    fn from(e: GraphError) -> Self {
        ValidationError::Graph(e)
    }
}

/// Per-edge persistence of an empirical filtered graph under bootstrap
/// resampling of time rows.
#[derive(Clone, Debug, PartialEq)]
pub struct BootstrapReport {
    pub kind: FilterKind,
    pub replica_count: usize,
    /// empirical edge (i, j) → fraction of replicas whose filter kept it
    pub per_edge_support: BTreeMap<(usize, usize), f64>,
    /// fraction of empirical edges with support strictly above `threshold`
    pub frac_edges_above_threshold: f64,
    pub threshold: f64,
}

/// Correlation range observed when every series is shuffled in time
/// independently, destroying all cross-dependence but keeping marginals.
#[derive(Clone, Debug, PartialEq)]
pub struct NullEnvelope {
    pub shuffle_count: usize,
    pub min_coeff: f64,
    pub max_coeff: f64,
    /// full off-diagonal null distribution, kept only on request
    pub null_coeff_samples: Option<Vec<f64>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stars {
    None,
    One,
    Two,
    Three,
}

impl Stars {
    pub fn from_p_value(p: f64) -> Self {
        if p <= 0.001 {
            Stars::Three
        } else if p <= 0.01 {
            Stars::Two
        } else if p <= 0.05 {
            Stars::One
        } else {
            Stars::None
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Stars::None => "",
            Stars::One => "*",
            Stars::Two => "**",
            Stars::Three => "***",
        }
    }
}

/// How much of a link set the null envelope can explain. The p-value is the
/// fraction of links lying strictly inside the envelope: links a pure-noise
/// model reproduces.
#[derive(Clone, Debug, PartialEq)]
pub struct SignificanceAnnotation {
    pub links_within_envelope: usize,
    pub total_links: usize,
    pub p_value: f64,
    pub stars: Stars,
}

/// Resamples `replicas` bootstrap panels (whole time rows, with replacement,
/// preserving the cross-section), rebuilds the filter on each, and reports
/// per-edge support for the empirical graph's edges.
///
/// Replica `r` draws from stream `r` of `seed`, so results are independent
/// of evaluation order and bit-reproducible per seed.
pub fn bootstrap_stability(
    panel: &ReturnPanel,
    kind: FilterKind,
    dissimilarity: DissimilarityKind,
    replicas: usize,
    threshold: f64,
    seed: u64,
) -> Result<BootstrapReport, ValidationError> {
    bootstrap_with_retry_cap(
        panel,
        kind,
        dissimilarity,
        replicas,
        threshold,
        seed,
        DEGENERATE_RETRY_CAP,
    )
}

pub(crate) fn bootstrap_with_retry_cap(
    panel: &ReturnPanel,
    kind: FilterKind,
    dissimilarity: DissimilarityKind,
    replicas: usize,
    threshold: f64,
    seed: u64,
    retry_cap: usize,
) -> Result<BootstrapReport, ValidationError> {
    assert!(replicas >= 1, "need at least one replica");
    assert!((0.0..=1.0).contains(&threshold), "threshold is a fraction");

    let corr = pearson_matrix(panel)?;
    let empirical = build_filtered(kind, &to_dissimilarity(&corr, dissimilarity), &corr)?;
    let pairs = empirical.index_pairs();
    let t_len = panel.t_len();
    let streams = Streams::new(seed);

    let mut hits = alloc::vec![0usize; pairs.len()];
    for r in 0..replicas {
        let mut rng = streams.stream(r as u64);
        let mut attempts = 0;
        let replica_graph = loop {
            let picks: Vec<usize> = (0..t_len).map(|_| uniform_index(&mut rng, t_len)).collect();
            match pearson_matrix(&panel.select_times(&picks)) {
                Ok(c) => break build_filtered(kind, &to_dissimilarity(&c, dissimilarity), &c)?,
                Err(CorrError::ZeroVariance { .. }) => {
                    // redraw from the same stream: deterministic, bounded
                    attempts += 1;
                    if attempts >= retry_cap {
                        return Err(ValidationError::DegenerateReplica { replica: r, attempts });
                    }
                }
                Err(e) => return Err(e.into()),
            }
        };
        let mut replica_pairs = replica_graph.index_pairs();
        replica_pairs.sort_unstable();
        for (k, p) in pairs.iter().enumerate() {
            if replica_pairs.binary_search(p).is_ok() {
                hits[k] += 1;
            }
        }
    }

    let per_edge_support: BTreeMap<(usize, usize), f64> = pairs
        .iter()
        .zip(&hits)
        .map(|(&p, &h)| (p, h as f64 / replicas as f64))
        .collect();
    let above = per_edge_support.values().filter(|&&s| s > threshold).count();
    Ok(BootstrapReport {
        kind,
        replica_count: replicas,
        frac_edges_above_threshold: above as f64 / pairs.len() as f64,
        per_edge_support,
        threshold,
    })
}

/// Shuffles every series independently in time `shuffles` times and records
/// the global off-diagonal correlation range across all repetitions.
/// Repetition `s` draws from stream `s` of `seed`.
pub fn shuffle_null(
    panel: &ReturnPanel,
    shuffles: usize,
    seed: u64,
    retain_samples: bool,
) -> Result<NullEnvelope, ValidationError> {
    assert!(shuffles >= 1, "need at least one shuffle");
    let streams = Streams::new(seed);
    let mut min_coeff = f64::INFINITY;
    let mut max_coeff = f64::NEG_INFINITY;
    let n = panel.n_assets();
    let mut samples =
        retain_samples.then(|| Vec::with_capacity(shuffles * n * (n - 1) / 2));

    for s in 0..shuffles {
        let mut rng = streams.stream(s as u64);
        let mut rows = panel.rows().to_vec();
        for row in &mut rows {
            shuffle(&mut rng, row);
        }
        let shuffled = ReturnPanel::new(
            panel.horizon_s(),
            panel.symbols().to_vec(),
            rows,
            panel.taxonomy().clone(),
        )
        .expect("permuting a valid panel keeps it valid");
        let corr = pearson_matrix(&shuffled)?;
        for (_, _, rho) in corr.upper_triangle() {
            min_coeff = min_coeff.min(rho);
            max_coeff = max_coeff.max(rho);
            if let Some(buf) = samples.as_mut() {
                buf.push(rho);
            }
        }
    }
    Ok(NullEnvelope { shuffle_count: shuffles, min_coeff, max_coeff, null_coeff_samples: samples })
}

/// Counts links lying strictly inside the null envelope. A link exactly on
/// the boundary ties the most extreme null draw and is not counted as
/// explained by it.
pub fn annotate_significance(
    links: &[f64],
    envelope: &NullEnvelope,
) -> Result<SignificanceAnnotation, ValidationError> {
    if links.is_empty() {
        return Err(ValidationError::EmptyLinkList);
    }
    let inside = links
        .iter()
        .filter(|&&rho| rho > envelope.min_coeff && rho < envelope.max_coeff)
        .count();
    let p_value = inside as f64 / links.len() as f64;
    Ok(SignificanceAnnotation {
        links_within_envelope: inside,
        total_links: links.len(),
        p_value,
        stars: Stars::from_p_value(p_value),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::standard_normal;
    use crate::taxonomy::SectorTaxonomy;
    use alloc::string::ToString;
    use alloc::vec::Vec;

    fn noise_panel(seed: u64, n: usize, t_len: usize) -> ReturnPanel {
        let streams = Streams::new(seed);
        let rows: Vec<Vec<f64>> = (0..n)
            .map(|i| {
                let mut rng = streams.stream(i as u64);
                (0..t_len).map(|_| standard_normal(&mut rng)).collect()
            })
            .collect();
        let symbols = (0..n).map(|i| alloc::format!("N{i:02}")).collect();
        ReturnPanel::new(60, symbols, rows, SectorTaxonomy::default()).unwrap()
    }

    /// Two blocks of bitwise-identical series: intra-block dissimilarities are
    /// minimal in every replica, so intra-block MST edges never drop out.
    #[test]
    fn duplicated_blocks_pin_intra_edges_at_full_support() {
        let base = noise_panel(5, 2, 50);
        let x = base.row(0).to_vec();
        let y = base.row(1).to_vec();
        let rows = alloc::vec![x.clone(), x.clone(), x, y.clone(), y.clone(), y];
        let symbols = (0..6).map(|i| alloc::format!("D{i}")).collect();
        let panel = ReturnPanel::new(60, symbols, rows, SectorTaxonomy::default()).unwrap();

        let report = bootstrap_stability(
            &panel,
            FilterKind::Mst,
            DissimilarityKind::Power,
            200,
            0.95,
            7,
        )
        .unwrap();
        assert_eq!(report.per_edge_support.len(), 5);
        let mut intra = 0;
        for (&(i, j), &support) in &report.per_edge_support {
            let same_block = (i < 3) == (j < 3);
            if same_block {
                assert_eq!(support, 1.0, "intra edge ({i},{j})");
                intra += 1;
            }
        }
        assert_eq!(intra, 4, "MST spans each block with two edges");
        assert!(report.frac_edges_above_threshold >= 0.8);
    }

    #[test]
    fn same_seed_reproduces_bit_identical_reports() {
        let panel = noise_panel(11, 5, 80);
        let run = || {
            bootstrap_stability(&panel, FilterKind::Mst, DissimilarityKind::Power, 50, 0.95, 42)
                .unwrap()
        };
        assert_eq!(run(), run());
    }

    #[test]
    fn degenerate_replicas_are_redrawn_until_the_cap() {
        // one series is zero except a single spike: a replica that misses the
        // spike has zero variance and must be redrawn
        let mut spiky = alloc::vec![0.0; 12];
        spiky[11] = 1.0;
        let other = noise_panel(3, 1, 12).row(0).to_vec();
        let panel = ReturnPanel::new(
            60,
            alloc::vec!["SPIKE".to_string(), "NOISE".to_string()],
            alloc::vec![spiky, other],
            SectorTaxonomy::default(),
        )
        .unwrap();

        let mut saw_error = false;
        let mut saw_ok = false;
        for seed in 0..50 {
            match bootstrap_with_retry_cap(
                &panel,
                FilterKind::Mst,
                DissimilarityKind::Power,
                3,
                0.95,
                seed,
                1,
            ) {
                Ok(_) => saw_ok = true,
                Err(ValidationError::DegenerateReplica { attempts, .. }) => {
                    assert_eq!(attempts, 1);
                    saw_error = true;
                }
                Err(e) => panic!("unexpected error {e}"),
            }
        }
        assert!(saw_error, "cap of one redraw should fail for some seed");
        assert!(saw_ok, "some seed should draw the spike every replica");

        // the default cap makes the same panel practically infallible
        for seed in 0..5 {
            bootstrap_stability(&panel, FilterKind::Mst, DissimilarityKind::Power, 5, 0.95, seed)
                .unwrap();
        }
    }

    #[test]
    fn envelope_of_independent_noise_shrinks_with_t() {
        let panel = noise_panel(21, 5, 2000);
        let env = shuffle_null(&panel, 20, 99, false).unwrap();
        assert!(env.min_coeff <= env.max_coeff);
        let bound = 4.0 / libm::sqrt(2000.0);
        assert!(env.max_coeff < bound, "max {} vs bound {}", env.max_coeff, bound);
        assert!(env.min_coeff > -bound, "min {} vs bound {}", env.min_coeff, bound);
    }

    #[test]
    fn single_shuffle_two_assets_gives_point_envelope() {
        let panel = noise_panel(31, 2, 100);
        let env = shuffle_null(&panel, 1, 5, true).unwrap();
        assert_eq!(env.min_coeff, env.max_coeff);
        assert_eq!(env.null_coeff_samples.as_deref(), Some(&[env.min_coeff][..]));
    }

    #[test]
    fn shuffling_destroys_perfect_correlation() {
        let x = noise_panel(41, 1, 1000).row(0).to_vec();
        let neg: Vec<f64> = x.iter().map(|v| -v).collect();
        let panel = ReturnPanel::new(
            60,
            alloc::vec!["A".to_string(), "B".to_string(), "C".to_string()],
            alloc::vec![x.clone(), x, neg],
            SectorTaxonomy::default(),
        )
        .unwrap();
        let corr = pearson_matrix(&panel).unwrap();
        // duplicates land within an ulp of ±1 (sqrt round-trip), clamped
        assert!(corr.value(0, 1) > 0.999_999);
        assert!(corr.value(0, 2) < -0.999_999);

        let env = shuffle_null(&panel, 30, 17, false).unwrap();
        assert!(env.max_coeff < 0.999 && corr.value(0, 1) > env.max_coeff);
        assert!(env.min_coeff > -0.999 && corr.value(0, 2) < env.min_coeff);
    }

    #[test]
    fn significance_counts_and_stars() {
        let env = NullEnvelope {
            shuffle_count: 1,
            min_coeff: -0.5,
            max_coeff: 0.5,
            null_coeff_samples: None,
        };
        let mk = |inside: usize, outside: usize| {
            let mut links = alloc::vec![0.0; inside];
            links.extend(core::iter::repeat(0.9).take(outside));
            annotate_significance(&links, &env).unwrap()
        };

        let all_out = mk(0, 10);
        assert_eq!((all_out.p_value, all_out.stars), (0.0, Stars::Three));
        let all_in = mk(10, 0);
        assert_eq!((all_in.p_value, all_in.stars), (1.0, Stars::None));

        // table-caption thresholds, hit exactly
        assert_eq!(mk(1, 1999).stars, Stars::Three); // p = 0.0005
        assert_eq!(mk(1, 199).stars, Stars::Two); // p = 0.005
        assert_eq!(mk(1, 19).stars, Stars::One); // p = 0.05
        assert_eq!(mk(1, 1).stars, Stars::None); // p = 0.5

        // boundary values tie the extreme null draw: not inside
        let boundary = annotate_significance(&[0.5, -0.5, 0.499], &env).unwrap();
        assert_eq!(boundary.links_within_envelope, 1);

        assert_eq!(
            annotate_significance(&[], &env).unwrap_err(),
            ValidationError::EmptyLinkList
        );
    }
}
