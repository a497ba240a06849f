//! Randomized structural invariants of the MST/PMFG/TMFG filters and the
//! planarity/chordality certificates they rely on.

use corrnet_core::corr::{pearson_matrix, to_dissimilarity, DissimilarityKind};
use corrnet_core::graph::{
    build_mst, build_pmfg, build_tmfg, build_tmfg_traced, check_chordality, check_planarity,
    enumerate_cliques, is_planar, ChordalityCheck, FilteredGraph, PlanarityCheck,
};
use corrnet_core::graph::chordal::verify_elimination_order;
use corrnet_core::graph::planarity::verify_kuratowski_witness;
use corrnet_core::graph::tmfg::trace_is_consistent;
use corrnet_core::returns::ReturnPanel;
use corrnet_core::rng::{shuffle, standard_normal, uniform, Streams};
use corrnet_core::taxonomy::SectorTaxonomy;
use proptest::prelude::*;

fn noise_panel(seed: u64, n: usize, t_len: usize) -> ReturnPanel {
    let streams = Streams::new(seed);
    let rows: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            let mut rng = streams.stream(i as u64);
            (0..t_len).map(|_| standard_normal(&mut rng)).collect()
        })
        .collect();
    let symbols = (0..n).map(|i| format!("S{i:02}")).collect();
    ReturnPanel::new(60, symbols, rows, SectorTaxonomy::default()).unwrap()
}

/// One strong common factor keeps every sample correlation positive.
fn factor_panel(seed: u64, n: usize, t_len: usize) -> ReturnPanel {
    let streams = Streams::new(seed);
    let mut frng = streams.stream(1_000);
    let factor: Vec<f64> = (0..t_len).map(|_| standard_normal(&mut frng)).collect();
    let w = 0.6f64;
    let rows: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            let mut rng = streams.stream(i as u64);
            factor
                .iter()
                .map(|m| w.sqrt() * m + (1.0 - w).sqrt() * standard_normal(&mut rng))
                .collect()
        })
        .collect();
    let symbols = (0..n).map(|i| format!("S{i:02}")).collect();
    ReturnPanel::new(60, symbols, rows, SectorTaxonomy::default()).unwrap()
}

fn matrices(
    panel: &ReturnPanel,
    kind: DissimilarityKind,
) -> (corrnet_core::corr::DissimilarityMatrix, corrnet_core::corr::CorrelationMatrix) {
    let corr = pearson_matrix(panel).unwrap();
    (to_dissimilarity(&corr, kind), corr)
}

fn sorted_pairs(g: &FilteredGraph) -> Vec<(usize, usize)> {
    let mut pairs = g.index_pairs();
    pairs.sort_unstable();
    pairs
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn mst_is_always_inside_pmfg(seed in 0u64..1_000_000, n in 5usize..=12) {
        let (d, c) = matrices(&noise_panel(seed, n, 48), DissimilarityKind::Power);
        let mst = build_mst(&d, &c).unwrap();
        let pmfg = build_pmfg(&d, &c).unwrap();
        for e in mst.edges() {
            prop_assert!(pmfg.contains_edge(e.i, e.j), "missing ({}, {})", e.i, e.j);
        }
    }

    #[test]
    fn tmfg_is_a_planar_chordal_triangulation(seed in 0u64..1_000_000, n in 4usize..=14) {
        let (d, c) = matrices(&noise_panel(seed, n, 48), DissimilarityKind::Power);
        let (g, trace) = build_tmfg_traced(&d, &c).unwrap();
        prop_assert_eq!(g.edge_count(), 3 * n - 6);
        prop_assert!(trace_is_consistent(n, &trace));

        let pairs = g.index_pairs();
        match check_planarity(n, &pairs) {
            PlanarityCheck::Planar(emb) => {
                prop_assert!(emb.euler_formula_holds());
                prop_assert_eq!(emb.face_count(), 2 * n - 4);
            }
            PlanarityCheck::NonPlanar(_) => prop_assert!(false, "TMFG must be planar"),
        }
        match check_chordality(n, &pairs) {
            ChordalityCheck::Chordal { elimination_order } => {
                prop_assert!(verify_elimination_order(n, &pairs, &elimination_order));
            }
            ChordalityCheck::NonChordal { .. } => prop_assert!(false, "TMFG must be chordal"),
        }
        prop_assert_eq!(enumerate_cliques(&g).four_count(), n - 3);
    }

    #[test]
    fn pmfg_fills_its_planar_budget(seed in 0u64..1_000_000, n in 3usize..=12) {
        let (d, c) = matrices(&noise_panel(seed, n, 48), DissimilarityKind::Power);
        let g = build_pmfg(&d, &c).unwrap();
        prop_assert_eq!(g.edge_count(), 3 * n - 6);
        prop_assert!(is_planar(n, &g.index_pairs()));
    }

    #[test]
    fn filters_are_deterministic(seed in 0u64..1_000_000, n in 5usize..=10) {
        let (d, c) = matrices(&noise_panel(seed, n, 48), DissimilarityKind::Euclidean);
        prop_assert_eq!(build_mst(&d, &c).unwrap(), build_mst(&d, &c).unwrap());
        prop_assert_eq!(build_pmfg(&d, &c).unwrap(), build_pmfg(&d, &c).unwrap());
        prop_assert_eq!(build_tmfg(&d, &c).unwrap(), build_tmfg(&d, &c).unwrap());
    }

    #[test]
    fn relabeling_only_renames_nodes(
        seed in 0u64..1_000_000,
        n in 5usize..=10,
        perm_seed in 0u64..1_000,
    ) {
        let panel = noise_panel(seed, n, 48);
        let mut perm: Vec<usize> = (0..n).collect();
        shuffle(&mut Streams::new(perm_seed).stream(0), &mut perm);
        let mut inverse = vec![0usize; n];
        for (new_idx, &old_idx) in perm.iter().enumerate() {
            inverse[old_idx] = new_idx;
        }
        let permuted = ReturnPanel::new(
            panel.horizon_s(),
            perm.iter().map(|&i| panel.symbols()[i].clone()).collect(),
            perm.iter().map(|&i| panel.row(i).to_vec()).collect(),
            SectorTaxonomy::default(),
        )
        .unwrap();

        let (d1, c1) = matrices(&panel, DissimilarityKind::Power);
        let (d2, c2) = matrices(&permuted, DissimilarityKind::Power);
        type Builder = fn(
            &corrnet_core::corr::DissimilarityMatrix,
            &corrnet_core::corr::CorrelationMatrix,
        ) -> Result<FilteredGraph, corrnet_core::graph::GraphError>;
        for build in [build_mst as Builder, build_pmfg, build_tmfg] {
            let original = build(&d1, &c1).unwrap();
            let relabeled = build(&d2, &c2).unwrap();
            let mut mapped: Vec<(usize, usize)> = original
                .index_pairs()
                .iter()
                .map(|&(i, j)| {
                    let (a, b) = (inverse[i], inverse[j]);
                    (a.min(b), a.max(b))
                })
                .collect();
            mapped.sort_unstable();
            prop_assert_eq!(mapped, sorted_pairs(&relabeled));
        }
    }

    /// MST and PMFG consume only the *ranking* of edge weights, so any
    /// strictly decreasing correlation-to-dissimilarity map picks the same
    /// edges; the two shipped kinds agree whenever all correlations are
    /// positive (where both are strictly decreasing). TMFG is exempt: it
    /// minimizes three-edge sums, and sum order is not rank-invariant.
    #[test]
    fn positive_correlations_make_the_kinds_agree(seed in 0u64..1_000_000, n in 5usize..=10) {
        let panel = factor_panel(seed, n, 64);
        let corr = pearson_matrix(&panel).unwrap();
        prop_assume!(corr.upper_triangle().all(|(_, _, rho)| rho > 0.0));
        let de = to_dissimilarity(&corr, DissimilarityKind::Euclidean);
        let dp = to_dissimilarity(&corr, DissimilarityKind::Power);
        prop_assert_eq!(
            sorted_pairs(&build_mst(&de, &corr).unwrap()),
            sorted_pairs(&build_mst(&dp, &corr).unwrap())
        );
        prop_assert_eq!(
            sorted_pairs(&build_pmfg(&de, &corr).unwrap()),
            sorted_pairs(&build_pmfg(&dp, &corr).unwrap())
        );
    }

    /// Every verdict ships a certificate that an independent checker accepts:
    /// an Euler-consistent embedding, or a subdivision witness.
    #[test]
    fn planarity_verdicts_carry_valid_certificates(
        seed in 0u64..1_000_000,
        n in 5usize..=11,
        density in 0.15f64..0.9,
    ) {
        let mut rng = Streams::new(seed).stream(7);
        let mut edges = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                if uniform(&mut rng) < density {
                    edges.push((i, j));
                }
            }
        }
        match check_planarity(n, &edges) {
            PlanarityCheck::Planar(emb) => {
                prop_assert!(is_planar(n, &edges));
                prop_assert!(emb.euler_formula_holds());
            }
            PlanarityCheck::NonPlanar(witness) => {
                prop_assert!(!is_planar(n, &edges));
                prop_assert!(verify_kuratowski_witness(&witness, n, &edges));
            }
        }
    }
}
