//! Synthetic return generators with known ground truth.
//!
//! Two models: a block factor model whose intra-block correlation is known in
//! closed form, and a stale-price model where a synchronous latent process is
//! observed through per-tick Bernoulli updates. The second one reproduces the
//! horizon dependence of measured correlations: the finer the sampling, the
//! more staleness dilutes each pair.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::returns::ReturnPanel;
use crate::rng::{standard_normal, uniform, Streams};
use crate::taxonomy::SectorTaxonomy;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SynthError {
    InvalidSpec { reason: &'static str },
    NonDivisibleHorizon { horizon_s: u32, base_tick_s: u32 },
}

impl fmt::Display for SynthError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SynthError::InvalidSpec { reason } => write!(f, "invalid model spec: {reason}"),
            SynthError::NonDivisibleHorizon { horizon_s, base_tick_s } => {
                write!(f, "horizon {horizon_s}s is not a multiple of the {base_tick_s}s tick")
            }
        }
    }
}

impl core::error::Error for SynthError {}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BlockSpec {
    pub members: usize,
    /// common-factor loading β in [0, 1]
    pub loading: f64,
}

/// Block factor model: asset i in block b returns β_b·f_b(t) + σ·ε_i(t) with
/// independent unit-variance factors and noise.
#[derive(Clone, Debug, PartialEq)]
pub struct FactorModelSpec {
    pub n_assets: usize,
    pub blocks: Vec<BlockSpec>,
    pub idiosyncratic_sigma: f64,
    pub t_len: usize,
    pub seed: u64,
}

impl FactorModelSpec {
    fn validate(&self) -> Result<(), SynthError> {
        let fail = |reason| Err(SynthError::InvalidSpec { reason });
        if self.blocks.is_empty() {
            return fail("no blocks");
        }
        if self.blocks.iter().any(|b| b.members == 0) {
            return fail("empty block");
        }
        if self.blocks.iter().map(|b| b.members).sum::<usize>() != self.n_assets {
            return fail("block members must sum to n_assets");
        }
        if self.blocks.iter().any(|b| !(0.0..=1.0).contains(&b.loading)) {
            return fail("loading outside [0, 1]");
        }
        if !(self.idiosyncratic_sigma > 0.0) {
            return fail("sigma must be positive");
        }
        if self.t_len < 3 {
            return fail("too few observations for a correlation");
        }
        Ok(())
    }
}

/// Generated panel plus the ground truth tests compare against.
#[derive(Clone, Debug, PartialEq)]
pub struct FactorPanel {
    pub panel: ReturnPanel,
    /// β²/(β²+σ²) per block
    pub theoretical_intra_corr: Vec<f64>,
    /// block index of each asset
    pub block_of: Vec<usize>,
}

impl FactorPanel {
    /// All unordered same-block index pairs.
    pub fn intra_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.block_of.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                if self.block_of[i] == self.block_of[j] {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

/// Block factors draw from streams 0..blocks, asset noise from stream
/// blocks + i, so generation is reproducible and order-independent.
pub fn gen_factor_panel(spec: &FactorModelSpec) -> Result<FactorPanel, SynthError> {
    spec.validate()?;
    let streams = Streams::new(spec.seed);
    let n_blocks = spec.blocks.len();
    let factors: Vec<Vec<f64>> = (0..n_blocks)
        .map(|b| {
            let mut rng = streams.stream(b as u64);
            (0..spec.t_len).map(|_| standard_normal(&mut rng)).collect()
        })
        .collect();

    let sigma = spec.idiosyncratic_sigma;
    let mut rows = Vec::with_capacity(spec.n_assets);
    let mut block_of = Vec::with_capacity(spec.n_assets);
    let mut taxonomy = SectorTaxonomy::default();
    let mut symbols = Vec::with_capacity(spec.n_assets);
    let mut asset = 0usize;
    for (b, block) in spec.blocks.iter().enumerate() {
        for _ in 0..block.members {
            let mut rng = streams.stream((n_blocks + asset) as u64);
            let row: Vec<f64> = factors[b]
                .iter()
                .map(|f| block.loading * f + sigma * standard_normal(&mut rng))
                .collect();
            rows.push(row);
            block_of.push(b);
            let symbol = alloc::format!("A{asset:02}");
            taxonomy.assign(&symbol, &alloc::format!("block{b}"));
            symbols.push(symbol);
            asset += 1;
        }
    }

    // the horizon label is nominal: the model generates returns directly
    let panel = ReturnPanel::new(86_400, symbols, rows, taxonomy)
        .expect("generated rows are finite and rectangular");
    let theoretical_intra_corr = spec
        .blocks
        .iter()
        .map(|b| {
            let b2 = b.loading * b.loading;
            b2 / (b2 + sigma * sigma)
        })
        .collect();
    Ok(FactorPanel { panel, theoretical_intra_corr, block_of })
}

/// Stale-price model: a synchronous latent log-price path with one-factor
/// cross-correlation, observed through per-tick Bernoulli updates.
#[derive(Clone, Debug, PartialEq)]
pub struct AsyncModelSpec {
    pub n_assets: usize,
    /// pairwise correlation of latent per-tick returns, in [0, 1]
    pub latent_corr: f64,
    pub update_probability_per_tick: f64,
    pub base_tick_s: u32,
    pub t_len_ticks: usize,
    pub seed: u64,
}

impl AsyncModelSpec {
    fn validate(&self) -> Result<(), SynthError> {
        let fail = |reason| Err(SynthError::InvalidSpec { reason });
        if self.n_assets < 2 {
            return fail("need at least two assets");
        }
        if !(0.0..=1.0).contains(&self.latent_corr) {
            return fail("latent correlation outside [0, 1]");
        }
        let p = self.update_probability_per_tick;
        if !(p > 0.0 && p <= 1.0) {
            return fail("update probability outside (0, 1]");
        }
        if self.base_tick_s == 0 {
            return fail("zero base tick");
        }
        if self.t_len_ticks < 2 {
            return fail("too few ticks");
        }
        Ok(())
    }
}

/// Observed-price panels per horizon, plus the raw paths for file emission.
#[derive(Clone, Debug, PartialEq)]
pub struct AsyncPanels {
    /// (horizon seconds, panel of binned observed log-returns), ascending
    pub panels: Vec<(u32, ReturnPanel)>,
    /// observed log-price per asset; index 0 is the initial price, index t
    /// the price after tick t
    pub observed_log_prices: Vec<Vec<f64>>,
    pub base_tick_s: u32,
}

/// Simulates the latent path once and bins the observed prices at every
/// requested horizon. The latent path uses streams 0..=n_assets and the
/// update coins streams n_assets+1.., so two runs differing only in
/// update probability share the same latent path.
pub fn gen_async_panel(
    spec: &AsyncModelSpec,
    horizons_s: &[u32],
) -> Result<AsyncPanels, SynthError> {
    spec.validate()?;
    let n = spec.n_assets;
    let t_ticks = spec.t_len_ticks;
    let mut ticks_per_bin = Vec::with_capacity(horizons_s.len());
    let mut sorted_horizons: Vec<u32> = horizons_s.to_vec();
    sorted_horizons.sort_unstable();
    sorted_horizons.dedup();
    for &h in &sorted_horizons {
        if h == 0 || h % spec.base_tick_s != 0 {
            return Err(SynthError::NonDivisibleHorizon {
                horizon_s: h,
                base_tick_s: spec.base_tick_s,
            });
        }
        let k = (h / spec.base_tick_s) as usize;
        if t_ticks / k < 2 {
            return Err(SynthError::InvalidSpec {
                reason: "horizon leaves fewer than two bins",
            });
        }
        ticks_per_bin.push(k);
    }

    let streams = Streams::new(spec.seed);
    let mut factor_rng = streams.stream(0);
    let mut noise_rngs: Vec<_> = (0..n).map(|i| streams.stream(1 + i as u64)).collect();
    let mut coin_rngs: Vec<_> =
        (0..n).map(|i| streams.stream(1 + (n + i) as u64)).collect();

    let w_common = libm::sqrt(spec.latent_corr);
    let w_own = libm::sqrt(1.0 - spec.latent_corr);
    let mut latent = alloc::vec![0.0f64; n];
    let mut observed: Vec<Vec<f64>> = (0..n)
        .map(|_| {
            let mut path = Vec::with_capacity(t_ticks + 1);
            path.push(0.0);
            path
        })
        .collect();
    for _ in 0..t_ticks {
        let m = standard_normal(&mut factor_rng);
        for i in 0..n {
            latent[i] += w_common * m + w_own * standard_normal(&mut noise_rngs[i]);
            let updated = uniform(&mut coin_rngs[i]) < spec.update_probability_per_tick;
            let prev = *observed[i].last().expect("path starts non-empty");
            observed[i].push(if updated { latent[i] } else { prev });
        }
    }

    let symbols: Vec<String> = (0..n).map(|i| alloc::format!("A{i:02}")).collect();
    let mut panels = Vec::with_capacity(sorted_horizons.len());
    for (&h, &k) in sorted_horizons.iter().zip(&ticks_per_bin) {
        let bins = t_ticks / k;
        let rows: Vec<Vec<f64>> = observed
            .iter()
            .map(|path| (1..=bins).map(|m| path[m * k] - path[(m - 1) * k]).collect())
            .collect();
        let panel = ReturnPanel::new(h, symbols.clone(), rows, SectorTaxonomy::default())
            .expect("binned paths are finite and rectangular");
        panels.push((h, panel));
    }
    Ok(AsyncPanels { panels, observed_log_prices: observed, base_tick_s: spec.base_tick_s })
}
