//! Synthetic-data emission: turns a generator spec (TOML) into the exact
//! per-symbol OHLCV CSVs and taxonomy CSV the ingest pipeline consumes.
//!
//! Generated returns are unit-scale, so raw cumulative sums would push
//! `exp()` past the f64 range on long series. Emitted log-prices are the
//! cumulative returns times `return_scale` (default 0.01); Pearson
//! correlation is invariant under positive scaling, so the pipeline recovers
//! the generator's correlation structure unchanged.

use std::fs;
use std::path::{Path, PathBuf};

use corrnet_core::bars::{BarSeries, OhlcvBar};
use corrnet_core::synth::{
    gen_async_panel, gen_factor_panel, AsyncModelSpec, BlockSpec, FactorModelSpec, SynthError,
};
use corrnet_core::taxonomy::SectorTaxonomy;
use serde::Deserialize;
use thiserror::Error;

use crate::ohlcv::{write_ohlcv_file, OhlcvError};
use crate::taxonomy_io::{write_taxonomy_file, TaxonomyIoError};

#[derive(Debug, Error)]
pub enum SynthIoError {
    #[error("read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("parse {path}: {source}")]
    Toml { path: PathBuf, source: toml::de::Error },
    #[error(transparent)]
    Spec(#[from] SynthError),
    #[error("price_scale {0} must be strictly positive and finite")]
    BadPriceScale(f64),
    #[error("return_scale {0} must be strictly positive and finite")]
    BadReturnScale(f64),
    #[error(transparent)]
    Ohlcv(#[from] OhlcvError),
    #[error(transparent)]
    Taxonomy(#[from] TaxonomyIoError),
}

fn default_price_scale() -> f64 {
    100.0
}

fn default_return_scale() -> f64 {
    0.01
}

fn default_factor_horizon() -> u32 {
    86_400
}

#[derive(Clone, Debug, Deserialize)]
pub struct BlockEntry {
    pub members: usize,
    pub loading: f64,
}

/// Spec file for the `synth` verb. `model = "factor"` or `model = "async"`
/// selects the generator; the remaining keys sit at the top level.
#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "model", rename_all = "snake_case")]
pub enum SynthSpecFile {
    Factor {
        n_assets: usize,
        blocks: Vec<BlockEntry>,
        idiosyncratic_sigma: f64,
        t_len: usize,
        seed: u64,
        /// bar spacing of the emitted CSVs
        #[serde(default = "default_factor_horizon")]
        horizon_s: u32,
        #[serde(default = "default_price_scale")]
        price_scale: f64,
        #[serde(default = "default_return_scale")]
        return_scale: f64,
    },
    Async {
        n_assets: usize,
        latent_corr: f64,
        update_probability_per_tick: f64,
        base_tick_s: u32,
        t_len_ticks: usize,
        seed: u64,
        #[serde(default = "default_price_scale")]
        price_scale: f64,
        #[serde(default = "default_return_scale")]
        return_scale: f64,
    },
}

impl SynthSpecFile {
    /// Bar spacing of the CSVs this spec emits; pipeline configs over the
    /// output should use it as `base_horizon_s`.
    pub fn base_horizon_s(&self) -> u32 {
        match self {
            SynthSpecFile::Factor { horizon_s, .. } => *horizon_s,
            SynthSpecFile::Async { base_tick_s, .. } => *base_tick_s,
        }
    }

    fn scales(&self) -> (f64, f64) {
        match self {
            SynthSpecFile::Factor { price_scale, return_scale, .. }
            | SynthSpecFile::Async { price_scale, return_scale, .. } => (*price_scale, *return_scale),
        }
    }

    fn validate_scales(&self) -> Result<(), SynthIoError> {
        let (price_scale, return_scale) = self.scales();
        if !(price_scale.is_finite() && price_scale > 0.0) {
            return Err(SynthIoError::BadPriceScale(price_scale));
        }
        if !(return_scale.is_finite() && return_scale > 0.0) {
            return Err(SynthIoError::BadReturnScale(return_scale));
        }
        Ok(())
    }
}

pub fn load_synth_spec(path: &Path) -> Result<SynthSpecFile, SynthIoError> {
    let text = fs::read_to_string(path)
        .map_err(|source| SynthIoError::Io { path: path.to_path_buf(), source })?;
    toml::from_str(&text).map_err(|source| SynthIoError::Toml { path: path.to_path_buf(), source })
}

#[derive(Clone, Debug)]
pub struct SynthOutput {
    pub data_dir: PathBuf,
    pub taxonomy_path: PathBuf,
    pub csv_paths: Vec<PathBuf>,
    pub symbols: Vec<String>,
    pub base_horizon_s: u32,
}

/// Bars from a log-price path (index 0 = initial price). Every bar spans one
/// grid step: open = previous close, high/low bracket the two.
fn bars_from_log_path(
    symbol: &str,
    horizon_s: u32,
    log_path: &[f64],
    price_scale: f64,
    return_scale: f64,
) -> BarSeries {
    let price = |lp: f64| price_scale * (return_scale * lp).exp();
    let mut bars = Vec::with_capacity(log_path.len());
    let mut prev_close = price(log_path[0]);
    for (k, &lp) in log_path.iter().enumerate() {
        let close = price(lp);
        let open = if k == 0 { close } else { prev_close };
        bars.push(OhlcvBar {
            timestamp: k as i64 * i64::from(horizon_s),
            open,
            high: open.max(close),
            low: open.min(close),
            close,
            volume: 1.0,
        });
        prev_close = close;
    }
    BarSeries::new(symbol.to_string(), horizon_s, bars)
        .expect("grid-aligned synthetic bars are always valid")
}

fn cumulative(returns: &[f64]) -> Vec<f64> {
    let mut path = Vec::with_capacity(returns.len() + 1);
    let mut acc = 0.0;
    path.push(acc);
    for &r in returns {
        acc += r;
        path.push(acc);
    }
    path
}

/// Writes `<SYMBOL>.csv` per asset plus `taxonomy.csv` into `out_dir`
/// (created if missing) and reports what was written.
pub fn emit_synth_csvs(spec: &SynthSpecFile, out_dir: &Path) -> Result<SynthOutput, SynthIoError> {
    spec.validate_scales()?;
    fs::create_dir_all(out_dir)
        .map_err(|source| SynthIoError::Io { path: out_dir.to_path_buf(), source })?;
    let (price_scale, return_scale) = spec.scales();

    let (symbols, log_paths, taxonomy, horizon_s) = match spec {
        SynthSpecFile::Factor { n_assets, blocks, idiosyncratic_sigma, t_len, seed, horizon_s, .. } => {
            let model = FactorModelSpec {
                n_assets: *n_assets,
                blocks: blocks
                    .iter()
                    .map(|b| BlockSpec { members: b.members, loading: b.loading })
                    .collect(),
                idiosyncratic_sigma: *idiosyncratic_sigma,
                t_len: *t_len,
                seed: *seed,
            };
            let generated = gen_factor_panel(&model)?;
            let panel = &generated.panel;
            let log_paths: Vec<Vec<f64>> =
                (0..panel.n_assets()).map(|i| cumulative(panel.row(i))).collect();
            (panel.symbols().to_vec(), log_paths, panel.taxonomy().clone(), *horizon_s)
        }
        SynthSpecFile::Async {
            n_assets,
            latent_corr,
            update_probability_per_tick,
            base_tick_s,
            t_len_ticks,
            seed,
            ..
        } => {
            let model = AsyncModelSpec {
                n_assets: *n_assets,
                latent_corr: *latent_corr,
                update_probability_per_tick: *update_probability_per_tick,
                base_tick_s: *base_tick_s,
                t_len_ticks: *t_len_ticks,
                seed: *seed,
            };
            let generated = gen_async_panel(&model, &[*base_tick_s])?;
            let symbols: Vec<String> = (0..*n_assets).map(|i| format!("A{i:02}")).collect();
            // the async model has no block structure; one shared sector
            let mut taxonomy = SectorTaxonomy::default();
            for symbol in &symbols {
                taxonomy.assign(symbol, "latent");
            }
            (symbols, generated.observed_log_prices, taxonomy, *base_tick_s)
        }
    };

    let mut csv_paths = Vec::with_capacity(symbols.len());
    for (symbol, log_path) in symbols.iter().zip(&log_paths) {
        let series = bars_from_log_path(symbol, horizon_s, log_path, price_scale, return_scale);
        let path = out_dir.join(format!("{symbol}.csv"));
        write_ohlcv_file(&path, &series)?;
        csv_paths.push(path);
    }
    let taxonomy_path = out_dir.join("taxonomy.csv");
    write_taxonomy_file(&taxonomy_path, &taxonomy)?;

    Ok(SynthOutput {
        data_dir: out_dir.to_path_buf(),
        taxonomy_path,
        csv_paths,
        symbols,
        base_horizon_s: horizon_s,
    })
}
