//! File formats, configuration, and the pipeline driver around
//! `corrnet-core`: OHLCV and taxonomy CSV parsing, synthetic data emission,
//! GraphML/DOT export, per-run manifests, and report/table generation.

pub mod config;
pub mod export;
pub mod manifest;
pub mod ohlcv;
pub mod pipeline;
pub mod report;
pub mod synth_io;
pub mod taxonomy_io;
