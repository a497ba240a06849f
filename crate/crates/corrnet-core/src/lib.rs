//! Core algorithms for correlation-filtered asset networks.
//!
//! Everything in this crate is pure computation over in-memory data: bar
//! series maintenance, log-return panels, correlation and dissimilarity
//! matrices, the three network filters (MST, PMFG, TMFG) with their
//! structural verifiers, bootstrap/shuffle validation, topology metrics and
//! synthetic market generators. File formats, timestamps-as-text and the CLI
//! live in the companion `corrnet` crate.
//!
//! The crate is `no_std` + `alloc`; float math goes through `libm` so results
//! are identical across targets.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod adf;
pub mod analysis;
pub mod bars;
pub mod corr;
pub mod graph;
pub mod returns;
pub mod rng;
pub mod summary;
pub mod synth;
pub mod taxonomy;
pub mod validation;
