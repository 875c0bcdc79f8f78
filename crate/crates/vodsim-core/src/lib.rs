//! Core library for simulating the monthly cost of storing versus
//! re-transcoding video GOPs on tiered cloud storage.
//!
//! The crate is `no_std` (with `alloc`) so the model can be embedded
//! anywhere; file formats and the CLI live in the companion `vodsim` crate.
//!
//! The pipeline is: [`synthesis`] builds a reproducible repository of
//! videos with long-tail popularity, [`cluster`] partitions the frequently
//! accessed GOPs into view-similarity groups mapped onto storage tiers,
//! [`policy`] prices four placement strategies, and [`sweep`] runs the
//! FAV-percentage experiment and emits plot-ready CSV.

#![no_std]
// validation uses `!(x > 0.0)` so NaN fails the check too
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

mod error;
pub mod model;
pub mod synthesis;
pub mod cluster;
pub mod policy;
pub mod sweep;

pub use error::Error;
pub use model::{CostReport, Gop, PricingConfig, StorageTier, Video};
pub use synthesis::{Repository, SynthesisConfig};
pub use cluster::{ClusterResult, TierAssignment};
pub use policy::{FavSelection, PolicyKind, PolicySpec};
pub use sweep::{SavingsSummary, SweepOptions, SweepRow};

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;
