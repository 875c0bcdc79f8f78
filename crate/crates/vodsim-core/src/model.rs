//! Domain types and the two cost primitives every policy is composed of:
//! storage per GB-month and on-demand re-transcode compute per month.

use alloc::string::String;
use alloc::vec::Vec;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Megabytes per gigabyte. Binary conversion, matching the pricing model.
pub const MB_PER_GB: f64 = 1024.0;

const SECONDS_PER_HOUR: f64 = 3600.0;

/// A priced cloud storage class. Lower `access_rank` means higher access
/// bandwidth (rank 1 is the fastest, most expensive tier).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StorageTier {
    pub name: String,
    pub price_usd_per_gb_month: f64,
    pub access_rank: u32,
}

/// The storage tier catalog plus the VM rate used for on-demand transcoding.
///
/// Tiers are kept strictly sorted by descending price; construction rejects
/// anything else.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PricingConfig {
    pub tiers: Vec<StorageTier>,
    pub vm_price_usd_per_hour: f64,
}

impl PricingConfig {
    pub fn new(tiers: Vec<StorageTier>, vm_price_usd_per_hour: f64) -> Result<Self> {
        let config = PricingConfig { tiers, vm_price_usd_per_hour };
        config.validate()?;
        Ok(config)
    }

    /// The four AWS S3 classes at their published GB-month rates, with a
    /// 0.05 USD/hour VM.
    pub fn aws_default() -> Self {
        let tiers = [
            ("S3-Standard", 0.023),
            ("S3-Standard-IA", 0.0125),
            ("S3-One-Zone-IA", 0.01),
            ("S3-Glacier", 0.001),
        ];
        PricingConfig {
            tiers: tiers
                .iter()
                .enumerate()
                .map(|(i, (name, price))| StorageTier {
                    name: String::from(*name),
                    price_usd_per_gb_month: *price,
                    access_rank: i as u32 + 1,
                })
                .collect(),
            vm_price_usd_per_hour: 0.05,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.tiers.is_empty() {
            return Err(Error::invalid("pricing config must have at least one tier"));
        }
        if !(self.vm_price_usd_per_hour > 0.0) {
            return Err(Error::invalid("vm_price_usd_per_hour must be positive"));
        }
        for tier in &self.tiers {
            if !(tier.price_usd_per_gb_month > 0.0) {
                return Err(Error::invalid("tier price must be positive"));
            }
        }
        for pair in self.tiers.windows(2) {
            if pair[1].price_usd_per_gb_month >= pair[0].price_usd_per_gb_month {
                return Err(Error::invalid(
                    "tiers must be strictly sorted by descending price",
                ));
            }
        }
        for (i, a) in self.tiers.iter().enumerate() {
            for b in &self.tiers[i + 1..] {
                if a.name == b.name {
                    return Err(Error::invalid("tier names must be unique"));
                }
                if a.access_rank == b.access_rank {
                    return Err(Error::invalid("tier access ranks must be unique"));
                }
            }
        }
        Ok(())
    }

    /// The most expensive (highest access bandwidth) tier.
    pub fn top_tier(&self) -> &StorageTier {
        &self.tiers[0]
    }
}

/// The atomic unit of storage and transcoding cost.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Gop {
    pub gop_id: u64,
    pub video_id: u64,
    #[serde(rename = "index")]
    pub index_in_video: u32,
    pub size_mb: f64,
    pub transcode_time_s: f64,
    pub views_per_month: f64,
}

impl Gop {
    pub fn validate(&self) -> Result<()> {
        if !(self.size_mb > 0.0) {
            return Err(Error::invalid("gop size_mb must be positive"));
        }
        if !(self.transcode_time_s > 0.0) {
            return Err(Error::invalid("gop transcode_time_s must be positive"));
        }
        if !(self.views_per_month >= 0.0) {
            return Err(Error::invalid("gop views_per_month must be non-negative"));
        }
        Ok(())
    }

    /// Monthly cost of keeping this GOP on a tier priced per GB-month.
    pub fn storage_cost(&self, price_usd_per_gb_month: f64) -> f64 {
        self.size_mb * price_usd_per_gb_month / MB_PER_GB
    }

    /// Monthly cost of re-transcoding this GOP once per view on a VM.
    pub fn retranscode_cost(&self, vm_price_usd_per_hour: f64) -> f64 {
        self.views_per_month * self.transcode_time_s / SECONDS_PER_HOUR * vm_price_usd_per_hour
    }
}

/// An ordered list of GOPs. Views are non-increasing along the GOP index
/// (the within-video long tail).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Video {
    pub video_id: u64,
    pub gops: Vec<Gop>,
    pub base_popularity: f64,
}

impl Video {
    pub fn validate(&self) -> Result<()> {
        if self.gops.is_empty() {
            return Err(Error::invalid("video must contain at least one gop"));
        }
        for (i, gop) in self.gops.iter().enumerate() {
            gop.validate()?;
            if gop.index_in_video as usize != i {
                return Err(Error::invalid("gop indices must be 0..len-1 with no gaps"));
            }
        }
        for pair in self.gops.windows(2) {
            if pair[1].views_per_month > pair[0].views_per_month {
                return Err(Error::invalid(
                    "views_per_month must be non-increasing along the video",
                ));
            }
        }
        Ok(())
    }
}

/// Per-policy monthly bill: storage broken down by tier, plus compute.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CostReport {
    pub policy_name: String,
    pub per_tier_storage_usd_month: Vec<(String, f64)>,
    pub compute_usd_month: f64,
    pub total_usd_month: f64,
    pub pretranscoded_gop_count: u64,
    pub retranscoded_gop_count: u64,
}

impl CostReport {
    /// Sum of the per-tier storage components.
    pub fn storage_usd_month(&self) -> f64 {
        self.per_tier_storage_usd_month.iter().map(|(_, usd)| usd).sum()
    }
}

/// Monthly storage cost of a set of GOPs at a single GB-month price:
/// `sum(size_mb) * price / 1024`.
pub fn storage_cost_monthly<'a, I>(gops: I, price_usd_per_gb_month: f64) -> Result<f64>
where
    I: IntoIterator<Item = &'a Gop>,
{
    if !(price_usd_per_gb_month > 0.0) {
        return Err(Error::invalid("storage price must be positive"));
    }
    let total_mb: f64 = gops.into_iter().map(|g| g.size_mb).sum();
    Ok(total_mb * price_usd_per_gb_month / MB_PER_GB)
}

/// Monthly compute cost of re-transcoding every GOP once per view:
/// `sum(views * transcode_time_s) / 3600 * vm_price`.
pub fn retranscode_cost_monthly<'a, I>(gops: I, vm_price_usd_per_hour: f64) -> Result<f64>
where
    I: IntoIterator<Item = &'a Gop>,
{
    if !(vm_price_usd_per_hour > 0.0) {
        return Err(Error::invalid("vm price must be positive"));
    }
    Ok(gops
        .into_iter()
        .map(|g| g.retranscode_cost(vm_price_usd_per_hour))
        .sum())
}
