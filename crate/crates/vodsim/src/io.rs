//! File formats: repository and pricing JSON in, cost-report JSON and
//! experiment CSV out. All writes go through a temp file plus rename so a
//! crash never leaves a half-written output.

use std::fs;
use std::io::Write;
use std::path::Path;

use anyhow::{Context, Result};
use serde::Serialize;
use vodsim_core::model::{CostReport, PricingConfig};
use vodsim_core::synthesis::Repository;

pub fn load_repository(path: &Path) -> Result<Repository> {
    let data = fs::read_to_string(path)
        .with_context(|| format!("cannot read repository file {}", path.display()))?;
    let repo: Repository = serde_json::from_str(&data)
        .with_context(|| format!("malformed repository file {}", path.display()))?;
    Ok(repo)
}

pub fn load_pricing(path: Option<&Path>) -> Result<PricingConfig> {
    let pricing = match path {
        None => PricingConfig::aws_default(),
        Some(path) => {
            let data = fs::read_to_string(path)
                .with_context(|| format!("cannot read pricing file {}", path.display()))?;
            serde_json::from_str(&data)
                .with_context(|| format!("malformed pricing file {}", path.display()))?
        }
    };
    pricing.validate().map_err(anyhow::Error::msg)?;
    Ok(pricing)
}

/// Write bytes atomically: temp file in the target directory, then rename.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let mut tmp = tempfile::NamedTempFile::new_in(dir)
        .with_context(|| format!("cannot create temp file next to {}", path.display()))?;
    tmp.write_all(bytes)?;
    tmp.persist(path)
        .with_context(|| format!("cannot write {}", path.display()))?;
    Ok(())
}

pub fn write_json_atomic<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut data = serde_json::to_string_pretty(value)?;
    data.push('\n');
    write_atomic(path, data.as_bytes())
}

/// On-disk shape of a cost report.
#[derive(Serialize)]
pub struct CostReportDoc<'a> {
    pub policy: &'a str,
    pub per_tier_storage_usd_month: Vec<TierUsd<'a>>,
    pub compute_usd_month: f64,
    pub total_usd_month: f64,
    pub pretranscoded_gops: u64,
    pub retranscoded_gops: u64,
}

#[derive(Serialize)]
pub struct TierUsd<'a> {
    pub tier: &'a str,
    pub usd: f64,
}

impl<'a> CostReportDoc<'a> {
    pub fn from_report(report: &'a CostReport) -> Self {
        CostReportDoc {
            policy: &report.policy_name,
            per_tier_storage_usd_month: report
                .per_tier_storage_usd_month
                .iter()
                .map(|(tier, usd)| TierUsd { tier, usd: *usd })
                .collect(),
            compute_usd_month: report.compute_usd_month,
            total_usd_month: report.total_usd_month,
            pretranscoded_gops: report.pretranscoded_gop_count,
            retranscoded_gops: report.retranscoded_gop_count,
        }
    }
}
