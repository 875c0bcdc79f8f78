//! The FAV-percentage experiment: evaluate all four policies while the
//! pre-transcoded share of the repository is swept, and emit the results
//! as byte-deterministic CSV.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use serde::{Deserialize, Serialize};

use crate::model::{CostReport, PricingConfig};
use crate::policy::{
    evaluate_clustered, evaluate_full_pre, evaluate_full_re, evaluate_partial, FavSelection,
};
use crate::synthesis::{synthesize_repository, SynthesisConfig};
use crate::{Error, Result};

/// One policy evaluation at one sweep point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub fav_percent: f64,
    pub policy_name: String,
    pub total_usd_month: f64,
    pub storage_usd_month: f64,
    pub compute_usd_month: f64,
    pub seed: u64,
}

/// Relative cost reduction of one policy against a baseline.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SavingsSummary {
    pub baseline: String,
    pub proposed: String,
    pub fav_percent: f64,
    pub savings_percent: f64,
}

/// Knobs of [`run_sweep`] beyond the percent list.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepOptions {
    pub k: usize,
    pub log_space: bool,
    /// Number of seeds to run; seed r uses `base_seed + r`.
    pub repeats: u32,
    /// Synthesize a fresh repository per percent (seed offset by the
    /// percent index) instead of sharing one repository per seed.
    pub independent_repos: bool,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions { k: 4, log_space: true, repeats: 1, independent_repos: false }
    }
}

fn row(percent: f64, seed: u64, report: &CostReport) -> SweepRow {
    SweepRow {
        fav_percent: percent,
        policy_name: report.policy_name.clone(),
        total_usd_month: report.total_usd_month,
        storage_usd_month: report.storage_usd_month(),
        compute_usd_month: report.compute_usd_month,
        seed,
    }
}

/// Sweep the FAV percentage and evaluate all four policies at each point.
///
/// Returns `repeats * |percents| * 4` rows. With shared repositories (the
/// default) one repository is synthesized per seed and only the selection
/// cut varies, isolating the policy effect.
pub fn run_sweep(
    config: &SynthesisConfig,
    base_seed: u64,
    percents: &[f64],
    pricing: &PricingConfig,
    options: &SweepOptions,
) -> Result<Vec<SweepRow>> {
    if percents.is_empty() {
        return Err(Error::invalid("percents must be non-empty"));
    }
    for p in percents {
        if !(*p > 0.0 && *p <= 100.0) {
            return Err(Error::invalid("each percent must be in (0, 100]"));
        }
    }
    if options.repeats == 0 {
        return Err(Error::invalid("repeats must be at least 1"));
    }
    let mut rows = Vec::with_capacity(options.repeats as usize * percents.len() * 4);
    for repeat in 0..options.repeats as u64 {
        let seed = base_seed + repeat;
        let shared = if options.independent_repos {
            None
        } else {
            Some(synthesize_repository(config, seed)?)
        };
        for (index, percent) in percents.iter().enumerate() {
            let fresh;
            let repo = match &shared {
                Some(repo) => repo,
                None => {
                    fresh = synthesize_repository(config, seed + index as u64)?;
                    &fresh
                }
            };
            let fav = FavSelection::TopPercent { percent: *percent };
            rows.push(row(*percent, seed, &evaluate_full_pre(repo, pricing)?));
            rows.push(row(*percent, seed, &evaluate_full_re(repo, pricing)?));
            rows.push(row(*percent, seed, &evaluate_partial(repo, pricing, &fav)?));
            rows.push(row(
                *percent,
                seed,
                &evaluate_clustered(repo, pricing, &fav, options.k, options.log_space)?,
            ));
        }
    }
    Ok(rows)
}

/// Relative cost reduction, in percent: `100 * (1 - proposed / baseline)`.
pub fn savings(baseline_total: f64, proposed_total: f64) -> Result<f64> {
    if !(baseline_total > 0.0) {
        return Err(Error::UndefinedSavings);
    }
    if !(proposed_total >= 0.0) {
        return Err(Error::invalid("proposed total must be non-negative"));
    }
    Ok(100.0 * (1.0 - proposed_total / baseline_total))
}

/// Savings of `proposed` against `baseline` at every sweep point, from the
/// totals already in the rows. Cells are matched on (fav_percent, seed).
pub fn summarize_savings(
    rows: &[SweepRow],
    baseline: &str,
    proposed: &str,
) -> Result<Vec<SavingsSummary>> {
    let mut summaries = Vec::new();
    for base_row in rows.iter().filter(|r| r.policy_name == baseline) {
        let matching = rows.iter().find(|r| {
            r.policy_name == proposed
                && r.fav_percent == base_row.fav_percent
                && r.seed == base_row.seed
        });
        if let Some(prop_row) = matching {
            summaries.push(SavingsSummary {
                baseline: String::from(baseline),
                proposed: String::from(proposed),
                fav_percent: base_row.fav_percent,
                savings_percent: savings(base_row.total_usd_month, prop_row.total_usd_month)?,
            });
        }
    }
    if summaries.is_empty() {
        return Err(Error::invalid("no matching baseline/proposed row pairs"));
    }
    Ok(summaries)
}

/// Render sweep rows as CSV: sorted by (fav_percent, policy), six fractional
/// digits, LF line endings. Byte-deterministic for identical rows.
pub fn emit_sweep_csv(rows: &[SweepRow]) -> Result<String> {
    if rows.is_empty() {
        return Err(Error::invalid("no rows to emit"));
    }
    let mut sorted: Vec<&SweepRow> = rows.iter().collect();
    sorted.sort_by(|a, b| {
        a.fav_percent
            .total_cmp(&b.fav_percent)
            .then_with(|| a.policy_name.cmp(&b.policy_name))
            .then_with(|| a.seed.cmp(&b.seed))
    });
    let mut out =
        String::from("fav_percent,policy,total_usd_month,storage_usd_month,compute_usd_month,seed\n");
    for row in sorted {
        out.push_str(&format!(
            "{:.6},{},{:.6},{:.6},{:.6},{}\n",
            row.fav_percent,
            row.policy_name,
            row.total_usd_month,
            row.storage_usd_month,
            row.compute_usd_month,
            row.seed
        ));
    }
    Ok(out)
}
