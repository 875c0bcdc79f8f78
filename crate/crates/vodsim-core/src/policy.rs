//! The four storage/transcoding strategies evaluated over a repository:
//! store everything, re-transcode everything, store the frequently
//! accessed GOPs on the top tier (the prior-work baseline), or cluster the
//! frequently accessed GOPs across the tier hierarchy.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use libm::ceil;
use serde::{Deserialize, Serialize};

use crate::cluster::{cluster_views, map_clusters_to_tiers, ClusterResult, TierAssignment};
use crate::model::{
    retranscode_cost_monthly, storage_cost_monthly, CostReport, Gop, PricingConfig,
};
use crate::synthesis::Repository;
use crate::{Error, Result};

pub const POLICY_FULL_PRE: &str = "full_pre";
pub const POLICY_FULL_RE: &str = "full_re";
pub const POLICY_PARTIAL: &str = "partial";
pub const POLICY_CLUSTERED: &str = "clustered";

/// How the frequently accessed (pre-transcoded) GOP set is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum FavSelection {
    /// The top `percent` of GOPs by views, percent in (0, 100].
    TopPercent { percent: f64 },
    /// Every GOP whose monthly re-transcode bill strictly exceeds its
    /// monthly top-tier storage bill.
    BreakEven,
}

impl FavSelection {
    pub fn validate(&self) -> Result<()> {
        if let FavSelection::TopPercent { percent } = self {
            if !(*percent > 0.0 && *percent <= 100.0) {
                return Err(Error::invalid("fav percent must be in (0, 100]"));
            }
        }
        Ok(())
    }
}

/// Which policy to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PolicyKind {
    FullPre,
    FullRe,
    Partial,
    Clustered,
}

impl PolicyKind {
    pub fn name(&self) -> &'static str {
        match self {
            PolicyKind::FullPre => POLICY_FULL_PRE,
            PolicyKind::FullRe => POLICY_FULL_RE,
            PolicyKind::Partial => POLICY_PARTIAL,
            PolicyKind::Clustered => POLICY_CLUSTERED,
        }
    }
}

impl core::str::FromStr for PolicyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            POLICY_FULL_PRE => Ok(PolicyKind::FullPre),
            POLICY_FULL_RE => Ok(PolicyKind::FullRe),
            POLICY_PARTIAL => Ok(PolicyKind::Partial),
            POLICY_CLUSTERED => Ok(PolicyKind::Clustered),
            other => Err(Error::invalid(alloc::format!("unknown policy: {other}"))),
        }
    }
}

/// A fully specified policy evaluation request.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolicySpec {
    pub kind: PolicyKind,
    pub fav: FavSelection,
    pub k: usize,
    pub log_space: bool,
}

impl Default for PolicySpec {
    fn default() -> Self {
        PolicySpec {
            kind: PolicyKind::Clustered,
            fav: FavSelection::TopPercent { percent: 30.0 },
            k: 4,
            log_space: true,
        }
    }
}

/// Everything evaluate_clustered computed on the way to its report, for
/// callers that want the placement itself and not just the bill.
#[derive(Debug, Clone, PartialEq)]
pub struct ClusteredEvaluation {
    pub report: CostReport,
    pub favs: BTreeSet<u64>,
    pub clusters: Option<ClusterResult>,
    pub assignment: Option<TierAssignment>,
}

fn require_non_empty(repo: &Repository) -> Result<()> {
    if repo.videos.is_empty() {
        return Err(Error::invalid("repository is empty"));
    }
    Ok(())
}

/// Per-tier storage list covering every tier in the catalog, zeros where a
/// tier holds nothing.
fn tier_breakdown(pricing: &PricingConfig, filled: &[(usize, f64)]) -> Vec<(String, f64)> {
    let mut breakdown: Vec<(String, f64)> = pricing
        .tiers
        .iter()
        .map(|t| (t.name.clone(), 0.0))
        .collect();
    for (tier_index, usd) in filled {
        breakdown[*tier_index].1 += usd;
    }
    breakdown
}

/// The pre-transcoded GOP set under the given selection rule.
///
/// Top-percent takes the `ceil(N * percent / 100)` most viewed GOPs, ties
/// broken by ascending gop id. Break-even keeps a GOP only when storing it
/// on the top tier is strictly cheaper than re-transcoding it per view.
pub fn select_favs(
    repo: &Repository,
    pricing: &PricingConfig,
    fav: &FavSelection,
) -> Result<BTreeSet<u64>> {
    require_non_empty(repo)?;
    fav.validate()?;
    pricing.validate()?;
    match fav {
        FavSelection::TopPercent { percent } => {
            let n = repo.gop_count();
            let take = ceil(n as f64 * percent / 100.0) as usize;
            let mut by_views: Vec<(f64, u64)> = repo
                .all_gops()
                .map(|g| (g.views_per_month, g.gop_id))
                .collect();
            by_views.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)));
            Ok(by_views.into_iter().take(take).map(|(_, id)| id).collect())
        }
        FavSelection::BreakEven => {
            let top_price = pricing.top_tier().price_usd_per_gb_month;
            Ok(repo
                .all_gops()
                .filter(|g| {
                    g.retranscode_cost(pricing.vm_price_usd_per_hour) > g.storage_cost(top_price)
                })
                .map(|g| g.gop_id)
                .collect())
        }
    }
}

/// Store every GOP on the highest-priced tier; nothing is re-transcoded.
pub fn evaluate_full_pre(repo: &Repository, pricing: &PricingConfig) -> Result<CostReport> {
    require_non_empty(repo)?;
    pricing.validate()?;
    let storage = storage_cost_monthly(repo.all_gops(), pricing.top_tier().price_usd_per_gb_month)?;
    Ok(CostReport {
        policy_name: String::from(POLICY_FULL_PRE),
        per_tier_storage_usd_month: tier_breakdown(pricing, &[(0, storage)]),
        compute_usd_month: 0.0,
        total_usd_month: storage,
        pretranscoded_gop_count: repo.gop_count(),
        retranscoded_gop_count: 0,
    })
}

/// Store nothing; every GOP is re-transcoded once per view.
pub fn evaluate_full_re(repo: &Repository, pricing: &PricingConfig) -> Result<CostReport> {
    require_non_empty(repo)?;
    pricing.validate()?;
    let compute = retranscode_cost_monthly(repo.all_gops(), pricing.vm_price_usd_per_hour)?;
    Ok(CostReport {
        policy_name: String::from(POLICY_FULL_RE),
        per_tier_storage_usd_month: tier_breakdown(pricing, &[]),
        compute_usd_month: compute,
        total_usd_month: compute,
        pretranscoded_gop_count: 0,
        retranscoded_gop_count: repo.gop_count(),
    })
}

/// The prior-work baseline: FAV GOPs on the top tier, the rest re-transcoded.
pub fn evaluate_partial(
    repo: &Repository,
    pricing: &PricingConfig,
    fav: &FavSelection,
) -> Result<CostReport> {
    let favs = select_favs(repo, pricing, fav)?;
    let stored: Vec<&Gop> = repo.all_gops().filter(|g| favs.contains(&g.gop_id)).collect();
    let rest: Vec<&Gop> = repo.all_gops().filter(|g| !favs.contains(&g.gop_id)).collect();
    let storage =
        storage_cost_monthly(stored.iter().copied(), pricing.top_tier().price_usd_per_gb_month)?;
    let compute = retranscode_cost_monthly(rest.iter().copied(), pricing.vm_price_usd_per_hour)?;
    Ok(CostReport {
        policy_name: String::from(POLICY_PARTIAL),
        per_tier_storage_usd_month: tier_breakdown(pricing, &[(0, storage)]),
        compute_usd_month: compute,
        total_usd_month: storage + compute,
        pretranscoded_gop_count: stored.len() as u64,
        retranscoded_gop_count: rest.len() as u64,
    })
}

/// The clustering policy: FAV GOPs are k-means clustered on views and each
/// cluster is billed at its mapped tier; the rest are re-transcoded.
pub fn evaluate_clustered(
    repo: &Repository,
    pricing: &PricingConfig,
    fav: &FavSelection,
    k: usize,
    log_space: bool,
) -> Result<CostReport> {
    evaluate_clustered_detailed(repo, pricing, fav, k, log_space).map(|e| e.report)
}

/// [`evaluate_clustered`] plus the FAV set, clustering and tier map.
pub fn evaluate_clustered_detailed(
    repo: &Repository,
    pricing: &PricingConfig,
    fav: &FavSelection,
    k: usize,
    log_space: bool,
) -> Result<ClusteredEvaluation> {
    if k > pricing.tiers.len() {
        return Err(Error::Capacity { clusters: k, tiers: pricing.tiers.len() });
    }
    let favs = select_favs(repo, pricing, fav)?;
    let stored: Vec<&Gop> = repo.all_gops().filter(|g| favs.contains(&g.gop_id)).collect();
    let rest: Vec<&Gop> = repo.all_gops().filter(|g| !favs.contains(&g.gop_id)).collect();
    let compute = retranscode_cost_monthly(rest.iter().copied(), pricing.vm_price_usd_per_hour)?;

    let (clusters, assignment, filled) = if stored.is_empty() {
        (None, None, Vec::new())
    } else {
        let clusters = cluster_views(stored.iter().copied(), k, log_space)?;
        let assignment = map_clusters_to_tiers(&clusters, pricing)?;
        let mut filled = Vec::with_capacity(clusters.k_effective);
        for cluster in 0..clusters.k_effective {
            let members = stored
                .iter()
                .copied()
                .filter(|g| clusters.labels[&g.gop_id] == cluster);
            let price = pricing.tiers[cluster].price_usd_per_gb_month;
            filled.push((cluster, storage_cost_monthly(members, price)?));
        }
        (Some(clusters), Some(assignment), filled)
    };

    let per_tier = tier_breakdown(pricing, &filled);
    let storage: f64 = filled.iter().map(|(_, usd)| usd).sum();
    Ok(ClusteredEvaluation {
        report: CostReport {
            policy_name: String::from(POLICY_CLUSTERED),
            per_tier_storage_usd_month: per_tier,
            compute_usd_month: compute,
            total_usd_month: storage + compute,
            pretranscoded_gop_count: stored.len() as u64,
            retranscoded_gop_count: rest.len() as u64,
        },
        favs,
        clusters,
        assignment,
    })
}

/// Evaluate whichever policy the spec names.
pub fn evaluate(repo: &Repository, pricing: &PricingConfig, spec: &PolicySpec) -> Result<CostReport> {
    match spec.kind {
        PolicyKind::FullPre => evaluate_full_pre(repo, pricing),
        PolicyKind::FullRe => evaluate_full_re(repo, pricing),
        PolicyKind::Partial => evaluate_partial(repo, pricing, &spec.fav),
        PolicyKind::Clustered => {
            evaluate_clustered(repo, pricing, &spec.fav, spec.k, spec.log_space)
        }
    }
}
