//! Exact 1-D k-means over GOP view counts, and the cluster-to-tier map.
//!
//! Optimal univariate k-means clusters are contiguous in sorted order, so
//! the global optimum is found by dynamic programming instead of Lloyd's
//! iterations; the result is deterministic and needs no seed. The DP layer
//! transition uses divide-and-conquer over the monotone split positions,
//! giving O(k * m * log m) over the m distinct values, which keeps
//! repository-scale inputs (hundreds of thousands of values) cheap.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use libm::log10;

use crate::model::{Gop, PricingConfig};
use crate::{Error, Result};

/// A partition of GOPs into view-similarity groups.
///
/// Cluster 0 holds the largest clustered values; centroids are strictly
/// descending. `wcss` is the within-cluster sum of squares in clustering
/// space (log or raw, whichever was requested).
#[derive(Debug, Clone, PartialEq)]
pub struct ClusterResult {
    pub k_effective: usize,
    pub labels: BTreeMap<u64, usize>,
    pub centroids: Vec<f64>,
    pub wcss: f64,
}

/// The order-preserving map from clusters to storage tiers: the
/// highest-views cluster goes to the highest-priced (fastest) tier.
#[derive(Debug, Clone, PartialEq)]
pub struct TierAssignment {
    pub cluster_to_tier: Vec<String>,
    pub unused_tiers: Vec<String>,
}

impl TierAssignment {
    pub fn tier_for_cluster(&self, cluster: usize) -> &str {
        &self.cluster_to_tier[cluster]
    }
}

/// Weighted sum-of-squares cost of grouping distinct values `[i, j]`
/// (inclusive) into one cluster, from prefix sums.
struct SegmentCost {
    weight: Vec<f64>,
    sum: Vec<f64>,
    sum_sq: Vec<f64>,
}

impl SegmentCost {
    fn new(values: &[f64], weights: &[f64]) -> Self {
        let n = values.len();
        // center on the weighted mean; sums of squares then measure scatter
        // instead of magnitude, which kills the cancellation error
        let total_w: f64 = weights.iter().sum();
        let mean = values.iter().zip(weights).map(|(v, w)| v * w).sum::<f64>() / total_w;
        let mut weight = Vec::with_capacity(n + 1);
        let mut sum = Vec::with_capacity(n + 1);
        let mut sum_sq = Vec::with_capacity(n + 1);
        weight.push(0.0);
        sum.push(0.0);
        sum_sq.push(0.0);
        for (v, w) in values.iter().zip(weights) {
            let v = v - mean;
            weight.push(weight.last().unwrap() + w);
            sum.push(sum.last().unwrap() + w * v);
            sum_sq.push(sum_sq.last().unwrap() + w * v * v);
        }
        SegmentCost { weight, sum, sum_sq }
    }

    fn cost(&self, i: usize, j: usize) -> f64 {
        let w = self.weight[j + 1] - self.weight[i];
        if w <= 0.0 {
            return 0.0;
        }
        let s = self.sum[j + 1] - self.sum[i];
        let s2 = self.sum_sq[j + 1] - self.sum_sq[i];
        (s2 - s * s / w).max(0.0)
    }
}

/// Fill one DP layer for columns [lo, hi] given that the optimal split for
/// each column lies in [t_lo, t_hi]. Splits are monotone in the column, so
/// recursing around the midpoint's argmin is exact.
#[allow(clippy::too_many_arguments)]
fn fill_layer(
    cost: &SegmentCost,
    prev: &[f64],
    layer: &mut [f64],
    splits: &mut [usize],
    lo: usize,
    hi: usize,
    t_lo: usize,
    t_hi: usize,
) {
    if lo > hi {
        return;
    }
    let mid = lo + (hi - lo) / 2;
    let mut best = f64::INFINITY;
    let mut best_t = t_lo;
    for t in t_lo..=t_hi.min(mid) {
        let candidate = prev[t - 1] + cost.cost(t, mid);
        // strict < keeps the leftmost split on ties
        if candidate < best {
            best = candidate;
            best_t = t;
        }
    }
    layer[mid] = best;
    splits[mid] = best_t;
    if mid > lo {
        fill_layer(cost, prev, layer, splits, lo, mid - 1, t_lo, best_t);
    }
    if mid < hi {
        fill_layer(cost, prev, layer, splits, mid + 1, hi, best_t, t_hi);
    }
}

/// Globally optimal k-means partition of the GOP views.
///
/// The clustered value is `log10(views + 1)` when `log_space` is set, raw
/// views otherwise. `k_effective = min(k, distinct values)`, so clusters
/// are never empty.
pub fn cluster_views<'a, I>(gops: I, k: usize, log_space: bool) -> Result<ClusterResult>
where
    I: IntoIterator<Item = &'a Gop>,
{
    if k == 0 {
        return Err(Error::invalid("k must be at least 1"));
    }
    let mut entries: Vec<(f64, u64)> = gops
        .into_iter()
        .map(|g| {
            let v = if log_space {
                log10(g.views_per_month + 1.0)
            } else {
                g.views_per_month
            };
            (v, g.gop_id)
        })
        .collect();
    if entries.is_empty() {
        return Err(Error::invalid("cannot cluster an empty collection"));
    }
    entries.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));

    // collapse to distinct values with multiplicities
    let mut values: Vec<f64> = Vec::new();
    let mut weights: Vec<f64> = Vec::new();
    let mut value_index: Vec<usize> = Vec::with_capacity(entries.len());
    for (v, _) in &entries {
        if values.last() != Some(v) {
            values.push(*v);
            weights.push(0.0);
        }
        if let Some(w) = weights.last_mut() {
            *w += 1.0;
        }
        value_index.push(values.len() - 1);
    }
    let m = values.len();
    let k_effective = k.min(m);

    let cost = SegmentCost::new(&values, &weights);
    let mut prev: Vec<f64> = (0..m).map(|j| cost.cost(0, j)).collect();
    // splits[c][j]: start of the last segment in the optimal (c+1)-clustering
    // of values[0..=j]
    let mut split_table: Vec<Vec<usize>> = Vec::with_capacity(k_effective);
    for c in 1..k_effective {
        let mut layer = vec![f64::INFINITY; m];
        let mut splits = vec![0; m];
        // columns < c stay infinite: c+1 non-empty clusters need c+1 values
        fill_layer(&cost, &prev, &mut layer, &mut splits, c, m - 1, c, m - 1);
        split_table.push(splits);
        prev = layer;
    }
    let wcss = prev[m - 1];

    // recover segment boundaries, ascending
    let mut starts = vec![0usize; k_effective];
    let mut j = m - 1;
    for c in (1..k_effective).rev() {
        let t = split_table[c - 1][j];
        starts[c] = t;
        j = t - 1;
    }

    // ascending segment s becomes descending cluster index k_effective-1-s
    let mut cluster_of_value = vec![0usize; m];
    let mut centroids = vec![0.0; k_effective];
    for s in 0..k_effective {
        let end = if s + 1 < k_effective { starts[s + 1] } else { m };
        let cluster = k_effective - 1 - s;
        let mut weighted_sum = 0.0;
        let mut weight = 0.0;
        for i in starts[s]..end {
            cluster_of_value[i] = cluster;
            weighted_sum += values[i] * weights[i];
            weight += weights[i];
        }
        centroids[cluster] = weighted_sum / weight;
    }

    let labels: BTreeMap<u64, usize> = entries
        .iter()
        .zip(&value_index)
        .map(|((_, gop_id), vi)| (*gop_id, cluster_of_value[*vi]))
        .collect();

    Ok(ClusterResult { k_effective, labels, centroids, wcss })
}

/// Map clusters onto tiers in matching order: descending centroid to
/// descending price. Fails when there are more clusters than tiers.
pub fn map_clusters_to_tiers(
    result: &ClusterResult,
    pricing: &PricingConfig,
) -> Result<TierAssignment> {
    if result.k_effective > pricing.tiers.len() {
        return Err(Error::Capacity {
            clusters: result.k_effective,
            tiers: pricing.tiers.len(),
        });
    }
    let cluster_to_tier = pricing.tiers[..result.k_effective]
        .iter()
        .map(|t| t.name.clone())
        .collect();
    let unused_tiers = pricing.tiers[result.k_effective..]
        .iter()
        .map(|t| t.name.clone())
        .collect();
    Ok(TierAssignment { cluster_to_tier, unused_tiers })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn gops_with_views(views: &[f64]) -> Vec<Gop> {
        views
            .iter()
            .enumerate()
            .map(|(i, v)| Gop {
                gop_id: i as u64,
                video_id: 0,
                index_in_video: i as u32,
                size_mb: 1.0,
                transcode_time_s: 1.0,
                views_per_month: *v,
            })
            .collect()
    }

    #[test]
    fn identical_values_collapse_to_one_cluster() {
        let gops = gops_with_views(&[500.0; 8]);
        let result = cluster_views(&gops, 4, false).unwrap();
        assert_eq!(result.k_effective, 1);
        assert_eq!(result.wcss, 0.0);
        assert_eq!(result.centroids, vec![500.0]);
        assert!(result.labels.values().all(|&c| c == 0));
    }

    #[test]
    fn two_distinct_values_split_exactly() {
        let gops = gops_with_views(&[1.0, 10.0]);
        let result = cluster_views(&gops, 2, false).unwrap();
        assert_eq!(result.k_effective, 2);
        assert_eq!(result.wcss, 0.0);
        assert_eq!(result.centroids, vec![10.0, 1.0]);
        assert_eq!(result.labels[&0], 1);
        assert_eq!(result.labels[&1], 0);
    }

    #[test]
    fn log_space_groups_by_decade() {
        let gops = gops_with_views(&[1.0, 2.0, 100.0, 200.0, 10_000.0, 20_000.0]);
        let result = cluster_views(&gops, 3, true).unwrap();
        assert_eq!(result.k_effective, 3);
        // {10_000, 20_000} | {100, 200} | {1, 2}
        assert_eq!(result.labels[&4], 0);
        assert_eq!(result.labels[&5], 0);
        assert_eq!(result.labels[&2], 1);
        assert_eq!(result.labels[&3], 1);
        assert_eq!(result.labels[&0], 2);
        assert_eq!(result.labels[&1], 2);
    }

    #[test]
    fn rejects_empty_input_and_zero_k() {
        let none: Vec<Gop> = vec![];
        assert!(cluster_views(&none, 4, false).is_err());
        let gops = gops_with_views(&[1.0]);
        assert!(cluster_views(&gops, 0, false).is_err());
    }

    #[test]
    fn centroids_strictly_descending_and_partition_complete() {
        let gops = gops_with_views(&[3.0, 1.0, 4.0, 1.0, 5.0, 9.0, 2.0, 6.0]);
        let result = cluster_views(&gops, 3, false).unwrap();
        assert_eq!(result.labels.len(), gops.len());
        for pair in result.centroids.windows(2) {
            assert!(pair[0] > pair[1]);
        }
        for c in 0..result.k_effective {
            assert!(result.labels.values().any(|&l| l == c), "cluster {c} empty");
        }
    }

    #[test]
    fn clusters_are_contiguous_in_value_order() {
        let gops = gops_with_views(&[12.0, 7.0, 3.0, 88.0, 41.0, 2.0, 95.0, 40.0]);
        let result = cluster_views(&gops, 4, false).unwrap();
        for a in &gops {
            for b in &gops {
                if a.views_per_month > b.views_per_month {
                    assert!(result.labels[&a.gop_id] <= result.labels[&b.gop_id]);
                }
            }
        }
    }

    #[test]
    fn default_catalog_maps_four_clusters_in_order() {
        let gops = gops_with_views(&[1e6, 1e5, 1e4, 1e3]);
        let result = cluster_views(&gops, 4, true).unwrap();
        let assignment = map_clusters_to_tiers(&result, &PricingConfig::aws_default()).unwrap();
        assert_eq!(
            assignment.cluster_to_tier,
            vec!["S3-Standard", "S3-Standard-IA", "S3-One-Zone-IA", "S3-Glacier"]
        );
        assert!(assignment.unused_tiers.is_empty());
    }

    #[test]
    fn single_cluster_uses_only_the_top_tier() {
        let gops = gops_with_views(&[500.0; 4]);
        let result = cluster_views(&gops, 4, false).unwrap();
        let assignment = map_clusters_to_tiers(&result, &PricingConfig::aws_default()).unwrap();
        assert_eq!(assignment.cluster_to_tier, vec!["S3-Standard"]);
        assert_eq!(assignment.unused_tiers.len(), 3);
    }

    #[test]
    fn two_clusters_leave_two_tiers_unused() {
        let gops = gops_with_views(&[1.0, 1000.0]);
        let result = cluster_views(&gops, 2, false).unwrap();
        let assignment = map_clusters_to_tiers(&result, &PricingConfig::aws_default()).unwrap();
        assert_eq!(assignment.cluster_to_tier, vec!["S3-Standard", "S3-Standard-IA"]);
        assert_eq!(assignment.unused_tiers, vec!["S3-One-Zone-IA", "S3-Glacier"]);
    }

    #[test]
    fn too_many_clusters_is_a_capacity_error() {
        let gops = gops_with_views(&[1.0, 2.0, 3.0, 4.0, 5.0]);
        let result = cluster_views(&gops, 5, false).unwrap();
        let err = map_clusters_to_tiers(&result, &PricingConfig::aws_default()).unwrap_err();
        assert!(matches!(err, Error::Capacity { clusters: 5, tiers: 4 }));
    }

    #[test]
    fn wcss_non_increasing_in_k() {
        let gops = gops_with_views(&[3.0, 1.0, 47.0, 21.0, 8.0, 90.0, 2.0, 55.0, 13.0]);
        let mut last = f64::INFINITY;
        for k in 1..=6 {
            let result = cluster_views(&gops, k, false).unwrap();
            assert!(result.wcss <= last + 1e-12, "wcss rose at k={k}");
            last = result.wcss;
        }
    }
}
