//! Checks the DP clustering against an independent brute-force oracle:
//! every way of cutting the sorted values into k contiguous groups is
//! enumerated and the minimum within-cluster sum of squares compared.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use vodsim_core::cluster::cluster_views;
use vodsim_core::model::Gop;

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

fn sse(values: &[f64]) -> f64 {
    let mean = values.iter().sum::<f64>() / values.len() as f64;
    values.iter().map(|v| (v - mean) * (v - mean)).sum()
}

/// Minimum wcss over all contiguous partitions of `sorted` into `k`
/// non-empty groups, by exhaustive recursion.
fn brute_force_wcss(sorted: &[f64], k: usize) -> f64 {
    if k == 1 {
        return sse(sorted);
    }
    let mut best = f64::INFINITY;
    // first group is sorted[..cut]; leave at least k-1 items for the rest
    for cut in 1..=(sorted.len() - (k - 1)) {
        let rest = brute_force_wcss(&sorted[cut..], k - 1);
        let candidate = sse(&sorted[..cut]) + rest;
        if candidate < best {
            best = candidate;
        }
    }
    best
}

fn clustering_values(gops: &[Gop], log_space: bool) -> Vec<f64> {
    let mut values: Vec<f64> = gops
        .iter()
        .map(|g| {
            if log_space {
                (g.views_per_month + 1.0).log10()
            } else {
                g.views_per_month
            }
        })
        .collect();
    values.sort_by(f64::total_cmp);
    values
}

#[test]
fn dp_matches_exhaustive_enumeration_on_random_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC1);
    for case in 0..200 {
        let n = rng.gen_range(1..=12);
        let k = rng.gen_range(1..=4usize);
        let log_space = case % 2 == 0;
        let views: Vec<f64> = (0..n)
            .map(|_| {
                if rng.gen_bool(0.2) {
                    // force duplicates now and then
                    10.0
                } else {
                    rng.gen_range(0.0..1.0e5)
                }
            })
            .collect();
        let gops = gops_with_views(&views);
        let result = cluster_views(&gops, k, log_space).unwrap();

        let values = clustering_values(&gops, log_space);
        let distinct = {
            let mut d = values.clone();
            d.dedup();
            d.len()
        };
        assert_eq!(result.k_effective, k.min(distinct), "case {case}");
        let expected = brute_force_wcss(&values, result.k_effective);
        // absolute floor at the scale of total scatter covers expected == 0
        let total_scatter = sse(&values);
        let tol = 1e-9 * expected + 1e-12 * total_scatter + 1e-12;
        assert!(
            (result.wcss - expected).abs() <= tol,
            "case {case}: dp wcss {} vs brute force {}",
            result.wcss,
            expected
        );
    }
}

#[test]
fn wcss_non_increasing_in_k_on_larger_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC2);
    for case in 0..50 {
        let n = rng.gen_range(2..=256);
        let views: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..1.0e6)).collect();
        let gops = gops_with_views(&views);
        let mut last = f64::INFINITY;
        for k in 1..=8 {
            let result = cluster_views(&gops, k, case % 2 == 0).unwrap();
            assert!(
                result.wcss <= last * (1.0 + 1e-12) + 1e-9,
                "case {case}: wcss rose at k={k}: {} > {}",
                result.wcss,
                last
            );
            last = result.wcss;
        }
    }
}

#[test]
fn scaling_views_preserves_raw_space_labels() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC3);
    for _ in 0..30 {
        let n = rng.gen_range(2..=64);
        let views: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..1.0e4)).collect();
        let gops = gops_with_views(&views);
        let base = cluster_views(&gops, 4, false).unwrap();
        // power-of-two scale keeps the arithmetic exact
        let scaled_views: Vec<f64> = views.iter().map(|v| v * 8.0).collect();
        let scaled = cluster_views(&gops_with_views(&scaled_views), 4, false).unwrap();
        assert_eq!(base.labels, scaled.labels);
        assert!((scaled.wcss - base.wcss * 64.0).abs() <= 1e-9 * scaled.wcss.max(1.0));
    }
}

#[test]
fn clusters_stay_contiguous_on_random_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC4);
    for _ in 0..30 {
        let n = rng.gen_range(2..=128);
        let views: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..1.0e6)).collect();
        let gops = gops_with_views(&views);
        let result = cluster_views(&gops, 4, true).unwrap();
        // min clustered value of cluster i >= max clustered value of cluster i+1
        for cluster in 0..result.k_effective.saturating_sub(1) {
            let min_here = gops
                .iter()
                .filter(|g| result.labels[&g.gop_id] == cluster)
                .map(|g| g.views_per_month)
                .fold(f64::INFINITY, f64::min);
            let max_next = gops
                .iter()
                .filter(|g| result.labels[&g.gop_id] == cluster + 1)
                .map(|g| g.views_per_month)
                .fold(f64::NEG_INFINITY, f64::max);
            assert!(min_here >= max_next);
        }
    }
}
