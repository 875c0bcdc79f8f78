//! Property tests for the cost primitives, synthesis and policy invariants.

use proptest::prelude::*;
use vodsim_core::model::{
    retranscode_cost_monthly, storage_cost_monthly, Gop, PricingConfig,
};
use vodsim_core::policy::{
    evaluate_clustered, evaluate_full_pre, evaluate_full_re, evaluate_partial, FavSelection,
};
use vodsim_core::synthesis::{synthesize_repository, SynthesisConfig};

fn gop_strategy() -> impl Strategy<Value = Gop> {
    (0.1f64..1000.0, 0.1f64..100.0, 0.0f64..1.0e6).prop_map(|(size, time, views)| Gop {
        gop_id: 0,
        video_id: 0,
        index_in_video: 0,
        size_mb: size,
        transcode_time_s: time,
        views_per_month: views,
    })
}

fn gops_strategy(max: usize) -> impl Strategy<Value = Vec<Gop>> {
    proptest::collection::vec(gop_strategy(), 0..max).prop_map(|mut gops| {
        for (i, g) in gops.iter_mut().enumerate() {
            g.gop_id = i as u64;
        }
        gops
    })
}

proptest! {
    #[test]
    fn storage_cost_is_additive_over_disjoint_sets(
        a in gops_strategy(20),
        b in gops_strategy(20),
        price in 0.0001f64..1.0,
    ) {
        let whole: Vec<Gop> = a.iter().chain(b.iter()).cloned().collect();
        let split = storage_cost_monthly(&a, price).unwrap()
            + storage_cost_monthly(&b, price).unwrap();
        let joint = storage_cost_monthly(&whole, price).unwrap();
        prop_assert!((joint - split).abs() <= 1e-9);
    }

    #[test]
    fn storage_cost_monotone_in_price(
        gops in gops_strategy(20),
        p1 in 0.0001f64..1.0,
        p2 in 0.0001f64..1.0,
    ) {
        let lo = p1.min(p2);
        let hi = p1.max(p2);
        prop_assert!(
            storage_cost_monthly(&gops, lo).unwrap()
                <= storage_cost_monthly(&gops, hi).unwrap()
        );
    }

    #[test]
    fn retranscode_cost_is_permutation_invariant(
        gops in gops_strategy(20),
        vm in 0.001f64..1.0,
    ) {
        let mut reversed = gops.clone();
        reversed.reverse();
        let forward = retranscode_cost_monthly(&gops, vm).unwrap();
        let backward = retranscode_cost_monthly(&reversed, vm).unwrap();
        prop_assert!((forward - backward).abs() <= 1e-9 * forward.abs().max(1.0));
    }

    #[test]
    fn doubling_views_doubles_retranscode_cost(
        gops in gops_strategy(20),
        vm in 0.001f64..1.0,
    ) {
        let doubled: Vec<Gop> = gops
            .iter()
            .map(|g| Gop { views_per_month: g.views_per_month * 2.0, ..g.clone() })
            .collect();
        let base = retranscode_cost_monthly(&gops, vm).unwrap();
        let twice = retranscode_cost_monthly(&doubled, vm).unwrap();
        prop_assert!((twice - 2.0 * base).abs() <= 1e-12 * twice.abs().max(1e-300));
    }
}

fn tiny_config_strategy() -> impl Strategy<Value = (SynthesisConfig, u64)> {
    (2u64..=30, 1u32..=10, 0u32..=15, 0.1f64..2.0, 0.0f64..1.5, 1u64..1000).prop_map(
        |(videos, gmin, gextra, zipf, gamma, seed)| {
            (
                SynthesisConfig {
                    video_count: videos,
                    gop_count_min: gmin,
                    gop_count_max: gmin + gextra,
                    zipf_exponent: zipf,
                    within_video_decay_gamma: gamma,
                    ..SynthesisConfig::default()
                },
                seed,
            )
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn synthesized_repositories_are_valid_and_bounded((config, seed) in tiny_config_strategy()) {
        let repo = synthesize_repository(&config, seed).unwrap();
        prop_assert_eq!(repo.videos.len() as u64, config.video_count);
        let total = repo.gop_count();
        prop_assert!(total >= config.video_count * config.gop_count_min as u64);
        prop_assert!(total <= config.video_count * config.gop_count_max as u64);
        for video in &repo.videos {
            video.validate().unwrap();
        }
    }

    #[test]
    fn policy_totals_decompose_and_partition((config, seed) in tiny_config_strategy()) {
        let repo = synthesize_repository(&config, seed).unwrap();
        let pricing = PricingConfig::aws_default();
        let fav = FavSelection::BreakEven;
        let reports = [
            evaluate_full_pre(&repo, &pricing).unwrap(),
            evaluate_full_re(&repo, &pricing).unwrap(),
            evaluate_partial(&repo, &pricing, &fav).unwrap(),
            evaluate_clustered(&repo, &pricing, &fav, 4, true).unwrap(),
        ];
        for report in &reports {
            let storage = report.storage_usd_month();
            prop_assert!((report.total_usd_month - storage - report.compute_usd_month).abs() <= 1e-9);
            prop_assert_eq!(
                report.pretranscoded_gop_count + report.retranscoded_gop_count,
                repo.gop_count()
            );
        }
    }

    #[test]
    fn clustered_dominates_partial_under_any_selection(
        (config, seed) in tiny_config_strategy(),
        percent in 1.0f64..100.0,
    ) {
        let repo = synthesize_repository(&config, seed).unwrap();
        let pricing = PricingConfig::aws_default();
        for fav in [FavSelection::TopPercent { percent }, FavSelection::BreakEven] {
            let clustered = evaluate_clustered(&repo, &pricing, &fav, 4, true).unwrap();
            let partial = evaluate_partial(&repo, &pricing, &fav).unwrap();
            prop_assert!(clustered.total_usd_month <= partial.total_usd_month + 1e-9);
        }
    }
}
