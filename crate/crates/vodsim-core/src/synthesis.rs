//! Reproducible synthesis of a video repository with long-tail popularity.
//!
//! Production repositories are not accessible, so the simulator generates
//! its own: per-video popularity follows a truncated Zipf law by rank and
//! views decay along the GOP index by a power law. All randomness comes
//! from ChaCha8 keyed by `seed_from_u64(seed)` with the per-video stream
//! set to the video id, so generation is deterministic and each video's
//! substream is independent of every other video's.

use alloc::vec::Vec;
use libm::pow;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::model::{Gop, Video};
use crate::{Error, Result};

/// Parameters of the synthetic repository.
///
/// The defaults are calibrated once, at desk scale (5,000 videos), so that
/// the relative savings of the clustered policy land in the experiment's
/// expected bands; they are frozen and are placeholders, not measurements.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SynthesisConfig {
    pub video_count: u64,
    pub gop_count_min: u32,
    pub gop_count_max: u32,
    pub gop_size_mb_min: f64,
    pub gop_size_mb_max: f64,
    /// Slope of the linear transcode-time model, seconds per MB.
    pub transcode_alpha_s_per_mb: f64,
    /// Intercept of the linear transcode-time model, seconds.
    pub transcode_beta_s: f64,
    /// Cross-video popularity: rank-r base popularity scales as r^(-exponent).
    pub zipf_exponent: f64,
    /// Within-video decay: GOP i gets base * (i+1)^(-gamma).
    pub within_video_decay_gamma: f64,
    /// Views/month of the rank-1 video's first GOP.
    pub max_video_views_per_month: f64,
    /// Nominal lower edge of the frequently-accessed view range; recorded
    /// for diagnostics, not used by generation.
    pub fav_view_floor: f64,
}

impl Default for SynthesisConfig {
    fn default() -> Self {
        SynthesisConfig {
            video_count: 5_000,
            gop_count_min: 50,
            gop_count_max: 600,
            gop_size_mb_min: 1.0,
            gop_size_mb_max: 10.0,
            transcode_alpha_s_per_mb: 0.06,
            transcode_beta_s: 0.05,
            zipf_exponent: 1.0,
            within_video_decay_gamma: 0.8,
            max_video_views_per_month: 1.0e6,
            fav_view_floor: 1.0e3,
        }
    }
}

impl SynthesisConfig {
    pub fn validate(&self) -> Result<()> {
        if self.video_count == 0 {
            return Err(Error::invalid("video_count must be at least 1"));
        }
        if self.gop_count_min == 0 || self.gop_count_min > self.gop_count_max {
            return Err(Error::invalid("gop_count_min must be in [1, gop_count_max]"));
        }
        if !(self.gop_size_mb_min > 0.0) || self.gop_size_mb_min > self.gop_size_mb_max {
            return Err(Error::invalid("gop size bounds must be positive with min <= max"));
        }
        if !(self.transcode_alpha_s_per_mb >= 0.0) || !(self.transcode_beta_s >= 0.0) {
            return Err(Error::invalid("transcode coefficients must be non-negative"));
        }
        if self.transcode_alpha_s_per_mb == 0.0 && self.transcode_beta_s == 0.0 {
            return Err(Error::invalid("transcode coefficients must not both be zero"));
        }
        if !(self.zipf_exponent > 0.0) {
            return Err(Error::invalid("zipf_exponent must be positive"));
        }
        if !(self.within_video_decay_gamma >= 0.0) {
            return Err(Error::invalid("within_video_decay_gamma must be non-negative"));
        }
        if !(self.max_video_views_per_month > 0.0) {
            return Err(Error::invalid("max_video_views_per_month must be positive"));
        }
        Ok(())
    }
}

/// A synthesized collection of videos plus the inputs that produced it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Repository {
    pub seed: u64,
    pub config: SynthesisConfig,
    pub videos: Vec<Video>,
}

impl Repository {
    pub fn gop_count(&self) -> u64 {
        self.videos.iter().map(|v| v.gops.len() as u64).sum()
    }

    pub fn all_gops(&self) -> impl Iterator<Item = &Gop> {
        self.videos.iter().flat_map(|v| v.gops.iter())
    }
}

/// Linear transcode-time model: `alpha * size_mb + beta`.
pub fn transcode_time(size_mb: f64, alpha_s_per_mb: f64, beta_s: f64) -> Result<f64> {
    if !(size_mb > 0.0) {
        return Err(Error::invalid("size_mb must be positive"));
    }
    if !(alpha_s_per_mb >= 0.0) || !(beta_s >= 0.0) {
        return Err(Error::invalid("transcode coefficients must be non-negative"));
    }
    if alpha_s_per_mb == 0.0 && beta_s == 0.0 {
        return Err(Error::invalid("transcode coefficients must not both be zero"));
    }
    Ok(alpha_s_per_mb * size_mb + beta_s)
}

/// Generate a repository deterministically from `(config, seed)`.
pub fn synthesize_repository(config: &SynthesisConfig, seed: u64) -> Result<Repository> {
    config.validate()?;
    let mut videos = Vec::with_capacity(config.video_count as usize);
    let mut next_gop_id: u64 = 0;
    for video_id in 0..config.video_count {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(video_id);
        let rank = (video_id + 1) as f64;
        let base_popularity =
            config.max_video_views_per_month * pow(rank, -config.zipf_exponent);
        let gop_count = rng.gen_range(config.gop_count_min..=config.gop_count_max);
        let mut gops = Vec::with_capacity(gop_count as usize);
        for index in 0..gop_count {
            let size_mb = rng.gen_range(config.gop_size_mb_min..=config.gop_size_mb_max);
            let transcode_time_s = transcode_time(
                size_mb,
                config.transcode_alpha_s_per_mb,
                config.transcode_beta_s,
            )?;
            let views_per_month = base_popularity
                * pow((index + 1) as f64, -config.within_video_decay_gamma);
            gops.push(Gop {
                gop_id: next_gop_id,
                video_id,
                index_in_video: index,
                size_mb,
                transcode_time_s,
                views_per_month,
            });
            next_gop_id += 1;
        }
        videos.push(Video { video_id, gops, base_popularity });
    }
    Ok(Repository { seed, config: config.clone(), videos })
}

/// All GOP views sorted descending with 1-based ranks. Ties are broken by
/// ascending gop id so the profile is deterministic.
pub fn tail_profile(repo: &Repository) -> Result<Vec<(u64, f64)>> {
    if repo.videos.is_empty() {
        return Err(Error::invalid("repository is empty"));
    }
    let mut entries: Vec<(u64, f64)> = repo
        .all_gops()
        .map(|g| (g.gop_id, g.views_per_month))
        .collect();
    entries.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap().then(a.0.cmp(&b.0)));
    Ok(entries
        .into_iter()
        .enumerate()
        .map(|(i, (_, views))| (i as u64 + 1, views))
        .collect())
}
