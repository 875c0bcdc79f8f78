//! Command-line front end: synthesize repositories, cluster views,
//! price policies and run the FAV-percentage sweep over file-based
//! inputs and outputs.

mod io;

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{ArgAction, Args, Parser, Subcommand};
use vodsim_core::policy::{
    evaluate, evaluate_clustered_detailed, FavSelection, PolicyKind, PolicySpec,
};
use vodsim_core::sweep::{emit_sweep_csv, run_sweep, summarize_savings, SweepOptions, SweepRow};
use vodsim_core::synthesis::{synthesize_repository, SynthesisConfig};

use io::{load_pricing, load_repository, write_atomic, write_json_atomic, CostReportDoc};

#[derive(Parser)]
#[command(name = "vodsim", version, about = "Tiered-storage cost simulator for on-demand video")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Synthesize a reproducible video repository
    Synth(SynthArgs),
    /// Cluster frequently accessed GOPs and map them onto storage tiers
    Cluster(ClusterArgs),
    /// Price one policy over a repository
    Evaluate(EvaluateArgs),
    /// Sweep the FAV percentage and price all four policies
    Sweep(SweepArgs),
}

#[derive(Args)]
struct SynthArgs {
    /// Synthesis config JSON; defaults apply when omitted
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    seed: u64,
    /// Output repository path (.repo.json)
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct ClusterArgs {
    /// Input repository (.repo.json)
    #[arg(long)]
    repo: PathBuf,
    #[arg(long, default_value_t = 4)]
    k: usize,
    #[arg(long, default_value_t = true, action = ArgAction::Set)]
    log_space: bool,
    /// Pricing JSON; AWS catalog when omitted
    #[arg(long)]
    pricing: Option<PathBuf>,
    /// Cluster only the top percentage of GOPs by views
    #[arg(long, default_value_t = 100.0)]
    fav_percent: f64,
    /// Per-GOP assignment CSV; a cluster summary CSV is written next to it
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct EvaluateArgs {
    /// Input repository (.repo.json)
    #[arg(long)]
    repo: PathBuf,
    /// One of full_pre, full_re, partial, clustered
    #[arg(long)]
    policy: String,
    /// Pricing JSON; AWS catalog when omitted
    #[arg(long)]
    pricing: Option<PathBuf>,
    /// Top-percent FAV selection; break-even economics when omitted
    #[arg(long)]
    fav_percent: Option<f64>,
    #[arg(long, default_value_t = 4)]
    k: usize,
    #[arg(long, default_value_t = true, action = ArgAction::Set)]
    log_space: bool,
    /// Cost report JSON output; summary goes to stdout either way
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    /// Synthesis config JSON; defaults apply when omitted
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, value_delimiter = ',', default_value = "5,10,15,20,25,30")]
    percents: Vec<f64>,
    #[arg(long, default_value_t = 4)]
    k: usize,
    #[arg(long, default_value_t = true, action = ArgAction::Set)]
    log_space: bool,
    /// Pricing JSON; AWS catalog when omitted
    #[arg(long)]
    pricing: Option<PathBuf>,
    /// Number of seeds; seed r runs with --seed + r
    #[arg(long, default_value_t = 1)]
    repeats: u32,
    /// Synthesize a fresh repository per percent instead of sharing one
    #[arg(long, action = ArgAction::SetTrue)]
    independent_repos: bool,
    /// Output CSV path
    #[arg(long)]
    out: PathBuf,
}

fn load_synthesis_config(path: Option<&Path>) -> Result<SynthesisConfig> {
    let config = match path {
        None => SynthesisConfig::default(),
        Some(path) => {
            let data = std::fs::read_to_string(path)
                .with_context(|| format!("cannot read config file {}", path.display()))?;
            serde_json::from_str(&data)
                .with_context(|| format!("malformed config file {}", path.display()))?
        }
    };
    config.validate().map_err(anyhow::Error::msg)?;
    Ok(config)
}

fn run_synth(args: &SynthArgs) -> Result<()> {
    let config = load_synthesis_config(args.config.as_deref())?;
    let repo = synthesize_repository(&config, args.seed).map_err(anyhow::Error::msg)?;
    let mut data = serde_json::to_string(&repo)?;
    data.push('\n');
    write_atomic(&args.out, data.as_bytes())?;
    println!(
        "synth: {} videos, {} gops, seed {} -> {}",
        repo.videos.len(),
        repo.gop_count(),
        repo.seed,
        args.out.display()
    );
    Ok(())
}

fn summary_path(out: &Path) -> PathBuf {
    match out.extension().and_then(|e| e.to_str()) {
        Some(ext) => out.with_extension(format!("summary.{ext}")),
        None => {
            let mut path = out.as_os_str().to_owned();
            path.push(".summary");
            PathBuf::from(path)
        }
    }
}

fn run_cluster(args: &ClusterArgs) -> Result<()> {
    let repo = load_repository(&args.repo)?;
    let pricing = load_pricing(args.pricing.as_deref())?;
    let detail = evaluate_clustered_detailed(
        &repo,
        &pricing,
        &FavSelection::TopPercent { percent: args.fav_percent },
        args.k,
        args.log_space,
    )
    .map_err(anyhow::Error::msg)?;
    let (clusters, assignment) = match (&detail.clusters, &detail.assignment) {
        (Some(c), Some(a)) => (c, a),
        _ => bail!("no GOPs selected for clustering"),
    };

    let mut csv = String::from("gop_id,video_id,views_per_month,cluster,tier\n");
    let mut cluster_sizes = vec![0u64; clusters.k_effective];
    for gop in repo.all_gops() {
        if let Some(&cluster) = clusters.labels.get(&gop.gop_id) {
            cluster_sizes[cluster] += 1;
            csv.push_str(&format!(
                "{},{},{:.6},{},{}\n",
                gop.gop_id,
                gop.video_id,
                gop.views_per_month,
                cluster,
                assignment.tier_for_cluster(cluster)
            ));
        }
    }
    write_atomic(&args.out, csv.as_bytes())?;

    let mut summary = String::from("cluster,centroid,size,tier\n");
    for (cluster, (centroid, size)) in clusters.centroids.iter().zip(&cluster_sizes).enumerate() {
        summary.push_str(&format!(
            "{},{:.6},{},{}\n",
            cluster,
            centroid,
            size,
            assignment.tier_for_cluster(cluster)
        ));
    }
    let summary_out = summary_path(&args.out);
    write_atomic(&summary_out, summary.as_bytes())?;

    println!(
        "cluster: {} gops in {} clusters (wcss {:.6}) -> {} and {}",
        clusters.labels.len(),
        clusters.k_effective,
        clusters.wcss,
        args.out.display(),
        summary_out.display()
    );
    Ok(())
}

fn run_evaluate(args: &EvaluateArgs) -> Result<()> {
    let repo = load_repository(&args.repo)?;
    let pricing = load_pricing(args.pricing.as_deref())?;
    let kind: PolicyKind = args.policy.parse().map_err(anyhow::Error::msg)?;
    let fav = match args.fav_percent {
        Some(percent) => FavSelection::TopPercent { percent },
        None => FavSelection::BreakEven,
    };
    let spec = PolicySpec { kind, fav, k: args.k, log_space: args.log_space };
    let report = evaluate(&repo, &pricing, &spec).map_err(anyhow::Error::msg)?;
    if let Some(out) = &args.out {
        write_json_atomic(out, &CostReportDoc::from_report(&report))?;
    }
    println!(
        "evaluate: policy={} total_usd_month={:.6} storage_usd_month={:.6} compute_usd_month={:.6} pretranscoded={} retranscoded={}",
        report.policy_name,
        report.total_usd_month,
        report.storage_usd_month(),
        report.compute_usd_month,
        report.pretranscoded_gop_count,
        report.retranscoded_gop_count
    );
    Ok(())
}

fn run_sweep_cmd(args: &SweepArgs) -> Result<()> {
    let config = load_synthesis_config(args.config.as_deref())?;
    let pricing = load_pricing(args.pricing.as_deref())?;
    let options = SweepOptions {
        k: args.k,
        log_space: args.log_space,
        repeats: args.repeats,
        independent_repos: args.independent_repos,
    };
    let rows = run_sweep(&config, args.seed, &args.percents, &pricing, &options)
        .map_err(anyhow::Error::msg)?;
    let csv = emit_sweep_csv(&rows).map_err(anyhow::Error::msg)?;
    write_atomic(&args.out, csv.as_bytes())?;
    println!("sweep: {} rows -> {}", rows.len(), args.out.display());
    if args.repeats > 1 {
        print_repeat_summary(&rows);
    } else {
        for baseline in ["full_pre", "full_re", "partial"] {
            for s in summarize_savings(&rows, baseline, "clustered").map_err(anyhow::Error::msg)? {
                println!(
                    "sweep: percent={:.2} savings of {} vs {}: {:.1}%",
                    s.fav_percent, s.proposed, s.baseline, s.savings_percent
                );
            }
        }
    }
    Ok(())
}

/// Mean and min/max total per (percent, policy) cell across repeat seeds.
fn print_repeat_summary(rows: &[SweepRow]) {
    let mut cells: BTreeMap<(u64, &str), Vec<f64>> = BTreeMap::new();
    for row in rows {
        cells
            .entry(((row.fav_percent * 1.0e6) as u64, row.policy_name.as_str()))
            .or_default()
            .push(row.total_usd_month);
    }
    for ((percent_key, policy), totals) in cells {
        let mean = totals.iter().sum::<f64>() / totals.len() as f64;
        let min = totals.iter().cloned().fold(f64::INFINITY, f64::min);
        let max = totals.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        println!(
            "sweep: percent={:.2} policy={} mean={:.6} min={:.6} max={:.6}",
            percent_key as f64 / 1.0e6,
            policy,
            mean,
            min,
            max
        );
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Synth(args) => run_synth(args),
        Command::Cluster(args) => run_cluster(args),
        Command::Evaluate(args) => run_evaluate(args),
        Command::Sweep(args) => run_sweep_cmd(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("vodsim: {err:#}");
            ExitCode::FAILURE
        }
    }
}
