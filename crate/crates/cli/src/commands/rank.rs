use std::path::PathBuf;
use std::process::ExitCode;

use clap::Args;
use serde::Serialize;
use stbc_lab::equiv::{predict_rank, rank_monte_carlo, RankStats};
use stbc_lab::linalg::RandomSource;

use crate::commands::CommandResult;
use crate::output::{csv_field, csv_header, write_output, OutputFormat};
use crate::FamilyArgs;

#[derive(Args)]
pub struct RankArgs {
    #[command(flatten)]
    family: FamilyArgs,
    /// Receive antenna counts, comma separated
    #[arg(long, value_delimiter = ',', required = true)]
    m: Vec<usize>,
    /// Channel draws per antenna count
    #[arg(long, default_value_t = 200)]
    trials: usize,
    /// Seed for the channel generator
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// Report format
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    format: OutputFormat,
    /// Write the report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Omit the generation timestamp from the CSV header
    #[arg(long)]
    no_timestamp: bool,
}

#[derive(Serialize)]
struct RankReport {
    family: String,
    n: usize,
    t: usize,
    k: usize,
    m: usize,
    stats: RankStats,
}

pub fn run(args: RankArgs) -> CommandResult {
    let (params, w) = args.family.build()?;
    let rng = RandomSource::new(args.seed);
    let mut reports = Vec::with_capacity(args.m.len());
    for &m in &args.m {
        let prediction = predict_rank(&params, m);
        let stats = rank_monte_carlo(&w, m, args.trials, prediction.total, &rng);
        reports.push(RankReport { family: w.name.clone(), n: w.n, t: w.t, k: w.k, m, stats });
    }
    let all_match = reports.iter().all(|r| r.stats.match_fraction == 1.0);

    let text = match args.format {
        OutputFormat::Json => format!("{}\n", serde_json::to_string_pretty(&reports)?),
        OutputFormat::Csv => {
            let mut out = csv_header("rank", args.no_timestamp);
            out.push_str(
                "family,N,T,K,M,trials,predicted_rank,min_rank,max_rank,match_fraction\n",
            );
            for r in &reports {
                out.push_str(&format!(
                    "{},{},{},{},{},{},{},{},{},{:.6}\n",
                    csv_field(&r.family),
                    r.n,
                    r.t,
                    r.k,
                    r.m,
                    r.stats.trials,
                    r.stats.predicted_rank,
                    r.stats.min_rank,
                    r.stats.max_rank,
                    r.stats.match_fraction,
                ));
            }
            out
        }
    };
    write_output(args.out.as_ref(), &text)?;
    Ok(if all_match { ExitCode::SUCCESS } else { ExitCode::from(1) })
}
