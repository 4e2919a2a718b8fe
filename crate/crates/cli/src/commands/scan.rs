use std::path::PathBuf;
use std::process::ExitCode;

use clap::Args;
use serde::Serialize;
use stbc_lab::decoder::{complexity_scan, ScanPoint};
use stbc_lab::equiv::predict_rank;
use stbc_lab::linalg::RandomSource;

use crate::commands::CommandResult;
use crate::output::{csv_field, csv_header, write_output, OutputFormat};
use crate::FamilyArgs;

#[derive(Args)]
pub struct ScanArgs {
    #[command(flatten)]
    family: FamilyArgs,
    /// Receive antennas
    #[arg(long)]
    m: usize,
    /// Signal-set sizes, comma separated
    #[arg(long, value_delimiter = ',', required = true)]
    q: Vec<usize>,
    /// Decodes per signal-set size
    #[arg(long, default_value_t = 20)]
    trials: usize,
    /// Signal-to-noise ratio in dB
    #[arg(long, default_value_t = 20.0)]
    snr: f64,
    /// Seed; trial t at the i-th q uses child stream i*trials + t
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
struct ScanReport {
    family: String,
    n: usize,
    t: usize,
    k: usize,
    m: usize,
    trials: usize,
    seed: u64,
    snr_db: f64,
    predicted_exponent: usize,
    points: Vec<ScanPoint>,
}

pub fn run(args: ScanArgs) -> CommandResult {
    let (params, w) = args.family.build()?;
    let rng = RandomSource::new(args.seed);
    let points = complexity_scan(&w, args.m, &args.q, args.trials, args.snr, &rng)?;
    let predicted_exponent = w.k - predict_rank(&params, args.m).total;
    let per_group_prediction = params.group_exponent(args.m);
    let matches = points.iter().all(|p| {
        p.exponent == predicted_exponent
            && p.per_group_exponents.iter().copied().max().unwrap_or(0) == per_group_prediction
    });

    let report = ScanReport {
        family: w.name.clone(),
        n: w.n,
        t: w.t,
        k: w.k,
        m: args.m,
        trials: args.trials,
        seed: args.seed,
        snr_db: args.snr,
        predicted_exponent,
        points,
    };
    let text = match args.format {
        OutputFormat::Json => format!("{}\n", serde_json::to_string_pretty(&report)?),
        OutputFormat::Csv => {
            let mut out = csv_header("scan", args.no_timestamp);
            out.push_str("code,N,T,K,M,q,K_prime,exponent,outer_candidates,avg_nodes,trials,seed\n");
            for p in &report.points {
                out.push_str(&format!(
                    "{},{},{},{},{},{},{},{},{},{:.3},{},{}\n",
                    csv_field(&report.family),
                    report.n,
                    report.t,
                    report.k,
                    report.m,
                    p.q,
                    p.k_prime,
                    p.exponent,
                    p.outer_candidates,
                    p.avg_nodes,
                    report.trials,
                    report.seed,
                ));
            }
            out
        }
    };
    write_output(args.out.as_ref(), &text)?;
    Ok(if matches { ExitCode::SUCCESS } else { ExitCode::from(1) })
}
