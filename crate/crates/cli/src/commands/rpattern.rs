use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Args;
use stbc_lab::equiv::build_equiv_channel;
use stbc_lab::io::channel_from_json;
use stbc_lab::linalg::{
    numerical_rank, qr_decompose, sample_channel, RandomSource, DEFAULT_RANK_TOL,
};

use crate::commands::CommandResult;
use crate::output::write_output;
use crate::FamilyArgs;

/// Entries below this fraction of the largest one print as zero.
const MASK_TOL: f64 = 1e-9;

#[derive(Args)]
pub struct RpatternArgs {
    #[command(flatten)]
    family: FamilyArgs,
    /// JSON channel fixture to factor over, instead of a random draw
    #[arg(long, conflicts_with = "m")]
    h_fixture: Option<PathBuf>,
    /// Receive antennas for a random channel draw
    #[arg(long, required_unless_present = "h_fixture")]
    m: Option<usize>,
    /// Seed for the random channel draw
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// Write the report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

pub fn run(args: RpatternArgs) -> CommandResult {
    let (_, w) = args.family.build()?;
    let h = match &args.h_fixture {
        Some(path) => channel_from_json(&fs::read_to_string(path)?)?,
        None => {
            let mut rng = RandomSource::new(args.seed);
            sample_channel(w.n, args.m.expect("clap enforces --m"), &mut rng)
        }
    };
    let ec = build_equiv_channel(&w, &h)?;

    // unpivoted, so a dependent column leaves its own row of zeros in place
    let f = qr_decompose(&ec.g, false);
    let threshold = MASK_TOL * f.r.max_abs();
    let grid: Vec<String> = (0..f.r.rows())
        .map(|i| {
            (0..f.r.cols())
                .map(|j| if f.r.get(i, j).abs() > threshold { 'a' } else { '0' })
                .collect()
        })
        .collect();
    let rank = numerical_rank(&ec.g, DEFAULT_RANK_TOL);
    let trailing_zero_rows = grid.iter().rev().take_while(|row| !row.contains('a')).count();

    let mut text = String::from("# stbc-lab rpattern v1\n");
    text.push_str(&format!(
        "# family {} T {} N {} K {} M {}\n",
        w.name,
        w.t,
        w.n,
        w.k,
        h.cols()
    ));
    text.push_str(&format!(
        "# rank {rank} of {} columns, trailing zero rows {trailing_zero_rows}\n",
        ec.g.cols()
    ));
    for row in &grid {
        text.push_str(row);
        text.push('\n');
    }
    write_output(args.out.as_ref(), &text)?;
    Ok(ExitCode::SUCCESS)
}
