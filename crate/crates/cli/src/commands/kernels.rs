use std::path::PathBuf;
use std::process::ExitCode;

use clap::Args;
use stbc_lab::equiv::{
    extended_channel_rank_check, hermitian_kernel_check, pinned_coordinate_kernel_check,
    KernelCheck,
};
use stbc_lab::linalg::RandomSource;

use crate::commands::CommandResult;
use crate::output::write_output;

#[derive(Args)]
pub struct KernelsArgs {
    /// Transmit antennas
    #[arg(long)]
    n: usize,
    /// Receive antennas (fewer than --n)
    #[arg(long)]
    m: usize,
    /// Channel draws per check
    #[arg(long, default_value_t = 100)]
    trials: usize,
    /// Seed for the channel generator
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// Write the report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

pub fn run(args: KernelsArgs) -> CommandResult {
    let rng = RandomSource::new(args.seed);
    let checks: [(&str, KernelCheck); 3] = [
        ("hermitian-kernel", hermitian_kernel_check(args.n, args.m, args.trials, &rng)?),
        (
            "pinned-coordinate-kernel",
            pinned_coordinate_kernel_check(args.n, args.m, args.trials, &rng)?,
        ),
        ("extended-channel-rank", extended_channel_rank_check(args.n, args.m, args.trials, &rng)?),
    ];

    let mut text = String::from("# stbc-lab kernels v1\n");
    text.push_str(&format!(
        "# N {} M {} trials {} seed {}\n",
        args.n, args.m, args.trials, args.seed
    ));
    for (name, check) in &checks {
        text.push_str(&format!(
            "{name} expected {}: {}/{}\n",
            check.expected, check.matches, check.trials
        ));
    }
    let all = checks.iter().all(|(_, c)| c.all_match());
    text.push_str(if all { "all checks passed\n" } else { "CHECK FAILED\n" });
    write_output(args.out.as_ref(), &text)?;
    Ok(if all { ExitCode::SUCCESS } else { ExitCode::from(1) })
}
