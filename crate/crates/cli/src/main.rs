//! Command-line laboratory for space-time block codes: build the code
//! families, verify equivalent-channel rank laws, inspect triangular
//! factors, and decode through rank deficiencies with counted work.

mod commands;
mod output;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use stbc_lab::codes::WeightSet;
use stbc_lab::equiv::FamilyParams;

#[derive(Parser)]
#[command(
    name = "stbc-lab",
    version,
    about = "Rank laws and sphere decoding for space-time block codes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify predicted equivalent-channel ranks by Monte Carlo
    Rank(commands::rank::RankArgs),
    /// Print the zero pattern of the triangular factor of G
    Rpattern(commands::rpattern::RpatternArgs),
    /// Verify the kernel-dimension counts behind the rank law
    #[command(alias = "appendix")]
    Kernels(commands::kernels::KernelsArgs),
    /// Decode simulated transmissions and cross-check the decoders
    Decode(commands::decode::DecodeArgs),
    /// Measure decoding work as the signal set grows
    Scan(commands::scan::ScanArgs),
    /// Export a code's weight matrices as JSON
    ExportCode(commands::export::ExportArgs),
}

/// Code family selector shared by the subcommands.
#[derive(Args)]
struct FamilyArgs {
    /// Code family
    #[arg(long, value_enum)]
    family: Family,
    /// Antenna parameter (required by herm, natarajan-g2, ryggz-basis)
    #[arg(
        long,
        required_if_eq_any([
            ("family", "herm"),
            ("family", "natarajan-g2"),
            ("family", "ryggz-basis"),
        ])
    )]
    n: Option<usize>,
    /// Block length (required by ryggz-basis)
    #[arg(long, required_if_eq("family", "ryggz-basis"))]
    t: Option<usize>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Family {
    /// Full Hermitian-basis code on n antennas
    Herm,
    /// Rate-17/8 fast-group-decodable code on 4 antennas
    FgdRen,
    /// Two-group delay-optimal code on 2n antennas
    NatarajanG2,
    /// One group of the even-block-length two-group family
    RyggzBasis,
}

impl FamilyArgs {
    fn params(&self) -> FamilyParams {
        match self.family {
            Family::Herm => FamilyParams::HermBasis { n: self.n.expect("clap enforces --n") },
            Family::FgdRen => FamilyParams::FgdRen,
            Family::NatarajanG2 => {
                FamilyParams::NatarajanG2 { n: self.n.expect("clap enforces --n") }
            }
            Family::RyggzBasis => FamilyParams::RyggzBasis {
                n: self.n.expect("clap enforces --n"),
                t: self.t.expect("clap enforces --t"),
            },
        }
    }

    fn build(&self) -> stbc_lab::Result<(FamilyParams, WeightSet)> {
        let params = self.params();
        let w = params.build()?;
        Ok((params, w))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Rank(args) => commands::rank::run(args),
        Command::Rpattern(args) => commands::rpattern::run(args),
        Command::Kernels(args) => commands::kernels::run(args),
        Command::Decode(args) => commands::decode::run(args),
        Command::Scan(args) => commands::scan::run(args),
        Command::ExportCode(args) => commands::export::run(args),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
