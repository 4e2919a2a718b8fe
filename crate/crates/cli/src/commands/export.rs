use std::path::PathBuf;
use std::process::ExitCode;

use clap::Args;
use stbc_lab::codes::validate_weight_set;
use stbc_lab::io::weight_set_to_json;

use crate::commands::CommandResult;
use crate::output::write_output;
use crate::FamilyArgs;

#[derive(Args)]
pub struct ExportArgs {
    #[command(flatten)]
    family: FamilyArgs,
    /// Write the JSON here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

pub fn run(args: ExportArgs) -> CommandResult {
    let (_, w) = args.family.build()?;
    let report = validate_weight_set(&w);
    if !report.pass {
        return Err(format!("built weight set failed validation: {report:?}").into());
    }
    let text = format!("{}\n", weight_set_to_json(&w));
    write_output(args.out.as_ref(), &text)?;
    Ok(ExitCode::SUCCESS)
}
