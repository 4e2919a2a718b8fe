//! Report plumbing: versioned CSV headers, minimal field quoting, and
//! stdout-or-file writing.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::ValueEnum;

/// Report serialization format.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

/// Comment header identifying a CSV report and, unless suppressed, when it
/// was generated (seconds since the Unix epoch).
pub fn csv_header(report: &str, no_timestamp: bool) -> String {
    let mut out = format!("# stbc-lab {report} v1\n");
    if !no_timestamp {
        let secs =
            SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
        out.push_str(&format!("# generated-unix {secs}\n"));
    }
    out
}

/// Quotes a CSV field only when it needs it.
pub fn csv_field(value: &str) -> String {
    if value.contains([',', '"', '\n']) {
        format!("\"{}\"", value.replace('"', "\"\""))
    } else {
        value.to_string()
    }
}

/// Writes `text` to the given path, or to stdout when no path is set.
pub fn write_output(out: Option<&PathBuf>, text: &str) -> io::Result<()> {
    match out {
        Some(path) => fs::write(path, text),
        None => io::stdout().write_all(text.as_bytes()),
    }
}
