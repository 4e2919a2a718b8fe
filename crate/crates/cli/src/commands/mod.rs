pub mod decode;
pub mod export;
pub mod kernels;
pub mod rank;
pub mod rpattern;
pub mod scan;

/// Shared error type for command implementations.
pub type CommandResult = Result<std::process::ExitCode, Box<dyn std::error::Error>>;
