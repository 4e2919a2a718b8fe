//! Numerical laboratory for linear-dispersion space-time block codes.
//!
//! A code is a set of complex `T x N` weight matrices, one per real symbol.
//! For a fixed channel realization the transmitted symbols are related to the
//! received samples by a real *equivalent channel matrix* `G`; whether `G` has
//! full column rank decides whether plain sphere decoding applies.  This crate
//! builds the classic code families, predicts and measures `rank(G)`, and
//! decodes through the rank deficiency with an exact conditional sphere
//! decoder whose extra work is counted explicitly.
//!
//! ```
//! use stbc_lab::codes::{herm_basis_code, HermFlavor};
//! use stbc_lab::equiv::{build_equiv_channel, f_rank};
//! use stbc_lab::linalg::{numerical_rank, sample_channel, RandomSource, DEFAULT_RANK_TOL};
//!
//! let code = herm_basis_code(3, HermFlavor::UnitaryHermitian).unwrap();
//! let mut rng = RandomSource::new(7);
//! let h = sample_channel(3, 2, &mut rng);
//! let ec = build_equiv_channel(&code, &h).unwrap();
//! assert_eq!(numerical_rank(&ec.g, DEFAULT_RANK_TOL), f_rank(3, 2));
//! ```

pub mod codes;
pub mod decoder;
pub mod equiv;
pub mod io;
pub mod linalg;

use thiserror::Error;

/// Errors reported by fallible laboratory operations.
#[derive(Debug, Error)]
pub enum Error {
    /// Matrix or vector dimensions do not line up.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    /// Requested family parameters outside the supported range.
    #[error("unsupported family parameters: {0}")]
    UnsupportedFamily(String),
    /// A signal set was constructed with invalid parameters.
    #[error("invalid signal set: {0}")]
    InvalidSignalSet(String),
    /// Enumeration would exceed the configured candidate budget.
    #[error("candidate budget exceeded: {candidates} candidates > budget {budget}")]
    BudgetExceeded { candidates: u128, budget: u64 },
    /// A triangular factor has a zero diagonal entry.
    #[error("singular triangular factor: r[{index}][{index}] = 0")]
    SingularDiagonal { index: usize },
    /// Group-wise decoding requested on a single-group code.
    #[error("code has a single decoding group")]
    NotMultigroup,
    /// Group-wise decoding requires mutually orthogonal group blocks.
    #[error("decoding groups are not orthogonal: cross-group coherence {coherence:.3e}")]
    GroupsNotOrthogonal { coherence: f64 },
    /// The symbol generator matrix mixes symbols across decoding groups.
    #[error("generator matrix couples decoding groups")]
    GeneratorCouplesGroups,
    /// The measured rank changed between Monte-Carlo trials of a scan.
    #[error("numerical rank varied across scan trials: {0}")]
    UnstableRank(String),
    /// Malformed JSON input.
    #[error("parse error: {0}")]
    Parse(String),
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
