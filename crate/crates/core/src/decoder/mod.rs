//! Maximum-likelihood decoders for the real equivalent channel model
//! `y = G x + w`, with explicit work counters.
//!
//! [`sphere_decode`] handles the classic full-rank triangular case.  When
//! `G` loses column rank, [`rank_deficient_decode`] conditions a sphere
//! search on every assignment of the undetermined symbols, and
//! [`multigroup_decode`] splits the search across orthogonal decoding
//! groups first.  [`brute_force_ml`] is the exhaustive reference the
//! fast decoders are tested against.
//!
//! ```
//! use stbc_lab::codes::{herm_basis_code, HermFlavor};
//! use stbc_lab::decoder::{rank_deficient_decode, simulate_transmission, SignalSet};
//! use stbc_lab::equiv::build_equiv_channel;
//! use stbc_lab::linalg::{sample_channel, RandomSource};
//!
//! let code = herm_basis_code(2, HermFlavor::UnitaryHermitian).unwrap();
//! let signal = SignalSet::pam(2).unwrap();
//! let mut rng = RandomSource::new(5);
//! let h = sample_channel(2, 1, &mut rng);
//! let ec = build_equiv_channel(&code, &h).unwrap();
//! let inst = simulate_transmission(&code, &h, None, &signal, f64::INFINITY, &mut rng).unwrap();
//! let out = rank_deficient_decode(&ec.g, &inst.y, &signal).unwrap();
//! assert_eq!(out.s_hat, inst.s_true);
//! assert_eq!(out.outer_candidates, 2); // rank 3 of 4: one conditioned symbol
//! ```

mod brute;
mod conditional;
mod multigroup;
mod scan;
mod signal;
mod sim;
mod sphere;

pub use brute::{brute_force_ml, brute_force_ml_with_budget, DEFAULT_ORACLE_BUDGET};
pub use conditional::{
    rank_deficient_decode, rank_deficient_decode_with_budget, DEFAULT_OUTER_BUDGET,
};
pub use multigroup::{multigroup_decode, GROUP_COHERENCE_TOL};
pub use scan::{complexity_scan, ScanPoint};
pub use signal::SignalSet;
pub use sim::{simulate_transmission, TransmissionInstance};
pub use sphere::sphere_decode;

use serde::Serialize;

/// Outcome of one decode: the estimate, its cost, and how much work it took.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecodeResult {
    /// Estimated symbol vector, in original (unpermuted) symbol order.
    pub s_hat: Vec<i64>,
    /// Squared Euclidean distance of the estimate to the received vector.
    pub cost: f64,
    /// Partial candidates whose cost was evaluated during tree search.
    pub nodes_visited: u64,
    /// Conditioned assignments of undetermined symbols that were enumerated.
    pub outer_candidates: u64,
    /// Per-group results when the decode was split across decoding groups.
    pub per_group: Option<Vec<DecodeResult>>,
}

/// Squared Euclidean distance `||y - G s||^2` of an integer candidate.
///
/// Subtracts the columns of `G` from `y` one at a time, in symbol order --
/// the same floating-point evaluation [`brute_force_ml`] uses for its leaf
/// costs -- so tie-breaking across decoders compares identical values.
pub(crate) fn candidate_cost(g: &crate::linalg::RealMatrix, y: &[f64], s: &[i64]) -> f64 {
    let mut residual = y.to_vec();
    for (j, &v) in s.iter().enumerate() {
        for (r, &c) in residual.iter_mut().zip(g.col(j)) {
            *r -= v as f64 * c;
        }
    }
    residual.iter().map(|v| v * v).sum()
}
