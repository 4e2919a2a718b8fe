use serde::Serialize;

use crate::codes::WeightSet;
use crate::decoder::{rank_deficient_decode, simulate_transmission, SignalSet};
use crate::equiv::build_equiv_channel;
use crate::linalg::{numerical_rank, sample_channel, RandomSource, DEFAULT_RANK_TOL};
use crate::{Error, Result};

/// Measured decoding complexity at one signal-set size.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanPoint {
    /// Signal-set size.
    pub q: usize,
    /// Numerical rank of `G`, constant across the scan's trials.
    pub k_prime: usize,
    /// Rank gap `K - K'`: the exponent in the `q^(K - K')` outer factor.
    pub exponent: usize,
    /// Conditioned assignments per decode, exactly `q^exponent`.
    pub outer_candidates: u64,
    /// Mean sphere-search nodes per decode.
    pub avg_nodes: f64,
    /// Rank gap of each decoding group's column block.
    pub per_group_exponents: Vec<usize>,
}

/// Measures how decoding work scales with the signal-set size.
///
/// For each `q`, draws `trials` seeded channels, decodes one transmission per
/// channel with [`rank_deficient_decode`], and records the rank gap and work
/// counters.  Trial `t` of the `i`-th entry of `qs` uses child stream
/// `i * trials + t`, so scans are reproducible point by point.  The measured
/// rank must not vary between trials; if it does, the scan stops with
/// [`Error::UnstableRank`].
pub fn complexity_scan(
    w: &WeightSet,
    m: usize,
    qs: &[usize],
    trials: usize,
    snr_db: f64,
    rng: &RandomSource,
) -> Result<Vec<ScanPoint>> {
    if trials == 0 {
        return Err(Error::DimensionMismatch("a scan needs at least one trial".into()));
    }
    let mut points = Vec::with_capacity(qs.len());
    for (qi, &q) in qs.iter().enumerate() {
        let signal = SignalSet::pam(q)?;
        let mut k_prime = 0usize;
        let mut group_ranks: Vec<usize> = Vec::new();
        let mut outer = 0u64;
        let mut total_nodes = 0u128;
        for trial in 0..trials {
            let mut child = rng.child((qi * trials + trial) as u64);
            let h = sample_channel(w.n, m, &mut child);
            let ec = build_equiv_channel(w, &h)?;
            let rank = numerical_rank(&ec.g, DEFAULT_RANK_TOL);
            let ranks: Vec<usize> = ec
                .group_blocks
                .iter()
                .map(|b| numerical_rank(b, DEFAULT_RANK_TOL))
                .collect();
            let inst = simulate_transmission(w, &h, None, &signal, snr_db, &mut child)?;
            let out = rank_deficient_decode(&ec.g, &inst.y, &signal)?;
            if trial == 0 {
                k_prime = rank;
                group_ranks = ranks;
                outer = out.outer_candidates;
            } else if rank != k_prime || ranks != group_ranks {
                return Err(Error::UnstableRank(format!(
                    "{} at m = {m}, q = {q}: rank {rank} on trial {trial}, {k_prime} before",
                    w.name
                )));
            }
            debug_assert_eq!(out.outer_candidates, outer);
            total_nodes += out.nodes_visited as u128;
        }
        points.push(ScanPoint {
            q,
            k_prime,
            exponent: w.k - k_prime,
            outer_candidates: outer,
            avg_nodes: total_nodes as f64 / trials as f64,
            per_group_exponents: w
                .groups
                .iter()
                .zip(&group_ranks)
                .map(|(idx, &r)| idx.len() - r)
                .collect(),
        });
    }
    Ok(points)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{herm_basis_code, natarajan_g2_code, HermFlavor};

    #[test]
    fn test_scan_outer_factor_scales_as_predicted() {
        let w = herm_basis_code(3, HermFlavor::UnitaryHermitian).unwrap();
        let rng = RandomSource::new(40);
        let points = complexity_scan(&w, 2, &[2, 4], 5, 20.0, &rng).unwrap();
        assert_eq!(points.len(), 2);
        for (p, q) in points.iter().zip([2u64, 4]) {
            assert_eq!(p.k_prime, 8);
            assert_eq!(p.exponent, 1);
            assert_eq!(p.outer_candidates, q);
            assert_eq!(p.per_group_exponents, vec![1]);
            assert!(p.avg_nodes > 0.0);
        }
        assert!(points[1].avg_nodes > points[0].avg_nodes);
    }

    #[test]
    fn test_scan_reports_per_group_gaps() {
        let w = natarajan_g2_code(2).unwrap();
        let rng = RandomSource::new(41);
        let points = complexity_scan(&w, 1, &[2], 4, 20.0, &rng).unwrap();
        assert_eq!(points[0].k_prime, 8);
        assert_eq!(points[0].exponent, 2);
        assert_eq!(points[0].outer_candidates, 4);
        assert_eq!(points[0].per_group_exponents, vec![1, 1]);
    }

    #[test]
    fn test_scan_is_deterministic() {
        let w = herm_basis_code(2, HermFlavor::UnitaryHermitian).unwrap();
        let rng = RandomSource::new(42);
        let a = complexity_scan(&w, 1, &[2, 4], 6, 15.0, &rng).unwrap();
        let b = complexity_scan(&w, 1, &[2, 4], 6, 15.0, &rng).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn test_scan_validates_arguments() {
        let w = herm_basis_code(2, HermFlavor::UnitaryHermitian).unwrap();
        let rng = RandomSource::new(1);
        assert!(complexity_scan(&w, 1, &[2], 0, 20.0, &rng).is_err());
        assert!(complexity_scan(&w, 1, &[1], 3, 20.0, &rng).is_err());
        assert!(complexity_scan(&w, 1, &[], 3, 20.0, &rng).unwrap().is_empty());
    }
}
