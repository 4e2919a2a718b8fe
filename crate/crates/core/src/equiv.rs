//! Real equivalent channel matrices, rank predictions, and Monte-Carlo
//! verification.
//!
//! For weight matrices `A_1..A_K` and a channel `H`, the received block
//! satisfies `y = G x + w` where column `j` of `G` is the real stacking of
//! `A_j H`.  The column rank of `G` decides how much of the symbol vector a
//! sphere decoder can resolve; [`predict_rank`] gives the almost-sure rank
//! for each supported family and [`rank_monte_carlo`] measures it.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::codes::{
    fgd_ren_code, herm_basis_code, natarajan_g2_code, ryggz_basis_set, HermFlavor, WeightSet,
};
use crate::linalg::{
    numerical_rank, sample_channel, tilde_vec, ComplexMatrix, RandomSource, RealMatrix,
    DEFAULT_RANK_TOL,
};
use crate::{Error, Result};

/// Real equivalent channel of a weight set for one channel realization.
#[derive(Debug, Clone)]
pub struct EquivChannel {
    /// Full `2MT x K` matrix; column `j` is the real stacking of `A_j H`.
    pub g: RealMatrix,
    /// Columns of `g` restricted to each decoding group, in group order.
    pub group_blocks: Vec<RealMatrix>,
    /// The decoding-group partition, copied from the weight set.
    pub groups: Vec<Vec<usize>>,
    /// Number of receive antennas the channel was drawn for.
    pub m: usize,
}

/// Builds the real equivalent channel of `w` for the realization `h`.
pub fn build_equiv_channel(w: &WeightSet, h: &ComplexMatrix) -> Result<EquivChannel> {
    if h.rows() != w.n {
        return Err(Error::DimensionMismatch(format!(
            "channel has {} rows but the code uses {} transmit antennas",
            h.rows(),
            w.n
        )));
    }
    if w.k != w.matrices.len() || !w.groups_are_partition() {
        return Err(Error::DimensionMismatch(
            "weight set is inconsistent; run validate_weight_set".into(),
        ));
    }
    let cols: Vec<Vec<f64>> = w.matrices.iter().map(|a| tilde_vec(&a.mul(h))).collect();
    let g = RealMatrix::from_columns(&cols);
    let group_blocks = w.groups.iter().map(|idx| g.select_columns(idx)).collect();
    Ok(EquivChannel { g, group_blocks, groups: w.groups.clone(), m: h.cols() })
}

/// `f(n, m) = n^2 - ((n - m)^+)^2`, the almost-sure rank of the equivalent
/// channel of a full Hermitian basis code.
pub fn f_rank(n: usize, m: usize) -> usize {
    n * n - n.saturating_sub(m).pow(2)
}

/// Parameters identifying a supported code family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyParams {
    /// Hermitian-basis code on `n` antennas.
    HermBasis { n: usize },
    /// The rate-17/8 fast-group-decodable code (fixed 4 antennas).
    FgdRen,
    /// Two-group delay-optimal code on `2n` antennas.
    NatarajanG2 { n: usize },
    /// One group of the even-block-length two-group family.
    RyggzBasis { n: usize, t: usize },
}

impl FamilyParams {
    /// Builds the weight set for these parameters.
    pub fn build(&self) -> Result<WeightSet> {
        match *self {
            FamilyParams::HermBasis { n } => herm_basis_code(n, HermFlavor::UnitaryHermitian),
            FamilyParams::FgdRen => Ok(fgd_ren_code()),
            FamilyParams::NatarajanG2 { n } => natarajan_g2_code(n),
            FamilyParams::RyggzBasis { n, t } => ryggz_basis_set(n, t),
        }
    }

    /// Closed-form sphere-decoding exponent `(K - K')/g` per decoding group
    /// for `m` receive antennas.
    pub fn group_exponent(&self, m: usize) -> usize {
        match *self {
            FamilyParams::HermBasis { n } => n.saturating_sub(m).pow(2),
            FamilyParams::FgdRen => 4usize.saturating_sub(m).pow(2),
            FamilyParams::NatarajanG2 { n } => n.saturating_sub(m).pow(2),
            FamilyParams::RyggzBasis { n, t } => {
                n.saturating_sub(m) * (t - n).saturating_sub(m)
            }
        }
    }
}

/// Almost-sure rank of the equivalent channel, per group and in total.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RankPrediction {
    pub per_group: Vec<usize>,
    pub total: usize,
    /// Number of real symbols of the code.
    pub k: usize,
    /// Whether the code is singular for this antenna count (`total < k`).
    pub singular: bool,
}

/// Predicts `rank(G)` for `m` receive antennas.
pub fn predict_rank(family: &FamilyParams, m: usize) -> RankPrediction {
    let (per_group, k) = match *family {
        FamilyParams::HermBasis { n } => (vec![f_rank(n, m)], n * n),
        FamilyParams::FgdRen => (vec![1, f_rank(4, m)], 17),
        FamilyParams::NatarajanG2 { n } => {
            let per = f_rank(n, m) + 1;
            (vec![per, per], 2 * (n * n + 1))
        }
        FamilyParams::RyggzBasis { n, t } => {
            let per = (t - 2 * n) * n.min(m) + f_rank(n, m) + 1;
            (vec![per], t * n - n * n + 1)
        }
    };
    let total = per_group.iter().sum();
    RankPrediction { per_group, total, k, singular: total < k }
}

/// Measured rank distribution over seeded Monte-Carlo channel draws.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RankStats {
    pub predicted_rank: usize,
    pub trials: usize,
    pub min_rank: usize,
    pub max_rank: usize,
    /// Fraction of trials whose measured rank equals the prediction.
    pub match_fraction: f64,
    /// Measured rank -> number of trials.
    pub histogram: BTreeMap<usize, usize>,
}

/// Draws `trials` channels (child stream `t` of `rng` for trial `t`),
/// measures `rank(G)` for each, and compares against `predicted_rank`.
pub fn rank_monte_carlo(
    w: &WeightSet,
    m: usize,
    trials: usize,
    predicted_rank: usize,
    rng: &RandomSource,
) -> RankStats {
    let mut histogram = BTreeMap::new();
    let mut matches = 0usize;
    for trial in 0..trials {
        let mut child = rng.child(trial as u64);
        let h = sample_channel(w.n, m, &mut child);
        let ec = build_equiv_channel(w, &h).expect("weight set and channel agree by construction");
        let rank = numerical_rank(&ec.g, DEFAULT_RANK_TOL);
        *histogram.entry(rank).or_insert(0) += 1;
        if rank == predicted_rank {
            matches += 1;
        }
    }
    let min_rank = histogram.keys().next().copied().unwrap_or(0);
    let max_rank = histogram.keys().next_back().copied().unwrap_or(0);
    RankStats {
        predicted_rank,
        trials,
        min_rank,
        max_rank,
        match_fraction: if trials == 0 { 0.0 } else { matches as f64 / trials as f64 },
        histogram,
    }
}

/// Largest cross-group coherence: the maximum `|g_i^T g_j|` over columns in
/// different groups after normalizing each column to unit length.
pub fn group_orthogonality(ec: &EquivChannel) -> Result<f64> {
    if ec.groups.len() < 2 {
        return Err(Error::NotMultigroup);
    }
    let unit_cols: Vec<Vec<f64>> = (0..ec.g.cols())
        .map(|j| {
            let col = ec.g.col(j);
            let nrm = col.iter().map(|v| v * v).sum::<f64>().sqrt();
            if nrm == 0.0 {
                col.to_vec()
            } else {
                col.iter().map(|v| v / nrm).collect()
            }
        })
        .collect();
    let mut worst = 0.0f64;
    for (gi, ga) in ec.groups.iter().enumerate() {
        for gb in ec.groups.iter().skip(gi + 1) {
            for &i in ga {
                for &j in gb {
                    let dot: f64 =
                        unit_cols[i].iter().zip(&unit_cols[j]).map(|(a, b)| a * b).sum();
                    worst = worst.max(dot.abs());
                }
            }
        }
    }
    Ok(worst)
}

/// Whether `rank(G)` equals the sum of the per-group block ranks.
pub fn rank_additivity_check(ec: &EquivChannel, rel_tol: f64) -> bool {
    let total = numerical_rank(&ec.g, rel_tol);
    let sum: usize = ec.group_blocks.iter().map(|b| numerical_rank(b, rel_tol)).sum();
    total == sum
}

/// Outcome of a seeded kernel- or rank-dimension check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KernelCheck {
    /// Value the dimension count predicts.
    pub expected: usize,
    /// Trials whose measured value matched it.
    pub matches: usize,
    pub trials: usize,
}

impl KernelCheck {
    /// Whether every trial matched the prediction.
    pub fn all_match(&self) -> bool {
        self.matches == self.trials
    }
}

fn check_antennas(n: usize, m: usize) -> Result<()> {
    if m == 0 || m >= n {
        return Err(Error::DimensionMismatch(format!(
            "kernel checks need 1 <= M < N, got N = {n}, M = {m}"
        )));
    }
    Ok(())
}

/// Measures the kernel of `A -> A H` over Hermitian `A`: for `M < N` its
/// real dimension is `(N - M)^2` almost surely, the rank gap behind the
/// conditioned decoder's extra work.
pub fn hermitian_kernel_check(
    n: usize,
    m: usize,
    trials: usize,
    rng: &RandomSource,
) -> Result<KernelCheck> {
    check_antennas(n, m)?;
    let w = herm_basis_code(n, HermFlavor::Standard)?;
    let expected = (n - m) * (n - m);
    let mut matches = 0;
    for trial in 0..trials {
        let mut child = rng.child(trial as u64);
        let h = sample_channel(n, m, &mut child);
        let ec = build_equiv_channel(&w, &h)?;
        if ec.g.cols() - numerical_rank(&ec.g, DEFAULT_RANK_TOL) == expected {
            matches += 1;
        }
    }
    Ok(KernelCheck { expected, matches, trials })
}

/// Measures `ker(z -> H^H z)` with one coordinate pinned to be real: for
/// every pin position the real dimension is `2(N - M) - 1` almost surely.
pub fn pinned_coordinate_kernel_check(
    n: usize,
    m: usize,
    trials: usize,
    rng: &RandomSource,
) -> Result<KernelCheck> {
    check_antennas(n, m)?;
    let expected = 2 * (n - m) - 1;
    let mut matches = 0;
    for trial in 0..trials {
        let mut child = rng.child(trial as u64);
        let h = sample_channel(n, m, &mut child);
        let hh_real = h.conj_transpose().realify();
        let all_pins = (0..n).all(|pin| {
            let stacked = RealMatrix::from_fn(2 * m + 1, 2 * n, |i, j| {
                if i < 2 * m {
                    hh_real.get(i, j)
                } else if j == n + pin {
                    1.0 // selects the imaginary part of coordinate `pin`
                } else {
                    0.0
                }
            });
            crate::linalg::real_nullity(&stacked, DEFAULT_RANK_TOL) == expected
        });
        if all_pins {
            matches += 1;
        }
    }
    Ok(KernelCheck { expected, matches, trials })
}

/// Measures `rank([H, e_i])`: appending any standard basis column to a
/// generic `N x M` channel raises its rank to `M + 1`.
pub fn extended_channel_rank_check(
    n: usize,
    m: usize,
    trials: usize,
    rng: &RandomSource,
) -> Result<KernelCheck> {
    check_antennas(n, m)?;
    let expected = m + 1;
    let mut matches = 0;
    for trial in 0..trials {
        let mut child = rng.child(trial as u64);
        let h = sample_channel(n, m, &mut child);
        let all_columns = (0..n).all(|pin| {
            let ext = ComplexMatrix::from_fn(n, m + 1, |i, j| {
                if j < m {
                    h.get(i, j)
                } else if i == pin {
                    num_complex::Complex64::ONE
                } else {
                    num_complex::Complex64::ZERO
                }
            });
            crate::linalg::complex_rank(&ext, DEFAULT_RANK_TOL) == expected
        });
        if all_columns {
            matches += 1;
        }
    }
    Ok(KernelCheck { expected, matches, trials })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn test_f_rank_values() {
        assert_eq!(f_rank(2, 1), 3);
        assert_eq!(f_rank(3, 2), 8);
        assert_eq!(f_rank(4, 3), 15);
        assert_eq!(f_rank(8, 3), 39);
        assert_eq!(f_rank(3, 3), 9);
        assert_eq!(f_rank(3, 7), 9);
    }

    #[test]
    fn test_equiv_channel_columns_are_stacked_products() {
        let w = herm_basis_code(2, HermFlavor::UnitaryHermitian).unwrap();
        let mut rng = RandomSource::new(1);
        let h = sample_channel(2, 2, &mut rng);
        let ec = build_equiv_channel(&w, &h).unwrap();
        assert_eq!((ec.g.rows(), ec.g.cols()), (8, 4));
        for (j, a) in w.matrices.iter().enumerate() {
            assert_eq!(ec.g.col(j), tilde_vec(&a.mul(&h)).as_slice());
        }
    }

    #[test]
    fn test_equiv_channel_rejects_mismatched_channel() {
        let w = herm_basis_code(2, HermFlavor::UnitaryHermitian).unwrap();
        let h = ComplexMatrix::zeros(3, 2);
        assert!(build_equiv_channel(&w, &h).is_err());
    }

    #[test]
    fn test_predict_rank_herm_family() {
        let p = predict_rank(&FamilyParams::HermBasis { n: 3 }, 2);
        assert_eq!(p.per_group, vec![8]);
        assert_eq!(p.total, 8);
        assert_eq!(p.k, 9);
        assert!(p.singular);
        let p = predict_rank(&FamilyParams::HermBasis { n: 3 }, 3);
        assert_eq!(p.total, 9);
        assert!(!p.singular);
    }

    #[test]
    fn test_predict_rank_fgd_ren() {
        let p = predict_rank(&FamilyParams::FgdRen, 3);
        assert_eq!(p.per_group, vec![1, 15]);
        assert_eq!(p.total, 16);
        assert!(p.singular);
        assert_eq!(predict_rank(&FamilyParams::FgdRen, 4).total, 17);
        assert_eq!(predict_rank(&FamilyParams::FgdRen, 1).total, 8);
    }

    #[test]
    fn test_predict_rank_natarajan() {
        let p = predict_rank(&FamilyParams::NatarajanG2 { n: 3 }, 2);
        assert_eq!(p.per_group, vec![9, 9]);
        assert_eq!(p.total, 18);
        assert_eq!(p.k, 20);
        assert!(p.singular);
        assert!(!predict_rank(&FamilyParams::NatarajanG2 { n: 3 }, 3).singular);
    }

    #[test]
    fn test_predict_rank_ryggz() {
        let p = predict_rank(&FamilyParams::RyggzBasis { n: 4, t: 8 }, 3);
        assert_eq!(p.per_group, vec![16]);
        assert_eq!(p.k, 17);
        assert!(p.singular);
        let p = predict_rank(&FamilyParams::RyggzBasis { n: 2, t: 6 }, 1);
        assert_eq!(p.total, 2 + 3 + 1);
        assert!(!predict_rank(&FamilyParams::RyggzBasis { n: 2, t: 6 }, 2).singular);
    }

    #[test]
    fn test_group_exponent_matches_prediction_gap() {
        let cases = [
            (FamilyParams::HermBasis { n: 4 }, 4),
            (FamilyParams::FgdRen, 5),
            (FamilyParams::NatarajanG2 { n: 3 }, 4),
            (FamilyParams::RyggzBasis { n: 4, t: 8 }, 5),
            (FamilyParams::RyggzBasis { n: 2, t: 6 }, 3),
        ];
        for (family, m_max) in cases {
            let w = family.build().unwrap();
            for m in 1..=m_max {
                let p = predict_rank(&family, m);
                let worst_gap = w
                    .groups
                    .iter()
                    .zip(&p.per_group)
                    .map(|(g, &rank)| g.len() - rank)
                    .max()
                    .unwrap();
                assert_eq!(family.group_exponent(m), worst_gap, "family {family:?} m {m}");
            }
        }
    }

    #[test]
    fn test_rank_monte_carlo_is_deterministic_and_matches_theory() {
        let w = herm_basis_code(3, HermFlavor::UnitaryHermitian).unwrap();
        let rng = RandomSource::new(99);
        let stats = rank_monte_carlo(&w, 2, 25, 8, &rng);
        assert_eq!(stats.match_fraction, 1.0);
        assert_eq!((stats.min_rank, stats.max_rank), (8, 8));
        let again = rank_monte_carlo(&w, 2, 25, 8, &rng);
        assert_eq!(stats, again);
    }

    #[test]
    fn test_group_orthogonality_small_for_orthogonal_design() {
        let w = natarajan_g2_code(2).unwrap();
        let mut rng = RandomSource::new(4);
        let h = sample_channel(4, 2, &mut rng);
        let ec = build_equiv_channel(&w, &h).unwrap();
        assert!(group_orthogonality(&ec).unwrap() < 1e-12);
        assert!(rank_additivity_check(&ec, DEFAULT_RANK_TOL));
    }

    #[test]
    fn test_group_orthogonality_requires_two_groups() {
        let w = herm_basis_code(2, HermFlavor::UnitaryHermitian).unwrap();
        let mut rng = RandomSource::new(4);
        let h = sample_channel(2, 1, &mut rng);
        let ec = build_equiv_channel(&w, &h).unwrap();
        assert!(matches!(group_orthogonality(&ec), Err(Error::NotMultigroup)));
    }

    #[test]
    fn test_kernel_checks_match_dimension_counts() {
        let rng = RandomSource::new(61);
        for (n, m) in [(3, 2), (4, 2), (4, 3)] {
            let a = hermitian_kernel_check(n, m, 20, &rng).unwrap();
            assert_eq!(a.expected, (n - m) * (n - m));
            assert!(a.all_match(), "hermitian kernel at N {n} M {m}: {a:?}");
            let b = pinned_coordinate_kernel_check(n, m, 20, &rng).unwrap();
            assert_eq!(b.expected, 2 * (n - m) - 1);
            assert!(b.all_match(), "pinned kernel at N {n} M {m}: {b:?}");
            let c = extended_channel_rank_check(n, m, 20, &rng).unwrap();
            assert_eq!(c.expected, m + 1);
            assert!(c.all_match(), "extended rank at N {n} M {m}: {c:?}");
        }
    }

    #[test]
    fn test_kernel_checks_require_fewer_receive_antennas() {
        let rng = RandomSource::new(1);
        assert!(hermitian_kernel_check(3, 3, 5, &rng).is_err());
        assert!(pinned_coordinate_kernel_check(3, 4, 5, &rng).is_err());
        assert!(extended_channel_rank_check(2, 0, 5, &rng).is_err());
    }
}
