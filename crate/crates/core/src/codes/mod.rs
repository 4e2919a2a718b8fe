//! Linear-dispersion code families and weight-set validation.
//!
//! A [`WeightSet`] holds the complex `T x N` weight matrices of a code, one
//! per real symbol, partitioned into independently decodable groups.  The
//! constructors in this module build the families studied by the laboratory;
//! [`validate_weight_set`] checks the two structural properties everything
//! else relies on: linear independence over the reals and Hurwitz-Radon
//! orthogonality across groups.

mod families;

pub use families::{
    fgd_ren_code, herm3_basis, herm_basis_code, natarajan_g2_code, pauli_hermitian_basis,
    ryggz_basis_set, standard_hermitian_basis, unitary_hermitian_basis, HermFlavor,
};

use crate::linalg::{numerical_rank, tilde_vec, ComplexMatrix, RealMatrix, DEFAULT_RANK_TOL};

/// Cross-group Hurwitz-Radon products larger than this fail validation.
pub const HR_ORTHOGONALITY_TOL: f64 = 1e-12;

/// Weight matrices of a linear-dispersion code.
///
/// The code sends `k` real symbols over `t` channel uses and `n` transmit
/// antennas; symbol `i` is carried by `matrices[i]`.  `groups` partitions the
/// symbol indices `0..k` into the code's independent decoding groups.
#[derive(Debug, Clone)]
pub struct WeightSet {
    pub name: String,
    pub t: usize,
    pub n: usize,
    pub k: usize,
    pub matrices: Vec<ComplexMatrix>,
    pub groups: Vec<Vec<usize>>,
}

impl WeightSet {
    /// Rate in complex symbols per channel use, `k / (2t)`.
    pub fn rate(&self) -> f64 {
        self.k as f64 / (2.0 * self.t as f64)
    }

    /// Number of decoding groups.
    pub fn group_count(&self) -> usize {
        self.groups.len()
    }

    /// Whether `groups` is a partition of `0..k`.
    pub fn groups_are_partition(&self) -> bool {
        let mut seen = vec![false; self.k];
        for g in &self.groups {
            if g.is_empty() {
                return false;
            }
            for &i in g {
                if i >= self.k || seen[i] {
                    return false;
                }
                seen[i] = true;
            }
        }
        seen.iter().all(|&s| s)
    }
}

/// Outcome of [`validate_weight_set`].
#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    /// The `k` matrices are linearly independent over the reals.
    pub linearly_independent: bool,
    /// Largest entry of `A_i^H A_j + A_j^H A_i` over cross-group pairs;
    /// `None` for single-group codes.
    pub max_cross_group_hr: Option<f64>,
    pub pass: bool,
}

/// Checks linear independence of the weight matrices over the reals and
/// Hurwitz-Radon orthogonality of every cross-group pair.
pub fn validate_weight_set(w: &WeightSet) -> ValidationReport {
    let shapes_ok = w.k == w.matrices.len()
        && w.matrices.iter().all(|a| a.rows() == w.t && a.cols() == w.n)
        && w.groups_are_partition();

    let stacked = RealMatrix::from_columns(
        &w.matrices.iter().map(tilde_vec).collect::<Vec<_>>(),
    );
    let linearly_independent =
        shapes_ok && numerical_rank(&stacked, DEFAULT_RANK_TOL) == w.k;

    let max_cross_group_hr = if w.groups.len() < 2 {
        None
    } else {
        let mut worst = 0.0f64;
        for (gi, ga) in w.groups.iter().enumerate() {
            for gb in w.groups.iter().skip(gi + 1) {
                for &i in ga {
                    for &j in gb {
                        let (a, b) = (&w.matrices[i], &w.matrices[j]);
                        let hr = a.conj_transpose().mul(b).add(&b.conj_transpose().mul(a));
                        worst = worst.max(hr.max_abs());
                    }
                }
            }
        }
        Some(worst)
    };

    let pass = shapes_ok
        && linearly_independent
        && max_cross_group_hr.is_none_or(|v| v < HR_ORTHOGONALITY_TOL);
    ValidationReport { linearly_independent, max_cross_group_hr, pass }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn test_validate_passes_for_independent_single_group() {
        let w = WeightSet {
            name: "toy".into(),
            t: 1,
            n: 1,
            k: 2,
            matrices: vec![
                ComplexMatrix::identity(1),
                ComplexMatrix::identity(1).scale(Complex64::new(0.0, 1.0)),
            ],
            groups: vec![vec![0, 1]],
        };
        let rep = validate_weight_set(&w);
        assert!(rep.linearly_independent);
        assert_eq!(rep.max_cross_group_hr, None);
        assert!(rep.pass);
    }

    #[test]
    fn test_validate_detects_dependent_matrices() {
        let w = WeightSet {
            name: "dup".into(),
            t: 1,
            n: 1,
            k: 2,
            matrices: vec![ComplexMatrix::identity(1), ComplexMatrix::identity(1)],
            groups: vec![vec![0], vec![1]],
        };
        let rep = validate_weight_set(&w);
        assert!(!rep.linearly_independent);
        assert!(!rep.pass);
    }

    #[test]
    fn test_validate_detects_cross_group_hr_violation() {
        // I and iI are independent but not Hurwitz-Radon orthogonal to each
        // other's group partner I: A^H B + B^H A = 2I for A = B = I.
        let w = WeightSet {
            name: "bad-groups".into(),
            t: 2,
            n: 2,
            k: 2,
            matrices: vec![
                ComplexMatrix::identity(2),
                ComplexMatrix::identity(2).scale(Complex64::new(2.0, 0.0)),
            ],
            groups: vec![vec![0], vec![1]],
        };
        let rep = validate_weight_set(&w);
        assert!(rep.max_cross_group_hr.unwrap() > 1.0);
        assert!(!rep.pass);
    }

    #[test]
    fn test_validate_rejects_broken_partition() {
        let w = WeightSet {
            name: "broken".into(),
            t: 1,
            n: 1,
            k: 2,
            matrices: vec![
                ComplexMatrix::identity(1),
                ComplexMatrix::identity(1).scale(Complex64::new(0.0, 1.0)),
            ],
            groups: vec![vec![0], vec![0]],
        };
        assert!(!validate_weight_set(&w).pass);
    }

    #[test]
    fn test_rate_in_complex_symbols_per_channel_use() {
        let w = WeightSet {
            name: "r".into(),
            t: 4,
            n: 4,
            k: 17,
            matrices: vec![ComplexMatrix::zeros(4, 4); 17],
            groups: vec![(0..17).collect()],
        };
        assert!((w.rate() - 17.0 / 8.0).abs() < 1e-15);
    }
}
