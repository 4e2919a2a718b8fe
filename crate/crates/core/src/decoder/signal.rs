use serde::Serialize;

use crate::{Error, Result};

/// A finite real signal set, listed in ascending order.
///
/// Decoders enumerate these points; ties between equal-cost candidates are
/// broken toward the lexicographically smallest symbol vector, which makes
/// results reproducible across decoder implementations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SignalSet {
    points: Vec<i64>,
}

impl SignalSet {
    /// `q`-ary pulse-amplitude set `{-(q-1), -(q-3), .., q-1}`.
    pub fn pam(q: usize) -> Result<Self> {
        if q < 2 {
            return Err(Error::InvalidSignalSet(format!("need at least 2 levels, got {q}")));
        }
        Ok(Self { points: (0..q).map(|i| 2 * i as i64 - (q as i64 - 1)).collect() })
    }

    /// The signal points, ascending.
    pub fn points(&self) -> &[i64] {
        &self.points
    }

    /// Number of points.
    pub fn size(&self) -> usize {
        self.points.len()
    }

    /// Mean squared point value (`(q^2 - 1) / 3` for `q`-ary PAM).
    pub fn average_energy(&self) -> f64 {
        self.points.iter().map(|&p| (p * p) as f64).sum::<f64>() / self.points.len() as f64
    }

    /// Number of length-`len` vectors over this set, or `None` on overflow.
    pub fn vector_count(&self, len: usize) -> Option<u128> {
        (self.size() as u128).checked_pow(u32::try_from(len).ok()?)
    }
}
