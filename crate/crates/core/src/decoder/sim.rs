use crate::codes::WeightSet;
use crate::decoder::SignalSet;
use crate::equiv::build_equiv_channel;
use crate::linalg::{ComplexMatrix, RandomSource, RealMatrix};
use crate::{Error, Result};

/// One simulated transmission: the channel, the truth, and what was received.
#[derive(Debug, Clone)]
pub struct TransmissionInstance {
    /// Channel realization the block was sent over.
    pub h: ComplexMatrix,
    /// Transmitted symbol vector.
    pub s_true: Vec<i64>,
    /// Received real vector `y = G theta s + w`.
    pub y: Vec<f64>,
    /// Signal-to-noise ratio in dB (`f64::INFINITY` for a noiseless block).
    pub snr_db: f64,
}

/// Simulates one block over a fixed channel: draws `K` uniform symbols, then
/// `2MT` Gaussian noise samples scaled so the receive SNR is `snr_db`.
///
/// `theta`, when given, is an invertible `K x K` generator applied to the
/// symbol vector before transmission.  At `snr_db = f64::INFINITY` the noise
/// is exactly zero.
pub fn simulate_transmission(
    w: &WeightSet,
    h: &ComplexMatrix,
    theta: Option<&RealMatrix>,
    signal: &SignalSet,
    snr_db: f64,
    rng: &mut RandomSource,
) -> Result<TransmissionInstance> {
    let ec = build_equiv_channel(w, h)?;
    let g_eff = effective_matrix(&ec.g, theta)?;
    let points = signal.points();
    let s_true: Vec<i64> = (0..w.k).map(|_| points[rng.uniform_index(points.len())]).collect();
    let x: Vec<f64> = s_true.iter().map(|&v| v as f64).collect();
    let mut y = g_eff.mul_vec(&x);
    let sigma = noise_sigma(&g_eff, signal, snr_db);
    for v in y.iter_mut() {
        *v += sigma * rng.normal();
    }
    Ok(TransmissionInstance { h: h.clone(), s_true, y, snr_db })
}

/// `G theta` when a generator is present (validated square and invertible),
/// otherwise a copy of `G`.
pub(crate) fn effective_matrix(g: &RealMatrix, theta: Option<&RealMatrix>) -> Result<RealMatrix> {
    match theta {
        None => Ok(g.clone()),
        Some(t) => {
            if t.rows() != g.cols() || t.cols() != g.cols() {
                return Err(Error::DimensionMismatch(format!(
                    "generator is {} x {} but the code has {} symbols",
                    t.rows(),
                    t.cols(),
                    g.cols()
                )));
            }
            if crate::linalg::numerical_rank(t, crate::linalg::DEFAULT_RANK_TOL) < t.cols() {
                return Err(Error::InvalidSignalSet("generator matrix is singular".into()));
            }
            Ok(g.mul(t))
        }
    }
}

/// Per-component noise deviation giving the requested SNR: the signal power
/// is spread as `E||G theta s||^2 = sigma_s^2 ||G theta||_F^2` over the `2MT`
/// real receive dimensions.
fn noise_sigma(g_eff: &RealMatrix, signal: &SignalSet, snr_db: f64) -> f64 {
    let signal_power = signal.average_energy() * g_eff.frobenius_norm().powi(2);
    (signal_power / (g_eff.rows() as f64 * 10f64.powf(snr_db / 10.0))).sqrt()
}
