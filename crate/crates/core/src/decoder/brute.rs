use crate::decoder::{DecodeResult, SignalSet};
use crate::linalg::RealMatrix;
use crate::{Error, Result};

/// Largest candidate count [`brute_force_ml`] will enumerate.
pub const DEFAULT_ORACLE_BUDGET: u64 = 1 << 20;

/// Exhaustive ML decode of `y = G x + w`: checks every symbol vector.
///
/// This is the reference oracle; it refuses problems with more than
/// [`DEFAULT_ORACLE_BUDGET`] candidates.  Ties are broken toward the
/// lexicographically smallest vector.
pub fn brute_force_ml(g: &RealMatrix, y: &[f64], signal: &SignalSet) -> Result<DecodeResult> {
    brute_force_ml_with_budget(g, y, signal, DEFAULT_ORACLE_BUDGET)
}

/// [`brute_force_ml`] with an explicit candidate budget.
pub fn brute_force_ml_with_budget(
    g: &RealMatrix,
    y: &[f64],
    signal: &SignalSet,
    budget: u64,
) -> Result<DecodeResult> {
    if y.len() != g.rows() {
        return Err(Error::DimensionMismatch(format!(
            "received vector has {} entries but G has {} rows",
            y.len(),
            g.rows()
        )));
    }
    let k = g.cols();
    let total = signal
        .vector_count(k)
        .ok_or(Error::BudgetExceeded { candidates: u128::MAX, budget })?;
    if total > budget as u128 {
        return Err(Error::BudgetExceeded { candidates: total, budget });
    }

    // Depth-first over symbol positions with a stack of partial residuals:
    // each level writes y - sum_{j <= d} s_j g_j afresh, so no floating-point
    // drift accumulates from undo operations.
    let mut residuals = vec![vec![0.0f64; g.rows()]; k + 1];
    residuals[0].copy_from_slice(y);
    let mut s = vec![0i64; k];
    let mut best_cost = f64::INFINITY;
    let mut best_s = Vec::new();
    let mut leaves = 0u64;
    descend(g, signal.points(), 0, &mut residuals, &mut s, &mut best_cost, &mut best_s, &mut leaves);
    debug_assert_eq!(leaves as u128, total);

    Ok(DecodeResult {
        s_hat: best_s,
        cost: best_cost,
        nodes_visited: leaves,
        outer_candidates: 1,
        per_group: None,
    })
}

#[allow(clippy::too_many_arguments)]
fn descend(
    g: &RealMatrix,
    points: &[i64],
    depth: usize,
    residuals: &mut [Vec<f64>],
    s: &mut [i64],
    best_cost: &mut f64,
    best_s: &mut Vec<i64>,
    leaves: &mut u64,
) {
    if depth == g.cols() {
        *leaves += 1;
        let cost: f64 = residuals[depth].iter().map(|v| v * v).sum();
        // strict improvement only: ascending point order keeps the
        // lexicographically smallest vector on exact ties
        if cost < *best_cost {
            *best_cost = cost;
            best_s.clear();
            best_s.extend_from_slice(s);
        }
        return;
    }
    let col = g.col(depth);
    for &a in points {
        let (done, rest) = residuals.split_at_mut(depth + 1);
        let src = &done[depth];
        let dst = &mut rest[0];
        for ((d, &r), &c) in dst.iter_mut().zip(src.iter()).zip(col) {
            *d = r - a as f64 * c;
        }
        s[depth] = a;
        descend(g, points, depth + 1, residuals, s, best_cost, best_s, leaves);
    }
}
