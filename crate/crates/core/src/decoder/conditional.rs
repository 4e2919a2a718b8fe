use crate::decoder::sphere::sphere_core;
use crate::decoder::{candidate_cost, DecodeResult, SignalSet};
use crate::linalg::{qr_decompose, RealMatrix, DEFAULT_RANK_TOL};
use crate::{Error, Result};

/// Largest number of conditioned assignments [`rank_deficient_decode`]
/// will enumerate.
pub const DEFAULT_OUTER_BUDGET: u64 = 1 << 24;

/// Bound slack for the inner sphere searches.
///
/// The triangular cost of a candidate can drift from its true distance
/// `||y - G s||^2` by roughly the deflation tolerance of the factorization,
/// so candidates tied in true cost may differ slightly in triangular cost.
/// Keeping the shared bound this much above the best triangular cost lets
/// every such tie reach the tie-breaking comparison, which uses true costs.
const INNER_COST_SLACK: f64 = 1e-9;

/// Exact ML decode of `y = G x + w` when `G` may lack full column rank.
///
/// A column-pivoted QR factorization reveals the numerical rank `K'`.  The
/// `K - K'` symbols whose columns carry no new direction cannot be resolved
/// by any triangular search, so every assignment of them is enumerated;
/// each assignment is cancelled from the received vector and the remaining
/// `K'` symbols are sphere-decoded with a cost bound shared across all
/// assignments.  With full rank this reduces to one plain sphere search.
///
/// `outer_candidates` in the result is exactly `q^(K - K')`.
pub fn rank_deficient_decode(
    g: &RealMatrix,
    y: &[f64],
    signal: &SignalSet,
) -> Result<DecodeResult> {
    rank_deficient_decode_with_budget(g, y, signal, DEFAULT_OUTER_BUDGET)
}

/// [`rank_deficient_decode`] with an explicit budget on conditioned
/// assignments.
pub fn rank_deficient_decode_with_budget(
    g: &RealMatrix,
    y: &[f64],
    signal: &SignalSet,
    outer_budget: u64,
) -> Result<DecodeResult> {
    if y.len() != g.rows() {
        return Err(Error::DimensionMismatch(format!(
            "received vector has {} entries but G has {} rows",
            y.len(),
            g.rows()
        )));
    }
    let k = g.cols();
    let f = qr_decompose(g, true);

    // numerical rank from this factorization's pivoted diagonal
    let diag: Vec<f64> = (0..k.min(g.rows())).map(|i| f.r.get(i, i).abs()).collect();
    let d_max = diag.iter().copied().fold(0.0, f64::max);
    let threshold = DEFAULT_RANK_TOL * d_max * g.rows().max(k) as f64;
    let k_prime = diag.iter().filter(|&&d| d > threshold).count();

    let outer_len = k - k_prime;
    let outer_count = signal
        .vector_count(outer_len)
        .ok_or(Error::BudgetExceeded { candidates: u128::MAX, budget: outer_budget })?;
    if outer_count > outer_budget as u128 {
        return Err(Error::BudgetExceeded { candidates: outer_count, budget: outer_budget });
    }

    let r_a = f.r.block(0, 0, k_prime, k_prime);
    let r_b = f.r.block(0, k_prime, k_prime, outer_len);
    let z = f.q.transpose().mul_vec(y);
    let z_a = &z[..k_prime];

    let points = signal.points();
    let q = points.len() as u128;
    let mut bound = f64::INFINITY;
    let mut nodes = 0u64;
    let mut best: Option<(f64, Vec<i64>)> = None;
    let mut s_b = vec![0i64; outer_len];
    let mut z_eff = vec![0.0f64; k_prime];

    for index in 0..outer_count {
        // decode `index` into the assignment, last position fastest, so the
        // assignments run in lexicographic order
        let mut rem = index;
        for j in (0..outer_len).rev() {
            s_b[j] = points[(rem % q) as usize];
            rem /= q;
        }
        for (i, ze) in z_eff.iter_mut().enumerate() {
            let cancelled: f64 =
                (0..outer_len).map(|j| r_b.get(i, j) * s_b[j] as f64).sum();
            *ze = z_a[i] - cancelled;
        }
        sphere_core(&r_a, &z_eff, points, &mut bound, INNER_COST_SLACK, &mut nodes, &mut |_, s_a| {
            let mut full = vec![0i64; k];
            for (pos, &v) in s_a.iter().enumerate() {
                full[f.permutation[pos]] = v;
            }
            for (j, &v) in s_b.iter().enumerate() {
                full[f.permutation[k_prime + j]] = v;
            }
            // compare by true distance, not the (deflation-blurred)
            // triangular cost the search prunes with
            let cost = candidate_cost(g, y, &full);
            let improves = match &best {
                None => true,
                Some((c, v)) => cost < *c || (cost == *c && full < *v),
            };
            if improves {
                best = Some((cost, full));
            }
        });
    }

    let (cost, s_hat) = best.expect("the first assignment always yields a candidate");
    Ok(DecodeResult {
        s_hat,
        cost,
        nodes_visited: nodes,
        outer_candidates: outer_count as u64,
        per_group: None,
    })
}
