use crate::decoder::{DecodeResult, SignalSet};
use crate::linalg::RealMatrix;
use crate::{Error, Result};

/// Sphere decode of the triangular system `min ||z - R s||^2` over the
/// signal set, where `r` is square upper-triangular with nonzero diagonal.
///
/// Uses depth-first Schnorr-Euchner enumeration: at each level candidate
/// symbols are tried closest-first around the zero-forcing value, and a
/// branch is abandoned as soon as its partial cost exceeds the best full
/// candidate found so far.  `nodes_visited` counts every partial-cost
/// evaluation; ties go to the lexicographically smallest vector.
pub fn sphere_decode(r: &RealMatrix, z: &[f64], signal: &SignalSet) -> Result<DecodeResult> {
    let n = r.cols();
    if r.rows() != n || z.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "need a square triangular system, got {} x {} with {} observations",
            r.rows(),
            n,
            z.len()
        )));
    }
    let tol = f64::EPSILON * r.max_abs() * n as f64;
    for k in 0..n {
        if r.get(k, k).abs() <= tol {
            return Err(Error::SingularDiagonal { index: k });
        }
    }
    let mut bound = f64::INFINITY;
    let mut nodes = 0u64;
    let mut best: Option<(f64, Vec<i64>)> = None;
    sphere_core(r, z, signal.points(), &mut bound, 0.0, &mut nodes, &mut |cost, s| {
        let improves = match &best {
            None => true,
            Some((c, v)) => cost < *c || (cost == *c && s < v.as_slice()),
        };
        if improves {
            best = Some((cost, s.to_vec()));
        }
    });
    let (cost, s_hat) = best.expect("an unbounded search always reaches a leaf");
    Ok(DecodeResult { s_hat, cost, nodes_visited: nodes, outer_candidates: 1, per_group: None })
}

/// Schnorr-Euchner search sharing `bound` across calls.
///
/// Reads the upper-triangular part of `r` (columns define the problem size;
/// `r` may have extra rows).  Every full-length candidate whose cost does not
/// exceed the bound is passed to `emit`; partial costs strictly above the
/// bound prune their branch, so equal-cost candidates are all observed and
/// the caller can apply its own tie-breaking.
///
/// An emitted cost shrinks the bound to `cost + slack * (1 + cost)`.  With
/// `slack = 0` the search is exact; a caller whose triangular costs carry a
/// known rounding discrepancy (e.g. from a deflated factorization) passes a
/// small positive `slack` so candidates tied in true cost still reach `emit`.
pub(crate) fn sphere_core(
    r: &RealMatrix,
    z: &[f64],
    points: &[i64],
    bound: &mut f64,
    slack: f64,
    nodes: &mut u64,
    emit: &mut dyn FnMut(f64, &[i64]),
) {
    let n = r.cols();
    if n == 0 {
        if 0.0 <= *bound {
            emit(0.0, &[]);
            *bound = bound.min(slack);
        }
        return;
    }
    let mut s = vec![0i64; n];
    descend(r, z, points, n - 1, 0.0, &mut s, bound, slack, nodes, emit);
}

#[allow(clippy::too_many_arguments)]
fn descend(
    r: &RealMatrix,
    z: &[f64],
    points: &[i64],
    level: usize,
    acc: f64,
    s: &mut Vec<i64>,
    bound: &mut f64,
    slack: f64,
    nodes: &mut u64,
    emit: &mut dyn FnMut(f64, &[i64]),
) {
    let n = r.cols();
    let interference: f64 =
        (level + 1..n).map(|j| r.get(level, j) * s[j] as f64).sum();
    let target = z[level] - interference;
    let rkk = r.get(level, level);
    let center = target / rkk;
    let mut order: Vec<i64> = points.to_vec();
    order.sort_by(|&a, &b| {
        let (da, db) = ((a as f64 - center).abs(), (b as f64 - center).abs());
        da.partial_cmp(&db).unwrap().then(a.cmp(&b))
    });
    for a in order {
        *nodes += 1;
        let cost = acc + (target - rkk * a as f64).powi(2);
        if cost > *bound {
            // symbols are ordered by distance from the center, so every
            // remaining one is at least as expensive
            break;
        }
        s[level] = a;
        if level == 0 {
            emit(cost, s);
            let tightened = cost + slack * (1.0 + cost);
            if tightened < *bound {
                *bound = tightened;
            }
        } else {
            descend(r, z, points, level - 1, cost, s, bound, slack, nodes, emit);
        }
    }
}
