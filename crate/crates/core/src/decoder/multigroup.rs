use crate::decoder::sim::effective_matrix;
use crate::decoder::{candidate_cost, rank_deficient_decode, DecodeResult, SignalSet};
use crate::equiv::{group_orthogonality, EquivChannel};
use crate::linalg::RealMatrix;
use crate::{Error, Result};

/// Largest cross-group column coherence tolerated by [`multigroup_decode`].
pub const GROUP_COHERENCE_TOL: f64 = 1e-9;

/// ML decode that splits the search across the code's decoding groups.
///
/// When the column blocks of `G` belonging to different groups are mutually
/// orthogonal, the ML cost separates and each group can be decoded on its own
/// (each against the full received vector), turning one search over `q^K`
/// candidates into a sum of much smaller per-group searches.  Groups that
/// lost rank are handled by [`rank_deficient_decode`] individually.
///
/// `theta`, when given, must not mix symbols across groups.  The result sums
/// the per-group work counters and keeps the per-group results.
pub fn multigroup_decode(
    ec: &EquivChannel,
    y: &[f64],
    signal: &SignalSet,
    theta: Option<&RealMatrix>,
) -> Result<DecodeResult> {
    let coherence = group_orthogonality(ec)?;
    if coherence >= GROUP_COHERENCE_TOL {
        return Err(Error::GroupsNotOrthogonal { coherence });
    }
    if y.len() != ec.g.rows() {
        return Err(Error::DimensionMismatch(format!(
            "received vector has {} entries but G has {} rows",
            y.len(),
            ec.g.rows()
        )));
    }
    let k = ec.g.cols();
    if let Some(t) = theta {
        if t.rows() != k || t.cols() != k {
            return Err(Error::DimensionMismatch(format!(
                "generator is {} x {} but the code has {k} symbols",
                t.rows(),
                t.cols()
            )));
        }
        let group_of = symbol_groups(&ec.groups, k);
        for i in 0..k {
            for j in 0..k {
                if group_of[i] != group_of[j] && t.get(i, j) != 0.0 {
                    return Err(Error::GeneratorCouplesGroups);
                }
            }
        }
    }

    let mut s_hat = vec![0i64; k];
    let mut nodes = 0u64;
    let mut outer = 0u64;
    let mut per_group = Vec::with_capacity(ec.groups.len());
    for (block, idx) in ec.group_blocks.iter().zip(&ec.groups) {
        let theta_block = theta.map(|t| {
            RealMatrix::from_fn(idx.len(), idx.len(), |i, j| t.get(idx[i], idx[j]))
        });
        let g_eff = effective_matrix(block, theta_block.as_ref())?;
        let result = rank_deficient_decode(&g_eff, y, signal)?;
        for (pos, &sym) in idx.iter().zip(&result.s_hat) {
            s_hat[*pos] = sym;
        }
        nodes += result.nodes_visited;
        outer += result.outer_candidates;
        per_group.push(result);
    }

    let g_eff_full = effective_matrix(&ec.g, theta)?;
    let cost = candidate_cost(&g_eff_full, y, &s_hat);
    Ok(DecodeResult {
        s_hat,
        cost,
        nodes_visited: nodes,
        outer_candidates: outer,
        per_group: Some(per_group),
    })
}

/// Group index of each symbol.
fn symbol_groups(groups: &[Vec<usize>], k: usize) -> Vec<usize> {
    let mut out = vec![0usize; k];
    for (gi, idx) in groups.iter().enumerate() {
        for &i in idx {
            out[i] = gi;
        }
    }
    out
}
