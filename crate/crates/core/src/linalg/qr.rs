use super::matrix::{ComplexMatrix, RealMatrix};

/// Default relative tolerance for rank decisions.
pub const DEFAULT_RANK_TOL: f64 = 1e-9;

/// Residual threshold (relative to the largest initial column norm) below
/// which a pivot column is treated as exactly dependent and deflated.
const DEFLATION_TOL: f64 = 1e-12;

/// QR factorization `A · P = Q · R` with orthogonal `Q` (full, `m x m`),
/// upper-triangular `R` (`m x n`, positive diagonal on accepted pivots), and
/// `permutation[k]` giving the original index of the column placed at
/// position `k` (identity when pivoting is disabled).
///
/// A pivot column that is numerically dependent on the columns before it is
/// *deflated*: its residual is dropped, its diagonal entry is zero, and its
/// row of `R` stays zero for all later columns.  This keeps the factorization
/// exact while making rank deficiencies visible as whole zero rows.
#[derive(Debug, Clone)]
pub struct QrFactorization {
    pub q: RealMatrix,
    pub r: RealMatrix,
    pub permutation: Vec<usize>,
}

struct QrCore {
    r: RealMatrix,
    permutation: Vec<usize>,
    /// Row slot of each accepted pivot, in acceptance order.
    slots: Vec<usize>,
    /// Accepted orthonormal columns, parallel to `slots`.
    basis: Vec<Vec<f64>>,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

fn axpy(y: &mut [f64], alpha: f64, x: &[f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

/// Modified Gram-Schmidt with re-orthogonalization, optional column pivoting,
/// and deflation of dependent pivot columns.
fn qr_core(a: &RealMatrix, pivoting: bool) -> QrCore {
    let (m, n) = (a.rows(), a.cols());
    let mut work: Vec<Vec<f64>> = (0..n).map(|j| a.col(j).to_vec()).collect();
    let mut order: Vec<usize> = (0..n).collect();
    let mut r = RealMatrix::zeros(m, n);
    let mut slots = Vec::new();
    let mut basis: Vec<Vec<f64>> = Vec::new();
    let mut used = vec![false; m];
    let scale = (0..n).map(|j| norm(a.col(j))).fold(0.0, f64::max);

    for k in 0..n {
        if pivoting {
            let jmax = (k..n)
                .max_by(|&x, &y| {
                    norm(&work[order[x]]).partial_cmp(&norm(&work[order[y]])).unwrap()
                })
                .unwrap();
            if jmax != k {
                order.swap(k, jmax);
                for i in 0..m {
                    let (vi, vj) = (r.get(i, k), r.get(i, jmax));
                    r.set(i, k, vj);
                    r.set(i, jmax, vi);
                }
            }
        }
        let mut col = std::mem::take(&mut work[order[k]]);
        // one re-orthogonalization pass against the accepted basis
        for (q, &s) in basis.iter().zip(&slots) {
            let c = dot(q, &col);
            r.set(s, k, r.get(s, k) + c);
            axpy(&mut col, -c, q);
        }
        let nrm = norm(&col);
        if nrm > DEFLATION_TOL * scale {
            let slot = if k < m && !used[k] {
                k
            } else {
                (0..m).find(|&i| !used[i]).expect("more accepted pivots than rows")
            };
            used[slot] = true;
            r.set(slot, k, nrm);
            for v in col.iter_mut() {
                *v /= nrm;
            }
            for (j, &oj) in order.iter().enumerate().skip(k + 1) {
                let c = dot(&col, &work[oj]);
                r.set(slot, j, c);
                axpy(&mut work[oj], -c, &col);
            }
            slots.push(slot);
            basis.push(col);
        }
        // deflated: residual dropped, row slot stays zero
    }
    QrCore { r, permutation: order, slots, basis }
}

/// Completes an orthonormal set to a full basis of `R^m`, deterministically,
/// by orthogonalizing standard basis vectors.
fn complete_basis(m: usize, basis: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let mut full: Vec<Vec<f64>> = basis.to_vec();
    let mut fillers = Vec::new();
    let mut e = 0;
    while full.len() < m {
        assert!(e < m, "failed to complete orthonormal basis");
        let mut v = vec![0.0; m];
        v[e] = 1.0;
        for _ in 0..2 {
            for q in &full {
                let c = dot(q, &v);
                axpy(&mut v, -c, q);
            }
        }
        let nrm = norm(&v);
        if nrm > 1e-8 {
            for x in v.iter_mut() {
                *x /= nrm;
            }
            fillers.push(v.clone());
            full.push(v);
        }
        e += 1;
    }
    fillers
}

/// QR factorization with the deflating pivot rule described on
/// [`QrFactorization`].
///
/// With `pivoting` enabled, columns are reordered by largest residual norm
/// (so the diagonal of `r` is non-increasing in magnitude); without it the
/// original column order is kept and rank deficiencies show up as zero rows
/// exactly where dependent columns sit.
pub fn qr_decompose(a: &RealMatrix, pivoting: bool) -> QrFactorization {
    let m = a.rows();
    let core = qr_core(a, pivoting);
    let mut q = RealMatrix::zeros(m, m);
    let mut free: Vec<usize> = (0..m).filter(|i| !core.slots.contains(i)).collect();
    free.sort_unstable();
    for (qcol, &slot) in core.basis.iter().zip(&core.slots) {
        for (i, &v) in qcol.iter().enumerate() {
            q.set(i, slot, v);
        }
    }
    for (qcol, &slot) in complete_basis(m, &core.basis).iter().zip(&free) {
        for (i, &v) in qcol.iter().enumerate() {
            q.set(i, slot, v);
        }
    }
    QrFactorization { q, r: core.r, permutation: core.permutation }
}

/// Numerical rank: the number of pivoted-QR diagonal magnitudes `d_i`
/// exceeding `rel_tol * d_max * max(rows, cols)`.
pub fn numerical_rank(a: &RealMatrix, rel_tol: f64) -> usize {
    let core = qr_core(a, true);
    let diag: Vec<f64> = core.slots.iter().map(|&s| core.r.get(s, s).abs()).collect();
    let dmax = diag.iter().copied().fold(0.0, f64::max);
    let threshold = rel_tol * dmax * a.rows().max(a.cols()) as f64;
    diag.iter().filter(|&&d| d > threshold).count()
}

/// Dimension of the numerical kernel: `cols - numerical_rank`.
pub fn real_nullity(a: &RealMatrix, rel_tol: f64) -> usize {
    a.cols() - numerical_rank(a, rel_tol)
}

/// Rank of a complex matrix, computed on its real representation (whose rank
/// is exactly twice the complex rank).
pub fn complex_rank(a: &ComplexMatrix, rel_tol: f64) -> usize {
    let r = numerical_rank(&a.realify(), rel_tol);
    debug_assert!(r % 2 == 0, "real representation must have even rank");
    r / 2
}
