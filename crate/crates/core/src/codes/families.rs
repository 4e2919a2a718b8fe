use num_complex::Complex64;

use super::WeightSet;
use crate::linalg::{kron, ComplexMatrix};
use crate::{Error, Result};

const I: Complex64 = Complex64::new(0.0, 1.0);

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn pauli_x() -> ComplexMatrix {
    ComplexMatrix::from_rows(&[vec![c(0.0, 0.0), c(1.0, 0.0)], vec![c(1.0, 0.0), c(0.0, 0.0)]])
}

fn pauli_z() -> ComplexMatrix {
    ComplexMatrix::from_rows(&[vec![c(1.0, 0.0), c(0.0, 0.0)], vec![c(0.0, 0.0), c(-1.0, 0.0)]])
}

/// `i X Z`, the third unitary-Hermitian generator.
fn pauli_y() -> ComplexMatrix {
    pauli_x().mul(&pauli_z()).scale(I)
}

/// The `4^m` unitary-Hermitian matrices of order `2^m`: all `m`-fold
/// Kronecker products of `{I, X, iXZ, Z}`, enumerated with the first factor
/// varying slowest.  The first element is always the identity.
pub fn pauli_hermitian_basis(m: usize) -> Vec<ComplexMatrix> {
    let factors = [ComplexMatrix::identity(2), pauli_x(), pauli_y(), pauli_z()];
    let mut basis = vec![ComplexMatrix::identity(1)];
    for _ in 0..m {
        basis = basis
            .iter()
            .flat_map(|a| factors.iter().map(|f| kron(a, f)))
            .collect();
    }
    basis
}

/// The nine unitary-Hermitian `3 x 3` basis matrices.  The first element is
/// the identity.
pub fn herm3_basis() -> Vec<ComplexMatrix> {
    let z = c(0.0, 0.0);
    let o = c(1.0, 0.0);
    let rows = |r: [[Complex64; 3]; 3]| {
        ComplexMatrix::from_rows(&[r[0].to_vec(), r[1].to_vec(), r[2].to_vec()])
    };
    vec![
        ComplexMatrix::identity(3),
        rows([[o, z, z], [z, -o, z], [z, z, o]]),
        rows([[o, z, z], [z, o, z], [z, z, -o]]),
        rows([[z, o, z], [o, z, z], [z, z, o]]),
        rows([[z, I, z], [-I, z, z], [z, z, o]]),
        rows([[z, z, o], [z, o, z], [o, z, z]]),
        rows([[z, z, I], [z, o, z], [-I, z, z]]),
        rows([[o, z, z], [z, z, o], [z, o, z]]),
        rows([[o, z, z], [z, z, I], [z, -I, z]]),
    ]
}

/// A unitary-Hermitian basis of order `n`, available for `n = 2^m` and
/// `n = 3`.
pub fn unitary_hermitian_basis(n: usize) -> Result<Vec<ComplexMatrix>> {
    if n == 3 {
        return Ok(herm3_basis());
    }
    if n >= 1 && n.is_power_of_two() {
        return Ok(pauli_hermitian_basis(n.trailing_zeros() as usize));
    }
    Err(Error::UnsupportedFamily(format!(
        "no unitary-Hermitian basis of order {n}; supported orders are powers of two and 3"
    )))
}

/// The standard Hermitian basis of order `n`: the `n` diagonal units, then
/// the symmetric pairs `E_ij + E_ji`, then the antisymmetric pairs
/// `i (E_ij - E_ji)`, pairs ordered column-major with `i < j`.
pub fn standard_hermitian_basis(n: usize) -> Vec<ComplexMatrix> {
    let mut basis = Vec::with_capacity(n * n);
    for i in 0..n {
        let mut a = ComplexMatrix::zeros(n, n);
        a.set(i, i, c(1.0, 0.0));
        basis.push(a);
    }
    for j in 0..n {
        for i in 0..j {
            let mut a = ComplexMatrix::zeros(n, n);
            a.set(i, j, c(1.0, 0.0));
            a.set(j, i, c(1.0, 0.0));
            basis.push(a);
        }
    }
    for j in 0..n {
        for i in 0..j {
            let mut a = ComplexMatrix::zeros(n, n);
            a.set(i, j, I);
            a.set(j, i, -I);
            basis.push(a);
        }
    }
    basis
}

/// Which Hermitian basis backs a [`herm_basis_code`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HermFlavor {
    /// Unitary-Hermitian basis (orders `2^m` and 3 only).
    UnitaryHermitian,
    /// Standard Hermitian basis, available for every order; spans the same
    /// space, so rank behavior is identical.
    Standard,
}

/// Single-group code whose `n^2` weight matrices form a basis of the
/// Hermitian matrices of order `n`; `T = N = n`.
pub fn herm_basis_code(n: usize, flavor: HermFlavor) -> Result<WeightSet> {
    if n == 0 {
        return Err(Error::UnsupportedFamily("order must be at least 1".into()));
    }
    let (name, matrices) = match flavor {
        HermFlavor::UnitaryHermitian => (format!("herm({n})"), unitary_hermitian_basis(n)?),
        HermFlavor::Standard => (format!("herm-std({n})"), standard_hermitian_basis(n)),
    };
    Ok(WeightSet {
        name,
        t: n,
        n,
        k: n * n,
        matrices,
        groups: vec![(0..n * n).collect()],
    })
}

/// The rate-17/8 fast-group-decodable code on four antennas: one Hermitian
/// generator (the identity) and sixteen skew-Hermitian generators built from
/// Kronecker products of `I`, `X = [[0,1],[1,0]]`, `Z = diag(1,-1)` and `ZX`.
/// Decoding groups are `{0}` and `{1..17}`.
pub fn fgd_ren_code() -> WeightSet {
    let i2 = ComplexMatrix::identity(2);
    let x = pauli_x();
    let z = pauli_z();
    let zx = z.mul(&x);
    let matrices = vec![
        kron(&i2, &i2),
        kron(&z, &i2).scale(I),
        kron(&zx, &i2),
        kron(&x, &z).scale(I),
        kron(&x, &zx),
        kron(&x, &x).scale(I),
        kron(&i2, &zx),
        kron(&z, &x).scale(I),
        kron(&zx, &x),
        kron(&zx, &zx).scale(I),
        kron(&zx, &z),
        kron(&x, &i2).scale(I),
        kron(&z, &zx),
        kron(&i2, &x).scale(I),
        kron(&z, &z).scale(I),
        kron(&i2, &i2).scale(I),
        kron(&i2, &z).scale(I),
    ];
    WeightSet {
        name: "fgd-ren".into(),
        t: 4,
        n: 4,
        k: 17,
        matrices,
        groups: vec![vec![0], (1..17).collect()],
    }
}

/// Two-group delay-optimal code on `2n` antennas with `n^2 + 1` symbols per
/// group: group one is `diag(i B_l, I_n)` for each unitary-Hermitian basis
/// matrix `B_l` plus `diag(i B_1, -I_n)`; group two mirrors it on the lower
/// block.  Requires a unitary-Hermitian basis of order `n`.
pub fn natarajan_g2_code(n: usize) -> Result<WeightSet> {
    let basis = unitary_hermitian_basis(n)?;
    let embed = |upper: &ComplexMatrix, lower: &ComplexMatrix| {
        ComplexMatrix::from_fn(2 * n, 2 * n, |i, j| match (i < n, j < n) {
            (true, true) => upper.get(i, j),
            (false, false) => lower.get(i - n, j - n),
            _ => Complex64::ZERO,
        })
    };
    let id = ComplexMatrix::identity(n);
    let neg_id = id.scale(c(-1.0, 0.0));
    let mut matrices = Vec::with_capacity(2 * (n * n + 1));
    for b in &basis {
        matrices.push(embed(&b.scale(I), &id));
    }
    matrices.push(embed(&basis[0].scale(I), &neg_id));
    for b in &basis {
        matrices.push(embed(&id, &b.scale(I)));
    }
    matrices.push(embed(&neg_id, &basis[0].scale(I)));
    let per_group = n * n + 1;
    Ok(WeightSet {
        name: format!("natarajan-g2({n})"),
        t: 2 * n,
        n: 2 * n,
        k: 2 * per_group,
        matrices,
        groups: vec![(0..per_group).collect(), (per_group..2 * per_group).collect()],
    })
}

/// One decoding group of the rate `N - (N^2-1)/T` two-group family, in its
/// analyzed basis: a semi-unitary top block, a Hermitian middle block basis,
/// and standard units in the free bottom block.  `t` must be even and at
/// least `2n`; the group carries `t*n - n^2 + 1` symbols.
pub fn ryggz_basis_set(n: usize, t: usize) -> Result<WeightSet> {
    if n == 0 || t % 2 != 0 || t < 2 * n {
        return Err(Error::UnsupportedFamily(format!(
            "block length {t} must be even and at least 2n = {}",
            2 * n
        )));
    }
    let half = t / 2;
    let free = half - n;
    let k = t * n - n * n + 1;
    let mut matrices = Vec::with_capacity(k);

    // [F_1; 0; 0] with F_1 = [I_n; 0] of size t/2 x n
    matrices.push(ComplexMatrix::from_fn(t, n, |i, j| {
        if i == j {
            Complex64::ONE
        } else {
            Complex64::ZERO
        }
    }));
    // [0; B_l; 0] over a Hermitian basis of order n
    for b in standard_hermitian_basis(n) {
        matrices.push(ComplexMatrix::from_fn(t, n, |i, j| {
            if (half..half + n).contains(&i) {
                b.get(i - half, j)
            } else {
                Complex64::ZERO
            }
        }));
    }
    // [0; 0; E_l]: real then imaginary units of the (t/2 - n) x n bottom
    // block, enumerated column-major
    for unit in [Complex64::ONE, I] {
        for col in 0..n {
            for row in 0..free {
                let mut a = ComplexMatrix::zeros(t, n);
                a.set(half + n + row, col, unit);
                matrices.push(a);
            }
        }
    }
    debug_assert_eq!(matrices.len(), k);
    Ok(WeightSet {
        name: format!("ryggz-basis({n},{t})"),
        t,
        n,
        k,
        matrices,
        groups: vec![(0..k).collect()],
    })
}
