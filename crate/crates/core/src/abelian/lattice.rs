//! Sublattices of `Z^n` given by spanning columns.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::{smith_normal_form, IntMatrix};

/// Basis (as columns) of the integer null space `{x : m x = 0}`.
pub fn null_lattice(m: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(m);
    let r = snf.rank();
    let cols: Vec<usize> = (r..m.cols()).collect();
    snf.v.select_columns(&cols)
}

/// Basis (as columns) of the lattice spanned by the columns of `m`.
pub fn span_basis(m: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(m);
    let r = snf.rank();
    let mv = m * &snf.v;
    mv.select_columns(&(0..r).collect::<Vec<_>>())
}

/// Some integer `c` with `m c = b`, if one exists.
pub fn solve(m: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    let snf = smith_normal_form(m);
    let r = snf.rank();
    let w = snf.u.mul_vec(b);
    let diag = snf.d.diagonal();
    let mut z = vec![BigInt::zero(); m.cols()];
    for (i, wi) in w.iter().enumerate() {
        if i < r {
            let (q, rem) = wi.div_rem(&diag[i]);
            if !rem.is_zero() {
                return None;
            }
            z[i] = q;
        } else if !wi.is_zero() {
            return None;
        }
    }
    Some(snf.v.mul_vec(&z))
}

pub fn contains(m: &IntMatrix, b: &[BigInt]) -> bool {
    solve(m, b).is_some()
}

/// Coordinates of each column of `vectors` in the basis `basis`
/// (full column rank). `None` if some vector lies outside the lattice.
pub fn coordinates(basis: &IntMatrix, vectors: &IntMatrix) -> Option<IntMatrix> {
    let cols = vectors
        .columns()
        .iter()
        .map(|v| solve(basis, v))
        .collect::<Option<Vec<_>>>()?;
    Some(IntMatrix::from_columns(basis.cols(), &cols))
}
