//! Exact linear algebra over the rationals.
//!
//! The base field is fixed to ℚ with arbitrary-precision arithmetic. Matrices
//! are dense and row-major; subspaces are kept in canonical reduced
//! row-echelon form so that equality of subspaces is equality of
//! representations.

mod matrix;
mod scalar;
mod subspace;

pub use matrix::{LinAlgError, Matrix};
pub use scalar::{format_scalar, frac, int, parse_scalar, Scalar, ScalarParseError};
pub use subspace::Subspace;

/// Dense column vector with exact rational entries.
pub type Vector = Vec<Scalar>;

/// Adds `b` into `a` entrywise. Panics on length mismatch.
pub fn vec_add_assign(a: &mut [Scalar], b: &[Scalar]) {
    assert_eq!(a.len(), b.len());
    for (x, y) in a.iter_mut().zip(b) {
        *x += y;
    }
}

/// Returns `a + c·b`.
pub fn vec_axpy(a: &[Scalar], c: &Scalar, b: &[Scalar]) -> Vector {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x + &(c * y)).collect()
}

/// Scales a vector by `c`.
pub fn vec_scale(a: &[Scalar], c: &Scalar) -> Vector {
    a.iter().map(|x| x * c).collect()
}

/// True when every entry is zero.
pub fn vec_is_zero(a: &[Scalar]) -> bool {
    use num::Zero;
    a.iter().all(Scalar::is_zero)
}

/// All-zero vector of length `n`.
pub fn vec_zero(n: usize) -> Vector {
    use num::Zero;
    vec![Scalar::zero(); n]
}

/// Standard basis vector `e_i` of length `n`.
pub fn vec_unit(n: usize, i: usize) -> Vector {
    use num::{One, Zero};
    let mut v = vec![Scalar::zero(); n];
    v[i] = Scalar::one();
    v
}
