//! Built-in algebras: `sl2`, `sl3`, their Killing forms, and the coadjoint
//! extension family on `𝔰 ⊕ 𝔰*`.
//!
//! All structure constants are derived from exact matrix commutators at
//! construction time — nothing is hand-keyed, so a typo in a constant table
//! cannot silently corrupt the generators.

use crate::algebra::{HomLieAlgebra, QuadraticHomLieAlgebra, StructureTensor};
use crate::extension::{self, DoubleExtensionData};
use crate::linalg::{int, Matrix, Scalar, Vector};
use crate::verify;
use num::Zero;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum CatalogError {
    #[error("unsupported rank {0}: only sl2 and sl3 are built in")]
    UnsupportedRank(usize),
    #[error("mu index {index} out of range for dimension {dim} (indices are 0-based)")]
    MuIndexOutOfRange { index: usize, dim: usize },
    #[error("mu entry ({i},{j},{k}) must have strictly increasing indices")]
    MuIndicesNotIncreasing { i: usize, j: usize, k: usize },
    #[error("duplicate mu entry for ({i},{j},{k})")]
    DuplicateMuEntry { i: usize, j: usize, k: usize },
    #[error(transparent)]
    Extension(#[from] crate::extension::ExtensionError),
}

/// The defining basis matrices of `sl_n` in the fixed catalog order:
/// `(e, f, h)` for `sl2` and
/// `(e₁₁−e₂₂, e₂₂−e₃₃, e₁₂, e₁₃, e₂₁, e₂₃, e₃₁, e₃₂)` for `sl3`.
fn basis_matrices(n: usize) -> Result<Vec<Matrix>, CatalogError> {
    let unit = |size: usize, r: usize, c: usize| {
        Matrix::from_fn(size, size, |i, j| if (i, j) == (r, c) { int(1) } else { int(0) })
    };
    match n {
        2 => Ok(vec![
            unit(2, 0, 1),                      // e
            unit(2, 1, 0),                      // f
            unit(2, 0, 0).sub(&unit(2, 1, 1)),  // h
        ]),
        3 => Ok(vec![
            unit(3, 0, 0).sub(&unit(3, 1, 1)), // x₁
            unit(3, 1, 1).sub(&unit(3, 2, 2)), // x₂
            unit(3, 0, 1),                     // x₃
            unit(3, 0, 2),                     // x₄
            unit(3, 1, 0),                     // x₅
            unit(3, 1, 2),                     // x₆
            unit(3, 2, 0),                     // x₇
            unit(3, 2, 1),                     // x₈
        ]),
        other => Err(CatalogError::UnsupportedRank(other)),
    }
}

fn labels(n: usize) -> Vec<String> {
    match n {
        2 => vec!["e".into(), "f".into(), "h".into()],
        _ => (1..=8).map(|i| format!("x{i}")).collect(),
    }
}

/// `sl_n` (n = 2 or 3) as a Hom-Lie algebra with identity twist. Structure
/// constants are computed by expanding each commutator `[b_i, b_j]` in the
/// basis, via an exact linear solve on flattened matrices.
pub fn sl(n: usize) -> Result<HomLieAlgebra, CatalogError> {
    let basis = basis_matrices(n)?;
    let dim = basis.len();
    let flatten = |m: &Matrix| -> Vector {
        let mut out = Vec::with_capacity(n * n);
        for i in 0..n {
            out.extend(m.row(i).iter().cloned());
        }
        out
    };
    // columns = flattened basis matrices; solving expresses a matrix in the basis
    let basis_cols = Matrix::from_rows(basis.iter().map(&flatten).collect::<Vec<_>>()).transpose();
    let mut tensor = StructureTensor::zero(dim);
    for i in 0..dim {
        for j in i + 1..dim {
            let commutator = basis[i].mul(&basis[j]).sub(&basis[j].mul(&basis[i]));
            let coords = basis_cols
                .solve(&flatten(&commutator))
                .expect("commutators of sl_n basis matrices stay in sl_n");
            tensor.set_bracket(i, j, coords);
        }
    }
    let algebra = HomLieAlgebra::new(tensor, Matrix::identity(dim))
        .expect("identity twist is square")
        .with_labels(labels(n))
        .expect("label count matches dimension");
    Ok(algebra)
}

/// Killing form `K(x_i, x_j) = tr(ad x_i ∘ ad x_j)` of any algebra.
pub fn killing(g: &HomLieAlgebra) -> Matrix {
    g.killing_form()
}

/// Completes free entries on strictly increasing triples `(i, j, k)` into a
/// fully alternating rank-3 tensor `m(i,j,k) = μ(x_i, x_j)(x_k)`, stored as
/// `mu[k][(i,j)]`. Alternation is exactly cyclicity plus antisymmetry, so the
/// result always satisfies the cyclicity hypothesis.
pub fn alternating_mu(
    dim: usize,
    free: &[(usize, usize, usize, Scalar)],
) -> Result<Vec<Matrix>, CatalogError> {
    let mut mu = vec![Matrix::zero(dim, dim); dim];
    let mut seen = std::collections::BTreeSet::new();
    for (i, j, k, value) in free {
        let (i, j, k) = (*i, *j, *k);
        for idx in [i, j, k] {
            if idx >= dim {
                return Err(CatalogError::MuIndexOutOfRange { index: idx, dim });
            }
        }
        if !(i < j && j < k) {
            return Err(CatalogError::MuIndicesNotIncreasing { i, j, k });
        }
        if !seen.insert((i, j, k)) {
            return Err(CatalogError::DuplicateMuEntry { i, j, k });
        }
        if value.is_zero() {
            continue;
        }
        // even permutations of (i, j, k) get +value, odd ones −value
        for (a, b, c, sign) in [
            (i, j, k, 1),
            (j, k, i, 1),
            (k, i, j, 1),
            (j, i, k, -1),
            (i, k, j, -1),
            (k, j, i, -1),
        ] {
            mu[c][(a, b)] = value * int(sign);
        }
    }
    Ok(mu)
}

/// The coadjoint extension family: the quadratic Hom-Lie algebra on
/// `𝔰 ⊕ 𝔰*` for `𝔰 = sl_n`, with `ϕ` the Killing form, `φ = τ = 0`,
/// `𝔥 = 0`, bracket
/// `[x+α, y+β] = [x,y]_𝔰 + μ(x,y) + ad*(x)(β) − ad*(y)(α)`,
/// twist `T(x+α) = K(x, ·)` and metric `B(x+α, y+β) = α(y) + β(x)`.
///
/// `mu_free` lists the free coefficients of the alternating tensor `μ` on
/// 0-based triples `i < j < k`; all omitted coefficients are zero.
pub fn coadjoint_extension(
    n: usize,
    mu_free: &[(usize, usize, usize, Scalar)],
) -> Result<QuadraticHomLieAlgebra, CatalogError> {
    let d = coadjoint_extension_data(n, mu_free)?;
    let s = sl(n)?;
    let dim = s.dim();
    let built = extension::build(&d)?;
    let mut label_list: Vec<String> = s.labels().unwrap_or_default().to_vec();
    label_list.extend((1..=dim).map(|i| format!("a{i}")));
    let gram = built.gram().clone();
    let algebra = built
        .into_algebra()
        .with_labels(label_list)
        .expect("2·dim labels for a 2·dim algebra");
    Ok(QuadraticHomLieAlgebra::new(algebra, gram).expect("metric unchanged by relabeling"))
}

/// The validated extension input for [`coadjoint_extension`], useful when
/// the caller wants the data itself (for hypothesis reports or round trips).
pub fn coadjoint_extension_data(
    n: usize,
    mu_free: &[(usize, usize, usize, Scalar)],
) -> Result<DoubleExtensionData, CatalogError> {
    let s = sl(n)?;
    let dim = s.dim();
    let varphi = killing(&s);
    let mu = alternating_mu(dim, mu_free)?;
    let d = DoubleExtensionData::new(
        s.tensor().clone(),
        StructureTensor::zero(0),
        Matrix::zero(0, 0),
        Matrix::zero(0, 0),
        Matrix::zero(0, dim),
        varphi,
        vec![Matrix::zero(0, 0); dim],
        vec![Matrix::zero(dim, 0); dim],
        mu,
    )?;
    Ok(d)
}

/// The untwisted Jacobi cyclic sum
/// `[e_i,[e_j,e_k]] + [e_j,[e_k,e_i]] + [e_k,[e_i,e_j]]`, evaluated exactly.
/// Zero on every triple iff the algebra is Lie.
pub fn cyclic_defect(g: &HomLieAlgebra, i: usize, j: usize, k: usize) -> Vector {
    verify::classical_jacobi_defect(g, i, j, k)
}
