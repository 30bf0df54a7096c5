//! Exhaustive, exact verification of the defining axioms.
//!
//! All identities are multilinear, so checking them on basis tuples proves
//! them on the whole space. Dimensions here are small enough (≤ ~64) that
//! cubic basis loops with exact arithmetic are cheap, and exhaustion yields
//! certificates instead of confidence.

use crate::algebra::{HomLieAlgebra, QuadraticHomLieAlgebra};
use crate::linalg::{vec_add_assign, vec_is_zero, vec_unit, Matrix, Scalar, Vector};
use crate::report::{AlgebraReport, Check, MetricReport};
use num::Zero;

/// `[x, x] = 0` under actual evaluation, plus `[e_i,e_j] + [e_j,e_i] = 0`.
///
/// True by construction of the structure tensor; kept as a regression guard
/// on the evaluator itself.
pub fn check_skew(g: &HomLieAlgebra) -> Check {
    let n = g.dim();
    for i in 0..n {
        let e_i = vec_unit(n, i);
        let diag = g.bracket(&e_i, &e_i);
        if !vec_is_zero(&diag) {
            return Check::fail(vec![i, i], &diag);
        }
        for j in i + 1..n {
            let e_j = vec_unit(n, j);
            let mut sum = g.bracket(&e_i, &e_j);
            vec_add_assign(&mut sum, &g.bracket(&e_j, &e_i));
            if !vec_is_zero(&sum) {
                return Check::fail(vec![i, j], &sum);
            }
        }
    }
    Check::pass()
}

/// Defect of the twisted Jacobi identity at one basis triple:
/// `[T e_i,[e_j,e_k]] + [T e_j,[e_k,e_i]] + [T e_k,[e_i,e_j]]`.
pub fn homlie_jacobi_defect(g: &HomLieAlgebra, i: usize, j: usize, k: usize) -> Vector {
    let n = g.dim();
    let (e_i, e_j, e_k) = (vec_unit(n, i), vec_unit(n, j), vec_unit(n, k));
    let mut defect = g.bracket(&g.apply_twist(&e_i), &g.bracket(&e_j, &e_k));
    vec_add_assign(&mut defect, &g.bracket(&g.apply_twist(&e_j), &g.bracket(&e_k, &e_i)));
    vec_add_assign(&mut defect, &g.bracket(&g.apply_twist(&e_k), &g.bracket(&e_i, &e_j)));
    defect
}

/// Defect of the untwisted Jacobi identity at one basis triple.
pub fn classical_jacobi_defect(g: &HomLieAlgebra, i: usize, j: usize, k: usize) -> Vector {
    let n = g.dim();
    let (e_i, e_j, e_k) = (vec_unit(n, i), vec_unit(n, j), vec_unit(n, k));
    let mut defect = g.bracket(&e_i, &g.bracket(&e_j, &e_k));
    vec_add_assign(&mut defect, &g.bracket(&e_j, &g.bracket(&e_k, &e_i)));
    vec_add_assign(&mut defect, &g.bracket(&e_k, &g.bracket(&e_i, &e_j)));
    defect
}

/// Twisted Jacobi identity `[T x,[y,z]] + [T y,[z,x]] + [T z,[x,y]] = 0`.
///
/// The cyclic sum is alternating in its three arguments (using only
/// bilinearity and antisymmetry of the bracket, which hold by construction),
/// so triples `i < j < k` are exhaustive.
pub fn check_homlie_jacobi(g: &HomLieAlgebra) -> Check {
    let n = g.dim();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let defect = homlie_jacobi_defect(g, i, j, k);
                if !vec_is_zero(&defect) {
                    return Check::fail(vec![i, j, k], &defect);
                }
            }
        }
    }
    Check::pass()
}

/// Untwisted Jacobi identity — the same cyclic sum with `T` replaced by the
/// identity map.
pub fn check_classical_jacobi(g: &HomLieAlgebra) -> Check {
    let n = g.dim();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let defect = classical_jacobi_defect(g, i, j, k);
                if !vec_is_zero(&defect) {
                    return Check::fail(vec![i, j, k], &defect);
                }
            }
        }
    }
    Check::pass()
}

/// Membership of the twist in the centroid: `T[x,y] = [T x, y]`, and
/// independently `T[x,y] = [x, T y]` (equivalent given antisymmetry, but
/// asserted on its own). Both identities must also hold with `y = x`, which
/// reduces to `[T x, x] = 0`; that condition is not implied by the
/// off-diagonal pairs, so the diagonal is checked explicitly.
pub fn check_centroid(g: &HomLieAlgebra) -> Check {
    let n = g.dim();
    for i in 0..n {
        let e_i = vec_unit(n, i);
        let t_i = g.apply_twist(&e_i);
        let diagonal = g.bracket(&t_i, &e_i);
        if !vec_is_zero(&diagonal) {
            return Check::fail(vec![i, i], &diagonal);
        }
        for j in i + 1..n {
            let e_j = vec_unit(n, j);
            let t_bracket = g.apply_twist(&g.bracket(&e_i, &e_j));
            let mut left = g.bracket(&t_i, &e_j);
            for (a, b) in left.iter_mut().zip(&t_bracket) {
                *a -= b;
            }
            if !vec_is_zero(&left) {
                return Check::fail(vec![i, j], &left);
            }
            let mut right = g.bracket(&e_i, &g.apply_twist(&e_j));
            for (a, b) in right.iter_mut().zip(&t_bracket) {
                *a -= b;
            }
            if !vec_is_zero(&right) {
                return Check::fail(vec![i, j], &right);
            }
        }
    }
    Check::pass()
}

/// The four metric sub-checks against an explicit Gram matrix: symmetry,
/// nondegeneracy, invariance `B([x,y],z) = B(x,[y,z])`, and twist
/// self-adjointness `Tᵀ·G = G·T`.
pub fn check_metric(g: &HomLieAlgebra, gram: &Matrix) -> MetricReport {
    let n = g.dim();
    assert_eq!((gram.rows(), gram.cols()), (n, n));

    let mut symmetric = Check::pass();
    'sym: for i in 0..n {
        for j in 0..i {
            let d = &gram[(i, j)] - &gram[(j, i)];
            if !d.is_zero() {
                symmetric = Check::fail(vec![i, j], &[d]);
                break 'sym;
            }
        }
    }

    let nondegenerate = if gram.rank() == n {
        Check::pass()
    } else {
        // witness: a nonzero radical vector
        let radical = crate::linalg::Subspace::kernel(gram);
        let v = radical.basis().into_iter().next().unwrap_or_default();
        Check {
            passed: false,
            witness: Some(crate::report::Witness {
                indices: vec![],
                defect: v.iter().map(crate::linalg::format_scalar).collect(),
            }),
        }
    };

    let bilinear = |x: &[Scalar], y: &[Scalar]| -> Scalar {
        let gy = gram.apply(y);
        x.iter().zip(&gy).map(|(a, b)| a * b).sum()
    };
    let mut invariant = Check::pass();
    'inv: for i in 0..n {
        let e_i = vec_unit(n, i);
        for j in 0..n {
            let e_j = vec_unit(n, j);
            let bracket_ij = g.bracket(&e_i, &e_j);
            for k in 0..n {
                let e_k = vec_unit(n, k);
                let d = bilinear(&bracket_ij, &e_k) - bilinear(&e_i, &g.bracket(&e_j, &e_k));
                if !d.is_zero() {
                    invariant = Check::fail(vec![i, j, k], &[d]);
                    break 'inv;
                }
            }
        }
    }

    let adjoint_gap = g.twist().transpose().mul(gram).sub(&gram.mul(g.twist()));
    let mut twist_self_adjoint = Check::pass();
    'adj: for i in 0..n {
        for j in 0..n {
            if !adjoint_gap[(i, j)].is_zero() {
                twist_self_adjoint = Check::fail(vec![i, j], &[adjoint_gap[(i, j)].clone()]);
                break 'adj;
            }
        }
    }

    MetricReport {
        symmetric,
        nondegenerate,
        invariant,
        twist_self_adjoint,
    }
}

/// Smallest `ℓ` with `T^ℓ = 0`, or `None` when `T` is not nilpotent.
/// Powers are bounded by the dimension, after which nilpotence is impossible.
pub fn nilpotency_index(t: &Matrix) -> Option<usize> {
    assert!(t.is_square());
    let n = t.rows();
    let mut power = Matrix::identity(n);
    for ell in 0..=n {
        if power.is_zero() {
            return Some(ell);
        }
        power = power.mul(t);
    }
    None
}

fn report_for(g: &HomLieAlgebra, metric: Option<MetricReport>) -> AlgebraReport {
    let classical_jacobi = check_classical_jacobi(g);
    let is_lie = classical_jacobi.passed;
    let nilpotency = nilpotency_index(g.twist());
    let rank = g.twist().rank();
    AlgebraReport {
        dim: g.dim(),
        skew: check_skew(g),
        homlie_jacobi: check_homlie_jacobi(g),
        classical_jacobi,
        centroid: check_centroid(g),
        metric,
        is_lie,
        is_perfect: g.derived_subalgebra().is_full(),
        has_trivial_center: g.center().is_zero(),
        twist_nilpotent: nilpotency.is_some(),
        nilpotency_index: nilpotency,
        twist_kernel_dim: g.dim() - rank,
        twist_rank: rank,
    }
}

/// Aggregates every check on a metric algebra.
pub fn full_report(q: &QuadraticHomLieAlgebra) -> AlgebraReport {
    report_for(q.algebra(), Some(check_metric(q.algebra(), q.gram())))
}

/// Aggregates every non-metric check.
pub fn full_report_plain(g: &HomLieAlgebra) -> AlgebraReport {
    report_for(g, None)
}
