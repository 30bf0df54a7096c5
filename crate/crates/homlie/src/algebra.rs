//! Algebras with a bilinear bracket, a twist map, and optionally a metric.

use crate::linalg::{vec_is_zero, vec_unit, vec_zero, Matrix, Scalar, Subspace, Vector};
use num::Zero;
use std::collections::BTreeMap;
use thiserror::Error;

/// Errors from algebra construction and basis manipulation.
#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum AlgebraError {
    #[error("twist must be a {dim}×{dim} matrix, got {rows}×{cols}")]
    TwistShape { dim: usize, rows: usize, cols: usize },
    #[error("metric must be a {dim}×{dim} matrix, got {rows}×{cols}")]
    MetricShape { dim: usize, rows: usize, cols: usize },
    #[error("metric is not symmetric (entries ({i},{j}) and ({j},{i}) differ)")]
    MetricNotSymmetric { i: usize, j: usize },
    #[error("metric is degenerate")]
    MetricDegenerate,
    #[error("subspace is not an ideal")]
    NotAnIdeal,
    #[error("ideal is not invariant under the twist map")]
    IdealNotTwistInvariant,
    #[error("change of basis matrix is singular")]
    SingularBasisChange,
    #[error("expected {expected} basis labels, got {got}")]
    LabelCount { expected: usize, got: usize },
}

/// Antisymmetric structure constants of a bracket on ℚⁿ.
///
/// Only pairs `i < j` are stored; `[e_j, e_i]` is derived by sign and
/// `[e_i, e_i] = 0` always. The bracket need not satisfy any Jacobi-type
/// identity — that is what the verification layer checks.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StructureTensor {
    dim: usize,
    brackets: BTreeMap<(usize, usize), Vector>,
}

impl StructureTensor {
    /// The zero (abelian) bracket on ℚⁿ.
    pub fn zero(dim: usize) -> Self {
        StructureTensor {
            dim,
            brackets: BTreeMap::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Sets the coefficient of `e_k` in `[e_i, e_j]`. Indices `i > j` are
    /// normalized to `i < j` with a sign flip; `i == j` is rejected.
    pub fn set(&mut self, i: usize, j: usize, k: usize, c: Scalar) {
        assert!(i != j, "diagonal brackets are identically zero");
        assert!(i < self.dim && j < self.dim && k < self.dim);
        let (i, j, c) = if i < j { (i, j, c) } else { (j, i, -c) };
        let entry = self
            .brackets
            .entry((i, j))
            .or_insert_with(|| vec_zero(self.dim));
        entry[k] = c;
        if vec_is_zero(entry) {
            self.brackets.remove(&(i, j));
        }
    }

    /// Sets the full vector `[e_i, e_j]` for `i < j`.
    pub fn set_bracket(&mut self, i: usize, j: usize, value: Vector) {
        assert!(i < j && j < self.dim);
        assert_eq!(value.len(), self.dim);
        if vec_is_zero(&value) {
            self.brackets.remove(&(i, j));
        } else {
            self.brackets.insert((i, j), value);
        }
    }

    /// `[e_i, e_j]` for any pair of indices.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vector {
        assert!(i < self.dim && j < self.dim);
        if i == j {
            return vec_zero(self.dim);
        }
        let (a, b, negate) = if i < j { (i, j, false) } else { (j, i, true) };
        match self.brackets.get(&(a, b)) {
            None => vec_zero(self.dim),
            Some(v) if negate => v.iter().map(|x| -x).collect(),
            Some(v) => v.clone(),
        }
    }

    /// Bilinear extension `[x, y]`.
    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        assert_eq!(x.len(), self.dim);
        assert_eq!(y.len(), self.dim);
        let mut out = vec_zero(self.dim);
        for (&(i, j), value) in &self.brackets {
            // coefficient of [e_i, e_j] in [x, y] is x_i y_j − x_j y_i;
            // skip the products that a zero factor forces to vanish
            let left = !x[i].is_zero() && !y[j].is_zero();
            let right = !x[j].is_zero() && !y[i].is_zero();
            let c = match (left, right) {
                (false, false) => continue,
                (true, false) => &x[i] * &y[j],
                (false, true) => -(&x[j] * &y[i]),
                (true, true) => &x[i] * &y[j] - &x[j] * &y[i],
            };
            if c.is_zero() {
                continue;
            }
            for (o, v) in out.iter_mut().zip(value) {
                if !v.is_zero() {
                    *o += &c * v;
                }
            }
        }
        out
    }

    /// Matrix of `ad(x) = [x, ·]` in the standard basis.
    pub fn adjoint(&self, x: &[Scalar]) -> Matrix {
        let cols: Vec<Vector> = (0..self.dim)
            .map(|j| self.bracket(x, &vec_unit(self.dim, j)))
            .collect();
        Matrix::from_fn(self.dim, self.dim, |i, j| cols[j][i].clone())
    }

    /// All nonzero coefficients as `(i, j, k, c)` with `i < j`, sorted.
    pub fn entries(&self) -> Vec<(usize, usize, usize, Scalar)> {
        let mut out = Vec::new();
        for (&(i, j), value) in &self.brackets {
            for (k, c) in value.iter().enumerate() {
                if !c.is_zero() {
                    out.push((i, j, k, c.clone()));
                }
            }
        }
        out
    }

    /// Span of all brackets of basis elements (the derived subspace).
    pub fn derived_span(&self) -> Subspace {
        let vectors: Vec<Vector> = self.brackets.values().cloned().collect();
        Subspace::from_vectors(self.dim, &vectors)
    }
}

/// A finite-dimensional algebra `(𝔤, [·,·], T)` with an antisymmetric bracket
/// and a linear twist map, over ℚ.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HomLieAlgebra {
    tensor: StructureTensor,
    twist: Matrix,
    labels: Option<Vec<String>>,
}

/// A quotient algebra along with the maps relating it to its parent.
#[derive(Clone, Debug)]
pub struct QuotientAlgebra {
    pub algebra: HomLieAlgebra,
    /// Linear projection `𝔤 → 𝔤/I` (rows = quotient dim, cols = parent dim).
    pub projection: Matrix,
    /// Linear section `𝔤/I → 𝔤` picking the canonical coset representatives;
    /// `projection · section = identity`.
    pub section: Matrix,
}

impl HomLieAlgebra {
    pub fn new(tensor: StructureTensor, twist: Matrix) -> Result<Self, AlgebraError> {
        let dim = tensor.dim();
        if twist.rows() != dim || twist.cols() != dim {
            return Err(AlgebraError::TwistShape {
                dim,
                rows: twist.rows(),
                cols: twist.cols(),
            });
        }
        Ok(HomLieAlgebra {
            tensor,
            twist,
            labels: None,
        })
    }

    /// Attaches display labels to the basis vectors.
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, AlgebraError> {
        if labels.len() != self.dim() {
            return Err(AlgebraError::LabelCount {
                expected: self.dim(),
                got: labels.len(),
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.tensor.dim()
    }

    pub fn tensor(&self) -> &StructureTensor {
        &self.tensor
    }

    pub fn twist(&self) -> &Matrix {
        &self.twist
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        self.tensor.bracket(x, y)
    }

    pub fn apply_twist(&self, x: &[Scalar]) -> Vector {
        self.twist.apply(x)
    }

    pub fn adjoint(&self, x: &[Scalar]) -> Matrix {
        self.tensor.adjoint(x)
    }

    /// `[𝔤, 𝔤]` as a subspace.
    pub fn derived_subalgebra(&self) -> Subspace {
        self.tensor.derived_span()
    }

    /// `{x : [x, y] = 0 for all y}`.
    pub fn center(&self) -> Subspace {
        let n = self.dim();
        if n == 0 {
            return Subspace::zero(0);
        }
        // x is central iff ad(e_j) x = 0... more precisely [x, e_j] = 0 for
        // every j; the map x ↦ [x, e_j] is −ad(e_j), so stack those matrices.
        let mut stacked = Matrix::zero(0, n);
        for j in 0..n {
            stacked = stacked.vstack(&self.tensor.adjoint(&vec_unit(n, j)));
        }
        Subspace::kernel(&stacked)
    }

    /// Killing form `κ(e_i, e_j) = tr(ad e_i ∘ ad e_j)`.
    pub fn killing_form(&self) -> Matrix {
        let n = self.dim();
        let ads: Vec<Matrix> = (0..n).map(|i| self.tensor.adjoint(&vec_unit(n, i))).collect();
        let mut k = Matrix::zero(n, n);
        for i in 0..n {
            for j in 0..=i {
                let t = ads[i].mul(&ads[j]).trace();
                k[(i, j)] = t.clone();
                k[(j, i)] = t;
            }
        }
        k
    }

    /// True when `[𝔤, S] ⊆ S` and `T(S) ⊆ S` (both are part of what it means
    /// to be an ideal when a twist map is present).
    pub fn is_ideal(&self, s: &Subspace) -> bool {
        self.ideal_defect(s).is_none()
    }

    /// A vector demonstrating that `s` is not an ideal: either a bracket
    /// `[e_j, v]` or a twist image `T(v)` escaping `s`. `None` when `s` is an
    /// ideal.
    pub fn ideal_defect(&self, s: &Subspace) -> Option<Vector> {
        let n = self.dim();
        for v in s.basis() {
            let tv = self.apply_twist(&v);
            if !s.contains(&tv) {
                return Some(tv);
            }
            for j in 0..n {
                let br = self.bracket(&vec_unit(n, j), &v);
                if !s.contains(&br) {
                    return Some(br);
                }
            }
        }
        None
    }

    /// True when `[S, S] ⊆ S`.
    pub fn is_subalgebra(&self, s: &Subspace) -> bool {
        let basis = s.basis();
        basis
            .iter()
            .flat_map(|v| basis.iter().map(move |w| (v, w)))
            .all(|(v, w)| s.contains(&self.bracket(v, w)))
    }

    /// Smallest twist-invariant ideal containing the seed subspace, by
    /// fixpoint iteration (bilinearity makes bracketing against basis
    /// vectors sufficient).
    pub fn ideal_closure(&self, seed: &Subspace) -> Subspace {
        let n = self.dim();
        let mut current = seed.clone();
        loop {
            let mut vectors = current.basis();
            for v in current.basis() {
                vectors.push(self.apply_twist(&v));
                for j in 0..n {
                    vectors.push(self.bracket(&vec_unit(n, j), &v));
                }
            }
            let next = Subspace::from_vectors(n, &vectors);
            if next.dim() == current.dim() {
                return next;
            }
            current = next;
        }
    }

    /// Quotient by an ideal. The twist must map the ideal into itself so
    /// that it descends; the quotient basis consists of the cosets of the
    /// standard basis vectors at the non-pivot coordinates of the ideal.
    pub fn quotient(&self, ideal: &Subspace) -> Result<QuotientAlgebra, AlgebraError> {
        let n = self.dim();
        assert_eq!(ideal.ambient(), n);
        for v in ideal.basis() {
            if !ideal.contains(&self.apply_twist(&v)) {
                return Err(AlgebraError::IdealNotTwistInvariant);
            }
            if (0..n).any(|j| !ideal.contains(&self.bracket(&vec_unit(n, j), &v))) {
                return Err(AlgebraError::NotAnIdeal);
            }
        }
        let free: Vec<usize> = (0..n).filter(|c| !ideal.pivots().contains(c)).collect();
        let m = free.len();
        // projection: x ↦ residue of x mod the ideal, read at free coordinates
        let mut projection = Matrix::zero(m, n);
        for j in 0..n {
            let reduced = ideal.reduce(&vec_unit(n, j));
            for (row, &f) in free.iter().enumerate() {
                projection[(row, j)] = reduced[f].clone();
            }
        }
        let mut section = Matrix::zero(n, m);
        for (col, &f) in free.iter().enumerate() {
            section[(f, col)] = num::One::one();
        }
        let mut tensor = StructureTensor::zero(m);
        for a in 0..m {
            for b in a + 1..m {
                let br = self.bracket(&vec_unit(n, free[a]), &vec_unit(n, free[b]));
                tensor.set_bracket(a, b, projection.apply(&br));
            }
        }
        let twist = projection.mul(&self.twist).mul(&section);
        let algebra = HomLieAlgebra::new(tensor, twist).expect("quotient twist is square");
        Ok(QuotientAlgebra {
            algebra,
            projection,
            section,
        })
    }

    /// Direct sum with componentwise bracket and twist.
    pub fn direct_sum(&self, other: &HomLieAlgebra) -> HomLieAlgebra {
        let n = self.dim();
        let m = other.dim();
        let mut tensor = StructureTensor::zero(n + m);
        for (i, j, k, c) in self.tensor.entries() {
            tensor.set(i, j, k, c);
        }
        for (i, j, k, c) in other.tensor.entries() {
            tensor.set(n + i, n + j, n + k, c);
        }
        HomLieAlgebra::new(tensor, self.twist.block_diag(&other.twist))
            .expect("direct sum twist is square")
    }

    /// Rewrites the algebra in the basis given by the columns of `p`
    /// (expressed in the current basis). Brackets and twist transform by
    /// conjugation, so all axioms are preserved.
    pub fn change_basis(&self, p: &Matrix) -> Result<HomLieAlgebra, AlgebraError> {
        let n = self.dim();
        assert_eq!((p.rows(), p.cols()), (n, n));
        let p_inv = p.inverse().ok_or(AlgebraError::SingularBasisChange)?;
        let mut tensor = StructureTensor::zero(n);
        for a in 0..n {
            let fa = p.col_vec(a);
            for b in a + 1..n {
                let fb = p.col_vec(b);
                tensor.set_bracket(a, b, p_inv.apply(&self.bracket(&fa, &fb)));
            }
        }
        let twist = p_inv.mul(&self.twist).mul(p);
        HomLieAlgebra::new(tensor, twist)
    }
}

/// A Hom-Lie algebra equipped with a symmetric nondegenerate bilinear form.
///
/// Symmetry and nondegeneracy are enforced at construction; invariance of the
/// form and self-adjointness of the twist are axioms that the verification
/// layer reports on.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QuadraticHomLieAlgebra {
    algebra: HomLieAlgebra,
    gram: Matrix,
}

impl QuadraticHomLieAlgebra {
    pub fn new(algebra: HomLieAlgebra, gram: Matrix) -> Result<Self, AlgebraError> {
        let dim = algebra.dim();
        if gram.rows() != dim || gram.cols() != dim {
            return Err(AlgebraError::MetricShape {
                dim,
                rows: gram.rows(),
                cols: gram.cols(),
            });
        }
        for i in 0..dim {
            for j in 0..i {
                if gram[(i, j)] != gram[(j, i)] {
                    return Err(AlgebraError::MetricNotSymmetric { i: j, j: i });
                }
            }
        }
        if gram.rank() != dim {
            return Err(AlgebraError::MetricDegenerate);
        }
        Ok(QuadraticHomLieAlgebra { algebra, gram })
    }

    pub fn algebra(&self) -> &HomLieAlgebra {
        &self.algebra
    }

    pub fn into_algebra(self) -> HomLieAlgebra {
        self.algebra
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        self.algebra.bracket(x, y)
    }

    pub fn twist(&self) -> &Matrix {
        self.algebra.twist()
    }

    pub fn apply_twist(&self, x: &[Scalar]) -> Vector {
        self.algebra.apply_twist(x)
    }

    /// `B(x, y)` for coordinate vectors.
    pub fn bilinear(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        let gy = self.gram.apply(y);
        x.iter().zip(&gy).map(|(a, b)| a * b).sum()
    }

    /// Orthogonal complement of a subspace with respect to the metric.
    pub fn orthogonal(&self, s: &Subspace) -> Subspace {
        s.orthogonal_complement(&self.gram)
    }

    /// Transports the metric along a change of basis (columns of `p` are the
    /// new basis vectors): the Gram matrix becomes `pᵀ G p`.
    pub fn change_basis(&self, p: &Matrix) -> Result<QuadraticHomLieAlgebra, AlgebraError> {
        let algebra = self.algebra.change_basis(p)?;
        let gram = p.transpose().mul(&self.gram).mul(p);
        QuadraticHomLieAlgebra::new(algebra, gram)
    }

    /// Orthogonal direct sum: block-diagonal bracket, twist, and metric.
    pub fn direct_sum(&self, other: &QuadraticHomLieAlgebra) -> QuadraticHomLieAlgebra {
        let algebra = self.algebra.direct_sum(&other.algebra);
        let gram = self.gram.block_diag(&other.gram);
        QuadraticHomLieAlgebra::new(algebra, gram)
            .expect("block sum of valid metrics is a valid metric")
    }
}
