//! Subspaces of ℚⁿ in canonical form.

use super::{Matrix, Scalar, Vector};
use num::Zero;

/// A linear subspace of ℚⁿ, stored as the reduced row-echelon basis of its
/// span. The representation is canonical: two `Subspace` values are equal as
/// Rust values exactly when they are equal as subspaces.
#[derive(Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    /// RREF matrix with no zero rows; one row per basis vector.
    basis: Matrix,
    /// Strictly increasing pivot column of each basis row.
    pivots: Vec<usize>,
}

impl Subspace {
    /// The zero subspace of ℚⁿ.
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::zero(0, ambient),
            pivots: Vec::new(),
        }
    }

    /// All of ℚⁿ.
    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::identity(ambient),
            pivots: (0..ambient).collect(),
        }
    }

    /// Span of the given vectors, canonicalized.
    pub fn from_vectors(ambient: usize, vectors: &[Vector]) -> Self {
        for v in vectors {
            assert_eq!(v.len(), ambient, "vector length must match ambient dim");
        }
        if vectors.is_empty() {
            return Subspace::zero(ambient);
        }
        let (r, pivots) = Matrix::from_rows(vectors.to_vec()).rref();
        let basis = Matrix::from_fn(pivots.len(), ambient, |i, j| r[(i, j)].clone());
        Subspace {
            ambient,
            basis,
            pivots,
        }
    }

    /// Row space of a matrix.
    pub fn row_space(m: &Matrix) -> Self {
        let rows: Vec<Vector> = (0..m.rows()).map(|i| m.row_vec(i)).collect();
        Subspace::from_vectors(m.cols(), &rows)
    }

    /// Column space of a matrix.
    pub fn image(m: &Matrix) -> Self {
        Subspace::row_space(&m.transpose())
    }

    /// Solution space of `m · x = 0`.
    pub fn kernel(m: &Matrix) -> Self {
        let n = m.cols();
        let (r, pivots) = m.rref();
        let mut free: Vec<usize> = (0..n).collect();
        free.retain(|c| !pivots.contains(c));
        let mut basis_vectors = Vec::with_capacity(free.len());
        for &f in &free {
            let mut v = vec![Scalar::zero(); n];
            v[f] = num::One::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -r[(row, f)].clone();
            }
            basis_vectors.push(v);
        }
        Subspace::from_vectors(n, &basis_vectors)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_zero(&self) -> bool {
        self.pivots.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    /// Canonical basis vectors (rows of the RREF).
    pub fn basis(&self) -> Vec<Vector> {
        (0..self.dim()).map(|i| self.basis.row_vec(i)).collect()
    }

    /// Canonical basis as a `dim × ambient` matrix.
    pub fn basis_matrix(&self) -> &Matrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Membership test.
    pub fn contains(&self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.ambient);
        super::vec_is_zero(&self.reduce(v))
    }

    /// True when `other ⊆ self`.
    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        assert_eq!(self.ambient, other.ambient);
        (0..other.dim()).all(|i| self.contains(other.basis.row(i)))
    }

    /// Canonical representative of `v` modulo this subspace: the pivot
    /// coordinates are eliminated, so the residue is zero iff `v` lies in the
    /// subspace.
    pub fn reduce(&self, v: &[Scalar]) -> Vector {
        assert_eq!(v.len(), self.ambient);
        let mut out = v.to_vec();
        for (row, &p) in self.pivots.iter().enumerate() {
            if !out[p].is_zero() {
                let c = out[p].clone();
                for j in 0..self.ambient {
                    let b = &self.basis[(row, j)];
                    if !b.is_zero() {
                        out[j] -= &c * b;
                    }
                }
            }
        }
        out
    }

    /// Coefficients of `v` with respect to the canonical basis, or `None`
    /// when `v` is outside the subspace.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vector> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    /// Sum of two subspaces.
    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        let mut vectors = self.basis();
        vectors.extend(other.basis());
        Subspace::from_vectors(self.ambient, &vectors)
    }

    /// Intersection of two subspaces (Zassenhaus block trick: row-reduce
    /// `[U|U; W|0]` and read the intersection off the rows whose left half
    /// vanished).
    pub fn intersect(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        let n = self.ambient;
        let mut rows: Vec<Vector> = Vec::with_capacity(self.dim() + other.dim());
        for u in self.basis() {
            let mut row = u.clone();
            row.extend(u);
            rows.push(row);
        }
        for w in other.basis() {
            let mut row = w;
            row.extend(super::vec_zero(n));
            rows.push(row);
        }
        if rows.is_empty() {
            return Subspace::zero(n);
        }
        let (r, pivots) = Matrix::from_rows(rows).rref();
        let mut vectors = Vec::new();
        for (row, &p) in pivots.iter().enumerate() {
            if p >= n {
                vectors.push(r.row(row)[n..].to_vec());
            }
        }
        Subspace::from_vectors(n, &vectors)
    }

    /// Vectors `x` with `uᵀ G x = 0` for every `u` in this subspace. With the
    /// identity Gram matrix this is the usual orthogonal complement.
    pub fn orthogonal_complement(&self, gram: &Matrix) -> Subspace {
        assert_eq!(gram.rows(), self.ambient);
        assert_eq!(gram.cols(), self.ambient);
        Subspace::kernel(&self.basis.mul(gram))
    }

    /// Deterministic complement of `self` inside `larger`: the rows of
    /// `larger`'s canonical basis whose pivot is not a pivot of `self`.
    ///
    /// Requires `self ⊆ larger`; the pivot columns of a subspace are always a
    /// subset of the pivot columns of any containing subspace, and the
    /// selected rows are independent modulo `self`, so the result is a true
    /// complement.
    pub fn complement_within(&self, larger: &Subspace) -> Subspace {
        assert!(
            larger.contains_subspace(self),
            "complement_within requires self ⊆ larger"
        );
        let vectors: Vec<Vector> = larger
            .pivots
            .iter()
            .enumerate()
            .filter(|(_, p)| !self.pivots.contains(p))
            .map(|(row, _)| larger.basis.row_vec(row))
            .collect();
        Subspace::from_vectors(self.ambient, &vectors)
    }
}

impl std::fmt::Debug for Subspace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Subspace dim {} of ℚ^{} {:?}",
            self.dim(),
            self.ambient,
            self.basis
        )
    }
}
