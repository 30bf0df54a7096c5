//! Structure theory: Fitting decomposition of the twist, the maximal ideal
//! above `Ker(T) + Im(T)`, simplicity certification of quotients, and the
//! extraction of full double-extension data from a quadratic algebra with a
//! nilpotent centroid twist.

pub mod factor;

use crate::algebra::{
    AlgebraError, HomLieAlgebra, QuadraticHomLieAlgebra, QuotientAlgebra, StructureTensor,
};
use crate::extension::{self, DoubleExtensionData, ExtensionError};
use crate::linalg::{vec_axpy, vec_is_zero, vec_unit, vec_zero, Matrix, Scalar, Subspace, Vector};
use crate::report::{Check, DecompositionReport, NamedCheck, SimplicityCertificate};
use crate::verify;
use num::Zero;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum StructureError {
    #[error("bracket or twist violates the Hom-Lie axioms")]
    NotHomLie,
    #[error("twist map is not in the centroid")]
    TwistNotCentroid,
    #[error("twist map is not nilpotent")]
    TwistNotNilpotent,
    #[error("metric is not invariant or the twist is not self-adjoint")]
    MetricNotCompatible,
    #[error("no proper simple quotient exists")]
    NoSimpleQuotient,
    #[error("could not split a quotient whose centroid has dimension {0}")]
    CentroidNotSplit(usize),
    #[error("quotient bracket violates the Jacobi identity; internal inconsistency")]
    QuotientNotLie,
    #[error(
        "orthogonal complement of the maximal ideal is not contained in it; \
         the algebra splits as an orthogonal direct sum"
    )]
    Decomposable,
    #[error("metric degenerates on the chosen complement inside the maximal ideal")]
    DegenerateComplement,
    #[error("internal inconsistency: {0}")]
    Internal(&'static str),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Extension(#[from] ExtensionError),
}

impl StructureError {
    /// Stable machine-readable error code.
    pub fn code(&self) -> &'static str {
        match self {
            StructureError::NotHomLie => "not_hom_lie",
            StructureError::TwistNotCentroid => "twist_not_centroid",
            StructureError::TwistNotNilpotent => "twist_not_nilpotent",
            StructureError::MetricNotCompatible => "metric_not_compatible",
            StructureError::NoSimpleQuotient => "no_simple_quotient",
            StructureError::CentroidNotSplit(_) => "centroid_not_split",
            StructureError::QuotientNotLie => "quotient_not_lie",
            StructureError::Decomposable => "decomposable",
            StructureError::DegenerateComplement => "degenerate_complement",
            StructureError::Internal(_) => "internal",
            StructureError::Algebra(_) => "invalid_algebra",
            StructureError::Extension(_) => "invalid_extension",
        }
    }
}

// ---------------------------------------------------------------------------
// centroid and simplicity
// ---------------------------------------------------------------------------

/// Solution space of `C[x,y] = [Cx,y] = [x,Cy]` over all pairs. Because the
/// bracket tensor is antisymmetric by construction, this is exactly the
/// joint commutant of the adjoint maps of the basis vectors, including the
/// diagonal condition `[Cx,x] = 0`. Matrices are flattened row-major, so
/// the ambient coordinate space has dimension `dim²`.
///
/// The commutant is intersected one adjoint map at a time: only the first
/// nontrivial generator is solved over all `dim²` unknowns, and every later
/// system is restricted to the solution space found so far, which shrinks
/// quickly.
pub fn centroid_space(g: &HomLieAlgebra) -> Subspace {
    let n = g.dim();
    let unknowns = n * n;
    let unflatten = |v: &Vector| Matrix::from_fn(n, n, |r, c| v[r * n + c].clone());
    let flatten = |m: &Matrix| -> Vector { (0..n).flat_map(|r| m.row(r).to_vec()).collect() };
    // None means "no constraint seen yet", i.e. the full matrix space
    let mut basis: Option<Vec<Matrix>> = None;
    for i in 0..n {
        let a = g.tensor().adjoint(&vec_unit(n, i));
        if a.is_zero() {
            continue;
        }
        let next = match &basis {
            None => {
                // entry (l, m) of CA − AC as a sparse row over vec(C)
                let mut rows = Vec::new();
                for l in 0..n {
                    for m in 0..n {
                        let mut row = vec_zero(unknowns);
                        for c in 0..n {
                            row[l * n + c] += &a[(c, m)];
                        }
                        for r in 0..n {
                            row[r * n + m] -= &a[(l, r)];
                        }
                        if !vec_is_zero(&row) {
                            rows.push(row);
                        }
                    }
                }
                let kernel = Subspace::kernel(&Matrix::from_rows(rows));
                kernel.basis().iter().map(&unflatten).collect::<Vec<_>>()
            }
            Some(mats) => {
                let defects: Vec<Matrix> =
                    mats.iter().map(|x| x.mul(&a).sub(&a.mul(x))).collect();
                let mut rows = Vec::new();
                for l in 0..n {
                    for m in 0..n {
                        let row: Vector =
                            defects.iter().map(|d| d[(l, m)].clone()).collect();
                        if !vec_is_zero(&row) {
                            rows.push(row);
                        }
                    }
                }
                if rows.is_empty() {
                    continue;
                }
                let kernel = Subspace::kernel(&Matrix::from_rows(rows));
                kernel
                    .basis()
                    .iter()
                    .map(|coords| {
                        let mut acc = Matrix::zero(n, n);
                        for (j, c) in coords.iter().enumerate() {
                            if !c.is_zero() {
                                acc = acc.add(&mats[j].scale(c));
                            }
                        }
                        acc
                    })
                    .collect()
            }
        };
        if next.is_empty() {
            return Subspace::zero(unknowns);
        }
        basis = Some(next);
    }
    match basis {
        None => Subspace::full(unknowns),
        Some(mats) => {
            let flat: Vec<Vector> = mats.iter().map(flatten).collect();
            Subspace::from_vectors(unknowns, &flat)
        }
    }
}

/// Simplicity certificate: classical Jacobi + nondegenerate Killing form +
/// one-dimensional centroid. Killing-nondegeneracy forces semisimplicity and
/// the centroid dimension bounds the number of simple summands from below,
/// so the three conditions together certify a single simple summand.
pub fn certify_simple(g: &HomLieAlgebra) -> SimplicityCertificate {
    let is_lie = verify::check_classical_jacobi(g).passed;
    let killing_nondegenerate = g.killing_form().rank() == g.dim();
    let centroid_dim = centroid_space(g).dim();
    SimplicityCertificate {
        is_lie,
        killing_nondegenerate,
        centroid_dim,
        simple: is_lie && killing_nondegenerate && centroid_dim == 1,
    }
}

// ---------------------------------------------------------------------------
// Fitting decomposition
// ---------------------------------------------------------------------------

/// Splitting of the algebra along `𝔤 = Im(T^ℓ) ⊕ Ker(T^ℓ)` for the smallest
/// `ℓ` at which the rank of the twist powers stabilizes. The twist restricts
/// invertibly to the image block and nilpotently to the kernel block, and the
/// two blocks are orthogonal for the metric.
#[derive(Clone, Debug)]
pub struct FittingSplit {
    pub ell: usize,
    pub lie_part: QuadraticHomLieAlgebra,
    pub nilpotent_part: QuadraticHomLieAlgebra,
    /// Columns are the chosen basis of `Im(T^ℓ)` in ambient coordinates.
    pub lie_embedding: Matrix,
    /// Columns are the chosen basis of `Ker(T^ℓ)` in ambient coordinates.
    pub nilpotent_embedding: Matrix,
}

/// Restricts the algebra to a subspace that is closed under bracket and
/// twist; returns the restricted algebra together with the embedding matrix.
fn restrict(
    q: &QuadraticHomLieAlgebra,
    space: &Subspace,
) -> Result<(QuadraticHomLieAlgebra, Matrix), StructureError> {
    let n = q.dim();
    let m = space.dim();
    let cols = space.basis();
    let embedding = Matrix::from_fn(n, m, |r, c| cols[c][r].clone());
    let mut tensor = StructureTensor::zero(m);
    for a in 0..m {
        for b in a + 1..m {
            let w = q.bracket(&cols[a], &cols[b]);
            let coords = space
                .coordinates(&w)
                .ok_or(StructureError::Internal("block not closed under bracket"))?;
            tensor.set_bracket(a, b, coords);
        }
    }
    let mut twist = Matrix::zero(m, m);
    for a in 0..m {
        let w = q.apply_twist(&cols[a]);
        let coords = space
            .coordinates(&w)
            .ok_or(StructureError::Internal("block not twist-invariant"))?;
        for r in 0..m {
            twist[(r, a)] = coords[r].clone();
        }
    }
    let gram = embedding.transpose().mul(q.gram()).mul(&embedding);
    let algebra = HomLieAlgebra::new(tensor, twist)?;
    Ok((QuadraticHomLieAlgebra::new(algebra, gram)?, embedding))
}

/// Fitting decomposition along the twist. Requires the twist in the centroid
/// and compatible with the metric; both blocks are then ideals and the
/// splitting is an orthogonal direct sum.
pub fn fitting(q: &QuadraticHomLieAlgebra) -> Result<FittingSplit, StructureError> {
    let g = q.algebra();
    if !verify::check_centroid(g).passed {
        return Err(StructureError::TwistNotCentroid);
    }
    if !verify::check_metric(g, q.gram()).passed() {
        return Err(StructureError::MetricNotCompatible);
    }
    let n = q.dim();
    let mut power = Matrix::identity(n);
    let mut rank = n;
    let mut ell = 0;
    loop {
        let next = power.mul(q.twist());
        let next_rank = next.rank();
        if next_rank == rank {
            break;
        }
        power = next;
        rank = next_rank;
        ell += 1;
        if ell > n {
            return Err(StructureError::Internal("twist ranks failed to stabilize"));
        }
    }
    let image = Subspace::image(&power);
    let kernel = Subspace::kernel(&power);
    for u in image.basis() {
        for v in kernel.basis() {
            if !q.bilinear(&u, &v).is_zero() {
                return Err(StructureError::Internal("fitting blocks not orthogonal"));
            }
        }
    }
    let (lie_part, lie_embedding) = restrict(q, &image)?;
    let (nilpotent_part, nilpotent_embedding) = restrict(q, &kernel)?;
    Ok(FittingSplit {
        ell,
        lie_part,
        nilpotent_part,
        lie_embedding,
        nilpotent_embedding,
    })
}

// ---------------------------------------------------------------------------
// maximal ideal
// ---------------------------------------------------------------------------

fn pull_back(ideal: &Subspace, quotient: &QuotientAlgebra, sub: &Subspace) -> Subspace {
    let mut vectors = ideal.basis();
    for r in sub.basis() {
        vectors.push(quotient.section.apply(&r));
    }
    Subspace::from_vectors(ideal.ambient(), &vectors)
}

/// Finds a proper nonzero ideal of a Killing-nondegenerate quotient whose
/// centroid has dimension > 1, as the kernel of `p(C)` for an irreducible
/// factor `p` of the minimal polynomial of a non-scalar centroid element.
fn split_centroid(qa: &HomLieAlgebra, centroid: &Subspace) -> Result<Subspace, StructureError> {
    let m = qa.dim();
    let unflatten = |v: &Vector| Matrix::from_fn(m, m, |r, c| v[r * m + c].clone());
    let basis: Vec<Matrix> = centroid.basis().iter().map(unflatten).collect();
    let mut candidates = basis.clone();
    // pairwise sums cover the case where every basis element alone has an
    // irreducible minimal polynomial yet the centroid is not a field
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            candidates.push(basis[i].add(&basis[j]));
        }
    }
    for c in &candidates {
        let minpoly = factor::minimal_polynomial(c);
        for (p, _) in factor::factor_monic(&minpoly) {
            if p.len() >= minpoly.len() {
                continue; // the whole minimal polynomial gives kernel = everything
            }
            let kernel = Subspace::kernel(&factor::evaluate_at_matrix(&p, c));
            if !kernel.is_zero() && kernel.dim() < m {
                return Ok(kernel);
            }
        }
    }
    Err(StructureError::CentroidNotSplit(centroid.dim()))
}

/// The maximal ideal over `Ker(T) + Im(T)` whose quotient is certified
/// simple. Starting from `J₀ = Ker(T) + Im(T)`, the ideal is enlarged by
/// pulling back the Killing radical of the quotient while it is degenerate,
/// and by centroid splitting while the quotient has centroid dimension > 1.
pub fn maximal_ideal(q: &QuadraticHomLieAlgebra) -> Result<Subspace, StructureError> {
    let g = q.algebra();
    if !verify::check_centroid(g).passed {
        return Err(StructureError::TwistNotCentroid);
    }
    if verify::nilpotency_index(g.twist()).is_none() {
        return Err(StructureError::TwistNotNilpotent);
    }
    let n = g.dim();
    let mut ideal = Subspace::kernel(g.twist()).sum(&Subspace::image(g.twist()));
    for _ in 0..=n {
        if ideal.dim() == n {
            return Err(StructureError::NoSimpleQuotient);
        }
        let quotient = g.quotient(&ideal)?;
        let qa = &quotient.algebra;
        if !verify::check_classical_jacobi(qa).passed {
            return Err(StructureError::QuotientNotLie);
        }
        let radical = Subspace::kernel(&qa.killing_form());
        if !radical.is_zero() {
            ideal = pull_back(&ideal, &quotient, &radical);
            continue;
        }
        let centroid = centroid_space(qa);
        if centroid.dim() == 1 {
            return Ok(ideal);
        }
        let splitter = split_centroid(qa, &centroid)?;
        ideal = pull_back(&ideal, &quotient, &splitter);
    }
    Err(StructureError::Internal("ideal enlargement failed to terminate"))
}

// ---------------------------------------------------------------------------
// decomposition data
// ---------------------------------------------------------------------------

/// Complete decomposition of a quadratic algebra with nilpotent centroid
/// twist into `𝔰 ⊕ 𝔥 ⊕ 𝓘^⊥` together with every extracted component map.
///
/// Coordinates: `𝔰`-valued data uses the columns of `s_basis`, `𝔥`-valued
/// data the columns of `h_basis`, and dual-valued data (`varphi`, `tau`,
/// `mu`, `gamma`, `l_map`) the functionals `v ↦ B(·, v)` evaluated on the
/// `s_basis` columns, i.e. the pairing applied through `xi`. `sigma[i]` acts
/// on `𝓘^⊥` in the `radical_basis` coordinates, and
/// `xi[j][a] = B(radical_basis[a], s_basis[j])` converts them to dual ones.
#[derive(Clone, Debug)]
pub struct DecompositionData {
    pub maximal_ideal: Subspace,
    pub iso_radical: Subspace,
    pub h_space: Subspace,
    pub s_space: Subspace,
    pub s_basis: Matrix,
    pub h_basis: Matrix,
    pub radical_basis: Matrix,
    pub xi: Matrix,
    pub bracket_s: StructureTensor,
    pub bracket_h: StructureTensor,
    pub theta: Matrix,
    pub gram_h: Matrix,
    pub phi: Matrix,
    pub varphi: Matrix,
    pub rho: Vec<Matrix>,
    pub tau: Vec<Matrix>,
    pub sigma: Vec<Matrix>,
    /// `gamma[a][b]` is `γ(u_a, u_b)` in dual coordinates.
    pub gamma: Vec<Vec<Vector>>,
    /// `lambda[i][j]` is `λ(x_i, x_j)` in `𝔥`-coordinates.
    pub lambda: Vec<Vec<Vector>>,
    pub mu: Vec<Matrix>,
    /// The map `L: 𝔥 → 𝔰*` in dual coordinates (`s_dim × h_dim`).
    pub l_map: Matrix,
}

impl DecompositionData {
    pub fn s_dim(&self) -> usize {
        self.s_basis.cols()
    }

    pub fn h_dim(&self) -> usize {
        self.h_basis.cols()
    }

    /// Extracted input data for the double-extension construction.
    pub fn to_extension_data(&self) -> Result<DoubleExtensionData, ExtensionError> {
        DoubleExtensionData::new(
            self.bracket_s.clone(),
            self.bracket_h.clone(),
            self.theta.clone(),
            self.gram_h.clone(),
            self.phi.clone(),
            self.varphi.clone(),
            self.rho.clone(),
            self.tau.clone(),
            self.mu.clone(),
        )
    }

    /// Basis-change matrix into block coordinates `(𝔰, 𝔥, 𝔰*)`: the dual
    /// block columns are the `ξ`-preimages of the dual basis of `𝔰`, so the
    /// metric takes the assembled standard form in these coordinates.
    pub fn assembly_matrix(&self) -> Result<Matrix, StructureError> {
        let xi_inv = self
            .xi
            .inverse()
            .ok_or(StructureError::Internal("xi is singular"))?;
        let dual_block = self.radical_basis.mul(&xi_inv);
        Ok(self.s_basis.hstack(&self.h_basis).hstack(&dual_block))
    }
}

/// Splits ambient coordinates of a vector into the three block components.
struct BlockCoordinates {
    inverse: Matrix,
    s_dim: usize,
    h_dim: usize,
}

impl BlockCoordinates {
    fn split(&self, v: &[Scalar]) -> (Vector, Vector, Vector) {
        let c = self.inverse.apply(v);
        let s = c[..self.s_dim].to_vec();
        let h = c[self.s_dim..self.s_dim + self.h_dim].to_vec();
        let w = c[self.s_dim + self.h_dim..].to_vec();
        (s, h, w)
    }
}

/// Decomposes a quadratic Hom-Lie algebra with nilpotent centroid twist into
/// double-extension data over its simple quotient.
pub fn decompose(q: &QuadraticHomLieAlgebra) -> Result<DecompositionData, StructureError> {
    let report = verify::full_report(q);
    if !(report.skew.passed && report.homlie_jacobi.passed) {
        return Err(StructureError::NotHomLie);
    }
    if !report.centroid.passed {
        return Err(StructureError::TwistNotCentroid);
    }
    if report.metric.as_ref().is_none_or(|m| !m.passed()) {
        return Err(StructureError::MetricNotCompatible);
    }

    let n = q.dim();
    let ideal = maximal_ideal(q)?;
    let rad = ideal.orthogonal_complement(q.gram());
    if !ideal.contains_subspace(&rad) {
        return Err(StructureError::Decomposable);
    }
    let h_space = rad.complement_within(&ideal);
    let s_seed = ideal.complement_within(&Subspace::full(n));

    let h_cols = h_space.basis();
    let w_cols = rad.basis();
    let mut c_cols = s_seed.basis();
    let s_dim = c_cols.len();
    let h_dim = h_cols.len();
    if rad.dim() != s_dim {
        return Err(StructureError::Internal("radical and complement dimensions differ"));
    }

    let pair = |x: &[Scalar], y: &[Scalar]| q.bilinear(x, y);

    // make the s-candidates orthogonal to 𝔥 (corrections stay inside 𝓘)
    let gram_h = Matrix::from_fn(h_dim, h_dim, |a, b| pair(&h_cols[a], &h_cols[b]));
    if h_dim > 0 {
        for c in c_cols.iter_mut() {
            let rhs: Vector = h_cols.iter().map(|h| pair(h, c)).collect();
            let d = gram_h
                .solve(&rhs)
                .ok_or(StructureError::DegenerateComplement)?;
            for (b, coef) in d.iter().enumerate() {
                let minus = -coef.clone();
                *c = vec_axpy(c, &minus, &h_cols[b]);
            }
        }
    }

    // Witt isotropization: subtract the ½-corrections through the pairing
    // with 𝓘^⊥, so the final s-basis spans a B-isotropic complement
    let pairing = Matrix::from_fn(s_dim, s_dim, |i, a| pair(&c_cols[i], &w_cols[a]));
    let gram_s = Matrix::from_fn(s_dim, s_dim, |i, j| pair(&c_cols[i], &c_cols[j]));
    let half = crate::linalg::frac(1, 2);
    let corrections: Vec<Vector> = (0..s_dim)
        .map(|i| {
            let rhs: Vector = (0..s_dim).map(|j| &gram_s[(i, j)] * &half).collect();
            pairing
                .solve(&rhs)
                .ok_or(StructureError::Internal("pairing with the radical is degenerate"))
        })
        .collect::<Result<_, _>>()?;
    for (i, d) in corrections.iter().enumerate() {
        for (a, coef) in d.iter().enumerate() {
            let minus = -coef.clone();
            c_cols[i] = vec_axpy(&c_cols[i], &minus, &w_cols[a]);
        }
    }

    let from_cols = |cols: &[Vector], width: usize| {
        Matrix::from_fn(n, width, |r, c| cols[c][r].clone())
    };
    let s_basis = from_cols(&c_cols, s_dim);
    let h_basis = from_cols(&h_cols, h_dim);
    let radical_basis = from_cols(&w_cols, s_dim);
    let assembled = s_basis.hstack(&h_basis).hstack(&radical_basis);
    let blocks = BlockCoordinates {
        inverse: assembled
            .inverse()
            .ok_or(StructureError::Internal("block bases do not span"))?,
        s_dim,
        h_dim,
    };
    let xi = Matrix::from_fn(s_dim, s_dim, |j, a| pair(&w_cols[a], &c_cols[j]));

    // bracket on 𝔰-lifts: 𝔰-part is the quotient bracket, 𝔥-part is λ,
    // dual part (through ξ) is μ
    let mut bracket_s = StructureTensor::zero(s_dim);
    let mut lambda = vec![vec![vec_zero(h_dim); s_dim]; s_dim];
    let mut mu = vec![Matrix::zero(s_dim, s_dim); s_dim];
    for i in 0..s_dim {
        for j in i + 1..s_dim {
            let (sp, hp, wp) = blocks.split(&q.bracket(&c_cols[i], &c_cols[j]));
            bracket_s.set_bracket(i, j, sp);
            let dual = xi.apply(&wp);
            for (k, value) in dual.iter().enumerate() {
                mu[k][(i, j)] = value.clone();
                mu[k][(j, i)] = -value.clone();
            }
            lambda[j][i] = hp.iter().map(|c| -c.clone()).collect();
            lambda[i][j] = hp;
        }
    }

    // brackets against 𝔥: 𝔥-part is ρ, dual part is τ
    let mut rho = vec![Matrix::zero(h_dim, h_dim); s_dim];
    let mut tau = vec![Matrix::zero(s_dim, h_dim); s_dim];
    for i in 0..s_dim {
        for a in 0..h_dim {
            let (_, hp, wp) = blocks.split(&q.bracket(&c_cols[i], &h_cols[a]));
            for (r, value) in hp.iter().enumerate() {
                rho[i][(r, a)] = value.clone();
            }
            let dual = xi.apply(&wp);
            for (k, value) in dual.iter().enumerate() {
                tau[i][(k, a)] = value.clone();
            }
        }
    }

    // action on 𝓘^⊥ in radical coordinates
    let mut sigma = vec![Matrix::zero(s_dim, s_dim); s_dim];
    for i in 0..s_dim {
        for a in 0..s_dim {
            let (_, _, wp) = blocks.split(&q.bracket(&c_cols[i], &w_cols[a]));
            for (r, value) in wp.iter().enumerate() {
                sigma[i][(r, a)] = value.clone();
            }
        }
    }

    // bracket on 𝔥: 𝔥-part is the small algebra, dual part is γ
    let mut bracket_h = StructureTensor::zero(h_dim);
    let mut gamma = vec![vec![vec_zero(s_dim); h_dim]; h_dim];
    for a in 0..h_dim {
        for b in a + 1..h_dim {
            let (_, hp, wp) = blocks.split(&q.bracket(&h_cols[a], &h_cols[b]));
            bracket_h.set_bracket(a, b, hp);
            let dual = xi.apply(&wp);
            gamma[b][a] = dual.iter().map(|c| -c.clone()).collect();
            gamma[a][b] = dual;
        }
    }

    // twist components: Θ and L on 𝔥, φ and ϕ on 𝔰
    let mut theta = Matrix::zero(h_dim, h_dim);
    let mut l_map = Matrix::zero(s_dim, h_dim);
    for a in 0..h_dim {
        let (_, hp, wp) = blocks.split(&q.apply_twist(&h_cols[a]));
        for (r, value) in hp.iter().enumerate() {
            theta[(r, a)] = value.clone();
        }
        let dual = xi.apply(&wp);
        for (k, value) in dual.iter().enumerate() {
            l_map[(k, a)] = value.clone();
        }
    }
    let mut phi = Matrix::zero(h_dim, s_dim);
    let mut varphi = Matrix::zero(s_dim, s_dim);
    for j in 0..s_dim {
        let (_, hp, wp) = blocks.split(&q.apply_twist(&c_cols[j]));
        for (r, value) in hp.iter().enumerate() {
            phi[(r, j)] = value.clone();
        }
        let dual = xi.apply(&wp);
        for (k, value) in dual.iter().enumerate() {
            varphi[(k, j)] = value.clone();
        }
    }

    Ok(DecompositionData {
        maximal_ideal: ideal,
        iso_radical: rad,
        h_space,
        s_space: Subspace::from_vectors(n, &c_cols),
        s_basis,
        h_basis,
        radical_basis,
        xi,
        bracket_s,
        bracket_h,
        theta,
        gram_h,
        phi,
        varphi,
        rho,
        tau,
        sigma,
        gamma,
        lambda,
        mu,
        l_map,
    })
}

/// Rebuilds the algebra from the extracted data and compares it, entry for
/// entry, against the original rewritten in the assembled block basis.
pub fn reassemble(
    d: &DecompositionData,
    q: &QuadraticHomLieAlgebra,
) -> Result<Check, StructureError> {
    let data = d.to_extension_data()?;
    let built = extension::build(&data)?;
    let transformed = q.change_basis(&d.assembly_matrix()?)?;
    let tensors = Check::from_defect(
        vec![],
        &[crate::linalg::int(
            (built.algebra().tensor() != transformed.algebra().tensor()) as i64,
        )],
    );
    let twists = Check::from_defect(
        vec![],
        &[crate::linalg::int(
            (built.twist() != transformed.twist()) as i64,
        )],
    );
    let grams = Check::from_defect(
        vec![],
        &[crate::linalg::int((built.gram() != transformed.gram()) as i64)],
    );
    Ok(tensors.and(twists).and(grams))
}

// ---------------------------------------------------------------------------
// decomposition validation
// ---------------------------------------------------------------------------

/// Re-verifies every identity the decomposition is supposed to satisfy,
/// exhaustively over basis indices, against both the extracted tables and
/// the ambient algebra. Failures carry witnesses; nothing panics.
pub fn validate_decomposition(
    d: &DecompositionData,
    q: &QuadraticHomLieAlgebra,
) -> DecompositionReport {
    let s_dim = d.s_dim();
    let h_dim = d.h_dim();
    let s_cols: Vec<Vector> = (0..s_dim).map(|j| d.s_basis.col_vec(j)).collect();
    let h_cols: Vec<Vector> = (0..h_dim).map(|a| d.h_basis.col_vec(a)).collect();
    let w_cols: Vec<Vector> = (0..s_dim).map(|a| d.radical_basis.col_vec(a)).collect();
    let pair = |x: &[Scalar], y: &[Scalar]| q.bilinear(x, y);
    let mut checks: Vec<NamedCheck> = Vec::new();
    let mut push = |name: &str, check: Check| checks.push(NamedCheck::new(name, check));

    // ambient geometry of the three blocks
    push(
        "direct_sum_spans",
        if d.s_basis.hstack(&d.h_basis).hstack(&d.radical_basis).rank() == q.dim() {
            Check::pass()
        } else {
            Check::fail(vec![], &[])
        },
    );
    push("s_isotropic", {
        Check::all((0..s_dim).flat_map(|i| {
            let s_cols = &s_cols;
            let pair = &pair;
            (i..s_dim).map(move |j| {
                Check::from_defect(vec![i, j], &[pair(&s_cols[i], &s_cols[j])])
            })
        }))
    });
    push("h_block_orthogonal", {
        Check::all((0..h_dim).flat_map(|a| {
            let h_cols = &h_cols;
            let s_cols = &s_cols;
            let w_cols = &w_cols;
            let pair = &pair;
            (0..s_dim).map(move |i| {
                Check::from_defect(vec![a, i], &[pair(&h_cols[a], &s_cols[i])]).and(
                    Check::from_defect(vec![a, i], &[pair(&h_cols[a], &w_cols[i])]),
                )
            })
        }))
    });
    push(
        "radical_in_ideal",
        if d.maximal_ideal.contains_subspace(&d.iso_radical) {
            Check::pass()
        } else {
            Check::fail(vec![], &[])
        },
    );
    push(
        "radical_in_twist_kernel",
        Check::all(
            (0..s_dim).map(|a| Check::from_defect(vec![a], &q.apply_twist(&w_cols[a]))),
        ),
    );
    push(
        "radical_abelian",
        Check::all((0..s_dim).flat_map(|a| {
            let w_cols = &w_cols;
            (a + 1..s_dim)
                .map(move |b| Check::from_defect(vec![a, b], &q.bracket(&w_cols[a], &w_cols[b])))
        })),
    );
    push(
        "h_radical_bracket_zero",
        Check::all((0..h_dim).flat_map(|a| {
            let h_cols = &h_cols;
            let w_cols = &w_cols;
            (0..s_dim)
                .map(move |b| Check::from_defect(vec![a, b], &q.bracket(&h_cols[a], &w_cols[b])))
        })),
    );
    push(
        "radical_pairs_s",
        if d.iso_radical.dim() == s_dim && d.xi.rank() == s_dim {
            Check::pass()
        } else {
            Check::fail(vec![], &[])
        },
    );
    push(
        "ideal_closed",
        if q.algebra().is_ideal(&d.maximal_ideal) {
            Check::pass()
        } else {
            Check::fail(vec![], &[])
        },
    );
    push("ideal_contains_kernel_image", {
        let hull = Subspace::kernel(q.twist()).sum(&Subspace::image(q.twist()));
        if d.maximal_ideal.contains_subspace(&hull) {
            Check::pass()
        } else {
            Check::fail(vec![], &[])
        }
    });

    // the two boundary algebras
    push("s_simple", {
        match HomLieAlgebra::new(d.bracket_s.clone(), Matrix::identity(s_dim)) {
            Ok(s_algebra) => {
                if certify_simple(&s_algebra).simple {
                    Check::pass()
                } else {
                    Check::fail(vec![], &[])
                }
            }
            Err(_) => Check::fail(vec![], &[]),
        }
    });
    push("h_quadratic_homlie", {
        let built = HomLieAlgebra::new(d.bracket_h.clone(), d.theta.clone())
            .map_err(StructureError::from)
            .and_then(|a| QuadraticHomLieAlgebra::new(a, d.gram_h.clone()).map_err(Into::into));
        match built {
            Ok(h_algebra) => {
                let nilpotent = verify::nilpotency_index(&d.theta).is_some();
                if verify::full_report(&h_algebra).passed() && nilpotent {
                    Check::pass()
                } else {
                    Check::fail(vec![], &[])
                }
            }
            Err(_) => Check::fail(vec![], &[]),
        }
    });

    // twist components against the ambient pairing
    push(
        "varphi_from_twist_pairing",
        Check::all((0..s_dim).flat_map(|j| {
            let s_cols = &s_cols;
            let pair = &pair;
            let varphi = &d.varphi;
            (0..s_dim).map(move |k| {
                let expected = pair(&q.apply_twist(&s_cols[j]), &s_cols[k]);
                Check::from_defect(vec![k, j], &[&varphi[(k, j)] - &expected])
            })
        })),
    );
    push(
        "l_from_twist_pairing",
        Check::all((0..h_dim).flat_map(|a| {
            let s_cols = &s_cols;
            let h_cols = &h_cols;
            let pair = &pair;
            let l_map = &d.l_map;
            (0..s_dim).map(move |k| {
                let expected = pair(&q.apply_twist(&h_cols[a]), &s_cols[k]);
                Check::from_defect(vec![k, a], &[&l_map[(k, a)] - &expected])
            })
        })),
    );
    push(
        "varphi_symmetric",
        Check::all((0..s_dim).flat_map(|j| {
            let varphi = &d.varphi;
            (j + 1..s_dim).map(move |k| {
                Check::from_defect(vec![k, j], &[&varphi[(k, j)] - &varphi[(j, k)]])
            })
        })),
    );

    // cyclicity and adjointness of the extracted tables
    push(
        "mu_cyclic",
        Check::all((0..s_dim).flat_map(|i| {
            let mu = &d.mu;
            (0..s_dim).flat_map(move |j| {
                (0..s_dim).map(move |k| {
                    Check::from_defect(vec![i, j, k], &[&mu[k][(i, j)] - &mu[i][(j, k)]])
                })
            })
        })),
    );
    push(
        "tau_lambda_adjoint",
        Check::all((0..s_dim).flat_map(|i| {
            let tau = &d.tau;
            let gram_h = &d.gram_h;
            let lambda = &d.lambda;
            (0..s_dim).flat_map(move |k| {
                (0..h_dim).map(move |a| {
                    let mut expected = Scalar::zero();
                    for b in 0..h_dim {
                        expected += &gram_h[(a, b)] * &lambda[i][k][b];
                    }
                    Check::from_defect(vec![i, k, a], &[&tau[i][(k, a)] + &expected])
                })
            })
        })),
    );
    push(
        "gamma_rho_adjoint",
        Check::all((0..h_dim).flat_map(|a| {
            let gamma = &d.gamma;
            let gram_h = &d.gram_h;
            let rho = &d.rho;
            (0..h_dim).flat_map(move |b| {
                (0..s_dim).map(move |k| {
                    let mut expected = Scalar::zero();
                    for c in 0..h_dim {
                        expected += &rho[k][(c, a)] * &gram_h[(c, b)];
                    }
                    Check::from_defect(vec![a, b, k], &[&gamma[a][b][k] - &expected])
                })
            })
        })),
    );

    // Θ and L interact with the small bracket and with ρ, φ, γ, σ
    push("theta_centroid_h", {
        match HomLieAlgebra::new(d.bracket_h.clone(), d.theta.clone()) {
            Ok(h_algebra) => verify::check_centroid(&h_algebra),
            Err(_) => Check::fail(vec![], &[]),
        }
    });
    push(
        "l_bracket_h_gamma",
        Check::all((0..h_dim).flat_map(|a| {
            let d = &d;
            (0..h_dim).map(move |b| {
                let lhs = d.l_map.apply(&d.bracket_h.bracket_basis(a, b));
                let mut rhs = vec_zero(s_dim);
                for c in 0..h_dim {
                    if !d.theta[(c, a)].is_zero() {
                        rhs = vec_axpy(&rhs, &d.theta[(c, a)], &d.gamma[c][b]);
                    }
                }
                let defect: Vector = lhs.iter().zip(&rhs).map(|(x, y)| x - y).collect();
                Check::from_defect(vec![a, b], &defect)
            })
        })),
    );
    push(
        "theta_rho_adjoint_phi",
        Check::all((0..s_dim).map(|i| {
            let ad_phi = d.bracket_h.adjoint(&d.phi.col_vec(i));
            let left = d.theta.mul(&d.rho[i]).sub(&ad_phi);
            let right = d.rho[i].mul(&d.theta).sub(&ad_phi);
            matrix_zero_check(vec![i], &left).and(matrix_zero_check(vec![i], &right))
        })),
    );
    push(
        "l_rho_gamma_sigma",
        Check::all((0..s_dim).map(|i| {
            let lr = d.l_map.mul(&d.rho[i]);
            let mut gamma_phi = Matrix::zero(s_dim, h_dim);
            for a in 0..h_dim {
                let mut column = vec_zero(s_dim);
                for c in 0..h_dim {
                    if !d.phi[(c, i)].is_zero() {
                        column = vec_axpy(&column, &d.phi[(c, i)], &d.gamma[c][a]);
                    }
                }
                for (k, value) in column.iter().enumerate() {
                    gamma_phi[(k, a)] = value.clone();
                }
            }
            let sigma_dual = dual_sigma(d, i);
            let sl = sigma_dual.map(|sd| sd.mul(&d.l_map));
            let first = matrix_zero_check(vec![i], &lr.sub(&gamma_phi));
            let second = match sl {
                Some(sl) => matrix_zero_check(vec![i], &lr.sub(&sl)),
                None => Check::fail(vec![i], &[]),
            };
            first.and(second)
        })),
    );
    push(
        "tau_theta_zero",
        Check::all(
            (0..s_dim).map(|i| matrix_zero_check(vec![i], &d.tau[i].mul(&d.theta))),
        ),
    );
    push(
        "phi_bracket_rho",
        Check::all((0..s_dim).flat_map(|i| {
            let d = &d;
            (0..s_dim).map(move |j| {
                let lhs = d.phi.apply(&d.bracket_s.bracket_basis(i, j));
                let rhs = d.rho[i].apply(&d.phi.col_vec(j));
                let defect: Vector = lhs.iter().zip(&rhs).map(|(x, y)| x - y).collect();
                Check::from_defect(vec![i, j], &defect)
            })
        })),
    );
    push(
        "tau_phi_zero",
        Check::all((0..s_dim).flat_map(|i| {
            let d = &d;
            (0..s_dim).map(move |j| {
                Check::from_defect(vec![i, j], &d.tau[i].apply(&d.phi.col_vec(j)))
            })
        })),
    );
    push(
        "varphi_bracket_sigma",
        Check::all((0..s_dim).flat_map(|i| {
            let d = &d;
            let sigma_dual = dual_sigma(d, i);
            (0..s_dim).map(move |j| match &sigma_dual {
                Some(sd) => {
                    let lhs = d.varphi.apply(&d.bracket_s.bracket_basis(i, j));
                    let rhs = sd.apply(&d.varphi.col_vec(j));
                    let defect: Vector = lhs.iter().zip(&rhs).map(|(x, y)| x - y).collect();
                    Check::from_defect(vec![i, j], &defect)
                }
                None => Check::fail(vec![i, j], &[]),
            })
        })),
    );

    // representation-style identities for ρ
    let rho_defect = |i: usize, j: usize| -> Matrix {
        let mut of_bracket = Matrix::zero(h_dim, h_dim);
        for (k, coef) in d.bracket_s.bracket_basis(i, j).iter().enumerate() {
            if !coef.is_zero() {
                of_bracket = of_bracket.add(&d.rho[k].scale(coef));
            }
        }
        let commutator = d.rho[i]
            .mul(&d.rho[j])
            .sub(&d.rho[j].mul(&d.rho[i]))
            ;
        of_bracket.sub(&commutator)
    };
    push(
        "rho_im_theta_representation",
        Check::all((0..s_dim).flat_map(|i| {
            let d = &d;
            let rho_defect = &rho_defect;
            (i + 1..s_dim)
                .map(move |j| matrix_zero_check(vec![i, j], &rho_defect(i, j).mul(&d.theta)))
        })),
    );
    push(
        "rho_bracket_l_kernel",
        Check::all((0..s_dim).flat_map(|i| {
            let d = &d;
            let rho_defect = &rho_defect;
            (i + 1..s_dim)
                .map(move |j| matrix_zero_check(vec![i, j], &d.l_map.mul(&rho_defect(i, j))))
        })),
    );
    let derivation_defect = |m: &Matrix, a: usize, b: usize| -> Vector {
        let lhs = m.apply(&d.bracket_h.bracket_basis(a, b));
        let ua = vec_unit(h_dim, a);
        let ub = vec_unit(h_dim, b);
        let first = d.bracket_h.bracket(&m.apply(&ua), &ub);
        let second = d.bracket_h.bracket(&ua, &m.apply(&ub));
        lhs.iter()
            .zip(first.iter().zip(&second))
            .map(|(l, (f, s))| l - f - s)
            .collect()
    };
    push(
        "adjoint_phi_derivation",
        Check::all((0..s_dim).flat_map(|i| {
            let d = &d;
            let derivation_defect = &derivation_defect;
            (0..h_dim).flat_map(move |a| {
                let ad_phi = d.bracket_h.adjoint(&d.phi.col_vec(i));
                (a + 1..h_dim).map(move |b| {
                    Check::from_defect(vec![i, a, b], &derivation_defect(&ad_phi, a, b))
                })
            })
        })),
    );
    push(
        "rho_derivation_l_kernel",
        Check::all((0..s_dim).flat_map(|i| {
            let d = &d;
            let derivation_defect = &derivation_defect;
            (0..h_dim).flat_map(move |a| {
                (a + 1..h_dim).map(move |b| {
                    let defect = derivation_defect(&d.rho[i], a, b);
                    Check::from_defect(vec![i, a, b], &d.l_map.apply(&defect))
                })
            })
        })),
    );
    push(
        "rho_derivation_theta_kernel",
        Check::all((0..s_dim).flat_map(|i| {
            let d = &d;
            let derivation_defect = &derivation_defect;
            (0..h_dim).flat_map(move |a| {
                (a + 1..h_dim).map(move |b| {
                    let defect = derivation_defect(&d.rho[i], a, b);
                    Check::from_defect(vec![i, a, b], &d.theta.apply(&defect))
                })
            })
        })),
    );
    push(
        "rho_im_theta_derivation",
        Check::all((0..s_dim).flat_map(|i| {
            let d = &d;
            (0..h_dim).flat_map(move |a| {
                (0..h_dim).map(move |b| {
                    // ρ(x)([Θu, v]) = [ρ(x)Θu, v] + [Θu, ρ(x)v]
                    let theta_a = d.theta.col_vec(a);
                    let ub = vec_unit(h_dim, b);
                    let lhs = d.rho[i].apply(&d.bracket_h.bracket(&theta_a, &ub));
                    let first = d
                        .bracket_h
                        .bracket(&d.rho[i].apply(&theta_a), &ub);
                    let second = d.bracket_h.bracket(&theta_a, &d.rho[i].apply(&ub));
                    let defect: Vector = lhs
                        .iter()
                        .zip(first.iter().zip(&second))
                        .map(|(l, (f, s))| l - f - s)
                        .collect();
                    Check::from_defect(vec![i, a, b], &defect)
                })
            })
        })),
    );

    // ξ conjugates σ into the coadjoint action of 𝔰
    push(
        "xi_intertwines_sigma",
        Check::all((0..s_dim).map(|i| {
            let coad = extension::coadjoint(&d.bracket_s, &vec_unit(s_dim, i));
            let left = d.xi.mul(&d.sigma[i]);
            let right = coad.mul(&d.xi);
            matrix_zero_check(vec![i], &left.sub(&right))
        })),
    );

    // the twist annihilates every λ(x_i, x_j) as an ambient vector
    push(
        "twist_annihilates_lambda",
        Check::all((0..s_dim).flat_map(|i| {
            let d = &d;
            (i + 1..s_dim).map(move |j| {
                let ambient = d.h_basis.apply(&d.lambda[i][j]);
                Check::from_defect(vec![i, j], &q.apply_twist(&ambient))
            })
        })),
    );

    drop(push);
    DecompositionReport { checks }
}

/// σ(x_i) rewritten in dual coordinates: `ξ ∘ σ(x_i) ∘ ξ⁻¹`.
fn dual_sigma(d: &DecompositionData, i: usize) -> Option<Matrix> {
    let xi_inv = d.xi.inverse()?;
    Some(d.xi.mul(&d.sigma[i]).mul(&xi_inv))
}

fn matrix_zero_check(indices: Vec<usize>, m: &Matrix) -> Check {
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            if !m[(r, c)].is_zero() {
                let mut at = indices.clone();
                at.push(r);
                at.push(c);
                return Check::fail(at, &[m[(r, c)].clone()]);
            }
        }
    }
    Check::pass()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::linalg::{frac, int};

    fn flagship() -> QuadraticHomLieAlgebra {
        catalog::coadjoint_extension(3, &[(1, 2, 3, int(1))]).unwrap()
    }

    fn sl2_variant() -> QuadraticHomLieAlgebra {
        catalog::coadjoint_extension(2, &[(0, 1, 2, int(1))]).unwrap()
    }

    #[test]
    fn centroid_of_abelian_algebra_is_everything() {
        let g = HomLieAlgebra::new(StructureTensor::zero(3), Matrix::identity(3)).unwrap();
        assert_eq!(centroid_space(&g).dim(), 9);
    }

    #[test]
    fn centroid_of_simple_algebras_is_scalars() {
        assert_eq!(centroid_space(&catalog::sl(2).unwrap()).dim(), 1);
        assert_eq!(centroid_space(&catalog::sl(3).unwrap()).dim(), 1);
    }

    #[test]
    fn centroid_of_flagship_contains_identity_and_twist() {
        let q = flagship();
        let space = centroid_space(q.algebra());
        assert!(space.dim() >= 2);
        let n = q.dim();
        let flatten = |m: &Matrix| -> Vector {
            (0..n).flat_map(|i| m.row(i).to_vec()).collect()
        };
        assert!(space.contains(&flatten(&Matrix::identity(n))));
        assert!(space.contains(&flatten(q.twist())));
    }

    #[test]
    fn certify_simple_accepts_sl_and_rejects_sums() {
        assert!(certify_simple(&catalog::sl(2).unwrap()).simple);
        assert!(certify_simple(&catalog::sl(3).unwrap()).simple);

        let sum = catalog::sl(2)
            .unwrap()
            .direct_sum(&catalog::sl(2).unwrap());
        let cert = certify_simple(&sum);
        assert!(cert.is_lie && cert.killing_nondegenerate);
        assert_eq!(cert.centroid_dim, 2);
        assert!(!cert.simple);

        let abelian = HomLieAlgebra::new(StructureTensor::zero(2), Matrix::identity(2)).unwrap();
        let cert = certify_simple(&abelian);
        assert!(!cert.killing_nondegenerate);
        assert!(!cert.simple);
    }

    #[test]
    fn fitting_on_invertible_twist_has_no_nilpotent_block() {
        let g = catalog::sl(2).unwrap();
        let gram = catalog::killing(&g);
        let q = QuadraticHomLieAlgebra::new(g, gram).unwrap();
        let split = fitting(&q).unwrap();
        assert_eq!(split.ell, 0);
        assert_eq!(split.lie_part.dim(), 3);
        assert_eq!(split.nilpotent_part.dim(), 0);
    }

    #[test]
    fn fitting_on_nilpotent_twist_has_no_lie_block() {
        let q = flagship();
        let split = fitting(&q).unwrap();
        assert_eq!(split.lie_part.dim(), 0);
        assert_eq!(split.nilpotent_part.dim(), 16);
        assert_eq!(split.ell, 2);
    }

    #[test]
    fn fitting_splits_mixed_direct_sum() {
        let sl2 = catalog::sl(2).unwrap();
        let gram = catalog::killing(&sl2);
        let lie = QuadraticHomLieAlgebra::new(sl2, gram).unwrap();
        let q = lie.direct_sum(&flagship());
        let split = fitting(&q).unwrap();
        assert_eq!(split.ell, 2);
        assert_eq!(split.lie_part.dim(), 3);
        assert_eq!(split.nilpotent_part.dim(), 16);
        assert!(split.lie_part.twist().rank() == 3);
        let t = split.nilpotent_part.twist();
        assert!(t.mul(t).is_zero());
        // dimensions add and the blocks are orthogonal
        assert_eq!(split.lie_part.dim() + split.nilpotent_part.dim(), 19);
        for i in 0..3 {
            for j in 0..16 {
                let u = split.lie_embedding.col_vec(i);
                let v = split.nilpotent_embedding.col_vec(j);
                assert!(q.bilinear(&u, &v).is_zero());
            }
        }
    }

    #[test]
    fn fitting_requires_centroid_twist() {
        // identity twist on the Heisenberg algebra is not in the centroid
        let mut t = StructureTensor::zero(3);
        t.set(0, 1, 2, int(1));
        let g = HomLieAlgebra::new(t, Matrix::identity(3)).unwrap();
        let mut gram = Matrix::identity(3);
        gram[(0, 0)] = int(1);
        let q = QuadraticHomLieAlgebra::new(g, gram).unwrap();
        assert_eq!(fitting(&q).unwrap_err(), StructureError::MetricNotCompatible);
    }

    #[test]
    fn maximal_ideal_of_flagship_is_the_dual_block() {
        let q = flagship();
        let ideal = maximal_ideal(&q).unwrap();
        assert_eq!(ideal.dim(), 8);
        let n = q.dim();
        let dual_block = Subspace::from_vectors(
            n,
            &(8..16).map(|k| vec_unit(n, k)).collect::<Vec<_>>(),
        );
        assert_eq!(ideal, dual_block);
        let quotient = q.algebra().quotient(&ideal).unwrap();
        assert!(certify_simple(&quotient.algebra).simple);
        assert_eq!(quotient.algebra.dim(), 8);
    }

    #[test]
    fn maximal_ideal_of_sl2_semidirect_product_is_dual() {
        let q = catalog::coadjoint_extension(2, &[]).unwrap();
        let ideal = maximal_ideal(&q).unwrap();
        assert_eq!(ideal.dim(), 3);
        let quotient = q.algebra().quotient(&ideal).unwrap();
        assert!(certify_simple(&quotient.algebra).simple);
        assert_eq!(quotient.algebra.dim(), 3);
    }

    #[test]
    fn maximal_ideal_rejects_zero_twist_boundary() {
        // 1-dimensional abelian algebra with T = 0 has no simple quotient
        let g = HomLieAlgebra::new(StructureTensor::zero(1), Matrix::zero(1, 1)).unwrap();
        let q = QuadraticHomLieAlgebra::new(g, Matrix::identity(1)).unwrap();
        assert_eq!(maximal_ideal(&q).unwrap_err(), StructureError::NoSimpleQuotient);
    }

    #[test]
    fn maximal_ideal_rejects_invertible_twist() {
        let g = catalog::sl(2).unwrap();
        let gram = catalog::killing(&g);
        let q = QuadraticHomLieAlgebra::new(g, gram).unwrap();
        assert_eq!(maximal_ideal(&q).unwrap_err(), StructureError::TwistNotNilpotent);
    }

    #[test]
    fn maximal_ideal_splits_direct_sum_through_centroid() {
        // two copies of the 6-dim semidirect product: Ker+Im quotients to
        // sl2 ⊕ sl2, whose Killing form is nondegenerate but whose centroid
        // has dimension two, forcing a minimal-polynomial split
        let a = catalog::coadjoint_extension(2, &[]).unwrap();
        let q = a.direct_sum(&a);
        let ideal = maximal_ideal(&q).unwrap();
        assert_eq!(ideal.dim(), 9);
        let quotient = q.algebra().quotient(&ideal).unwrap();
        assert!(certify_simple(&quotient.algebra).simple);
    }

    #[test]
    fn decompose_flagship_recovers_catalog_data() {
        let q = flagship();
        let d = decompose(&q).unwrap();
        assert_eq!(d.s_dim(), 8);
        assert_eq!(d.h_dim(), 0);
        assert_eq!(d.iso_radical, d.maximal_ideal);
        // ξ is the identity pairing because the catalog builds B that way
        assert_eq!(d.xi, Matrix::identity(8));
        // φ = 0 and ϕ = Killing form of sl3
        assert!(d.phi.is_zero());
        let s_algebra = HomLieAlgebra::new(d.bracket_s.clone(), Matrix::identity(8)).unwrap();
        assert_eq!(d.varphi, catalog::killing(&s_algebra));
        // μ recovered equal to the seeded alternating tensor
        let expected = catalog::alternating_mu(8, &[(1, 2, 3, int(1))]).unwrap();
        assert_eq!(d.mu, expected);
    }

    #[test]
    fn decompose_sl2_semidirect_has_zero_mu() {
        let q = catalog::coadjoint_extension(2, &[]).unwrap();
        let d = decompose(&q).unwrap();
        assert_eq!(d.s_dim(), 3);
        assert_eq!(d.h_dim(), 0);
        assert!(d.mu.iter().all(Matrix::is_zero));
    }

    #[test]
    fn decompose_validates_and_reassembles_exactly() {
        for q in [flagship(), sl2_variant()] {
            let d = decompose(&q).unwrap();
            let report = validate_decomposition(&d, &q);
            assert!(report.passed(), "failed: {:?}", report.failures());
            assert!(reassemble(&d, &q).unwrap().passed);
        }
    }

    #[test]
    fn decompose_handles_orthogonal_direct_sums_via_middle_block() {
        // flagship ⊥⊕ flagship: the maximal ideal is one full summand plus
        // the dual block of the other, so the second summand reappears as a
        // sixteen-dimensional middle algebra of the extension
        let q = flagship().direct_sum(&flagship());
        let d = decompose(&q).unwrap();
        assert_eq!(d.s_dim(), 8);
        assert_eq!(d.h_dim(), 16);
        let report = validate_decomposition(&d, &q);
        assert!(report.passed(), "failed: {:?}", report.failures());
        assert!(reassemble(&d, &q).unwrap().passed);
    }

    #[test]
    fn twist_annihilates_extracted_lambda() {
        let q = flagship();
        let d = decompose(&q).unwrap();
        for i in 0..d.s_dim() {
            for j in i + 1..d.s_dim() {
                let ambient = d.h_basis.apply(&d.lambda[i][j]);
                assert!(vec_is_zero(&q.apply_twist(&ambient)));
            }
        }
    }

    #[test]
    fn validation_flags_tampered_mu_cyclicity() {
        let q = flagship();
        let mut d = decompose(&q).unwrap();
        d.mu[4][(1, 2)] += frac(1, 3);
        d.mu[4][(2, 1)] -= frac(1, 3);
        let report = validate_decomposition(&d, &q);
        assert!(!report.passed());
        assert!(report.failures().contains(&"mu_cyclic"));
    }
}
