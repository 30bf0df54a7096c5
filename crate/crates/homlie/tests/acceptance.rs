//! End-to-end acceptance suite: one test (one pass/fail line) per shipped
//! guarantee, exercising construction, certification, structure theory,
//! round trips, and serialization on top of the public API only.

use homlie::extension::{self, DoubleExtensionData};
use homlie::linalg::{frac, int, vec_is_zero, vec_zero, Matrix, Scalar, Subspace};
use homlie::{catalog, io, structure, verify, HomLieAlgebra, QuadraticHomLieAlgebra, StructureTensor};
use num::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;
use std::time::{Duration, Instant};

fn nonzero_grid() -> Vec<Scalar> {
    vec![
        int(1),
        int(-1),
        int(2),
        int(-2),
        frac(1, 2),
        frac(-1, 2),
        frac(1, 3),
        frac(3, 2),
    ]
}

/// Mostly-zero grid for sparse tables.
fn sparse_grid() -> Vec<Scalar> {
    vec![
        int(0),
        int(0),
        int(0),
        int(1),
        int(-1),
        frac(1, 2),
        int(2),
        int(0),
    ]
}

fn pick(rng: &mut ChaCha8Rng, grid: &[Scalar]) -> Scalar {
    grid[rng.gen_range(0..grid.len())].clone()
}

/// Random fully alternating `μ` from up to `max_free` seeded triples.
fn random_mu(rng: &mut ChaCha8Rng, dim: usize, max_free: usize) -> Vec<Matrix> {
    let count = rng.gen_range(0..=max_free);
    let mut free = Vec::new();
    let mut seen = BTreeSet::new();
    while free.len() < count {
        let mut idx = [
            rng.gen_range(0..dim),
            rng.gen_range(0..dim),
            rng.gen_range(0..dim),
        ];
        idx.sort_unstable();
        let (i, j, k) = (idx[0], idx[1], idx[2]);
        if i == j || j == k || !seen.insert((i, j, k)) {
            continue;
        }
        free.push((i, j, k, pick(rng, &nonzero_grid())));
    }
    catalog::alternating_mu(dim, &free).expect("triples are increasing and distinct")
}

/// Random `τ` tables satisfying the polarized antisymmetry
/// `τ(x_i)(u)(x_j) = −τ(x_j)(u)(x_i)`, nonzero only on `active` 𝔥-columns.
fn random_tau(rng: &mut ChaCha8Rng, s_dim: usize, h_dim: usize, active: &[usize]) -> Vec<Matrix> {
    let sparse = sparse_grid();
    let mut tau = vec![Matrix::zero(s_dim, h_dim); s_dim];
    for &a in active {
        for i in 0..s_dim {
            for j in i + 1..s_dim {
                let t = pick(rng, &sparse);
                if t.is_zero() {
                    continue;
                }
                tau[i][(j, a)] = t.clone();
                tau[j][(i, a)] = -t;
            }
        }
    }
    tau
}

struct Generated {
    data: DoubleExtensionData,
    /// Families constructed so the structure theory applies whenever the
    /// result is not Lie: the twist is nonzero nilpotent and no middle-block
    /// direction commutes with the whole algebra.
    structure_ready: bool,
}

/// `𝔥 = 0`: the cotangent family `𝔰 ⊕ 𝔰*` with random alternating `μ` and a
/// nonzero multiple of the Killing form as `ϕ`.
fn cotangent_instances(rng: &mut ChaCha8Rng, rank: usize, count: usize) -> Vec<Generated> {
    let s = catalog::sl(rank).expect("rank is 2 or 3");
    let dim = s.dim();
    let killing = catalog::killing(&s);
    (0..count)
        .map(|_| {
            let mu = random_mu(rng, dim, if dim > 3 { 3 } else { 1 });
            let varphi = killing.scale(&pick(rng, &nonzero_grid()));
            let data = DoubleExtensionData::new(
                s.tensor().clone(),
                StructureTensor::zero(0),
                Matrix::zero(0, 0),
                Matrix::zero(0, 0),
                Matrix::zero(0, dim),
                varphi,
                vec![Matrix::zero(0, 0); dim],
                vec![Matrix::zero(dim, 0); dim],
                mu,
            )
            .expect("shapes are consistent by construction");
            Generated {
                data,
                structure_ready: true,
            }
        })
        .collect()
}

/// One-dimensional abelian `𝔥`: skewness forces `ρ = 0`, so the line stays
/// bracket-central and the structure slice does not apply.
fn central_line_instances(rng: &mut ChaCha8Rng, rank: usize, count: usize) -> Vec<Generated> {
    let s = catalog::sl(rank).expect("rank is 2 or 3");
    let dim = s.dim();
    let killing = catalog::killing(&s);
    (0..count)
        .map(|_| {
            let gram_h = Matrix::from_fn(1, 1, |_, _| pick(rng, &nonzero_grid()));
            let data = DoubleExtensionData::new(
                s.tensor().clone(),
                StructureTensor::zero(1),
                Matrix::zero(1, 1),
                gram_h,
                Matrix::zero(1, dim),
                killing.scale(&pick(rng, &sparse_grid())),
                vec![Matrix::zero(1, 1); dim],
                random_tau(rng, dim, 1, &[0]),
                random_mu(rng, dim, if dim > 3 { 3 } else { 1 }),
            )
            .expect("shapes are consistent by construction");
            Generated {
                data,
                structure_ready: false,
            }
        })
        .collect()
}

/// Two-dimensional abelian `𝔥` with `Θ = 0` and `ρ` acting through the
/// rotation generator of `𝔬(2)`. The action is never a Lie-algebra
/// representation on a nonzero functional, so these are always non-Lie, and
/// the invertible rotation leaves no central direction in `𝔥`.
fn rotation_instances(rng: &mut ChaCha8Rng, rank: usize, count: usize) -> Vec<Generated> {
    let s = catalog::sl(rank).expect("rank is 2 or 3");
    let dim = s.dim();
    let killing = catalog::killing(&s);
    let mut j = Matrix::zero(2, 2);
    j[(0, 1)] = int(-1);
    j[(1, 0)] = int(1);
    (0..count)
        .map(|_| {
            let gram_h = Matrix::identity(2).scale(&pick(rng, &[int(1), int(2), frac(1, 2)]));
            let rho: Vec<Matrix> = (0..dim)
                .map(|i| {
                    let c = if i == 0 {
                        pick(rng, &nonzero_grid())
                    } else {
                        pick(rng, &sparse_grid())
                    };
                    j.scale(&c)
                })
                .collect();
            let data = DoubleExtensionData::new(
                s.tensor().clone(),
                StructureTensor::zero(2),
                Matrix::zero(2, 2),
                gram_h,
                Matrix::zero(2, dim),
                killing.scale(&pick(rng, &nonzero_grid())),
                rho,
                random_tau(rng, dim, 2, &[0, 1]),
                random_mu(rng, dim, if dim > 3 { 3 } else { 1 }),
            )
            .expect("shapes are consistent by construction");
            Generated {
                data,
                structure_ready: true,
            }
        })
        .collect()
}

/// Two-dimensional abelian `𝔥` with a nonzero nilpotent `Θ` (self-adjoint for
/// the hyperbolic form, which forces `ρ = 0` and kills the first `τ` column).
/// `Im(Θ)` stays bracket-central, so the structure slice does not apply.
fn shear_instances(rng: &mut ChaCha8Rng, rank: usize, count: usize) -> Vec<Generated> {
    let s = catalog::sl(rank).expect("rank is 2 or 3");
    let dim = s.dim();
    let killing = catalog::killing(&s);
    let mut theta = Matrix::zero(2, 2);
    theta[(0, 1)] = int(1);
    let mut gram_h = Matrix::zero(2, 2);
    gram_h[(0, 1)] = int(1);
    gram_h[(1, 0)] = int(1);
    (0..count)
        .map(|_| {
            let data = DoubleExtensionData::new(
                s.tensor().clone(),
                StructureTensor::zero(2),
                theta.clone(),
                gram_h.clone(),
                Matrix::zero(2, dim),
                killing.scale(&pick(rng, &sparse_grid())),
                vec![Matrix::zero(2, 2); dim],
                random_tau(rng, dim, 2, &[1]),
                random_mu(rng, dim, if dim > 3 { 3 } else { 1 }),
            )
            .expect("shapes are consistent by construction");
            Generated {
                data,
                structure_ready: false,
            }
        })
        .collect()
}

/// The deterministic randomized corpus shared by the bulk tests.
fn corpus() -> Vec<Generated> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x00C0_FFEE);
    let mut out = Vec::new();
    out.extend(cotangent_instances(&mut rng, 2, 30));
    out.extend(cotangent_instances(&mut rng, 3, 40));
    out.extend(central_line_instances(&mut rng, 2, 30));
    out.extend(central_line_instances(&mut rng, 3, 15));
    out.extend(rotation_instances(&mut rng, 2, 40));
    out.extend(rotation_instances(&mut rng, 3, 20));
    out.extend(shear_instances(&mut rng, 2, 25));
    out.extend(shear_instances(&mut rng, 3, 10));
    out
}

// The 16-dimensional running example: one seeded alternating coefficient on
// the second, third, and fourth sl3 basis vectors. Its untwisted Jacobi
// defect on the first three basis vectors is exactly −3 times the dual of
// the fourth, the full report certifies the axioms, and the bracket is not
// Lie.
#[test]
fn a1_seeded_rank3_extension_reproduces_the_exact_defect() {
    let start = Instant::now();
    let q = catalog::coadjoint_extension(3, &[(1, 2, 3, int(1))]).expect("catalog example builds");
    let defect = catalog::cyclic_defect(q.algebra(), 0, 1, 2);
    let mut expected = vec_zero(16);
    expected[8 + 3] = int(-3);
    assert_eq!(defect, expected);
    let report = verify::full_report(&q);
    assert!(report.homlie_jacobi.passed);
    assert!(report.centroid.passed);
    assert!(report.metric.as_ref().is_some_and(|m| m.passed()));
    assert!(!report.is_lie);
    assert!(
        start.elapsed() < Duration::from_secs(1),
        "took {:?}",
        start.elapsed()
    );
}

// Every randomized instance that passes the input hypotheses must build into
// an algebra passing the twisted Jacobi, centroid, and metric checks
// exhaustively — zero failures over at least 200 instances, within a minute.
#[test]
fn a2_randomized_double_extensions_build_and_certify() {
    let start = Instant::now();
    let corpus = corpus();
    assert!(corpus.len() >= 200, "only {} instances", corpus.len());
    for (n, g) in corpus.iter().enumerate() {
        let hypotheses = extension::check_hypotheses(&g.data);
        assert!(
            hypotheses.all_passed(),
            "instance {n} rejected: {:?}",
            hypotheses.failures()
        );
        let built = extension::build(&g.data).expect("hypotheses just passed");
        assert!(
            verify::check_homlie_jacobi(built.algebra()).passed,
            "instance {n}: twisted Jacobi"
        );
        assert!(
            verify::check_centroid(built.algebra()).passed,
            "instance {n}: centroid"
        );
        assert!(
            verify::check_metric(built.algebra(), built.gram()).passed(),
            "instance {n}: metric"
        );
    }
    assert!(
        start.elapsed() < Duration::from_secs(60),
        "took {:?}",
        start.elapsed()
    );
}

// Every generated non-Lie instance with nonzero nilpotent centroid twist and
// no built-in central direction must be perfect with trivial center, its
// maximal ideal must contain Ker(T) + Im(T) with a certified-simple quotient,
// and the `λ` table extracted by decomposition must be annihilated by the
// twist.
#[test]
fn a3_non_lie_instances_satisfy_the_structure_theory() {
    let mut covered = 0usize;
    for (n, g) in corpus().iter().enumerate() {
        if !g.structure_ready {
            continue;
        }
        let q = extension::build(&g.data).expect("corpus instances build");
        if verify::check_classical_jacobi(q.algebra()).passed {
            continue;
        }
        assert!(
            verify::nilpotency_index(q.twist()).is_some() && !q.twist().is_zero(),
            "instance {n}: twist must be nonzero nilpotent"
        );
        assert_eq!(
            q.algebra().derived_subalgebra().dim(),
            q.dim(),
            "instance {n}: perfect"
        );
        assert_eq!(q.algebra().center().dim(), 0, "instance {n}: center");
        let ideal = structure::maximal_ideal(&q).expect("twist is nonzero nilpotent");
        let kernel_plus_image = Subspace::kernel(q.twist()).sum(&Subspace::image(q.twist()));
        assert!(
            ideal.contains_subspace(&kernel_plus_image),
            "instance {n}: ideal must contain Ker(T)+Im(T)"
        );
        let quotient = q.algebra().quotient(&ideal).expect("ideal is twist-closed");
        assert!(
            structure::certify_simple(&quotient.algebra).simple,
            "instance {n}: quotient simplicity"
        );
        let d = structure::decompose(&q).expect("instance decomposes");
        for i in 0..d.s_dim() {
            for j in 0..d.s_dim() {
                let ambient = d.h_basis.apply(&d.lambda[i][j]);
                assert!(
                    vec_is_zero(&q.apply_twist(&ambient)),
                    "instance {n}: T(λ({i},{j})) ≠ 0"
                );
            }
        }
        covered += 1;
    }
    assert!(covered >= 60, "only {covered} non-Lie instances exercised");
}

// The Fitting split of sl2 (identity twist, Killing metric) orthogonally
// summed with the 16-dimensional running example recovers the 3- and
// 16-dimensional blocks at stabilization exponent 2, with an invertible
// twist on the Lie block and a square-zero twist on the other.
#[test]
fn a4_fitting_split_separates_lie_and_nilpotent_blocks() {
    let start = Instant::now();
    let sl2 = catalog::sl(2).expect("sl2 builds");
    let gram = catalog::killing(&sl2);
    let lie = QuadraticHomLieAlgebra::new(sl2, gram).expect("Killing form is invariant");
    let q = lie.direct_sum(
        &catalog::coadjoint_extension(3, &[(1, 2, 3, int(1))]).expect("catalog example builds"),
    );
    let split = structure::fitting(&q).expect("twist is centroid and metric-compatible");
    assert_eq!(split.ell, 2);
    assert_eq!(split.lie_part.dim(), 3);
    assert_eq!(split.nilpotent_part.dim(), 16);
    for i in 0..split.lie_part.dim() {
        for j in 0..split.nilpotent_part.dim() {
            assert!(q
                .bilinear(
                    &split.lie_embedding.col_vec(i),
                    &split.nilpotent_embedding.col_vec(j)
                )
                .is_zero());
        }
    }
    assert!(split.lie_part.twist().inverse().is_some());
    let t = split.nilpotent_part.twist();
    assert!(t.mul(t).is_zero());
    assert!(
        start.elapsed() < Duration::from_secs(1),
        "took {:?}",
        start.elapsed()
    );
}

// Decomposing and rebuilding returns the original structure constants,
// twist, and metric exactly, for both catalog examples.
#[test]
fn a5_decompose_and_rebuild_match_exactly() {
    let examples = [
        catalog::coadjoint_extension(3, &[(1, 2, 3, int(1))]).expect("catalog example builds"),
        catalog::coadjoint_extension(2, &[(0, 1, 2, int(1))]).expect("catalog example builds"),
    ];
    for q in &examples {
        let d = structure::decompose(q).expect("examples decompose");
        let validation = structure::validate_decomposition(&d, q);
        assert!(validation.passed(), "failed: {:?}", validation.failures());
        assert!(structure::reassemble(&d, q)
            .expect("extracted data rebuilds")
            .passed);
    }
}

// With every connecting map zero (μ = τ = φ = 0 and ϕ = 0) the construction
// degenerates to the semidirect cotangent algebra, which satisfies the
// untwisted Jacobi identity exhaustively.
#[test]
fn a6_classical_limit_is_a_lie_algebra() {
    for rank in [2usize, 3] {
        let s = catalog::sl(rank).expect("rank is 2 or 3");
        let dim = s.dim();
        let data = DoubleExtensionData::new(
            s.tensor().clone(),
            StructureTensor::zero(0),
            Matrix::zero(0, 0),
            Matrix::zero(0, 0),
            Matrix::zero(0, dim),
            Matrix::zero(dim, dim),
            vec![Matrix::zero(0, 0); dim],
            vec![Matrix::zero(dim, 0); dim],
            vec![Matrix::zero(dim, dim); dim],
        )
        .expect("shapes are consistent by construction");
        let (q, report) = extension::build_and_certify(&data).expect("hypotheses hold trivially");
        assert!(report.passed());
        assert!(verify::check_classical_jacobi(q.algebra()).passed);
        assert!(report.is_lie);
    }
    // keeping ϕ = Killing (the catalog default) still yields a Lie algebra
    // when μ = 0: the twist alone never breaks the Jacobi identity
    let q = catalog::coadjoint_extension(3, &[]).expect("catalog example builds");
    assert!(verify::full_report(&q).is_lie);
}

// One hundred randomized algebras, with and without metrics and labels,
// round-trip bit-exactly through the JSON format; malformed inputs are
// rejected with their documented error codes.
#[test]
fn a7_algebra_files_round_trip_and_reject_malformed_input() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0000_5EED);
    for case in 0..100 {
        let dim = rng.gen_range(1..=5);
        let mut tensor = StructureTensor::zero(dim);
        for i in 0..dim {
            for j in i + 1..dim {
                if rng.gen_bool(0.4) {
                    continue;
                }
                let mut value = vec_zero(dim);
                for _ in 0..rng.gen_range(1..=2) {
                    value[rng.gen_range(0..dim)] = pick(&mut rng, &sparse_grid());
                }
                tensor.set_bracket(i, j, value);
            }
        }
        let twist = Matrix::from_fn(dim, dim, |_, _| pick(&mut rng, &sparse_grid()));
        let mut algebra = HomLieAlgebra::new(tensor, twist).expect("square twist");
        if rng.gen_bool(0.3) {
            algebra = algebra
                .with_labels((1..=dim).map(|i| format!("v{i}")).collect())
                .expect("one label per basis vector");
        }
        if case % 5 < 3 {
            let gram = Matrix::from_fn(dim, dim, |r, c| {
                if r == c {
                    pick(&mut rng, &nonzero_grid())
                } else {
                    int(0)
                }
            });
            let q = QuadraticHomLieAlgebra::new(algebra, gram).expect("diagonal nonzero metric");
            let text = io::serialize_algebra(&q);
            let parsed = io::parse_algebra(&text).expect("own output parses");
            assert_eq!(parsed.quadratic().expect("metric kept"), &q);
            assert_eq!(io::serialize_algebra(parsed.quadratic().expect("metric kept")), text);
        } else {
            let text = io::serialize_algebra_plain(&algebra);
            let parsed = io::parse_algebra(&text).expect("own output parses");
            assert!(parsed.quadratic().is_none());
            assert_eq!(parsed.algebra(), &algebra);
            assert_eq!(io::serialize_algebra_plain(parsed.algebra()), text);
        }
    }

    let reject = |text: &str, code: &str| {
        let err = io::parse_algebra(text).expect_err("malformed input must be rejected");
        assert_eq!(err.code(), code, "input: {text}");
    };
    reject("{", "bad_json");
    reject(
        r#"{"schema_version":"1","dim":1,"bracket":[],"twist":[["0"]],"extra":0}"#,
        "bad_json",
    );
    reject(
        r#"{"schema_version":"9","dim":1,"bracket":[],"twist":[["0"]]}"#,
        "unsupported_schema_version",
    );
    reject(
        r#"{"schema_version":"1","dim":2,"bracket":[[0,1,0,"x"]],"twist":[["1","0"],["0","1"]]}"#,
        "malformed_rational",
    );
    reject(
        r#"{"schema_version":"1","dim":2,"bracket":[[0,1,0,"1/0"]],"twist":[["1","0"],["0","1"]]}"#,
        "zero_denominator",
    );
    reject(
        r#"{"schema_version":"1","dim":2,"bracket":[[1,0,0,"1"]],"twist":[["1","0"],["0","1"]]}"#,
        "bracket_index_order",
    );
    reject(
        r#"{"schema_version":"1","dim":2,"bracket":[[0,1,5,"1"]],"twist":[["1","0"],["0","1"]]}"#,
        "index_out_of_range",
    );
    reject(
        r#"{"schema_version":"1","dim":2,"bracket":[[0,1,0,"1"],[0,1,0,"2"]],"twist":[["1","0"],["0","1"]]}"#,
        "duplicate_bracket_entry",
    );
    reject(
        r#"{"schema_version":"1","dim":2,"bracket":[],"twist":[["1","0"]]}"#,
        "shape_mismatch",
    );
    reject(
        r#"{"schema_version":"1","dim":2,"bracket":[],"twist":[["1","0"],["0","1"]],"metric":[["1","2"],["0","1"]]}"#,
        "metric_not_symmetric",
    );
    reject(
        r#"{"schema_version":"1","dim":2,"bracket":[],"twist":[["1","0"],["0","1"]],"metric":[["1","1"],["1","1"]]}"#,
        "metric_degenerate",
    );
}
