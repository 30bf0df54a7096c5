//! Check results and reports. Every verification in this crate is exact:
//! a check either passes or fails with a witness that reproduces the
//! failure when re-evaluated.

use crate::linalg::{format_scalar, vec_is_zero, Scalar};
use serde::Serialize;

/// Exact counterexample attached to a failed check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    /// Basis indices at which the identity was evaluated.
    pub indices: Vec<usize>,
    /// The nonzero defect (vector coordinates or a single scalar), formatted
    /// exactly as rationals.
    pub defect: Vec<String>,
}

/// Outcome of one exact check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl Check {
    pub fn pass() -> Self {
        Check {
            passed: true,
            witness: None,
        }
    }

    pub fn fail(indices: Vec<usize>, defect: &[Scalar]) -> Self {
        Check {
            passed: false,
            witness: Some(Witness {
                indices,
                defect: defect.iter().map(format_scalar).collect(),
            }),
        }
    }

    /// Passes iff the defect vector is zero; otherwise records it.
    pub fn from_defect(indices: Vec<usize>, defect: &[Scalar]) -> Self {
        if vec_is_zero(defect) {
            Check::pass()
        } else {
            Check::fail(indices, defect)
        }
    }

    /// Combines sequentially: the first failure wins.
    pub fn and(self, other: Check) -> Check {
        if self.passed {
            other
        } else {
            self
        }
    }

    /// First failure among many, or a pass.
    pub fn all(checks: impl IntoIterator<Item = Check>) -> Check {
        for c in checks {
            if !c.passed {
                return c;
            }
        }
        Check::pass()
    }
}

/// A check with a stable name, for list-shaped reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NamedCheck {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl NamedCheck {
    pub fn new(name: &str, check: Check) -> Self {
        NamedCheck {
            name: name.to_string(),
            passed: check.passed,
            witness: check.witness,
        }
    }
}

/// The four sub-checks on a candidate metric.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MetricReport {
    /// Gram matrix is symmetric.
    pub symmetric: Check,
    /// Gram matrix has full rank.
    pub nondegenerate: Check,
    /// `B([x,y],z) = B(x,[y,z])` on all basis triples.
    pub invariant: Check,
    /// `B(T x, y) = B(x, T y)`, i.e. `Tᵀ·G = G·T`.
    pub twist_self_adjoint: Check,
}

impl MetricReport {
    pub fn passed(&self) -> bool {
        self.symmetric.passed
            && self.nondegenerate.passed
            && self.invariant.passed
            && self.twist_self_adjoint.passed
    }
}

/// Full verification report for an algebra, aggregating the axiom checks
/// with derived structural facts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlgebraReport {
    pub dim: usize,
    /// `[x, x] = 0` under evaluation (regression guard on the evaluator).
    pub skew: Check,
    /// Twisted Jacobi identity `[T x,[y,z]] + [T y,[z,x]] + [T z,[x,y]] = 0`.
    pub homlie_jacobi: Check,
    /// Untwisted Jacobi identity (informational: a genuine Hom-Lie algebra
    /// fails this without failing verification).
    pub classical_jacobi: Check,
    /// `T[x,y] = [T x, y] = [x, T y]`.
    pub centroid: Check,
    /// Metric checks; absent when the algebra carries no metric.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub metric: Option<MetricReport>,
    /// Same as `classical_jacobi.passed`.
    pub is_lie: bool,
    /// `[𝔤, 𝔤] = 𝔤`.
    pub is_perfect: bool,
    pub has_trivial_center: bool,
    pub twist_nilpotent: bool,
    /// Smallest `ℓ` with `T^ℓ = 0`, when `T` is nilpotent.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nilpotency_index: Option<usize>,
    pub twist_kernel_dim: usize,
    pub twist_rank: usize,
}

impl AlgebraReport {
    /// The verification verdict: the defining axioms hold. `classical_jacobi`
    /// and the structural facts are informational and do not gate this.
    pub fn passed(&self) -> bool {
        self.skew.passed
            && self.homlie_jacobi.passed
            && self.centroid.passed
            && self.metric.as_ref().is_none_or(MetricReport::passed)
    }
}

/// Results of checking the compatibility hypotheses on double-extension
/// input data. The letters A–G are the stable public names of the seven
/// conditions; each doc comment states the identity checked.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HypothesisReport {
    /// `(𝔰, [,]_𝔰)` satisfies the classical Jacobi identity.
    pub s_is_lie: Check,
    /// `(𝔥, [,]_𝔥, Θ, B_𝔥)` is a quadratic Hom-Lie algebra with `Θ` in the
    /// centroid and `B_𝔥`-self-adjoint.
    pub h_is_quadratic_homlie: Check,
    /// Each `ρ(x)` is skew with respect to `B_𝔥`.
    pub rho_skew: Check,
    /// (A) `ϕ` is symmetric: `ϕ(x)(y) = ϕ(y)(x)`.
    #[serde(rename = "A")]
    pub a: Check,
    /// (B) `Θ∘ρ(x) = ρ(x)∘Θ = ad_𝔥(φ(x))`, and this map is a derivation
    /// of `[,]_𝔥`.
    #[serde(rename = "B")]
    pub b: Check,
    /// (C) `φ([x,y]_𝔰) = ρ(x)(φ(y))`.
    #[serde(rename = "C")]
    pub c: Check,
    /// (D) `ϕ([x,y]_𝔰) = ad*(x)(ϕ(y))`, the coadjoint action on `𝔰*`.
    #[serde(rename = "D")]
    pub d: Check,
    /// (E) `ρ` restricts to a Lie-algebra representation on `Im(Θ)` by
    /// derivations of the subalgebra `Im(Θ)`.
    #[serde(rename = "E")]
    pub e: Check,
    /// (F) `τ(x)∘Θ = 0`, `τ(x)∘φ = 0`, and `τ(x)(u)(x) = 0` for all `x, u`.
    #[serde(rename = "F")]
    pub f: Check,
    /// (G) `μ` is cyclic: `μ(x,y)(z) = μ(y,z)(x)`.
    #[serde(rename = "G")]
    pub g: Check,
}

impl HypothesisReport {
    pub fn all_passed(&self) -> bool {
        self.failures().is_empty()
    }

    /// Names of the failed hypotheses, in report order.
    pub fn failures(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        let mut push = |name, check: &Check| {
            if !check.passed {
                out.push(name);
            }
        };
        push("s_is_lie", &self.s_is_lie);
        push("h_is_quadratic_homlie", &self.h_is_quadratic_homlie);
        push("rho_skew", &self.rho_skew);
        push("A", &self.a);
        push("B", &self.b);
        push("C", &self.c);
        push("D", &self.d);
        push("E", &self.e);
        push("F", &self.f);
        push("G", &self.g);
        out
    }
}

/// Certificate that an algebra is (or is not) simple as a Lie algebra:
/// classical Jacobi + nondegenerate Killing form + one-dimensional centroid.
/// Killing-nondegeneracy gives semisimplicity; the centroid dimension is at
/// least the number of simple summands, so dimension one pins it to a single
/// summand.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimplicityCertificate {
    pub is_lie: bool,
    pub killing_nondegenerate: bool,
    pub centroid_dim: usize,
    pub simple: bool,
}

/// Report from validating extracted decomposition data against its source
/// algebra: one named check per structural identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecompositionReport {
    pub checks: Vec<NamedCheck>,
}

impl DecompositionReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&str> {
        self.checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.name.as_str())
            .collect()
    }
}
