//! Strict JSON formats for algebras and extension data.
//!
//! Rationals are encoded as strings (`"p/q"` or `"p"`) so generic JSON
//! tooling cannot coerce them to floats. Unknown fields are rejected: a
//! mistyped key in an extension file would otherwise silently change the
//! constructed algebra. Serialization is canonical — bracket entries are
//! sorted with `i < j` and zero coefficients dropped — so
//! `serialize ∘ parse ∘ serialize = serialize`.

use crate::algebra::{AlgebraError, HomLieAlgebra, QuadraticHomLieAlgebra, StructureTensor};
use crate::extension::{DoubleExtensionData, ExtensionError};
use crate::linalg::{format_scalar, parse_scalar, Matrix, ScalarParseError};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const SCHEMA_VERSION: &str = "1";

/// Parse/validation failures, each with a stable machine-readable code and a
/// human-readable location.
#[derive(Debug, Error)]
pub enum FormatError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported schema_version {0:?} (expected \"1\")")]
    UnsupportedSchemaVersion(String),
    #[error("malformed rational {text:?} at {location}")]
    MalformedRational { location: String, text: String },
    #[error("zero denominator in {text:?} at {location}")]
    ZeroDenominator { location: String, text: String },
    #[error("bracket indices must satisfy i<j, got ({i},{j}) at {location}")]
    BracketIndexOrder { location: String, i: usize, j: usize },
    #[error("index {index} out of range for dimension {dim} at {location}")]
    IndexOutOfRange {
        location: String,
        index: usize,
        dim: usize,
    },
    #[error("duplicate bracket entry for ({i},{j},{k}) at {location}")]
    DuplicateBracketEntry {
        location: String,
        i: usize,
        j: usize,
        k: usize,
    },
    #[error("{location} must be {expected}, got {got}")]
    ShapeMismatch {
        location: String,
        expected: String,
        got: String,
    },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Extension(#[from] ExtensionError),
}

impl FormatError {
    /// Stable machine-readable error code.
    pub fn code(&self) -> &'static str {
        match self {
            FormatError::Json(_) => "bad_json",
            FormatError::UnsupportedSchemaVersion(_) => "unsupported_schema_version",
            FormatError::MalformedRational { .. } => "malformed_rational",
            FormatError::ZeroDenominator { .. } => "zero_denominator",
            FormatError::BracketIndexOrder { .. } => "bracket_index_order",
            FormatError::IndexOutOfRange { .. } => "index_out_of_range",
            FormatError::DuplicateBracketEntry { .. } => "duplicate_bracket_entry",
            FormatError::ShapeMismatch { .. } => "shape_mismatch",
            FormatError::Algebra(AlgebraError::MetricNotSymmetric { .. }) => "metric_not_symmetric",
            FormatError::Algebra(AlgebraError::MetricDegenerate) => "metric_degenerate",
            FormatError::Algebra(_) => "invalid_algebra",
            FormatError::Extension(ExtensionError::MuNotAntisymmetric { .. }) => {
                "mu_not_antisymmetric"
            }
            FormatError::Extension(ExtensionError::GramNotSymmetric) => "metric_not_symmetric",
            FormatError::Extension(ExtensionError::GramDegenerate) => "metric_degenerate",
            FormatError::Extension(ExtensionError::ShapeMismatch(_)) => "shape_mismatch",
            FormatError::Extension(_) => "invalid_extension",
        }
    }
}

/// On-disk form of an algebra: sparse bracket entries `[i, j, k, "p/q"]`
/// with `i < j` (0-based), dense twist, optional dense metric and labels.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub schema_version: String,
    pub dim: usize,
    pub bracket: Vec<(usize, usize, usize, String)>,
    pub twist: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub metric: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

/// On-disk form of double-extension input data; shapes follow
/// [`DoubleExtensionData`].
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ExtensionFile {
    pub schema_version: String,
    pub s_dim: usize,
    pub h_dim: usize,
    pub bracket_s: Vec<(usize, usize, usize, String)>,
    pub bracket_h: Vec<(usize, usize, usize, String)>,
    pub theta: Vec<Vec<String>>,
    pub gram_h: Vec<Vec<String>>,
    pub phi: Vec<Vec<String>>,
    pub varphi: Vec<Vec<String>>,
    pub rho: Vec<Vec<Vec<String>>>,
    pub tau: Vec<Vec<Vec<String>>>,
    pub mu: Vec<Vec<Vec<String>>>,
}

/// Result of parsing an algebra file: the metric block is optional.
#[derive(Debug, Clone)]
pub enum ParsedAlgebra {
    WithMetric(QuadraticHomLieAlgebra),
    WithoutMetric(HomLieAlgebra),
}

impl ParsedAlgebra {
    pub fn algebra(&self) -> &HomLieAlgebra {
        match self {
            ParsedAlgebra::WithMetric(q) => q.algebra(),
            ParsedAlgebra::WithoutMetric(g) => g,
        }
    }

    pub fn quadratic(&self) -> Option<&QuadraticHomLieAlgebra> {
        match self {
            ParsedAlgebra::WithMetric(q) => Some(q),
            ParsedAlgebra::WithoutMetric(_) => None,
        }
    }
}

fn scalar_at(text: &str, location: impl Fn() -> String) -> Result<crate::linalg::Scalar, FormatError> {
    parse_scalar(text).map_err(|e| match e {
        ScalarParseError::Malformed(t) => FormatError::MalformedRational {
            location: location(),
            text: t,
        },
        ScalarParseError::ZeroDenominator(t) => FormatError::ZeroDenominator {
            location: location(),
            text: t,
        },
    })
}

/// Parses a dense matrix with an exact expected shape. An empty list of rows
/// is accepted for zero-row shapes regardless of the expected column count.
fn parse_matrix(
    rows: &[Vec<String>],
    expected_rows: usize,
    expected_cols: usize,
    name: &str,
) -> Result<Matrix, FormatError> {
    if rows.len() != expected_rows {
        return Err(FormatError::ShapeMismatch {
            location: name.to_string(),
            expected: format!("{expected_rows}×{expected_cols}"),
            got: format!("{} rows", rows.len()),
        });
    }
    let mut m = Matrix::zero(expected_rows, expected_cols);
    for (i, row) in rows.iter().enumerate() {
        if row.len() != expected_cols {
            return Err(FormatError::ShapeMismatch {
                location: format!("{name}[{i}]"),
                expected: format!("{expected_cols} entries"),
                got: format!("{} entries", row.len()),
            });
        }
        for (j, text) in row.iter().enumerate() {
            m[(i, j)] = scalar_at(text, || format!("{name}[{i}][{j}]"))?;
        }
    }
    Ok(m)
}

fn serialize_matrix(m: &Matrix) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(format_scalar).collect())
        .collect()
}

fn parse_bracket(
    entries: &[(usize, usize, usize, String)],
    dim: usize,
    name: &str,
) -> Result<StructureTensor, FormatError> {
    let mut tensor = StructureTensor::zero(dim);
    let mut seen = std::collections::BTreeSet::new();
    for (n, (i, j, k, text)) in entries.iter().enumerate() {
        let location = || format!("{name}[{n}]");
        for &index in [i, j, k].iter() {
            if *index >= dim {
                return Err(FormatError::IndexOutOfRange {
                    location: location(),
                    index: *index,
                    dim,
                });
            }
        }
        if i >= j {
            return Err(FormatError::BracketIndexOrder {
                location: location(),
                i: *i,
                j: *j,
            });
        }
        if !seen.insert((*i, *j, *k)) {
            return Err(FormatError::DuplicateBracketEntry {
                location: location(),
                i: *i,
                j: *j,
                k: *k,
            });
        }
        tensor.set(*i, *j, *k, scalar_at(text, location)?);
    }
    Ok(tensor)
}

fn serialize_bracket(tensor: &StructureTensor) -> Vec<(usize, usize, usize, String)> {
    tensor
        .entries()
        .into_iter()
        .map(|(i, j, k, c)| (i, j, k, format_scalar(&c)))
        .collect()
}

fn check_schema_version(version: &str) -> Result<(), FormatError> {
    if version == SCHEMA_VERSION {
        Ok(())
    } else {
        Err(FormatError::UnsupportedSchemaVersion(version.to_string()))
    }
}

/// Parses an algebra from JSON text, validating every entry.
pub fn parse_algebra(text: &str) -> Result<ParsedAlgebra, FormatError> {
    let file: AlgebraFile = serde_json::from_str(text)?;
    check_schema_version(&file.schema_version)?;
    let tensor = parse_bracket(&file.bracket, file.dim, "bracket")?;
    let twist = parse_matrix(&file.twist, file.dim, file.dim, "twist")?;
    let mut algebra = HomLieAlgebra::new(tensor, twist)?;
    if let Some(labels) = file.labels {
        algebra = algebra.with_labels(labels)?;
    }
    match file.metric {
        Some(rows) => {
            let gram = parse_matrix(&rows, file.dim, file.dim, "metric")?;
            Ok(ParsedAlgebra::WithMetric(QuadraticHomLieAlgebra::new(
                algebra, gram,
            )?))
        }
        None => Ok(ParsedAlgebra::WithoutMetric(algebra)),
    }
}

/// Canonical JSON for an algebra with a metric.
pub fn serialize_algebra(q: &QuadraticHomLieAlgebra) -> String {
    let file = AlgebraFile {
        schema_version: SCHEMA_VERSION.to_string(),
        dim: q.dim(),
        bracket: serialize_bracket(q.algebra().tensor()),
        twist: serialize_matrix(q.twist()),
        metric: Some(serialize_matrix(q.gram())),
        labels: q.algebra().labels().map(<[String]>::to_vec),
    };
    serde_json::to_string_pretty(&file).expect("algebra files always serialize")
}

/// Canonical JSON for an algebra without a metric.
pub fn serialize_algebra_plain(g: &HomLieAlgebra) -> String {
    let file = AlgebraFile {
        schema_version: SCHEMA_VERSION.to_string(),
        dim: g.dim(),
        bracket: serialize_bracket(g.tensor()),
        twist: serialize_matrix(g.twist()),
        metric: None,
        labels: g.labels().map(<[String]>::to_vec),
    };
    serde_json::to_string_pretty(&file).expect("algebra files always serialize")
}

/// Parses extension input data from JSON text; all shape and tensor
/// invariants are re-validated by [`DoubleExtensionData::new`].
pub fn parse_extension(text: &str) -> Result<DoubleExtensionData, FormatError> {
    let file: ExtensionFile = serde_json::from_str(text)?;
    check_schema_version(&file.schema_version)?;
    let (s, h) = (file.s_dim, file.h_dim);
    let bracket_s = parse_bracket(&file.bracket_s, s, "bracket_s")?;
    let bracket_h = parse_bracket(&file.bracket_h, h, "bracket_h")?;
    let theta = parse_matrix(&file.theta, h, h, "theta")?;
    let gram_h = parse_matrix(&file.gram_h, h, h, "gram_h")?;
    let phi = parse_matrix(&file.phi, h, s, "phi")?;
    let varphi = parse_matrix(&file.varphi, s, s, "varphi")?;
    let list = |blocks: &[Vec<Vec<String>>],
                rows: usize,
                cols: usize,
                name: &str|
     -> Result<Vec<Matrix>, FormatError> {
        if blocks.len() != s {
            return Err(FormatError::ShapeMismatch {
                location: name.to_string(),
                expected: format!("{s} matrices"),
                got: format!("{}", blocks.len()),
            });
        }
        blocks
            .iter()
            .enumerate()
            .map(|(n, block)| parse_matrix(block, rows, cols, &format!("{name}[{n}]")))
            .collect()
    };
    let rho = list(&file.rho, h, h, "rho")?;
    let tau = list(&file.tau, s, h, "tau")?;
    let mu = list(&file.mu, s, s, "mu")?;
    Ok(DoubleExtensionData::new(
        bracket_s, bracket_h, theta, gram_h, phi, varphi, rho, tau, mu,
    )?)
}

/// On-disk form of a full decomposition: the extracted extension input plus
/// every named block produced alongside it. Subspaces are written as their
/// canonical row-reduced bases (rows are ambient coordinate vectors); basis
/// blocks are ambient-column matrices.
#[derive(Serialize, Debug, Clone, PartialEq, Eq)]
pub struct DecompositionFile {
    pub schema_version: String,
    pub s_dim: usize,
    pub h_dim: usize,
    pub maximal_ideal: Vec<Vec<String>>,
    pub iso_radical: Vec<Vec<String>>,
    pub h_space: Vec<Vec<String>>,
    pub s_space: Vec<Vec<String>>,
    pub s_basis: Vec<Vec<String>>,
    pub h_basis: Vec<Vec<String>>,
    pub radical_basis: Vec<Vec<String>>,
    pub xi: Vec<Vec<String>>,
    pub extension: ExtensionFile,
    pub sigma: Vec<Vec<Vec<String>>>,
    /// `gamma[a][b]` is a dual-coordinate vector of length `s_dim`.
    pub gamma: Vec<Vec<Vec<String>>>,
    /// `lambda[i][j]` is an `h`-coordinate vector of length `h_dim`.
    pub lambda: Vec<Vec<Vec<String>>>,
    pub l_map: Vec<Vec<String>>,
}

/// Canonical JSON for extracted decomposition data.
pub fn serialize_decomposition(d: &crate::structure::DecompositionData) -> String {
    let subspace = |s: &crate::linalg::Subspace| serialize_matrix(s.basis_matrix());
    let vectors = |table: &[Vec<crate::linalg::Vector>]| -> Vec<Vec<Vec<String>>> {
        table
            .iter()
            .map(|row| {
                row.iter()
                    .map(|v| v.iter().map(format_scalar).collect())
                    .collect()
            })
            .collect()
    };
    let extension = ExtensionFile {
        schema_version: SCHEMA_VERSION.to_string(),
        s_dim: d.s_dim(),
        h_dim: d.h_dim(),
        bracket_s: serialize_bracket(&d.bracket_s),
        bracket_h: serialize_bracket(&d.bracket_h),
        theta: serialize_matrix(&d.theta),
        gram_h: serialize_matrix(&d.gram_h),
        phi: serialize_matrix(&d.phi),
        varphi: serialize_matrix(&d.varphi),
        rho: d.rho.iter().map(serialize_matrix).collect(),
        tau: d.tau.iter().map(serialize_matrix).collect(),
        mu: d.mu.iter().map(serialize_matrix).collect(),
    };
    let file = DecompositionFile {
        schema_version: SCHEMA_VERSION.to_string(),
        s_dim: d.s_dim(),
        h_dim: d.h_dim(),
        maximal_ideal: subspace(&d.maximal_ideal),
        iso_radical: subspace(&d.iso_radical),
        h_space: subspace(&d.h_space),
        s_space: subspace(&d.s_space),
        s_basis: serialize_matrix(&d.s_basis),
        h_basis: serialize_matrix(&d.h_basis),
        radical_basis: serialize_matrix(&d.radical_basis),
        xi: serialize_matrix(&d.xi),
        extension,
        sigma: d.sigma.iter().map(serialize_matrix).collect(),
        gamma: vectors(&d.gamma),
        lambda: vectors(&d.lambda),
        l_map: serialize_matrix(&d.l_map),
    };
    serde_json::to_string_pretty(&file).expect("decomposition files always serialize")
}

/// Canonical JSON for extension input data.
pub fn serialize_extension(d: &DoubleExtensionData) -> String {
    let file = ExtensionFile {
        schema_version: SCHEMA_VERSION.to_string(),
        s_dim: d.s_dim(),
        h_dim: d.h_dim(),
        bracket_s: serialize_bracket(d.bracket_s()),
        bracket_h: serialize_bracket(d.bracket_h()),
        theta: serialize_matrix(d.theta()),
        gram_h: serialize_matrix(d.gram_h()),
        phi: serialize_matrix(d.phi()),
        varphi: serialize_matrix(d.varphi()),
        rho: d.rho().iter().map(serialize_matrix).collect(),
        tau: d.tau().iter().map(serialize_matrix).collect(),
        mu: d.mu().iter().map(serialize_matrix).collect(),
    };
    serde_json::to_string_pretty(&file).expect("extension files always serialize")
}
