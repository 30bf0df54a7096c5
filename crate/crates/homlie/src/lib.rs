//! Exact-arithmetic library for quadratic Hom-Lie algebras over the rationals.
//!
//! Everything here is computed with arbitrary-precision rational numbers; there
//! is no floating point and every check either passes exactly or fails with an
//! exact witness. The main entry points are:
//!
//! * [`linalg`] — dense rational matrices, canonical row reduction, subspaces;
//! * [`algebra`] — structure tensors, Hom-Lie algebras, ideals and quotients;
//! * [`verify`] — exhaustive axiom checks producing witness-carrying reports;
//! * [`structure`] — Fitting splits, maximal ideals, simplicity certificates
//!   and the full decomposition of an algebra into its extension data;
//! * [`extension`] — the double-extension constructor assembling a quadratic
//!   Hom-Lie algebra on `s ⊕ h ⊕ s*` from compatible data;
//! * [`catalog`] — built-in generators (`sl2`, `sl3`, Killing forms, the
//!   coadjoint example family);
//! * [`io`] — strict JSON serialization of algebras, extension data and
//!   reports.

pub mod algebra;
pub mod catalog;
pub mod extension;
pub mod io;
pub mod linalg;
pub mod report;
pub mod structure;
pub mod verify;

pub use algebra::{HomLieAlgebra, QuadraticHomLieAlgebra, StructureTensor};
pub use extension::DoubleExtensionData;
pub use linalg::{Matrix, Scalar, Subspace};
pub use report::{AlgebraReport, Check, HypothesisReport, Witness};
