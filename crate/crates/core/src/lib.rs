//! Exact computations around signatures of type-A root systems.
//!
//! - [`linalg`]: determinants, rank and Smith normal form over the integers.
//! - [`roots`]: positive roots of `A_n`, coefficient matrices and root graphs.
//! - [`signature`]: signatures by cofactors and by cycles, the exhaustive
//!   census and its closed form.
//! - [`deformation`]: deformation matrices and the Shi, Catalan, Linial and
//!   Ish cones.
//! - [`tutte`]: `T(1,1)` and `T^arith(1,1)` by base enumeration and by formula.
//! - [`quasi`]: point counts mod `q`, lcm periods and characteristic
//!   quasi-polynomials.

pub mod combin;
pub mod deformation;
pub mod error;
pub mod eulerian;
pub mod json;
pub mod linalg;
pub mod quasi;
pub mod roots;
pub mod signature;
pub mod tutte;

pub use deformation::{
    build_catalan, build_general, build_ish, build_linial, build_shi, build_uniform, ColumnLabel,
    DeformationMatrix, DeformationSpec, Family,
};
pub use error::{Error, ErrorClass, Result};
pub use eulerian::{cyclic_eulerian, eulerian, EulerianTable};
pub use linalg::{IntMatrix, SmithForm};
pub use quasi::{
    complement_count, complement_count_affine, fit_quasipolynomial, lcm_period_exact,
    mu_period_bound, period_formula, period_formula_ish, period_report, PeriodReport,
    QuasiPolynomial,
};
pub use roots::{positive_roots, PositiveRoot, RootGraph, RootTuple};
pub use signature::{
    census_bruteforce, partition_identity_lhs, partition_identity_rhs, s_formula, signature,
    signature_cofactor, signature_graph, CensusOptions, Method, Signature, SignatureCensus,
    SignatureTable,
};
pub use tutte::{
    abs_balance_count, delta, enumerate_bases, tau, tutte11_bruteforce, tutte11_formula, BaseCase,
    BaseRecord, Mode, TutteEval,
};
