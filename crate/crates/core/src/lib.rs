//! Exact verification toolkit for homogeneous weight-zero Rota–Baxter
//! operators on Block-type Lie algebras.

pub mod audit;
pub mod block;
pub mod derived;
pub mod kernel;
pub mod operator;
pub mod printed;
pub mod scalar;
pub mod verdict;

pub use audit::{
    admissibility_matrix, classify_regime, feq_solution_search, rigidity_support_scan, run_all,
    two_line_test, AuditConfig, AuditReport, ClaimId, Family, Regime,
};
pub use block::{
    antisymmetry_defect, bracket, jacobi_defect, AlgebraParams, Bidegree, GradedElement,
};
pub use derived::{
    deformed_bracket, delta_term, left_symmetry_defect, prelie_closed_form, prelie_product,
};
pub use kernel::{rb_residual, window_sweep};
pub use operator::{
    apply_operator, profile_eval, support_lines, OperatorSpec, Profile1D, ProfileSpec,
};
pub use printed::{cross_check, DiscrepancyReport, EquationId};
pub use scalar::{Rational, Scalar};
pub use verdict::{Status, Verdict, Window, Witness};
