//! Literal evaluators for the published scalar equations, transcribed as
//! printed, plus the comparison against the element-level kernel.
//!
//! Every function returns `LHS - RHS`; zero means the equation holds at the
//! given indices. `FEQ_PLUS` is the variant of the profile equation with the
//! bracketed difference replaced by a sum, which is what substituting
//! `m = n = -k` into the printed Rota–Baxter equation produces.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::block::{AlgebraParams, Bidegree};
use crate::kernel::rb_residual_basis;
use crate::operator::{OperatorSpec, Profile1D, ProfileSpec};
use crate::scalar::Scalar;
use crate::verdict::Window;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum EquationId {
    RbPrinted,
    RbAbstract,
    Constraint,
    ConstraintAbstract,
    FeqNonres,
    FeqAbstract,
    FeqPlus,
    Kernel,
}

impl EquationId {
    pub const ALL: [EquationId; 8] = [
        EquationId::RbPrinted,
        EquationId::RbAbstract,
        EquationId::Constraint,
        EquationId::ConstraintAbstract,
        EquationId::FeqNonres,
        EquationId::FeqAbstract,
        EquationId::FeqPlus,
        EquationId::Kernel,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            EquationId::RbPrinted => "RB_PRINTED",
            EquationId::RbAbstract => "RB_ABSTRACT",
            EquationId::Constraint => "CONSTRAINT",
            EquationId::ConstraintAbstract => "CONSTRAINT_ABSTRACT",
            EquationId::FeqNonres => "FEQ_NONRES",
            EquationId::FeqAbstract => "FEQ_ABSTRACT",
            EquationId::FeqPlus => "FEQ_PLUS",
            EquationId::Kernel => "KERNEL",
        }
    }

    pub fn is_profile_equation(self) -> bool {
        matches!(
            self,
            EquationId::FeqNonres | EquationId::FeqPlus | EquationId::FeqAbstract
        )
    }
}

impl fmt::Display for EquationId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for EquationId {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        EquationId::ALL
            .into_iter()
            .find(|e| e.as_str().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| format!("unknown equation `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PrintedError {
    #[error("printed Rota-Baxter equation needs alpha = beta = q")]
    NotSymmetric,
}

fn int(n: i64) -> Scalar {
    Scalar::int(n)
}

/// `LHS - RHS` of the printed equation for `B(q)`:
///
/// ```text
/// f(m,i) f(n,j) (n(i+q) - m(j+q))
///   = f(m+n+k, i+j+k') [ f(m,i) (n(i+k'+q) - (m+k)(j+q))
///                      - f(n,j) ((n+k)(i+q) - m(j+k'+q)) ]
/// ```
#[allow(clippy::too_many_arguments)]
pub fn printed_rb_residual(
    f: &ProfileSpec,
    m: i64,
    i: i64,
    n: i64,
    j: i64,
    q: &Scalar,
    k: i64,
    kprime: i64,
) -> Scalar {
    abstract_rb_residual(f, m, i, n, j, q, q, k, kprime)
}

/// `LHS - RHS` of the generalized equation with `a_i = i + alpha`,
/// `b_j = j + beta`:
///
/// ```text
/// f(m,i) f(n,j) (n a_i - m b_j)
///   = f(m+n+k, i+j+k') [ f(m,i) (n a_{i+k'} - (m+k) b_j)
///                      - f(n,j) ((n+k) a_i - m b_{j+k'}) ]
/// ```
#[allow(clippy::too_many_arguments)]
pub fn abstract_rb_residual(
    f: &ProfileSpec,
    m: i64,
    i: i64,
    n: i64,
    j: i64,
    alpha: &Scalar,
    beta: &Scalar,
    k: i64,
    kprime: i64,
) -> Scalar {
    let a = |idx: i64| &int(idx) + alpha;
    let b = |idx: i64| &int(idx) + beta;
    let fmi = f.eval(m, i);
    let fnj = f.eval(n, j);
    let fs = f.eval(m + n + k, i + j + kprime);

    let lhs_coeff = &a(i).scale(&n.into()) - &b(j).scale(&m.into());
    let lhs = &(&fmi * &fnj) * &lhs_coeff;
    if fs.is_zero() {
        return lhs;
    }
    let first = &a(i + kprime).scale(&n.into()) - &b(j).scale(&(m + k).into());
    let second = &a(i).scale(&(n + k).into()) - &b(j + kprime).scale(&m.into());
    let bracketed = &(&fmi * &first) - &(&fnj * &second);
    &lhs - &(&fs * &bracketed)
}

/// `(q - k')(m + k) f(m,i)^2`; the generalized form uses `beta` for `q`.
pub fn constraint_value(
    f: &ProfileSpec,
    m: i64,
    i: i64,
    q: &Scalar,
    k: i64,
    kprime: i64,
) -> Scalar {
    let fmi = f.eval(m, i);
    let factor = (q - &int(kprime)).scale(&(m + k).into());
    &factor * &(&fmi * &fmi)
}

/// Sign of the bracketed difference in the profile equation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FeqSign {
    Minus,
    Plus,
}

/// Profile equation from raw values `g(i)`, `g(j)`, `g(i+j+k')`:
///
/// ```text
/// (i-j) g(i) g(j) - g(i+j+k') [ (i+k'+q) g(i) -/+ (j+k'+q) g(j) ]
/// ```
#[allow(clippy::too_many_arguments)]
pub fn feq_from_values(
    gi: &Scalar,
    gj: &Scalar,
    gs: &Scalar,
    i: i64,
    j: i64,
    q: &Scalar,
    kprime: i64,
    sign: FeqSign,
) -> Scalar {
    let lhs = (gi * gj).scale(&(i - j).into());
    if gs.is_zero() {
        return lhs;
    }
    let ti = &(&int(i + kprime) + q) * gi;
    let tj = &(&int(j + kprime) + q) * gj;
    let inner = match sign {
        FeqSign::Minus => &ti - &tj,
        FeqSign::Plus => &ti + &tj,
    };
    &lhs - &(gs * &inner)
}

/// The nonlinear profile equation, exactly as printed.
pub fn feq_residual(g: &Profile1D, i: i64, j: i64, q: &Scalar, kprime: i64) -> Scalar {
    feq_from_values(
        &g.eval(i),
        &g.eval(j),
        &g.eval(i + j + kprime),
        i,
        j,
        q,
        kprime,
        FeqSign::Minus,
    )
}

/// Variant with `+` inside the bracket.
pub fn feq_plus_residual(g: &Profile1D, i: i64, j: i64, q: &Scalar, kprime: i64) -> Scalar {
    feq_from_values(
        &g.eval(i),
        &g.eval(j),
        &g.eval(i + j + kprime),
        i,
        j,
        q,
        kprime,
        FeqSign::Plus,
    )
}

/// Generalized profile equation (`alpha` in place of `q`).
pub fn feq_abstract_residual(g: &Profile1D, i: i64, j: i64, alpha: &Scalar, kprime: i64) -> Scalar {
    feq_residual(g, i, j, alpha, kprime)
}

/// Residual of the selected profile equation; `None` for non-profile ids.
pub fn profile_equation_residual(
    variant: EquationId,
    g: &Profile1D,
    i: i64,
    j: i64,
    q: &Scalar,
    kprime: i64,
) -> Option<Scalar> {
    match variant {
        EquationId::FeqNonres => Some(feq_residual(g, i, j, q, kprime)),
        EquationId::FeqPlus => Some(feq_plus_residual(g, i, j, q, kprime)),
        EquationId::FeqAbstract => Some(feq_abstract_residual(g, i, j, q, kprime)),
        _ => None,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub m: i64,
    pub i: i64,
    pub n: i64,
    pub j: i64,
    pub printed: Scalar,
    pub kernel_coefficient: Scalar,
}

/// Printed equation versus kernel, pair by pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscrepancyReport {
    pub equation: EquationId,
    pub window: Window,
    pub q: Scalar,
    pub k: i64,
    pub kprime: i64,
    pub profile: ProfileSpec,
    pub pairs_checked: usize,
    pub both_zero: usize,
    pub both_nonzero: usize,
    /// Pairs where both are nonzero and the two values coincide exactly.
    pub both_nonzero_equal: usize,
    pub mismatches: Vec<Mismatch>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Agreement {
    BothZero,
    BothNonzero,
    Mismatch,
}

pub fn agreement(printed: &Scalar, kernel: &Scalar) -> Agreement {
    match (printed.is_zero(), kernel.is_zero()) {
        (true, true) => Agreement::BothZero,
        (false, false) => Agreement::BothNonzero,
        _ => Agreement::Mismatch,
    }
}

/// Coefficient of the kernel residual at its only possible bidegree
/// `(m+n+2k, i+j+2k')`.
pub fn kernel_coefficient(
    params: &AlgebraParams,
    r: &OperatorSpec,
    a: Bidegree,
    b: Bidegree,
) -> Scalar {
    let res = rb_residual_basis(params, r, a, b);
    res.coeff(Bidegree::new(a.m + b.m + 2 * r.k, a.i + b.i + 2 * r.kprime))
}

pub fn cross_check(
    params: &AlgebraParams,
    r: &OperatorSpec,
    w: &Window,
) -> Result<DiscrepancyReport, PrintedError> {
    if !params.is_symmetric() {
        return Err(PrintedError::NotSymmetric);
    }
    let q = &params.alpha;
    let basis = w.basis();
    let rows: Vec<(Agreement, bool, Option<Mismatch>)> = basis
        .par_iter()
        .map(|&a| {
            basis
                .iter()
                .map(|&b| {
                    let printed =
                        printed_rb_residual(&r.profile, a.m, a.i, b.m, b.i, q, r.k, r.kprime);
                    let kernel = kernel_coefficient(params, r, a, b);
                    let ag = agreement(&printed, &kernel);
                    let equal = printed == kernel;
                    let mm = (ag == Agreement::Mismatch).then(|| Mismatch {
                        m: a.m,
                        i: a.i,
                        n: b.m,
                        j: b.i,
                        printed,
                        kernel_coefficient: kernel,
                    });
                    (ag, equal, mm)
                })
                .collect::<Vec<_>>()
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();

    let mut report = DiscrepancyReport {
        equation: EquationId::RbPrinted,
        window: *w,
        q: q.clone(),
        k: r.k,
        kprime: r.kprime,
        profile: r.profile.clone(),
        pairs_checked: rows.len(),
        both_zero: 0,
        both_nonzero: 0,
        both_nonzero_equal: 0,
        mismatches: Vec::new(),
    };
    for (ag, equal, mm) in rows {
        match ag {
            Agreement::BothZero => report.both_zero += 1,
            Agreement::BothNonzero => {
                report.both_nonzero += 1;
                if equal {
                    report.both_nonzero_equal += 1;
                }
            }
            Agreement::Mismatch => report.mismatches.extend(mm),
        }
    }
    Ok(report)
}
