//! Registry of checkable claims, each bound to a window-scale checker, plus a
//! brute-force search for solutions of the profile equation.
//!
//! No claim is ever marked true or false outright: every [`Verdict`] is
//! relative to an equation variant and a finite window, and records what the
//! published statement predicts next to what evaluation found.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::block::{antisymmetry_defect, bracket, AlgebraParams, Bidegree, GradedElement};
use crate::derived::{
    deformed_bracket, deformed_jacobi_defect, delta_term, left_symmetry_defect, prelie_closed_form,
    prelie_product,
};
use crate::kernel::{rb_residual_basis, window_sweep};
use crate::operator::{parse_scalar_literal, OperatorSpec, Profile1D, ProfileSpec};
use crate::printed::{
    abstract_rb_residual, constraint_value, cross_check, feq_from_values, printed_rb_residual,
    profile_equation_residual, EquationId, FeqSign,
};
use crate::scalar::{Rational, Scalar};
use crate::verdict::{
    cap_witnesses, Expectation, Scope, Status, Verdict, VerdictConfig, Window, Witness,
    DEFAULT_WITNESS_CAP,
};

pub const GENERATED_BY: &str = concat!("rbaudit ", env!("CARGO_PKG_VERSION"));
pub const SCHEMA_VERSION: &str = "1";

/// Largest brute-force search space accepted, `4^9`.
pub const MAX_SEARCH_SPACE: u128 = 262_144;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AuditError {
    #[error("two_line_test needs distinct lines, got {0} twice")]
    SameLine(i64),
    #[error("variant {0} is not supported here")]
    UnsupportedVariant(EquationId),
    #[error("search space of {0} assignments exceeds 4^9")]
    SearchTooLarge(u128),
    #[error("invalid search: {0}")]
    BadSearch(String),
    #[error("invalid config field `{field}`: {reason}")]
    Config { field: &'static str, reason: String },
}

fn config_err(field: &'static str, reason: impl Into<String>) -> AuditError {
    AuditError::Config {
        field,
        reason: reason.into(),
    }
}

// ---------------------------------------------------------------------------
// regimes

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Regime {
    #[serde(rename = "REGIME_I")]
    RegimeI,
    #[serde(rename = "REGIME_II")]
    RegimeII,
}

impl Regime {
    pub fn as_str(self) -> &'static str {
        match self {
            Regime::RegimeI => "REGIME_I",
            Regime::RegimeII => "REGIME_II",
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// `REGIME_I` iff `q = k'` or `k = 0`. A `q` carrying symbols is never
/// identically equal to `k'`, so it counts as non-resonant.
pub fn classify_regime(q: &Scalar, k: i64, kprime: i64) -> Regime {
    if k == 0 || is_int(q, kprime) {
        Regime::RegimeI
    } else {
        Regime::RegimeII
    }
}

fn is_int(q: &Scalar, n: i64) -> bool {
    q.as_constant().is_some_and(|r| r == Rational::from_int(n))
}

fn genericity_note(q: &Scalar, k: i64) -> Option<String> {
    (q.as_constant().is_none() && k != 0)
        .then(|| format!("symbolic q = {q}: assumed generic (q - k' not identically zero)"))
}

// ---------------------------------------------------------------------------
// claims

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ClaimId {
    #[serde(rename = "DICHOTOMY_2_1")]
    Dichotomy,
    #[serde(rename = "PROP_NONRES_4_1")]
    PropNonres,
    #[serde(rename = "EXAMPLE_LINEAR_4_2")]
    ExampleLinear,
    #[serde(rename = "REMARK_SOLUTIONS_4_3")]
    RemarkSolutions,
    #[serde(rename = "PROP_RESONANT_4_6")]
    PropResonant,
    #[serde(rename = "THM_TWO_LINE_4_4")]
    ThmTwoLine,
    #[serde(rename = "THM_RIGIDITY_4_5")]
    ThmRigidity,
    #[serde(rename = "THM_COMPLETE_5_1")]
    ThmComplete,
    #[serde(rename = "TABLE_1")]
    Table1,
    #[serde(rename = "PRELIE_A1")]
    PrelieA1,
    #[serde(rename = "DEFORM_A2")]
    DeformA2,
}

impl ClaimId {
    pub const ALL: [ClaimId; 11] = [
        ClaimId::Dichotomy,
        ClaimId::PropNonres,
        ClaimId::ExampleLinear,
        ClaimId::RemarkSolutions,
        ClaimId::PropResonant,
        ClaimId::ThmTwoLine,
        ClaimId::ThmRigidity,
        ClaimId::ThmComplete,
        ClaimId::Table1,
        ClaimId::PrelieA1,
        ClaimId::DeformA2,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ClaimId::Dichotomy => "DICHOTOMY_2_1",
            ClaimId::PropNonres => "PROP_NONRES_4_1",
            ClaimId::ExampleLinear => "EXAMPLE_LINEAR_4_2",
            ClaimId::RemarkSolutions => "REMARK_SOLUTIONS_4_3",
            ClaimId::PropResonant => "PROP_RESONANT_4_6",
            ClaimId::ThmTwoLine => "THM_TWO_LINE_4_4",
            ClaimId::ThmRigidity => "THM_RIGIDITY_4_5",
            ClaimId::ThmComplete => "THM_COMPLETE_5_1",
            ClaimId::Table1 => "TABLE_1",
            ClaimId::PrelieA1 => "PRELIE_A1",
            ClaimId::DeformA2 => "DEFORM_A2",
        }
    }

    /// The statement a checker is anchored to.
    pub fn anchor(self) -> &'static str {
        match self {
            ClaimId::Dichotomy => "abstract rigidity-flexibility dichotomy",
            ClaimId::PropNonres => "non-resonant classification (k != 0 and k = 0)",
            ClaimId::ExampleLinear => "linear profile g(i) = i is inadmissible",
            ClaimId::RemarkSolutions => "solution classes of the profile equation",
            ClaimId::PropResonant => "resonant sufficiency: any g on m = -k",
            ClaimId::ThmTwoLine => "no two-line superposition",
            ClaimId::ThmRigidity => "rigidity at resonance: support exactly m = -k",
            ClaimId::ThmComplete => "complete classification",
            ClaimId::Table1 => "admissibility of canonical profile families",
            ClaimId::PrelieA1 => "pre-Lie product and its closed form",
            ClaimId::DeformA2 => "deformed bracket and deformation term",
        }
    }
}

impl fmt::Display for ClaimId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ClaimId {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ClaimId::ALL
            .into_iter()
            .find(|c| c.as_str().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| format!("unknown claim `{s}`"))
    }
}

// ---------------------------------------------------------------------------
// canonical families

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Constant,
    Kronecker,
    FiniteSupport,
    Exponential,
    Polynomial,
    Periodic,
}

impl Family {
    /// Row order of the published table.
    pub const ALL: [Family; 6] = [
        Family::Constant,
        Family::Kronecker,
        Family::FiniteSupport,
        Family::Exponential,
        Family::Polynomial,
        Family::Periodic,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Constant => "constant",
            Family::Kronecker => "kronecker",
            Family::FiniteSupport => "finite_support",
            Family::Exponential => "exponential",
            Family::Polynomial => "polynomial",
            Family::Periodic => "periodic",
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Family::Constant => "Constant (c=1)",
            Family::Kronecker => "Kronecker (i0=0)",
            Family::FiniteSupport => "Finite support {0,1}",
            Family::Exponential => "Exponential (b=2)",
            Family::Polynomial => "Polynomial (g=i)",
            Family::Periodic => "Periodic [1,2]",
        }
    }

    /// Default parameters: `c = 1`, `i0 = 0`, `b = 2`, `g(i) = i`,
    /// period `[1, 2]`, table `{0: 1, 1: 1}`.
    pub fn default_profile(self) -> Profile1D {
        match self {
            Family::Constant => Profile1D::constant(1),
            Family::Kronecker => Profile1D::kronecker(0, 1),
            Family::FiniteSupport => Profile1D::finite_table(
                [(0, Scalar::one()), (1, Scalar::one())]
                    .into_iter()
                    .collect(),
            ),
            Family::Exponential => {
                Profile1D::exponential(Rational::from_int(2)).expect("nonzero base")
            }
            Family::Polynomial => Profile1D::polynomial(vec![Scalar::zero(), Scalar::one()]),
            Family::Periodic => {
                Profile1D::periodic(vec![Scalar::int(1), Scalar::int(2)]).expect("nonempty")
            }
        }
    }

    /// Published Regime II column.
    pub fn claimed_regime_ii(self) -> bool {
        matches!(
            self,
            Family::Constant | Family::Kronecker | Family::FiniteSupport
        )
    }
}

/// Whether the published classification lists `g` among the Regime II
/// solutions (constant, Kronecker, finite support).
pub fn claimed_admissible_regime_ii(g: &Profile1D) -> bool {
    match g {
        Profile1D::Constant { .. }
        | Profile1D::Kronecker { .. }
        | Profile1D::FiniteTable { .. } => true,
        Profile1D::Exponential { b } => b.is_one(),
        Profile1D::Polynomial { coeffs } => coeffs.iter().skip(1).all(Scalar::is_zero),
        Profile1D::Periodic { .. } => !g.is_nonconstant_periodic(),
    }
}

fn claimed_admissible(regime: Regime, g: &Profile1D) -> bool {
    g.is_identically_zero() || regime == Regime::RegimeI || claimed_admissible_regime_ii(g)
}

fn expect(holds: bool) -> Option<Expectation> {
    Some(if holds {
        Expectation::Holds
    } else {
        Expectation::Fails
    })
}

// ---------------------------------------------------------------------------
// generic checkers

fn vconf(check: &str, q: &Scalar, k: Option<i64>, kprime: i64) -> VerdictConfig {
    VerdictConfig {
        check: check.to_string(),
        q: Some(q.clone()),
        k,
        kprime: Some(kprime),
        ..VerdictConfig::default()
    }
}

/// Line carrying the one-line profile for degree `k`.
fn support_line(k: i64) -> i64 {
    -k
}

/// Residual of a profile equation over all `(i, j)` in `[lo, hi]^2`.
#[allow(clippy::too_many_arguments)]
pub fn feq_verdict(
    claim: &str,
    variant: EquationId,
    g: &Profile1D,
    lo: i64,
    hi: i64,
    q: &Scalar,
    kprime: i64,
    cap: usize,
) -> Verdict {
    let witnesses = (lo..=hi)
        .flat_map(|i| (lo..=hi).map(move |j| (i, j)))
        .filter_map(|(i, j)| {
            let value =
                profile_equation_residual(variant, g, i, j, q, kprime).expect("profile equation");
            (!value.is_zero()).then(|| Witness::Scalar {
                indices: vec![i, j],
                value,
            })
        });
    let (witnesses, truncated) = cap_witnesses(witnesses, cap);
    let mut config = vconf(variant.as_str(), q, None, kprime);
    config.profile = Some(ProfileSpec::single_line(0, g.clone()));
    Verdict::from_witnesses(claim, config, Scope::Index { lo, hi }, witnesses, truncated)
}

/// Kernel identity on all ordered pairs of the window.
pub fn kernel_sweep(
    claim: &str,
    params: &AlgebraParams,
    r: &OperatorSpec,
    w: &Window,
    cap: usize,
) -> Verdict {
    let mut v = window_sweep(params, r, w, cap);
    v.claim = claim.to_string();
    if params.is_symmetric() {
        v.config.q = Some(params.alpha.clone());
        v.config.alpha = None;
        v.config.beta = None;
    }
    v
}

/// Printed scalar equation on all ordered pairs of the window; witnesses are
/// `[m, i, n, j]` with the value `LHS - RHS`.
pub fn printed_sweep(claim: &str, q: &Scalar, r: &OperatorSpec, w: &Window, cap: usize) -> Verdict {
    let basis = w.basis();
    let all: Vec<Witness> = basis
        .par_iter()
        .map(|&a| {
            basis
                .iter()
                .filter_map(|&b| {
                    let value =
                        printed_rb_residual(&r.profile, a.m, a.i, b.m, b.i, q, r.k, r.kprime);
                    (!value.is_zero()).then(|| Witness::Scalar {
                        indices: vec![a.m, a.i, b.m, b.i],
                        value,
                    })
                })
                .collect::<Vec<_>>()
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();
    let (witnesses, truncated) = cap_witnesses(all, cap);
    let mut config = vconf(EquationId::RbPrinted.as_str(), q, Some(r.k), r.kprime);
    config.profile = Some(r.profile.clone());
    Verdict::from_witnesses(
        claim,
        config,
        Scope::Grid {
            window: *w,
            arity: 2,
        },
        witnesses,
        truncated,
    )
}

/// Kernel identity restricted to pairs on the support line `m = line`, with
/// `i, j` in `[lo, hi]`. For a one-line operator these are the only pairs
/// whose residual can be nonzero.
#[allow(clippy::too_many_arguments)]
pub fn on_line_kernel_verdict(
    claim: &str,
    params: &AlgebraParams,
    r: &OperatorSpec,
    line: i64,
    lo: i64,
    hi: i64,
    cap: usize,
) -> Verdict {
    let pairs: Vec<(i64, i64)> = (lo..=hi)
        .flat_map(|i| (lo..=hi).map(move |j| (i, j)))
        .collect();
    let all: Vec<Witness> = pairs
        .par_iter()
        .filter_map(|&(i, j)| {
            let a = Bidegree::new(line, i);
            let b = Bidegree::new(line, j);
            let residual = rb_residual_basis(params, r, a, b);
            (!residual.is_zero()).then(|| Witness::Element {
                inputs: vec![a, b],
                residual,
            })
        })
        .collect();
    let (witnesses, truncated) = cap_witnesses(all, cap);
    let mut config = vconf(
        EquationId::Kernel.as_str(),
        &params.alpha,
        Some(r.k),
        r.kprime,
    );
    config.profile = Some(r.profile.clone());
    Verdict::from_witnesses(claim, config, Scope::Index { lo, hi }, witnesses, truncated)
        .with_note(format!("pairs (L({line}, i), L({line}, j))"))
}

// ---------------------------------------------------------------------------
// admissibility matrix

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegimeColumn {
    pub regime: Regime,
    pub q: Scalar,
    pub k: i64,
    pub kprime: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdmissibilityCell {
    pub family: Family,
    pub regime: Regime,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdmissibilityMatrix {
    pub variant: EquationId,
    pub columns: Vec<RegimeColumn>,
    pub cells: Vec<AdmissibilityCell>,
}

impl AdmissibilityMatrix {
    pub fn cell(&self, family: Family, regime: Regime) -> Option<&AdmissibilityCell> {
        self.cells
            .iter()
            .find(|c| c.family == family && c.regime == regime)
    }
}

/// The two configurations the table columns are evaluated at: Regime I at
/// `q = k'` (same `k`), Regime II at a non-resonant `q` with `k != 0`.
pub fn regime_columns(q: &Scalar, k: i64, kprime: i64) -> (RegimeColumn, RegimeColumn) {
    let (q2, _) = nonresonant_q(q, kprime);
    (
        RegimeColumn {
            regime: Regime::RegimeI,
            q: Scalar::int(kprime),
            k,
            kprime,
        },
        RegimeColumn {
            regime: Regime::RegimeII,
            q: q2,
            k: nonzero_k(k),
            kprime,
        },
    )
}

/// Evaluates each canonical family against `variant` over all `(i, j)` in
/// the window's i-range, once per regime column.
pub fn admissibility_matrix(
    w: &Window,
    q: &Scalar,
    k: i64,
    kprime: i64,
    variant: EquationId,
    cap: usize,
) -> Result<AdmissibilityMatrix, AuditError> {
    if !matches!(
        variant,
        EquationId::FeqNonres | EquationId::FeqPlus | EquationId::Kernel
    ) {
        return Err(AuditError::UnsupportedVariant(variant));
    }
    let (c1, c2) = regime_columns(q, k, kprime);
    let (lo, hi) = (*w.i_range().start(), *w.i_range().end());
    let claim = ClaimId::Table1.as_str();
    let mut cells = Vec::new();
    for family in Family::ALL {
        let g = family.default_profile();
        for col in [&c1, &c2] {
            let mut v = if variant == EquationId::Kernel {
                let r = OperatorSpec::single_line(col.k, col.kprime, g.clone());
                let params = AlgebraParams::block(col.q.clone());
                on_line_kernel_verdict(claim, &params, &r, support_line(col.k), lo, hi, cap)
            } else {
                let mut v = feq_verdict(claim, variant, &g, lo, hi, &col.q, col.kprime, cap);
                v.config.k = Some(col.k);
                v
            };
            v.config.family = Some(family.name().to_string());
            v.config.regime = Some(col.regime);
            let claimed = if col.regime == Regime::RegimeI {
                true
            } else {
                family.claimed_regime_ii()
            };
            v = match (variant, col.regime) {
                (EquationId::Kernel, _) | (EquationId::FeqNonres, Regime::RegimeII) => {
                    v.expecting(expect(claimed))
                }
                (EquationId::FeqNonres, Regime::RegimeI) => {
                    v.with_note("the profile equation does not govern Regime I; no prediction")
                }
                _ => v.with_note("variant not named by the table; no prediction"),
            };
            cells.push(AdmissibilityCell {
                family,
                regime: col.regime,
                verdict: v,
            });
        }
    }
    Ok(AdmissibilityMatrix {
        variant,
        columns: vec![c1, c2],
        cells,
    })
}

/// Fixed-width rendering of the TABLE_1 verdicts found in `verdicts`, one
/// block per variant; `✓` = holds on the window, `✗` = fails.
pub fn render_admissibility_table(verdicts: &[Verdict]) -> String {
    let mut by_variant: BTreeMap<String, BTreeMap<(usize, Regime), Status>> = BTreeMap::new();
    for v in verdicts
        .iter()
        .filter(|v| v.claim == ClaimId::Table1.as_str())
    {
        let (Some(fam), Some(regime)) = (&v.config.family, v.config.regime) else {
            continue;
        };
        let Some(row) = Family::ALL.iter().position(|f| f.name() == fam) else {
            continue;
        };
        by_variant
            .entry(v.config.check.clone())
            .or_default()
            .insert((row, regime), v.status);
    }
    let mark = |s: Option<&Status>| match s {
        Some(Status::HoldsOnWindow) => "✓",
        Some(Status::Fails) => "✗",
        Some(Status::Mixed) => "~",
        None => "-",
    };
    let mut out = String::new();
    for (variant, cells) in &by_variant {
        out.push_str(&format!("admissibility [{variant}]\n"));
        out.push_str(&format!(
            "{:<24} {:^10} {:^10}\n",
            "Profile g(i)", "Regime I", "Regime II"
        ));
        for (row, fam) in Family::ALL.iter().enumerate() {
            out.push_str(&format!(
                "{:<24} {:^10} {:^10}\n",
                fam.label(),
                mark(cells.get(&(row, Regime::RegimeI))),
                mark(cells.get(&(row, Regime::RegimeII)))
            ));
        }
        out.push('\n');
    }
    out
}

// ---------------------------------------------------------------------------
// two-line and rigidity scans

/// Kernel sweep of `ga` on `m = a` plus `gb` on `m = b`; notes record the
/// printed cross-check and which single-line restriction survives.
#[allow(clippy::too_many_arguments)]
pub fn two_line_test(
    params: &AlgebraParams,
    a: i64,
    ga: &Profile1D,
    b: i64,
    gb: &Profile1D,
    k: i64,
    kprime: i64,
    w: &Window,
    cap: usize,
) -> Result<Verdict, AuditError> {
    if a == b {
        return Err(AuditError::SameLine(a));
    }
    let spec = ProfileSpec::two_lines(a, ga.clone(), b, gb.clone())
        .map_err(|_| AuditError::SameLine(a))?;
    let r = OperatorSpec::new(k, kprime, spec);
    let mut v = kernel_sweep(ClaimId::ThmTwoLine.as_str(), params, &r, w, cap);
    if params.is_symmetric() && !is_int(&params.alpha, kprime) {
        v = v.with_note("hypothesis q = k' not met");
    }
    if let Ok(report) = cross_check(params, &r, w) {
        v = v.with_note(format!(
            "printed equation: {} of {} pairs nonzero, {} mismatches against the kernel",
            report.pairs_checked
                - report.both_zero
                - report
                    .mismatches
                    .iter()
                    .filter(|m| m.printed.is_zero())
                    .count(),
            report.pairs_checked,
            report.mismatches.len()
        ));
    }
    for (kill, keep, gk) in [(a, b, gb), (b, a, ga)] {
        let single = OperatorSpec::new(k, kprime, ProfileSpec::single_line(keep, gk.clone()));
        let holds = window_sweep(params, &single, w, 1).holds();
        v = v.with_note(if holds {
            format!("zeroing line {kill} rescues: line {keep} alone holds on the window")
        } else {
            format!("zeroing line {kill} does not rescue: line {keep} alone fails")
        });
    }
    Ok(v)
}

/// Places `g` on each candidate line `a` and sweeps. Lines outside the
/// window's m-range are flagged vacuous.
pub fn rigidity_support_scan(
    params: &AlgebraParams,
    k: i64,
    kprime: i64,
    g: &Profile1D,
    w: &Window,
    lines: impl IntoIterator<Item = i64>,
    cap: usize,
) -> BTreeMap<i64, Verdict> {
    let lines: Vec<i64> = lines.into_iter().collect();
    let results: Vec<(i64, Verdict)> = lines
        .par_iter()
        .map(|&a| {
            let r = OperatorSpec::new(k, kprime, ProfileSpec::single_line(a, g.clone()));
            let mut v = kernel_sweep(ClaimId::ThmRigidity.as_str(), params, &r, w, cap);
            if !w.m_range().contains(&a) {
                v = v.with_note(format!("vacuous: no window element lies on line {a}"));
            }
            (a, v)
        })
        .collect();
    results.into_iter().collect()
}

// ---------------------------------------------------------------------------
// brute-force search

/// How pairs whose `i + j + k'` leaves the search window are treated.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Boundary {
    /// Skip the pair.
    #[default]
    SkipOutside,
    /// Treat `g` as zero outside the window.
    ZeroOutside,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FeqSearchResult {
    pub window: [i64; 2],
    pub values: Vec<Rational>,
    pub q: Rational,
    pub kprime: i64,
    pub variant: EquationId,
    pub boundary: Boundary,
    pub solutions: Vec<Profile1D>,
}

/// All `g: [lo, hi] -> values` with zero residual on every checkable pair,
/// by backtracking. Solutions come out in lexicographic order of their value
/// vectors (values sorted ascending).
pub fn feq_solution_search(
    lo: i64,
    hi: i64,
    values: &[Rational],
    q: &Rational,
    kprime: i64,
    variant: EquationId,
    boundary: Boundary,
) -> Result<FeqSearchResult, AuditError> {
    let sign = match variant {
        EquationId::FeqNonres => FeqSign::Minus,
        EquationId::FeqPlus => FeqSign::Plus,
        other => return Err(AuditError::UnsupportedVariant(other)),
    };
    if lo > hi {
        return Err(AuditError::BadSearch(format!("empty window [{lo}, {hi}]")));
    }
    let mut vals: Vec<Rational> = values.to_vec();
    vals.sort();
    vals.dedup();
    if vals.is_empty() {
        return Err(AuditError::BadSearch("empty value set".into()));
    }
    let n = (hi - lo + 1) as usize;
    let space = (vals.len() as u128)
        .checked_pow(n as u32)
        .unwrap_or(u128::MAX);
    if space > MAX_SEARCH_SPACE {
        return Err(AuditError::SearchTooLarge(space));
    }

    // pairs grouped by the last position they depend on
    let idx = |x: i64| (lo..=hi).contains(&x).then(|| (x - lo) as usize);
    let mut ready: Vec<Vec<(i64, i64)>> = vec![Vec::new(); n];
    for i in lo..=hi {
        for j in lo..=hi {
            let s = i + j + kprime;
            let last = match (idx(s), boundary) {
                (Some(ps), _) => idx(i).unwrap().max(idx(j).unwrap()).max(ps),
                (None, Boundary::SkipOutside) => continue,
                (None, Boundary::ZeroOutside) => idx(i).unwrap().max(idx(j).unwrap()),
            };
            ready[last].push((i, j));
        }
    }

    let vals_s: Vec<Scalar> = vals.iter().cloned().map(Scalar::constant).collect();
    let qs = Scalar::constant(q.clone());
    let mut assignment: Vec<usize> = Vec::with_capacity(n);
    let mut solutions = Vec::new();
    search(
        &mut assignment,
        n,
        &ready,
        &vals_s,
        lo,
        &qs,
        kprime,
        sign,
        &mut solutions,
    );

    let solutions = solutions
        .into_iter()
        .map(|a: Vec<usize>| {
            Profile1D::finite_table(
                a.iter()
                    .enumerate()
                    .map(|(p, &vi)| (lo + p as i64, vals_s[vi].clone()))
                    .collect(),
            )
        })
        .collect();
    Ok(FeqSearchResult {
        window: [lo, hi],
        values: vals,
        q: q.clone(),
        kprime,
        variant,
        boundary,
        solutions,
    })
}

#[allow(clippy::too_many_arguments)]
fn search(
    a: &mut Vec<usize>,
    n: usize,
    ready: &[Vec<(i64, i64)>],
    vals: &[Scalar],
    lo: i64,
    q: &Scalar,
    kprime: i64,
    sign: FeqSign,
    out: &mut Vec<Vec<usize>>,
) {
    let t = a.len();
    if t == n {
        out.push(a.clone());
        return;
    }
    let zero = Scalar::zero();
    for vi in 0..vals.len() {
        a.push(vi);
        let g = |x: i64| -> &Scalar {
            let p = x - lo;
            if p >= 0 && (p as usize) <= t {
                &vals[a[p as usize]]
            } else {
                &zero
            }
        };
        let ok = ready[t].iter().all(|&(i, j)| {
            feq_from_values(g(i), g(j), g(i + j + kprime), i, j, q, kprime, sign).is_zero()
        });
        if ok {
            search(a, n, ready, vals, lo, q, kprime, sign, out);
        }
        a.pop();
    }
}

// ---------------------------------------------------------------------------
// configuration and report

mod scalar_text {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(s: &Scalar, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(&s.to_string().replace(' ', ""))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Scalar, D::Error> {
        let text = String::deserialize(de)?;
        parse_scalar_literal(&text).map_err(serde::de::Error::custom)
    }
}

mod opt_scalar_text {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(s: &Option<Scalar>, ser: S) -> Result<S::Ok, S::Error> {
        match s {
            Some(s) => scalar_text::serialize(s, ser),
            None => ser.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Option<Scalar>, D::Error> {
        let text = Option::<String>::deserialize(de)?;
        text.map(|t| parse_scalar_literal(&t).map_err(serde::de::Error::custom))
            .transpose()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AuditConfig {
    #[serde(with = "scalar_text")]
    pub q: Scalar,
    #[serde(
        default,
        with = "opt_scalar_text",
        skip_serializing_if = "Option::is_none"
    )]
    pub alpha: Option<Scalar>,
    #[serde(
        default,
        with = "opt_scalar_text",
        skip_serializing_if = "Option::is_none"
    )]
    pub beta: Option<Scalar>,
    pub k: i64,
    pub kprime: i64,
    /// Half-width `N` of the square window.
    pub window: i64,
    pub profile: Profile1D,
    pub variants: Vec<EquationId>,
    pub claims: Vec<ClaimId>,
    pub search_window: [i64; 2],
    pub values: Vec<Rational>,
    pub witness_cap: usize,
    pub boundary: Boundary,
}

impl Default for AuditConfig {
    fn default() -> Self {
        AuditConfig {
            q: Scalar::q(),
            alpha: None,
            beta: None,
            k: 1,
            kprime: 0,
            window: 4,
            profile: Profile1D::constant(1),
            variants: vec![
                EquationId::FeqNonres,
                EquationId::FeqPlus,
                EquationId::Kernel,
                EquationId::RbPrinted,
            ],
            claims: ClaimId::ALL.to_vec(),
            search_window: [-3, 3],
            values: vec![Rational::zero(), Rational::one()],
            witness_cap: DEFAULT_WITNESS_CAP,
            boundary: Boundary::SkipOutside,
        }
    }
}

impl AuditConfig {
    pub fn validate(&self) -> Result<(), AuditError> {
        if self.window < 1 {
            return Err(config_err(
                "window",
                format!("must be >= 1, got {}", self.window),
            ));
        }
        if self.witness_cap < 1 {
            return Err(config_err("witness_cap", "must be >= 1"));
        }
        let [lo, hi] = self.search_window;
        if lo > hi {
            return Err(config_err(
                "search_window",
                format!("empty range [{lo}, {hi}]"),
            ));
        }
        let mut vals = self.values.clone();
        vals.sort();
        vals.dedup();
        if vals.is_empty() {
            return Err(config_err("values", "must be nonempty"));
        }
        let space = (vals.len() as u128)
            .checked_pow((hi - lo + 1) as u32)
            .unwrap_or(u128::MAX);
        if space > MAX_SEARCH_SPACE {
            return Err(config_err(
                "values",
                format!("search space {space} exceeds 4^9"),
            ));
        }
        if self.variants.is_empty() {
            return Err(config_err("variants", "must be nonempty"));
        }
        Ok(())
    }

    pub fn window_box(&self) -> Window {
        Window::square(self.window)
    }

    /// Block algebra at the configured `q` (or the generalized algebra when
    /// `alpha`/`beta` are given).
    pub fn params(&self) -> AlgebraParams {
        let a = self.alpha.clone().unwrap_or_else(|| self.q.clone());
        let b = self.beta.clone().unwrap_or_else(|| self.q.clone());
        AlgebraParams::general(a, b)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuditReport {
    pub config: serde_json::Value,
    pub verdicts: Vec<Verdict>,
    pub generated_by: String,
    pub schema_version: String,
}

/// A non-resonant `q`: the configured one, or `k' + 1/2` when the configured
/// `q` equals `k'`.
fn nonresonant_q(q: &Scalar, kprime: i64) -> (Scalar, Option<String>) {
    if is_int(q, kprime) {
        let alt = Scalar::constant(&Rational::from_int(kprime) + &Rational::new(1, 2));
        let note = format!("configured q = k'; non-resonant checks use q = {alt}");
        (alt, Some(note))
    } else {
        (q.clone(), None)
    }
}

fn nonzero_k(k: i64) -> i64 {
    if k == 0 {
        1
    } else {
        k
    }
}

struct Ctx<'a> {
    cfg: &'a AuditConfig,
    w: Window,
    cap: usize,
    g: Profile1D,
}

impl Ctx<'_> {
    fn lo_hi(&self) -> (i64, i64) {
        (*self.w.i_range().start(), *self.w.i_range().end())
    }

    fn q_nonres(&self) -> (Scalar, Option<String>) {
        nonresonant_q(&self.cfg.q, self.cfg.kprime)
    }

    fn q_res(&self) -> Scalar {
        Scalar::int(self.cfg.kprime)
    }
}

fn add_notes(mut v: Verdict, notes: &[Option<String>]) -> Verdict {
    for n in notes.iter().flatten() {
        v = v.with_note(n.clone());
    }
    v
}

fn labelled(mut v: Verdict, family: &str) -> Verdict {
    v.config.family = Some(family.to_string());
    v
}

/// Runs every selected claim checker; verdicts are ordered by claim, then by
/// each checker's own fixed order.
pub fn run_all(cfg: &AuditConfig) -> Result<AuditReport, AuditError> {
    cfg.validate()?;
    let ctx = Ctx {
        cfg,
        w: cfg.window_box(),
        cap: cfg.witness_cap,
        g: cfg.profile.clone(),
    };
    let mut claims = cfg.claims.clone();
    claims.sort();
    claims.dedup();
    let parts: Vec<Vec<Verdict>> = claims.par_iter().map(|&c| run_claim(&ctx, c)).collect();
    Ok(AuditReport {
        config: serde_json::to_value(cfg).expect("config serializes"),
        verdicts: parts.into_iter().flatten().collect(),
        generated_by: GENERATED_BY.to_string(),
        schema_version: SCHEMA_VERSION.to_string(),
    })
}

pub fn run_claim_checker(cfg: &AuditConfig, claim: ClaimId) -> Result<Vec<Verdict>, AuditError> {
    cfg.validate()?;
    let ctx = Ctx {
        cfg,
        w: cfg.window_box(),
        cap: cfg.witness_cap,
        g: cfg.profile.clone(),
    };
    Ok(run_claim(&ctx, claim))
}

fn run_claim(ctx: &Ctx, claim: ClaimId) -> Vec<Verdict> {
    match claim {
        ClaimId::Dichotomy => check_dichotomy(ctx),
        ClaimId::PropNonres => check_prop_nonres(ctx),
        ClaimId::ExampleLinear => check_example_linear(ctx),
        ClaimId::RemarkSolutions => check_remark_solutions(ctx),
        ClaimId::PropResonant => check_prop_resonant(ctx),
        ClaimId::ThmTwoLine => check_two_line(ctx),
        ClaimId::ThmRigidity => check_rigidity(ctx),
        ClaimId::ThmComplete => check_complete(ctx),
        ClaimId::Table1 => check_table(ctx),
        ClaimId::PrelieA1 => check_prelie(ctx),
        ClaimId::DeformA2 => check_deform(ctx),
    }
}

fn pair_witnesses<F>(basis: &[Bidegree], f: F) -> Vec<Witness>
where
    F: Fn(Bidegree, Bidegree) -> Option<GradedElement> + Sync,
{
    basis
        .par_iter()
        .map(|&a| {
            basis
                .iter()
                .filter_map(|&b| {
                    f(a, b)
                        .filter(|r| !r.is_zero())
                        .map(|residual| Witness::Element {
                            inputs: vec![a, b],
                            residual,
                        })
                })
                .collect::<Vec<_>>()
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

fn triple_witnesses<F>(basis: &[Bidegree], f: F) -> Vec<Witness>
where
    F: Fn(Bidegree, Bidegree, Bidegree) -> GradedElement + Sync,
{
    basis
        .par_iter()
        .map(|&a| {
            let mut out = Vec::new();
            for &b in basis {
                for &c in basis {
                    let residual = f(a, b, c);
                    if !residual.is_zero() {
                        out.push(Witness::Element {
                            inputs: vec![a, b, c],
                            residual,
                        });
                    }
                }
            }
            out
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

fn grid_verdict(
    claim: ClaimId,
    config: VerdictConfig,
    w: Window,
    arity: u8,
    all: Vec<Witness>,
    cap: usize,
) -> Verdict {
    let (witnesses, truncated) = cap_witnesses(all, cap);
    Verdict::from_witnesses(
        claim.as_str(),
        config,
        Scope::Grid { window: w, arity },
        witnesses,
        truncated,
    )
}

fn basis_el(b: Bidegree) -> GradedElement {
    GradedElement::basis(b.m, b.i)
}

fn check_dichotomy(ctx: &Ctx) -> Vec<Verdict> {
    let cfg = ctx.cfg;
    let claim = ClaimId::Dichotomy;
    let params = cfg.params();
    let (alpha, beta) = (params.alpha.clone(), params.beta.clone());
    let (k, kp) = (cfg.k, cfg.kprime);
    // the generalized resonance condition reads beta = k'
    let regime = classify_regime(&beta, k, kp);
    let gen_note = genericity_note(&beta, k);
    let base = VerdictConfig {
        alpha: Some(alpha.clone()),
        beta: Some(beta.clone()),
        k: Some(k),
        kprime: Some(kp),
        regime: Some(regime),
        ..VerdictConfig::default()
    };
    let mut out = Vec::new();

    // the bracket is claimed antisymmetric for all alpha, beta
    let basis = ctx.w.basis();
    let all = pair_witnesses(&basis, |a, b| {
        Some(antisymmetry_defect(&params, &basis_el(a), &basis_el(b)))
    });
    let config = VerdictConfig {
        check: "BRACKET_ANTISYMMETRY".into(),
        ..base.clone()
    };
    out.push(grid_verdict(claim, config, ctx.w, 2, all, ctx.cap).expecting(expect(true)));

    // evaluating at (n, j) = (0, 0) is claimed to yield the constraint:
    // compare zero sets, with g on m = -k and on m = 0 so f(0, 0) can be nonzero
    let line = support_line(k);
    let spec = if line == 0 {
        ProfileSpec::single_line(0, ctx.g.clone())
    } else {
        ProfileSpec::two_lines(line, ctx.g.clone(), 0, ctx.g.clone()).expect("distinct lines")
    };
    let all = ctx.w.basis().into_iter().filter_map(|at| {
        let res = abstract_rb_residual(&spec, at.m, at.i, 0, 0, &alpha, &beta, k, kp);
        let cons = constraint_value(&spec, at.m, at.i, &beta, k, kp);
        (res.is_zero() != cons.is_zero()).then(|| Witness::Scalar {
            indices: vec![at.m, at.i],
            value: res,
        })
    });
    let (witnesses, truncated) = cap_witnesses(all, ctx.cap);
    let config = VerdictConfig {
        check: EquationId::ConstraintAbstract.as_str().into(),
        profile: Some(spec.clone()),
        ..base.clone()
    };
    out.push(
        Verdict::from_witnesses(claim.as_str(), config, Scope::Grid { window: ctx.w, arity: 1 }, witnesses, truncated)
            .expecting(expect(true))
            .with_note("witness: (m, i) where the (0,0)-specialized equation and the constraint disagree on vanishing; value is the specialized residual"),
    );

    // one-line operator against the kernel
    let r = OperatorSpec::single_line(k, kp, ctx.g.clone());
    let mut v = kernel_sweep(claim.as_str(), &params, &r, &ctx.w, ctx.cap);
    v.config.regime = Some(regime);
    out.push(add_notes(
        v.expecting(expect(claimed_admissible(regime, &ctx.g))),
        &[gen_note.clone()],
    ));

    // the profile equation governs only the non-resonant k != 0 case
    if regime == Regime::RegimeII {
        let (lo, hi) = ctx.lo_hi();
        let mut v = feq_verdict(
            claim.as_str(),
            EquationId::FeqAbstract,
            &ctx.g,
            lo,
            hi,
            &alpha,
            kp,
            ctx.cap,
        );
        v.config.k = Some(k);
        v.config.regime = Some(regime);
        out.push(add_notes(
            v.expecting(expect(claimed_admissible_regime_ii(&ctx.g))),
            &[gen_note],
        ));
    }
    out
}

fn check_prop_nonres(ctx: &Ctx) -> Vec<Verdict> {
    let claim = ClaimId::PropNonres.as_str();
    let kp = ctx.cfg.kprime;
    let (q, qnote) = ctx.q_nonres();
    let params = AlgebraParams::block(q.clone());
    let (lo, hi) = ctx.lo_hi();
    let mut out = Vec::new();

    // part 1: k != 0, profiles that solve the profile equation on the window
    let k = nonzero_k(ctx.cfg.k);
    let knote = (k != ctx.cfg.k).then(|| format!("configured k = 0; part 1 uses k = {k}"));
    let mut profiles = vec![("config".to_string(), ctx.g.clone())];
    if ctx.g != Family::Constant.default_profile() {
        profiles.push((
            Family::Constant.name().to_string(),
            Family::Constant.default_profile(),
        ));
    }
    for (label, g) in profiles {
        let mut feq = feq_verdict(claim, EquationId::FeqNonres, &g, lo, hi, &q, kp, ctx.cap);
        feq.config.k = Some(k);
        let feq = feq.expecting(expect(claimed_admissible_regime_ii(&g)));
        let solves = feq.holds();
        out.push(add_notes(
            labelled(feq, &label),
            &[qnote.clone(), knote.clone()],
        ));
        if !solves {
            continue;
        }
        let r = OperatorSpec::single_line(k, kp, g.clone());
        let v = kernel_sweep(claim, &params, &r, &ctx.w, ctx.cap).expecting(expect(true));
        out.push(add_notes(
            labelled(v, &label),
            &[qnote.clone(), knote.clone()],
        ));
        let v = printed_sweep(claim, &q, &r, &ctx.w, ctx.cap).expecting(expect(true));
        out.push(add_notes(
            labelled(v, &label),
            &[qnote.clone(), knote.clone()],
        ));
    }

    // part 2: k = 0, arbitrary g on m = 0
    let r = OperatorSpec::single_line(0, kp, ctx.g.clone());
    let v = kernel_sweep(claim, &params, &r, &ctx.w, ctx.cap).expecting(expect(true));
    out.push(add_notes(labelled(v, "config"), &[qnote.clone()]));
    let v = printed_sweep(claim, &q, &r, &ctx.w, ctx.cap).expecting(expect(true));
    out.push(add_notes(labelled(v, "config"), &[qnote]));
    out
}

fn check_example_linear(ctx: &Ctx) -> Vec<Verdict> {
    let claim = ClaimId::ExampleLinear.as_str();
    let kp = ctx.cfg.kprime;
    let (q, qnote) = ctx.q_nonres();
    let g = Family::Polynomial.default_profile();
    let value = profile_equation_residual(EquationId::FeqNonres, &g, 1, 0, &q, kp)
        .expect("profile equation");
    let predicted = &(&Scalar::int(1 + kp) * &(&Scalar::int(1 + kp) + &q)) * &Scalar::int(-1);
    let witnesses = if value.is_zero() {
        vec![]
    } else {
        vec![Witness::Scalar {
            indices: vec![1, 0],
            value: value.clone(),
        }]
    };
    let mut config = vconf(
        EquationId::FeqNonres.as_str(),
        &q,
        Some(nonzero_k(ctx.cfg.k)),
        kp,
    );
    config.family = Some(Family::Polynomial.name().to_string());
    config.profile = Some(ProfileSpec::single_line(0, g));
    let v = Verdict::from_witnesses(
        claim,
        config,
        Scope::Points {
            points: vec![vec![1, 0]],
        },
        witnesses,
        false,
    );
    // the example itself excepts k' = -1 and q = -1 - k'
    let v = if value.is_zero() {
        v.with_note("residual vanishes: an excepted parameter choice, no prediction")
    } else {
        v.expecting(expect(false))
    };
    let v = v.with_note(if value == predicted {
        format!("residual equals -(1+k')(1+k'+q) = {predicted}")
    } else {
        format!("residual {value} differs from -(1+k')(1+k'+q) = {predicted}")
    });
    vec![add_notes(v, &[qnote])]
}

fn check_remark_solutions(ctx: &Ctx) -> Vec<Verdict> {
    let claim = ClaimId::RemarkSolutions.as_str();
    let kp = ctx.cfg.kprime;
    let (q, qnote) = ctx.q_nonres();
    let (lo, hi) = ctx.lo_hi();
    let mut out = Vec::new();
    let mut rows: Vec<(String, Profile1D, bool)> = Family::ALL
        .iter()
        .map(|f| {
            (
                f.name().to_string(),
                f.default_profile(),
                f.claimed_regime_ii(),
            )
        })
        .collect();
    rows.insert(
        1,
        (
            "constant_symbolic".into(),
            Profile1D::constant(Scalar::symbol(crate::scalar::C)),
            true,
        ),
    );
    for (label, g, claimed) in rows {
        let mut v = feq_verdict(claim, EquationId::FeqNonres, &g, lo, hi, &q, kp, ctx.cap);
        v.config.family = Some(label);
        out.push(add_notes(v.expecting(expect(claimed)), &[qnote.clone()]));
    }

    // search: constants and (if 1 is a value) Kronecker deltas should appear
    let [slo, shi] = ctx.cfg.search_window;
    let Some(qr) = q.as_constant() else {
        return out;
    };
    let Ok(found) = feq_solution_search(
        slo,
        shi,
        &ctx.cfg.values,
        &qr,
        kp,
        EquationId::FeqNonres,
        ctx.cfg.boundary,
    ) else {
        return out;
    };
    let mut expected: Vec<(Vec<i64>, Rational, Profile1D)> = found
        .values
        .iter()
        .map(|c| {
            let table = (slo..=shi)
                .map(|i| (i, Scalar::constant(c.clone())))
                .collect();
            (vec![], c.clone(), Profile1D::finite_table(table))
        })
        .collect();
    if found.values.contains(&Rational::one()) {
        for i0 in slo..=shi {
            let table = [(i0, Scalar::one())].into_iter().collect();
            expected.push((vec![i0], Rational::one(), Profile1D::finite_table(table)));
        }
    }
    let missing: Vec<Witness> = expected
        .into_iter()
        .filter(|(_, _, p)| !found.solutions.contains(p))
        .map(|(indices, c, _)| Witness::Scalar {
            indices,
            value: Scalar::constant(c),
        })
        .collect();
    let (witnesses, truncated) = cap_witnesses(missing, ctx.cap);
    let config = vconf("FEQ_SEARCH", &q, None, kp);
    let v = Verdict::from_witnesses(
        claim,
        config,
        Scope::Index { lo: slo, hi: shi },
        witnesses,
        truncated,
    )
    .expecting(expect(true))
    .with_note(format!(
        "{} solutions over {} values, boundary {}",
        found.solutions.len(),
        found.values.len(),
        serde_json::to_value(found.boundary)
            .expect("boundary")
            .as_str()
            .unwrap_or_default()
    ))
    .with_note("witness: constant (no indices) or delta at i0 absent from the search output");
    out.push(add_notes(v, &[qnote]));
    out
}

fn check_prop_resonant(ctx: &Ctx) -> Vec<Verdict> {
    let claim = ClaimId::PropResonant.as_str();
    let (k, kp) = (ctx.cfg.k, ctx.cfg.kprime);
    let q = ctx.q_res();
    let params = AlgebraParams::block(q.clone());
    let mut profiles = vec![("config".to_string(), ctx.g.clone())];
    profiles.extend(
        Family::ALL
            .iter()
            .map(|f| (f.name().to_string(), f.default_profile())),
    );
    let mut out = Vec::new();
    for (label, g) in profiles {
        let r = OperatorSpec::single_line(k, kp, g);
        out.push(labelled(
            kernel_sweep(claim, &params, &r, &ctx.w, ctx.cap).expecting(expect(true)),
            &label,
        ));
        out.push(labelled(
            printed_sweep(claim, &q, &r, &ctx.w, ctx.cap).expecting(expect(true)),
            &label,
        ));
    }
    out
}

fn check_two_line(ctx: &Ctx) -> Vec<Verdict> {
    let claim = ClaimId::ThmTwoLine.as_str();
    let (k, kp) = (ctx.cfg.k, ctx.cfg.kprime);
    let q = ctx.q_res();
    let params = AlgebraParams::block(q.clone());
    let g = &ctx.g;
    let nonzero = !g.is_identically_zero();
    let mut out = Vec::new();
    for (a, b) in [(-k, -k + 1), (-k + 1, -k + 2)] {
        let v = two_line_test(&params, a, g, b, g, k, kp, &ctx.w, ctx.cap).expect("distinct lines");
        let exp = nonzero.then_some(Expectation::Fails);
        out.push(v.expecting(exp));
        let r = OperatorSpec::new(
            k,
            kp,
            ProfileSpec::two_lines(a, g.clone(), b, g.clone()).expect("distinct lines"),
        );
        out.push(printed_sweep(claim, &q, &r, &ctx.w, ctx.cap).expecting(exp));
    }
    out
}

fn check_rigidity(ctx: &Ctx) -> Vec<Verdict> {
    let claim = ClaimId::ThmRigidity.as_str();
    let (k, kp) = (ctx.cfg.k, ctx.cfg.kprime);
    let q = ctx.q_res();
    let params = AlgebraParams::block(q.clone());
    let lines = (*ctx.w.m_range().start() - 1)..=(*ctx.w.m_range().end() + 1);
    let scan = rigidity_support_scan(&params, k, kp, &ctx.g, &ctx.w, lines, ctx.cap);
    let zero = ctx.g.is_identically_zero();
    let mut per_line = Vec::new();
    for (a, v) in scan {
        let vacuous = !ctx.w.m_range().contains(&a);
        let exp = if zero {
            expect(true)
        } else if vacuous {
            None
        } else {
            expect(a == support_line(k))
        };
        per_line.push(v.expecting(exp).with_note(format!("support line m = {a}")));
    }
    let surviving: Vec<i64> = per_line
        .iter()
        .filter(|v| v.holds() && !v.notes.iter().any(|n| n.starts_with("vacuous")))
        .filter_map(|v| {
            v.config
                .profile
                .as_ref()
                .and_then(|p| p.lines().first().map(|l| l.m0))
        })
        .collect();
    let mut config = vconf(EquationId::Kernel.as_str(), &q, Some(k), kp);
    config.profile = Some(ProfileSpec::single_line(support_line(k), ctx.g.clone()));
    let summary = Verdict::aggregate(
        claim,
        config,
        Scope::Grid {
            window: ctx.w,
            arity: 2,
        },
        &per_line,
        ctx.cap,
    )
    .with_note(format!(
        "non-vacuous lines holding on the window: {surviving:?}; predicted: [{}]",
        support_line(k)
    ));
    let mut out = per_line;
    out.push(summary);
    out
}

fn check_complete(ctx: &Ctx) -> Vec<Verdict> {
    let claim = ClaimId::ThmComplete.as_str();
    let (k, kp) = (ctx.cfg.k, ctx.cfg.kprime);
    let (qn, qnote) = ctx.q_nonres();
    let g = &ctx.g;
    let cases = [
        (
            "1a",
            qn.clone(),
            nonzero_k(k),
            claimed_admissible_regime_ii(g) || g.is_identically_zero(),
        ),
        ("1b", qn, 0, true),
        ("2", ctx.q_res(), k, true),
    ];
    let mut out = Vec::new();
    for (case, q, k, claimed) in cases {
        let params = AlgebraParams::block(q.clone());
        let r = OperatorSpec::single_line(k, kp, g.clone());
        let regime = classify_regime(&q, k, kp);
        let note = format!("case ({case})");
        let notes = [
            Some(note),
            (case != "2").then(|| qnote.clone()).flatten(),
            genericity_note(&q, k),
        ];
        let mut v = kernel_sweep(claim, &params, &r, &ctx.w, ctx.cap).expecting(expect(claimed));
        v.config.regime = Some(regime);
        out.push(add_notes(v, &notes));
        let mut v = printed_sweep(claim, &q, &r, &ctx.w, ctx.cap).expecting(expect(claimed));
        v.config.regime = Some(regime);
        out.push(add_notes(v, &notes));
    }
    out
}

fn check_table(ctx: &Ctx) -> Vec<Verdict> {
    let mut out = Vec::new();
    for variant in [
        EquationId::FeqNonres,
        EquationId::FeqPlus,
        EquationId::Kernel,
    ] {
        if !ctx.cfg.variants.contains(&variant) {
            continue;
        }
        let m = admissibility_matrix(
            &ctx.w,
            &ctx.cfg.q,
            ctx.cfg.k,
            ctx.cfg.kprime,
            variant,
            ctx.cap,
        )
        .expect("supported variant");
        out.extend(m.cells.into_iter().map(|c| c.verdict));
    }
    out
}

/// Whether the published statements make `R` a Rota–Baxter operator here.
fn claimed_rb(q: &Scalar, k: i64, kprime: i64, g: &Profile1D) -> bool {
    claimed_admissible(classify_regime(q, k, kprime), g)
}

fn small_window(ctx: &Ctx) -> Window {
    Window::square(ctx.cfg.window.min(2))
}

fn check_prelie(ctx: &Ctx) -> Vec<Verdict> {
    let claim = ClaimId::PrelieA1;
    let (q, k, kp) = (&ctx.cfg.q, ctx.cfg.k, ctx.cfg.kprime);
    let params = AlgebraParams::block(q.clone());
    let r = OperatorSpec::single_line(k, kp, ctx.g.clone());
    let mut base = vconf("", q, Some(k), kp);
    base.profile = Some(r.profile.clone());
    base.regime = Some(classify_regime(q, k, kp));

    let basis = ctx.w.basis();
    let all = pair_witnesses(&basis, |a, b| {
        let got = prelie_product(&params, &r, &basis_el(a), &basis_el(b));
        Some(&got - &prelie_closed_form(&ctx.g, k, kp, q, a.m, a.i, b.m, b.i))
    });
    let config = VerdictConfig {
        check: "PRELIE_CLOSED_FORM".into(),
        ..base.clone()
    };
    let closed = grid_verdict(claim, config, ctx.w, 2, all, ctx.cap).expecting(expect(true));

    let sw = small_window(ctx);
    let sb = sw.basis();
    let all = triple_witnesses(&sb, |a, b, c| {
        left_symmetry_defect(&params, &r, &basis_el(a), &basis_el(b), &basis_el(c))
    });
    let config = VerdictConfig {
        check: "LEFT_SYMMETRY".into(),
        ..base
    };
    let claimed = claimed_rb(q, k, kp, &ctx.g);
    let ls = grid_verdict(claim, config, sw, 3, all, ctx.cap);
    let ls = if claimed {
        ls.expecting(expect(true))
    } else {
        ls.with_note("R is not claimed Rota-Baxter here; no prediction")
    };
    vec![closed, add_notes(ls, &[genericity_note(q, k)])]
}

fn check_deform(ctx: &Ctx) -> Vec<Verdict> {
    let claim = ClaimId::DeformA2;
    let (q, k, kp) = (&ctx.cfg.q, ctx.cfg.k, ctx.cfg.kprime);
    let params = AlgebraParams::block(q.clone());
    let r = OperatorSpec::single_line(k, kp, ctx.g.clone());
    let mut base = vconf("", q, Some(k), kp);
    base.profile = Some(r.profile.clone());
    base.regime = Some(classify_regime(q, k, kp));
    let basis = ctx.w.basis();
    let delta = |a: Bidegree, b: Bidegree| {
        let (u, v) = (basis_el(a), basis_el(b));
        &deformed_bracket(&params, &r, &u, &v) - &bracket(&params, &u, &v)
    };

    let all = pair_witnesses(&basis, |a, b| {
        Some(&delta(a, b) - &delta_term(&ctx.g, k, kp, q, a.m, a.i, b.m, b.i))
    });
    let config = VerdictConfig {
        check: "DELTA_CLOSED_FORM".into(),
        ..base.clone()
    };
    let closed = grid_verdict(claim, config, ctx.w, 2, all, ctx.cap).expecting(expect(true));

    let line = support_line(k);
    let all = pair_witnesses(&basis, |a, b| {
        (a.m != line && b.m != line).then(|| delta(a, b))
    });
    let config = VerdictConfig {
        check: "DELTA_OFF_LINE".into(),
        ..base.clone()
    };
    let off = grid_verdict(claim, config, ctx.w, 2, all, ctx.cap).expecting(expect(true));

    let sw = small_window(ctx);
    let sb = sw.basis();
    let all = triple_witnesses(&sb, |a, b, c| {
        deformed_jacobi_defect(&params, &r, &basis_el(a), &basis_el(b), &basis_el(c))
    });
    let config = VerdictConfig {
        check: "DEFORMED_JACOBI".into(),
        ..base
    };
    let jac = grid_verdict(claim, config, sw, 3, all, ctx.cap);
    let jac = if claimed_rb(q, k, kp, &ctx.g) {
        jac.expecting(expect(true))
    } else {
        jac.with_note("R is not claimed Rota-Baxter here; no prediction")
    };
    vec![closed, off, add_notes(jac, &[genericity_note(q, k)])]
}
