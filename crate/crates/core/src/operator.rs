//! Homogeneous operator candidates `R(L(m,i)) = f(m,i) L(m+k, i+k')`.
//!
//! A profile `f` is a sum of one-dimensional profiles placed on support lines
//! `{m = m0}` plus an optional finite two-dimensional table.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::block::{Bidegree, GradedElement};
use crate::scalar::{Monomial, Rational, Scalar, ScalarError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProfileError {
    #[error("exponential base must be nonzero")]
    ZeroBase,
    #[error("periodic profile needs a nonempty table")]
    EmptyPeriod,
    #[error("support line m0 = {0} appears more than once")]
    DuplicateLine(i64),
    #[error("table index `{0}` is not an integer")]
    BadIndex(String),
    #[error("bad profile shorthand `{0}`")]
    BadShorthand(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// One-dimensional profile `g: Z -> Scalar`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", try_from = "Profile1DRepr")]
pub enum Profile1D {
    Constant { c: Scalar },
    Kronecker { i0: i64, c: Scalar },
    FiniteTable { table: BTreeMap<i64, Scalar> },
    Exponential { b: Rational },
    Polynomial { coeffs: Vec<Scalar> },
    Periodic { table: Vec<Scalar> },
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum Profile1DRepr {
    Constant { c: Scalar },
    Kronecker { i0: i64, c: Scalar },
    // String keys: the tagged-enum buffer will not coerce "0" to an integer.
    FiniteTable { table: BTreeMap<String, Scalar> },
    Exponential { b: Rational },
    Polynomial { coeffs: Vec<Scalar> },
    Periodic { table: Vec<Scalar> },
}

impl TryFrom<Profile1DRepr> for Profile1D {
    type Error = ProfileError;

    fn try_from(r: Profile1DRepr) -> Result<Self, Self::Error> {
        Ok(match r {
            Profile1DRepr::Constant { c } => Profile1D::Constant { c },
            Profile1DRepr::Kronecker { i0, c } => Profile1D::Kronecker { i0, c },
            Profile1DRepr::FiniteTable { table } => Profile1D::finite_table(
                table
                    .into_iter()
                    .map(|(k, v)| {
                        k.trim()
                            .parse()
                            .map(|i| (i, v))
                            .map_err(|_| ProfileError::BadIndex(k))
                    })
                    .collect::<Result<_, _>>()?,
            ),
            Profile1DRepr::Exponential { b } => Profile1D::exponential(b)?,
            Profile1DRepr::Polynomial { coeffs } => Profile1D::Polynomial { coeffs },
            Profile1DRepr::Periodic { table } => Profile1D::periodic(table)?,
        })
    }
}

impl Profile1D {
    pub fn zero() -> Self {
        Profile1D::Constant { c: Scalar::zero() }
    }

    pub fn constant(c: impl Into<Scalar>) -> Self {
        Profile1D::Constant { c: c.into() }
    }

    pub fn kronecker(i0: i64, c: impl Into<Scalar>) -> Self {
        Profile1D::Kronecker { i0, c: c.into() }
    }

    /// Zero entries are dropped.
    /// Empty finite table: the zero profile in search output form.
    pub fn zero_table() -> Self {
        Profile1D::FiniteTable {
            table: BTreeMap::new(),
        }
    }

    pub fn finite_table(table: BTreeMap<i64, Scalar>) -> Self {
        Profile1D::FiniteTable {
            table: table.into_iter().filter(|(_, v)| !v.is_zero()).collect(),
        }
    }

    pub fn exponential(b: Rational) -> Result<Self, ProfileError> {
        if b.is_zero() {
            return Err(ProfileError::ZeroBase);
        }
        Ok(Profile1D::Exponential { b })
    }

    pub fn polynomial(coeffs: Vec<Scalar>) -> Self {
        Profile1D::Polynomial { coeffs }
    }

    pub fn periodic(table: Vec<Scalar>) -> Result<Self, ProfileError> {
        if table.is_empty() {
            return Err(ProfileError::EmptyPeriod);
        }
        Ok(Profile1D::Periodic { table })
    }

    pub fn eval(&self, i: i64) -> Scalar {
        match self {
            Profile1D::Constant { c } => c.clone(),
            Profile1D::Kronecker { i0, c } => {
                if i == *i0 {
                    c.clone()
                } else {
                    Scalar::zero()
                }
            }
            Profile1D::FiniteTable { table } => table.get(&i).cloned().unwrap_or_default(),
            Profile1D::Exponential { b } => Scalar::constant(b.pow(i).expect("nonzero base")),
            Profile1D::Polynomial { coeffs } => {
                let x = Rational::from_int(i);
                let mut acc = Scalar::zero();
                // Horner
                for c in coeffs.iter().rev() {
                    acc = &acc.scale(&x) + c;
                }
                acc
            }
            Profile1D::Periodic { table } => {
                let p = table.len() as i64;
                table[i.rem_euclid(p) as usize].clone()
            }
        }
    }

    pub fn is_identically_zero(&self) -> bool {
        match self {
            Profile1D::Constant { c } | Profile1D::Kronecker { c, .. } => c.is_zero(),
            Profile1D::FiniteTable { table } => table.is_empty(),
            Profile1D::Exponential { .. } => false,
            Profile1D::Polynomial { coeffs } => coeffs.iter().all(Scalar::is_zero),
            Profile1D::Periodic { table } => table.iter().all(Scalar::is_zero),
        }
    }

    /// For periodic profiles: whether the table takes more than one value.
    pub fn is_nonconstant_periodic(&self) -> bool {
        match self {
            Profile1D::Periodic { table } => table.iter().any(|v| v != &table[0]),
            _ => false,
        }
    }
}

impl fmt::Display for Profile1D {
    /// Shorthand form, parseable by [`Profile1D::from_str`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Profile1D::Constant { c } => write!(f, "constant:{}", compact(c)),
            Profile1D::Kronecker { i0, c } => write!(f, "kronecker:{i0}:{}", compact(c)),
            Profile1D::FiniteTable { table } => {
                let cells: Vec<String> = table
                    .iter()
                    .map(|(i, v)| format!("{i}={}", compact(v)))
                    .collect();
                write!(f, "table:{}", cells.join(","))
            }
            Profile1D::Exponential { b } => write!(f, "exp:{b}"),
            Profile1D::Polynomial { coeffs } => {
                let cells: Vec<String> = coeffs.iter().map(compact).collect();
                write!(f, "poly:{}", cells.join(","))
            }
            Profile1D::Periodic { table } => {
                let cells: Vec<String> = table.iter().map(compact).collect();
                write!(f, "periodic:{}", cells.join(";"))
            }
        }
    }
}

fn compact(s: &Scalar) -> String {
    s.to_string().replace(' ', "")
}

/// Parses a scalar literal: a sum of terms like `3`, `-1/2`, `q`, `2*q^2`,
/// `1/3*c`.
pub fn parse_scalar_literal(text: &str) -> Result<Scalar, ProfileError> {
    let bad = || ProfileError::BadShorthand(text.to_string());
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return Err(bad());
    }
    let mut pieces: Vec<(bool, String)> = Vec::new();
    let mut cur = String::new();
    let mut neg = false;
    for (idx, ch) in t.chars().enumerate() {
        if ch == '+' || ch == '-' {
            if idx == 0 {
                neg = ch == '-';
                continue;
            }
            if cur.is_empty() {
                return Err(bad());
            }
            pieces.push((neg, std::mem::take(&mut cur)));
            neg = ch == '-';
        } else {
            cur.push(ch);
        }
    }
    if cur.is_empty() {
        return Err(bad());
    }
    pieces.push((neg, cur));
    let mut out = Scalar::zero();
    for (neg, piece) in pieces {
        let (coef, mono) = match piece.split_once('*') {
            Some((c, m)) => (c.parse::<Rational>()?, m.parse::<Monomial>()?),
            None => match piece.parse::<Rational>() {
                Ok(r) => (r, Monomial::one()),
                Err(_) => (Rational::one(), piece.parse::<Monomial>()?),
            },
        };
        let coef = if neg { -coef } else { coef };
        out += &Scalar::from_terms([(mono, coef)]);
    }
    Ok(out)
}

impl FromStr for Profile1D {
    type Err = ProfileError;

    /// `constant:c`, `kronecker:i0:c`, `exp:b`, `poly:c0,c1,...`,
    /// `periodic:v0;v1;...`, `table:i=v,...`, `zero`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ProfileError::BadShorthand(s.to_string());
        let s = s.trim();
        if s == "zero" {
            return Ok(Profile1D::zero());
        }
        let (kind, rest) = s.split_once(':').ok_or_else(bad)?;
        match kind {
            "constant" => Ok(Profile1D::constant(parse_scalar_literal(rest)?)),
            "kronecker" => {
                let (i0, c) = rest.split_once(':').ok_or_else(bad)?;
                let i0 = i0.trim().parse().map_err(|_| bad())?;
                Ok(Profile1D::kronecker(i0, parse_scalar_literal(c)?))
            }
            "exp" => Profile1D::exponential(rest.parse()?),
            "poly" => {
                let coeffs = rest
                    .split(',')
                    .map(parse_scalar_literal)
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(Profile1D::polynomial(coeffs))
            }
            "periodic" => {
                let table = rest
                    .split(';')
                    .map(parse_scalar_literal)
                    .collect::<Result<Vec<_>, _>>()?;
                Profile1D::periodic(table)
            }
            "table" => {
                let mut table = BTreeMap::new();
                if !rest.trim().is_empty() {
                    for cell in rest.split(',') {
                        let (i, v) = cell.split_once('=').ok_or_else(bad)?;
                        let i: i64 = i.trim().parse().map_err(|_| bad())?;
                        table.insert(i, parse_scalar_literal(v)?);
                    }
                }
                Ok(Profile1D::finite_table(table))
            }
            _ => Err(bad()),
        }
    }
}

/// A profile placed on the line `{m = m0}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Line {
    pub m0: i64,
    pub g: Profile1D,
}

/// Full two-dimensional profile: line contributions plus a finite table.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ProfileSpecRepr")]
pub struct ProfileSpec {
    lines: Vec<Line>,
    #[serde(default, skip_serializing_if = "GradedElement::is_zero")]
    extra: GradedElement,
}

#[derive(Deserialize)]
struct ProfileSpecRepr {
    lines: Vec<Line>,
    #[serde(default)]
    extra: GradedElement,
}

impl TryFrom<ProfileSpecRepr> for ProfileSpec {
    type Error = ProfileError;

    fn try_from(r: ProfileSpecRepr) -> Result<Self, Self::Error> {
        ProfileSpec::new(r.lines, r.extra)
    }
}

impl ProfileSpec {
    pub fn new(lines: Vec<Line>, extra: GradedElement) -> Result<Self, ProfileError> {
        let mut seen = std::collections::BTreeSet::new();
        for l in &lines {
            if !seen.insert(l.m0) {
                return Err(ProfileError::DuplicateLine(l.m0));
            }
        }
        Ok(ProfileSpec { lines, extra })
    }

    pub fn zero() -> Self {
        ProfileSpec::default()
    }

    pub fn single_line(m0: i64, g: Profile1D) -> Self {
        ProfileSpec {
            lines: vec![Line { m0, g }],
            extra: GradedElement::zero(),
        }
    }

    pub fn two_lines(a: i64, ga: Profile1D, b: i64, gb: Profile1D) -> Result<Self, ProfileError> {
        ProfileSpec::new(
            vec![Line { m0: a, g: ga }, Line { m0: b, g: gb }],
            GradedElement::zero(),
        )
    }

    pub fn lines(&self) -> &[Line] {
        &self.lines
    }

    pub fn extra(&self) -> &GradedElement {
        &self.extra
    }

    /// `f(m, i)`.
    pub fn eval(&self, m: i64, i: i64) -> Scalar {
        let mut v = self.extra.coeff(Bidegree::new(m, i));
        for line in &self.lines {
            if line.m0 == m {
                v += &line.g.eval(i);
            }
        }
        v
    }

    /// Sorted m-values on which the profile is not identically zero.
    pub fn support_lines(&self) -> Vec<i64> {
        let mut out: Vec<i64> = self
            .lines
            .iter()
            .filter(|l| !l.g.is_identically_zero())
            .map(|l| l.m0)
            .chain(self.extra.support().map(|b| b.m))
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Parses `spec[@m0]` entries joined by `|`; entries without `@m0` go on
    /// `default_line`.
    pub fn parse_shorthand(text: &str, default_line: i64) -> Result<Self, ProfileError> {
        let mut lines = Vec::new();
        for part in text.split('|') {
            let (g, m0) = match part.rsplit_once('@') {
                Some((g, m0)) => (
                    g,
                    m0.trim()
                        .parse()
                        .map_err(|_| ProfileError::BadShorthand(text.to_string()))?,
                ),
                None => (part, default_line),
            };
            lines.push(Line { m0, g: g.parse()? });
        }
        ProfileSpec::new(lines, GradedElement::zero())
    }
}

/// Degree `(k, k')` plus profile.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperatorSpec {
    pub k: i64,
    pub kprime: i64,
    pub profile: ProfileSpec,
}

impl OperatorSpec {
    pub fn new(k: i64, kprime: i64, profile: ProfileSpec) -> Self {
        OperatorSpec { k, kprime, profile }
    }

    pub fn zero(k: i64, kprime: i64) -> Self {
        OperatorSpec::new(k, kprime, ProfileSpec::zero())
    }

    /// `g` placed on the line `m = -k`.
    pub fn single_line(k: i64, kprime: i64, g: Profile1D) -> Self {
        OperatorSpec::new(k, kprime, ProfileSpec::single_line(-k, g))
    }

    pub fn image_of_basis(&self, at: Bidegree) -> (Bidegree, Scalar) {
        (at.shift(self.k, self.kprime), self.profile.eval(at.m, at.i))
    }

    pub fn apply(&self, u: &GradedElement) -> GradedElement {
        let mut out = GradedElement::zero();
        for (&at, c) in u.terms() {
            let (to, f) = self.image_of_basis(at);
            if !f.is_zero() {
                out.add_term(to, &f * c);
            }
        }
        out
    }
}

pub fn profile_eval(spec: &ProfileSpec, m: i64, i: i64) -> Scalar {
    spec.eval(m, i)
}

pub fn apply_operator(r: &OperatorSpec, u: &GradedElement) -> GradedElement {
    r.apply(u)
}

pub fn support_lines(spec: &ProfileSpec) -> Vec<i64> {
    spec.support_lines()
}
