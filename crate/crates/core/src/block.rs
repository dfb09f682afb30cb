//! The generalized Block-type algebra: finitely supported combinations of
//! basis vectors `x_{m,i}` with product
//!
//! ```text
//! [x_{m,i}, x_{n,j}] = (n (i + alpha) - m (j + beta)) x_{m+n, i+j}
//! ```
//!
//! `alpha = beta = q` gives the Block algebra `B(q)` with basis `L(m, i)`.
//! The product is implemented as a plain bilinear map; antisymmetry and the
//! Jacobi identity are checked by [`antisymmetry_defect`] and
//! [`jacobi_defect`], never assumed.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::de::{self, SeqAccess, Visitor};
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::scalar::{Rational, Scalar, ALPHA, BETA};

/// Index pair `(m, i)`; ordered lexicographically.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "[i64; 2]", into = "[i64; 2]")]
pub struct Bidegree {
    pub m: i64,
    pub i: i64,
}

impl Bidegree {
    pub const fn new(m: i64, i: i64) -> Self {
        Bidegree { m, i }
    }

    pub const fn shift(self, dm: i64, di: i64) -> Self {
        Bidegree::new(self.m + dm, self.i + di)
    }
}

impl From<[i64; 2]> for Bidegree {
    fn from([m, i]: [i64; 2]) -> Self {
        Bidegree { m, i }
    }
}

impl From<Bidegree> for [i64; 2] {
    fn from(b: Bidegree) -> Self {
        [b.m, b.i]
    }
}

impl fmt::Display for Bidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.m, self.i)
    }
}

/// Offsets of the affine coefficient sequences `a_i = i + alpha`,
/// `b_j = j + beta`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraParams {
    pub alpha: Scalar,
    pub beta: Scalar,
}

impl AlgebraParams {
    /// `B(q)` for the given value (or polynomial) of `q`.
    pub fn block(q: Scalar) -> Self {
        AlgebraParams {
            alpha: q.clone(),
            beta: q,
        }
    }

    /// `B(q)` with `q` kept as a free symbol.
    pub fn block_symbolic() -> Self {
        AlgebraParams::block(Scalar::q())
    }

    pub fn general(alpha: Scalar, beta: Scalar) -> Self {
        AlgebraParams { alpha, beta }
    }

    /// Distinct free symbols `a` and `b` for alpha and beta.
    pub fn general_symbolic() -> Self {
        AlgebraParams::general(Scalar::symbol(ALPHA), Scalar::symbol(BETA))
    }

    pub fn is_symmetric(&self) -> bool {
        self.alpha == self.beta
    }

    /// `a_i = i + alpha`.
    pub fn a(&self, i: i64) -> Scalar {
        &Scalar::int(i) + &self.alpha
    }

    /// `b_j = j + beta`.
    pub fn b(&self, j: i64) -> Scalar {
        &Scalar::int(j) + &self.beta
    }

    /// Structure constant of `[x_{m,i}, x_{n,j}]`: `n a_i - m b_j`.
    pub fn structure_constant(&self, m: i64, i: i64, n: i64, j: i64) -> Scalar {
        let mut c = Scalar::int(n * i - m * j);
        c += &self.alpha.scale(&Rational::from_int(n));
        c += &self.beta.scale(&Rational::from_int(-m));
        c
    }
}

/// Finitely supported element `sum c_{m,i} x_{m,i}`; zero coefficients are
/// never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GradedElement {
    terms: BTreeMap<Bidegree, Scalar>,
}

impl GradedElement {
    pub fn zero() -> Self {
        GradedElement::default()
    }

    pub fn basis(m: i64, i: i64) -> Self {
        GradedElement::monomial(Bidegree::new(m, i), Scalar::one())
    }

    pub fn monomial(at: Bidegree, coeff: Scalar) -> Self {
        let mut e = GradedElement::zero();
        e.add_term(at, coeff);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Bidegree, &Scalar)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = Bidegree> + '_ {
        self.terms.keys().copied()
    }

    pub fn coeff(&self, at: Bidegree) -> Scalar {
        self.terms.get(&at).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, at: Bidegree, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(at) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, s: &Scalar) -> GradedElement {
        let mut out = GradedElement::zero();
        for (&at, c) in &self.terms {
            out.add_term(at, c * s);
        }
        out
    }

    /// Maps every coefficient through `f`, dropping zeros.
    pub fn map_coeffs(&self, mut f: impl FnMut(&Scalar) -> Scalar) -> GradedElement {
        let mut out = GradedElement::zero();
        for (&at, c) in &self.terms {
            out.add_term(at, f(c));
        }
        out
    }
}

impl Add<&GradedElement> for &GradedElement {
    type Output = GradedElement;
    fn add(self, rhs: &GradedElement) -> GradedElement {
        let mut out = self.clone();
        for (&at, c) in &rhs.terms {
            out.add_term(at, c.clone());
        }
        out
    }
}

impl Add for GradedElement {
    type Output = GradedElement;
    fn add(self, rhs: GradedElement) -> GradedElement {
        &self + &rhs
    }
}

impl Sub<&GradedElement> for &GradedElement {
    type Output = GradedElement;
    fn sub(self, rhs: &GradedElement) -> GradedElement {
        let mut out = self.clone();
        for (&at, c) in &rhs.terms {
            out.add_term(at, -c);
        }
        out
    }
}

impl Sub for GradedElement {
    type Output = GradedElement;
    fn sub(self, rhs: GradedElement) -> GradedElement {
        &self - &rhs
    }
}

impl Neg for &GradedElement {
    type Output = GradedElement;
    fn neg(self) -> GradedElement {
        self.map_coeffs(|c| -c)
    }
}

impl Neg for GradedElement {
    type Output = GradedElement;
    fn neg(self) -> GradedElement {
        -&self
    }
}

impl FromIterator<(Bidegree, Scalar)> for GradedElement {
    fn from_iter<I: IntoIterator<Item = (Bidegree, Scalar)>>(iter: I) -> Self {
        let mut e = GradedElement::zero();
        for (at, c) in iter {
            e.add_term(at, c);
        }
        e
    }
}

impl fmt::Display for GradedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (at, c)) in self.terms.iter().enumerate() {
            if idx > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c})*L{at}")?;
        }
        Ok(())
    }
}

// Serialized as an ordered list of [m, i, Scalar] triples.
impl Serialize for GradedElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for (at, c) in &self.terms {
            seq.serialize_element(&(at.m, at.i, c))?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for GradedElement {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct ElementVisitor;

        impl<'de> Visitor<'de> for ElementVisitor {
            type Value = GradedElement;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a list of [m, i, scalar] triples")
            }

            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<GradedElement, A::Error> {
                let mut out = GradedElement::zero();
                while let Some((m, i, c)) = seq.next_element::<(i64, i64, Scalar)>()? {
                    if c.is_zero() {
                        return Err(de::Error::custom("zero coefficient in graded element"));
                    }
                    out.add_term(Bidegree::new(m, i), c);
                }
                Ok(out)
            }
        }

        deserializer.deserialize_seq(ElementVisitor)
    }
}

/// Bilinear extension of the basis product.
pub fn bracket(params: &AlgebraParams, u: &GradedElement, v: &GradedElement) -> GradedElement {
    let mut out = GradedElement::zero();
    for (a, cu) in u.terms() {
        for (b, cv) in v.terms() {
            let sc = params.structure_constant(a.m, a.i, b.m, b.i);
            if sc.is_zero() {
                continue;
            }
            out.add_term(Bidegree::new(a.m + b.m, a.i + b.i), &(&sc * cu) * cv);
        }
    }
    out
}

/// `[u, v] + [v, u]`.
pub fn antisymmetry_defect(
    params: &AlgebraParams,
    u: &GradedElement,
    v: &GradedElement,
) -> GradedElement {
    &bracket(params, u, v) + &bracket(params, v, u)
}

/// `[u, [v, w]] + [v, [w, u]] + [w, [u, v]]`.
pub fn jacobi_defect(
    params: &AlgebraParams,
    u: &GradedElement,
    v: &GradedElement,
    w: &GradedElement,
) -> GradedElement {
    let a = bracket(params, u, &bracket(params, v, w));
    let b = bracket(params, v, &bracket(params, w, u));
    let c = bracket(params, w, &bracket(params, u, v));
    &(&a + &b) + &c
}
