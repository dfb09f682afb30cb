//! Structures induced by an operator `R`: the product `x ▷ y = [R(x), y]`,
//! its associator defect, and the deformed bracket
//! `{x, y} = x ▷ y - y ▷ x + [x, y]`.
//!
//! The closed forms [`prelie_closed_form`] and [`delta_term`] are literal
//! evaluators; they share nothing with the composed versions they are
//! compared against.

use serde::{Deserialize, Serialize};

use crate::block::{bracket, AlgebraParams, Bidegree, GradedElement};
use crate::operator::{OperatorSpec, Profile1D};
use crate::scalar::Scalar;
use crate::verdict::Window;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeformedBracketConfig {
    pub params: AlgebraParams,
    pub r: OperatorSpec,
}

pub fn prelie_product(
    params: &AlgebraParams,
    r: &OperatorSpec,
    u: &GradedElement,
    v: &GradedElement,
) -> GradedElement {
    bracket(params, &r.apply(u), v)
}

/// `g(i) n (i + k' + q) L(n, i+j+k')` when `m = -k`, else `0`.
#[allow(clippy::too_many_arguments)]
pub fn prelie_closed_form(
    g: &Profile1D,
    k: i64,
    kprime: i64,
    q: &Scalar,
    m: i64,
    i: i64,
    n: i64,
    j: i64,
) -> GradedElement {
    if m != -k {
        return GradedElement::zero();
    }
    let coeff = &(&g.eval(i) * &(&Scalar::int(i + kprime) + q)).scale(&n.into());
    GradedElement::monomial(Bidegree::new(n, i + j + kprime), coeff.clone())
}

/// `(x ▷ y) ▷ z - x ▷ (y ▷ z)`.
pub fn associator(
    params: &AlgebraParams,
    r: &OperatorSpec,
    x: &GradedElement,
    y: &GradedElement,
    z: &GradedElement,
) -> GradedElement {
    let xy = prelie_product(params, r, x, y);
    let yz = prelie_product(params, r, y, z);
    &prelie_product(params, r, &xy, z) - &prelie_product(params, r, x, &yz)
}

/// `assoc(u, v, w) - assoc(v, u, w)`; zero for all triples exactly when the
/// product is left-symmetric.
pub fn left_symmetry_defect(
    params: &AlgebraParams,
    r: &OperatorSpec,
    u: &GradedElement,
    v: &GradedElement,
    w: &GradedElement,
) -> GradedElement {
    &associator(params, r, u, v, w) - &associator(params, r, v, u, w)
}

pub fn deformed_bracket(
    params: &AlgebraParams,
    r: &OperatorSpec,
    u: &GradedElement,
    v: &GradedElement,
) -> GradedElement {
    let uv = prelie_product(params, r, u, v);
    let vu = prelie_product(params, r, v, u);
    &(&uv - &vu) + &bracket(params, u, v)
}

/// Jacobi sum `{u,{v,w}} + cyclic` of the deformed bracket. Equals
/// `sum_cyc [residual(x,y) - R[x,y], z]`, so it need not vanish even when `R`
/// satisfies the identity.
pub fn deformed_jacobi_defect(
    params: &AlgebraParams,
    r: &OperatorSpec,
    u: &GradedElement,
    v: &GradedElement,
    w: &GradedElement,
) -> GradedElement {
    let db = |a: &GradedElement, b: &GradedElement| deformed_bracket(params, r, a, b);
    let x = db(u, &db(v, w));
    let y = db(v, &db(w, u));
    let z = db(w, &db(u, v));
    &(&x + &y) + &z
}

/// ```text
/// 1{m=-k} g(i) n (i+k'+q) L(n, i+j+k') - 1{n=-k} g(j) m (j+k'+q) L(m, i+j+k')
/// ```
#[allow(clippy::too_many_arguments)]
pub fn delta_term(
    g: &Profile1D,
    k: i64,
    kprime: i64,
    q: &Scalar,
    m: i64,
    i: i64,
    n: i64,
    j: i64,
) -> GradedElement {
    let mut out = GradedElement::zero();
    if m == -k {
        let c = (&g.eval(i) * &(&Scalar::int(i + kprime) + q)).scale(&n.into());
        out.add_term(Bidegree::new(n, i + j + kprime), c);
    }
    if n == -k {
        let c = (&g.eval(j) * &(&Scalar::int(j + kprime) + q)).scale(&m.into());
        out.add_term(Bidegree::new(m, i + j + kprime), -c);
    }
    out
}

/// One row of a structure-constant table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureRow {
    pub inputs: [Bidegree; 2],
    pub output: GradedElement,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureExport {
    pub window: Window,
    pub params: AlgebraParams,
    pub operator: OperatorSpec,
    pub prelie: Vec<StructureRow>,
    pub deformed: Vec<StructureRow>,
}

/// Nonzero values of `▷` and `{·,·}` on ordered basis pairs of `w`, in
/// lexicographic order.
pub fn structure_constants(
    params: &AlgebraParams,
    r: &OperatorSpec,
    w: &Window,
) -> StructureExport {
    let basis = w.basis();
    let mut prelie = Vec::new();
    let mut deformed = Vec::new();
    for &a in &basis {
        let u = GradedElement::basis(a.m, a.i);
        for &b in &basis {
            let v = GradedElement::basis(b.m, b.i);
            let p = prelie_product(params, r, &u, &v);
            if !p.is_zero() {
                prelie.push(StructureRow {
                    inputs: [a, b],
                    output: p,
                });
            }
            let d = deformed_bracket(params, r, &u, &v);
            if !d.is_zero() {
                deformed.push(StructureRow {
                    inputs: [a, b],
                    output: d,
                });
            }
        }
    }
    StructureExport {
        window: *w,
        params: params.clone(),
        operator: r.clone(),
        prelie,
        deformed,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{rb_residual, window_sweep};
    use crate::scalar::Rational;
    use proptest::prelude::*;

    fn l(m: i64, i: i64) -> GradedElement {
        GradedElement::basis(m, i)
    }

    fn q() -> Scalar {
        Scalar::q()
    }

    #[test]
    fn zero_operator() {
        let p = AlgebraParams::block_symbolic();
        let r = OperatorSpec::zero(1, 0);
        assert!(prelie_product(&p, &r, &l(-1, 2), &l(3, 1)).is_zero());
        assert!(left_symmetry_defect(&p, &r, &l(-1, 2), &l(3, 1), &l(0, 0)).is_zero());
        assert_eq!(
            deformed_bracket(&p, &r, &l(1, 2), &l(-2, 1)),
            bracket(&p, &l(1, 2), &l(-2, 1))
        );
        assert!(delta_term(&Profile1D::zero(), 1, 0, &q(), -1, 0, -1, 3).is_zero());
    }

    #[test]
    fn prelie_on_line_matches_formula() {
        let p = AlgebraParams::block_symbolic();
        let g = Profile1D::polynomial(vec![Scalar::int(2), Scalar::int(-1)]);
        let (k, kp) = (2, 1);
        let r = OperatorSpec::single_line(k, kp, g.clone());
        for i in -2..=2 {
            for n in -2..=2 {
                for j in -2..=2 {
                    let got = prelie_product(&p, &r, &l(-k, i), &l(n, j));
                    let c = (&g.eval(i) * &(&Scalar::int(i + kp) + &q())).scale(&n.into());
                    assert_eq!(
                        got,
                        GradedElement::monomial(Bidegree::new(n, i + j + kp), c)
                    );
                }
            }
        }
        assert!(prelie_product(&p, &r, &l(0, 1), &l(1, 1)).is_zero());
    }

    #[test]
    fn closed_form_examples() {
        let g = Profile1D::constant(1);
        assert!(prelie_closed_form(&g, 1, 0, &q(), 0, 1, 2, 3).is_zero());
        assert!(prelie_closed_form(&g, 1, 0, &q(), -1, 1, 0, 3).is_zero());
        let got = prelie_closed_form(&g, 1, 2, &q(), -1, 1, 2, 3);
        // 2 (i + k' + q) L(2, i+j+k') with i = 1, j = 3, k' = 2
        let expected = (&Scalar::int(3) + &q()).scale(&Rational::from_int(2));
        assert_eq!(got, GradedElement::monomial(Bidegree::new(2, 6), expected));
    }

    #[test]
    fn delta_examples() {
        let g = Profile1D::constant(1);
        assert!(delta_term(&g, 1, 0, &q(), 2, 0, 0, 1).is_zero());
        // m = n = -1, k = 1
        for kp in -1..=1 {
            for i in -2..=2 {
                for j in -2..=2 {
                    let got = delta_term(&g, 1, kp, &q(), -1, i, -1, j);
                    let a = (&Scalar::int(i + kp) + &q()).scale(&Rational::from_int(-1));
                    let b = (&Scalar::int(j + kp) + &q()).scale(&Rational::from_int(-1));
                    let expected = GradedElement::monomial(Bidegree::new(-1, i + j + kp), &a - &b);
                    assert_eq!(got, expected);
                }
            }
        }
    }

    #[test]
    fn deformed_bracket_diagonal_vanishes() {
        let p = AlgebraParams::block_symbolic();
        let r = OperatorSpec::single_line(
            1,
            0,
            Profile1D::polynomial(vec![Scalar::one(), Scalar::one()]),
        );
        for m in -2..=2 {
            for i in -2..=2 {
                assert!(deformed_bracket(&p, &r, &l(m, i), &l(m, i)).is_zero());
            }
        }
    }

    #[test]
    fn deformed_bracket_minus_bracket_is_delta_on_line() {
        let p = AlgebraParams::block_symbolic();
        let g = Profile1D::kronecker(1, 3);
        let r = OperatorSpec::single_line(1, 1, g.clone());
        for (m, i, n, j) in [
            (-1, 1, 2, 0),
            (-1, 1, -1, 1),
            (2, 3, -1, 1),
            (0, 0, 0, 0),
            (-1, 0, -1, 1),
        ] {
            let d =
                &deformed_bracket(&p, &r, &l(m, i), &l(n, j)) - &bracket(&p, &l(m, i), &l(n, j));
            assert_eq!(d, delta_term(&g, 1, 1, &q(), m, i, n, j));
        }
    }

    #[test]
    fn left_symmetry_defect_is_minus_bracket_of_residual() {
        // hand instance: R constant 1 on m = -1, q symbolic
        let p = AlgebraParams::block_symbolic();
        let r = OperatorSpec::single_line(1, 0, Profile1D::constant(1));
        let (u, v, w) = (l(-1, 1), l(-1, 2), l(1, 0));
        let defect = left_symmetry_defect(&p, &r, &u, &v, &w);
        let res = rb_residual(&p, &r, &u, &v);
        assert!(!res.is_zero());
        assert_eq!(&defect + &bracket(&p, &res, &w), GradedElement::zero());
    }

    #[test]
    fn structure_export_is_ordered() {
        let p = AlgebraParams::block_symbolic();
        let r = OperatorSpec::single_line(1, 0, Profile1D::constant(1));
        let ex = structure_constants(&p, &r, &Window::square(1));
        let keys: Vec<_> = ex.prelie.iter().map(|row| row.inputs).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
        assert!(ex.prelie.iter().all(|row| row.inputs[0].m == -1));
        assert!(!ex.deformed.is_empty());
    }

    #[test]
    fn rota_baxter_alone_does_not_make_deformed_bracket_lie() {
        // k = 0 line operators satisfy the identity on every window, yet the
        // Jacobi sum of {,} is sum_cyc [residual(x,y) - R[x,y], z], and the
        // second part survives
        let p = AlgebraParams::block(Scalar::constant(Rational::new(1, 2)));
        let r = OperatorSpec::single_line(0, 1, Profile1D::constant(1));
        assert!(window_sweep(&p, &r, &Window::square(2), 1).holds());
        let (x, y, z) = (l(1, 0), l(-1, 0), l(1, 1));
        assert!(!deformed_jacobi_defect(&p, &r, &x, &y, &z).is_zero());
        // zero operator: deformed bracket is the original one
        let zero = OperatorSpec::zero(0, 1);
        assert!(deformed_jacobi_defect(&p, &zero, &x, &y, &z).is_zero());
    }

    fn arb_line_op() -> impl Strategy<Value = OperatorSpec> {
        ((-2i64..=2), (-2i64..=2), (-3i64..=3), (-3i64..=3)).prop_map(|(k, kp, c0, c1)| {
            OperatorSpec::single_line(
                k,
                kp,
                Profile1D::polynomial(vec![Scalar::int(c0), Scalar::int(c1)]),
            )
        })
    }

    proptest! {
        #[test]
        fn defect_residual_identity(r in arb_line_op(), a in (-3i64..=3, -3i64..=3), b in (-3i64..=3, -3i64..=3), c in (-3i64..=3, -3i64..=3)) {
            let p = AlgebraParams::block_symbolic();
            let (u, v, w) = (l(a.0, a.1), l(b.0, b.1), l(c.0, c.1));
            let total = &left_symmetry_defect(&p, &r, &u, &v, &w) + &bracket(&p, &rb_residual(&p, &r, &u, &v), &w);
            prop_assert!(total.is_zero());
        }

        #[test]
        fn deformed_jacobi_decomposition(r in arb_line_op(), a in (-2i64..=2, -2i64..=2), b in (-2i64..=2, -2i64..=2), c in (-2i64..=2, -2i64..=2)) {
            let p = AlgebraParams::block_symbolic();
            let (u, v, w) = (l(a.0, a.1), l(b.0, b.1), l(c.0, c.1));
            let term = |x: &GradedElement, y: &GradedElement, z: &GradedElement| {
                let inner = &rb_residual(&p, &r, x, y) - &r.apply(&bracket(&p, x, y));
                bracket(&p, &inner, z)
            };
            let expected = &(&term(&u, &v, &w) + &term(&v, &w, &u)) + &term(&w, &u, &v);
            prop_assert_eq!(deformed_jacobi_defect(&p, &r, &u, &v, &w), expected);
        }

        #[test]
        fn closed_form_agreement(r in arb_line_op(), m in -3i64..=3, i in -3i64..=3, n in -3i64..=3, j in -3i64..=3) {
            let p = AlgebraParams::block_symbolic();
            let g = r.profile.lines()[0].g.clone();
            prop_assert_eq!(
                prelie_product(&p, &r, &l(m, i), &l(n, j)),
                prelie_closed_form(&g, r.k, r.kprime, &q(), m, i, n, j)
            );
            let d = &deformed_bracket(&p, &r, &l(m, i), &l(n, j)) - &bracket(&p, &l(m, i), &l(n, j));
            prop_assert_eq!(d, delta_term(&g, r.k, r.kprime, &q(), m, i, n, j));
        }
    }
}
