//! Weight-zero Rota–Baxter residual computed from the bracket and the
//! operator action alone:
//!
//! ```text
//! [R(u), R(v)] - R([R(u), v] + [u, R(v)])
//! ```
//!
//! This is the ground truth every printed scalar equation is compared with.

use rayon::prelude::*;

use crate::block::{bracket, AlgebraParams, Bidegree, GradedElement};
use crate::operator::OperatorSpec;
use crate::verdict::{cap_witnesses, Scope, Verdict, VerdictConfig, Window, Witness};

pub fn rb_residual(
    params: &AlgebraParams,
    r: &OperatorSpec,
    u: &GradedElement,
    v: &GradedElement,
) -> GradedElement {
    let ru = r.apply(u);
    let rv = r.apply(v);
    let lhs = bracket(params, &ru, &rv);
    let inner = &bracket(params, &ru, v) + &bracket(params, u, &rv);
    &lhs - &r.apply(&inner)
}

/// Residual on a pair of basis vectors.
pub fn rb_residual_basis(
    params: &AlgebraParams,
    r: &OperatorSpec,
    a: Bidegree,
    b: Bidegree,
) -> GradedElement {
    rb_residual(
        params,
        r,
        &GradedElement::basis(a.m, a.i),
        &GradedElement::basis(b.m, b.i),
    )
}

/// All nonzero residuals over ordered basis pairs of `w`, in lexicographic
/// pair order.
pub fn sweep_witnesses(params: &AlgebraParams, r: &OperatorSpec, w: &Window) -> Vec<Witness> {
    let basis = w.basis();
    basis
        .par_iter()
        .map(|&a| {
            basis
                .iter()
                .filter_map(|&b| {
                    let residual = rb_residual_basis(params, r, a, b);
                    (!residual.is_zero()).then(|| Witness::Element {
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

/// Exhaustive check of the identity on every ordered basis pair of `w`.
pub fn window_sweep(params: &AlgebraParams, r: &OperatorSpec, w: &Window, cap: usize) -> Verdict {
    let (witnesses, truncated) = cap_witnesses(sweep_witnesses(params, r, w), cap);
    let config = VerdictConfig {
        check: "KERNEL".into(),
        alpha: Some(params.alpha.clone()),
        beta: Some(params.beta.clone()),
        k: Some(r.k),
        kprime: Some(r.kprime),
        profile: Some(r.profile.clone()),
        ..VerdictConfig::default()
    };
    Verdict::from_witnesses(
        "SWEEP",
        config,
        Scope::Grid {
            window: *w,
            arity: 2,
        },
        witnesses,
        truncated,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator::{Profile1D, ProfileSpec};
    use crate::scalar::{Rational, Scalar};
    use crate::verdict::Status;
    use proptest::prelude::*;

    fn l(m: i64, i: i64) -> GradedElement {
        GradedElement::basis(m, i)
    }

    #[test]
    fn zero_operator_has_zero_residual() {
        let p = AlgebraParams::block_symbolic();
        let r = OperatorSpec::zero(2, -1);
        assert!(rb_residual(&p, &r, &l(1, 2), &(&l(0, 0) + &l(-3, 1))).is_zero());
    }

    #[test]
    fn diagonal_pair_vanishes_when_symmetric() {
        let p = AlgebraParams::block_symbolic();
        let r = OperatorSpec::new(
            1,
            1,
            ProfileSpec::single_line(
                0,
                Profile1D::polynomial(vec![Scalar::int(1), Scalar::int(1)]),
            ),
        );
        for m in -2..=2 {
            for i in -2..=2 {
                assert!(rb_residual(&p, &r, &l(m, i), &l(m, i)).is_zero());
            }
        }
    }

    #[test]
    fn hand_expanded_resonant_pair() {
        // q = 0, (k,k') = (1,0), f = 1 on m = -1, u = L(-1,1), v = L(-1,2):
        //   R u = L(0,1), R v = L(0,2), [R u, R v] = 0
        //   [R u, v] = (-1)(1+0) L(-1,3),  [u, R v] = (0 - (-1)(2+0)) L(-1,3)
        //   R(-L(-1,3) + 2 L(-1,3)) = L(0,3)
        // residual = -L(0,3)
        let p = AlgebraParams::block(Scalar::zero());
        let r = OperatorSpec::single_line(1, 0, Profile1D::constant(1));
        let res = rb_residual(&p, &r, &l(-1, 1), &l(-1, 2));
        assert_eq!(
            res,
            GradedElement::monomial(Bidegree::new(0, 3), Scalar::int(-1))
        );
    }

    #[test]
    fn sweep_zero_operator_holds() {
        let p = AlgebraParams::block_symbolic();
        let v = window_sweep(&p, &OperatorSpec::zero(1, 0), &Window::square(2), 100);
        assert_eq!(v.status, Status::HoldsOnWindow);
        assert!(v.witnesses.is_empty());
        assert!(!v.truncated);
    }

    #[test]
    fn sweep_with_unreachable_support_holds() {
        let p = AlgebraParams::block_symbolic();
        // support on m = 10: neither window elements nor their images touch it
        let r = OperatorSpec::new(1, 0, ProfileSpec::single_line(10, Profile1D::constant(1)));
        assert!(window_sweep(&p, &r, &Window::square(2), 100).holds());
    }

    #[test]
    fn sweep_caps_witnesses() {
        let p = AlgebraParams::block(Scalar::zero());
        let r = OperatorSpec::single_line(1, 0, Profile1D::constant(1));
        let full = window_sweep(&p, &r, &Window::square(3), 1_000_000);
        assert!(!full.truncated);
        assert!(full.witnesses.len() > 3);
        let capped = window_sweep(&p, &r, &Window::square(3), 3);
        assert!(capped.truncated);
        assert_eq!(capped.witnesses, full.witnesses[..3].to_vec());
        // lexicographic order of input pairs
        let keys: Vec<_> = full
            .witnesses
            .iter()
            .map(|w| match w {
                Witness::Element { inputs, .. } => inputs.clone(),
                _ => unreachable!(),
            })
            .collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
    }

    #[test]
    fn sweep_is_deterministic() {
        let p = AlgebraParams::block(Scalar::constant(Rational::new(1, 2)));
        let r = OperatorSpec::single_line(
            1,
            0,
            Profile1D::polynomial(vec![Scalar::zero(), Scalar::one()]),
        );
        let a = serde_json::to_string(&window_sweep(&p, &r, &Window::square(3), 100)).unwrap();
        let b = serde_json::to_string(&window_sweep(&p, &r, &Window::square(3), 100)).unwrap();
        assert_eq!(a, b);
    }

    fn arb_operator() -> impl Strategy<Value = OperatorSpec> {
        (
            (-2i64..=2),
            (-2i64..=2),
            (-2i64..=2),
            (-3i64..=3),
            (-3i64..=3),
        )
            .prop_map(|(k, kp, m0, c0, c1)| {
                OperatorSpec::new(
                    k,
                    kp,
                    ProfileSpec::two_lines(
                        m0,
                        Profile1D::polynomial(vec![Scalar::int(c0), Scalar::int(c1)]),
                        m0 + 1,
                        Profile1D::kronecker(0, 1),
                    )
                    .unwrap(),
                )
            })
    }

    fn arb_element() -> impl Strategy<Value = GradedElement> {
        prop::collection::vec(((-2i64..=2), (-2i64..=2), (-3i64..=3)), 0..3).prop_map(|ts| {
            ts.into_iter()
                .map(|(m, i, c)| (Bidegree::new(m, i), Scalar::int(c)))
                .collect()
        })
    }

    proptest! {
        #[test]
        fn residual_is_bilinear(r in arb_operator(), u in arb_element(), u2 in arb_element(), v in arb_element(), v2 in arb_element(), a in -3i64..=3) {
            let p = AlgebraParams::block_symbolic();
            let s = Scalar::int(a);
            let left = rb_residual(&p, &r, &(&u.scale(&s) + &u2), &v);
            let right = &rb_residual(&p, &r, &u, &v).scale(&s) + &rb_residual(&p, &r, &u2, &v);
            prop_assert_eq!(left, right);
            let left = rb_residual(&p, &r, &u, &(&v.scale(&s) + &v2));
            let right = &rb_residual(&p, &r, &u, &v).scale(&s) + &rb_residual(&p, &r, &u, &v2);
            prop_assert_eq!(left, right);
        }

        #[test]
        fn residual_single_bidegree(r in arb_operator(), m in -3i64..=3, i in -3i64..=3, n in -3i64..=3, j in -3i64..=3) {
            let p = AlgebraParams::general_symbolic();
            let res = rb_residual_basis(&p, &r, Bidegree::new(m, i), Bidegree::new(n, j));
            let target = Bidegree::new(m + n + 2 * r.k, i + j + 2 * r.kprime);
            prop_assert!(res.support().all(|b| b == target));
        }
    }
}
