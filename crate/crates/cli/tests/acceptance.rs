//! Acceptance suite. Runs every criterion at its stated tolerance (all exact)
//! and prints one PASS/FAIL line each; exits nonzero if any fails.
//!
//! Set `RBAUDIT_BLESS=1` to rewrite the golden files instead of comparing.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};
use rayon::prelude::*;

use rbaudit_core::audit::{
    admissibility_matrix, feq_solution_search, two_line_test, Boundary, Family, Regime,
};
use rbaudit_core::block::{
    antisymmetry_defect, bracket, jacobi_defect, AlgebraParams, Bidegree, GradedElement,
};
use rbaudit_core::derived::{
    deformed_bracket, delta_term, left_symmetry_defect, prelie_closed_form, prelie_product,
};
use rbaudit_core::kernel::{rb_residual, rb_residual_basis};
use rbaudit_core::operator::{OperatorSpec, Profile1D, ProfileSpec};
use rbaudit_core::printed::{
    feq_residual, kernel_coefficient, printed_rb_residual, DiscrepancyReport, EquationId,
};
use rbaudit_core::scalar::{Rational, Scalar, C};
use rbaudit_core::verdict::{Status, Verdict, Window, Witness};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn l(m: i64, i: i64) -> GradedElement {
    GradedElement::basis(m, i)
}

fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join("golden")
}

fn bless() -> bool {
    std::env::var_os("RBAUDIT_BLESS").is_some()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("rbaudit-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn rbaudit(args: &[&str]) -> Result<std::process::Output, String> {
    Command::new(env!("CARGO_BIN_EXE_rbaudit"))
        .args(args)
        .output()
        .map_err(|e| format!("spawn rbaudit: {e}"))
}

fn run_to_file(args: &[&str], out: &Path) -> Result<String, String> {
    let mut full: Vec<&str> = args.to_vec();
    let out_s = out.to_str().unwrap().to_string();
    full.push("--out");
    full.push(&out_s);
    let o = rbaudit(&full)?;
    ensure(
        o.status.code() == Some(0),
        format!(
            "rbaudit {args:?} exited {:?}: {}",
            o.status,
            String::from_utf8_lossy(&o.stderr)
        ),
    )?;
    std::fs::read_to_string(out).map_err(|e| e.to_string())
}

fn compare_golden(name: &str, actual: &str) -> Result<(), String> {
    let path = golden_dir().join(name);
    if bless() {
        std::fs::create_dir_all(golden_dir()).unwrap();
        std::fs::write(&path, actual).unwrap();
        return Ok(());
    }
    let expected =
        std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
    if expected == actual {
        return Ok(());
    }
    let line = expected
        .lines()
        .zip(actual.lines())
        .position(|(a, b)| a != b)
        .map_or_else(|| "length".to_string(), |n| format!("line {}", n + 1));
    Err(format!("{name} differs from golden at {line}"))
}

// ---------------------------------------------------------------------------

fn c1_lie_axioms() -> Outcome {
    let start = Instant::now();
    let p = AlgebraParams::block_symbolic();
    let basis = Window::square(4).basis();
    let bad_anti = basis
        .par_iter()
        .flat_map_iter(|&a| basis.iter().map(move |&b| (a, b)))
        .filter(|&(a, b)| !antisymmetry_defect(&p, &l(a.m, a.i), &l(b.m, b.i)).is_zero())
        .count();
    ensure(bad_anti == 0, format!("{bad_anti} antisymmetry failures"))?;
    let bad_jac: usize = basis
        .par_iter()
        .map(|&a| {
            let u = l(a.m, a.i);
            let mut bad = 0;
            for &b in &basis {
                let v = l(b.m, b.i);
                for &c in &basis {
                    if !jacobi_defect(&p, &u, &v, &l(c.m, c.i)).is_zero() {
                        bad += 1;
                    }
                }
            }
            bad
        })
        .sum();
    ensure(bad_jac == 0, format!("{bad_jac} Jacobi failures"))?;
    let t = start.elapsed();
    ensure(t < Duration::from_secs(60), format!("took {t:?}"))?;
    Ok(format!(
        "{} pairs, {} triples, symbolic q, {:.1?}",
        basis.len().pow(2),
        basis.len().pow(3),
        t
    ))
}

fn c2_constant_profile() -> Outcome {
    let g = Profile1D::constant(Scalar::symbol(C));
    let mut n = 0;
    for kp in -2..=2 {
        for i in -10..=10 {
            for j in -10..=10 {
                let r = feq_residual(&g, i, j, &Scalar::q(), kp);
                ensure(r.is_zero(), format!("residual {r} at ({i},{j}), k'={kp}"))?;
                n += 1;
            }
        }
    }
    Ok(format!("{n} evaluations zero in q, c (k' in -2..2)"))
}

fn c3_example_linear() -> Outcome {
    let g = Profile1D::polynomial(vec![Scalar::zero(), Scalar::one()]);
    let q = Scalar::q();
    for kp in -2..=2 {
        let got = feq_residual(&g, 1, 0, &q, kp);
        let expected = -(&Scalar::int(1 + kp) * &(&Scalar::int(1 + kp) + &q));
        ensure(got == expected, format!("k'={kp}: {got} != {expected}"))?;
    }
    let out = scratch("c3.json");
    let text = run_to_file(
        &[
            "audit",
            "--q",
            "1/2",
            "--k",
            "1",
            "--kprime",
            "0",
            "--claims",
            "EXAMPLE_LINEAR_4_2,TABLE_1",
            "--variant",
            "FEQ_NONRES",
        ],
        &out,
    )?;
    let rep: serde_json::Value = serde_json::from_str(&text).map_err(|e| e.to_string())?;
    let verdicts: Vec<Verdict> =
        serde_json::from_str(&rep["verdicts"].to_string()).map_err(|e| e.to_string())?;
    let ex = verdicts
        .iter()
        .find(|v| v.claim == "EXAMPLE_LINEAR_4_2")
        .ok_or("no example verdict")?;
    ensure(ex.status == Status::Fails, "example verdict does not fail")?;
    let w = Witness::Scalar {
        indices: vec![1, 0],
        value: Scalar::constant(rat(-3, 2)),
    };
    ensure(
        ex.witnesses == vec![w],
        format!("witnesses {:?}", ex.witnesses),
    )?;
    let cell = verdicts
        .iter()
        .find(|v| {
            v.claim == "TABLE_1"
                && v.config.family.as_deref() == Some("polynomial")
                && v.config.regime == Some(Regime::RegimeII)
        })
        .ok_or("no polynomial Regime II cell")?;
    ensure(cell.status == Status::Fails, "polynomial cell passes")?;
    ensure(
        cell.witnesses.iter().any(|w| matches!(w, Witness::Scalar { indices, value } if indices == &vec![1, 0] && value == &Scalar::constant(rat(-3, 2)))),
        "table cell lacks witness (1,0) = -3/2",
    )?;
    Ok("-(1+k')(1+k'+q) for k' in -2..2; audit witness (1,0) = -3/2".into())
}

/// Independent evaluator: `(i-j) g_i g_j - g_s ((i+k'+q) g_i - (j+k'+q) g_j)`
/// with plain rationals.
fn oracle_feq(g: &dyn Fn(i64) -> Rational, i: i64, j: i64, q: &Rational, kp: i64) -> Rational {
    let (gi, gj, gs) = (g(i), g(j), g(i + j + kp));
    let lhs = &(&Rational::from_int(i - j) * &gi) * &gj;
    let ti = &(&Rational::from_int(i + kp) + q) * &gi;
    let tj = &(&Rational::from_int(j + kp) + q) * &gj;
    &lhs - &(&gs * &(&ti - &tj))
}

fn c4_table_cells() -> Outcome {
    let q = rat(1, 2);
    let m = admissibility_matrix(
        &Window::square(6),
        &Scalar::constant(q.clone()),
        1,
        0,
        EquationId::FeqNonres,
        10_000,
    )
    .map_err(|e| e.to_string())?;
    let two = Rational::from_int(2);
    let oracle_g = |f: Family| -> Box<dyn Fn(i64) -> Rational> {
        match f {
            Family::Constant => Box::new(|_| Rational::one()),
            Family::Kronecker => Box::new(|i| {
                if i == 0 {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            }),
            Family::FiniteSupport => Box::new(|i| {
                if i == 0 || i == 1 {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            }),
            Family::Exponential => {
                let two = two.clone();
                Box::new(move |i| two.pow(i).unwrap())
            }
            Family::Polynomial => Box::new(Rational::from_int),
            Family::Periodic => Box::new(|i| Rational::from_int(1 + i.rem_euclid(2))),
        }
    };
    let mut summary = Vec::new();
    for fam in Family::ALL {
        let v = &m.cell(fam, Regime::RegimeII).ok_or("missing cell")?.verdict;
        let g = oracle_g(fam);
        // exhaustive oracle over the same window
        let oracle: Vec<(i64, i64)> = (-6..=6)
            .flat_map(|i| (-6..=6).map(move |j| (i, j)))
            .filter(|&(i, j)| !oracle_feq(&*g, i, j, &q, 0).is_zero())
            .collect();
        let reported: Vec<(i64, i64)> = v
            .witnesses
            .iter()
            .map(|w| match w {
                Witness::Scalar { indices, .. } => (indices[0], indices[1]),
                _ => (i64::MIN, i64::MIN),
            })
            .collect();
        ensure(
            reported == oracle,
            format!("{}: witnesses differ from oracle", fam.name()),
        )?;
        for w in &v.witnesses {
            if let Witness::Scalar { indices, value } = w {
                let o = oracle_feq(&*g, indices[0], indices[1], &q, 0);
                ensure(
                    value == &Scalar::constant(o),
                    format!("{}: stored value differs at {indices:?}", fam.name()),
                )?;
            }
        }
        match fam {
            Family::Constant => ensure(v.holds(), "Constant row fails")?,
            Family::Exponential | Family::Polynomial | Family::Periodic => ensure(
                v.status == Status::Fails && !v.witnesses.is_empty(),
                format!("{} row passes", fam.name()),
            )?,
            _ => ensure(
                v.holds() || !v.witnesses.is_empty(),
                format!("{} fails without witness", fam.name()),
            )?,
        }
        summary.push(format!(
            "{}={}",
            fam.name(),
            if v.holds() { "pass" } else { "fail" }
        ));
    }
    Ok(summary.join(" "))
}

fn c5_search() -> Outcome {
    let start = Instant::now();
    let q = rat(1, 2);
    let values = [Rational::zero(), Rational::one()];
    let res = feq_solution_search(
        -3,
        3,
        &values,
        &q,
        0,
        EquationId::FeqNonres,
        Boundary::SkipOutside,
    )
    .map_err(|e| e.to_string())?;
    // independent filter over all 2^7 assignments, pairs with i+j inside the window
    let mut oracle = BTreeSet::new();
    for mask in 0u32..128 {
        let g = |i: i64| -> Rational {
            if (-3..=3).contains(&i) && mask >> (i + 3) & 1 == 1 {
                Rational::one()
            } else {
                Rational::zero()
            }
        };
        let ok = (-3..=3).all(|i: i64| {
            (-3..=3)
                .all(|j: i64| !(-3..=3).contains(&(i + j)) || oracle_feq(&g, i, j, &q, 0).is_zero())
        });
        if ok {
            oracle.insert(mask);
        }
    }
    let found: BTreeSet<u32> = res
        .solutions
        .iter()
        .map(|p| {
            (-3..=3).fold(0u32, |acc, i| {
                if p.eval(i).is_zero() {
                    acc
                } else {
                    acc | 1 << (i + 3)
                }
            })
        })
        .collect();
    ensure(found.len() == res.solutions.len(), "duplicate solutions")?;
    ensure(
        found == oracle,
        format!("search {found:?} vs oracle {oracle:?}"),
    )?;
    ensure(
        found.contains(&0) && found.contains(&127),
        "constant assignments missing",
    )?;
    let t = start.elapsed();
    ensure(t < Duration::from_secs(10), format!("took {t:?}"))?;
    Ok(format!(
        "{} solutions, equal to the 2^7 oracle, {:.1?}",
        found.len(),
        t
    ))
}

fn c6_closed_forms() -> Outcome {
    let p = AlgebraParams::block_symbolic();
    let q = Scalar::q();
    let mut n = 0;
    for g in [Profile1D::constant(1), Profile1D::kronecker(0, 1)] {
        for k in -2..=2 {
            for kp in -2..=2 {
                let r = OperatorSpec::single_line(k, kp, g.clone());
                for m in -3..=3 {
                    for i in -3..=3 {
                        for nn in -3..=3 {
                            for j in -3..=3 {
                                let (u, v) = (l(m, i), l(nn, j));
                                let pre = prelie_product(&p, &r, &u, &v);
                                ensure(
                                    pre == prelie_closed_form(&g, k, kp, &q, m, i, nn, j),
                                    format!("pre-Lie at ({m},{i}),({nn},{j}) k={k}"),
                                )?;
                                let d = &deformed_bracket(&p, &r, &u, &v) - &bracket(&p, &u, &v);
                                ensure(
                                    d == delta_term(&g, k, kp, &q, m, i, nn, j),
                                    format!("delta at ({m},{i}),({nn},{j}) k={k}"),
                                )?;
                                n += 1;
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(format!(
        "{n} pairs x 2 identities, symbolic q, k,k' in -2..2"
    ))
}

fn c7_defect_residual() -> Outcome {
    let mut runner = TestRunner::new_with_rng(
        Config {
            cases: 200,
            failure_persistence: None,
            ..Config::default()
        },
        TestRng::deterministic_rng(RngAlgorithm::ChaCha),
    );
    let coeff = (-5i64..=5, 1i64..=4).prop_map(|(n, d)| Scalar::constant(Rational::new(n, d)));
    let element =
        prop::collection::vec(((-2i64..=2), (-2i64..=2), coeff.clone()), 1..4).prop_map(|ts| {
            ts.into_iter()
                .map(|(m, i, c)| (Bidegree::new(m, i), c))
                .collect::<GradedElement>()
        });
    let profile = prop::collection::vec(coeff, 1..3).prop_map(Profile1D::polynomial);
    let operator = (
        (-2i64..=2),
        (-2i64..=2),
        (-2i64..=2),
        profile.clone(),
        profile,
    )
        .prop_map(|(k, kp, a, ga, gb)| {
            OperatorSpec::new(k, kp, ProfileSpec::two_lines(a, ga, a + 1, gb).unwrap())
        });
    let strategy = (operator, element.clone(), element.clone(), element);
    let p = AlgebraParams::block_symbolic();
    let cases = std::cell::Cell::new(0usize);
    runner
        .run(&strategy, |(r, u, v, w)| {
            let total = &left_symmetry_defect(&p, &r, &u, &v, &w)
                + &bracket(&p, &rb_residual(&p, &r, &u, &v), &w);
            prop_assert!(total.is_zero());
            cases.set(cases.get() + 1);
            Ok(())
        })
        .map_err(|e| e.to_string())?;
    Ok(format!(
        "{} random triples (rational coefficients, two-line operators)",
        cases.get()
    ))
}

fn c8_cross_check() -> Outcome {
    let args = [
        "cross-check",
        "--q",
        "0",
        "--k",
        "1",
        "--kprime",
        "0",
        "--window",
        "3",
        "--profile",
        "constant:1",
    ];
    let a = run_to_file(&args, &scratch("c8a.json"))?;
    let b = run_to_file(&args, &scratch("c8b.json"))?;
    ensure(a == b, "repeated runs differ")?;
    compare_golden("cross_check_resonant_n3.json", &a)?;
    let rep: DiscrepancyReport = serde_json::from_str(&a).map_err(|e| e.to_string())?;
    let p = AlgebraParams::block(Scalar::zero());
    let r = OperatorSpec::single_line(1, 0, Profile1D::constant(1));
    for mm in &rep.mismatches {
        let printed =
            printed_rb_residual(&r.profile, mm.m, mm.i, mm.n, mm.j, &Scalar::zero(), 1, 0);
        let kernel =
            kernel_coefficient(&p, &r, Bidegree::new(mm.m, mm.i), Bidegree::new(mm.n, mm.j));
        ensure(
            printed == mm.printed && kernel == mm.kernel_coefficient,
            format!(
                "mismatch at {:?} does not re-evaluate",
                (mm.m, mm.i, mm.n, mm.j)
            ),
        )?;
    }
    ensure(rep.pairs_checked == 49 * 49, "not every pair checked")?;
    Ok(format!(
        "byte-identical; {} mismatches re-evaluated",
        rep.mismatches.len()
    ))
}

fn c9_two_line() -> Outcome {
    let p = AlgebraParams::block(Scalar::zero());
    let g = Profile1D::constant(1);
    let v = two_line_test(&p, -1, &g, 0, &g, 1, 0, &Window::square(3), 100_000)
        .map_err(|e| e.to_string())?;
    let r = OperatorSpec::new(1, 0, ProfileSpec::two_lines(-1, g.clone(), 0, g).unwrap());
    for w in &v.witnesses {
        let Witness::Element { inputs, residual } = w else {
            return Err("unexpected witness kind".into());
        };
        let again = rb_residual_basis(&p, &r, inputs[0], inputs[1]);
        ensure(
            !again.is_zero() && &again == residual,
            format!("witness {inputs:?} does not re-evaluate"),
        )?;
    }
    let text = serde_json::to_string_pretty(&serde_json::to_value(&v).unwrap()).unwrap() + "\n";
    compare_golden("two_line_resonant_n3.json", &text)?;
    Ok(format!(
        "status {:?}, {} witnesses re-evaluated",
        v.status,
        v.witnesses.len()
    ))
}

fn c10_full_audit() -> Outcome {
    let start = Instant::now();
    let mut notes = Vec::new();
    for (q, name) in [
        ("1/2", "audit_q1_2_k1_kp0_n4.json"),
        ("0", "audit_resonant_q0_k1_kp0_n4.json"),
    ] {
        let text = run_to_file(
            &[
                "audit",
                "--claims",
                "all",
                "--q",
                q,
                "--k",
                "1",
                "--kprime",
                "0",
                "--window",
                "4",
                "--profile",
                "constant:1",
            ],
            &scratch(name),
        )?;
        compare_golden(name, &text)?;
        notes.push(format!("q={q} ok"));
    }
    let t = start.elapsed();
    ensure(t < Duration::from_secs(300), format!("took {t:?}"))?;
    Ok(format!("{} ({:.1?})", notes.join(", "), t))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("1 Lie axioms for B(q), |m|,|i| <= 4", c1_lie_axioms),
        ("2 constant-profile identity", c2_constant_profile),
        ("3 linear profile example", c3_example_linear),
        ("4 admissibility table, decidable cells", c4_table_cells),
        ("5 brute-force search equivalence", c5_search),
        ("6 pre-Lie and deformation closed forms", c6_closed_forms),
        ("7 defect-residual identity", c7_defect_residual),
        ("8 cross-check determinism and completeness", c8_cross_check),
        ("9 two-line exclusion audit", c9_two_line),
        ("10 full default audit vs golden", c10_full_audit),
    ];
    let filter: Vec<String> = std::env::args()
        .skip(1)
        .filter(|a| !a.starts_with('-'))
        .collect();
    let mut failed = 0;
    for (name, f) in criteria {
        if !filter.is_empty() && !filter.iter().any(|x| name.contains(x.as_str())) {
            continue;
        }
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            Err(e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        match outcome {
            Ok(detail) => println!("criterion {name}: PASS ({detail})"),
            Err(why) => {
                failed += 1;
                println!("criterion {name}: FAIL ({why})");
            }
        }
    }
    let _ = std::fs::remove_dir_all(
        std::env::temp_dir().join(format!("rbaudit-acceptance-{}", std::process::id())),
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
