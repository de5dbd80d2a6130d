//! Acceptance run: one PASS/FAIL line per criterion.

use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use sweedler::bang::AppendNegated;
use sweedler::encodings::bint;
use sweedler::exact::{mat_compose, Matrix};
use sweedler::laws::{run_law, LawConfig, LawRegistry, LawReport};
use sweedler::semantics::{denote_proof, BangVal, SemValue};
use sweedler::syntax::Formula;

type Criterion = (&'static str, Box<dyn FnOnce() -> Verdict>);

struct Verdict {
    ok: bool,
    detail: String,
}

fn laws(names: &[&str], cfg: &LawConfig, min_trials: usize) -> Verdict {
    let registry = LawRegistry::standard();
    let mut ok = true;
    let mut parts = Vec::new();
    for name in names {
        let Some(law) = registry.get(name) else {
            return Verdict {
                ok: false,
                detail: format!("law {name} is not registered"),
            };
        };
        let r: LawReport = run_law(law.as_ref(), cfg);
        let good = r.ok() && r.trials >= min_trials;
        ok &= good;
        parts.push(format!("{} {}/{}", r.name, r.passed, r.trials));
        if let Some(f) = &r.first_failure {
            parts.push(format!("witness at trial {}: {}", f.trial, f.witness));
        }
    }
    Verdict {
        ok,
        detail: parts.join(", "),
    }
}

fn timed(limit: Duration, f: impl FnOnce() -> Verdict) -> Verdict {
    let start = Instant::now();
    let mut v = f();
    let elapsed = start.elapsed();
    v.detail = format!(
        "{} [{:.1}s, limit {}s]",
        v.detail,
        elapsed.as_secs_f64(),
        limit.as_secs()
    );
    v.ok &= elapsed < limit;
    v
}

fn element_cfg(max_tangents: usize) -> LawConfig {
    LawConfig {
        trials: 200,
        dim: 3,
        max_tangents,
        ..LawConfig::default()
    }
}

fn m(rows: &[&[i64]]) -> Matrix {
    Matrix::from_ints(rows)
}

fn displayed_bint_values() -> Verdict {
    let run = || -> sweedler::Result<Vec<(String, bool)>> {
        let c = |f: &Matrix, g: &Matrix| mat_compose(f, g);
        let a = Formula::var("A", 2);
        let v = denote_proof(&bint(&"001".parse()?, &a))?.eval(&[])?;
        let ket = |p: &Matrix, ts: &[&Matrix]| -> SemValue {
            BangVal::ket(p.clone().into(), ts.iter().map(|t| (*t).clone().into()).collect()).into()
        };
        let g = m(&[&[2, 1], &[0, 1]]);
        let d = m(&[&[0, 1], &[1, 3]]);
        let a1 = m(&[&[1, -1], &[2, 0]]);
        let a2 = m(&[&[0, 2], &[1, 1]]);
        let b = m(&[&[1, 0], &[4, -2]]);
        let z = Matrix::zero(2, 2);
        let cases = vec![
            ("δγγ", ket(&g, &[]), ket(&d, &[]), c(&c(&d, &g)?, &g)?),
            (
                "δα₁γ+δγα₁",
                ket(&g, &[&a1]),
                ket(&d, &[]),
                c(&c(&d, &a1)?, &g)?.add(&c(&c(&d, &g)?, &a1)?)?,
            ),
            (
                "δα₁α₂+δα₂α₁",
                ket(&g, &[&a1, &a2]),
                ket(&d, &[]),
                c(&c(&d, &a1)?, &a2)?.add(&c(&c(&d, &a2)?, &a1)?)?,
            ),
            ("βγγ", ket(&g, &[]), ket(&d, &[&b]), c(&c(&b, &g)?, &g)?),
            (
                "βα₁γ+βγα₁",
                ket(&g, &[&a1]),
                ket(&d, &[&b]),
                c(&c(&b, &a1)?, &g)?.add(&c(&c(&b, &g)?, &a1)?)?,
            ),
            ("0 (three α)", ket(&g, &[&a1, &a2, &a1]), ket(&d, &[]), z.clone()),
            ("0 (two β)", ket(&g, &[]), ket(&d, &[&b, &b]), z),
            (
                "βα₁α₂+βα₂α₁",
                ket(&g, &[&a1, &a2]),
                ket(&d, &[&b]),
                c(&c(&b, &a1)?, &a2)?.add(&c(&c(&b, &a2)?, &a1)?)?,
            ),
        ];
        let mut out = Vec::new();
        for (label, x, y, expected) in cases {
            let got = v.apply(&x)?.apply(&y)?.as_matrix()?.clone();
            out.push((label.to_string(), got == expected));
        }
        Ok(out)
    };
    match run() {
        Ok(results) => Verdict {
            ok: results.iter().all(|(_, ok)| *ok),
            detail: results
                .iter()
                .map(|(l, ok)| format!("{l} {}", if *ok { "ok" } else { "MISMATCH" }))
                .collect::<Vec<_>>()
                .join(", "),
        },
        Err(e) => Verdict {
            ok: false,
            detail: format!("error: {e}"),
        },
    }
}

fn mutation() -> Verdict {
    let cfg = LawConfig {
        deriving: Arc::new(AppendNegated),
        ..element_cfg(4)
    };
    let registry = LawRegistry::standard();
    let mut caught = Vec::new();
    let mut summary = Vec::new();
    for name in ["d1-constants", "d2-product-rule", "d3-linear-maps", "d4-chain-rule"] {
        let r = run_law(registry.get(name).expect("registered").as_ref(), &cfg);
        summary.push(format!("{} {}", r.name, if r.ok() { "holds" } else { "fails" }));
        if let Some(f) = r.first_failure.filter(|f| !f.witness.is_empty()) {
            if name == "d2-product-rule" || name == "d4-chain-rule" {
                caught.push(format!("{name} witness: {}", f.witness.replace('\n', " ")));
            }
        }
    }
    Verdict {
        ok: !caught.is_empty(),
        detail: format!("{}; {}", summary.join(", "), caught.join("; ")),
    }
}

fn main() -> ExitCode {
    let criteria: Vec<Criterion> = vec![
        (
            "deriving-transformation axioms on 200 random elements each, dim 1..3, up to 4 tangents",
            Box::new(|| {
                timed(Duration::from_secs(30), || {
                    laws(
                        &["d1-constants", "d2-product-rule", "d3-linear-maps", "d4-chain-rule"],
                        &element_cfg(4),
                        200,
                    )
                })
            }),
        ),
        (
            "Hopf and codereliction laws",
            Box::new(|| {
                laws(
                    &[
                        "cocontraction-associative",
                        "cocontraction-commutative",
                        "cocontraction-unit",
                        "bialgebra",
                        "antipode",
                        "codereliction",
                        "deriving-via-cocontraction",
                        "cocontraction-rule",
                    ],
                    &element_cfg(4),
                    200,
                )
            }),
        ),
        (
            "residue pairing duality, degree <= 4, dim <= 3",
            Box::new(|| {
                laws(
                    &[
                        "pairing-coproduct",
                        "pairing-cocontraction",
                        "pairing-deriving",
                        "pairing-unit-counit-codereliction",
                        "pairing-antipode",
                    ],
                    &element_cfg(3),
                    200,
                )
            }),
        ),
        (
            "Church numerals and their derivatives, n <= 5, 50 random pairs",
            Box::new(|| laws(&["church-values"], &element_cfg(3), 50)),
        ),
        (
            "binary integers against the injection formula, plus the worked 001 values",
            Box::new(|| {
                let mut v = laws(&["bint-values"], &element_cfg(3), 150);
                let shown = displayed_bint_values();
                v.ok &= shown.ok;
                v.detail = format!("{}; {}", v.detail, shown.detail);
                v
            }),
        ),
        (
            "repeat doubles and differentiates to ST + TS, |S|,|T| <= 2",
            Box::new(|| timed(Duration::from_secs(60), || laws(&["repeat-lemma"], &element_cfg(3), 56))),
        ),
        (
            "multiplication derivative closed form and interpolation, l,m,n <= 3",
            Box::new(|| laws(&["mult-closed-form"], &element_cfg(3), 64)),
        ),
        (
            "promotion and comonad laws, promotion values, cut against repeat",
            Box::new(|| {
                let mut v = laws(
                    &[
                        "dereliction-after-promotion",
                        "functorial-dereliction-after-promotion",
                        "promotion-comultiplicative",
                        "promotion-coassociative",
                    ],
                    &element_cfg(4),
                    200,
                );
                let sem = laws(
                    &["prom-dereliction", "prom-comultiplicative", "prom-values", "cut-repeat"],
                    &element_cfg(3),
                    15,
                );
                v.ok &= sem.ok;
                v.detail = format!("{}, {}", v.detail, sem.detail);
                v
            }),
        ),
        (
            "derivative proof agrees with evaluation after D",
            Box::new(|| laws(&["derivative-paths"], &element_cfg(3), 22)),
        ),
        ("mutated deriving transformation is caught", Box::new(mutation)),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.into_iter().enumerate() {
        let v = check();
        failed += usize::from(!v.ok);
        println!(
            "{} {:>2} {name}: {}",
            if v.ok { "PASS" } else { "FAIL" },
            i + 1,
            v.detail
        );
    }
    println!("{} criteria, {failed} failed", 10);
    if failed > 0 {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
