use std::fmt::Write;
use std::path::Path;

use serde_json::json;

use sweedler::encodings::*;
use sweedler::exact::{mat_compose, Matrix, Scalar};
use sweedler::semantics::{denote_proof, derivative_eval, extensional_equal, nl_eval, BangVal, ProbeConfig, SemValue};
use sweedler::syntax::{print_proof, Formula, Proof};
use sweedler::Result;

use crate::commands::probe_config;
use crate::{Failure, Format, RunFlags};

struct Example {
    name: &'static str,
    cites: &'static str,
    run: fn(&ProbeConfig) -> Result<(bool, String)>,
}

fn a() -> Formula {
    Formula::var("A", 2)
}

fn m(rows: &[&[i64]]) -> Matrix {
    Matrix::from_ints(rows)
}

fn c(f: &Matrix, g: &Matrix) -> Result<Matrix> {
    mat_compose(f, g)
}

fn closed(p: &Proof) -> Result<SemValue> {
    denote_proof(p)?.eval(&[])
}

fn ket(point: &Matrix, tangents: &[&Matrix]) -> SemValue {
    BangVal::ket(
        point.clone().into(),
        tangents.iter().map(|t| (*t).clone().into()).collect(),
    )
    .into()
}

fn church_value(_: &ProbeConfig) -> Result<(bool, String)> {
    let alpha = m(&[&[1, 1], &[0, 1]]);
    let d = denote_proof(&church(2, &a()))?;
    let got = nl_eval(&d, &alpha.clone().into())?.as_matrix()?.clone();
    Ok((
        got == m(&[&[1, 2], &[0, 1]]),
        format!("2 at |∅⟩_α, α = {alpha:?}: {got:?}"),
    ))
}

fn church_derivative(_: &ProbeConfig) -> Result<(bool, String)> {
    let (alpha, nu) = (m(&[&[1, 1], &[0, 1]]), m(&[&[0, 0], &[1, 0]]));
    let d = denote_proof(&church(2, &a()))?;
    let got = derivative_eval(&d, &alpha.clone().into(), &nu.clone().into())?
        .as_matrix()?
        .clone();
    let expected = c(&alpha, &nu)?.add(&c(&nu, &alpha)?)?;
    Ok((got == expected, format!("2 at |ν⟩_α = αν + να = {got:?}")))
}

fn bint_001(_: &ProbeConfig) -> Result<(bool, String)> {
    let v = closed(&bint(&"001".parse()?, &a()))?;
    let g = m(&[&[1, 1], &[0, 1]]);
    let d = m(&[&[0, 1], &[1, 0]]);
    let a1 = m(&[&[2, 0], &[0, 1]]);
    let a2 = m(&[&[1, 0], &[3, 1]]);
    let b = m(&[&[0, 0], &[0, 5]]);
    let zero = Matrix::zero(2, 2);
    let cases: Vec<(&str, SemValue, SemValue, Matrix)> = vec![
        ("|∅⟩_γ ⊗ |∅⟩_δ ↦ δγγ", ket(&g, &[]), ket(&d, &[]), c(&c(&d, &g)?, &g)?),
        (
            "|α₁⟩_γ ⊗ |∅⟩_δ ↦ δα₁γ + δγα₁",
            ket(&g, &[&a1]),
            ket(&d, &[]),
            c(&c(&d, &a1)?, &g)?.add(&c(&c(&d, &g)?, &a1)?)?,
        ),
        (
            "|α₁,α₂⟩_γ ⊗ |∅⟩_δ ↦ δα₁α₂ + δα₂α₁",
            ket(&g, &[&a1, &a2]),
            ket(&d, &[]),
            c(&c(&d, &a1)?, &a2)?.add(&c(&c(&d, &a2)?, &a1)?)?,
        ),
        ("|∅⟩_γ ⊗ |β⟩_δ ↦ βγγ", ket(&g, &[]), ket(&d, &[&b]), c(&c(&b, &g)?, &g)?),
        (
            "|α₁⟩_γ ⊗ |β⟩_δ ↦ βα₁γ + βγα₁",
            ket(&g, &[&a1]),
            ket(&d, &[&b]),
            c(&c(&b, &a1)?, &g)?.add(&c(&c(&b, &g)?, &a1)?)?,
        ),
        (
            "three tangents at γ ↦ 0",
            ket(&g, &[&a1, &a2, &a1]),
            ket(&d, &[]),
            zero.clone(),
        ),
        ("two tangents at δ ↦ 0", ket(&g, &[]), ket(&d, &[&b, &b]), zero),
    ];
    let mut ok = true;
    let mut lines = Vec::new();
    for (label, x, y, expected) in cases {
        let got = v.apply(&x)?.apply(&y)?.as_matrix()?.clone();
        ok &= got == expected;
        lines.push(format!("{label}: {}", if got == expected { "ok" } else { "MISMATCH" }));
    }
    Ok((ok, lines.join("; ")))
}

fn repeat(cfg: &ProbeConfig) -> Result<(bool, String)> {
    let d = denote_proof(&repeat_proof(&a()))?;
    let (s, t): (BinSeq, BinSeq) = ("01".parse()?, "1".parse()?);
    let (vs, vt) = (closed(&bint(&s, &a()))?, closed(&bint(&t, &a()))?);
    let doubled = extensional_equal(&nl_eval(&d, &vs)?, &closed(&bint(&s.concat(&s), &a()))?, cfg)?;
    let sum = closed(&bint(&s.concat(&t), &a()))?.add(&closed(&bint(&t.concat(&s), &a()))?)?;
    let deriv = extensional_equal(&derivative_eval(&d, &vs, &vt)?, &sum, cfg)?;
    Ok((
        doubled && deriv,
        format!("S = {s}, T = {t}: |∅⟩_S ↦ SS {doubled}, |T⟩_S ↦ ST + TS {deriv}"),
    ))
}

fn mult(_: &ProbeConfig) -> Result<(bool, String)> {
    let (l, k, n) = (2, 1, 3);
    let x = m(&[&[1, 1], &[0, 1]]);
    let t = ket(&x, &[]);
    let d = denote_proof(&mult_by(n, &a()))?;
    let (vl, vk) = (closed(&church_full(l, &a()))?, closed(&church_full(k, &a()))?);
    let got = derivative_eval(&d, &vl, &vk)?.apply(&t)?.as_matrix()?.clone();
    let samples = (0..=n as i64)
        .map(|h| {
            let p = vl.add(&vk.scale(&Scalar::from_int(h)))?;
            Ok(nl_eval(&d, &p)?.apply(&t)?.as_matrix()?.clone())
        })
        .collect::<Result<Vec<_>>>()?;
    let interpolated = difference_quotient(&samples)?;
    let expected = m(&[&[3, 15], &[0, 3]]);
    Ok((
        got == expected && interpolated == expected,
        format!("l = {l}, m = {k}, n = {n}, x = {x:?}: n·x^(l(n-1)+m) = {got:?}, by interpolation {interpolated:?}"),
    ))
}

fn gamma(cfg: &ProbeConfig) -> Result<(bool, String)> {
    let d = denote_proof(&gamma_proof(&a()))?;
    let x = m(&[&[1, 1], &[0, 1]]);
    let two = closed(&church_full(2, &a()))?;
    let out = d.eval(&[ket(&x, &[]), BangVal::vacuum(two).into()])?;
    let expected = ket(&m(&[&[1, 2], &[0, 1]]), &[]);
    let ok = extensional_equal(&out, &expected, cfg)?;
    Ok((ok, format!("γ(|∅⟩_x ⊗ |∅⟩_2) = |∅⟩_(x²): {ok}")))
}

const EXAMPLES: &[Example] = &[
    Example {
        name: "church-value",
        cites: "Church numeral value lemma",
        run: church_value,
    },
    Example {
        name: "church-derivative",
        cites: "Church numeral derivative lemma",
        run: church_derivative,
    },
    Example {
        name: "bint-001",
        cites: "binary integer derivative lemma, worked example for 001",
        run: bint_001,
    },
    Example {
        name: "repeat",
        cites: "repeat lemma",
        run: repeat,
    },
    Example {
        name: "mult",
        cites: "derivative of multiplication by n, closed form and limit",
        run: mult,
    },
    Example {
        name: "gamma",
        cites: "promotion of γ on group-like elements",
        run: gamma,
    },
];

pub fn run(run: &RunFlags) -> std::result::Result<String, Failure> {
    let cfg = probe_config(run);
    let mut out = String::new();
    let mut rows = Vec::new();
    let mut failed = 0;
    for ex in EXAMPLES {
        let (ok, detail) = (ex.run)(&cfg).unwrap_or_else(|e| (false, format!("error: {e}")));
        failed += usize::from(!ok);
        let status = if ok { "OK  " } else { "FAIL" };
        let _ = writeln!(out, "{status} {:<18} [{}]\n     {detail}", ex.name, ex.cites);
        rows.push(json!({"name": ex.name, "cites": ex.cites, "ok": ok, "detail": detail}));
    }
    if run.format == Format::Json {
        out = format!("{}\n", json!({"examples": rows, "failed": failed}));
    }
    if failed > 0 {
        return Err(Failure::check(out));
    }
    Ok(out)
}

pub fn emit(dir: &Path) -> std::result::Result<String, Failure> {
    std::fs::create_dir_all(dir).map_err(|e| Failure::usage(format!("{}: {e}", dir.display())))?;
    let mut out = String::new();
    for name in golden_names() {
        let proof = named_proof(&name, &a()).map_err(|e| Failure::usage(e.to_string()))?;
        let path = dir.join(golden_file_name(&name));
        let text = format!("; {name}\n{}", print_proof(&proof));
        std::fs::write(&path, text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
        let _ = writeln!(out, "wrote {}", path.display());
    }
    Ok(out)
}
