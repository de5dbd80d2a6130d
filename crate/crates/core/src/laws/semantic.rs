//! Laws of the proof semantics and the bundled encodings. Enumerative laws
//! map the trial index to a case; random matrices come from the trial RNG.
//! All of them work over `A = k²`.

use std::sync::Arc;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{Law, LawConfig, LawRegistry};
use crate::encodings::*;
use crate::error::{Error, Result};
use crate::exact::{Matrix, Scalar};
use crate::semantics::observe::random_point;
use crate::semantics::{
    denote_proof, derivative_eval, extensional_witness, nl_eval, BangVal, SemSpace, SemValue, TensorVal,
};
use crate::syntax::{derivative_transform, Formula, Proof};

type TrialsFn = fn(&LawConfig) -> usize;
type CheckFn = fn(usize, &mut ChaCha8Rng, &LawConfig) -> Result<Option<String>>;

#[derive(Clone, Copy)]
struct CaseLaw {
    name: &'static str,
    group: &'static str,
    summary: &'static str,
    trials: TrialsFn,
    check: CheckFn,
}

impl Law for CaseLaw {
    fn name(&self) -> &'static str {
        self.name
    }

    fn group(&self) -> &'static str {
        self.group
    }

    fn summary(&self) -> &'static str {
        self.summary
    }

    fn trials(&self, cfg: &LawConfig) -> usize {
        (self.trials)(cfg)
    }

    fn check(&self, index: usize, rng: &mut ChaCha8Rng, cfg: &LawConfig) -> Result<Option<String>> {
        (self.check)(index, rng, cfg)
    }
}

fn a() -> Formula {
    Formula::var("A", 2)
}

fn end() -> SemSpace {
    SemSpace::hom(SemSpace::Base(2), SemSpace::Base(2))
}

fn closed(p: &Proof) -> Result<SemValue> {
    denote_proof(p)?.eval(&[])
}

fn random_matrix(rng: &mut ChaCha8Rng) -> Result<Matrix> {
    Ok(random_point(&end(), rng)?.as_matrix()?.clone())
}

fn mat(v: &SemValue) -> Result<Matrix> {
    Ok(v.as_matrix()?.clone())
}

/// Closed bundled values: numerals up to 3 and binary integers up to length 2.
fn closed_pool(space: &SemSpace) -> Result<Vec<SemValue>> {
    let mut proofs: Vec<Proof> = (0..=3).map(|n| church_full(n, &a())).collect();
    proofs.extend(BinSeq::all_up_to(2).iter().map(|s| bint(s, &a())));
    let mut out = Vec::new();
    for p in &proofs {
        let v = closed(p)?;
        if &v.space() == space {
            out.push(v);
        }
    }
    Ok(out)
}

/// A random value of `space`. Maps between non-flat spaces are drawn from
/// the closed bundled values.
fn random_value(space: &SemSpace, rng: &mut ChaCha8Rng) -> Result<SemValue> {
    match space {
        SemSpace::Bang(inner) => {
            let mut out: SemValue = BangVal::zero((**inner).clone()).into();
            for _ in 0..rng.gen_range(1..=2) {
                let point = random_value(inner, rng)?;
                let tangents = (0..rng.gen_range(0..=2))
                    .map(|_| random_value(inner, rng))
                    .collect::<Result<_>>()?;
                let c = Scalar::from_int(rng.gen_range(1..=3));
                out = out.add(&SemValue::from(BangVal::ket(point, tangents)).scale(&c))?;
            }
            Ok(out)
        }
        SemSpace::Tensor(l, r) => Ok(TensorVal::pure(random_value(l, rng)?, random_value(r, rng)?).into()),
        _ if space.flat_dim().is_some() => random_point(space, rng),
        _ => {
            let pool = closed_pool(space)?;
            if pool.is_empty() {
                return Err(Error::Probe(format!("no sample values for {space}")));
            }
            Ok(pool[rng.gen_range(0..pool.len())].clone())
        }
    }
}

fn witness(what: impl FnOnce() -> String, lhs: &SemValue, rhs: &SemValue, cfg: &LawConfig) -> Result<Option<String>> {
    Ok(extensional_witness(lhs, rhs, &cfg.probe)?.map(|w| format!("{}: {w}", what())))
}

fn exact(what: impl FnOnce() -> String, lhs: Matrix, rhs: Matrix) -> Option<String> {
    (lhs != rhs).then(|| format!("{}: lhs {lhs:?} rhs {rhs:?}", what()))
}

const MULTILINEAR: &[&str] = &["comp:2", "church:2", "church:3", "gamma", "mult", "mult-by:2", "repeat"];

fn multilinearity(index: usize, rng: &mut ChaCha8Rng, cfg: &LawConfig) -> Result<Option<String>> {
    let name = MULTILINEAR[index % MULTILINEAR.len()];
    let d = denote_proof(&named_proof(name, &a())?)?;
    let mut args = d
        .source
        .iter()
        .map(|s| random_value(s, rng))
        .collect::<Result<Vec<_>>>()?;
    let slot = rng.gen_range(0..args.len());
    let (u, v) = (random_value(&d.source[slot], rng)?, random_value(&d.source[slot], rng)?);
    let (p, q) = (
        Scalar::from_int(rng.gen_range(-3..=3)),
        Scalar::new(rng.gen_range(-3..=3), 2),
    );
    args[slot] = u.scale(&p).add(&v.scale(&q))?;
    let lhs = d.eval(&args)?;
    args[slot] = u;
    let fu = d.eval(&args)?;
    args[slot] = v;
    let fv = d.eval(&args)?;
    let rhs = fu.scale(&p).add(&fv.scale(&q))?;
    witness(|| format!("{name}, slot {slot}"), &lhs, &rhs, cfg)
}

/// Bodies under promotion: numerals and the application inside `gamma`.
fn prom_body(index: usize) -> (String, Proof) {
    match index % 5 {
        4 => ("gamma body".into(), gamma_proof(&a()).premises[0].clone()),
        n => (format!("church:{n}"), church(n, &a())),
    }
}

fn promotion_dereliction(index: usize, rng: &mut ChaCha8Rng, cfg: &LawConfig) -> Result<Option<String>> {
    let (name, body) = prom_body(index);
    let inner = denote_proof(&body)?;
    let outer = denote_proof(&Proof::prom(body))?;
    let args = inner
        .source
        .iter()
        .map(|s| random_value(s, rng))
        .collect::<Result<Vec<_>>>()?;
    let lhs = outer.eval(&args)?.as_bang()?.dereliction()?;
    witness(|| name, &lhs, &inner.eval(&args)?, cfg)
}

/// Coefficient, left halves and right halves of one split.
type Split = (Scalar, Vec<SemValue>, Vec<SemValue>);

/// All ways of splitting every argument by the coproduct.
fn split_args(args: &[SemValue]) -> Result<Vec<Split>> {
    let mut acc = vec![(Scalar::one(), Vec::new(), Vec::new())];
    for x in args {
        let parts = x.as_bang()?.coproduct()?;
        let mut next = Vec::with_capacity(acc.len() * parts.len());
        for (c, l, r) in &acc {
            for (e, a, b) in &parts {
                let (mut l, mut r) = (l.clone(), r.clone());
                l.push(a.clone().into());
                r.push(b.clone().into());
                next.push((c * e, l, r));
            }
        }
        acc = next;
    }
    Ok(acc)
}

fn promotion_comultiplicative(index: usize, rng: &mut ChaCha8Rng, cfg: &LawConfig) -> Result<Option<String>> {
    let (name, body) = prom_body(index);
    let outer = denote_proof(&Proof::prom(body))?;
    let args = outer
        .source
        .iter()
        .map(|s| random_value(s, rng))
        .collect::<Result<Vec<_>>>()?;
    let out = outer.eval(&args)?;
    let space = out.space();
    let pair = |terms| -> SemValue {
        TensorVal {
            left: space.clone(),
            right: space.clone(),
            terms,
        }
        .into()
    };
    let lhs = out
        .as_bang()?
        .coproduct()?
        .into_iter()
        .map(|(c, x, y)| (c, x.into(), y.into()))
        .collect();
    let mut rhs = Vec::new();
    for (c, l, r) in split_args(&args)? {
        rhs.push((c, outer.eval(&l)?, outer.eval(&r)?));
    }
    witness(|| name, &pair(lhs), &pair(rhs), cfg)
}

fn promotion_totem(index: usize, rng: &mut ChaCha8Rng, cfg: &LawConfig) -> Result<Option<String>> {
    let n = index % 4;
    let body = church(n, &a());
    let inner = denote_proof(&body)?;
    let outer = denote_proof(&Proof::prom(body))?;
    let (p, nu) = (SemValue::from(random_matrix(rng)?), SemValue::from(random_matrix(rng)?));
    let q = nl_eval(&inner, &p)?;
    let vacuum = nl_eval(&outer, &p)?;
    if let Some(w) = witness(
        || format!("church:{n} on |∅⟩"),
        &vacuum,
        &BangVal::vacuum(q.clone()).into(),
        cfg,
    )? {
        return Ok(Some(w));
    }
    let expected = BangVal::ket(q, vec![derivative_eval(&inner, &p, &nu)?]).into();
    witness(
        || format!("church:{n} on |ν⟩"),
        &derivative_eval(&outer, &p, &nu)?,
        &expected,
        cfg,
    )
}

fn cut_repeat(index: usize, _: &mut ChaCha8Rng, cfg: &LawConfig) -> Result<Option<String>> {
    let s = &BinSeq::all_up_to(3)[index];
    let cut = Proof::cut(0, Proof::prom(bint(s, &a())), repeat_proof(&a()));
    witness(
        || format!("S={s}"),
        &closed(&cut)?,
        &closed(&bint(&s.concat(s), &a()))?,
        cfg,
    )
}

/// Proofs of `!X ⊢ Y`: numerals, binary-integer bodies and `repeat`.
fn derivable(index: usize) -> (String, Proof) {
    let seqs = BinSeq::all_up_to(3);
    match index {
        0..=5 => (format!("church:{index}"), church(index, &a())),
        i if i < 6 + seqs.len() => {
            let s = &seqs[i - 6];
            (format!("bint:{s} body"), bint(s, &a()).premises[0].clone())
        }
        _ => ("repeat".into(), repeat_proof(&a())),
    }
}

fn derivative_paths(index: usize, rng: &mut ChaCha8Rng, cfg: &LawConfig) -> Result<Option<String>> {
    let (name, p) = derivable(index % 22);
    let d = denote_proof(&p)?;
    let dp = denote_proof(&derivative_transform(&p)?)?;
    let inner = match &d.source[0] {
        SemSpace::Bang(x) => (**x).clone(),
        other => return Err(Error::Shape(format!("expected a banged slot, found {other}"))),
    };
    let t = random_value(&d.source[0], rng)?;
    let nu = random_value(&inner, rng)?;
    let lhs = dp.eval(&[t.clone(), nu.clone()])?;
    let rhs = d.eval(&[t.as_bang()?.deriving(&nu)?.into()])?;
    witness(|| name, &lhs, &rhs, cfg)
}

fn church_values(_: usize, rng: &mut ChaCha8Rng, _: &LawConfig) -> Result<Option<String>> {
    let (alpha, nu) = (random_matrix(rng)?, random_matrix(rng)?);
    for n in 0..=5 {
        let d = denote_proof(&church(n, &a()))?;
        let value = mat(&nl_eval(&d, &alpha.clone().into())?)?;
        if let Some(w) = exact(|| format!("{n} at α={alpha:?}"), value, church_oracle(n, &alpha)?) {
            return Ok(Some(w));
        }
        let deriv = mat(&derivative_eval(&d, &alpha.clone().into(), &nu.clone().into())?)?;
        let expected = church_derivative_oracle(n, &alpha, &nu)?;
        if let Some(w) = exact(|| format!("{n} at α={alpha:?} toward ν={nu:?}"), deriv, expected) {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// `(S, s, r)` with `|S| ≤ 3`, `s + r ≤ 3`.
fn bint_cases() -> Vec<(BinSeq, usize, usize)> {
    let mut out = Vec::new();
    for s in BinSeq::all_up_to(3) {
        for total in 0..=3 {
            for ns in 0..=total {
                out.push((s.clone(), ns, total - ns));
            }
        }
    }
    out
}

fn ket_of(point: &Matrix, tangents: &[Matrix]) -> SemValue {
    BangVal::ket(
        point.clone().into(),
        tangents.iter().cloned().map(SemValue::from).collect(),
    )
    .into()
}

fn bint_values(index: usize, rng: &mut ChaCha8Rng, _: &LawConfig) -> Result<Option<String>> {
    let (s, ns, nr) = bint_cases().swap_remove(index);
    let (gamma, delta) = (random_matrix(rng)?, random_matrix(rng)?);
    let alphas = (0..ns).map(|_| random_matrix(rng)).collect::<Result<Vec<_>>>()?;
    let betas = (0..nr).map(|_| random_matrix(rng)).collect::<Result<Vec<_>>>()?;
    let got = closed(&bint(&s, &a()))?
        .apply(&ket_of(&gamma, &alphas))?
        .apply(&ket_of(&delta, &betas))?;
    let expected = bint_oracle(&s, &alphas, &gamma, &betas, &delta)?;
    Ok(exact(|| format!("S={s} s={ns} r={nr}"), mat(&got)?, expected))
}

fn repeat_lemma(index: usize, _: &mut ChaCha8Rng, cfg: &LawConfig) -> Result<Option<String>> {
    let seqs = BinSeq::all_up_to(2);
    let s = &seqs[index / (seqs.len() + 1)];
    let d = denote_proof(&repeat_proof(&a()))?;
    let vs = closed(&bint(s, &a()))?;
    match index % (seqs.len() + 1) {
        0 => witness(
            || format!("S={s}"),
            &nl_eval(&d, &vs)?,
            &closed(&bint(&s.concat(s), &a()))?,
            cfg,
        ),
        k => {
            let t = &seqs[k - 1];
            let deriv = derivative_eval(&d, &vs, &closed(&bint(t, &a()))?)?;
            let sum = closed(&bint(&s.concat(t), &a()))?.add(&closed(&bint(&t.concat(s), &a()))?)?;
            witness(|| format!("S={s} T={t}"), &deriv, &sum, cfg)
        }
    }
}

fn mult_closed_form(index: usize, rng: &mut ChaCha8Rng, _: &LawConfig) -> Result<Option<String>> {
    let (l, m, n) = (index / 16, index / 4 % 4, index % 4);
    let x = random_matrix(rng)?;
    let t = ket_of(&x, &[]);
    let d = denote_proof(&mult_by(n, &a()))?;
    let (vl, vm) = (closed(&church_full(l, &a()))?, closed(&church_full(m, &a()))?);
    let got = mat(&derivative_eval(&d, &vl, &vm)?.apply(&t)?)?;
    let what = || format!("l={l} m={m} n={n} x={x:?}");
    if let Some(w) = exact(what, got.clone(), mult_derivative_oracle(l, m, n, &x)?) {
        return Ok(Some(w));
    }
    let samples = (0..=n as i64)
        .map(|h| {
            let p = vl.add(&vm.scale(&Scalar::from_int(h)))?;
            mat(&nl_eval(&d, &p)?.apply(&t)?)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(exact(
        || format!("difference quotient, l={l} m={m} n={n}"),
        difference_quotient(&samples)?,
        got,
    ))
}

fn gamma_group_like(index: usize, rng: &mut ChaCha8Rng, cfg: &LawConfig) -> Result<Option<String>> {
    let (l, m) = (index / 3, index % 3);
    let d = denote_proof(&gamma_proof(&a()))?;
    let t = ket_of(&random_matrix(rng)?, &[]);
    let (vl, vm) = (closed(&church_full(l, &a()))?, closed(&church_full(m, &a()))?);
    let at = vl.apply(&t)?;
    let out = d.eval(&[t.clone(), BangVal::vacuum(vl.clone()).into()])?;
    if let Some(w) = witness(
        || format!("l={l} on |∅⟩"),
        &out,
        &BangVal::vacuum(at.clone()).into(),
        cfg,
    )? {
        return Ok(Some(w));
    }
    let out = d.eval(&[t.clone(), BangVal::ket(vl, vec![vm.clone()]).into()])?;
    let expected = BangVal::ket(at, vec![vm.apply(&t)?]).into();
    witness(|| format!("l={l} m={m}"), &out, &expected, cfg)
}

const LAWS: &[CaseLaw] = &[
    CaseLaw {
        name: "multilinearity",
        group: "semantics",
        summary: "denotations are linear in each slot",
        trials: |cfg| cfg.trials.min(4 * MULTILINEAR.len()),
        check: multilinearity,
    },
    CaseLaw {
        name: "prom-dereliction",
        group: "semantics",
        summary: "d∘⟦prom π⟧ = ⟦π⟧",
        trials: |cfg| cfg.trials.min(20),
        check: promotion_dereliction,
    },
    CaseLaw {
        name: "prom-comultiplicative",
        group: "semantics",
        summary: "Δ∘⟦prom π⟧ = (⟦prom π⟧⊗⟦prom π⟧)∘Δ",
        trials: |cfg| cfg.trials.min(20),
        check: promotion_comultiplicative,
    },
    CaseLaw {
        name: "prom-values",
        group: "semantics",
        summary: "⟦prom π⟧|∅⟩_P = |∅⟩_Q, ⟦prom π⟧|ν⟩_P = |⟦π⟧|ν⟩_P⟩_Q",
        trials: |cfg| cfg.trials.min(20),
        check: promotion_totem,
    },
    CaseLaw {
        name: "cut-repeat",
        group: "semantics",
        summary: "cut(prom S, repeat) ≡ SS for |S| ≤ 3",
        trials: |_| 15,
        check: cut_repeat,
    },
    CaseLaw {
        name: "derivative-paths",
        group: "semantics",
        summary: "⟦∂π⟧ = ⟦π⟧∘D",
        trials: |cfg| cfg.trials.clamp(22, 44),
        check: derivative_paths,
    },
    CaseLaw {
        name: "church-values",
        group: "encodings",
        summary: "n at α is αⁿ; toward ν it is Σ αⁱ⁻¹ ν αⁿ⁻ⁱ, n ≤ 5",
        trials: |cfg| cfg.trials.min(50),
        check: church_values,
    },
    CaseLaw {
        name: "bint-values",
        group: "encodings",
        summary: "S on |α…⟩_γ ⊗ |β…⟩_δ sums over injective placements, |S| ≤ 3, s+r ≤ 3",
        trials: |_| 150,
        check: bint_values,
    },
    CaseLaw {
        name: "repeat-lemma",
        group: "encodings",
        summary: "repeat sends |∅⟩_S to SS and |T⟩_S to ST + TS, |S|,|T| ≤ 2",
        trials: |_| 56,
        check: repeat_lemma,
    },
    CaseLaw {
        name: "mult-closed-form",
        group: "encodings",
        summary: "derivative of mult(−,n) at l toward m is n·x^{l(n−1)+m}, also by interpolation",
        trials: |_| 64,
        check: mult_closed_form,
    },
    CaseLaw {
        name: "gamma-group-like",
        group: "encodings",
        summary: "γ on |∅⟩_x with |∅⟩_l and |m⟩_l",
        trials: |_| 12,
        check: gamma_group_like,
    },
];

pub(super) fn register(r: &mut LawRegistry) {
    for law in LAWS {
        r.register(Arc::new(*law));
    }
}
