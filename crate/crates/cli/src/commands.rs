use std::fmt::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::Args;
use serde_json::{json, Value};

use sweedler::bang::DerivingRegistry;
use sweedler::encodings::named_proof;
use sweedler::laws::{LawConfig, LawRegistry, LawReport};
use sweedler::semantics::json::{value_from_json, value_to_json};
use sweedler::semantics::{
    denote_formula, denote_proof, derivative_eval, extensional_witness, Denotation, ProbeConfig, SemSpace, SemValue,
};
use sweedler::syntax::{check_proof, parse_proof, CheckedProof, Formula, Proof};
use sweedler::Error;

use crate::{Failure, Format, RunFlags};

#[derive(Args)]
pub struct EvalArgs {
    file: PathBuf,

    /// JSON array with one value per context formula; further values are
    /// applied in turn to the result.
    #[arg(long, default_value = "[]")]
    input: String,

    /// Evaluate at the ket |tangent⟩_point instead of the input.
    #[arg(long)]
    pub derive: bool,

    /// JSON value of `A` for --derive.
    #[arg(long)]
    point: Option<String>,

    /// JSON value of `A` for --derive.
    #[arg(long)]
    tangent: Option<String>,

    /// Compare the result with this JSON value; exit 1 on a difference.
    #[arg(long)]
    expect: Option<String>,
}

#[derive(Args)]
pub struct AxiomArgs {
    /// Run only this law or group; repeatable.
    #[arg(long = "law", value_name = "NAME")]
    laws: Vec<String>,

    /// Replace the deriving transformation by a registered variant, e.g. append-negated.
    #[arg(long, value_name = "RULE")]
    mutate: Option<String>,

    /// List the registered laws and exit.
    #[arg(long)]
    list: bool,
}

pub fn probe_config(run: &RunFlags) -> ProbeConfig {
    ProbeConfig {
        seed: run.seed,
        tangent_budget: run.probe_depth as usize,
        ..ProbeConfig::default()
    }
}

/// Line and column (1-based) of a byte offset.
fn location(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, col)
}

fn load(file: &Path) -> Result<Proof, Failure> {
    let text = std::fs::read_to_string(file).map_err(|e| Failure::usage(format!("{}: {e}", file.display())))?;
    parse_proof(&text).map_err(|e| match e {
        Error::Parse { offset, message } => {
            let (line, col) = location(&text, offset);
            Failure::usage(format!("{}:{line}:{col}: {message}", file.display()))
        }
        other => Failure::usage(format!("{}: {other}", file.display())),
    })
}

fn checked(file: &Path) -> Result<CheckedProof, Failure> {
    let proof = load(file)?;
    check_proof(&proof).map_err(|e| Failure::check(format!("invalid proof {}: {e}\n", file.display())))
}

pub fn check(file: &Path, run: &RunFlags) -> Result<String, Failure> {
    let c = checked(file)?;
    Ok(match run.format {
        Format::Text => format!("ok: {}\n", c.sequent()),
        Format::Json => format!("{}\n", json!({"ok": true, "sequent": c.sequent().to_string()})),
    })
}

fn semantic(e: Error) -> Failure {
    match e {
        Error::Parse { .. } | Error::Json(_) => Failure::usage(e.to_string()),
        other => Failure::check(format!("error: {other}\n")),
    }
}

/// Resolve `{"proof": name}` to the closed bundled proof of that name whose
/// conclusion lives in `space`.
fn resolve(name: &str, space: &SemSpace) -> sweedler::Result<SemValue> {
    for dim in 1..=6 {
        let proof = named_proof(name, &Formula::var("A", dim))?;
        let d = denote_proof(&proof)?;
        if !d.source.is_empty() {
            return Err(Error::Json(format!(
                "`{name}` has a non-empty context and is not a value"
            )));
        }
        if &d.target == space {
            return d.eval(&[]);
        }
    }
    Err(Error::SpaceMismatch {
        expected: space.to_string(),
        found: format!("no dimension of `{name}` fits"),
    })
}

fn parse_json(text: &str, what: &str) -> Result<Value, Failure> {
    serde_json::from_str(text).map_err(|e| Failure::usage(format!("{what}: {e}")))
}

fn parse_value(text: &str, space: &SemSpace, what: &str) -> Result<SemValue, Failure> {
    value_from_json(&parse_json(text, what)?, space, &resolve).map_err(|e| Failure::usage(format!("{what}: {e}")))
}

fn derive_slot(d: &Denotation) -> Result<SemSpace, Failure> {
    let s = d.proof().sequent();
    match (s.context.as_slice(), s.context.first().and_then(Formula::unbang)) {
        ([_], Some(a)) => Ok(denote_formula(a)),
        _ => Err(Failure::check(format!(
            "error: --derive needs a proof of `!A ⊢ B`, found `{s}`\n"
        ))),
    }
}

pub fn eval(args: EvalArgs, run: &RunFlags) -> Result<String, Failure> {
    let d = Denotation::new(checked(&args.file)?);
    let cfg = probe_config(run);
    let value = if args.derive {
        let a = derive_slot(&d)?;
        let need = |x: &Option<String>, flag: &str| {
            x.clone()
                .ok_or_else(|| Failure::usage(format!("--derive needs {flag}")))
        };
        let point = parse_value(&need(&args.point, "--point")?, &a, "--point")?;
        let tangent = parse_value(&need(&args.tangent, "--tangent")?, &a, "--tangent")?;
        derivative_eval(&d, &point, &tangent).map_err(semantic)?
    } else {
        let items = match parse_json(&args.input, "--input")? {
            Value::Array(items) => items,
            other => return Err(Failure::usage(format!("--input must be a JSON array, found {other}"))),
        };
        if items.len() < d.source.len() {
            return Err(Failure::check(format!(
                "error: the proof has {} context formula(s) but --input gives {}\n",
                d.source.len(),
                items.len()
            )));
        }
        let input = |i: usize, space: &SemSpace| {
            value_from_json(&items[i], space, &resolve).map_err(|e| match e {
                Error::SpaceMismatch { .. } | Error::DimensionMismatch { .. } => {
                    Failure::check(format!("error: input {i}: {e}; expected a value of {space}\n"))
                }
                other => Failure::usage(format!("input {i}: {other}")),
            })
        };
        let inputs = d
            .source
            .iter()
            .enumerate()
            .map(|(i, s)| input(i, s))
            .collect::<Result<Vec<_>, _>>()?;
        let mut value = d.eval(&inputs).map_err(semantic)?;
        // remaining inputs are applied as arguments to the result
        for i in inputs.len()..items.len() {
            let dom = match value.space() {
                SemSpace::Hom(dom, _) => *dom,
                other => {
                    return Err(Failure::check(format!(
                        "error: input {i}: the result lives in {other}, which takes no arguments\n"
                    )))
                }
            };
            value = value.apply(&input(i, &dom)?).map_err(semantic)?;
        }
        value
    };
    let rendered = value_to_json(&value, cfg.tangent_budget, &cfg).map_err(semantic)?;
    let verdict = match &args.expect {
        Some(text) => {
            let expected = parse_value(text, &value.space(), "--expect")?;
            Some(extensional_witness(&value, &expected, &cfg).map_err(semantic)?)
        }
        None => None,
    };
    let mut out = match run.format {
        Format::Text => {
            let compact = rendered.to_string();
            let mut s = if compact.len() <= 100 {
                compact
            } else {
                serde_json::to_string_pretty(&rendered).unwrap_or_default()
            };
            s.push('\n');
            if let Some(w) = &verdict {
                match w {
                    None => s.push_str("matches expected\n"),
                    Some(w) => {
                        let _ = writeln!(s, "differs from expected: {w}");
                    }
                }
            }
            s
        }
        Format::Json => {
            let mut obj = json!({"space": value.space().to_string(), "value": rendered});
            if let Some(w) = &verdict {
                obj["matches"] = json!(w.is_none());
                obj["witness"] = json!(w);
            }
            format!("{obj}\n")
        }
    };
    if matches!(verdict, Some(Some(_))) {
        return Err(Failure::check(std::mem::take(&mut out)));
    }
    Ok(out)
}

pub fn law_config(run: &RunFlags, mutate: Option<&str>) -> Result<LawConfig, Failure> {
    let mut cfg = LawConfig {
        seed: run.seed,
        trials: run.trials as usize,
        dim: run.dim as usize,
        max_tangents: run.max_tangents as usize,
        probe: probe_config(run),
        ..LawConfig::default()
    };
    if let Some(name) = mutate {
        let rules = DerivingRegistry::standard();
        cfg.deriving = rules.get(name).ok_or_else(|| {
            let known: Vec<_> = rules.names().collect();
            Failure::usage(format!("unknown deriving rule `{name}`; known: {}", known.join(", ")))
        })?;
    }
    Ok(cfg)
}

fn report_text(r: &LawReport, summary: &str, out: &mut String) {
    let status = if r.ok() { "PASS" } else { "FAIL" };
    let _ = writeln!(out, "{status} {:<40} {:>4}/{:<4} {summary}", r.name, r.passed, r.trials);
    if let Some(f) = &r.first_failure {
        let _ = writeln!(out, "  first failure at trial {}:\n  {}", f.trial, f.witness);
    }
}

pub fn axioms(args: &AxiomArgs, run: &RunFlags) -> Result<String, Failure> {
    let registry = LawRegistry::standard();
    if args.list {
        let mut out = String::new();
        for law in registry.iter() {
            let _ = writeln!(out, "{:<12} {:<40} {}", law.group(), law.name(), law.summary());
        }
        return Ok(out);
    }
    let mut selected = Vec::new();
    for key in &args.laws {
        let found = registry.select(key);
        if found.is_empty() {
            return Err(Failure::usage(format!(
                "no law or group named `{key}`; see `axioms --list`"
            )));
        }
        for law in found {
            if !selected
                .iter()
                .any(|l: &Arc<dyn sweedler::laws::Law>| l.name() == law.name())
            {
                selected.push(law);
            }
        }
    }
    if args.laws.is_empty() {
        selected = registry.iter().cloned().collect();
    }
    let cfg = law_config(run, args.mutate.as_deref())?;
    let reports: Vec<LawReport> = selected
        .iter()
        .map(|l| sweedler::laws::run_law(l.as_ref(), &cfg))
        .collect();
    let failed = reports.iter().filter(|r| !r.ok()).count();
    let out = match run.format {
        Format::Text => {
            let mut out = String::new();
            if let Some(m) = &args.mutate {
                let _ = writeln!(out, "deriving rule: {m}");
            }
            for (r, l) in reports.iter().zip(&selected) {
                report_text(r, l.summary(), &mut out);
            }
            let _ = writeln!(
                out,
                "{} laws, {} passed, {failed} failed (seed {})",
                reports.len(),
                reports.len() - failed,
                run.seed
            );
            out
        }
        Format::Json => {
            let laws: Vec<Value> = reports
                .iter()
                .map(|r| {
                    json!({
                        "name": r.name,
                        "group": r.group,
                        "trials": r.trials,
                        "passed": r.passed,
                        "ok": r.ok(),
                        "failure": r.first_failure.as_ref().map(|f| json!({"trial": f.trial, "witness": f.witness})),
                    })
                })
                .collect();
            format!(
                "{}\n",
                json!({"seed": run.seed, "deriving": cfg.deriving.name(), "laws": laws, "failed": failed})
            )
        }
    };
    if failed > 0 {
        return Err(Failure::check(out));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn offsets_become_lines() {
        assert_eq!(location("ab\ncd", 4), (2, 2));
        assert_eq!(location("ab", 0), (1, 1));
    }
}
