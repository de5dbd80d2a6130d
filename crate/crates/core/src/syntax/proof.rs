//! Proof trees and the local rule checker.
//!
//! Rule schemas (premises above, conclusion below; positions are 0-based
//! context indices):
//!
//! | rule            | premise(s)                      | conclusion                          |
//! |-----------------|---------------------------------|-------------------------------------|
//! | `axiom F`       |                                 | `F ⊢ F`                             |
//! | `lolli-r`       | `A, Γ ⊢ B`                      | `Γ ⊢ A ⊸ B`                         |
//! | `lolli-l i`     | `Γ ⊢ A` and `Δ ⊢ C`, `Δ[i] = B` | `Γ, Δ[..i], A ⊸ B, Δ[i+1..] ⊢ C`    |
//! | `tensor-l i`    | `Γ, A, B, Δ ⊢ C` (A at i)       | `Γ, A ⊗ B, Δ ⊢ C`                   |
//! | `tensor-r`      | `Γ ⊢ A` and `Δ ⊢ B`             | `Γ, Δ ⊢ A ⊗ B`                      |
//! | `der i`         | `Γ, A, Δ ⊢ B`                   | `Γ, !A, Δ ⊢ B`                      |
//! | `ctr i`         | `Γ, !A, !A, Δ ⊢ B`              | `Γ, !A, Δ ⊢ B`                      |
//! | `weak i F`      | `Γ, Δ ⊢ B`                      | `Γ, !F, Δ ⊢ B`                      |
//! | `prom`          | `!Γ ⊢ A`                        | `!Γ ⊢ !A`                           |
//! | `cut i`         | `Γ ⊢ A` and `Δ ⊢ C`, `Δ[i] = A` | `Δ[..i], Γ, Δ[i+1..] ⊢ C`           |
//! | `exch π`        | `Γ ⊢ B`                         | `Γ[π(0)], …, Γ[π(n-1)] ⊢ B`         |
//! | `coder i`       | `Γ, !A, Δ ⊢ B`                  | `Γ, A, Δ ⊢ B`                       |
//! | `coctr i`       | `Γ, !A, Δ ⊢ B`                  | `Γ, !A, !A, Δ ⊢ B`                  |
//! | `coweak i F`    | `Γ, !F, Δ ⊢ B`                  | `Γ, Δ ⊢ B`                          |

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use super::formula::{Formula, Sequent};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Rule {
    Axiom(Formula),
    LolliR,
    LolliL(usize),
    TensorL(usize),
    TensorR,
    Der(usize),
    Ctr(usize),
    Weak(usize, Formula),
    Prom,
    Cut(usize),
    Exchange(Vec<usize>),
    Coder(usize),
    Coctr(usize),
    Coweak(usize, Formula),
}

impl Rule {
    pub fn name(&self) -> &'static str {
        match self {
            Rule::Axiom(_) => "axiom",
            Rule::LolliR => "lolli-r",
            Rule::LolliL(_) => "lolli-l",
            Rule::TensorL(_) => "tensor-l",
            Rule::TensorR => "tensor-r",
            Rule::Der(_) => "der",
            Rule::Ctr(_) => "ctr",
            Rule::Weak(..) => "weak",
            Rule::Prom => "prom",
            Rule::Cut(_) => "cut",
            Rule::Exchange(_) => "exch",
            Rule::Coder(_) => "coder",
            Rule::Coctr(_) => "coctr",
            Rule::Coweak(..) => "coweak",
        }
    }

    pub fn arity(&self) -> usize {
        match self {
            Rule::Axiom(_) => 0,
            Rule::LolliL(_) | Rule::TensorR | Rule::Cut(_) => 2,
            _ => 1,
        }
    }
}

/// An unchecked proof tree.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Proof {
    pub rule: Rule,
    pub premises: Vec<Proof>,
}

impl Proof {
    fn node(rule: Rule, premises: Vec<Proof>) -> Proof {
        Proof { rule, premises }
    }

    pub fn axiom(f: Formula) -> Proof {
        Proof::node(Rule::Axiom(f), vec![])
    }

    pub fn lolli_r(p: Proof) -> Proof {
        Proof::node(Rule::LolliR, vec![p])
    }

    pub fn lolli_l(i: usize, p: Proof, q: Proof) -> Proof {
        Proof::node(Rule::LolliL(i), vec![p, q])
    }

    pub fn tensor_l(i: usize, p: Proof) -> Proof {
        Proof::node(Rule::TensorL(i), vec![p])
    }

    pub fn tensor_r(p: Proof, q: Proof) -> Proof {
        Proof::node(Rule::TensorR, vec![p, q])
    }

    pub fn der(i: usize, p: Proof) -> Proof {
        Proof::node(Rule::Der(i), vec![p])
    }

    pub fn ctr(i: usize, p: Proof) -> Proof {
        Proof::node(Rule::Ctr(i), vec![p])
    }

    pub fn weak(i: usize, f: Formula, p: Proof) -> Proof {
        Proof::node(Rule::Weak(i, f), vec![p])
    }

    pub fn prom(p: Proof) -> Proof {
        Proof::node(Rule::Prom, vec![p])
    }

    pub fn cut(i: usize, p: Proof, q: Proof) -> Proof {
        Proof::node(Rule::Cut(i), vec![p, q])
    }

    pub fn exch(perm: Vec<usize>, p: Proof) -> Proof {
        Proof::node(Rule::Exchange(perm), vec![p])
    }

    pub fn coder(i: usize, p: Proof) -> Proof {
        Proof::node(Rule::Coder(i), vec![p])
    }

    pub fn coctr(i: usize, p: Proof) -> Proof {
        Proof::node(Rule::Coctr(i), vec![p])
    }

    pub fn coweak(i: usize, f: Formula, p: Proof) -> Proof {
        Proof::node(Rule::Coweak(i, f), vec![p])
    }

    /// Number of rule applications.
    pub fn size(&self) -> usize {
        1 + self.premises.iter().map(Proof::size).sum::<usize>()
    }
}

/// The first rule violation found, located by the child-index path from
/// the root.
#[derive(Debug, Clone, PartialEq, Error)]
pub struct ProofError {
    pub path: Vec<usize>,
    pub rule: &'static str,
    pub message: String,
    pub expected: Option<String>,
    pub found: Option<String>,
}

impl fmt::Display for ProofError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rule `{}` at path {:?}: {}", self.rule, self.path, self.message)?;
        if let Some(e) = &self.expected {
            write!(f, "; expected {e}")?;
        }
        if let Some(x) = &self.found {
            write!(f, ", found {x}")?;
        }
        Ok(())
    }
}

#[derive(Debug)]
pub struct CheckedNode {
    pub rule: Rule,
    pub premises: Vec<CheckedProof>,
    pub sequent: Sequent,
}

/// A proof whose every node satisfies its rule schema, annotated with the
/// sequent each node concludes. Cheap to clone.
#[derive(Clone, Debug)]
pub struct CheckedProof(Arc<CheckedNode>);

impl CheckedProof {
    pub fn sequent(&self) -> &Sequent {
        &self.0.sequent
    }

    pub fn rule(&self) -> &Rule {
        &self.0.rule
    }

    pub fn premises(&self) -> &[CheckedProof] {
        &self.0.premises
    }

    pub fn premise(&self, i: usize) -> &CheckedProof {
        &self.0.premises[i]
    }

    /// The plain proof tree.
    pub fn proof(&self) -> Proof {
        Proof {
            rule: self.0.rule.clone(),
            premises: self.0.premises.iter().map(CheckedProof::proof).collect(),
        }
    }
}

struct Ctx<'a> {
    path: &'a [usize],
    rule: &'static str,
}

impl Ctx<'_> {
    fn fail(&self, message: impl Into<String>) -> ProofError {
        ProofError {
            path: self.path.to_vec(),
            rule: self.rule,
            message: message.into(),
            expected: None,
            found: None,
        }
    }

    fn mismatch(
        &self,
        message: impl Into<String>,
        expected: impl fmt::Display,
        found: impl fmt::Display,
    ) -> ProofError {
        ProofError {
            expected: Some(expected.to_string()),
            found: Some(found.to_string()),
            ..self.fail(message)
        }
    }

    fn index(&self, i: usize, len: usize) -> std::result::Result<(), ProofError> {
        if i >= len {
            return Err(self.mismatch("context position out of range", format!("position < {len}"), i));
        }
        Ok(())
    }

    fn banged<'f>(&self, f: &'f Formula, i: usize) -> std::result::Result<&'f Formula, ProofError> {
        f.unbang()
            .ok_or_else(|| self.mismatch(format!("position {i} must be a banged formula"), "!A", f))
    }
}

/// Check every node against its rule schema.
pub fn check_proof(p: &Proof) -> std::result::Result<CheckedProof, ProofError> {
    let mut path = Vec::new();
    check_at(p, &mut path)
}

fn check_at(p: &Proof, path: &mut Vec<usize>) -> std::result::Result<CheckedProof, ProofError> {
    let cx = Ctx {
        path,
        rule: p.rule.name(),
    };
    if p.premises.len() != p.rule.arity() {
        return Err(cx.mismatch("wrong number of premises", p.rule.arity(), p.premises.len()));
    }
    let mut premises = Vec::with_capacity(p.premises.len());
    for (i, sub) in p.premises.iter().enumerate() {
        path.push(i);
        let checked = check_at(sub, path);
        path.pop();
        premises.push(checked?);
    }
    let cx = Ctx {
        path,
        rule: p.rule.name(),
    };
    let sequent = conclude(&cx, &p.rule, &premises)?;
    Ok(CheckedProof(Arc::new(CheckedNode {
        rule: p.rule.clone(),
        premises,
        sequent,
    })))
}

fn conclude(cx: &Ctx<'_>, rule: &Rule, premises: &[CheckedProof]) -> std::result::Result<Sequent, ProofError> {
    let prem = |i: usize| premises[i].sequent();
    let seq = match rule {
        Rule::Axiom(f) => Sequent::new(vec![f.clone()], f.clone()),
        Rule::LolliR => {
            let s = prem(0);
            let (a, rest) = s
                .context
                .split_first()
                .ok_or_else(|| cx.fail("premise context is empty; nothing to abstract"))?;
            Sequent::new(rest.to_vec(), Formula::lolli(a.clone(), s.conclusion.clone()))
        }
        Rule::LolliL(i) => {
            let (p, q) = (prem(0), prem(1));
            cx.index(*i, q.context.len())?;
            let b = q.context[*i].clone();
            let mut ctx = p.context.clone();
            ctx.extend_from_slice(&q.context[..*i]);
            ctx.push(Formula::lolli(p.conclusion.clone(), b));
            ctx.extend_from_slice(&q.context[i + 1..]);
            Sequent::new(ctx, q.conclusion.clone())
        }
        Rule::TensorL(i) => {
            let s = prem(0);
            cx.index(i + 1, s.context.len())?;
            let mut ctx = s.context[..*i].to_vec();
            ctx.push(Formula::tensor(s.context[*i].clone(), s.context[i + 1].clone()));
            ctx.extend_from_slice(&s.context[i + 2..]);
            Sequent::new(ctx, s.conclusion.clone())
        }
        Rule::TensorR => {
            let (p, q) = (prem(0), prem(1));
            let mut ctx = p.context.clone();
            ctx.extend_from_slice(&q.context);
            Sequent::new(ctx, Formula::tensor(p.conclusion.clone(), q.conclusion.clone()))
        }
        Rule::Der(i) => {
            let s = prem(0);
            cx.index(*i, s.context.len())?;
            let mut ctx = s.context.clone();
            ctx[*i] = Formula::bang(ctx[*i].clone());
            Sequent::new(ctx, s.conclusion.clone())
        }
        Rule::Ctr(i) => {
            let s = prem(0);
            cx.index(i + 1, s.context.len())?;
            cx.banged(&s.context[*i], *i)?;
            if s.context[*i] != s.context[i + 1] {
                return Err(cx.mismatch("contracted copies differ", &s.context[*i], &s.context[i + 1]));
            }
            let mut ctx = s.context.clone();
            ctx.remove(i + 1);
            Sequent::new(ctx, s.conclusion.clone())
        }
        Rule::Weak(i, f) => {
            let s = prem(0);
            cx.index(*i, s.context.len() + 1)?;
            let mut ctx = s.context.clone();
            ctx.insert(*i, Formula::bang(f.clone()));
            Sequent::new(ctx, s.conclusion.clone())
        }
        Rule::Prom => {
            let s = prem(0);
            for (i, f) in s.context.iter().enumerate() {
                cx.banged(f, i)?;
            }
            Sequent::new(s.context.clone(), Formula::bang(s.conclusion.clone()))
        }
        Rule::Cut(i) => {
            let (p, q) = (prem(0), prem(1));
            cx.index(*i, q.context.len())?;
            if q.context[*i] != p.conclusion {
                return Err(cx.mismatch("cut formula does not match", &p.conclusion, &q.context[*i]));
            }
            let mut ctx = q.context[..*i].to_vec();
            ctx.extend_from_slice(&p.context);
            ctx.extend_from_slice(&q.context[i + 1..]);
            Sequent::new(ctx, q.conclusion.clone())
        }
        Rule::Exchange(perm) => {
            let s = prem(0);
            let n = s.context.len();
            let mut seen = vec![false; n];
            if perm.len() != n || !perm.iter().all(|&k| k < n && !std::mem::replace(&mut seen[k], true)) {
                return Err(cx.mismatch(
                    "not a permutation of the premise context",
                    format!("a permutation of 0..{n}"),
                    format!("{perm:?}"),
                ));
            }
            let ctx = perm.iter().map(|&k| s.context[k].clone()).collect();
            Sequent::new(ctx, s.conclusion.clone())
        }
        Rule::Coder(i) => {
            let s = prem(0);
            cx.index(*i, s.context.len())?;
            let a = cx.banged(&s.context[*i], *i)?.clone();
            let mut ctx = s.context.clone();
            ctx[*i] = a;
            Sequent::new(ctx, s.conclusion.clone())
        }
        Rule::Coctr(i) => {
            let s = prem(0);
            cx.index(*i, s.context.len())?;
            cx.banged(&s.context[*i], *i)?;
            let mut ctx = s.context.clone();
            ctx.insert(*i, s.context[*i].clone());
            Sequent::new(ctx, s.conclusion.clone())
        }
        Rule::Coweak(i, f) => {
            let s = prem(0);
            cx.index(*i, s.context.len())?;
            let expected = Formula::bang(f.clone());
            if s.context[*i] != expected {
                return Err(cx.mismatch("coweakened formula does not match", &expected, &s.context[*i]));
            }
            let mut ctx = s.context.clone();
            ctx.remove(*i);
            Sequent::new(ctx, s.conclusion.clone())
        }
    };
    Ok(seq)
}

/// The derivative `∂π` of a proof of `!A ⊢ B`: cocontraction followed by
/// codereliction, concluding `!A, A ⊢ B`.
pub fn derivative_transform(p: &Proof) -> Result<Proof> {
    let checked = check_proof(p)?;
    let s = checked.sequent();
    if s.context.len() != 1 || !s.context[0].is_bang() {
        return Err(Error::Shape(format!(
            "derivative needs a proof of `!A ⊢ B`, found `{s}`"
        )));
    }
    Ok(Proof::coder(1, Proof::coctr(0, p.clone())))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a() -> Formula {
        Formula::var("A", 2)
    }

    #[test]
    fn axiom_concludes_identity() {
        let c = check_proof(&Proof::axiom(a())).unwrap();
        assert_eq!(c.sequent(), &Sequent::new(vec![a()], a()));
    }

    #[test]
    fn composition_tree() {
        let c1 = Proof::lolli_l(0, Proof::axiom(a()), Proof::axiom(a()));
        let c = check_proof(&c1).unwrap();
        assert_eq!(c.sequent().context, vec![a(), Formula::endo(a())]);
        let comp = Proof::lolli_r(c1);
        let c = check_proof(&comp).unwrap();
        assert_eq!(c.sequent(), &Sequent::new(vec![Formula::endo(a())], Formula::endo(a())));
    }

    #[test]
    fn prom_requires_banged_context() {
        let err = check_proof(&Proof::prom(Proof::axiom(a()))).unwrap_err();
        assert_eq!(err.rule, "prom");
        assert_eq!(err.path, Vec::<usize>::new());
        assert_eq!(err.found.as_deref(), Some("A"));
        let ok = Proof::prom(Proof::der(0, Proof::axiom(a())));
        assert_eq!(check_proof(&ok).unwrap().sequent().conclusion, Formula::bang(a()));
    }

    #[test]
    fn ctr_needs_equal_adjacent_bangs() {
        let b = Formula::var("B", 1);
        let p = Proof::weak(0, b.clone(), Proof::der(0, Proof::axiom(a())));
        let err = check_proof(&Proof::ctr(0, p)).unwrap_err();
        assert_eq!(err.message, "contracted copies differ");
        assert_eq!(err.expected.as_deref(), Some("!B"));
    }

    #[test]
    fn violation_path_points_at_node() {
        let bad = Proof::lolli_l(0, Proof::axiom(a()), Proof::der(3, Proof::axiom(a())));
        let err = check_proof(&bad).unwrap_err();
        assert_eq!(err.path, vec![1]);
        assert_eq!(err.rule, "der");
    }

    #[test]
    fn exchange_permutes() {
        let p = Proof::lolli_l(0, Proof::axiom(a()), Proof::axiom(a()));
        let c = check_proof(&Proof::exch(vec![1, 0], p.clone())).unwrap();
        assert_eq!(c.sequent().context, vec![Formula::endo(a()), a()]);
        assert!(check_proof(&Proof::exch(vec![0, 0], p.clone())).is_err());
        assert!(check_proof(&Proof::exch(vec![0], p)).is_err());
    }

    #[test]
    fn differential_rules() {
        let base = Proof::der(0, Proof::axiom(a()));
        let s = check_proof(&Proof::coder(0, base.clone())).unwrap();
        assert_eq!(s.sequent().context, vec![a()]);
        let s = check_proof(&Proof::coctr(0, base.clone())).unwrap();
        assert_eq!(s.sequent().context, vec![Formula::bang(a()), Formula::bang(a())]);
        let s = check_proof(&Proof::coweak(0, a(), base.clone())).unwrap();
        assert!(s.sequent().context.is_empty());
        assert!(check_proof(&Proof::coweak(0, Formula::var("B", 2), base.clone())).is_err());
        assert!(check_proof(&Proof::coder(0, Proof::axiom(a()))).is_err());
    }

    #[test]
    fn cut_substitutes_context() {
        let id = Proof::lolli_r(Proof::axiom(a()));
        let q = Proof::lolli_l(0, Proof::axiom(a()), Proof::axiom(a()));
        let c = check_proof(&Proof::cut(1, id.clone(), q)).unwrap();
        assert_eq!(c.sequent().context, vec![a()]);
        let err = check_proof(&Proof::cut(0, id, Proof::axiom(a()))).unwrap_err();
        assert_eq!(err.message, "cut formula does not match");
    }

    #[test]
    fn tensor_rules() {
        let b = Formula::var("B", 1);
        let r = Proof::tensor_r(Proof::axiom(a()), Proof::axiom(b.clone()));
        let c = check_proof(&r).unwrap();
        assert_eq!(c.sequent().context, vec![a(), b.clone()]);
        let l = check_proof(&Proof::tensor_l(0, r)).unwrap();
        assert_eq!(l.sequent().context, vec![Formula::tensor(a(), b.clone())]);
        assert_eq!(l.sequent().conclusion, Formula::tensor(a(), b));
    }

    #[test]
    fn derivative_shape() {
        let p = Proof::der(0, Proof::axiom(a()));
        let d = derivative_transform(&p).unwrap();
        let c = check_proof(&d).unwrap();
        assert_eq!(c.sequent().context, vec![Formula::bang(a()), a()]);
        assert!(matches!(derivative_transform(&Proof::axiom(a())), Err(Error::Shape(_))));
    }
}
