use std::collections::HashMap;
use std::sync::Arc;

use super::{denote_formula, BangVal, SemKet, SemSpace, SemValue, TensorVal};
use crate::bang::Ket;
use crate::combinatorics::set_partitions;
use crate::error::{Error, Result};
use crate::exact::Scalar;
use crate::syntax::{check_proof, CheckedProof, Proof, Rule};

/// The meaning of a checked proof of `Γ ⊢ B`: a map multilinear in one
/// argument per context slot.
#[derive(Clone, Debug)]
pub struct Denotation {
    proof: CheckedProof,
    pub source: Vec<SemSpace>,
    pub target: SemSpace,
}

impl Denotation {
    pub fn new(proof: CheckedProof) -> Denotation {
        let s = proof.sequent();
        let source = s.context.iter().map(denote_formula).collect();
        let target = denote_formula(&s.conclusion);
        Denotation { proof, source, target }
    }

    pub fn proof(&self) -> &CheckedProof {
        &self.proof
    }

    pub fn eval(&self, args: &[SemValue]) -> Result<SemValue> {
        if args.len() != self.source.len() {
            return Err(Error::Shape(format!(
                "expected {} arguments, found {}",
                self.source.len(),
                args.len()
            )));
        }
        for (a, s) in args.iter().zip(&self.source) {
            a.expect_space(s)?;
        }
        run(&self.proof, args.to_vec())
    }
}

pub fn denote_proof(p: &Proof) -> Result<Denotation> {
    Ok(Denotation::new(check_proof(p)?))
}

fn single_bang_slot(d: &Denotation) -> Result<SemSpace> {
    match (d.source.as_slice(), d.proof.sequent().context.first()) {
        ([SemSpace::Bang(a)], Some(_)) => Ok((**a).clone()),
        _ => Err(Error::Shape(format!(
            "expected a proof of `!A ⊢ B`, found `{}`",
            d.proof.sequent()
        ))),
    }
}

/// `⟦π⟧|∅⟩_P` for a proof of `!A ⊢ B`.
pub fn nl_eval(d: &Denotation, point: &SemValue) -> Result<SemValue> {
    let a = single_bang_slot(d)?;
    point.expect_space(&a)?;
    d.eval(&[BangVal::vacuum(point.clone()).into()])
}

/// `⟦π⟧|ν⟩_P` for a proof of `!A ⊢ B`.
pub fn derivative_eval(d: &Denotation, point: &SemValue, nu: &SemValue) -> Result<SemValue> {
    let a = single_bang_slot(d)?;
    point.expect_space(&a)?;
    nu.expect_space(&a)?;
    d.eval(&[BangVal::ket(point.clone(), vec![nu.clone()]).into()])
}

fn conclusion_space(node: &CheckedProof) -> SemSpace {
    denote_formula(&node.sequent().conclusion)
}

fn splice(args: &[SemValue], at: usize, remove: usize, insert: Vec<SemValue>) -> Vec<SemValue> {
    let mut out = Vec::with_capacity(args.len() + insert.len());
    out.extend_from_slice(&args[..at]);
    out.extend(insert);
    out.extend_from_slice(&args[at + remove..]);
    out
}

fn run(node: &CheckedProof, args: Vec<SemValue>) -> Result<SemValue> {
    let prem = |i: usize| node.premise(i);
    let ctx_len = |i: usize| prem(i).sequent().context.len();
    match node.rule() {
        Rule::Axiom(_) => Ok(args.into_iter().next().expect("axiom has one slot")),
        Rule::LolliR => {
            let body = prem(0).clone();
            let dom = denote_formula(&body.sequent().context[0]);
            let cod = conclusion_space(&body);
            SemValue::map(
                dom,
                cod,
                Arc::new(move |a: &SemValue| {
                    let mut full = Vec::with_capacity(args.len() + 1);
                    full.push(a.clone());
                    full.extend(args.iter().cloned());
                    run(&body, full)
                }),
            )
        }
        Rule::LolliL(i) => {
            let g = ctx_len(0);
            let a = run(prem(0), args[..g].to_vec())?;
            let b = args[g + i].apply(&a)?;
            run(prem(1), splice(&args[g..], *i, 1, vec![b]))
        }
        Rule::TensorL(i) => {
            let t = match &args[*i] {
                SemValue::Tensor(t) => t,
                other => {
                    return Err(Error::SpaceMismatch {
                        expected: "a tensor".into(),
                        found: other.space().to_string(),
                    })
                }
            };
            let mut out = SemValue::zero(&conclusion_space(node));
            for (c, l, r) in &t.terms {
                let v = run(prem(0), splice(&args, *i, 1, vec![l.clone(), r.clone()]))?;
                out = out.add(&v.scale(c))?;
            }
            Ok(out)
        }
        Rule::TensorR => {
            let g = ctx_len(0);
            let a = run(prem(0), args[..g].to_vec())?;
            let b = run(prem(1), args[g..].to_vec())?;
            Ok(TensorVal::pure(a, b).into())
        }
        Rule::Der(i) => {
            let v = args[*i].as_bang()?.dereliction()?;
            run(prem(0), splice(&args, *i, 1, vec![v]))
        }
        Rule::Ctr(i) => {
            let mut out = SemValue::zero(&conclusion_space(node));
            for (c, l, r) in args[*i].as_bang()?.coproduct()? {
                let v = run(prem(0), splice(&args, *i, 1, vec![l.into(), r.into()]))?;
                out = out.add(&v.scale(&c))?;
            }
            Ok(out)
        }
        Rule::Weak(i, _) => {
            let c = args[*i].as_bang()?.counit();
            if c.is_zero() {
                return Ok(SemValue::zero(&conclusion_space(node)));
            }
            Ok(run(prem(0), splice(&args, *i, 1, vec![]))?.scale(&c))
        }
        Rule::Prom => promote(node, &args),
        Rule::Cut(i) => {
            let g = ctx_len(0);
            let a = run(prem(0), args[*i..i + g].to_vec())?;
            run(prem(1), splice(&args, *i, g, vec![a]))
        }
        Rule::Exchange(perm) => {
            let mut premise_args = args.clone();
            for (k, &p) in perm.iter().enumerate() {
                premise_args[p] = args[k].clone();
            }
            run(prem(0), premise_args)
        }
        Rule::Coder(i) => {
            let t = BangVal::codereliction(args[*i].clone());
            run(prem(0), splice(&args, *i, 1, vec![t.into()]))
        }
        Rule::Coctr(i) => {
            let t = args[*i].as_bang()?.cocontract(args[i + 1].as_bang()?)?;
            run(prem(0), splice(&args, *i, 2, vec![t.into()]))
        }
        Rule::Coweak(i, f) => {
            let unit = BangVal::vacuum(SemValue::zero(&denote_formula(f)));
            run(prem(0), splice(&args, *i, 0, vec![unit.into()]))
        }
    }
}

/// The coalgebra-morphism lift of `⟦π⟧ : !A₁ ⊗ … ⊗ !Aₙ → B`. For one ket per
/// slot, the tangents of all slots are pooled and each set partition of the
/// pool contributes a ket at `⟦π⟧(|∅⟩_{P₁}, …)` whose tangents are `⟦π⟧`
/// applied to the blocks, split back by slot.
fn promote(node: &CheckedProof, args: &[SemValue]) -> Result<SemValue> {
    let body = node.premise(0);
    let inner = denote_formula(&body.sequent().conclusion);
    let slots: Vec<&BangVal> = args.iter().map(SemValue::as_bang).collect::<Result<_>>()?;
    let mut out = BangVal::zero(inner);
    if slots.iter().any(|s| s.terms.is_empty()) {
        return Ok(out.into());
    }
    let mut choice = vec![0usize; slots.len()];
    loop {
        let kets: Vec<&SemKet> = slots.iter().zip(&choice).map(|(s, &k)| &s.terms[k].1).collect();
        let coeff: Scalar = slots
            .iter()
            .zip(&choice)
            .fold(Scalar::one(), |acc, (s, &k)| &acc * &s.terms[k].0);
        promote_kets(body, &kets, &coeff, &mut out)?;
        let mut j = 0;
        loop {
            if j == slots.len() {
                return Ok(out.into());
            }
            choice[j] += 1;
            if choice[j] < slots[j].terms.len() {
                break;
            }
            choice[j] = 0;
            j += 1;
        }
    }
}

fn promote_kets(body: &CheckedProof, kets: &[&SemKet], coeff: &Scalar, out: &mut BangVal) -> Result<()> {
    let pool: Vec<(usize, &SemValue)> = kets
        .iter()
        .enumerate()
        .flat_map(|(j, k)| k.tangents.iter().map(move |t| (j, t)))
        .collect();
    let restrict = |mask: u32| -> Vec<SemValue> {
        kets.iter()
            .enumerate()
            .map(|(j, k)| {
                let tangents = pool
                    .iter()
                    .enumerate()
                    .filter(|(i, (slot, _))| mask >> i & 1 == 1 && *slot == j)
                    .map(|(_, (_, t))| (*t).clone())
                    .collect();
                BangVal::ket(k.point.clone(), tangents).into()
            })
            .collect()
    };
    let point = run(body, restrict(0))?;
    let mut blocks: HashMap<u32, SemValue> = HashMap::new();
    for partition in set_partitions(pool.len())? {
        let mut tangents = Vec::with_capacity(partition.len());
        for block in &partition {
            let mask = block.iter().fold(0u32, |m, &i| m | 1 << i);
            let v = match blocks.get(&mask) {
                Some(v) => v.clone(),
                None => {
                    let v = run(body, restrict(mask))?;
                    blocks.insert(mask, v.clone());
                    v
                }
            };
            tangents.push(v);
        }
        out.terms.push((coeff.clone(), Ket::new(point.clone(), tangents)));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{mat_compose, Matrix};
    use crate::syntax::Formula;

    fn a() -> Formula {
        Formula::var("A", 2)
    }

    fn e() -> Formula {
        Formula::endo(a())
    }

    fn mat(rows: &[&[i64]]) -> SemValue {
        Matrix::from_ints(rows).into()
    }

    fn square() -> Proof {
        // !E ⊢ E, sending |∅⟩_x to x ∘ x
        let c1 = Proof::lolli_l(0, Proof::axiom(a()), Proof::axiom(a()));
        let c2 = Proof::lolli_l(0, Proof::axiom(a()), c1);
        let comp = Proof::lolli_r(c2);
        Proof::ctr(0, Proof::der(0, Proof::der(1, comp)))
    }

    #[test]
    fn identity_and_lolli() {
        let d = denote_proof(&Proof::lolli_r(Proof::axiom(a()))).unwrap();
        assert!(d.source.is_empty());
        let v = d.eval(&[]).unwrap();
        assert_eq!(v.as_matrix().unwrap(), &Matrix::identity(2));
    }

    #[test]
    fn composition_order() {
        let c1 = Proof::lolli_l(0, Proof::axiom(a()), Proof::axiom(a()));
        let c2 = Proof::lolli_l(0, Proof::axiom(a()), c1);
        let d = denote_proof(&Proof::lolli_r(c2)).unwrap();
        let (x, y) = (mat(&[&[1, 1], &[0, 1]]), mat(&[&[0, 1], &[1, 0]]));
        let v = d.eval(&[x.clone(), y.clone()]).unwrap();
        let expected = mat_compose(y.as_matrix().unwrap(), x.as_matrix().unwrap()).unwrap();
        assert_eq!(v.as_matrix().unwrap(), &expected);
    }

    #[test]
    fn contraction_and_derivative() {
        let d = denote_proof(&square()).unwrap();
        let x = mat(&[&[1, 2], &[3, 4]]);
        let nu = mat(&[&[0, 1], &[0, 0]]);
        let xm = x.as_matrix().unwrap();
        let num = nu.as_matrix().unwrap();
        let v = nl_eval(&d, &x).unwrap();
        assert_eq!(v.as_matrix().unwrap(), &mat_compose(xm, xm).unwrap());
        let dv = derivative_eval(&d, &x, &nu).unwrap();
        let expected = mat_compose(xm, num)
            .unwrap()
            .add(&mat_compose(num, xm).unwrap())
            .unwrap();
        assert_eq!(dv.as_matrix().unwrap(), &expected);
        assert!(nl_eval(&d, &SemValue::Base(crate::exact::VecQ::zero(2))).is_err());
    }

    #[test]
    fn derivative_transform_agrees() {
        let p = square();
        let dp = crate::syntax::derivative_transform(&p).unwrap();
        let d = denote_proof(&dp).unwrap();
        let x = mat(&[&[1, 2], &[3, 4]]);
        let nu = mat(&[&[2, 0], &[1, 1]]);
        let via_rules = d.eval(&[BangVal::vacuum(x.clone()).into(), nu.clone()]).unwrap();
        let direct = derivative_eval(&denote_proof(&p).unwrap(), &x, &nu).unwrap();
        assert_eq!(via_rules.as_matrix().unwrap(), direct.as_matrix().unwrap());
    }

    #[test]
    fn weakening_uses_counit() {
        let p = Proof::weak(0, e(), Proof::lolli_r(Proof::axiom(a())));
        let d = denote_proof(&p).unwrap();
        let x = mat(&[&[1, 2], &[3, 4]]);
        let t = BangVal::vacuum(x.clone())
            .cocontract(&BangVal::vacuum(x.clone()))
            .unwrap();
        assert_eq!(d.eval(&[t.into()]).unwrap().as_matrix().unwrap(), &Matrix::identity(2));
        let v = d.eval(&[BangVal::ket(x.clone(), vec![x]).into()]).unwrap();
        assert!(v.as_matrix().unwrap().is_zero());
    }

    #[test]
    fn promotion_values() {
        let d = denote_proof(&Proof::prom(square())).unwrap();
        let x = mat(&[&[1, 1], &[0, 1]]);
        let nu = mat(&[&[0, 0], &[1, 0]]);
        let vac = d.eval(&[BangVal::vacuum(x.clone()).into()]).unwrap();
        let b = vac.as_bang().unwrap();
        assert_eq!(b.terms.len(), 1);
        assert!(b.terms[0].1.tangents.is_empty());
        let xx = mat_compose(x.as_matrix().unwrap(), x.as_matrix().unwrap()).unwrap();
        assert_eq!(b.terms[0].1.point.as_matrix().unwrap(), &xx);
        let one = d.eval(&[BangVal::ket(x.clone(), vec![nu.clone()]).into()]).unwrap();
        let b = one.as_bang().unwrap();
        assert_eq!(b.terms.len(), 1);
        let k = &b.terms[0].1;
        assert_eq!(k.point.as_matrix().unwrap(), &xx);
        let dv = derivative_eval(&denote_proof(&square()).unwrap(), &x, &nu).unwrap();
        assert_eq!(k.tangents[0].as_matrix().unwrap(), dv.as_matrix().unwrap());
        let two = d.eval(&[BangVal::ket(x, vec![nu.clone(), nu]).into()]).unwrap();
        assert_eq!(two.as_bang().unwrap().terms.len(), 2);
    }

    #[test]
    fn wrong_slot_space_is_rejected() {
        let d = denote_proof(&square()).unwrap();
        assert!(matches!(
            d.eval(&[mat(&[&[1, 0], &[0, 1]])]),
            Err(Error::SpaceMismatch { .. })
        ));
        assert!(matches!(d.eval(&[]), Err(Error::Shape(_))));
    }

    #[test]
    fn differential_rules() {
        let p = Proof::coder(0, Proof::der(0, Proof::axiom(e())));
        let d = denote_proof(&p).unwrap();
        let x = mat(&[&[1, 2], &[3, 4]]);
        assert_eq!(
            d.eval(std::slice::from_ref(&x)).unwrap().as_matrix().unwrap(),
            x.as_matrix().unwrap()
        );
        let q = Proof::coweak(0, e(), Proof::der(0, Proof::axiom(e())));
        let v = denote_proof(&q).unwrap().eval(&[]).unwrap();
        assert!(v.as_matrix().unwrap().is_zero());
    }
}
