//! Coalgebra, deriving, Hopf and comonad laws on random canonical elements.

use std::fmt::Debug;
use std::sync::Arc;

use rand_chacha::ChaCha8Rng;

use super::{Law, LawConfig, LawRegistry, Sample};
use crate::bang::{
    split, split_merge, tangent_lift, BangElement, DerivingRule, Ket, Space, TangentProbe, TensorElement,
};
use crate::error::Result;
use crate::exact::{Scalar, VecQ};
use crate::lincomb::{swap, LinComb};

type El = BangElement<VecQ>;
type Pair = TensorElement<(Ket<VecQ>, Ket<VecQ>)>;
pub(super) type CheckFn = fn(&Sample, &dyn DerivingRule) -> Result<Option<String>>;

#[derive(Clone, Copy)]
pub(super) struct ElementLaw {
    pub name: &'static str,
    pub group: &'static str,
    pub summary: &'static str,
    pub check: CheckFn,
}

impl ElementLaw {
    /// Replace elements by single kets while the law keeps failing.
    pub(super) fn shrink(&self, mut sample: Sample, rule: &dyn DerivingRule) -> Sample {
        'outer: loop {
            for next in sample.single_ket_variants() {
                if matches!((self.check)(&next, rule), Ok(Some(_))) {
                    sample = next;
                    continue 'outer;
                }
            }
            return sample;
        }
    }
}

impl Law for ElementLaw {
    fn name(&self) -> &'static str {
        self.name
    }

    fn group(&self) -> &'static str {
        self.group
    }

    fn summary(&self) -> &'static str {
        self.summary
    }

    fn check(&self, _index: usize, rng: &mut ChaCha8Rng, cfg: &LawConfig) -> Result<Option<String>> {
        let sample = Sample::draw(cfg.dim, cfg.max_tangents, rng)?;
        let rule = cfg.deriving.as_ref();
        if (self.check)(&sample, rule)?.is_none() {
            return Ok(None);
        }
        let small = self.shrink(sample, rule);
        let detail = (self.check)(&small, rule)?.unwrap_or_default();
        Ok(Some(format!("{detail}\n  input: {small}")))
    }
}

pub(super) fn differ<T: PartialEq + Debug>(lhs: T, rhs: T) -> Option<String> {
    (lhs != rhs).then(|| format!("lhs {lhs:?}\n  rhs {rhs:?}"))
}

fn space(x: &El) -> Space {
    x.space().clone()
}

fn sum<I: IntoIterator<Item = (Scalar, El)>>(space: Space, parts: I) -> Result<El> {
    let mut raw = Vec::new();
    for (c, x) in parts {
        raw.extend(x.iter().map(|(k, e)| (&c * e, k.clone())));
    }
    BangElement::canonicalize(space, raw)
}

/// `Σ c · f(a, b)` over `Δx = Σ c a ⊗ b`, with `a`, `b` as elements.
fn over_coproduct<T>(x: &El, mut f: impl FnMut(El, El) -> Result<T>) -> Result<Vec<(Scalar, T)>> {
    let mut out = Vec::new();
    for ((a, b), c) in x.coproduct()?.iter() {
        out.push((c.clone(), f(x.of_ket(a), x.of_ket(b))?));
    }
    Ok(out)
}

fn pair_sum(parts: Vec<(Scalar, Pair)>) -> Pair {
    let mut out = LinComb::new();
    for (c, p) in parts {
        out.add_scaled(&p, &c);
    }
    out
}

fn coassociativity(x: &Sample, _: &dyn DerivingRule) -> Result<Option<String>> {
    let t = &x.t;
    let mut lhs = LinComb::new();
    let mut rhs = LinComb::new();
    for ((a, b), c) in t.coproduct()?.iter() {
        for ((a1, a2), e) in t.of_ket(a).coproduct()?.iter() {
            lhs.add_term((a1.clone(), a2.clone(), b.clone()), c * e);
        }
        for ((b1, b2), e) in t.of_ket(b).coproduct()?.iter() {
            rhs.add_term((a.clone(), b1.clone(), b2.clone()), c * e);
        }
    }
    Ok(differ(lhs, rhs))
}

fn cocommutativity(x: &Sample, _: &dyn DerivingRule) -> Result<Option<String>> {
    let d = x.t.coproduct()?;
    Ok(differ(swap(&d), d))
}

fn counit(x: &Sample, _: &dyn DerivingRule) -> Result<Option<String>> {
    let t = &x.t;
    let left = sum(space(t), over_coproduct(t, |a, b| Ok(b.scaled(&a.counit())))?)?;
    let right = sum(space(t), over_coproduct(t, |a, b| Ok(a.scaled(&b.counit())))?)?;
    Ok(differ(&left, t).or(differ(&right, t)))
}

fn split_merge_coalgebra(x: &Sample, _: &dyn DerivingRule) -> Result<Option<String>> {
    let lhs = split_merge(&x.s, &x.t)?.coproduct()?;
    let mut rhs = LinComb::new();
    for (c, (s1, s2)) in over_coproduct(&x.s, |a, b| Ok((a, b)))? {
        for (e, (t1, t2)) in over_coproduct(&x.t, |a, b| Ok((a, b)))? {
            let p = split_merge(&s1, &t1)?.tensor(&split_merge(&s2, &t2)?);
            rhs.add_scaled(&p, &(&c * &e));
        }
    }
    Ok(differ(lhs, rhs))
}

fn split_merge_inverse(x: &Sample, _: &dyn DerivingRule) -> Result<Option<String>> {
    let merged = split_merge(&x.s, &x.t)?;
    Ok(differ(split(&merged, x.dim)?, x.s.tensor(&x.t)))
}

fn tangent_lift_morphism(x: &Sample, _: &dyn DerivingRule) -> Result<Option<String>> {
    let point =
        x.s.iter()
            .next()
            .map(|(k, _)| k.point.clone())
            .unwrap_or(VecQ::zero(x.dim));
    let (one, eps) = tangent_lift(&TangentProbe {
        point,
        direction: x.v.clone(),
    })?;
    let d_eps = one.tensor(&eps).plus(&eps.tensor(&one));
    Ok(differ(one.coproduct()?, one.tensor(&one))
        .or(differ(eps.coproduct()?, d_eps))
        .or(differ((one.counit(), eps.counit()), (Scalar::one(), Scalar::zero()))))
}

fn d1_constants(x: &Sample, rule: &dyn DerivingRule) -> Result<Option<String>> {
    Ok(differ(x.t.deriving_by(rule, &x.v)?.counit(), Scalar::zero()))
}

fn d2_product_rule(x: &Sample, rule: &dyn DerivingRule) -> Result<Option<String>> {
    let (t, v) = (&x.t, &x.v);
    let lhs = t.deriving_by(rule, v)?.coproduct()?;
    let rhs = pair_sum(over_coproduct(t, |a, b| {
        Ok(a.tensor(&b.deriving_by(rule, v)?)
            .plus(&a.deriving_by(rule, v)?.tensor(&b)))
    })?);
    Ok(differ(lhs, rhs))
}

fn d3_linear_maps(x: &Sample, rule: &dyn DerivingRule) -> Result<Option<String>> {
    let lhs = x.t.deriving_by(rule, &x.v)?.dereliction()?;
    Ok(differ(lhs, x.v.scale(&x.t.counit())))
}

fn d4_chain_rule(x: &Sample, rule: &dyn DerivingRule) -> Result<Option<String>> {
    let (t, v) = (&x.t, &x.v);
    let lhs = t.deriving_by(rule, v)?.promote()?;
    let parts = over_coproduct(t, |a, b| a.promote()?.deriving_by(rule, &b.deriving_by(rule, v)?))?;
    let mut rhs = BangElement::zero(Space::Bang(Box::new(space(t))));
    for (c, p) in parts {
        rhs = rhs.add(&p.scaled(&c))?;
    }
    Ok(differ(lhs, rhs))
}

fn unit(x: &El) -> Result<El> {
    BangElement::coweaken(x.space())
}

fn cocontraction_associative(x: &Sample, _: &dyn DerivingRule) -> Result<Option<String>> {
    let lhs = x.s.cocontract(&x.t)?.cocontract(&x.r)?;
    let rhs = x.s.cocontract(&x.t.cocontract(&x.r)?)?;
    Ok(differ(lhs, rhs))
}

fn cocontraction_commutative(x: &Sample, _: &dyn DerivingRule) -> Result<Option<String>> {
    Ok(differ(x.s.cocontract(&x.t)?, x.t.cocontract(&x.s)?))
}

fn cocontraction_unit(x: &Sample, _: &dyn DerivingRule) -> Result<Option<String>> {
    let u = unit(&x.t)?;
    Ok(differ(&u.cocontract(&x.t)?, &x.t).or(differ(&x.t.cocontract(&u)?, &x.t)))
}

fn bialgebra(x: &Sample, _: &dyn DerivingRule) -> Result<Option<String>> {
    let lhs = x.s.cocontract(&x.t)?.coproduct()?;
    let mut rhs = LinComb::new();
    for (c, (s1, s2)) in over_coproduct(&x.s, |a, b| Ok((a, b)))? {
        for (e, (t1, t2)) in over_coproduct(&x.t, |a, b| Ok((a, b)))? {
            rhs.add_scaled(&s1.cocontract(&t1)?.tensor(&s2.cocontract(&t2)?), &(&c * &e));
        }
    }
    let counits = differ(x.s.cocontract(&x.t)?.counit(), &x.s.counit() * &x.t.counit());
    Ok(differ(lhs, rhs).or(counits))
}

fn antipode(x: &Sample, _: &dyn DerivingRule) -> Result<Option<String>> {
    let t = &x.t;
    let expected = unit(t)?.scaled(&t.counit());
    let left = sum(space(t), over_coproduct(t, |a, b| a.antipode()?.cocontract(&b))?)?;
    let right = sum(space(t), over_coproduct(t, |a, b| a.cocontract(&b.antipode()?))?)?;
    Ok(differ(&left, &expected).or(differ(&right, &expected)))
}

fn codereliction(x: &Sample, _: &dyn DerivingRule) -> Result<Option<String>> {
    let e = BangElement::codereliction(&x.v)?;
    let u = unit(&e)?;
    Ok(differ(&e.dereliction()?, &x.v)
        .or(differ(e.counit(), Scalar::zero()))
        .or(differ(e.coproduct()?, e.tensor(&u).plus(&u.tensor(&e)))))
}

fn deriving_via_cocontraction(x: &Sample, rule: &dyn DerivingRule) -> Result<Option<String>> {
    let rhs = x.t.cocontract(&BangElement::codereliction(&x.v)?)?;
    Ok(differ(x.t.deriving_by(rule, &x.v)?, rhs))
}

fn cocontraction_rule(x: &Sample, rule: &dyn DerivingRule) -> Result<Option<String>> {
    let lhs = x.s.cocontract(&x.t)?.deriving_by(rule, &x.v)?;
    let rhs = x.s.deriving_by(rule, &x.v)?.cocontract(&x.t)?;
    Ok(differ(lhs, rhs))
}

fn dereliction_after_promotion(x: &Sample, _: &dyn DerivingRule) -> Result<Option<String>> {
    Ok(differ(&x.t.promote()?.dereliction()?, &x.t))
}

fn functorial_dereliction_after_promotion(x: &Sample, _: &dyn DerivingRule) -> Result<Option<String>> {
    let back = x.t.promote()?.functor_map(space(&x.t), |y| y.dereliction())?;
    Ok(differ(&back, &x.t))
}

fn promotion_comultiplicative(x: &Sample, _: &dyn DerivingRule) -> Result<Option<String>> {
    let t = &x.t;
    let lhs = t.promote()?.coproduct()?;
    let mut rhs = LinComb::new();
    for (c, p) in over_coproduct(t, |a, b| Ok(a.promote()?.tensor(&b.promote()?)))? {
        rhs.add_scaled(&p, &c);
    }
    Ok(differ(lhs, rhs))
}

fn promotion_coassociative(x: &Sample, _: &dyn DerivingRule) -> Result<Option<String>> {
    let once = x.t.promote()?;
    let lhs = once.promote()?;
    let rhs = once.functor_map(Space::Bang(Box::new(once.space().clone())), |y| y.promote())?;
    Ok(differ(lhs, rhs))
}

const LAWS: &[ElementLaw] = &[
    ElementLaw {
        name: "coassociativity",
        group: "coalgebra",
        summary: "(Δ⊗1)∘Δ = (1⊗Δ)∘Δ",
        check: coassociativity,
    },
    ElementLaw {
        name: "cocommutativity",
        group: "coalgebra",
        summary: "σ∘Δ = Δ",
        check: cocommutativity,
    },
    ElementLaw {
        name: "counit",
        group: "coalgebra",
        summary: "(w⊗1)∘Δ = id = (1⊗w)∘Δ",
        check: counit,
    },
    ElementLaw {
        name: "split-merge-coalgebra",
        group: "coalgebra",
        summary: "Δ∘Ψ = (Ψ⊗Ψ)∘(1⊗σ⊗1)∘(Δ⊗Δ)",
        check: split_merge_coalgebra,
    },
    ElementLaw {
        name: "split-merge-inverse",
        group: "coalgebra",
        summary: "Ψ⁻¹∘Ψ = id",
        check: split_merge_inverse,
    },
    ElementLaw {
        name: "tangent-lift",
        group: "coalgebra",
        summary: "images of 1 and ε* obey the dual-number coproduct and counit",
        check: tangent_lift_morphism,
    },
    ElementLaw {
        name: "d1-constants",
        group: "deriving",
        summary: "w∘D = 0",
        check: d1_constants,
    },
    ElementLaw {
        name: "d2-product-rule",
        group: "deriving",
        summary: "Δ∘D = (1⊗D)∘(Δ⊗1) + (D⊗1)∘(1⊗σ)∘(Δ⊗1)",
        check: d2_product_rule,
    },
    ElementLaw {
        name: "d3-linear-maps",
        group: "deriving",
        summary: "d∘D = w⊗1",
        check: d3_linear_maps,
    },
    ElementLaw {
        name: "d4-chain-rule",
        group: "deriving",
        summary: "δ∘D = D_{!V}∘(δ⊗D)∘(Δ⊗1)",
        check: d4_chain_rule,
    },
    ElementLaw {
        name: "cocontraction-associative",
        group: "hopf",
        summary: "∇∘(∇⊗1) = ∇∘(1⊗∇)",
        check: cocontraction_associative,
    },
    ElementLaw {
        name: "cocontraction-commutative",
        group: "hopf",
        summary: "∇∘σ = ∇",
        check: cocontraction_commutative,
    },
    ElementLaw {
        name: "cocontraction-unit",
        group: "hopf",
        summary: "∇∘(u⊗1) = id = ∇∘(1⊗u)",
        check: cocontraction_unit,
    },
    ElementLaw {
        name: "bialgebra",
        group: "hopf",
        summary: "Δ∘∇ = (∇⊗∇)∘(1⊗σ⊗1)∘(Δ⊗Δ) and w∘∇ = w⊗w",
        check: bialgebra,
    },
    ElementLaw {
        name: "antipode",
        group: "hopf",
        summary: "∇∘(S⊗1)∘Δ = u∘w = ∇∘(1⊗S)∘Δ",
        check: antipode,
    },
    ElementLaw {
        name: "codereliction",
        group: "hopf",
        summary: "d∘d̄ = id, w∘d̄ = 0, Δ∘d̄ = d̄⊗u + u⊗d̄",
        check: codereliction,
    },
    ElementLaw {
        name: "deriving-via-cocontraction",
        group: "hopf",
        summary: "D = ∇∘(1⊗d̄)",
        check: deriving_via_cocontraction,
    },
    ElementLaw {
        name: "cocontraction-rule",
        group: "hopf",
        summary: "D(∇(s⊗t)⊗ν) = ∇(D(s⊗ν)⊗t)",
        check: cocontraction_rule,
    },
    ElementLaw {
        name: "dereliction-after-promotion",
        group: "comonad",
        summary: "d_{!V}∘δ = id",
        check: dereliction_after_promotion,
    },
    ElementLaw {
        name: "functorial-dereliction-after-promotion",
        group: "comonad",
        summary: "!d∘δ = id",
        check: functorial_dereliction_after_promotion,
    },
    ElementLaw {
        name: "promotion-comultiplicative",
        group: "comonad",
        summary: "Δ_{!!V}∘δ = (δ⊗δ)∘Δ",
        check: promotion_comultiplicative,
    },
    ElementLaw {
        name: "promotion-coassociative",
        group: "comonad",
        summary: "δ_{!V}∘δ = !δ∘δ",
        check: promotion_coassociative,
    },
];

pub(super) fn register(r: &mut LawRegistry) {
    for law in LAWS {
        r.register(Arc::new(*law));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bang::{AppendNegated, Prepend};
    use rand::SeedableRng;

    fn law(name: &str) -> &'static ElementLaw {
        LAWS.iter().find(|l| l.name == name).unwrap()
    }

    #[test]
    fn mutant_breaks_chain_rule_and_shrinks() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut seen = false;
        for _ in 0..20 {
            let x = Sample::draw(2, 3, &mut rng).unwrap();
            assert!(d4_chain_rule(&x, &Prepend).unwrap().is_none());
            if d4_chain_rule(&x, &AppendNegated).unwrap().is_some() {
                let small = law("d4-chain-rule").shrink(x, &AppendNegated);
                assert_eq!(small.t.len(), 1);
                assert!(d4_chain_rule(&small, &AppendNegated).unwrap().is_some());
                seen = true;
            }
        }
        assert!(seen);
    }

    #[test]
    fn mutant_respects_product_rule() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..20 {
            let x = Sample::draw(2, 3, &mut rng).unwrap();
            assert!(d2_product_rule(&x, &AppendNegated).unwrap().is_none());
            assert!(d1_constants(&x, &AppendNegated).unwrap().is_none());
        }
    }
}
