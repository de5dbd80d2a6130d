//! Duality between the bang structure maps and polynomial calculus under
//! the residue pairing. Left sides use the structure maps, right sides only
//! polynomial operations.

use std::sync::Arc;

use super::bang::{differ, ElementLaw};
use super::{LawRegistry, Sample};
use crate::bang::{BangElement, DerivingRule};
use crate::error::Result;
use crate::exact::Scalar;
use crate::poly::{pair_split, pair_tensor, residue_pairing, Polynomial};

fn coproduct_multiplication(x: &Sample, _: &dyn DerivingRule) -> Result<Option<String>> {
    let lhs = pair_tensor(&x.t.coproduct()?, &x.f, &x.g)?;
    Ok(differ(lhs, residue_pairing(&x.t, &x.f.mul(&x.g)?)?))
}

fn cocontraction_substitution(x: &Sample, _: &dyn DerivingRule) -> Result<Option<String>> {
    let lhs = residue_pairing(&x.s.cocontract(&x.t)?, &x.f)?;
    Ok(differ(lhs, pair_split(&x.s.tensor(&x.t), &x.f.shift_doubling())?))
}

fn deriving_differentiation(x: &Sample, rule: &dyn DerivingRule) -> Result<Option<String>> {
    let lhs = residue_pairing(&x.t.deriving_by(rule, &x.v)?, &x.f)?;
    Ok(differ(lhs, residue_pairing(&x.t, &x.f.directional(&x.v)?)?))
}

fn unit_counit_codereliction(x: &Sample, _: &dyn DerivingRule) -> Result<Option<String>> {
    let origin = vec![Scalar::zero(); x.dim];
    let u = BangElement::coweaken(x.t.space())?;
    let unit = differ(residue_pairing(&u, &x.f)?, x.f.eval(&origin)?);
    let one = Polynomial::constant(Scalar::one(), x.dim);
    let counit = differ(x.t.counit(), residue_pairing(&x.t, &one)?);
    let e = BangElement::codereliction(&x.v)?;
    let coder = differ(residue_pairing(&e, &x.f)?, x.f.directional(&x.v)?.eval(&origin)?);
    Ok(unit.or(counit).or(coder))
}

fn antipode_negation(x: &Sample, _: &dyn DerivingRule) -> Result<Option<String>> {
    let lhs = residue_pairing(&x.t.antipode()?, &x.f)?;
    Ok(differ(lhs, residue_pairing(&x.t, &x.f.negate_vars())?))
}

const LAWS: &[ElementLaw] = &[
    ElementLaw {
        name: "pairing-coproduct",
        group: "pairing",
        summary: "⟨Δt, f⊗g⟩ = ⟨t, f·g⟩",
        check: coproduct_multiplication,
    },
    ElementLaw {
        name: "pairing-cocontraction",
        group: "pairing",
        summary: "⟨∇(s⊗t), f⟩ = ⟨s⊗t, f(x+y)⟩",
        check: cocontraction_substitution,
    },
    ElementLaw {
        name: "pairing-deriving",
        group: "pairing",
        summary: "⟨D(t⊗ν), f⟩ = ⟨t, ∂_ν f⟩",
        check: deriving_differentiation,
    },
    ElementLaw {
        name: "pairing-unit-counit-codereliction",
        group: "pairing",
        summary: "⟨u, f⟩ = f(0), w(t) = ⟨t, 1⟩, ⟨d̄ν, f⟩ = ∂_ν f(0)",
        check: unit_counit_codereliction,
    },
    ElementLaw {
        name: "pairing-antipode",
        group: "pairing",
        summary: "⟨S t, f⟩ = ⟨t, f(−x)⟩",
        check: antipode_negation,
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
    use crate::bang::Prepend;
    use crate::exact::VecQ;

    #[test]
    fn constant_polynomial_pairs_with_counit() {
        let t = BangElement::ket(VecQ::from_ints(&[1, 2]), vec![]).unwrap();
        let one = Polynomial::constant(Scalar::from_int(3), 2);
        assert_eq!(residue_pairing(&t, &one).unwrap(), Scalar::from_int(3));
        let x = Sample {
            dim: 2,
            s: t.clone(),
            t: t.clone(),
            r: t,
            v: VecQ::from_ints(&[0, 1]),
            f: Polynomial::parse("x1 x2^2", 2).unwrap(),
            g: one,
        };
        for law in LAWS {
            assert!((law.check)(&x, &Prepend).unwrap().is_none(), "{}", law.name);
        }
    }
}
