//! Structural maps of `!V`: the coalgebra (Δ, w), dereliction d, promotion δ,
//! the deriving transformation D, and the Hopf structure (∇, u, S) with
//! codereliction d̄ and the direct-sum isomorphism Ψ.

use super::{check_space, BangElement, DerivingRule, Entry, Ket, Prepend, Space, TensorElement};
use crate::combinatorics::{select, set_partitions, subsets};
use crate::error::{Error, Result};
use crate::exact::{Scalar, VecQ};
use crate::lincomb::LinComb;

impl<E: Entry> BangElement<E> {
    /// `Δ|ν₁,…,ν_s⟩_P = Σ_I |ν_I⟩_P ⊗ |ν_{I^c}⟩_P` over all subsets `I`.
    pub fn coproduct(&self) -> Result<TensorElement<(Ket<E>, Ket<E>)>> {
        let mut out = LinComb::new();
        for (ket, c) in self.iter() {
            for (left, right) in ket_coproduct(ket)? {
                out.add_term((left, right), c.clone());
            }
        }
        Ok(out)
    }

    /// The counit: total coefficient of the tangent-free kets.
    pub fn counit(&self) -> Scalar {
        self.iter()
            .filter(|(k, _)| k.tangents.is_empty())
            .map(|(_, c)| c.clone())
            .sum()
    }

    /// `d|∅⟩_P = P`, `d|ν⟩_P = ν`, and zero on kets with two or more tangents.
    pub fn dereliction(&self) -> Result<E> {
        let mut acc = E::zero_in(self.space())?;
        for (ket, c) in self.iter() {
            let v = match ket.tangents.len() {
                0 => &ket.point,
                1 => &ket.tangents[0],
                _ => continue,
            };
            acc = acc.plus(&v.scale(c))?;
        }
        Ok(acc)
    }

    /// `δ|ν₁,…,ν_s⟩_P = Σ_C | |ν_{C₁}⟩_P, …, |ν_{C_l}⟩_P ⟩_Q` over set
    /// partitions `C`, with `Q = |∅⟩_P`.
    pub fn promote(&self) -> Result<BangElement<BangElement<E>>> {
        let mut raw = Vec::new();
        for (ket, c) in self.iter() {
            let q = BangElement::vacuum(ket.point.clone());
            for partition in set_partitions(ket.order())? {
                let tangents = partition
                    .iter()
                    .map(|block| {
                        let sub = block.iter().map(|&i| ket.tangents[i].clone()).collect();
                        BangElement::from_canonical_ket(self.space().clone(), Ket::new(ket.point.clone(), sub))
                    })
                    .collect();
                raw.push((c.clone(), Ket::new(q.clone(), tangents)));
            }
        }
        BangElement::canonicalize(Space::Bang(Box::new(self.space().clone())), raw)
    }

    /// `D(|ν₁,…,ν_s⟩_P ⊗ ν) = |ν,ν₁,…,ν_s⟩_P`, extended bilinearly.
    pub fn deriving(&self, v: &E) -> Result<Self> {
        self.deriving_by(&Prepend, v)
    }

    /// The deriving transformation as arranged by `rule`.
    pub fn deriving_by(&self, rule: &dyn DerivingRule, v: &E) -> Result<Self> {
        check_space(self.space(), &v.space())?;
        let mut raw = Vec::with_capacity(self.len());
        for (ket, c) in self.iter() {
            let (pos, coeff) = rule.arrange(ket.order());
            let mut tangents = ket.tangents.clone();
            tangents.insert(pos, v.clone());
            raw.push((c * &coeff, Ket::new(ket.point.clone(), tangents)));
        }
        BangElement::canonicalize(self.space().clone(), raw)
    }

    /// Cocontraction `∇(|ν⟩_P ⊗ |ω⟩_Q) = |ν,ω⟩_{P+Q}`.
    pub fn cocontract(&self, other: &Self) -> Result<Self> {
        check_space(self.space(), other.space())?;
        cocontract_tensor(self.space(), &self.tensor(other))
    }

    /// Antipode `S|ν₁,…,ν_s⟩_P = |−ν₁,…,−ν_s⟩_{−P}`.
    pub fn antipode(&self) -> Result<Self> {
        let minus = Scalar::from_int(-1);
        let raw: Vec<_> = self
            .iter()
            .map(|(ket, c)| {
                let tangents = ket.tangents.iter().map(|t| t.scale(&minus)).collect();
                (c.clone(), Ket::new(ket.point.scale(&minus), tangents))
            })
            .collect();
        BangElement::canonicalize(self.space().clone(), raw)
    }

    /// Coweakening: the unit `u(1) = |∅⟩_0`.
    pub fn coweaken(space: &Space) -> Result<Self> {
        Ok(BangElement::vacuum(E::zero_in(space)?))
    }

    /// Codereliction `ν ↦ |ν⟩_0`.
    pub fn codereliction(v: &E) -> Result<Self> {
        let zero = E::zero_in(&v.space())?;
        BangElement::ket(zero, vec![v.clone()])
    }

    /// `self ⊗ other` on the product basis of kets.
    pub fn tensor(&self, other: &Self) -> TensorElement<(Ket<E>, Ket<E>)> {
        self.terms().tensor(other.terms())
    }

    /// `!f|ν₁,…,ν_s⟩_P = |fν₁,…,fν_s⟩_{fP}` for a linear `f` into `space`.
    pub fn functor_map<F: Entry>(&self, space: Space, f: impl Fn(&E) -> Result<F>) -> Result<BangElement<F>> {
        let mut raw = Vec::with_capacity(self.len());
        for (ket, c) in self.iter() {
            let tangents = ket.tangents.iter().map(&f).collect::<Result<_>>()?;
            raw.push((c.clone(), Ket::new(f(&ket.point)?, tangents)));
        }
        BangElement::canonicalize(space, raw)
    }

    /// Wrap one canonical ket (as produced by the maps above) as an element.
    pub fn of_ket(&self, ket: &Ket<E>) -> Self {
        BangElement::from_canonical_ket(self.space().clone(), ket.clone())
    }
}

/// Subset expansion of one canonical ket. Sub-kets of a sorted tangent list
/// are sorted, so the result is canonical.
pub(crate) fn ket_coproduct<E: Clone>(ket: &Ket<E>) -> Result<Vec<(Ket<E>, Ket<E>)>> {
    let s = ket.order();
    let full = if s == 0 { 0 } else { (1u32 << s) - 1 };
    Ok(subsets(s)?
        .map(|mask| {
            (
                Ket::new(ket.point.clone(), select(&ket.tangents, mask)),
                Ket::new(ket.point.clone(), select(&ket.tangents, full & !mask)),
            )
        })
        .collect())
}

/// `∇` on `!V ⊗ !V`.
pub fn cocontract_tensor<E: Entry>(space: &Space, x: &TensorElement<(Ket<E>, Ket<E>)>) -> Result<BangElement<E>> {
    let mut raw = Vec::with_capacity(x.len());
    for ((a, b), c) in x.iter() {
        let mut tangents = a.tangents.clone();
        tangents.extend(b.tangents.iter().cloned());
        raw.push((c.clone(), Ket::new(a.point.plus(&b.point)?, tangents)));
    }
    BangElement::canonicalize(space.clone(), raw)
}

fn base_dim(space: &Space) -> Result<usize> {
    match space {
        Space::Base(n) => Ok(*n),
        other => Err(Error::SpaceMismatch {
            expected: "a base space".into(),
            found: other.to_string(),
        }),
    }
}

fn embed(v: &VecQ, before: usize, after: usize) -> Result<VecQ> {
    let mut coords = vec![Scalar::zero(); before];
    coords.extend(v.coords().iter().cloned());
    coords.extend(std::iter::repeat_n(Scalar::zero(), after));
    VecQ::new(coords)
}

/// `Ψ: !V₁ ⊗ !V₂ → !(V₁ ⊕ V₂)`, `|ν…⟩_P ⊗ |ω…⟩_Q ↦ |(ν,0)…,(0,ω)…⟩_{(P,Q)}`.
pub fn split_merge(s: &BangElement<VecQ>, t: &BangElement<VecQ>) -> Result<BangElement<VecQ>> {
    let n1 = base_dim(s.space())?;
    let n2 = base_dim(t.space())?;
    let mut raw = Vec::with_capacity(s.len() * t.len());
    for ((a, b), c) in s.tensor(t).iter() {
        let mut tangents = Vec::with_capacity(a.order() + b.order());
        for nu in &a.tangents {
            tangents.push(embed(nu, 0, n2)?);
        }
        for om in &b.tangents {
            tangents.push(embed(om, n1, 0)?);
        }
        raw.push((c.clone(), Ket::new(a.point.concat(&b.point)?, tangents)));
    }
    BangElement::canonicalize(Space::Base(n1 + n2), raw)
}

/// `Ψ⁻¹`: split an element of `!(V₁ ⊕ V₂)` with `dim V₁ = first` by
/// coordinate block. Canonical tangents are basis vectors, so each lies in
/// exactly one block.
pub fn split(x: &BangElement<VecQ>, first: usize) -> Result<TensorElement<(Ket<VecQ>, Ket<VecQ>)>> {
    let n = base_dim(x.space())?;
    if first == 0 || first >= n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: first,
        });
    }
    let cut = |v: &VecQ| -> Result<(VecQ, VecQ)> {
        Ok((
            VecQ::new(v.coords()[..first].to_vec())?,
            VecQ::new(v.coords()[first..].to_vec())?,
        ))
    };
    let mut out = LinComb::new();
    for (ket, c) in x.iter() {
        let (p, q) = cut(&ket.point)?;
        let (mut left, mut right) = (Vec::new(), Vec::new());
        for t in &ket.tangents {
            let (a, b) = cut(t)?;
            match (a.is_zero(), b.is_zero()) {
                (false, true) => left.push(a),
                (true, false) => right.push(b),
                _ => return Err(Error::Shape(format!("tangent {t:?} is not a canonical basis vector"))),
            }
        }
        left.sort();
        right.sort();
        out.add_term((Ket::new(p, left), Ket::new(q, right)), c.clone());
    }
    Ok(out)
}

/// A point with a direction: the data of a coalgebra morphism out of the
/// dual-numbers coalgebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TangentProbe {
    pub point: VecQ,
    pub direction: VecQ,
}

/// Images `(Ψ(1), Ψ(ε*)) = (|∅⟩_P, |ν⟩_P)` of the coalgebra morphism from
/// the dual numbers determined by the probe.
pub fn tangent_lift(probe: &TangentProbe) -> Result<(BangElement<VecQ>, BangElement<VecQ>)> {
    if probe.point.dim() != probe.direction.dim() {
        return Err(Error::DimensionMismatch {
            expected: probe.point.dim(),
            found: probe.direction.dim(),
        });
    }
    Ok((
        BangElement::vacuum(probe.point.clone()),
        BangElement::ket(probe.point.clone(), vec![probe.direction.clone()])?,
    ))
}
