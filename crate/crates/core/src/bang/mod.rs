//! The cofree cocommutative coalgebra `!V` in its ket presentation.
//!
//! An element of `!V` is a finite linear combination of kets `|ν₁,…,ν_s⟩_P`:
//! a point `P` together with an unordered list of tangents. Kets are
//! multilinear and symmetric in the tangent slots, while kets at distinct
//! points are linearly independent. Over a space with a basis this gives a
//! canonical form: every tangent is expanded over the basis, tangent lists
//! are sorted, and like terms are merged.
//!
//! The entry type is generic so that `!!V` (kets whose point and tangents
//! are themselves elements of `!V`) is canonical as well.

mod deriving;
mod json;
mod maps;

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::exact::{Scalar, VecQ};
use crate::lincomb::LinComb;

pub use deriving::{AppendNegated, DerivingRegistry, DerivingRule, Prepend};
pub use json::{bang_from_json, bang_to_json};
pub use maps::{split, split_merge, tangent_lift, TangentProbe};

/// Shape of a space with a canonical basis: a base space `k^n`, or `!` of one.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Space {
    Base(usize),
    Bang(Box<Space>),
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Space::Base(n) => write!(f, "Q^{n}"),
            Space::Bang(s) => write!(f, "!({s})"),
        }
    }
}

fn check_space(expected: &Space, found: &Space) -> Result<()> {
    if expected != found {
        return Err(Error::SpaceMismatch {
            expected: expected.to_string(),
            found: found.to_string(),
        });
    }
    Ok(())
}

/// Values that can appear as points and tangents of canonical kets.
pub trait Entry: Clone + Ord + fmt::Debug + Send + Sync {
    fn space(&self) -> Space;
    fn zero_in(space: &Space) -> Result<Self>;
    fn plus(&self, other: &Self) -> Result<Self>;
    fn scale(&self, c: &Scalar) -> Self;
    /// Coordinates over the canonical basis; basis elements are returned as
    /// values of `Self`. Zero coordinates are omitted.
    fn basis_expand(&self) -> Vec<(Self, Scalar)>;
}

impl Entry for VecQ {
    fn space(&self) -> Space {
        Space::Base(self.dim())
    }

    fn zero_in(space: &Space) -> Result<Self> {
        match space {
            Space::Base(n) => Ok(VecQ::zero(*n)),
            other => Err(Error::SpaceMismatch {
                expected: "a base space".into(),
                found: other.to_string(),
            }),
        }
    }

    fn plus(&self, other: &Self) -> Result<Self> {
        self.add(other)
    }

    fn scale(&self, c: &Scalar) -> Self {
        VecQ::scale(self, c)
    }

    fn basis_expand(&self) -> Vec<(Self, Scalar)> {
        self.coords()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (VecQ::unit(self.dim(), i), c.clone()))
            .collect()
    }
}

/// `|ν₁,…,ν_s⟩_P`. The tangent list is a multiset; canonical kets keep it
/// sorted.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Ket<E> {
    pub point: E,
    pub tangents: Vec<E>,
}

impl<E> Ket<E> {
    pub fn vacuum(point: E) -> Ket<E> {
        Ket {
            point,
            tangents: Vec::new(),
        }
    }

    pub fn new(point: E, tangents: Vec<E>) -> Ket<E> {
        Ket { point, tangents }
    }

    /// Number of tangents `s`.
    pub fn order(&self) -> usize {
        self.tangents.len()
    }
}

impl<E: fmt::Debug> fmt::Debug for Ket<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "|")?;
        if self.tangents.is_empty() {
            write!(f, "∅")?;
        }
        for (i, t) in self.tangents.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{t:?}")?;
        }
        write!(f, "⟩_{:?}", self.point)
    }
}

/// A canonical element of `!V`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BangElement<E: Entry> {
    space: Space,
    terms: LinComb<Ket<E>>,
}

/// Tensor products of canonical elements, keyed by tuples of basis elements.
pub type TensorElement<K> = LinComb<K>;

impl<E: Entry> BangElement<E> {
    pub fn zero(space: Space) -> Self {
        BangElement {
            space,
            terms: LinComb::new(),
        }
    }

    /// Build from raw, possibly non-canonical kets: expand each tangent over
    /// the basis, sort tangent lists, merge like terms, drop zeros.
    pub fn canonicalize<I>(space: Space, raw: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Scalar, Ket<E>)>,
    {
        let mut terms = LinComb::new();
        for (c, ket) in raw {
            if c.is_zero() {
                continue;
            }
            check_space(&space, &ket.point.space())?;
            for t in &ket.tangents {
                check_space(&space, &t.space())?;
            }
            // Multilinear expansion of the tangent slots.
            let mut partial: Vec<(Vec<E>, Scalar)> = vec![(Vec::new(), c)];
            for t in &ket.tangents {
                let coords = t.basis_expand();
                let mut next = Vec::with_capacity(partial.len() * coords.len());
                for (prefix, pc) in &partial {
                    for (b, bc) in &coords {
                        let mut v = prefix.clone();
                        v.push(b.clone());
                        next.push((v, pc * bc));
                    }
                }
                partial = next;
            }
            for (mut tangents, coeff) in partial {
                tangents.sort();
                terms.add_term(Ket::new(ket.point.clone(), tangents), coeff);
            }
        }
        Ok(BangElement { space, terms })
    }

    /// The single ket `|tangents⟩_point`, canonicalized.
    pub fn ket(point: E, tangents: Vec<E>) -> Result<Self> {
        let space = point.space();
        Self::canonicalize(space, [(Scalar::one(), Ket::new(point, tangents))])
    }

    /// The group-like element `|∅⟩_P`.
    pub fn vacuum(point: E) -> Self {
        let space = point.space();
        BangElement {
            space,
            terms: LinComb::basis(Ket::vacuum(point)),
        }
    }

    /// Wrap a ket already known to be canonical.
    pub(crate) fn from_canonical_ket(space: Space, ket: Ket<E>) -> Self {
        BangElement {
            space,
            terms: LinComb::basis(ket),
        }
    }

    /// The underlying space `V` of `!V`.
    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn terms(&self) -> &LinComb<Ket<E>> {
        &self.terms
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Ket<E>, &Scalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_space(&self.space, &other.space)?;
        Ok(BangElement {
            space: self.space.clone(),
            terms: self.terms.plus(&other.terms),
        })
    }

    pub fn scaled(&self, c: &Scalar) -> Self {
        BangElement {
            space: self.space.clone(),
            terms: self.terms.scale(c),
        }
    }

    /// Largest tangent count among the terms.
    pub fn max_order(&self) -> usize {
        self.terms.keys().map(Ket::order).max().unwrap_or(0)
    }
}

impl<E: Entry> Entry for BangElement<E> {
    fn space(&self) -> Space {
        Space::Bang(Box::new(self.space.clone()))
    }

    fn zero_in(space: &Space) -> Result<Self> {
        match space {
            Space::Bang(inner) => Ok(BangElement::zero((**inner).clone())),
            other => Err(Error::SpaceMismatch {
                expected: "a bang space".into(),
                found: other.to_string(),
            }),
        }
    }

    fn plus(&self, other: &Self) -> Result<Self> {
        self.add(other)
    }

    fn scale(&self, c: &Scalar) -> Self {
        self.scaled(c)
    }

    fn basis_expand(&self) -> Vec<(Self, Scalar)> {
        self.terms
            .iter()
            .map(|(k, c)| {
                (
                    BangElement::from_canonical_ket(self.space.clone(), k.clone()),
                    c.clone(),
                )
            })
            .collect()
    }
}

impl<E: Entry> fmt::Debug for BangElement<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(&self.terms, f)
    }
}

/// Group the terms of an element by point, for display or inspection.
pub fn by_point<E: Entry>(t: &BangElement<E>) -> BTreeMap<E, Vec<(Ket<E>, Scalar)>> {
    let mut out: BTreeMap<E, Vec<(Ket<E>, Scalar)>> = BTreeMap::new();
    for (k, c) in t.iter() {
        out.entry(k.point.clone()).or_default().push((k.clone(), c.clone()));
    }
    out
}
