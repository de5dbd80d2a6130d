//! Finite formal linear combinations over an ordered basis.

use std::collections::btree_map::{self, BTreeMap};
use std::fmt;

use crate::exact::Scalar;

/// An element of the free rational vector space on `K`. Zero coefficients
/// are never stored, so structural equality is equality of vectors.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinComb<K: Ord> {
    terms: BTreeMap<K, Scalar>,
}

impl<K: Ord> Default for LinComb<K> {
    fn default() -> Self {
        LinComb { terms: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> LinComb<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn basis(k: K) -> Self {
        let mut out = Self::new();
        out.add_term(k, Scalar::one());
        out
    }

    pub fn add_term(&mut self, k: K, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(k) {
            btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &LinComb<K>, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (k, v) in &other.terms {
            self.add_term(k.clone(), v * c);
        }
    }

    pub fn plus(&self, other: &LinComb<K>) -> LinComb<K> {
        let mut out = self.clone();
        out.add_scaled(other, &Scalar::one());
        out
    }

    pub fn minus(&self, other: &LinComb<K>) -> LinComb<K> {
        let mut out = self.clone();
        out.add_scaled(other, &Scalar::from_int(-1));
        out
    }

    pub fn scale(&self, c: &Scalar) -> LinComb<K> {
        let mut out = LinComb::new();
        out.add_scaled(self, c);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, k: &K) -> Scalar {
        self.terms.get(k).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &Scalar)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.terms.keys()
    }

    /// Extend `f`, given on basis elements, linearly.
    pub fn map_linear<K2, F>(&self, mut f: F) -> LinComb<K2>
    where
        K2: Ord + Clone,
        F: FnMut(&K) -> LinComb<K2>,
    {
        let mut out = LinComb::new();
        for (k, c) in &self.terms {
            out.add_scaled(&f(k), c);
        }
        out
    }

    pub fn try_map_linear<K2, E, F>(&self, mut f: F) -> Result<LinComb<K2>, E>
    where
        K2: Ord + Clone,
        F: FnMut(&K) -> Result<LinComb<K2>, E>,
    {
        let mut out = LinComb::new();
        for (k, c) in &self.terms {
            out.add_scaled(&f(k)?, c);
        }
        Ok(out)
    }

    /// The tensor product `self ⊗ other` on the product basis.
    pub fn tensor<K2: Ord + Clone>(&self, other: &LinComb<K2>) -> LinComb<(K, K2)> {
        let mut out = LinComb::new();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_term((a.clone(), b.clone()), x * y);
            }
        }
        out
    }
}

impl<K: Ord + Clone> FromIterator<(K, Scalar)> for LinComb<K> {
    fn from_iter<I: IntoIterator<Item = (K, Scalar)>>(iter: I) -> Self {
        let mut out = LinComb::new();
        for (k, c) in iter {
            out.add_term(k, c);
        }
        out
    }
}

impl<K: Ord + fmt::Debug> fmt::Debug for LinComb<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}·{k:?}")?;
        }
        Ok(())
    }
}

/// The symmetry `σ(a ⊗ b) = b ⊗ a`.
pub fn swap<A: Ord + Clone, B: Ord + Clone>(x: &LinComb<(A, B)>) -> LinComb<(B, A)> {
    x.iter()
        .map(|((a, b), c)| ((b.clone(), a.clone()), c.clone()))
        .collect()
}
