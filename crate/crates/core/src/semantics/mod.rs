//! Vector-space semantics of formulas and proofs.
//!
//! Values of `!X` are kept as formal sums of kets whose entries are
//! themselves semantic values; equality of such values is decided by
//! observation (see [`observe`]).

mod denote;
pub mod json;
pub mod observe;

use std::fmt;
use std::sync::Arc;

use crate::bang::Ket;
use crate::combinatorics::subsets;
use crate::error::{Error, Result};
use crate::exact::{Matrix, Scalar, VecQ};
use crate::syntax::Formula;

pub use denote::{denote_proof, derivative_eval, nl_eval, Denotation};
pub use observe::{extensional_equal, extensional_witness, observe, Obs, ObsKey, ProbeConfig};

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum SemSpace {
    Base(usize),
    Tensor(Box<SemSpace>, Box<SemSpace>),
    Hom(Box<SemSpace>, Box<SemSpace>),
    Bang(Box<SemSpace>),
}

impl SemSpace {
    pub fn tensor(a: SemSpace, b: SemSpace) -> SemSpace {
        SemSpace::Tensor(Box::new(a), Box::new(b))
    }

    pub fn hom(a: SemSpace, b: SemSpace) -> SemSpace {
        SemSpace::Hom(Box::new(a), Box::new(b))
    }

    pub fn bang(a: SemSpace) -> SemSpace {
        SemSpace::Bang(Box::new(a))
    }

    /// `Some((m, n))` for `Hom(k^m, k^n)`.
    pub fn matrix_shape(&self) -> Option<(usize, usize)> {
        match self {
            SemSpace::Hom(a, b) => match (&**a, &**b) {
                (SemSpace::Base(m), SemSpace::Base(n)) => Some((*m, *n)),
                _ => None,
            },
            _ => None,
        }
    }

    /// Finite-dimensional spaces whose values are stored as coordinates.
    pub fn flat_dim(&self) -> Option<usize> {
        match self {
            SemSpace::Base(n) => Some(*n),
            _ => self.matrix_shape().map(|(m, n)| m * n),
        }
    }
}

impl fmt::Display for SemSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SemSpace::Base(n) => write!(f, "k^{n}"),
            SemSpace::Tensor(a, b) => write!(f, "({a} ⊗ {b})"),
            SemSpace::Hom(a, b) => write!(f, "Hom({a}, {b})"),
            SemSpace::Bang(a) => write!(f, "!{a}"),
        }
    }
}

impl fmt::Debug for SemSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub fn denote_formula(f: &Formula) -> SemSpace {
    match f {
        Formula::Var { dim, .. } => SemSpace::Base(*dim),
        Formula::Tensor(a, b) => SemSpace::tensor(denote_formula(a), denote_formula(b)),
        Formula::Lolli(a, b) => SemSpace::hom(denote_formula(a), denote_formula(b)),
        Formula::Bang(a) => SemSpace::bang(denote_formula(a)),
    }
}

pub type MapFn = dyn Fn(&SemValue) -> Result<SemValue> + Send + Sync;
pub type SemKet = Ket<SemValue>;

/// An element of a semantic space.
#[derive(Clone)]
pub enum SemValue {
    Base(VecQ),
    /// `Hom(k^m, k^n)` as an `n × m` matrix.
    Mat(Matrix),
    Tensor(TensorVal),
    Bang(BangVal),
    Map(MapVal),
}

/// A formal sum of pure tensors.
#[derive(Clone)]
pub struct TensorVal {
    pub left: SemSpace,
    pub right: SemSpace,
    pub terms: Vec<(Scalar, SemValue, SemValue)>,
}

/// A formal sum of kets over `inner`.
#[derive(Clone)]
pub struct BangVal {
    pub inner: SemSpace,
    pub terms: Vec<(Scalar, SemKet)>,
}

/// A linear map given by an evaluation procedure.
#[derive(Clone)]
pub struct MapVal {
    pub dom: SemSpace,
    pub cod: SemSpace,
    pub f: Arc<MapFn>,
}

fn mismatch(expected: &SemSpace, found: &SemSpace) -> Error {
    Error::SpaceMismatch {
        expected: expected.to_string(),
        found: found.to_string(),
    }
}

impl SemValue {
    pub fn space(&self) -> SemSpace {
        match self {
            SemValue::Base(v) => SemSpace::Base(v.dim()),
            SemValue::Mat(m) => SemSpace::hom(SemSpace::Base(m.cols()), SemSpace::Base(m.rows())),
            SemValue::Tensor(t) => SemSpace::tensor(t.left.clone(), t.right.clone()),
            SemValue::Bang(b) => SemSpace::bang(b.inner.clone()),
            SemValue::Map(m) => SemSpace::hom(m.dom.clone(), m.cod.clone()),
        }
    }

    pub fn expect_space(&self, space: &SemSpace) -> Result<()> {
        let found = self.space();
        if &found != space {
            return Err(mismatch(space, &found));
        }
        Ok(())
    }

    pub fn zero(space: &SemSpace) -> SemValue {
        match space {
            SemSpace::Base(n) => SemValue::Base(VecQ::zero(*n)),
            SemSpace::Tensor(a, b) => SemValue::Tensor(TensorVal {
                left: (**a).clone(),
                right: (**b).clone(),
                terms: Vec::new(),
            }),
            SemSpace::Bang(a) => SemValue::Bang(BangVal::zero((**a).clone())),
            SemSpace::Hom(a, b) => match space.matrix_shape() {
                Some((m, n)) => SemValue::Mat(Matrix::zero(n, m)),
                None => {
                    let cod = (**b).clone();
                    let out = cod.clone();
                    SemValue::Map(MapVal {
                        dom: (**a).clone(),
                        cod,
                        f: Arc::new(move |_| Ok(SemValue::zero(&out))),
                    })
                }
            },
        }
    }

    /// A linear map from an evaluation procedure. Maps between base spaces
    /// are materialized as matrices.
    pub fn map(dom: SemSpace, cod: SemSpace, f: Arc<MapFn>) -> Result<SemValue> {
        if let (SemSpace::Base(m), SemSpace::Base(n)) = (&dom, &cod) {
            let mut columns = Vec::with_capacity(*m);
            for j in 0..*m {
                match f(&SemValue::Base(VecQ::unit(*m, j)))? {
                    SemValue::Base(v) if v.dim() == *n => columns.push(v),
                    other => return Err(mismatch(&cod, &other.space())),
                }
            }
            return Ok(SemValue::Mat(Matrix::from_columns(*n, &columns)?));
        }
        Ok(SemValue::Map(MapVal { dom, cod, f }))
    }

    pub fn add(&self, other: &SemValue) -> Result<SemValue> {
        Ok(match (self, other) {
            (SemValue::Base(a), SemValue::Base(b)) => SemValue::Base(a.add(b)?),
            (SemValue::Mat(a), SemValue::Mat(b)) => SemValue::Mat(a.add(b)?),
            (SemValue::Tensor(a), SemValue::Tensor(b)) if a.left == b.left && a.right == b.right => {
                let mut terms = a.terms.clone();
                terms.extend(b.terms.iter().cloned());
                SemValue::Tensor(TensorVal { terms, ..a.clone() })
            }
            (SemValue::Bang(a), SemValue::Bang(b)) if a.inner == b.inner => {
                let mut terms = a.terms.clone();
                terms.extend(b.terms.iter().cloned());
                SemValue::Bang(BangVal {
                    inner: a.inner.clone(),
                    terms,
                })
            }
            (SemValue::Map(a), SemValue::Map(b)) if a.dom == b.dom && a.cod == b.cod => {
                let (f, g) = (a.f.clone(), b.f.clone());
                SemValue::Map(MapVal {
                    dom: a.dom.clone(),
                    cod: a.cod.clone(),
                    f: Arc::new(move |x| f(x)?.add(&g(x)?)),
                })
            }
            _ => return Err(mismatch(&self.space(), &other.space())),
        })
    }

    pub fn scale(&self, c: &Scalar) -> SemValue {
        match self {
            SemValue::Base(v) => SemValue::Base(v.scale(c)),
            SemValue::Mat(m) => SemValue::Mat(m.scale(c)),
            SemValue::Tensor(t) => SemValue::Tensor(TensorVal {
                terms: t.terms.iter().map(|(k, a, b)| (k * c, a.clone(), b.clone())).collect(),
                ..t.clone()
            }),
            SemValue::Bang(b) => SemValue::Bang(BangVal {
                inner: b.inner.clone(),
                terms: b.terms.iter().map(|(k, ket)| (k * c, ket.clone())).collect(),
            }),
            SemValue::Map(m) => {
                let (f, c) = (m.f.clone(), c.clone());
                SemValue::Map(MapVal {
                    f: Arc::new(move |x| Ok(f(x)?.scale(&c))),
                    ..m.clone()
                })
            }
        }
    }

    pub fn sub(&self, other: &SemValue) -> Result<SemValue> {
        self.add(&other.scale(&-Scalar::one()))
    }

    /// Apply a value of `Hom(X, Y)` to a value of `X`.
    pub fn apply(&self, x: &SemValue) -> Result<SemValue> {
        match (self, x) {
            (SemValue::Mat(m), SemValue::Base(v)) => Ok(SemValue::Base(m.apply(v)?)),
            (SemValue::Map(m), _) => {
                x.expect_space(&m.dom)?;
                (m.f)(x)
            }
            (SemValue::Mat(m), _) => Err(mismatch(&SemSpace::Base(m.cols()), &x.space())),
            _ => Err(Error::SpaceMismatch {
                expected: "a map".into(),
                found: self.space().to_string(),
            }),
        }
    }

    pub fn as_bang(&self) -> Result<&BangVal> {
        match self {
            SemValue::Bang(b) => Ok(b),
            other => Err(Error::SpaceMismatch {
                expected: "a value of a banged space".into(),
                found: other.space().to_string(),
            }),
        }
    }

    pub fn as_matrix(&self) -> Result<&Matrix> {
        match self {
            SemValue::Mat(m) => Ok(m),
            other => Err(Error::SpaceMismatch {
                expected: "a matrix".into(),
                found: other.space().to_string(),
            }),
        }
    }
}

impl TensorVal {
    pub fn pure(a: SemValue, b: SemValue) -> TensorVal {
        TensorVal {
            left: a.space(),
            right: b.space(),
            terms: vec![(Scalar::one(), a, b)],
        }
    }
}

impl BangVal {
    pub fn zero(inner: SemSpace) -> BangVal {
        BangVal {
            inner,
            terms: Vec::new(),
        }
    }

    pub fn ket(point: SemValue, tangents: Vec<SemValue>) -> BangVal {
        BangVal {
            inner: point.space(),
            terms: vec![(Scalar::one(), Ket::new(point, tangents))],
        }
    }

    pub fn vacuum(point: SemValue) -> BangVal {
        BangVal::ket(point, Vec::new())
    }

    /// `|x⟩_0`.
    pub fn codereliction(x: SemValue) -> BangVal {
        let zero = SemValue::zero(&x.space());
        BangVal::ket(zero, vec![x])
    }

    pub fn counit(&self) -> Scalar {
        self.terms
            .iter()
            .filter(|(_, k)| k.tangents.is_empty())
            .map(|(c, _)| c.clone())
            .sum()
    }

    pub fn dereliction(&self) -> Result<SemValue> {
        let mut out = SemValue::zero(&self.inner);
        for (c, k) in &self.terms {
            match k.tangents.len() {
                0 => out = out.add(&k.point.scale(c))?,
                1 => out = out.add(&k.tangents[0].scale(c))?,
                _ => {}
            }
        }
        Ok(out)
    }

    /// Split every ket over the subsets of its tangents.
    pub fn coproduct(&self) -> Result<Vec<(Scalar, BangVal, BangVal)>> {
        let mut out = Vec::new();
        for (c, k) in &self.terms {
            let s = k.tangents.len();
            for mask in subsets(s)? {
                let (left, right): (Vec<usize>, Vec<usize>) = (0..s).partition(|i| mask >> i & 1 == 1);
                let pick = |ix: &[usize]| ix.iter().map(|&i| k.tangents[i].clone()).collect();
                out.push((
                    c.clone(),
                    BangVal::ket(k.point.clone(), pick(&left)),
                    BangVal::ket(k.point.clone(), pick(&right)),
                ));
            }
        }
        Ok(out)
    }

    /// `D(t ⊗ ν)`.
    pub fn deriving(&self, nu: &SemValue) -> Result<BangVal> {
        nu.expect_space(&self.inner)?;
        let terms = self
            .terms
            .iter()
            .map(|(c, k)| {
                let mut tangents = vec![nu.clone()];
                tangents.extend(k.tangents.iter().cloned());
                (c.clone(), Ket::new(k.point.clone(), tangents))
            })
            .collect();
        Ok(BangVal {
            inner: self.inner.clone(),
            terms,
        })
    }

    /// `∇(self ⊗ other)`.
    pub fn cocontract(&self, other: &BangVal) -> Result<BangVal> {
        if self.inner != other.inner {
            return Err(mismatch(&self.inner, &other.inner));
        }
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (c, k) in &self.terms {
            for (e, l) in &other.terms {
                let mut tangents = k.tangents.clone();
                tangents.extend(l.tangents.iter().cloned());
                terms.push((c * e, Ket::new(k.point.add(&l.point)?, tangents)));
            }
        }
        Ok(BangVal {
            inner: self.inner.clone(),
            terms,
        })
    }
}

impl From<VecQ> for SemValue {
    fn from(v: VecQ) -> Self {
        SemValue::Base(v)
    }
}

impl From<Matrix> for SemValue {
    fn from(m: Matrix) -> Self {
        SemValue::Mat(m)
    }
}

impl From<BangVal> for SemValue {
    fn from(b: BangVal) -> Self {
        SemValue::Bang(b)
    }
}

impl From<TensorVal> for SemValue {
    fn from(t: TensorVal) -> Self {
        SemValue::Tensor(t)
    }
}

impl fmt::Debug for SemValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SemValue::Base(v) => write!(f, "{v:?}"),
            SemValue::Mat(m) => write!(f, "{m:?}"),
            SemValue::Tensor(t) => {
                if t.terms.is_empty() {
                    return write!(f, "0");
                }
                for (i, (c, a, b)) in t.terms.iter().enumerate() {
                    if i > 0 {
                        write!(f, " + ")?;
                    }
                    write!(f, "{c}·{a:?}⊗{b:?}")?;
                }
                Ok(())
            }
            SemValue::Bang(b) => {
                if b.terms.is_empty() {
                    return write!(f, "0");
                }
                for (i, (c, k)) in b.terms.iter().enumerate() {
                    if i > 0 {
                        write!(f, " + ")?;
                    }
                    write!(f, "{c}·{k:?}")?;
                }
                Ok(())
            }
            SemValue::Map(m) => write!(f, "<map {}>", SemSpace::hom(m.dom.clone(), m.cod.clone())),
        }
    }
}
