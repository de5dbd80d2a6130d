//! Exact rational scalars, coordinate vectors and matrices.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest coordinate dimension accepted anywhere in the engine.
pub const MAX_DIM: usize = 8;

/// An exact rational number, always in lowest terms with positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Scalar(BigRational);

impl Scalar {
    pub fn new(num: i64, den: i64) -> Scalar {
        assert!(den != 0, "zero denominator");
        Scalar(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_int(n: i64) -> Scalar {
        Scalar(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigint(n: BigInt) -> Scalar {
        Scalar(BigRational::from_integer(n))
    }

    pub fn zero() -> Scalar {
        Scalar(BigRational::zero())
    }

    pub fn one() -> Scalar {
        Scalar(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn abs(&self) -> Scalar {
        Scalar(self.0.abs())
    }

    pub fn recip(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar(self.0.recip()))
    }

    pub fn pow(&self, exp: u32) -> Scalar {
        let mut acc = Scalar::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Scalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Scalar> {
        let s = s.trim();
        let bad = || Error::Parse {
            offset: 0,
            message: format!("invalid scalar {s:?}"),
        };
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let num: BigInt = num.parse().map_err(|_| bad())?;
        let den: BigInt = den.parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        Ok(Scalar(BigRational::new(num, den)))
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Scalar {
        Scalar::from_int(n)
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Scalar, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        scalar_from_json(&v).map_err(serde::de::Error::custom)
    }
}

/// Accepts `"p/q"` strings and JSON integers.
pub fn scalar_from_json(v: &serde_json::Value) -> Result<Scalar> {
    match v {
        serde_json::Value::String(s) => s.parse(),
        serde_json::Value::Number(n) => match n.as_i64() {
            Some(i) => Ok(Scalar::from_int(i)),
            None => Err(Error::Json(format!("non-integer number {n}; use a \"p/q\" string"))),
        },
        other => Err(Error::Json(format!("expected scalar, found {other}"))),
    }
}

macro_rules! scalar_binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl<'a> $trait<&'a Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                Scalar(&self.0 $op &rhs.0)
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar(self.0 $op rhs.0)
            }
        }
    };
}

scalar_binop!(Add, add, +);
scalar_binop!(Sub, sub, -);
scalar_binop!(Mul, mul, *);

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, rhs: &'a Scalar) -> Scalar {
        assert!(!rhs.is_zero(), "division by zero scalar");
        Scalar(&self.0 / &rhs.0)
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-self.0)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-&self.0)
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.0 += &rhs.0;
    }
}

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |a, b| a + b)
    }
}

fn check_dim(dim: usize) -> Result<()> {
    if dim == 0 || dim > MAX_DIM {
        return Err(Error::Resource(format!(
            "dimension {dim} outside supported range 1..={MAX_DIM}"
        )));
    }
    Ok(())
}

/// A coordinate vector in a finite-dimensional rational space.
///
/// The derived `Ord` is the lexicographic order on coordinates; it is the
/// order used to sort ket tangent lists.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VecQ {
    coords: Vec<Scalar>,
}

impl VecQ {
    pub fn new(coords: Vec<Scalar>) -> Result<VecQ> {
        check_dim(coords.len())?;
        Ok(VecQ { coords })
    }

    pub fn from_ints(coords: &[i64]) -> VecQ {
        VecQ::new(coords.iter().map(|&c| Scalar::from_int(c)).collect()).expect("valid dimension")
    }

    pub fn zero(dim: usize) -> VecQ {
        VecQ {
            coords: vec![Scalar::zero(); dim],
        }
    }

    pub fn unit(dim: usize, i: usize) -> VecQ {
        let mut v = VecQ::zero(dim);
        v.coords[i] = Scalar::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Scalar::is_zero)
    }

    pub fn add(&self, other: &VecQ) -> Result<VecQ> {
        same_dim(self.dim(), other.dim())?;
        Ok(VecQ {
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn scale(&self, c: &Scalar) -> VecQ {
        VecQ {
            coords: self.coords.iter().map(|a| a * c).collect(),
        }
    }

    pub fn neg(&self) -> VecQ {
        VecQ {
            coords: self.coords.iter().map(|a| -a).collect(),
        }
    }

    /// Concatenation, the coordinates of `(self, other)` in a direct sum.
    pub fn concat(&self, other: &VecQ) -> Result<VecQ> {
        let mut coords = self.coords.clone();
        coords.extend(other.coords.iter().cloned());
        VecQ::new(coords)
    }
}

impl fmt::Debug for VecQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for VecQ {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.coords.serialize(s)
    }
}

impl<'de> Deserialize<'de> for VecQ {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<VecQ, D::Error> {
        let coords = Vec::<Scalar>::deserialize(d)?;
        VecQ::new(coords).map_err(serde::de::Error::custom)
    }
}

fn same_dim(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::DimensionMismatch { expected: a, found: b });
    }
    Ok(())
}

/// Lexicographic order on coordinates.
pub fn vec_order(a: &VecQ, b: &VecQ) -> Result<Ordering> {
    same_dim(a.dim(), b.dim())?;
    Ok(a.coords.cmp(&b.coords))
}

/// A dense rational matrix. Endomorphisms are the square case.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

/// Matrices of `End(V)`; all operations check squareness where it matters.
pub type EndoMap = Matrix;

impl Matrix {
    pub fn new(rows: Vec<Vec<Scalar>>) -> Result<Matrix> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        check_dim(nrows)?;
        check_dim(ncols)?;
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::Json("ragged matrix rows".into()));
        }
        Ok(Matrix {
            rows: nrows,
            cols: ncols,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_ints(rows: &[&[i64]]) -> Matrix {
        Matrix::new(
            rows.iter()
                .map(|r| r.iter().map(|&c| Scalar::from_int(c)).collect())
                .collect(),
        )
        .expect("valid matrix")
    }

    pub fn zero(rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            entries: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(dim: usize) -> Matrix {
        let mut m = Matrix::zero(dim, dim);
        for i in 0..dim {
            m.entries[i * dim + i] = Scalar::one();
        }
        m
    }

    pub fn from_columns(rows: usize, columns: &[VecQ]) -> Result<Matrix> {
        let cols = columns.len();
        let mut m = Matrix::zero(rows, cols);
        for (j, c) in columns.iter().enumerate() {
            same_dim(rows, c.dim())?;
            for i in 0..rows {
                m.entries[i * cols + j] = c.coords[i].clone();
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.cols + j]
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn row_vecs(&self) -> Vec<Vec<Scalar>> {
        self.entries.chunks(self.cols).map(<[Scalar]>::to_vec).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        same_dim(self.rows, other.rows)?;
        same_dim(self.cols, other.cols)?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|a| a * c).collect(),
        }
    }

    pub fn apply(&self, v: &VecQ) -> Result<VecQ> {
        same_dim(self.cols, v.dim())?;
        let coords = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * &v.coords[j]).sum())
            .collect();
        VecQ::new(coords)
    }

    pub fn pow(&self, exp: u32) -> Result<Matrix> {
        same_dim(self.rows, self.cols)?;
        let mut acc = Matrix::identity(self.rows);
        for _ in 0..exp {
            acc = mat_compose(self, &acc)?;
        }
        Ok(acc)
    }
}

/// The matrix of `f ∘ g`: apply `g` first.
pub fn mat_compose(f: &Matrix, g: &Matrix) -> Result<Matrix> {
    same_dim(f.cols, g.rows)?;
    let mut out = Matrix::zero(f.rows, g.cols);
    for i in 0..f.rows {
        for k in 0..f.cols {
            let a = f.get(i, k);
            if a.is_zero() {
                continue;
            }
            for j in 0..g.cols {
                let idx = i * g.cols + j;
                out.entries[idx] += &(a * g.get(k, j));
            }
        }
    }
    Ok(out)
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.entries.chunks(self.cols).enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            for (j, c) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{c}")?;
            }
        }
        write!(f, "]")
    }
}

impl Serialize for Matrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.row_vecs().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Matrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Matrix, D::Error> {
        let rows = Vec::<Vec<Scalar>>::deserialize(d)?;
        Matrix::new(rows).map_err(serde::de::Error::custom)
    }
}
