//! Multivariate rational polynomials and the residue pairing.
//!
//! A ket `|ν₁,…,ν_s⟩_P` acts on a polynomial `f` as `∂_{ν₁}⋯∂_{ν_s} f` evaluated
//! at `P`. Everything here uses only polynomial calculus, so pairing
//! identities give a second, independent computation of the coalgebra maps.

use std::fmt;

use crate::bang::{BangElement, Ket, TensorElement};
use crate::error::{Error, Result};
use crate::exact::{Scalar, VecQ};
use crate::lincomb::LinComb;

/// Exponent vector, one entry per variable.
pub type Monomial = Vec<u32>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    terms: LinComb<Monomial>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Polynomial {
        Polynomial {
            nvars,
            terms: LinComb::new(),
        }
    }

    pub fn constant(c: Scalar, nvars: usize) -> Polynomial {
        Polynomial {
            nvars,
            terms: LinComb::from_iter([(vec![0; nvars], c)]),
        }
    }

    /// The coordinate function `x_{i+1}` (0-based `i`).
    pub fn var(i: usize, nvars: usize) -> Polynomial {
        let mut m = vec![0; nvars];
        m[i] = 1;
        Polynomial {
            nvars,
            terms: LinComb::basis(m),
        }
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> Result<Polynomial> {
        let mut out = LinComb::new();
        for (m, c) in terms {
            if m.len() != nvars {
                return Err(Error::DimensionMismatch {
                    expected: nvars,
                    found: m.len(),
                });
            }
            out.add_term(m, c);
        }
        Ok(Polynomial { nvars, terms: out })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|m| m.iter().sum()).max().unwrap_or(0)
    }

    fn same_vars(&self, other: &Polynomial) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                found: other.nvars,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.same_vars(other)?;
        Ok(Polynomial {
            nvars: self.nvars,
            terms: self.terms.plus(&other.terms),
        })
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.scale(c),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.same_vars(other)?;
        let mut out = LinComb::new();
        for (a, x) in self.terms.iter() {
            for (b, y) in other.terms.iter() {
                let m = a.iter().zip(b).map(|(i, j)| i + j).collect();
                out.add_term(m, x * y);
            }
        }
        Ok(Polynomial {
            nvars: self.nvars,
            terms: out,
        })
    }

    pub fn pow(&self, e: u32) -> Result<Polynomial> {
        let mut acc = Polynomial::constant(Scalar::one(), self.nvars);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// `∂f/∂x_{i+1}`.
    pub fn partial(&self, i: usize) -> Polynomial {
        let mut out = LinComb::new();
        for (m, c) in self.terms.iter() {
            if m[i] == 0 {
                continue;
            }
            let mut d = m.clone();
            d[i] -= 1;
            out.add_term(d, c * &Scalar::from_int(i64::from(m[i])));
        }
        Polynomial {
            nvars: self.nvars,
            terms: out,
        }
    }

    /// `∂_ν f = Σ_j ν_j ∂f/∂x_j`.
    pub fn directional(&self, nu: &VecQ) -> Result<Polynomial> {
        if nu.dim() != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                found: nu.dim(),
            });
        }
        let mut out = Polynomial::zero(self.nvars);
        for (j, c) in nu.coords().iter().enumerate() {
            if !c.is_zero() {
                out = out.add(&self.partial(j).scale(c))?;
            }
        }
        Ok(out)
    }

    pub fn eval(&self, point: &[Scalar]) -> Result<Scalar> {
        if point.len() != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                found: point.len(),
            });
        }
        Ok(self
            .terms
            .iter()
            .map(|(m, c)| m.iter().zip(point).fold(c.clone(), |acc, (&e, x)| &acc * &x.pow(e)))
            .sum())
    }

    /// `f(x) ↦ f(x + y)` over variables `(x₁…x_n, y₁…y_n)`.
    pub fn shift_doubling(&self) -> Polynomial {
        let n = self.nvars;
        let mut out = Polynomial::zero(2 * n);
        for (m, c) in self.terms.iter() {
            let mut prod = Polynomial::constant(c.clone(), 2 * n);
            for (i, &e) in m.iter().enumerate() {
                let sum = Polynomial::var(i, 2 * n)
                    .add(&Polynomial::var(n + i, 2 * n))
                    .expect("same variable count");
                prod = prod
                    .mul(&sum.pow(e).expect("same variable count"))
                    .expect("same variable count");
            }
            out = out.add(&prod).expect("same variable count");
        }
        out
    }

    /// `f(x) ↦ f(−x)`.
    pub fn negate_vars(&self) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let deg: u32 = m.iter().sum();
                let c = if deg % 2 == 1 { -c } else { c.clone() };
                (m.clone(), c)
            })
            .collect();
        Polynomial {
            nvars: self.nvars,
            terms,
        }
    }

    /// Parse strings like `"3/2 x1^2 x2 - x3"` over variables `x1…x_nvars`.
    pub fn parse(text: &str, nvars: usize) -> Result<Polynomial> {
        Parser { text, pos: 0, nvars }.polynomial()
    }
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
    nvars: usize,
}

impl Parser<'_> {
    fn err(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            offset: self.pos,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn digits(&mut self) -> &str {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        &self.text[start..self.pos]
    }

    fn polynomial(mut self) -> Result<Polynomial> {
        let mut out = Polynomial::zero(self.nvars);
        self.skip_ws();
        let mut first = true;
        loop {
            self.skip_ws();
            let mut sign = Scalar::one();
            match self.peek() {
                None if first => return Err(self.err("empty polynomial")),
                None => break,
                Some('+') => self.pos += 1,
                Some('-') => {
                    sign = Scalar::from_int(-1);
                    self.pos += 1;
                }
                Some(_) if first => {}
                Some(c) => return Err(self.err(format!("expected '+' or '-', found {c:?}"))),
            }
            first = false;
            let term = self.term()?;
            out = out.add(&term.scale(&sign))?;
        }
        Ok(out)
    }

    fn term(&mut self) -> Result<Polynomial> {
        self.skip_ws();
        let mut coeff = Scalar::one();
        let mut saw_any = false;
        if self.peek().is_some_and(|c| c.is_ascii_digit()) {
            let num = self.digits().to_string();
            let mut s = num;
            self.skip_ws();
            if self.peek() == Some('/') {
                self.pos += 1;
                self.skip_ws();
                let den = self.digits().to_string();
                if den.is_empty() {
                    return Err(self.err("expected denominator"));
                }
                s = format!("{s}/{den}");
            }
            coeff = s.parse().map_err(|_| self.err("invalid coefficient"))?;
            saw_any = true;
        }
        let mut mono = vec![0u32; self.nvars];
        loop {
            self.skip_ws();
            if self.peek() == Some('*') {
                self.pos += 1;
                self.skip_ws();
            }
            if self.peek() != Some('x') {
                break;
            }
            self.pos += 1;
            let idx = self.digits().to_string();
            let idx: usize = idx.parse().map_err(|_| self.err("expected variable index"))?;
            if idx == 0 || idx > self.nvars {
                return Err(self.err(format!("variable x{idx} outside x1..x{}", self.nvars)));
            }
            self.skip_ws();
            let mut exp = 1u32;
            if self.peek() == Some('^') {
                self.pos += 1;
                self.skip_ws();
                exp = self.digits().parse().map_err(|_| self.err("expected exponent"))?;
            }
            mono[idx - 1] += exp;
            saw_any = true;
        }
        if !saw_any {
            return Err(self.err("expected a term"));
        }
        Polynomial::from_terms(self.nvars, [(mono, coeff)])
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_zero() {
            return write!(f, "0");
        }
        // Highest degree first, then reverse lexicographic for readability.
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| {
            let (da, db): (u32, u32) = (a.iter().sum(), b.iter().sum());
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        for (i, (m, c)) in terms.into_iter().enumerate() {
            let neg = c < &Scalar::zero();
            let mag = c.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let is_const = m.iter().all(|&e| e == 0);
            if !mag.is_one() || is_const {
                write!(f, "{mag}")?;
                if !is_const {
                    write!(f, " ")?;
                }
            }
            let mut first = true;
            for (j, &e) in m.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !first {
                    write!(f, " ")?;
                }
                first = false;
                write!(f, "x{}", j + 1)?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn pair_ket(ket: &Ket<VecQ>, f: &Polynomial) -> Result<Scalar> {
    let mut g = f.clone();
    for t in &ket.tangents {
        g = g.directional(t)?;
    }
    g.eval(ket.point.coords())
}

/// `⟨t, f⟩ = Σ c · ∂_{ν₁}⋯∂_{ν_s} f |_{x=P}` over the kets of `t`.
pub fn residue_pairing(t: &BangElement<VecQ>, f: &Polynomial) -> Result<Scalar> {
    let mut acc = Scalar::zero();
    for (ket, c) in t.iter() {
        if ket.point.dim() != f.nvars() {
            return Err(Error::DimensionMismatch {
                expected: f.nvars(),
                found: ket.point.dim(),
            });
        }
        acc += &(c * &pair_ket(ket, f)?);
    }
    Ok(acc)
}

/// `⟨Σ c a⊗b, f⊗g⟩ = Σ c ⟨a,f⟩⟨b,g⟩`.
pub fn pair_tensor(x: &TensorElement<(Ket<VecQ>, Ket<VecQ>)>, f: &Polynomial, g: &Polynomial) -> Result<Scalar> {
    let mut acc = Scalar::zero();
    for ((a, b), c) in x.iter() {
        acc += &(c * &(&pair_ket(a, f)? * &pair_ket(b, g)?));
    }
    Ok(acc)
}

/// Pair a tensor of kets over `V` with a polynomial `F(x, y)` in `2·dim V`
/// variables: the left ket differentiates in `x`, the right ket in `y`.
pub fn pair_split(x: &TensorElement<(Ket<VecQ>, Ket<VecQ>)>, big: &Polynomial) -> Result<Scalar> {
    let mut acc = Scalar::zero();
    for ((a, b), c) in x.iter() {
        let n = a.point.dim();
        if 2 * n != big.nvars() || b.point.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: big.nvars(),
                found: 2 * n,
            });
        }
        let mut g = big.clone();
        let blocks = a
            .tangents
            .iter()
            .map(|t| (t, 0))
            .chain(b.tangents.iter().map(|t| (t, n)));
        for (t, offset) in blocks {
            let mut dir = Polynomial::zero(2 * n);
            for (j, cj) in t.coords().iter().enumerate() {
                if !cj.is_zero() {
                    dir = dir.add(&g.partial(offset + j).scale(cj))?;
                }
            }
            g = dir;
        }
        let mut point = a.point.coords().to_vec();
        point.extend(b.point.coords().iter().cloned());
        acc += &(c * &g.eval(&point)?);
    }
    Ok(acc)
}
