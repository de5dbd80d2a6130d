//! Closed-form values of the bundled proofs, computed with matrices only.

use super::BinSeq;
use crate::combinatorics::injections;
use crate::error::{Error, Result};
use crate::exact::{mat_compose, Matrix, Scalar};
use crate::poly::Polynomial;

fn check_square(m: &Matrix, dim: usize) -> Result<()> {
    if !m.is_square() || m.rows() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: m.rows(),
        });
    }
    Ok(())
}

/// `αⁿ`.
pub fn church_oracle(n: usize, alpha: &Matrix) -> Result<Matrix> {
    alpha.pow(n as u32)
}

/// `Σ_{i=1}^{n} α^{i-1} ν α^{n-i}`.
pub fn church_derivative_oracle(n: usize, alpha: &Matrix, nu: &Matrix) -> Result<Matrix> {
    check_square(nu, alpha.rows())?;
    let mut out = Matrix::zero(alpha.rows(), alpha.cols());
    for i in 1..=n {
        let left = alpha.pow((i - 1) as u32)?;
        let right = alpha.pow((n - i) as u32)?;
        out = out.add(&mat_compose(&mat_compose(&left, nu)?, &right)?)?;
    }
    Ok(out)
}

/// `S` applied to `|α₁,…,α_s⟩_γ ⊗ |β₁,…,β_r⟩_δ`, by summing over injective
/// placements of the `α`s into the `0` positions and the `β`s into the `1`
/// positions of `S = a_l ⋯ a_1`, composing `Γ_1 ∘ ⋯ ∘ Γ_l`.
pub fn bint_oracle(s: &BinSeq, alphas: &[Matrix], gamma: &Matrix, betas: &[Matrix], delta: &Matrix) -> Result<Matrix> {
    let dim = gamma.rows();
    for m in alphas.iter().chain(betas).chain([gamma, delta]) {
        check_square(m, dim)?;
    }
    let l = s.len();
    // position i (1-based, counted from the right) of the character at j
    let bit = |i: usize| s.0[l - i];
    let n0: Vec<usize> = (1..=l).filter(|&i| !bit(i)).collect();
    let n1: Vec<usize> = (1..=l).filter(|&i| bit(i)).collect();
    let mut out = Matrix::zero(dim, dim);
    for f in injections(alphas.len(), &n0) {
        for g in injections(betas.len(), &n1) {
            let mut factors: Vec<&Matrix> = (1..=l).map(|i| if bit(i) { delta } else { gamma }).collect();
            for (j, &i) in f.iter().enumerate() {
                factors[i - 1] = &alphas[j];
            }
            for (j, &i) in g.iter().enumerate() {
                factors[i - 1] = &betas[j];
            }
            let mut prod = Matrix::identity(dim);
            for m in factors {
                prod = mat_compose(&prod, m)?;
            }
            out = out.add(&prod)?;
        }
    }
    Ok(out)
}

/// `n · x^{l(n-1)+m}`.
pub fn mult_derivative_oracle(l: usize, m: usize, n: usize, x: &Matrix) -> Result<Matrix> {
    if n == 0 {
        return Ok(Matrix::zero(x.rows(), x.cols()));
    }
    Ok(x.pow((l * (n - 1) + m) as u32)?.scale(&Scalar::from_int(n as i64)))
}

/// The coefficient of `h` in the polynomial of degree at most `values.len() - 1`
/// taking `values[k]` at `h = k`.
pub fn difference_quotient(values: &[Matrix]) -> Result<Matrix> {
    let first = values
        .first()
        .ok_or_else(|| Error::Shape("interpolation needs at least one sample".into()))?;
    let h = Polynomial::var(0, 1);
    let mut out = Matrix::zero(first.rows(), first.cols());
    for (k, v) in values.iter().enumerate() {
        let mut basis = Polynomial::constant(Scalar::one(), 1);
        for j in (0..values.len()).filter(|&j| j != k) {
            let factor = h
                .add(&Polynomial::constant(Scalar::from_int(-(j as i64)), 1))?
                .scale(&Scalar::from_int(k as i64 - j as i64).recip()?);
            basis = basis.mul(&factor)?;
        }
        let linear: Scalar = basis.terms().filter(|(m, _)| m[0] == 1).map(|(_, c)| c.clone()).sum();
        out = out.add(&v.scale(&linear))?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Matrix {
        Matrix::from_ints(rows)
    }

    fn c(a: &Matrix, b: &Matrix) -> Matrix {
        mat_compose(a, b).unwrap()
    }

    fn alpha() -> Matrix {
        m(&[&[1, 2], &[0, 1]])
    }

    fn nu() -> Matrix {
        m(&[&[0, 0], &[1, 3]])
    }

    #[test]
    fn church_derivative_small_cases() {
        let (a, v) = (alpha(), nu());
        assert!(church_derivative_oracle(0, &a, &v).unwrap().is_zero());
        assert_eq!(church_derivative_oracle(1, &a, &v).unwrap(), v);
        assert_eq!(
            church_derivative_oracle(2, &a, &v).unwrap(),
            c(&a, &v).add(&c(&v, &a)).unwrap()
        );
    }

    #[test]
    fn bint_displayed_values() {
        let s: BinSeq = "001".parse().unwrap();
        let g = m(&[&[1, 1], &[0, 1]]);
        let d = m(&[&[0, 1], &[1, 0]]);
        let a1 = m(&[&[2, 0], &[0, 1]]);
        let a2 = m(&[&[1, 0], &[3, 1]]);
        let b = m(&[&[0, 0], &[0, 5]]);
        assert_eq!(bint_oracle(&s, &[], &g, &[], &d).unwrap(), c(&c(&d, &g), &g));
        assert_eq!(
            bint_oracle(&s, std::slice::from_ref(&a1), &g, &[], &d).unwrap(),
            c(&c(&d, &a1), &g).add(&c(&c(&d, &g), &a1)).unwrap()
        );
        assert_eq!(
            bint_oracle(&s, &[a1.clone(), a2.clone()], &g, &[], &d).unwrap(),
            c(&c(&d, &a1), &a2).add(&c(&c(&d, &a2), &a1)).unwrap()
        );
        assert_eq!(
            bint_oracle(&s, &[], &g, std::slice::from_ref(&b), &d).unwrap(),
            c(&c(&b, &g), &g)
        );
        assert_eq!(
            bint_oracle(&s, std::slice::from_ref(&a1), &g, std::slice::from_ref(&b), &d).unwrap(),
            c(&c(&b, &a1), &g).add(&c(&c(&b, &g), &a1)).unwrap()
        );
        assert!(bint_oracle(&s, &[a1.clone(), a2.clone(), a1.clone()], &g, &[], &d)
            .unwrap()
            .is_zero());
        assert!(bint_oracle(&s, &[], &g, &[b.clone(), b], &d).unwrap().is_zero());
        assert_eq!(
            bint_oracle(&BinSeq::default(), &[], &g, &[], &d).unwrap(),
            Matrix::identity(2)
        );
    }

    #[test]
    fn mult_exponents() {
        let x = alpha();
        assert_eq!(mult_derivative_oracle(1, 1, 1, &x).unwrap(), x);
        assert!(mult_derivative_oracle(2, 1, 0, &x).unwrap().is_zero());
        let nil = m(&[
            &[0, 1, 0, 0, 0, 0],
            &[0, 0, 1, 0, 0, 0],
            &[0, 0, 0, 1, 0, 0],
            &[0, 0, 0, 0, 1, 0],
            &[0, 0, 0, 0, 0, 0],
            &[0, 0, 0, 0, 0, 0],
        ]);
        assert!(!nil.pow(4).unwrap().is_zero());
        assert!(nil.pow(5).unwrap().is_zero());
        assert!(mult_derivative_oracle(2, 1, 3, &nil).unwrap().is_zero());
    }

    #[test]
    fn interpolation_recovers_linear_coefficient() {
        // v(h) = a + h b + h² c
        let (a, b, cc) = (alpha(), nu(), m(&[&[7, 0], &[0, -1]]));
        let values: Vec<Matrix> = (0..4)
            .map(|h| {
                let h = Scalar::from_int(h);
                a.add(&b.scale(&h)).unwrap().add(&cc.scale(&(&h * &h))).unwrap()
            })
            .collect();
        assert_eq!(difference_quotient(&values).unwrap(), b);
        assert!(difference_quotient(&values[..1]).unwrap().is_zero());
        assert!(difference_quotient(&[]).is_err());
    }
}
