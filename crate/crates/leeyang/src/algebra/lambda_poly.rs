//! Dense univariate polynomials in the marking parameter, with exact
//! rational coefficients stored in ascending powers.
//!
//! Invariant: the coefficient vector never ends in a zero, and the zero
//! polynomial is the empty vector.

use super::{rational_from_str, rational_to_string, Rational};
use num_traits::{One, Zero};
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LambdaPoly {
    coeffs: Vec<Rational>,
}

impl LambdaPoly {
    pub fn zero() -> Self {
        LambdaPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        LambdaPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            LambdaPoly { coeffs: vec![c] }
        }
    }

    /// c * λ^deg.
    pub fn monomial(c: Rational, deg: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rational::zero(); deg + 1];
        coeffs[deg] = c;
        LambdaPoly { coeffs }
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        LambdaPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    /// Exact evaluation at a rational point by Horner's rule.
    pub fn eval_rational(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> LambdaPoly {
        if self.coeffs.len() <= 1 {
            return LambdaPoly::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * Rational::from_integer(i.into()))
            .collect();
        LambdaPoly::from_coeffs(coeffs)
    }

    pub fn scale(&self, c: &Rational) -> LambdaPoly {
        if c.is_zero() {
            return LambdaPoly::zero();
        }
        LambdaPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiply by λ^k.
    pub fn shift_up(&self, k: usize) -> LambdaPoly {
        if self.is_zero() {
            return LambdaPoly::zero();
        }
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.extend_from_slice(&self.coeffs);
        LambdaPoly { coeffs }
    }

    /// True when the coefficient vector reads the same in both directions.
    pub fn is_palindromic(&self) -> bool {
        let n = self.coeffs.len();
        (0..n / 2).all(|i| self.coeffs[i] == self.coeffs[n - 1 - i])
    }

    /// Total size of all coefficients in bits; the unit of resource budgets.
    pub fn bit_size(&self) -> u64 {
        self.coeffs
            .iter()
            .map(|c| c.numer().bits() + c.denom().bits())
            .sum()
    }

    /// Exact quotient; panics if `divisor` does not divide exactly.
    /// Used by the fraction-free determinant in the resultant computation.
    pub fn exact_div(&self, divisor: &LambdaPoly) -> LambdaPoly {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return LambdaPoly::zero();
        }
        let mut rem = self.coeffs.clone();
        let dd = divisor.coeffs.len() - 1;
        let lead = divisor.coeffs.last().unwrap();
        assert!(
            rem.len() > dd,
            "exact_div called with non-divisible operands"
        );
        let mut out = vec![Rational::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let q = &rem[i] / lead;
            if !q.is_zero() {
                for (j, dc) in divisor.coeffs.iter().enumerate() {
                    let idx = i - dd + j;
                    rem[idx] = &rem[idx] - &(dc * &q);
                }
            }
            out[i - dd] = q;
        }
        assert!(
            rem.iter().all(|c| c.is_zero()),
            "exact_div called with non-divisible operands"
        );
        LambdaPoly::from_coeffs(out)
    }

    /// Wire format: JSON array of "p/q" strings, ascending powers.
    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(rational_to_string).collect()
    }

    pub fn from_strings(strs: &[String]) -> crate::Result<LambdaPoly> {
        let coeffs = strs
            .iter()
            .map(|s| rational_from_str(s))
            .collect::<crate::Result<Vec<_>>>()?;
        Ok(LambdaPoly::from_coeffs(coeffs))
    }
}

impl Add for &LambdaPoly {
    type Output = LambdaPoly;
    fn add(self, rhs: &LambdaPoly) -> LambdaPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect();
        LambdaPoly::from_coeffs(coeffs)
    }
}

impl Sub for &LambdaPoly {
    type Output = LambdaPoly;
    fn sub(self, rhs: &LambdaPoly) -> LambdaPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect();
        LambdaPoly::from_coeffs(coeffs)
    }
}

impl Neg for &LambdaPoly {
    type Output = LambdaPoly;
    fn neg(self) -> LambdaPoly {
        LambdaPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &LambdaPoly {
    type Output = LambdaPoly;
    fn mul(self, rhs: &LambdaPoly) -> LambdaPoly {
        if self.is_zero() || rhs.is_zero() {
            return LambdaPoly::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] = &coeffs[i + j] + &(a * b);
                }
            }
        }
        LambdaPoly::from_coeffs(coeffs)
    }
}

impl std::fmt::Display for LambdaPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{}", rational_to_string(c))?,
                1 => write!(f, "{} λ", rational_to_string(c))?,
                _ => write!(f, "{} λ^{}", rational_to_string(c), i)?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(p: i64, q_: i64) -> Rational {
        Rational::new(BigInt::from(p), BigInt::from(q_))
    }

    #[test]
    fn trailing_zeros_trimmed() {
        let p = LambdaPoly::from_coeffs(vec![q(1, 2), Rational::zero(), Rational::zero()]);
        assert_eq!(p.degree(), Some(0));
        assert!(LambdaPoly::from_coeffs(vec![Rational::zero()]).is_zero());
        assert_eq!(LambdaPoly::zero().degree(), None);
    }

    #[test]
    fn arithmetic_and_eval() {
        // (λ + 1)(λ - 1) = λ² - 1
        let a = LambdaPoly::from_coeffs(vec![q(1, 1), q(1, 1)]);
        let b = LambdaPoly::from_coeffs(vec![q(-1, 1), q(1, 1)]);
        let p = &a * &b;
        assert_eq!(p, LambdaPoly::from_coeffs(vec![q(-1, 1), q(0, 1), q(1, 1)]));
        assert_eq!(p.eval_rational(&q(3, 1)), q(8, 1));
        assert_eq!((&a - &a), LambdaPoly::zero());
        assert_eq!(p.derivative(), LambdaPoly::from_coeffs(vec![q(0, 1), q(2, 1)]));
    }

    #[test]
    fn exact_division_roundtrip() {
        let a = LambdaPoly::from_coeffs(vec![q(1, 3), q(2, 1), q(1, 1)]);
        let b = LambdaPoly::from_coeffs(vec![q(-5, 7), q(1, 2), q(3, 1), q(2, 5)]);
        let prod = &a * &b;
        assert_eq!(prod.exact_div(&a), b);
        assert_eq!(prod.exact_div(&b), a);
    }

    #[test]
    fn palindrome_check() {
        let p = LambdaPoly::from_strings(&[
            "35/384".into(),
            "5/32".into(),
            "19/64".into(),
            "5/32".into(),
            "35/384".into(),
        ])
        .unwrap();
        assert!(p.is_palindromic());
        assert!(!LambdaPoly::from_coeffs(vec![q(1, 1), q(2, 1)]).is_palindromic());
    }

    #[test]
    fn wire_roundtrip() {
        let p = LambdaPoly::from_coeffs(vec![q(-1, 2), q(0, 1), q(7, 3)]);
        assert_eq!(LambdaPoly::from_strings(&p.to_strings()).unwrap(), p);
    }
}
