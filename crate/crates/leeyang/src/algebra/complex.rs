//! Arbitrary-precision complex arithmetic and certified polynomial
//! evaluation.

use super::{ApFloat, LambdaPoly};

#[derive(Clone, Debug, PartialEq)]
pub struct ApComplex {
    pub re: ApFloat,
    pub im: ApFloat,
}

impl ApComplex {
    pub fn new(re: ApFloat, im: ApFloat) -> Self {
        ApComplex { re, im }
    }

    pub fn zero(prec: u32) -> Self {
        ApComplex {
            re: ApFloat::zero(prec),
            im: ApFloat::zero(prec),
        }
    }

    pub fn from_f64(re: f64, im: f64, prec: u32) -> Self {
        ApComplex {
            re: ApFloat::from_f64(re, prec),
            im: ApFloat::from_f64(im, prec),
        }
    }

    pub fn from_rational(r: &super::Rational, prec: u32) -> Self {
        ApComplex {
            re: ApFloat::from_rational(r, prec),
            im: ApFloat::zero(prec),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn precision(&self) -> u32 {
        self.re.precision().max(self.im.precision())
    }

    pub fn with_precision(&self, prec: u32) -> Self {
        ApComplex {
            re: self.re.with_precision(prec),
            im: self.im.with_precision(prec),
        }
    }

    pub fn conj(&self) -> Self {
        ApComplex {
            re: self.re.clone(),
            im: self.im.neg(),
        }
    }

    pub fn neg(&self) -> Self {
        ApComplex {
            re: self.re.neg(),
            im: self.im.neg(),
        }
    }

    pub fn add(&self, rhs: &ApComplex) -> Self {
        ApComplex {
            re: self.re.add(&rhs.re),
            im: self.im.add(&rhs.im),
        }
    }

    pub fn sub(&self, rhs: &ApComplex) -> Self {
        ApComplex {
            re: self.re.sub(&rhs.re),
            im: self.im.sub(&rhs.im),
        }
    }

    pub fn mul(&self, rhs: &ApComplex) -> Self {
        ApComplex {
            re: self.re.mul(&rhs.re).sub(&self.im.mul(&rhs.im)),
            im: self.re.mul(&rhs.im).add(&self.im.mul(&rhs.re)),
        }
    }

    pub fn scale(&self, c: &ApFloat) -> Self {
        ApComplex {
            re: self.re.mul(c),
            im: self.im.mul(c),
        }
    }

    pub fn norm_sqr(&self) -> ApFloat {
        self.re.mul(&self.re).add(&self.im.mul(&self.im))
    }

    pub fn abs(&self) -> ApFloat {
        self.norm_sqr().sqrt()
    }

    pub fn div(&self, rhs: &ApComplex) -> Self {
        let den = rhs.norm_sqr();
        assert!(!den.is_zero(), "complex division by zero");
        let num = self.mul(&rhs.conj());
        ApComplex {
            re: num.re.div(&den),
            im: num.im.div(&den),
        }
    }

    pub fn recip(&self) -> Self {
        let prec = self.precision();
        ApComplex::from_f64(1.0, 0.0, prec).div(self)
    }

    /// Principal square root.
    pub fn sqrt(&self) -> Self {
        let prec = self.precision();
        if self.is_zero() {
            return ApComplex::zero(prec);
        }
        let r = self.abs();
        let two = ApFloat::from_i64(2, prec);
        if self.re.sign() >= 0 {
            let u = r.add(&self.re).div(&two).sqrt();
            if u.is_zero() {
                return ApComplex::zero(prec);
            }
            let v = self.im.div(&two.mul(&u));
            ApComplex { re: u, im: v }
        } else {
            let t = r.sub(&self.re).div(&two).sqrt();
            // sign of the imaginary part fixes the principal branch
            let v = if self.im.sign() < 0 { t.neg() } else { t };
            if v.is_zero() {
                return ApComplex::zero(prec);
            }
            let u = self.im.div(&two.mul(&v));
            ApComplex { re: u, im: v }
        }
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }

    /// |re| + |im|, a cheap upper bound for |z| used in error accounting.
    pub fn abs_bound(&self) -> ApFloat {
        self.re.abs().add(&self.im.abs())
    }
}

impl std::fmt::Display for ApComplex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let (re, im) = self.to_f64();
        if im >= 0.0 {
            write!(f, "{re}+{im}i")
        } else {
            write!(f, "{re}{im}i")
        }
    }
}

/// Horner evaluation of an exact polynomial at a complex point, returning
/// the value together with a sound first-order rounding-error bound.
///
/// The bound accumulates one ulp-scale term per Horner step, so halving or
/// doubling the working precision moves the value by less than the bound.
pub fn eval_complex(p: &LambdaPoly, z: &ApComplex) -> (ApComplex, ApFloat) {
    let prec = z.precision().max(53);
    let bprec = 32;
    if p.is_zero() {
        return (ApComplex::zero(prec), ApFloat::zero(bprec));
    }
    // per-operation relative rounding is ≤ 2^(1-prec); 2^(3-prec) absorbs the
    // complex multiply's three roundings per component
    let unit = ApFloat::from_i64(1, bprec).mul_2exp(3 - prec as i64);
    let zabs = z.abs_bound().with_precision(bprec);
    let mut acc = ApComplex::zero(prec);
    let mut err = ApFloat::zero(bprec);
    for c in p.coeffs().iter().rev() {
        let cz = ApComplex::from_rational(c, prec);
        let next = acc.mul(z).add(&cz);
        err = err.mul(&zabs).add(
            &acc.abs_bound()
                .with_precision(bprec)
                .mul(&zabs)
                .add(&cz.abs_bound().with_precision(bprec))
                .add(&next.abs_bound().with_precision(bprec))
                .mul(&unit),
        );
        acc = next;
    }
    (acc, err)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Rational;
    use num_bigint::BigInt;

    fn q(a: i64, b: i64) -> Rational {
        Rational::new(BigInt::from(a), BigInt::from(b))
    }

    #[test]
    fn complex_field_ops() {
        let a = ApComplex::from_f64(1.0, 2.0, 128);
        let b = ApComplex::from_f64(-0.5, 1.0, 128);
        let p = a.mul(&b);
        assert_eq!(p.to_f64(), (-2.5, 0.0));
        let r = p.div(&b);
        let d = r.sub(&a);
        assert!(d.abs().to_f64() < 1e-35);
    }

    #[test]
    fn principal_sqrt_branches() {
        let x = ApComplex::from_f64(-4.0, 0.0, 128);
        let r = x.sqrt();
        let (re, im) = r.to_f64();
        assert!(re.abs() < 1e-30 && (im - 2.0).abs() < 1e-15);
        let y = ApComplex::from_f64(3.0, -4.0, 128);
        let s = y.sqrt();
        let back = s.mul(&s).sub(&y);
        assert!(back.abs().to_f64() < 1e-30);
        // principal branch has nonnegative real part
        assert!(s.re.sign() >= 0);
    }

    #[test]
    fn eval_zero_poly_has_zero_bound() {
        let z = ApComplex::from_f64(1.7, -0.3, 128);
        let (v, e) = eval_complex(&LambdaPoly::zero(), &z);
        assert!(v.is_zero());
        assert!(e.is_zero());
    }

    #[test]
    fn eval_example_polynomial_at_one() {
        // A_2 of the running example evaluated at 1 is 19/24
        let p = LambdaPoly::from_strings(&[
            "35/384".into(),
            "5/32".into(),
            "19/64".into(),
            "5/32".into(),
            "35/384".into(),
        ])
        .unwrap();
        let z = ApComplex::from_f64(1.0, 0.0, 128);
        let (v, _) = eval_complex(&p, &z);
        let expect = ApFloat::from_rational(&q(19, 24), 128);
        assert!(v.re.sub(&expect).abs().to_f64() < 1e-35);
        assert!(v.im.is_zero());
    }

    #[test]
    fn eval_at_i() {
        // λ² - 1 at i is -2
        let p = LambdaPoly::from_coeffs(vec![q(-1, 1), q(0, 1), q(1, 1)]);
        let z = ApComplex::from_f64(0.0, 1.0, 128);
        let (v, _) = eval_complex(&p, &z);
        assert_eq!(v.to_f64(), (-2.0, 0.0));
    }

    #[test]
    fn error_bound_is_sound_under_precision_doubling() {
        let p = LambdaPoly::from_coeffs(vec![q(22, 7), q(-3, 11), q(355, 113), q(1, 97)]);
        for (re, im) in [(0.37, -1.93), (12.25, 3.5), (-0.001, 0.002)] {
            let z64 = ApComplex::from_f64(re, im, 64);
            let z128 = ApComplex::from_f64(re, im, 128);
            let (v64, e64) = eval_complex(&p, &z64);
            let (v128, _) = eval_complex(&p, &z128);
            let drift = v128.sub(&v64.with_precision(128)).abs();
            assert!(
                drift.to_f64() <= e64.to_f64(),
                "drift {} exceeds bound {}",
                drift.to_f64(),
                e64.to_f64()
            );
        }
    }
}
