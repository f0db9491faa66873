//! Exact scalars and polynomials: arbitrary-size rationals, dense univariate
//! polynomials in the marking parameter, sparse multivariate polynomials over
//! them, and arbitrary-precision complex floats.
//!
//! Everything here is immutable after construction and arithmetic is exact
//! unless a type explicitly carries a working precision.

pub mod apfloat;
pub mod complex;
pub mod lambda_poly;
pub mod multi_index;
pub mod sparse_poly;

pub use apfloat::ApFloat;
pub use complex::{eval_complex, ApComplex};
pub use lambda_poly::LambdaPoly;
pub use multi_index::MultiIndex;
pub use sparse_poly::{sparse_pow, Budget, SparsePoly};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational scalar, always in lowest terms with positive denominator.
pub type Rational = BigRational;

/// `n!` as an arbitrary-size integer.
pub fn factorial(n: u64) -> BigUint {
    let mut acc = BigUint::one();
    for i in 2..=n {
        acc *= i;
    }
    acc
}

/// Double factorial `t!!` with the empty-product conventions
/// `(-1)!! = 0!! = 1`.
///
/// For odd `t` this is `t (t-2) ... 1`, for even `t` it is `t (t-2) ... 2`.
pub fn double_factorial(t: i64) -> BigInt {
    assert!(t >= -1, "double factorial defined for t >= -1");
    let mut acc = BigInt::one();
    let mut i = t;
    while i >= 2 {
        acc *= i;
        i -= 2;
    }
    acc
}

/// Parse an exact rational from the wire format `"p/q"` or `"p"`.
pub fn rational_from_str(s: &str) -> crate::Result<Rational> {
    let s = s.trim();
    let parse_int = |t: &str| -> crate::Result<BigInt> {
        t.trim()
            .parse::<BigInt>()
            .map_err(|e| crate::Error::InvalidInput(format!("bad integer {t:?}: {e}")))
    };
    match s.split_once('/') {
        None => Ok(Rational::from(parse_int(s)?)),
        Some((p, q)) => {
            let den = parse_int(q)?;
            if den.is_zero() {
                return Err(crate::Error::InvalidInput(format!(
                    "zero denominator in {s:?}"
                )));
            }
            Ok(Rational::new(parse_int(p)?, den))
        }
    }
}

/// Serialize an exact rational as `"p/q"`, or `"p"` when the denominator is 1.
pub fn rational_to_string(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Rational-to-f64 conversion that survives numerators and denominators far
/// outside the f64 range by normalizing bit lengths first.
pub fn rational_to_f64(r: &Rational) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    let num = r.numer().magnitude();
    let den = r.denom().magnitude();
    // Scale so the integer quotient carries 54..=56 bits, then round once.
    let e = num.bits() as i64 - den.bits() as i64 - 55;
    let q = if e >= 0 {
        num / (den << e as u64)
    } else {
        (num << (-e) as u64) / den
    };
    let digits = q.to_u64_digits();
    let lo = digits.first().copied().unwrap_or(0) as u128;
    let hi = digits.get(1).copied().unwrap_or(0) as u128;
    let f = ((hi << 64) | lo) as f64 * 2f64.powi(e as i32);
    if r.is_negative() {
        -f
    } else {
        f
    }
}

/// log2 of `|r|`, accurate to f64 precision, defined for nonzero `r` of any size.
pub fn rational_log2_abs(r: &Rational) -> f64 {
    assert!(!r.is_zero());
    let scaled_log = |x: &BigUint| -> f64 {
        let b = x.bits();
        let sh = b.saturating_sub(64);
        let top = (x >> sh).to_u64_digits();
        let m = top[0] as f64;
        m.log2() + sh as f64
    };
    scaled_log(r.numer().magnitude()) - scaled_log(r.denom().magnitude())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn double_factorial_examples() {
        // moment weight for exponent t = 4 is (t-1)!! = 3
        assert_eq!(double_factorial(4), BigInt::from(8));
        assert_eq!(double_factorial(3), BigInt::from(3));
        assert_eq!(double_factorial(0), BigInt::one());
        assert_eq!(double_factorial(-1), BigInt::one());
        assert_eq!(double_factorial(7), BigInt::from(105));
        assert_eq!(double_factorial(10), BigInt::from(3840));
    }

    #[test]
    fn rational_wire_format() {
        let r = rational_from_str("-35/384").unwrap();
        assert_eq!(rational_to_string(&r), "-35/384");
        let r = rational_from_str("7").unwrap();
        assert_eq!(rational_to_string(&r), "7");
        // normalization to lowest terms with positive denominator
        let r = rational_from_str("4/-8").unwrap();
        assert_eq!(rational_to_string(&r), "-1/2");
        assert!(rational_from_str("1/0").is_err());
    }

    #[test]
    fn big_rational_to_f64() {
        let r = Rational::new(BigInt::from(3), BigInt::from(4));
        assert!((rational_to_f64(&r) - 0.75).abs() < 1e-15);
        // value whose numerator alone overflows f64
        let big = BigInt::from(10u32).pow(400);
        let r = Rational::new(big.clone() * 3, big * 2);
        assert!((rational_to_f64(&r) - 1.5).abs() < 1e-12);
        let r = Rational::new(BigInt::from(-7), BigInt::from(2));
        assert!((rational_to_f64(&r) + 3.5).abs() < 1e-15);
    }

    #[test]
    fn log2_of_huge_rational() {
        let r = Rational::new(BigInt::from(2).pow(1000), BigInt::from(2).pow(100));
        assert!((rational_log2_abs(&r) - 900.0).abs() < 1e-9);
    }
}
