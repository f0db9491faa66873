//! Arbitrary-precision binary floating point on top of `BigUint` mantissas.
//!
//! Values are sign · mantissa · 2^exp with the mantissa rounded to the
//! working precision after every operation (round half away from zero, so
//! each operation is within one ulp of the exact result). Precision is
//! propagated as the max of the operand precisions, never silently reduced.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;

use super::Rational;

#[derive(Clone, Debug)]
pub struct ApFloat {
    sign: i8, // -1, 0, +1
    mant: BigUint,
    exp: i64,
    prec: u32,
}

impl ApFloat {
    pub fn zero(prec: u32) -> Self {
        ApFloat {
            sign: 0,
            mant: BigUint::zero(),
            exp: 0,
            prec,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.sign == 0
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    fn normalized(sign: i8, mut mant: BigUint, mut exp: i64, prec: u32) -> Self {
        if mant.is_zero() || sign == 0 {
            return ApFloat::zero(prec);
        }
        let bits = mant.bits();
        if bits > prec as u64 {
            let drop = bits - prec as u64;
            let half = BigUint::one() << (drop - 1);
            mant = (mant + half) >> drop;
            exp += drop as i64;
            // rounding can carry into one extra bit
            if mant.bits() > prec as u64 {
                mant >>= 1u8;
                exp += 1;
            }
        }
        ApFloat {
            sign,
            mant,
            exp,
            prec,
        }
    }

    pub fn from_i64(v: i64, prec: u32) -> Self {
        let sign = match v.cmp(&0) {
            Ordering::Less => -1,
            Ordering::Equal => 0,
            Ordering::Greater => 1,
        };
        ApFloat::normalized(sign, BigUint::from(v.unsigned_abs()), 0, prec)
    }

    pub fn from_rational(r: &Rational, prec: u32) -> Self {
        if r.is_zero() {
            return ApFloat::zero(prec);
        }
        let sign = if r.is_negative() { -1 } else { 1 };
        let num = r.numer().magnitude().clone();
        let den = r.denom().magnitude();
        // quotient carries prec + 8 guard bits before the final rounding
        let sh = prec as i64 + 8 + den.bits() as i64 - num.bits() as i64;
        let (mant, exp) = if sh >= 0 {
            ((num << sh as u64) / den, -sh)
        } else {
            (num / (den << (-sh) as u64), -sh)
        };
        ApFloat::normalized(sign, mant, exp, prec)
    }

    pub fn from_f64(v: f64, prec: u32) -> Self {
        assert!(v.is_finite(), "cannot build ApFloat from {v}");
        if v == 0.0 {
            return ApFloat::zero(prec);
        }
        let bits = v.to_bits();
        let sign = if v < 0.0 { -1 } else { 1 };
        let raw_exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (mant, exp) = if raw_exp == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), raw_exp - 1075)
        };
        ApFloat::normalized(sign, BigUint::from(mant), exp, prec)
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.mant.bits();
        let drop = bits.saturating_sub(63);
        let top = (&self.mant >> drop).to_u64().unwrap() as f64;
        let e = self.exp + drop as i64;
        let v = if e.abs() > 100_000 {
            if e > 0 {
                f64::INFINITY
            } else {
                0.0
            }
        } else {
            top * 2f64.powi(e as i32)
        };
        self.sign as f64 * v
    }

    /// log2 |x| to f64 accuracy; `None` for zero.
    pub fn log2_abs(&self) -> Option<f64> {
        if self.is_zero() {
            return None;
        }
        let bits = self.mant.bits();
        let drop = bits.saturating_sub(63);
        let top = (&self.mant >> drop).to_u64().unwrap() as f64;
        Some(top.log2() + (self.exp + drop as i64) as f64)
    }

    pub fn with_precision(&self, prec: u32) -> Self {
        ApFloat::normalized(self.sign, self.mant.clone(), self.exp, prec)
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        out.sign = -out.sign;
        out
    }

    pub fn abs(&self) -> Self {
        let mut out = self.clone();
        out.sign = out.sign.abs();
        out
    }

    /// Exact scaling by 2^k.
    pub fn mul_2exp(&self, k: i64) -> Self {
        let mut out = self.clone();
        if !out.is_zero() {
            out.exp += k;
        }
        out
    }

    pub fn add(&self, rhs: &ApFloat) -> Self {
        let prec = self.prec.max(rhs.prec);
        if self.is_zero() {
            return rhs.with_precision(prec);
        }
        if rhs.is_zero() {
            return self.with_precision(prec);
        }
        // If the magnitudes are too far apart the smaller operand only
        // matters through rounding; we return the larger one rounded, which
        // keeps the result within one ulp.
        let hi_a = self.exp + self.mant.bits() as i64;
        let hi_b = rhs.exp + rhs.mant.bits() as i64;
        let window = prec as i64 + 8;
        if hi_a - hi_b > window {
            return self.with_precision(prec);
        }
        if hi_b - hi_a > window {
            return rhs.with_precision(prec);
        }
        let lo = self.exp.min(rhs.exp);
        let ma = &self.mant << (self.exp - lo) as u64;
        let mb = &rhs.mant << (rhs.exp - lo) as u64;
        let (sign, mant) = if self.sign == rhs.sign {
            (self.sign, ma + mb)
        } else {
            match ma.cmp(&mb) {
                Ordering::Equal => return ApFloat::zero(prec),
                Ordering::Greater => (self.sign, ma - mb),
                Ordering::Less => (rhs.sign, mb - ma),
            }
        };
        ApFloat::normalized(sign, mant, lo, prec)
    }

    pub fn sub(&self, rhs: &ApFloat) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &ApFloat) -> Self {
        let prec = self.prec.max(rhs.prec);
        if self.is_zero() || rhs.is_zero() {
            return ApFloat::zero(prec);
        }
        ApFloat::normalized(
            self.sign * rhs.sign,
            &self.mant * &rhs.mant,
            self.exp + rhs.exp,
            prec,
        )
    }

    pub fn div(&self, rhs: &ApFloat) -> Self {
        let prec = self.prec.max(rhs.prec);
        assert!(!rhs.is_zero(), "ApFloat division by zero");
        if self.is_zero() {
            return ApFloat::zero(prec);
        }
        let sh = prec as u64 + 8 + rhs.mant.bits();
        let mant = (&self.mant << sh) / &rhs.mant;
        ApFloat::normalized(
            self.sign * rhs.sign,
            mant,
            self.exp - rhs.exp - sh as i64,
            prec,
        )
    }

    /// Square root of a nonnegative value.
    pub fn sqrt(&self) -> Self {
        assert!(self.sign >= 0, "ApFloat sqrt of negative value");
        if self.is_zero() {
            return self.clone();
        }
        // pad to an even exponent with 2·(prec+4) fractional guard bits
        let guard = 2 * (self.prec as u64 + 4);
        let mut exp = self.exp - guard as i64;
        let mut mant = &self.mant << guard;
        if exp % 2 != 0 {
            exp -= 1;
            mant <<= 1u8;
        }
        let root = mant.sqrt();
        ApFloat::normalized(1, root, exp / 2, self.prec)
    }

    pub fn cmp_abs(&self, rhs: &ApFloat) -> Ordering {
        self.abs().cmp_signed(&rhs.abs())
    }

    pub fn cmp_signed(&self, rhs: &ApFloat) -> Ordering {
        if self.sign != rhs.sign {
            return self.sign.cmp(&rhs.sign);
        }
        if self.sign == 0 {
            return Ordering::Equal;
        }
        let mag = {
            let hi_a = self.exp + self.mant.bits() as i64;
            let hi_b = rhs.exp + rhs.mant.bits() as i64;
            if hi_a != hi_b {
                hi_a.cmp(&hi_b)
            } else {
                let lo = self.exp.min(rhs.exp);
                let ma = &self.mant << (self.exp - lo) as u64;
                let mb = &rhs.mant << (rhs.exp - lo) as u64;
                ma.cmp(&mb)
            }
        };
        if self.sign > 0 {
            mag
        } else {
            mag.reverse()
        }
    }

    /// m-th root of a positive value, by Newton iteration seeded from f64.
    pub fn nth_root(&self, m: u64) -> Self {
        assert!(self.sign > 0 && m >= 1);
        if m == 1 {
            return self.clone();
        }
        let prec = self.prec;
        let work = prec + 16;
        let x = self.with_precision(work);
        // seed from log2 so huge/tiny magnitudes cannot overflow f64
        let seed_log2 = self.log2_abs().unwrap() / m as f64;
        let seed_exp = seed_log2.floor();
        let seed = ApFloat::from_f64(2f64.powf(seed_log2 - seed_exp), work)
            .mul_2exp(seed_exp as i64);
        let mf = ApFloat::from_i64(m as i64, work);
        let m_minus_1 = ApFloat::from_i64(m as i64 - 1, work);
        let mut y = seed;
        for _ in 0..80 {
            // y <- ((m-1) y + x / y^(m-1)) / m
            let mut ypow = ApFloat::from_i64(1, work);
            for _ in 0..(m - 1) {
                ypow = ypow.mul(&y);
            }
            let next = m_minus_1.mul(&y).add(&x.div(&ypow)).div(&mf);
            let delta = next.sub(&y);
            y = next;
            if delta.is_zero()
                || delta.log2_abs().unwrap() < y.log2_abs().unwrap() - (prec as f64 + 4.0)
            {
                break;
            }
        }
        y.with_precision(prec)
    }

    /// π at the given precision (Machin's formula with integer spigots).
    pub fn pi(prec: u32) -> Self {
        let guard = prec as u64 + 32;
        let atan_inv = |m: u64| -> BigInt {
            // atan(1/m) · 2^guard = Σ (-1)^j 2^guard / ((2j+1) m^(2j+1))
            let scale = BigInt::one() << guard;
            let m2 = BigInt::from(m * m);
            let mut term = scale / m;
            let mut total = BigInt::zero();
            let mut j = 0u64;
            while !term.is_zero() {
                let contrib = &term / (2 * j + 1);
                if j % 2 == 0 {
                    total += contrib;
                } else {
                    total -= contrib;
                }
                term = &term / &m2;
                j += 1;
            }
            total
        };
        let pi_scaled: BigInt = atan_inv(5) * 16 - atan_inv(239) * 4;
        ApFloat::normalized(
            1,
            pi_scaled.magnitude().clone(),
            -(guard as i64),
            prec,
        )
    }
}

impl PartialEq for ApFloat {
    fn eq(&self, other: &Self) -> bool {
        self.cmp_signed(other) == Ordering::Equal
    }
}

impl std::fmt::Display for ApFloat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:e}", self.to_f64())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(a: i64, b: i64) -> Rational {
        Rational::new(BigInt::from(a), BigInt::from(b))
    }

    #[test]
    fn roundtrip_small_values() {
        let x = ApFloat::from_f64(1.5, 128);
        assert_eq!(x.to_f64(), 1.5);
        let y = ApFloat::from_rational(&q(-7, 4), 128);
        assert_eq!(y.to_f64(), -1.75);
        assert_eq!(ApFloat::from_i64(42, 64).to_f64(), 42.0);
    }

    #[test]
    fn arithmetic_matches_f64_on_representables() {
        let a = ApFloat::from_f64(3.25, 96);
        let b = ApFloat::from_f64(-0.5, 96);
        assert_eq!(a.add(&b).to_f64(), 2.75);
        assert_eq!(a.mul(&b).to_f64(), -1.625);
        assert_eq!(a.sub(&a).to_f64(), 0.0);
        assert_eq!(a.div(&b).to_f64(), -6.5);
    }

    #[test]
    fn division_accuracy_at_high_precision() {
        // 1/3 at 256 bits: 3·(1/3) - 1 must vanish to ~2^-255
        let one = ApFloat::from_i64(1, 256);
        let three = ApFloat::from_i64(3, 256);
        let third = one.div(&three);
        let resid = third.mul(&three).sub(&one);
        assert!(resid.is_zero() || resid.log2_abs().unwrap() < -250.0);
    }

    #[test]
    fn sqrt_of_two() {
        let two = ApFloat::from_i64(2, 200);
        let r = two.sqrt();
        let resid = r.mul(&r).sub(&two);
        assert!(resid.is_zero() || resid.log2_abs().unwrap() < -195.0);
        assert!((r.to_f64() - std::f64::consts::SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn pi_to_double_accuracy_and_beyond() {
        let pi = ApFloat::pi(128);
        assert!((pi.to_f64() - std::f64::consts::PI).abs() < 1e-15);
        // self-consistency across precisions
        let hi = ApFloat::pi(256);
        let diff = hi.sub(&pi.with_precision(256));
        assert!(diff.is_zero() || diff.log2_abs().unwrap() < -120.0);
    }

    #[test]
    fn nth_root_inverts_powers() {
        let x = ApFloat::from_rational(&q(19, 24), 160);
        let mut x5 = ApFloat::from_i64(1, 160);
        for _ in 0..5 {
            x5 = x5.mul(&x);
        }
        let back = x5.nth_root(5);
        let resid = back.sub(&x);
        assert!(resid.is_zero() || resid.log2_abs().unwrap() < -150.0);
    }

    #[test]
    fn nth_root_survives_f64_underflow_scale() {
        // 2^-2000 is far below f64 range
        let tiny = ApFloat::from_i64(1, 128).mul_2exp(-2000);
        let r = tiny.nth_root(100);
        assert!((r.log2_abs().unwrap() + 20.0).abs() < 1e-9);
    }

    #[test]
    fn ordering() {
        let a = ApFloat::from_f64(-1.0, 64);
        let b = ApFloat::from_f64(0.5, 64);
        let c = ApFloat::from_f64(0.25, 64);
        assert_eq!(a.cmp_signed(&b), Ordering::Less);
        assert_eq!(b.cmp_signed(&c), Ordering::Greater);
        assert_eq!(b.cmp_abs(&a), Ordering::Less);
        assert_eq!(
            ApFloat::zero(64).cmp_signed(&ApFloat::zero(128)),
            Ordering::Equal
        );
    }

    #[test]
    fn precision_propagates_upward() {
        let a = ApFloat::from_i64(1, 64);
        let b = ApFloat::from_i64(3, 192);
        assert_eq!(a.div(&b).precision(), 192);
        assert_eq!(b.add(&a).precision(), 192);
    }
}
