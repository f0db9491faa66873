//! Exact computation of the graph-count polynomial A_n(λ) by Gaussian-moment
//! coefficient extraction, pointwise evaluation for numeric markings, and the
//! prefactor inversion that exposes the sphere integral I_nK.
//!
//! A_n = Σ_{|s| = nM} Π_i (2s_i - 1)!! · [x^{2s}] V^{nK} / (nK)!  — the series
//! form is used for exactness; the integral form only feeds diagnostics.

use crate::algebra::{
    double_factorial, factorial, sparse_pow, ApComplex, ApFloat, Budget, LambdaPoly, Rational,
};
use crate::potential::Potential;
use crate::{Error, Result};
use num_bigint::BigInt;
use num_traits::One;

/// The exact polynomial A_n(λ).
///
/// Returns the zero polynomial when nK or nM is not an integer, and the
/// constant 1 at n = 0 (only the empty graph has Euler characteristic 0).
pub fn compute_an(p: &Potential, n: u64, budget: &Budget) -> Result<LambdaPoly> {
    let report = p.validate();
    if !report.is_valid() {
        return Err(Error::InvalidInput(report.violations.join("; ")));
    }
    if n == 0 {
        return Ok(LambdaPoly::one());
    }
    let (Some(nk), Some(nm)) = (p.nk(n), p.nm(n)) else {
        return Ok(LambdaPoly::zero());
    };
    let vpow = sparse_pow(&p.monomial_poly(), nk, budget)?;
    // enumerate the stored support once; each all-even exponent 2s satisfies
    // |s| = nM automatically by homogeneity
    let mut acc = LambdaPoly::zero();
    for (w, coeff) in vpow.terms() {
        if !w.all_even() {
            continue;
        }
        let s = w.half();
        debug_assert_eq!(s.total(), nm);
        let weight = s
            .0
            .iter()
            .fold(BigInt::one(), |acc, &si| acc * double_factorial(2 * si as i64 - 1));
        acc = &acc + &coeff.scale(&Rational::from_integer(weight));
    }
    let nk_fact = Rational::new(BigInt::one(), BigInt::from(factorial(nk)));
    Ok(acc.scale(&nk_fact))
}

/// Exact rational value of A_n for a potential whose markings are rational
/// constants (λ-degree 0).
pub fn an_at_point(p: &Potential, n: u64, budget: &Budget) -> Result<Rational> {
    if p.max_marking_degree() != 0 {
        return Err(Error::InvalidInput(
            "an_at_point requires numeric (degree-0) markings".into(),
        ));
    }
    let a = compute_an(p, n, budget)?;
    Ok(a.coeff(0))
}

/// The sphere integral I_nK(λ) = ∫_{S^{d-1}} V^{nK} ω, recovered from the
/// exact A_n by inverting the moment prefactor:
///
/// I = A_n(λ) · (2π)^{d/2} (nK)! / (2^{nM+(d-2)/2} (nM + (d-2)/2)!).
///
/// Half-integer factorials (odd d) are Gamma values, reduced to exact
/// rationals times √π.
pub fn sphere_integral(
    p: &Potential,
    n: u64,
    lam: &ApComplex,
    budget: &Budget,
) -> Result<ApComplex> {
    let (Some(nk), Some(nm)) = (p.nk(n), p.nm(n)) else {
        return Err(Error::InvalidInput(
            "sphere integral needs integer nK and nM".into(),
        ));
    };
    let prec = lam.precision().max(53);
    let work = prec + 16;
    let a = compute_an(p, n, budget)?;
    let (value, _bound) = crate::algebra::eval_complex(&a, &lam.with_precision(work));

    let d = p.d() as u64;
    let pi = ApFloat::pi(work);
    // numerator (2π)^{d/2} · (nK)!
    let two_pi = pi.mul_2exp(1);
    let mut num = ApFloat::from_rational(
        &Rational::from_integer(BigInt::from(factorial(nk))),
        work,
    );
    for _ in 0..d / 2 {
        num = num.mul(&two_pi);
    }
    if d % 2 == 1 {
        num = num.mul(&two_pi.sqrt());
    }
    // denominator 2^{nM+(d-2)/2} · (nM + (d-2)/2)!
    let den = if d % 2 == 0 {
        let shift = nm as i64 + (d as i64 - 2) / 2;
        let f = ApFloat::from_rational(
            &Rational::from_integer(BigInt::from(factorial(nm + (d - 2) / 2))),
            work,
        );
        f.mul_2exp(shift)
    } else {
        // (m + 1/2)! = Γ(m + 3/2) = √π (2m+2)! / (4^{m+1} (m+1)!)
        let m = nm + (d - 3) / 2;
        let gamma_rat = Rational::new(
            BigInt::from(factorial(2 * m + 2)),
            BigInt::from(factorial(m + 1)) << (2 * (m as usize + 1)),
        );
        let f = ApFloat::from_rational(&gamma_rat, work).mul(&pi.sqrt());
        // 2^{nM + (d-2)/2} = 2^{nM + (d-3)/2} √2
        f.mul_2exp(nm as i64 + (d as i64 - 3) / 2)
            .mul(&ApFloat::from_i64(2, work).sqrt())
    };
    let scale = num.div(&den);
    Ok(value.scale(&scale).with_precision(prec))
}
