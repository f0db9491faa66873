//! Sparse multivariate polynomials in the colour variables, with dense
//! λ-polynomial coefficients.
//!
//! Support stays tiny for homogeneous potentials, so terms live in a
//! `BTreeMap` keyed by lexicographically ordered multi-indices; every
//! traversal and serialization is therefore deterministic.

use super::{LambdaPoly, MultiIndex};
use crate::{Error, Result};
use rayon::prelude::*;
use std::collections::BTreeMap;

/// Budget for exact computations, measured in total coefficient bits.
///
/// `LEEYANG_MAX_MEM` (bytes) overrides the default cap of 2^33 bits (~1 GiB).
#[derive(Clone, Copy, Debug)]
pub struct Budget {
    pub max_bits: u64,
}

impl Default for Budget {
    fn default() -> Self {
        let max_bits = std::env::var("LEEYANG_MAX_MEM")
            .ok()
            .and_then(|v| v.parse::<u64>().ok())
            .map(|bytes| bytes.saturating_mul(8))
            .unwrap_or(1u64 << 33);
        Budget { max_bits }
    }
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget { max_bits: u64::MAX }
    }

    fn check(&self, bits: u64, what: &str) -> Result<()> {
        if bits > self.max_bits {
            Err(Error::Resource(format!(
                "{what}: {bits} coefficient bits exceed the budget of {} \
                 (raise LEEYANG_MAX_MEM to override)",
                self.max_bits
            )))
        } else {
            Ok(())
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparsePoly {
    d: usize,
    terms: BTreeMap<MultiIndex, LambdaPoly>,
}

impl SparsePoly {
    pub fn zero(d: usize) -> Self {
        SparsePoly {
            d,
            terms: BTreeMap::new(),
        }
    }

    /// The constant polynomial 1 in d variables.
    pub fn one(d: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(MultiIndex::new(vec![0; d]), LambdaPoly::one());
        SparsePoly { d, terms }
    }

    pub fn from_terms(d: usize, entries: impl IntoIterator<Item = (MultiIndex, LambdaPoly)>) -> Self {
        let mut terms = BTreeMap::new();
        for (w, c) in entries {
            assert_eq!(w.dim(), d, "multi-index dimension mismatch");
            if !c.is_zero() {
                match terms.remove(&w) {
                    None => {
                        terms.insert(w, c);
                    }
                    Some(prev) => {
                        let sum = &prev + &c;
                        if !sum.is_zero() {
                            terms.insert(w, sum);
                        }
                    }
                }
            }
        }
        SparsePoly { d, terms }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &LambdaPoly)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, w: &MultiIndex) -> LambdaPoly {
        self.terms.get(w).cloned().unwrap_or_else(LambdaPoly::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn bit_size(&self) -> u64 {
        self.terms.values().map(|c| c.bit_size()).sum()
    }

    /// True when every term has total degree `k`.
    pub fn is_homogeneous_of_degree(&self, k: u64) -> bool {
        self.terms.keys().all(|w| w.total() == k)
    }

    /// Partial derivative with respect to variable `i`.
    pub fn derivative(&self, i: usize) -> SparsePoly {
        let entries = self.terms.iter().filter_map(|(w, c)| {
            let e = w.0[i];
            if e == 0 {
                return None;
            }
            let mut v = w.0.clone();
            v[i] = e - 1;
            Some((
                MultiIndex::new(v),
                c.scale(&super::Rational::from_integer(e.into())),
            ))
        });
        SparsePoly::from_terms(self.d, entries)
    }

    /// Product with per-term parallelism and a deterministic merge order.
    pub fn mul(&self, rhs: &SparsePoly, budget: &Budget) -> Result<SparsePoly> {
        assert_eq!(self.d, rhs.d);
        let left: Vec<_> = self.terms.iter().collect();
        let partials: Vec<BTreeMap<MultiIndex, LambdaPoly>> = left
            .par_iter()
            .map(|(w, c)| {
                let mut local = BTreeMap::new();
                for (v, b) in &rhs.terms {
                    let key = w.add(v);
                    let prod = *c * b;
                    match local.remove(&key) {
                        None => {
                            local.insert(key, prod);
                        }
                        Some(prev) => {
                            local.insert(key, &prev + &prod);
                        }
                    }
                }
                local
            })
            .collect();
        let mut terms: BTreeMap<MultiIndex, LambdaPoly> = BTreeMap::new();
        for local in partials {
            for (k, v) in local {
                match terms.remove(&k) {
                    None => {
                        terms.insert(k, v);
                    }
                    Some(prev) => {
                        let sum = &prev + &v;
                        if !sum.is_zero() {
                            terms.insert(k, sum);
                        }
                    }
                }
            }
        }
        let out = SparsePoly { d: self.d, terms };
        budget.check(out.bit_size(), "sparse polynomial product")?;
        Ok(out)
    }
}

/// Exact e-th power by binary powering.
///
/// A homogeneous input of degree k yields a homogeneous output of degree k·e.
pub fn sparse_pow(p: &SparsePoly, e: u64, budget: &Budget) -> Result<SparsePoly> {
    let mut result = SparsePoly::one(p.d());
    if e == 0 {
        return Ok(result);
    }
    let mut base = p.clone();
    let mut exp = e;
    loop {
        if exp & 1 == 1 {
            result = result.mul(&base, budget)?;
        }
        exp >>= 1;
        if exp == 0 {
            break;
        }
        base = base.mul(&base, budget)?;
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Rational;
    use num_bigint::BigInt;

    fn q(a: i64, b: i64) -> Rational {
        Rational::new(BigInt::from(a), BigInt::from(b))
    }

    /// The running 4-regular example potential as a raw monomial polynomial:
    /// x1^4/24 + λ x1²x2²/4 + λ² x2^4/24.
    fn v_ising1() -> SparsePoly {
        SparsePoly::from_terms(
            2,
            vec![
                (MultiIndex::new(vec![4, 0]), LambdaPoly::constant(q(1, 24))),
                (MultiIndex::new(vec![2, 2]), LambdaPoly::monomial(q(1, 4), 1)),
                (MultiIndex::new(vec![0, 4]), LambdaPoly::monomial(q(1, 24), 2)),
            ],
        )
    }

    #[test]
    fn zeroth_power_is_one() {
        let one = sparse_pow(&v_ising1(), 0, &Budget::default()).unwrap();
        assert_eq!(one, SparsePoly::one(2));
    }

    #[test]
    fn square_matches_hand_expansion() {
        let v2 = sparse_pow(&v_ising1(), 2, &Budget::default()).unwrap();
        // [x1^4 x2^4] V² = λ²(1/16 + 1/288) = 19λ²/288
        assert_eq!(
            v2.coeff(&MultiIndex::new(vec![4, 4])),
            LambdaPoly::monomial(q(19, 288), 2)
        );
        assert_eq!(
            v2.coeff(&MultiIndex::new(vec![8, 0])),
            LambdaPoly::constant(q(1, 576))
        );
        assert_eq!(
            v2.coeff(&MultiIndex::new(vec![6, 2])),
            LambdaPoly::monomial(q(1, 48), 1)
        );
    }

    #[test]
    fn powers_stay_homogeneous() {
        let v3 = sparse_pow(&v_ising1(), 3, &Budget::default()).unwrap();
        assert!(v3.is_homogeneous_of_degree(12));
    }

    #[test]
    fn binary_powering_matches_naive() {
        let v = v_ising1();
        let budget = Budget::default();
        let mut naive = SparsePoly::one(2);
        for _ in 0..5 {
            naive = naive.mul(&v, &budget).unwrap();
        }
        assert_eq!(sparse_pow(&v, 5, &budget).unwrap(), naive);
    }

    #[test]
    fn budget_violation_reports_resource_error() {
        let tiny = Budget { max_bits: 4 };
        let err = sparse_pow(&v_ising1(), 3, &tiny).unwrap_err();
        assert!(matches!(err, crate::Error::Resource(_)));
    }

    #[test]
    fn derivative_of_running_example() {
        // ∂1 V = x1³/6 + λ x1 x2²/2
        let d1 = v_ising1().derivative(0);
        assert_eq!(
            d1.coeff(&MultiIndex::new(vec![3, 0])),
            LambdaPoly::constant(q(1, 6))
        );
        assert_eq!(
            d1.coeff(&MultiIndex::new(vec![1, 2])),
            LambdaPoly::monomial(q(1, 2), 1)
        );
        assert_eq!(d1.num_terms(), 2);
    }
}
