//! The vertex-weight datum V(x, λ): a homogeneous degree-k polynomial in d
//! colour variables whose monomial x^w/w! carries the λ-polynomial marking
//! Λ_w, together with the derived constants K = 2/(k-2) and M = k/(k-2).
//!
//! Λ_w is stored raw; the 1/w! convention is folded in whenever the
//! monomial polynomial is materialized.

use crate::algebra::{rational_from_str, LambdaPoly, MultiIndex, Rational, SparsePoly};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Potential {
    d: usize,
    k: u32,
    lambdas: BTreeMap<MultiIndex, LambdaPoly>,
}

/// Outcome of structural validation, with one entry per violation.
#[derive(Clone, Debug, Default, Serialize)]
pub struct ValidationReport {
    pub homogeneous: bool,
    pub nonempty_support: bool,
    pub violations: Vec<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Whether A_n can be nonzero for a given n: both nK and nM must be integers.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct Admissibility {
    pub nk_integer: bool,
    pub nm_integer: bool,
}

impl Admissibility {
    pub fn admissible(&self) -> bool {
        self.nk_integer && self.nm_integer
    }
}

impl Potential {
    /// Build from raw Λ_w markings; requires k >= 3 and validates support.
    pub fn new(
        d: usize,
        k: u32,
        lambdas: impl IntoIterator<Item = (MultiIndex, LambdaPoly)>,
    ) -> Result<Potential> {
        if k < 3 {
            return Err(Error::InvalidInput(format!(
                "homogeneity degree k = {k} must be at least 3 (K and M need k > 2)"
            )));
        }
        if d == 0 {
            return Err(Error::InvalidInput("colour count d must be positive".into()));
        }
        let mut map = BTreeMap::new();
        for (w, lam) in lambdas {
            if w.dim() != d {
                return Err(Error::InvalidInput(format!(
                    "marking index {w} has dimension {} but d = {d}",
                    w.dim()
                )));
            }
            if !lam.is_zero() {
                map.insert(w, lam);
            }
        }
        let p = Potential { d, k, lambdas: map };
        let report = p.validate();
        if !report.is_valid() {
            return Err(Error::InvalidInput(report.violations.join("; ")));
        }
        Ok(p)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// K = 2/(k-2), recomputed on demand.
    pub fn cap_k(&self) -> Rational {
        Rational::new(BigInt::from(2), BigInt::from(self.k - 2))
    }

    /// M = k/(k-2), recomputed on demand.
    pub fn cap_m(&self) -> Rational {
        Rational::new(BigInt::from(self.k), BigInt::from(self.k - 2))
    }

    pub fn markings(&self) -> impl Iterator<Item = (&MultiIndex, &LambdaPoly)> {
        self.lambdas.iter()
    }

    pub fn marking(&self, w: &MultiIndex) -> LambdaPoly {
        self.lambdas.get(w).cloned().unwrap_or_else(LambdaPoly::zero)
    }

    /// Largest λ-degree over the support.
    pub fn max_marking_degree(&self) -> usize {
        self.lambdas
            .values()
            .filter_map(|l| l.degree())
            .max()
            .unwrap_or(0)
    }

    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport {
            homogeneous: true,
            nonempty_support: !self.lambdas.is_empty(),
            violations: Vec::new(),
        };
        if !report.nonempty_support {
            report.violations.push("support is empty".into());
        }
        for w in self.lambdas.keys() {
            if w.total() != self.k as u64 {
                report.homogeneous = false;
                report
                    .violations
                    .push(format!("term {w} has degree {} ≠ k = {}", w.total(), self.k));
            }
        }
        report
    }

    /// Integrality of nK and nM; A_n = 0 whenever either fails.
    pub fn admissibility(&self, n: u64) -> Admissibility {
        let n = Rational::from_integer(BigInt::from(n));
        Admissibility {
            nk_integer: (self.cap_k() * &n).is_integer(),
            nm_integer: (self.cap_m() * &n).is_integer(),
        }
    }

    /// nK as an integer, when admissible.
    pub fn nk(&self, n: u64) -> Option<u64> {
        let v = self.cap_k() * Rational::from_integer(BigInt::from(n));
        v.is_integer().then(|| v.to_integer().try_into().unwrap())
    }

    /// nM as an integer, when admissible.
    pub fn nm(&self, n: u64) -> Option<u64> {
        let v = self.cap_m() * Rational::from_integer(BigInt::from(n));
        v.is_integer().then(|| v.to_integer().try_into().unwrap())
    }

    /// Materialize V as a monomial polynomial: Σ Λ_w(λ) x^w / w!.
    pub fn monomial_poly(&self) -> SparsePoly {
        SparsePoly::from_terms(
            self.d,
            self.lambdas.iter().map(|(w, lam)| {
                let wfact = Rational::new(BigInt::one(), BigInt::from(w.factorial()));
                (w.clone(), lam.scale(&wfact))
            }),
        )
    }

    /// Scale every marking by an exact rational (V ↦ c·V).
    pub fn scaled(&self, c: &Rational) -> Potential {
        Potential {
            d: self.d,
            k: self.k,
            lambdas: self
                .lambdas
                .iter()
                .map(|(w, l)| (w.clone(), l.scale(c)))
                .collect(),
        }
    }

    /// Substitute an exact rational value for λ in every marking.
    pub fn at_lambda(&self, x: &Rational) -> Potential {
        Potential {
            d: self.d,
            k: self.k,
            lambdas: self
                .lambdas
                .iter()
                .filter_map(|(w, l)| {
                    let v = l.eval_rational(x);
                    (!v.is_zero()).then(|| (w.clone(), LambdaPoly::constant(v)))
                })
                .collect(),
        }
    }
}

// ---- Ising family builders ----

/// The bivariate master polynomial at an exact parameter point:
/// Λ_(i, k-i) = J^i h^(i mod 2), so the monomial x1^i x2^(k-i) carries the
/// coefficient J^i h^(i mod 2) / (i! (k-i)!).
pub fn ising_master(k: u32, j: &Rational, h: &Rational) -> Result<Potential> {
    let terms: Vec<_> = (0..=k)
        .filter_map(|i| {
            let mut c = pow_rational(j, i);
            if i % 2 == 1 {
                c *= h;
            }
            (!c.is_zero())
                .then(|| (MultiIndex::new(vec![i, k - i]), LambdaPoly::constant(c)))
        })
        .collect();
    Potential::new(2, k, terms)
}

/// First specialization (coupling-squared mode): J = √λ symbolically, h = 0.
/// Only even i survive, and colours are swapped so that x1^k carries λ^0,
/// matching the running example; the swap relabels colours and leaves every
/// A_n unchanged.
pub fn ising_v1(k: u32) -> Result<Potential> {
    let terms: Vec<_> = (0..=k)
        .filter(|i| i % 2 == 0 && (k - i) % 2 == 0)
        .map(|i| {
            (
                MultiIndex::new(vec![k - i, i]),
                LambdaPoly::monomial(Rational::one(), (i / 2) as usize),
            )
        })
        .collect();
    Potential::new(2, k, terms)
}

/// Second specialization (fugacity mode): J = 1, h = λ symbolically.
pub fn ising_v2(k: u32) -> Result<Potential> {
    let terms: Vec<_> = (0..=k)
        .map(|i| {
            (
                MultiIndex::new(vec![i, k - i]),
                LambdaPoly::monomial(Rational::one(), (i % 2) as usize),
            )
        })
        .collect();
    Potential::new(2, k, terms)
}

/// Single-monomial control potential V = x1^k / k!.
pub fn monomial_potential(k: u32) -> Result<Potential> {
    Potential::new(2, k, vec![(MultiIndex::new(vec![k, 0]), LambdaPoly::one())])
}

fn pow_rational(r: &Rational, e: u32) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..e {
        acc *= r;
    }
    acc
}

// ---- JSON config I/O ----

#[derive(Serialize, Deserialize)]
struct TermConfig {
    w: Vec<u32>,
    lambda: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct PotentialConfig {
    d: usize,
    k: u32,
    terms: Vec<TermConfig>,
}

impl Potential {
    pub fn to_json(&self) -> String {
        let cfg = PotentialConfig {
            d: self.d,
            k: self.k,
            terms: self
                .lambdas
                .iter()
                .map(|(w, lam)| TermConfig {
                    w: w.0.clone(),
                    lambda: lam.to_strings(),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&cfg).expect("potential config serialization")
    }

    pub fn from_json(s: &str) -> Result<Potential> {
        let cfg: PotentialConfig = serde_json::from_str(s)
            .map_err(|e| Error::InvalidInput(format!("bad potential config: {e}")))?;
        let terms = cfg
            .terms
            .into_iter()
            .map(|t| {
                let coeffs = t
                    .lambda
                    .iter()
                    .map(|s| rational_from_str(s))
                    .collect::<Result<Vec<_>>>()?;
                Ok((MultiIndex::new(t.w), LambdaPoly::from_coeffs(coeffs)))
            })
            .collect::<Result<Vec<_>>>()?;
        Potential::new(cfg.d, cfg.k, terms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> Rational {
        Rational::new(BigInt::from(a), BigInt::from(b))
    }

    #[test]
    fn derived_constants() {
        let p = ising_v1(4).unwrap();
        assert_eq!(p.cap_k(), q(1, 1));
        assert_eq!(p.cap_m(), q(2, 1));
        let p3 = ising_master(3, &q(1, 1), &q(1, 1)).unwrap();
        assert_eq!(p3.cap_k(), q(2, 1));
        assert_eq!(p3.cap_m(), q(3, 1));
    }

    #[test]
    fn k_below_three_rejected() {
        assert!(matches!(ising_v1(2), Err(Error::InvalidInput(_))));
        assert!(Potential::new(2, 2, vec![]).is_err());
    }

    #[test]
    fn v1_matches_running_example() {
        // x1^4/4!, λ x1²x2²/(2!2!), λ² x2^4/4!
        let p = ising_v1(4).unwrap();
        assert_eq!(p.marking(&MultiIndex::new(vec![4, 0])), LambdaPoly::one());
        assert_eq!(
            p.marking(&MultiIndex::new(vec![2, 2])),
            LambdaPoly::monomial(Rational::one(), 1)
        );
        assert_eq!(
            p.marking(&MultiIndex::new(vec![0, 4])),
            LambdaPoly::monomial(Rational::one(), 2)
        );
        let v = p.monomial_poly();
        assert_eq!(
            v.coeff(&MultiIndex::new(vec![2, 2])),
            LambdaPoly::monomial(q(1, 4), 1)
        );
        assert_eq!(
            v.coeff(&MultiIndex::new(vec![4, 0])),
            LambdaPoly::constant(q(1, 24))
        );
    }

    #[test]
    fn v1_support_is_even_only() {
        for k in [4u32, 6, 8] {
            let p = ising_v1(k).unwrap();
            assert!(p.markings().all(|(w, _)| w.0.iter().all(|e| e % 2 == 0)));
        }
    }

    #[test]
    fn master_at_unit_point_sums_to_one_third() {
        // k=4, J=1, h=0: coefficients 1/24 + 1/4 + 1/24 at x = (1,1)
        let p = ising_master(4, &Rational::one(), &Rational::zero()).unwrap();
        let total: Rational = p
            .monomial_poly()
            .terms()
            .map(|(_, c)| c.eval_rational(&Rational::zero()))
            .sum();
        assert_eq!(total, q(1, 3));
    }

    #[test]
    fn master_with_zero_field_has_even_support() {
        let p = ising_master(5, &q(2, 3), &Rational::zero()).unwrap();
        assert!(p.markings().all(|(w, _)| w.0[0] % 2 == 0));
    }

    #[test]
    fn admissibility_flags() {
        let p5 = monomial_potential(5).unwrap();
        let a = p5.admissibility(1);
        // nK = 2/3 is not an integer, so A_1 = 0
        assert!(!a.nk_integer && !a.admissible());
        let a3 = p5.admissibility(3);
        assert!(a3.admissible());
        let p4 = ising_v1(4).unwrap();
        assert!((0..10).all(|n| p4.admissibility(n).admissible()));
    }

    #[test]
    fn mixed_degree_support_rejected() {
        let err = Potential::new(
            2,
            4,
            vec![
                (MultiIndex::new(vec![4, 0]), LambdaPoly::one()),
                (MultiIndex::new(vec![2, 1]), LambdaPoly::one()),
            ],
        );
        assert!(matches!(err, Err(Error::InvalidInput(_))));
    }

    #[test]
    fn json_roundtrip_is_exact() {
        for p in [
            ising_v1(4).unwrap(),
            ising_v2(4).unwrap(),
            ising_master(3, &q(22, 7), &q(-5, 3)).unwrap(),
            monomial_potential(6).unwrap(),
        ] {
            assert_eq!(Potential::from_json(&p.to_json()).unwrap(), p);
        }
    }

    #[test]
    fn v2_is_master_at_unit_coupling() {
        // substituting λ = c into v2's markings matches ising_master(1, c)
        let v2 = ising_v2(4).unwrap();
        let c = q(3, 7);
        let master = ising_master(4, &Rational::one(), &c).unwrap();
        assert_eq!(v2.at_lambda(&c), master);
    }

    #[test]
    fn v1_specializes_from_master_pointwise() {
        // at λ = t², v1's markings equal master(J = t, h = 0) up to the
        // colour swap
        let v1 = ising_v1(4).unwrap();
        let t = q(2, 5);
        let master = ising_master(4, &t, &Rational::zero()).unwrap();
        let swapped: Vec<_> = master
            .markings()
            .map(|(w, l)| (MultiIndex::new(vec![w.0[1], w.0[0]]), l.clone()))
            .collect();
        let master_swapped = Potential::new(2, 4, swapped).unwrap();
        assert_eq!(v1.at_lambda(&(&t * &t)), master_swapped);
    }
}
