//! Certified simultaneous root finding at arbitrary precision.
//!
//! Aberth–Ehrlich iteration in Jacobi form: every correction in a sweep is
//! computed from the previous iterate, so sweeps are order-independent,
//! parallelizable, and bit-identical across schedules. Residuals are
//! certified with the Horner error bound from `algebra::eval_complex`;
//! failure escalates the working precision (×2, up to 2048 bits).
//!
//! Aberth–Ehrlich is the primary method because the polynomials of interest
//! carry coefficients spanning hundreds of orders of magnitude (double
//! factorials against 1/w!), which rules out fixed-precision companion
//! matrices; those survive only as a low-precision test oracle.

use crate::algebra::{ApComplex, ApFloat, LambdaPoly, Rational};
use crate::{Error, Result};
use rayon::prelude::*;
use serde::Serialize;

/// Exact coefficient input, ascending powers.
#[derive(Clone, Debug)]
pub enum PolyInput {
    /// Exact rationals, re-rounded from scratch at every precision.
    Rational(Vec<Rational>),
    /// Dyadic complex values, taken as exact.
    Complex(Vec<ApComplex>),
}

impl PolyInput {
    fn len(&self) -> usize {
        match self {
            PolyInput::Rational(v) => v.len(),
            PolyInput::Complex(v) => v.len(),
        }
    }

    fn materialize(&self, prec: u32) -> Vec<ApComplex> {
        match self {
            PolyInput::Rational(v) => v
                .iter()
                .map(|r| ApComplex::from_rational(r, prec))
                .collect(),
            PolyInput::Complex(v) => v.iter().map(|c| c.with_precision(prec)).collect(),
        }
    }

    pub fn from_lambda_poly(p: &LambdaPoly) -> Self {
        PolyInput::Rational(p.coeffs().to_vec())
    }
}

/// Certified roots with residuals, multiplicity clusters flagged.
///
/// `roots.len()` always equals the polynomial degree; members of one
/// cluster all carry the cluster centroid.
#[derive(Clone, Debug)]
pub struct RootSet {
    pub roots: Vec<ApComplex>,
    /// Relative residual |p(z)| / Σ|a_i| max(1,|z|)^i per root entry.
    pub residuals: Vec<f64>,
    pub precision_bits: u32,
    pub polynomial_degree: usize,
    /// Index groups of size ≥ 2 marking multiplicity clusters.
    pub clusters: Vec<Vec<usize>>,
}

impl RootSet {
    /// Roots with duplicates merged: (centroid, multiplicity).
    pub fn distinct(&self) -> Vec<(ApComplex, usize)> {
        let mut covered = vec![false; self.roots.len()];
        let mut out = Vec::new();
        for cluster in &self.clusters {
            out.push((self.roots[cluster[0]].clone(), cluster.len()));
            for &i in cluster {
                covered[i] = true;
            }
        }
        for (i, root) in self.roots.iter().enumerate() {
            if !covered[i] {
                out.push((root.clone(), 1));
            }
        }
        out.sort_by(|a, b| {
            let (ar, ai) = a.0.to_f64();
            let (br, bi) = b.0.to_f64();
            ar.total_cmp(&br).then(ai.total_cmp(&bi))
        });
        out
    }
}

/// Default working precision for a given degree.
pub fn default_precision(degree: usize) -> u32 {
    128u32.max(4 * degree as u32)
}

const MAX_PRECISION: u32 = 2048;
const MAX_SWEEPS: usize = 160;

/// Find all complex roots with certified residuals.
///
/// Exact zero coefficients at the low end are deflated into an exact root
/// cluster at 0 before iteration. Initial points sit on a circle of radius
/// min(Cauchy bound, Fujiwara bound), rotated by a fixed golden-angle offset
/// so symmetric (e.g. palindromic) inputs cannot stagnate on a symmetry axis.
pub fn find_roots(input: &PolyInput, precision_bits: u32) -> Result<RootSet> {
    if input.len() == 0 {
        return Err(Error::InvalidInput("zero polynomial has no roots".into()));
    }
    let mut prec = precision_bits.max(53);
    let mut seed: Option<Vec<ApComplex>> = None;
    loop {
        match attempt(input, prec, seed.as_deref()) {
            Ok(rs) => return Ok(rs),
            Err(Attempt::Invalid(e)) => return Err(e),
            Err(Attempt::Retry(roots)) => {
                if prec >= MAX_PRECISION {
                    return Err(Error::Convergence(format!(
                        "root certification failed at {MAX_PRECISION} bits"
                    )));
                }
                seed = roots;
                prec = (prec * 2).min(MAX_PRECISION);
            }
        }
    }
}

enum Attempt {
    Invalid(Error),
    Retry(Option<Vec<ApComplex>>),
}

fn attempt(input: &PolyInput, prec: u32, seed: Option<&[ApComplex]>) -> std::result::Result<RootSet, Attempt> {
    let mut coeffs = input.materialize(prec);
    while coeffs.last().is_some_and(|c| c.is_zero()) {
        coeffs.pop();
    }
    if coeffs.is_empty() {
        return Err(Attempt::Invalid(Error::InvalidInput(
            "zero polynomial has no roots".into(),
        )));
    }
    if coeffs.len() == 1 {
        return Err(Attempt::Invalid(Error::InvalidInput(
            "constant polynomial has no roots".into(),
        )));
    }
    let degree = coeffs.len() - 1;
    // exact zero roots deflate off the bottom
    let zero_mult = coeffs.iter().take_while(|c| c.is_zero()).count();
    let reduced = &coeffs[zero_mult..];

    let mut roots: Vec<ApComplex> = Vec::with_capacity(degree);
    let mut residuals = vec![0.0f64; zero_mult];
    for _ in 0..zero_mult {
        roots.push(ApComplex::zero(prec));
    }

    if reduced.len() > 1 {
        let inner = match seed {
            Some(s) if s.len() == reduced.len() - 1 => {
                aberth(reduced, prec, Some(s.to_vec()))
            }
            _ => aberth(reduced, prec, None),
        };
        // certification
        let threshold = 2f64.powi(-(prec as i32 - 24));
        let scale_log2 = |z: &ApComplex| -> f64 {
            let zb = z.abs_bound().log2_abs().unwrap_or(f64::MIN).max(0.0);
            reduced
                .iter()
                .enumerate()
                .map(|(i, a)| {
                    a.abs_bound()
                        .log2_abs()
                        .map_or(f64::MIN, |la| la + i as f64 * zb)
                })
                .fold(f64::MIN, f64::max)
        };
        let mut inner_res = Vec::with_capacity(inner.len());
        for z in &inner {
            let (value, bound) = horner(reduced, z);
            let vlog = value
                .abs_bound()
                .log2_abs()
                .unwrap_or(f64::MIN)
                .max(bound.log2_abs().unwrap_or(f64::MIN));
            let rel = 2f64.powf(vlog - scale_log2(z));
            inner_res.push(rel);
        }
        if inner_res.iter().any(|r| !(*r <= threshold)) {
            return Err(Attempt::Retry(Some(inner)));
        }
        roots.extend(inner);
        residuals.extend(inner_res);
    }

    // cluster detection: merge roots closer than 2^(-prec/4) relative
    let merge_log2 = -(prec as f64) / 4.0;
    let n = roots.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, i: usize) -> usize {
        if parent[i] != i {
            let r = find(parent, parent[i]);
            parent[i] = r;
        }
        parent[i]
    }
    for i in 0..n {
        for j in i + 1..n {
            let diff = roots[i].sub(&roots[j]).abs_bound();
            let scale = ApFloat::from_i64(1, 32).add(&roots[i].abs_bound());
            let close = match diff.log2_abs() {
                None => true,
                Some(dl) => dl - scale.log2_abs().unwrap() < merge_log2,
            };
            if close {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri] = rj;
                }
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for i in 0..n {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(i);
    }
    let mut clusters = Vec::new();
    for (_, members) in groups {
        if members.len() < 2 {
            continue;
        }
        // centroid at full precision
        let mut sum = ApComplex::zero(prec);
        for &i in &members {
            sum = sum.add(&roots[i]);
        }
        let centroid = sum.scale(&ApFloat::from_rational(
            &Rational::new(1.into(), (members.len() as i64).into()),
            prec,
        ));
        for &i in &members {
            roots[i] = centroid.clone();
        }
        clusters.push(members);
    }

    Ok(RootSet {
        roots,
        residuals,
        precision_bits: prec,
        polynomial_degree: degree,
        clusters,
    })
}

/// One full Aberth–Ehrlich run on a polynomial with nonzero constant term.
fn aberth(coeffs: &[ApComplex], prec: u32, seed: Option<Vec<ApComplex>>) -> Vec<ApComplex> {
    let degree = coeffs.len() - 1;
    let deriv: Vec<ApComplex> = coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c.scale(&ApFloat::from_i64(i as i64, prec)))
        .collect();

    let mut zs = seed.unwrap_or_else(|| initial_points(coeffs, prec));
    let tol_log2 = -((prec as f64) - 20.0);
    let mut frozen = vec![false; degree];
    // multiplicity clusters converge linearly and then hover at the rounding
    // floor; stop once the largest correction is small and stops improving
    let mut best_delta_log2 = f64::MAX;
    let mut stagnant_sweeps = 0usize;
    for _ in 0..MAX_SWEEPS {
        let snapshot = zs.clone();
        let updates: Vec<(ApComplex, bool, Option<f64>)> = (0..degree)
            .into_par_iter()
            .map(|j| {
                if frozen[j] {
                    return (snapshot[j].clone(), true, None);
                }
                let z = &snapshot[j];
                let (pz, _) = horner(coeffs, z);
                if pz.is_zero() {
                    return (z.clone(), true, None);
                }
                let (dz, _) = horner(&deriv, z);
                if dz.is_zero() {
                    // nudge off an exact critical point of p
                    let kick = ApComplex::from_f64(1e-3, 1e-3, prec)
                        .scale(&ApFloat::from_i64(1, prec).add(&z.abs_bound()));
                    return (z.add(&kick), false, Some(0.0));
                }
                let w = pz.div(&dz);
                let mut s = ApComplex::zero(prec);
                for (k, other) in snapshot.iter().enumerate() {
                    if k == j {
                        continue;
                    }
                    let diff = z.sub(other);
                    if diff.is_zero() {
                        continue;
                    }
                    s = s.add(&diff.recip());
                }
                let denom = ApComplex::from_f64(1.0, 0.0, prec).sub(&w.mul(&s));
                let delta = if denom.is_zero() { w.clone() } else { w.div(&denom) };
                let znew = z.sub(&delta);
                let scale = ApFloat::from_i64(1, prec).add(&znew.abs_bound());
                let rel_log2 = delta
                    .abs_bound()
                    .log2_abs()
                    .map(|dl| dl - scale.log2_abs().unwrap());
                let done = rel_log2.is_none_or(|dl| dl < tol_log2);
                (znew, done, rel_log2)
            })
            .collect();
        let mut all_done = true;
        let mut max_delta_log2 = f64::MIN;
        for (j, (z, done, rel_log2)) in updates.into_iter().enumerate() {
            zs[j] = z;
            frozen[j] = done;
            all_done &= done;
            if !done {
                max_delta_log2 = max_delta_log2.max(rel_log2.unwrap_or(f64::MIN));
            }
        }
        if all_done {
            break;
        }
        if max_delta_log2 < -16.0 && max_delta_log2 >= best_delta_log2 - 0.3 {
            stagnant_sweeps += 1;
            if stagnant_sweeps >= 12 {
                break;
            }
        } else {
            stagnant_sweeps = 0;
        }
        best_delta_log2 = best_delta_log2.min(max_delta_log2);
    }
    zs
}

/// Initial points on a circle of radius min(Cauchy, Fujiwara), rotated by
/// the golden angle.
fn initial_points(coeffs: &[ApComplex], prec: u32) -> Vec<ApComplex> {
    let degree = coeffs.len() - 1;
    let lead_log2 = coeffs[degree].abs_bound().log2_abs().unwrap();
    let mut cauchy_max = f64::MIN;
    let mut fujiwara_max = f64::MIN;
    for (i, c) in coeffs.iter().enumerate().take(degree) {
        if let Some(l) = c.abs_bound().log2_abs() {
            let ratio = l - lead_log2;
            cauchy_max = cauchy_max.max(ratio);
            fujiwara_max = fujiwara_max.max(ratio / (degree - i) as f64);
        }
    }
    let cauchy = 1.0 + 2f64.powf(cauchy_max.min(1000.0));
    let fujiwara = 2.0 * 2f64.powf(fujiwara_max.min(1000.0));
    let radius = cauchy.min(fujiwara).max(1e-6);
    let golden = 2.399963229728653;
    (0..degree)
        .map(|j| {
            let angle = 2.0 * std::f64::consts::PI * j as f64 / degree as f64 + golden;
            ApComplex::from_f64(radius * angle.cos(), radius * angle.sin(), prec)
        })
        .collect()
}

fn horner(coeffs: &[ApComplex], z: &ApComplex) -> (ApComplex, ApFloat) {
    let prec = z.precision();
    let mut acc = ApComplex::zero(prec);
    let unit = ApFloat::from_i64(1, 32).mul_2exp(3 - prec as i64);
    let zabs = z.abs_bound().with_precision(32);
    let mut err = ApFloat::zero(32);
    for c in coeffs.iter().rev() {
        let next = acc.mul(z).add(c);
        err = err.mul(&zabs).add(
            &acc.abs_bound()
                .with_precision(32)
                .mul(&zabs)
                .add(&c.abs_bound().with_precision(32))
                .add(&next.abs_bound().with_precision(32))
                .mul(&unit),
        );
        acc = next;
    }
    (acc, err)
}

// ---- symmetry checks ----

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RootSymmetry {
    Conjugation,
    Inversion,
}

#[derive(Clone, Debug, Serialize)]
pub struct SymmetryReport {
    pub symmetry: RootSymmetry,
    pub unmatched: Vec<usize>,
    pub pass: bool,
}

/// Check closure of the root set under conjugation or λ ↦ 1/λ.
pub fn root_symmetry_check(rs: &RootSet, symmetry: RootSymmetry, tol: f64) -> SymmetryReport {
    let mut unmatched = Vec::new();
    for (i, z) in rs.roots.iter().enumerate() {
        let image = match symmetry {
            RootSymmetry::Conjugation => z.conj(),
            RootSymmetry::Inversion => {
                if z.is_zero() {
                    unmatched.push(i);
                    continue;
                }
                z.recip()
            }
        };
        let (ir, ii) = image.to_f64();
        let matched = rs.roots.iter().any(|w| {
            let (wr, wi) = w.to_f64();
            ((wr - ir).powi(2) + (wi - ii).powi(2)).sqrt() <= tol * (1.0 + (ir * ir + ii * ii).sqrt())
        });
        if !matched {
            unmatched.push(i);
        }
    }
    SymmetryReport {
        symmetry,
        pass: unmatched.is_empty(),
        unmatched,
    }
}
