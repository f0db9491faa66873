//! Exact enumeration of edge-coloured regular graphs and the complex-analytic
//! landscape of the resulting polynomials.
//!
//! The pipeline, bottom to top:
//!
//! - [`algebra`]: exact rationals, λ-polynomials, sparse monomial polynomials,
//!   and arbitrary-precision complex floats.
//! - [`potential`]: the degree-k homogeneous vertex-weight datum V(x, λ),
//!   with builders for the Ising family.
//! - [`moment`]: the Gaussian-moment formula that turns V into the exact
//!   graph-count polynomial A_n(λ), plus the sphere-integral normalization.
//! - [`graph_oracle`]: independent brute-force checks — half-edge partition
//!   enumeration, Ising spin sums, and the high-temperature expansion.
//! - [`rootfind`]: certified simultaneous root finding at arbitrary precision.
//! - [`critical`]: critical points of V on the complexified unit sphere,
//!   tangential Hessians, non-degeneracy reports, and discriminant scans.
//! - [`landscape`]: branch-continued critical values on a grid, Stokes and
//!   anti-Stokes curve extraction, and root-accumulation measurements.
//! - [`asymptotics`]: growth-rate and power-law checks of the saddle-point
//!   form of the sphere integral.

pub mod algebra;
pub mod asymptotics;
pub mod critical;
pub mod error;
pub mod graph_oracle;
pub mod landscape;
pub mod moment;
pub mod potential;
pub mod rootfind;

pub use algebra::{ApComplex, ApFloat, LambdaPoly, MultiIndex, Rational, SparsePoly};
pub use error::{Error, Result};
