//! Exact-arithmetic toolkit for half-canonically twisted Higgs data on
//! hyperelliptic curves.
//!
//! Everything here computes over Q, or over one quadratic extension
//! Q(sqrt(d)), with no floating point anywhere. The layers are:
//!
//! - [`scalar`], [`poly`], [`series`], [`linalg`]: the exact substrate.
//! - [`curve`], [`fnfield`], [`rrspace`], [`profile`]: hyperelliptic curves,
//!   divisors, valuations and Riemann-Roch spaces.
//! - [`spin`]: theta characteristics (square roots of the canonical class),
//!   their section spaces and parities.
//! - [`higgs`]: trace-free endomorphism-valued sections twisted by a half
//!   canonical, for direct sums of line bundles.
//! - [`spectral`]: characteristic-polynomial invariants, genus and family
//!   dimension bookkeeping, explicit genus-2 covers.
//! - [`graded`], [`charclass`]: a graded-commutative ring calculator and the
//!   moduli-space characteristic-class verifications built on it.
//! - [`quadrics`]: symmetric tensors on intersections of quadrics, the
//!   explicit integrable map on T*P^3 and the plane construction through
//!   involuted point triples.
//! - [`report`]: machine-readable pass/fail reports shared with the CLI.

pub mod charclass;
pub mod curve;
pub mod error;
pub mod fnfield;
pub mod graded;
pub mod higgs;
pub mod linalg;
pub mod mpoly;
pub mod poly;
pub mod profile;
pub mod quadrics;
pub mod report;
pub mod rrspace;
pub mod scalar;
pub mod series;
pub mod spectral;
pub mod spin;

pub use error::Error;
pub use scalar::Scalar;
